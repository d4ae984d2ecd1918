// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Hard-edged rectangle.
    Rect,
    /// Gaussian centred in the segment with σ = duration/8, zero outside.
    Gauss,
    /// Rectangle whose edges rise and fall as half cosines of width `edge`.
    RampCos,
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" => Ok(Shape::Rect),
            "gauss" => Ok(Shape::Gauss),
            "ramp_cos" => Ok(Shape::RampCos),
            _ => Err(Error::InvalidInput(format!("unknown pulse shape '{s}'"))),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Rect => "rect",
            Shape::Gauss => "gauss",
            Shape::RampCos => "ramp_cos",
        })
    }
}

/// One pulse on one field, in μs and rad/μs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub shape: Shape,
    pub amplitude: f64,
    pub phase: f64,
    /// Edge width for [`Shape::RampCos`], μs.
    pub edge: f64,
}

/// Rising half-cosine from 0 at x=0 to 1 at x=1.
fn half_cos(x: f64) -> f64 {
    0.5 * (1.0 - (PI * x.clamp(0.0, 1.0)).cos())
}

impl Segment {
    pub fn new(t_start: f64, t_end: f64, shape: Shape, amplitude: f64, phase: f64) -> Self {
        Segment { t_start, t_end, shape, amplitude, phase, edge: 1.0 }
    }

    pub fn with_edge(mut self, edge: f64) -> Self {
        self.edge = edge;
        self
    }

    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }

    pub fn sigma(&self) -> f64 {
        self.duration() / 8.0
    }

    /// Real envelope (without phase) at time t.
    pub fn envelope(&self, t: f64) -> f64 {
        if t < self.t_start || t >= self.t_end {
            return 0.0;
        }
        let a = self.amplitude;
        match self.shape {
            Shape::Rect => a,
            Shape::Gauss => {
                let tc = 0.5 * (self.t_start + self.t_end);
                let x = (t - tc) / self.sigma();
                a * (-0.5 * x * x).exp()
            }
            Shape::RampCos => {
                let e = self.edge.min(0.5 * self.duration());
                if e <= 0.0 {
                    return a;
                }
                let rise = half_cos((t - self.t_start) / e);
                let fall = half_cos((self.t_end - t) / e);
                a * rise.min(fall)
            }
        }
    }

    pub fn value(&self, t: f64) -> Complex64 {
        Complex64::from_polar(self.envelope(t), self.phase)
    }

    /// Full width at half maximum of the envelope, μs.
    pub fn fwhm(&self) -> f64 {
        match self.shape {
            Shape::Rect => self.duration(),
            Shape::Gauss => 2.0 * (2.0 * std::f64::consts::LN_2).sqrt() * self.sigma(),
            Shape::RampCos => self.duration() - self.edge.min(0.5 * self.duration()),
        }
    }

    /// Shortest time scale the grid has to resolve.
    fn feature(&self) -> f64 {
        match self.shape {
            Shape::Rect => self.duration(),
            Shape::Gauss => self.sigma(),
            Shape::RampCos => self.edge.min(0.5 * self.duration()),
        }
    }

    fn validate(&self, what: &str) -> Result<()> {
        let finite = [self.t_start, self.t_end, self.amplitude, self.phase, self.edge]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput(format!("{what}: non-finite segment value")));
        }
        if self.t_end <= self.t_start {
            return Err(Error::InvalidInput(format!(
                "{what}: segment end {} must follow start {}",
                self.t_end, self.t_start
            )));
        }
        if self.amplitude < 0.0 {
            return Err(Error::InvalidInput(format!("{what}: amplitude must be >= 0")));
        }
        if self.shape == Shape::RampCos && self.edge <= 0.0 {
            return Err(Error::InvalidInput(format!("{what}: ramp_cos edge must be > 0")));
        }
        Ok(())
    }
}

/// Control switching for storage: the control ramps to zero over `ramp`
/// starting at `t_off`, stays dark for `t_dark`, then ramps back on at
/// [`StorageBlock::t_on`] to `read_amplitude` (a fraction of the write
/// control; 1 means the same).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StorageBlock {
    pub t_off: f64,
    pub ramp: f64,
    pub t_dark: f64,
    pub read_fraction: f64,
}

impl StorageBlock {
    pub fn t_on(&self) -> f64 {
        self.t_off + self.ramp + self.t_dark
    }

    /// Start of the fully dark interval.
    pub fn dark_start(&self) -> f64 {
        self.t_off + self.ramp
    }

    /// End of the read ramp.
    pub fn read_start(&self) -> f64 {
        self.t_on() + self.ramp
    }

    pub fn factor(&self, t: f64) -> f64 {
        if t < self.t_off {
            1.0
        } else if t < self.dark_start() {
            1.0 - half_cos((t - self.t_off) / self.ramp)
        } else if t < self.t_on() {
            0.0
        } else {
            self.read_fraction * half_cos((t - self.t_on()) / self.ramp)
        }
    }
}

/// Boundary envelopes at z = 0 for the control and the two signal beams.
///
/// An empty control list means a constant control at the drive's Ω_C,
/// modulated by the storage block when present.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PulseSchedule {
    pub control: Vec<Segment>,
    pub signal1: Vec<Segment>,
    pub signal2: Vec<Segment>,
    pub storage: Option<StorageBlock>,
}

fn sum(segs: &[Segment], t: f64) -> Complex64 {
    segs.iter().map(|s| s.value(t)).sum()
}

impl PulseSchedule {
    /// Gaussian pulses of equal peak amplitude on both signals, centred at
    /// `t_center` with rms width `sigma` (the segment spans ±4σ).
    pub fn gaussian_pair(t_center: f64, sigma: f64, amp1: f64, amp2: f64) -> Self {
        let seg = |a| Segment::new(t_center - 4.0 * sigma, t_center + 4.0 * sigma, Shape::Gauss, a, 0.0);
        PulseSchedule {
            signal1: if amp1 > 0.0 { vec![seg(amp1)] } else { vec![] },
            signal2: if amp2 > 0.0 { vec![seg(amp2)] } else { vec![] },
            ..Default::default()
        }
    }

    /// Storage sequence: cosine-edged signal pulses on [t_start, t_start+length]
    /// with amplitudes `amplitude·(α, β·e^{iφ₀})`; the control starts ramping
    /// off `lead` μs before the pulse's input falling edge.
    #[allow(clippy::too_many_arguments)]
    pub fn storage(
        t_start: f64,
        length: f64,
        edge: f64,
        amplitude: f64,
        spinor: (f64, f64, f64),
        lead: f64,
        ramp: f64,
        t_dark: f64,
        read_fraction: f64,
    ) -> Self {
        let (alpha, beta, phi) = spinor;
        let seg = |a: f64, p: f64| {
            Segment::new(t_start, t_start + length, Shape::RampCos, a, p).with_edge(edge)
        };
        PulseSchedule {
            control: vec![],
            signal1: if alpha != 0.0 { vec![seg(amplitude * alpha, 0.0)] } else { vec![] },
            signal2: if beta != 0.0 { vec![seg(amplitude * beta, phi)] } else { vec![] },
            storage: Some(StorageBlock {
                t_off: t_start + length - lead,
                ramp,
                t_dark,
                read_fraction,
            }),
        }
    }

    /// Applies an input spinor to the signal-1 segments, which act as the
    /// pulse template: signal 1 becomes `α·template`, signal 2
    /// `β·e^{iφ₀}·template`.
    pub fn with_spinor(&self, alpha: f64, beta: f64, phi: f64) -> Result<Self> {
        if self.signal1.is_empty() {
            return Err(Error::InvalidInput("signal1 carries no pulse template".into()));
        }
        if !(alpha >= 0.0 && beta >= 0.0 && phi.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "spinor needs alpha, beta >= 0, got ({alpha}, {beta}, {phi})"
            )));
        }
        let scaled = |k: f64, p: f64| -> Vec<Segment> {
            if k == 0.0 {
                return Vec::new();
            }
            self.signal1
                .iter()
                .map(|s| Segment { amplitude: s.amplitude * k, phase: s.phase + p, ..*s })
                .collect()
        };
        Ok(PulseSchedule {
            control: self.control.clone(),
            signal1: scaled(alpha, 0.0),
            signal2: scaled(beta, phi),
            storage: self.storage,
        })
    }

    /// Longest half-maximum width among the signal segments.
    pub fn pulse_fwhm(&self) -> f64 {
        self.signal1
            .iter()
            .chain(&self.signal2)
            .map(|s| s.fwhm())
            .fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, segs) in [("control", &self.control), ("signal1", &self.signal1), ("signal2", &self.signal2)] {
            for s in segs.iter() {
                s.validate(name)?;
            }
            let mut sorted: Vec<&Segment> = segs.iter().collect();
            sorted.sort_by(|a, b| a.t_start.total_cmp(&b.t_start));
            for w in sorted.windows(2) {
                if w[1].t_start < w[0].t_end {
                    return Err(Error::InvalidInput(format!("{name}: overlapping segments")));
                }
            }
        }
        if let Some(st) = &self.storage {
            if !(st.ramp > 0.0) {
                return Err(Error::InvalidInput("storage ramp must be > 0".into()));
            }
            if !(st.t_dark >= 0.0) {
                return Err(Error::InvalidInput("t_dark must be >= 0".into()));
            }
            if !(st.read_fraction >= 0.0 && st.read_fraction.is_finite()) {
                return Err(Error::InvalidInput("read fraction must be >= 0".into()));
            }
            if !st.t_off.is_finite() {
                return Err(Error::InvalidInput("t_off must be finite".into()));
            }
        }
        Ok(())
    }

    /// Control Rabi frequency at the boundary.
    pub fn control_at(&self, t: f64, omega_c: f64) -> Complex64 {
        let base = if self.control.is_empty() {
            Complex64::new(omega_c, 0.0)
        } else {
            sum(&self.control, t)
        };
        match &self.storage {
            Some(st) => base * st.factor(t),
            None => base,
        }
    }

    pub fn signal1_at(&self, t: f64) -> Complex64 {
        sum(&self.signal1, t)
    }

    pub fn signal2_at(&self, t: f64) -> Complex64 {
        sum(&self.signal2, t)
    }

    pub fn peak_signal(&self) -> f64 {
        self.signal1
            .iter()
            .chain(&self.signal2)
            .map(|s| s.amplitude)
            .fold(0.0, f64::max)
    }

    pub fn peak_control(&self, omega_c: f64) -> f64 {
        let base = if self.control.is_empty() {
            omega_c.abs()
        } else {
            self.control.iter().map(|s| s.amplitude).fold(0.0, f64::max)
        };
        let f = self.storage.map_or(1.0, |s| s.read_fraction.max(1.0));
        base * f
    }

    /// Shortest ramp or pulse feature, μs.
    pub fn shortest_feature(&self) -> Option<f64> {
        let segs = self.control.iter().chain(&self.signal1).chain(&self.signal2);
        let mut m = segs.map(|s| s.feature()).fold(f64::INFINITY, f64::min);
        if let Some(st) = &self.storage {
            m = m.min(st.ramp);
        }
        m.is_finite().then_some(m)
    }

    /// Latest time at which any signal segment ends.
    pub fn signal_end(&self) -> f64 {
        self.signal1
            .iter()
            .chain(&self.signal2)
            .map(|s| s.t_end)
            .fold(0.0, f64::max)
    }

    pub fn signal_start(&self) -> f64 {
        self.signal1
            .iter()
            .chain(&self.signal2)
            .map(|s| s.t_start)
            .fold(f64::INFINITY, f64::min)
    }
}
