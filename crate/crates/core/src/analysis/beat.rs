// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector, Matrix6, Vector6};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;
const REL_TOL: f64 = 1e-8;
const COST_TOL: f64 = 1e-12;
const MIN_SAMPLES: usize = 50;
const MIN_PERIODS: f64 = 3.0;
const PAD: usize = 4;
const ENVELOPE_DEGREE: usize = 4;

/// Damped-sinusoid fit of a beat trace,
/// I(t) = offset + A·e^{−(t−t0)/τ}·(1 + V·cos(2πf(t−t0) + φ)),
/// with t0 the window start.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeatFitResult {
    /// MHz
    pub f: f64,
    pub phase: f64,
    pub visibility: f64,
    /// μs; infinite for an undamped trace.
    pub tau: f64,
    pub offset: f64,
    pub amplitude: f64,
    pub f_err: f64,
    pub phase_err: f64,
    pub visibility_err: f64,
    pub tau_err: f64,
    pub offset_err: f64,
    pub amplitude_err: f64,
    pub residual_rms: f64,
    pub iterations: usize,
    pub window: (f64, f64),
}

/// Peak of the Hann-windowed, ×4 zero-padded spectrum of the mean-removed
/// samples above `f_min` (MHz). Returns (frequency, peak magnitude, median
/// magnitude) with the frequency refined by parabolic interpolation.
pub fn spectral_peak(y: &[f64], dt: f64, f_min: f64) -> (f64, f64, f64) {
    let m = y.len();
    let mean = y.iter().sum::<f64>() / m as f64;
    let nfft = (m * PAD).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); nfft];
    for (i, v) in y.iter().enumerate() {
        let w = 0.5 - 0.5 * (TAU * i as f64 / (m - 1) as f64).cos();
        buf[i] = Complex64::new((v - mean) * w, 0.0);
    }
    FftPlanner::new().plan_fft_forward(nfft).process(&mut buf);
    let df = 1.0 / (nfft as f64 * dt);
    let k_min = ((f_min / df).ceil() as usize).max(1);
    let half = nfft / 2;
    let mags: Vec<f64> = buf[..=half].iter().map(|z| z.norm()).collect();
    if k_min + 1 >= half {
        return (0.0, 0.0, 0.0);
    }
    let (k, &peak) = mags[k_min..half]
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, v)| (i + k_min, v))
        .expect("non-empty band");
    let mut band: Vec<f64> = mags[k_min..half].to_vec();
    band.sort_by(f64::total_cmp);
    let median = band[band.len() / 2];
    let shift = if k > 0 && k < half {
        let (a, b, c) = (mags[k - 1], mags[k], mags[k + 1]);
        let den = a - 2.0 * b + c;
        if den.abs() > 0.0 {
            (0.5 * (a - c) / den).clamp(-0.5, 0.5)
        } else {
            0.0
        }
    } else {
        0.0
    };
    ((k as f64 + shift) * df, peak, median)
}

/// p = [offset, A, k = 1/τ, C, f, S] with V·cos(2πfx + φ) = C·cos(2πfx) + S·sin(2πfx).
/// The quadrature form stays well conditioned as V → 0.
fn model(p: &Vector6<f64>, x: f64) -> (f64, Vector6<f64>) {
    let (off, a, k, cc, f, ss) = (p[0], p[1], p[2], p[3], p[4], p[5]);
    let env = (-k * x).exp();
    let (s, c) = (TAU * f * x).sin_cos();
    let osc = 1.0 + cc * c + ss * s;
    let y = off + a * env * osc;
    let grad = Vector6::new(
        1.0,
        env * osc,
        -x * a * env * osc,
        a * env * c,
        a * env * (ss * c - cc * s) * TAU * x,
        a * env * s,
    );
    (y, grad)
}

fn cost(p: &Vector6<f64>, xs: &[f64], ys: &[f64]) -> f64 {
    xs.iter().zip(ys).map(|(&x, &y)| (y - model(p, x).0).powi(2)).sum()
}

struct Windowed {
    xs: Vec<f64>,
    ys: Vec<f64>,
    span: f64,
    dt: f64,
    scale: f64,
}

fn windowed(times: &[f64], intensity: &[f64], window: (f64, f64)) -> Result<Windowed> {
    if times.len() != intensity.len() {
        return Err(Error::InvalidInput("trace columns differ in length".into()));
    }
    let (t0, t1) = window;
    if !(t1 > t0) {
        return Err(Error::FitWindow(format!("empty window [{t0}, {t1}]")));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = times
        .iter()
        .zip(intensity)
        .filter(|(t, _)| **t >= t0 && **t <= t1)
        .map(|(t, y)| (t - t0, *y))
        .unzip();
    let m = xs.len();
    if m < MIN_SAMPLES {
        return Err(Error::FitWindow(format!("{m} samples in window, need {MIN_SAMPLES}")));
    }
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::InvalidInput("trace contains non-finite values".into()));
    }
    let span = xs[m - 1] - xs[0];
    let dt = span / (m - 1) as f64;
    let scale = ys.iter().map(|y| y.abs()).fold(0.0, f64::max);
    Ok(Windowed { xs, ys, span, dt, scale })
}

/// Offset, amplitude and quadratures from a linear least-squares fit
/// of `c0 + b cos + s sin` at frequency `f`.
fn linear_start(w: &Windowed, f: f64) -> Vector6<f64> {
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut aty = nalgebra::Vector3::<f64>::zeros();
    for (&x, &y) in w.xs.iter().zip(&w.ys) {
        let (s, c) = (TAU * f * x).sin_cos();
        let row = nalgebra::Vector3::new(1.0, c, s);
        ata += row * row.transpose();
        aty += row * y;
    }
    let lin = ata
        .lu()
        .solve(&aty)
        .unwrap_or_else(|| nalgebra::Vector3::new(w.ys[0], 0.0, 0.0));
    let a0 = if lin[0].abs() > 0.0 { lin[0] } else { w.scale };
    let shrink = (lin[1].hypot(lin[2]) / a0.abs()).max(1.0);
    Vector6::new(0.0, a0, 0.0, lin[1] / a0 / shrink, f, lin[2] / a0 / shrink)
}

fn levenberg_marquardt(
    w: &Windowed,
    mut p: Vector6<f64>,
    free: [bool; 6],
) -> Result<(Vector6<f64>, f64, usize)> {
    let (xs, ys) = (&w.xs, &w.ys);
    let pscale = Vector6::new(w.scale, w.scale, 1.0 / w.span, 1.0, 1.0 / w.span, 1.0);
    let mut c = cost(&p, xs, ys);
    let mut lambda = 1e-3;
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let mut jtj = Matrix6::<f64>::zeros();
        let mut jtr = Vector6::<f64>::zeros();
        for (&x, &y) in xs.iter().zip(ys) {
            let (yy, mut g) = model(&p, x);
            for j in 0..6 {
                if !free[j] {
                    g[j] = 0.0;
                }
            }
            jtj += g * g.transpose();
            jtr += g * (y - yy);
        }
        for j in 0..6 {
            if !free[j] {
                jtj[(j, j)] = 1.0;
            }
        }
        let mut stop = true;
        while lambda < 1e16 {
            let mut a = jtj;
            for j in 0..6 {
                a[(j, j)] += lambda * jtj[(j, j)].max(1e-300);
            }
            let Some(delta) = a.cholesky().map(|ch| ch.solve(&jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = p + delta;
            let ct = cost(&trial, xs, ys);
            let rel = (0..6)
                .map(|j| delta[j].abs() / p[j].abs().max(pscale[j]))
                .fold(0.0, f64::max);
            if ct <= c {
                stop = rel < REL_TOL || c - ct <= COST_TOL * c;
                p = trial;
                c = ct;
                lambda = (lambda / 10.0).max(1e-12);
                break;
            }
            if rel < REL_TOL {
                break;
            }
            lambda *= 10.0;
        }
        if stop {
            return Ok((p, c, iterations));
        }
    }
    Err(Error::NoConvergence(iterations))
}

fn finish(
    w: &Windowed,
    p: Vector6<f64>,
    c: f64,
    iterations: usize,
    free: [bool; 6],
    window: (f64, f64),
) -> Result<BeatFitResult> {
    let m = w.xs.len();
    let nfree = free.iter().filter(|&&b| b).count();
    let mut jtj = Matrix6::<f64>::zeros();
    for &x in &w.xs {
        let (_, mut g) = model(&p, x);
        for j in 0..6 {
            if !free[j] {
                g[j] = 0.0;
            }
        }
        jtj += g * g.transpose();
    }
    for j in 0..6 {
        if !free[j] {
            jtj[(j, j)] = 1.0;
        }
    }
    let dof = m.saturating_sub(nfree).max(1) as f64;
    let s2 = (c / dof).max(f64::MIN_POSITIVE);
    let cov = jtj
        .try_inverse()
        .unwrap_or_else(|| Matrix6::from_diagonal_element(f64::INFINITY));
    let err = |j: usize| {
        let e = if free[j] { (s2 * cov[(j, j)]).abs().sqrt() } else { 0.0 };
        e.max(f64::EPSILON * p[j].abs()).max(f64::MIN_POSITIVE)
    };

    let (cc, ss) = (p[3], p[5]);
    let v = cc.hypot(ss);
    let mut f = p[4];
    let mut ph = (-ss).atan2(cc);
    if f < 0.0 {
        f = -f;
        ph = -ph;
    }
    ph = (ph + PI).rem_euclid(TAU) - PI;
    // Linearized propagation from the quadratures.
    let (visibility_err, phase_err) = if v > 0.0 {
        let var = |gc: f64, gs: f64| {
            s2 * (gc * gc * cov[(3, 3)] + 2.0 * gc * gs * cov[(3, 5)] + gs * gs * cov[(5, 5)])
        };
        (
            var(cc / v, ss / v).abs().sqrt().max(f64::MIN_POSITIVE),
            var(ss / (v * v), -cc / (v * v)).abs().sqrt().max(f64::MIN_POSITIVE),
        )
    } else {
        let e = (s2 * cov[(3, 3)].max(cov[(5, 5)])).abs().sqrt();
        (e.max(f64::MIN_POSITIVE), PI)
    };
    let k = p[2];
    let tau = if k == 0.0 { f64::INFINITY } else { 1.0 / k };
    let rms = (c / m as f64).sqrt();
    let lo = w.ys.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = w.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let amp = hi - lo;
    if rms > 0.1 * amp {
        return Err(Error::PoorFit { rms, amplitude: amp });
    }
    Ok(BeatFitResult {
        f,
        phase: ph,
        visibility: v,
        tau,
        offset: p[0],
        amplitude: p[1],
        f_err: err(4),
        phase_err,
        visibility_err,
        tau_err: err(2) * tau * tau,
        offset_err: err(0),
        amplitude_err: err(1),
        residual_rms: rms,
        iterations,
        window,
    })
}

/// Fits the damped-beat model to samples in `window` (μs).
///
/// The starting frequency comes from the spectral peak above two cycles per
/// window; the remaining starting values from a linear least-squares fit at
/// that frequency. Refinement is Levenberg–Marquardt on all six parameters.
pub fn fit_beat(times: &[f64], intensity: &[f64], window: (f64, f64)) -> Result<BeatFitResult> {
    let w = windowed(times, intensity, window)?;
    let m = w.xs.len();
    let (f0, peak, floor) = spectral_peak(&w.ys, w.dt, 2.0 / w.span);
    if !(peak > 3.0 * floor) || peak <= 1e-12 * w.scale * m as f64 {
        return Err(Error::NoBeat { peak, floor });
    }
    if f0 * w.span < MIN_PERIODS {
        return Err(Error::FitWindow(format!(
            "window holds {:.2} beat periods, need {MIN_PERIODS}",
            f0 * w.span
        )));
    }
    let free = [true; 6];
    let (p, c, it) = levenberg_marquardt(&w, linear_start(&w, f0), free)?;
    finish(&w, p, c, it, free, window)
}

/// Same model with the beat frequency held at `f_mhz` and no offset. Used to
/// bound the modulation depth of traces that carry no detectable beat, where a
/// free offset trades against the envelope and runs off to infinity. `V` is
/// then the depth relative to the local intensity; `f_err` is reported as the
/// smallest positive value.
pub fn fit_beat_at(
    times: &[f64],
    intensity: &[f64],
    window: (f64, f64),
    f_mhz: f64,
) -> Result<BeatFitResult> {
    if !(f_mhz > 0.0) {
        return Err(Error::InvalidInput(format!("beat frequency {f_mhz} must be positive")));
    }
    let w = windowed(times, intensity, window)?;
    if f_mhz * w.span < MIN_PERIODS {
        return Err(Error::FitWindow(format!(
            "window holds {:.2} beat periods, need {MIN_PERIODS}",
            f_mhz * w.span
        )));
    }
    let free = [false, true, true, true, false, true];
    let (p, c, it) = levenberg_marquardt(&w, linear_start(&w, f_mhz), free)?;
    finish(&w, p, c, it, free, window)
}

/// Depth of the modulation at `f_mhz` relative to the local intensity, with
/// its standard error, independent of the envelope shape.
///
/// ln I is fitted by linear least squares to a quartic in time plus
/// `c·cos + s·sin` at the given frequency; the depth is `hypot(c, s)`, which
/// matches the visibility to first order and is meant for small values.
pub fn modulation_depth(
    times: &[f64],
    intensity: &[f64],
    window: (f64, f64),
    f_mhz: f64,
) -> Result<(f64, f64)> {
    if !(f_mhz > 0.0) {
        return Err(Error::InvalidInput(format!("beat frequency {f_mhz} must be positive")));
    }
    let w = windowed(times, intensity, window)?;
    if f_mhz * w.span < MIN_PERIODS {
        return Err(Error::FitWindow(format!(
            "window holds {:.2} beat periods, need {MIN_PERIODS}",
            f_mhz * w.span
        )));
    }
    if w.ys.iter().any(|&y| y <= 0.0) {
        return Err(Error::InvalidInput("modulation depth needs a positive trace".into()));
    }
    let m = w.xs.len();
    let ncol = ENVELOPE_DEGREE + 3;
    let a = DMatrix::from_fn(m, ncol, |i, j| {
        let x = w.xs[i];
        match j {
            j if j <= ENVELOPE_DEGREE => (2.0 * x / w.span - 1.0).powi(j as i32),
            j if j == ENVELOPE_DEGREE + 1 => (TAU * f_mhz * x).cos(),
            _ => (TAU * f_mhz * x).sin(),
        }
    });
    let b = DVector::from_iterator(m, w.ys.iter().map(|y| y.ln()));
    let ata = a.transpose() * &a;
    let cov = ata
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidInput("singular envelope fit".into()))?;
    let coef = &cov * (a.transpose() * &b);
    let resid = &b - &a * &coef;
    let s2 = resid.norm_squared() / (m - ncol).max(1) as f64;
    let (ic, is) = (ENVELOPE_DEGREE + 1, ENVELOPE_DEGREE + 2);
    let (c, s) = (coef[ic], coef[is]);
    let depth = c.hypot(s);
    let err = if depth > 0.0 {
        let (gc, gs) = (c / depth, s / depth);
        (s2 * (gc * gc * cov[(ic, ic)] + 2.0 * gc * gs * cov[(ic, is)] + gs * gs * cov[(is, is)]))
            .abs()
            .sqrt()
    } else {
        (s2 * cov[(ic, ic)].max(cov[(is, is)])).sqrt()
    };
    Ok((depth, err))
}
