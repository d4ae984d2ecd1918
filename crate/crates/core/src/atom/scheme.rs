// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use super::cg::clebsch_gordan;
use crate::error::{Error, Result};
use crate::units::G_FACTOR_EXCITED_F1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Three ground states, one excited state.
    Tripod4,
    /// Rb D1 F=2 → F'=1 with all Zeeman sublevels.
    Zeeman8,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tripod4" => Ok(Variant::Tripod4),
            "zeeman8" => Ok(Variant::Zeeman8),
            other => Err(Error::InvalidInput(format!("unknown scheme variant '{other}'"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Tripod4 => "tripod4",
            Variant::Zeeman8 => "zeeman8",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarization {
    SigmaMinus,
    Pi,
    SigmaPlus,
}

impl Polarization {
    /// Polarization driving a transition with Δm = m_upper − m_lower.
    pub fn from_delta_m(dm: i32) -> Option<Self> {
        match dm {
            -1 => Some(Polarization::SigmaMinus),
            0 => Some(Polarization::Pi),
            1 => Some(Polarization::SigmaPlus),
            _ => None,
        }
    }

    pub fn delta_m(self) -> i32 {
        match self {
            Polarization::SigmaMinus => -1,
            Polarization::Pi => 0,
            Polarization::SigmaPlus => 1,
        }
    }
}

/// Which laser beam (and hence which optical carrier) drives a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Beam {
    Control,
    Signal1,
    Signal2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub label: String,
    pub m: i32,
    pub excited: bool,
    /// Landé factor of excited levels; ground levels use the drive's `g_F`.
    pub excited_g_factor: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub lower: usize,
    pub upper: usize,
    pub polarization: Polarization,
    pub weight: f64,
    pub beam: Beam,
}

impl Transition {
    /// A leakage transition is driven by the off-resonant circular component of
    /// a signal beam (σ₊ of signal 2, σ₋ of signal 1).
    pub fn is_leakage(&self) -> bool {
        matches!(
            (self.polarization, self.beam),
            (Polarization::SigmaPlus, Beam::Signal2) | (Polarization::SigmaMinus, Beam::Signal1)
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelScheme {
    pub variant: Variant,
    pub states: Vec<Level>,
    pub transitions: Vec<Transition>,
    pub decay_rate: f64,
    /// For each excited state: list of (lower, fraction).
    pub branching: Vec<(usize, Vec<(usize, f64)>)>,
    /// Ground states populated in the polariton vacuum (m = ∓ extremes).
    pub vacuum: [usize; 2],
    pub leakage: bool,
}

impl LevelScheme {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn ground(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.states[i].excited).collect()
    }

    pub fn excited(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.states[i].excited).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s.label == label)
    }

    /// Signal transitions that carry the tripod storage channels: for each
    /// vacuum state, the signal transition leaving it and the control
    /// transition that closes the Λ. Returned as
    /// `[(populated, partner, w_signal, w_control); 2]` for (σ₊, σ₋).
    pub fn storage_roles(&self) -> [(usize, usize, f64, f64); 2] {
        let find = |start: usize, beam: Beam| -> (usize, usize, f64, f64) {
            let sig = self
                .transitions
                .iter()
                .find(|t| t.lower == start && t.beam == beam && !t.is_leakage())
                .expect("vacuum state has a signal transition");
            let ctl = self
                .transitions
                .iter()
                .find(|t| t.upper == sig.upper && t.beam == Beam::Control)
                .expect("signal transition is closed by the control");
            (start, ctl.lower, sig.weight, ctl.weight)
        };
        [find(self.vacuum[0], Beam::Signal1), find(self.vacuum[1], Beam::Signal2)]
    }

    /// Checks the structural invariants of a scheme.
    pub fn validate(&self) -> Result<()> {
        for t in &self.transitions {
            let (lo, up) = (&self.states[t.lower], &self.states[t.upper]);
            if lo.excited || !up.excited {
                return Err(Error::InvalidInput(format!(
                    "transition {} -> {} must go ground -> excited",
                    lo.label, up.label
                )));
            }
            if Polarization::from_delta_m(up.m - lo.m) != Some(t.polarization) {
                return Err(Error::InvalidInput(format!(
                    "transition {} -> {} has polarization {:?} inconsistent with Δm = {}",
                    lo.label,
                    up.label,
                    t.polarization,
                    up.m - lo.m
                )));
            }
        }
        for (up, list) in &self.branching {
            let total: f64 = list.iter().map(|(_, f)| f).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!(
                    "branching from {} sums to {total}",
                    self.states[*up].label
                )));
            }
        }
        Ok(())
    }
}

/// Builds one of the supported level schemes.
///
/// `leakage_on` only affects `zeeman8`: it adds the transitions driven by the
/// off-resonant circular components of the two signal beams. The simplified
/// tripod has no such components.
pub fn build_scheme(variant: Variant, gamma: f64, leakage_on: bool) -> Result<LevelScheme> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidInput(format!("decay rate must be > 0, got {gamma}")));
    }
    let scheme = match variant {
        Variant::Tripod4 => tripod4(gamma),
        Variant::Zeeman8 => zeeman8(gamma, leakage_on),
    };
    scheme.validate()?;
    Ok(scheme)
}

fn ground(label: &str, m: i32) -> Level {
    Level {
        label: label.to_string(),
        m,
        excited: false,
        excited_g_factor: 0.0,
    }
}

fn tripod4(gamma: f64) -> LevelScheme {
    let states = vec![
        ground("g-", -1),
        ground("g0", 0),
        ground("g+", 1),
        Level {
            label: "e".into(),
            m: 0,
            excited: true,
            excited_g_factor: 0.0,
        },
    ];
    let t = |lower, polarization, beam| Transition {
        lower,
        upper: 3,
        polarization,
        weight: 1.0,
        beam,
    };
    LevelScheme {
        variant: Variant::Tripod4,
        states,
        transitions: vec![
            t(0, Polarization::SigmaPlus, Beam::Signal1),
            t(1, Polarization::Pi, Beam::Control),
            t(2, Polarization::SigmaMinus, Beam::Signal2),
        ],
        decay_rate: gamma,
        branching: vec![(3, vec![(0, 1.0 / 3.0), (1, 1.0 / 3.0), (2, 1.0 / 3.0)])],
        vacuum: [0, 2],
        leakage: false,
    }
}

fn zeeman8(gamma: f64, leakage_on: bool) -> LevelScheme {
    let mut states: Vec<Level> = (-2..=2).map(|m| ground(&format!("g({m:+})"), m)).collect();
    states.extend((-1..=1).map(|m| Level {
        label: format!("e({m:+})"),
        m,
        excited: true,
        excited_g_factor: G_FACTOR_EXCITED_F1,
    }));
    let g = |m: i32| (m + 2) as usize;
    let e = |m: i32| (m + 6) as usize;

    let mut transitions = Vec::new();
    let mut branching = Vec::new();
    let mut leak = Vec::new();
    for mp in -1i32..=1 {
        let mut fractions = Vec::new();
        for q in [0, 1, -1] {
            let m = mp - q;
            if m.abs() > 2 {
                continue;
            }
            let w = clebsch_gordan(2, m, 1, q, 1, mp);
            let pol = Polarization::from_delta_m(q).expect("|q| <= 1");
            let beam = match pol {
                Polarization::Pi => Beam::Control,
                Polarization::SigmaPlus => Beam::Signal1,
                Polarization::SigmaMinus => Beam::Signal2,
            };
            let t = Transition {
                lower: g(m),
                upper: e(mp),
                polarization: pol,
                weight: w,
                beam,
            };
            if leakage_on && pol != Polarization::Pi {
                let other = if beam == Beam::Signal1 { Beam::Signal2 } else { Beam::Signal1 };
                leak.push(Transition { beam: other, ..t.clone() });
            }
            transitions.push(t);
            fractions.push((g(m), w * w));
        }
        fractions.sort_by_key(|(l, _)| *l);
        branching.push((e(mp), fractions));
    }
    transitions.extend(leak);
    LevelScheme {
        variant: Variant::Zeeman8,
        states,
        transitions,
        decay_rate: gamma,
        branching,
        vacuum: [g(-2), g(2)],
        leakage: leakage_on,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tripod_counts() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.transitions.len(), 3);
        assert_eq!(s.ground().len(), 3);
        assert_eq!(s.excited(), vec![3]);
        assert_eq!(s.storage_roles()[0], (0, 1, 1.0, 1.0));
        assert_eq!(s.storage_roles()[1], (2, 1, 1.0, 1.0));
    }

    #[test]
    fn zeeman_counts_and_leakage() {
        let off = build_scheme(Variant::Zeeman8, 36.0, false).unwrap();
        let on = build_scheme(Variant::Zeeman8, 36.0, true).unwrap();
        assert_eq!(off.dim(), 8);
        assert_eq!(off.ground().len(), 5);
        assert_eq!(off.excited().len(), 3);
        assert_eq!(off.transitions.len(), 9);
        assert!(on.transitions.len() > off.transitions.len());
        assert_eq!(on.transitions.iter().filter(|t| t.is_leakage()).count(), 6);
        assert!(off.transitions.iter().all(|t| !t.is_leakage()));
    }

    #[test]
    fn zeeman_storage_roles_follow_lambda_systems() {
        let s = build_scheme(Variant::Zeeman8, 36.0, false).unwrap();
        let [plus, minus] = s.storage_roles();
        assert_eq!(s.states[plus.0].m, -2);
        assert_eq!(s.states[plus.1].m, -1);
        assert_eq!(s.states[minus.0].m, 2);
        assert_eq!(s.states[minus.1].m, 1);
        assert!((plus.2 * plus.2 - 0.6).abs() < 1e-12);
    }

    #[test]
    fn unknown_variant_and_bad_gamma() {
        assert!("hexapod".parse::<Variant>().is_err());
        assert!(build_scheme(Variant::Tripod4, 0.0, false).is_err());
        assert!(build_scheme(Variant::Tripod4, -1.0, false).is_err());
    }

    #[test]
    fn polarization_matches_delta_m() {
        for leak in [false, true] {
            let s = build_scheme(Variant::Zeeman8, 36.0, leak).unwrap();
            for t in &s.transitions {
                let dm = s.states[t.upper].m - s.states[t.lower].m;
                assert_eq!(t.polarization.delta_m(), dm);
            }
        }
    }

    #[test]
    fn branching_sums_to_one() {
        let s = build_scheme(Variant::Zeeman8, 36.0, false).unwrap();
        for (_, list) in &s.branching {
            let total: f64 = list.iter().map(|(_, f)| f).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }
}
