// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Weighted straight-line fit y = slope·x + intercept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_err: f64,
    pub intercept_err: f64,
    pub r_squared: f64,
    pub chi_squared: f64,
}

/// Closed-form error-weighted least squares over (x, y, σ_y) points.
pub fn fit_linear(points: &[(f64, f64, f64)]) -> Result<LinFit> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "linear fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(x, y, s)| !(x.is_finite() && y.is_finite() && s > 0.0 && s.is_finite())) {
        return Err(Error::InvalidInput("linear fit needs finite points and positive errors".into()));
    }
    let (mut s, mut sx, mut sy, mut sxx) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y, e) in points {
        let w = 1.0 / (e * e);
        s += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
    }
    let xm = sx / s;
    let ym = sy / s;
    let sxx_c: f64 = points.iter().map(|&(x, _, e)| (x - xm) * (x - xm) / (e * e)).sum();
    let x_span = points.iter().map(|p| (p.0 - xm).abs()).fold(0.0, f64::max);
    if sxx_c <= 0.0 || x_span <= 1e-12 * xm.abs().max(1e-300) {
        return Err(Error::DegenerateAbscissas);
    }
    let sxy_c: f64 = points.iter().map(|&(x, y, e)| (x - xm) * (y - ym) / (e * e)).sum();
    let slope = sxy_c / sxx_c;
    let intercept = ym - slope * xm;
    let delta = s * sxx - sx * sx;
    let slope_err = (s / delta).sqrt();
    let intercept_err = (sxx / delta).sqrt();
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for &(x, y, e) in points {
        let w = 1.0 / (e * e);
        ss_res += w * (y - slope * x - intercept).powi(2);
        ss_tot += w * (y - ym).powi(2);
    }
    let r_squared = if ss_tot > 0.0 { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LinFit {
        slope,
        intercept,
        slope_err,
        intercept_err,
        r_squared,
        chi_squared: ss_res,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let pts: Vec<_> = [0.05, 0.15, 0.30].iter().map(|&b| (b, 1.3996 * b, 1e-3)).collect();
        let f = fit_linear(&pts).unwrap();
        assert!((f.slope - 1.3996).abs() < 1e-12);
        assert!(f.intercept.abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn identical_abscissas() {
        let pts = [(0.1, 1.0, 0.1), (0.1, 2.0, 0.1), (0.1, 3.0, 0.1)];
        assert!(matches!(fit_linear(&pts), Err(Error::DegenerateAbscissas)));
    }

    #[test]
    fn too_few_points() {
        assert!(fit_linear(&[(0.0, 0.0, 1.0), (1.0, 1.0, 1.0)]).is_err());
    }
}
