//! Sequence acceleration and series fitting.
//!
//! `richardson_limit` removes polynomial corrections in a small parameter
//! (typically 1/N) by Neville extrapolation to 0, returning the accelerated
//! limit together with an error estimate. `fit_monomial_coeffs` interpolates
//! f(u) = sum c_j u^j through given nodes and returns the monomial
//! coefficients; with geometric nodes and big-float arithmetic this recovers
//! series coefficients from point values.

use crate::error::{Error, Result};
use crate::real::Real;
use rug::Float;

#[derive(Clone, Copy, Debug)]
pub struct RichardsonConfig {
    /// Number of correction orders eliminated (polynomial degree of the fit).
    pub order: usize,
    /// Minimum number of sequence points required.
    pub min_points: usize,
}

impl Default for RichardsonConfig {
    fn default() -> Self {
        RichardsonConfig {
            order: 3,
            min_points: 10,
        }
    }
}

/// Extrapolate y(x) to x = 0 given samples, using the `order`+1 samples with
/// the smallest |x|. Returns (limit, error_estimate).
pub fn richardson_limit(xs: &[Real], ys: &[Real], cfg: &RichardsonConfig) -> Result<(Real, Real)> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < cfg.min_points {
        return Err(Error::InsufficientData {
            have: xs.len(),
            need: cfg.min_points,
        });
    }
    let prec = ys.iter().map(|y| y.prec()).max().unwrap();
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&i, &j| {
        xs[i]
            .clone()
            .abs()
            .partial_cmp(&xs[j].clone().abs())
            .unwrap()
    });
    let m = (cfg.order + 1).min(xs.len());
    let pts: Vec<usize> = idx[..m].to_vec();

    // Neville evaluation of the interpolating polynomial at x = 0
    let mut table: Vec<Real> = pts.iter().map(|&i| ys[i].clone()).collect();
    let xv: Vec<Real> = pts.iter().map(|&i| xs[i].clone()).collect();
    let mut prev_diag = table[0].clone();
    for j in 1..m {
        for i in (j..m).rev() {
            // P_{i-j..i}(0) = (x_i * P_{i-j..i-1} - x_{i-j} * P_{i-j+1..i}) / (x_i - x_{i-j})
            let num = Float::with_val(prec, &xv[i] * &table[i - 1])
                - Float::with_val(prec, &xv[i - j] * &table[i]);
            let den = Float::with_val(prec, &xv[i] - &xv[i - j]);
            table[i] = num / den;
        }
        if j == m - 1 {
            prev_diag = table[m - 2].clone();
        }
    }
    let value = table[m - 1].clone();
    let err = Float::with_val(prec, &value - &prev_diag).abs();
    Ok((value, err))
}

/// Interpolate f(u) = sum_{j<n} c_j u^j through n nodes and return the c_j.
/// Newton divided differences expanded to the monomial basis.
pub fn fit_monomial_coeffs(us: &[Real], fs: &[Real]) -> Vec<Real> {
    assert_eq!(us.len(), fs.len());
    let n = us.len();
    let prec = fs.iter().map(|f| f.prec()).max().unwrap();
    // divided differences
    let mut dd: Vec<Real> = fs.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = Float::with_val(prec, &dd[i] - &dd[i - 1]);
            let den = Float::with_val(prec, &us[i] - &us[i - j]);
            dd[i] = num / den;
        }
    }
    // expand Newton form: p(u) = dd[0] + dd[1](u-u0) + dd[2](u-u0)(u-u1) + ...
    let mut coeffs = vec![Float::with_val(prec, 0); n];
    let mut basis = vec![Float::with_val(prec, 0); n]; // current product polynomial
    basis[0] = Float::with_val(prec, 1);
    let mut basis_len = 1;
    for (k, d) in dd.iter().enumerate() {
        for j in 0..basis_len {
            coeffs[j] += Float::with_val(prec, d * &basis[j]);
        }
        if k + 1 < n {
            // basis *= (u - us[k])
            let mut next = vec![Float::with_val(prec, 0); basis_len + 1];
            for j in 0..basis_len {
                next[j + 1] += &basis[j];
                next[j] -= Float::with_val(prec, &basis[j] * &us[k]);
            }
            basis_len += 1;
            basis[..basis_len].clone_from_slice(&next[..basis_len]);
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::real;

    const P: u32 = 256;

    #[test]
    fn richardson_kills_power_corrections() {
        // y = 5 + 3/N + 7/N^2 - 2/N^3 at N = 10..40
        let mut xs = vec![];
        let mut ys = vec![];
        for n in (10..=40).step_by(2) {
            let x = real(P, 1) / real(P, n);
            let y = real(P, 5) + real(P, 3) * &x + real(P, 7) * x.clone().square()
                - real(P, 2) * x.clone() * x.clone().square();
            xs.push(x);
            ys.push(y);
        }
        let (v, err) = richardson_limit(&xs, &ys, &RichardsonConfig::default()).unwrap();
        // a cubic in 1/N is interpolated exactly by the order-3 scheme;
        // the error estimate reflects the order-2 stage, which misses the
        // cubic term, so it is small but honest rather than zero
        assert!(crate::real::rel_diff(&v, &real(P, 5)) < 1e-40);
        assert!(err.to_f64() < 1e-3);
    }

    #[test]
    fn too_few_points_rejected() {
        let xs = vec![real(P, 0.1); 3];
        let ys = vec![real(P, 1.0); 3];
        assert!(matches!(
            richardson_limit(&xs, &ys, &RichardsonConfig::default()),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn monomial_fit_recovers_polynomial() {
        // f(u) = 2 - u + u^3/4 at 6 geometric nodes
        let mut us = vec![];
        let mut fs = vec![];
        for k in 0..6 {
            let u = real(P, 0.5) / real(P, 1 << k);
            let f = real(P, 2) - &u + u.clone() * u.clone().square() / real(P, 4);
            us.push(u);
            fs.push(f);
        }
        let c = fit_monomial_coeffs(&us, &fs);
        assert!(crate::real::rel_diff(&c[0], &real(P, 2)) < 1e-50);
        assert!(crate::real::rel_diff(&c[1], &real(P, -1)) < 1e-45);
        assert!(c[2].clone().abs().to_f64() < 1e-40);
        assert!(crate::real::rel_diff(&c[3], &real(P, 0.25)) < 1e-40);
    }
}
