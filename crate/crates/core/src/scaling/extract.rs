//! Laurent coefficient extraction in S: the scaling correspondence.
//!
//! The local-limit coefficients are reached through [S^{2i-3}] of
//! F(S, sqrt6, tau/S) at fixed tau = b S. Substituting b = tau/S makes
//! e^{-bS} = e^{-tau} a constant, turns c = sqrt((a^2+b^2)/2) into a Laurent
//! series with a simple pole, and every table polynomial into a Laurent
//! polynomial; the composite is expanded in S and the requested coefficient
//! read off. The deep poles of T and U cancel partially; the trim step
//! removes their exactly-cancelling leading coefficients before any division
//! picks a pivot.
//!
//! A second, independent route fits the same coefficient from values of the
//! scaling function at geometrically decreasing S; `extract_phi_coeff`
//! requires the two to agree and fails loudly otherwise.

use rug::Float;

use super::eval::eval_f;
use super::tables::tables;
use crate::error::{Error, Result};
use crate::extrapolate::fit_monomial_coeffs;
use crate::real::{sqrt_u, Real};
use crate::series::laurent::LaurentSeries;

/// Number of series coefficients carried through the Laurent pipeline.
const WINDOW_LEN: usize = 48;

/// Relative tolerance for the two independent extraction routes.
const CROSS_TOL: f64 = 1e-16;

/// The Laurent window of F(S, sqrt6, tau/S) around S = 0. Odd orders
/// -3, -1, 1, 3 carry the phi coefficients; even orders vanish.
pub fn extraction_window(tau: &Real, precision_bits: u32) -> Result<LaurentSeries> {
    if !tau.is_finite() || *tau < 0 {
        return Err(Error::Domain(format!(
            "require tau >= 0, got {}",
            tau.to_f64()
        )));
    }
    let prec = precision_bits;
    let len = WINDOW_LEN;
    let noise = prec / 2;
    let tb = tables();
    let a = sqrt_u(prec, 6);

    if tau.is_zero() {
        // b = 0: Taylor series of the p_m/q_m reduction in S
        let mut num = LaurentSeries::zero_series(prec, 0, len);
        let mut den = LaurentSeries::zero_series(prec, 0, len);
        for m in 0..5 {
            let e = LaurentSeries::exp_linear(
                prec,
                &(-Float::with_val(prec, &a) * ((m + 1) as u32)),
                len,
            );
            let p = z2_poly_series(prec, &tb.pm[m], &a, len);
            num = num.add(&p.mul(&e));
        }
        for m in 0..3 {
            let e =
                LaurentSeries::exp_linear(prec, &(-Float::with_val(prec, &a) * (m as u32)), len);
            let q = z2_poly_series(prec, &tb.qm[m], &a, len);
            den = den.add(&q.mul(&e));
        }
        let den3 = den.trimmed(noise)?.pow_i(3);
        let a3 = a.clone().square() * &a;
        let norm = Float::with_val(prec, tb.b0_denom.0)
            + Float::with_val(prec, tb.b0_denom.1) * sqrt_u(prec, 2);
        let pref = Float::with_val(prec, -36) * sqrt_u(prec, 2) * a3 / norm;
        return num.scale(&pref).div(&den3, noise);
    }

    // b = tau / S
    let b_ser = LaurentSeries::monomial(prec, -1, tau.clone(), len);
    // c = sqrt(3 + tau^2 / (2 S^2)), positive branch
    let c2 = b_ser
        .mul(&b_ser)
        .add(&LaurentSeries::from_scalar(prec, a.clone().square(), len))
        .scale(&(Float::with_val(prec, 1) / 2u32));
    let c_ser = c2.sqrt(noise)?;
    // sigma = e^{-aS} (series), e^{-bS} = e^{-tau} (scalar)
    let sig_ser = LaurentSeries::exp_linear(prec, &(-a.clone()), len);
    let w = Float::with_val(prec, -tau).exp();
    let mut sig_p: Vec<LaurentSeries> = Vec::with_capacity(5);
    sig_p.push(LaurentSeries::from_scalar(
        prec,
        Float::with_val(prec, 1),
        len,
    ));
    for i in 1..=4 {
        let next = sig_p[i - 1].mul(&sig_ser);
        sig_p.push(next);
    }
    let mut w_p = Vec::with_capacity(5);
    w_p.push(Float::with_val(prec, 1));
    for j in 1..=4usize {
        let next = Float::with_val(prec, &w_p[j - 1] * &w);
        w_p.push(next);
    }

    let mut t_sum = LaurentSeries::zero_series(prec, -13, len);
    let mut u_sum = LaurentSeries::zero_series(prec, -7, len);
    for (i, row) in tb.t.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.p0.is_zero() && p.p1.is_zero() {
                continue;
            }
            let v = p.eval_b_series(&a, &b_ser, &c_ser);
            t_sum = t_sum.add(&v.scale(&w_p[j]).mul(&sig_p[i]));
        }
    }
    for (i, row) in tb.u.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.p0.is_zero() && p.p1.is_zero() {
                continue;
            }
            let v = p.eval_b_series(&a, &b_ser, &c_ser);
            u_sum = u_sum.add(&v.scale(&w_p[j]).mul(&sig_p[i]));
        }
    }
    let e = tb.e_full.eval_b_series(&a, &b_ser);
    let mut d = LaurentSeries::from_scalar(prec, Float::with_val(prec, 1), len);
    for f in &tb.d_factors {
        d = d.mul(&f.eval_b_series(&a, &b_ser, &c_ser));
    }
    let t_hat = t_sum.trimmed(noise)?;
    let ratio = e.div(&u_sum, noise)?;
    let cube = ratio.pow_i(3);
    let pref = sig_ser.scale(&(-(w.clone()) / 6u32));
    let f_ser = pref.mul(&t_hat.div(&d, noise)?).mul(&cube);
    if f_ser.max_order() < 3 {
        return Err(Error::OutsideWindow(
            3,
            f_ser.min_order(),
            f_ser.max_order(),
        ));
    }
    Ok(f_ser)
}

fn z2_poly_series(prec: u32, coeffs: &[(i64, i64)], a: &Real, len: usize) -> LaurentSeries {
    // polynomial in r = aS as a series in S
    let s2 = sqrt_u(prec, 2);
    let mut out = LaurentSeries::zero_series(prec, 0, len);
    let mut apow = Float::with_val(prec, 1);
    for (k, z) in coeffs.iter().enumerate() {
        let c = (Float::with_val(prec, z.0) + Float::with_val(prec, z.1) * &s2) * &apow;
        out = out.add(&LaurentSeries::monomial(prec, k as i64, c, len));
        apow *= a;
    }
    out
}

/// Independent route: fit [S^{2i-3}] from values of F(S, sqrt6, tau/S) at
/// geometrically decreasing S (F S^3 is a series in u = S^2; interpolate it
/// and read the u^i coefficient).
pub fn richardson_phi(i: u32, tau: &Real, precision_bits: u32) -> Result<Real> {
    let prec = precision_bits;
    let a = sqrt_u(prec, 6);
    let m = 24usize;
    if (i as usize) >= m {
        return Err(Error::InsufficientData {
            have: m,
            need: i as usize + 1,
        });
    }
    let mut us = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    let mut s = Float::with_val(prec, 0.25);
    for _ in 0..m {
        let b = Float::with_val(prec, tau / &s);
        let f = eval_f(&s, &a, &b, prec)?;
        let s3 = s.clone() * s.clone().square();
        us.push(s.clone().square());
        ys.push(f * s3);
        s /= 2u32;
    }
    let coeffs = fit_monomial_coeffs(&us, &ys);
    Ok(coeffs[i as usize].clone())
}

/// [S^{2i-3}] of F(S, sqrt6, tau/S) for i in {0, 2, 3}, computed by the
/// Laurent pipeline and confirmed against the fit route.
pub fn extract_phi_coeff(i: u32, tau: &Real, precision_bits: u32) -> Result<Real> {
    if !matches!(i, 0 | 2 | 3) {
        return Err(Error::Domain(format!(
            "phi extraction defined for i in {{0, 2, 3}}, got {}",
            i
        )));
    }
    let window = extraction_window(tau, precision_bits)?;
    let primary = window.coeff(2 * i as i64 - 3)?;
    let secondary = richardson_phi(i, tau, precision_bits.min(512))?;
    let gap = crate::real::rel_diff(&primary, &secondary);
    if gap > CROSS_TOL {
        return Err(Error::PathDisagreement {
            a: primary.to_string_radix(10, Some(30)),
            b: secondary.to_string_radix(10, Some(30)),
            gap: format!("{:.3e}", gap),
            tol: format!("{:.3e}", CROSS_TOL),
        });
    }
    Ok(primary)
}
