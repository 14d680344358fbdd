//! Arbitrary-precision evaluation of the scaling function F(S,a,b) and its
//! closed special cases.
//!
//! The direct formula is a 0/0 of order (a-b)^6 on the diagonal (both E and
//! U vanish quadratically there), and degenerates at b = 0 as well (E
//! carries a factor b and U vanishes identically as a series in S). Near
//! those loci the evaluator switches to a Taylor expansion in the small
//! offset: the vanishing factor is removed from E analytically using the
//! reduced table polynomials, and U is expanded as a series in the offset so
//! its exactly-cancelling leading coefficients can be discarded before the
//! division.

use rug::Float;

use super::tables::{tables, Z2};
use crate::error::{Error, Result};
use crate::real::{sqrt_u, Real};
use crate::series::laurent::LaurentSeries;

#[derive(Clone, Copy, Debug)]
pub struct ScalingConfig {
    pub precision_bits: u32,
    pub extraction_bits: u32,
    /// switch to the diagonal Taylor path when |a-b| <= threshold * max(a,b)
    pub near_diagonal_threshold: f64,
    /// switch to the b->0 Taylor path when min(a,b) <= threshold * max(a,b)
    pub near_zero_threshold: f64,
    /// Taylor window length for the offset expansions
    pub taylor_terms: usize,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            precision_bits: 256,
            extraction_bits: 512,
            near_diagonal_threshold: 1e-3,
            near_zero_threshold: 1e-3,
            taylor_terms: 32,
        }
    }
}

/// F(S,a) = 2 a^3 q (1+q) / (1-q)^3 with q = e^{-2aS}.
pub fn eval_f_diag(s: &Real, a: &Real) -> Result<Real> {
    check_domain(s, a)?;
    let prec = s.prec().max(a.prec());
    let e = Float::with_val(prec, -2 * a.clone() * s);
    let q = e.clone().exp();
    let one_minus_q = -e.exp_m1(); // 1 - q without cancellation
    let num =
        Float::with_val(prec, 2) * a.clone().square() * a * &q * (Float::with_val(prec, 1) + &q);
    Ok(num / (one_minus_q.clone() * one_minus_q.clone() * one_minus_q))
}

/// r(S,a) = -a^2 (1 + 10 q + q^2) / (3 (1-q)^2) with q = e^{-aS}.
pub fn eval_r(s: &Real, a: &Real) -> Result<Real> {
    check_domain(s, a)?;
    let prec = s.prec().max(a.prec());
    let e = Float::with_val(prec, -a.clone() * s);
    let q = e.clone().exp();
    let one_minus_q = -e.exp_m1();
    let num = a.clone().square()
        * (Float::with_val(prec, 1) + Float::with_val(prec, 10) * &q + q.clone().square());
    Ok(-num / (Float::with_val(prec, 3) * one_minus_q.clone() * one_minus_q))
}

fn z2_to_real(prec: u32, z: Z2) -> Real {
    Float::with_val(prec, z.0) + Float::with_val(prec, z.1) * sqrt_u(prec, 2)
}

fn eval_z2_poly(prec: u32, coeffs: &[Z2], r: &Real) -> Real {
    let mut acc = Float::with_val(prec, 0);
    for z in coeffs.iter().rev() {
        acc = acc * r + z2_to_real(prec, *z);
    }
    acc
}

/// F(S,a,0) from the p_m / q_m reduction.
pub fn eval_f_b0(s: &Real, a: &Real) -> Result<Real> {
    check_domain(s, a)?;
    let base_prec = s.prec().max(a.prec());
    // the q-sum vanishes linearly at S = 0 and enters cubed: guard bits
    let as_f64 = (a.clone() * s.clone()).to_f64();
    let guard = if as_f64 > 0.0 && as_f64 < 1.0 {
        (3.0 * (-as_f64.log2())).ceil() as u32
    } else {
        0
    };
    let prec = base_prec + guard + 64;
    let tb = tables();
    let r = Float::with_val(prec, a.clone() * s);
    let em = Float::with_val(prec, -&r).exp();
    let mut num = Float::with_val(prec, 0);
    let mut epow = Float::with_val(prec, 1);
    for m in 0..5 {
        epow = Float::with_val(prec, &epow * &em);
        num += eval_z2_poly(prec, &tb.pm[m], &r) * &epow;
    }
    let mut den = Float::with_val(prec, 0);
    let mut epow = Float::with_val(prec, 1);
    for m in 0..3 {
        den += eval_z2_poly(prec, &tb.qm[m], &r) * &epow;
        epow = Float::with_val(prec, &epow * &em);
    }
    let a3 = a.clone().square() * a;
    let pref = Float::with_val(prec, -36) * sqrt_u(prec, 2) * a3;
    let norm = z2_to_real(prec, tb.b0_denom);
    let mut v = pref * num / (norm * den.clone() * den.clone() * den);
    v.set_prec(base_prec);
    Ok(v)
}

fn check_domain(s: &Real, a: &Real) -> Result<()> {
    if !(s.is_finite() && a.is_finite()) || *s <= 0 || *a <= 0 {
        return Err(Error::Domain(format!(
            "require S > 0 and a > 0, got S = {}, a = {}",
            s.to_f64(),
            a.to_f64()
        )));
    }
    Ok(())
}

/// F(S,a,b) at `precision_bits` with the default path thresholds.
pub fn eval_f(s: &Real, a: &Real, b: &Real, precision_bits: u32) -> Result<Real> {
    let cfg = ScalingConfig {
        precision_bits,
        ..ScalingConfig::default()
    };
    eval_f_with(s, a, b, &cfg)
}

/// F(S,a,b) with explicit configuration.
pub fn eval_f_with(s: &Real, a: &Real, b: &Real, cfg: &ScalingConfig) -> Result<Real> {
    check_domain(s, a)?;
    if !b.is_finite() || *b < 0 {
        return Err(Error::Domain(format!("require b >= 0, got {}", b.to_f64())));
    }
    let prec = cfg.precision_bits + 192;
    let s = Float::with_val(prec, s);
    let a = Float::with_val(prec, a);
    let b = Float::with_val(prec, b);
    let (lo, hi) = if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let ratio_small = (lo.clone() / &hi).to_f64();
    let gap_rel = (Float::with_val(prec, &hi - &lo) / &hi).to_f64();

    let mut v = if ratio_small <= cfg.near_zero_threshold {
        // expansion of the small slot around 0 (the exchange symmetry puts
        // the small argument second)
        eval_f_series_path(&s, &hi, PathKind::NearZero, &lo, cfg, prec)?
    } else if gap_rel <= cfg.near_diagonal_threshold {
        let delta = Float::with_val(prec, &b - &a);
        eval_f_series_path(&s, &a, PathKind::NearDiagonal, &delta, cfg, prec)?
    } else {
        eval_f_generic(&s, &a, &b, prec)?
    };
    v.set_prec(cfg.precision_bits);
    Ok(v)
}

fn pow_list(base: &Real, n: usize, prec: u32) -> Vec<Real> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(Float::with_val(prec, 1));
    for k in 1..=n {
        let next = Float::with_val(prec, &v[k - 1] * base);
        v.push(next);
    }
    v
}

/// Direct scalar evaluation, valid away from the diagonal and from b = 0.
fn eval_f_generic(s: &Real, a: &Real, b: &Real, prec: u32) -> Result<Real> {
    let tb = tables();
    let c = Float::with_val(prec, (a.clone().square() + b.clone().square()) / 2u32).sqrt();
    let sig = Float::with_val(prec, -a.clone() * s).exp();
    let tau = Float::with_val(prec, -b.clone() * s).exp();
    let sig_p = pow_list(&sig, 4, prec);
    let tau_p = pow_list(&tau, 4, prec);
    let mut t_sum = Float::with_val(prec, 0);
    for (i, row) in tb.t.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.p0.is_zero() && p.p1.is_zero() {
                continue;
            }
            t_sum += p.eval_real(a, b, &c) * &sig_p[i] * &tau_p[j];
        }
    }
    let mut u_sum = Float::with_val(prec, 0);
    for (i, row) in tb.u.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.p0.is_zero() && p.p1.is_zero() {
                continue;
            }
            u_sum += p.eval_real(a, b, &c) * &sig_p[i] * &tau_p[j];
        }
    }
    let e = tb.e_full.eval_real(a, b);
    let mut d = Float::with_val(prec, 1);
    for f in &tb.d_factors {
        d *= f.eval_real(a, b, &c);
    }
    let ratio = Float::with_val(prec, &e / &u_sum);
    let cube = ratio.clone() * ratio.clone() * ratio;
    Ok(-(sig * tau) / 6u32 * (t_sum / d) * cube)
}

enum PathKind {
    /// b = a + w: E = w^2 (E/(a-b)^2), U vanishes to order 2, T is regular
    NearDiagonal,
    /// b = w: E = w (E/b), U vanishes to order 2, T vanishes to order 3
    NearZero,
}

fn eval_f_series_path(
    s: &Real,
    a: &Real,
    kind: PathKind,
    w_value: &Real,
    cfg: &ScalingConfig,
    prec: u32,
) -> Result<Real> {
    let tb = tables();
    let len = cfg.taylor_terms;
    let noise = prec / 2;
    let one = || LaurentSeries::from_scalar(prec, Float::with_val(prec, 1), len);

    // b(w), e^{-b(w) S}, the reduced E polynomial (with w^{e_removed}
    // factored out analytically), and the exact vanishing orders of U and T
    // at w = 0. The net w power t_val + 3 e_removed - 3 u_val is zero: the
    // limit is finite.
    let (b_ser, tau_ser, e_reduced, e_removed, u_val, t_val) = match kind {
        PathKind::NearDiagonal => {
            let b_ser = LaurentSeries::from_scalar(prec, a.clone(), len).add(
                &LaurentSeries::monomial(prec, 1, Float::with_val(prec, 1), len),
            );
            let scale = Float::with_val(prec, -a.clone() * s).exp();
            let tau =
                LaurentSeries::exp_linear(prec, &Float::with_val(prec, -s), len).scale(&scale);
            (b_ser, tau, &tb.e_over_amb2, 2i64, 2i64, 0i64)
        }
        PathKind::NearZero => {
            let b_ser = LaurentSeries::monomial(prec, 1, Float::with_val(prec, 1), len);
            let tau = LaurentSeries::exp_linear(prec, &Float::with_val(prec, -s), len);
            (b_ser, tau, &tb.e_over_b, 1i64, 2i64, 3i64)
        }
    };
    debug_assert_eq!(t_val + 3 * e_removed - 3 * u_val, 0);

    // c(w) = sqrt((a^2 + b(w)^2)/2)
    let a2 = LaurentSeries::from_scalar(prec, a.clone().square(), len);
    let c2 = a2
        .add(&b_ser.mul(&b_ser))
        .scale(&(Float::with_val(prec, 1) / 2u32));
    let c_ser = c2.sqrt(noise)?;

    let sig = Float::with_val(prec, -a.clone() * s).exp();
    let sig_p = pow_list(&sig, 4, prec);
    let mut tau_p: Vec<LaurentSeries> = Vec::with_capacity(5);
    tau_p.push(one());
    for j in 1..=4 {
        let next = tau_p[j - 1].mul(&tau_ser);
        tau_p.push(next);
    }

    let mut t_sum = LaurentSeries::zero_series(prec, 0, len);
    let mut u_sum = LaurentSeries::zero_series(prec, 0, len);
    for (i, row) in tb.t.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.p0.is_zero() && p.p1.is_zero() {
                continue;
            }
            let v = p.eval_b_series(a, &b_ser, &c_ser);
            t_sum = t_sum.add(&v.scale(&sig_p[i]).mul(&tau_p[j]));
        }
    }
    for (i, row) in tb.u.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.p0.is_zero() && p.p1.is_zero() {
                continue;
            }
            let v = p.eval_b_series(a, &b_ser, &c_ser);
            u_sum = u_sum.add(&v.scale(&sig_p[i]).mul(&tau_p[j]));
        }
    }
    let u_hat = u_sum.trimmed(noise)?;
    if u_hat.min_order() != u_val {
        return Err(Error::Domain(format!(
            "offset expansion of U has leading order {}, expected {}",
            u_hat.min_order(),
            u_val
        )));
    }
    let t_hat = t_sum.trimmed(noise)?;
    if t_hat.min_order() != t_val {
        return Err(Error::Domain(format!(
            "offset expansion of T has leading order {}, expected {}",
            t_hat.min_order(),
            t_val
        )));
    }
    let e_hat = e_reduced.eval_b_series(a, &b_ser);

    let mut d = one();
    for f in &tb.d_factors {
        d = d.mul(&f.eval_b_series(a, &b_ser, &c_ser));
    }

    // all exactly-vanishing offset powers removed: the net power is zero
    let ratio = e_hat.div(&u_hat.shift(-u_val), noise)?;
    let cube = ratio.pow_i(3);
    let pref = tau_ser.scale(&(-(sig.clone()) / 6u32));
    let f_ser = pref.mul(&t_hat.shift(-t_val).div(&d, noise)?).mul(&cube);
    Ok(f_ser.eval(w_value))
}
