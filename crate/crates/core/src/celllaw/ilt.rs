//! Numerical inverse Laplace transforms, two independent ways.
//!
//! `DeformedContour` is the fixed Talbot rule: the Bromwich line is bent
//! around the negative axis into s(theta) = r theta (cot theta + i) with
//! r = 2M/(5t), which turns the inversion integral into an M-point rule with
//! spectral accuracy for transforms analytic off the cut.
//!
//! `AcceleratedFourier` is the Fourier-series method on a vertical line with
//! Euler summation: a trapezoidal discretization whose alternating tail is
//! resummed by binomial averaging.
//!
//! The two routes share nothing but the transform itself; `ilt` can run both
//! and fails loudly when they disagree beyond tolerance, which is the guard
//! against contour artifacts (zeros of a denominator near the path, branch
//! slips) that a single method would silently mis-integrate.

use rug::{Float, Integer};

use super::esigma::e_sigma_complex;
use crate::error::{Error, Result};
use crate::real::{pi, real, zero, Complex, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IltMethod {
    DeformedContour,
    AcceleratedFourier,
}

#[derive(Clone, Copy, Debug)]
pub struct IltConfig {
    pub method: IltMethod,
    /// node count M (>= 8); both methods gain roughly 0.6 M digits
    pub node_count: usize,
    pub precision_bits: u32,
    /// relative tolerance for the cross-method comparison
    pub target_tol: f64,
    /// run the second method and compare
    pub cross_check: bool,
}

impl Default for IltConfig {
    fn default() -> Self {
        IltConfig {
            method: IltMethod::DeformedContour,
            node_count: 48,
            precision_bits: 320,
            target_tol: 1e-8,
            cross_check: true,
        }
    }
}

/// Fixed Talbot rule at M nodes.
fn talbot<F>(f: &F, t: &Real, m: usize, precision_bits: u32) -> Result<Real>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    // e^{rt} = e^{2M/5} amplification must be absorbed by working precision
    let work = precision_bits + (0.58 * m as f64).ceil() as u32 + 64;
    let t = Float::with_val(work, t);
    let pi_w = pi(work);
    let r = Float::with_val(work, 2 * m as u32) / (Float::with_val(work, 5) * &t);
    // theta = 0 term: (1/2) e^{rt} F(r)
    let f_r = f(&Complex::from_real(r.clone()))?;
    let mut acc = f_r
        .scale(&Float::with_val(work, r.clone() * &t).exp())
        .scale(&(Float::with_val(work, 1) / 2u32));
    for k in 1..m {
        let theta = Float::with_val(work, &pi_w * Float::with_val(work, k as u32))
            / Float::with_val(work, m as u32);
        let cot = theta.clone().cos() / theta.clone().sin();
        // s = r theta (cot theta + i)
        let s = Complex::new(
            Float::with_val(work, &r * &theta) * &cot,
            Float::with_val(work, &r * &theta),
        );
        // sigma(theta) = theta + (theta cot theta - 1) cot theta
        let tc = Float::with_val(work, &theta * &cot);
        let sig = Float::with_val(work, &theta + &((tc - 1u32) * &cot));
        let weight = Complex::new(Float::with_val(work, 1), sig);
        let est = Complex::new(
            Float::with_val(work, &s.re * &t),
            Float::with_val(work, &s.im * &t),
        )
        .exp();
        let term = est.mul(&f(&s)?).mul(&weight);
        acc = acc.add(&term);
    }
    let mut v = acc.re * &r / Float::with_val(work, m as u32);
    v.set_prec(precision_bits);
    Ok(v)
}

/// Euler-accelerated Fourier-series rule at parameter M (2M + 1 terms).
fn euler_fourier<F>(f: &F, t: &Real, m: usize, precision_bits: u32) -> Result<Real>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    // 10^{M/3} amplification
    let work = precision_bits + (1.11 * m as f64).ceil() as u32 + 64;
    let t = Float::with_val(work, t);
    let ln10 = Float::with_val(work, 10u32).ln();
    let a = Float::with_val(work, m as u32) * &ln10 / Float::with_val(work, 3);
    let pi_w = pi(work);

    // xi weights
    let mut xi = vec![Float::with_val(work, 1); 2 * m + 1];
    xi[0] = Float::with_val(work, 1) / 2u32;
    let two_pow_m = Float::with_val(work, Integer::from(1) << (m as u32));
    xi[2 * m] = Float::with_val(work, 1) / &two_pow_m;
    for k in 1..m {
        let binom = Float::with_val(
            work,
            &Integer::from(Integer::binomial_u(m as u32, k as u32)),
        );
        let prev = xi[2 * m - k + 1].clone();
        xi[2 * m - k] = prev + binom / &two_pow_m;
    }

    let mut acc = Float::with_val(work, 0);
    for (k, xik) in xi.iter().enumerate() {
        let s = Complex::new(
            Float::with_val(work, &a / &t),
            Float::with_val(work, &pi_w * Float::with_val(work, k as u32)) / &t,
        );
        let fv = f(&s)?;
        let signed = if k % 2 == 0 {
            fv.re.clone()
        } else {
            -fv.re.clone()
        };
        acc += signed * xik;
    }
    let scale = Float::with_val(work, (a.clone()).exp());
    let mut v = acc * scale / &t;
    v.set_prec(precision_bits);
    Ok(v)
}

fn run_method<F>(f: &F, t: &Real, method: IltMethod, m: usize, precision_bits: u32) -> Result<Real>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    match method {
        IltMethod::DeformedContour => talbot(f, t, m, precision_bits),
        IltMethod::AcceleratedFourier => euler_fourier(f, t, m, precision_bits),
    }
}

/// Invert `transform` at t = v. Returns (value, error estimate). The error
/// estimate combines the node-refinement drift of the primary method with
/// the cross-method gap when the check is enabled; disagreement beyond
/// `target_tol` (relative) is an error, not a warning.
pub fn ilt<F>(transform: &F, v: &Real, cfg: &IltConfig) -> Result<(Real, Real)>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    if !v.is_finite() || *v <= 0 {
        return Err(Error::Domain(format!("require V > 0, got {}", v.to_f64())));
    }
    if cfg.node_count < 8 {
        return Err(Error::Domain(format!(
            "node_count must be >= 8, got {}",
            cfg.node_count
        )));
    }
    let prec = cfg.precision_bits;
    let value = run_method(transform, v, cfg.method, cfg.node_count + 8, prec)?;
    let coarse = run_method(transform, v, cfg.method, cfg.node_count, prec)?;
    let mut err = Float::with_val(prec, &value - &coarse).abs();
    if cfg.cross_check {
        let other_method = match cfg.method {
            IltMethod::DeformedContour => IltMethod::AcceleratedFourier,
            IltMethod::AcceleratedFourier => IltMethod::DeformedContour,
        };
        let other = run_method(transform, v, other_method, cfg.node_count + 8, prec)?;
        let gap = Float::with_val(prec, &value - &other).abs();
        let scale = Float::with_val(prec, value.clone().abs()).max(&real(prec, 1e-300));
        let rel = Float::with_val(prec, &gap / &scale);
        if rel.to_f64() > cfg.target_tol {
            return Err(Error::MethodDisagreement {
                a: value.to_string_radix(10, Some(20)),
                b: other.to_string_radix(10, Some(20)),
                gap: format!("{:.3e}", rel.to_f64()),
            });
        }
        err = err.max(&gap);
    }
    Ok((value, err))
}

/// The finite-cell volume density P(V): inverse transform of E(sigma).
pub fn p_v(v: &Real, cfg: &IltConfig) -> Result<(Real, Real)> {
    let prec = cfg.precision_bits;
    let transform = |s: &Complex| e_sigma_complex(s, prec);
    let (val, err) = ilt(&transform, v, cfg)?;
    // the density is nonnegative; tolerate only noise-level undershoot
    let floor = Float::with_val(prec, &err + real(prec, 1e-30));
    if val < -floor.clone() {
        return Err(Error::Domain(format!(
            "density estimate {} below zero beyond tolerance {}",
            val.to_f64(),
            floor.to_f64()
        )));
    }
    Ok((val, err))
}

/// integral of P over [lo, hi], log-substituted panels with fixed
/// Gauss-Legendre nodes; pointwise values use the primary method only.
pub fn density_integral(
    lo: f64,
    hi: f64,
    cfg: &IltConfig,
    panels_per_decade: usize,
    weight_by_v: bool,
) -> Result<Real> {
    assert!(lo > 0.0 && hi > lo);
    let prec = cfg.precision_bits;
    let point_cfg = IltConfig {
        cross_check: false,
        ..*cfg
    };
    let nodes = crate::quadrature::gl_nodes(12, prec);
    let decades = (hi / lo).log10();
    let n_panels = ((decades * panels_per_decade as f64).ceil() as usize).max(1);
    let x_lo = real(prec, lo).ln();
    let x_hi = real(prec, hi).ln();
    let step = Float::with_val(prec, &x_hi - &x_lo) / Float::with_val(prec, n_panels as u32);
    let mut total = zero(prec);
    for p in 0..n_panels {
        let a = Float::with_val(prec, &x_lo + Float::with_val(prec, p as u32) * &step);
        let b = Float::with_val(prec, &a + &step);
        let half = Float::with_val(prec, &b - &a) / 2u32;
        let mid = Float::with_val(prec, &a + &b) / 2u32;
        for (x, w) in &nodes {
            let xx = Float::with_val(prec, &half * x) + &mid;
            let vv = xx.clone().exp();
            let (density, _) = p_v(&vv, &point_cfg)?;
            // dV = V dx; optionally weight by V for the truncated mean
            let mut integrand = density * &vv;
            if weight_by_v {
                integrand *= &vv;
            }
            total += integrand * w * &half;
        }
    }
    Ok(total)
}

/// Truncated mean integral of V P(V) dV over [lo, lambda].
pub fn truncated_mean(lo: f64, lambda: f64, cfg: &IltConfig) -> Result<Real> {
    density_integral(lo, lambda, cfg, 4, true)
}
