//! Gauss-Legendre quadrature at arbitrary precision.
//!
//! Nodes are Legendre roots refined by Newton iteration from the classical
//! cosine initial guesses. Adaptive panel integration bisects until the
//! difference between an n-point and a 2n-point rule is below tolerance,
//! and reports the accumulated difference as the error estimate.

use crate::error::{Error, Result};
use crate::real::{pi, zero, Complex, Real};
use rug::Float;

/// Legendre P_n(x) and its derivative, by the three-term recurrence.
fn legendre(n: usize, x: &Real) -> (Real, Real) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    if n == 0 {
        return (p0, Float::with_val(prec, 0));
    }
    for k in 1..n {
        let a = Float::with_val(prec, 2 * k as u32 + 1) * x * &p1;
        let b = Float::with_val(prec, k as u32) * &p0;
        let p2 = (a - b) / Float::with_val(prec, k as u32 + 1);
        p0 = p1;
        p1 = p2;
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = Float::with_val(prec, n as u32) * (Float::with_val(prec, x * &p1) - &p0);
    let den = Float::with_val(prec, x.clone().square() - 1u32);
    (p1, num / den)
}

/// Nodes and weights of the n-point rule on [-1, 1].
pub fn gl_nodes(n: usize, prec: u32) -> Vec<(Real, Real)> {
    assert!(n >= 2);
    let mut out = Vec::with_capacity(n);
    let pi_p = pi(prec);
    for k in 0..n {
        // initial guess: cos(pi (k + 3/4) / (n + 1/2))
        let guess = Float::with_val(
            prec,
            &pi_p * Float::with_val(prec, k as f64 + 0.75) / Float::with_val(prec, n as f64 + 0.5),
        )
        .cos();
        let mut x = guess;
        // Newton to full precision; iteration count ~ log2(prec)
        let iters = (prec as f64).log2().ceil() as usize + 4;
        for _ in 0..iters {
            let (p, dp) = legendre(n, &x);
            let dx = p / dp;
            x -= dx;
        }
        let (_, dp) = legendre(n, &x);
        let w = Float::with_val(prec, 2)
            / (Float::with_val(prec, 1u32 - x.clone().square()) * dp.square());
        out.push((x, w));
    }
    out
}

/// Fixed n-point rule over [a, b] for a complex-valued integrand of a real
/// parameter.
pub fn gl_integrate_complex<F>(f: &F, a: &Real, b: &Real, nodes: &[(Real, Real)]) -> Result<Complex>
where
    F: Fn(&Real) -> Result<Complex>,
{
    let prec = a.prec().max(b.prec());
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let mut acc = Complex::zero(prec);
    for (x, w) in nodes {
        let t = Float::with_val(prec, &half * x) + &mid;
        let v = f(&t)?;
        acc = acc.add(&v.scale(w));
    }
    Ok(acc.scale(&half))
}

/// Adaptive bisection on [a, b]: accept a panel when the n and 2n rules agree
/// to `tol` (absolute, on |value|); the sum of final panel gaps is returned
/// as the error estimate.
pub fn adaptive_integrate_complex<F>(
    f: &F,
    a: &Real,
    b: &Real,
    n: usize,
    tol: &Real,
    prec: u32,
) -> Result<(Complex, Real)>
where
    F: Fn(&Real) -> Result<Complex>,
{
    let coarse_nodes = gl_nodes(n, prec);
    let fine_nodes = gl_nodes(2 * n, prec);
    let mut total = Complex::zero(prec);
    let mut err = zero(prec);
    let mut stack = vec![(a.clone(), b.clone(), 0usize)];
    let max_depth = 40;
    while let Some((lo, hi, depth)) = stack.pop() {
        let coarse = gl_integrate_complex(f, &lo, &hi, &coarse_nodes)?;
        let fine = gl_integrate_complex(f, &lo, &hi, &fine_nodes)?;
        let gap = fine.sub(&coarse).abs();
        if gap <= *tol || depth >= max_depth {
            if depth >= max_depth && gap > *tol {
                return Err(Error::QuadratureNonConvergent(
                    gap.to_string_radix(10, Some(8)),
                    tol.to_string_radix(10, Some(8)),
                ));
            }
            total = total.add(&fine);
            err += gap;
        } else {
            let mid = Float::with_val(prec, &lo + &hi) / 2u32;
            stack.push((lo, mid.clone(), depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok((total, err))
}

/// Real-valued adaptive integration (wrapper over the complex one).
pub fn adaptive_integrate_real<F>(
    f: &F,
    a: &Real,
    b: &Real,
    n: usize,
    tol: &Real,
    prec: u32,
) -> Result<(Real, Real)>
where
    F: Fn(&Real) -> Result<Real>,
{
    let g = |t: &Real| -> Result<Complex> { Ok(Complex::from_real(f(t)?)) };
    let (v, e) = adaptive_integrate_complex(&g, a, b, n, tol, prec)?;
    Ok((v.re, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::real;

    const P: u32 = 256;

    #[test]
    fn nodes_integrate_polynomial_exactly() {
        // 8-point rule is exact for degree 15: check x^10 over [0,1] = 1/11
        let nodes = gl_nodes(8, P);
        let f = |t: &Real| -> Result<Complex> {
            let mut v = real(P, 1);
            for _ in 0..10 {
                v *= t;
            }
            Ok(Complex::from_real(v))
        };
        let v = gl_integrate_complex(&f, &real(P, 0), &real(P, 1), &nodes).unwrap();
        let expect = real(P, 1) / real(P, 11);
        assert!(crate::real::rel_diff(&v.re, &expect) < 1e-60);
    }

    #[test]
    fn adaptive_gaussian_integral() {
        // int_0^6 exp(-t^2) dt = sqrt(pi)/2 * erf(6)
        let f = |t: &Real| -> Result<Real> { Ok((-t.clone().square()).exp()) };
        let tol = real(P, 1e-50);
        let (v, e) = adaptive_integrate_real(&f, &real(P, 0), &real(P, 6), 16, &tol, P).unwrap();
        let expect = pi(P).sqrt() / 2u32 * real(P, 6).erf();
        assert!(crate::real::rel_diff(&v, &expect) < 1e-45);
        assert!(e.to_f64() < 1e-45);
    }
}
