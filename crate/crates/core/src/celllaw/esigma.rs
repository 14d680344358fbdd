//! The universal Laplace transform E[e^{-sigma V}] of the rescaled finite
//! cell volume:
//!
//!   E(sigma) = (3/2) [P(r) + sum_{m=1..3} (P_m(r, sqrt2) e^{m sqrt6 r}
//!                                        + P_m(r, -sqrt2) e^{-m sqrt6 r})]
//!              / [Q(r) (4 + (4+3 sqrt2) e^{sqrt6 r}
//!                         + (4-3 sqrt2) e^{-sqrt6 r}) - 12]^4,
//!
//! with r = sigma^{1/4}. Numerator and denominator both vanish to fourth
//! order at r = 0 (E(0) = 1 is a limit), so the evaluation tracks the
//! cancellation magnitude and retries at higher working precision until the
//! requested accuracy is safe.
//!
//! Coefficients live in Z[gamma, sqrt3] with gamma specialized to plus or
//! minus sqrt2; each row of the tables mirrors one displayed coefficient.

use rug::Float;

use crate::error::{Error, Result};
use crate::real::{sqrt_u, Complex, Real};

/// p + q gamma + sqrt3 (u + v gamma)
#[derive(Clone, Copy, Debug)]
pub struct Quad {
    pub p: i64,
    pub q: i64,
    pub u: i64,
    pub v: i64,
}

/// k (alpha + beta gamma) on an even power of r (no sqrt3)
const fn g0(k: i64, alpha: i64, beta: i64) -> Quad {
    Quad {
        p: k * alpha,
        q: k * beta,
        u: 0,
        v: 0,
    }
}

/// k sqrt3 (alpha + beta gamma) on an odd power of r
const fn g1(k: i64, alpha: i64, beta: i64) -> Quad {
    Quad {
        p: 0,
        q: 0,
        u: k * alpha,
        v: k * beta,
    }
}

/// P(r) = 96 (-252 - 399 sqrt3 r - 756 r^2 - 161 sqrt3 r^3 + 170 r^4
///             + 153 sqrt3 r^5 + 144 r^6 + 22 sqrt3 r^7 + 4 r^8)
const P_POLY: [Quad; 9] = [
    g0(96, -252, 0),
    g1(96, -399, 0),
    g0(96, -756, 0),
    g1(96, -161, 0),
    g0(96, 170, 0),
    g1(96, 153, 0),
    g0(96, 144, 0),
    g1(96, 22, 0),
    g0(96, 4, 0),
];

/// P_1(r, gamma)
const P1_POLY: [Quad; 9] = [
    g0(126, 168, 85),
    g1(63, 867, 596),
    g0(1323, 132, 95),
    g1(28, 3153, 2300),
    g0(24, 2463, 1843),
    g1(1, 588, 905),
    g0(-36, 177, 124),
    g1(-6, 174, 127),
    g0(-36, 4, 3),
];

/// P_2(r, gamma) = -8 (63 (24+17g) + 63 sqrt3 r (105+74g) + ...)
const P2_POLY: [Quad; 9] = [
    g0(-8 * 63, 24, 17),
    g1(-8 * 63, 105, 74),
    g0(-8 * 378, 78, 55),
    g1(-8 * 14, 1569, 1108),
    g0(-8 * 12, 2337, 1652),
    g1(-8, 6954, 4919),
    g0(-8 * 18, 154, 109),
    g1(-8 * 6, 24, 17),
    g0(0, 0, 0),
];

/// P_3(r, gamma)
const P3_POLY: [Quad; 9] = [
    g0(126, 24, 17),
    g1(63, 277, 196),
    g0(189, 516, 365),
    g1(28, 3399, 2404),
    g0(24, 7193, 5087),
    g1(1, 68436, 48397),
    g0(36, 1465, 1036),
    g1(6, 1342, 949),
    g0(12, 140, 99),
];

/// Q(r) = 1 + sqrt3 r + r^2
const Q_POLY: [Quad; 3] = [g0(1, 1, 0), g1(1, 1, 0), g0(1, 1, 0)];

/// Real coefficients of a Quad polynomial at gamma = +-sqrt2.
fn materialize(prec: u32, poly: &[Quad], gamma_sign: i32) -> Vec<Real> {
    let s2 = sqrt_u(prec, 2);
    let s3 = sqrt_u(prec, 3);
    poly.iter()
        .map(|c| {
            let plain =
                Float::with_val(prec, c.p) + Float::with_val(prec, c.q * gamma_sign as i64) * &s2;
            let rooted =
                Float::with_val(prec, c.u) + Float::with_val(prec, c.v * gamma_sign as i64) * &s2;
            plain + rooted * &s3
        })
        .collect()
}

fn horner_complex(coeffs: &[Real], r: &Complex) -> Complex {
    let prec = r.prec();
    let mut acc = Complex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc
            .mul(r)
            .add(&Complex::from_real(Float::with_val(prec, c)));
    }
    acc
}

/// Largest coefficient magnitude exponent seen while summing, for
/// cancellation bookkeeping.
struct CancelTracker {
    max_exp: i32,
}

impl CancelTracker {
    fn new() -> Self {
        CancelTracker { max_exp: i32::MIN }
    }
    fn see(&mut self, z: &Complex) {
        if let Some(e) = z.re.get_exp() {
            self.max_exp = self.max_exp.max(e);
        }
        if let Some(e) = z.im.get_exp() {
            self.max_exp = self.max_exp.max(e);
        }
    }
    fn bits_lost(&self, z: &Complex) -> u32 {
        let result_exp =
            z.re.get_exp()
                .into_iter()
                .chain(z.im.get_exp())
                .max()
                .unwrap_or(i32::MIN);
        if self.max_exp == i32::MIN || result_exp == i32::MIN {
            return 0;
        }
        (self.max_exp - result_exp).max(0) as u32
    }
}

fn e_sigma_at(prec: u32, sigma: &Complex) -> Result<(Complex, u32)> {
    let s2 = sqrt_u(prec, 2);
    let s6 = sqrt_u(prec, 6);
    let r = sigma.root_principal(1, 4);
    let e_plus = r.scale(&s6).exp();
    let e_minus = r.scale(&(-s6.clone())).exp();

    // numerator
    let mut tracker = CancelTracker::new();
    let mut num = horner_complex(&materialize(prec, &P_POLY, 1), &r);
    tracker.see(&num);
    for (m, poly) in [P1_POLY, P2_POLY, P3_POLY].iter().enumerate() {
        let mut ep = Complex::from_real(Float::with_val(prec, 1));
        let mut em = Complex::from_real(Float::with_val(prec, 1));
        for _ in 0..=m {
            ep = ep.mul(&e_plus);
            em = em.mul(&e_minus);
        }
        let tp = horner_complex(&materialize(prec, poly, 1), &r).mul(&ep);
        let tm = horner_complex(&materialize(prec, poly, -1), &r).mul(&em);
        tracker.see(&tp);
        tracker.see(&tm);
        num = num.add(&tp).add(&tm);
    }
    let num_lost = tracker.bits_lost(&num);

    // denominator base
    let q = horner_complex(&materialize(prec, &Q_POLY, 1), &r);
    let four = Complex::from_real(Float::with_val(prec, 4));
    let wp = Complex::from_real(Float::with_val(prec, 4) + Float::with_val(prec, 3) * &s2);
    let wm = Complex::from_real(Float::with_val(prec, 4) - Float::with_val(prec, 3) * &s2);
    let mut dt = CancelTracker::new();
    let inner = four.add(&wp.mul(&e_plus)).add(&wm.mul(&e_minus));
    let base_terms = q.mul(&inner);
    dt.see(&base_terms);
    let twelve = Complex::from_real(Float::with_val(prec, 12));
    let base = base_terms.sub(&twelve);
    let den_lost = dt.bits_lost(&base);

    let den4 = base.mul(&base).mul(&base).mul(&base);
    let value = num.scale(&(Float::with_val(prec, 3) / 2u32)).div(&den4);
    Ok((value, num_lost.max(4 * den_lost)))
}

/// E(sigma) for complex sigma off the negative real axis (principal fourth
/// root); working precision escalates until the small-sigma cancellation is
/// covered.
pub fn e_sigma_complex(sigma: &Complex, precision_bits: u32) -> Result<Complex> {
    let mag = sigma.abs().to_f64();
    if mag == 0.0 {
        return Ok(Complex::from_real(Float::with_val(precision_bits, 1)));
    }
    // r^4 = sigma: both sides of the ratio cancel to fourth order at 0
    let expected_loss = if mag < 1.0 {
        (-mag.log2()).ceil() as u32
    } else {
        0
    };
    let mut work = precision_bits + expected_loss + 64;
    for _ in 0..4 {
        let s = Complex::new(
            Float::with_val(work, &sigma.re),
            Float::with_val(work, &sigma.im),
        );
        let (v, lost) = e_sigma_at(work, &s)?;
        if lost + precision_bits + 16 <= work {
            let mut out = v;
            out.re.set_prec(precision_bits);
            out.im.set_prec(precision_bits);
            return Ok(out);
        }
        work = work * 2 + lost;
    }
    Err(Error::CatastrophicCancellation {
        lost: expected_loss,
        prec: work,
    })
}

/// E(sigma) for real sigma >= 0; values decrease from E(0) = 1.
pub fn e_sigma(sigma: &Real, precision_bits: u32) -> Result<Real> {
    if !sigma.is_finite() || *sigma < 0 {
        return Err(Error::Domain(format!(
            "require sigma >= 0, got {}",
            sigma.to_f64()
        )));
    }
    let z = e_sigma_complex(&Complex::from_real(sigma.clone()), precision_bits)?;
    Ok(z.re)
}

/// Laplace transform of the finite-cell law for bi-pointed trees.
pub fn tree_e(sigma: &Real) -> Result<Real> {
    if !sigma.is_finite() || *sigma < 0 {
        return Err(Error::Domain(format!(
            "require sigma >= 0, got {}",
            sigma.to_f64()
        )));
    }
    let prec = sigma.prec();
    Ok((Float::with_val(prec, -2 * sigma.clone().sqrt())).exp())
}

/// exp(-2 sqrt(sigma)) on the principal branch.
pub fn tree_e_complex(sigma: &Complex) -> Result<Complex> {
    let root = sigma.root_principal(1, 2);
    Ok(root.scale(&Float::with_val(sigma.prec(), -2)).exp())
}
