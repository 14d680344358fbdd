//! Contour integrals behind the local-limit law for the volume fraction.
//!
//! The contour runs in from infinity along the ray at +45 degrees, through
//! the origin, and back out along the ray at -45 degrees; for mu > 0 the
//! integrand (a^4 - 36 mu)^{3/2} has a branch cut on the real segment
//! [0, (36 mu)^{1/4}], and the contour makes a back-and-forth excursion
//! along it, the two passes taken on opposite lips of the cut so the
//! continuous part cancels and the discontinuity survives.
//!
//! Reference values: the a^6 integrand gives 162/sqrt(pi) for every mu, the
//! shifted quartic gives 162 e^mu / sqrt(pi), and the ratio construction
//! yields the volume-fraction transform (1 + e^mu)/2. Constant and pure-a^4
//! integrands vanish identically by symmetry (they are exact differentials
//! in a^4), which the quadrature reproduces to tolerance.

use rug::Float;

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_integrate_complex, adaptive_integrate_real};
use crate::real::{pi, real, zero, Complex, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContourKind {
    /// K(a) = a^6
    A6,
    /// K(a) = (a^4 - 36 mu)^{3/2}
    QuarticShift,
    /// K(a) = 1; vanishes identically by symmetry
    Const,
    /// K(a) = a^4; vanishes identically by symmetry
    Quartic,
}

#[derive(Clone, Debug)]
pub struct ContourSpec {
    /// truncation of the 45-degree rays; e^{-L^4/36} bounds the tail
    pub ray_length: f64,
    /// base Gauss-Legendre node count per panel
    pub nodes: usize,
    pub precision_bits: u32,
    /// absolute quadrature target per segment
    pub target_tol: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            ray_length: 12.0,
            nodes: 24,
            precision_bits: 512,
            target_tol: 1e-40,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lip {
    Upper,
    Lower,
}

/// (a^4 - 36 mu)^{3/2} with the cut on the negative real axis resolved
/// toward the given lip when the argument sits on it.
fn quartic_shift_pow(w: &Complex, lip: Lip) -> Complex {
    let prec = w.prec();
    let modulus = w.abs();
    let mut arg = w.arg();
    // on-cut detection: negative real part, imaginary part at noise level
    if w.re.is_sign_negative() {
        let noise = Float::with_val(prec, &modulus) >> (prec / 4);
        if w.im.clone().abs() < noise {
            arg = match lip {
                Lip::Upper => pi(prec),
                Lip::Lower => -pi(prec),
            };
        }
    }
    let three_half = Float::with_val(prec, 3) / 2u32;
    let lr = modulus.ln();
    Complex {
        re: Float::with_val(prec, &lr * &three_half),
        im: Float::with_val(prec, &arg * &three_half),
    }
    .exp()
}

fn integrand(a: &Complex, kind: ContourKind, mu: &Real, lip: Lip) -> Complex {
    let prec = a.prec();
    let a2 = a.mul(a);
    let a3 = a2.mul(a);
    let a4 = a2.mul(&a2);
    let damp = a4.scale(&(real(prec, 1) / 36u32)).exp();
    let base = a3.scale(&(-real(prec, 1) / 9u32)).mul(&damp);
    let k = match kind {
        ContourKind::A6 => a4.mul(&a2),
        ContourKind::Quartic => a4,
        ContourKind::Const => Complex::from_real(real(prec, 1)),
        ContourKind::QuarticShift => {
            let shift = Complex::from_real(Float::with_val(prec, 36 * mu.clone()));
            quartic_shift_pow(&a4.sub(&shift), lip)
        }
    };
    base.mul(&k)
}

/// (1/2 i pi) times the contour integral of (-a^3/9) e^{a^4/36} K(a).
/// Returns (value, quadrature error estimate); the imaginary residue must
/// sit below tolerance or the branch handling is wrong.
pub fn contour_integral(kind: ContourKind, mu: &Real, spec: &ContourSpec) -> Result<(Real, Real)> {
    if !mu.is_finite() {
        return Err(Error::Domain("mu must be finite".into()));
    }
    let prec = spec.precision_bits;
    let tol = real(prec, spec.target_tol);
    let mu_p = Float::with_val(prec, mu);
    let l = real(prec, spec.ray_length);
    let half_sqrt2 = real(prec, 2u32).sqrt() / 2u32;
    // unit directions e^{+i pi/4}, e^{-i pi/4}
    let dir_up = Complex::new(half_sqrt2.clone(), half_sqrt2.clone());
    let dir_dn = Complex::new(half_sqrt2.clone(), -half_sqrt2.clone());

    let mut total = Complex::zero(prec);
    let mut err = zero(prec);

    // For mu < 0 the shifted quartic vanishes at an interior ray point
    // t* = (36|mu|)^{1/4} (w = -t^4 - 36 mu crosses zero); the 3/2 power is
    // only C^1 there. Split the ray at t* and map each side with t ~ v^2 so
    // the integrands become smooth again.
    let ray_split = if kind == ContourKind::QuarticShift && mu_p < 0 {
        let tstar = Float::with_val(prec, -36 * mu_p.clone()).root(4);
        if tstar < l {
            Some(tstar)
        } else {
            None
        }
    } else {
        None
    };

    let integrate_ray = |dir: &Complex, lip: Lip| -> Result<(Complex, Real)> {
        let f = |t: &Real| -> Result<Complex> {
            let a = dir.scale(t);
            Ok(integrand(&a, kind, &mu_p, lip))
        };
        match &ray_split {
            None => adaptive_integrate_complex(&f, &zero(prec), &l, spec.nodes, &tol, prec),
            Some(tstar) => {
                // inner piece: t = t*(1 - v^2); outer piece: t = t* + (L - t*) v^2
                let g_in = |v: &Real| -> Result<Complex> {
                    let t = Float::with_val(prec, 1u32 - v.clone().square()) * tstar;
                    let jac = Float::with_val(prec, 2 * v.clone()) * tstar;
                    Ok(f(&t)?.scale(&jac))
                };
                let span = Float::with_val(prec, &l - tstar);
                let g_out = |v: &Real| -> Result<Complex> {
                    let t = Float::with_val(prec, v.clone().square() * &span) + tstar;
                    let jac = Float::with_val(prec, 2 * v.clone()) * &span;
                    Ok(f(&t)?.scale(&jac))
                };
                let one_v = real(prec, 1);
                let (v1, e1) =
                    adaptive_integrate_complex(&g_in, &zero(prec), &one_v, spec.nodes, &tol, prec)?;
                let (v2, e2) = adaptive_integrate_complex(
                    &g_out,
                    &zero(prec),
                    &one_v,
                    spec.nodes,
                    &tol,
                    prec,
                )?;
                Ok((v1.add(&v2), e1 + e2))
            }
        }
    };

    // incoming ray: from L e^{i pi/4} to 0, i.e. -dir_up * int_0^L f(t dir_up) dt
    {
        let (v, e) = integrate_ray(&dir_up, Lip::Upper)?;
        total = total.add(&v.mul(&dir_up.neg()));
        err += e;
    }
    // outgoing ray: from 0 to L e^{-i pi/4}
    {
        let (v, e) = integrate_ray(&dir_dn, Lip::Lower)?;
        total = total.add(&v.mul(&dir_dn));
        err += e;
    }
    // excursion along [0, (36 mu)^{1/4}] for the cut integrand: the upper
    // and lower passes cancel except for the discontinuity -2i |w|^{3/2};
    // substituting a = A0 (1 - v^2) removes the endpoint singularity
    if kind == ContourKind::QuarticShift && mu_p > 0 {
        let a0 = Float::with_val(prec, 36 * mu_p.clone()).root(4);
        let g = |v: &Real| -> Result<Real> {
            let a = Float::with_val(prec, 1u32 - v.clone().square()) * &a0;
            let a3 = a.clone().square() * &a;
            let a4 = a.clone().square().square();
            let damp = Float::with_val(prec, &a4 / 36u32).exp();
            let w = Float::with_val(prec, 36 * mu_p.clone()) - a4;
            let pw = w.clone() * w.sqrt(); // w^{3/2}, w >= 0 here
            let jac = Float::with_val(prec, 2 * v.clone()) * &a0;
            Ok(-(a3 / 9u32) * damp * pw * jac)
        };
        let (v, e) =
            adaptive_integrate_real(&g, &zero(prec), &real(prec, 1), spec.nodes, &tol, prec)?;
        // discontinuity factor -2i
        total = total.add(&Complex::new(zero(prec), Float::with_val(prec, -2 * v)));
        err += e;
    }

    // divide by 2 i pi: X / (2 i pi) = (Im X + i (-Re X)) / (2 pi)
    let two_pi = pi(prec) * 2u32;
    let value = Float::with_val(prec, &total.im / &two_pi);
    let residue = (Float::with_val(prec, &total.re / &two_pi)).abs();
    let scale = Float::with_val(prec, value.clone().abs() + 1u32);
    let allowed = Float::with_val(prec, &scale * &tol) + Float::with_val(prec, 8 * err.clone());
    if residue > allowed {
        return Err(Error::ImaginaryResidue {
            residue: residue.to_string_radix(10, Some(8)),
            tol: allowed.to_string_radix(10, Some(8)),
        });
    }
    Ok((value, err))
}

/// Large-s limit of the volume-fraction transform: the a^6 + shifted-quartic
/// numerator over the mu = 0 denominator, which collapses to (1 + e^mu)/2.
pub fn phi_mgf(mu: &Real, spec: &ContourSpec) -> Result<Real> {
    let (n1, _) = contour_integral(ContourKind::A6, mu, spec)?;
    let (n2, _) = contour_integral(ContourKind::QuarticShift, mu, spec)?;
    let zero_mu = zero(spec.precision_bits);
    let (d1, _) = contour_integral(ContourKind::A6, &zero_mu, spec)?;
    let (d2, _) = contour_integral(ContourKind::QuarticShift, &zero_mu, spec)?;
    let prec = spec.precision_bits;
    Ok(Float::with_val(prec, &n1 + &n2) / Float::with_val(prec, &d1 + &d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rel_diff;

    fn spec() -> ContourSpec {
        ContourSpec {
            precision_bits: 320,
            target_tol: 1e-35,
            ..ContourSpec::default()
        }
    }

    #[test]
    fn a6_value_is_mu_independent() {
        let sp = spec();
        let prec = sp.precision_bits;
        let expect = real(prec, 162) / pi(prec).sqrt();
        for muv in [0.0f64, 0.5, 1.0, -1.0] {
            let (v, _) = contour_integral(ContourKind::A6, &real(prec, muv), &sp).unwrap();
            assert!(
                rel_diff(&v, &expect) < 1e-25,
                "mu = {}: {} vs {}",
                muv,
                v.to_f64(),
                expect.to_f64()
            );
        }
    }

    #[test]
    fn quartic_shift_value() {
        let sp = spec();
        let prec = sp.precision_bits;
        for muv in [0.0f64, 1.0, -1.0, 0.3] {
            let mu = real(prec, muv);
            let expect = real(prec, 162) * mu.clone().exp() / pi(prec).sqrt();
            let (v, _) = contour_integral(ContourKind::QuarticShift, &mu, &sp).unwrap();
            assert!(
                rel_diff(&v, &expect) < 1e-25,
                "mu = {}: {} vs {}",
                muv,
                v.to_f64(),
                expect.to_f64()
            );
        }
    }

    #[test]
    fn kinds_agree_at_mu_zero() {
        let sp = spec();
        let prec = sp.precision_bits;
        let (a6, _) = contour_integral(ContourKind::A6, &zero(prec), &sp).unwrap();
        let (qs, _) = contour_integral(ContourKind::QuarticShift, &zero(prec), &sp).unwrap();
        assert!(rel_diff(&a6, &qs) < 1e-30);
    }

    #[test]
    fn symmetry_vanishing() {
        let sp = spec();
        let prec = sp.precision_bits;
        for kind in [ContourKind::Const, ContourKind::Quartic] {
            let (v, _) = contour_integral(kind, &real(prec, 0.7), &sp).unwrap();
            assert!(
                v.clone().abs().to_f64() < 1e-25,
                "{:?} integral should vanish, got {}",
                kind,
                v.to_f64()
            );
        }
    }

    #[test]
    fn phi_mgf_values() {
        let sp = spec();
        let prec = sp.precision_bits;
        for muv in [-1.0f64, 0.0, 1.0] {
            let mu = real(prec, muv);
            let expect = (real(prec, 1) + mu.clone().exp()) / 2u32;
            let v = phi_mgf(&mu, &sp).unwrap();
            assert!(
                rel_diff(&v, &expect) < 1e-20,
                "mu = {}: {} vs {}",
                muv,
                v.to_f64(),
                expect.to_f64()
            );
        }
        // mu -> -infinity tends to 1/2
        let v = phi_mgf(&real(prec, -30), &sp).unwrap();
        assert!((v.to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn doubling_nodes_stays_within_error_estimate() {
        let sp = spec();
        let prec = sp.precision_bits;
        let mu = real(prec, 1);
        let (v1, e1) = contour_integral(ContourKind::QuarticShift, &mu, &sp).unwrap();
        let sp2 = ContourSpec {
            nodes: sp.nodes * 2,
            ..sp
        };
        let (v2, _) = contour_integral(ContourKind::QuarticShift, &mu, &sp2).unwrap();
        let gap = Float::with_val(prec, &v1 - &v2).abs();
        assert!(gap <= Float::with_val(prec, &e1 + real(prec, 1e-35)));
    }
}
