//! Closed-form asymptotics of the volume density and the comparison laws.
//!
//! Large volumes: the sigma^{1/4} singularity of the transform gives the
//! algebraic tail 665 sqrt(3) / (4096 Gamma(3/4)) V^{-5/4}.
//!
//! Small volumes: the saddle point of exp(sigma V - sqrt6 sigma^{1/4}) at
//! sigma* = 3^{2/3} / (4 V^{4/3}) gives the flat form
//! 3^{11/6} (3 - 2 sqrt2) / (2 sqrt(pi)) V^{-7/6} exp(-(3^{5/3}/4) V^{-1/3}).
//!
//! Both match the one-sided stable pattern with index alpha = 1/4 = 1/D for
//! fractal dimension D = 4; the tree law (alpha = 1/2, D = 2) is exact:
//! P_tree(V) = V^{-3/2} e^{-1/V} / sqrt(pi).

use rug::Float;

use crate::error::{Error, Result};
use crate::real::{gamma, pi, pow_rational, sqrt_u, Real};

fn check_positive(v: &Real, name: &str) -> Result<()> {
    if !v.is_finite() || *v <= 0 {
        return Err(Error::Domain(format!(
            "require {} > 0, got {}",
            name,
            v.to_f64()
        )));
    }
    Ok(())
}

/// Large-V tail equivalent: 665 sqrt(3) / (4096 Gamma(3/4)) V^{-5/4}.
pub fn asympt_tail(v: &Real) -> Result<Real> {
    check_positive(v, "V")?;
    let prec = v.prec();
    let c = Float::with_val(prec, 665) * sqrt_u(prec, 3)
        / (Float::with_val(prec, 4096) * gamma(&Float::with_val(prec, 0.75)));
    Ok(c * pow_rational(v, -5, 4))
}

/// Small-V flat equivalent:
/// 3^{11/6} (3 - 2 sqrt2) / (2 sqrt pi) V^{-7/6} e^{-(3^{5/3}/4) V^{-1/3}}.
pub fn asympt_flat(v: &Real) -> Result<Real> {
    check_positive(v, "V")?;
    let prec = v.prec();
    let three = Float::with_val(prec, 3);
    let pref = pow_rational(&three, 11, 6)
        * (Float::with_val(prec, 3) - Float::with_val(prec, 2) * sqrt_u(prec, 2))
        / (Float::with_val(prec, 2) * pi(prec).sqrt());
    let rate = pow_rational(&three, 5, 3) / Float::with_val(prec, 4);
    let arg = -rate * pow_rational(v, -1, 3);
    Ok(pref * pow_rational(v, -7, 6) * arg.exp())
}

/// Saddle location of the small-V inversion: sigma* = 3^{2/3} / (4 V^{4/3}).
pub fn saddle_sigma_star(v: &Real) -> Result<Real> {
    check_positive(v, "V")?;
    let prec = v.prec();
    Ok(pow_rational(&Float::with_val(prec, 3), 2, 3)
        / (Float::with_val(prec, 4) * pow_rational(v, 4, 3)))
}

/// Exact tree density: V^{-3/2} e^{-1/V} / sqrt(pi).
pub fn tree_p(v: &Real) -> Result<Real> {
    check_positive(v, "V")?;
    let prec = v.prec();
    let arg = -(Float::with_val(prec, 1) / v);
    Ok(pow_rational(v, -3, 2) * arg.exp() / pi(prec).sqrt())
}

/// The one-sided stable exponents for Laplace exponent alpha in (0,1).
#[derive(Clone, Debug)]
pub struct LevyAsympt {
    /// algebraic prefactor power of the small-V form: (2-alpha)/(2(1-alpha))
    pub small_v_power: Real,
    /// stretched-exponential power: alpha/(1-alpha)
    pub small_v_exp_power: Real,
    /// tail decay exponent: 1 + alpha
    pub tail_exponent: Real,
    /// the (unit-constant) small-V shape evaluated at the given V
    pub small_v_form: Real,
}

pub fn levy_asympt(alpha: &Real, v: &Real) -> Result<LevyAsympt> {
    let prec = alpha.prec().max(v.prec());
    if !alpha.is_finite() || *alpha <= 0 || *alpha >= 1 {
        return Err(Error::Domain(format!(
            "require alpha in (0,1), got {}",
            alpha.to_f64()
        )));
    }
    check_positive(v, "V")?;
    let one = Float::with_val(prec, 1);
    let one_minus = Float::with_val(prec, &one - alpha);
    let small_v_power =
        (Float::with_val(prec, 2) - alpha) / (Float::with_val(prec, 2) * &one_minus);
    let small_v_exp_power = Float::with_val(prec, alpha / &one_minus);
    let tail_exponent = Float::with_val(prec, &one + alpha);
    let ln_v = Float::with_val(prec, v).ln();
    let shape = (-(Float::with_val(prec, -&small_v_exp_power) * &ln_v).exp()
        - Float::with_val(prec, &small_v_power * &ln_v))
    .exp();
    Ok(LevyAsympt {
        small_v_power,
        small_v_exp_power,
        tail_exponent,
        small_v_form: shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{real, rel_diff};

    const P: u32 = 256;

    #[test]
    fn tail_power_law_exponent() {
        // d log(tail) / d log V = -5/4
        let v1 = real(P, 100);
        let v2 = real(P, 200);
        let t1 = asympt_tail(&v1).unwrap();
        let t2 = asympt_tail(&v2).unwrap();
        let slope = (t2 / t1).ln() / (real(P, 2)).ln();
        assert!(rel_diff(&slope, &(-real(P, 5) / real(P, 4))) < 1e-60);
    }

    #[test]
    fn flat_at_zero() {
        // all right-derivatives vanish: flat(V)/V^k -> 0 as V -> 0 for any k
        for k in [1i32, 5, 20] {
            let mut prev = f64::INFINITY;
            for vv in [1e-7f64, 1e-8, 1e-9] {
                let v = real(P, vv);
                let f = asympt_flat(&v).unwrap();
                let ratio = (f / pow_rational(&v, k, 1)).to_f64().abs();
                assert!(ratio < prev, "flat/V^{} decreasing at V = {}", k, vv);
                prev = ratio;
            }
            assert!(prev < 1e-100, "flat/V^{} at V = 1e-9: {}", k, prev);
        }
    }

    #[test]
    fn saddle_location() {
        let v = real(P, 0.5);
        let s = saddle_sigma_star(&v).unwrap();
        // 3^{2/3}/(4 (1/2)^{4/3}) = 3^{2/3} 2^{4/3} / 4
        let expect = pow_rational(&real(P, 3), 2, 3) * pow_rational(&real(P, 2), 4, 3) / real(P, 4);
        assert!(rel_diff(&s, &expect) < 1e-70);
        // and at the saddle, d/dsigma (sigma V - sqrt6 sigma^{1/4}) = 0
        let h = real(P, 1e-20);
        let obj =
            |sig: &Real| -> Real { sig.clone() * &v - sqrt_u(P, 6) * pow_rational(sig, 1, 4) };
        let d = (obj(&(s.clone() + &h)) - obj(&(s.clone() - &h))) / (real(P, 2) * &h);
        assert!(d.abs() < 1e-15);
    }

    #[test]
    fn tree_density_normalized() {
        // integral over (0, inf) equals 1: substitute u = 1/V analytically,
        // here checked numerically over a wide window
        let tol = real(P, 1e-40);
        let f = |v: &Real| tree_p(v);
        let (mass, _) = crate::quadrature::adaptive_integrate_real(
            &f,
            &real(P, 1e-4),
            &real(P, 1e4),
            16,
            &tol,
            P,
        )
        .unwrap();
        // the two tails: int_0^eps is exponentially small; the far tail is
        // ~ 2/sqrt(pi V)
        assert!((mass.to_f64() - (1.0 - 2.0 / (std::f64::consts::PI * 1e4).sqrt())).abs() < 1e-3);
    }

    #[test]
    fn levy_exponents_at_quarter() {
        let l = levy_asympt(&real(P, 0.25), &real(P, 1)).unwrap();
        assert!(rel_diff(&l.tail_exponent, &real(P, 1.25)) < 1e-70);
        assert!(rel_diff(&l.small_v_power, &(real(P, 7) / real(P, 6))) < 1e-70);
        assert!(rel_diff(&l.small_v_exp_power, &(real(P, 1) / real(P, 3))) < 1e-70);
        // tree case alpha = 1/2 reproduces the exact exponents of tree_p
        let t = levy_asympt(&real(P, 0.5), &real(P, 1)).unwrap();
        assert!(rel_diff(&t.small_v_power, &(real(P, 3) / real(P, 2))) < 1e-70);
        assert!(rel_diff(&t.small_v_exp_power, &real(P, 1)) < 1e-70);
        assert!(rel_diff(&t.tail_exponent, &(real(P, 3) / real(P, 2))) < 1e-70);
    }

    #[test]
    fn domain_checks() {
        assert!(asympt_tail(&real(P, 0)).is_err());
        assert!(levy_asympt(&real(P, 1.5), &real(P, 1)).is_err());
    }
}
