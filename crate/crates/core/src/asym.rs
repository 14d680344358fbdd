//! Asymmetric Voronoi cells: the trapping probability Pi(omega).
//!
//! Biasing the distance comparison by a delay difference theta = omega s
//! favors one cell; in the infinite-volume limit the disfavored cell stays
//! finite with probability
//!
//!   Pi(omega) = (1/64) (1+omega)^3 (32 - 33 omega + 3 omega^2
//!                                      + 9 omega^3 - 3 omega^4),
//!
//! read off the S^3 coefficient of the small-S expansion of the biased
//! scaling function F(S, omega S, a, 0):
//!
//!   1/(2S^3) - (a^4 S / 480) (1+omega)^3 (8 - 9 omega + 3 omega^2)
//!            + (a^6 S^3 / 6048) (1+omega)^3 (32 - 33 omega + 3 omega^2
//!                                              + 9 omega^3 - 3 omega^4) + ...

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::real::{from_rational, Real};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((Integer::from(n), Integer::from(d)))
}

/// Dense univariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly(pub Vec<Rational>);

impl RatPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Rational::new(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RatPoly(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut out = vec![Rational::new(); n];
        for (i, a) in self.0.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in o.0.iter().enumerate() {
            out[i] += b;
        }
        RatPoly(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatPoly(self.0.iter().map(|a| Rational::from(a * c)).collect())
    }

    /// p(-x)
    pub fn reflected(&self) -> Self {
        RatPoly(
            self.0
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    if i % 2 == 0 {
                        a.clone()
                    } else {
                        Rational::from(-a)
                    }
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal)
    }
}

/// (1+w)^3 (32 - 33 w + 3 w^2 + 9 w^3 - 3 w^4) / 64, expanded.
pub fn pi_polynomial() -> RatPoly {
    let cube = RatPoly::from_i64(&[1, 3, 3, 1]);
    let quartic = RatPoly::from_i64(&[32, -33, 3, 9, -3]);
    cube.mul(&quartic).scale(&q(1, 64))
}

/// S-coefficient polynomial of the biased expansion at unit a^4/480 scale:
/// (1+w)^3 (8 - 9 w + 3 w^2).
pub fn s1_omega_polynomial() -> RatPoly {
    RatPoly::from_i64(&[1, 3, 3, 1]).mul(&RatPoly::from_i64(&[8, -9, 3]))
}

fn check_range(omega: &Rational) -> Result<()> {
    if omega.clone().abs() > 1u32 {
        return Err(Error::OmegaOutOfRange(omega.to_string()));
    }
    Ok(())
}

/// Pi(omega) exactly, for rational omega in [-1, 1].
pub fn pi_rational(omega: &Rational) -> Result<Rational> {
    check_range(omega)?;
    Ok(pi_polynomial().eval(omega))
}

/// Pi(omega) at floating precision.
pub fn pi_real(omega: &Real) -> Result<Real> {
    if !omega.is_finite() || omega.clone().abs() > 1 {
        return Err(Error::OmegaOutOfRange(omega.to_f64().to_string()));
    }
    let prec = omega.prec();
    let poly = pi_polynomial();
    let mut acc = crate::real::zero(prec);
    for c in poly.0.iter().rev() {
        acc = acc * omega + from_rational(prec, c);
    }
    Ok(acc)
}

/// Exact coefficient-level identity Pi(w) + Pi(-w) - 1 = 0.
pub fn pi_reflection_identity_holds() -> bool {
    let p = pi_polynomial();
    let mut sum = p.add(&p.reflected());
    sum.0[0] -= 1u32;
    sum.is_zero()
}

/// Exact consistency between the closed form of Pi and the biased-expansion
/// coefficients, plus the reduction of the S-coefficient at omega = 0.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    /// (7/16) a^6-normalized S^3 coefficient at a = sqrt6 equals Pi(omega)
    pub s3_matches_pi: bool,
    /// the S coefficient at omega = 0 reduces to -a^4/60
    pub s1_reduces_at_zero: bool,
    /// Pi(omega) + Pi(-omega) = 1 for this omega
    pub reflection_sum_is_one: bool,
    pub pi_value: Rational,
}

pub fn check_expansion_consistency(a: &Rational, omega: &Rational) -> Result<ConsistencyReport> {
    check_range(omega)?;
    // S^3 term: (a^6/6048) (1+w)^3 (32 - 33w + 3w^2 + 9w^3 - 3w^4);
    // at a = sqrt6 (a^6 = 216) the sum rule multiplies it by 7/16:
    // 7 * 216 / (16 * 6048) = 1/64 recovers Pi exactly.
    let s3_shape = RatPoly::from_i64(&[1, 3, 3, 1]).mul(&RatPoly::from_i64(&[32, -33, 3, 9, -3]));
    let s3_at_sqrt6 = s3_shape.eval(omega) * q(216, 6048);
    let lhs = s3_at_sqrt6 * q(7, 16);
    let pi_value = pi_rational(omega)?;
    let s3_matches_pi = lhs == pi_value;

    // S term at omega = 0: -(a^4/480) (1)^3 (8) = -a^4/60
    let a4 = Rational::from(a * a) * Rational::from(a * a);
    let s1_at_zero = -Rational::from(&a4 / q(480, 1)) * s1_omega_polynomial().eval(&q(0, 1));
    let s1_reduces_at_zero = s1_at_zero == -Rational::from(&a4 / q(60, 1));

    let reflection_sum_is_one =
        Rational::from(&pi_value + &pi_rational(&Rational::from(-omega))?) == 1u32;

    Ok(ConsistencyReport {
        s3_matches_pi,
        s1_reduces_at_zero,
        reflection_sum_is_one,
        pi_value,
    })
}
