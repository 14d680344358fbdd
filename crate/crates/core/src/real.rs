//! Configurable-precision real and complex scalars.
//!
//! `Real` is an MPFR floating-point number; every constructor takes an
//! explicit precision in bits. `Complex` is a plain (re, im) pair of `Real`s
//! with the handful of operations the evaluators need, including
//! principal-branch powers.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

pub type Real = Float;

/// New real from anything rug accepts, at `prec` bits.
pub fn real<T>(prec: u32, v: T) -> Real
where
    Float: rug::Assign<T>,
{
    Float::with_val(prec, v)
}

pub fn zero(prec: u32) -> Real {
    Float::with_val(prec, 0)
}

pub fn one(prec: u32) -> Real {
    Float::with_val(prec, 1)
}

pub fn from_rational(prec: u32, q: &Rational) -> Real {
    Float::with_val(prec, q)
}

pub fn pi(prec: u32) -> Real {
    Float::with_val(prec, Constant::Pi)
}

/// sqrt(n) for a small nonnegative integer.
pub fn sqrt_u(prec: u32, n: u32) -> Real {
    Float::with_val(prec, n).sqrt()
}

pub fn ln(x: &Real) -> Real {
    x.clone().ln()
}

pub fn exp(x: &Real) -> Real {
    x.clone().exp()
}

pub fn sqrt(x: &Real) -> Real {
    x.clone().sqrt()
}

/// x^(p/q) for positive x, exact rational exponent.
pub fn pow_rational(x: &Real, num: i32, den: u32) -> Real {
    let prec = x.prec();
    let e = Float::with_val(prec, num) / Float::with_val(prec, den);
    x.clone().pow(e)
}

pub fn gamma(x: &Real) -> Real {
    x.clone().gamma()
}

/// |a - b| / max(|a|, |b|), as f64 (coarse, for tolerance checks).
pub fn rel_diff(a: &Real, b: &Real) -> f64 {
    let prec = a.prec().max(b.prec());
    let d = Float::with_val(prec, a - b).abs();
    let m = Float::with_val(prec, a.clone().abs().max(&b.clone().abs()));
    if m == 0 {
        return 0.0;
    }
    (d / m).to_f64()
}

/// Decimal digits of agreement between a and b.
pub fn digits_agree(a: &Real, b: &Real) -> f64 {
    let r = rel_diff(a, b);
    if r == 0.0 {
        f64::INFINITY
    } else {
        -r.log10()
    }
}

/// Complex number over `Real`. Precision is carried by the parts.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Complex { re, im: zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Complex {
            re: zero(prec),
            im: zero(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        Complex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        Complex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex { re, im }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        let d = Float::with_val(p, o.re.clone().square() + o.im.clone().square());
        let re = (Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im)) / &d;
        let im = (Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im)) / &d;
        Complex { re, im }
    }

    pub fn neg(&self) -> Complex {
        Complex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, s: &Real) -> Complex {
        let p = self.prec().max(s.prec());
        Complex {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn abs(&self) -> Real {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square()).sqrt()
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        self.im.clone().atan2(&self.re)
    }

    pub fn exp(&self) -> Complex {
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(zero(self.prec()));
        Complex {
            re: c * &m,
            im: s * &m,
        }
    }

    /// Principal-branch power z^e (cut on the negative real axis).
    pub fn pow_principal(&self, e: &Real) -> Complex {
        let p = self.prec();
        let r = self.abs();
        let theta = self.arg();
        let lr = r.ln();
        let w = Complex {
            re: Float::with_val(p, &lr * e),
            im: Float::with_val(p, &theta * e),
        };
        w.exp()
    }

    /// z^(num/den) on the principal branch.
    pub fn root_principal(&self, num: i32, den: u32) -> Complex {
        let p = self.prec();
        let e = Float::with_val(p, num) / Float::with_val(p, den);
        self.pow_principal(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn complex_mul_div_roundtrip() {
        let a = Complex::new(real(P, 3.5), real(P, -1.25));
        let b = Complex::new(real(P, -0.75), real(P, 2.0));
        let c = a.mul(&b).div(&b);
        assert!(rel_diff(&c.re, &a.re) < 1e-30);
        assert!(rel_diff(&c.im, &a.im) < 1e-30);
    }

    #[test]
    fn complex_exp_of_i_pi_is_minus_one() {
        let z = Complex::new(zero(P), pi(P));
        let e = z.exp();
        assert!(rel_diff(&e.re, &real(P, -1)) < 1e-30);
        assert!(e.im.clone().abs() < 1e-30);
    }

    #[test]
    fn principal_fourth_root() {
        // (-16 + 0^+ i)^(1/4) has argument pi/4
        let z = Complex::new(real(P, -16), real(P, 1e-30));
        let r = z.root_principal(1, 4);
        let expect = Float::with_val(P, 2) * Float::with_val(P, (pi(P) / 4u32).cos());
        assert!(rel_diff(&r.re, &expect) < 1e-20);
    }

    #[test]
    fn gamma_three_quarters() {
        let g = gamma(&real(256, 0.75));
        assert!((g.to_f64() - 1.2254167024651776).abs() < 1e-15);
    }
}
