//! Truncated Laurent series in one variable with `Real` coefficients.
//!
//! Supports negative leading orders, multiplication/division with correct
//! order bookkeeping, square roots of series with even leading order, and a
//! noise-floor trim: coefficients that should cancel exactly but are computed
//! in floating point leave residue ~2^-prec, which must be treated as zero
//! before a leading coefficient is chosen for division or square root.

use crate::error::{Error, Result};
use crate::real::{zero, Real};
use rug::Float;

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    min: i64,
    coeffs: Vec<Real>, // coeffs[k] multiplies S^{min + k}
    prec: u32,
}

impl LaurentSeries {
    pub fn new(min: i64, coeffs: Vec<Real>, prec: u32) -> Self {
        assert!(!coeffs.is_empty());
        LaurentSeries { min, coeffs, prec }
    }

    pub fn zero_series(prec: u32, min: i64, len: usize) -> Self {
        LaurentSeries {
            min,
            coeffs: vec![zero(prec); len],
            prec,
        }
    }

    pub fn from_scalar(prec: u32, v: Real, len: usize) -> Self {
        let mut c = vec![zero(prec); len];
        c[0] = v;
        LaurentSeries {
            min: 0,
            coeffs: c,
            prec,
        }
    }

    /// v * S^order, carried to `len` coefficients.
    pub fn monomial(prec: u32, order: i64, v: Real, len: usize) -> Self {
        let mut c = vec![zero(prec); len];
        c[0] = v;
        LaurentSeries {
            min: order,
            coeffs: c,
            prec,
        }
    }

    /// Taylor series of exp(c * S): sum c^k S^k / k!.
    pub fn exp_linear(prec: u32, c: &Real, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut term = Float::with_val(prec, 1);
        coeffs.push(term.clone());
        for k in 1..len {
            term = Float::with_val(prec, &term * c) / Float::with_val(prec, k as u32);
            coeffs.push(term.clone());
        }
        LaurentSeries {
            min: 0,
            coeffs,
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn min_order(&self) -> i64 {
        self.min
    }

    pub fn max_order(&self) -> i64 {
        self.min + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of S^order. Orders below the window are zero (absent or
    /// trimmed); orders above it are an error (never computed).
    pub fn coeff(&self, order: i64) -> Result<Real> {
        if order > self.max_order() {
            return Err(Error::OutsideWindow(order, self.min, self.max_order()));
        }
        if order < self.min {
            return Ok(zero(self.prec));
        }
        Ok(self.coeffs[(order - self.min) as usize].clone())
    }

    fn max_exp(&self) -> Option<i32> {
        self.coeffs.iter().filter_map(|c| c.get_exp()).max()
    }

    /// Drop leading coefficients that sit below the noise floor:
    /// |c| <= max|c| * 2^-noise_bits. Returns an error if nothing survives.
    pub fn trimmed(&self, noise_bits: u32) -> Result<Self> {
        let me = match self.max_exp() {
            Some(e) => e,
            None => return Err(Error::NoLeadingCoefficient),
        };
        let floor = me - noise_bits as i32;
        let lead = self
            .coeffs
            .iter()
            .position(|c| c.get_exp().map_or(false, |e| e > floor));
        match lead {
            Some(0) => Ok(self.clone()),
            Some(k) => Ok(LaurentSeries {
                min: self.min + k as i64,
                coeffs: self.coeffs[k..].to_vec(),
                prec: self.prec,
            }),
            None => Err(Error::NoLeadingCoefficient),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            min: self.min,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, s: &Real) -> Self {
        LaurentSeries {
            min: self.min,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Float::with_val(self.prec, c * s))
                .collect(),
            prec: self.prec,
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            min: self.min + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let min = self.min.min(o.min);
        let max = self.max_order().min(o.max_order());
        assert!(max >= min, "disjoint windows in Laurent add");
        let len = (max - min + 1) as usize;
        let mut coeffs = vec![zero(prec); len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let ord = min + i as i64;
            let mut v = Float::with_val(prec, 0);
            if ord >= self.min && ord <= self.max_order() {
                v += &self.coeffs[(ord - self.min) as usize];
            }
            if ord >= o.min && ord <= o.max_order() {
                v += &o.coeffs[(ord - o.min) as usize];
            }
            *c = v;
        }
        LaurentSeries { min, coeffs, prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let min = self.min + o.min;
        let max = (self.max_order() + o.min).min(o.max_order() + self.min);
        let len = (max - min + 1) as usize;
        let mut coeffs = vec![zero(prec); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += Float::with_val(prec, a * b);
            }
        }
        LaurentSeries { min, coeffs, prec }
    }

    /// Reciprocal after a noise trim; the trimmed leading coefficient
    /// becomes the pivot.
    pub fn recip(&self, noise_bits: u32) -> Result<Self> {
        let f = self.trimmed(noise_bits)?;
        let prec = f.prec;
        let n = f.coeffs.len();
        let lead = f.coeffs[0].clone();
        let inv0 = Float::with_val(prec, 1) / &lead;
        let mut y = vec![zero(prec); n];
        y[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Float::with_val(prec, 0);
            for j in 0..k {
                acc += Float::with_val(prec, &y[j] * &f.coeffs[k - j]);
            }
            y[k] = -acc * &inv0;
        }
        Ok(LaurentSeries {
            min: -f.min,
            coeffs: y,
            prec,
        })
    }

    pub fn div(&self, o: &Self, noise_bits: u32) -> Result<Self> {
        Ok(self.mul(&o.recip(noise_bits)?))
    }

    /// Square root: requires (after trim) an even leading order and a
    /// positive leading coefficient.
    pub fn sqrt(&self, noise_bits: u32) -> Result<Self> {
        let f = self.trimmed(noise_bits)?;
        if f.min % 2 != 0 || f.coeffs[0].is_sign_negative() || f.coeffs[0].is_zero() {
            return Err(Error::BadSeriesSqrt);
        }
        let prec = f.prec;
        let n = f.coeffs.len();
        let mut y = vec![zero(prec); n];
        y[0] = f.coeffs[0].clone().sqrt();
        let two_y0 = Float::with_val(prec, &y[0] * 2u32);
        for k in 1..n {
            let mut acc = f.coeffs[k].clone();
            for j in 1..k {
                acc -= Float::with_val(prec, &y[j] * &y[k - j]);
            }
            y[k] = acc / &two_y0;
        }
        Ok(LaurentSeries {
            min: f.min / 2,
            coeffs: y,
            prec,
        })
    }

    pub fn pow_i(&self, e: u32) -> Self {
        assert!(e >= 1);
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at x; requires a nonnegative leading order.
    pub fn eval(&self, x: &Real) -> Real {
        assert!(self.min >= 0, "eval of a series with a pole");
        let prec = self.prec.max(x.prec());
        let mut acc = Float::with_val(prec, 0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        for _ in 0..self.min {
            acc = acc * x;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::real;

    const P: u32 = 192;

    #[test]
    fn product_of_leading_orders_adds() {
        let a = LaurentSeries::monomial(P, -3, real(P, 2), 8);
        let b = LaurentSeries::monomial(P, 5, real(P, 4), 8);
        let p = a.mul(&b);
        assert_eq!(p.min_order(), 2);
        assert_eq!(p.coeff(2).unwrap().to_f64(), 8.0);
    }

    #[test]
    fn recip_of_geometric() {
        // 1/(1 - S) = 1 + S + S^2 + ...
        let one = LaurentSeries::from_scalar(P, real(P, 1), 10);
        let s = LaurentSeries::monomial(P, 1, real(P, 1), 10);
        let f = one.sub(&s);
        let y = f.recip(P / 2).unwrap();
        for k in 0..9 {
            assert!((y.coeff(k).unwrap().to_f64() - 1.0).abs() < 1e-40);
        }
    }

    #[test]
    fn sqrt_roundtrip_with_pole() {
        // f = 4 S^-2 (1 + S): sqrt = 2 S^-1 sqrt(1+S)
        let mut f = LaurentSeries::zero_series(P, -2, 12);
        f.coeffs[0] = real(P, 4);
        f.coeffs[1] = real(P, 4);
        let r = f.sqrt(P / 2).unwrap();
        assert_eq!(r.min_order(), -1);
        let sq = r.mul(&r);
        assert!((sq.coeff(-2).unwrap().to_f64() - 4.0).abs() < 1e-40);
        assert!((sq.coeff(-1).unwrap().to_f64() - 4.0).abs() < 1e-40);
        assert!(sq.coeff(0).unwrap().to_f64().abs() < 1e-40);
    }

    #[test]
    fn sqrt_rejects_odd_order() {
        let f = LaurentSeries::monomial(P, -1, real(P, 1), 6);
        assert!(matches!(f.sqrt(P / 2), Err(Error::BadSeriesSqrt)));
    }

    #[test]
    fn trim_drops_noise() {
        let mut f = LaurentSeries::zero_series(P, -2, 6);
        f.coeffs[0] = real(P, 1e-50);
        f.coeffs[1] = real(P, 0);
        f.coeffs[2] = real(P, 3);
        let t = f.trimmed(96).unwrap();
        assert_eq!(t.min_order(), 0);
        assert_eq!(t.coeff(0).unwrap().to_f64(), 3.0);
    }

    #[test]
    fn window_errors() {
        let f = LaurentSeries::monomial(P, 0, real(P, 1), 4);
        assert!(f.coeff(-5).unwrap().is_zero());
        assert!(matches!(f.coeff(7), Err(Error::OutsideWindow(7, _, _))));
    }

    #[test]
    fn exp_linear_matches_scalar_exp() {
        let c = real(P, -0.7);
        let e = LaurentSeries::exp_linear(P, &c, 40);
        let x = real(P, 0.3);
        let v = e.eval(&x);
        let expect = Float::with_val(P, &c * &x).exp();
        assert!(crate::real::rel_diff(&v, &expect) < 1e-40);
    }
}
