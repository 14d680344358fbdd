//! Truncated univariate power series with exact rational coefficients.
//!
//! A `RationalSeries` stores coefficients 0..=order densely. Binary
//! operations truncate to the minimum order of the operands; nothing ever
//! silently extends the truncation. All arithmetic is exact.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    var: String,
    order: usize,
    coeffs: Vec<Rational>, // length order + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RationalSeries {
    pub fn zero(var: &str, order: usize) -> Self {
        RationalSeries {
            var: var.to_owned(),
            order,
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    pub fn constant(var: &str, order: usize, c: Rational) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::constant(var, order, Rational::from(1))
    }

    /// The monomial c * var^k.
    pub fn monomial(var: &str, order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series var^1.
    pub fn identity(var: &str, order: usize) -> Self {
        Self::monomial(var, order, 1, Rational::from(1))
    }

    pub fn from_coeffs(var: &str, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        RationalSeries {
            var: var.to_owned(),
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Convenience constructor from small integers (numerator, denominator).
    pub fn from_i64s(var: &str, pairs: &[(i64, i64)]) -> Self {
        let coeffs = pairs
            .iter()
            .map(|&(n, d)| Rational::from((Integer::from(n), Integer::from(d))))
            .collect();
        Self::from_coeffs(var, coeffs)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        assert!(
            k <= self.order,
            "coefficient {} beyond order {}",
            k,
            self.order
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.cmp0() == std::cmp::Ordering::Equal)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| c.cmp0() != std::cmp::Ordering::Equal)
    }

    /// Same coefficients, truncated (or zero-extended is forbidden: new_order <= order).
    pub fn truncated(&self, new_order: usize) -> Self {
        assert!(new_order <= self.order);
        RationalSeries {
            var: self.var.clone(),
            order: new_order,
            coeffs: self.coeffs[..=new_order].to_vec(),
        }
    }

    fn check_var(&self, o: &Self) {
        assert_eq!(
            self.var, o.var,
            "series variable mismatch: {} vs {}",
            self.var, o.var
        );
    }

    pub fn neg(&self) -> Self {
        RationalSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_var(o);
        let order = self.order.min(o.order);
        let coeffs = (0..=order)
            .map(|k| Rational::from(&self.coeffs[k] + &o.coeffs[k]))
            .collect();
        RationalSeries {
            var: self.var.clone(),
            order,
            coeffs,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_var(o);
        let order = self.order.min(o.order);
        let coeffs = (0..=order)
            .map(|k| Rational::from(&self.coeffs[k] - &o.coeffs[k]))
            .collect();
        RationalSeries {
            var: self.var.clone(),
            order,
            coeffs,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_var(o);
        let order = self.order.min(o.order);
        let mut coeffs = vec![Rational::new(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.cmp0() == std::cmp::Ordering::Equal {
                    continue;
                }
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        RationalSeries {
            var: self.var.clone(),
            order,
            coeffs,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    /// Division; the divisor must have a nonzero constant term.
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check_var(o);
        if o.coeffs[0].cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::DivByZeroConstant);
        }
        let order = self.order.min(o.order);
        let inv0 = Rational::from(o.coeffs[0].clone().recip());
        let mut q = vec![Rational::new(); order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                if q[j].cmp0() != std::cmp::Ordering::Equal {
                    acc -= Rational::from(&q[j] * &o.coeffs[k - j]);
                }
            }
            q[k] = acc * &inv0;
        }
        Ok(RationalSeries {
            var: self.var.clone(),
            order,
            coeffs: q,
        })
    }

    /// Division of series with a common exact zero of order `val` at 0:
    /// returns (a / x^val) / (b / x^val), truncated to order - val.
    pub fn div_with_valuation(&self, o: &Self, val: usize) -> Result<Self> {
        self.check_var(o);
        let order = self.order.min(o.order);
        assert!(val <= order);
        for k in 0..val {
            assert!(
                self.coeffs[k].cmp0() == std::cmp::Ordering::Equal
                    && o.coeffs[k].cmp0() == std::cmp::Ordering::Equal,
                "claimed valuation {} not satisfied at index {}",
                val,
                k
            );
        }
        let a = RationalSeries::from_coeffs(&self.var, self.coeffs[val..=order].to_vec());
        let b = RationalSeries::from_coeffs(&self.var, o.coeffs[val..=order].to_vec());
        a.div(&b)
    }

    /// Termwise derivative (order drops by one).
    pub fn derivative(&self) -> Self {
        if self.order == 0 {
            return Self::zero(&self.var, 0);
        }
        let coeffs = (1..=self.order)
            .map(|k| Rational::from(&self.coeffs[k] * Rational::from(k as u64)))
            .collect();
        RationalSeries {
            var: self.var.clone(),
            order: self.order - 1,
            coeffs,
        }
    }

    /// Termwise antiderivative with zero constant (order rises by one).
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Rational::new(); self.order + 2];
        for k in 0..=self.order {
            coeffs[k + 1] = Rational::from(&self.coeffs[k] / Rational::from((k + 1) as u64));
        }
        RationalSeries {
            var: self.var.clone(),
            order: self.order + 1,
            coeffs,
        }
    }

    /// log f for f with constant term exactly 1, via log f = integral of f'/f.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != 1u32 {
            return Err(Error::LogConstantNotOne(self.coeffs[0].to_string()));
        }
        if self.order == 0 {
            return Ok(Self::zero(&self.var, 0));
        }
        let num = self.derivative();
        let den = self.truncated(self.order - 1);
        Ok(num.div(&den)?.integral())
    }

    /// exp f for f with constant term exactly 0, by solving g' = f' g.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].cmp0() != std::cmp::Ordering::Equal {
            return Err(Error::ExpConstantNotZero);
        }
        let mut g = vec![Rational::new(); self.order + 1];
        g[0] = Rational::from(1);
        // g_{n} = (1/n) * sum_{k=1..n} k f_k g_{n-k}
        for n in 1..=self.order {
            let mut acc = Rational::new();
            for k in 1..=n {
                if self.coeffs[k].cmp0() != std::cmp::Ordering::Equal {
                    acc += Rational::from(&self.coeffs[k] * &g[n - k]) * Rational::from(k as u64);
                }
            }
            g[n] = acc / Rational::from(n as u64);
        }
        Ok(RationalSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: g,
        })
    }

    /// f^(num/den) for f with constant term exactly 1 (binomial series).
    pub fn pow_rational(&self, num: i64, den: u64) -> Result<Self> {
        let e = Rational::from((Integer::from(num), Integer::from(den)));
        Ok(self.log()?.scale(&e).truncated(self.order).exp()?)
    }

    /// Composition f(g) for g with zero constant term. The result keeps the
    /// variable of `g`. Horner evaluation, O(order^3) coefficient ops.
    pub fn compose(&self, g: &Self) -> Self {
        assert!(
            g.coeffs[0].cmp0() == std::cmp::Ordering::Equal,
            "composition requires inner constant term 0"
        );
        let order = self.order.min(g.order);
        let gt = g.truncated(order);
        let mut acc = RationalSeries::constant(&g.var, order, self.coeffs[self.order].clone());
        for k in (0..self.order).rev() {
            acc = acc.mul(&gt);
            acc.coeffs[0] += &self.coeffs[k];
        }
        acc
    }

    /// Compositional inverse: returns h with f(h(y)) = y + O(y^{order+1}).
    /// Requires f(0) = 0 and f'(0) != 0. The result is a series in `new_var`.
    pub fn revert(&self, new_var: &str) -> Result<Self> {
        if self.coeffs[0].cmp0() != std::cmp::Ordering::Equal
            || self.order < 1
            || self.coeffs[1].cmp0() == std::cmp::Ordering::Equal
        {
            return Err(Error::BadReversion);
        }
        let n = self.order;
        let a1_inv = Rational::from(self.coeffs[1].clone().recip());
        // order-by-order back-substitution on h = sum b_k y^k
        let mut h = RationalSeries::zero(new_var, n);
        h.coeffs[1] = a1_inv.clone();
        // f with variable renamed to new_var so compose type-checks
        let f = RationalSeries {
            var: new_var.to_owned(),
            order: n,
            coeffs: self.coeffs.clone(),
        };
        for m in 2..=n {
            // residual of f(h) at order m determines b_m
            let r = f.compose(&h.truncated(m));
            h.coeffs[m] = -Rational::from(&r.coeffs[m] * &a1_inv);
        }
        Ok(h)
    }

    /// Horner evaluation at a real point.
    pub fn eval_real(&self, x: &Real) -> Real {
        let prec = x.prec();
        let mut acc = crate::real::from_rational(prec, &self.coeffs[self.order]);
        for k in (0..self.order).rev() {
            acc = acc * x + crate::real::from_rational(prec, &self.coeffs[k]);
        }
        acc
    }
}

/// Checked arithmetic entry point: validates the variables, then dispatches.
pub fn series_arith(a: &RationalSeries, b: &RationalSeries, op: ArithOp) -> Result<RationalSeries> {
    if a.var() != b.var() {
        return Err(Error::VarMismatch(a.var().to_owned(), b.var().to_owned()));
    }
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((Integer::from(n), Integer::from(d)))
    }

    #[test]
    fn difference_of_squares() {
        let a = RationalSeries::from_i64s("x", &[(1, 1), (1, 1), (0, 1)]);
        let b = RationalSeries::from_i64s("x", &[(1, 1), (-1, 1), (0, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), &q(1, 1));
        assert_eq!(p.coeff(1), &q(0, 1));
        assert_eq!(p.coeff(2), &q(-1, 1));
    }

    #[test]
    fn geometric_series() {
        let one = RationalSeries::one("x", 3);
        let den = RationalSeries::from_i64s("x", &[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        let r = one.div(&den).unwrap();
        for k in 0..=3 {
            assert_eq!(r.coeff(k), &q(1, 1));
        }
    }

    #[test]
    fn long_division_matches_g_of_x() {
        // (x + x^2 + x^3) / (1 + 8x + 18x^2 + 8x^3 + x^4) = x - 7x^2 + 39x^3 - 194x^4 + ...
        let num = RationalSeries::from_i64s("x", &[(0, 1), (1, 1), (1, 1), (1, 1), (0, 1)]);
        let den = RationalSeries::from_i64s("x", &[(1, 1), (8, 1), (18, 1), (8, 1), (1, 1)]);
        let r = num.div(&den).unwrap();
        // oracle: plain long division carried out independently
        let mut rem = num.coeffs().to_vec();
        let mut quot = vec![Rational::new(); 5];
        for k in 0..=4 {
            quot[k] = rem[k].clone();
            for j in 1..=(4 - k) {
                let t = Rational::from(&quot[k] * den.coeff(j));
                rem[k + j] -= t;
            }
        }
        for k in 0..=4 {
            assert_eq!(r.coeff(k), &quot[k]);
        }
        assert_eq!(r.coeff(1), &q(1, 1));
        assert_eq!(r.coeff(2), &q(-7, 1));
        assert_eq!(r.coeff(3), &q(39, 1));
        assert_eq!(r.coeff(4), &q(-194, 1));
    }

    #[test]
    fn division_by_zero_constant_rejected() {
        let a = RationalSeries::one("x", 2);
        let b = RationalSeries::identity("x", 2);
        assert!(matches!(a.div(&b), Err(Error::DivByZeroConstant)));
    }

    #[test]
    fn var_mismatch_rejected() {
        let a = RationalSeries::one("x", 2);
        let b = RationalSeries::one("y", 2);
        assert!(matches!(
            series_arith(&a, &b, ArithOp::Add),
            Err(Error::VarMismatch(_, _))
        ));
    }

    #[test]
    fn truncation_is_min_of_orders() {
        let a = RationalSeries::one("x", 5);
        let b = RationalSeries::one("x", 3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn revert_identity() {
        let f = RationalSeries::identity("x", 6);
        let h = f.revert("y").unwrap();
        assert_eq!(h, RationalSeries::identity("y", 6));
    }

    #[test]
    fn revert_example() {
        // revert(x - 7x^2 + 39x^3) = g + 7g^2 + 59g^3, checked by back-substitution
        let f = RationalSeries::from_i64s("x", &[(0, 1), (1, 1), (-7, 1), (39, 1)]);
        let h = f.revert("g").unwrap();
        assert_eq!(h.coeff(1), &q(1, 1));
        assert_eq!(h.coeff(2), &q(7, 1));
        assert_eq!(h.coeff(3), &q(59, 1));
        // f(h(y)) = y
        let fh = RationalSeries::from_coeffs("g", f.coeffs().to_vec()).compose(&h);
        assert_eq!(fh, RationalSeries::identity("g", 3));
    }

    #[test]
    fn log_of_one_is_zero() {
        let f = RationalSeries::one("x", 4);
        assert!(f.log().unwrap().is_zero());
    }

    #[test]
    fn mercator_series() {
        let f = RationalSeries::from_i64s("x", &[(1, 1), (1, 1), (0, 1), (0, 1)]);
        let l = f.log().unwrap();
        assert_eq!(l.coeff(1), &q(1, 1));
        assert_eq!(l.coeff(2), &q(-1, 2));
        assert_eq!(l.coeff(3), &q(1, 3));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = RationalSeries::from_i64s(
            "x",
            &[
                (1, 1),
                (1, 1),
                (1, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
            ],
        );
        let g = f.log().unwrap().exp().unwrap();
        for k in 0..=8 {
            assert_eq!(g.coeff(k), f.coeff(k), "coefficient {}", k);
        }
    }

    #[test]
    fn log_requires_unit_constant() {
        let f = RationalSeries::from_i64s("x", &[(2, 1), (1, 1)]);
        assert!(matches!(f.log(), Err(Error::LogConstantNotOne(_))));
    }

    #[test]
    fn revert_requires_zero_constant_and_unit() {
        let f = RationalSeries::one("x", 3);
        assert!(matches!(f.revert("y"), Err(Error::BadReversion)));
        let g = RationalSeries::monomial("x", 3, 2, q(1, 1));
        assert!(matches!(g.revert("y"), Err(Error::BadReversion)));
    }
}
