//! Truncated bivariate series on the half-integer exponent grid.
//!
//! Terms g^{n1} h^{n2} are indexed by doubled exponents (2n1, 2n2), so
//! half-integer exponents stay exact and hashable. The doubled total degree
//! 2n1 + 2n2 of every stored term is even (the total volume n1 + n2 is an
//! integer) and bounded by the truncation `order2`.
//!
//! Storage is sparse within each total degree: a vector indexed by doubled
//! total degree, each entry mapping 2n1 to the coefficient. This makes
//! degree-truncated convolution cheap at the orders the recursion needs.

use rug::Rational;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::series::rational::RationalSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGridSeries {
    order2: u32,
    /// by_degree[d] maps 2n1 -> coefficient of g^{n1} h^{(d - 2n1)/2}
    by_degree: Vec<BTreeMap<u32, Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfGridOp {
    Add,
    Mul,
}

impl HalfGridSeries {
    pub fn zero(order2: u32) -> Self {
        HalfGridSeries {
            order2,
            by_degree: vec![BTreeMap::new(); order2 as usize + 1],
        }
    }

    pub fn one(order2: u32) -> Self {
        let mut s = Self::zero(order2);
        s.by_degree[0].insert(0, Rational::from(1));
        s
    }

    /// Monomial with doubled exponents (k1, k2); the doubled total degree
    /// must be even and within truncation.
    pub fn monomial(order2: u32, k1: u32, k2: u32, c: Rational) -> Self {
        assert!((k1 + k2) % 2 == 0, "total volume must be an integer");
        assert!(k1 + k2 <= order2, "monomial beyond truncation");
        let mut s = Self::zero(order2);
        if c.cmp0() != std::cmp::Ordering::Equal {
            s.by_degree[(k1 + k2) as usize].insert(k1, c);
        }
        s
    }

    pub fn order2(&self) -> u32 {
        self.order2
    }

    /// Coefficient of g^{k1/2} h^{k2/2}; zero for absent in-range keys,
    /// error beyond the truncation order.
    pub fn coeff(&self, k1: u32, k2: u32) -> Result<Rational> {
        if k1 + k2 > self.order2 {
            return Err(Error::BeyondTruncation(k1, k2, self.order2));
        }
        Ok(self.by_degree[(k1 + k2) as usize]
            .get(&k1)
            .cloned()
            .unwrap_or_default())
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.iter().all(|m| m.is_empty())
    }

    /// Iterate nonzero terms as ((2n1, 2n2), coeff).
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.by_degree
            .iter()
            .enumerate()
            .flat_map(|(d, m)| m.iter().map(move |(&k1, c)| ((k1, d as u32 - k1), c)))
    }

    fn set(&mut self, k1: u32, d: u32, c: Rational) {
        if c.cmp0() == std::cmp::Ordering::Equal {
            self.by_degree[d as usize].remove(&k1);
        } else {
            self.by_degree[d as usize].insert(k1, c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order2 = self.order2.min(o.order2);
        let mut r = Self::zero(order2);
        for d in 0..=order2 as usize {
            let mut m = self.by_degree[d].clone();
            for (&k1, c) in &o.by_degree[d] {
                let e = m.entry(k1).or_default();
                *e += c;
            }
            m.retain(|_, v| v.cmp0() != std::cmp::Ordering::Equal);
            r.by_degree[d] = m;
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        for m in &mut r.by_degree {
            for (_, c) in m.iter_mut() {
                *c = Rational::from(-&*c);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0() == std::cmp::Ordering::Equal {
            return Self::zero(self.order2);
        }
        let mut r = self.clone();
        for m in &mut r.by_degree {
            for (_, v) in m.iter_mut() {
                *v = Rational::from(&*v * c);
            }
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order2 = self.order2.min(o.order2);
        let mut r = Self::zero(order2);
        for (da, ma) in self.by_degree.iter().enumerate() {
            if da as u32 > order2 || ma.is_empty() {
                continue;
            }
            let dmax = (order2 as usize) - da;
            for (db, mb) in o.by_degree.iter().enumerate().take(dmax + 1) {
                if mb.is_empty() {
                    continue;
                }
                let target = &mut r.by_degree[da + db];
                for (&ka, ca) in ma {
                    for (&kb, cb) in mb {
                        let e = target.entry(ka + kb).or_default();
                        *e += Rational::from(ca * cb);
                    }
                }
            }
        }
        for m in &mut r.by_degree {
            m.retain(|_, v| v.cmp0() != std::cmp::Ordering::Equal);
        }
        r
    }

    /// 1 / (1 - w) where self = 1 - w with w of positive valuation
    /// (zero constant term apart from the leading 1).
    pub fn reciprocal_unit(&self) -> Result<Self> {
        let order2 = self.order2;
        let c0 = self.coeff(0, 0)?;
        if c0 != 1u32 {
            return Err(Error::DivByZeroConstant);
        }
        // y * self = 1, solved degree by degree
        let mut y = Self::one(order2);
        for d in (1..=order2 as usize).step_by(1) {
            // coefficient block of (y * self) at degree d must vanish
            let mut block: BTreeMap<u32, Rational> = BTreeMap::new();
            for da in 0..d {
                let ma = &y.by_degree[da];
                if ma.is_empty() {
                    continue;
                }
                let mb = &self.by_degree[d - da];
                if mb.is_empty() {
                    continue;
                }
                for (&ka, ca) in ma {
                    for (&kb, cb) in mb {
                        let e = block.entry(ka + kb).or_default();
                        *e += Rational::from(ca * cb);
                    }
                }
            }
            for (k1, c) in block {
                y.set(k1, d as u32, -c);
            }
        }
        Ok(y)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0)?;
        if c0 != 1u32 {
            return Err(Error::LogConstantNotOne(c0.to_string()));
        }
        let mut u = self.clone();
        u.by_degree[0].clear(); // u = self - 1, valuation >= 1
        let min_val = u
            .by_degree
            .iter()
            .position(|m| !m.is_empty())
            .unwrap_or(self.order2 as usize + 1);
        if min_val > self.order2 as usize {
            return Ok(Self::zero(self.order2));
        }
        let kmax = self.order2 as usize / min_val;
        let mut acc = u.clone();
        let mut pw = u.clone();
        for k in 2..=kmax {
            pw = pw.mul(&u);
            if pw.is_zero() {
                break;
            }
            let sign = if k % 2 == 0 { -1i64 } else { 1i64 };
            let c = Rational::from((rug::Integer::from(sign), rug::Integer::from(k as u64)));
            acc = acc.add(&pw.scale(&c));
        }
        Ok(acc)
    }

    /// Diagonal specialization h = g: returns the univariate series in g,
    /// of order order2 / 2.
    pub fn diagonal(&self, var: &str) -> RationalSeries {
        let n = (self.order2 / 2) as usize;
        let mut coeffs = vec![Rational::new(); n + 1];
        for (d, m) in self.by_degree.iter().enumerate() {
            if m.is_empty() {
                continue;
            }
            debug_assert!(d % 2 == 0, "odd doubled total degree {} stored", d);
            if d / 2 > n {
                continue;
            }
            for (_, c) in m {
                coeffs[d / 2] += c;
            }
        }
        RationalSeries::from_coeffs(var, coeffs)
    }

    /// Exchange of the two variables (g, h): X(g,h) -> X(h,g).
    pub fn transpose(&self) -> Self {
        let mut r = Self::zero(self.order2);
        for ((k1, k2), c) in self.terms() {
            r.by_degree[(k1 + k2) as usize].insert(k2, c.clone());
        }
        r
    }

    /// Embed a univariate series f(g) with integer exponents: g^k -> key (2k, 0).
    pub fn from_univariate_g(f: &RationalSeries, order2: u32) -> Self {
        let mut s = Self::zero(order2);
        for (k, c) in f.coeffs().iter().enumerate() {
            if 2 * k as u32 <= order2 && c.cmp0() != std::cmp::Ordering::Equal {
                s.by_degree[2 * k].insert(2 * k as u32, c.clone());
            }
        }
        s
    }

    /// Embed a univariate series f(h): h^k -> key (0, 2k).
    pub fn from_univariate_h(f: &RationalSeries, order2: u32) -> Self {
        let mut s = Self::zero(order2);
        for (k, c) in f.coeffs().iter().enumerate() {
            if 2 * k as u32 <= order2 && c.cmp0() != std::cmp::Ordering::Equal {
                s.by_degree[2 * k].insert(0, c.clone());
            }
        }
        s
    }
}

/// Checked arithmetic entry point for the half-grid series.
pub fn halfgrid_arith(a: &HalfGridSeries, b: &HalfGridSeries, op: HalfGridOp) -> HalfGridSeries {
    match op {
        HalfGridOp::Add => a.add(b),
        HalfGridOp::Mul => a.mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn sqrt_gh_squared_is_gh() {
        let s = HalfGridSeries::monomial(8, 1, 1, q(1));
        let p = s.mul(&s);
        assert_eq!(p.coeff(2, 2).unwrap(), q(1));
        assert_eq!(p.coeff(1, 1).unwrap(), q(0));
    }

    #[test]
    fn absent_in_range_key_is_zero() {
        let s = HalfGridSeries::monomial(8, 1, 1, q(1));
        assert_eq!(s.coeff(4, 0).unwrap(), q(0));
    }

    #[test]
    fn beyond_truncation_errors() {
        let s = HalfGridSeries::monomial(8, 1, 1, q(1));
        assert!(matches!(
            s.coeff(6, 4),
            Err(Error::BeyondTruncation(6, 4, 8))
        ));
    }

    #[test]
    fn sqrt_gh_times_one_plus_g() {
        // sqrt(gh) * (1 + g) has [g^{3/2} h^{1/2}] = 1 and [g^{1/2} h^{1/2}] = 1
        let root = HalfGridSeries::monomial(8, 1, 1, q(1));
        let one_plus_g = HalfGridSeries::one(8).add(&HalfGridSeries::monomial(8, 2, 0, q(1)));
        let p = root.mul(&one_plus_g);
        assert_eq!(p.coeff(3, 1).unwrap(), q(1));
        assert_eq!(p.coeff(1, 1).unwrap(), q(1));
        assert_eq!(p.coeff(2, 1).unwrap(), q(0));
    }

    #[test]
    fn reciprocal_inverts() {
        // f = 1 - sqrt(gh), 1/f = 1 + sqrt(gh) + gh + ...
        let f = HalfGridSeries::one(10).sub(&HalfGridSeries::monomial(10, 1, 1, q(1)));
        let y = f.reciprocal_unit().unwrap();
        assert_eq!(y.coeff(1, 1).unwrap(), q(1));
        assert_eq!(y.coeff(2, 2).unwrap(), q(1));
        assert_eq!(y.coeff(5, 5).unwrap(), q(1));
        let prod = y.mul(&f);
        assert_eq!(prod, HalfGridSeries::one(10));
    }

    #[test]
    fn log_exponent_consistency() {
        // log(1/(1 - gh)) = gh + (gh)^2/2 + (gh)^3/3 + ...
        let f = HalfGridSeries::one(12).sub(&HalfGridSeries::monomial(12, 2, 2, q(1)));
        let l = f.reciprocal_unit().unwrap().log().unwrap();
        assert_eq!(l.coeff(2, 2).unwrap(), Rational::from((1, 1)));
        assert_eq!(l.coeff(4, 4).unwrap(), Rational::from((1, 2)));
        assert_eq!(l.coeff(6, 6).unwrap(), Rational::from((1, 3)));
    }

    #[test]
    fn mul_matches_naive_double_loop() {
        // pseudo-random sparse inputs, convolution checked by a naive loop
        let mut a = HalfGridSeries::zero(16);
        let mut b = HalfGridSeries::zero(16);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut terms_a = vec![];
        let mut terms_b = vec![];
        for _ in 0..12 {
            let k1 = (next() % 9) as u32;
            let k2 = (next() % 9) as u32;
            if (k1 + k2) % 2 != 0 || k1 + k2 > 16 {
                continue;
            }
            let c = q((next() % 19) as i64 - 9);
            let e = a.by_degree[(k1 + k2) as usize].entry(k1).or_default();
            *e += &c;
            terms_a.push((k1, k2, c));
            let k1 = (next() % 9) as u32;
            let k2 = (next() % 9) as u32;
            if (k1 + k2) % 2 != 0 || k1 + k2 > 16 {
                continue;
            }
            let c = q((next() % 19) as i64 - 9);
            let e = b.by_degree[(k1 + k2) as usize].entry(k1).or_default();
            *e += &c;
            terms_b.push((k1, k2, c));
        }
        let p = a.mul(&b);
        // naive oracle
        for d in 0..=16u32 {
            for k1 in 0..=d {
                let k2 = d - k1;
                let mut acc = Rational::new();
                for (a1, a2, ca) in &terms_a {
                    for (b1, b2, cb) in &terms_b {
                        if a1 + b1 == k1 && a2 + b2 == k2 {
                            acc += Rational::from(ca * cb);
                        }
                    }
                }
                assert_eq!(p.coeff(k1, k2).unwrap(), acc, "key ({}, {})", k1, k2);
            }
        }
    }

    #[test]
    fn transpose_and_diagonal() {
        let s = HalfGridSeries::monomial(8, 3, 1, q(5));
        let t = s.transpose();
        assert_eq!(t.coeff(1, 3).unwrap(), q(5));
        let d = s.diagonal("g");
        assert_eq!(d.coeff(2), &q(5));
    }
}
