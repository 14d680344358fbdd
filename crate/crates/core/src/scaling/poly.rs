//! Exact bivariate polynomials in (a, b), with an adjoined square-root
//! element c satisfying 2 c^2 = a^2 + b^2.
//!
//! Table coefficients are transcribed as `Poly2` values with exact rational
//! coefficients (integers as transcribed; halves can appear when products
//! reduce c^2). `CPoly` is a pair p0 + c * p1. Evaluation targets are real
//! scalars or Laurent/Taylor series in one expansion variable, with `a`
//! fixed to a scalar and `b` mapped to a series.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::real::{from_rational, Real};
use crate::series::laurent::LaurentSeries;
use rug::Float;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2 {
    /// (i, j) -> coefficient of a^i b^j
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly2::zero();
        if c != 0 {
            p.terms.insert((0, 0), Rational::from(c));
        }
        p
    }

    pub fn var_a() -> Self {
        let mut p = Poly2::zero();
        p.terms.insert((1, 0), Rational::from(1));
        p
    }

    pub fn var_b() -> Self {
        let mut p = Poly2::zero();
        p.terms.insert((0, 1), Rational::from(1));
        p
    }

    /// Homogeneous bracket of degree d: sum_k coeffs[k] a^{d-k} b^k.
    pub fn homogeneous(d: u32, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), d as usize + 1);
        let mut p = Poly2::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.terms.insert((d - k as u32, k as u32), Rational::from(c));
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (u32, u32), val: Rational) {
        let e = self.terms.entry(key).or_default();
        *e += val;
        if e.cmp0() == std::cmp::Ordering::Equal {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&k, v) in &o.terms {
            r.insert_add(k, v.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&k, v) in &o.terms {
            r.insert_add(k, Rational::from(-v));
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly2::zero().sub(self)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                r.insert_add((i1 + i2, j1 + j2), Rational::from(c1 * c2));
            }
        }
        r
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0() == std::cmp::Ordering::Equal {
            return Poly2::zero();
        }
        let mut r = self.clone();
        for (_, v) in r.terms.iter_mut() {
            *v = Rational::from(&*v * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly2::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// p(b, a): the two variables exchanged.
    pub fn swap_vars(&self) -> Self {
        let mut r = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            r.terms.insert((j, i), c.clone());
        }
        r
    }

    /// p(a, a) as a univariate polynomial in a (exponent -> coefficient).
    pub fn on_diagonal(&self) -> BTreeMap<u32, Rational> {
        let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let e = out.entry(i + j).or_default();
            *e += c;
        }
        out.retain(|_, v| v.cmp0() != std::cmp::Ordering::Equal);
        out
    }

    pub fn eval_real(&self, a: &Real, b: &Real) -> Real {
        let prec = a.prec().max(b.prec());
        // Horner in b over coefficients that are polynomials in a
        let mut by_j: BTreeMap<u32, Vec<(u32, &Rational)>> = BTreeMap::new();
        let mut max_j = 0;
        for (&(i, j), c) in &self.terms {
            by_j.entry(j).or_default().push((i, c));
            max_j = max_j.max(j);
        }
        let mut acc = Float::with_val(prec, 0);
        for j in (0..=max_j).rev() {
            acc *= b;
            if let Some(list) = by_j.get(&j) {
                for (i, c) in list {
                    let mut t = from_rational(prec, c);
                    for _ in 0..*i {
                        t *= a;
                    }
                    acc += t;
                }
            }
        }
        acc
    }

    /// Evaluation with scalar a and series b.
    pub fn eval_b_series(&self, a: &Real, b: &LaurentSeries) -> LaurentSeries {
        let prec = a.prec().max(b.prec());
        let len = b.len();
        let mut by_j: BTreeMap<u32, Real> = BTreeMap::new();
        let mut max_j = 0;
        for (&(i, j), c) in &self.terms {
            let mut t = from_rational(prec, c);
            for _ in 0..i {
                t *= a;
            }
            let e = by_j.entry(j).or_insert_with(|| Float::with_val(prec, 0));
            *e += t;
            max_j = max_j.max(j);
        }
        let mut acc = LaurentSeries::from_scalar(prec, Float::with_val(prec, 0), len);
        for j in (0..=max_j).rev() {
            acc = acc.mul(b);
            if let Some(cj) = by_j.get(&j) {
                acc = acc.add(&LaurentSeries::from_scalar(prec, cj.clone(), len));
            }
        }
        acc
    }

    /// Serialize terms as (i, j, coefficient-string) triples, sorted.
    pub fn dump(&self) -> Vec<(u32, u32, String)> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.to_string()))
            .collect()
    }

    pub fn from_dump(entries: &[(u32, u32, String)]) -> Option<Self> {
        let mut p = Poly2::zero();
        for (i, j, s) in entries {
            let c: Rational = s.parse().ok()?;
            p.insert_add((*i, *j), c);
        }
        Some(p)
    }
}

/// p0 + c * p1, c = sqrt((a^2 + b^2)/2).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CPoly {
    pub p0: Poly2,
    pub p1: Poly2,
}

impl CPoly {
    pub fn new(p0: Poly2, p1: Poly2) -> Self {
        CPoly { p0, p1 }
    }

    pub fn from_plain(p0: Poly2) -> Self {
        CPoly {
            p0,
            p1: Poly2::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        CPoly {
            p0: self.p0.add(&o.p0),
            p1: self.p1.add(&o.p1),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (p0 + c p1)(q0 + c q1) = p0 q0 + ((a^2+b^2)/2) p1 q1 + c (p0 q1 + p1 q0)
        let c2 = Poly2::homogeneous(2, &[1, 0, 1]).scale(&Rational::from((1, 2)));
        CPoly {
            p0: self.p0.mul(&o.p0).add(&self.p1.mul(&o.p1).mul(&c2)),
            p1: self.p0.mul(&o.p1).add(&self.p1.mul(&o.p0)),
        }
    }

    /// Exchange a and b (c is symmetric).
    pub fn swap_vars(&self) -> Self {
        CPoly {
            p0: self.p0.swap_vars(),
            p1: self.p1.swap_vars(),
        }
    }

    pub fn eval_real(&self, a: &Real, b: &Real, c: &Real) -> Real {
        let prec = a.prec().max(b.prec());
        let v0 = self.p0.eval_real(a, b);
        let v1 = self.p1.eval_real(a, b);
        v0 + Float::with_val(prec, &v1 * c)
    }

    pub fn eval_b_series(&self, a: &Real, b: &LaurentSeries, c: &LaurentSeries) -> LaurentSeries {
        let v0 = self.p0.eval_b_series(a, b);
        let v1 = self.p1.eval_b_series(a, b);
        v0.add(&v1.mul(c))
    }
}

/// Exact rational from integer pair helper.
pub fn rat(n: i64, d: u64) -> Rational {
    Rational::from((Integer::from(n), Integer::from(d)))
}
