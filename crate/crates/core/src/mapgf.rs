//! Exact generating functions for bi-pointed quadrangulations with volume
//! control on the two Voronoi cells.
//!
//! Everything is parametrized by x(g), the reversion of
//! g = x (1 + x + x^2) / (1 + 4x + x^2)^2. The one-label series R_s(g) and
//! the diagonal two-label series X_{s,t}(g,g) have closed forms in x; the
//! full X_{s,t}(g,h) is produced order by order in the total volume from its
//! chain-splitting fixed-point relation
//!
//!   X_{s,t} = 1 + sqrt(gh) R_s(g) R_t(h) X_{s,t} (1 + sqrt(gh) R_{s+1}(g) R_{t+1}(h) X_{s+1,t+1})
//!
//! which closes on a finite label table because coefficients at total volume
//! n stabilize once the labels exceed n.
//!
//! F(s,g,h) counts bi-pointed quadrangulations with the marked vertices at
//! distance 2s, with weight g^{n1} h^{n2} on the cell volumes:
//!
//!   F = log( X_{s,s} X_{s-1,s-1} / (X_{s-1,s} X_{s,s-1}) ).

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extrapolate::{richardson_limit, RichardsonConfig};
use crate::real::{from_rational, pi, real, Real};
use crate::series::halfgrid::HalfGridSeries;
use crate::series::rational::RationalSeries;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((Integer::from(n), Integer::from(d)))
}

/// g(x) = x (1 + x + x^2) / (1 + 4x + x^2)^2 as a series in x.
pub fn g_of_x(order: usize) -> RationalSeries {
    let num = RationalSeries::from_i64s("x", &pad(&[(0, 1), (1, 1), (1, 1), (1, 1)], order));
    let den =
        RationalSeries::from_i64s("x", &pad(&[(1, 1), (8, 1), (18, 1), (8, 1), (1, 1)], order));
    num.div(&den).expect("unit constant divisor")
}

fn pad(prefix: &[(i64, i64)], order: usize) -> Vec<(i64, i64)> {
    let mut v = prefix.to_vec();
    while v.len() < order + 1 {
        v.push((0, 1));
    }
    v.truncate(order + 1);
    v
}

/// x(g): compositional inverse of g(x), by Newton iteration on
/// N(x) - g D(x) = 0 with N = x(1+x+x^2), D = (1+4x+x^2)^2.
pub fn x_of_g(order: usize) -> RationalSeries {
    assert!(order >= 1);
    let g = RationalSeries::identity("g", order);
    let eval = |poly: &[i64], xs: &RationalSeries| -> RationalSeries {
        let mut acc = RationalSeries::constant("g", order, q(poly[poly.len() - 1], 1));
        for k in (0..poly.len() - 1).rev() {
            acc = acc.mul(xs);
            acc = acc.add(&RationalSeries::constant("g", order, q(poly[k], 1)));
        }
        acc
    };
    let n_poly = [0i64, 1, 1, 1];
    let d_poly = [1i64, 8, 18, 8, 1];
    let np_poly = [1i64, 2, 3];
    let dp_poly = [8i64, 36, 24, 4];
    let mut x = g.clone();
    let iters = ((order as f64).log2().ceil() as usize) + 2;
    for _ in 0..iters {
        let fx = eval(&n_poly, &x).sub(&g.mul(&eval(&d_poly, &x)));
        let dfx = eval(&np_poly, &x).sub(&g.mul(&eval(&dp_poly, &x)));
        let corr = fx.div(&dfx).expect("Newton pivot is a unit");
        x = x.sub(&corr);
    }
    x
}

/// Closed-form value of R_s at criticality (g = 1/12, x -> 1).
pub fn r_critical(s: u32) -> Rational {
    let s = s as i64;
    q(2 * s * (s + 3), (s + 1) * (s + 2))
}

/// Closed-form value of X_{s,t}(g,g) at criticality.
pub fn x_diag_critical(s: u32, t: u32) -> Rational {
    let (s, t) = (s as i64, t as i64);
    q(
        3 * (s + 1) * (t + 1) * (s + t + 3),
        (s + 3) * (t + 3) * (s + t + 1),
    )
}

/// Numeric evaluation of R_s at the parameter value x (0 <= x < 1), from the
/// closed form; used to approach the critical point.
pub fn r_at_x(s: u32, x: &Real) -> Real {
    let prec = x.prec();
    let one = real(prec, 1);
    let xp = |k: u32| -> Real {
        let mut v = real(prec, 1);
        for _ in 0..k {
            v *= x;
        }
        v
    };
    let pref_num = real(prec, 1) + real(prec, 4) * x + xp(2);
    let pref_den = real(prec, 1) + x.clone() + xp(2);
    let num = (one.clone() - xp(s)) * (one.clone() - xp(s + 3));
    let den = (one.clone() - xp(s + 1)) * (one - xp(s + 2));
    pref_num / pref_den * num / den
}

/// 4 (2s+1)(10 s^2 + 10 s + 1) / 35: the constant in the large-N count
/// F_N(s) ~ (3/4) 12^N / (sqrt(pi) N^{5/2}) * f3(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileConstant {
    pub s: u32,
    pub f3: Rational,
}

pub fn profile_constant(s: u32) -> ProfileConstant {
    assert!(s >= 1);
    let si = s as i64;
    let f3 = q(4 * (2 * si + 1) * (10 * si * si + 10 * si + 1), 35);
    ProfileConstant { s, f3 }
}

/// Context holding the series tables for a fixed truncation.
///
/// `order2` is the doubled total-volume truncation of the bivariate series;
/// univariate series are carried to order order2/2. Label tables are
/// computed for labels up to order2/2 + 2; larger labels are aliased to the
/// boundary row (coefficients have stabilized by then).
pub struct MapGfContext {
    order2: u32,
    smax: u32,
    x_series: RationalSeries,
    x_pows: RefCell<Vec<RationalSeries>>,
    r_univ: RefCell<HashMap<u32, Rc<RationalSeries>>>,
    rg: RefCell<HashMap<u32, Rc<HalfGridSeries>>>,
    rh: RefCell<HashMap<u32, Rc<HalfGridSeries>>>,
    cells: RefCell<HashMap<(u32, u32), Rc<HalfGridSeries>>>,
    sqrt_gh: HalfGridSeries,
}

impl MapGfContext {
    pub fn new(order2: u32) -> Self {
        let uorder = (order2 / 2) as usize;
        let x_series = x_of_g(uorder.max(1));
        let one = RationalSeries::one("g", uorder.max(1));
        MapGfContext {
            order2,
            smax: order2 / 2 + 2,
            x_series,
            x_pows: RefCell::new(vec![one]),
            r_univ: RefCell::new(HashMap::new()),
            rg: RefCell::new(HashMap::new()),
            rh: RefCell::new(HashMap::new()),
            cells: RefCell::new(HashMap::new()),
            sqrt_gh: HalfGridSeries::monomial(order2, 1, 1, Rational::from(1)),
        }
    }

    pub fn order2(&self) -> u32 {
        self.order2
    }

    pub fn stabilization_cutoff(&self) -> u32 {
        self.smax
    }

    /// x(g)^k, cached.
    fn x_pow(&self, k: u32) -> RationalSeries {
        let mut pows = self.x_pows.borrow_mut();
        while pows.len() <= k as usize {
            let next = pows.last().unwrap().mul(&self.x_series);
            pows.push(next);
        }
        pows[k as usize].clone()
    }

    fn one_minus_xpow(&self, k: u32) -> RationalSeries {
        let ord = self.x_series.order();
        RationalSeries::one("g", ord).sub(&self.x_pow(k))
    }

    /// R_s(g) as a univariate series (closed form composed with x(g)).
    pub fn r_series(&self, s: u32) -> Rc<RationalSeries> {
        if let Some(r) = self.r_univ.borrow().get(&s) {
            return Rc::clone(r);
        }
        let ord = self.x_series.order();
        let result = if s == 0 {
            RationalSeries::zero("g", ord)
        } else {
            let x = &self.x_series;
            let x2 = self.x_pow(2);
            let pref_num = RationalSeries::one("g", ord)
                .add(&x.scale(&q(4, 1)))
                .add(&x2);
            let pref_den = RationalSeries::one("g", ord).add(x).add(&x2);
            let num = pref_num
                .mul(&self.one_minus_xpow(s))
                .mul(&self.one_minus_xpow(s + 3));
            let den = pref_den
                .mul(&self.one_minus_xpow(s + 1))
                .mul(&self.one_minus_xpow(s + 2));
            num.div(&den).expect("R denominator has unit constant")
        };
        let rc = Rc::new(result);
        self.r_univ.borrow_mut().insert(s, Rc::clone(&rc));
        rc
    }

    /// X_{s,t}(g,g) from the closed product formula composed with x(g).
    pub fn x_diag(&self, s: u32, t: u32) -> RationalSeries {
        let num = self
            .one_minus_xpow(3)
            .mul(&self.one_minus_xpow(s + 1))
            .mul(&self.one_minus_xpow(t + 1))
            .mul(&self.one_minus_xpow(s + t + 3));
        let den = self
            .one_minus_xpow(1)
            .mul(&self.one_minus_xpow(s + 3))
            .mul(&self.one_minus_xpow(t + 3))
            .mul(&self.one_minus_xpow(s + t + 1));
        num.div(&den).expect("X denominator has unit constant")
    }

    fn r_embedded_g(&self, s: u32) -> Rc<HalfGridSeries> {
        if let Some(r) = self.rg.borrow().get(&s) {
            return Rc::clone(r);
        }
        let r = Rc::new(HalfGridSeries::from_univariate_g(
            &self.r_series(s),
            self.order2,
        ));
        self.rg.borrow_mut().insert(s, Rc::clone(&r));
        r
    }

    fn r_embedded_h(&self, t: u32) -> Rc<HalfGridSeries> {
        if let Some(r) = self.rh.borrow().get(&t) {
            return Rc::clone(r);
        }
        let r = Rc::new(HalfGridSeries::from_univariate_h(
            &self.r_series(t),
            self.order2,
        ));
        self.rh.borrow_mut().insert(t, Rc::clone(&r));
        r
    }

    /// sqrt(gh) R_s(g) R_t(h), with the R labels capped at the table boundary.
    fn chain_weight(&self, s: u32, t: u32) -> HalfGridSeries {
        let sc = s.min(self.smax + 1);
        let tc = t.min(self.smax + 1);
        self.sqrt_gh
            .mul(&self.r_embedded_g(sc))
            .mul(&self.r_embedded_h(tc))
    }

    /// X_{s,t}(g,h) to the context truncation, by the fixed-point relation.
    pub fn x_rec(&self, s: u32, t: u32) -> Result<Rc<HalfGridSeries>> {
        let sc = s.min(self.smax);
        let tc = t.min(self.smax);
        self.x_cell(sc, tc)
    }

    fn x_cell(&self, sc: u32, tc: u32) -> Result<Rc<HalfGridSeries>> {
        if let Some(x) = self.cells.borrow().get(&(sc, tc)) {
            return Ok(Rc::clone(x));
        }
        let ps = (sc + 1).min(self.smax);
        let pt = (tc + 1).min(self.smax);
        let one = HalfGridSeries::one(self.order2);
        let result = if (ps, pt) == (sc, tc) {
            // boundary cell refers to itself: iterate X = 1 + A X (1 + B X)
            let a = self.chain_weight(sc, tc);
            let b = self.chain_weight(sc + 1, tc + 1);
            let mut x = one.clone();
            let sweeps = (self.order2 / 2 + 1) as usize;
            for _ in 0..sweeps {
                let inner = one.add(&b.mul(&x));
                x = one.add(&a.mul(&x).mul(&inner));
            }
            // the fixed point is reached degree by degree; one more sweep
            // must be a no-op
            let inner = one.add(&b.mul(&x));
            let again = one.add(&a.mul(&x).mul(&inner));
            if again != x {
                return Err(Error::NonConvergentTruncation(format!(
                    "boundary cell ({}, {}) at order2 {}",
                    sc, tc, self.order2
                )));
            }
            x
        } else {
            let parent = self.x_cell(ps, pt)?;
            let a = self.chain_weight(sc, tc);
            let b = self.chain_weight(sc + 1, tc + 1);
            let w = a.mul(&one.add(&b.mul(&parent)));
            one.sub(&w).reciprocal_unit()?
        };
        let rc = Rc::new(result);
        self.cells.borrow_mut().insert((sc, tc), Rc::clone(&rc));
        Ok(rc)
    }

    /// F(s, g, h) as a half-grid series.
    pub fn f_series(&self, s: u32) -> Result<HalfGridSeries> {
        assert!(s >= 1, "F is defined for s >= 1");
        let xss = self.x_rec(s, s)?.log()?;
        let xmm = self.x_rec(s - 1, s - 1)?.log()?;
        let xms = self.x_rec(s - 1, s)?.log()?;
        let xsm = self.x_rec(s, s - 1)?.log()?;
        Ok(xss.add(&xmm).sub(&xms).sub(&xsm))
    }

    /// F(s, g, g) as a univariate series via the closed diagonal form.
    pub fn f_diag(&self, s: u32) -> Result<RationalSeries> {
        assert!(s >= 1);
        let num = self.x_diag(s, s).mul(&self.x_diag(s - 1, s - 1));
        let off = self.x_diag(s - 1, s);
        let den = off.mul(&off);
        num.div(&den)?.log()
    }
}

/// F(s,g,g) to the given univariate order, sidestepping the bivariate table.
pub fn f_diag_series(s: u32, order: usize) -> Result<RationalSeries> {
    let ctx = MapGfContext::new(2 * order as u32);
    ctx.f_diag(s)
}

/// Ratio sequence F_N(s) sqrt(pi) N^{5/2} / ((3/4) 12^N), which converges to
/// the profile constant f3(s).
pub fn profile_ratios(s: u32, max_n: usize, prec: u32) -> Result<Vec<(usize, Real)>> {
    let f = f_diag_series(s, max_n)?;
    let sqrt_pi = pi(prec).sqrt();
    let mut out = Vec::new();
    let mut pow12 = real(prec, 1);
    for n in 1..=max_n {
        pow12 *= 12u32;
        let fn_s = from_rational(prec, f.coeff(n));
        if fn_s.is_zero() {
            continue;
        }
        let n_r = real(prec, n as u32);
        let n52 = n_r.clone().square() * n_r.clone().sqrt(); // N^{5/2}
        let ratio = fn_s * &sqrt_pi * n52 / (real(prec, 3) / real(prec, 4) * &pow12);
        out.push((n, ratio));
    }
    Ok(out)
}

/// Richardson-extrapolated limit of the profile ratio sequence.
pub fn profile_limit(
    s: u32,
    max_n: usize,
    prec: u32,
    cfg: &RichardsonConfig,
) -> Result<(Real, Real)> {
    let ratios = profile_ratios(s, max_n, prec)?;
    let xs: Vec<Real> = ratios
        .iter()
        .map(|(n, _)| real(prec, 1) / real(prec, *n as u32))
        .collect();
    let ys: Vec<Real> = ratios.into_iter().map(|(_, r)| r).collect();
    richardson_limit(&xs, &ys, cfg)
}

/// Numeric estimate of p_s(n2) = lim_N F_{N-n2,n2}(s) / F_N(s), the limiting
/// probability that the second cell has volume n2 (doubled index), with a
/// Richardson error estimate.
pub fn estimate_cell_probability(
    ctx: &MapGfContext,
    s: u32,
    n2_doubled: u32,
    prec: u32,
    cfg: &RichardsonConfig,
) -> Result<(Real, Real)> {
    let f = ctx.f_series(s)?;
    let fd = ctx.f_diag(s)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let order2 = ctx.order2();
    let n_max = (order2 / 2) as usize;
    for n in 1..=n_max {
        if (2 * n as u32) < n2_doubled {
            continue;
        }
        let k1 = 2 * n as u32 - n2_doubled;
        let num = f.coeff(k1, n2_doubled)?;
        let den = fd.coeff(n);
        if den.cmp0() == std::cmp::Ordering::Equal {
            continue;
        }
        let r = Rational::from(&num / den);
        xs.push(real(prec, 1) / real(prec, n as u32));
        ys.push(from_rational(prec, &r));
    }
    richardson_limit(&xs, &ys, cfg)
}

/// Exact coefficient table of F(s,g,h) for serialization: entries are
/// (2 n1, 2 n2, numerator, denominator) with big integers as decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoeffTable {
    pub s: u32,
    pub order2: u32,
    pub entries: Vec<(u32, u32, String, String)>,
}

pub fn coeff_table(ctx: &MapGfContext, s: u32) -> Result<CoeffTable> {
    let f = ctx.f_series(s)?;
    let mut entries = Vec::new();
    for ((k1, k2), c) in f.terms() {
        entries.push((k1, k2, c.numer().to_string(), c.denom().to_string()));
    }
    entries.sort();
    Ok(CoeffTable {
        s,
        order2: ctx.order2(),
        entries,
    })
}

// ---------------------------------------------------------------------------
// Expansion around the critical point g = (1/12)(1 - a^4 eps^4 / 36)
// ---------------------------------------------------------------------------

/// x as a series in eps when g = (1/12)(1 - a^4 eps^4/36), for exact
/// rational a. Uses 1 - 12 g(1-y) = y^4 / (6 - 6y + y^2)^2, so that
/// a eps = y / sqrt(1 - y + y^2/6) =: H(y), and x = 1 - H^{-1}(a eps).
pub fn x_of_eps(a: &Rational, order: usize) -> Result<RationalSeries> {
    // h(y) = (1 - y + y^2/6)^{-1/2}
    let base = RationalSeries::from_coeffs("y", {
        let mut v = vec![Rational::new(); order + 1];
        v[0] = q(1, 1);
        if order >= 1 {
            v[1] = q(-1, 1);
        }
        if order >= 2 {
            v[2] = q(1, 6);
        }
        v
    });
    let h = base.pow_rational(-1, 2)?;
    // H(y) = y * h(y)
    let mut hy = vec![Rational::new(); order + 1];
    for k in 0..order {
        hy[k + 1] = h.coeff(k).clone();
    }
    let big_h = RationalSeries::from_coeffs("y", hy);
    let y_of_eta = big_h.revert("eps")?;
    // substitute eta = a * eps: multiply coefficient k by a^k
    let mut coeffs = y_of_eta.coeffs().to_vec();
    let mut apow = Rational::from(1);
    for (k, c) in coeffs.iter_mut().enumerate() {
        if k > 0 {
            apow *= a;
        }
        *c = Rational::from(&*c * &apow);
    }
    // x = 1 - y
    let mut x = RationalSeries::from_coeffs("eps", coeffs).neg();
    let mut xc = x.coeffs().to_vec();
    xc[0] += 1u32;
    x = RationalSeries::from_coeffs("eps", xc);
    Ok(x)
}

/// F(s, G(a,eps), G(a,eps)) as (constant c, series L with zero constant):
/// the full expansion is log(c) + L(eps). c is exactly
/// s^2 (2s+3) / ((s+1)^2 (2s-1)).
pub fn f_diag_eps(s: u32, a: &Rational, order: usize) -> Result<(Rational, RationalSeries)> {
    assert!(s >= 1);
    let work = order + 8;
    let x = x_of_eps(a, work)?;
    let xpow = |k: u32| -> RationalSeries {
        let mut acc = RationalSeries::one("eps", work);
        for _ in 0..k {
            acc = acc.mul(&x);
        }
        acc
    };
    let one_minus = |k: u32| -> RationalSeries { RationalSeries::one("eps", work).sub(&xpow(k)) };
    // X_{s,t} at x(eps): numerator and denominator both vanish to order 4
    let x_diag_eps = |ss: u32, tt: u32| -> Result<(Rational, RationalSeries)> {
        let num = one_minus(3)
            .mul(&one_minus(ss + 1))
            .mul(&one_minus(tt + 1))
            .mul(&one_minus(ss + tt + 3));
        let den = one_minus(1)
            .mul(&one_minus(ss + 3))
            .mul(&one_minus(tt + 3))
            .mul(&one_minus(ss + tt + 1));
        let ratio = num.div_with_valuation(&den, 4)?;
        let c = ratio.coeff(0).clone();
        let unit = ratio.scale(&Rational::from(c.clone().recip()));
        Ok((c, unit))
    };
    let (c1, u1) = x_diag_eps(s, s)?;
    let (c2, u2) = x_diag_eps(s - 1, s - 1)?;
    let (c3, u3) = x_diag_eps(s - 1, s)?;
    let c = Rational::from(&c1 * &c2) / Rational::from(&c3 * &c3);
    let l = u1.log()?.add(&u2.log()?).sub(&u3.log()?.scale(&q(2, 1)));
    Ok((c, l.truncated(order)))
}
