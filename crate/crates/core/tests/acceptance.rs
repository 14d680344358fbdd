//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p quadvoronoi --test acceptance -- --nocapture` to
//! see the per-criterion lines. Two sub-checks (the large-sigma pin of
//! criterion 6 and the small-volume pin of criterion 8) assert tolerances
//! that sit below the actual size of the leading asymptotic correction at
//! the pinned evaluation point; they are implemented exactly as stated and
//! fail with the measured correction size in the message.

use std::time::Instant;

use quadvoronoi::celllaw::{self, IltConfig, IltMethod};
use quadvoronoi::extrapolate::{fit_monomial_coeffs, RichardsonConfig};
use quadvoronoi::locallimit::{contour_integral, phi_mgf, ContourKind, ContourSpec};
use quadvoronoi::mapgf::{self, MapGfContext};
use quadvoronoi::real::{digits_agree, from_rational, pi, real, rel_diff, sqrt_u, Complex};
use quadvoronoi::rug::{Float, Integer, Rational};
use quadvoronoi::scaling;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((Integer::from(n), Integer::from(d)))
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_01_exact_diagonal_identity() {
    let t0 = Instant::now();
    let order2 = 40;
    let ctx = MapGfContext::new(order2);
    let n = (order2 / 2) as usize;
    for s in 0..=8u32 {
        for t in 0..=8u32 {
            let rec = ctx.x_rec(s, t).unwrap().diagonal("g");
            let closed = ctx.x_diag(s, t);
            for k in 0..=n {
                assert_eq!(
                    rec.coeff(k),
                    closed.coeff(k),
                    "X({s},{t}) diagonal vs closed form at order {k}"
                );
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = elapsed.as_secs() < 120;
    report(
        "1",
        ok,
        &format!(
            "recursion = closed form exactly, all labels <= 8, doubled order 40, in {elapsed:?}"
        ),
    );
    assert!(ok, "runtime bound 2 min exceeded: {elapsed:?}");
}

#[test]
fn criterion_02_critical_expansion_coefficients() {
    let t0 = Instant::now();
    for a in [q(1, 1), q(2, 3), q(5, 7)] {
        let a4 = Rational::from(&a * &a);
        let a4 = Rational::from(&a4 * &a4);
        let a6 = Rational::from(&a4 * &a) * &a;
        for s in 1..=3u32 {
            let (_, l) = mapgf::f_diag_eps(s, &a, 8).unwrap();
            let si = s as i64;
            assert_eq!(
                l.coeff(4),
                &(q(-(2 * si + 1), 60) * &a4),
                "eps^4 coefficient at s = {s}, a = {a}"
            );
            assert_eq!(
                l.coeff(6),
                &(q((2 * si + 1) * (10 * si * si + 10 * si + 1), 1890) * &a6),
                "eps^6 coefficient at s = {s}, a = {a}"
            );
        }
    }
    let elapsed = t0.elapsed();
    let ok = elapsed.as_secs() < 300;
    report(
        "2",
        ok,
        &format!(
            "eps^4 and eps^6 coefficients exact for s in 1..3, three rational a, in {elapsed:?}"
        ),
    );
    assert!(ok, "runtime bound 5 min exceeded: {elapsed:?}");
}

#[test]
fn criterion_03_counting_asymptotics() {
    let t0 = Instant::now();
    let cfg = RichardsonConfig {
        order: 24,
        min_points: 10,
    };
    let mut worst = 0.0f64;
    for s in 1..=3u32 {
        let (v, _) = mapgf::profile_limit(s, 200, 640, &cfg).unwrap();
        let target = from_rational(640, &mapgf::profile_constant(s).f3);
        let gap = rel_diff(&v, &target);
        worst = worst.max(gap);
        assert!(
            gap < 0.02,
            "profile limit at s = {s}: {} vs {} (rel {:.3e})",
            v.to_f64(),
            target.to_f64(),
            gap
        );
    }
    let elapsed = t0.elapsed();
    let ok = elapsed.as_secs() < 600;
    report(
        "3",
        ok,
        &format!("counting constant within 2% (worst {worst:.2e}) using N <= 200, in {elapsed:?}"),
    );
    assert!(ok, "runtime bound 10 min exceeded: {elapsed:?}");
}

#[test]
fn criterion_04_scaling_function_validation() {
    // exact polynomial symmetry
    let tb = scaling::tables();
    for i in 0..5 {
        for j in 0..5 {
            assert_eq!(tb.t[i][j].swap_vars(), tb.t[j][i], "t symmetry ({i},{j})");
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(tb.u[i][j].swap_vars(), tb.u[j][i], "u symmetry ({i},{j})");
        }
    }
    // 10 pseudo-random points against each closed form, 256-bit precision
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next01 = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst = f64::INFINITY;
    for _ in 0..10 {
        let s = real(256, 0.05 + 3.5 * next01());
        let a = real(256, 0.4 + 2.5 * next01());
        let diag = scaling::eval_f(&s, &a, &a, 256).unwrap();
        let closed = scaling::eval_f_diag(&s, &a).unwrap();
        worst = worst.min(digits_agree(&diag, &closed));
        let axis = scaling::eval_f(&s, &a, &real(256, 0), 256).unwrap();
        let closed0 = scaling::eval_f_b0(&s, &a).unwrap();
        worst = worst.min(digits_agree(&axis, &closed0));
    }
    report(
        "4",
        worst >= 30.0,
        &format!("table symmetry exact; closed-form agreement >= 30 digits (worst {worst:.1})"),
    );
    assert!(worst >= 30.0, "agreement dropped to {worst:.1} digits");
}

#[test]
fn criterion_05_scaling_correspondence() {
    let p = 512;
    let mut worst = f64::INFINITY;
    for sv in [0.25f64, 1.0, 4.0] {
        let sigma = real(p, sv);
        let e = celllaw::e_sigma(&sigma, p).unwrap();
        let tau = Float::with_val(p, sqrt_u(p, 6) * sigma.root(4));
        let phi = scaling::extract_phi_coeff(3, &tau, p).unwrap();
        let rhs = real(p, 7) / real(p, 8) * phi;
        worst = worst.min(digits_agree(&e, &rhs));
    }
    assert!(worst >= 20.0, "transform identity at {worst:.1} digits");
    let w = scaling::extraction_window(&real(p, 0), p).unwrap();
    let half = real(p, 7) / real(p, 16) * w.coeff(3).unwrap();
    let half_digits = digits_agree(&half, &real(p, 0.5));
    assert!(
        half_digits >= 30.0,
        "half sum rule at {half_digits:.1} digits"
    );
    report(
        "5",
        true,
        &format!(
            "transform = (7/8) extraction to {worst:.0} digits; half sum rule to {half_digits:.0} digits"
        ),
    );
}

#[test]
fn criterion_06_small_sigma_law() {
    let p = 512;
    let mut us = Vec::new();
    let mut fs = Vec::new();
    for k in 0..8u32 {
        let mut sigma = real(p, 1e-12);
        for _ in 0..k {
            sigma *= 10u32;
        }
        us.push(sigma.clone().root(4));
        fs.push(celllaw::e_sigma(&sigma, p).unwrap());
    }
    let coeffs = fit_monomial_coeffs(&us, &fs);
    let c1 = -(real(p, 665) * sqrt_u(p, 3) / real(p, 1024));
    let c3 = real(p, 49) / (real(p, 768) * sqrt_u(p, 3));
    let c4 = real(p, 63) / real(p, 80);
    let g1 = rel_diff(&coeffs[1], &c1);
    let g3 = rel_diff(&coeffs[3], &c3);
    let g4 = rel_diff(&coeffs[4], &c4);
    let ok = g1 < 1e-3 && g3 < 1e-3 && g4 < 1e-3;
    report(
        "6 (small-sigma)",
        ok,
        &format!("fitted quarter/three-quarter/linear coefficients within 1e-3 ({g1:.1e}, {g3:.1e}, {g4:.1e})"),
    );
    assert!(ok);
}

#[test]
fn criterion_06_large_sigma_pin() {
    // as stated: E(sigma) e^{sqrt6 sigma^{1/4}} within 1e-6 of
    // (9/2)(3 sqrt2 - 4) at sigma = 1e8. The prefactor correction is
    // algebraic, 1.3733 sigma^{-1/4}, so the gap at sigma = 1e8 is 1.35e-2;
    // 1e-6 would first hold near sigma ~ 3.6e24. Kept as stated.
    let p = 320;
    let sigma = real(p, 1e8);
    let e = celllaw::e_sigma(&sigma, p).unwrap();
    let got = e * (sqrt_u(p, 6) * sigma.root(4)).exp();
    let expect = real(p, 9) / real(p, 2) * (real(p, 3) * sqrt_u(p, 2) - real(p, 4));
    let gap = rel_diff(&got, &expect);
    let ok = gap < 1e-6;
    report(
        "6 (large-sigma pin)",
        ok,
        &format!(
            "ratio gap at sigma = 1e8 is {gap:.3e} (= 1.3733 sigma^(-1/4)); the 1e-6 pin needs sigma >~ 3.6e24"
        ),
    );
    assert!(
        ok,
        "gap {gap:.3e} at sigma = 1e8 exceeds the pinned 1e-6: the leading \
         prefactor correction is 1.3733 sigma^(-1/4) (verified over sigma = 1e8..1e24), \
         so the pinned tolerance is below the mathematical gap at this point"
    );
}

#[test]
fn criterion_07_ilt_engine() {
    let p = 320;
    let base = IltConfig {
        node_count: 48,
        precision_bits: p,
        target_tol: 1e-6,
        cross_check: false,
        method: IltMethod::DeformedContour,
    };
    // stable-law oracle to 1e-8 on [0.1, 10], both methods
    let mut worst_oracle = 0.0f64;
    for vv in [0.1f64, 0.3, 1.0, 3.0, 10.0] {
        for method in [IltMethod::DeformedContour, IltMethod::AcceleratedFourier] {
            let cfg = IltConfig { method, ..base };
            let f = |s: &Complex| celllaw::tree_e_complex(s);
            let (got, _) = celllaw::ilt(&f, &real(p, vv), &cfg).unwrap();
            let expect = celllaw::tree_p(&real(p, vv)).unwrap();
            worst_oracle = worst_oracle.max(rel_diff(&got, &expect));
        }
    }
    assert!(
        worst_oracle < 1e-8,
        "oracle inversion at {worst_oracle:.2e}"
    );
    // the two methods agree on the density to 1e-6 on [0.05, 100]
    let mut worst_agree = 0.0f64;
    for vv in [0.05f64, 0.2, 1.0, 5.0, 20.0, 100.0] {
        let (d1, _) = celllaw::p_v(
            &real(p, vv),
            &IltConfig {
                method: IltMethod::DeformedContour,
                ..base
            },
        )
        .unwrap();
        let (d2, _) = celllaw::p_v(
            &real(p, vv),
            &IltConfig {
                method: IltMethod::AcceleratedFourier,
                ..base
            },
        )
        .unwrap();
        worst_agree = worst_agree.max(rel_diff(&d1, &d2));
    }
    assert!(worst_agree < 1e-6, "method agreement at {worst_agree:.2e}");
    report(
        "7",
        true,
        &format!(
            "oracle {worst_oracle:.1e} (tol 1e-8); method agreement {worst_agree:.1e} (tol 1e-6)"
        ),
    );
}

#[test]
fn criterion_08_density_asymptotics() {
    let p = 320;
    let cfg = IltConfig {
        node_count: 44,
        precision_bits: p,
        cross_check: false,
        ..IltConfig::default()
    };
    // tail: within 10% at V = 1e4, and closer than at V = 1e2
    let (d4, _) = celllaw::p_v(&real(p, 1e4), &cfg).unwrap();
    let g4 = rel_diff(&d4, &celllaw::asympt_tail(&real(p, 1e4)).unwrap());
    let (d2, _) = celllaw::p_v(&real(p, 1e2), &cfg).unwrap();
    let g2 = rel_diff(&d2, &celllaw::asympt_tail(&real(p, 1e2)).unwrap());
    assert!(
        g4 < 0.10 && g4 < g2,
        "tail gaps {g4:.3e} (1e4) vs {g2:.3e} (1e2)"
    );
    // mass on (0, 1e6]
    let mass = celllaw::density_integral(1e-3, 1e6, &cfg, 4, false).unwrap();
    assert!(mass.to_f64() >= 0.95, "mass {}", mass.to_f64());
    // truncated mean growth exponent over [1e2, 1e6]
    let mut cumulative = celllaw::truncated_mean(1e-3, 1e2, &cfg).unwrap();
    let mut pts = vec![(1e2f64, cumulative.to_f64())];
    for (lo, hi) in [(1e2, 1e3), (1e3, 1e4), (1e4, 1e5), (1e5, 1e6)] {
        cumulative += celllaw::truncated_mean(lo, hi, &cfg).unwrap();
        pts.push((hi, cumulative.to_f64()));
    }
    let n = pts.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (x, y) in &pts {
        sx += x.ln();
        sy += y.ln();
        sxx += x.ln() * x.ln();
        sxy += x.ln() * y.ln();
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    assert!(
        (slope - 0.75).abs() <= 0.05,
        "truncated mean growth exponent {slope:.4}"
    );
    report(
        "8 (tail, mass, mean growth)",
        true,
        &format!(
            "tail gap {g4:.2e} at 1e4 (< {g2:.2e} at 1e2); mass {:.4} >= 0.95; mean exponent {slope:.3}",
            mass.to_f64()
        ),
    );
}

#[test]
fn criterion_08_flat_pin() {
    // as stated: density within 20% of the flat closed form at V = 0.05.
    // The saddle correction is ~ 1.1 V^{1/3}: the measured gap at V = 0.05
    // is 34%, and 20% is first reached near V ~ 0.005. Kept as stated.
    let p = 320;
    let cfg = IltConfig {
        node_count: 44,
        precision_bits: p,
        cross_check: false,
        ..IltConfig::default()
    };
    let (d, _) = celllaw::p_v(&real(p, 0.05), &cfg).unwrap();
    let f = celllaw::asympt_flat(&real(p, 0.05)).unwrap();
    let gap = rel_diff(&d, &f);
    let ok = gap < 0.20;
    report(
        "8 (flat pin)",
        ok,
        &format!("gap to the flat form at V = 0.05 is {gap:.3} (~1.1 V^(1/3)); 20% first holds near V ~ 0.005"),
    );
    assert!(
        ok,
        "gap {gap:.3} at V = 0.05 exceeds the pinned 20%: the saddle-point \
         form carries an algebraic correction ~ 1.1 V^(1/3) (measured 0.34 at \
         V = 0.05 falling to 0.16 at V = 0.002), so the pinned tolerance is \
         below the mathematical gap at this point"
    );
}

#[test]
fn criterion_09_contour_integrals() {
    let spec = ContourSpec {
        precision_bits: 512,
        target_tol: 1e-36,
        ..ContourSpec::default()
    };
    let p = spec.precision_bits;
    let base = real(p, 162) / pi(p).sqrt();
    let mut worst = 0.0f64;
    for muv in [0.0f64, 1.0] {
        let mu = real(p, muv);
        let (v6, _) = contour_integral(ContourKind::A6, &mu, &spec).unwrap();
        worst = worst.max(rel_diff(&v6, &base));
        let (vq, _) = contour_integral(ContourKind::QuarticShift, &mu, &spec).unwrap();
        let expect = Float::with_val(p, &base * mu.exp());
        worst = worst.max(rel_diff(&vq, &expect));
    }
    assert!(worst < 1e-10, "contour reference values at {worst:.2e}");
    let mut vanish: f64 = 0.0;
    for kind in [ContourKind::Const, ContourKind::Quartic] {
        let (v, _) = contour_integral(kind, &real(p, 0.7), &spec).unwrap();
        vanish = vanish.max(v.abs().to_f64());
    }
    assert!(
        vanish < 1e-20,
        "symmetry-vanishing integrals at {vanish:.2e}"
    );
    let mut worst_mgf = 0.0f64;
    for muv in [-1.0f64, 0.0, 1.0] {
        let mu = real(p, muv);
        let got = phi_mgf(&mu, &spec).unwrap();
        let expect = (real(p, 1) + mu.exp()) / 2u32;
        worst_mgf = worst_mgf.max(rel_diff(&got, &expect));
    }
    assert!(worst_mgf < 1e-10, "fraction transform at {worst_mgf:.2e}");
    report(
        "9",
        true,
        &format!("values {worst:.1e} (tol 1e-10); vanishing {vanish:.1e} (tol 1e-20); transform {worst_mgf:.1e}"),
    );
}

#[test]
fn criterion_10_escape_probability() {
    use quadvoronoi::asym;
    assert_eq!(asym::pi_rational(&q(0, 1)).unwrap(), q(1, 2));
    assert_eq!(asym::pi_rational(&q(1, 1)).unwrap(), q(1, 1));
    assert_eq!(asym::pi_rational(&q(-1, 1)).unwrap(), q(0, 1));
    assert!(asym::pi_reflection_identity_holds());
    for (n, d) in [(1i64, 3i64), (-4, 9), (17, 20)] {
        let rep = asym::check_expansion_consistency(&q(3, 4), &q(n, d)).unwrap();
        assert!(rep.s3_matches_pi && rep.s1_reduces_at_zero && rep.reflection_sum_is_one);
    }
    report(
        "10",
        true,
        "escape-probability identities and expansion consistency hold exactly",
    );
}
