//! Cross-cutting invariants checked on randomized inputs: monotonicity of
//! sup estimates, domination of majorants, Schwarz and Borel-Caratheodory
//! inequalities on seeded corpora, and agreement between independent
//! computations of the same quantity.

use bohr_core::{
    absolute_basis_constant, borel_caratheodory_check, eval_combination, gamma_closed_form,
    gamma_curve, gamma_lp, kappa_upper_search, majorant, random_series, ratio_sum, schwarz_step,
    sup_norm, BasisFamily, CompactSet, DomainFamily, ExhaustionSpec, LpProblem, MethodPolicy,
    SamplingPlan,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small_coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..10)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    /// Sups over nested balls are monotone in the radius.
    #[test]
    fn sup_is_monotone_in_the_radius(
        coeffs in small_coeffs(),
        r in 0.2f64..1.5,
        bump in 0.1f64..1.0,
    ) {
        let plan = SamplingPlan::default();
        let cs: Vec<Complex64> = coeffs.iter().map(|&(a, b)| c(a, b)).collect();
        let b = BasisFamily::monomial(1).unwrap();
        let inner = CompactSet::ball0(1, r).unwrap();
        let outer = CompactSet::ball0(1, r + bump).unwrap();
        let si = sup_norm(|z| eval_combination(&b, &cs, z).unwrap(), &inner, &plan).unwrap();
        let so = sup_norm(|z| eval_combination(&b, &cs, z).unwrap(), &outer, &plan).unwrap();
        prop_assert!(si.value <= so.value + 1e-12);
    }

    /// Doubling the boundary grid never loses sup mass.
    #[test]
    fn finer_grids_do_not_decrease_sups(
        coeffs in small_coeffs(),
        r in 0.3f64..2.0,
    ) {
        let cs: Vec<Complex64> = coeffs.iter().map(|&(a, b)| c(a, b)).collect();
        let b = BasisFamily::monomial(1).unwrap();
        let k = CompactSet::ball0(1, r).unwrap();
        let coarse = SamplingPlan::new(64, 16, 0, 1).unwrap();
        let fine = SamplingPlan::new(128, 16, 0, 1).unwrap();
        let sc = sup_norm(|z| eval_combination(&b, &cs, z).unwrap(), &k, &coarse).unwrap();
        let sf = sup_norm(|z| eval_combination(&b, &cs, z).unwrap(), &k, &fine).unwrap();
        prop_assert!(sf.value >= sc.value - 1e-9);
    }

    /// Dilation composes multiplicatively on discs and in the exponent on
    /// ellipses (Green-parameter convention).
    #[test]
    fn dilation_composes(a in 1.0f64..3.0, b in 1.0f64..3.0) {
        let ball = CompactSet::ball0(2, 1.0).unwrap();
        let two_step = ball.dilate(a).unwrap().dilate(b).unwrap();
        let one_step = ball.dilate(a * b).unwrap();
        match (&two_step, &one_step) {
            (CompactSet::Ball { radius: x, .. }, CompactSet::Ball { radius: y, .. }) => {
                prop_assert!((x - y).abs() <= 1e-12 * y.abs());
            }
            other => prop_assert!(false, "unexpected shapes {other:?}"),
        }
        let seg = CompactSet::segment();
        let e2 = seg.dilate(a).unwrap().dilate(b).unwrap();
        let e1 = seg.dilate(a.powf(b)).unwrap();
        match (&e2, &e1) {
            (
                CompactSet::BernsteinEllipse { rho: x },
                CompactSet::BernsteinEllipse { rho: y },
            ) => prop_assert!((x - y).abs() <= 1e-9 * y.abs()),
            other => prop_assert!(false, "unexpected shapes {other:?}"),
        }
    }

    /// Combinations evaluate linearly in the coefficients.
    #[test]
    fn evaluation_is_linear(
        coeffs in small_coeffs(),
        alpha in -2.0f64..2.0,
        x in -0.9f64..0.9,
        y in -0.9f64..0.9,
    ) {
        let b = BasisFamily::faber_segment();
        let cs: Vec<Complex64> = coeffs.iter().map(|&(p, q)| c(p, q)).collect();
        let scaled: Vec<Complex64> = cs.iter().map(|v| v * alpha).collect();
        let z = [c(x, y)];
        let one = eval_combination(&b, &cs, &z).unwrap();
        let two = eval_combination(&b, &scaled, &z).unwrap();
        prop_assert!((two - one * alpha).norm() <= 1e-10 * (1.0 + one.norm() * alpha.abs()));
    }

    /// The majorant dominates the sampled sup on the same compact.
    #[test]
    fn majorant_dominates_the_sup(
        coeffs in small_coeffs(),
        r in 0.2f64..2.0,
    ) {
        let plan = SamplingPlan::default();
        let b = BasisFamily::monomial(1).unwrap();
        let cs: Vec<Complex64> = coeffs.iter().map(|&(p, q)| c(p, q)).collect();
        let k = CompactSet::ball0(1, r).unwrap();
        let maj = majorant(&cs, &b, &k, &plan).unwrap();
        let sup = sup_norm(|z| eval_combination(&b, &cs, z).unwrap(), &k, &plan).unwrap();
        prop_assert!(maj >= sup.value - 1e-9);
    }

    /// A scaled feasible point never beats the simplex optimum.
    #[test]
    fn feasible_points_respect_the_lp_optimum(
        seed in 0u64..1000,
        ux in -1.0f64..1.0,
        uy in -1.0f64..1.0,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rows = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        for _ in 0..6 {
            rows.push(vec![rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0]);
        }
        let objective = vec![rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0];
        let p = LpProblem::new(objective.clone(), rows.clone()).unwrap();
        let sol = bohr_core::lp::solve_checked(&p, 100_000).unwrap();
        let norm = (ux * ux + uy * uy).sqrt();
        prop_assume!(norm > 1e-3);
        let u = [ux / norm, uy / norm];
        let worst = rows
            .iter()
            .map(|row| row[0] * u[0] + row[1] * u[1])
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assume!(worst > 1e-6);
        let t = 1.0 / worst;
        let value = objective[0] * t * u[0] + objective[1] * t * u[1];
        prop_assert!(value <= sol.value + 1e-9 * (1.0 + sol.value.abs()));
    }

    /// Extremal levels on an exhaustion never increase with the index.
    #[test]
    fn gamma_curves_never_increase(x in -0.8f64..0.8, y in -0.8f64..0.8) {
        let plan = SamplingPlan::default();
        let e = ExhaustionSpec::plane_by_balls(6).unwrap();
        let curve = gamma_curve(&e, &[c(x, y)], 8, &plan, MethodPolicy::Auto).unwrap();
        for w in curve.values.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-6);
        }
    }

    /// The closed-form constant dominates the majorant-to-sup ratio.
    #[test]
    fn closed_form_constants_dominate_sampled_ratios(
        seed in 0u64..500,
        r in 0.5f64..1.5,
        gap in 0.5f64..2.0,
    ) {
        let plan = SamplingPlan::default();
        let b = BasisFamily::monomial(1).unwrap();
        let r1 = r + gap;
        let rep = absolute_basis_constant(&b, r, r1, &plan).unwrap();
        let f = random_series(1, 16, 0.6, seed).unwrap();
        let cs = f.dense_coeffs(16);
        let k_r = CompactSet::ball0(1, r).unwrap();
        let k_r1 = CompactSet::ball0(1, r1).unwrap();
        let maj = majorant(&cs, &b, &k_r, &plan).unwrap();
        let sup = sup_norm(|z| f.eval(z).unwrap(), &k_r1, &plan).unwrap().value;
        prop_assert!(maj <= rep.value * sup + 1e-9);
    }
}

#[test]
fn schwarz_inequality_holds_on_a_seeded_corpus() {
    let plan = SamplingPlan::default();
    for seed in 0..100u64 {
        let f = random_series(1, 20, 0.6, 3000 + seed)
            .unwrap()
            .without_constant();
        for r in [0.5, 1.0, 2.0] {
            let (lhs, bound) = schwarz_step(&f, r, &plan).unwrap();
            assert!(
                lhs <= bound + 1e-9,
                "seed {seed}, r {r}: {lhs} vs bound {bound}"
            );
        }
    }
}

#[test]
fn borel_caratheodory_holds_on_a_seeded_corpus() {
    let plan = SamplingPlan::default();
    for seed in 0..60u64 {
        let f = random_series(1, 20, 0.6, 4000 + seed).unwrap();
        for r1 in [0.5, 1.0] {
            let (lhs, bound) = borel_caratheodory_check(&f, r1, 3.0 * r1, &plan).unwrap();
            assert!(
                lhs <= bound + 1e-9,
                "seed {seed}, r1 {r1}: {lhs} vs bound {bound}"
            );
        }
    }
}

#[test]
fn lp_gamma_converges_in_the_degree() {
    let plan = SamplingPlan::default();
    let ball = CompactSet::ball0(1, 2.0).unwrap();
    let z0 = [c(0.3, 0.1)];
    for point in [[c(0.9, -0.4)], [c(-0.7, 0.2)], [c(0.1, 1.1)]] {
        let lo = gamma_lp(&ball, &z0, &point, 12, &plan).unwrap().value;
        let hi = gamma_lp(&ball, &z0, &point, 24, &plan).unwrap().value;
        assert!(
            (lo - hi).abs() <= 1e-3,
            "degree refinement moved the level: {lo} vs {hi}"
        );
    }
}

#[test]
fn lp_gamma_matches_the_closed_form_off_center() {
    // centered balls admit a closed form even with z0 off the origin after
    // the standard disc automorphism; compare the solver against it
    let plan = SamplingPlan::default();
    let ball = CompactSet::ball0(1, 1.0).unwrap();
    let z0 = [c(0.0, 0.0)];
    for point in [[c(0.5, 0.0)], [c(0.0, 0.72)], [c(-0.33, 0.41)]] {
        let lp = gamma_lp(&ball, &z0, &point, 20, &plan).unwrap().value;
        let closed = gamma_closed_form(&ball, &z0, &point).unwrap();
        assert!(
            (lp - closed).abs() <= 2e-3,
            "{lp} vs closed form {closed}"
        );
    }
}

#[test]
fn gamma_is_continuous_between_neighboring_points() {
    let plan = SamplingPlan::default();
    let ball = CompactSet::ball0(1, 2.0).unwrap();
    let z0 = [c(0.0, 0.0)];
    let step = 0.05;
    let mut prev: Option<f64> = None;
    for k in 0..8 {
        let x = 0.4 + step * k as f64;
        let g = gamma_lp(&ball, &z0, &[c(x, 0.3)], 16, &plan).unwrap().value;
        if let Some(p) = prev {
            assert!(
                (g - p).abs() <= 2.0 * step / 2.0 + 1e-3,
                "jump between neighbors: {p} -> {g}"
            );
        }
        prev = Some(g);
    }
}

#[test]
fn kappa_upper_bounds_decrease_with_the_dimension() {
    let plan = SamplingPlan::default();
    let mut prev = f64::INFINITY;
    for d in 1..=4usize {
        let est = kappa_upper_search(d, 40, 11, &plan).unwrap();
        assert!(
            est.upper <= prev + 5e-3,
            "dimension {d}: upper {} after {prev}",
            est.upper
        );
        assert!(est.lower <= est.upper);
        prev = est.upper;
    }
}

#[test]
fn ratio_sums_shrink_as_the_outer_compact_grows() {
    let plan = SamplingPlan::default();
    let b = BasisFamily::monomial(1).unwrap();
    let k = CompactSet::ball0(1, 1.0).unwrap();
    let mut prev = f64::INFINITY;
    for lambda in [2.0, 3.0, 4.0, 6.0, 10.0] {
        let k1 = CompactSet::ball0(1, lambda).unwrap();
        let s = ratio_sum(&b, &k, &k1, 64, &plan).unwrap();
        assert!(s < prev);
        prev = s;
    }
}

#[test]
fn faber_majorants_match_an_independent_member_sum() {
    // independent oracle: sum |c_n| (rho^n + rho^{-n}) computed directly
    let plan = SamplingPlan::default();
    let b = BasisFamily::faber_segment();
    let rho = 1.7;
    let k = CompactSet::bernstein_ellipse(rho).unwrap();
    let cs = vec![c(0.3, 0.1), c(-0.2, 0.0), c(0.05, -0.4), c(0.0, 0.25)];
    let maj = majorant(&cs, &b, &k, &plan).unwrap();
    let mut oracle = cs[0].norm();
    for (n, v) in cs.iter().enumerate().skip(1) {
        oracle += v.norm() * (rho.powi(n as i32) + rho.powi(-(n as i32)));
    }
    assert!((maj - oracle).abs() <= 1e-10 * oracle);
}

#[test]
fn polydisc_taylor_domains_match_direct_products() {
    // oracle: sup over the polydisc of |z^alpha| is the product of per-axis
    // powers; compare a 2-variable majorant against the hand-rolled sum
    let plan = SamplingPlan::for_dimension(2);
    let b = BasisFamily::monomial(2).unwrap();
    let f = random_series(2, 6, 0.5, 99).unwrap();
    let cs = f.dense_coeffs(6);
    let k = CompactSet::polydisc(vec![c(0.0, 0.0); 2], vec![0.8, 1.3]).unwrap();
    let maj = majorant(&cs, &b, &k, &plan).unwrap();
    let mut oracle = 0.0;
    for (alpha, v) in f.terms() {
        let powers: f64 = alpha
            .0
            .iter()
            .zip([0.8f64, 1.3])
            .map(|(&a, r)| r.powi(a as i32))
            .product();
        oracle += v.norm() * powers;
    }
    assert!((maj - oracle).abs() <= 1e-9 * (1.0 + oracle));
}
