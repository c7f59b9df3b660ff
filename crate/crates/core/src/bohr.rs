//! Majorant sums and Bohr radii.
//!
//! The majorant of `f = sum f_n phi_n` on a compact `K` is
//! `sum |f_n| sup_K |phi_n|`. A family of compacts `K_r` has an individual
//! Bohr radius for `f`: the largest `r` with `majorant(f, K_r) <= sup |f|`
//! on a reference compact. Minimizing that radius over extremal candidates
//! gives upper bounds for the Bohr radius of the polydisc; the classical
//! one-variable value is `1/3`, approached by Moebius transforms
//! `(a - z)/(1 - a z)` whose individual radius is `1/(1 + 2a)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{eval_combination, member_sup, BasisFamily};
use crate::error::{Error, Result};
use crate::geometry::CompactSet;
use crate::sampling::{sup_norm, SamplingPlan};
use crate::series::random_series;

const BISECT_TOL: f64 = 1e-6;

/// One-parameter families of compacts used as Bohr domains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum DomainFamily {
    Balls { dim: usize },
    Polydiscs { dim: usize },
    /// Bernstein ellipses indexed by their parameter; the value 1 degenerates
    /// to the segment itself.
    Ellipses,
}

impl DomainFamily {
    pub fn at(&self, r: f64) -> Result<CompactSet> {
        match self {
            DomainFamily::Balls { dim } => CompactSet::ball0(*dim, r),
            DomainFamily::Polydiscs { dim } => CompactSet::polydisc0(*dim, r),
            DomainFamily::Ellipses => {
                if r < 1.0 {
                    Err(Error::InvalidParameter(format!(
                        "ellipse parameter must be at least 1, got {r}"
                    )))
                } else if r <= 1.0 + 1e-12 {
                    Ok(CompactSet::segment())
                } else {
                    CompactSet::bernstein_ellipse(r)
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DomainFamily::Balls { dim } | DomainFamily::Polydiscs { dim } => *dim,
            DomainFamily::Ellipses => 1,
        }
    }
}

/// `sum_n |coeffs[n]| sup_K |phi_n|`.
pub fn majorant(
    coeffs: &[Complex64],
    b: &BasisFamily,
    k: &CompactSet,
    plan: &SamplingPlan,
) -> Result<f64> {
    let mut total = 0.0;
    for (n, c) in coeffs.iter().enumerate() {
        let a = c.norm();
        if a > 0.0 {
            total += a * member_sup(b, n, k, plan)?;
        }
    }
    Ok(total)
}

/// Majorant values along a parameter grid, with the reference sup attached.
#[derive(Debug, Clone, Serialize)]
pub struct MajorantCurve {
    pub basis: BasisFamily,
    pub rs: Vec<f64>,
    pub values: Vec<f64>,
    pub reference_sup: f64,
}

pub fn majorant_curve(
    coeffs: &[Complex64],
    b: &BasisFamily,
    family: &DomainFamily,
    rs: &[f64],
    k_ref: &CompactSet,
    plan: &SamplingPlan,
) -> Result<MajorantCurve> {
    let mut values = Vec::with_capacity(rs.len());
    for (i, &r) in rs.iter().enumerate() {
        let v = majorant(coeffs, b, &family.at(r)?, plan)?;
        if let Some(&prev) = values.last() {
            if v < prev - 1e-12 {
                return Err(Error::NonMonotoneCurve {
                    index: i,
                    prev,
                    next: v,
                });
            }
        }
        values.push(v);
    }
    let reference_sup = sup_norm(|z| eval_combination(b, coeffs, z).unwrap(), k_ref, plan)?.value;
    Ok(MajorantCurve {
        basis: b.clone(),
        rs: rs.to_vec(),
        values,
        reference_sup,
    })
}

/// Outcome of the individual-radius bisection.
#[derive(Debug, Clone, Serialize)]
pub struct BohrRadiusOutcome {
    pub radius: f64,
    /// The majorant stayed at or below the reference sup over the whole
    /// range, so the radius is only bounded below by the range maximum.
    pub saturated: bool,
    pub reference_sup: f64,
}

/// Largest `r` in `range` with `majorant(f, K_r) <= sup_norm(f, k_ref)`,
/// located by bisection to 1e-6. Returns 0 if the inequality already fails
/// at the range minimum and flags saturation if it never fails.
pub fn individual_bohr_radius(
    coeffs: &[Complex64],
    b: &BasisFamily,
    family: &DomainFamily,
    range: (f64, f64),
    k_ref: &CompactSet,
    plan: &SamplingPlan,
) -> Result<BohrRadiusOutcome> {
    if !(range.0 < range.1) || !range.0.is_finite() || !range.1.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "invalid bisection range [{}, {}]",
            range.0, range.1
        )));
    }
    let s = sup_norm(|z| eval_combination(b, coeffs, z).unwrap(), k_ref, plan)?.value;
    let holds = |r: f64| -> Result<bool> {
        Ok(majorant(coeffs, b, &family.at(r)?, plan)? <= s)
    };
    if !holds(range.0)? {
        return Ok(BohrRadiusOutcome {
            radius: 0.0,
            saturated: false,
            reference_sup: s,
        });
    }
    if holds(range.1)? {
        return Ok(BohrRadiusOutcome {
            radius: range.1,
            saturated: true,
            reference_sup: s,
        });
    }
    let (mut lo, mut hi) = range;
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BohrRadiusOutcome {
        radius: lo,
        saturated: false,
        reference_sup: s,
    })
}

/// A two-sided numerical bracket with a description of the binding candidate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub lower: f64,
    pub upper: f64,
    pub witness: String,
}

/// Taylor coefficients of the Moebius transform `(a - z)/(1 - a z)`:
/// `c_0 = a`, `c_n = -(1 - a^2) a^{n-1}`.
pub fn mobius_coefficients(a: f64, terms: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(terms + 1);
    out.push(Complex64::new(a, 0.0));
    let mut pow = 1.0;
    for _ in 1..=terms {
        out.push(Complex64::new(-(1.0 - a * a) * pow, 0.0));
        pow *= a;
    }
    out
}

/// All candidates in the polydisc search reduce to a one-variable profile:
/// the majorant on `r U^d` is `sum_k p_k r^k` with
/// `p_k = sum_{|alpha| = k} |c_alpha|`, and the reference sup on `U^d` is
/// precomputed once.
struct KappaCandidate {
    label: String,
    profile: Vec<f64>,
    sup_ref: f64,
}

impl KappaCandidate {
    fn majorant(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        let mut rk = 1.0;
        for &p in &self.profile {
            acc += p * rk;
            rk *= r;
        }
        acc
    }

    fn radius(&self) -> f64 {
        if self.majorant(0.01) > self.sup_ref {
            return 0.0;
        }
        if self.majorant(1.0) <= self.sup_ref {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.01, 1.0);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            if self.majorant(mid) <= self.sup_ref {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// `1/(1+2a)` truncated at enough terms that the geometric tail is far below
/// the search tolerances; high rungs need long truncations because the tail
/// decays like `a^N / (1 - a)`.
const MOBIUS_LADDER: [f64; 8] = [0.3, 0.5, 0.7, 0.9, 0.95, 0.98, 0.985, 0.99];
const MOBIUS_TERMS: usize = 1000;

fn circle_sup(coeffs: &[Complex64], plan: &SamplingPlan) -> Result<f64> {
    let k = CompactSet::ball0(1, 1.0)?;
    let b = BasisFamily::Monomial { dim: 1 };
    Ok(sup_norm(|z| eval_combination(&b, coeffs, z).unwrap(), &k, plan)?.value)
}

/// Upper bound for the Bohr radius of the `d`-dimensional unit polydisc,
/// from extremal candidates: the Moebius ladder (embedded along the first
/// coordinate), separable Moebius products, and `budget` seeded random
/// polynomials normalized to sup 1 on the polydisc. The lower estimate is
/// the largest hundredth at which every candidate still satisfies the
/// defining inequality.
pub fn kappa_upper_search(
    d: usize,
    budget: usize,
    seed: u64,
    plan: &SamplingPlan,
) -> Result<RadiusEstimate> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let mut candidates: Vec<KappaCandidate> = Vec::new();
    let plan1 = SamplingPlan::for_dimension(1).with_seed(plan.seed);

    // Moebius rungs: on the polydisc, f(z) = phi_a(z_1) has torus sup equal
    // to the circle sup of phi_a and member sups r^n, so the whole candidate
    // lives in its one-variable profile regardless of d.
    for &a in &MOBIUS_LADDER {
        let coeffs = mobius_coefficients(a, MOBIUS_TERMS);
        let sup_ref = circle_sup(&coeffs, &plan1)?;
        candidates.push(KappaCandidate {
            label: if d == 1 {
                format!("mobius a={a} (N={MOBIUS_TERMS})")
            } else {
                format!("mobius a={a} in z_1 (N={MOBIUS_TERMS})")
            },
            profile: coeffs.iter().map(|c| c.norm()).collect(),
            sup_ref,
        });
    }

    // separable products phi_a(z_1) phi_a(z_2): majorant and sup both factor
    if d >= 2 {
        for &a in &[0.7, 0.9] {
            let coeffs = mobius_coefficients(a, 400);
            let profile1: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
            let mut profile = vec![0.0; 2 * profile1.len() - 1];
            for (i, pi) in profile1.iter().enumerate() {
                for (j, pj) in profile1.iter().enumerate() {
                    profile[i + j] += pi * pj;
                }
            }
            let s1 = circle_sup(&coeffs, &plan1)?;
            candidates.push(KappaCandidate {
                label: format!("mobius product a={a} in z_1, z_2"),
                profile,
                sup_ref: s1 * s1,
            });
        }
    }

    // seeded random polynomials, genuinely d-dimensional; the torus grid
    // must shrink with the dimension to stay under the point cap
    let degree_bound = crate::series::default_degree_bound(d);
    let k_ref = CompactSet::polydisc0(d, 1.0)?;
    let plan_d = SamplingPlan::for_dimension(d).with_seed(plan.seed);
    let random: Result<Vec<KappaCandidate>> = (0..budget)
        .into_par_iter()
        .map(|i| {
            let f = random_series(d, degree_bound, 0.75, seed.wrapping_add(i as u64))?;
            let sup_ref = sup_norm(|z| f.eval(z).unwrap(), &k_ref, &plan_d)?.value;
            let mut profile = vec![0.0; degree_bound as usize + 1];
            for (alpha, c) in f.terms() {
                profile[alpha.total_degree() as usize] += c.norm();
            }
            Ok(KappaCandidate {
                label: format!("random polynomial #{i} (seed {seed})"),
                profile,
                sup_ref,
            })
        })
        .collect();
    candidates.extend(random?);

    let radii: Vec<f64> = candidates.iter().map(|c| c.radius()).collect();
    let (best_idx, &upper) = radii
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .expect("candidate list is never empty");

    // lower estimate: walk the hundredth grid down until every candidate
    // satisfies the inequality
    let mut lower = ((upper - 1e-9) * 100.0).floor() / 100.0;
    while lower > 0.0 {
        if candidates.iter().all(|c| c.majorant(lower) <= c.sup_ref) {
            break;
        }
        lower -= 0.01;
    }
    lower = lower.max(0.0);

    Ok(RadiusEstimate {
        lower,
        upper,
        witness: candidates[best_idx].label.clone(),
    })
}

/// Smallest ellipse parameter at which no corpus member's segment majorant
/// exceeds its sup over the ellipse; corpus-relative by construction. The
/// bracket `[lower, upper]` is the final bisection interval.
pub fn faber_bohr_r0(
    corpus: &[Vec<Complex64>],
    rho_max: f64,
    plan: &SamplingPlan,
) -> Result<RadiusEstimate> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("empty corpus".into()));
    }
    if rho_max <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "rho_max must exceed 1, got {rho_max}"
        )));
    }
    let b = BasisFamily::FaberSegment;
    let family = DomainFamily::Ellipses;
    let plan_seg = SamplingPlan::for_dimension(1).with_seed(plan.seed);

    let mut worst_rho = 1.0f64;
    let mut worst_index = 0usize;
    for (i, coeffs) in corpus.iter().enumerate() {
        let maj = majorant(coeffs, &b, &CompactSet::segment(), &plan_seg)?;
        let holds = |rho: f64| -> Result<bool> {
            let k = family.at(rho)?;
            let sup = sup_norm(|z| eval_combination(&b, coeffs, z).unwrap(), &k, &plan_seg)?;
            Ok(maj <= sup.value + 1e-12)
        };
        if holds(1.0)? {
            continue;
        }
        if !holds(rho_max)? {
            return Err(Error::NoAdmissibleRho {
                rho_max,
                worst_index: i,
            });
        }
        let (mut lo, mut hi) = (1.0, rho_max);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            if holds(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if hi > worst_rho {
            worst_rho = hi;
            worst_index = i;
        }
    }
    Ok(RadiusEstimate {
        lower: (worst_rho - BISECT_TOL).max(1.0),
        upper: worst_rho,
        witness: format!("corpus member #{worst_index}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn majorant_of_a_geometric_series_is_a_geometric_sum() {
        let a: f64 = 0.5;
        let coeffs: Vec<Complex64> = (0..=20).map(|n| c(a.powi(n), 0.0)).collect();
        let b = BasisFamily::monomial(1).unwrap();
        let k = CompactSet::ball0(1, 0.5).unwrap();
        let plan = SamplingPlan::default();
        let got = majorant(&coeffs, &b, &k, &plan).unwrap();
        let q: f64 = 0.25;
        let want = (1.0 - q.powi(21)) / (1.0 - q);
        assert!((got - want).abs() <= 1e-10);
    }

    #[test]
    fn majorant_of_a_unit_faber_coefficient_uses_the_ellipse_sup() {
        let mut coeffs = vec![c(0.0, 0.0); 6];
        coeffs[5] = c(1.0, 0.0);
        let b = BasisFamily::faber_segment();
        let k = CompactSet::bernstein_ellipse(2.0).unwrap();
        let plan = SamplingPlan::default();
        let got = majorant(&coeffs, &b, &k, &plan).unwrap();
        let want = 2.0f64.powi(5) + 2.0f64.powi(-5);
        assert!((got - want).abs() <= 1e-8, "got {got}, want {want}");
    }

    #[test]
    fn mobius_radius_matches_the_closed_form() {
        let a = 0.5;
        let coeffs = mobius_coefficients(a, 200);
        let b = BasisFamily::monomial(1).unwrap();
        let family = DomainFamily::Balls { dim: 1 };
        let k_ref = CompactSet::ball0(1, 1.0 - 1e-4).unwrap();
        let plan = SamplingPlan::default();
        let out =
            individual_bohr_radius(&coeffs, &b, &family, (0.01, 0.9999), &k_ref, &plan).unwrap();
        let want = 1.0 / (1.0 + 2.0 * a);
        assert!(!out.saturated);
        assert!((out.radius - want).abs() <= 2e-3, "got {}", out.radius);
    }

    #[test]
    fn bisection_brackets_the_crossing() {
        let coeffs = mobius_coefficients(0.5, 200);
        let b = BasisFamily::monomial(1).unwrap();
        let family = DomainFamily::Balls { dim: 1 };
        let k_ref = CompactSet::ball0(1, 1.0 - 1e-4).unwrap();
        let plan = SamplingPlan::default();
        let out =
            individual_bohr_radius(&coeffs, &b, &family, (0.01, 0.9999), &k_ref, &plan).unwrap();
        let s = out.reference_sup;
        let below = majorant(&coeffs, &b, &family.at(out.radius - 1e-4).unwrap(), &plan).unwrap();
        let above = majorant(&coeffs, &b, &family.at(out.radius + 1e-4).unwrap(), &plan).unwrap();
        assert!(below <= s);
        assert!(above > s);
    }

    #[test]
    fn the_identity_saturates_on_the_unit_ball() {
        let coeffs = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let b = BasisFamily::monomial(1).unwrap();
        let family = DomainFamily::Balls { dim: 1 };
        let k_ref = CompactSet::ball0(1, 1.0).unwrap();
        let plan = SamplingPlan::default();
        let out = individual_bohr_radius(&coeffs, &b, &family, (0.01, 1.0), &k_ref, &plan).unwrap();
        assert!(out.saturated);
        assert!((out.radius - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn constants_saturate() {
        let coeffs = vec![c(0.7, 0.0)];
        let b = BasisFamily::monomial(1).unwrap();
        let family = DomainFamily::Balls { dim: 1 };
        let k_ref = CompactSet::ball0(1, 1.0).unwrap();
        let plan = SamplingPlan::default();
        let out = individual_bohr_radius(&coeffs, &b, &family, (0.01, 1.0), &k_ref, &plan).unwrap();
        assert!(out.saturated);
    }

    #[test]
    fn one_variable_kappa_upper_bound_lands_near_one_third() {
        let plan = SamplingPlan::default();
        let est = kappa_upper_search(1, 0, 7, &plan).unwrap();
        assert!(
            est.upper >= 0.330 && est.upper <= 0.337,
            "upper {} witness {}",
            est.upper,
            est.witness
        );
        assert!(est.lower <= est.upper);
        assert!(est.lower >= 0.32, "lower {}", est.lower);
    }

    #[test]
    fn embedded_candidates_keep_kappa_bounds_monotone_in_dimension() {
        let plan1 = SamplingPlan::for_dimension(1);
        let plan2 = SamplingPlan::for_dimension(2);
        let e1 = kappa_upper_search(1, 0, 7, &plan1).unwrap();
        let e2 = kappa_upper_search(2, 0, 7, &plan2).unwrap();
        assert!(e2.upper <= 1.0 / 2.8 + 2e-3);
        assert!(e2.upper <= e1.upper + 5e-3);
    }

    #[test]
    fn faber_radius_of_the_constant_is_one() {
        let plan = SamplingPlan::default();
        let corpus = vec![vec![c(1.0, 0.0)]];
        let est = faber_bohr_r0(&corpus, 8.0, &plan).unwrap();
        assert!((est.upper - 1.0).abs() <= 1e-9, "got {}", est.upper);
    }

    #[test]
    fn complex_phases_push_the_faber_radius_above_one() {
        let plan = SamplingPlan::default();
        // 1 + 0.2 i F_3: the segment sup is strictly below the majorant
        let f = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.2)];
        let est = faber_bohr_r0(&[f], 8.0, &plan).unwrap();
        assert!(est.upper > 1.0 + 1e-3, "got {}", est.upper);
        assert!(est.lower <= est.upper);
    }

    #[test]
    fn growing_the_corpus_never_shrinks_the_faber_radius() {
        let plan = SamplingPlan::default();
        let mut corpus = Vec::new();
        let mut last = 1.0;
        for i in 0..6 {
            let f = crate::series::random_series(1, 8, 0.5, 40 + i).unwrap();
            corpus.push(f.dense_coeffs(8));
            let est = faber_bohr_r0(&corpus, 16.0, &plan).unwrap();
            assert!(est.upper >= last - 1e-9, "shrank at {i}");
            last = est.upper;
        }
        assert!(last > 1.0);
    }

    #[test]
    fn majorant_curves_are_monotone() {
        let coeffs = mobius_coefficients(0.5, 100);
        let b = BasisFamily::monomial(1).unwrap();
        let family = DomainFamily::Balls { dim: 1 };
        let rs: Vec<f64> = (1..=20).map(|i| i as f64 * 0.045).collect();
        let k_ref = CompactSet::ball0(1, 0.999).unwrap();
        let plan = SamplingPlan::default();
        let curve = majorant_curve(&coeffs, &b, &family, &rs, &k_ref, &plan).unwrap();
        for w in curve.values.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(curve.values[0] <= curve.reference_sup);
    }
}
