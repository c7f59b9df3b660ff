//! Extremal values on exhaustions of planar domains.
//!
//! For a domain `D` with base point `z0`, the extremal value at `z` is
//!
//! ```text
//! gamma(z) = sup { |f(z)| : f analytic on D, f(z0) = 0, |f| <= 1 on D }
//! ```
//!
//! On a ball centered at `z0` the Schwarz lemma gives the closed form
//! `|z - z0| / radius`. Everywhere else the sup is computed over polynomials
//! of degree `m` with the modulus constraints linearized into `angle_count`
//! half-planes per boundary sample, which is a linear program solved by the
//! in-repo dense simplex. A rotation of the candidate makes `|f(z)| = Re f(z)`
//! at the optimum, so maximizing the real part loses nothing; the polygon
//! linearization can overshoot by at most the reported factor
//! `1 / cos(pi / angle_count)`.
//!
//! Along an exhaustion `D_1 subset D_2 subset ...` the values decrease in the
//! index. Whether they decay to zero or plateau is numerical evidence for or
//! against every bounded function on the union being constant, and the decay
//! rate drives the constructive Borel-Caratheodory step: given `delta`, an
//! index with `gamma <= delta` on a compact `K` yields
//! `|f - f(z0)|_K <= eps * sup Re(f - f(z0))` on that domain with
//! `delta = eps / (2 + eps)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ellipse_semi_axes, CompactSet};
use crate::lp::{solve_checked, LpProblem};
use crate::sampling::{boundary_samples, sup_norm, sup_re, SamplingPlan};
use crate::series::TruncatedSeries;

const LP_MAX_ITERATIONS: usize = 200_000;
/// Strict-comparison guard: a domain only counts as reaching level `delta`
/// if its grid max clears it by this much, so ties at the exact level (the
/// sharp Schwarz case) resolve to the next domain instead of depending on
/// rounding.
const LEVEL_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExhaustionLabel {
    PlaneByBalls,
    UnitDiscByBalls,
    EllipseFamily,
}

/// A strictly increasing chain of compacts exhausting a planar domain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExhaustionSpec {
    pub domains: Vec<CompactSet>,
    #[serde(with = "crate::geometry::c64points")]
    pub z0: Vec<Complex64>,
    pub label: ExhaustionLabel,
}

impl ExhaustionSpec {
    pub fn new(
        domains: Vec<CompactSet>,
        z0: Vec<Complex64>,
        label: ExhaustionLabel,
    ) -> Result<Self> {
        if domains.len() < 2 {
            return Err(Error::InvalidParameter(
                "an exhaustion needs at least two domains".into(),
            ));
        }
        for d in &domains {
            if d.dim() != 1 {
                return Err(Error::InvalidParameter(
                    "exhaustions are one-dimensional".into(),
                ));
            }
        }
        for (i, pair) in domains.windows(2).enumerate() {
            let strictly = pair[0].nested_in(&pair[1]) && !pair[1].nested_in(&pair[0]);
            if !strictly {
                return Err(Error::InvalidParameter(format!(
                    "domains {i} and {} are not strictly nested",
                    i + 1
                )));
            }
        }
        if !domains[0].strictly_contains(&z0) {
            return Err(Error::InvalidParameter(
                "base point must be interior to the first domain".into(),
            ));
        }
        Ok(Self { domains, z0, label })
    }

    /// Balls of radius `1, 2, ..., count` around the origin.
    pub fn plane_by_balls(count: usize) -> Result<Self> {
        let domains = (1..=count)
            .map(|n| CompactSet::ball0(1, n as f64))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            domains,
            vec![Complex64::new(0.0, 0.0)],
            ExhaustionLabel::PlaneByBalls,
        )
    }

    /// Balls of radius `1 - 2^{-n}`, `n = 1, ..., count`, inside the unit
    /// disc.
    pub fn unit_disc_by_balls(count: usize) -> Result<Self> {
        let domains = (1..=count)
            .map(|n| CompactSet::ball0(1, 1.0 - 0.5f64.powi(n as i32)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            domains,
            vec![Complex64::new(0.0, 0.0)],
            ExhaustionLabel::UnitDiscByBalls,
        )
    }

    /// Bernstein ellipses with parameters `1 + n/2`, `n = 1, ..., count`.
    pub fn ellipse_family(count: usize) -> Result<Self> {
        let domains = (1..=count)
            .map(|n| CompactSet::bernstein_ellipse(1.0 + n as f64 / 2.0))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            domains,
            vec![Complex64::new(0.0, 0.0)],
            ExhaustionLabel::EllipseFamily,
        )
    }
}

/// Schwarz-lemma value `|z - center| / radius` on a ball centered at the
/// base point.
pub fn gamma_closed_form(domain: &CompactSet, z0: &[Complex64], z: &[Complex64]) -> Result<f64> {
    let CompactSet::Ball { center, radius } = domain else {
        return Err(Error::InvalidParameter(
            "closed form exists only on balls centered at the base point".into(),
        ));
    };
    if center.len() != 1 || z0.len() != 1 || z.len() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: z.len().max(z0.len()),
        });
    }
    if (center[0] - z0[0]).norm() > 1e-14 {
        return Err(Error::InvalidParameter(
            "closed form needs the base point at the ball center".into(),
        ));
    }
    if !domain.strictly_contains(z) {
        return Err(Error::InvalidParameter(format!(
            "evaluation point {} lies outside the open ball",
            z[0]
        )));
    }
    Ok((z[0] - center[0]).norm() / radius)
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaValue {
    pub value: f64,
    /// The linearized modulus constraints describe a polygon that contains
    /// the disc scaled by this factor, so the reported optimum can exceed
    /// the true sup by at most `value * (slack_factor - 1)`.
    pub slack_factor: f64,
    pub iterations: usize,
}

fn domain_scale(domain: &CompactSet) -> f64 {
    match domain {
        CompactSet::Ball { radius, .. } => *radius,
        CompactSet::Polydisc { radii, .. } => radii[0],
        CompactSet::BernsteinEllipse { rho } => ellipse_semi_axes(*rho).0,
        CompactSet::Segment => 1.0,
    }
}

/// Extremal value by linear programming over degree-`m` polynomials.
///
/// The candidate is written as `f(w) = sum_j c_j ((w/s)^j - (z0/s)^j)` for
/// `j = 1..m` with `s` the domain scale, which builds the constraint
/// `f(z0) = 0` into the basis and keeps the constraint matrix entries of
/// order one.
pub fn gamma_lp(
    domain: &CompactSet,
    z0: &[Complex64],
    z: &[Complex64],
    m: usize,
    plan: &SamplingPlan,
) -> Result<GammaValue> {
    if m < 1 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if domain.dim() != 1 {
        return Err(Error::InvalidParameter(
            "the LP engine handles one variable".into(),
        ));
    }
    if !domain.strictly_contains(z0) {
        return Err(Error::InvalidParameter(
            "base point must be interior to the domain".into(),
        ));
    }
    if !domain.strictly_contains(z) {
        return Err(Error::InvalidParameter(
            "evaluation point must be interior to the domain".into(),
        ));
    }

    let s = domain_scale(domain);
    let basis_at = |w: Complex64| -> Vec<Complex64> {
        let ws = w / s;
        let zs = z0[0] / s;
        let mut out = Vec::with_capacity(m);
        let mut wp = Complex64::new(1.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for _ in 1..=m {
            wp *= ws;
            zp *= zs;
            out.push(wp - zp);
        }
        out
    };

    // enough boundary samples that a degree-m polynomial cannot hide a spike
    // between them
    let bc = plan.boundary_count.max(2 * (m + 1));
    let sample_plan = SamplingPlan {
        boundary_count: bc,
        ..plan.clone()
    };
    let points = boundary_samples(domain, &sample_plan)?;
    let ac = plan.angle_count;

    let mut rows = Vec::with_capacity(points.len() * ac);
    for w in &points {
        let g = basis_at(w[0]);
        for t in 0..ac {
            let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / ac as f64);
            let mut row = vec![0.0; 2 * m];
            for (j, gj) in g.iter().enumerate() {
                let e = phase * gj;
                row[j] = e.re;
                row[m + j] = -e.im;
            }
            rows.push(row);
        }
    }
    let gz = basis_at(z[0]);
    let mut objective = vec![0.0; 2 * m];
    for (j, gj) in gz.iter().enumerate() {
        objective[j] = gj.re;
        objective[m + j] = -gj.im;
    }

    let problem = LpProblem::new(objective, rows)?;
    let sol = solve_checked(&problem, LP_MAX_ITERATIONS)?;
    Ok(GammaValue {
        value: sol.value,
        slack_factor: 1.0 / (std::f64::consts::PI / ac as f64).cos(),
        iterations: sol.iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaMethod {
    ClosedForm,
    Lp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MethodPolicy {
    /// Closed form where available, LP otherwise.
    Auto,
    /// LP everywhere (cross-checking the closed form).
    ForceLp,
}

/// Extremal values along an exhaustion at a fixed point.
#[derive(Debug, Clone, Serialize)]
pub struct GammaCurve {
    #[serde(serialize_with = "crate::geometry::c64points::serialize")]
    pub z: Vec<Complex64>,
    /// Index of the first exhaustion domain containing `z` in its interior;
    /// values start there.
    pub start_index: usize,
    pub values: Vec<f64>,
    pub methods: Vec<GammaMethod>,
}

fn closed_form_applies(domain: &CompactSet, z0: &[Complex64]) -> bool {
    matches!(domain, CompactSet::Ball { center, .. }
        if center.len() == 1 && (center[0] - z0[0]).norm() <= 1e-14)
}

pub fn gamma_curve(
    e: &ExhaustionSpec,
    z: &[Complex64],
    m: usize,
    plan: &SamplingPlan,
    policy: MethodPolicy,
) -> Result<GammaCurve> {
    let start_index = e
        .domains
        .iter()
        .position(|d| d.strictly_contains(z))
        .ok_or_else(|| {
            Error::InvalidParameter("no exhaustion domain contains the evaluation point".into())
        })?;
    let mut values = Vec::new();
    let mut methods = Vec::new();
    for domain in &e.domains[start_index..] {
        if policy == MethodPolicy::Auto && closed_form_applies(domain, &e.z0) {
            values.push(gamma_closed_form(domain, &e.z0, z)?);
            methods.push(GammaMethod::ClosedForm);
        } else {
            values.push(gamma_lp(domain, &e.z0, z, m, plan)?.value);
            methods.push(GammaMethod::Lp);
        }
    }
    for (i, w) in values.windows(2).enumerate() {
        if w[1] > w[0] + 1e-6 {
            return Err(Error::NonMonotoneCurve {
                index: start_index + i + 1,
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(GammaCurve {
        z: z.to_vec(),
        start_index,
        values,
        methods,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    DecayEvidence,
    PlateauEvidence,
}

/// Numerical evidence about the tail of a gamma curve; not a proof.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub limit_estimate: f64,
    pub tol: f64,
    /// Set when the extrapolated limits scatter by more than `tol`.
    pub low_confidence: bool,
}

/// Classify the tail of a curve by Aitken extrapolation of its last entries:
/// decay evidence if the extrapolated limit falls at or below `tol`, plateau
/// evidence otherwise.
pub fn liouville_verdict(curve: &GammaCurve, tol: f64) -> Result<Verdict> {
    let v = &curve.values;
    if v.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "verdict needs at least 4 curve entries, got {}",
            v.len()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let tail = &v[v.len().saturating_sub(8)..];
    let mut estimates = Vec::new();
    for w in tail.windows(3) {
        let denom = w[2] - 2.0 * w[1] + w[0];
        if denom.abs() > 1e-15 {
            let delta = w[2] - w[1];
            estimates.push(w[2] - delta * delta / denom);
        } else {
            estimates.push(w[2]);
        }
    }
    estimates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let limit = estimates[estimates.len() / 2].max(0.0);
    let scatter = estimates.last().unwrap() - estimates.first().unwrap();
    Ok(Verdict {
        kind: if limit <= tol {
            VerdictKind::DecayEvidence
        } else {
            VerdictKind::PlateauEvidence
        },
        limit_estimate: limit,
        tol,
        low_confidence: scatter > tol,
    })
}

/// The exhaustion index realizing a contraction level.
#[derive(Debug, Clone, Serialize)]
pub struct SchwarzOutcome {
    pub index: usize,
    pub gamma_max: f64,
    pub domain: CompactSet,
}

/// Smallest exhaustion index whose extremal value stays below `delta` on all
/// of `K` (max over a boundary grid of `K`; the extremal value is a sup of
/// moduli of analytic functions, so its max over `K` is attained on the
/// boundary).
pub fn schwarz_domain_index(
    e: &ExhaustionSpec,
    k: &CompactSet,
    delta: f64,
    m: usize,
    plan: &SamplingPlan,
    policy: MethodPolicy,
) -> Result<SchwarzOutcome> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    if delta >= 1.0 {
        // extremal values never exceed 1, so the first domain covering K works
        for (i, domain) in e.domains.iter().enumerate() {
            if k.nested_in(domain) {
                return Ok(SchwarzOutcome {
                    index: i,
                    gamma_max: 1.0,
                    domain: domain.clone(),
                });
            }
        }
        return Err(Error::ExhaustionExhausted {
            checked: e.domains.len(),
            best: 1.0,
            target: delta,
        });
    }

    // LP entries cap the grid so an index probe stays tens of solves
    let grid_plan = match policy {
        MethodPolicy::Auto => plan.clone(),
        MethodPolicy::ForceLp => SamplingPlan {
            boundary_count: plan.boundary_count.min(12).max(8),
            ..plan.clone()
        },
    };
    let grid = boundary_samples(k, &grid_plan)?;
    let mut best = f64::INFINITY;
    for (i, domain) in e.domains.iter().enumerate() {
        if !k.nested_in(domain) {
            continue;
        }
        let mut gamma_max = 0.0f64;
        for p in &grid {
            let g = if !domain.strictly_contains(p) {
                // grid point on the domain boundary: the extremal value
                // there is 1 by definition
                1.0
            } else if policy == MethodPolicy::Auto && closed_form_applies(domain, &e.z0) {
                gamma_closed_form(domain, &e.z0, p)?
            } else {
                gamma_lp(domain, &e.z0, p, m, plan)?.value
            };
            gamma_max = gamma_max.max(g);
        }
        best = best.min(gamma_max);
        if gamma_max < delta - LEVEL_GUARD {
            return Ok(SchwarzOutcome {
                index: i,
                gamma_max,
                domain: domain.clone(),
            });
        }
    }
    Err(Error::ExhaustionExhausted {
        checked: e.domains.len(),
        best,
        target: delta,
    })
}

/// Corpus verification report for the constructive Borel-Caratheodory
/// compact.
#[derive(Debug, Clone, Serialize)]
pub struct BcGeneralReport {
    pub epsilon: f64,
    pub delta: f64,
    pub index: usize,
    pub k1: CompactSet,
    pub gamma_max: f64,
    pub checked_count: usize,
    /// Min over the corpus of `eps * sup Re(f - f(z0)) + 1e-9 - |f - f(z0)|_K`.
    pub worst_margin: f64,
    pub verified: bool,
    pub witness: Option<usize>,
}

/// Pick `K1` from the exhaustion at level `delta = eps / (2 + eps)` and
/// verify `|f - f(z0)|_K <= eps * sup_{K1} Re(f - f(z0)) + 1e-9` on the
/// corpus, each member rotated so its base value is a nonnegative real.
pub fn borel_caratheodory_general(
    e: &ExhaustionSpec,
    k: &CompactSet,
    epsilon: f64,
    corpus: &[TruncatedSeries],
    m: usize,
    plan: &SamplingPlan,
    policy: MethodPolicy,
) -> Result<BcGeneralReport> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let delta = epsilon / (2.0 + epsilon);
    let found = schwarz_domain_index(e, k, delta, m, plan, policy)?;
    let k1 = found.domain.clone();

    let mut worst_margin = f64::INFINITY;
    let mut witness = None;
    for (i, f) in corpus.iter().enumerate() {
        if f.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: f.dim(),
            });
        }
        let f0 = f.eval(&e.z0)?;
        let phase = if f0.norm() > 0.0 {
            f0.conj() / f0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let lhs = sup_norm(|z| f.eval(z).unwrap() - f0, k, plan)?.value;
        let rhs = sup_re(|z| phase * (f.eval(z).unwrap() - f0), &k1, plan)?.value;
        let margin = epsilon * rhs + 1e-9 - lhs;
        if margin < worst_margin {
            worst_margin = margin;
            if margin < 0.0 {
                witness = Some(i);
            }
        }
    }
    Ok(BcGeneralReport {
        epsilon,
        delta,
        index: found.index,
        k1,
        gamma_max: found.gamma_max,
        checked_count: corpus.len(),
        worst_margin,
        verified: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ball(r: f64) -> CompactSet {
        CompactSet::ball0(1, r).unwrap()
    }

    #[test]
    fn closed_form_on_the_two_ball() {
        let v = gamma_closed_form(&ball(2.0), &[c(0.0, 0.0)], &[c(1.0, 0.0)]).unwrap();
        assert!((v - 0.5).abs() <= 1e-15);
        let zero = gamma_closed_form(&ball(2.0), &[c(0.0, 0.0)], &[c(0.0, 0.0)]).unwrap();
        assert_eq!(zero, 0.0);
        assert!(gamma_closed_form(&ball(2.0), &[c(0.0, 0.0)], &[c(2.5, 0.0)]).is_err());
    }

    #[test]
    fn lp_matches_the_schwarz_extremal_on_the_two_ball() {
        let plan = SamplingPlan::default();
        let got = gamma_lp(&ball(2.0), &[c(0.0, 0.0)], &[c(1.0, 0.0)], 12, &plan).unwrap();
        assert!((got.value - 0.5).abs() <= 1e-3, "got {}", got.value);
        assert!(got.slack_factor >= 1.0 && got.slack_factor < 1.01);
    }

    #[test]
    fn lp_at_the_base_point_is_zero() {
        let plan = SamplingPlan::default();
        let got = gamma_lp(&ball(2.0), &[c(0.3, 0.1)], &[c(0.3, 0.1)], 8, &plan).unwrap();
        assert!(got.value.abs() <= 1e-9, "got {}", got.value);
    }

    #[test]
    fn lp_recovers_the_pseudo_hyperbolic_value_on_the_unit_ball() {
        let plan = SamplingPlan::default();
        let got = gamma_lp(&ball(1.0), &[c(0.0, 0.0)], &[c(0.5, 0.0)], 12, &plan).unwrap();
        assert!((got.value - 0.5).abs() <= 1e-3, "got {}", got.value);
    }

    #[test]
    fn lp_never_exceeds_one_plus_slack() {
        let plan = SamplingPlan::default();
        for z in [c(0.9, 0.0), c(0.0, 0.95), c(-0.6, 0.6)] {
            let got = gamma_lp(&ball(1.0), &[c(0.0, 0.0)], &[z], 10, &plan).unwrap();
            assert!(got.value <= got.slack_factor + 1e-9);
        }
    }

    #[test]
    fn an_explicit_feasible_candidate_lower_bounds_the_lp() {
        // f(w) = w/2 is feasible for Ball(0,2): |f| <= 1, f(0) = 0
        let plan = SamplingPlan::default();
        let got = gamma_lp(&ball(2.0), &[c(0.0, 0.0)], &[c(1.0, 0.0)], 12, &plan).unwrap();
        let candidate_value = 0.5;
        assert!(candidate_value <= got.value + 1e-9);
    }

    #[test]
    fn plane_curve_follows_the_reciprocal_law() {
        let e = ExhaustionSpec::plane_by_balls(8).unwrap();
        let plan = SamplingPlan::default();
        let curve = gamma_curve(&e, &[c(0.5, 0.0)], 8, &plan, MethodPolicy::Auto).unwrap();
        assert_eq!(curve.start_index, 0);
        for (i, v) in curve.values.iter().enumerate() {
            let want = 0.5 / (i + 1) as f64;
            assert!((v - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn forced_lp_curve_agrees_with_the_closed_form() {
        let e = ExhaustionSpec::plane_by_balls(4).unwrap();
        let plan = SamplingPlan::default();
        let curve = gamma_curve(&e, &[c(0.5, 0.0)], 8, &plan, MethodPolicy::ForceLp).unwrap();
        for (i, v) in curve.values.iter().enumerate() {
            let want = 0.5 / (i + 1) as f64;
            assert!((v - want).abs() <= 1e-3, "index {i}: {v} vs {want}");
            assert_eq!(curve.methods[i], GammaMethod::Lp);
        }
    }

    #[test]
    fn unit_disc_curve_plateaus_and_classifies_as_plateau() {
        let e = ExhaustionSpec::unit_disc_by_balls(8).unwrap();
        let plan = SamplingPlan::default();
        let curve = gamma_curve(&e, &[c(0.5, 0.0)], 8, &plan, MethodPolicy::Auto).unwrap();
        // radius 0.5 does not strictly contain z = 0.5
        assert_eq!(curve.start_index, 1);
        let last = *curve.values.last().unwrap();
        assert!((last - 0.5).abs() <= 1e-2);
        let verdict = liouville_verdict(&curve, 0.05).unwrap();
        assert_eq!(verdict.kind, VerdictKind::PlateauEvidence);
        assert!((verdict.limit_estimate - 0.5).abs() <= 1e-2);
        assert!(!verdict.low_confidence);
    }

    #[test]
    fn plane_curve_classifies_as_decay() {
        // harmonic decay needs a longish tail before the extrapolated limit
        // drops below the threshold
        let e = ExhaustionSpec::plane_by_balls(24).unwrap();
        let plan = SamplingPlan::default();
        let curve = gamma_curve(&e, &[c(0.5, 0.0)], 8, &plan, MethodPolicy::Auto).unwrap();
        let verdict = liouville_verdict(&curve, 0.05).unwrap();
        assert_eq!(verdict.kind, VerdictKind::DecayEvidence);
        assert!(verdict.limit_estimate <= 0.05);
    }

    #[test]
    fn constant_zero_curves_classify_as_decay() {
        let e = ExhaustionSpec::plane_by_balls(6).unwrap();
        let plan = SamplingPlan::default();
        let curve = gamma_curve(&e, &[c(0.0, 0.0)], 8, &plan, MethodPolicy::Auto).unwrap();
        assert!(curve.values.iter().all(|v| *v == 0.0));
        let verdict = liouville_verdict(&curve, 0.05).unwrap();
        assert_eq!(verdict.kind, VerdictKind::DecayEvidence);
    }

    #[test]
    fn schwarz_index_on_the_plane_matches_the_reciprocal_prediction() {
        let e = ExhaustionSpec::plane_by_balls(8).unwrap();
        let plan = SamplingPlan::default();
        let k = ball(1.0);
        // delta = 1/3: need 1/n strictly below, first at radius 4
        let out =
            schwarz_domain_index(&e, &k, 1.0 / 3.0, 8, &plan, MethodPolicy::Auto).unwrap();
        match &out.domain {
            CompactSet::Ball { radius, .. } => assert_eq!(*radius, 4.0),
            other => panic!("unexpected domain {other:?}"),
        }
        // delta = 0.25 ties the level at radius 4 exactly; the strict
        // comparison resolves the tie to radius 5, satisfying "radius >= 4"
        let tied = schwarz_domain_index(&e, &k, 0.25, 8, &plan, MethodPolicy::Auto).unwrap();
        match &tied.domain {
            CompactSet::Ball { radius, .. } => assert_eq!(*radius, 5.0),
            other => panic!("unexpected domain {other:?}"),
        }
    }

    #[test]
    fn loose_levels_return_the_first_covering_domain() {
        let e = ExhaustionSpec::plane_by_balls(4).unwrap();
        let plan = SamplingPlan::default();
        let out = schwarz_domain_index(&e, &ball(1.0), 1.0, 8, &plan, MethodPolicy::Auto).unwrap();
        assert_eq!(out.index, 0);
    }

    #[test]
    fn plateau_exhaustions_cannot_reach_tight_levels() {
        let e = ExhaustionSpec::unit_disc_by_balls(8).unwrap();
        let plan = SamplingPlan::default();
        let k = ball(0.5);
        let err = schwarz_domain_index(&e, &k, 0.1, 8, &plan, MethodPolicy::Auto).unwrap_err();
        match err {
            Error::ExhaustionExhausted { best, .. } => assert!(best > 0.4),
            other => panic!("expected exhaustion failure, got {other:?}"),
        }
    }

    #[test]
    fn borel_caratheodory_produces_the_one_third_level() {
        let e = ExhaustionSpec::plane_by_balls(8).unwrap();
        let plan = SamplingPlan::default();
        let k = ball(1.0);
        let corpus: Vec<TruncatedSeries> = (0..10)
            .map(|i| crate::series::random_series(1, 10, 0.5, 300 + i).unwrap())
            .collect();
        let report =
            borel_caratheodory_general(&e, &k, 1.0, &corpus, 8, &plan, MethodPolicy::Auto)
                .unwrap();
        assert_eq!(report.delta, 1.0 / 3.0);
        match &report.k1 {
            CompactSet::Ball { radius, .. } => assert!(*radius >= 4.0),
            other => panic!("unexpected domain {other:?}"),
        }
        assert!(report.verified, "worst margin {}", report.worst_margin);
    }

    #[test]
    fn constant_members_hold_with_equality() {
        let e = ExhaustionSpec::plane_by_balls(6).unwrap();
        let plan = SamplingPlan::default();
        let corpus = vec![TruncatedSeries::constant(1, c(2.0, 1.0))];
        let report = borel_caratheodory_general(
            &e,
            &ball(1.0),
            1.0,
            &corpus,
            8,
            &plan,
            MethodPolicy::Auto,
        )
        .unwrap();
        assert!(report.verified);
        assert!((report.worst_margin - 1e-9).abs() <= 1e-12);
    }

    #[test]
    fn degenerate_exhaustions_are_rejected() {
        let domains = vec![ball(1.0), ball(1.0)];
        let err = ExhaustionSpec::new(
            domains,
            vec![c(0.0, 0.0)],
            ExhaustionLabel::PlaneByBalls,
        )
        .unwrap_err();
        match err {
            Error::InvalidParameter(msg) => assert!(msg.contains("strictly")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ellipse_curves_are_monotone_under_the_lp() {
        let e = ExhaustionSpec::ellipse_family(4).unwrap();
        let plan = SamplingPlan::default();
        let curve = gamma_curve(&e, &[c(0.2, 0.1)], 8, &plan, MethodPolicy::ForceLp).unwrap();
        assert!(curve.values.iter().all(|v| (0.0..=1.01).contains(v)));
        for w in curve.values.windows(2) {
            assert!(w[1] <= w[0] + 1e-6);
        }
    }
}
