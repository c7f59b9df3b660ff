//! Concrete basis families with a constant member at index 0, coefficient
//! extraction, and shifted systems.
//!
//! Two nontrivial families ship with exact reference formulas:
//! - `Monomial` in `d` variables, indexed by graded-lexicographic rank of the
//!   exponent multi-index;
//! - `FaberSegment`, the Faber polynomials of the segment `[-1, 1]`:
//!   `F_0 = 1` and `F_n = 2 T_n` for `n >= 1` (Chebyshev polynomials), whose
//!   sup over the Bernstein ellipse with parameter `rho` is
//!   `rho^n + rho^{-n}`.
//!
//! `Shifted` replaces members `n >= 1` by `phi_n - phi_n(z0)` while keeping
//! the constant member, and `DropConstant` removes the constant member
//! entirely (its member `n` is the base member `n + 1`); the latter exists so
//! that the pipeline's rejection of constant-free families is testable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CompactSet;
use crate::sampling::{sup_norm, SamplingPlan};
use crate::series::multi_unrank;

/// A basis family of entire functions with flat index `n = 0, 1, 2, ...`.
/// For `Monomial` the flat index is the graded-lexicographic rank of the
/// exponent multi-index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum BasisFamily {
    Monomial {
        dim: usize,
    },
    FaberSegment,
    Shifted {
        base: Box<BasisFamily>,
        #[serde(with = "crate::geometry::c64points")]
        z0: Vec<Complex64>,
    },
    /// The base family with its constant member removed; member `n` is the
    /// base member `n + 1`. Not a Bohr-property basis: it exercises the
    /// rejection path of the certification pipeline.
    DropConstant {
        base: Box<BasisFamily>,
    },
}

impl BasisFamily {
    pub fn monomial(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "monomial family needs at least one variable".into(),
            ));
        }
        Ok(BasisFamily::Monomial { dim })
    }

    pub fn faber_segment() -> Self {
        BasisFamily::FaberSegment
    }

    pub fn dim(&self) -> usize {
        match self {
            BasisFamily::Monomial { dim } => *dim,
            BasisFamily::FaberSegment => 1,
            BasisFamily::Shifted { base, .. } | BasisFamily::DropConstant { base } => base.dim(),
        }
    }

    /// Whether some member is a nonzero constant (always member 0 here).
    pub fn has_constant_member(&self) -> bool {
        match self {
            BasisFamily::Monomial { .. } | BasisFamily::FaberSegment => true,
            BasisFamily::Shifted { .. } => true,
            BasisFamily::DropConstant { .. } => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BasisFamily::Monomial { dim } => format!("monomial (dim {dim})"),
            BasisFamily::FaberSegment => "faber-segment".into(),
            BasisFamily::Shifted { base, z0 } => {
                format!("shifted {} at {:?}", base.describe(), z0)
            }
            BasisFamily::DropConstant { base } => {
                format!("{} without its constant member", base.describe())
            }
        }
    }
}

/// Chebyshev polynomial `T_n` at a complex argument via the three-term
/// recurrence.
pub fn chebyshev_t(n: usize, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = z;
    for _ in 1..n {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Value of the `n`-th member at `z`.
pub fn basis_eval(b: &BasisFamily, n: usize, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: z.len(),
        });
    }
    match b {
        BasisFamily::Monomial { dim } => {
            let alpha = multi_unrank(*dim, n);
            let mut v = Complex64::new(1.0, 0.0);
            for (zk, &ak) in z.iter().zip(&alpha.0) {
                v *= zk.powu(ak);
            }
            Ok(v)
        }
        BasisFamily::FaberSegment => {
            if n == 0 {
                Ok(Complex64::new(1.0, 0.0))
            } else {
                Ok(2.0 * chebyshev_t(n, z[0]))
            }
        }
        BasisFamily::Shifted { base, z0 } => {
            if n == 0 {
                Ok(Complex64::new(1.0, 0.0))
            } else {
                Ok(basis_eval(base, n, z)? - basis_eval(base, n, z0)?)
            }
        }
        BasisFamily::DropConstant { base } => basis_eval(base, n + 1, z),
    }
}

/// `Shifted(B, z0)`: member 0 stays 1, member `n >= 1` becomes
/// `phi_n - phi_n(z0)`. If `f = sum f_n phi_n` then
/// `f = f(z0) + sum_{n>=1} f_n psi_n`.
pub fn shift_basis(b: &BasisFamily, z0: Vec<Complex64>) -> Result<BasisFamily> {
    if z0.len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: z0.len(),
        });
    }
    Ok(BasisFamily::Shifted {
        base: Box::new(b.clone()),
        z0,
    })
}

/// Exact sup of `|phi_n|` over `k` where a closed form exists; `None` falls
/// back to sampling.
pub fn member_sup_closed(b: &BasisFamily, n: usize, k: &CompactSet) -> Option<f64> {
    let centered = |pts: &[Complex64]| pts.iter().all(|c| c.norm() == 0.0);
    match b {
        BasisFamily::Monomial { dim } => {
            let alpha = multi_unrank(*dim, n);
            let total: u32 = alpha.0.iter().sum();
            match k {
                CompactSet::Polydisc { center, radii } if centered(center) => {
                    let mut v = 1.0;
                    for (rk, &ak) in radii.iter().zip(&alpha.0) {
                        v *= rk.powi(ak as i32);
                    }
                    Some(v)
                }
                CompactSet::Ball { center, radius } if centered(center) => {
                    if total == 0 {
                        return Some(1.0);
                    }
                    if *dim == 1 {
                        return Some(radius.powi(total as i32));
                    }
                    // Lagrange max of prod |z_k|^{a_k} on the sphere:
                    // attained at |z_k|^2 = r^2 a_k / |a|
                    let t = total as f64;
                    let mut logv = t * radius.ln();
                    for &ak in &alpha.0 {
                        if ak > 0 {
                            let a = ak as f64;
                            logv += 0.5 * a * (a / t).ln();
                        }
                    }
                    Some(logv.exp())
                }
                CompactSet::Segment if *dim == 1 => Some(1.0),
                CompactSet::BernsteinEllipse { rho } if *dim == 1 => {
                    let a = (rho + 1.0 / rho) / 2.0;
                    Some(a.powi(total as i32))
                }
                _ => None,
            }
        }
        BasisFamily::FaberSegment => {
            if n == 0 {
                return match k {
                    CompactSet::Segment | CompactSet::BernsteinEllipse { .. } => Some(1.0),
                    _ => None,
                };
            }
            match k {
                CompactSet::Segment => Some(2.0),
                CompactSet::BernsteinEllipse { rho } => {
                    Some(rho.powi(n as i32) + rho.powi(-(n as i32)))
                }
                _ => None,
            }
        }
        BasisFamily::Shifted { base, z0 } => {
            if n == 0 {
                return member_sup_closed(base, 0, k);
            }
            if !centered(z0) {
                return None;
            }
            match base.as_ref() {
                // monomials already vanish at 0
                BasisFamily::Monomial { .. } => member_sup_closed(base, n, k),
                BasisFamily::FaberSegment => {
                    // F_n(0) = 0 for odd n and |F_n(0)| = 2 for even n; the
                    // shift's sup adds |F_n(0)| since the ellipse image of
                    // w^n + w^{-n} reaches every phase of maximal modulus
                    let offset = if n % 2 == 0 { 2.0 } else { 0.0 };
                    match k {
                        CompactSet::Segment => Some(2.0 + offset),
                        CompactSet::BernsteinEllipse { rho } => {
                            Some(rho.powi(n as i32) + rho.powi(-(n as i32)) + offset)
                        }
                        _ => None,
                    }
                }
                _ => None,
            }
        }
        BasisFamily::DropConstant { base } => member_sup_closed(base, n + 1, k),
    }
}

/// Sup of `|phi_n|` over `k`: closed form when known, sampled otherwise.
pub fn member_sup(b: &BasisFamily, n: usize, k: &CompactSet, plan: &SamplingPlan) -> Result<f64> {
    if let Some(v) = member_sup_closed(b, n, k) {
        return Ok(v);
    }
    Ok(sup_norm(|z| basis_eval(b, n, z).unwrap(), k, plan)?.value)
}

/// `sum_n coeffs[n] * phi_n(z)`.
pub fn eval_combination(b: &BasisFamily, coeffs: &[Complex64], z: &[Complex64]) -> Result<Complex64> {
    if z.len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: z.len(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    match b {
        BasisFamily::Monomial { dim: 1 } => {
            // Horner; ladder candidates carry ~10^3 coefficients and the
            // generic member-by-member path is allocation-bound
            let x = z[0];
            for &c in coeffs.iter().rev() {
                acc = acc * x + c;
            }
        }
        BasisFamily::FaberSegment => {
            // shared recurrence instead of per-member restarts
            let x = z[0];
            let mut prev = Complex64::new(1.0, 0.0);
            let mut cur = x;
            for (n, &c) in coeffs.iter().enumerate() {
                let member = match n {
                    0 => Complex64::new(1.0, 0.0),
                    1 => 2.0 * cur,
                    _ => {
                        let next = 2.0 * x * cur - prev;
                        prev = cur;
                        cur = next;
                        2.0 * cur
                    }
                };
                acc += c * member;
            }
        }
        _ => {
            for (n, &c) in coeffs.iter().enumerate() {
                if c.norm_sqr() > 0.0 {
                    acc += c * basis_eval(b, n, z)?;
                }
            }
        }
    }
    Ok(acc)
}

/// Expansion coefficients with the residual of the partial sum on the
/// extraction compact.
#[derive(Debug, Clone, Serialize)]
pub struct ExpansionResult {
    #[serde(serialize_with = "crate::geometry::c64points::serialize")]
    pub coefficients: Vec<Complex64>,
    pub residual: f64,
}

/// Quadrature budget for coefficient extraction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtractionBudget {
    /// Highest total degree (monomial) or index (Faber) extracted.
    pub degree_bound: usize,
    /// Torus radius (monomial) used by the Fourier averages. Defaults to
    /// 1.25 x the largest compact of the calling experiment.
    pub rho_ext: f64,
    /// Residual above this is a failed expansion.
    pub tolerance: f64,
    /// Quadrature nodes per circle factor.
    pub grid: usize,
    pub seed: u64,
}

impl ExtractionBudget {
    pub fn for_family(b: &BasisFamily) -> Self {
        let dim = b.dim();
        let degree_bound = crate::series::default_degree_bound(dim) as usize;
        let grid = match dim {
            0 | 1 => 256,
            2 => 64,
            _ => 40,
        };
        Self {
            degree_bound,
            rho_ext: 1.25,
            tolerance: 1e-8,
            grid,
            seed: 0x42,
        }
    }

    pub fn with_rho_ext(mut self, rho_ext: f64) -> Self {
        self.rho_ext = rho_ext;
        self
    }

    pub fn with_degree_bound(mut self, degree_bound: usize) -> Self {
        self.degree_bound = degree_bound;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

fn check_finite(v: Complex64, z: &[Complex64]) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::EvaluationFailure { point: z.to_vec() })
    }
}

/// Coefficients of `f` in the family `b`.
///
/// Monomial families use discrete Fourier averages over a seeded torus of
/// radius `rho_ext`; the Faber family uses Gauss-Chebyshev quadrature with
/// the constant coefficient halved and `a_n / 2` assigned to Faber index `n`
/// (since `F_n = 2 T_n`). The residual is the sampled sup of `f` minus the
/// partial sum on the extraction compact; residuals above
/// `budget.tolerance` are reported as non-converged expansions.
pub fn extract_coefficients<F>(
    b: &BasisFamily,
    f: F,
    budget: &ExtractionBudget,
) -> Result<ExpansionResult>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    match b {
        BasisFamily::Monomial { dim } => {
            extract_monomial(*dim, &f, budget)
        }
        BasisFamily::FaberSegment => extract_faber(&f, budget),
        BasisFamily::Shifted { .. } | BasisFamily::DropConstant { .. } => {
            Err(Error::InvalidParameter(
                "coefficient extraction is only implemented for the monomial and Faber families"
                    .into(),
            ))
        }
    }
}

fn extract_monomial<F>(dim: usize, f: &F, budget: &ExtractionBudget) -> Result<ExpansionResult>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    let n = budget.grid;
    let rho = budget.rho_ext;
    if n.pow(dim as u32) > 4_000_000 {
        return Err(Error::InvalidParameter(format!(
            "extraction grid {n}^{dim} is too large"
        )));
    }
    if n < 2 * budget.degree_bound + 2 {
        return Err(Error::InvalidParameter(format!(
            "extraction grid {n} cannot resolve degree {}",
            budget.degree_bound
        )));
    }
    // a seeded rotation of the torus grid breaks alignment with any symmetry
    // of f that would otherwise bias the quadrature
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(budget.seed);
    let offsets: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();

    // cache f on the full grid, then take one weighted average per index
    let mut nodes: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for off in &offsets {
        nodes.push(
            (0..n)
                .map(|j| {
                    let t = std::f64::consts::TAU * (j as f64 + off) / n as f64;
                    Complex64::from_polar(rho, t)
                })
                .collect(),
        );
    }
    let mut values = Vec::with_capacity(n.pow(dim as u32));
    let mut idx = vec![0usize; dim];
    loop {
        let z: Vec<Complex64> = (0..dim).map(|k| nodes[k][idx[k]]).collect();
        values.push(check_finite(f(&z), &z)?);
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == dim {
                // done with the full product grid
                return finish_monomial(dim, f, budget, &nodes, &values);
            }
        }
    }
}

fn finish_monomial<F>(
    dim: usize,
    f: &F,
    budget: &ExtractionBudget,
    nodes: &[Vec<Complex64>],
    values: &[Complex64],
) -> Result<ExpansionResult>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    let n = nodes[0].len();
    let indices = crate::series::multi_indices(dim, budget.degree_bound as u32);
    let mut coeffs = Vec::with_capacity(indices.len());
    // c_alpha = average over the torus of f(z) / z^alpha
    for alpha in &indices {
        let mut inv_pows: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        for k in 0..dim {
            inv_pows.push(
                nodes[k]
                    .iter()
                    .map(|z| z.powu(alpha.0[k]).inv())
                    .collect(),
            );
        }
        let mut acc = Complex64::new(0.0, 0.0);
        // the fill loop increments coordinate 0 fastest, so flat index
        // decomposes little-endian in base n
        for (flat, &v) in values.iter().enumerate() {
            let mut w = v;
            let mut rest = flat;
            for inv in inv_pows.iter() {
                w *= inv[rest % n];
                rest /= n;
            }
            acc += w;
        }
        coeffs.push(acc / values.len() as f64);
    }

    let partial = {
        let indices = indices.clone();
        let coeffs = coeffs.clone();
        move |z: &[Complex64]| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, c) in indices.iter().zip(&coeffs) {
                let mut m = *c;
                for (zk, &ak) in z.iter().zip(&a.0) {
                    m *= zk.powu(ak);
                }
                acc += m;
            }
            acc
        }
    };
    let compact = CompactSet::polydisc0(dim, budget.rho_ext)?;
    let plan = SamplingPlan::for_dimension(dim).with_seed(budget.seed);
    let res = sup_norm(|z| f(z) - partial(z), &compact, &plan)?;
    if res.value > budget.tolerance {
        return Err(Error::NonConvergedExpansion {
            residual: res.value,
            budget: budget.tolerance,
        });
    }
    Ok(ExpansionResult {
        coefficients: coeffs,
        residual: res.value,
    })
}

fn extract_faber<F>(f: &F, budget: &ExtractionBudget) -> Result<ExpansionResult>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    let m = budget.grid.max(2 * budget.degree_bound + 2);
    // Gauss-Chebyshev nodes x_j = cos(pi (j + 1/2) / m)
    let mut fvals = Vec::with_capacity(m);
    let mut thetas = Vec::with_capacity(m);
    for j in 0..m {
        let t = std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
        let z = [Complex64::new(t.cos(), 0.0)];
        fvals.push(check_finite(f(&z), &z)?);
        thetas.push(t);
    }
    let mut coeffs = Vec::with_capacity(budget.degree_bound + 1);
    for k in 0..=budget.degree_bound {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m {
            acc += fvals[j] * (k as f64 * thetas[j]).cos();
        }
        let a_k = acc * 2.0 / m as f64;
        // f = a_0/2 + sum a_n T_n = (a_0/2) F_0 + sum (a_n/2) F_n
        coeffs.push(a_k / 2.0);
    }
    let partial = {
        let coeffs = coeffs.clone();
        move |z: &[Complex64]| eval_combination(&BasisFamily::FaberSegment, &coeffs, z).unwrap()
    };
    let plan = SamplingPlan::for_dimension(1).with_seed(budget.seed);
    let res = sup_norm(|z| f(z) - partial(z), &CompactSet::segment(), &plan)?;
    if res.value > budget.tolerance {
        return Err(Error::NonConvergedExpansion {
            residual: res.value,
            budget: budget.tolerance,
        });
    }
    Ok(ExpansionResult {
        coefficients: coeffs,
        residual: res.value,
    })
}
