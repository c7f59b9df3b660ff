//! Boundary sampling grids and sup-norm estimation.
//!
//! All maxima are estimated from below: a deterministic boundary grid is
//! evaluated, then the best candidates are refined by golden-section search
//! along the grid parameters. Estimates therefore never exceed the true sup,
//! and doubling `boundary_count` refines the same nested grid.
//!
//! Boundary models per compact family:
//! - `Ball` in one variable: the circle, sampled at uniform angles;
//! - `Ball` in several variables: seeded quasi-uniform unit directions `u`
//!   combined with circle sweeps `e^{i theta} u` (the sweeps stay on the
//!   sphere and each slice `lambda -> f(lambda u)` obeys the maximum
//!   principle);
//! - `Polydisc`: the distinguished boundary (torus), a product of circles;
//! - `BernsteinEllipse`: the Joukowski image of `|w| = rho`;
//! - `Segment`: the segment itself.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CompactSet;

const GOLDEN_ITERS: usize = 40;
const MAX_POLISH_SITES: usize = 32;
const MAX_GRID_POINTS: usize = 2_000_000;

/// Deterministic sampling configuration.
///
/// `boundary_count` applies per boundary dimension (per circle factor of a
/// torus, and to both the direction count and the sweep count on spheres).
/// `angle_count` discretizes modulus constraints where a linear program needs
/// half-plane cuts. `refinement_rounds` controls the local polish effort.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub boundary_count: usize,
    pub angle_count: usize,
    pub seed: u64,
    pub refinement_rounds: usize,
}

impl SamplingPlan {
    pub fn new(
        boundary_count: usize,
        angle_count: usize,
        seed: u64,
        refinement_rounds: usize,
    ) -> Result<Self> {
        if boundary_count < 8 || angle_count < 8 {
            return Err(Error::InvalidParameter(format!(
                "sampling counts must be at least 8, got boundary {boundary_count}, angle {angle_count}"
            )));
        }
        Ok(Self {
            boundary_count,
            angle_count,
            seed,
            refinement_rounds,
        })
    }

    /// Defaults tuned per dimension so product grids stay affordable.
    pub fn for_dimension(dim: usize) -> Self {
        let boundary_count = match dim {
            0 | 1 => 256,
            2 => 48,
            3 => 20,
            _ => 12,
        };
        Self {
            boundary_count,
            angle_count: 64,
            seed: 0x42,
            refinement_rounds: 2,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_boundary_count(mut self, boundary_count: usize) -> Self {
        self.boundary_count = boundary_count;
        self
    }
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self::for_dimension(1)
    }
}

/// Result of a sup estimate: the value, where it was attained, and how fine
/// the search was.
#[derive(Debug, Clone, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    #[serde(serialize_with = "crate::geometry::c64points::serialize")]
    pub witness: Vec<Complex64>,
    pub samples: usize,
    /// Parameter-space spacing of the underlying grid.
    pub resolution: f64,
}

enum Grid {
    /// One-parameter boundaries: circles, ellipse arcs, the segment.
    Curve {
        params: Vec<f64>,
        cyclic: bool,
        lo: f64,
        hi: f64,
        point: Box<dyn Fn(f64) -> Vec<Complex64>>,
    },
    /// Product of circles (torus). One angle per dimension.
    Torus {
        center: Vec<Complex64>,
        radii: Vec<f64>,
        count: usize,
    },
    /// Sphere sweeps: point = center + radius * e^{i theta} * direction.
    Sphere {
        center: Vec<Complex64>,
        radius: f64,
        directions: Vec<Vec<Complex64>>,
        count: usize,
    },
}

fn unit_directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5f3759df);
    let mut dirs = Vec::with_capacity(count);
    // coordinate axes first so monomial-type extremes are always represented
    for k in 0..dim.min(count) {
        let mut u = vec![Complex64::new(0.0, 0.0); dim];
        u[k] = Complex64::new(1.0, 0.0);
        dirs.push(u);
    }
    while dirs.len() < count {
        let mut u: Vec<Complex64> = (0..dim)
            .map(|_| {
                // Box-Muller pairs give an isotropic Gaussian direction
                let r = (-2.0 * (1.0 - rng.gen::<f64>()).ln()).sqrt();
                let t = rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::new(r * t.cos(), r * t.sin())
            })
            .collect();
        let norm: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-9 {
            continue;
        }
        for z in u.iter_mut() {
            *z /= norm;
        }
        dirs.push(u);
    }
    dirs
}

fn build_grid(k: &CompactSet, plan: &SamplingPlan) -> Result<Grid> {
    let n = plan.boundary_count;
    match k {
        CompactSet::Ball { center, radius } if center.len() == 1 => {
            let c = center[0];
            let r = *radius;
            let params = (0..n).map(|j| std::f64::consts::TAU * j as f64 / n as f64).collect();
            Ok(Grid::Curve {
                params,
                cyclic: true,
                lo: 0.0,
                hi: std::f64::consts::TAU,
                point: Box::new(move |t| vec![c + Complex64::from_polar(r, t)]),
            })
        }
        CompactSet::Ball { center, radius } => Ok(Grid::Sphere {
            center: center.clone(),
            radius: *radius,
            directions: unit_directions(center.len(), n, plan.seed),
            count: n,
        }),
        CompactSet::Polydisc { center, radii } => {
            let total = (n as u128).checked_pow(center.len() as u32);
            if total.map_or(true, |t| t > MAX_GRID_POINTS as u128) {
                return Err(Error::InvalidParameter(format!(
                    "torus grid {n}^{} exceeds the {MAX_GRID_POINTS}-point cap",
                    center.len()
                )));
            }
            Ok(Grid::Torus {
                center: center.clone(),
                radii: radii.clone(),
                count: n,
            })
        }
        CompactSet::BernsteinEllipse { rho } => {
            let r = *rho;
            let params = (0..n).map(|j| std::f64::consts::TAU * j as f64 / n as f64).collect();
            Ok(Grid::Curve {
                params,
                cyclic: true,
                lo: 0.0,
                hi: std::f64::consts::TAU,
                point: Box::new(move |t| {
                    let w = Complex64::from_polar(r, t);
                    vec![(w + 1.0 / w) / 2.0]
                }),
            })
        }
        CompactSet::Segment => {
            let params = (0..n)
                .map(|j| -1.0 + 2.0 * j as f64 / (n - 1) as f64)
                .collect();
            Ok(Grid::Curve {
                params,
                cyclic: false,
                lo: -1.0,
                hi: 1.0,
                point: Box::new(|t| vec![Complex64::new(t, 0.0)]),
            })
        }
    }
}

/// Deterministic boundary points of `k` under `plan`.
pub fn boundary_samples(k: &CompactSet, plan: &SamplingPlan) -> Result<Vec<Vec<Complex64>>> {
    let grid = build_grid(k, plan)?;
    let mut out = Vec::new();
    match grid {
        Grid::Curve { params, point, .. } => {
            for t in params {
                out.push(point(t));
            }
        }
        Grid::Torus { center, radii, count } => {
            let d = center.len();
            let mut idx = vec![0usize; d];
            loop {
                let z: Vec<Complex64> = (0..d)
                    .map(|k| {
                        let t = std::f64::consts::TAU * idx[k] as f64 / count as f64;
                        center[k] + Complex64::from_polar(radii[k], t)
                    })
                    .collect();
                out.push(z);
                let mut k = 0;
                loop {
                    idx[k] += 1;
                    if idx[k] < count {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                    if k == d {
                        return Ok(out);
                    }
                }
            }
        }
        Grid::Sphere {
            center,
            radius,
            directions,
            count,
        } => {
            for u in &directions {
                for j in 0..count {
                    let t = std::f64::consts::TAU * j as f64 / count as f64;
                    let rot = Complex64::from_polar(radius, t);
                    let z: Vec<Complex64> = center
                        .iter()
                        .zip(u)
                        .map(|(c, uk)| c + rot * uk)
                        .collect();
                    out.push(z);
                }
            }
        }
    }
    Ok(out)
}

struct Tracker<'a, F: Fn(&[Complex64]) -> Result<f64>> {
    g: &'a F,
    best: f64,
    witness: Vec<Complex64>,
    evals: usize,
}

impl<'a, F: Fn(&[Complex64]) -> Result<f64>> Tracker<'a, F> {
    fn new(g: &'a F) -> Self {
        Self {
            g,
            best: f64::NEG_INFINITY,
            witness: Vec::new(),
            evals: 0,
        }
    }

    fn eval(&mut self, z: &[Complex64]) -> Result<f64> {
        let v = (self.g)(z)?;
        self.evals += 1;
        if v > self.best {
            self.best = v;
            self.witness = z.to_vec();
        }
        Ok(v)
    }
}

/// Golden-section ascent on `[a, b]`, tracking every evaluation in `tr`.
fn golden_polish<F: Fn(&[Complex64]) -> Result<f64>>(
    tr: &mut Tracker<F>,
    point: &dyn Fn(f64) -> Vec<Complex64>,
    mut a: f64,
    mut b: f64,
) -> Result<()> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = tr.eval(&point(x1))?;
    let mut f2 = tr.eval(&point(x2))?;
    for _ in 0..GOLDEN_ITERS {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = tr.eval(&point(x1))?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = tr.eval(&point(x2))?;
        }
    }
    Ok(())
}

/// Indices of local maxima of `values` (cyclic or with endpoints), best first,
/// capped at `MAX_POLISH_SITES`.
fn local_maxima(values: &[f64], cyclic: bool) -> Vec<usize> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = if i == 0 {
                if cyclic {
                    values[n - 1]
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                values[i - 1]
            };
            let next = if i + 1 == n {
                if cyclic {
                    values[0]
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                values[i + 1]
            };
            values[i] >= prev && values[i] >= next
        })
        .collect();
    idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    idx.truncate(MAX_POLISH_SITES);
    idx
}

/// Maximum of a real-valued functional over the boundary of `k`: grid pass,
/// then golden-section polish around every leading local maximum.
pub fn boundary_max<F: Fn(&[Complex64]) -> Result<f64>>(
    k: &CompactSet,
    plan: &SamplingPlan,
    g: F,
) -> Result<SupEstimate> {
    let grid = build_grid(k, plan)?;
    let mut tr = Tracker::new(&g);
    let resolution;
    match &grid {
        Grid::Curve {
            params,
            cyclic,
            lo,
            hi,
            point,
        } => {
            let mut values = Vec::with_capacity(params.len());
            for &t in params {
                values.push(tr.eval(&point(t))?);
            }
            let step = (hi - lo) / params.len() as f64;
            resolution = step;
            if plan.refinement_rounds > 0 {
                for i in local_maxima(&values, *cyclic) {
                    let t = params[i];
                    let (mut a, mut b) = (t - step, t + step);
                    if !*cyclic {
                        a = a.max(*lo);
                        b = b.min(*hi);
                    }
                    golden_polish(&mut tr, point.as_ref(), a, b)?;
                }
            }
        }
        Grid::Torus { center, radii, count } => {
            let d = center.len();
            let step = std::f64::consts::TAU / *count as f64;
            resolution = step;
            let center = center.clone();
            let radii = radii.clone();
            let at = move |angles: &[f64]| -> Vec<Complex64> {
                (0..d)
                    .map(|k| center[k] + Complex64::from_polar(radii[k], angles[k]))
                    .collect()
            };
            let mut best_sites: Vec<(f64, Vec<f64>)> = Vec::new();
            let mut idx = vec![0usize; d];
            'outer: loop {
                let angles: Vec<f64> = idx.iter().map(|&i| step * i as f64).collect();
                let v = tr.eval(&at(&angles))?;
                best_sites.push((v, angles));
                if best_sites.len() > 8 {
                    best_sites
                        .sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
                    best_sites.truncate(8);
                }
                let mut k = 0;
                loop {
                    idx[k] += 1;
                    if idx[k] < *count {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                    if k == d {
                        break 'outer;
                    }
                }
            }
            for _ in 0..plan.refinement_rounds {
                for (_, site) in best_sites.iter_mut() {
                    for coord in 0..d {
                        let s = site.clone();
                        let point = |t: f64| {
                            let mut angles = s.clone();
                            angles[coord] = t;
                            at(&angles)
                        };
                        let a = site[coord] - step;
                        let b = site[coord] + step;
                        golden_polish(&mut tr, &point, a, b)?;
                    }
                }
            }
        }
        Grid::Sphere {
            center,
            radius,
            directions,
            count,
        } => {
            let step = std::f64::consts::TAU / *count as f64;
            resolution = step;
            let mut best_sites: Vec<(f64, usize, f64)> = Vec::new();
            for (di, u) in directions.iter().enumerate() {
                for j in 0..*count {
                    let t = step * j as f64;
                    let rot = Complex64::from_polar(*radius, t);
                    let z: Vec<Complex64> = center
                        .iter()
                        .zip(u)
                        .map(|(c, uk)| c + rot * uk)
                        .collect();
                    let v = tr.eval(&z)?;
                    best_sites.push((v, di, t));
                    if best_sites.len() > 8 {
                        best_sites.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
                        best_sites.truncate(8);
                    }
                }
            }
            if plan.refinement_rounds > 0 {
                for &(_, di, t) in &best_sites {
                    let u = directions[di].clone();
                    let c = center.clone();
                    let r = *radius;
                    let point = move |t: f64| -> Vec<Complex64> {
                        let rot = Complex64::from_polar(r, t);
                        c.iter().zip(&u).map(|(ck, uk)| ck + rot * uk).collect()
                    };
                    golden_polish(&mut tr, &point, t - step, t + step)?;
                }
            }
        }
    }
    Ok(SupEstimate {
        value: tr.best,
        witness: tr.witness,
        samples: tr.evals,
        resolution,
    })
}

/// Sup of `|f|` over the boundary of `k` (equals the sup over `k` for
/// analytic `f` by the maximum principle). Estimated from below.
pub fn sup_norm<F>(f: F, k: &CompactSet, plan: &SamplingPlan) -> Result<SupEstimate>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    boundary_max(k, plan, |z| {
        let v = f(z);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::EvaluationFailure { point: z.to_vec() });
        }
        Ok(v.norm())
    })
}

/// Sup of `Re f` over the boundary of `k` (equals the sup over `k` for
/// analytic `f`: the real part is harmonic).
pub fn sup_re<F>(f: F, k: &CompactSet, plan: &SamplingPlan) -> Result<SupEstimate>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    boundary_max(k, plan, |z| {
        let v = f(z);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::EvaluationFailure { point: z.to_vec() });
        }
        Ok(v.re)
    })
}
