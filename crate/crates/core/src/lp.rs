//! A dense two-phase simplex solver for the small linear programs of the
//! extremal-value engine.
//!
//! Problems have the fixed shape
//!
//! ```text
//! maximize    d . x          x in R^n, n small (tens)
//! subject to  A x <= 1       M rows, M large (thousands)
//! ```
//!
//! with a bounded feasible set. The solver works on the dual
//! `min 1.y : A^T y = d, y >= 0`, which has only `n` equality rows, so the
//! tableau stays `n x (M + n)`. The primal solution is recovered from the
//! simplex multipliers and checked for feasibility before returning; strong
//! duality makes the two objective values equal at the optimum.

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;
/// Dantzig pricing switches to Bland's rule after this many pivots to rule
/// out cycling on the highly degenerate boundary grids.
const BLAND_AFTER: usize = 512;

/// `maximize objective . x` subject to `rows[j] . x <= 1` for every row.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = objective.len();
        if n == 0 {
            return Err(Error::LpFailure("empty objective".into()));
        }
        if rows.is_empty() {
            return Err(Error::LpFailure("no constraints".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::LpFailure("constraint row length mismatch".into()));
        }
        Ok(Self { objective, rows })
    }

    pub fn solve(&self, max_iterations: usize) -> Result<LpSolution> {
        Simplex::new(self).run(max_iterations)
    }
}

struct Simplex {
    n: usize,      // dual equality rows = primal variables
    m: usize,      // dual variables = primal constraints
    width: usize,  // m real columns + n artificial columns
    /// Row-major tableau: n rows of `width + 1` entries (last is the rhs).
    tab: Vec<f64>,
    /// Cost row (reduced costs), length `width + 1`; the last entry carries
    /// the negated objective.
    cost: Vec<f64>,
    basis: Vec<usize>,
    sign: Vec<f64>,
}

impl Simplex {
    fn new(p: &LpProblem) -> Self {
        let n = p.objective.len();
        let m = p.rows.len();
        let width = m + n;
        let mut sign = vec![1.0; n];
        for (i, s) in sign.iter_mut().enumerate() {
            if p.objective[i] < 0.0 {
                *s = -1.0;
            }
        }
        let mut tab = vec![0.0; n * (width + 1)];
        for i in 0..n {
            let row = &mut tab[i * (width + 1)..(i + 1) * (width + 1)];
            for j in 0..m {
                row[j] = sign[i] * p.rows[j][i];
            }
            row[m + i] = 1.0;
            row[width] = sign[i] * p.objective[i];
        }
        Simplex {
            n,
            m,
            width,
            tab,
            cost: vec![0.0; width + 1],
            basis: (m..m + n).collect(),
            sign,
        }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.tab[i * (self.width + 1)..(i + 1) * (self.width + 1)]
    }

    /// Rebuild the cost row for the given column costs.
    fn price(&mut self, col_cost: &dyn Fn(usize) -> f64) {
        let w = self.width + 1;
        for j in 0..w {
            self.cost[j] = if j < self.width { col_cost(j) } else { 0.0 };
        }
        for i in 0..self.n {
            let cb = col_cost(self.basis[i]);
            if cb != 0.0 {
                let row = &self.tab[i * w..(i + 1) * w];
                for j in 0..w {
                    self.cost[j] -= cb * row[j];
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width + 1;
        let piv = self.tab[r * w + c];
        let inv = 1.0 / piv;
        for j in 0..w {
            self.tab[r * w + j] *= inv;
        }
        for i in 0..self.n {
            if i == r {
                continue;
            }
            let factor = self.tab[i * w + c];
            if factor != 0.0 {
                for j in 0..w {
                    self.tab[i * w + j] -= factor * self.tab[r * w + j];
                }
                self.tab[i * w + c] = 0.0;
            }
        }
        let factor = self.cost[c];
        if factor != 0.0 {
            for j in 0..w {
                self.cost[j] -= factor * self.tab[r * w + j];
            }
            self.cost[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// One simplex phase: pivot until no column prices out negative.
    /// `allowed` filters the entering columns; `floor` stops the phase early
    /// once the phase objective cannot improve further (both phases minimize
    /// sums of nonnegative variables, so zero is such a floor). Returns true
    /// when the floor fired; the basis then carries the optimal value but is
    /// not priced out, so simplex multipliers must not be read off it.
    fn iterate(
        &mut self,
        allowed: &dyn Fn(usize) -> bool,
        floor: Option<(f64, &dyn Fn(usize) -> f64)>,
        budget: &mut usize,
    ) -> Result<bool> {
        let w = self.width + 1;
        let mut pivots = 0usize;
        loop {
            if let Some((level, cost)) = floor {
                if self.objective_value(cost) <= level + EPS {
                    return Ok(true);
                }
            }
            if *budget == 0 {
                return Err(Error::LpFailure(format!(
                    "iteration cap reached after {pivots} pivots in this phase"
                )));
            }
            *budget -= 1;
            pivots += 1;
            let bland = pivots > BLAND_AFTER;
            // entering column
            let mut enter: Option<usize> = None;
            let mut best = -EPS;
            for j in 0..self.width {
                if !allowed(j) {
                    continue;
                }
                let c = self.cost[j];
                if c < -EPS {
                    if bland {
                        enter = Some(j);
                        break;
                    }
                    if c < best {
                        best = c;
                        enter = Some(j);
                    }
                }
            }
            let Some(c) = enter else { return Ok(false) };
            // leaving row by ratio test; Bland breaks ties on basis index
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.n {
                let a = self.tab[i * w + c];
                if a > EPS {
                    let ratio = self.tab[i * w + self.width] / a;
                    let better = ratio < best_ratio - EPS
                        || (ratio < best_ratio + EPS
                            && leave.map_or(true, |l| self.basis[i] < self.basis[l]));
                    if better {
                        best_ratio = ratio;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else {
                return Err(Error::LpFailure(
                    "dual unbounded: the primal feasible set is empty or degenerate".into(),
                ));
            };
            self.pivot(r, c);
        }
    }

    fn objective_value(&self, col_cost: &dyn Fn(usize) -> f64) -> f64 {
        (0..self.n)
            .map(|i| col_cost(self.basis[i]) * self.row(i)[self.width])
            .sum()
    }

    fn run(mut self, max_iterations: usize) -> Result<LpSolution> {
        let mut budget = max_iterations;
        let m = self.m;

        // phase 1: drive the artificial variables to zero
        let phase1 = move |j: usize| if j >= m { 1.0 } else { 0.0 };
        self.price(&phase1);
        self.iterate(&|_| true, Some((0.0, &phase1)), &mut budget)?;
        let infeas = self.objective_value(&phase1);
        if infeas > 1e-7 {
            return Err(Error::LpFailure(format!(
                "no dual-feasible point (residual {infeas:e}); the primal is unbounded"
            )));
        }

        // drive any artificial still basic (at value zero) out of the basis;
        // rows whose real part is entirely zero are redundant and inert
        let w = self.width + 1;
        for i in 0..self.n {
            if self.basis[i] >= m {
                let row = &self.tab[i * w..(i + 1) * w];
                if let Some(c) = (0..m).find(|&j| row[j].abs() > 1e-7) {
                    self.pivot(i, c);
                }
            }
        }

        // phase 2: minimize the true cost, artificials may not re-enter;
        // the cost is a sum of nonnegative variables, so zero is a floor here
        // as well
        let phase2 = move |j: usize| if j < m { 1.0 } else { 0.0 };
        self.price(&phase2);
        let floored = self.iterate(&|j| j < m, Some((0.0, &phase2)), &mut budget)?;
        if floored {
            // dual optimum 0 means the primal maximum is 0, attained at the
            // origin, which is feasible for any `Ax <= 1`
            return Ok(LpSolution {
                value: 0.0,
                x: vec![0.0; self.n],
                iterations: max_iterations - budget,
            });
        }
        let value = self.objective_value(&phase2);

        // multipliers of the equality rows live in the artificial block
        let w = self.width + 1;
        let mut x = vec![0.0; self.n];
        for i in 0..self.n {
            let mut pi = 0.0;
            for b in 0..self.n {
                let cb = if self.basis[b] < m { 1.0 } else { 0.0 };
                if cb != 0.0 {
                    pi += cb * self.tab[b * w + m + i];
                }
            }
            x[i] = self.sign[i] * pi;
        }
        Ok(LpSolution {
            value,
            x,
            iterations: max_iterations - budget,
        })
    }
}

/// Solve and verify: the recovered primal point must satisfy the constraints
/// and reproduce the optimum value.
pub fn solve_checked(p: &LpProblem, max_iterations: usize) -> Result<LpSolution> {
    let sol = p.solve(max_iterations)?;
    let n = p.objective.len();
    for (j, row) in p.rows.iter().enumerate() {
        let lhs: f64 = (0..n).map(|i| row[i] * sol.x[i]).sum();
        if lhs > 1.0 + 1e-6 {
            return Err(Error::LpFailure(format!(
                "recovered primal violates constraint {j}: {lhs}"
            )));
        }
    }
    let obj: f64 = (0..n).map(|i| p.objective[i] * sol.x[i]).sum();
    if (obj - sol.value).abs() > 1e-6 * (1.0 + sol.value.abs()) {
        return Err(Error::LpFailure(format!(
            "duality gap between recovered primal {obj} and optimum {}",
            sol.value
        )));
    }
    Ok(sol)
}
