//! Multi-indexed power series truncated to a finite degree.
//!
//! A [`TruncatedSeries`] stores coefficients `c_alpha` for exponent tuples
//! `alpha` of total degree at most `degree_bound` and evaluates
//! `sum c_alpha z^alpha` at points of `C^d`. Terms are kept sorted in graded
//! lexicographic order so that serialization and random generation are
//! deterministic.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent tuple of a monomial `z_1^{a_1} ... z_d^{a_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Graded lexicographic comparison: lower total degree first, then the
    /// tuple with the larger leading exponents first within a degree block.
    pub fn graded_lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of exponent tuples in `d` variables with total degree exactly `t`.
fn block_size(d: usize, t: u32) -> u128 {
    binomial(t as u64 + d as u64 - 1, d as u64 - 1)
}

/// All exponent tuples in `d` variables with total degree at most `bound`,
/// in graded lexicographic order.
pub fn multi_indices(d: usize, bound: u32) -> Vec<MultiIndex> {
    assert!(d >= 1, "dimension must be at least 1");
    let mut out = Vec::new();
    let mut current = vec![0u32; d];
    for t in 0..=bound {
        emit_degree_block(d, t, 0, &mut current, &mut out);
    }
    out
}

fn emit_degree_block(
    d: usize,
    remaining: u32,
    pos: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    if pos == d - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[pos] = v;
        emit_degree_block(d, remaining - v, pos + 1, current, out);
    }
}

/// Position of `alpha` in the graded lexicographic enumeration of its
/// dimension.
pub fn multi_rank(alpha: &MultiIndex) -> usize {
    let d = alpha.dim();
    let t = alpha.total_degree();
    let mut rank: u128 = (0..t).map(|s| block_size(d, s)).sum();
    let mut remaining = t;
    for (pos, &a) in alpha.0.iter().enumerate() {
        if pos == d - 1 {
            break;
        }
        let vars_right = d - pos - 1;
        // tuples in this block whose entry at `pos` is larger than `a`
        for v in (a + 1)..=remaining {
            rank += block_size(vars_right, remaining - v);
        }
        remaining -= a;
    }
    rank as usize
}

/// Inverse of [`multi_rank`] for dimension `d`.
pub fn multi_unrank(d: usize, mut rank: usize) -> MultiIndex {
    let mut t = 0u32;
    loop {
        let bs = block_size(d, t) as usize;
        if rank < bs {
            break;
        }
        rank -= bs;
        t += 1;
    }
    let mut alpha = vec![0u32; d];
    let mut remaining = t;
    for pos in 0..d {
        if pos == d - 1 {
            alpha[pos] = remaining;
            break;
        }
        let vars_right = d - pos - 1;
        for v in (0..=remaining).rev() {
            let bs = block_size(vars_right, remaining - v) as usize;
            if rank < bs {
                alpha[pos] = v;
                remaining -= v;
                break;
            }
            rank -= bs;
        }
    }
    MultiIndex(alpha)
}

/// Power series `sum c_alpha z^alpha` truncated to total degree
/// `degree_bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "SeriesRepr", try_from = "SeriesRepr")]
pub struct TruncatedSeries {
    dim: usize,
    degree_bound: u32,
    terms: Vec<(MultiIndex, Complex64)>,
}

/// Default truncation degree: 48 on the line, total degree 16 in several
/// variables.
pub fn default_degree_bound(dim: usize) -> u32 {
    if dim == 1 {
        48
    } else {
        16
    }
}

impl TruncatedSeries {
    pub fn new(
        dim: usize,
        degree_bound: u32,
        terms: Vec<(MultiIndex, Complex64)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        for (alpha, _) in &terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                });
            }
            if alpha.total_degree() > degree_bound {
                return Err(Error::InvalidParameter(format!(
                    "term degree {} exceeds bound {degree_bound}",
                    alpha.total_degree()
                )));
            }
        }
        let mut terms = terms;
        terms.sort_by(|a, b| a.0.graded_lex_cmp(&b.0));
        // merge duplicates additively, drop exact zeros
        let mut merged: Vec<(MultiIndex, Complex64)> = Vec::with_capacity(terms.len());
        for (alpha, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == alpha => *acc += c,
                _ => merged.push((alpha, c)),
            }
        }
        merged.retain(|(_, c)| c.norm_sqr() != 0.0);
        Ok(Self {
            dim,
            degree_bound,
            terms: merged,
        })
    }

    pub fn zero(dim: usize, degree_bound: u32) -> Self {
        Self {
            dim,
            degree_bound,
            terms: Vec::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::new(dim, 0, vec![(MultiIndex(vec![0; dim]), c)]).expect("constant series is valid")
    }

    /// One-variable series from the coefficient list `c_0, c_1, ...`.
    pub fn from_coeffs_1d(coeffs: &[Complex64]) -> Self {
        let bound = coeffs.len().saturating_sub(1) as u32;
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| (MultiIndex(vec![n as u32]), c))
            .collect();
        Self::new(1, bound, terms).expect("1-d coefficient list is valid")
    }

    /// Series from coefficients aligned with the graded lexicographic
    /// enumeration of `multi_indices(dim, degree_bound)`.
    pub fn from_dense(dim: usize, degree_bound: u32, coeffs: &[Complex64]) -> Result<Self> {
        let idx = multi_indices(dim, degree_bound);
        if coeffs.len() > idx.len() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients but only {} indices up to degree {degree_bound}",
                coeffs.len(),
                idx.len()
            )));
        }
        let terms = idx
            .into_iter()
            .zip(coeffs.iter().copied())
            .collect::<Vec<_>>();
        Self::new(dim, degree_bound, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Terms in graded lexicographic order; zero coefficients are omitted.
    pub fn terms(&self) -> &[(MultiIndex, Complex64)] {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms
            .iter()
            .find(|(a, _)| a == alpha)
            .map(|(_, c)| *c)
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coefficient(&MultiIndex(vec![0; self.dim]))
    }

    /// Coefficients aligned with `multi_indices(dim, bound)`.
    pub fn dense_coeffs(&self, bound: u32) -> Vec<Complex64> {
        let idx = multi_indices(self.dim, bound);
        let mut out = vec![Complex64::new(0.0, 0.0); idx.len()];
        for (alpha, c) in &self.terms {
            if alpha.total_degree() <= bound {
                out[multi_rank(alpha)] = *c;
            }
        }
        out
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        // per-coordinate power tables up to the largest exponent used
        let mut max_exp = vec![0u32; self.dim];
        for (alpha, _) in &self.terms {
            for (k, &e) in alpha.0.iter().enumerate() {
                max_exp[k] = max_exp[k].max(e);
            }
        }
        let tables: Vec<Vec<Complex64>> = z
            .iter()
            .zip(&max_exp)
            .map(|(&zk, &me)| {
                let mut t = Vec::with_capacity(me as usize + 1);
                let mut p = Complex64::new(1.0, 0.0);
                t.push(p);
                for _ in 0..me {
                    p *= zk;
                    t.push(p);
                }
                t
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (alpha, c) in &self.terms {
            let mut m = *c;
            for (k, &e) in alpha.0.iter().enumerate() {
                m *= tables[k][e as usize];
            }
            acc += m;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect();
        Self::new(self.dim, self.degree_bound, terms).expect("scaling preserves validity")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.dim, self.degree_bound.max(other.degree_bound), terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `f - c` as a series (shifts the constant coefficient).
    pub fn sub_constant(&self, c: Complex64) -> Self {
        let mut terms = self.terms.clone();
        terms.push((MultiIndex(vec![0; self.dim]), -c));
        Self::new(self.dim, self.degree_bound, terms).expect("constant shift preserves validity")
    }

    /// Same series with the constant coefficient removed.
    pub fn without_constant(&self) -> Self {
        self.sub_constant(self.constant_term())
    }
}

/// Seeded random series with coefficients `c_alpha = u_alpha * decay^|alpha|`
/// where `u_alpha` is uniform in the closed unit disc.
///
/// The stream of draws follows the graded lexicographic enumeration, so equal
/// seeds give identical series.
pub fn random_series(dim: usize, degree_bound: u32, decay: f64, seed: u64) -> Result<TruncatedSeries> {
    if !(0.0..1.0).contains(&decay) {
        return Err(Error::InvalidParameter(format!(
            "decay must lie in [0, 1), got {decay}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for alpha in multi_indices(dim, degree_bound) {
        let radius = rng.gen::<f64>().sqrt();
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        let u = Complex64::from_polar(radius, angle);
        let c = u * decay.powi(alpha.total_degree() as i32);
        terms.push((alpha, c));
    }
    TruncatedSeries::new(dim, degree_bound, terms)
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    dimension: usize,
    degree_bound: u32,
    coefficients: Vec<(Vec<u32>, f64, f64)>,
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr {
            dimension: s.dim,
            degree_bound: s.degree_bound,
            coefficients: s
                .terms
                .into_iter()
                .map(|(a, c)| (a.0, c.re, c.im))
                .collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        let terms = r
            .coefficients
            .into_iter()
            .map(|(a, re, im)| (MultiIndex(a), Complex64::new(re, im)))
            .collect();
        TruncatedSeries::new(r.dimension, r.degree_bound, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_series_evaluates_to_its_value() {
        let f = TruncatedSeries::constant(1, c(1.0, 0.0));
        let v = f.eval(&[c(5.0, 2.0)]).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn product_monomial_in_two_variables() {
        let f = TruncatedSeries::new(2, 2, vec![(MultiIndex(vec![1, 1]), c(1.0, 0.0))]).unwrap();
        let v = f.eval(&[c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert!((v - c(6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn geometric_partial_sum_matches_closed_form() {
        // sum_{n<=40} (z/2)^n at z = 1 equals 2 (1 - 2^{-41})
        let coeffs: Vec<Complex64> = (0..=40).map(|n| c(0.5f64.powi(n), 0.0)).collect();
        let f = TruncatedSeries::from_coeffs_1d(&coeffs);
        let oracle = 2.0 * (1.0 - 2f64.powi(-41));
        let v = f.eval(&[c(1.0, 0.0)]).unwrap();
        assert!((v.re - oracle).abs() <= 1e-12, "got {} want {}", v.re, oracle);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn eval_rejects_wrong_dimension() {
        let f = TruncatedSeries::constant(2, c(1.0, 0.0));
        assert!(matches!(
            f.eval(&[c(0.0, 0.0)]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn eval_is_linear_in_the_coefficients() {
        let f = random_series(2, 6, 0.7, 11).unwrap();
        let g = random_series(2, 6, 0.5, 12).unwrap();
        let a = c(0.3, -1.1);
        let b = c(-2.0, 0.25);
        let combo = f.scale(a).add(&g.scale(b)).unwrap();
        let z = [c(0.4, 0.2), c(-0.3, 0.6)];
        let lhs = combo.eval(&z).unwrap();
        let rhs = a * f.eval(&z).unwrap() + b * g.eval(&z).unwrap();
        let scale = lhs.norm().max(1.0);
        assert!((lhs - rhs).norm() <= 1e-12 * scale);
    }

    #[test]
    fn graded_lex_enumeration_in_two_variables() {
        let idx = multi_indices(2, 2);
        let expected: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        assert_eq!(idx.iter().map(|a| a.0.clone()).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn rank_and_unrank_are_inverse() {
        for d in 1..=4 {
            let idx = multi_indices(d, 5);
            for (n, alpha) in idx.iter().enumerate() {
                assert_eq!(multi_rank(alpha), n);
                assert_eq!(&multi_unrank(d, n), alpha);
            }
        }
    }

    #[test]
    fn random_series_is_reproducible() {
        let f = random_series(1, 48, 0.5, 7).unwrap();
        let g = random_series(1, 48, 0.5, 7).unwrap();
        assert_eq!(f, g);
        let h = random_series(1, 48, 0.5, 8).unwrap();
        assert_ne!(f, h);
    }

    #[test]
    fn random_series_respects_the_decay_envelope() {
        let f = random_series(1, 48, 0.5, 42).unwrap();
        for (alpha, coeff) in f.terms() {
            let bound = 0.5f64.powi(alpha.total_degree() as i32);
            assert!(coeff.norm() <= bound + 1e-15);
        }
    }

    #[test]
    fn zero_decay_leaves_only_the_constant_term() {
        let f = random_series(1, 48, 0.0, 3).unwrap();
        assert!(f.terms().len() <= 1);
        if let Some((alpha, _)) = f.terms().first() {
            assert_eq!(alpha.total_degree(), 0);
        }
    }

    #[test]
    fn json_round_trip_preserves_the_series() {
        let f = random_series(2, 5, 0.6, 9).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("\"dimension\":2"));
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(f, back);
    }
}
