//! Python module `bohrlab`: bindings over the core library.
//!
//! The wrappers mirror the Rust surface closely. Report structs cross the
//! boundary as plain dicts (via their JSON form) so Python callers get
//! ordinary data instead of opaque handles; the certificate keeps a typed
//! wrapper because it round-trips back into `verify`.

use bohr_core::gamma::{ExhaustionSpec, MethodPolicy};
use bohr_core::series::default_degree_bound;
use bohr_core::{
    basis_eval, eval_combination, BasisFamily, CompactSet, CorpusSpec, DomainFamily,
    GbpCertificate, SamplingPlan, TruncatedSeries,
};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

fn core_err(e: bohr_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    match v {
        serde_json::Value::Null => Ok(py.None()),
        serde_json::Value::Bool(b) => b.into_py_any(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        serde_json::Value::String(s) => s.into_py_any(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn report_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    json_to_py(py, &serde_json::to_value(value).map_err(json_err)?)
}

/// A point in C^d from either a scalar (complex, float, int) or a sequence.
fn point_from(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Complex64>> {
    if let Ok(z) = obj.extract::<Complex64>() {
        return Ok(vec![z]);
    }
    obj.extract::<Vec<Complex64>>()
        .map_err(|_| PyValueError::new_err("expected a complex number or a sequence of them"))
}

/// Dense coefficient vector from either a `Series` or a plain sequence.
fn coeffs_from(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Complex64>> {
    if let Ok(series) = obj.extract::<PyRef<'_, Series>>() {
        let bound = series.inner.degree_bound();
        return Ok(series.inner.dense_coeffs(bound));
    }
    obj.extract::<Vec<Complex64>>().map_err(|_| {
        PyValueError::new_err("expected a Series or a sequence of complex coefficients")
    })
}

fn plan_or_default(plan: Option<&Plan>, dim: usize, seed: u64) -> SamplingPlan {
    match plan {
        Some(p) => p.inner.clone(),
        None => SamplingPlan::for_dimension(dim).with_seed(seed),
    }
}

fn exhaustion_from(name: &str, count: usize) -> PyResult<ExhaustionSpec> {
    match name {
        "plane" => ExhaustionSpec::plane_by_balls(count).map_err(core_err),
        "unitdisc" => ExhaustionSpec::unit_disc_by_balls(count).map_err(core_err),
        "ellipses" => ExhaustionSpec::ellipse_family(count).map_err(core_err),
        other => Err(PyValueError::new_err(format!(
            "unknown exhaustion {other:?}; expected plane, unitdisc, or ellipses"
        ))),
    }
}

/// Boundary sampling grid: point counts, seed, and refinement depth.
#[pyclass(module = "bohrlab", skip_from_py_object)]
#[derive(Clone)]
pub struct Plan {
    inner: SamplingPlan,
}

#[pymethods]
impl Plan {
    #[new]
    #[pyo3(signature = (boundary_count=256, angle_count=64, seed=7, refinement_rounds=2))]
    fn new(
        boundary_count: usize,
        angle_count: usize,
        seed: u64,
        refinement_rounds: usize,
    ) -> PyResult<Self> {
        SamplingPlan::new(boundary_count, angle_count, seed, refinement_rounds)
            .map(|inner| Plan { inner })
            .map_err(core_err)
    }

    /// Default plan sized so that torus grids stay affordable in dimension `dim`.
    #[staticmethod]
    fn for_dimension(dim: usize) -> Self {
        Plan {
            inner: SamplingPlan::for_dimension(dim),
        }
    }

    fn with_seed(&self, seed: u64) -> Self {
        Plan {
            inner: self.inner.clone().with_seed(seed),
        }
    }

    #[getter]
    fn boundary_count(&self) -> usize {
        self.inner.boundary_count
    }

    #[getter]
    fn angle_count(&self) -> usize {
        self.inner.angle_count
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn refinement_rounds(&self) -> usize {
        self.inner.refinement_rounds
    }

    fn __repr__(&self) -> String {
        format!(
            "Plan(boundary_count={}, angle_count={}, seed={}, refinement_rounds={})",
            self.inner.boundary_count,
            self.inner.angle_count,
            self.inner.seed,
            self.inner.refinement_rounds
        )
    }
}

/// Sparse truncated power series in `dim` complex variables.
#[pyclass(module = "bohrlab", skip_from_py_object)]
#[derive(Clone)]
pub struct Series {
    inner: TruncatedSeries,
}

#[pymethods]
impl Series {
    /// Build a one-variable series from its dense coefficient list.
    #[new]
    fn new(coefficients: Vec<Complex64>) -> PyResult<Self> {
        let degree = coefficients.len().saturating_sub(1) as u32;
        let terms = coefficients
            .into_iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(n, c)| (bohr_core::MultiIndex(vec![n as u32]), c))
            .collect();
        TruncatedSeries::new(1, degree, terms)
            .map(|inner| Series { inner })
            .map_err(core_err)
    }

    /// Build a multi-variable series from `(exponents, coefficient)` pairs.
    #[staticmethod]
    fn from_terms(
        dim: usize,
        degree_bound: u32,
        terms: Vec<(Vec<u32>, Complex64)>,
    ) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(alpha, c)| (bohr_core::MultiIndex(alpha), c))
            .collect();
        TruncatedSeries::new(dim, degree_bound, terms)
            .map(|inner| Series { inner })
            .map_err(core_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(|inner| Series { inner })
            .map_err(json_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(json_err)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn degree_bound(&self) -> u32 {
        self.inner.degree_bound()
    }

    fn eval(&self, z: &Bound<'_, PyAny>) -> PyResult<Complex64> {
        self.inner.eval(&point_from(z)?).map_err(core_err)
    }

    fn terms(&self) -> Vec<(Vec<u32>, Complex64)> {
        self.inner
            .terms()
            .iter()
            .map(|(alpha, c)| (alpha.0.clone(), *c))
            .collect()
    }

    /// Coefficients in graded ordering up to `bound` (default: the stored bound).
    #[pyo3(signature = (bound=None))]
    fn dense_coefficients(&self, bound: Option<u32>) -> Vec<Complex64> {
        self.inner
            .dense_coeffs(bound.unwrap_or_else(|| self.inner.degree_bound()))
    }

    fn without_constant(&self) -> Self {
        Series {
            inner: self.inner.without_constant(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Series(dim={}, degree_bound={}, terms={})",
            self.inner.dim(),
            self.inner.degree_bound(),
            self.inner.terms().len()
        )
    }
}

/// Compact subset of C^d: ball, polydisc, segment, or Bernstein ellipse.
#[pyclass(module = "bohrlab", skip_from_py_object)]
#[derive(Clone)]
pub struct Compact {
    inner: CompactSet,
}

#[pymethods]
impl Compact {
    #[staticmethod]
    #[pyo3(signature = (radius, center=None, dim=1))]
    fn ball(radius: f64, center: Option<&Bound<'_, PyAny>>, dim: usize) -> PyResult<Self> {
        let set = match center {
            Some(c) => CompactSet::ball(point_from(c)?, radius),
            None => CompactSet::ball0(dim, radius),
        };
        set.map(|inner| Compact { inner }).map_err(core_err)
    }

    #[staticmethod]
    #[pyo3(signature = (radii, center=None))]
    fn polydisc(radii: Vec<f64>, center: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let center = match center {
            Some(c) => point_from(c)?,
            None => vec![Complex64::new(0.0, 0.0); radii.len()],
        };
        CompactSet::polydisc(center, radii)
            .map(|inner| Compact { inner })
            .map_err(core_err)
    }

    /// The segment [-1, 1] on the real line.
    #[staticmethod]
    fn segment() -> Self {
        Compact {
            inner: CompactSet::segment(),
        }
    }

    /// Bernstein ellipse with parameter `rho >= 1` (1 degenerates to the segment).
    #[staticmethod]
    fn ellipse(rho: f64) -> PyResult<Self> {
        CompactSet::segment()
            .dilate(rho)
            .map(|inner| Compact { inner })
            .map_err(core_err)
    }

    fn dilate(&self, lambda: f64) -> PyResult<Self> {
        self.inner
            .dilate(lambda)
            .map(|inner| Compact { inner })
            .map_err(core_err)
    }

    #[getter]
    fn size_parameter(&self) -> f64 {
        self.inner.size_parameter()
    }

    fn strictly_contains(&self, z: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.strictly_contains(&point_from(z)?))
    }

    fn nested_in(&self, outer: &Compact) -> bool {
        self.inner.nested_in(&outer.inner)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(|inner| Compact { inner })
            .map_err(json_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(json_err)
    }

    fn __repr__(&self) -> String {
        format!("Compact({:?})", self.inner)
    }
}

/// Basis of entire functions: monomials on C^d or Faber polynomials of [-1, 1].
#[pyclass(module = "bohrlab", skip_from_py_object)]
#[derive(Clone)]
pub struct Basis {
    inner: BasisFamily,
}

#[pymethods]
impl Basis {
    #[staticmethod]
    fn monomial(dim: usize) -> PyResult<Self> {
        BasisFamily::monomial(dim)
            .map(|inner| Basis { inner })
            .map_err(core_err)
    }

    #[staticmethod]
    fn faber() -> Self {
        Basis {
            inner: BasisFamily::faber_segment(),
        }
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dim()
    }

    /// Value of the `n`-th basis member at `z`.
    fn eval(&self, n: usize, z: &Bound<'_, PyAny>) -> PyResult<Complex64> {
        basis_eval(&self.inner, n, &point_from(z)?).map_err(core_err)
    }

    /// Value of `sum_n c_n phi_n` at `z`.
    fn eval_combination(
        &self,
        coefficients: &Bound<'_, PyAny>,
        z: &Bound<'_, PyAny>,
    ) -> PyResult<Complex64> {
        eval_combination(&self.inner, &coeffs_from(coefficients)?, &point_from(z)?)
            .map_err(core_err)
    }

    /// Sampled sup of the `n`-th member over a compact set.
    #[pyo3(signature = (n, k, plan=None))]
    fn member_sup(&self, n: usize, k: &Compact, plan: Option<&Plan>) -> PyResult<f64> {
        let plan = plan_or_default(plan, self.inner.dim(), 7);
        bohr_core::member_sup(&self.inner, n, &k.inner, &plan).map_err(core_err)
    }

    fn __repr__(&self) -> String {
        format!("Basis({:?})", self.inner)
    }
}

/// Outcome of `certify`: constants, radii, and the corpus evidence.
#[pyclass(module = "bohrlab", skip_from_py_object)]
#[derive(Clone)]
pub struct Certificate {
    inner: GbpCertificate,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(|inner| Certificate { inner })
            .map_err(json_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(json_err)
    }

    fn as_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        report_to_py(py, &self.inner)
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.r
    }

    #[getter]
    fn r1(&self) -> f64 {
        self.inner.r1
    }

    #[getter]
    fn absolute_constant(&self) -> f64 {
        self.inner.absolute_constant
    }

    #[getter]
    fn radius_out(&self) -> f64 {
        self.inner.radius_out
    }

    #[getter]
    fn r_tilde(&self) -> f64 {
        self.inner.r_tilde
    }

    #[getter]
    fn valid(&self) -> bool {
        self.inner.valid
    }

    #[getter]
    fn constant_method(&self) -> String {
        self.inner.constant_method.clone()
    }

    #[getter]
    fn worst_slack(&self) -> f64 {
        self.inner.worst_slack
    }

    #[getter]
    fn checked_count(&self) -> usize {
        self.inner.checked_count
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(C={}, R={}, r={}, valid={})",
            self.inner.absolute_constant, self.inner.radius_out, self.inner.r, self.inner.valid
        )
    }
}

/// Random series with geometrically decaying coefficients.
#[pyfunction]
#[pyo3(signature = (dim=1, degree_bound=0, decay=0.6, seed=7))]
fn random_series(dim: usize, degree_bound: u32, decay: f64, seed: u64) -> PyResult<Series> {
    let bound = if degree_bound == 0 {
        default_degree_bound(dim)
    } else {
        degree_bound
    };
    bohr_core::random_series(dim, bound, decay, seed)
        .map(|inner| Series { inner })
        .map_err(core_err)
}

/// Taylor coefficients of the Moebius transform `(a - z)/(1 - a z)`.
#[pyfunction]
fn mobius_coefficients(a: f64, terms: usize) -> Vec<Complex64> {
    bohr_core::mobius_coefficients(a, terms)
}

/// `sum_n |c_n| sup_K |phi_n|` for a coefficient vector or `Series`.
#[pyfunction]
#[pyo3(signature = (f, basis, k, plan=None))]
fn majorant(
    f: &Bound<'_, PyAny>,
    basis: &Basis,
    k: &Compact,
    plan: Option<&Plan>,
) -> PyResult<f64> {
    let plan = plan_or_default(plan, basis.inner.dim(), 7);
    bohr_core::majorant(&coeffs_from(f)?, &basis.inner, &k.inner, &plan).map_err(core_err)
}

/// `(sup_{B(r)} |f|, sup_{B(3r)} |f| / 3)` for `f` with `f(0) = 0`; the first
/// component never exceeds the second.
#[pyfunction]
#[pyo3(signature = (f, r, plan=None))]
fn schwarz_step(f: &Series, r: f64, plan: Option<&Plan>) -> PyResult<(f64, f64)> {
    let plan = plan_or_default(plan, f.inner.dim(), 7);
    bohr_core::schwarz_step(&f.inner, r, &plan).map_err(core_err)
}

/// Largest domain parameter at which the majorant still sits under the sup on
/// the reference compact. Domains and reference follow the basis lane:
/// balls against the unit ball for monomials, ellipses against `E(4)` for Faber.
#[pyfunction]
#[pyo3(signature = (f, basis, plan=None))]
fn individual_radius(
    py: Python<'_>,
    f: &Bound<'_, PyAny>,
    basis: &Basis,
    plan: Option<&Plan>,
) -> PyResult<Py<PyAny>> {
    let d = basis.inner.dim();
    let plan = plan_or_default(plan, d, 7);
    let coeffs = coeffs_from(f)?;
    let (family, range, k_ref) = match basis.inner {
        BasisFamily::FaberSegment => (
            DomainFamily::Ellipses,
            (1.000001, 4.0),
            CompactSet::segment().dilate(4.0).map_err(core_err)?,
        ),
        _ => (
            DomainFamily::Balls { dim: d },
            (0.01, 0.999),
            CompactSet::ball0(d, 1.0).map_err(core_err)?,
        ),
    };
    let out = bohr_core::individual_bohr_radius(&coeffs, &basis.inner, &family, range, &k_ref, &plan)
        .map_err(core_err)?;
    report_to_py(py, &out)
}

/// Upper bound for the dimension-`dim` Bohr radius from a candidate search.
#[pyfunction]
#[pyo3(signature = (dim=1, budget=500, seed=7, plan=None))]
fn kappa_upper(
    py: Python<'_>,
    dim: usize,
    budget: usize,
    seed: u64,
    plan: Option<&Plan>,
) -> PyResult<Py<PyAny>> {
    let plan = plan_or_default(plan, 1, seed);
    let est = bohr_core::kappa_upper_search(dim, budget, seed, &plan).map_err(core_err)?;
    report_to_py(py, &est)
}

/// Bracket for the largest ellipse parameter at which every corpus member
/// keeps its Faber majorant under the reference sup.
#[pyfunction]
#[pyo3(signature = (corpus, rho_max=4.0, plan=None))]
fn faber_r0(
    py: Python<'_>,
    corpus: Vec<Bound<'_, PyAny>>,
    rho_max: f64,
    plan: Option<&Plan>,
) -> PyResult<Py<PyAny>> {
    let vectors = corpus
        .iter()
        .map(|item| coeffs_from(item))
        .collect::<PyResult<Vec<_>>>()?;
    let plan = plan_or_default(plan, 1, 7);
    let est = bohr_core::faber_bohr_r0(&vectors, rho_max, &plan).map_err(core_err)?;
    report_to_py(py, &est)
}

/// Schwarz constants along an exhaustion, with a limit verdict attached.
#[pyfunction]
#[pyo3(signature = (exhaustion="plane", count=8, z=None, degree=12, tol=0.05, force_lp=false, plan=None))]
#[allow(clippy::too_many_arguments)]
fn gamma_curve(
    py: Python<'_>,
    exhaustion: &str,
    count: usize,
    z: Option<&Bound<'_, PyAny>>,
    degree: usize,
    tol: f64,
    force_lp: bool,
    plan: Option<&Plan>,
) -> PyResult<Py<PyAny>> {
    let e = exhaustion_from(exhaustion, count)?;
    let z = match z {
        Some(obj) => point_from(obj)?,
        None => vec![Complex64::new(0.5, 0.0)],
    };
    let plan = plan_or_default(plan, 1, 7);
    let policy = if force_lp {
        MethodPolicy::ForceLp
    } else {
        MethodPolicy::Auto
    };
    let curve = bohr_core::gamma_curve(&e, &z, degree, &plan, policy).map_err(core_err)?;
    let verdict = bohr_core::liouville_verdict(&curve, tol).map_err(core_err)?;
    let mut doc = serde_json::to_value(&curve).map_err(json_err)?;
    doc.as_object_mut()
        .expect("curve serializes to an object")
        .insert("verdict".into(), serde_json::to_value(&verdict).map_err(json_err)?);
    json_to_py(py, &doc)
}

/// Growth-transfer certificate for a basis at inner radius `r`.
#[pyfunction]
#[pyo3(signature = (basis, r=1.0, r1=None, corpus=200, seed=7, corpus_degree=0, decay=0.6, plan=None))]
#[allow(clippy::too_many_arguments)]
fn certify(
    basis: &Basis,
    r: f64,
    r1: Option<f64>,
    corpus: usize,
    seed: u64,
    corpus_degree: u32,
    decay: f64,
    plan: Option<&Plan>,
) -> PyResult<Certificate> {
    let degree = if corpus_degree == 0 {
        default_degree_bound(basis.inner.dim())
    } else {
        corpus_degree
    };
    let spec = CorpusSpec::new(corpus, seed, degree, decay).map_err(core_err)?;
    let plan = plan_or_default(plan, basis.inner.dim(), seed);
    bohr_core::certify(&basis.inner, r, r1, &spec, &plan)
        .map(|inner| Certificate { inner })
        .map_err(core_err)
}

/// Re-check a certificate against a fresh corpus drawn with `seed`.
#[pyfunction]
fn verify(py: Python<'_>, cert: &Certificate, seed: u64) -> PyResult<Py<PyAny>> {
    let report = bohr_core::verify_certificate(&cert.inner, seed).map_err(core_err)?;
    report_to_py(py, &report)
}

/// Epsilon-form growth inequality along an exhaustion, checked on a corpus.
#[pyfunction]
#[pyo3(signature = (epsilon=1.0, exhaustion="plane", count=8, k_radius=1.0, corpus=40, corpus_degree=20, decay=0.6, degree=12, seed=7, plan=None))]
#[allow(clippy::too_many_arguments)]
fn bc_general(
    py: Python<'_>,
    epsilon: f64,
    exhaustion: &str,
    count: usize,
    k_radius: f64,
    corpus: usize,
    corpus_degree: u32,
    decay: f64,
    degree: usize,
    seed: u64,
    plan: Option<&Plan>,
) -> PyResult<Py<PyAny>> {
    let e = exhaustion_from(exhaustion, count)?;
    let k = CompactSet::ball0(1, k_radius).map_err(core_err)?;
    let members = (0..corpus)
        .map(|i| bohr_core::random_series(1, corpus_degree, decay, seed.wrapping_add(i as u64)))
        .collect::<bohr_core::Result<Vec<_>>>()
        .map_err(core_err)?;
    let plan = plan_or_default(plan, 1, seed);
    let report = bohr_core::borel_caratheodory_general(
        &e,
        &k,
        epsilon,
        &members,
        degree,
        &plan,
        MethodPolicy::Auto,
    )
    .map_err(core_err)?;
    report_to_py(py, &report)
}

#[pymodule]
pub fn bohrlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Plan>()?;
    m.add_class::<Series>()?;
    m.add_class::<Compact>()?;
    m.add_class::<Basis>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(random_series, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(majorant, m)?)?;
    m.add_function(wrap_pyfunction!(schwarz_step, m)?)?;
    m.add_function(wrap_pyfunction!(individual_radius, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_upper, m)?)?;
    m.add_function(wrap_pyfunction!(faber_r0, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_curve, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(bc_general, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
