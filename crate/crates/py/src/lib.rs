use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nearmiss::construct::Verification;
use nearmiss::explore::{default_threads, BoundScan};
use nearmiss::sumset;
use nearmiss::{
    ConstructionResult, ExploreOptions, GeneratorSpec, HuntFilter, IntSet, NumericalSemigroup,
};

create_exception!(nearmiss, NearmissError, PyValueError);

fn err(e: nearmiss::Error) -> PyErr {
    NearmissError::new_err(e.to_string())
}

fn int_set(elements: Vec<i64>, modulus: Option<u64>) -> PyResult<IntSet> {
    match modulus {
        Some(m) => IntSet::modular(elements, m),
        None => IntSet::new(elements),
    }
    .map_err(err)
}

fn options(threads: Option<usize>) -> ExploreOptions {
    ExploreOptions::with_threads(threads.unwrap_or_else(default_threads))
}

/// Invariants behind W(S) and W0(S).
#[pyclass(name = "WilfReport", frozen, get_all, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWilfReport {
    m: u64,
    c: u64,
    q: u64,
    rho: u64,
    genus: u64,
    p_total: u64,
    p_left: u64,
    l_count: u64,
    dq_count: u64,
    pq_count: u64,
    w: i64,
    w0: i64,
    near_miss: bool,
}

impl From<nearmiss::WilfReport> for PyWilfReport {
    fn from(r: nearmiss::WilfReport) -> Self {
        PyWilfReport {
            m: r.m,
            c: r.c,
            q: r.q,
            rho: r.rho,
            genus: r.genus,
            p_total: r.p_total,
            p_left: r.p_left,
            l_count: r.l_count,
            dq_count: r.dq_count,
            pq_count: r.pq_count,
            w: r.w,
            w0: r.w0,
            near_miss: r.near_miss,
        }
    }
}

#[pymethods]
impl PyWilfReport {
    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("m", self.m)?;
        d.set_item("c", self.c)?;
        d.set_item("q", self.q)?;
        d.set_item("rho", self.rho)?;
        d.set_item("genus", self.genus)?;
        d.set_item("p_total", self.p_total)?;
        d.set_item("p_left", self.p_left)?;
        d.set_item("l_count", self.l_count)?;
        d.set_item("dq_count", self.dq_count)?;
        d.set_item("pq_count", self.pq_count)?;
        d.set_item("w", self.w)?;
        d.set_item("w0", self.w0)?;
        d.set_item("near_miss", self.near_miss)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "WilfReport(m={}, c={}, genus={}, P={}, PL={}, L={}, W={}, W0={})",
            self.m, self.c, self.genus, self.p_total, self.p_left, self.l_count, self.w, self.w0
        )
    }
}

/// A numerical semigroup <generators> or <generators>_t.
#[pyclass(name = "Semigroup", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySemigroup {
    inner: NumericalSemigroup,
}

#[pymethods]
impl PySemigroup {
    #[new]
    #[pyo3(signature = (generators, truncation=None))]
    fn new(generators: Vec<u64>, truncation: Option<u64>) -> PyResult<Self> {
        let spec = GeneratorSpec::new(generators, truncation).map_err(err)?;
        let inner = NumericalSemigroup::from_generators(&spec).map_err(err)?;
        Ok(PySemigroup { inner })
    }

    /// Parses `<a,b,c>` or `<a,b,c>_t`.
    #[staticmethod]
    fn parse(label: &str) -> PyResult<Self> {
        let inner = label.parse().map_err(err)?;
        Ok(PySemigroup { inner })
    }

    #[staticmethod]
    fn from_gaps(gaps: Vec<u64>) -> PyResult<Self> {
        let inner = NumericalSemigroup::from_gaps(&gaps).map_err(err)?;
        Ok(PySemigroup { inner })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.canonical_label()
    }

    #[getter]
    fn multiplicity(&self) -> u64 {
        self.inner.multiplicity()
    }

    #[getter]
    fn conductor(&self) -> u64 {
        self.inner.conductor()
    }

    #[getter]
    fn frobenius(&self) -> i64 {
        self.inner.frobenius()
    }

    #[getter]
    fn genus(&self) -> u64 {
        self.inner.genus()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn rho(&self) -> u64 {
        self.inner.rho()
    }

    #[getter]
    fn primitives(&self) -> Vec<u64> {
        self.inner.primitives().to_vec()
    }

    #[getter]
    fn left_primitives(&self) -> Vec<u64> {
        self.inner.left_primitives().to_vec()
    }

    #[getter]
    fn gaps(&self) -> Vec<u64> {
        self.inner.gaps()
    }

    #[getter]
    fn left_part(&self) -> Vec<u64> {
        self.inner.left_part()
    }

    /// Ap(S, m), sorted.
    fn apery_set(&self) -> Vec<u64> {
        self.inner.apery_set().sorted()
    }

    /// X_j = Ap(S, m) ∩ S_j.
    fn apery_slice(&self, j: u64) -> Vec<u64> {
        self.inner.apery_set().in_slice(j)
    }

    fn report(&self) -> PyWilfReport {
        nearmiss::wilf_report(&self.inner).into()
    }

    fn wilf_number(&self) -> i64 {
        nearmiss::wilf::wilf_number(&self.inner)
    }

    fn w0_number(&self) -> i64 {
        nearmiss::wilf::w0_number(&self.inner)
    }

    fn __contains__(&self, x: i64) -> bool {
        self.inner.contains(x)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.canonical_label()
    }

    fn __repr__(&self) -> String {
        format!("Semigroup.parse({:?})", self.inner.canonical_label())
    }
}

/// A constructed near-miss with its predicted and computed invariants.
#[pyclass(name = "Construction", frozen, skip_from_py_object)]
struct PyConstruction {
    inner: ConstructionResult,
}

fn checks(v: &Verification) -> Vec<(String, bool, String)> {
    v.checks
        .iter()
        .map(|c| (c.name.to_string(), c.passed, c.detail.clone()))
        .collect()
}

#[pymethods]
impl PyConstruction {
    #[getter]
    fn recipe(&self) -> String {
        self.inner.recipe.to_string()
    }

    #[getter]
    fn semigroup(&self) -> PySemigroup {
        PySemigroup {
            inner: self.inner.semigroup.clone(),
        }
    }

    #[getter]
    fn left_set(&self) -> Vec<u64> {
        self.inner.params.a_set.clone()
    }

    #[getter]
    fn computed(&self) -> PyWilfReport {
        self.inner.computed.into()
    }

    #[getter]
    fn predicted_w0(&self) -> i64 {
        self.inner.predicted.w0_expected
    }

    /// `(all_passed, [(name, passed, detail), ...])`
    fn verify(&self) -> (bool, Vec<(String, bool, String)>) {
        match nearmiss::verify_construction(&self.inner) {
            Ok(v) => (true, checks(&v)),
            Err(m) => (false, checks(&m.0)),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Construction({}, {})",
            self.inner.recipe,
            self.inner.semigroup.canonical_label()
        )
    }
}

fn wrap(r: nearmiss::Result<ConstructionResult>) -> PyResult<PyConstruction> {
    r.map(|inner| PyConstruction { inner }).map_err(err)
}

#[pyfunction]
fn construct_pair(m: u64, a: u64, b: u64) -> PyResult<PyConstruction> {
    wrap(nearmiss::construct_pair(m, a, b))
}

#[pyfunction]
fn construct_consecutive(m: u64, k: u64) -> PyResult<PyConstruction> {
    wrap(nearmiss::construct_consecutive(m, k))
}

#[pyfunction]
fn construct_bh(m: u64, a: Vec<i64>) -> PyResult<PyConstruction> {
    wrap(nearmiss::construct_bh(m, &int_set(a, None)?))
}

#[pyfunction]
fn construct_translated(offsets: Vec<i64>, k: u64, m: u64) -> PyResult<PyConstruction> {
    wrap(nearmiss::construct_translated(&int_set(offsets, None)?, k, m))
}

#[pyfunction]
fn explicit_family(n: u64, k: u64) -> PyResult<PyConstruction> {
    wrap(nearmiss::explicit_family(n, k))
}

#[pyfunction]
#[pyo3(signature = (a, h, modulus=None))]
fn h_fold_sumset(a: Vec<i64>, h: u32, modulus: Option<u64>) -> PyResult<Vec<i64>> {
    let s = sumset::h_fold_sumset(&int_set(a, modulus)?, h).map_err(err)?;
    Ok(s.elements().to_vec())
}

#[pyfunction]
#[pyo3(signature = (a, h, modulus=None))]
fn is_bh(a: Vec<i64>, h: u32, modulus: Option<u64>) -> PyResult<bool> {
    sumset::is_bh(&int_set(a, modulus)?, h).map_err(err)
}

#[pyfunction]
fn induces_bh_mod(a: Vec<i64>, m: u64, h: u32) -> PyResult<bool> {
    sumset::induces_bh_mod(&int_set(a, None)?, m, h).map_err(err)
}

#[pyfunction]
fn pairwise_distinct_union(a: Vec<i64>, h: u32, m: u64) -> PyResult<bool> {
    sumset::pairwise_distinct_union(&int_set(a, None)?, h, m).map_err(err)
}

#[pyfunction]
fn greedy_bh(h: u32, size: usize) -> PyResult<Vec<i64>> {
    Ok(sumset::greedy_bh(h, size).map_err(err)?.elements().to_vec())
}

#[pyfunction]
#[pyo3(signature = (g_max, threads=None))]
fn census(py: Python<'_>, g_max: u32, threads: Option<usize>) -> PyResult<Vec<u64>> {
    let opts = options(threads);
    py.detach(|| nearmiss::census(g_max, &opts)).map_err(err)
}

/// `[(label, WilfReport), ...]` for every semigroup of genus ≤ g_max with
/// W0 < 0, sorted by (genus, label).
#[pyfunction]
#[pyo3(signature = (g_max, q=None, m_min=None, m_max=None, threads=None))]
fn hunt_near_misses(
    py: Python<'_>,
    g_max: u32,
    q: Option<u32>,
    m_min: Option<u32>,
    m_max: Option<u32>,
    threads: Option<usize>,
) -> PyResult<Vec<(String, PyWilfReport)>> {
    let opts = options(threads);
    let filter = HuntFilter { q, m_min, m_max };
    let records = py
        .detach(|| nearmiss::hunt_near_misses(g_max, &filter, &opts))
        .map_err(err)?;
    Ok(records
        .into_iter()
        .map(|r| (r.label, r.report.into()))
        .collect())
}

/// `(checked, [(label, WilfReport), ...])`
#[pyfunction]
#[pyo3(signature = (g_max, threads=None))]
fn scan_conjecture_bound(
    py: Python<'_>,
    g_max: u32,
    threads: Option<usize>,
) -> PyResult<(u64, Vec<(String, PyWilfReport)>)> {
    let opts = options(threads);
    let BoundScan {
        checked,
        violations,
    } = py
        .detach(|| nearmiss::scan_conjecture_bound(g_max, &opts))
        .map_err(err)?;
    Ok((
        checked,
        violations
            .into_iter()
            .map(|r| (r.label, r.report.into()))
            .collect(),
    ))
}

#[pymodule]
#[pyo3(name = "nearmiss")]
fn nearmiss_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NearmissError", m.py().get_type::<NearmissError>())?;
    m.add_class::<PySemigroup>()?;
    m.add_class::<PyWilfReport>()?;
    m.add_class::<PyConstruction>()?;
    m.add_function(wrap_pyfunction!(construct_pair, m)?)?;
    m.add_function(wrap_pyfunction!(construct_consecutive, m)?)?;
    m.add_function(wrap_pyfunction!(construct_bh, m)?)?;
    m.add_function(wrap_pyfunction!(construct_translated, m)?)?;
    m.add_function(wrap_pyfunction!(explicit_family, m)?)?;
    m.add_function(wrap_pyfunction!(h_fold_sumset, m)?)?;
    m.add_function(wrap_pyfunction!(is_bh, m)?)?;
    m.add_function(wrap_pyfunction!(induces_bh_mod, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_distinct_union, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_bh, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(hunt_near_misses, m)?)?;
    m.add_function(wrap_pyfunction!(scan_conjecture_bound, m)?)?;
    Ok(())
}
