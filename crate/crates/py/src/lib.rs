//! Python bindings. Exact rationals cross the boundary as `fractions.Fraction`;
//! rational inputs accept anything whose `str()` is `p/q` or an integer.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kappa_core::acceptance;
use kappa_core::asymptotics;
use kappa_core::catalog::{self, SymmetricSpaceEntry};
use kappa_core::liegroup::{self, SpecialLinearElement};
use kappa_core::rational::{parse_rational, Rational};
use kappa_core::rootsys::{self, Covector, Family};
use kappa_core::spherical::{self, SpectralParameter};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((*r.numer(), *r.denom()))
}

fn covector(items: &Bound<'_, PyAny>) -> PyResult<Covector> {
    let mut coords = Vec::new();
    for item in items.try_iter()? {
        let text: String = item?.str()?.extract()?;
        coords.push(parse_rational(&text).map_err(value_err)?);
    }
    Ok(Covector::new(coords))
}

fn fractions<'py>(py: Python<'py>, v: &Covector) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.coords.iter().map(|c| fraction(py, c)).collect()
}

/// A restricted root system with multiplicities, e.g.
/// `RootSystem("BC", 2, "medium:2,short:2,long:1")`.
#[pyclass(name = "RootSystem", module = "kappa_py", frozen)]
struct PyRootSystem {
    inner: rootsys::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    #[pyo3(signature = (family, rank, mult))]
    fn new(family: &str, rank: usize, mult: &str) -> PyResult<Self> {
        let family: Family = family.parse().map_err(value_err)?;
        let mult = rootsys::parse_mult_assignment(mult).map_err(value_err)?;
        let inner = rootsys::build_root_system(family, rank, &mult).map_err(value_err)?;
        Ok(PyRootSystem { inner })
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family.to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    #[getter]
    fn gram(&self) -> Vec<Vec<i64>> {
        self.inner.gram.clone()
    }

    /// `(coefficients, multiplicity, length class)` per positive root.
    fn positive_roots(&self) -> Vec<(Vec<i64>, u32, String)> {
        self.inner
            .positive_roots
            .iter()
            .map(|r| (r.coeffs.clone(), r.multiplicity, r.class.to_string()))
            .collect()
    }

    fn kappa<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.kappa())
    }

    /// Number of positive roots, counted with multiplicity, not orthogonal to λ.
    fn n(&self, lam: &Bound<'_, PyAny>) -> PyResult<u64> {
        self.inner.n_of(&covector(lam)?).map_err(value_err)
    }

    fn rho<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.inner.rho())
    }

    fn fundamental_weights<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.fundamental_weights().iter().map(|w| fractions(py, w)).collect()
    }

    fn inner_product<'py>(&self, py: Python<'py>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.inner.inner(&covector(a)?, &covector(b)?).map_err(value_err)?;
        fraction(py, &v)
    }

    /// Weyl group elements as integer matrices acting on simple-root coordinates.
    fn weyl_group(&self) -> PyResult<Vec<Vec<Vec<i64>>>> {
        Ok(self.inner.weyl_group().map_err(value_err)?.into_iter().map(|w| w.matrix).collect())
    }

    fn dominant_representative<'py>(&self, py: Python<'py>, lam: &Bound<'_, PyAny>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let (dom, _) = self.inner.dominant_representative(&covector(lam)?).map_err(value_err)?;
        fractions(py, &dom)
    }

    fn in_bounded_region(&self, eta: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.inner.in_bounded_region(&covector(eta)?).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("RootSystem({}, rank={}, {} positive roots)", self.inner.family, self.inner.rank, self.inner.positive_roots.len())
    }
}

fn entry_dict<'py>(py: Python<'py>, e: &SymmetricSpaceEntry) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("id", &e.id)?;
    d.set_item("group", &e.group_name)?;
    d.set_item("cartan", &e.cartan_label)?;
    d.set_item("params", e.params.clone())?;
    d.set_item("family", e.family.to_string())?;
    d.set_item("rank", e.rank)?;
    let mult: Vec<(String, u32)> = e.multiplicities.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    d.set_item("mult", mult)?;
    d.set_item("kappa", fraction(py, &e.expected_kappa)?)?;
    Ok(d)
}

fn load(path: Option<&str>) -> PyResult<catalog::CatalogFile> {
    catalog::load_catalog_path(path.unwrap_or("default")).map_err(value_err)
}

/// Catalog rows as dicts; `path=None` is the built-in catalog.
#[pyfunction]
#[pyo3(signature = (path=None))]
fn catalog_entries<'py>(py: Python<'py>, path: Option<&str>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    load(path)?.entries.iter().map(|e| entry_dict(py, e)).collect()
}

/// Root system of a catalog row.
#[pyfunction]
#[pyo3(signature = (id, path=None))]
fn catalog_root_system(id: &str, path: Option<&str>) -> PyResult<PyRootSystem> {
    let cat = load(path)?;
    let entry = cat.get(id).ok_or_else(|| value_err(format!("no catalog row `{id}`")))?;
    Ok(PyRootSystem { inner: entry.instantiate().map_err(value_err)? })
}

/// `(id, computed, expected, matches)` per row.
#[pyfunction]
#[pyo3(signature = (path=None))]
fn kappa_table<'py>(
    py: Python<'py>,
    path: Option<&str>,
) -> PyResult<Vec<(String, Option<Bound<'py, PyAny>>, Bound<'py, PyAny>, bool)>> {
    catalog::kappa_table(&load(path)?)
        .iter()
        .map(|r| {
            let computed = r.computed_kappa.as_ref().map(|k| fraction(py, k)).transpose()?;
            Ok((r.id.clone(), computed, fraction(py, &r.expected_kappa)?, r.matches))
        })
        .collect()
}

fn matrix(rows: Vec<Vec<f64>>) -> PyResult<SpecialLinearElement> {
    SpecialLinearElement::from_rows(&rows).map_err(value_err)
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// `(k, h, nu)` with `g = k · exp(diag h) · nu`, after rescaling `g` to determinant one.
#[pyfunction]
fn iwasawa(g: Vec<Vec<f64>>) -> PyResult<(Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>)> {
    let f = liegroup::iwasawa(&matrix(g)?).map_err(value_err)?;
    Ok((rows(&f.k), f.h.iter().copied().collect(), rows(&f.nu)))
}

/// `(k1, a, k2)` with `g = k1 · exp(diag a) · k2ᵀ`.
#[pyfunction]
fn kak(g: Vec<Vec<f64>>) -> PyResult<(Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>)> {
    let f = liegroup::kak(&matrix(g)?).map_err(value_err)?;
    Ok((rows(&f.k1), f.a_log.iter().copied().collect(), rows(&f.k2)))
}

#[pyfunction]
fn haar_so_n(n: usize, seed: u64, count: usize) -> Vec<Vec<Vec<f64>>> {
    liegroup::haar_so_n_sample(n, seed, count).iter().map(rows).collect()
}

fn spherical_err(e: spherical::SphericalError) -> PyErr {
    match e {
        spherical::SphericalError::NonConvergent { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

/// `φ_λ(a_Y)` for SL(2,R), λ = (xi + i·eta)ρ.
#[pyfunction]
#[pyo3(signature = (xi, y, eta=0.0))]
fn spherical_sl2(xi: f64, y: f64, eta: f64) -> PyResult<Complex64> {
    spherical::spherical_sl2(&SpectralParameter::rank1(xi, eta), y).map(|v| v.value).map_err(spherical_err)
}

/// `d^order/dY^order` of `φ_{t·xi + i·eta}(a_Y)` for SL(2,R).
#[pyfunction]
#[pyo3(signature = (xi, y, order, t=1.0, eta=0.0))]
fn deriv_spherical_sl2(xi: f64, y: f64, order: usize, t: f64, eta: f64) -> PyResult<Complex64> {
    spherical::deriv_spherical_sl2(&SpectralParameter::rank1(xi, eta), t, y, order)
        .map(|v| v.value)
        .map_err(spherical_err)
}

/// Monte Carlo SL(3,R) value and its standard error.
#[pyfunction]
#[pyo3(signature = (xi, a_log, eta=None, samples=spherical::MIN_SL3_SAMPLES, seed=42))]
fn spherical_sl3(xi: Vec<f64>, a_log: [f64; 2], eta: Option<Vec<f64>>, samples: usize, seed: u64) -> PyResult<(Complex64, f64)> {
    let eta = eta.unwrap_or_else(|| vec![0.0; xi.len()]);
    let lam = SpectralParameter::new(xi, eta).map_err(value_err)?;
    let v = spherical::spherical_sl3(&lam, a_log, samples, seed).map_err(spherical_err)?;
    Ok((v.value, v.estimated_error))
}

#[pyfunction]
fn legendre(n: u64, x: f64) -> f64 {
    spherical::legendre(n, x)
}

/// SU(2)/SO(2) spherical function of degree n at angle θ.
#[pyfunction]
fn spherical_compact_su2(n: u64, theta: f64) -> PyResult<f64> {
    spherical::spherical_compact_su2(n, theta).map_err(spherical_err)
}

/// Stationary-phase leading term of `φ_{t·xi}(a_Y)` for SL(2,R).
#[pyfunction]
fn leading_term_sl2(xi: f64, y: f64, t: f64) -> PyResult<Complex64> {
    asymptotics::leading_term_sl2(xi, y, t, asymptotics::sl2_spherical_amplitude(y))
        .map(|l| l.total)
        .map_err(value_err)
}

#[pyfunction]
fn leading_term_su2(n: u64, theta: f64) -> PyResult<f64> {
    asymptotics::leading_term_su2(n, theta).map(|l| l.total.re).map_err(value_err)
}

/// `(slope, intercept, r_squared)` of the log-log fit.
#[pyfunction]
fn decay_fit(samples: Vec<(f64, f64)>) -> PyResult<(f64, f64, f64)> {
    let f = asymptotics::decay_fit(&samples).map_err(value_err)?;
    Ok((f.slope, f.intercept, f.r_squared))
}

#[pyfunction]
#[pyo3(signature = (f_x, f_y, u_x, u_y, n, m=0))]
fn exp_sum_separation(f_x: Vec<Complex64>, f_y: Vec<Complex64>, u_x: Vec<f64>, u_y: Vec<f64>, n: usize, m: i64) -> PyResult<f64> {
    asymptotics::exp_sum_separation(&f_x, &f_y, &u_x, &u_y, m, n).map_err(value_err)
}

#[pyfunction]
fn wall_quotient(n: u64, theta: f64, alpha: f64) -> f64 {
    asymptotics::wall_quotient(n, theta, alpha)
}

/// `(passed, report line)` for one acceptance criterion (1..=10).
#[pyfunction]
#[pyo3(signature = (number, seed=acceptance::DEFAULT_SEED))]
fn run_criterion(py: Python<'_>, number: u8, seed: u64) -> PyResult<(bool, String)> {
    let outcome = py
        .detach(|| acceptance::run(number, seed))
        .ok_or_else(|| value_err(format!("no criterion {number}")))?;
    Ok((outcome.passed, outcome.to_string()))
}

#[pymodule]
fn kappa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(catalog_entries, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_root_system, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_table, m)?)?;
    m.add_function(wrap_pyfunction!(iwasawa, m)?)?;
    m.add_function(wrap_pyfunction!(kak, m)?)?;
    m.add_function(wrap_pyfunction!(haar_so_n, m)?)?;
    m.add_function(wrap_pyfunction!(spherical_sl2, m)?)?;
    m.add_function(wrap_pyfunction!(deriv_spherical_sl2, m)?)?;
    m.add_function(wrap_pyfunction!(spherical_sl3, m)?)?;
    m.add_function(wrap_pyfunction!(legendre, m)?)?;
    m.add_function(wrap_pyfunction!(spherical_compact_su2, m)?)?;
    m.add_function(wrap_pyfunction!(leading_term_sl2, m)?)?;
    m.add_function(wrap_pyfunction!(leading_term_su2, m)?)?;
    m.add_function(wrap_pyfunction!(decay_fit, m)?)?;
    m.add_function(wrap_pyfunction!(exp_sum_separation, m)?)?;
    m.add_function(wrap_pyfunction!(wall_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(run_criterion, m)?)?;
    Ok(())
}
