//! Python bindings for `cyclequiv`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cyclequiv::coeff_quiver::{self, arrange, enumerate_fixed_points, CellDimMethod};
use cyclequiv::cyclic_rep::{self, IndecNilp, Vertex};
use cyclequiv::dellac::{self, AffineDellacConfig, CorankTuple};
use cyclequiv::flag::{self, FlagApprox};
use cyclequiv::{oracle, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::OracleSizeLimit(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Representation of the cyclic quiver given by end-labelled summands.
#[pyclass(name = "NilpRep", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyNilpRep {
    inner: cyclic_rep::NilpRep,
}

#[pymethods]
impl PyNilpRep {
    /// `summands` is a list of `(end, len)` or `(end, len, mult)` tuples with 1-based ends.
    #[new]
    #[pyo3(signature = (n, summands))]
    fn new(n: usize, summands: Vec<Vec<usize>>) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        let mut rep = cyclic_rep::NilpRep::new(n);
        for s in summands {
            let (end, len, mult) = match s[..] {
                [end, len] => (end, len, 1),
                [end, len, mult] => (end, len, mult),
                _ => return Err(PyValueError::new_err("summand must be (end, len) or (end, len, mult)")),
            };
            if len == 0 {
                return Err(PyValueError::new_err("summand length must be positive"));
            }
            let end = Vertex::new(n, end).map_err(py_err)?;
            rep.insert(IndecNilp::new(end, len), mult);
        }
        Ok(Self { inner: rep })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        cyclic_rep::NilpRep::from_json(s).map(|inner| Self { inner }).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// `(end, len, mult)` triples in canonical order.
    fn summands(&self) -> Vec<(usize, usize, usize)> {
        self.inner.iter().map(|(u, m)| (u.end.label(), u.len, m)).collect()
    }

    fn dim_vector(&self) -> Vec<usize> {
        self.inner.dim_vector().0
    }

    fn num_summands(&self) -> usize {
        self.inner.num_summands()
    }

    fn nilpotency(&self) -> usize {
        self.inner.nilpotency()
    }

    fn direct_sum(&self, other: &Self) -> Self {
        Self { inner: self.inner.direct_sum(&other.inner) }
    }

    fn __repr__(&self) -> String {
        format!("NilpRep({})", self.inner)
    }
}

fn check_n(a: &PyNilpRep, b: &PyNilpRep) -> PyResult<()> {
    if a.inner.n() != b.inner.n() {
        return Err(PyValueError::new_err("representations live on different quivers"));
    }
    Ok(())
}

#[pyfunction]
fn hom_dim(a: &PyNilpRep, b: &PyNilpRep) -> PyResult<usize> {
    check_n(a, b)?;
    Ok(cyclic_rep::hom_dim(&a.inner, &b.inner))
}

/// Hom dimension by linear algebra.
#[pyfunction]
fn hom_dim_matrix(a: &PyNilpRep, b: &PyNilpRep) -> PyResult<usize> {
    check_n(a, b)?;
    oracle::hom_dim_matrix(&a.inner, &b.inner).map_err(py_err)
}

/// Repeated gluing until every summand has length `bound`; returns the result and the step count.
#[pyfunction]
fn glue(u: &PyNilpRep, bound: usize) -> PyResult<(PyNilpRep, usize)> {
    let (inner, steps) = cyclic_rep::glue_to_fixpoint(&u.inner, bound).map_err(py_err)?;
    Ok((PyNilpRep { inner }, steps))
}

fn flag_of(n: usize, omega: usize, corank: Option<Vec<u8>>) -> PyResult<FlagApprox> {
    if n == 0 || omega == 0 {
        return Err(PyValueError::new_err("n and omega must be positive"));
    }
    match corank {
        None => Ok(flag::build_degenerate_flag_rep(n, omega)),
        Some(c) => {
            let c = CorankTuple::new(c).map_err(py_err)?;
            flag::build_partial_degeneration(n, omega, &c).map_err(py_err)
        }
    }
}

fn source(
    n: Option<usize>,
    omega: usize,
    corank: Option<Vec<u8>>,
    rep: Option<&PyNilpRep>,
    e: Option<Vec<usize>>,
) -> PyResult<FlagApprox> {
    match (rep, e, n) {
        (Some(rep), Some(e), None) => {
            flag::build_custom(rep.inner.clone(), cyclic_rep::DimVector(e)).map_err(py_err)
        }
        (None, None, Some(n)) => flag_of(n, omega, corank),
        _ => Err(PyValueError::new_err("give either n (with omega, corank) or rep and e")),
    }
}

fn method_of(name: &str) -> PyResult<CellDimMethod> {
    match name {
        "elim" => Ok(CellDimMethod::Elim),
        "tangent" => Ok(CellDimMethod::Tangent),
        _ => Err(PyValueError::new_err(format!("unknown method {name:?}"))),
    }
}

/// Suffix tuples of the torus fixed points.
#[pyfunction]
#[pyo3(signature = (n=None, omega=1, corank=None, rep=None, e=None))]
fn fixed_points(
    n: Option<usize>,
    omega: usize,
    corank: Option<Vec<u8>>,
    rep: Option<&PyNilpRep>,
    e: Option<Vec<usize>>,
) -> PyResult<Vec<Vec<usize>>> {
    let flag = source(n, omega, corank, rep, e)?;
    let cq = arrange(&flag.rep);
    Ok(enumerate_fixed_points(&cq, &flag.e).map(|fp| fp.suffix).collect())
}

/// `(suffix, cell dimension)` pairs.
#[pyfunction]
#[pyo3(signature = (n=None, omega=1, corank=None, rep=None, e=None, method="elim"))]
fn cells(
    py: Python<'_>,
    n: Option<usize>,
    omega: usize,
    corank: Option<Vec<u8>>,
    rep: Option<&PyNilpRep>,
    e: Option<Vec<usize>>,
    method: &str,
) -> PyResult<Vec<(Vec<usize>, usize)>> {
    let flag = source(n, omega, corank, rep, e)?;
    let method = method_of(method)?;
    let cq = arrange(&flag.rep);
    let dims = py.detach(|| coeff_quiver::cell_dims(&cq, &flag.e, method)).map_err(py_err)?;
    Ok(dims.into_iter().map(|(fp, d)| (fp.suffix, d)).collect())
}

/// Coefficients of the Poincaré polynomial in `q`, lowest degree first.
#[pyfunction]
#[pyo3(signature = (n=None, omega=1, corank=None, rep=None, e=None, method="elim"))]
fn poincare(
    py: Python<'_>,
    n: Option<usize>,
    omega: usize,
    corank: Option<Vec<u8>>,
    rep: Option<&PyNilpRep>,
    e: Option<Vec<usize>>,
    method: &str,
) -> PyResult<Vec<u64>> {
    let flag = source(n, omega, corank, rep, e)?;
    let method = method_of(method)?;
    let cq = arrange(&flag.rep);
    let p = py
        .detach(|| coeff_quiver::poincare_polynomial_with(&cq, &flag.e, method, None))
        .map_err(py_err)?;
    Ok(p.coeffs)
}

#[pyfunction]
#[pyo3(signature = (n=None, omega=1, corank=None, rep=None, e=None))]
fn euler(
    py: Python<'_>,
    n: Option<usize>,
    omega: usize,
    corank: Option<Vec<u8>>,
    rep: Option<&PyNilpRep>,
    e: Option<Vec<usize>>,
) -> PyResult<BigUint> {
    let flag = source(n, omega, corank, rep, e)?;
    let cq = arrange(&flag.rep);
    py.detach(|| coeff_quiver::euler_characteristic(&cq, &flag.e)).map_err(py_err)
}

/// Number of points over the field with `q` elements, by enumeration.
#[pyfunction]
#[pyo3(signature = (q, n=None, omega=1, corank=None, rep=None, e=None))]
fn count_points(
    py: Python<'_>,
    q: usize,
    n: Option<usize>,
    omega: usize,
    corank: Option<Vec<u8>>,
    rep: Option<&PyNilpRep>,
    e: Option<Vec<usize>>,
) -> PyResult<BigUint> {
    let flag = source(n, omega, corank, rep, e)?;
    py.detach(|| oracle::count_points_fq(&flag.rep, &flag.e, q)).map_err(py_err)
}

/// Component labels `p` with their grand Motzkin paths, for the flag case.
#[pyfunction]
#[pyo3(signature = (n, omega=1))]
fn components(n: usize, omega: usize) -> PyResult<Vec<(Vec<usize>, String)>> {
    if n == 0 || omega == 0 {
        return Err(PyValueError::new_err("n and omega must be positive"));
    }
    let labels = flag::irreducible_components(&vec![1; n], &vec![1; n], omega).map_err(py_err)?;
    labels
        .into_iter()
        .map(|l| {
            let path = flag::grand_motzkin(&l).map_err(py_err)?;
            Ok((l.p, path.iter().map(|s| s.symbol()).collect()))
        })
        .collect()
}

#[pyfunction]
fn count_grand_motzkin(n: usize) -> BigUint {
    flag::count_grand_motzkin(n)
}

/// Parses a configuration from JSON and checks it; returns `(valid, message)`.
#[pyfunction]
fn dellac_validate(json: &str) -> PyResult<(bool, String)> {
    let d = AffineDellacConfig::from_json(json).map_err(py_err)?;
    let v = d.validate().map_err(py_err)?;
    let msg = match &v.violation {
        None => format!("sum {} = {}", v.sum, v.target),
        Some(violation) => violation.to_string(),
    };
    Ok((v.is_valid(), msg))
}

/// All configurations (or the `corank`-degenerate ones) as JSON strings.
#[pyfunction]
#[pyo3(signature = (n, omega=1, corank=None))]
fn dellac_enumerate(n: usize, omega: usize, corank: Option<Vec<u8>>) -> PyResult<Vec<String>> {
    if n == 0 || omega == 0 {
        return Err(PyValueError::new_err("n and omega must be positive"));
    }
    Ok(match corank {
        None => dellac::enumerate(n, omega).map(|d| d.to_json()).collect(),
        Some(c) => {
            let c = CorankTuple::new(c).map_err(py_err)?;
            if c.n() != n {
                return Err(PyValueError::new_err("corank tuple has the wrong length"));
            }
            dellac::enumerate_c_degenerate(n, omega, &c).map(|d| d.to_json()).collect()
        }
    })
}

/// Text diagram of a configuration.
#[pyfunction]
fn dellac_render(json: &str) -> PyResult<String> {
    AffineDellacConfig::from_json(json).map(|d| d.render()).map_err(py_err)
}

/// Suffix tuple of the fixed point attached to a configuration.
#[pyfunction]
fn dellac_to_cell(json: &str) -> PyResult<Vec<usize>> {
    let d = AffineDellacConfig::from_json(json).map_err(py_err)?;
    d.to_fixed_point().map(|fp| fp.suffix).map_err(py_err)
}

#[pymodule]
pub fn cyclequiv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNilpRep>()?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(glue, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(cells, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(euler, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(count_grand_motzkin, m)?)?;
    m.add_function(wrap_pyfunction!(dellac_validate, m)?)?;
    m.add_function(wrap_pyfunction!(dellac_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(dellac_render, m)?)?;
    m.add_function(wrap_pyfunction!(dellac_to_cell, m)?)?;
    Ok(())
}
