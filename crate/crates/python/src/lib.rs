//! Python bindings: simplicial complexes, squarefree modules over Q or
//! GF(p), and the invariants computed from them.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sqfree::boolcomb::{SimplicialComplex as Delta, Subset};
use sqfree::dualities::alexander;
use sqfree::exactla::{Field, FieldTag, PrimeField, Rationals};
use sqfree::invariants::{
    char_cycle as cc, ext, ext_table, hochster as hoch, is_cohen_macaulay, is_componentwise_linear, is_sequentially_cm, krull_dim,
    local_cohomology_hilbert as lc, proj_dim,
};
use sqfree::io::{doc_field, module_from_json, module_to_json, parse_json};
use sqfree::sqcomplex::{bass_table, betti_table, GradedTable, SqComplex};
use sqfree::sqmod::SqModule;
use sqfree::suite::{run_checks, CheckConfig};
use sqfree::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_field(s: &str) -> PyResult<FieldTag> {
    s.parse().map_err(py_err)
}

fn face(n: usize, vertices: &[usize]) -> PyResult<Subset> {
    if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > n) {
        return Err(PyValueError::new_err(format!("vertex {v} outside 1..={n}")));
    }
    Ok(Subset::from_vertices(vertices))
}

type Row = (i64, Vec<usize>, usize);

fn rows(t: &GradedTable) -> Vec<Row> {
    t.iter().map(|(i, f, v)| (i, f.vertices(), v)).collect()
}

/// A simplicial complex on vertices `1..=n`, given by its facets.
#[pyclass(name = "SimplicialComplex", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyDelta(Delta);

#[pymethods]
impl PyDelta {
    /// An empty facet list gives the void complex; `[[]]` gives `{∅}`.
    #[new]
    fn new(n: usize, facets: Vec<Vec<usize>>) -> PyResult<Self> {
        if facets.is_empty() {
            return Ok(PyDelta(Delta::void(n)));
        }
        let fs = facets.iter().map(|f| face(n, f)).collect::<PyResult<Vec<_>>>()?;
        Delta::from_facets(n, &fs).map(PyDelta).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        self.0.facets().iter().map(|f| f.vertices()).collect()
    }

    fn contains(&self, face_: Vec<usize>) -> PyResult<bool> {
        Ok(self.0.contains(face(self.0.n(), &face_)?))
    }

    fn alexander_dual(&self) -> PyResult<Self> {
        self.0.alexander_dual().map(PyDelta).map_err(py_err)
    }

    fn link(&self, face_: Vec<usize>) -> PyResult<Self> {
        Ok(PyDelta(self.0.link(face(self.0.n(), &face_)?)))
    }

    /// `{q: dim H̃_q}` over Q.
    fn reduced_homology(&self) -> BTreeMap<i64, usize> {
        self.0.reduced_homology(&Rationals).iter().collect()
    }

    fn __repr__(&self) -> String {
        format!("SimplicialComplex(n={}, facets={:?})", self.0.n(), self.facets())
    }
}

#[derive(Clone, PartialEq)]
enum AnyModule {
    Q(SqModule<Rationals>),
    P(SqModule<PrimeField>),
}

macro_rules! each {
    ($m:expr, $x:ident => $body:expr) => {
        match $m {
            AnyModule::Q($x) => $body,
            AnyModule::P($x) => $body,
        }
    };
}

macro_rules! rewrap {
    ($m:expr, $x:ident => $body:expr) => {
        match $m {
            AnyModule::Q($x) => AnyModule::Q($body),
            AnyModule::P($x) => AnyModule::P($body),
        }
    };
}

fn build(field: FieldTag, q: impl FnOnce(&Rationals) -> SqModule<Rationals>, p: impl FnOnce(&PrimeField) -> SqModule<PrimeField>) -> PyResult<AnyModule> {
    Ok(match field {
        FieldTag::Rational => AnyModule::Q(q(&Rationals)),
        FieldTag::Prime(pr) => AnyModule::P(p(&PrimeField::new(pr).map_err(py_err)?)),
    })
}

fn cx<K: Field>(m: &SqModule<K>) -> SqComplex<K> {
    SqComplex::from_module(m, 0)
}

/// A squarefree module over `k[x_1..x_n]`, stored as its values on the
/// subsets of `[n]` with the multiplication maps between them.
#[pyclass(name = "Module", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyModule_(AnyModule);

#[pymethods]
impl PyModule_ {
    /// Reads the JSON module format used by the command line tool.
    #[staticmethod]
    #[pyo3(signature = (text, field=None))]
    fn from_json(text: &str, field: Option<&str>) -> PyResult<Self> {
        let v = parse_json(text).map_err(py_err)?;
        let tag = match field {
            Some(f) => parse_field(f)?,
            None => doc_field(&v).map_err(py_err)?.unwrap_or(FieldTag::Rational),
        };
        let m = match tag {
            FieldTag::Rational => AnyModule::Q(module_from_json(&Rationals, &v).map_err(py_err)?),
            FieldTag::Prime(p) => AnyModule::P(module_from_json(&PrimeField::new(p).map_err(py_err)?, &v).map_err(py_err)?),
        };
        Ok(PyModule_(m))
    }

    #[staticmethod]
    #[pyo3(signature = (delta, field="q"))]
    fn stanley_reisner_ring(delta: &PyDelta, field: &str) -> PyResult<Self> {
        build(parse_field(field)?, |k| SqModule::stanley_reisner_ring(k, &delta.0), |k| SqModule::stanley_reisner_ring(k, &delta.0)).map(PyModule_)
    }

    #[staticmethod]
    #[pyo3(signature = (delta, field="q"))]
    fn stanley_reisner_ideal(delta: &PyDelta, field: &str) -> PyResult<Self> {
        build(parse_field(field)?, |k| SqModule::stanley_reisner_ideal(k, &delta.0), |k| SqModule::stanley_reisner_ideal(k, &delta.0)).map(PyModule_)
    }

    /// `S(-F)`.
    #[staticmethod]
    #[pyo3(signature = (n, face_, field="q"))]
    fn free(n: usize, face_: Vec<usize>, field: &str) -> PyResult<Self> {
        let f = face(n, &face_)?;
        build(parse_field(field)?, |k| SqModule::free_module(k, n, f), |k| SqModule::free_module(k, n, f)).map(PyModule_)
    }

    /// `S/P_F`.
    #[staticmethod]
    #[pyo3(signature = (n, face_, field="q"))]
    fn quotient_prime(n: usize, face_: Vec<usize>, field: &str) -> PyResult<Self> {
        let f = face(n, &face_)?;
        build(parse_field(field)?, |k| SqModule::quotient_prime(k, n, f), |k| SqModule::quotient_prime(k, n, f)).map(PyModule_)
    }

    /// The one-dimensional module concentrated at `F`.
    #[staticmethod]
    #[pyo3(signature = (n, face_, field="q"))]
    fn simple(n: usize, face_: Vec<usize>, field: &str) -> PyResult<Self> {
        let f = face(n, &face_)?;
        build(parse_field(field)?, |k| SqModule::simple_module(k, n, f), |k| SqModule::simple_module(k, n, f)).map(PyModule_)
    }

    #[getter]
    fn n(&self) -> usize {
        each!(&self.0, m => m.n())
    }

    #[getter]
    fn field(&self) -> String {
        each!(&self.0, m => m.field().tag().to_string())
    }

    fn dim(&self, face_: Vec<usize>) -> PyResult<usize> {
        let f = face(self.n(), &face_)?;
        Ok(each!(&self.0, m => m.dim(f)))
    }

    /// `[(F, dim M_F)]` over the support.
    fn dims(&self) -> Vec<(Vec<usize>, usize)> {
        each!(&self.0, m => m.support().map(|f| (f.vertices(), m.dim(f))).collect())
    }

    fn to_json(&self) -> String {
        each!(&self.0, m => module_to_json(m, false).to_string())
    }

    /// The Alexander dual `A(M)`.
    fn alexander(&self) -> Self {
        PyModule_(rewrap!(&self.0, m => alexander(m)))
    }

    /// `Ext^i(M, ω_S)`.
    fn ext(&self, i: i64) -> Self {
        PyModule_(rewrap!(&self.0, m => ext(&cx(m), i)))
    }

    /// `[(i, F, dim Ext^i(M, ω_S)_F)]`.
    fn ext_table(&self) -> Vec<Row> {
        each!(&self.0, m => rows(&ext_table(&cx(m))))
    }

    /// `[(i, F, β_i(F, M))]`.
    fn betti(&self) -> Vec<Row> {
        each!(&self.0, m => rows(&betti_table(&cx(m))))
    }

    /// `[(i, F, μ̄^i(F, M))]`.
    fn bass(&self) -> Vec<Row> {
        each!(&self.0, m => rows(&bass_table(&cx(m))))
    }

    fn krull_dim(&self) -> Option<usize> {
        each!(&self.0, m => krull_dim(m))
    }

    fn proj_dim(&self) -> Option<usize> {
        each!(&self.0, m => proj_dim(m))
    }

    fn is_cohen_macaulay(&self) -> bool {
        each!(&self.0, m => is_cohen_macaulay(m))
    }

    fn is_sequentially_cm(&self) -> bool {
        each!(&self.0, m => is_sequentially_cm(m))
    }

    fn is_componentwise_linear(&self) -> bool {
        each!(&self.0, m => is_componentwise_linear(m))
    }

    fn __repr__(&self) -> String {
        format!("Module(n={}, field={}, dims={:?})", self.n(), self.field(), self.dims())
    }
}

fn with_field<T>(field: &str, q: impl FnOnce(&Rationals) -> T, p: impl FnOnce(&PrimeField) -> T) -> PyResult<T> {
    Ok(match parse_field(field)? {
        FieldTag::Rational => q(&Rationals),
        FieldTag::Prime(pr) => p(&PrimeField::new(pr).map_err(py_err)?),
    })
}

/// `dim H^i_m(S/I_Δ)_{-F}`.
#[pyfunction]
#[pyo3(signature = (delta, i, face_, field="q"))]
fn hochster(delta: &PyDelta, i: i64, face_: Vec<usize>, field: &str) -> PyResult<usize> {
    let f = face(delta.0.n(), &face_)?;
    with_field(field, |k| hoch(k, &delta.0, i, f), |k| hoch(k, &delta.0, i, f))
}

/// Multiplicities `{F: e}` of the characteristic cycle of `H^i_{I_Δ}(S)`.
#[pyfunction]
#[pyo3(signature = (delta, i, field="q"))]
fn char_cycle(delta: &PyDelta, i: i64, field: &str) -> PyResult<Vec<(Vec<usize>, usize)>> {
    let c = with_field(field, |k| cc(k, &delta.0, i), |k| cc(k, &delta.0, i))?;
    Ok(c.multiplicities.iter().map(|(f, &v)| (f.vertices(), v)).collect())
}

/// `dim H^i_{I_Δ}(S)_a`.
#[pyfunction]
#[pyo3(signature = (delta, i, degree, field="q"))]
fn local_cohomology_hilbert(delta: &PyDelta, i: i64, degree: Vec<i64>, field: &str) -> PyResult<usize> {
    with_field(field, |k| lc(k, &delta.0, i, &degree), |k| lc(k, &delta.0, i, &degree))?.map_err(py_err)
}

/// Runs the property suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (seed=0, max_n=3, cases=8, field="q"))]
fn check(seed: u64, max_n: usize, cases: usize, field: &str) -> PyResult<(bool, String)> {
    let config = CheckConfig { seed, max_n, modules: cases, complexes: (cases / 3).max(1), simplicial: cases, mutate_sign: false };
    let report = with_field(field, |k| run_checks(k, &config), |k| run_checks(k, &config))?;
    let json = serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((report.passed(), json))
}

#[pymodule]
#[pyo3(name = "sqfree")]
fn sqfree_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDelta>()?;
    m.add_class::<PyModule_>()?;
    m.add_function(wrap_pyfunction!(hochster, m)?)?;
    m.add_function(wrap_pyfunction!(char_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(local_cohomology_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
