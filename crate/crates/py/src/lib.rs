//! Python bindings: Coxeter graphs, cyclotomic helpers, Smith normal form
//! over the integers, and the job runner behind the command-line tool.

use num_bigint::BigInt;
use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use salvetti::coefficients::{
    cyclotomic_factorization, q_binomial as qbin, smith_normal_form as snf, Integers, LaurentRing,
    Matrix, Ring,
};
use salvetti::coxeter::{self, Label, VertexSet};
use salvetti::job::{self, Command, Format, JobSpec};
use salvetti::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnsupportedRing(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn label(obj: &Bound<'_, PyAny>) -> PyResult<Label> {
    let edge = if let Ok(m) = obj.extract::<u32>() {
        job::EdgeLabel::Finite(m)
    } else {
        job::EdgeLabel::Named(obj.extract::<String>()?)
    };
    edge.to_label().map_err(to_py)
}

fn render(p: &salvetti::coefficients::IntPoly) -> String {
    LaurentRing::new(Integers).render(p)
}

/// A Coxeter graph on named vertices; missing edges mean `m = 2`.
#[pyclass(
    name = "CoxeterGraph",
    module = "pysalvetti",
    frozen,
    skip_from_py_object
)]
struct PyGraph {
    inner: coxeter::CoxeterGraph,
    edges: Vec<(String, String, String)>,
}

impl PyGraph {
    fn wrap(inner: coxeter::CoxeterGraph) -> Self {
        let edges = inner
            .edges()
            .into_iter()
            .map(|(i, j, m)| {
                (
                    inner.name(i).to_string(),
                    inner.name(j).to_string(),
                    m.to_string(),
                )
            })
            .collect();
        PyGraph { inner, edges }
    }

    fn subset(&self, names: Option<Vec<String>>) -> PyResult<VertexSet> {
        match names {
            None => Ok(self.inner.all()),
            Some(names) => self.inner.subset(&names).map_err(to_py),
        }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges = Vec::new()))]
    fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, Bound<'_, PyAny>)>,
    ) -> PyResult<Self> {
        let edges = edges
            .iter()
            .map(|(a, b, m)| Ok((a.clone(), b.clone(), label(m)?)))
            .collect::<PyResult<Vec<_>>>()?;
        coxeter::CoxeterGraph::new(vertices, &edges)
            .map(Self::wrap)
            .map_err(to_py)
    }

    #[staticmethod]
    fn type_a(n: usize) -> Self {
        Self::wrap(coxeter::CoxeterGraph::type_a(n))
    }

    #[staticmethod]
    fn type_b(n: usize) -> Self {
        Self::wrap(coxeter::CoxeterGraph::type_b(n))
    }

    #[staticmethod]
    fn affine_a(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("affine A_n needs n >= 1"));
        }
        Ok(Self::wrap(coxeter::CoxeterGraph::affine_a(n)))
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        self.edges.clone()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Type of the parabolic subgroup, e.g. `A2 x B3` or `infinite`.
    #[pyo3(signature = (subset = None))]
    fn classify(&self, subset: Option<Vec<String>>) -> PyResult<String> {
        let t = self.subset(subset)?;
        coxeter::classify_parabolic(&self.inner, t)
            .map(|p| p.render())
            .map_err(to_py)
    }

    #[pyo3(signature = (subset = None))]
    fn order(&self, subset: Option<Vec<String>>) -> PyResult<Option<u128>> {
        let t = self.subset(subset)?;
        Ok(coxeter::classify_parabolic(&self.inner, t)
            .map_err(to_py)?
            .order())
    }

    #[pyo3(signature = (subset = None))]
    fn exponents(&self, subset: Option<Vec<String>>) -> PyResult<Vec<u32>> {
        let t = self.subset(subset)?;
        let p = coxeter::classify_parabolic(&self.inner, t).map_err(to_py)?;
        coxeter::exponents(&p).map_err(to_py)
    }

    /// `W_T(q)` as text.
    #[pyo3(signature = (subset = None))]
    fn poincare(&self, subset: Option<Vec<String>>) -> PyResult<String> {
        let t = self.subset(subset)?;
        coxeter::poincare_polynomial(&self.inner, t)
            .map(|p| render(&p))
            .map_err(to_py)
    }

    fn odd_components(&self) -> Vec<Vec<String>> {
        self.inner
            .odd_components()
            .into_iter()
            .map(|c| c.iter().map(|i| self.inner.name(i).to_string()).collect())
            .collect()
    }

    /// One reduced word per element, as lists of vertex names.
    #[pyo3(signature = (subset = None, cap = salvetti::DEFAULT_CAP))]
    fn elements(&self, subset: Option<Vec<String>>, cap: usize) -> PyResult<Vec<Vec<String>>> {
        let t = self.subset(subset)?;
        let words = coxeter::enumerate_elements(&self.inner, t, cap).map_err(to_py)?;
        Ok(words.iter().map(|w| self.names(&w.letters)).collect())
    }

    /// Minimal representatives of `W_{T ∪ {s}} / W_T`.
    #[pyo3(signature = (subset, vertex, cap = salvetti::DEFAULT_CAP))]
    fn coset_reps(
        &self,
        subset: Vec<String>,
        vertex: &str,
        cap: usize,
    ) -> PyResult<Vec<Vec<String>>> {
        let t = self.subset(Some(subset))?;
        let s = self.inner.index(vertex).map_err(to_py)?;
        let words = coxeter::minimal_coset_reps(&self.inner, t, s, cap).map_err(to_py)?;
        Ok(words.iter().map(|w| self.names(&w.letters)).collect())
    }

    /// Run a command on this graph, see `run_job` for the keywords.
    #[pyo3(signature = (command, preset = None, units = None, field = None, at_cyclotomic = None, cap = None, format = None, chain = false))]
    #[allow(clippy::too_many_arguments)]
    fn run(
        &self,
        command: &str,
        preset: Option<String>,
        units: Option<Vec<String>>,
        field: Option<String>,
        at_cyclotomic: Option<u64>,
        cap: Option<usize>,
        format: Option<&str>,
        chain: bool,
    ) -> PyResult<String> {
        let mut spec = JobSpec {
            vertices: self.inner.names().to_vec(),
            edges: self
                .edges
                .iter()
                .map(|(a, b, m)| (a.clone(), b.clone(), job::EdgeLabel::Named(m.clone())))
                .collect(),
            system: Default::default(),
            command: Some(command.parse::<Command>().map_err(to_py)?),
            options: Default::default(),
        };
        spec.system.preset = preset;
        spec.system.units = units;
        spec.options.field = field;
        spec.options.at_cyclotomic = at_cyclotomic;
        spec.options.cap = cap;
        spec.options.format = format
            .map(|f| f.parse::<Format>())
            .transpose()
            .map_err(to_py)?;
        if chain {
            spec.options.direction = Some(salvetti::dynamic::DirectionView::Chain);
        }
        job::run_job(&spec).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("CoxeterGraph({:?}, {:?})", self.inner.names(), self.edges)
    }

    fn __len__(&self) -> usize {
        self.inner.rank()
    }
}

impl PyGraph {
    fn names(&self, letters: &[usize]) -> Vec<String> {
        letters
            .iter()
            .map(|&i| self.inner.name(i).to_string())
            .collect()
    }
}

/// The `h`-th cyclotomic polynomial as text.
#[pyfunction]
fn cyclotomic(h: u64) -> PyResult<String> {
    salvetti::coefficients::cyclotomic(h)
        .map(|p| render(&p))
        .map_err(to_py)
}

/// Gaussian binomial `[n choose k]_q` as text.
#[pyfunction]
fn q_binomial(n: i64, k: i64) -> PyResult<String> {
    qbin(n, k).map(|p| render(&p)).map_err(to_py)
}

/// Factor an integer polynomial in `q` into cyclotomic polynomials up to a unit,
/// e.g. `phi2^2 * phi4`.
#[pyfunction]
#[pyo3(signature = (poly, bound = 200))]
fn cyclotomic_factors(poly: &str, bound: u64) -> PyResult<String> {
    let p = LaurentRing::new(Integers).parse(poly).map_err(to_py)?;
    Ok(cyclotomic_factorization(&p, bound).render())
}

/// `(U, D, V)` with `U A V = D` in Smith normal form over the integers.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn smith_normal_form(
    rows: Vec<Vec<BigInt>>,
) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let s = snf(&Integers, &Matrix::from_rows(rows, cols));
    Ok((s.u.to_rows(), s.d.to_rows(), s.v.to_rows()))
}

/// Run a job given as JSON text, with optional overrides; returns the rendered report.
#[pyfunction]
#[pyo3(signature = (job, command = None, field = None, format = None))]
fn run_job(
    job: &str,
    command: Option<&str>,
    field: Option<String>,
    format: Option<&str>,
) -> PyResult<String> {
    let mut spec = JobSpec::parse(job).map_err(to_py)?;
    if let Some(c) = command {
        spec.command = Some(c.parse().map_err(to_py)?);
    }
    if field.is_some() {
        spec.options.field = field;
    }
    if let Some(f) = format {
        spec.options.format = Some(f.parse().map_err(to_py)?);
    }
    job::run_job(&spec).map_err(to_py)
}

#[pymodule]
pub fn pysalvetti(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(q_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_factors, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    Ok(())
}
