//! Python bindings: `PolyVector`, `Decomposition` and the main operations.
//! Reports come back as plain dicts with the same fields as the CLI JSON.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use waring_core::apolarity::BundleSpec;
use waring_core::homotopy::{CountOptions, DEFAULT_BUDGET_LOOPS, DEFAULT_STALL};
use waring_core::{CaseSpec, HomogeneousPoly, LinearForm, WaringError};

pyo3::create_exception!(waring, ValidationError, PyValueError);
pyo3::create_exception!(waring, NumericalError, PyRuntimeError);

fn to_py(e: WaringError) -> PyErr {
    match e {
        WaringError::WrongKernelDim { .. }
        | WaringError::MissingPoints { .. }
        | WaringError::IllConditioned(_)
        | WaringError::DegenerateCase(_)
        | WaringError::Inconclusive { .. }
        | WaringError::AllPathsFailed(_) => NumericalError::new_err(e.to_string()),
        _ => ValidationError::new_err(e.to_string()),
    }
}

fn to_dict<'py>(py: Python<'py>, text: serde_json::Result<String>) -> PyResult<Bound<'py, PyDict>> {
    let text = text.map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?
        .call_method1("loads", (text,))?
        .cast_into::<PyDict>()
        .map_err(Into::into)
}

/// A vector of homogeneous forms in a common set of variables, with
/// coefficients in graded-lex order.
#[pyclass(name = "PolyVector", module = "waring", frozen)]
struct PyPolyVector(waring_core::PolyVector);

#[pymethods]
impl PyPolyVector {
    /// `parts[j]` holds the coefficients of the degree `degrees[j]` form.
    #[new]
    fn new(num_vars: usize, degrees: Vec<u32>, parts: Vec<Vec<Complex64>>) -> PyResult<Self> {
        if degrees.len() != parts.len() {
            return Err(ValidationError::new_err("one coefficient list per degree"));
        }
        let polys = degrees
            .iter()
            .zip(parts)
            .map(|(&d, c)| HomogeneousPoly::new(num_vars, d, c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        waring_core::PolyVector::new(polys).map(Self).map_err(to_py)
    }

    /// `f_j = Σ_i lambdas[i][j] · forms[i]^{degrees[j]}`.
    #[staticmethod]
    fn from_summands(degrees: Vec<u32>, forms: Vec<Vec<Complex64>>, lambdas: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let forms: Vec<LinearForm> = forms.into_iter().map(LinearForm::new).collect();
        waring_core::PolyVector::from_summands(&degrees, &forms, &lambdas)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| ValidationError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    #[getter]
    fn degrees(&self) -> Vec<u32> {
        self.0.degrees().to_vec()
    }

    #[getter]
    fn parts(&self) -> Vec<Vec<Complex64>> {
        self.0.parts().iter().map(|p| p.coeffs().to_vec()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "PolyVector(num_vars={}, degrees={:?})",
            self.0.num_vars(),
            self.0.degrees()
        )
    }
}

/// `k` linear forms and a `k × r` matrix of scalars.
#[pyclass(name = "Decomposition", module = "waring", frozen)]
struct PyDecomposition(waring_core::WaringDecomposition);

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn forms(&self) -> Vec<Vec<Complex64>> {
        self.0.forms().iter().map(|l| l.coeffs().to_vec()).collect()
    }

    #[getter]
    fn lambdas(&self) -> Vec<Vec<Complex64>> {
        self.0.lambdas().to_vec()
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.0.residual
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn reconstruct(&self) -> PyPolyVector {
        PyPolyVector(self.0.reconstruct())
    }

    /// Max relative coefficient error against `f`.
    fn error_against(&self, f: &PyPolyVector) -> f64 {
        self.0.reconstruction_error(&f.0)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Decomposition(k={}, residual={:e})", self.0.k(), self.0.residual)
    }
}

/// `k` when the signature is perfect, else `None`.
#[pyfunction]
fn is_perfect(n: usize, degrees: Vec<u32>) -> PyResult<Option<usize>> {
    let case = CaseSpec::new(n, &degrees).map_err(to_py)?;
    Ok(case.k())
}

/// Closed-form count for `s` general forms of degree `d` on `P^n`.
#[pyfunction]
fn veronese_count<'py>(py: Python<'py>, degree: u32, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let c = waring_core::veronese_count(degree, n).map_err(to_py)?;
    py.get_type::<pyo3::types::PyInt>().call1((c.count.to_string(),))
}

#[pyfunction]
#[pyo3(signature = (n, degrees, k = None, seed = 0))]
fn secant_defect<'py>(
    py: Python<'py>,
    n: usize,
    degrees: Vec<u32>,
    k: Option<usize>,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let case = CaseSpec::new(n, &degrees).map_err(to_py)?;
    let k = match k {
        Some(k) => k,
        None => case.require_k().map_err(to_py)?,
    };
    let rep = py
        .detach(|| waring_core::secant_defect(&case, k, seed))
        .map_err(to_py)?;
    to_dict(py, serde_json::to_string(&rep))
}

/// Recover the decomposition of an identifiable vector.
#[pyfunction]
#[pyo3(signature = (f, bundle = "auto", seed = 0))]
fn decompose(py: Python<'_>, f: &PyPolyVector, bundle: &str, seed: u64) -> PyResult<PyDecomposition> {
    let case = CaseSpec::new(f.0.num_vars() - 1, f.0.degrees()).map_err(to_py)?;
    let bundle = BundleSpec::parse(bundle, &case).map_err(to_py)?;
    py.detach(|| waring_core::decompose(&f.0, &bundle, seed))
        .map(PyDecomposition)
        .map_err(to_py)
}

/// Monodromy count for a random vector of the signature. Returns the CLI
/// fields plus `solutions`, a list of `Decomposition`.
#[pyfunction]
#[pyo3(signature = (n, degrees, seed = 0, budget_loops = DEFAULT_BUDGET_LOOPS, stall = DEFAULT_STALL))]
fn count_decompositions<'py>(
    py: Python<'py>,
    n: usize,
    degrees: Vec<u32>,
    seed: u64,
    budget_loops: usize,
    stall: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let case = CaseSpec::new(n, &degrees).map_err(to_py)?;
    let opts = CountOptions {
        seed,
        budget_loops,
        stall,
        ..CountOptions::default()
    };
    let rep = py
        .detach(|| waring_core::count_decompositions(&case, &opts))
        .map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("k", rep.k)?;
    out.set_item("count", rep.count)?;
    out.set_item("status", rep.status.as_str())?;
    out.set_item("loops", rep.loops)?;
    out.set_item("path_failures", rep.path_failures)?;
    let sols: Vec<PyDecomposition> = rep.solutions.into_iter().map(PyDecomposition).collect();
    out.set_item("solutions", sols)?;
    Ok(out)
}

#[pymodule]
fn waring(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolyVector>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_function(wrap_pyfunction!(is_perfect, m)?)?;
    m.add_function(wrap_pyfunction!(veronese_count, m)?)?;
    m.add_function(wrap_pyfunction!(secant_defect, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(count_decompositions, m)?)?;
    m.add("ValidationError", m.py().get_type::<ValidationError>())?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    Ok(())
}
