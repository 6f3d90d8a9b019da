//! Python bindings for `unifluct`.
//!
//! Exact results come back as `fractions.Fraction`, permutations as lists
//! of 1-based cycles, Monte Carlo reports as dictionaries.

use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use unifluct::montecarlo::{self, McConfig};
use unifluct::second_order::{self, ExactMatrix, Letter, ReducedWord, TraceWordSpec, UnitSpace};
use unifluct::{noncrossing, weingarten, EpsilonVector, Limits, Permutation as CorePermutation};

create_exception!(pyunifluct, CapExceededError, PyValueError);

fn err(e: unifluct::Error) -> PyErr {
    if e.is_cap_exceeded() {
        CapExceededError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

fn cycles_of(p: &CorePermutation) -> Vec<Vec<usize>> {
    p.cycles_one_based()
}

/// A permutation of `{1, …, n}`.
#[pyclass(name = "Permutation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Permutation(CorePermutation);

#[pymethods]
impl Permutation {
    /// `Permutation(n, cycles)` with 1-based cycles, e.g. `Permutation(3, [[1, 2]])`.
    #[new]
    #[pyo3(signature = (n, cycles = Vec::new()))]
    fn new(n: usize, cycles: Vec<Vec<usize>>) -> PyResult<Self> {
        CorePermutation::from_cycles(n, &cycles).map(Permutation).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str, n: usize) -> PyResult<Self> {
        CorePermutation::parse(text, n).map(Permutation).map_err(err)
    }

    #[staticmethod]
    fn from_cycle_type(cycle_type: Vec<usize>) -> PyResult<Self> {
        CorePermutation::from_cycle_type(&cycle_type)
            .map(Permutation)
            .map_err(err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    /// 1-based cycles, fixed points included.
    fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.0)
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type()
    }

    /// `|π| = n − #(π)`.
    fn length(&self) -> usize {
        self.0.length()
    }

    fn inverse(&self) -> Self {
        Permutation(self.0.inverse())
    }

    /// `self ∘ other`.
    fn __mul__(&self, other: &Permutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Permutation).map_err(err)
    }

    fn __eq__(&self, other: &Permutation) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.images().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({}, {:?})", self.0.size(), cycles_of(&self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// `Wg(N, σ)` as `(numerator, denominator)` coefficient lists in `N`,
/// constant term first.
#[pyfunction]
fn wg(cycle_type: Vec<usize>) -> PyResult<(Vec<String>, Vec<String>)> {
    let f = weingarten::weingarten_class(&cycle_type, &Limits::default()).map_err(err)?;
    let coeffs = |p: &unifluct::PolynomialZ| p.coeffs().iter().map(|c| c.to_string()).collect();
    Ok((coeffs(f.numerator()), coeffs(f.denominator())))
}

/// `Wg(N, σ)` at an integer `N`.
#[pyfunction]
fn wg_at<'py>(py: Python<'py>, cycle_type: Vec<usize>, n: u64) -> PyResult<Bound<'py, PyAny>> {
    let f = weingarten::weingarten_class(&cycle_type, &Limits::default()).map_err(err)?;
    let v = f.eval(&BigRational::from_integer(n.into())).map_err(err)?;
    fraction(py, &v)
}

#[pyfunction]
fn mu(cycle_type: Vec<usize>) -> PyResult<i64> {
    let p = CorePermutation::from_cycle_type(&cycle_type).map_err(err)?;
    weingarten::mu(&p, &Limits::default()).map_err(err)
}

#[pyfunction]
fn mu2<'py>(py: Python<'py>, cycle_type1: Vec<usize>, cycle_type2: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let p1 = CorePermutation::from_cycle_type(&cycle_type1).map_err(err)?;
    let p2 = CorePermutation::from_cycle_type(&cycle_type2).map_err(err)?;
    fraction(py, &weingarten::mu2(&p1, &p2, &Limits::default()).map_err(err)?)
}

/// Non-crossing permutations of `[n]`.
#[pyfunction]
fn enumerate_nc(n: usize) -> PyResult<Vec<Permutation>> {
    Ok(noncrossing::enumerate_nc(n, &Limits::default())
        .map_err(err)?
        .map(Permutation)
        .collect())
}

/// Annular non-crossing permutations `S_NC(m, n)`.
#[pyfunction]
fn enumerate_snc(m: usize, n: usize) -> PyResult<Vec<Permutation>> {
    Ok(noncrossing::enumerate_snc(m, n, &Limits::default())
        .map_err(err)?
        .map(Permutation)
        .collect())
}

/// `S^{(ε)}` for a sign string such as `"+-+-"`.
#[pyfunction]
fn s_epsilon(eps: &str) -> PyResult<Vec<Permutation>> {
    let e: EpsilonVector = eps.parse().map_err(err)?;
    Ok(noncrossing::s_epsilon(&e, &Limits::default())
        .map_err(err)?
        .map(Permutation)
        .collect())
}

#[pyfunction]
fn ds_covariance(r: i64, s: i64) -> PyResult<i64> {
    second_order::ds_covariance(r, s).map_err(err)
}

fn signs_spec(eps: &str) -> PyResult<TraceWordSpec> {
    let e: EpsilonVector = eps.parse().map_err(err)?;
    let letters: Vec<(usize, i8)> = e.signs().iter().map(|&s| (0, s)).collect();
    TraceWordSpec::single(&letters).map_err(err)
}

/// Large-`N` covariance of `Tr(U^{ε₁}⋯)` and `Tr(U^{δ₁}⋯)` given as sign
/// strings, all deterministic matrices equal to the identity.
#[pyfunction]
fn k2_limit<'py>(py: Python<'py>, left: &str, right: &str) -> PyResult<Bound<'py, PyAny>> {
    let v = second_order::limit_k2(
        &signs_spec(left)?,
        &signs_spec(right)?,
        &[()],
        &UnitSpace,
        &Limits::default(),
    )
    .map_err(err)?;
    fraction(py, &v)
}

fn spec_and_matrices(
    groups: Vec<Vec<(usize, i8)>>,
    matrices: Option<Vec<Vec<Vec<String>>>>,
    n: Option<u64>,
) -> PyResult<(TraceWordSpec, Vec<ExactMatrix>, u64)> {
    let groups = groups
        .into_iter()
        .map(|g| {
            g.into_iter()
                .map(|(d, e)| Letter::new(d, e))
                .collect::<unifluct::Result<Vec<_>>>()
        })
        .collect::<unifluct::Result<Vec<_>>>()
        .map_err(err)?;
    let spec = TraceWordSpec::from_groups(groups).map_err(err)?;
    let d: Vec<ExactMatrix> = match matrices {
        Some(ms) => ms
            .iter()
            .map(|m| ExactMatrix::from_str_rows(m))
            .collect::<unifluct::Result<_>>()
            .map_err(err)?,
        None => Vec::new(),
    };
    let size = match (n, d.first()) {
        (Some(n), _) => n,
        (None, Some(m)) => second_order::SquareMatrix::dim(m) as u64,
        (None, None) => return Err(PyValueError::new_err("give N or at least one matrix")),
    };
    let d = if d.is_empty() {
        let count = spec.max_d_index().map_or(1, |m| m + 1);
        vec![ExactMatrix::identity(size as usize); count]
    } else {
        d
    };
    Ok((spec, d, size))
}

/// Exact `E(∏ Tr(D_{d}U^{ε} ⋯))`. `groups` lists the traces as lists of
/// `(d, ε)`; `matrices` are rows of rational strings such as `"1/2"`;
/// without matrices every `D` is the identity of size `n`.
#[pyfunction]
#[pyo3(signature = (groups, matrices = None, n = None))]
fn exact_moment<'py>(
    py: Python<'py>,
    groups: Vec<Vec<(usize, i8)>>,
    matrices: Option<Vec<Vec<Vec<String>>>>,
    n: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let (spec, d, size) = spec_and_matrices(groups, matrices, n)?;
    let v = second_order::exact_mixed_moment(&spec, &d, size, &Limits::default()).map_err(err)?;
    fraction(py, &v)
}

/// Exact joint cumulant of the traces, one observable per group.
#[pyfunction]
#[pyo3(signature = (groups, matrices = None, n = None))]
fn exact_cumulant<'py>(
    py: Python<'py>,
    groups: Vec<Vec<(usize, i8)>>,
    matrices: Option<Vec<Vec<Vec<String>>>>,
    n: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let (spec, d, size) = spec_and_matrices(groups, matrices, n)?;
    let parts: Vec<TraceWordSpec> = (0..spec.num_groups()).map(|i| spec.group(i)).collect();
    let v = second_order::exact_cumulant(&parts, &d, size, &Limits::default()).map_err(err)?;
    fraction(py, &v)
}

/// Number of matchings between two reduced words given as `(family, exponent)`
/// pairs with 0-based family ids.
#[pyfunction]
fn reduced_word_covariance(w1: Vec<(usize, i64)>, w2: Vec<(usize, i64)>) -> PyResult<usize> {
    let a = ReducedWord::new(w1).map_err(err)?;
    let b = ReducedWord::new(w2).map_err(err)?;
    Ok(second_order::reduced_word_covariance(&a, &b))
}

fn report_dict<'py>(py: Python<'py>, report: &montecarlo::Report) -> PyResult<Bound<'py, PyDict>> {
    let text = serde_json::to_string(report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?
        .getattr("loads")?
        .call1((text,))?
        .cast_into::<PyDict>()
        .map_err(Into::into)
}

/// Runs one Monte Carlo experiment: `"ds"`, `"chebyshev"` or `"wg"`.
#[pyfunction]
#[pyo3(signature = (kind, n, samples, seed = 0, max_power = 3))]
fn monte_carlo<'py>(
    py: Python<'py>,
    kind: &str,
    n: usize,
    samples: usize,
    seed: u64,
    max_power: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = McConfig::new(n, samples, seed);
    let report = py
        .detach(|| match kind {
            "ds" => Ok(montecarlo::experiment_ds(max_power, &cfg)),
            "chebyshev" => Ok(montecarlo::experiment_chebyshev(max_power, &cfg, 0.15)),
            "wg" => Ok(montecarlo::experiment_weingarten(&cfg)),
            other => Err(other.to_string()),
        })
        .map_err(|k| PyValueError::new_err(format!("unknown experiment {k:?}")))?
        .map_err(err)?;
    report_dict(py, &report)
}

#[pymodule]
fn pyunifluct(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add_class::<Permutation>()?;
    m.add_function(wrap_pyfunction!(wg, m)?)?;
    m.add_function(wrap_pyfunction!(wg_at, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(mu2, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_nc, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_snc, m)?)?;
    m.add_function(wrap_pyfunction!(s_epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(ds_covariance, m)?)?;
    m.add_function(wrap_pyfunction!(k2_limit, m)?)?;
    m.add_function(wrap_pyfunction!(exact_moment, m)?)?;
    m.add_function(wrap_pyfunction!(exact_cumulant, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_word_covariance, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo, m)?)?;
    Ok(())
}
