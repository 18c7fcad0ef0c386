//! Python bindings for the segcert verifier.
//!
//! Reals cross the boundary as Python floats (interval endpoints) or decimal
//! strings (problem data, so `"0.1"` is enclosed exactly as in a config file).

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use segcert::config::{parse_config, ConfigFile};
use segcert::reference::CONFIGS;
use segcert::sandbox::{boundary_sample as sample_faces, ForcingInstance, SampleOptions};
use segcert::{family_forcing, ForcingFamily, ModeBox, RefineOptions};

create_exception!(segcert_py, SegcertError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    SegcertError::new_err(e.to_string())
}

fn decimal(text: &str) -> PyResult<segcert::Interval> {
    segcert::Interval::from_decimal(text).map_err(err)
}

fn reference(index: usize) -> PyResult<&'static segcert::reference::ReferenceConfig> {
    CONFIGS.get(index).ok_or_else(|| err(format!("reference index {index} out of range 0..{}", CONFIGS.len())))
}

/// Closed interval with outward-rounded arithmetic.
#[pyclass(name = "Interval", module = "segcert_py", frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct PyInterval(segcert::Interval);

#[pymethods]
impl PyInterval {
    #[new]
    #[pyo3(signature = (lo, hi=None))]
    fn new(lo: f64, hi: Option<f64>) -> PyResult<Self> {
        segcert::Interval::new(lo, hi.unwrap_or(lo)).map(PyInterval).map_err(err)
    }

    /// Tightest enclosure of a decimal literal such as `"0.1"` or `"1e-3"`.
    #[staticmethod]
    fn from_decimal(text: &str) -> PyResult<Self> {
        decimal(text).map(PyInterval)
    }

    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi()
    }

    fn mid(&self) -> f64 {
        self.0.mid()
    }

    fn rad(&self) -> f64 {
        self.0.rad()
    }

    fn width(&self) -> f64 {
        self.0.width()
    }

    fn mag(&self) -> f64 {
        self.0.mag()
    }

    fn contains(&self, x: f64) -> bool {
        self.0.contains(x)
    }

    fn is_subset(&self, other: &PyInterval) -> bool {
        self.0.is_subset(&other.0)
    }

    fn square(&self) -> Self {
        PyInterval(self.0.square())
    }

    fn sqrt(&self) -> PyResult<Self> {
        self.0.sqrt().map(PyInterval).map_err(err)
    }

    fn __add__(&self, other: &PyInterval) -> Self {
        PyInterval(self.0 + other.0)
    }

    fn __sub__(&self, other: &PyInterval) -> Self {
        PyInterval(self.0 - other.0)
    }

    fn __mul__(&self, other: &PyInterval) -> Self {
        PyInterval(self.0 * other.0)
    }

    fn __truediv__(&self, other: &PyInterval) -> PyResult<Self> {
        self.0.checked_div(&other.0).map(PyInterval).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyInterval(-self.0)
    }

    fn __eq__(&self, other: &PyInterval) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Interval({:?}, {:?})", self.0.lo(), self.0.hi())
    }
}

/// Problem data: `β`, `σ` and the forcing bounds.
#[pyclass(name = "Problem", module = "segcert_py", frozen)]
pub struct PyProblem {
    inner: segcert::Problem,
    epsilon: segcert::Interval,
}

#[pymethods]
impl PyProblem {
    /// `family` is `"A"` (mode 1) or `"B"` (modes 1..4); `epsilon` is a pair
    /// of decimal strings.
    #[new]
    fn new(beta: &str, sigma: &str, epsilon: (String, String), family: &str) -> PyResult<Self> {
        let family = match family {
            "A" | "a" => ForcingFamily::A,
            "B" | "b" => ForcingFamily::B,
            other => return Err(err(format!("unknown forcing family {other:?}"))),
        };
        let lo = decimal(&epsilon.0)?;
        let hi = decimal(&epsilon.1)?;
        let eps = segcert::Interval::new(lo.lo(), hi.hi()).map_err(err)?;
        let inner = segcert::Problem::new(decimal(beta)?, decimal(sigma)?, family_forcing(family, eps)).map_err(err)?;
        Ok(PyProblem { inner, epsilon: eps })
    }

    /// One of the six built-in configurations, `0 ≤ index < 6`.
    #[staticmethod]
    fn reference(index: usize) -> PyResult<Self> {
        let cfg = reference(index)?;
        Ok(PyProblem { inner: cfg.problem().map_err(err)?, epsilon: cfg.epsilon() })
    }

    #[getter]
    fn beta(&self) -> PyInterval {
        PyInterval(self.inner.beta)
    }

    #[getter]
    fn sigma(&self) -> PyInterval {
        PyInterval(self.inner.sigma)
    }

    #[getter]
    fn epsilon(&self) -> PyInterval {
        PyInterval(self.epsilon)
    }

    /// Bounds of `ε f_k`, `k = 1..`.
    #[getter]
    fn forcing(&self) -> Vec<PyInterval> {
        self.inner.forcing.bounds().iter().copied().map(PyInterval).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Problem(beta={}, sigma={}, forcing_modes={})",
            PyInterval(self.inner.beta).__repr__(),
            PyInterval(self.inner.sigma).__repr__(),
            self.inner.forcing.len()
        )
    }
}

/// Candidate segment: `M` low-mode boxes and the tail `C / k^s`.
#[pyclass(name = "Segment", module = "segcert_py", frozen)]
pub struct PySegment(segcert::Segment);

#[pymethods]
impl PySegment {
    /// `boxes` holds `(l, r)` endpoint pairs for modes `1..=M`.
    #[new]
    fn new(s: u32, c: f64, boxes: Vec<(f64, f64)>) -> PyResult<Self> {
        let boxes = boxes
            .into_iter()
            .map(|(l, r)| ModeBox::new(segcert::Interval::point(l), segcert::Interval::point(r)))
            .collect();
        segcert::Segment::new(s, segcert::Interval::point(c), boxes).map(PySegment).map_err(err)
    }

    /// The printed segment of a built-in configuration.
    #[staticmethod]
    fn published(index: usize) -> PyResult<Self> {
        reference(index)?.published_segment().map(PySegment).map_err(err)
    }

    #[getter]
    fn s(&self) -> u32 {
        self.0.s
    }

    #[getter(C)]
    fn c(&self) -> PyInterval {
        PyInterval(self.0.c)
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn boxes(&self) -> Vec<(PyInterval, PyInterval)> {
        self.0.boxes.iter().map(|b| (PyInterval(b.l), PyInterval(b.r))).collect()
    }

    /// Enclosure of `u_k = u_k^+ + u_k^-` over the segment.
    fn u_box(&self, k: usize) -> PyInterval {
        PyInterval(self.0.u_box(k))
    }

    fn __repr__(&self) -> String {
        format!("Segment(M={}, s={}, C={:?})", self.0.m(), self.0.s, self.0.c.hi())
    }
}

/// Outcome of the isolation check.
#[pyclass(name = "Report", module = "segcert_py", frozen)]
pub struct PyReport(segcert::VerificationReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.0.passed
    }

    #[getter]
    fn worst_margin(&self) -> f64 {
        self.0.worst_margin()
    }

    #[getter]
    fn diagnostics(&self) -> Vec<String> {
        self.0.diagnostics.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0).expect("report serializes")
    }

    fn __bool__(&self) -> bool {
        self.0.passed
    }

    fn __repr__(&self) -> String {
        format!("Report(passed={}, worst_margin={:?})", self.0.passed, self.0.worst_margin())
    }
}

#[pyfunction]
fn verify(segment: &PySegment, problem: &PyProblem) -> PyResult<PyReport> {
    segcert::verify(&segment.0, &problem.inner).map(PyReport).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (problem, m=6, iterations=2))]
fn refine(problem: &PyProblem, m: usize, iterations: u32) -> PyResult<(PySegment, PyReport)> {
    let opts = RefineOptions { iterations, ..RefineOptions::default() };
    let (seg, report) = segcert::refine(&problem.inner, m, &opts).map_err(err)?;
    Ok((PySegment(seg), PyReport(report)))
}

/// Certificate JSON for `segment`, whether or not it passes.
#[pyfunction]
fn certify(segment: &PySegment, problem: &PyProblem) -> PyResult<String> {
    segcert::build_certificate(&problem.inner, &segment.0).map(|c| c.to_json()).map_err(err)
}

/// Parses a config document; returns the problem, `M` and the segment if
/// one is given.
#[pyfunction]
fn load_config(text: &str) -> PyResult<(PyProblem, usize, Option<PySegment>)> {
    let rc = parse_config(text).map_err(err)?;
    Ok((PyProblem { inner: rc.problem, epsilon: rc.epsilon }, rc.m, rc.segment.map(PySegment)))
}

/// Config JSON of a built-in configuration.
#[pyfunction]
#[pyo3(signature = (index, with_segment=true))]
fn reference_config(index: usize, with_segment: bool) -> PyResult<String> {
    Ok(ConfigFile::from_reference(reference(index)?, with_segment).to_json())
}

#[pyfunction]
fn reference_labels() -> Vec<String> {
    CONFIGS.iter().map(|c| c.label()).collect()
}

/// Floating-point face sampling with `f_k(t) = cos(2πt/τ)` scaled by the
/// largest `|ε|`. Returns `(all_positive, report_json)`.
#[pyfunction]
#[pyo3(signature = (segment, problem, modes=24, samples=1000, seed=0, tau=1.0))]
fn boundary_sample(
    segment: &PySegment,
    problem: &PyProblem,
    modes: usize,
    samples: usize,
    seed: u64,
    tau: f64,
) -> PyResult<(bool, String)> {
    let instance = ForcingInstance::cosine(problem.inner.forcing.len(), tau);
    let opts = SampleOptions { modes, samples_per_family: samples, seed };
    let report = sample_faces(&segment.0, &problem.inner, problem.epsilon.mag(), &instance, &opts).map_err(err)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    Ok((report.all_positive(), json))
}

#[pymodule]
fn segcert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SegcertError", m.py().get_type::<SegcertError>())?;
    m.add_class::<PyInterval>()?;
    m.add_class::<PyProblem>()?;
    m.add_class::<PySegment>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(refine, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(load_config, m)?)?;
    m.add_function(wrap_pyfunction!(reference_config, m)?)?;
    m.add_function(wrap_pyfunction!(reference_labels, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_sample, m)?)?;
    Ok(())
}
