//! Python bindings. Structured results come back as JSON strings in the same
//! versioned schemas the CLI writes.

use std::sync::Arc;
use std::time::Duration;

use hjelmslev_core::arc::{is_arc as core_is_arc, max_arc_search as core_max_arc_search, ArcSearchOptions};
use hjelmslev_core::conic::{is_proper as core_is_proper, Conic, ConicAnalysis};
use hjelmslev_core::correspondence::certify as core_certify;
use hjelmslev_core::export;
use hjelmslev_core::mub::{build_mub_set_with_tolerance, MubSet as CoreMubSet, DEFAULT_TOLERANCE};
use hjelmslev_core::plane::{ElementKind, PlaneModel};
use hjelmslev_core::ring::{make_ring, Elem, Ring as CoreRing, RingKind};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<RingKind> {
    match kind {
        "galois" => Ok(RingKind::GaloisRing),
        "dual" => Ok(RingKind::DualNumbers),
        "field" => Ok(RingKind::Field),
        other => Err(PyValueError::new_err(format!(
            "unknown ring kind {other:?}; expected galois, dual or field"
        ))),
    }
}

fn json_string(v: &serde_json::Value) -> String {
    export::to_pretty(v)
}

/// A finite local ring: GR(p², r), GF(q) + eGF(q) or GF(q).
#[pyclass(frozen, module = "hjelmslev")]
struct Ring {
    inner: Arc<CoreRing>,
}

impl Ring {
    fn elem(&self, coeffs: Vec<u32>) -> PyResult<Elem> {
        self.inner.element(&coeffs).map_err(value_error)
    }

    fn out(&self, e: Elem) -> Vec<u32> {
        self.inner.coeffs(e).to_vec()
    }
}

#[pymethods]
impl Ring {
    #[new]
    #[pyo3(signature = (p, r = 1, kind = "galois"))]
    fn new(p: u32, r: u32, kind: &str) -> PyResult<Self> {
        let inner = make_ring(p, r, parse_kind(kind)?, None).map_err(value_error)?;
        Ok(Ring { inner })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let d = self.inner.descriptor();
        format!("Ring(p={}, r={}, kind={:?}, size={})", d.p, d.r, d.kind, d.counts.total)
    }

    /// Coefficient vectors of every element, in index order.
    fn elements(&self) -> Vec<Vec<u32>> {
        self.inner.elements().map(|e| self.out(e)).collect()
    }

    fn add(&self, a: Vec<u32>, b: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.out(self.inner.add(self.elem(a)?, self.elem(b)?)))
    }

    fn mul(&self, a: Vec<u32>, b: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.out(self.inner.mul(self.elem(a)?, self.elem(b)?)))
    }

    fn invert(&self, a: Vec<u32>) -> PyResult<Vec<u32>> {
        let e = self.elem(a)?;
        Ok(self.out(self.inner.invert(e).map_err(value_error)?))
    }

    fn is_unit(&self, a: Vec<u32>) -> PyResult<bool> {
        Ok(self.inner.is_unit(self.elem(a)?))
    }

    fn decompose(&self, a: Vec<u32>) -> PyResult<(Vec<u32>, Vec<u32>)> {
        let (x, y) = self.inner.decompose(self.elem(a)?).map_err(value_error)?;
        Ok((self.out(x), self.out(y)))
    }

    fn teichmuller_set(&self) -> PyResult<Vec<Vec<u32>>> {
        let t = self.inner.teichmuller_set().map_err(value_error)?;
        Ok(t.elements.iter().map(|&e| self.out(e)).collect())
    }

    fn to_json(&self) -> String {
        json_string(&export::ring_json(&self.inner))
    }
}

/// The projective Hjelmslev plane PH(2, R).
#[pyclass(frozen, module = "hjelmslev")]
struct Plane {
    inner: PlaneModel,
}

#[pymethods]
impl Plane {
    #[new]
    fn new(ring: &Ring) -> PyResult<Self> {
        let inner = PlaneModel::enumerate(Arc::clone(&ring.inner)).map_err(value_error)?;
        Ok(Plane { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Plane(points={}, lines={}, q={})",
            self.inner.points().len(),
            self.inner.lines().len(),
            self.inner.ring().q()
        )
    }

    #[getter]
    fn num_points(&self) -> usize {
        self.inner.points().len()
    }

    #[getter]
    fn num_lines(&self) -> usize {
        self.inner.lines().len()
    }

    fn points(&self) -> Vec<Vec<Vec<u32>>> {
        let ring = self.inner.ring();
        self.inner
            .points()
            .iter()
            .map(|p| p.coords.iter().map(|&c| ring.coeffs(c).to_vec()).collect())
            .collect()
    }

    fn points_on_line(&self, line: usize) -> PyResult<Vec<usize>> {
        if line >= self.inner.lines().len() {
            return Err(PyValueError::new_err("line index out of range"));
        }
        Ok(self.inner.points_on_line(line))
    }

    fn neighbour(&self, a: usize, b: usize) -> PyResult<bool> {
        let n = self.inner.points().len();
        if a >= n || b >= n {
            return Err(PyValueError::new_err("point index out of range"));
        }
        Ok(self.inner.neighbour_idx(a, b))
    }

    /// Point neighbour classes as lists of point indices.
    fn neighbour_classes(&self) -> Vec<Vec<usize>> {
        self.inner
            .neighbour_classes(ElementKind::Points)
            .iter()
            .map(|c| c.members.clone())
            .collect()
    }

    fn to_json(&self) -> String {
        json_string(&export::plane_json(&self.inner))
    }

    fn incidence_csv(&self) -> String {
        export::incidence_csv(&self.inner)
    }

    fn neighbour_dot(&self) -> String {
        export::neighbour_dot(&self.inner)
    }
}

fn conic_for(plane: &Plane, coeffs: Option<[i64; 6]>) -> PyResult<Conic> {
    let ring = Arc::clone(plane.inner.ring());
    match coeffs {
        Some(c) => Conic::from_ints(ring, c).map_err(value_error),
        None => Ok(Conic::canonical(ring)),
    }
}

/// Analyses a conic (the canonical x1x3 - x2^2 by default) and returns its
/// JSON report.
#[pyfunction]
#[pyo3(signature = (plane, coeffs = None))]
fn analyse_conic(plane: &Plane, coeffs: Option<[i64; 6]>) -> PyResult<String> {
    let conic = conic_for(plane, coeffs)?;
    let verdict = core_is_proper(&conic, &plane.inner).map_err(value_error)?;
    let analysis = ConicAnalysis::new(conic, &plane.inner).map_err(value_error)?;
    Ok(json_string(&export::conic_json(&analysis, &plane.inner, verdict)))
}

/// "proper", "improper" or "unknown".
#[pyfunction]
fn is_proper(plane: &Plane, coeffs: [i64; 6]) -> PyResult<String> {
    let conic = conic_for(plane, Some(coeffs))?;
    let verdict = core_is_proper(&conic, &plane.inner).map_err(value_error)?;
    Ok(serde_json::to_value(verdict)
        .map_err(value_error)?
        .as_str()
        .unwrap_or_default()
        .to_owned())
}

#[pyfunction]
fn is_arc(plane: &Plane, points: Vec<usize>) -> PyResult<bool> {
    core_is_arc(&points, &plane.inner).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (plane, target = None, time_budget_ms = None))]
fn max_arc_search(plane: &Plane, target: Option<usize>, time_budget_ms: Option<u64>) -> String {
    let options = ArcSearchOptions {
        target,
        time_budget: time_budget_ms.map(Duration::from_millis),
    };
    let result = core_max_arc_search(&plane.inner, options);
    json_string(&export::arc_json(&result, &plane.inner))
}

/// A complete set of q + 1 mutually unbiased bases of ℂ^q.
#[pyclass(frozen, module = "hjelmslev")]
struct MubSet {
    inner: CoreMubSet,
}

#[pymethods]
impl MubSet {
    #[getter]
    fn q(&self) -> usize {
        self.inner.q
    }

    #[getter]
    fn num_bases(&self) -> usize {
        self.inner.bases.len()
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    /// Exact verdict for constructions over roots of unity, else None.
    fn exact(&self) -> Option<bool> {
        self.inner.report.exact
    }

    /// Deviation matrix: diagonal holds Gram deviations, off-diagonal
    /// max | |<u,v>| - 1/sqrt(q) |.
    fn deviations(&self) -> Vec<Vec<f64>> {
        self.inner.report.deviations.clone()
    }

    /// Basis `k` as a list of vectors of (re, im) pairs.
    fn basis(&self, k: usize) -> PyResult<Vec<Vec<(f64, f64)>>> {
        let b = self
            .inner
            .bases
            .get(k)
            .ok_or_else(|| PyValueError::new_err("basis index out of range"))?;
        Ok(b.vectors
            .iter()
            .map(|v| v.iter().map(|c| (c.re, c.im)).collect())
            .collect())
    }

    fn to_json(&self) -> String {
        json_string(&export::mub_json(&self.inner))
    }
}

#[pyfunction]
#[pyo3(signature = (p, r = 1, tol = DEFAULT_TOLERANCE))]
fn build_mub_set(p: u32, r: u32, tol: f64) -> PyResult<MubSet> {
    let inner = build_mub_set_with_tolerance(p, r, tol).map_err(value_error)?;
    Ok(MubSet { inner })
}

/// Runs ring, plane, canonical conic and MUB construction for GR(p², r) and
/// returns the correspondence certificate as JSON.
#[pyfunction]
#[pyo3(signature = (p, r = 1, tol = DEFAULT_TOLERANCE))]
fn certify(p: u32, r: u32, tol: f64) -> PyResult<String> {
    let ring = make_ring(p, r, RingKind::GaloisRing, None).map_err(value_error)?;
    let model = PlaneModel::enumerate(Arc::clone(&ring)).map_err(value_error)?;
    let analysis = ConicAnalysis::new(Conic::canonical(ring), &model).map_err(value_error)?;
    let mubs = build_mub_set_with_tolerance(p, r, tol).map_err(value_error)?;
    let cert = core_certify(&mubs, &analysis, &model, tol).map_err(value_error)?;
    Ok(json_string(&export::certificate_json(&cert)))
}

#[pymodule]
fn hjelmslev(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Plane>()?;
    m.add_class::<MubSet>()?;
    m.add_function(wrap_pyfunction!(analyse_conic, m)?)?;
    m.add_function(wrap_pyfunction!(is_proper, m)?)?;
    m.add_function(wrap_pyfunction!(is_arc, m)?)?;
    m.add_function(wrap_pyfunction!(max_arc_search, m)?)?;
    m.add_function(wrap_pyfunction!(build_mub_set, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    Ok(())
}
