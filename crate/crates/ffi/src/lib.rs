//! C ABI for `cvgraph`.
//!
//! Graphs and photon-added/subtracted states are opaque handles created by
//! `cvg_*_new`-style constructors and released with the matching `*_free`.
//! Every fallible call returns a [`CvgStatus`]; on failure a message is kept
//! per thread and can be read with [`cvg_last_error_message`].
//!
//! Matrices are exchanged as row-major `double` buffers of size `2m × 2m`,
//! quadratures ordered `(x_1..x_m, p_1..p_m)`, vertices 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cvgraph::graph::{Graph, VertexSet};
use cvgraph::nongauss::{wigner_value, ModeVector, OperationSign, PhotonGraphState, VertexMetrics};
use cvgraph::{Error, SqueezingSpec};
use nalgebra::{Complex, DMatrix};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    VanishingSuccessProbability = 3,
    Numerical = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvgSign {
    Add = 0,
    Subtract = 1,
}

/// Single-vertex indicators, mirroring the library's per-vertex metrics.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CvgVertexMetrics {
    pub kurtosis_x: f64,
    pub kurtosis_p: f64,
    pub purity: f64,
    pub purity_gaussian: f64,
    pub relative_purity: f64,
    pub negativity_trace: f64,
    pub negative: bool,
}

impl From<VertexMetrics> for CvgVertexMetrics {
    fn from(m: VertexMetrics) -> Self {
        Self {
            kurtosis_x: m.kurtosis_x,
            kurtosis_p: m.kurtosis_p,
            purity: m.purity,
            purity_gaussian: m.purity_gaussian,
            relative_purity: m.relative_purity,
            negativity_trace: m.negativity_trace,
            negative: m.negative,
        }
    }
}

/// Opaque graph handle.
pub struct CvgGraph {
    inner: Graph,
}

/// Opaque handle to a graph state after one photon addition or subtraction.
pub struct CvgState {
    inner: PhotonGraphState,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CvgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::VanishingSuccessProbability { .. } => CvgStatus::VanishingSuccessProbability,
            Error::Singular | Error::NonPositiveDeterminant(_) | Error::DegenerateMoment(_) => CvgStatus::Numerical,
            _ => CvgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CvgStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: Option<String>) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    });
}

/// Runs `body`, records its error message and converts panics to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CvgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(None);
            CvgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            CvgStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, needed: usize) -> Result<&'a mut [f64], Failure> {
    if p.is_null() {
        return Err(null("output buffer"));
    }
    if len < needed {
        return Err(Failure(
            CvgStatus::BufferTooSmall,
            format!("output buffer holds {len} values, {needed} needed"),
        ));
    }
    Ok(std::slice::from_raw_parts_mut(p, needed))
}

unsafe fn live<'a>(s: *const CvgState) -> Result<&'a PhotonGraphState, Failure> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("state"))
}

fn copy_matrix(m: &DMatrix<f64>, out: &mut [f64]) {
    let n = m.ncols();
    for r in 0..m.nrows() {
        for c in 0..n {
            out[r * n + c] = m[(r, c)];
        }
    }
}

/// Message describing the last failed call on this thread, or null after a
/// successful one. Valid until the next `cvg_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cvg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `m` vertices from `n_edges` pairs stored flat in `edges`
/// (`2 * n_edges` indices).
///
/// # Safety
/// `edges` must point to `2 * n_edges` readable values (or be null when
/// `n_edges == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvg_graph_from_edges(
    m: usize,
    edges: *const usize,
    n_edges: usize,
    out: *mut *mut CvgGraph,
) -> CvgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flat = slice(edges, 2 * n_edges, "edges")?;
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|e| (e[0], e[1])).collect();
        let inner = Graph::from_edges(m, &pairs)?;
        *out = Box::into_raw(Box::new(CvgGraph { inner }));
        Ok(())
    })
}

/// Triangular lattice with row-major vertex numbering.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvg_graph_triangular(rows: usize, cols: usize, out: *mut *mut CvgGraph) -> CvgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = Graph::triangular_lattice(rows, cols)?;
        *out = Box::into_raw(Box::new(CvgGraph { inner }));
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cvg_graph_vertex_count(graph: *const CvgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cvg_graph_free(graph: *mut CvgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Builds the graph state with per-vertex squeezing `db` (length `m`) and
/// applies one photon addition or subtraction in the mode with coefficients
/// `re + i im` (length `m` each; `im` may be null for real modes). The mode
/// must be normalised to within 1e-12.
///
/// # Safety
/// `graph` must be a live handle, array arguments must hold `m` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_new(
    graph: *const CvgGraph,
    db: *const f64,
    sign: CvgSign,
    re: *const f64,
    im: *const f64,
    out: *mut *mut CvgState,
) -> CvgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let graph = &graph.as_ref().ok_or_else(|| null("graph"))?.inner;
        let m = graph.vertex_count();
        let squeezing = SqueezingSpec::from_db(slice(db, m, "db")?)?;
        let re = slice(re, m, "re")?;
        let coeffs: Vec<Complex<f64>> = if im.is_null() {
            re.iter().map(|&r| Complex::new(r, 0.0)).collect()
        } else {
            re.iter()
                .zip(slice(im, m, "im")?)
                .map(|(&r, &i)| Complex::new(r, i))
                .collect()
        };
        let sign = match sign {
            CvgSign::Add => OperationSign::Add,
            CvgSign::Subtract => OperationSign::Subtract,
        };
        let inner = PhotonGraphState::new(graph.clone(), &squeezing, ModeVector::new(coeffs)?, sign)?;
        *out = Box::into_raw(Box::new(CvgState { inner }));
        Ok(())
    })
}

/// # Safety
/// `state` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_free(state: *mut CvgState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_vertex_count(state: *const CvgState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.graph().vertex_count())
}

/// Copies the `2m × 2m` covariance matrix into `out` (row-major).
///
/// # Safety
/// `state` must be a live handle and `out` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_covariance(state: *const CvgState, out: *mut f64, len: usize) -> CvgStatus {
    guard(|| {
        let v = live(state)?.covariance().matrix();
        copy_matrix(v, out_slice(out, len, v.len())?);
        Ok(())
    })
}

/// Copies the `2m × 2m` non-Gaussian correction matrix into `out` (row-major).
///
/// # Safety
/// `state` must be a live handle and `out` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_nongauss_matrix(state: *const CvgState, out: *mut f64, len: usize) -> CvgStatus {
    guard(|| {
        let a = live(state)?.a().matrix();
        copy_matrix(a, out_slice(out, len, a.len())?);
        Ok(())
    })
}

/// Metrics of the single-vertex reduction on `vertex`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_vertex_metrics(
    state: *const CvgState,
    vertex: usize,
    out: *mut CvgVertexMetrics,
) -> CvgStatus {
    guard(|| {
        let s = live(state)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let m = s.graph().vertex_count();
        if vertex >= m {
            return Err(Error::VertexOutOfRange { index: vertex, m }.into());
        }
        *out = s.vertex_metrics(vertex)?.into();
        Ok(())
    })
}

/// Reduced Wigner function on `n` distinct vertices, evaluated at `beta`
/// (`2n` values ordered `(x_1..x_n, p_1..p_n)` over the vertices sorted
/// ascending).
///
/// # Safety
/// `vertices` must hold `n` values, `beta` `2n` values, `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_wigner(
    state: *const CvgState,
    vertices: *const usize,
    n: usize,
    beta: *const f64,
    out: *mut f64,
) -> CvgStatus {
    guard(|| {
        let s = live(state)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let list = slice(vertices, n, "vertices")?;
        let set = VertexSet::new(list.iter().copied());
        if set.len() != n {
            return Err(Failure(CvgStatus::InvalidArgument, "vertices must be distinct".into()));
        }
        let (v, a) = s.reduce(&set)?;
        *out = wigner_value(&v, &a, slice(beta, 2 * n, "beta")?)?;
        Ok(())
    })
}

/// Largest `|A|` entry outside the closed 2-neighbourhood of the mode's
/// support, and whether it is within the locality tolerance.
///
/// # Safety
/// `state` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvg_state_locality(
    state: *const CvgState,
    max_outside: *mut f64,
    pass: *mut bool,
) -> CvgStatus {
    guard(|| {
        let s = live(state)?;
        if max_outside.is_null() || pass.is_null() {
            return Err(null("output"));
        }
        let cert = s.locality_certificate()?;
        *max_outside = cert.max_outside;
        *pass = cert.pass;
        Ok(())
    })
}
