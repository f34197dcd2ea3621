//! C interface to the exact oracles.
//!
//! Graphs are opaque `MtGraph` handles created by `mt_graph_from_graph6` or
//! `mt_graph_from_edges` and released with `mt_graph_free`. Every fallible
//! call returns an `MtStatus`; on failure `mt_last_error` describes the
//! problem until the next call on the same thread. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use minor_toolkit::graph::graph6;
use minor_toolkit::oracles::{self, OracleError};
use minor_toolkit::Graph;

/// Opaque graph handle.
pub struct MtGraph {
    graph: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// The graph exceeds the oracle's exact size limit.
    TooLarge = 4,
    BudgetExhausted = 5,
    /// An internal panic was caught.
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

struct Failure(MtStatus, String);

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let status = match e {
            OracleError::TooLarge { .. } => MtStatus::TooLarge,
            OracleError::BudgetExhausted { .. } => MtStatus::BudgetExhausted,
            OracleError::InvalidArgument(_) => MtStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MtStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MtStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MtStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MtStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const MtGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed(graph: Graph) -> *mut MtGraph {
    Box::into_raw(Box::new(MtGraph { graph }))
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn mt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses one graph6 record (NUL-terminated, optional trailing newline).
///
/// # Safety
/// `text` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_from_graph6(text: *const c_char, out: *mut *mut MtGraph) -> MtStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Failure(MtStatus::ParseError, e.to_string()))?;
        let g = graph6::decode_str(s.trim_end()).map_err(|e| Failure(MtStatus::ParseError, e.to_string()))?;
        out.write(boxed(g));
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` values (it may be null when `m == 0`) and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut MtGraph,
) -> MtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flat: &[usize] = match (edges.is_null(), m) {
            (_, 0) => &[],
            (true, _) => return Err(null("edges")),
            (false, _) => std::slice::from_raw_parts(edges, 2 * m),
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|e| (e[0], e[1])).collect();
        let g = Graph::build(n, &pairs).map_err(|e| Failure(MtStatus::InvalidArgument, e.to_string()))?;
        out.write(boxed(g));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_free(g: *mut MtGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `vertices` and `edges` writable.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_counts(g: *const MtGraph, vertices: *mut usize, edges: *mut usize) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write(vertices, g.vertex_count(), "vertices")?;
        write(edges, g.edge_count(), "edges")
    })
}

/// graph6 encoding; free the result with `mt_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_to_graph6(g: *const MtGraph, out: *mut *mut c_char) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let s = CString::new(graph6::encode(g)).expect("graph6 is printable");
        write(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact chromatic number. When `coloring` is non-null it receives one
/// color per vertex (`0..chi`).
///
/// # Safety
/// `g` must be a live handle, `chi` writable, and `coloring` null or
/// writable for `n` values.
#[no_mangle]
pub unsafe extern "C" fn mt_chromatic_number(g: *const MtGraph, chi: *mut usize, coloring: *mut usize) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if chi.is_null() {
            return Err(null("chi"));
        }
        let c = oracles::chromatic_number(g)?;
        chi.write(c.chi);
        if !coloring.is_null() {
            std::slice::from_raw_parts_mut(coloring, c.coloring.len()).copy_from_slice(&c.coloring);
        }
        Ok(())
    })
}

/// Hadwiger number. `exact` is set to 0 when only a certified lower bound
/// was reached.
///
/// # Safety
/// `g` must be a live handle; `h` and `exact` writable.
#[no_mangle]
pub unsafe extern "C" fn mt_hadwiger_number(g: *const MtGraph, h: *mut usize, exact: *mut bool) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if h.is_null() || exact.is_null() {
            return Err(null("output"));
        }
        let r = oracles::hadwiger_number(g)?;
        h.write(r.h);
        exact.write(r.exact);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `kappa` writable.
#[no_mangle]
pub unsafe extern "C" fn mt_vertex_connectivity(g: *const MtGraph, kappa: *mut usize) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if g.vertex_count() == 0 {
            return Err(Failure(MtStatus::InvalidArgument, "connectivity of the empty graph".into()));
        }
        write(kappa, oracles::vertex_connectivity(g).kappa, "kappa")
    })
}

/// # Safety
/// `g` must be a live handle and `alpha` writable.
#[no_mangle]
pub unsafe extern "C" fn mt_independence_number(g: *const MtGraph, alpha: *mut usize) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if alpha.is_null() {
            return Err(null("alpha"));
        }
        alpha.write(oracles::independence_number(g)?.size);
        Ok(())
    })
}

/// Hall ratio as the reduced fraction `numerator / denominator`.
///
/// # Safety
/// `g` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn mt_hall_ratio(g: *const MtGraph, numerator: *mut i64, denominator: *mut i64) -> MtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if numerator.is_null() || denominator.is_null() {
            return Err(null("output"));
        }
        let rho = oracles::hall_ratio(g)?.rho;
        numerator.write(*rho.numer());
        denominator.write(*rho.denom());
        Ok(())
    })
}
