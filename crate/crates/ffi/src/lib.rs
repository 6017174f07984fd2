//! C ABI over the `umhs` crate.
//!
//! Hypergraphs and recovery results are opaque heap handles owned by the
//! caller and released with the matching `_free` function. Every fallible
//! call returns a [`UmhsStatus`]; on failure a description is available from
//! [`umhs_last_error_message`] on the same thread. Panics never cross the
//! boundary and are reported as [`UmhsStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use umhs::io::LabelMap;
use umhs::oracle::OracleLimits;
use umhs::recovery::{rank_nodes, umhs_parallel};
use umhs::{Error, HittingSet, Hypergraph, UmhsConfig};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UmhsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidHypergraph = 3,
    Io = 4,
    Oracle = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque hypergraph handle.
pub struct UmhsHypergraph {
    graph: Hypergraph,
    labels: Vec<CString>,
}

/// Opaque handle to the result of a recovery run.
pub struct UmhsRecovery {
    union_set: Vec<usize>,
    ranking: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(UmhsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Io { .. } => UmhsStatus::Io,
            Error::TooLarge(_) | Error::BudgetExceeded { .. } | Error::EnumerationBudget { .. } => {
                UmhsStatus::Oracle
            }
            Error::InvalidParameter(_) | Error::Overflow(_) => UmhsStatus::InvalidArgument,
            _ => UmhsStatus::InvalidHypergraph,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(UmhsStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UmhsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UmhsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            UmhsStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be null or valid for reads of `len` elements.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn numeric_labels(n: usize) -> Vec<CString> {
    (0..n).map(|v| CString::new(v.to_string()).expect("digits contain no NUL")).collect()
}

fn label_strings(labels: &LabelMap) -> Vec<CString> {
    (0..labels.len()).map(|v| CString::new(labels.label(v).replace('\0', " ")).unwrap_or_default()).collect()
}

/// Copies `items` into `out`, reporting the full length in `written`.
///
/// # Safety
/// `out` must be valid for writes of `capacity` elements; `written` must be
/// valid for one write.
unsafe fn copy_out(
    items: &[usize],
    out: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> Result<(), Failure> {
    if written.is_null() {
        return Err(null("written"));
    }
    *written = items.len();
    if items.len() > capacity {
        return Err(Failure(
            UmhsStatus::BufferTooSmall,
            format!("buffer holds {capacity} entries, {} needed", items.len()),
        ));
    }
    if !items.is_empty() {
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(items.as_ptr(), out, items.len());
    }
    Ok(())
}

/// Builds a hypergraph on nodes `0..node_count` from edges in compressed
/// form: edge `i` consists of `members[offsets[i] .. offsets[i + 1]]`.
/// `offsets` has `edge_count + 1` entries.
///
/// # Safety
/// `members` must be valid for `offsets[edge_count]` reads, `offsets` for
/// `edge_count + 1` reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_from_edges(
    node_count: usize,
    members: *const usize,
    offsets: *const usize,
    edge_count: usize,
    out: *mut *mut UmhsHypergraph,
) -> UmhsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let offsets = slice(offsets, edge_count + 1, "offsets")?;
        let total = if edge_count == 0 { 0 } else { offsets[edge_count] };
        let members = slice(members, total, "members")?;
        let mut edges = Vec::with_capacity(edge_count);
        for i in 0..edge_count {
            let (start, end) = (offsets[i], offsets[i + 1]);
            if start > end || end > total {
                return Err(Failure(
                    UmhsStatus::InvalidArgument,
                    format!("offsets[{i}..={}] out of order", i + 1),
                ));
            }
            edges.push(&members[start..end]);
        }
        let graph = Hypergraph::new(node_count, &edges)?;
        *out = Box::into_raw(Box::new(UmhsHypergraph { graph, labels: numeric_labels(node_count) }));
        Ok(())
    })
}

/// Reads a hyperedge-list file. Node indices follow first appearance of
/// each token; [`umhs_hypergraph_label`] maps them back.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_read(
    path: *const c_char,
    out: *mut *mut UmhsHypergraph,
) -> UmhsStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure(UmhsStatus::InvalidArgument, "path is not UTF-8".into()))?;
        let (graph, labels) = umhs::io::read_hypergraph(path)?;
        *out = Box::into_raw(Box::new(UmhsHypergraph { graph, labels: label_strings(&labels) }));
        Ok(())
    })
}

/// Releases a hypergraph. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_free(h: *mut UmhsHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of nodes; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_node_count(h: *const UmhsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.graph.node_count())
}

/// Number of distinct edges; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_edge_count(h: *const UmhsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// The file token of node `v`, or null when out of range. The string lives
/// as long as the handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_label(h: *const UmhsHypergraph, v: usize) -> *const c_char {
    h.as_ref().and_then(|h| h.labels.get(v)).map_or(ptr::null(), |s| s.as_ptr())
}

/// Whether `nodes` hits every edge.
///
/// # Safety
/// `h` must be a live handle, `nodes` valid for `len` reads and `out` for
/// one write.
#[no_mangle]
pub unsafe extern "C" fn umhs_hypergraph_is_hitting_set(
    h: *const UmhsHypergraph,
    nodes: *const usize,
    len: usize,
    out: *mut bool,
) -> UmhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("hypergraph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let nodes = slice(nodes, len, "nodes")?;
        if let Some(&v) = nodes.iter().find(|&&v| v >= h.graph.node_count()) {
            return Err(Failure(UmhsStatus::InvalidArgument, format!("node {v} out of range")));
        }
        let set: HittingSet = nodes.iter().copied().collect();
        *out = h.graph.is_hitting_set(&set);
        Ok(())
    })
}

/// Size of a minimum hitting set, by the exact oracle with default limits.
///
/// # Safety
/// `h` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn umhs_min_hitting_set_size(h: *const UmhsHypergraph, out: *mut usize) -> UmhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("hypergraph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = umhs::oracle::min_hitting_set_size(&h.graph, &OracleLimits::default())?;
        Ok(())
    })
}

/// Runs UMHS for `iterations` rounds (at least one) under `seed`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn umhs_recover(
    h: *const UmhsHypergraph,
    iterations: usize,
    seed: u64,
    out: *mut *mut UmhsRecovery,
) -> UmhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("hypergraph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if iterations == 0 {
            return Err(Failure(UmhsStatus::InvalidArgument, "iterations must be at least 1".into()));
        }
        let result = umhs_parallel(&h.graph, &UmhsConfig::new(iterations, seed), None);
        let ranking = rank_nodes(&h.graph, &result.union_set).order().to_vec();
        *out = Box::into_raw(Box::new(UmhsRecovery { union_set: result.union_set.to_vec(), ranking }));
        Ok(())
    })
}

/// Releases a recovery result. Null is ignored.
///
/// # Safety
/// `r` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn umhs_recovery_free(r: *mut UmhsRecovery) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of recovered nodes; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn umhs_recovery_union_size(r: *const UmhsRecovery) -> usize {
    r.as_ref().map_or(0, |r| r.union_set.len())
}

/// Copies the recovered nodes, ascending, into `out`. `written` receives the
/// full count even when the buffer is too small.
///
/// # Safety
/// `r` must be a live handle, `out` valid for `capacity` writes and
/// `written` for one write.
#[no_mangle]
pub unsafe extern "C" fn umhs_recovery_union(
    r: *const UmhsRecovery,
    out: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> UmhsStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("recovery"))?;
        copy_out(&r.union_set, out, capacity, written)
    })
}

/// Copies the node ranking (recovered nodes first, each block by degree)
/// into `out`. Its length is the node count.
///
/// # Safety
/// As for [`umhs_recovery_union`].
#[no_mangle]
pub unsafe extern "C" fn umhs_recovery_ranking(
    r: *const UmhsRecovery,
    out: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> UmhsStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("recovery"))?;
        copy_out(&r.ranking, out, capacity, written)
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn umhs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn umhs_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
