//! C ABI for the unex toolkit.
//!
//! Conventions:
//! - Every fallible function returns a [`UnexStatus`]; results go through
//!   out-pointers that are written only on success.
//! - Objects are opaque handles released with the matching `*_free`.
//! - Strings returned through `char **` are owned by the caller and released
//!   with [`unex_string_free`].
//! - After a failure, [`unex_last_error`] describes it. The pointer stays valid
//!   until the next call on the same thread.
//! - Panics never cross the boundary; they surface as `UNEX_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use unex::codes::{self, ParityCheckMatrix};
use unex::compose::{self, PipelineConfig};
use unex::graph::{BipartiteGraph, RegularGraph};
use unex::inner::{search_inner, InnerProperty, InnerSearchSpec, InnerTarget};
use unex::spectral::{self, SpectrumMethod};
use unex::verify::{self, Budget, ExpansionParams, ExpansionVerdict, Status, VerifyOptions};
use unex::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnexStatus {
    Ok = 0,
    /// Null pointer or non-UTF-8 string argument.
    NullOrInvalidArgument = 1,
    InvalidParameter = 2,
    Precondition = 3,
    OutOfRange = 4,
    SideMismatch = 5,
    LoopsPresent = 6,
    Disconnected = 7,
    NotConverged = 8,
    GuardExceeded = 9,
    SearchExhausted = 10,
    Parse = 11,
    Panic = 12,
}

impl From<&Error> for UnexStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) => UnexStatus::InvalidParameter,
            Error::Precondition(_) => UnexStatus::Precondition,
            Error::OutOfRange { .. } => UnexStatus::OutOfRange,
            Error::SideMismatch { .. } => UnexStatus::SideMismatch,
            Error::LoopsPresent(_) => UnexStatus::LoopsPresent,
            Error::Disconnected => UnexStatus::Disconnected,
            Error::NotConverged { .. } => UnexStatus::NotConverged,
            Error::GuardExceeded { .. } => UnexStatus::GuardExceeded,
            Error::SearchExhausted { .. } => UnexStatus::SearchExhausted,
            Error::Parse { .. } => UnexStatus::Parse,
        }
    }
}

/// Expansion property for [`unex_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnexProperty {
    Combinatorial = 0,
    UniqueNeighbor = 1,
    UniqueNeighborFraction = 2,
}

/// Verdict status for [`UnexVerdict`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnexVerdictStatus {
    Certified = 0,
    Tested = 1,
    Refuted = 2,
}

/// Verification budget; pass NULL for the defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UnexBudget {
    pub max_enumerated: u64,
    pub samples_per_class: u64,
    /// Sample every size class above this; 0 means no limit.
    pub exhaustive_max_size: usize,
}

/// Summary of an expansion check. The full verdict, including the witness,
/// is available as JSON.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UnexVerdict {
    pub status: UnexVerdictStatus,
    pub max_eligible_size: usize,
    pub enumerated: u64,
    pub sampled: u64,
    /// Size of the witness subset; 0 unless refuted.
    pub witness_size: usize,
    pub witness_count: usize,
    pub witness_required: usize,
}

pub struct UnexRegularGraph(RegularGraph);
pub struct UnexBipartiteGraph(BipartiteGraph);
pub struct UnexMatrix(ParityCheckMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("nul bytes removed"));
}

enum Failure {
    Argument(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> UnexStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            UnexStatus::Ok
        }
        Ok(Err(Failure::Argument(what))) => {
            set_error(what);
            UnexStatus::NullOrInvalidArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            UnexStatus::from(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            UnexStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Argument(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Argument(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Argument(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Argument(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn boxed<T>(x: T) -> *mut T {
    Box::into_raw(Box::new(x))
}

fn workers(n: usize) -> usize {
    n.max(1)
}

// ------------------------------------------------------------------ general

/// Message for the most recent failure on this thread ("" after success).
#[no_mangle]
pub extern "C" fn unex_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn unex_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn unex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ------------------------------------------------------------ regular graphs

#[no_mangle]
pub unsafe extern "C" fn unex_regular_gabber_galil(m: usize, result: *mut *mut UnexRegularGraph) -> UnexStatus {
    guard(|| {
        let slot = out(result, "result")?;
        *slot = boxed(UnexRegularGraph(spectral::gabber_galil(m)?));
        Ok(())
    })
}

/// Circulant graph on `Z_n`; the connection set is closed under negation.
#[no_mangle]
pub unsafe extern "C" fn unex_regular_circulant(
    n: usize,
    conn: *const usize,
    conn_len: usize,
    result: *mut *mut UnexRegularGraph,
) -> UnexStatus {
    guard(|| {
        if conn.is_null() && conn_len > 0 {
            return Err(Failure::Argument("conn"));
        }
        let list = if conn_len == 0 { &[][..] } else { std::slice::from_raw_parts(conn, conn_len) };
        let slot = out(result, "result")?;
        let closed = spectral::symmetric_closure(n, list);
        *slot = boxed(UnexRegularGraph(spectral::circulant(n, &closed)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_regular_complete(n: usize, result: *mut *mut UnexRegularGraph) -> UnexStatus {
    guard(|| {
        let slot = out(result, "result")?;
        *slot = boxed(UnexRegularGraph(spectral::complete(n)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_regular_petersen(result: *mut *mut UnexRegularGraph) -> UnexStatus {
    guard(|| {
        let slot = out(result, "result")?;
        *slot = boxed(UnexRegularGraph(spectral::petersen()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_regular_from_text(s: *const c_char, result: *mut *mut UnexRegularGraph) -> UnexStatus {
    guard(|| {
        let t = text(s, "text")?;
        let slot = out(result, "result")?;
        *slot = boxed(UnexRegularGraph(RegularGraph::from_text(t)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_regular_to_text(g: *const UnexRegularGraph, result: *mut *mut c_char) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        *out(result, "result")? = owned_string(g.0.to_text());
        Ok(())
    })
}

/// Vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn unex_regular_vertices(g: *const UnexRegularGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

#[no_mangle]
pub unsafe extern "C" fn unex_regular_power(
    g: *const UnexRegularGraph,
    k: u32,
    result: *mut *mut UnexRegularGraph,
) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(result, "result")?;
        *slot = boxed(UnexRegularGraph(spectral::power(&g.0, k)?));
        Ok(())
    })
}

/// Exact second eigenvalue. `mixing_lambda` (nullable) receives the bound
/// valid in the mixing lemma, which is `d` for bipartite graphs.
#[no_mangle]
pub unsafe extern "C" fn unex_regular_lambda(
    g: *const UnexRegularGraph,
    lambda: *mut f64,
    mixing_lambda: *mut f64,
) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(lambda, "lambda")?;
        let r = spectral::lambda_of(&g.0, SpectrumMethod::default())?;
        *slot = r.lambda;
        if let Some(m) = mixing_lambda.as_mut() {
            *m = r.mixing_lambda();
        }
        Ok(())
    })
}

/// Edge-vertex incidence graph; loops are removed first when `strip_loops`.
#[no_mangle]
pub unsafe extern "C" fn unex_regular_incidence(
    g: *const UnexRegularGraph,
    strip_loops: bool,
    result: *mut *mut UnexBipartiteGraph,
) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(result, "result")?;
        let b = if strip_loops {
            g.0.strip_loops().0.edge_vertex_incidence()?
        } else {
            g.0.edge_vertex_incidence()?
        };
        *slot = boxed(UnexBipartiteGraph(b));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_regular_free(g: *mut UnexRegularGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

// ---------------------------------------------------------- bipartite graphs

/// Bipartite graph from an edge list given as `edge_count` pairs
/// `(left, right)` flattened into `edges`.
#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_new(
    n_left: usize,
    n_right: usize,
    edges: *const usize,
    edge_count: usize,
    result: *mut *mut UnexBipartiteGraph,
) -> UnexStatus {
    guard(|| {
        if edges.is_null() && edge_count > 0 {
            return Err(Failure::Argument("edges"));
        }
        let flat = if edge_count == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * edge_count) };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let slot = out(result, "result")?;
        *slot = boxed(UnexBipartiteGraph(BipartiteGraph::new(n_left, n_right, &pairs)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_from_text(
    s: *const c_char,
    result: *mut *mut UnexBipartiteGraph,
) -> UnexStatus {
    guard(|| {
        let t = text(s, "text")?;
        let slot = out(result, "result")?;
        *slot = boxed(UnexBipartiteGraph(BipartiteGraph::from_text(t)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_to_text(g: *const UnexBipartiteGraph, result: *mut *mut c_char) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        *out(result, "result")? = owned_string(g.0.to_text());
        Ok(())
    })
}

/// Left vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_n_left(g: *const UnexBipartiteGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n_left())
}

/// Right vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_n_right(g: *const UnexBipartiteGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n_right())
}

/// Common left degree, or 0 when the graph is not left-regular.
#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_left_degree(g: *const UnexBipartiteGraph) -> usize {
    g.as_ref().and_then(|g| g.0.left_regular_degree()).unwrap_or(0)
}

/// Routed product `outer ∘ inner`. With `deficient`, outer right degrees may
/// be smaller than the inner left size.
#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_product(
    outer: *const UnexBipartiteGraph,
    inner: *const UnexBipartiteGraph,
    deficient: bool,
    result: *mut *mut UnexBipartiteGraph,
) -> UnexStatus {
    guard(|| {
        let o = arg(outer, "outer")?;
        let i = arg(inner, "inner")?;
        let slot = out(result, "result")?;
        let p = if deficient {
            compose::routed_product_deficient(&o.0, &i.0)?
        } else {
            compose::routed_product(&o.0, &i.0)?
        };
        *slot = boxed(UnexBipartiteGraph(p));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_bipartite_free(g: *mut UnexBipartiteGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

// -------------------------------------------------------------- verification

unsafe fn options(budget: *const UnexBudget, seed: u64, n_workers: usize) -> VerifyOptions {
    let budget = budget.as_ref().map_or_else(Budget::default, |b| Budget {
        max_enumerated: b.max_enumerated,
        samples_per_class: b.samples_per_class,
        exhaustive_max_size: (b.exhaustive_max_size > 0).then_some(b.exhaustive_max_size),
    });
    VerifyOptions {
        budget,
        seed,
        reference_degree: None,
        workers: workers(n_workers),
    }
}

fn summarize(v: &ExpansionVerdict) -> UnexVerdict {
    let w = v.witness.as_ref();
    UnexVerdict {
        status: match v.status {
            Status::Certified => UnexVerdictStatus::Certified,
            Status::Tested => UnexVerdictStatus::Tested,
            Status::Refuted => UnexVerdictStatus::Refuted,
        },
        max_eligible_size: v.max_eligible_size,
        enumerated: v.enumerated,
        sampled: v.sampled,
        witness_size: w.map_or(0, |w| w.subset.len()),
        witness_count: w.map_or(0, |w| w.count),
        witness_required: w.map_or(0, |w| w.required),
    }
}

/// Checks an expansion property. `alpha` is ignored for
/// `UnexProperty_UniqueNeighbor`. `json` (nullable) receives the full verdict.
#[no_mangle]
pub unsafe extern "C" fn unex_check(
    g: *const UnexBipartiteGraph,
    property: UnexProperty,
    delta: f64,
    alpha: f64,
    budget: *const UnexBudget,
    seed: u64,
    n_workers: usize,
    result: *mut UnexVerdict,
    json: *mut *mut c_char,
) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(result, "result")?;
        let (prop, alpha) = match property {
            UnexProperty::Combinatorial => (verify::Property::Combinatorial, Some(alpha)),
            UnexProperty::UniqueNeighbor => (verify::Property::UniqueNeighbor, None),
            UnexProperty::UniqueNeighborFraction => (verify::Property::UniqueNeighborFraction, Some(alpha)),
        };
        let params = ExpansionParams::new(delta, alpha)?;
        let v = verify::check(&g.0, prop, params, &options(budget, seed, n_workers))?;
        *slot = summarize(&v);
        if let Some(j) = json.as_mut() {
            *j = owned_string(serde_json::to_string(&v).expect("verdict serializes"));
        }
        Ok(())
    })
}

/// Random search for an exhaustively certified inner graph. Pass NaN for
/// `alpha` to ask for plain unique-neighbor expansion.
#[no_mangle]
pub unsafe extern "C" fn unex_inner_search(
    n_left: usize,
    degree: usize,
    n_right: usize,
    delta: f64,
    alpha: f64,
    combinatorial: bool,
    seed: u64,
    max_attempts: usize,
    n_workers: usize,
    result: *mut *mut UnexBipartiteGraph,
) -> UnexStatus {
    guard(|| {
        let slot = out(result, "result")?;
        let target = InnerTarget {
            delta,
            alpha: (!alpha.is_nan()).then_some(alpha),
            property: if combinatorial {
                InnerProperty::Combinatorial
            } else {
                InnerProperty::UniqueNeighbor
            },
        };
        let mut spec = InnerSearchSpec::new(n_left, degree, n_right, target, seed);
        spec.max_attempts = max_attempts;
        let found = search_inner(&spec, workers(n_workers))?;
        *slot = boxed(UnexBipartiteGraph(found.graph));
        Ok(())
    })
}

/// Runs the spectral pipeline from a TOML configuration. `dossier` (nullable)
/// receives the dossier as JSON; `any_refuted` (nullable) reports whether any
/// claim was refuted.
#[no_mangle]
pub unsafe extern "C" fn unex_pipeline_spectral(
    config_toml: *const c_char,
    n_workers: usize,
    product: *mut *mut UnexBipartiteGraph,
    dossier: *mut *mut c_char,
    any_refuted: *mut bool,
) -> UnexStatus {
    guard(|| {
        let cfg = PipelineConfig::from_toml(text(config_toml, "config")?)?;
        let slot = out(product, "product")?;
        let p = compose::pipeline_spectral(&cfg, workers(n_workers))?;
        if let Some(d) = dossier.as_mut() {
            *d = owned_string(serde_json::to_string(&p.dossier).expect("dossier serializes"));
        }
        if let Some(r) = any_refuted.as_mut() {
            *r = p.dossier.any_refuted();
        }
        *slot = boxed(UnexBipartiteGraph(p.product));
        Ok(())
    })
}

/// Runs the combinatorial pipeline on a given outer graph.
#[no_mangle]
pub unsafe extern "C" fn unex_pipeline_comb(
    outer: *const UnexBipartiteGraph,
    config_toml: *const c_char,
    n_workers: usize,
    product: *mut *mut UnexBipartiteGraph,
    dossier: *mut *mut c_char,
    any_refuted: *mut bool,
) -> UnexStatus {
    guard(|| {
        let o = arg(outer, "outer")?;
        let cfg = PipelineConfig::from_toml(text(config_toml, "config")?)?;
        let slot = out(product, "product")?;
        let p = compose::pipeline_comb(&o.0, &cfg, workers(n_workers))?;
        if let Some(d) = dossier.as_mut() {
            *d = owned_string(serde_json::to_string(&p.dossier).expect("dossier serializes"));
        }
        if let Some(r) = any_refuted.as_mut() {
            *r = p.dossier.any_refuted();
        }
        *slot = boxed(UnexBipartiteGraph(p.product));
        Ok(())
    })
}

// --------------------------------------------------------------------- codes

/// Parity-check matrix with one row per right vertex.
#[no_mangle]
pub unsafe extern "C" fn unex_matrix_ss1(g: *const UnexBipartiteGraph, result: *mut *mut UnexMatrix) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        *out(result, "result")? = boxed(UnexMatrix(codes::ss1_matrix(&g.0)));
        Ok(())
    })
}

/// Local-code construction: every right vertex applies the rows of `local`
/// to its ordered slots.
#[no_mangle]
pub unsafe extern "C" fn unex_matrix_ss2(
    g: *const UnexBipartiteGraph,
    local: *const UnexMatrix,
    result: *mut *mut UnexMatrix,
) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let h0 = arg(local, "local")?;
        let slot = out(result, "result")?;
        *slot = boxed(UnexMatrix(codes::ss2_matrix(&g.0, &h0.0)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_matrix_from_alist(s: *const c_char, result: *mut *mut UnexMatrix) -> UnexStatus {
    guard(|| {
        let t = text(s, "text")?;
        let slot = out(result, "result")?;
        *slot = boxed(UnexMatrix(codes::import_alist(t)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_matrix_to_alist(h: *const UnexMatrix, result: *mut *mut c_char) -> UnexStatus {
    guard(|| {
        let h = arg(h, "matrix")?;
        *out(result, "result")? = owned_string(codes::export_alist(&h.0));
        Ok(())
    })
}

/// Row count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn unex_matrix_rows(h: *const UnexMatrix) -> usize {
    h.as_ref().map_or(0, |h| h.0.rows())
}

/// Column count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn unex_matrix_cols(h: *const UnexMatrix) -> usize {
    h.as_ref().map_or(0, |h| h.0.cols())
}

#[no_mangle]
pub unsafe extern "C" fn unex_matrix_get(h: *const UnexMatrix, row: usize, col: usize, value: *mut bool) -> UnexStatus {
    guard(|| {
        let h = arg(h, "matrix")?;
        let slot = out(value, "value")?;
        if row >= h.0.rows() {
            return Err(Error::OutOfRange { what: "matrix rows", index: row, size: h.0.rows() }.into());
        }
        if col >= h.0.cols() {
            return Err(Error::OutOfRange { what: "matrix columns", index: col, size: h.0.cols() }.into());
        }
        *slot = h.0.get(row, col);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_matrix_rank(h: *const UnexMatrix, rank: *mut usize) -> UnexStatus {
    guard(|| {
        let h = arg(h, "matrix")?;
        *out(rank, "rank")? = codes::gf2_rank(&h.0);
        Ok(())
    })
}

/// Exhaustive minimum distance; -1 when the code is `{0}`.
#[no_mangle]
pub unsafe extern "C" fn unex_matrix_distance(
    h: *const UnexMatrix,
    dim_guard: usize,
    n_workers: usize,
    distance: *mut i64,
) -> UnexStatus {
    guard(|| {
        let h = arg(h, "matrix")?;
        let slot = out(distance, "distance")?;
        *slot = match codes::min_distance_exhaustive(&h.0, dim_guard, workers(n_workers))? {
            codes::Distance::Finite(d) => d as i64,
            codes::Distance::Infinite => -1,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn unex_matrix_free(h: *mut UnexMatrix) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Distance lower bound of the parity code of `g` from a unique-neighbor
/// check at `delta`. Fails with `UNEX_STATUS_PRECONDITION` unless the check
/// certifies.
#[no_mangle]
pub unsafe extern "C" fn unex_distance_lower_bound(
    g: *const UnexBipartiteGraph,
    delta: f64,
    budget: *const UnexBudget,
    seed: u64,
    n_workers: usize,
    bound: *mut usize,
) -> UnexStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(bound, "bound")?;
        let v = verify::check_un(&g.0, delta, &options(budget, seed, n_workers))?;
        *slot = codes::distance_lb_from_un(&g.0, &v)?;
        Ok(())
    })
}

/// Whether the parity code of `outer ∘ inner` equals the local-code
/// construction on `outer` with the parity code of `inner`.
#[no_mangle]
pub unsafe extern "C" fn unex_routed_equivalence(
    outer: *const UnexBipartiteGraph,
    inner: *const UnexBipartiteGraph,
    equal: *mut bool,
) -> UnexStatus {
    guard(|| {
        let o = arg(outer, "outer")?;
        let i = arg(inner, "inner")?;
        let slot = out(equal, "equal")?;
        *slot = codes::routed_ss2_equivalence(&o.0, &i.0)?.equal;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        let status = unsafe { unex_regular_complete(4, ptr::null_mut()) };
        assert_eq!(status, UnexStatus::NullOrInvalidArgument);
        let msg = unsafe { CStr::from_ptr(unex_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "result");
    }

    #[test]
    fn core_errors_map_to_codes() {
        let mut g = ptr::null_mut();
        assert_eq!(unsafe { unex_regular_gabber_galil(1, &mut g) }, UnexStatus::InvalidParameter);
        assert!(g.is_null());
        assert_eq!(UnexStatus::from(&Error::Disconnected), UnexStatus::Disconnected);
    }

    #[test]
    fn success_clears_last_error() {
        let mut g = ptr::null_mut();
        unsafe {
            unex_regular_gabber_galil(1, &mut g);
            assert_eq!(unex_regular_petersen(&mut g), UnexStatus::Ok);
            assert_eq!(CStr::from_ptr(unex_last_error()).to_bytes(), b"");
            assert_eq!(unex_regular_vertices(g), 10);
            unex_regular_free(g);
        }
    }
}
