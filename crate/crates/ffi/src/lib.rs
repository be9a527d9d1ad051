//! C interface to `graphmax`.
//!
//! Every function returns a [`GmStatus`]. On failure the message is kept per thread
//! and read back with [`gm_last_error`]. Vertices are 1-based across this boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphmax::covering::{dilation_index, overlapping_index};
use graphmax::exact::{restricted_norm, strong_norm_exact, weak_norm_delta_lower};
use graphmax::function::FloatFunction;
use graphmax::maximal::eval_maximal;
use graphmax::numeric::{k2_alpha_root, strong_norm_estimate, weak_norm_estimate, OptimizerConfig};
use graphmax::{named_graph, Error, Exponent, Family, Graph};
use num_traits::ToPrimitive;

/// Opaque graph handle. Release with [`gm_graph_free`].
pub struct GmGraph(Graph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGraph = 2,
    InvalidArgument = 3,
    CapExceeded = 4,
    Unsupported = 5,
    Parse = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GmStatus {
    match e {
        Error::DisconnectedGraph | Error::SelfLoop(_) | Error::VertexOutOfRange { .. } | Error::InconsistentMatrix => {
            GmStatus::InvalidGraph
        }
        Error::CapExceeded { .. } => GmStatus::CapExceeded,
        Error::UnsupportedSize { .. } | Error::UnsupportedCombination(_) => GmStatus::Unsupported,
        Error::LengthMismatch { .. } | Error::InvalidExponent { .. } | Error::InvalidArgument(_) => {
            GmStatus::InvalidArgument
        }
        Error::Parse(_) => GmStatus::Parse,
    }
}

enum Fail {
    Null,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GmStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            GmStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            GmStatus::Panic
        }
    }
}

unsafe fn graph<'a>(g: *const GmGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or(Fail::Null)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Lib(Error::Parse("string is not UTF-8".into())))
}

unsafe fn exponent(s: *const c_char) -> Result<Exponent, Fail> {
    Ok(text(s)?.parse()?)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

fn config(n: usize, seed: u64, restarts: usize) -> OptimizerConfig {
    let cfg = OptimizerConfig::for_size(n).with_seed(seed);
    if restarts == 0 {
        cfg
    } else {
        cfg.with_restarts(restarts)
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn gm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph from `edge_count` pairs in `edges` (length `2 * edge_count`, 1-based).
///
/// # Safety
/// `edges` must point to `2 * edge_count` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut GmGraph,
) -> GmStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return Err(Fail::Null);
        }
        let flat = if edge_count == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * edge_count) };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|c| (c[0] as usize, c[1] as usize)).collect();
        let g = Graph::from_edges_one_based(n, &pairs)?;
        out.write(Box::into_raw(Box::new(GmGraph(g))));
        Ok(())
    })
}

/// Builds `complete`, `star`, `path` or `cycle` on `n` vertices.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_named(family: *const c_char, n: usize, out: *mut *mut GmGraph) -> GmStatus {
    guard(|| {
        let family: Family = text(family)?.parse()?;
        let g = named_graph(family, n)?;
        put(out, Box::into_raw(Box::new(GmGraph(g))))
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_free(g: *mut GmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_vertex_count(g: *const GmGraph, out: *mut usize) -> GmStatus {
    guard(|| put(out, graph(g)?.n()))
}

/// Writes `M f` into `out`; both buffers hold `len` values.
///
/// # Safety
/// `f` and `out` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gm_eval_maximal(g: *const GmGraph, f: *const f64, len: usize, out: *mut f64) -> GmStatus {
    guard(|| {
        let g = graph(g)?;
        if f.is_null() || out.is_null() {
            return Err(Fail::Null);
        }
        let f = FloatFunction::new(std::slice::from_raw_parts(f, len).to_vec());
        let m = eval_maximal(g, &f)?;
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(m.values());
        Ok(())
    })
}

/// Exact strong norm for `p <= 1` or `p = inf`. When `text_out` is not null it
/// receives the value as a string (`"p/q"` when rational), freed by [`gm_string_free`].
///
/// # Safety
/// `p` must be a NUL-terminated string; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_strong_norm_exact(
    g: *const GmGraph,
    p: *const c_char,
    value: *mut f64,
    text_out: *mut *mut c_char,
) -> GmStatus {
    guard(|| {
        let r = strong_norm_exact(graph(g)?, &exponent(p)?)?;
        put(value, r.to_f64())?;
        if !text_out.is_null() {
            text_out.write(CString::new(r.value.to_string()).unwrap_or_default().into_raw());
        }
        Ok(())
    })
}

/// Optimizer lower estimate of the strong norm for `p > 1`. `restarts = 0` keeps the
/// default. `witness` may be null, otherwise it receives `n` values.
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn gm_strong_norm_estimate(
    g: *const GmGraph,
    p: *const c_char,
    seed: u64,
    restarts: usize,
    value: *mut f64,
    witness: *mut f64,
) -> GmStatus {
    guard(|| {
        let g = graph(g)?;
        let r = strong_norm_estimate(g, &exponent(p)?, &config(g.n(), seed, restarts))?;
        write_result(&r, g.n(), value, witness)
    })
}

/// Optimizer lower estimate of the weak-type norm, never below the delta bound.
///
/// # Safety
/// Pointers must be valid as described for [`gm_strong_norm_estimate`].
#[no_mangle]
pub unsafe extern "C" fn gm_weak_norm_estimate(
    g: *const GmGraph,
    p: *const c_char,
    seed: u64,
    restarts: usize,
    value: *mut f64,
    witness: *mut f64,
) -> GmStatus {
    guard(|| {
        let g = graph(g)?;
        let e = exponent(p)?;
        let est = weak_norm_estimate(g, &e, &config(g.n(), seed, restarts))?;
        let delta = weak_norm_delta_lower(g, &e)?;
        let best = if delta.to_f64() > est.to_f64() { delta } else { est };
        write_result(&best, g.n(), value, witness)
    })
}

unsafe fn write_result(r: &graphmax::exact::NormResult, n: usize, value: *mut f64, witness: *mut f64) -> Result<(), Fail> {
    put(value, r.to_f64())?;
    if !witness.is_null() {
        let w = std::slice::from_raw_parts_mut(witness, n);
        match &r.witness {
            Some(f) => w.copy_from_slice(f.to_float().values()),
            None => w.fill(f64::NAN),
        }
    }
    Ok(())
}

/// Restricted-type norm (supremum over indicators).
///
/// # Safety
/// `p` must be a NUL-terminated string; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_restricted_norm(g: *const GmGraph, p: *const c_char, value: *mut f64) -> GmStatus {
    guard(|| {
        let r = restricted_norm(graph(g)?, &exponent(p)?)?;
        put(value, r.to_f64())
    })
}

/// Dilation index with the 1-based vertex and radius attaining it. `vertex` and
/// `radius` may be null.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_dilation_index(
    g: *const GmGraph,
    value: *mut f64,
    vertex: *mut usize,
    radius: *mut usize,
) -> GmStatus {
    guard(|| {
        let d = dilation_index(graph(g)?);
        put(value, d.value.to_f64().unwrap_or(f64::NAN))?;
        if !vertex.is_null() {
            vertex.write(d.vertex + 1);
        }
        if !radius.is_null() {
            radius.write(d.radius);
        }
        Ok(())
    })
}

/// Exact overlapping index; fails with `GM_STATUS_CAP_EXCEEDED` on large graphs.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_overlapping_index(g: *const GmGraph, value: *mut usize) -> GmStatus {
    guard(|| put(value, overlapping_index(graph(g)?)?.value))
}

/// Maximizing ratio `alpha` for the two-vertex graph at `p > 1`.
///
/// # Safety
/// `p` must be a NUL-terminated string; `alpha` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gm_k2_alpha_root(p: *const c_char, alpha: *mut f64) -> GmStatus {
    guard(|| put(alpha, k2_alpha_root(&exponent(p)?)?))
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
