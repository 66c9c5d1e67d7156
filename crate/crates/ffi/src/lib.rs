//! C interface to the pathway-assembly library.
//!
//! Fallible functions return a [`PaStatus`]. After a failure,
//! [`pa_last_error`] describes it; the message belongs to the calling
//! thread and stays valid until that thread's next failing call. Objects
//! cross the boundary as opaque handles, each freed by its `_free`
//! function. A null config pointer means the default search settings.
//! Panics are caught at the boundary and reported as `PA_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathway_assembly::compress::{
    lzw_compress, lzw_decompress, pa_compress as encode_pa, pa_decompress as decode_pa, CodeStream, CodecError,
    LZW_MAGIC, PA_MAGIC,
};
use pathway_assembly::graphs::{canonical_form, graph_assembly_index, ColouredGraph};
use pathway_assembly::groups::{element_assembly_index, FiniteGroup};
use pathway_assembly::numbers::AdditionSystem;
use pathway_assembly::strings::{str_from_bytes, string_assembly_index, TextSystem};
use pathway_assembly::{
    assembly_index, chains::optimal_chain_length, schonhage_lower_bound, Algorithm, AssemblyError, IndexResult,
    SearchConfig,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    BoundExceeded = 4,
    Malformed = 5,
    Unreachable = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaAlgorithm {
    Exhaustive = 0,
    Tree = 1,
    Sampled = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaCodec {
    Pathway = 0,
    Lzw = 1,
}

/// An index with its bounds. When a search fails with
/// `PA_STATUS_BOUND_EXCEEDED` or `PA_STATUS_BUDGET_EXCEEDED` the bounds
/// found so far are still written; an unknown upper bound is `SIZE_MAX`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PaIndex {
    pub index: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub exact: bool,
    /// Steps in the witness pathway.
    pub witness_steps: usize,
}

/// Search settings.
pub struct PaConfig(SearchConfig);

/// A coloured graph under construction.
pub struct PaGraph(ColouredGraph);

/// A finite group.
pub struct PaGroup(FiniteGroup);

/// Bytes owned by the library.
pub struct PaBuffer(Vec<u8>);

struct Failure(PaStatus, String);

impl From<AssemblyError> for Failure {
    fn from(e: AssemblyError) -> Self {
        let status = match e {
            AssemblyError::BoundExceeded { .. } => PaStatus::BoundExceeded,
            AssemblyError::BudgetExceeded(_) | AssemblyError::SearchIncomplete { .. } => PaStatus::BudgetExceeded,
            AssemblyError::UnreachableElement(_) => PaStatus::Unreachable,
            _ => PaStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::Assembly(a) => a.into(),
            CodecError::Malformed { .. } | CodecError::BadMagic { .. } => Failure(PaStatus::Malformed, e.to_string()),
            _ => Failure(PaStatus::InvalidArgument, e.to_string()),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PaStatus::Ok,
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
            PaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn config(cfg: *const PaConfig) -> SearchConfig {
    cfg.as_ref().map(|c| c.0.clone()).unwrap_or_default()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Runs an index computation, writing the result or the partial bounds.
fn write_index<O: Clone + PartialEq>(out: &mut PaIndex, r: pathway_assembly::Result<IndexResult<O>>) -> Result<(), Failure> {
    match r {
        Ok(r) => {
            *out = PaIndex {
                index: r.index,
                lower_bound: r.lower_bound,
                upper_bound: r.upper_bound,
                exact: r.exact,
                witness_steps: r.witness.len(),
            };
            Ok(())
        }
        Err(e) => {
            if let AssemblyError::BoundExceeded {
                lower_bound,
                upper_bound,
            }
            | AssemblyError::SearchIncomplete {
                lower_bound,
                upper_bound,
            } = e
            {
                *out = PaIndex {
                    lower_bound,
                    upper_bound: upper_bound.unwrap_or(usize::MAX),
                    ..PaIndex::default()
                };
            }
            Err(e.into())
        }
    }
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The calling thread's last error message, or null if none. Do not free.
#[no_mangle]
pub extern "C" fn pa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn pa_config_new() -> *mut PaConfig {
    boxed(PaConfig(SearchConfig::default()))
}

/// # Safety
/// `cfg` must come from `pa_config_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pa_config_free(cfg: *mut PaConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a live config handle.
#[no_mangle]
pub unsafe extern "C" fn pa_config_set_algorithm(cfg: *mut PaConfig, algorithm: PaAlgorithm) -> PaStatus {
    guard(|| {
        out_ref(cfg, "cfg")?.0.algorithm = match algorithm {
            PaAlgorithm::Exhaustive => Algorithm::Exhaustive,
            PaAlgorithm::Tree => Algorithm::Tree,
            PaAlgorithm::Sampled => Algorithm::Sampled,
        };
        Ok(())
    })
}

/// Searches fail once the index is known to exceed `max_index`.
///
/// # Safety
/// `cfg` must be a live config handle.
#[no_mangle]
pub unsafe extern "C" fn pa_config_set_max_index(cfg: *mut PaConfig, max_index: usize) -> PaStatus {
    guard(|| {
        out_ref(cfg, "cfg")?.0.max_index = Some(max_index);
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live config handle.
#[no_mangle]
pub unsafe extern "C" fn pa_config_clear_max_index(cfg: *mut PaConfig) -> PaStatus {
    guard(|| {
        out_ref(cfg, "cfg")?.0.max_index = None;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live config handle.
#[no_mangle]
pub unsafe extern "C" fn pa_config_set_seed(cfg: *mut PaConfig, seed: u64) -> PaStatus {
    guard(|| {
        out_ref(cfg, "cfg")?.0.seed = seed;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live config handle.
#[no_mangle]
pub unsafe extern "C" fn pa_config_set_budget(cfg: *mut PaConfig, node_budget: u64) -> PaStatus {
    guard(|| {
        out_ref(cfg, "cfg")?.0.node_budget = node_budget;
        Ok(())
    })
}

/// Shortest addition chain length for `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_chain_length(n: u64, out: *mut u32) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = optimal_chain_length(n)?.length as u32;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn pa_schonhage_lower_bound(n: u64) -> u32 {
    schonhage_lower_bound(n)
}

/// Assembly index of the positive integer `n` under addition.
///
/// # Safety
/// `cfg` is null or a live config handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_number_index(cfg: *const PaConfig, n: u64, out: *mut PaIndex) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        write_index(out, assembly_index(&AdditionSystem, &n, &config(cfg)))
    })
}

/// Assembly index of a byte string. With `allow_reversal`, reversed parts
/// may be reused.
///
/// # Safety
/// `text` points to `len` readable bytes; `cfg` is null or live; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_string_index(
    cfg: *const PaConfig,
    text: *const u8,
    len: usize,
    allow_reversal: bool,
    out: *mut PaIndex,
) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let s = str_from_bytes(slice(text, len, "text")?);
        let sys = TextSystem::for_text(&s, allow_reversal)?;
        write_index(out, string_assembly_index(&sys, &s, &config(cfg)))
    })
}

/// A graph with `n` nodes coloured `colours[0..n]` and no edges.
///
/// # Safety
/// `colours` points to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_graph_new(colours: *const u32, n: usize, out: *mut *mut PaGraph) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(PaGraph(ColouredGraph::new(slice(colours, n, "colours")?.to_vec())));
        Ok(())
    })
}

/// # Safety
/// `g` must come from `pa_graph_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pa_graph_free(g: *mut PaGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Adds the undirected edge `u-v` with an edge label.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn pa_graph_add_edge(g: *mut PaGraph, u: usize, v: usize, label: u8) -> PaStatus {
    guard(|| Ok(out_ref(g, "g")?.0.add_edge(u, v, label)?))
}

/// The canonical form's bytes: equal exactly for isomorphic graphs.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_graph_canonical(g: *const PaGraph, out: *mut *mut PaBuffer) -> PaStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let out = out_ref(out, "out")?;
        *out = boxed(PaBuffer(canonical_form(&g.0).as_bytes().to_vec()));
        Ok(())
    })
}

/// # Safety
/// `cfg` is null or live; `g` must be a live graph handle; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pa_graph_index(cfg: *const PaConfig, g: *const PaGraph, out: *mut PaIndex) -> PaStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let out = out_ref(out, "out")?;
        write_index(out, graph_assembly_index(&g.0, &config(cfg)))
    })
}

/// A group from its `order` x `order` Cayley table in row-major order.
///
/// # Safety
/// `table` points to `order * order` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pa_group_from_table(table: *const usize, order: usize, out: *mut *mut PaGroup) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cells = order
            .checked_mul(order)
            .ok_or_else(|| Failure(PaStatus::InvalidArgument, "order too large".into()))?;
        let flat = slice(table, cells, "table")?;
        let rows: Vec<Vec<usize>> = flat.chunks(order.max(1)).map(<[usize]>::to_vec).collect();
        *out = boxed(PaGroup(FiniteGroup::from_table(&rows)?));
        Ok(())
    })
}

/// The integers mod `n` under addition.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_group_cyclic(n: usize, out: *mut *mut PaGroup) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(PaGroup(FiniteGroup::cyclic(n)?));
        Ok(())
    })
}

/// # Safety
/// `g` must come from a `pa_group_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pa_group_free(g: *mut PaGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The group's order, or 0 for a null handle.
///
/// # Safety
/// `g` is null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn pa_group_order(g: *const PaGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Assembly index of element `x` from the generators `gens[0..n_gens]`.
///
/// # Safety
/// `cfg` is null or live; `g` must be live; `gens` points to `n_gens`
/// readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_group_element_index(
    cfg: *const PaConfig,
    g: *const PaGroup,
    gens: *const usize,
    n_gens: usize,
    x: usize,
    out: *mut PaIndex,
) -> PaStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let out = out_ref(out, "out")?;
        let gens = slice(gens, n_gens, "gens")?;
        write_index(out, element_assembly_index(&g.0, gens, x, &config(cfg)))
    })
}

/// Compresses `data` into a file image (magic followed by codes).
///
/// # Safety
/// `cfg` is null or live; `data` points to `len` readable bytes; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_compress(
    cfg: *const PaConfig,
    codec: PaCodec,
    data: *const u8,
    len: usize,
    out: *mut *mut PaBuffer,
) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let data = slice(data, len, "data")?;
        let bytes = match codec {
            PaCodec::Pathway => {
                let mut search = cfg.as_ref().map_or_else(SearchConfig::default, |c| c.0.clone());
                if cfg.is_null() {
                    search.algorithm = Algorithm::Tree;
                }
                encode_pa(data, &search)?.to_file(PA_MAGIC)
            }
            PaCodec::Lzw => lzw_compress(data).to_file(LZW_MAGIC),
        };
        *out = boxed(PaBuffer(bytes));
        Ok(())
    })
}

/// Decompresses a file image from `pa_compress`; the codec is read from
/// the magic.
///
/// # Safety
/// `data` points to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_decompress(data: *const u8, len: usize, out: *mut *mut PaBuffer) -> PaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let data = slice(data, len, "data")?;
        let text = if data.starts_with(PA_MAGIC) {
            decode_pa(&CodeStream::from_file(data, PA_MAGIC)?)?
        } else {
            lzw_decompress(&CodeStream::from_file(data, LZW_MAGIC)?)?
        };
        *out = boxed(PaBuffer(text));
        Ok(())
    })
}

/// # Safety
/// `b` is null or a live buffer handle. The pointer is valid until the
/// buffer is freed.
#[no_mangle]
pub unsafe extern "C" fn pa_buffer_data(b: *const PaBuffer) -> *const u8 {
    b.as_ref().map_or(ptr::null(), |b| b.0.as_ptr())
}

/// # Safety
/// `b` is null or a live buffer handle.
#[no_mangle]
pub unsafe extern "C" fn pa_buffer_len(b: *const PaBuffer) -> usize {
    b.as_ref().map_or(0, |b| b.0.len())
}

/// # Safety
/// `b` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pa_buffer_free(b: *mut PaBuffer) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Copies the last error message, for callers that prefer owned strings.
/// Returns null if there is none; free with `pa_string_free`.
#[no_mangle]
pub extern "C" fn pa_last_error_copy() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), CString::into_raw))
}

/// # Safety
/// `s` must come from `pa_last_error_copy` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Reads the last error as a Rust string. For tests and Rust callers.
pub fn last_error_message() -> Option<String> {
    let p = pa_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}
