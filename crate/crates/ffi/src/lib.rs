//! C interface to `pattern-mobius`.
//!
//! Permutations cross the boundary as NUL-terminated one-line strings
//! (`"2413"`, `"10,2,1,..."`, `"e"`). Every function returns a [`PmStatus`];
//! results go through out-pointers. On failure the message is available from
//! [`pm_last_error`] on the same thread. Strings handed out by this library
//! must be released with [`pm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use pattern_mobius::{szdetect, zstats, Classification, Error, InflationSpec, MobiusCache, Perm, SzRegistry};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Overflow = 5,
    Io = 6,
    CacheCorrupt = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmClass {
    OpposingAdjacencies = 0,
    ObviouslyZero = 1,
    New = 2,
    ZeroNotCertified = 3,
    NonZero = 4,
}

/// Opaque Möbius value cache.
pub struct PmCache {
    inner: MobiusCache,
}

/// Opaque strongly-zero registry for the principal Möbius function.
pub struct PmRegistry {
    inner: SzRegistry,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(PmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::MalformedPermutation { .. } | Error::MalformedInflation { .. } => PmStatus::Parse,
            Error::Domain(_) => PmStatus::Domain,
            Error::Overflow => PmStatus::Overflow,
            Error::CacheCorrupt { .. } => PmStatus::CacheCorrupt,
            Error::Io(_) => PmStatus::Io,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PmStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal panic: {msg}"));
            PmStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(PmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PmStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_perm(p: *const c_char, what: &str) -> Result<Perm, Fail> {
    Ok(read_str(p, what)?.parse::<Perm>()?)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).expect("no interior NUL");
    write_out(out, c.into_raw())
}

unsafe fn cache_ref<'a>(cache: *const PmCache) -> Result<&'a MobiusCache, Fail> {
    cache.as_ref().map(|c| &c.inner).ok_or_else(|| null("cache"))
}

/// Message of the last failure on this thread, or NULL. Owned by the
/// library; valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned through an out-pointer. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A new empty cache. Never NULL.
#[no_mangle]
pub extern "C" fn pm_cache_new() -> *mut PmCache {
    Box::into_raw(Box::new(PmCache {
        inner: MobiusCache::new(),
    }))
}

/// # Safety
/// `cache` must come from [`pm_cache_new`] or [`pm_cache_load`] and not
/// have been freed already. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pm_cache_free(cache: *mut PmCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Reads a cache file into a new cache.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_cache_load(path: *const c_char, out: *mut *mut PmCache) -> PmStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        let inner = MobiusCache::load(Path::new(path))?;
        write_out(out, Box::into_raw(Box::new(PmCache { inner })))
    })
}

/// Writes the cache atomically to `path`.
///
/// # Safety
/// `cache` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pm_cache_save(cache: *const PmCache, path: *const c_char) -> PmStatus {
    guard(|| {
        let cache = cache_ref(cache)?;
        let path = read_str(path, "path")?;
        Ok(cache.save(Path::new(path))?)
    })
}

/// `μ(sigma, pi)`.
///
/// # Safety
/// `cache` must be a live handle, `sigma` and `pi` NUL-terminated strings,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_mobius(
    cache: *const PmCache,
    sigma: *const c_char,
    pi: *const c_char,
    out: *mut i64,
) -> PmStatus {
    guard(|| {
        let cache = cache_ref(cache)?;
        let sigma = read_perm(sigma, "sigma")?;
        let pi = read_perm(pi, "pi")?;
        let v = cache.mobius(&sigma, &pi)?;
        write_out(out, v)
    })
}

/// `μ(1, pi)`.
///
/// # Safety
/// As for [`pm_mobius`].
#[no_mangle]
pub unsafe extern "C" fn pm_principal_mobius(cache: *const PmCache, pi: *const c_char, out: *mut i64) -> PmStatus {
    guard(|| {
        let cache = cache_ref(cache)?;
        let pi = read_perm(pi, "pi")?;
        let v = cache.principal_mobius(&pi)?;
        write_out(out, v)
    })
}

/// Builds the principal strongly-zero registry for lengths ≤ `max_n`.
///
/// # Safety
/// `cache` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_registry_build(cache: *const PmCache, max_n: usize, out: *mut *mut PmRegistry) -> PmStatus {
    guard(|| {
        let cache = cache_ref(cache)?;
        if max_n < 3 {
            return Err(Error::Domain(format!("max_n must be at least 3, got {max_n}")).into());
        }
        let inner = szdetect::build_registry(max_n, cache)?;
        write_out(out, Box::into_raw(Box::new(PmRegistry { inner })))
    })
}

/// # Safety
/// `registry` must come from [`pm_registry_build`] and not have been freed
/// already. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pm_registry_free(registry: *mut PmRegistry) {
    if !registry.is_null() {
        drop(Box::from_raw(registry));
    }
}

/// Longest length covered by `registry`.
///
/// # Safety
/// `registry` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_registry_max_length(registry: *const PmRegistry, out: *mut usize) -> PmStatus {
    guard(|| {
        let reg = registry.as_ref().ok_or_else(|| null("registry"))?;
        write_out(out, reg.inner.max_length())
    })
}

/// Classifies `pi` (registry must cover lengths < `|pi|`). `out_text`
/// receives a one-line description with the witness; it may be NULL.
///
/// # Safety
/// Handles must be live, `pi` NUL-terminated, `out_class` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_classify(
    registry: *const PmRegistry,
    cache: *const PmCache,
    pi: *const c_char,
    out_class: *mut PmClass,
    out_text: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let reg = registry.as_ref().ok_or_else(|| null("registry"))?;
        let cache = cache_ref(cache)?;
        let pi = read_perm(pi, "pi")?;
        let class = szdetect::classify(&pi, &reg.inner, cache)?;
        let tag = match class {
            Classification::OpposingAdjacencies { .. } => PmClass::OpposingAdjacencies,
            Classification::ObviouslyZero { .. } => PmClass::ObviouslyZero,
            Classification::New { .. } => PmClass::New,
            Classification::ZeroNotCertified => PmClass::ZeroNotCertified,
            Classification::NonZero { .. } => PmClass::NonZero,
        };
        write_out(out_class, tag)?;
        if !out_text.is_null() {
            write_string(out_text, class.to_string())?;
        }
        Ok(())
    })
}

/// Substitution decomposition, e.g. `"3624715 [ 1, 12, 1, 1, 21, 1, 1 ]"`.
///
/// # Safety
/// `pi` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_decompose(pi: *const c_char, out: *mut *mut c_char) -> PmStatus {
    guard(|| {
        let pi = read_perm(pi, "pi")?;
        let d = pattern_mobius::decompose(&pi)?;
        write_string(out, d.to_string())
    })
}

/// Evaluates an inflation such as `"3624715[1,12,1,1,21,1,1]"`.
///
/// # Safety
/// `spec` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_inflate(spec: *const c_char, out: *mut *mut c_char) -> PmStatus {
    guard(|| {
        let spec: InflationSpec = read_str(spec, "spec")?.parse()?;
        write_string(out, spec.inflate().to_string())
    })
}

/// `(1/e²)·Σ_{k=2..terms} (2^k - 2)/k!`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lower_bound(terms: usize, out: *mut f64) -> PmStatus {
    guard(|| {
        let b = zstats::asymptotic_lower_bound(terms)?;
        write_out(out, b.value)
    })
}

/// Number of permutations of length `n` with `μ(1, π) = 0`, and `n!`.
/// Builds the dense table up to `n`, which takes minutes from `n = 10`.
///
/// # Safety
/// `cache` must be a live handle; both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pm_z_count(cache: *const PmCache, n: usize, out_zero: *mut u64, out_total: *mut u64) -> PmStatus {
    guard(|| {
        let cache = cache_ref(cache)?;
        if n == 0 || n > 13 {
            return Err(Error::Domain(format!("length must be in 1..=13, got {n}")).into());
        }
        let rows = zstats::z_table(n, cache)?;
        let last = rows.last().expect("n ≥ 1");
        write_out(out_zero, last.mu_zero.unwrap_or(0))?;
        write_out(out_total, last.total)
    })
}
