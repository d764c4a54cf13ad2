//! C interface to `nmbin`.
//!
//! Every function returns an [`NmbinStatus`]. On failure the message is kept
//! per thread and can be fetched with [`nmbin_last_error`]. Strings handed out
//! by the library must be released with [`nmbin_string_free`]; handles with
//! their matching `_free` function. Pointer arguments must be null or valid
//! for the access the function documents; null is reported as
//! `NMBIN_STATUS_NULL_POINTER`.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nmbin::algebra::{eisenstein_witness, IntPolynomial};
use nmbin::counting::{build_table, CountTable};
use nmbin::stats::{constants_with_digits, exact_stats};
use nmbin::{decompose, BinParams, BinSequence, Error};
use num_bigint::BigUint;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NmbinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    Resource = 3,
    Domain = 4,
    Parse = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque sequence handle; caches terms as they are requested.
pub struct NmbinSequence {
    inner: BinSequence,
}

/// Opaque handle to a table of `p_{k,c}`.
pub struct NmbinCountTable {
    inner: CountTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: NmbinStatus, msg: impl Into<String>) -> NmbinStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> NmbinStatus {
    let status = match e {
        Error::InvalidParams { .. } => NmbinStatus::InvalidParams,
        Error::Resource { .. } => NmbinStatus::Resource,
        Error::Domain(_) => NmbinStatus::Domain,
        Error::Parse(_) => NmbinStatus::Parse,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), NmbinStatus>) -> NmbinStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NmbinStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(NmbinStatus::Panic, "internal panic"),
    }
}

fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, NmbinStatus> {
    // SAFETY: callers pass either null or a valid, writable pointer
    unsafe { p.as_mut() }.ok_or_else(|| fail(NmbinStatus::NullPointer, format!("{what} is null")))
}

fn params(n: u64, m: u64) -> Result<BinParams, NmbinStatus> {
    BinParams::new(n, m).map_err(from_error)
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).unwrap().into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn nmbin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nmbin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn nmbin_sequence_new(n: u64, m: u64, out: *mut *mut NmbinSequence) -> NmbinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inner = BinSequence::new(params(n, m)?);
        *out = Box::into_raw(Box::new(NmbinSequence { inner }));
        Ok(())
    })
}

/// # Safety
/// `seq` must be null or a handle from [`nmbin_sequence_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nmbin_sequence_free(seq: *mut NmbinSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// `a_x` as a decimal string, to be released with [`nmbin_string_free`].
#[no_mangle]
pub extern "C" fn nmbin_sequence_term(
    seq: *mut NmbinSequence,
    x: u64,
    out: *mut *mut c_char,
) -> NmbinStatus {
    guard(|| {
        let seq = out_ptr(seq, "seq")?;
        let out = out_ptr(out, "out")?;
        let term = seq.inner.term(x).map_err(from_error)?;
        *out = to_c_string(term.to_string());
        Ok(())
    })
}

/// `a_x` when it fits in 64 bits, `NMBIN_STATUS_DOMAIN` otherwise.
#[no_mangle]
pub extern "C" fn nmbin_sequence_term_u64(
    seq: *mut NmbinSequence,
    x: u64,
    out: *mut u64,
) -> NmbinStatus {
    guard(|| {
        let seq = out_ptr(seq, "seq")?;
        let out = out_ptr(out, "out")?;
        let term = seq.inner.term(x).map_err(from_error)?;
        *out = u64::try_from(term)
            .map_err(|_| fail(NmbinStatus::Domain, format!("a_{x} exceeds 64 bits")))?;
        Ok(())
    })
}

/// Decomposes the decimal string `z`, writing summand indices (largest first)
/// into `indices`. `len` always receives the number of summands; if it
/// exceeds `capacity` nothing is written and `NMBIN_STATUS_BUFFER_TOO_SMALL`
/// is returned. `indices` may be null when `capacity` is zero.
///
/// # Safety
/// `z` must be a NUL-terminated string and `indices` must have room for
/// `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn nmbin_decompose(
    seq: *mut NmbinSequence,
    z: *const c_char,
    indices: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> NmbinStatus {
    guard(|| {
        let seq = out_ptr(seq, "seq")?;
        let len = out_ptr(len, "len")?;
        if z.is_null() {
            return Err(fail(NmbinStatus::NullPointer, "z is null"));
        }
        let text = CStr::from_ptr(z)
            .to_str()
            .map_err(|_| fail(NmbinStatus::Parse, "z is not UTF-8"))?;
        let value: BigUint = text.trim().parse().map_err(|_| {
            fail(
                NmbinStatus::Parse,
                format!("not a nonnegative integer: {text:?}"),
            )
        })?;
        let d = decompose(&mut seq.inner, &value).map_err(from_error)?;
        *len = d.len();
        if d.len() > capacity {
            return Err(fail(
                NmbinStatus::BufferTooSmall,
                format!("need room for {} indices", d.len()),
            ));
        }
        if !d.is_empty() {
            if indices.is_null() {
                return Err(fail(NmbinStatus::NullPointer, "indices is null"));
            }
            ptr::copy_nonoverlapping(d.indices().as_ptr(), indices, d.len());
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn nmbin_count_table_new(
    n: u64,
    m: u64,
    k_max: u64,
    out: *mut *mut NmbinCountTable,
) -> NmbinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inner = build_table(params(n, m)?, k_max).map_err(from_error)?;
        *out = Box::into_raw(Box::new(NmbinCountTable { inner }));
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a handle from [`nmbin_count_table_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nmbin_count_table_free(table: *mut NmbinCountTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `p_{k,c}` as a decimal string; zero outside the table's triangle.
#[no_mangle]
pub extern "C" fn nmbin_count_table_get(
    table: *const NmbinCountTable,
    k: u64,
    c: u64,
    out: *mut *mut c_char,
) -> NmbinStatus {
    guard(|| {
        // SAFETY: null or a live handle
        let table = unsafe { table.as_ref() }
            .ok_or_else(|| fail(NmbinStatus::NullPointer, "table is null"))?;
        let out = out_ptr(out, "out")?;
        if k > table.inner.k_max() {
            return Err(fail(NmbinStatus::Domain, format!("k={k} beyond table")));
        }
        *out = to_c_string(table.inner.get(k, c).to_string());
        Ok(())
    })
}

/// `beta`, `C` and `C'` rounded to doubles.
#[no_mangle]
pub extern "C" fn nmbin_constants(
    n: u64,
    m: u64,
    beta: *mut f64,
    c: *mut f64,
    c_prime: *mut f64,
) -> NmbinStatus {
    guard(|| {
        let g = constants_with_digits(params(n, m)?, 30);
        *out_ptr(beta, "beta")? = g.beta.to_f64();
        *out_ptr(c, "c")? = g.c.to_f64();
        *out_ptr(c_prime, "c_prime")? = g.c_prime.to_f64();
        Ok(())
    })
}

/// JSON record of the constants to `digits` significant digits, with
/// predicted mean and variance at `k` when `k > 0`.
#[no_mangle]
pub extern "C" fn nmbin_constants_json(
    n: u64,
    m: u64,
    k: u64,
    digits: u32,
    out: *mut *mut c_char,
) -> NmbinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if digits == 0 {
            return Err(fail(NmbinStatus::Domain, "digits must be positive"));
        }
        let mut g = constants_with_digits(params(n, m)?, digits as usize);
        if k > 0 {
            g = g.at(k);
        }
        *out = to_c_string(serde_json::to_string(&g.record(digits as usize)).unwrap());
        Ok(())
    })
}

/// Exact mean and variance of the summand count over `[0, a_{sk})`.
#[no_mangle]
pub extern "C" fn nmbin_exact_stats(
    n: u64,
    m: u64,
    k: u64,
    mean: *mut f64,
    variance: *mut f64,
) -> NmbinStatus {
    guard(|| {
        let st = exact_stats(params(n, m)?, k).map_err(from_error)?;
        *out_ptr(mean, "mean")? = st.mean_f64();
        *out_ptr(variance, "variance")? = st.variance_f64();
        Ok(())
    })
}

/// Smallest Eisenstein prime up to `prime_bound` for the monic polynomial
/// with coefficients `coeffs[0..len]` (lowest degree first); 0 when none.
///
/// # Safety
/// `coeffs` must point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn nmbin_eisenstein_witness(
    coeffs: *const i64,
    len: usize,
    prime_bound: u64,
    out: *mut u64,
) -> NmbinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if coeffs.is_null() || len == 0 {
            return Err(fail(NmbinStatus::NullPointer, "coeffs is empty"));
        }
        let slice = std::slice::from_raw_parts(coeffs, len);
        let poly = IntPolynomial::from_i64(slice).map_err(from_error)?;
        *out = eisenstein_witness(&poly, prime_bound).prime().unwrap_or(0);
        Ok(())
    })
}
