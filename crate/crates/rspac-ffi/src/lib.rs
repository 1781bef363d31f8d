//! C ABI for the rspac codecs: opaque handles, integer status codes, and
//! caller-owned buffers. The header is generated into `include/rspac.h`
//! at build time.
//!
//! Conventions:
//! - Every fallible function returns [`RspacStatus`]; outputs go through
//!   pointers. `RSPAC_OK` is 0.
//! - Handles come from `*_new` constructors and must be released with the
//!   matching `*_free`; freeing NULL is a no-op.
//! - Bit buffers are one byte per bit (0/1) except the scheme-level
//!   `*_bytes` calls, which use packed LSB-first bytes.
//! - On a non-OK status, `rspac_last_error_message` returns a UTF-8
//!   description valid until the next rspac call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use rspac::pac::{fano_decode, ConvSpec, PacCode, RateProfile};
use rspac::rs::{RsCode, RsDecodeOutcome};
use rspac::sim::{SchemeInstance, SchemeKind, SimConfig};
use rspac::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum RspacStatus {
    RspacOk = 0,
    RspacNullPointer = 1,
    RspacInvalidArgument = 2,
    RspacLengthMismatch = 3,
    RspacConfigError = 4,
    RspacIoError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: RspacStatus, msg: impl Into<String>) -> RspacStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> RspacStatus {
    let status = match &e {
        Error::LengthMismatch { .. } => RspacStatus::RspacLengthMismatch,
        Error::Io(_) => RspacStatus::RspacIoError,
        Error::Config(_) => RspacStatus::RspacConfigError,
        _ => RspacStatus::RspacInvalidArgument,
    };
    fail(status, e.to_string())
}

/// Message for the most recent error on this thread, or NULL.
#[no_mangle]
pub extern "C" fn rspac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rspac_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

macro_rules! nonnull {
    ($ptr:expr) => {
        if $ptr.is_null() {
            return fail(
                RspacStatus::RspacNullPointer,
                concat!(stringify!($ptr), " is NULL"),
            );
        }
    };
}

// ---------------------------------------------------------------------
// Reed-Solomon
// ---------------------------------------------------------------------

/// Opaque Reed-Solomon codec.
pub struct RspacRs {
    inner: RsCode,
}

/// Create an (n, k) RS codec over GF(2^8); n < 255 shortens the
/// (255, k + 255 − n) mother code.
///
/// # Safety
/// `out` must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rspac_rs_new(n: u32, k: u32, out: *mut *mut RspacRs) -> RspacStatus {
    nonnull!(out);
    match RsCode::new(n as usize, k as usize) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(RspacRs { inner })) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `rs` must be a handle from [`rspac_rs_new`] (or NULL) not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rspac_rs_free(rs: *mut RspacRs) {
    if !rs.is_null() {
        drop(unsafe { Box::from_raw(rs) });
    }
}

/// # Safety
/// `msg` must hold `msg_len == k` bytes; `codeword_out` room for `n`.
#[no_mangle]
pub unsafe extern "C" fn rspac_rs_encode(
    rs: *const RspacRs,
    msg: *const u8,
    msg_len: usize,
    codeword_out: *mut u8,
) -> RspacStatus {
    nonnull!(rs);
    nonnull!(msg);
    nonnull!(codeword_out);
    let code = unsafe { &(*rs).inner };
    let msg = unsafe { std::slice::from_raw_parts(msg, msg_len) };
    match code.encode(msg) {
        Ok(cw) => {
            unsafe { ptr::copy_nonoverlapping(cw.as_ptr(), codeword_out, cw.len()) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}

/// Decode `n` received symbols. On success `*failed_out` reports whether
/// the decoder declared a failure; the buffer then holds the received
/// word unchanged (the caller's fallback), otherwise the corrected
/// codeword, with `*error_count_out` corrections applied.
///
/// # Safety
/// `received` must hold `received_len == n` bytes; `codeword_out` room
/// for `n` bytes.
#[no_mangle]
pub unsafe extern "C" fn rspac_rs_decode(
    rs: *const RspacRs,
    received: *const u8,
    received_len: usize,
    codeword_out: *mut u8,
    error_count_out: *mut u32,
    failed_out: *mut bool,
) -> RspacStatus {
    nonnull!(rs);
    nonnull!(received);
    nonnull!(codeword_out);
    nonnull!(error_count_out);
    nonnull!(failed_out);
    let code = unsafe { &(*rs).inner };
    let received = unsafe { std::slice::from_raw_parts(received, received_len) };
    match code.decode(received) {
        Ok(RsDecodeOutcome::Corrected {
            codeword,
            error_count,
        }) => unsafe {
            ptr::copy_nonoverlapping(codeword.as_ptr(), codeword_out, codeword.len());
            *error_count_out = error_count as u32;
            *failed_out = false;
            RspacStatus::RspacOk
        },
        Ok(RsDecodeOutcome::Failure { received }) => unsafe {
            ptr::copy_nonoverlapping(received.as_ptr(), codeword_out, received.len());
            *error_count_out = 0;
            *failed_out = true;
            RspacStatus::RspacOk
        },
        Err(e) => from_error(e),
    }
}

// ---------------------------------------------------------------------
// PAC
// ---------------------------------------------------------------------

/// Opaque PAC codec (profile + precoder + metric biases).
pub struct RspacPac {
    inner: PacCode,
}

/// Create an (n, k) PAC codec.
///
/// - `data_indices`: `k` 1-based profile indices, or NULL for the
///   Reed-Muller profile.
/// - `conv_octal`: connection polynomial in octal, or NULL for "3211".
/// - `biases`: `n` per-bit-channel biases in `[0, 1]`, or NULL to estimate
///   them at `design_snr_db` with `bias_samples` samples and `bias_seed`.
///
/// # Safety
/// Non-NULL pointers must reference buffers of the stated lengths;
/// `conv_octal` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rspac_pac_new(
    n: u32,
    k: u32,
    data_indices: *const u32,
    conv_octal: *const c_char,
    biases: *const f64,
    design_snr_db: f64,
    bias_samples: usize,
    bias_seed: u64,
    out: *mut *mut RspacPac,
) -> RspacStatus {
    nonnull!(out);
    let (n, k) = (n as usize, k as usize);
    let profile = if data_indices.is_null() {
        RateProfile::reed_muller(n, k)
    } else {
        let idx = unsafe { std::slice::from_raw_parts(data_indices, k) };
        let mut zero_based: Vec<usize> = Vec::with_capacity(k);
        for &i in idx {
            if i == 0 {
                return fail(
                    RspacStatus::RspacInvalidArgument,
                    "profile indices are 1-based",
                );
            }
            zero_based.push(i as usize - 1);
        }
        RateProfile::new(n, zero_based)
    };
    let profile = match profile {
        Ok(p) => p,
        Err(e) => return from_error(e),
    };
    let conv = if conv_octal.is_null() {
        ConvSpec::from_octal("3211")
    } else {
        match unsafe { CStr::from_ptr(conv_octal) }.to_str() {
            Ok(s) => ConvSpec::from_octal(s),
            Err(_) => {
                return fail(
                    RspacStatus::RspacInvalidArgument,
                    "conv_octal is not valid UTF-8",
                )
            }
        }
    };
    let conv = match conv {
        Ok(c) => c,
        Err(e) => return from_error(e),
    };
    let result = if biases.is_null() {
        PacCode::with_estimated_biases(profile, conv, design_snr_db, bias_samples, bias_seed)
    } else {
        let b = unsafe { std::slice::from_raw_parts(biases, n) };
        PacCode::new(profile, conv, b.to_vec())
    };
    match result {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(RspacPac { inner })) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `pac` must be a handle from [`rspac_pac_new`] (or NULL) not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rspac_pac_free(pac: *mut RspacPac) {
    if !pac.is_null() {
        drop(unsafe { Box::from_raw(pac) });
    }
}

/// # Safety
/// `pac` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rspac_pac_n(pac: *const RspacPac) -> u32 {
    if pac.is_null() {
        return 0;
    }
    unsafe { (*pac).inner.n() as u32 }
}

/// # Safety
/// `pac` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rspac_pac_k(pac: *const RspacPac) -> u32 {
    if pac.is_null() {
        return 0;
    }
    unsafe { (*pac).inner.k() as u32 }
}

/// Encode `k` data bits (one byte each) into `n` codeword bits;
/// `systematic` selects the encoder variant.
///
/// # Safety
/// `data_bits` must hold `data_len == k` bytes; `codeword_out` room for `n`.
#[no_mangle]
pub unsafe extern "C" fn rspac_pac_encode(
    pac: *const RspacPac,
    data_bits: *const u8,
    data_len: usize,
    systematic: bool,
    codeword_out: *mut u8,
) -> RspacStatus {
    nonnull!(pac);
    nonnull!(data_bits);
    nonnull!(codeword_out);
    let code = unsafe { &(*pac).inner };
    let h = unsafe { std::slice::from_raw_parts(data_bits, data_len) };
    let result = if systematic {
        code.encode_systematic(h)
    } else {
        code.encode_nonsystematic(h)
    };
    match result {
        Ok(x) => {
            unsafe { ptr::copy_nonoverlapping(x.as_ptr(), codeword_out, x.len()) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}

/// Fano-decode `n` channel LLRs (positive favors bit 0) and extract the
/// systematic data bits. `*anv_out` reports visits per bit and
/// `*budget_exhausted_out` whether the search hit `visit_budget`.
///
/// # Safety
/// `llrs` must hold `llr_len == n` doubles; `data_out` room for `k` bytes.
#[no_mangle]
pub unsafe extern "C" fn rspac_pac_decode(
    pac: *const RspacPac,
    llrs: *const f64,
    llr_len: usize,
    delta: f64,
    visit_budget: u64,
    data_out: *mut u8,
    anv_out: *mut f64,
    budget_exhausted_out: *mut bool,
) -> RspacStatus {
    nonnull!(pac);
    nonnull!(llrs);
    nonnull!(data_out);
    nonnull!(anv_out);
    nonnull!(budget_exhausted_out);
    let code = unsafe { &(*pac).inner };
    let llrs = unsafe { std::slice::from_raw_parts(llrs, llr_len) };
    let result = fano_decode(code, llrs, delta, visit_budget)
        .and_then(|out| Ok((code.systematic_data_of_carrier(&out.carrier)?, out)));
    match result {
        Ok((data, out)) => unsafe {
            ptr::copy_nonoverlapping(data.as_ptr(), data_out, data.len());
            *anv_out = out.anv;
            *budget_exhausted_out = out.budget_exhausted;
            RspacStatus::RspacOk
        },
        Err(e) => from_error(e),
    }
}

// ---------------------------------------------------------------------
// Whole concatenation schemes
// ---------------------------------------------------------------------

/// Scheme selector for [`rspac_scheme_new`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum RspacScheme {
    /// Standalone PAC(64,32).
    RspacSchemePac = 0,
    /// RS(252,220,33) + 63 × PAC(64,32), no interleaver.
    RspacSchemeRsPac1 = 1,
    /// Depth-8 interleaved RS(255,223,33) + 255 × PAC(128,64).
    RspacSchemeRsPacIl = 2,
    /// Depth-8 interleaved RS(255,223,33) + rate-1/2 64-state CC.
    RspacSchemeRsCc = 3,
}

/// Opaque encoder/decoder for one stock concatenation scheme.
pub struct RspacSchemeHandle {
    inner: SchemeInstance,
    delta: f64,
    visit_budget: u64,
}

/// Instantiate a stock scheme with its shipped profile and seeded bias
/// estimate (deterministic for a given build).
///
/// # Safety
/// `out` must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rspac_scheme_new(
    scheme: RspacScheme,
    out: *mut *mut RspacSchemeHandle,
) -> RspacStatus {
    nonnull!(out);
    let kind = match scheme {
        RspacScheme::RspacSchemePac => SchemeKind::Pac,
        RspacScheme::RspacSchemeRsPac1 => SchemeKind::RsPac1,
        RspacScheme::RspacSchemeRsPacIl => SchemeKind::RsPacIl,
        RspacScheme::RspacSchemeRsCc => SchemeKind::RsCc,
    };
    let cfg = SimConfig {
        scheme: kind,
        ..SimConfig::default()
    };
    match SchemeInstance::from_config(&cfg) {
        Ok(inner) => {
            let handle = RspacSchemeHandle {
                inner,
                delta: cfg.fano_delta,
                visit_budget: cfg.visit_budget,
            };
            unsafe { *out = Box::into_raw(Box::new(handle)) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `scheme` must be a handle from [`rspac_scheme_new`] (or NULL).
#[no_mangle]
pub unsafe extern "C" fn rspac_scheme_free(scheme: *mut RspacSchemeHandle) {
    if !scheme.is_null() {
        drop(unsafe { Box::from_raw(scheme) });
    }
}

/// Payload size in bytes for [`rspac_scheme_encode_bytes`].
///
/// # Safety
/// `scheme` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rspac_scheme_data_len(scheme: *const RspacSchemeHandle) -> usize {
    if scheme.is_null() {
        return 0;
    }
    unsafe { (*scheme).inner.data_bits() / 8 }
}

/// Encoded size in bytes (packed bits, zero-padded to a byte boundary).
///
/// # Safety
/// `scheme` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rspac_scheme_packed_len(scheme: *const RspacSchemeHandle) -> usize {
    if scheme.is_null() {
        return 0;
    }
    unsafe { (*scheme).inner.channel_bits().div_ceil(8) }
}

/// Encode a payload of `rspac_scheme_data_len` bytes into
/// `rspac_scheme_packed_len` packed codeword bytes (LSB-first bits).
///
/// # Safety
/// Buffers must have the advertised sizes.
#[no_mangle]
pub unsafe extern "C" fn rspac_scheme_encode_bytes(
    scheme: *const RspacSchemeHandle,
    data: *const u8,
    data_len: usize,
    packed_out: *mut u8,
) -> RspacStatus {
    nonnull!(scheme);
    nonnull!(data);
    nonnull!(packed_out);
    let handle = unsafe { &*scheme };
    let data = unsafe { std::slice::from_raw_parts(data, data_len) };
    match handle.inner.encode_bytes(data) {
        Ok(packed) => {
            unsafe { ptr::copy_nonoverlapping(packed.as_ptr(), packed_out, packed.len()) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}

/// Decode packed codeword bytes (hard decisions) back into the payload.
///
/// # Safety
/// Buffers must have the advertised sizes.
#[no_mangle]
pub unsafe extern "C" fn rspac_scheme_decode_bytes(
    scheme: *const RspacSchemeHandle,
    packed: *const u8,
    packed_len: usize,
    data_out: *mut u8,
) -> RspacStatus {
    nonnull!(scheme);
    nonnull!(packed);
    nonnull!(data_out);
    let handle = unsafe { &*scheme };
    let packed = unsafe { std::slice::from_raw_parts(packed, packed_len) };
    match handle
        .inner
        .decode_bytes(packed, handle.delta, handle.visit_budget)
    {
        Ok(data) => {
            unsafe { ptr::copy_nonoverlapping(data.as_ptr(), data_out, data.len()) };
            RspacStatus::RspacOk
        }
        Err(e) => from_error(e),
    }
}
