//! C interface to `rsci-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_load`
//! and released by the matching `*_free`. Every fallible call returns an
//! [`RsciStatus`]; on failure a description is available from
//! [`rsci_last_error`] on the same thread. Strings and buffers handed out by
//! the library must be released with [`rsci_string_free`] and
//! [`rsci_buffer_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use chrono::NaiveDate;
use rsci_core::export::{package_archive, ExportError};
use rsci_core::ingest::{load_canonical, IngestError};
use rsci_core::metrics::{
    g_index, h_index, hirsch_a, i10_index, impact_factor, total_citations, CitationProfile,
    MetricsError, YearlyJournalStats,
};
use rsci_core::model::{check_issn, validate_bundle, IssueBundle};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsciStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A file could not be read.
    Io = 3,
    /// Input did not match the expected schema.
    Schema = 4,
    /// The bundle has validation errors and cannot be exported.
    NotExportable = 5,
    /// A scalar argument was out of range (e.g. an impossible date).
    InvalidArgument = 6,
    /// Impact factor requested with zero publications.
    NoPublications = 7,
    /// The citation profile is empty.
    EmptyProfile = 8,
    /// The h-index is zero, so the Hirsch coefficient is undefined.
    ZeroH = 9,
    /// An unexpected internal failure (including a caught panic).
    Internal = 10,
}

/// Bytes owned by the library. Release with [`rsci_buffer_free`].
#[repr(C)]
#[derive(Debug)]
pub struct RsciBuffer {
    pub data: *mut u8,
    pub len: usize,
}

/// A loaded issue: metadata plus attachment bytes.
pub struct RsciBundle {
    bundle: IssueBundle,
}

/// Citation counts of one author or journal.
pub struct RsciProfile {
    profile: CitationProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let mut bytes = message.into().into_bytes();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RsciStatus, message: impl Into<String>) -> RsciStatus {
    set_error(message);
    status
}

/// Runs `f`, turning a panic into `Internal`.
fn guard(f: impl FnOnce() -> RsciStatus + UnwindSafe) -> RsciStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(RsciStatus::Internal, "internal panic"))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, RsciStatus> {
    if p.is_null() {
        return Err(fail(RsciStatus::NullArgument, "string argument is NULL"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(RsciStatus::InvalidUtf8, e.to_string()))
}

fn ingest_status(e: &IngestError) -> RsciStatus {
    match e {
        IngestError::Io { .. } | IngestError::MissingAttachment { .. } => RsciStatus::Io,
        _ => RsciStatus::Schema,
    }
}

fn metrics_status(e: MetricsError) -> RsciStatus {
    match e {
        MetricsError::EmptyProfile => RsciStatus::EmptyProfile,
        MetricsError::ZeroH => RsciStatus::ZeroH,
        MetricsError::NoPublications => RsciStatus::NoPublications,
        MetricsError::QOutOfRange { .. } | MetricsError::Overflow => RsciStatus::InvalidArgument,
    }
}

fn into_c_string(s: String) -> *mut c_char {
    let mut bytes = s.into_bytes();
    bytes.retain(|&b| b != 0);
    CString::new(bytes).expect("NULs removed").into_raw()
}

/// Message describing the last failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn rsci_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rsci_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a buffer returned by the library. A buffer with NULL `data` is
/// ignored.
///
/// # Safety
/// `buf` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rsci_buffer_free(buf: RsciBuffer) {
    if !buf.data.is_null() {
        drop(Vec::from_raw_parts(buf.data, buf.len, buf.len));
    }
}

/// True if `issn` is a well-formed ISSN (`NNNN-NNNC`) with a correct check digit.
///
/// # Safety
/// `issn` must be NULL or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rsci_check_issn(issn: *const c_char) -> bool {
    if issn.is_null() {
        return false;
    }
    CStr::from_ptr(issn).to_str().is_ok_and(check_issn)
}

/// Loads an issue file and its attachments.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsci_bundle_load(
    path: *const c_char,
    out: *mut *mut RsciBundle,
) -> RsciStatus {
    guard(|| {
        if out.is_null() {
            return fail(RsciStatus::NullArgument, "out is NULL");
        }
        let path = match str_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match load_canonical(path) {
            Ok(bundle) => {
                *out = Box::into_raw(Box::new(RsciBundle { bundle }));
                RsciStatus::Ok
            }
            Err(e) => fail(ingest_status(&e), e.to_string()),
        }
    })
}

/// Releases a bundle. NULL is ignored.
///
/// # Safety
/// `bundle` must come from [`rsci_bundle_load`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rsci_bundle_free(bundle: *mut RsciBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

/// Validates the bundle. Any of the output pointers may be NULL.
///
/// # Safety
/// `bundle` must be a live handle; non-NULL outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rsci_bundle_validate(
    bundle: *const RsciBundle,
    exportable: *mut bool,
    errors: *mut usize,
    warnings: *mut usize,
) -> RsciStatus {
    let Some(b) = bundle.as_ref() else {
        return fail(RsciStatus::NullArgument, "bundle is NULL");
    };
    let report = validate_bundle(&b.bundle);
    if let Some(x) = exportable.as_mut() {
        *x = report.is_exportable;
    }
    if let Some(x) = errors.as_mut() {
        *x = report.error_count();
    }
    if let Some(x) = warnings.as_mut() {
        *x = report.warning_count();
    }
    RsciStatus::Ok
}

/// The full validation report as a JSON object with `violations` and
/// `is_exportable`. Release `*out` with [`rsci_string_free`].
///
/// # Safety
/// `bundle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsci_bundle_validation_json(
    bundle: *const RsciBundle,
    out: *mut *mut c_char,
) -> RsciStatus {
    let (Some(b), false) = (bundle.as_ref(), out.is_null()) else {
        return fail(RsciStatus::NullArgument, "bundle or out is NULL");
    };
    match serde_json::to_string(&validate_bundle(&b.bundle)) {
        Ok(json) => {
            *out = into_c_string(json);
            RsciStatus::Ok
        }
        Err(e) => fail(RsciStatus::Internal, e.to_string()),
    }
}

/// Builds the upload ZIP with the given generation date. On success
/// `*name` receives the archive file name and `*zip` its bytes.
///
/// # Safety
/// `bundle` must be a live handle; `name` and `zip` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rsci_bundle_package(
    bundle: *const RsciBundle,
    year: i32,
    month: u32,
    day: u32,
    name: *mut *mut c_char,
    zip: *mut RsciBuffer,
) -> RsciStatus {
    let (Some(b), false, false) = (bundle.as_ref(), name.is_null(), zip.is_null()) else {
        return fail(RsciStatus::NullArgument, "bundle, name or zip is NULL");
    };
    let Some(date) = NaiveDate::from_ymd_opt(year, month, day) else {
        return fail(RsciStatus::InvalidArgument, format!("no such date {year}-{month}-{day}"));
    };
    let result = package_archive(&b.bundle, date).and_then(|a| {
        let bytes = a.to_zip_bytes()?;
        Ok((a.archive_name, bytes))
    });
    match result {
        Ok((archive_name, bytes)) => {
            let mut bytes = bytes.into_boxed_slice();
            *zip = RsciBuffer {
                data: bytes.as_mut_ptr(),
                len: bytes.len(),
            };
            std::mem::forget(bytes);
            *name = into_c_string(archive_name);
            RsciStatus::Ok
        }
        Err(ExportError::NotExportable(report)) => fail(RsciStatus::NotExportable, report.to_string()),
        Err(e @ (ExportError::InvalidDate(_) | ExportError::InvalidIssueNumber(_) | ExportError::InvalidIssn(_))) => {
            fail(RsciStatus::InvalidArgument, e.to_string())
        }
        Err(e) => fail(RsciStatus::Internal, e.to_string()),
    }
}

/// Creates a profile from `len` citation counts. `counts` may be NULL when
/// `len` is 0.
///
/// # Safety
/// `counts` must point to `len` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_new(
    counts: *const u32,
    len: usize,
    out: *mut *mut RsciProfile,
) -> RsciStatus {
    if out.is_null() || (counts.is_null() && len > 0) {
        return fail(RsciStatus::NullArgument, "counts or out is NULL");
    }
    let counts = if len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(counts, len).to_vec()
    };
    *out = Box::into_raw(Box::new(RsciProfile {
        profile: CitationProfile::new(counts),
    }));
    RsciStatus::Ok
}

/// Releases a profile. NULL is ignored.
///
/// # Safety
/// `profile` must come from [`rsci_profile_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_free(profile: *mut RsciProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

unsafe fn with_profile<T: Default>(p: *const RsciProfile, f: impl FnOnce(&CitationProfile) -> T) -> T {
    p.as_ref().map_or_else(T::default, |p| f(&p.profile))
}

/// h-index; 0 for a NULL profile.
///
/// # Safety
/// `profile` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_h_index(profile: *const RsciProfile) -> usize {
    with_profile(profile, h_index)
}

/// g-index, capped at the number of papers; 0 for a NULL profile.
///
/// # Safety
/// `profile` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_g_index(profile: *const RsciProfile) -> usize {
    with_profile(profile, g_index)
}

/// Papers with at least ten citations; 0 for a NULL profile.
///
/// # Safety
/// `profile` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_i10_index(profile: *const RsciProfile) -> usize {
    with_profile(profile, i10_index)
}

/// Sum of all citation counts; 0 for a NULL profile.
///
/// # Safety
/// `profile` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_total_citations(profile: *const RsciProfile) -> u64 {
    with_profile(profile, total_citations)
}

/// Hirsch coefficient `a = N_c,tot / h^2` as a reduced fraction.
/// `within_range` (may be NULL) tells whether 3 <= a <= 5.
///
/// # Safety
/// `profile` must be a live handle; `numerator` and `denominator` valid.
#[no_mangle]
pub unsafe extern "C" fn rsci_profile_hirsch_a(
    profile: *const RsciProfile,
    numerator: *mut u64,
    denominator: *mut u64,
    within_range: *mut bool,
) -> RsciStatus {
    let (Some(p), false, false) = (profile.as_ref(), numerator.is_null(), denominator.is_null())
    else {
        return fail(RsciStatus::NullArgument, "profile, numerator or denominator is NULL");
    };
    match hirsch_a(&p.profile) {
        Ok(fit) => {
            *numerator = *fit.a.numer();
            *denominator = *fit.a.denom();
            if let Some(w) = within_range.as_mut() {
                *w = fit.within_empirical_range;
            }
            RsciStatus::Ok
        }
        Err(e) => fail(metrics_status(e), e.to_string()),
    }
}

/// Two-year impact factor `(c1 + c2) / (p1 + p2)` as a reduced fraction.
///
/// # Safety
/// `numerator` and `denominator` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rsci_impact_factor(
    citations_prev1: u64,
    citations_prev2: u64,
    publications_prev1: u64,
    publications_prev2: u64,
    numerator: *mut u64,
    denominator: *mut u64,
) -> RsciStatus {
    if numerator.is_null() || denominator.is_null() {
        return fail(RsciStatus::NullArgument, "numerator or denominator is NULL");
    }
    let stats = YearlyJournalStats {
        citations_prev1,
        citations_prev2,
        publications_prev1,
        publications_prev2,
    };
    match impact_factor(&stats) {
        Ok(r) => {
            *numerator = *r.numer();
            *denominator = *r.denom();
            RsciStatus::Ok
        }
        Err(e) => fail(metrics_status(e), e.to_string()),
    }
}
