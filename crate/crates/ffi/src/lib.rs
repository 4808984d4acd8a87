//! C ABI over the descent-algebra engine.
//!
//! Conventions: functions return a [`DescentStatus`]; results are written
//! through out-pointers as NUL-terminated UTF-8 strings that the caller
//! releases with [`descent_string_free`]. On any non-Ok status a
//! human-readable message is available from [`descent_last_error`] until
//! the next call on the same thread. Group tables are opaque handles,
//! created once and reused across calls.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use descent_core::algebra_b::multiply_basis_b;
use descent_core::algebra_d::multiply_basis;
use descent_core::composition::{parse_composition_text, BasisIndex};
use descent_core::error::Error;
use descent_core::oracle::{oracle_multiply, oracle_multiply_b, GroupKind, OracleStrategy};
use descent_core::render;
use descent_core::verify::{run_suite, Suite, VerifyConfig};

/// Result codes of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DescentStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An operand failed to parse.
    ParseError = 3,
    /// A parsed operand violates the basis-index invariants.
    InvalidIndex = 4,
    /// Rank out of range, mismatched, or above the configured cap.
    RankError = 5,
    /// Exact integer arithmetic overflowed.
    Overflow = 6,
    /// A verification suite ran to completion and found counterexamples.
    VerificationFailed = 7,
    /// Broken internal invariant or panic; a bug, not a usage error.
    InternalError = 8,
}

/// Output encoding for product strings.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DescentFormat {
    Text = 0,
    Json = 1,
}

/// Opaque handle over a fully built group table.
pub struct DescentTable {
    inner: descent_core::oracle::GroupTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', "?"))
        .unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(error: &Error) -> DescentStatus {
    match error {
        Error::Parse(_) => DescentStatus::ParseError,
        Error::InvalidIndex(_) => DescentStatus::InvalidIndex,
        Error::InvalidRank { .. } | Error::RankMismatch(_, _) | Error::RankCap { .. } => {
            DescentStatus::RankError
        }
        Error::Overflow => DescentStatus::Overflow,
        Error::MalformedSubset(_)
        | Error::NotInDescentAlgebra(_)
        | Error::GroupMismatch
        | Error::Internal(_) => DescentStatus::InternalError,
    }
}

fn fail(error: Error) -> DescentStatus {
    let status = status_of(&error);
    set_last_error(error.to_string());
    status
}

/// Runs `body` with panic isolation, writing its string result through
/// `out`.
fn guarded(
    out: *mut *mut c_char,
    body: impl FnOnce() -> Result<(String, DescentStatus), Error>,
) -> DescentStatus {
    if out.is_null() {
        set_last_error("out pointer is NULL".into());
        return DescentStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let result = catch_unwind(AssertUnwindSafe(body));
    match result {
        Ok(Ok((text, status))) => {
            clear_last_error();
            match CString::new(text) {
                Ok(c) => {
                    unsafe { *out = c.into_raw() };
                    status
                }
                Err(_) => {
                    set_last_error("result contained an interior NUL".into());
                    DescentStatus::InternalError
                }
            }
        }
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_last_error("panic inside the engine".into());
            DescentStatus::InternalError
        }
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, Error> {
    if ptr.is_null() {
        return Err(Error::Parse("NULL string argument".into()));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Error::Parse("argument is not valid UTF-8".into()))
}

fn kind_of(algebra: c_char) -> Result<GroupKind, Error> {
    match algebra as u8 {
        b'D' | b'd' => Ok(GroupKind::D),
        b'B' | b'b' => Ok(GroupKind::B),
        other => Err(Error::Parse(format!(
            "unknown algebra tag {:?}; use 'D' or 'B'",
            other as char
        ))),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn descent_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next API call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn descent_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

/// Releases a string allocated by this library.
///
/// # Safety
///
/// `s` must be a pointer previously returned through an out-parameter of
/// this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn descent_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Multiplies two basis elements by the template rule and writes the
/// product in the requested format.
///
/// # Safety
///
/// `p` and `q` must be NUL-terminated strings; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn descent_multiply(
    algebra: c_char,
    n: u32,
    p: *const c_char,
    q: *const c_char,
    format: DescentFormat,
    out: *mut *mut c_char,
) -> DescentStatus {
    let p = match read_utf8(p) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    let q = match read_utf8(q) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    guarded(out, || {
        let n = n as usize;
        let text = match kind_of(algebra)? {
            GroupKind::D => {
                let p = BasisIndex::parse(&p, n)?;
                let q = BasisIndex::parse(&q, n)?;
                let product = multiply_basis(&p, &q)?;
                match format {
                    DescentFormat::Text => product.to_text(),
                    DescentFormat::Json => product.to_json_value().to_string(),
                }
            }
            GroupKind::B => {
                let p = parse_unprimed(&p)?;
                let q = parse_unprimed(&q)?;
                let product = multiply_basis_b(&p, &q, n)?;
                match format {
                    DescentFormat::Text => product.to_text(),
                    DescentFormat::Json => product.to_json_value().to_string(),
                }
            }
        };
        Ok((text, DescentStatus::Ok))
    })
}

fn parse_unprimed(text: &str) -> Result<descent_core::Composition, Error> {
    let (q, primed) = parse_composition_text(text)?;
    if primed {
        return Err(Error::Parse(
            "type-B basis elements are never primed".into(),
        ));
    }
    Ok(q)
}

/// Writes the admissible templates of a product as JSON.
///
/// # Safety
///
/// As for [`descent_multiply`].
#[no_mangle]
pub unsafe extern "C" fn descent_templates(
    algebra: c_char,
    n: u32,
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut c_char,
) -> DescentStatus {
    let p = match read_utf8(p) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    let q = match read_utf8(q) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    guarded(out, || {
        let n = n as usize;
        let value = match kind_of(algebra)? {
            GroupKind::D => {
                let p = BasisIndex::parse(&p, n)?;
                let q = BasisIndex::parse(&q, n)?;
                render::templates_json(&p, &q)?
            }
            GroupKind::B => {
                let p = parse_unprimed(&p)?;
                let q = parse_unprimed(&q)?;
                render::templates_json_b(&p, &q, n)?
            }
        };
        Ok((value.to_string(), DescentStatus::Ok))
    })
}

/// Writes the generator subset of a type-D basis index and its complement
/// as JSON.
///
/// # Safety
///
/// As for [`descent_multiply`].
#[no_mangle]
pub unsafe extern "C" fn descent_bijection(
    n: u32,
    index: *const c_char,
    out: *mut *mut c_char,
) -> DescentStatus {
    let index = match read_utf8(index) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    guarded(out, || {
        let b = BasisIndex::parse(&index, n as usize)?;
        Ok((render::bijection_json(&b).to_string(), DescentStatus::Ok))
    })
}

/// Builds a group table handle. `max_rank` of 0 keeps the default cap.
///
/// # Safety
///
/// `out` must be a valid pointer. Free the handle with
/// [`descent_table_free`].
#[no_mangle]
pub unsafe extern "C" fn descent_table_new(
    algebra: c_char,
    n: u32,
    max_rank: u32,
    out: *mut *mut DescentTable,
) -> DescentStatus {
    if out.is_null() {
        set_last_error("out pointer is NULL".into());
        return DescentStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let result = catch_unwind(|| -> Result<DescentTable, Error> {
        let kind = kind_of(algebra)?;
        let cap = if max_rank == 0 {
            kind.default_cap()
        } else {
            max_rank as usize
        };
        let inner = descent_core::oracle::GroupTable::build(kind, n as usize, cap)?;
        Ok(DescentTable { inner })
    });
    match result {
        Ok(Ok(table)) => {
            clear_last_error();
            *out = Box::into_raw(Box::new(table));
            DescentStatus::Ok
        }
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_last_error("panic inside the engine".into());
            DescentStatus::InternalError
        }
    }
}

/// Releases a table handle.
///
/// # Safety
///
/// `table` must come from [`descent_table_new`], or be NULL.
#[no_mangle]
pub unsafe extern "C" fn descent_table_free(table: *mut DescentTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of group elements behind the handle; 0 for NULL.
///
/// # Safety
///
/// `table` must come from [`descent_table_new`], or be NULL.
#[no_mangle]
pub unsafe extern "C" fn descent_table_order(table: *const DescentTable) -> u64 {
    table.as_ref().map_or(0, |t| t.inner.order() as u64)
}

/// Multiplies two basis elements by Solomon's structure-constant count on
/// the group behind the handle, bypassing the template rule.
///
/// # Safety
///
/// `table` must come from [`descent_table_new`]; strings and `out` as for
/// [`descent_multiply`].
#[no_mangle]
pub unsafe extern "C" fn descent_oracle_multiply(
    table: *const DescentTable,
    p: *const c_char,
    q: *const c_char,
    format: DescentFormat,
    out: *mut *mut c_char,
) -> DescentStatus {
    let Some(table) = table.as_ref() else {
        set_last_error("table handle is NULL".into());
        return DescentStatus::NullArgument;
    };
    let p = match read_utf8(p) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    let q = match read_utf8(q) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    guarded(out, || {
        let n = table.inner.rank();
        let text = match table.inner.kind() {
            GroupKind::D => {
                let p = BasisIndex::parse(&p, n)?;
                let q = BasisIndex::parse(&q, n)?;
                let product =
                    oracle_multiply(&table.inner, &p, &q, OracleStrategy::Counting)?;
                match format {
                    DescentFormat::Text => product.to_text(),
                    DescentFormat::Json => product.to_json_value().to_string(),
                }
            }
            GroupKind::B => {
                let p = parse_unprimed(&p)?;
                let q = parse_unprimed(&q)?;
                let product =
                    oracle_multiply_b(&table.inner, &p, &q, OracleStrategy::Counting)?;
                match format {
                    DescentFormat::Text => product.to_text(),
                    DescentFormat::Json => product.to_json_value().to_string(),
                }
            }
        };
        Ok((text, DescentStatus::Ok))
    })
}

/// Runs a verification suite over an inclusive rank range and writes the
/// JSON reports. Returns `VerificationFailed` (with the reports still
/// written) when any check fails.
///
/// # Safety
///
/// `suite` must be a NUL-terminated string; `out` as for
/// [`descent_multiply`].
#[no_mangle]
pub unsafe extern "C" fn descent_verify(
    suite: *const c_char,
    algebra: c_char,
    n_lo: u32,
    n_hi: u32,
    out: *mut *mut c_char,
) -> DescentStatus {
    let suite = match read_utf8(suite) {
        Ok(s) => s.to_owned(),
        Err(e) => return fail(e),
    };
    guarded(out, || {
        let suite = Suite::parse(&suite)?;
        let kind = kind_of(algebra)?;
        let config = VerifyConfig::new(kind);
        let reports = run_suite(suite, (n_lo as usize, n_hi as usize), &config)?;
        let pass = reports.iter().all(|r| r.pass);
        let json = serde_json::to_string(&reports)
            .map_err(|e| Error::Internal(format!("report serialization: {e}")))?;
        Ok((
            json,
            if pass {
                DescentStatus::Ok
            } else {
                DescentStatus::VerificationFailed
            },
        ))
    })
}
