//! C ABI over `rsl`. Every call returns an [`RslStatus`]; on failure the
//! message is available from [`rsl_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use rsl::{BlockOrder, Error, FlagTable, InsertionFacet, RankSet, Shape};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RslStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidShape = 2,
    InvalidRankSet = 3,
    InvalidInsertions = 4,
    Domain = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// Opaque flag table.
pub struct RslTable {
    inner: std::sync::Arc<FlagTable>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RslStatus {
    match e {
        Error::InvalidShape(_) => RslStatus::InvalidShape,
        Error::InvalidRankSet(_) | Error::NotInSupport { .. } => RslStatus::InvalidRankSet,
        Error::InvalidInsertions(_) => RslStatus::InvalidInsertions,
        Error::Domain(_) | Error::UnsupportedWord(_) | Error::LengtheningFailed(_) | Error::BlockOrder(_) => RslStatus::Domain,
        _ => RslStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), RslStatus>) -> RslStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RslStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            RslStatus::Internal
        }
    }
}

fn lift<T>(r: rsl::Result<T>) -> Result<T, RslStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

unsafe fn input<'a>(ptr: *const usize, len: usize) -> Result<&'a [usize], RslStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        set_error("null input array");
        return Err(RslStatus::NullPointer);
    }
    Ok(slice::from_raw_parts(ptr, len))
}

fn out<'a, T>(ptr: *mut T) -> Result<&'a mut T, RslStatus> {
    // SAFETY: callers pass either null or a valid, writable pointer
    unsafe { ptr.as_mut() }.ok_or_else(|| {
        set_error("null output pointer");
        RslStatus::NullPointer
    })
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rsl_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    V.as_ptr()
}

/// Message for the last failed call on this thread. Valid until the next call
/// that fails.
#[no_mangle]
pub extern "C" fn rsl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `b_S(n)` for `S` given as Π_n ranks.
///
/// # Safety
/// `ranks` must point to `len` readable values (or be null with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn rsl_b(n: usize, ranks: *const usize, len: usize, value: *mut i64) -> RslStatus {
    guard(|| {
        let r = input(ranks, len)?;
        *out(value)? = lift(rsl::flag::b(n, r))?;
        Ok(())
    })
}

/// `b'_S(n)` for `S` given as Π_n ranks.
///
/// # Safety
/// As for [`rsl_b`].
#[no_mangle]
pub unsafe extern "C" fn rsl_b_prime(n: usize, ranks: *const usize, len: usize, value: *mut i64) -> RslStatus {
    guard(|| {
        let r = input(ranks, len)?;
        *out(value)? = lift(rsl::flag::b_prime(n, r))?;
        Ok(())
    })
}

/// Builds the flag table of the shape `parts`. Free with [`rsl_table_free`].
///
/// # Safety
/// `parts` must point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn rsl_table_new(parts: *const usize, len: usize, table: *mut *mut RslTable) -> RslStatus {
    guard(|| {
        let p = input(parts, len)?;
        let slot = out(table)?;
        let shape = lift(Shape::new(p))?;
        let inner = lift(rsl::flag::full_table(&shape))?;
        *slot = Box::into_raw(Box::new(RslTable { inner }));
        Ok(())
    })
}

/// # Safety
/// `table` must come from [`rsl_table_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rsl_table_free(table: *mut RslTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `n` of the table, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsl_table_n(table: *const RslTable) -> usize {
    table.as_ref().map_or(0, |t| t.inner.n())
}

unsafe fn table_lookup<T>(
    table: *const RslTable,
    ranks: *const usize,
    len: usize,
    value: *mut T,
    get: impl FnOnce(&FlagTable, &RankSet) -> rsl::Result<T>,
) -> RslStatus {
    guard(|| {
        let Some(t) = table.as_ref() else {
            set_error("null table");
            return Err(RslStatus::NullPointer);
        };
        let r = input(ranks, len)?;
        let slot = out(value)?;
        let s = lift(RankSet::primal(t.inner.n(), r))?;
        *slot = lift(get(&t.inner, &s))?;
        Ok(())
    })
}

/// Flag f-number for Π_n ranks `S`.
///
/// # Safety
/// `table` must be a live handle; `ranks` as for [`rsl_b`].
#[no_mangle]
pub unsafe extern "C" fn rsl_table_f(table: *const RslTable, ranks: *const usize, len: usize, value: *mut u64) -> RslStatus {
    table_lookup(table, ranks, len, value, |t, s| t.f(s))
}

/// Flag h-number for Π_n ranks `S`.
///
/// # Safety
/// As for [`rsl_table_f`].
#[no_mangle]
pub unsafe extern "C" fn rsl_table_h(table: *const RslTable, ranks: *const usize, len: usize, value: *mut i64) -> RslStatus {
    table_lookup(table, ranks, len, value, |t, s| t.h(s))
}

/// Topological descents (dual ranks) of the facet of `Δ(Π_n)/S_n` given by
/// its bar insertion positions, under the length-lex order. Writes at most
/// `cap` ranks to `descents` and the true count to `count`.
///
/// # Safety
/// `gaps` must point to `len` readable values; `descents` to `cap` writable ones.
#[no_mangle]
pub unsafe extern "C" fn rsl_descent_set(
    gaps: *const usize,
    len: usize,
    descents: *mut usize,
    cap: usize,
    count: *mut usize,
) -> RslStatus {
    guard(|| {
        let g = input(gaps, len)?;
        let count = out(count)?;
        let f = lift(InsertionFacet::from_gaps(len + 1, g))?;
        let order = BlockOrder::LengthLex;
        let f = lift(f.normalize(&order))?;
        let d = f.descent_set(&order);
        *count = d.len();
        if d.len() > cap {
            set_error(&format!("{} descents do not fit in {cap}", d.len()));
            return Err(RslStatus::BufferTooSmall);
        }
        if !d.is_empty() {
            if descents.is_null() {
                set_error("null output array");
                return Err(RslStatus::NullPointer);
            }
            slice::from_raw_parts_mut(descents, d.len()).copy_from_slice(d.ranks());
        }
        Ok(())
    })
}
