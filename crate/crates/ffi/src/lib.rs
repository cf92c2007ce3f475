//! C interface to the aggregation toolkit.
//!
//! Every function returns an [`AggStatus`] and writes its result through an
//! out-pointer. Measures and aggregators are opaque handles owned by the
//! caller and released with the matching `*_free` function. After a
//! non-zero status, [`agg_last_error`] describes the failure on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::str::FromStr;

use aggregation::axioms::{check, Aggregate, Property};
use aggregation::integrals;
use aggregation::measure::{parse_measure_json, FuzzyMeasure};
use aggregation::spec::Aggregator;
use aggregation::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Parse = 4,
    Panic = 5,
}

/// A validated fuzzy measure.
pub struct AggMeasure(FuzzyMeasure);

/// An aggregator built from a JSON specification.
pub struct AggAggregator(Aggregator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(AggStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => AggStatus::Parse,
            ref other if other.is_domain() => AggStatus::Domain,
            _ => AggStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AggStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AggStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AggStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {message}"));
            AggStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(AggStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn inputs<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message describing the last failure on this thread, or null. The string
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn agg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn agg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a measure from `2^n` values indexed by subset bitmask
/// (bit `i` set means element `i + 1` belongs to the subset).
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_measure_from_array(
    values: *const f64,
    len: usize,
    out: *mut *mut AggMeasure,
) -> AggStatus {
    guard(|| {
        let raw = inputs(values, len, "values")?.to_vec();
        let mu = FuzzyMeasure::from_array(raw)?;
        store(out, Box::into_raw(Box::new(AggMeasure(mu))), "out")
    })
}

/// Parses a measure document (`{"n":..,"values":{..}}` or `{"n":..,"array":[..]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_measure_from_json(json: *const c_char, out: *mut *mut AggMeasure) -> AggStatus {
    guard(|| {
        let mu = parse_measure_json(text(json, "json")?)?;
        store(out, Box::into_raw(Box::new(AggMeasure(mu))), "out")
    })
}

/// # Safety
/// `measure` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_measure_size(measure: *const AggMeasure, out: *mut usize) -> AggStatus {
    guard(|| {
        let mu = handle(measure, "measure")?;
        store(out, mu.0.n(), "out")
    })
}

/// # Safety
/// `measure` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agg_measure_free(measure: *mut AggMeasure) {
    if !measure.is_null() {
        drop(Box::from_raw(measure));
    }
}

/// # Safety
/// `measure` must be a live handle, `x` must point to `len` doubles and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_choquet(
    measure: *const AggMeasure,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> AggStatus {
    guard(|| {
        let mu = handle(measure, "measure")?;
        let value = integrals::choquet(inputs(x, len, "x")?, &mu.0)?;
        store(out, value, "out")
    })
}

/// Inputs must lie in `[0, 1]`.
///
/// # Safety
/// Same contract as [`agg_choquet`].
#[no_mangle]
pub unsafe extern "C" fn agg_sugeno(measure: *const AggMeasure, x: *const f64, len: usize, out: *mut f64) -> AggStatus {
    guard(|| {
        let mu = handle(measure, "measure")?;
        let value = integrals::sugeno(inputs(x, len, "x")?, &mu.0)?;
        store(out, value, "out")
    })
}

/// Builds an aggregator from its JSON specification. Relative
/// `measure_file` paths resolve against the working directory.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_aggregator_from_json(json: *const c_char, out: *mut *mut AggAggregator) -> AggStatus {
    guard(|| {
        let agg = Aggregator::from_json(text(json, "json")?)?;
        store(out, Box::into_raw(Box::new(AggAggregator(agg))), "out")
    })
}

/// # Safety
/// `aggregator` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agg_aggregator_free(aggregator: *mut AggAggregator) {
    if !aggregator.is_null() {
        drop(Box::from_raw(aggregator));
    }
}

/// Writes the fixed input count, or 0 when any count is accepted.
///
/// # Safety
/// `aggregator` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_aggregator_arity(aggregator: *const AggAggregator, out: *mut usize) -> AggStatus {
    guard(|| {
        let agg = handle(aggregator, "aggregator")?;
        store(out, agg.0.arity().unwrap_or(0), "out")
    })
}

/// # Safety
/// `aggregator` must be a live handle, `x` must point to `len` doubles and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agg_aggregator_eval(
    aggregator: *const AggAggregator,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> AggStatus {
    guard(|| {
        let agg = handle(aggregator, "aggregator")?;
        let value = agg.0.aggregate(inputs(x, len, "x")?)?;
        store(out, value, "out")
    })
}

/// Runs one property check and writes its report as a JSON string, to be
/// released with [`agg_string_free`]. `samples = 0` keeps the default.
/// `holds` (optional) receives the verdict.
///
/// # Safety
/// `aggregator` must be a live handle, `property` a NUL-terminated string,
/// `report_out` writable and `holds` null or writable.
#[no_mangle]
pub unsafe extern "C" fn agg_check(
    aggregator: *const AggAggregator,
    property: *const c_char,
    seed: u64,
    samples: usize,
    report_out: *mut *mut c_char,
    holds: *mut bool,
) -> AggStatus {
    guard(|| {
        let agg = handle(aggregator, "aggregator")?;
        let property = Property::from_str(text(property, "property")?)?;
        let mut sampler = agg.0.sampler(seed);
        if samples > 0 {
            sampler = sampler.with_samples(samples);
        }
        let report = check(property, &agg.0, &sampler);
        let json = serde_json::to_string(&report).map_err(|e| Failure(AggStatus::Panic, e.to_string()))?;
        let json = CString::new(json).map_err(|e| Failure(AggStatus::Panic, e.to_string()))?;
        if !holds.is_null() {
            holds.write(report.holds());
        }
        store(report_out, json.into_raw(), "report_out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message() -> String {
        unsafe { CStr::from_ptr(agg_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn panics_become_a_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, AggStatus::Panic);
        assert_eq!(message(), "internal panic: boom");
        assert_eq!(guard(|| Ok(())), AggStatus::Ok);
        assert!(agg_last_error().is_null());
    }

    #[test]
    fn error_kinds_map_to_statuses() {
        let status = |e: Error| Failure::from(e).0;
        assert_eq!(status(Error::Parse("x".into())), AggStatus::Parse);
        assert_eq!(status(Error::DimensionMismatch { expected: 2, got: 3 }), AggStatus::Domain);
        assert_eq!(status(Error::InvalidSpec("x".into())), AggStatus::InvalidArgument);
    }
}
