//! C ABI for the quadric33 engine: opaque curve handles, error codes, and
//! JSON string outputs. Every returned string is owned by the library and
//! must be released with `q33_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use quadric33::divisors;
use quadric33::exact::field::{Field, Rat};
use quadric33::parse::{parse_curve, parse_field};
use quadric33::report::{run_report, ReportOptions};

use num_bigint::BigInt;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Q33Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    WrongBidegree = 4,
    TowerTooDeep = 5,
    InvalidArgument = 6,
    InternalError = 7,
}

/// Opaque handle to a parsed bidegree-(3,3) curve.
pub struct Q33Curve {
    form: quadric33::biform::BiForm,
    input: String,
}

/// Flags for `q33_classify_json`.
pub const Q33_CLASSIFY_SKIP_SING: u32 = 1;
pub const Q33_CLASSIFY_CERTIFY_ONLY: u32 = 2;

fn to_cstring(s: String) -> *mut c_char {
    CString::new(s)
        .unwrap_or_else(|_| CString::new("<interior nul>").unwrap())
        .into_raw()
}

fn status_of(e: &quadric33::Error) -> Q33Status {
    use quadric33::Error::*;
    match e {
        Parse { .. } => Q33Status::ParseError,
        WrongBidegree { .. } => Q33Status::WrongBidegree,
        TowerTooDeep { .. } => Q33Status::TowerTooDeep,
        FieldMismatch | SwapOnAsymmetricBidegree | Usage(_) => Q33Status::InvalidArgument,
        _ => Q33Status::InternalError,
    }
}

/// Parse a curve expression over X, Y, Z, W (and optionally the generator t
/// of Q[t]/(field_spec)) into an opaque handle.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string; `field_spec` may be NULL;
/// `out` must be a valid pointer slot. The handle must be released with
/// `q33_curve_free`.
#[no_mangle]
pub unsafe extern "C" fn q33_curve_parse(
    expr: *const c_char,
    field_spec: *const c_char,
    out: *mut *mut Q33Curve,
) -> Q33Status {
    if expr.is_null() || out.is_null() {
        return Q33Status::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let Ok(expr) = unsafe { CStr::from_ptr(expr) }.to_str() else {
        return Q33Status::InvalidUtf8;
    };
    let field = if field_spec.is_null() {
        Field::rationals()
    } else {
        let Ok(spec) = unsafe { CStr::from_ptr(field_spec) }.to_str() else {
            return Q33Status::InvalidUtf8;
        };
        match parse_field(spec) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        }
    };
    match parse_curve(expr, &field) {
        Ok(form) => {
            let handle = Box::new(Q33Curve {
                form,
                input: expr.to_string(),
            });
            unsafe { *out = Box::into_raw(handle) };
            Q33Status::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a curve handle.
///
/// # Safety
/// `curve` must be a pointer previously returned by `q33_curve_parse`, not
/// yet freed; NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn q33_curve_free(curve: *mut Q33Curve) {
    if !curve.is_null() {
        drop(unsafe { Box::from_raw(curve) });
    }
}

/// Classify a curve; on success writes a JSON report string to `out`.
///
/// # Safety
/// `curve` must be a live handle from `q33_curve_parse`; `out` must be a
/// valid pointer slot. The string must be released with `q33_string_free`.
#[no_mangle]
pub unsafe extern "C" fn q33_classify_json(
    curve: *const Q33Curve,
    flags: u32,
    out: *mut *mut c_char,
) -> Q33Status {
    if curve.is_null() || out.is_null() {
        return Q33Status::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let c = unsafe { &*curve };
    let opts = ReportOptions {
        skip_sing: flags & Q33_CLASSIFY_SKIP_SING != 0,
        certify_only: flags & Q33_CLASSIFY_CERTIFY_ONLY != 0,
        with_timing: false,
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        run_report(&c.form, &c.input, opts)
    }));
    match result {
        Ok(Ok(report)) => {
            let json = serde_json::to_string_pretty(&report).unwrap();
            unsafe { *out = to_cstring(json) };
            Q33Status::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => Q33Status::InternalError,
    }
}

/// Divisor-calculus queries. `subcommand` is one of "chow", "lambda-delta",
/// "pullback", "discrepancy", "polarization", "moving-slope", "petri"; the
/// rational alpha_num/alpha_den is read only by the alpha-dependent queries.
///
/// # Safety
/// `subcommand` must be a valid NUL-terminated string and `out` a valid
/// pointer slot; release the string with `q33_string_free`.
#[no_mangle]
pub unsafe extern "C" fn q33_divisor_json(
    subcommand: *const c_char,
    alpha_num: i64,
    alpha_den: i64,
    out: *mut *mut c_char,
) -> Q33Status {
    if subcommand.is_null() || out.is_null() {
        return Q33Status::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let Ok(sub) = unsafe { CStr::from_ptr(subcommand) }.to_str() else {
        return Q33Status::InvalidUtf8;
    };
    let alpha = || -> Option<Rat> {
        if alpha_den == 0 {
            None
        } else {
            Some(Rat::new(BigInt::from(alpha_num), BigInt::from(alpha_den)))
        }
    };
    let json = match sub {
        "chow" => serde_json::json!({ "kappa": divisors::kappa_on_v().to_string() }),
        "lambda-delta" => {
            let (l, d) = divisors::lambda_delta_on_v();
            serde_json::json!({ "lambda": l.to_string(), "delta": d.to_string() })
        }
        "pullback" => {
            let pb = divisors::standard_pullbacks();
            serde_json::json!({
                "f_lambda": format!("{}", pb.f_lambda),
                "f_delta": format!("{}", pb.f_delta),
            })
        }
        "discrepancy" => {
            let Some(a) = alpha() else {
                return Q33Status::InvalidArgument;
            };
            let d = divisors::discrepancy(&a);
            serde_json::json!({
                "class": format!("{}", d),
                "effective": divisors::is_effective(&d),
            })
        }
        "polarization" => {
            let Some(a) = alpha() else {
                return Q33Status::InvalidArgument;
            };
            serde_json::json!({ "degree": divisors::model_polarization(&a).to_string() })
        }
        "moving-slope" => {
            let ms = divisors::moving_slope_certificate();
            serde_json::json!({
                "moving_class": format!("{}", ms.moving_class),
                "slope": ms.slope.to_string(),
                "inequalities": ms.inequalities,
            })
        }
        "petri" => {
            serde_json::json!({ "petri": format!("{}", divisors::petri_class_in_ldd()) })
        }
        _ => return Q33Status::InvalidArgument,
    };
    unsafe { *out = to_cstring(serde_json::to_string_pretty(&json).unwrap()) };
    Q33Status::Ok
}

/// Run the fixture corpus; returns 0 when every entry passes, 1 otherwise,
/// and writes a JSON summary to `out` when non-NULL.
///
/// # Safety
/// `out` may be NULL or a valid pointer slot; release the string with
/// `q33_string_free`.
#[no_mangle]
pub unsafe extern "C" fn q33_corpus_run(jobs: u32, out: *mut *mut c_char) -> i32 {
    let (outcomes, ok) = quadric33::corpus::corpus_run(jobs.max(1) as usize);
    if !out.is_null() {
        let entries: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                serde_json::json!({
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                })
            })
            .collect();
        let json = serde_json::to_string_pretty(&serde_json::json!({
            "entries": entries,
            "ok": ok,
        }))
        .unwrap();
        unsafe { *out = to_cstring(json) };
    }
    if ok {
        0
    } else {
        1
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a q33_* function, not yet
/// freed; NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn q33_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn classify(expr: &str) -> (Q33Status, Option<String>) {
        let cexpr = CString::new(expr).unwrap();
        let mut handle: *mut Q33Curve = ptr::null_mut();
        let st = unsafe { q33_curve_parse(cexpr.as_ptr(), ptr::null(), &mut handle) };
        if st != Q33Status::Ok {
            return (st, None);
        }
        let mut out: *mut c_char = ptr::null_mut();
        let st = unsafe { q33_classify_json(handle, 0, &mut out) };
        let json = if out.is_null() {
            None
        } else {
            let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
            unsafe { q33_string_free(out) };
            Some(s)
        };
        unsafe { q33_curve_free(handle) };
        (st, json)
    }

    #[test]
    fn classify_round_trip() {
        let (st, json) = classify("X*Y*(X*W^3 + Y*Z^3)");
        assert_eq!(st, Q33Status::Ok);
        let json = json.unwrap();
        assert!(json.contains("strictly_semistable"));
        assert!(json.contains("Delta_2"));
    }

    #[test]
    fn parse_errors_surface() {
        let (st, _) = classify("X^2");
        assert_eq!(st, Q33Status::WrongBidegree);
        let cexpr = CString::new("X^3*Z^3 + $").unwrap();
        let mut handle: *mut Q33Curve = ptr::null_mut();
        let st = unsafe { q33_curve_parse(cexpr.as_ptr(), ptr::null(), &mut handle) };
        assert_eq!(st, Q33Status::ParseError);
        assert!(handle.is_null());
    }

    #[test]
    fn divisor_queries() {
        let sub = CString::new("moving-slope").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        let st = unsafe { q33_divisor_json(sub.as_ptr(), 0, 1, &mut out) };
        assert_eq!(st, Q33Status::Ok);
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { q33_string_free(out) };
        assert!(s.contains("60/7"));
        let sub = CString::new("discrepancy").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        let st = unsafe { q33_divisor_json(sub.as_ptr(), 29, 60, &mut out) };
        assert_eq!(st, Q33Status::Ok);
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { q33_string_free(out) };
        assert!(s.contains("effective"));
        let sub = CString::new("nope").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        let st = unsafe { q33_divisor_json(sub.as_ptr(), 0, 1, &mut out) };
        assert_eq!(st, Q33Status::InvalidArgument);
    }

    #[test]
    fn null_safety() {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { q33_classify_json(ptr::null(), 0, &mut out) },
            Q33Status::NullPointer
        );
        unsafe { q33_curve_free(ptr::null_mut()) };
        unsafe { q33_string_free(ptr::null_mut()) };
    }
}
