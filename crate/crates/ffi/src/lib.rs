//! C ABI for the sigmadelta library: opaque handles, integer status codes,
//! UTF-8 strings for all exact values. Every returned string must be
//! released with `sd_string_free`; every system handle with `sd_system_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use sigmadelta::galois::{
    check_product_equal, root_of_unity_order, stab_delta, stab_sigma, verify_pv_relations,
    CatalogTag, ProductOutcome, PvOutcome, C2,
};
use sigmadelta::rational::parse_rat;
use sigmadelta::system::{check_integrability, IntegrabilityOutcome, SigmaDeltaSystem};
use sigmadelta::Error;

/// Status codes shared by every entry point. `SD_STATUS_OK` and
/// `SD_STATUS_FAIL` are verdicts; everything else is an error, with detail
/// available from `sd_last_error`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    Fail = 1,
    ErrParse = 2,
    ErrShape = 3,
    ErrInvalid = 4,
    ErrSingular = 5,
    ErrNullArgument = 6,
    ErrOther = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SdStatus {
    set_error(&err.to_string());
    match err {
        Error::ParseError(_) | Error::ExprError { .. } => SdStatus::ErrParse,
        Error::ShapeError(_) => SdStatus::ErrShape,
        Error::InvalidSpecialization(_) | Error::InvalidSystem(_) => SdStatus::ErrInvalid,
        Error::SingularSpecialization(_) => SdStatus::ErrSingular,
        _ => SdStatus::ErrOther,
    }
}

/// Message for the most recent error on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// Opaque handle to a σδ-linear system.
pub struct SdSystem {
    inner: SigmaDeltaSystem,
}

unsafe fn cstr<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(p) }.to_str().ok()
}

fn give_string(s: String, out: *mut *mut c_char) -> SdStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SdStatus::Ok
        }
        Err(_) => {
            set_error("string contains interior NUL");
            SdStatus::ErrOther
        }
    }
}

/// Frees a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a system-file JSON document into a new handle.
#[no_mangle]
pub unsafe extern "C" fn sd_system_parse(json: *const c_char, out: *mut *mut SdSystem) -> SdStatus {
    if out.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let Some(json) = (unsafe { cstr(json) }) else {
        set_error("json is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    match sigmadelta::sysfile::parse_system_str(json) {
        Ok(sys) => {
            unsafe { *out = Box::into_raw(Box::new(SdSystem { inner: sys })) };
            SdStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The built-in Chebyshev system.
#[no_mangle]
pub unsafe extern "C" fn sd_system_chebyshev(out: *mut *mut SdSystem) -> SdStatus {
    if out.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let sys = sigmadelta::system::chebyshev_system();
    unsafe { *out = Box::into_raw(Box::new(SdSystem { inner: sys })) };
    SdStatus::Ok
}

/// Frees a system handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sd_system_free(sys: *mut SdSystem) {
    if !sys.is_null() {
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// Serializes a system back to its JSON document form.
#[no_mangle]
pub unsafe extern "C" fn sd_system_serialize(
    sys: *const SdSystem,
    out: *mut *mut c_char,
) -> SdStatus {
    if sys.is_null() || out.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let sys = unsafe { &*sys };
    give_string(sigmadelta::sysfile::serialize_system(&sys.inner), out)
}

/// σ(B)A = δ(A) + AB: `SD_STATUS_OK` when the identity holds exactly,
/// `SD_STATUS_FAIL` otherwise.
#[no_mangle]
pub unsafe extern "C" fn sd_system_check_integrability(sys: *const SdSystem) -> SdStatus {
    if sys.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let sys = unsafe { &*sys };
    match check_integrability(&sys.inner) {
        Ok(IntegrabilityOutcome::Pass) => SdStatus::Ok,
        Ok(IntegrabilityOutcome::Fail(_)) => SdStatus::Fail,
        Err(e) => status_of(&e),
    }
}

/// Specializes t = c1 ("p/q") and reports whether the point is admissible.
#[no_mangle]
pub unsafe extern "C" fn sd_system_specialize_t(
    sys: *const SdSystem,
    c1: *const c_char,
) -> SdStatus {
    if sys.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let Some(c1) = (unsafe { cstr(c1) }) else {
        set_error("c1 is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    let sys = unsafe { &*sys };
    let c1 = match parse_rat(c1) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    match sigmadelta::system::specialize_t(&sys.inner, &c1) {
        Ok(_) => SdStatus::Ok,
        Err(e) => status_of(&e),
    }
}

fn tag_string(tag: CatalogTag) -> String {
    match tag {
        CatalogTag::FullG => "FullG".into(),
        CatalogTag::DiagTorus => "DiagTorus".into(),
        CatalogTag::DiagTorusMuQ(q) => format!("DiagTorusMuQ({})", q),
        CatalogTag::DihedralMuQ(q) => format!("DihedralMuQ({})", q),
        CatalogTag::Trivial => "Trivial".into(),
        CatalogTag::Custom => "Custom".into(),
    }
}

fn parse_c2(s: &str) -> Result<C2, Error> {
    if s.eq_ignore_ascii_case("nonrational") {
        Ok(C2::NonRational)
    } else {
        Ok(C2::Rational(parse_rat(s)?))
    }
}

/// Catalog name of stab(m) for the Chebyshev family at t = c1 ("p/q").
#[no_mangle]
pub unsafe extern "C" fn sd_galois_stab_sigma(
    c1: *const c_char,
    out: *mut *mut c_char,
) -> SdStatus {
    let Some(c1) = (unsafe { cstr(c1) }) else {
        set_error("c1 is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    if out.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let c1 = match parse_rat(c1) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    match stab_sigma(&c1) {
        Ok(h) => give_string(tag_string(h.tag), out),
        Err(e) => status_of(&e),
    }
}

/// Catalog name of stab(n) at x = c2 ("p/q" or "nonrational").
#[no_mangle]
pub unsafe extern "C" fn sd_galois_stab_delta(
    c2: *const c_char,
    out: *mut *mut c_char,
) -> SdStatus {
    let Some(c2) = (unsafe { cstr(c2) }) else {
        set_error("c2 is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    if out.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let c2 = match parse_c2(c2) {
        Ok(v) => v,
        Err(e) => return status_of(&e),
    };
    give_string(tag_string(stab_delta(&c2).tag), out)
}

/// Multiplicative order of α = c1 + √(c1²−1), or 0 when infinite.
#[no_mangle]
pub unsafe extern "C" fn sd_galois_alpha_order(c1: *const c_char, out: *mut u32) -> SdStatus {
    let Some(c1) = (unsafe { cstr(c1) }) else {
        set_error("c1 is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    if out.is_null() {
        return SdStatus::ErrNullArgument;
    }
    let c1 = match parse_rat(c1) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    unsafe { *out = root_of_unity_order(&c1).unwrap_or(0) };
    SdStatus::Ok
}

/// G = stab(m)·stab(n): `SD_STATUS_OK` with both factorization witnesses
/// when the product covers G, `SD_STATUS_FAIL` otherwise.
#[no_mangle]
pub unsafe extern "C" fn sd_galois_product_check(
    c1: *const c_char,
    c2: *const c_char,
) -> SdStatus {
    let Some(c1) = (unsafe { cstr(c1) }) else {
        set_error("c1 is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    let Some(c2) = (unsafe { cstr(c2) }) else {
        set_error("c2 is NULL or not UTF-8");
        return SdStatus::ErrNullArgument;
    };
    let c1 = match parse_rat(c1) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let c2 = match parse_c2(c2) {
        Ok(v) => v,
        Err(e) => return status_of(&e),
    };
    let h = match stab_sigma(&c1) {
        Ok(h) => h,
        Err(e) => return status_of(&e),
    };
    match check_product_equal(&h, &stab_delta(&c2)) {
        Ok(ProductOutcome::Pass(_)) => SdStatus::Ok,
        Ok(ProductOutcome::Fail(_)) => SdStatus::Fail,
        Err(e) => status_of(&e),
    }
}

/// Picard-Vessiot relations of the Chebyshev tower solution matrix.
#[no_mangle]
pub extern "C" fn sd_verify_pv_relations() -> SdStatus {
    match verify_pv_relations() {
        Ok(PvOutcome::Pass) => SdStatus::Ok,
        Ok(PvOutcome::Fail(_, _)) => SdStatus::Fail,
        Err(e) => status_of(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn chebyshev_round_trip_through_abi() {
        unsafe {
            let mut sys: *mut SdSystem = ptr::null_mut();
            assert!(sd_system_chebyshev(&mut sys) == SdStatus::Ok);
            assert!(sd_system_check_integrability(sys) == SdStatus::Ok);
            let mut json: *mut c_char = ptr::null_mut();
            assert!(sd_system_serialize(sys, &mut json) == SdStatus::Ok);
            let mut sys2: *mut SdSystem = ptr::null_mut();
            assert!(sd_system_parse(json, &mut sys2) == SdStatus::Ok);
            assert!(sd_system_check_integrability(sys2) == SdStatus::Ok);
            sd_string_free(json);
            sd_system_free(sys);
            sd_system_free(sys2);
        }
    }

    #[test]
    fn specialization_and_errors() {
        unsafe {
            let mut sys: *mut SdSystem = ptr::null_mut();
            sd_system_chebyshev(&mut sys);
            assert!(sd_system_specialize_t(sys, c("0").as_ptr()) == SdStatus::Ok);
            // h(1) = 0: invalid specialization with a readable message
            assert!(sd_system_specialize_t(sys, c("1").as_ptr()) == SdStatus::ErrInvalid);
            let msg = sd_last_error();
            assert!(!msg.is_null());
            assert!(CStr::from_ptr(msg).to_str().unwrap().contains("vanishes"));
            // bad rational syntax
            assert!(sd_system_specialize_t(sys, c("x+1").as_ptr()) == SdStatus::ErrParse);
            sd_system_free(sys);
        }
    }

    #[test]
    fn galois_entry_points() {
        unsafe {
            let mut name: *mut c_char = ptr::null_mut();
            assert!(sd_galois_stab_sigma(c("2").as_ptr(), &mut name) == SdStatus::Ok);
            assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "DiagTorus");
            sd_string_free(name);

            let mut name: *mut c_char = ptr::null_mut();
            assert!(sd_galois_stab_delta(c("1/3").as_ptr(), &mut name) == SdStatus::Ok);
            assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "DihedralMuQ(3)");
            sd_string_free(name);

            let mut order = 99u32;
            assert!(sd_galois_alpha_order(c("1/2").as_ptr(), &mut order) == SdStatus::Ok);
            assert_eq!(order, 6);
            assert!(sd_galois_alpha_order(c("2").as_ptr(), &mut order) == SdStatus::Ok);
            assert_eq!(order, 0);

            assert!(sd_galois_product_check(c("2").as_ptr(), c("1/3").as_ptr()) == SdStatus::Ok);
            assert!(sd_verify_pv_relations() == SdStatus::Ok);
        }
    }

    #[test]
    fn null_handling() {
        unsafe {
            assert!(sd_system_parse(ptr::null(), ptr::null_mut()) == SdStatus::ErrNullArgument);
            let mut sys: *mut SdSystem = ptr::null_mut();
            let bad = c("{ not json");
            assert!(sd_system_parse(bad.as_ptr(), &mut sys) == SdStatus::ErrParse);
            sd_system_free(ptr::null_mut());
            sd_string_free(ptr::null_mut());
        }
    }
}
