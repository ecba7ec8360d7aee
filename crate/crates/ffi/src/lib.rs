//! C ABI over `petersson_lab`.
//!
//! Every function returns a [`PlStatus`]; on failure the message is available from
//! [`pl_last_error`]. Handles are created by `*_new` and released by the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use petersson_lab::characters::{character_by_index, DirichletCharacter};
use petersson_lab::eisenstein::Group;
use petersson_lab::gram::{gram_matrix, verdict, GramMatrix, Verdict, WitnessReason};
use petersson_lab::lfunctions::{dirichlet_l, l_derivative};
use petersson_lab::renormint::{renormalized_norm, FundamentalDomainGrid, RenormForm};
use petersson_lab::verify::{self, Suite};
use petersson_lab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    InvalidArgument = 1,
    Pole = 2,
    InsufficientPrecision = 3,
    Divergent = 4,
    Computation = 5,
    NullPointer = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlGroup {
    Gamma1 = 0,
    Gamma0 = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlWitnessReason {
    RVanishes = 0,
    DetVanishes = 1,
    MprimeRankDeficient = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlSuite {
    Determinants = 0,
    Oracle = 1,
    Adjoint = 2,
    Theorems = 3,
}

/// Opaque Gram matrix.
pub struct PlGram(GramMatrix);

/// Opaque nondegeneracy verdict.
pub struct PlVerdict(Verdict);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PlStatus {
    match e {
        Error::InvalidArgument(_) => PlStatus::InvalidArgument,
        Error::Pole(_) => PlStatus::Pole,
        Error::InsufficientPrecision(_) => PlStatus::InsufficientPrecision,
        Error::Divergent(_) => PlStatus::Divergent,
        Error::Computation(_) => PlStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PlStatus, String)>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            PlStatus::Panic
        }
    }
}

fn lib<T>(r: petersson_lab::Result<T>) -> Result<T, (PlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (PlStatus, String) {
    (PlStatus::NullPointer, "null pointer argument".into())
}

fn group(level: u64, g: u32, char_index: i64) -> Result<Group, (PlStatus, String)> {
    let g = match g {
        0 => PlGroup::Gamma1,
        1 => PlGroup::Gamma0,
        _ => return Err((PlStatus::InvalidArgument, format!("unknown group code {g}"))),
    };
    match (g, char_index) {
        (PlGroup::Gamma1, i) if i < 0 => Ok(Group::Gamma1),
        (PlGroup::Gamma1, _) => Err((PlStatus::InvalidArgument, "char_index applies only to gamma0".into())),
        (PlGroup::Gamma0, i) if i < 0 => Ok(Group::Gamma0(DirichletCharacter::principal(level))),
        (PlGroup::Gamma0, i) => character_by_index(level, i as usize)
            .map(Group::Gamma0)
            .ok_or((PlStatus::OutOfRange, format!("no character with index {i} mod {level}"))),
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated, truncated to `len`).
/// Returns the full message length excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pl_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// `L(s, χ)` (or `L'(s, χ)`) for the character with `char_index` mod `modulus`.
///
/// # Safety
/// Output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_lvalue(
    modulus: u64,
    char_index: u64,
    s_re: f64,
    s_im: f64,
    derivative: bool,
    out_re: *mut f64,
    out_im: *mut f64,
    out_error_bound: *mut f64,
) -> PlStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() || out_error_bound.is_null() {
            return Err(null());
        }
        if modulus == 0 {
            return Err((PlStatus::InvalidArgument, "modulus must be positive".into()));
        }
        let chi = character_by_index(modulus, char_index as usize)
            .ok_or((PlStatus::OutOfRange, format!("no character with index {char_index} mod {modulus}")))?;
        let s = Complex64::new(s_re, s_im);
        let v = lib(if derivative { l_derivative(s, &chi) } else { dirichlet_l(s, &chi) })?;
        *out_re = v.value.re;
        *out_im = v.value.im;
        *out_error_bound = v.error_bound;
        Ok(())
    })
}

/// Builds the Gram matrix. `group_code` is a [`PlGroup`] code; `char_index < 0` selects Γ₁
/// or the principal nebentypus.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_gram_new(level: u64, weight: u32, group_code: u32, char_index: i64, out: *mut *mut PlGram) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let grp = group(level, group_code, char_index)?;
        let m = lib(gram_matrix(level, weight, &grp))?;
        *out = Box::into_raw(Box::new(PlGram(m)));
        Ok(())
    })
}

/// Basis dimension, 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_gram_dim(h: *const PlGram) -> usize {
    h.as_ref().map_or(0, |g| g.0.basis.len())
}

/// # Safety
/// `h` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_gram_entry(h: *const PlGram, i: usize, j: usize, out_re: *mut f64, out_im: *mut f64) -> PlStatus {
    guard(|| {
        let g = h.as_ref().ok_or_else(null)?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null());
        }
        let n = g.0.basis.len();
        if i >= n || j >= n {
            return Err((PlStatus::OutOfRange, format!("entry ({i},{j}) outside {n}×{n}")));
        }
        let z = g.0.full[(i, j)];
        *out_re = z.re;
        *out_im = z.im;
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`pl_gram_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_gram_free(h: *mut PlGram) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_verdict_new(level: u64, weight: u32, group_code: u32, char_index: i64, out: *mut *mut PlVerdict) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let grp = group(level, group_code, char_index)?;
        let v = lib(verdict(level, weight, &grp))?;
        *out = Box::into_raw(Box::new(PlVerdict(v)));
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_verdict_result(h: *const PlVerdict, nondegenerate: *mut bool, numeric_agrees: *mut bool) -> PlStatus {
    guard(|| {
        let v = h.as_ref().ok_or_else(null)?;
        if nondegenerate.is_null() || numeric_agrees.is_null() {
            return Err(null());
        }
        *nondegenerate = v.0.nondegenerate;
        *numeric_agrees = v.0.agrees();
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_verdict_witness_count(h: *const PlVerdict) -> usize {
    h.as_ref().map_or(0, |v| v.0.witnesses.len())
}

/// # Safety
/// `h` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_verdict_witness_reason(h: *const PlVerdict, i: usize, out: *mut PlWitnessReason) -> PlStatus {
    guard(|| {
        let v = h.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let w = v.0.witnesses.get(i).ok_or((PlStatus::OutOfRange, format!("no witness {i}")))?;
        *out = match w.reason {
            WitnessReason::RVanishes { .. } => PlWitnessReason::RVanishes,
            WitnessReason::DetVanishes { .. } => PlWitnessReason::DetVanishes,
            WitnessReason::MprimeRankDeficient { .. } => PlWitnessReason::MprimeRankDeficient,
        };
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`pl_verdict_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_verdict_free(h: *mut PlVerdict) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Level-1 renormalized norm of `E_k` on the truncated grid.
///
/// # Safety
/// Outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_renorm(
    weight: u32,
    height: f64,
    nx: usize,
    ny: usize,
    out_integral: *mut f64,
    out_reference: *mut f64,
) -> PlStatus {
    guard(|| {
        if out_integral.is_null() || out_reference.is_null() {
            return Err(null());
        }
        let grid = lib(FundamentalDomainGrid::new(height, nx, ny))?;
        let r = lib(renormalized_norm(weight, &grid, RenormForm::Truncated))?;
        *out_integral = r.integral;
        *out_reference = r.residue_reference;
        Ok(())
    })
}

/// Runs the suite with [`PlSuite`] code `suite`; `passed` receives the outcome.
///
/// # Safety
/// Outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_verify(suite: u32, max_level: u64, passed: *mut bool, checks: *mut usize) -> PlStatus {
    guard(|| {
        if passed.is_null() || checks.is_null() {
            return Err(null());
        }
        let s = match suite {
            x if x == PlSuite::Determinants as u32 => Suite::Determinants,
            x if x == PlSuite::Oracle as u32 => Suite::Oracle,
            x if x == PlSuite::Adjoint as u32 => Suite::Adjoint,
            x if x == PlSuite::Theorems as u32 => Suite::Theorems,
            _ => return Err((PlStatus::InvalidArgument, format!("unknown suite code {suite}"))),
        };
        let r = lib(verify::run(s, max_level))?;
        *passed = r.passed();
        *checks = r.checks;
        Ok(())
    })
}
