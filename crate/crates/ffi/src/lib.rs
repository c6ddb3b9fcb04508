//! C ABI over `jvf-core`.
//!
//! Spaces and parameter sets live behind opaque handles created by
//! `jvf_*_new` and released by the matching `jvf_*_free`. Every fallible
//! call returns a [`JvfStatus`] and writes results through out-pointers,
//! which are left untouched on failure. Vectors are `dim` contiguous
//! doubles; shift lists are row-major, one shift per row.
//!
//! Nothing unwinds across the boundary: a panic inside the library is
//! reported as [`JvfStatus::Panic`].

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use jvf::convergence::error_radius;
use jvf::fraction::{eval_converged, eval_truncated, validate};
use jvf::geometry::{ExtVector, SignatureSpace, Vector};
use jvf::{JvfError, JvfParams};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JvfStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad signature, scale, shift, dimension or level count.
    InvalidArgument = 2,
    /// The point has a zero `y`-component.
    OnBoundary = 3,
    /// The level budget ran out before the requested tolerance.
    NotConverged = 4,
    /// A polynomial or fragment needed by the computation vanished.
    Degenerate = 5,
    Panic = 6,
}

impl From<&JvfError> for JvfStatus {
    fn from(e: &JvfError) -> Self {
        match e {
            JvfError::OnBoundary => JvfStatus::OnBoundary,
            JvfError::NotConverged { .. } | JvfError::NoAttractiveFixedPoint => JvfStatus::NotConverged,
            JvfError::FragmentSingular(_) | JvfError::DegenerateDenominator | JvfError::DegeneratePolynomial => {
                JvfStatus::Degenerate
            }
            _ => JvfStatus::InvalidArgument,
        }
    }
}

/// Opaque signature space.
pub struct JvfSpace(SignatureSpace);

/// Opaque coefficient lists, periodic or finite.
pub struct JvfParamSet(JvfParams);

fn guard(f: impl FnOnce() -> Result<(), JvfStatus>) -> JvfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JvfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => JvfStatus::Panic,
    }
}

fn lift<T>(r: Result<T, JvfError>) -> Result<T, JvfStatus> {
    r.map_err(|e| JvfStatus::from(&e))
}

/// # Safety
/// `p` is null or valid for `len` reads.
unsafe fn read<'a, T>(p: *const T, len: usize) -> Result<&'a [T], JvfStatus> {
    if p.is_null() {
        return Err(JvfStatus::NullPointer);
    }
    Ok(unsafe { slice::from_raw_parts(p, len) })
}

/// # Safety
/// `p` is null or a live handle.
unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, JvfStatus> {
    unsafe { p.as_ref() }.ok_or(JvfStatus::NullPointer)
}

fn rows(flat: &[f64], dim: usize) -> Vec<Vector> {
    flat.chunks(dim).map(Vector::from_slice).collect()
}

/// Static description of a status code; never null.
#[no_mangle]
pub extern "C" fn jvf_status_message(status: JvfStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        JvfStatus::Ok => b"ok\0",
        JvfStatus::NullPointer => b"null pointer argument\0",
        JvfStatus::InvalidArgument => b"invalid argument\0",
        JvfStatus::OnBoundary => b"point lies on the boundary hyperplane\0",
        JvfStatus::NotConverged => b"not converged within the level budget\0",
        JvfStatus::Degenerate => b"degenerate polynomial or fragment\0",
        JvfStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Creates a space from `dim` signs (each `+1` or `−1`) with the `y` axis at `y_index`.
///
/// # Safety
/// `signs` is valid for `dim` reads; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn jvf_space_new(
    signs: *const i8,
    dim: usize,
    y_index: usize,
    out: *mut *mut JvfSpace,
) -> JvfStatus {
    guard(|| {
        if out.is_null() {
            return Err(JvfStatus::NullPointer);
        }
        let signs = unsafe { read(signs, dim) }?;
        let space = lift(SignatureSpace::new(signs, y_index))?;
        unsafe { *out = Box::into_raw(Box::new(JvfSpace(space))) };
        Ok(())
    })
}

/// # Safety
/// `space` is null or came from [`jvf_space_new`] and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jvf_space_free(space: *mut JvfSpace) {
    if !space.is_null() {
        drop(unsafe { Box::from_raw(space) });
    }
}

/// Dimension of the space; 0 for a null handle.
///
/// # Safety
/// `space` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jvf_space_dim(space: *const JvfSpace) -> usize {
    unsafe { space.as_ref() }.map_or(0, |s| s.0.dim())
}

/// Period-`period` coefficients: `period × dim` shifts and `period` scales.
///
/// # Safety
/// `shifts` is valid for `period * dim` reads, `scales` for `period`, `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn jvf_params_new_periodic(
    shifts: *const f64,
    scales: *const f64,
    period: usize,
    dim: usize,
    out: *mut *mut JvfParamSet,
) -> JvfStatus {
    guard(|| {
        if out.is_null() {
            return Err(JvfStatus::NullPointer);
        }
        if dim == 0 || period == 0 {
            return Err(JvfStatus::InvalidArgument);
        }
        let a = rows(unsafe { read(shifts, period * dim) }?, dim);
        let b = unsafe { read(scales, period) }?.to_vec();
        let params = lift(JvfParams::periodic(a, b))?;
        unsafe { *out = Box::into_raw(Box::new(JvfParamSet(params))) };
        Ok(())
    })
}

/// `levels` explicit levels: `levels × dim` shifts and `levels + 1` scales.
///
/// # Safety
/// `shifts` is valid for `levels * dim` reads, `scales` for `levels + 1`, `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn jvf_params_new_finite(
    shifts: *const f64,
    scales: *const f64,
    levels: usize,
    dim: usize,
    out: *mut *mut JvfParamSet,
) -> JvfStatus {
    guard(|| {
        if out.is_null() {
            return Err(JvfStatus::NullPointer);
        }
        if dim == 0 || levels == 0 {
            return Err(JvfStatus::InvalidArgument);
        }
        let a = rows(unsafe { read(shifts, levels * dim) }?, dim);
        let b = unsafe { read(scales, levels + 1) }?.to_vec();
        let params = lift(JvfParams::finite(a, b))?;
        unsafe { *out = Box::into_raw(Box::new(JvfParamSet(params))) };
        Ok(())
    })
}

/// # Safety
/// `params` is null or came from a `jvf_params_new_*` call and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jvf_params_free(params: *mut JvfParamSet) {
    if !params.is_null() {
        drop(unsafe { Box::from_raw(params) });
    }
}

/// Checks the shift dimensions and `y`-components against `space`.
///
/// # Safety
/// Both handles are null or live.
#[no_mangle]
pub unsafe extern "C" fn jvf_params_validate(space: *const JvfSpace, params: *const JvfParamSet) -> JvfStatus {
    guard(|| {
        let (s, p) = unsafe { (handle(space)?, handle(params)?) };
        lift(validate(&s.0, &p.0))
    })
}

/// Space, parameters and point after the shared checks.
///
/// # Safety
/// Handles are null or live; `z` is null or valid for `dim` reads.
unsafe fn prepare<'a>(
    space: *const JvfSpace,
    params: *const JvfParamSet,
    z: *const f64,
) -> Result<(&'a SignatureSpace, &'a JvfParams, Vector), JvfStatus> {
    let (s, p) = unsafe { (handle(space)?, handle(params)?) };
    lift(validate(&s.0, &p.0))?;
    let z = Vector::from_slice(unsafe { read(z, s.0.dim()) }?);
    Ok((&s.0, &p.0, z))
}

/// # Safety
/// `out` is valid for `dim` writes; `out_infinite` is null or valid for one.
unsafe fn write_value(v: &ExtVector, out: *mut f64, dim: usize, out_infinite: *mut bool) {
    match v {
        ExtVector::Finite(w) => unsafe { slice::from_raw_parts_mut(out, dim) }.copy_from_slice(w),
        ExtVector::Infinity => unsafe { slice::from_raw_parts_mut(out, dim) }.fill(f64::INFINITY),
    }
    if !out_infinite.is_null() {
        unsafe { *out_infinite = v.is_infinite() };
    }
}

/// `R_N(Z, T)` with `N = levels`. A null `tail` means `T = 0`; a nonzero
/// `tail_infinite` means `T = ∞` and `tail` is ignored. An infinite result
/// fills `out` with `+inf` and sets `*out_infinite` when that pointer is
/// non-null.
///
/// # Safety
/// `z` and `out` are valid for `dim` doubles, `tail` is null or valid for
/// `dim` reads, `out_infinite` is null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn jvf_eval_truncated(
    space: *const JvfSpace,
    params: *const JvfParamSet,
    z: *const f64,
    levels: usize,
    tail: *const f64,
    tail_infinite: bool,
    out: *mut f64,
    out_infinite: *mut bool,
) -> JvfStatus {
    guard(|| {
        let (s, p, z) = unsafe { prepare(space, params, z) }?;
        if out.is_null() {
            return Err(JvfStatus::NullPointer);
        }
        if levels == 0 {
            return Err(JvfStatus::InvalidArgument);
        }
        lift(p.check_levels(levels))?;
        let t = if tail_infinite {
            ExtVector::Infinity
        } else if tail.is_null() {
            ExtVector::zeros(s.dim())
        } else {
            ExtVector::Finite(Vector::from_slice(unsafe { read(tail, s.dim()) }?))
        };
        let v = eval_truncated(s, p, &z, levels, &t);
        unsafe { write_value(&v, out, s.dim(), out_infinite) };
        Ok(())
    })
}

/// `R_N(Z, 0)` at the smallest `N ≤ max_levels` whose guaranteed diameter
/// `2ρ_N` is at most `rel_tol·|R_N|`. `out_levels` and `out_bound` receive
/// `N` and `2ρ_N`; either may be null.
///
/// # Safety
/// `z` and `out` are valid for `dim` doubles; the remaining out-pointers are null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn jvf_eval_converged(
    space: *const JvfSpace,
    params: *const JvfParamSet,
    z: *const f64,
    rel_tol: f64,
    max_levels: usize,
    out: *mut f64,
    out_infinite: *mut bool,
    out_levels: *mut usize,
    out_bound: *mut f64,
) -> JvfStatus {
    guard(|| {
        let (s, p, z) = unsafe { prepare(space, params, z) }?;
        if out.is_null() {
            return Err(JvfStatus::NullPointer);
        }
        if rel_tol.is_nan() || rel_tol <= 0.0 {
            return Err(JvfStatus::InvalidArgument);
        }
        let c = lift(eval_converged(s, p, &z, rel_tol, max_levels))?;
        unsafe { write_value(&c.value, out, s.dim(), out_infinite) };
        if !out_levels.is_null() {
            unsafe { *out_levels = c.levels_used };
        }
        if !out_bound.is_null() {
            unsafe { *out_bound = c.bound };
        }
        Ok(())
    })
}

/// A-priori radius `ρ_N(Z)` of the ball holding every continuation after `levels` levels.
///
/// # Safety
/// `z` is valid for `dim` reads and `out_radius` for one write.
#[no_mangle]
pub unsafe extern "C" fn jvf_error_radius(
    space: *const JvfSpace,
    params: *const JvfParamSet,
    z: *const f64,
    levels: usize,
    out_radius: *mut f64,
) -> JvfStatus {
    guard(|| {
        let (s, p, z) = unsafe { prepare(space, params, z) }?;
        if out_radius.is_null() {
            return Err(JvfStatus::NullPointer);
        }
        let ball = lift(error_radius(s, p, &z, levels))?;
        unsafe { *out_radius = ball.radius() };
        Ok(())
    })
}
