use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use jvf_ffi::*;

struct Handles {
    space: *mut JvfSpace,
    params: *mut JvfParamSet,
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            jvf_params_free(self.params);
            jvf_space_free(self.space);
        }
    }
}

/// Signature `(+1, +1, −1)` with the three-fold symmetric period-3 coefficients.
fn symmetric() -> Handles {
    let signs = [1i8, 1, -1];
    let a = 0.4;
    let mut shifts = Vec::new();
    for k in 0..3 {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        shifts.extend([a * phi.cos(), a * phi.sin(), 0.0]);
    }
    let scales = [0.25; 3];
    let mut h = Handles { space: ptr::null_mut(), params: ptr::null_mut() };
    unsafe {
        assert_eq!(jvf_space_new(signs.as_ptr(), 3, 2, &mut h.space), JvfStatus::Ok);
        assert_eq!(jvf_params_new_periodic(shifts.as_ptr(), scales.as_ptr(), 3, 3, &mut h.params), JvfStatus::Ok);
        assert_eq!(jvf_space_dim(h.space), 3);
        assert_eq!(jvf_params_validate(h.space, h.params), JvfStatus::Ok);
    }
    h
}

#[test]
fn converged_value_has_negative_y_and_matches_truncation() {
    let h = symmetric();
    let z = [-0.26, 0.69, 0.001];
    let mut value = [0.0; 3];
    let (mut infinite, mut levels, mut bound) = (true, 0usize, 0.0);
    let status = unsafe {
        jvf_eval_converged(
            h.space,
            h.params,
            z.as_ptr(),
            1e-12,
            100_000,
            value.as_mut_ptr(),
            &mut infinite,
            &mut levels,
            &mut bound,
        )
    };
    assert_eq!(status, JvfStatus::Ok);
    assert!(!infinite);
    assert!(value[2] < 0.0);
    assert!(bound <= 1e-12 * (value.iter().map(|c| c * c).sum::<f64>()).sqrt());

    let mut direct = [0.0; 3];
    let status = unsafe {
        jvf_eval_truncated(
            h.space,
            h.params,
            z.as_ptr(),
            levels,
            ptr::null(),
            false,
            direct.as_mut_ptr(),
            ptr::null_mut(),
        )
    };
    assert_eq!(status, JvfStatus::Ok);
    assert_eq!(direct, value);

    let mut radius = 0.0;
    assert_eq!(unsafe { jvf_error_radius(h.space, h.params, z.as_ptr(), levels, &mut radius) }, JvfStatus::Ok);
    assert!((2.0 * radius - bound).abs() <= 1e-12 * bound);
}

#[test]
fn infinite_tail_drops_the_last_level() {
    let h = symmetric();
    let z = [0.3, -0.2, 0.1];
    let (mut deep, mut shallow) = ([0.0; 3], [0.0; 3]);
    unsafe {
        assert_eq!(
            jvf_eval_truncated(h.space, h.params, z.as_ptr(), 5, ptr::null(), true, deep.as_mut_ptr(), ptr::null_mut()),
            JvfStatus::Ok
        );
        assert_eq!(
            jvf_eval_truncated(
                h.space,
                h.params,
                z.as_ptr(),
                4,
                ptr::null(),
                false,
                shallow.as_mut_ptr(),
                ptr::null_mut()
            ),
            JvfStatus::Ok
        );
    }
    assert_eq!(deep, shallow);
}

#[test]
fn single_level_radius() {
    let h = symmetric();
    let z = [0.0, 0.0, 2.0];
    let mut radius = 0.0;
    assert_eq!(unsafe { jvf_error_radius(h.space, h.params, z.as_ptr(), 1, &mut radius) }, JvfStatus::Ok);
    assert!((radius - 0.25).abs() < 1e-15);
}

#[test]
fn errors_map_to_status_codes() {
    let h = symmetric();
    let plane = [0.1, 0.2, 0.0];
    let off = [-0.26, 0.69, 0.001];
    let mut out = [7.0; 3];
    let mut radius = -1.0;
    unsafe {
        assert_eq!(
            jvf_eval_converged(
                h.space,
                h.params,
                plane.as_ptr(),
                1e-12,
                1000,
                out.as_mut_ptr(),
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            JvfStatus::OnBoundary
        );
        assert_eq!(
            jvf_eval_converged(
                h.space,
                h.params,
                off.as_ptr(),
                1e-12,
                3,
                out.as_mut_ptr(),
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            JvfStatus::NotConverged
        );
        assert_eq!(jvf_error_radius(h.space, h.params, plane.as_ptr(), 4, &mut radius), JvfStatus::OnBoundary);
        assert_eq!(
            jvf_eval_truncated(
                h.space,
                h.params,
                off.as_ptr(),
                0,
                ptr::null(),
                false,
                out.as_mut_ptr(),
                ptr::null_mut()
            ),
            JvfStatus::InvalidArgument
        );
        assert_eq!(jvf_error_radius(ptr::null(), h.params, off.as_ptr(), 4, &mut radius), JvfStatus::NullPointer);
        assert_eq!(jvf_error_radius(h.space, h.params, ptr::null(), 4, &mut radius), JvfStatus::NullPointer);
    }
    // failed calls leave outputs alone
    assert_eq!(out, [7.0; 3]);
    assert_eq!(radius, -1.0);
}

#[test]
fn constructors_reject_bad_input() {
    let mut space = ptr::null_mut();
    let mut params = ptr::null_mut();
    let no_negative = [1i8, 1, 1];
    let shifts = [0.0, 0.0, 0.5];
    let scales = [0.25, 0.25];
    unsafe {
        assert_eq!(jvf_space_new(no_negative.as_ptr(), 3, 2, &mut space), JvfStatus::InvalidArgument);
        assert!(space.is_null());
        assert_eq!(jvf_space_new(ptr::null(), 3, 2, &mut space), JvfStatus::NullPointer);
        assert_eq!(
            jvf_params_new_periodic(shifts.as_ptr(), scales.as_ptr(), 1, 3, ptr::null_mut()),
            JvfStatus::NullPointer
        );
        assert_eq!(
            jvf_params_new_finite(shifts.as_ptr(), scales.as_ptr(), 0, 3, &mut params),
            JvfStatus::InvalidArgument
        );
        assert!(params.is_null());

        // scales and shifts are checked once paired with a space
        let signs = [1i8, 1, -1];
        assert_eq!(jvf_space_new(signs.as_ptr(), 3, 2, &mut space), JvfStatus::Ok);
        let negative = [-1.0];
        let flat = [0.1, 0.0, 0.0];
        assert_eq!(jvf_params_new_periodic(flat.as_ptr(), negative.as_ptr(), 1, 3, &mut params), JvfStatus::Ok);
        assert_eq!(jvf_params_validate(space, params), JvfStatus::InvalidArgument);
        jvf_params_free(params);
        assert_eq!(jvf_params_new_finite(shifts.as_ptr(), scales.as_ptr(), 1, 3, &mut params), JvfStatus::Ok);
        assert_eq!(jvf_params_validate(space, params), JvfStatus::InvalidArgument);
        let z = [0.0, 0.0, 1.0];
        let mut out = [0.0; 3];
        assert_eq!(
            jvf_eval_truncated(space, params, z.as_ptr(), 1, ptr::null(), false, out.as_mut_ptr(), ptr::null_mut()),
            JvfStatus::InvalidArgument
        );
        jvf_params_free(params);
        jvf_space_free(space);
        jvf_space_free(ptr::null_mut());
        jvf_params_free(ptr::null_mut());
    }
}

#[test]
fn messages_are_static_strings() {
    for s in [
        JvfStatus::Ok,
        JvfStatus::NullPointer,
        JvfStatus::InvalidArgument,
        JvfStatus::OnBoundary,
        JvfStatus::NotConverged,
        JvfStatus::Degenerate,
        JvfStatus::Panic,
    ] {
        let msg = unsafe { CStr::from_ptr(jvf_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}

/// The generated header compiles as C when a compiler is available.
#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/jvf.h");
    assert!(header.exists());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{}\"\nint main(void) {{ JvfStatus s = JVF_STATUS_OK; return (int)s + (jvf_space_dim(0) != 0); }}\n",
            header.display()
        ),
    )
    .unwrap();
    match Command::new("cc").args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(e) => eprintln!("skipping header check: no C compiler ({e})"),
    }
}
