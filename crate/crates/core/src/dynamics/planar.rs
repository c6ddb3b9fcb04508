//! Complex encoding of the plane spanned by two non-`y` axes.
//!
//! For points and shifts on that plane the vector inverse becomes
//! `ε / conj(w)` or `ε / w`, depending on the two signs, so each level is a
//! Möbius map in `t` or in `conj(t)`.

use num_complex::Complex64;

use super::moebius::MoebiusMap;
use crate::error::JvfError;
use crate::fraction::JvfParams;
use crate::geometry::{SignatureSpace, Vector};

/// The two coordinate axes carrying the real and imaginary parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanarFrame {
    pub re_index: usize,
    pub im_index: usize,
}

/// Convergence behaviour of the planar fraction at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    Convergent,
    Oscillatory,
    Boundary,
}

/// Band around `|λ| = 1` and around the parabolic trace.
pub const MULTIPLIER_TOLERANCE: f64 = 1e-9;

impl PlanarFrame {
    /// The first two axes other than `y`.
    pub fn for_space(space: &SignatureSpace) -> Result<Self, JvfError> {
        let mut axes = (0..space.dim()).filter(|&i| i != space.y_index());
        match (axes.next(), axes.next()) {
            (Some(re_index), Some(im_index)) => Ok(PlanarFrame { re_index, im_index }),
            _ => Err(JvfError::DimensionMismatch { expected: 3, found: space.dim() }),
        }
    }

    pub fn to_complex(&self, v: &Vector) -> Complex64 {
        Complex64::new(v[self.re_index], v[self.im_index])
    }

    pub fn to_vector(&self, t: Complex64, dim: usize) -> Vector {
        let mut v = Vector::zeros(dim);
        v[self.re_index] = t.re;
        v[self.im_index] = t.im;
        v
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.iter().enumerate().all(|(i, &c)| i == self.re_index || i == self.im_index || c == 0.0)
    }

    /// `(conjugating, ε)` of the planar inverse.
    fn inverse_kind(&self, space: &SignatureSpace) -> (bool, f64) {
        let s_re = space.sign(self.re_index);
        let s_im = space.sign(self.im_index);
        (s_re == s_im, s_re)
    }

    /// The vector inverse restricted to the plane, in complex form.
    pub fn invert(&self, space: &SignatureSpace, w: Complex64) -> Complex64 {
        let (conj, eps) = self.inverse_kind(space);
        let w = if conj { w.conj() } else { w };
        eps / w
    }

    fn check_shifts(&self, params: &JvfParams) -> Result<(), JvfError> {
        for (n, a) in params.shifts().iter().enumerate() {
            if !self.contains(a) {
                return Err(JvfError::NotPlanar(n));
            }
        }
        Ok(())
    }
}

/// `leading · R_N(z, t)` in complex arithmetic.
pub fn eval_planar(
    space: &SignatureSpace,
    params: &JvfParams,
    frame: &PlanarFrame,
    z: Complex64,
    levels: usize,
    tail: Complex64,
    leading_scale: f64,
) -> Complex64 {
    let mut v = tail;
    for n in (0..levels).rev() {
        let beta = if n == 0 { leading_scale } else { params.scale(n) };
        let a = frame.to_complex(params.shift(n));
        v = beta * frame.invert(space, z - a - v);
    }
    v
}

fn level_map(space: &SignatureSpace, frame: &PlanarFrame, z: Complex64, a: Complex64, beta: f64) -> MoebiusMap {
    let (conj, eps) = frame.inverse_kind(space);
    let w = if conj { (z - a).conj() } else { z - a };
    MoebiusMap {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(eps * beta, 0.0),
        c: Complex64::new(-1.0, 0.0),
        d: w,
        conjugating: conj,
    }
}

/// The period map `F(t) = β_p R_p(z, t)` as a Möbius map, squared when it
/// acts on `conj(t)` so the result never conjugates.
pub fn planar_reduce(
    space: &SignatureSpace,
    params: &JvfParams,
    frame: &PlanarFrame,
    z: Complex64,
) -> Result<MoebiusMap, JvfError> {
    let period = params.period().ok_or(JvfError::NotPeriodic)?;
    frame.check_shifts(params)?;
    let map = period_moebius(space, params, frame, z, period);
    Ok(if map.conjugating { map.compose(&map) } else { map })
}

/// One period composed level by level, without the squaring step.
pub fn period_moebius(
    space: &SignatureSpace,
    params: &JvfParams,
    frame: &PlanarFrame,
    z: Complex64,
    period: usize,
) -> MoebiusMap {
    let mut map = MoebiusMap::identity();
    for n in 0..period {
        let beta = if n == 0 { params.scale(period) } else { params.scale(n) };
        let level = level_map(space, frame, z, frame.to_complex(params.shift(n)), beta);
        map = map.compose(&level).rescaled();
    }
    map
}

/// Smooth indicator `Re(tr²/det)/4 − 1`: negative where the reduced map is
/// elliptic, positive where it is hyperbolic, zero on the boundary.
pub fn boundary_indicator(
    space: &SignatureSpace,
    params: &JvfParams,
    frame: &PlanarFrame,
    z: Complex64,
) -> Result<f64, JvfError> {
    let map = planar_reduce(space, params, frame, z)?;
    Ok(map.normalized_trace_sq().re / 4.0 - 1.0)
}

/// Convergent, oscillatory or boundary behaviour of the planar fraction.
pub fn classify_region(
    space: &SignatureSpace,
    params: &JvfParams,
    frame: &PlanarFrame,
    z: Complex64,
) -> Result<RegionKind, JvfError> {
    let map = planar_reduce(space, params, frame, z)?;
    let tau = map.normalized_trace_sq();
    let real_trace = tau.im.abs() <= MULTIPLIER_TOLERANCE * tau.norm().max(1.0);
    if real_trace && (tau.re / 4.0 - 1.0).abs() <= MULTIPLIER_TOLERANCE {
        return Ok(RegionKind::Boundary);
    }
    if map.min_multiplier_modulus() < 1.0 - MULTIPLIER_TOLERANCE {
        Ok(RegionKind::Convergent)
    } else {
        Ok(RegionKind::Oscillatory)
    }
}
