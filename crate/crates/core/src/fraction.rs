//! Parameter sets and evaluation of truncated fractions and fragments.
//!
//! Evaluation uses the leading-coefficient-free normalization
//!
//! ```text
//! R_N(Z, T) = 1 / Z - A_0 - β_1 / Z - A_1 - ... - β_{N-1} / Z - A_{N-1} - T
//! ```
//!
//! where each slash inverts everything to its right. Multiply by `β_0` to
//! get the fraction with its leading scale.

use crate::convergence;
use crate::error::JvfError;
use crate::geometry::{ExtVector, SignatureSpace, Vector};
use crate::polynomials::PolySequence;

/// Shifts `A_n` and positive scales `β_n`, optionally periodic.
///
/// For finite parameter sets `scales` holds `β_0..=β_K` for `K` shifts. For
/// periodic sets both lists have length `p` and indices wrap.
#[derive(Clone, Debug, PartialEq)]
pub struct JvfParams {
    shifts: Vec<Vector>,
    scales: Vec<f64>,
    period: Option<usize>,
}

impl JvfParams {
    pub fn periodic(shifts: Vec<Vector>, scales: Vec<f64>) -> Result<Self, JvfError> {
        if shifts.is_empty() || shifts.len() != scales.len() {
            return Err(JvfError::InvalidParams(format!(
                "periodic parameters need equal nonempty lists, got {} shifts and {} scales",
                shifts.len(),
                scales.len()
            )));
        }
        let period = Some(shifts.len());
        Ok(JvfParams { shifts, scales, period })
    }

    pub fn finite(shifts: Vec<Vector>, scales: Vec<f64>) -> Result<Self, JvfError> {
        if shifts.is_empty() || scales.len() != shifts.len() + 1 {
            return Err(JvfError::InvalidParams(format!(
                "finite parameters need K shifts and K+1 scales, got {} and {}",
                shifts.len(),
                scales.len()
            )));
        }
        Ok(JvfParams { shifts, scales, period: None })
    }

    /// Period-3 shifts `a·(cos 2πk/3, sin 2πk/3, 0)` with constant scale, in
    /// the standard three-dimensional space.
    pub fn three_fold_symmetric(a: f64, beta: f64) -> Self {
        let shifts = (0..3)
            .map(|k| {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                if k == 0 {
                    Vector::from([a, 0.0, 0.0])
                } else {
                    Vector::from([a * phi.cos(), a * phi.sin(), 0.0])
                }
            })
            .collect();
        JvfParams::periodic(shifts, vec![beta; 3]).expect("three shifts and scales")
    }

    /// Constant shift and scale: a period-1 fraction.
    pub fn constant(shift: Vector, beta: f64) -> Self {
        JvfParams::periodic(vec![shift], vec![beta]).expect("one shift and scale")
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn shifts(&self) -> &[Vector] {
        &self.shifts
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Number of explicit levels supported; `None` when periodic.
    pub fn levels_available(&self) -> Option<usize> {
        match self.period {
            Some(_) => None,
            None => Some(self.shifts.len()),
        }
    }

    /// `A_n`. Panics past the end of a finite parameter set.
    pub fn shift(&self, n: usize) -> &Vector {
        match self.period {
            Some(p) => &self.shifts[n % p],
            None => &self.shifts[n],
        }
    }

    /// `β_n`. Panics past the end of a finite parameter set.
    pub fn scale(&self, n: usize) -> f64 {
        match self.period {
            Some(p) => self.scales[n % p],
            None => self.scales[n],
        }
    }

    pub fn check_levels(&self, levels: usize) -> Result<(), JvfError> {
        match self.levels_available() {
            Some(k) if levels > k => Err(JvfError::LevelsExceeded { requested: levels, available: k }),
            _ => Ok(()),
        }
    }
}

/// Checks positivity of the scales, the absence of `y`-components in the
/// shifts, and shift dimensions.
pub fn validate(space: &SignatureSpace, params: &JvfParams) -> Result<(), JvfError> {
    for (n, a) in params.shifts.iter().enumerate() {
        if a.dim() != space.dim() {
            return Err(JvfError::ShiftDimensionMismatch(n));
        }
        if space.y_component(a) != 0.0 {
            return Err(JvfError::ShiftHasYComponent(n));
        }
    }
    for (n, &b) in params.scales.iter().enumerate() {
        if !(b > 0.0 && b.is_finite()) {
            return Err(JvfError::NonPositiveScale(n));
        }
    }
    Ok(())
}

/// `β · 1/(Z − A − T)` with the extended rules `Z − A − ∞ = ∞` and `1/∞ = 0`.
pub fn level_map(space: &SignatureSpace, z: &Vector, shift: &Vector, beta: f64, tail: &ExtVector) -> ExtVector {
    match tail {
        ExtVector::Infinity => ExtVector::zeros(space.dim()),
        ExtVector::Finite(t) => {
            let mut w = z.clone();
            for ((w, a), t) in w.iter_mut().zip(shift.iter()).zip(t.iter()) {
                *w = *w - a - t;
            }
            if space.invert_scaled_in_place(&mut w, beta) {
                ExtVector::Finite(w)
            } else {
                ExtVector::Infinity
            }
        }
    }
}

/// Applies `V ← β · 1/(Z − A − V)` in place; `None` stands for infinity.
#[inline]
fn step_in_place(space: &SignatureSpace, z: &Vector, shift: &Vector, beta: f64, v: &mut Option<Vector>) {
    match v {
        None => *v = Some(Vector::zeros(space.dim())),
        Some(w) => {
            for ((w, zc), a) in w.iter_mut().zip(z.iter()).zip(shift.iter()) {
                *w = zc - a - *w;
            }
            if !space.invert_scaled_in_place(w, beta) {
                *v = None;
            }
        }
    }
}

/// `R_N(Z, T)`, evaluated from the tail upwards.
///
/// Panics if `levels == 0` or a finite parameter set has fewer than `levels` shifts.
pub fn eval_truncated(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
    tail: &ExtVector,
) -> ExtVector {
    eval_truncated_scaled(space, params, z, levels, tail, 1.0)
}

/// `leading_scale · R_N(Z, T)`, with the scale folded into the last inversion.
pub fn eval_truncated_scaled(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
    tail: &ExtVector,
    leading_scale: f64,
) -> ExtVector {
    assert!(levels >= 1, "at least one level is required");
    let mut v = tail.clone().into_finite();
    for n in (1..levels).rev() {
        step_in_place(space, z, params.shift(n), params.scale(n), &mut v);
    }
    step_in_place(space, z, params.shift(0), leading_scale, &mut v);
    match v {
        Some(w) => ExtVector::Finite(w),
        None => ExtVector::Infinity,
    }
}

/// The `y`-component of `R_N(Z, 0)`, without allocating per level.
///
/// Non-finite results (exact singularities) report `+inf`.
pub fn eval_y_component(space: &SignatureSpace, params: &JvfParams, z: &Vector, levels: usize) -> f64 {
    match eval_truncated(space, params, z, levels, &ExtVector::zeros(space.dim())) {
        ExtVector::Finite(v) => space.y_component(&v),
        ExtVector::Infinity => f64::INFINITY,
    }
}

/// Forward fragment `R^(m,n)(Z)`; zero when `m > n`.
pub fn forward_fragment(space: &SignatureSpace, params: &JvfParams, z: &Vector, m: usize, n: usize) -> ExtVector {
    if m > n {
        return ExtVector::zeros(space.dim());
    }
    let mut v = space.invert_vec(&z.sub(params.shift(n)));
    for k in (m..n).rev() {
        let inner = v.scaled(params.scale(k + 1));
        v = space.invert(&inner.subtracted_from(&z.sub(params.shift(k))));
    }
    v
}

/// Reverse fragment `S^(m,n)(Z)`; zero when `m < n`.
pub fn reverse_fragment(space: &SignatureSpace, params: &JvfParams, z: &Vector, m: usize, n: usize) -> ExtVector {
    if m < n {
        return ExtVector::zeros(space.dim());
    }
    let mut v = space.invert_vec(&z.sub(params.shift(n)));
    for k in n + 1..=m {
        let inner = v.scaled(params.scale(k));
        v = space.invert(&inner.subtracted_from(&z.sub(params.shift(k))));
    }
    v
}

/// Result of an adaptive evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergedValue {
    pub value: ExtVector,
    pub levels_used: usize,
    /// Guaranteed diameter `2ρ_N` of the ball containing the infinite fraction.
    pub bound: f64,
}

/// Evaluates `R_N(Z, 0)` at the smallest `N` with `2ρ_N ≤ rel_tol·|R_N|`.
///
/// `|R_N|` is tracked through `q_{N-1}/p_N` so the fraction itself is only
/// evaluated once, at the accepted level.
pub fn eval_converged(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    rel_tol: f64,
    max_levels: usize,
) -> Result<ConvergedValue, JvfError> {
    space.check_dim(z)?;
    if space.y_component(z) == 0.0 {
        return Err(JvfError::OnBoundary);
    }
    if max_levels == 0 {
        return Err(JvfError::ZeroLevels);
    }
    let max_levels = match params.levels_available() {
        Some(k) => max_levels.min(k),
        None => max_levels,
    };
    let mut first = PolySequence::first_kind(space, params, z);
    let mut second = PolySequence::second_kind(space, params, z);
    let mut log10_beta_product = 0.0;
    let mut last_bound = f64::INFINITY;
    for n in 1..=max_levels {
        // first: p_n; second: q_{n-1}
        first.advance();
        if n >= 2 {
            second.advance();
            log10_beta_product += params.scale(n - 1).log10();
        }
        let ball = convergence::radius_from_state(space, first.state(), log10_beta_product, n, z)?;
        let log10_diameter = ball.log10_radius + std::f64::consts::LOG10_2;
        let log10_magnitude = 0.5 * (second.state().log10_p() - first.state().log10_p());
        last_bound = 10f64.powf(log10_diameter);
        if log10_diameter <= rel_tol.log10() + log10_magnitude {
            let value = eval_truncated(space, params, z, n, &ExtVector::zeros(space.dim()));
            return Ok(ConvergedValue { value, levels_used: n, bound: last_bound });
        }
    }
    Err(JvfError::NotConverged { levels: max_levels, bound: last_bound })
}
