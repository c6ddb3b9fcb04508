//! First- and second-kind scalar and vector polynomials.
//!
//! The denominator polynomials satisfy
//!
//! ```text
//! P_{n+1} = (Z − A_n) p_n − β_n P_n*
//! p_{n+1} = |Z − A_n|² p_n + β_n² p_{n−1} − 2 β_n (Z − A_n)·P_n*
//! ```
//!
//! with `p_{−1} = 0`, `p_0 = 1`, `P_0 = 0`, and `p_{n+1} p_n = |P_{n+1}|²`.
//! The numerator polynomials `q_n, Q_n` obey the same recurrence with the
//! coefficient index shifted by one.
//!
//! These quantities span hundreds of decades over a few thousand levels, so
//! each state keeps mantissas next to integer base-10 exponents. The vector
//! mantissa carries the mean of the two scalar exponents, which keeps it O(1).

use crate::error::JvfError;
use crate::fraction::{forward_fragment, reverse_fragment, JvfParams};
use crate::geometry::{ExtVector, SignatureSpace, Vector};

/// Rolling state `(p_{n−1}, p_n, P_n)` in mantissa/exponent form.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyState {
    n: usize,
    p_prev: f64,
    p_cur: f64,
    vec_cur: Vector,
    exp_prev: i64,
    exp_cur: i64,
}

impl PolyState {
    /// `n = 0`: `p_{−1} = 0`, `p_0 = 1`, `P_0 = 0`.
    pub fn init(dim: usize) -> Self {
        PolyState { n: 0, p_prev: 0.0, p_cur: 1.0, vec_cur: Vector::zeros(dim), exp_prev: 0, exp_cur: 0 }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    /// Mantissa of `p_n`.
    pub fn p_mantissa(&self) -> f64 {
        self.p_cur
    }

    /// Mantissa of `p_{n−1}`.
    pub fn p_prev_mantissa(&self) -> f64 {
        self.p_prev
    }

    /// Mantissa of `P_n`.
    pub fn vec_mantissa(&self) -> &Vector {
        &self.vec_cur
    }

    pub fn p_exponent(&self) -> i64 {
        self.exp_cur
    }

    pub fn p_prev_exponent(&self) -> i64 {
        self.exp_prev
    }

    /// Base-10 exponent attached to the `P_n` mantissa.
    pub fn vec_exponent(&self) -> f64 {
        0.5 * (self.exp_cur + self.exp_prev) as f64
    }

    pub fn log10_p(&self) -> f64 {
        self.p_cur.log10() + self.exp_cur as f64
    }

    pub fn log10_p_prev(&self) -> f64 {
        self.p_prev.log10() + self.exp_prev as f64
    }

    /// `log10 |P_n|`.
    pub fn log10_vec_norm(&self) -> f64 {
        self.vec_cur.norm().log10() + self.vec_exponent()
    }

    /// `P_n` unscaled; overflows for deep levels.
    pub fn vec_value(&self) -> Vector {
        self.vec_cur.scaled(10f64.powf(self.vec_exponent()))
    }

    /// `P_n / p_{n−1}` as a plain vector; these ratios stay O(|Z|).
    pub fn vec_over_prev(&self) -> Vector {
        let k = 10f64.powf(0.5 * (self.exp_cur - self.exp_prev) as f64) / self.p_prev;
        self.vec_cur.scaled(k)
    }

    /// Relative residual of `p_n p_{n−1} = |P_n|²`. Exponents agree by
    /// construction, so only mantissas are compared.
    pub fn product_identity_residual(&self) -> f64 {
        let lhs = self.p_cur * self.p_prev;
        let rhs = self.vec_cur.norm_sq();
        let scale = lhs.abs().max(rhs);
        if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs).abs() / scale
        }
    }

    /// Advances to level `n + 1` with coefficients `A`, `β`.
    pub fn step(&self, space: &SignatureSpace, z: &Vector, shift: &Vector, beta: f64) -> PolyState {
        let half = 10f64.powf(0.5 * (self.exp_prev - self.exp_cur) as f64);
        let full = half * half;
        let w = z.sub(shift);
        let conj = space.conjugate_vec(&self.vec_cur);

        let mut cross = 0.0;
        let mut next_vec = Vector::zeros(w.dim());
        for i in 0..w.dim() {
            cross += w[i] * conj[i];
            next_vec[i] = w[i] * self.p_cur - beta * conj[i] * half;
        }
        let raw = w.norm_sq() * self.p_cur + beta * beta * self.p_prev * full - 2.0 * beta * cross * half;

        let (mantissa, shift_exp) = if raw > 0.0 && raw.is_finite() {
            let s = raw.log10().floor();
            (raw / 10f64.powf(s), s as i64)
        } else {
            (raw.max(0.0), 0)
        };
        let vec_factor = 10f64.powf(-0.5 * shift_exp as f64);
        PolyState {
            n: self.n + 1,
            p_prev: self.p_cur,
            p_cur: mantissa,
            vec_cur: next_vec.scaled(vec_factor),
            exp_prev: self.exp_cur,
            exp_cur: self.exp_cur + shift_exp,
        }
    }
}

/// Incremental driver over the recurrence; `offset = 1` gives the second kind.
pub struct PolySequence<'a> {
    space: &'a SignatureSpace,
    params: &'a JvfParams,
    z: &'a Vector,
    offset: usize,
    state: PolyState,
}

impl<'a> PolySequence<'a> {
    pub fn first_kind(space: &'a SignatureSpace, params: &'a JvfParams, z: &'a Vector) -> Self {
        Self::with_offset(space, params, z, 0)
    }

    pub fn second_kind(space: &'a SignatureSpace, params: &'a JvfParams, z: &'a Vector) -> Self {
        Self::with_offset(space, params, z, 1)
    }

    fn with_offset(space: &'a SignatureSpace, params: &'a JvfParams, z: &'a Vector, offset: usize) -> Self {
        PolySequence { space, params, z, offset, state: PolyState::init(space.dim()) }
    }

    pub fn state(&self) -> &PolyState {
        &self.state
    }

    pub fn advance(&mut self) -> &PolyState {
        let k = self.state.n + self.offset;
        self.state = self.state.step(self.space, self.z, self.params.shift(k), self.params.scale(k));
        &self.state
    }

    /// States for levels `0..=levels`.
    pub fn collect_states(mut self, levels: usize) -> Vec<PolyState> {
        let mut out = Vec::with_capacity(levels + 1);
        out.push(self.state.clone());
        for _ in 0..levels {
            out.push(self.advance().clone());
        }
        out
    }
}

/// States `p_n, P_n` for `n = 0..=levels`.
pub fn first_kind_sequence(space: &SignatureSpace, params: &JvfParams, z: &Vector, levels: usize) -> Vec<PolyState> {
    PolySequence::first_kind(space, params, z).collect_states(levels)
}

/// States `q_n, Q_n` for `n = 0..=levels`.
pub fn second_kind_sequence(space: &SignatureSpace, params: &JvfParams, z: &Vector, levels: usize) -> Vec<PolyState> {
    PolySequence::second_kind(space, params, z).collect_states(levels)
}

fn log10_inverse_square(fragment: &ExtVector, index: usize) -> Result<f64, JvfError> {
    let norm = fragment.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(JvfError::FragmentSingular(index));
    }
    Ok(-2.0 * norm.log10())
}

/// `log10 p_N` as the product of inverse squared forward-fragment magnitudes.
///
/// Test oracle: costs O(N²) fragment evaluations.
pub fn product_form_first_kind(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
) -> Result<f64, JvfError> {
    (0..levels).map(|k| log10_inverse_square(&forward_fragment(space, params, z, k, levels - 1), k)).sum()
}

/// `log10 p_N` from reverse fragments `S^(k,0)`.
pub fn product_form_first_kind_reverse(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
) -> Result<f64, JvfError> {
    (0..levels).map(|k| log10_inverse_square(&reverse_fragment(space, params, z, k, 0), k)).sum()
}

/// `g_n = P_{n+1}/p_n − Q_n/q_{n−1}` for `n = 1..=levels` (index `n − 1`).
///
/// Both ratios converge to the same limit, so their difference is carried by
/// its own recurrence instead of being formed by subtraction:
///
/// ```text
/// g_1     = −β_1 (Z − A_0)* / |Z − A_0|²
/// g_{n+1} = −β_{n+1} [ g_n |b_n|² − b_n (g_n·(a_n + b_n)) ]* / (|a_n|² |b_n|²)
/// ```
///
/// with `a_n = P_{n+1}/p_n` and `b_n = Q_n/q_{n−1}`.
pub fn approximant_gaps(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
) -> Result<Vec<Vector>, JvfError> {
    if levels == 0 {
        return Ok(Vec::new());
    }
    let mut first = PolySequence::first_kind(space, params, z);
    let mut second = PolySequence::second_kind(space, params, z);
    first.advance();
    let w0 = first.state().vec_over_prev();
    let n0 = w0.norm_sq();
    if n0 == 0.0 {
        return Err(JvfError::DegenerateDenominator);
    }
    let mut gap = space.conjugate_vec(&w0).scaled(-params.scale(1) / n0);
    let mut gaps = Vec::with_capacity(levels);
    gaps.push(gap.clone());
    for n in 1..levels {
        let a = first.advance().vec_over_prev();
        let b = second.advance().vec_over_prev();
        let (na, nb) = (a.norm_sq(), b.norm_sq());
        if na == 0.0 || nb == 0.0 || !(na.is_finite() && nb.is_finite()) {
            return Err(JvfError::DegenerateDenominator);
        }
        let along = gap.dot(&a.add(&b));
        let inner: Vector = gap.iter().zip(b.iter()).map(|(g, bc)| g * nb - bc * along).collect();
        gap = space.conjugate_vec(&inner).scaled(-params.scale(n + 1) / (na * nb));
        gaps.push(gap.clone());
    }
    Ok(gaps)
}

/// `log10 [ p_{k−1} q_{k−2} |g_{k−1}|² ]`, with `p_{k−1}` and `q_{k−2}` read
/// from the first-kind state at level `k` and the second-kind state at level `k − 1`.
pub(crate) fn darboux_term_log10(first: &PolyState, second: &PolyState, gap: &Vector) -> Result<f64, JvfError> {
    if first.p_prev_mantissa() == 0.0 || second.p_prev_mantissa() == 0.0 {
        return Err(JvfError::DegenerateDenominator);
    }
    Ok(first.log10_p_prev() + second.log10_p_prev() + gap.norm_sq().log10())
}

fn max_relative_gap(log_a: f64, log_b: f64) -> f64 {
    if log_a == log_b {
        return 0.0;
    }
    1.0 - 10f64.powf(-(log_a - log_b).abs())
}

/// Relative residual of the Christoffel–Darboux-type identity
///
/// ```text
/// p_n q_{n−1} |P_{n+1}/p_n − Q_n/q_{n−1}|² = β_n² p_{n−1} q_{n−2} |P_n/p_{n−1} − Q_{n−1}/q_{n−2}|²
/// ```
///
/// normalized by the larger side. The vector differences come from
/// [`approximant_gaps`].
pub fn christoffel_darboux_residual(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    n: usize,
) -> Result<f64, JvfError> {
    if n < 2 {
        return Err(JvfError::DegenerateDenominator);
    }
    let (lhs, rhs) = christoffel_darboux_sides(space, params, z, n)?;
    Ok(max_relative_gap(lhs, rhs))
}

/// Both sides of the identity as `log10` values.
pub fn christoffel_darboux_sides(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    n: usize,
) -> Result<(f64, f64), JvfError> {
    if n < 2 {
        return Err(JvfError::DegenerateDenominator);
    }
    let first = first_kind_sequence(space, params, z, n + 1);
    let second = second_kind_sequence(space, params, z, n);
    let gaps = approximant_gaps(space, params, z, n)?;
    let lhs = darboux_term_log10(&first[n + 1], &second[n], &gaps[n - 1])?;
    let rhs = 2.0 * params.scale(n).log10() + darboux_term_log10(&first[n], &second[n - 1], &gaps[n - 2])?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space3() -> SignatureSpace {
        SignatureSpace::standard_3d()
    }

    #[test]
    fn initial_state() {
        let s = PolyState::init(3);
        assert_eq!(s.level(), 0);
        assert_eq!(s.p_prev_mantissa(), 0.0);
        assert_eq!(s.p_mantissa(), 1.0);
        assert!(s.vec_mantissa().is_zero());
        assert_eq!(s.p_exponent(), 0);
    }

    #[test]
    fn first_step_is_shifted_point() {
        let space = space3();
        let z = Vector::from([0.3, -0.7, 0.25]);
        let a = Vector::from([0.1, 0.2, 0.0]);
        let s1 = PolyState::init(3).step(&space, &z, &a, 0.8);
        let w = z.sub(&a);
        let p1 = 10f64.powf(s1.log10_p());
        assert!((p1 - w.norm_sq()).abs() < 1e-15 * w.norm_sq());
        let v = s1.vec_value();
        assert!(v.distance(&w) < 1e-15);
        assert!(s1.product_identity_residual() < 1e-15);
    }

    #[test]
    fn mantissa_stays_normalized() {
        let space = space3();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = Vector::from([-0.26, 0.69, 0.001]);
        for st in first_kind_sequence(&space, &params, &z, 3000).iter().skip(1) {
            assert!((0.1..=10.0).contains(&st.p_mantissa()), "{:?}", st);
            assert!(st.product_identity_residual() < 1e-10);
        }
    }

    #[test]
    fn second_kind_is_shifted_first_kind() {
        let space = space3();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let shifted = JvfParams::periodic(
            vec![params.shift(1).clone(), params.shift(2).clone(), params.shift(0).clone()],
            vec![0.25; 3],
        )
        .unwrap();
        let z = Vector::from([0.2, 0.1, 0.3]);
        let q = second_kind_sequence(&space, &params, &z, 20);
        let p = first_kind_sequence(&space, &shifted, &z, 20);
        assert_eq!(q, p);
        assert_eq!(q[0].p_mantissa(), 1.0);
        assert!(q[0].vec_mantissa().is_zero());
    }

    #[test]
    fn product_form_single_level() {
        let space = space3();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = Vector::from([0.2, 0.1, 0.3]);
        let got = product_form_first_kind(&space, &params, &z, 1).unwrap();
        let w = z.sub(params.shift(0));
        assert!((got - w.norm_sq().log10()).abs() < 1e-14);
    }

    #[test]
    fn product_form_reports_singular_fragment() {
        let space = space3();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = params.shift(0).clone();
        let r = product_form_first_kind(&space, &params, &z, 1);
        assert_eq!(r, Err(JvfError::FragmentSingular(0)));
    }

    #[test]
    fn gaps_match_direct_differences() {
        let space = space3();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = Vector::from([0.3, -0.2, 0.5]);
        let first = first_kind_sequence(&space, &params, &z, 5);
        let second = second_kind_sequence(&space, &params, &z, 4);
        let gaps = approximant_gaps(&space, &params, &z, 4).unwrap();
        for n in 1..=4 {
            let direct = first[n + 1].vec_over_prev().sub(&second[n].vec_over_prev());
            assert!(gaps[n - 1].distance(&direct) <= 1e-12 * direct.norm(), "n={n}");
        }
    }

    #[test]
    fn darboux_needs_two_levels() {
        let space = space3();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = Vector::from([0.2, 0.1, 0.3]);
        assert!(christoffel_darboux_residual(&space, &params, &z, 1).is_err());
        assert!(christoffel_darboux_residual(&space, &params, &z, 2).unwrap() < 1e-12);
    }
}
