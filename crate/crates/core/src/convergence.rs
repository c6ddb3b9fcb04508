//! A-priori truncation error radius and its empirical verification.
//!
//! After `N` explicit levels every admissible tail maps into a ball of
//! radius `ρ_N` with
//!
//! ```text
//! ρ_N² = (β_{N−1} ⋯ β_1)² / [2 y·P_N(Z)]²
//! ```
//!
//! The product starts at `β_1`: this is the normalization of `R_N` without
//! a leading scale. Only the radius is computed; `R_N(Z, 0)` serves as the
//! point estimate.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::JvfError;
use crate::fraction::{eval_truncated, level_map, JvfParams};
use crate::geometry::{ExtVector, SignatureSpace, Vector};
use crate::polynomials::{approximant_gaps, darboux_term_log10, PolySequence, PolyState};

/// Radius of the ball of allowed values after `levels` explicit levels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorBall {
    pub log10_radius: f64,
    pub levels: usize,
    pub z_y: f64,
}

impl ErrorBall {
    pub fn radius(&self) -> f64 {
        10f64.powf(self.log10_radius)
    }

    /// `log10(2ρ_N)`.
    pub fn log10_diameter(&self) -> f64 {
        self.log10_radius + std::f64::consts::LOG10_2
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.radius()
    }
}

fn check_point(space: &SignatureSpace, params: &JvfParams, z: &Vector, levels: usize) -> Result<f64, JvfError> {
    space.check_dim(z)?;
    if levels == 0 {
        return Err(JvfError::ZeroLevels);
    }
    params.check_levels(levels)?;
    let z_y = space.y_component(z);
    if z_y == 0.0 {
        return Err(JvfError::OnBoundary);
    }
    Ok(z_y)
}

/// `log10 |2 y·P_N|` from a first-kind state.
fn log10_twice_y_projection(space: &SignatureSpace, state: &PolyState) -> Result<f64, JvfError> {
    let y_mantissa = state.vec_mantissa()[space.y_index()];
    if y_mantissa == 0.0 || !y_mantissa.is_finite() {
        return Err(JvfError::DegeneratePolynomial);
    }
    Ok((2.0 * y_mantissa.abs()).log10() + state.vec_exponent())
}

pub(crate) fn radius_from_state(
    space: &SignatureSpace,
    state: &PolyState,
    log10_beta_product: f64,
    levels: usize,
    z: &Vector,
) -> Result<ErrorBall, JvfError> {
    let log10_radius = log10_beta_product - log10_twice_y_projection(space, state)?;
    Ok(ErrorBall { log10_radius, levels, z_y: space.y_component(z) })
}

/// `ρ_N(Z)` computed in the log domain.
pub fn error_radius(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
) -> Result<ErrorBall, JvfError> {
    check_point(space, params, z, levels)?;
    let mut seq = PolySequence::first_kind(space, params, z);
    for _ in 0..levels {
        seq.advance();
    }
    let log10_beta_product: f64 = (1..levels).map(|k| params.scale(k).log10()).sum();
    radius_from_state(space, seq.state(), log10_beta_product, levels, z)
}

/// `ρ_N` for every `N` in `1..=levels`, sharing one recurrence pass.
pub fn error_radius_sequence(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
) -> Result<Vec<ErrorBall>, JvfError> {
    check_point(space, params, z, levels)?;
    let mut seq = PolySequence::first_kind(space, params, z);
    let mut log10_beta_product = 0.0;
    let mut out = Vec::with_capacity(levels);
    for n in 1..=levels {
        seq.advance();
        if n >= 2 {
            log10_beta_product += params.scale(n - 1).log10();
        }
        out.push(radius_from_state(space, seq.state(), log10_beta_product, n, z)?);
    }
    Ok(out)
}

/// Radius from both polynomial kinds,
///
/// ```text
/// ρ_N² = p_{N−1} q_{N−2} |P_N/p_{N−1} − Q_{N−1}/q_{N−2}|² / [2 y·P_N]²
/// ```
///
/// Oracle for [`error_radius`]. At `N = 1` the numerator degenerates to its
/// polynomial limit `p_0 q_0 = 1`.
pub fn error_radius_from_polynomials(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
) -> Result<f64, JvfError> {
    check_point(space, params, z, levels)?;
    let mut first = PolySequence::first_kind(space, params, z);
    let mut second = PolySequence::second_kind(space, params, z);
    for _ in 0..levels {
        first.advance();
    }
    for _ in 0..levels - 1 {
        second.advance();
    }
    let numerator = if levels == 1 {
        0.0
    } else {
        let gaps = approximant_gaps(space, params, z, levels - 1)?;
        darboux_term_log10(first.state(), second.state(), &gaps[levels - 2])?
    };
    let log10_rho = 0.5 * numerator - log10_twice_y_projection(space, first.state())?;
    Ok(10f64.powf(log10_rho))
}

/// Outcome of [`enclosure_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct EnclosureReport {
    /// Largest distance between two sampled images `R_N(Z, T)`.
    pub max_pairwise_dist: f64,
    /// `2ρ_N`.
    pub bound_2rho: f64,
    /// Whether every level `N + 1` image lies in the level-`N` ball.
    pub nested: bool,
    /// Radius of the sphere fitted through images of boundary tails.
    pub fitted_radius: f64,
    /// Largest `|R_{N+1}(Z, T) − c_N| / ρ_N` over the samples.
    pub max_next_level_offset: f64,
}

/// Relative slack allowed when testing level `N + 1` images against the
/// fitted level-`N` sphere.
pub const NESTING_TOLERANCE: f64 = 1e-6;

/// Samples admissible tails and checks the images against `2ρ_N`.
///
/// Tails lie in the half-space whose `y`-sign is opposite to that of `Z`:
/// half of them in its interior, half on the bounding hyperplane (whose
/// image is the sphere itself), plus `T = 0` and `T = ∞`. Magnitudes are
/// log-uniform on `[1e−3, 1e3]`.
pub fn enclosure_check(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    levels: usize,
    num_tail_samples: usize,
    seed: u64,
) -> Result<EnclosureReport, JvfError> {
    let z_y = check_point(space, params, z, levels)?;
    params.check_levels(levels + 1)?;
    let ball = error_radius(space, params, z, levels)?;
    let rho = ball.radius();

    let (boundary_tails, interior_tails) = sample_tails(space, z_y, num_tail_samples, seed);
    let eval = |t: &ExtVector, n: usize| eval_truncated(space, params, z, n, t);

    let boundary_images: Vec<Vector> = boundary_tails.iter().filter_map(|t| eval(t, levels).into_finite()).collect();
    let mut images = boundary_images.clone();
    images.extend(interior_tails.iter().filter_map(|t| eval(t, levels).into_finite()));

    let max_pairwise_dist = max_pairwise_distance(&images);

    let (center, fitted_radius) = fit_sphere(&boundary_images);
    let beta_n = params.scale(levels);
    let shift_n = params.shift(levels);
    let max_next_level_offset = boundary_tails
        .iter()
        .chain(interior_tails.iter())
        .filter_map(|t| {
            let deeper = level_map(space, z, shift_n, beta_n, t);
            eval(&deeper, levels).into_finite()
        })
        .map(|w| w.distance(&center) / rho)
        .fold(0.0, f64::max);

    Ok(EnclosureReport {
        max_pairwise_dist,
        bound_2rho: 2.0 * rho,
        nested: max_next_level_offset <= 1.0 + NESTING_TOLERANCE,
        fitted_radius,
        max_next_level_offset,
    })
}

fn sample_tails(space: &SignatureSpace, z_y: f64, count: usize, seed: u64) -> (Vec<ExtVector>, Vec<ExtVector>) {
    let dim = space.dim();
    let yi = space.y_index();
    let side = -z_y.signum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut boundary = vec![ExtVector::zeros(dim), ExtVector::Infinity];
    let mut interior = Vec::with_capacity(count / 2 + 1);
    for i in 0..count {
        let on_boundary = i % 2 == 0;
        let mut dir: Vector = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        if on_boundary {
            dir[yi] = 0.0;
        } else {
            dir[yi] = side * dir[yi].abs().max(f64::MIN_POSITIVE);
        }
        let norm = dir.norm();
        if norm == 0.0 {
            continue;
        }
        let magnitude = 10f64.powf(rng.random_range(-3.0..3.0));
        let t = ExtVector::Finite(dir.scaled(magnitude / norm));
        if on_boundary {
            boundary.push(t);
        } else {
            interior.push(t);
        }
    }
    (boundary, interior)
}

fn max_pairwise_distance(points: &[Vector]) -> f64 {
    points
        .par_iter()
        .enumerate()
        .map(|(i, a)| points[i + 1..].iter().map(|b| a.distance(b)).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max)
}

/// Least-squares sphere through `points`: `|b|² = 2 b·c + k`, solved about
/// the centroid.
fn fit_sphere(points: &[Vector]) -> (Vector, f64) {
    let dim = points[0].dim();
    let count = points.len() as f64;
    let mut mean = Vector::zeros(dim);
    for p in points {
        for (m, c) in mean.iter_mut().zip(p.iter()) {
            *m += c / count;
        }
    }
    let rows = points.len();
    let mut a = DMatrix::<f64>::zeros(rows, dim + 1);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (r, p) in points.iter().enumerate() {
        let d = p.sub(&mean);
        for j in 0..dim {
            a[(r, j)] = 2.0 * d[j];
        }
        a[(r, dim)] = 1.0;
        rhs[r] = d.norm_sq();
    }
    let svd = a.svd(true, true);
    let sol = svd.solve(&rhs, 1e-14).expect("svd with u and v");
    let offset: Vector = (0..dim).map(|j| sol[j]).collect();
    let radius = (offset.norm_sq() + sol[dim]).max(0.0).sqrt();
    (mean.add(&offset), radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_level_radius() {
        let space = SignatureSpace::standard_3d();
        let params = JvfParams::constant(Vector::zeros(3), 0.25);
        let z = Vector::from([0.0, 0.0, 2.0]);
        let ball = error_radius(&space, &params, &z, 1).unwrap();
        assert!((ball.radius() - 0.25).abs() < 1e-15);
        let oracle = error_radius_from_polynomials(&space, &params, &z, 1).unwrap();
        assert!((oracle - 0.25).abs() < 1e-15);
    }

    #[test]
    fn boundary_points_are_rejected() {
        let space = SignatureSpace::standard_3d();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = Vector::from([0.1, 0.2, 0.0]);
        assert_eq!(error_radius(&space, &params, &z, 4), Err(JvfError::OnBoundary));
        assert_eq!(enclosure_check(&space, &params, &z, 4, 10, 0), Err(JvfError::OnBoundary));
    }

    #[test]
    fn sequence_matches_single_evaluations() {
        let space = SignatureSpace::standard_3d();
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        let z = Vector::from([-0.26, 0.69, 0.001]);
        let seq = error_radius_sequence(&space, &params, &z, 40).unwrap();
        for n in [1, 2, 7, 40] {
            let one = error_radius(&space, &params, &z, n).unwrap();
            assert_eq!(seq[n - 1], one);
        }
    }

    #[test]
    fn sphere_fit_recovers_circle() {
        let pts: Vec<Vector> = (0..12)
            .map(|k| {
                let t = k as f64 * 0.5;
                Vector::from([1.0 + 2.0 * t.cos(), -3.0 + 2.0 * t.sin(), 0.5])
            })
            .collect();
        let (c, r) = fit_sphere(&pts);
        assert!((r - 2.0).abs() < 1e-10);
        assert!(c.distance(&Vector::from([1.0, -3.0, 0.5])) < 1e-10);
    }
}
