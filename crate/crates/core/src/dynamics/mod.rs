//! Periodic fractions as fixed points of the period map
//! `F(Z, T) = β_p R_p(Z, T)`.
//!
//! Iterating `F` from `T = 0` produces the truncations at `p, 2p, 3p, …`
//! levels; the value of a convergent fraction is the attractive fixed point.
//! Other solutions of `F(Z, T) = T` are repulsive.

pub mod contour;
pub mod moebius;
pub mod planar;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::JvfError;
use crate::fraction::{eval_truncated, eval_truncated_scaled, JvfParams};
use crate::geometry::{ExtVector, SignatureSpace, Vector};

pub use moebius::{MoebiusFixedPoint, MoebiusMap};
pub use planar::{classify_region, planar_reduce, PlanarFrame, RegionKind};

/// Cauchy tolerance for direct iteration of the period map.
pub const CAUCHY_TOLERANCE: f64 = 1e-12;
/// Iteration cap before declaring the point oscillatory.
pub const MAX_ITERATIONS: usize = 100_000;
/// Fixed points closer than this (relative to `1 + |T|`) are merged.
pub const DEDUP_DISTANCE: f64 = 1e-8;
/// Length of the backward orbit used to seed the repulsive search.
const BACKWARD_STEPS: usize = 200;
/// Multipliers within this band of 1 are reported as indifferent.
pub const INDIFFERENT_BAND: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedPointKind {
    Attractive,
    Repulsive,
    Indifferent,
}

impl FixedPointKind {
    pub fn from_multiplier(m: f64) -> Self {
        if m < 1.0 - INDIFFERENT_BAND {
            FixedPointKind::Attractive
        } else if m > 1.0 + INDIFFERENT_BAND {
            FixedPointKind::Repulsive
        } else {
            FixedPointKind::Indifferent
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointReport {
    pub location: ExtVector,
    /// Spectral radius of the Jacobian of `F` at the point.
    pub multiplier: f64,
    pub kind: FixedPointKind,
}

fn period_of(params: &JvfParams) -> Result<usize, JvfError> {
    params.period().ok_or(JvfError::NotPeriodic)
}

/// `F(Z, T) = β_p R_p(Z, T)`.
pub fn period_map(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    tail: &ExtVector,
) -> Result<ExtVector, JvfError> {
    let p = period_of(params)?;
    Ok(eval_truncated_scaled(space, params, z, p, tail, params.scale(p)))
}

/// `F⁻¹(Z, W)`, undoing the levels of one period from the outside in.
pub fn inverse_period_map(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    value: &ExtVector,
) -> Result<ExtVector, JvfError> {
    let p = period_of(params)?;
    let mut w = value.clone();
    for n in 0..p {
        let beta = if n == 0 { params.scale(p) } else { params.scale(n) };
        // T = Z − A_n − 1/(W/β)
        w = space.invert(&w.scaled(1.0 / beta)).subtracted_from(&z.sub(params.shift(n)));
    }
    Ok(w)
}

/// The `k`-fold iterate `F^(k)(Z, 0)`.
pub fn iterate_period_map(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    k: usize,
) -> Result<ExtVector, JvfError> {
    let mut t = ExtVector::zeros(space.dim());
    for _ in 0..k {
        t = period_map(space, params, z, &t)?;
    }
    Ok(t)
}

fn distance(a: &ExtVector, b: &ExtVector) -> f64 {
    match (a, b) {
        (ExtVector::Finite(x), ExtVector::Finite(y)) => x.distance(y),
        (ExtVector::Infinity, ExtVector::Infinity) => 0.0,
        _ => f64::INFINITY,
    }
}

/// Direct iteration from `T = 0` until successive iterates agree to
/// [`CAUCHY_TOLERANCE`]; `None` if that never happens within `max_iter`.
pub fn iterate_to_fixed_point(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    max_iter: usize,
) -> Result<Option<(ExtVector, usize)>, JvfError> {
    let mut t = ExtVector::zeros(space.dim());
    for k in 1..=max_iter {
        let next = period_map(space, params, z, &t)?;
        let scale = 1.0 + t.norm().min(next.norm());
        let step = distance(&t, &next);
        t = next;
        if step <= CAUCHY_TOLERANCE * scale {
            return Ok(Some((t, k)));
        }
    }
    Ok(None)
}

/// Central-difference Jacobian of `F(Z, ·)`; `None` if any probe is infinite.
fn jacobian(space: &SignatureSpace, params: &JvfParams, z: &Vector, t: &Vector) -> Option<DMatrix<f64>> {
    let dim = space.dim();
    let h = 1e-7 * (1.0 + t.norm());
    let mut jac = DMatrix::<f64>::zeros(dim, dim);
    for j in 0..dim {
        let mut plus = t.clone();
        let mut minus = t.clone();
        plus[j] += h;
        minus[j] -= h;
        let fp = period_map(space, params, z, &ExtVector::Finite(plus)).ok()?.into_finite()?;
        let fm = period_map(space, params, z, &ExtVector::Finite(minus)).ok()?.into_finite()?;
        for i in 0..dim {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Some(jac)
}

fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    m.complex_eigenvalues().iter().map(|l| l.norm()).fold(0.0, f64::max)
}

/// Multiplier (spectral radius of the linearization) at a finite point.
pub fn multiplier_at(space: &SignatureSpace, params: &JvfParams, z: &Vector, t: &Vector) -> Option<f64> {
    jacobian(space, params, z, t).map(|j| spectral_radius(&j))
}

fn residual(space: &SignatureSpace, params: &JvfParams, z: &Vector, t: &Vector) -> Option<Vector> {
    let f = period_map(space, params, z, &ExtVector::Finite(t.clone())).ok()?.into_finite()?;
    let r = f.sub(t);
    r.is_finite().then_some(r)
}

/// Iterates `F⁻¹` from `start`, which is drawn toward repulsive fixed points.
fn backward_orbit(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    start: Vector,
    steps: usize,
) -> Option<Vector> {
    let mut w = ExtVector::Finite(start);
    for _ in 0..steps {
        w = inverse_period_map(space, params, z, &w).ok()?;
    }
    w.into_finite().filter(|v| v.is_finite())
}

/// Damped Newton iteration on `G(T) = F(Z, T) − T`.
fn newton(space: &SignatureSpace, params: &JvfParams, z: &Vector, start: Vector) -> Option<Vector> {
    let dim = space.dim();
    let mut t = start;
    let mut g = residual(space, params, z, &t)?;
    for _ in 0..200 {
        if g.norm() <= CAUCHY_TOLERANCE * (1.0 + t.norm()) {
            return Some(t);
        }
        let mut jac = jacobian(space, params, z, &t)?;
        for i in 0..dim {
            jac[(i, i)] -= 1.0;
        }
        let rhs = nalgebra::DVector::from_iterator(dim, g.iter().map(|c| -c));
        let delta = jac.lu().solve(&rhs)?;
        let mut damping = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vector = t.iter().zip(delta.iter()).map(|(a, d)| a + damping * d).collect();
            if let Some(gt) = residual(space, params, z, &trial) {
                if gt.norm() < g.norm() {
                    t = trial;
                    g = gt;
                    accepted = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (g.norm() <= 1e-10 * (1.0 + t.norm())).then_some(t)
}

/// All fixed points of `F(Z, ·)` that could be located.
///
/// The attractive point comes from direct iteration and is listed first.
/// Further points come from damped Newton iterations started at
/// `multi_starts` random seeds with log-uniform magnitudes, and again from
/// the end of a short backward orbit of each seed. The search is
/// best-effort and does not certify that every solution was found.
pub fn find_fixed_points(
    space: &SignatureSpace,
    params: &JvfParams,
    z: &Vector,
    multi_starts: usize,
    seed: u64,
) -> Result<Vec<FixedPointReport>, JvfError> {
    period_of(params)?;
    space.check_dim(z)?;
    let (attractive, _) =
        iterate_to_fixed_point(space, params, z, MAX_ITERATIONS)?.ok_or(JvfError::NoAttractiveFixedPoint)?;

    let mut found: Vec<Vector> = Vec::new();
    let mut reports = Vec::new();
    match &attractive {
        ExtVector::Finite(t) => {
            let multiplier = multiplier_at(space, params, z, t).unwrap_or(f64::NAN);
            found.push(t.clone());
            reports.push(FixedPointReport {
                location: attractive.clone(),
                multiplier,
                kind: FixedPointKind::from_multiplier(multiplier),
            });
        }
        ExtVector::Infinity => reports.push(FixedPointReport {
            location: ExtVector::Infinity,
            multiplier: 0.0,
            kind: FixedPointKind::Attractive,
        }),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..multi_starts {
        let dir: Vector = (0..space.dim()).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let magnitude = 10f64.powf(rng.random_range(-2.0..2.0));
        let start = dir.scaled(magnitude / dir.norm());
        let backward = backward_orbit(space, params, z, start.clone(), BACKWARD_STEPS);
        for seed in std::iter::once(start).chain(backward) {
            let Some(t) = newton(space, params, z, seed) else { continue };
            if found.iter().any(|f| f.distance(&t) <= DEDUP_DISTANCE * (1.0 + t.norm())) {
                continue;
            }
            let Some(multiplier) = multiplier_at(space, params, z, &t) else { continue };
            found.push(t.clone());
            reports.push(FixedPointReport {
                location: ExtVector::Finite(t),
                multiplier,
                kind: FixedPointKind::from_multiplier(multiplier),
            });
        }
    }
    Ok(reports)
}

/// A point of the planar frame where infinity is a fixed point of `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityCandidate {
    pub z: Vector,
    pub attractive: bool,
}

/// `Z − A_0 − β_1/(Z − A_1 − … )` for the `p − 1` levels whose vanishing
/// makes `R_{p−1}(Z, 0)` infinite; `None` if an inner level is singular.
fn infinity_condition(space: &SignatureSpace, params: &JvfParams, period: usize, z: &Vector) -> Option<Vector> {
    let levels = period - 1;
    match eval_truncated(space, params, z, levels, &ExtVector::zeros(space.dim())) {
        ExtVector::Infinity => Some(Vector::zeros(space.dim())),
        ExtVector::Finite(r) => {
            // R_{p−1} = 1/D, so D = 1/R_{p−1}; a zero R means D is infinite.
            space.invert_vec(&r).into_finite()
        }
    }
}

/// Points `Z` of the planar frame where `R_{p−1}(Z, 0) = ∞`, so that infinity
/// is a fixed point of `F(Z, ·)`.
///
/// Roots are found by two-dimensional Newton iterations from a grid of
/// starts. Each is labeled attractive when iteration of `F` from a large
/// tail keeps growing, repulsive when it falls back.
pub fn infinity_fixed_point_candidates(
    space: &SignatureSpace,
    params: &JvfParams,
) -> Result<Vec<InfinityCandidate>, JvfError> {
    let period = period_of(params)?;
    let frame = PlanarFrame::for_space(space)?;
    if period < 2 {
        return Ok(Vec::new());
    }
    for (n, a) in params.shifts().iter().enumerate() {
        if !frame.contains(a) {
            return Err(JvfError::NotPlanar(n));
        }
    }
    let dim = space.dim();
    let extent = 2.0
        * (params.shifts().iter().map(|a| a.norm()).fold(0.0, f64::max)
            + params.scales().iter().copied().fold(0.0, f64::max).sqrt())
        + 1.0;
    let cond = |c: Complex64| -> Option<Complex64> {
        infinity_condition(space, params, period, &frame.to_vector(c, dim)).map(|d| frame.to_complex(&d))
    };

    let starts = 24;
    let mut roots: Vec<Complex64> = Vec::new();
    for j in 0..=starts {
        for i in 0..=starts {
            let c0 = Complex64::new(
                -extent + 2.0 * extent * i as f64 / starts as f64,
                -extent + 2.0 * extent * j as f64 / starts as f64,
            );
            let Some(root) = planar_newton(&cond, c0) else { continue };
            if root.norm() > 2.0 * extent {
                continue;
            }
            if roots.iter().all(|r| (r - root).norm() > DEDUP_DISTANCE * (1.0 + root.norm())) {
                roots.push(root);
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    Ok(roots
        .into_iter()
        .map(|c| {
            let z = frame.to_vector(c, dim);
            let attractive = infinity_is_attractive(space, params, &frame, &z);
            InfinityCandidate { z, attractive }
        })
        .collect())
}

fn planar_newton<F: Fn(Complex64) -> Option<Complex64>>(f: &F, start: Complex64) -> Option<Complex64> {
    let mut c = start;
    let mut fc = f(c)?;
    for _ in 0..100 {
        if fc.norm() <= 1e-14 * (1.0 + c.norm()) {
            return Some(c);
        }
        let h = 1e-7 * (1.0 + c.norm());
        let dx = (f(c + h)? - f(c - h)?) / (2.0 * h);
        let dy = (f(c + Complex64::new(0.0, h))? - f(c - Complex64::new(0.0, h))?) / (2.0 * h);
        // solve [dx dy] δ = −f as a real 2×2 system
        let det = dx.re * dy.im - dy.re * dx.im;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let sx = (-fc.re * dy.im + dy.re * fc.im) / det;
        let sy = (-dx.re * fc.im + fc.re * dx.im) / det;
        let step = Complex64::new(sx, sy);
        let mut damping = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = c + damping * step;
            if let Some(ft) = f(trial) {
                if ft.norm() < fc.norm() {
                    c = trial;
                    fc = ft;
                    accepted = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (fc.norm() <= 1e-10 * (1.0 + c.norm())).then_some(c)
}

/// Iterates `F` from a tail of magnitude `1e6` on the plane; infinity is
/// attractive when the iterates end up larger than they started.
fn infinity_is_attractive(space: &SignatureSpace, params: &JvfParams, frame: &PlanarFrame, z: &Vector) -> bool {
    let start = 1e6;
    let mut t = ExtVector::Finite(frame.to_vector(Complex64::new(start, 0.0), space.dim()));
    for _ in 0..20 {
        t = match period_map(space, params, z, &t) {
            Ok(next) => next,
            Err(_) => return false,
        };
        if t.is_infinite() {
            return true;
        }
    }
    t.norm() > start
}
