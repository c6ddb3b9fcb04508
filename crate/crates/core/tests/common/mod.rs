//! Random instances shared by the integration suites.
#![allow(dead_code)]

use jvf::fraction::JvfParams;
use jvf::geometry::{ExtVector, SignatureSpace, Vector};
use num_complex::Complex64;
use proptest::prelude::*;

/// Levels stored in every generated parameter set.
pub const LEVELS: usize = 14;

#[derive(Clone, Debug)]
pub struct Instance {
    pub space: SignatureSpace,
    pub params: JvfParams,
    pub z: Vector,
    /// Finite tail on the same side as the fraction value (opposite to `Z`).
    pub tail: Vector,
}

/// Valid signature in dims 3–6: `y` is negative and some axis is positive.
pub fn space_strategy() -> impl Strategy<Value = SignatureSpace> {
    (3usize..=6).prop_flat_map(|dim| (prop::collection::vec(any::<bool>(), dim), 0..dim)).prop_map(|(positive, y)| {
        let dim = positive.len();
        let mut signs: Vec<i8> = positive.iter().map(|&p| if p { 1 } else { -1 }).collect();
        signs[y] = -1;
        if !signs.contains(&1) {
            signs[(y + 1) % dim] = 1;
        }
        SignatureSpace::new(&signs, y).expect("constructed valid")
    })
}

fn vector_strategy(dim: usize, half_width: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-half_width..half_width, dim).prop_map(Vector::from)
}

/// `|A_n| ≤ 1` with zero `y`-component, `β_n ∈ (0, 1]`, `|y·Z| ∈ [0.05, 2]`.
pub fn instance_strategy() -> impl Strategy<Value = Instance> {
    space_strategy().prop_flat_map(|space| {
        let dim = space.dim();
        (
            Just(space),
            prop::collection::vec(vector_strategy(dim, 1.0), LEVELS),
            prop::collection::vec(0.0..1.0f64, LEVELS + 1),
            vector_strategy(dim, 2.0),
            0.05..2.0f64,
            any::<bool>(),
            vector_strategy(dim, 3.0),
            0.0..3.0f64,
        )
            .prop_map(|(space, raw_shifts, raw_scales, mut z, z_y, upper, mut tail, tail_y)| {
                let yi = space.y_index();
                let shifts = raw_shifts
                    .into_iter()
                    .map(|mut a| {
                        a[yi] = 0.0;
                        let n = a.norm();
                        if n > 1.0 {
                            a.scaled(1.0 / n)
                        } else {
                            a
                        }
                    })
                    .collect();
                let scales = raw_scales.into_iter().map(|u| 1.0 - u).collect();
                let side = if upper { 1.0 } else { -1.0 };
                z[yi] = side * z_y;
                tail[yi] = -side * tail_y;
                Instance { params: JvfParams::finite(shifts, scales).expect("aligned lists"), space, z, tail }
            })
    })
}

pub fn ext(v: &Vector) -> ExtVector {
    ExtVector::Finite(v.clone())
}

/// `1/(u − s)` with `s = β/(u − s)` and `β = 1/4`, taking the tail root on the
/// half-plane opposite to `u`.
pub fn constant_fraction_value(u: Complex64) -> Complex64 {
    let root = (u * u - 1.0).sqrt();
    let candidates = [(u - root) / 2.0, (u + root) / 2.0];
    let s = candidates.into_iter().find(|s| s.im * u.im < 0.0).expect("one root lies opposite to u");
    1.0 / (u - s)
}

/// `|1 − 10^{−|a − b|}|`: relative gap between two log10 magnitudes.
pub fn log_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        1.0 - 10f64.powf(-(a - b).abs())
    }
}

/// Numerical Jacobian of the vector inverse, central differences with step `h`.
pub fn inverse_jacobian(space: &SignatureSpace, z: &Vector, h: f64) -> Vec<Vec<f64>> {
    let dim = space.dim();
    let mut jac = vec![vec![0.0; dim]; dim];
    for j in 0..dim {
        let mut plus = z.clone();
        let mut minus = z.clone();
        plus[j] += h;
        minus[j] -= h;
        let fp = space.invert_vec(&plus).into_finite().unwrap();
        let fm = space.invert_vec(&minus).into_finite().unwrap();
        for i in 0..dim {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// `max |JᵀJ − λI| / λ` with `λ = 1/|Z|⁴`.
pub fn conformal_defect(space: &SignatureSpace, z: &Vector) -> f64 {
    let jac = inverse_jacobian(space, z, 1e-6 * z.norm());
    let dim = space.dim();
    let lambda = 1.0 / (z.norm_sq() * z.norm_sq());
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            let g: f64 = (0..dim).map(|k| jac[k][a] * jac[k][b]).sum();
            let target = if a == b { lambda } else { 0.0 };
            worst = worst.max((g - target).abs() / lambda);
        }
    }
    worst
}

/// `| a û + b v̂ |` against `| a v̂ + b û |`, relative to the larger.
pub fn interchange_defect(u: &Vector, v: &Vector, a: f64, b: f64) -> f64 {
    let uh = u.scaled(1.0 / u.norm());
    let vh = v.scaled(1.0 / v.norm());
    let lhs = uh.scaled(a).add(&vh.scaled(b)).norm();
    let rhs = vh.scaled(a).add(&uh.scaled(b)).norm();
    let scale = lhs.max(rhs);
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}
