mod common;

use jvf::fraction::{eval_truncated, forward_fragment, level_map, reverse_fragment};
use jvf::geometry::{ExtVector, SignatureSpace, Vector};
use jvf::polynomials::{
    christoffel_darboux_sides, first_kind_sequence, product_form_first_kind, product_form_first_kind_reverse,
    second_kind_sequence,
};
use jvf::JvfParams;
use num_complex::Complex64;
use proptest::prelude::*;

use common::{conformal_defect, ext, instance_strategy, interchange_defect, log_gap, space_strategy};

fn nonzero_vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-5.0..5.0f64, dim)
        .prop_filter("nonzero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-6)
        .prop_map(Vector::from)
}

fn space_and_vector() -> impl Strategy<Value = (SignatureSpace, Vector)> {
    space_strategy().prop_flat_map(|s| {
        let dim = s.dim();
        (Just(s), nonzero_vector(dim))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverse_is_an_involution((space, z) in space_and_vector()) {
        let back = space.invert(&space.invert_vec(&z)).into_finite().unwrap();
        prop_assert!(back.distance(&z) <= 1e-12 * z.norm());
    }

    #[test]
    fn inverse_flips_the_y_sign_and_inverts_the_norm((space, z) in space_and_vector()) {
        let inv = space.invert_vec(&z).into_finite().unwrap();
        let (y, yi) = (space.y_component(&z), space.y_component(&inv));
        if y != 0.0 {
            prop_assert!(y * yi < 0.0);
        }
        prop_assert!((inv.norm() * z.norm() - 1.0).abs() < 1e-14);
        prop_assert!((yi + y / z.norm_sq()).abs() <= 1e-15 * (1.0 + yi.abs()));
    }

    #[test]
    fn inverse_is_conformal((space, z) in space_and_vector()) {
        prop_assert!(conformal_defect(&space, &z) <= 1e-5);
    }

    #[test]
    fn orientation_interchange(
        (u, v) in (3usize..=6).prop_flat_map(|d| (nonzero_vector(d), nonzero_vector(d))),
        a in -3.0..3.0f64,
        b in -3.0..3.0f64,
    ) {
        prop_assert!(interchange_defect(&u, &v, a, b) <= 1e-12);
    }

    #[test]
    fn tail_recursion_is_exact(inst in instance_strategy(), n in 1usize..12) {
        let deeper = level_map(&inst.space, &inst.z, inst.params.shift(n), inst.params.scale(n), &ext(&inst.tail));
        let a = eval_truncated(&inst.space, &inst.params, &inst.z, n + 1, &ext(&inst.tail));
        let b = eval_truncated(&inst.space, &inst.params, &inst.z, n, &deeper);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn fragments_agree_with_truncation(inst in instance_strategy(), n in 1usize..12) {
        let (s, p, z) = (&inst.space, &inst.params, &inst.z);
        let zero = ExtVector::zeros(s.dim());
        let truncated = eval_truncated(s, p, z, n, &zero);
        prop_assert!(dist(&forward_fragment(s, p, z, 0, n - 1), &truncated) <= 1e-12 * (1.0 + truncated.norm()));
        // one-level peeling of both fragment kinds
        let inner = forward_fragment(s, p, z, 1, n).scaled(p.scale(1));
        let peeled = s.invert(&inner.subtracted_from(&z.sub(p.shift(0))));
        prop_assert!(dist(&forward_fragment(s, p, z, 0, n), &peeled) <= 1e-12 * (1.0 + peeled.norm()));
        let inner = reverse_fragment(s, p, z, n - 1, 0).scaled(p.scale(n));
        let peeled = s.invert(&inner.subtracted_from(&z.sub(p.shift(n))));
        prop_assert!(dist(&reverse_fragment(s, p, z, n, 0), &peeled) <= 1e-12 * (1.0 + peeled.norm()));
    }

    #[test]
    fn orientation_is_opposite_to_z(inst in instance_strategy(), n in 1usize..=14) {
        let v = eval_truncated(&inst.space, &inst.params, &inst.z, n, &ext(&inst.tail));
        let v = v.finite().expect("finite value off the boundary");
        prop_assert!(inst.space.y_component(v) * inst.space.y_component(&inst.z) < 0.0);
    }

    #[test]
    fn polynomial_identities(inst in instance_strategy()) {
        let (s, p, z) = (&inst.space, &inst.params, &inst.z);
        let first = first_kind_sequence(s, p, z, 13);
        let second = second_kind_sequence(s, p, z, 12);
        for st in &first {
            prop_assert!(st.product_identity_residual() < 1e-10);
            // zeros lie on the boundary only
            prop_assert!(st.p_mantissa() > 0.0);
        }
        for n in 1..=12 {
            let recurrence = first[n].log10_p();
            prop_assert!(log_gap(product_form_first_kind(s, p, z, n).unwrap(), recurrence) < 1e-9);
            prop_assert!(log_gap(product_form_first_kind_reverse(s, p, z, n).unwrap(), recurrence) < 1e-9);
            let fragment = forward_fragment(s, p, z, 0, n - 1);
            let ratio = second[n - 1].log10_p() - first[n].log10_p();
            prop_assert!(log_gap(ratio, 2.0 * fragment.norm().log10()) < 1e-9);
        }
    }

    #[test]
    fn christoffel_darboux_telescopes(inst in instance_strategy()) {
        let (s, p, z) = (&inst.space, &inst.params, &inst.z);
        let (base, _) = christoffel_darboux_sides(s, p, z, 2).unwrap();
        let mut expected = base;
        for n in 3..=8 {
            let (lhs, rhs) = christoffel_darboux_sides(s, p, z, n).unwrap();
            expected += 2.0 * p.scale(n).log10();
            prop_assert!(log_gap(lhs, rhs) < 1e-9);
            prop_assert!(log_gap(lhs, expected) < 1e-9);
        }
    }
}

fn dist(a: &ExtVector, b: &ExtVector) -> f64 {
    match (a, b) {
        (ExtVector::Finite(x), ExtVector::Finite(y)) => x.distance(y),
        (ExtVector::Infinity, ExtVector::Infinity) => 0.0,
        _ => f64::INFINITY,
    }
}

/// In the complex plane `p_N = |D_N|²` for the ordinary denominator
/// `D_{n+1} = (z − a_n) D_n − β_n D_{n−1}`.
#[test]
fn complex_plane_reduces_to_squared_denominators() {
    let space = SignatureSpace::new(&[1, -1], 1).unwrap();
    let a = [0.3, -0.1, 0.7, 0.0, -0.4, 0.2, 0.5, -0.6];
    let beta = [1.0, 0.5, 0.8, 0.3, 1.0, 0.9, 0.2, 0.6, 0.4];
    let params = JvfParams::finite(a.iter().map(|&x| Vector::from([x, 0.0])).collect(), beta.to_vec()).unwrap();
    for zc in [Complex64::new(0.4, 0.9), Complex64::new(1.7, 0.0), Complex64::new(-0.2, -0.05)] {
        let z = Vector::from([zc.re, zc.im]);
        let states = first_kind_sequence(&space, &params, &z, a.len());
        let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        for n in 0..a.len() {
            let next = (zc - a[n]) * cur - beta[n] * prev;
            prev = cur;
            cur = next;
            let expect = cur.norm_sqr().log10();
            assert!(log_gap(states[n + 1].log10_p(), expect) < 1e-12, "n={n} z={zc}");
        }
    }
}

/// `log10 p_N(λZ) − 2N log10 λ` settles as `λ` grows. With zero shifts the
/// first correction is about `Nβ/(λ|Z|)²`, so the secant slope is `2N` to
/// 1e-6 for degrees up to eight at this `Z`.
#[test]
fn monic_growth() {
    let space = SignatureSpace::standard_3d();
    let params = JvfParams::constant(Vector::zeros(3), 0.25);
    let z = Vector::from([0.3, -0.7, 0.2]);
    for n in 1usize..=8 {
        let at = |lambda: f64| first_kind_sequence(&space, &params, &z.scaled(lambda), n)[n].log10_p();
        let (l1, l2) = (1e3f64, 1e6f64);
        let slope = (at(l2) - at(l1)) / (l2.log10() - l1.log10());
        assert!((slope - 2.0 * n as f64).abs() < 1e-6, "n={n} slope {slope}");
    }
}
