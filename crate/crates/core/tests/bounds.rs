use curvkit::immersions::{self, curvature_report, Sampler};
use curvkit::numkit::DEFAULT_RESTARTS;
use curvkit::scalarbounds::{
    band_inequality, band_max_radius, bessel_zero_bracket, lower_bound_catalog, sc_rtimes, BoundsKind, BoundsQuery,
    ScValue, J0_FIRST_ZERO,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn gamma_shifted(nu: f64) -> f64 {
    // Γ(ν+1) for integer or half-integer ν ≥ 0.
    let (mut g, mut z) = if nu.fract() == 0.0 { (1.0, 1.0) } else { (PI.sqrt() / 2.0, 1.5) };
    while z < nu + 1.0 - 1e-12 {
        g *= z;
        z += 1.0;
    }
    g
}

/// `J_ν(x)` by its power series.
fn bessel_j(nu: f64, x: f64) -> f64 {
    let q = (x / 2.0) * (x / 2.0);
    let mut term = (x / 2.0).powf(nu) / gamma_shifted(nu);
    let mut sum = term;
    for k in 0..200 {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (kf + 1.0 + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// First positive zero: scan for the first sign change, then bisect.
fn first_zero(nu: f64) -> f64 {
    let mut a = 0.05;
    while bessel_j(nu, a + 0.01) > 0.0 {
        a += 0.01;
    }
    let mut b = a + 0.01;
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if bessel_j(nu, mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[test]
fn oracle_reproduces_exact_zeros() {
    assert!((first_zero(0.5) - PI).abs() < 1e-12);
    assert!((first_zero(1.5) - 4.493_409_457_909_064).abs() < 1e-10);
    assert!((first_zero(0.0) - J0_FIRST_ZERO).abs() < 1e-12);
}

#[test]
fn bracket_contains_oracle_zeros() {
    for nu in [1.0, 1.5, 2.0, 2.5, 3.0] {
        let z = first_zero(nu);
        let (lo, hi) = bessel_zero_bracket(nu).unwrap();
        assert!(lo - 1e-8 <= z && z <= hi + 1e-8, "nu={nu}: {z} not in [{lo}, {hi}]");
    }
}

#[test]
fn ball_values_use_exact_zeros_below_the_bracket() {
    let ball = |n| sc_rtimes(BoundsKind::Ball, &BoundsQuery { n: Some(n), ..Default::default() }).unwrap();
    assert_eq!(ball(1), ScValue::Exact(PI * PI));
    assert_eq!(ball(3), ScValue::Exact(4.0 * PI * PI));
    let two = 4.0 * first_zero(0.0).powi(2);
    assert!(ball(2).contains(two, 1e-10));
    for n in 4..=8 {
        let z = first_zero(n as f64 / 2.0 - 1.0);
        assert!(ball(n).contains(4.0 * z * z, 1e-8), "n={n}");
    }
}

#[test]
fn petrunin_bound_sits_below_constructed_tori() {
    for n in 2..=6usize {
        let spec = immersions::clifford_torus(n, None).unwrap();
        let x = Sampler::light(1, 0).points(spec.domain()).remove(0);
        let c = curvature_report(&spec, &x, DEFAULT_RESTARTS, 0).unwrap().curv_perp;
        let q = BoundsQuery { m: Some(n), ..Default::default() };
        assert!(lower_bound_catalog(BoundsKind::Petrunin, &q).unwrap() < c);
    }
}

proptest! {
    #[test]
    fn rectangle_value_is_additive(sides in prop::collection::vec(0.1f64..10.0, 2..8), cut in 1usize..7) {
        let cut = cut.min(sides.len() - 1);
        let value = |s: &[f64]| match sc_rtimes(BoundsKind::Rectangle, &BoundsQuery { sides: s.to_vec(), ..Default::default() }).unwrap() {
            ScValue::Exact(v) => v,
            other => panic!("{other:?}"),
        };
        let whole = value(&sides);
        let parts = value(&sides[..cut]) + value(&sides[cut..]);
        prop_assert!((whole - parts).abs() <= 1e-12 * whole);
    }

    #[test]
    fn bracket_is_ordered(nu in 0.5001f64..1e4) {
        let (lo, hi) = bessel_zero_bracket(nu).unwrap();
        prop_assert!(nu < lo && lo < hi);
    }

    #[test]
    fn band_radius_marks_the_transition(sc in 1.0f64..200.0, d in prop::collection::vec(0.5f64..20.0, 1..4)) {
        if let Some(r) = band_max_radius(sc, &d).unwrap() {
            prop_assert!(band_inequality(sc, &d, r * (1.0 - 1e-6)).unwrap());
        } else {
            let cap = d.iter().copied().fold(f64::INFINITY, f64::min) / 2.0;
            prop_assert!(band_inequality(sc, &d, cap * 0.999).unwrap());
        }
    }
}
