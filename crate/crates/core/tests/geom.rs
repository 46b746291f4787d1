use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use maskit::geom::{
    bending_angle, complex_distance, complex_distance_finite, complex_length_from_trace, cross_ratio, Extended, GeomError,
    TraceKind,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Turn angle between two transversal directions: both make angle `psi` with
/// the bending line (the x-axis) and the second plane is rotated by `theta`.
fn oracle_bend(psi: f64, theta: f64) -> f64 {
    let u1 = [psi.cos(), psi.sin(), 0.0];
    let u2 = [psi.cos(), psi.sin() * theta.cos(), psi.sin() * theta.sin()];
    let cross = [
        u1[1] * u2[2] - u1[2] * u2[1],
        u1[2] * u2[0] - u1[0] * u2[2],
        u1[0] * u2[1] - u1[1] * u2[0],
    ];
    let sin = cross.iter().map(|x| x * x).sum::<f64>().sqrt();
    let cos: f64 = u1.iter().zip(&u2).map(|(a, b)| a * b).sum();
    sin.atan2(cos)
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0))
}

#[test]
fn complex_distance_examples() {
    let cd = complex_distance_finite(c(1.0, 0.0), c(-1.0, 0.0), c(E, 0.0), c(-E, 0.0)).unwrap();
    assert!((cd.d - 1.0).abs() < 1e-12 && cd.psi.abs() < 1e-12, "{cd:?}");
    let cd = complex_distance_finite(c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)).unwrap();
    assert!(cd.d.abs() < 1e-12 && (cd.psi - FRAC_PI_2).abs() < 1e-12, "{cd:?}");
}

#[test]
fn translated_geodesics_example() {
    let (r, alpha, centre) = (3.0, FRAC_PI_3, c(0.4, 1.0));
    let e = Complex64::from_polar(r, alpha);
    let (z1, z2) = (centre + e, centre - e);
    let cd = complex_distance_finite(z1, z2, z1 + 2.0, z2 + 2.0).unwrap();
    let s = (c(cd.d, cd.psi) / 2.0).sinh();
    let want = -1.0 / (r * r * Complex64::from_polar(1.0, 2.0 * alpha));
    assert!((s * s - want).norm() < 1e-12, "{} vs {}", s * s, want);
}

#[test]
fn endpoint_at_infinity_matches_limit() {
    let inf = complex_distance(Extended::Infinity, c(0.0, 0.0).into(), c(1.0, 0.0).into(), c(-1.0, 0.0).into()).unwrap();
    assert!(inf.d.abs() < 1e-12 && (inf.psi.abs() - FRAC_PI_2).abs() < 1e-12, "{inf:?}");
    let (a, b, w1, w2) = (c(0.3, 0.2), c(2.0, -1.0), c(-1.0, 0.5), c(0.7, 3.0));
    let exact = complex_distance(a.into(), b.into(), w1.into(), Extended::Infinity).unwrap();
    let near = complex_distance_finite(a, b, w1, c(1e9, 1e9)).unwrap();
    assert!((exact.d - near.d).abs() < 1e-7 && angle_gap(exact.psi, near.psi) < 1e-7);
    assert_eq!(
        cross_ratio(Extended::Infinity, Extended::Infinity, w1.into(), w2.into()),
        Err(GeomError::CoincidentEndpoints)
    );
    assert_eq!(complex_distance_finite(a, a, w1, w2), Err(GeomError::CoincidentEndpoints));
}

#[test]
fn bending_angle_examples() {
    assert!((bending_angle(FRAC_PI_2, 1.2).unwrap() - 1.2).abs() < 1e-15);
    assert_eq!(bending_angle(0.7, 0.0).unwrap(), 0.0);
    let phi = bending_angle(FRAC_PI_6, FRAC_PI_2).unwrap();
    assert!((phi - 0.722734).abs() < 1e-6, "{phi}");
    assert!((phi - oracle_bend(FRAC_PI_6, FRAC_PI_2)).abs() < 1e-12);
    assert_eq!(bending_angle(0.0, 1.0), Err(GeomError::PsiOutOfRange(0.0)));
    assert_eq!(bending_angle(2.0, 1.0), Err(GeomError::PsiOutOfRange(2.0)));
    assert_eq!(bending_angle(1.0, PI), Err(GeomError::ThetaOutOfRange(PI)));
    assert_eq!(bending_angle(1.0, -0.1), Err(GeomError::ThetaOutOfRange(-0.1)));
}

#[test]
fn bending_angle_matches_vector_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let psi = rng.gen_range(1e-6..=FRAC_PI_2);
        let theta = rng.gen_range(0.0..PI);
        let phi = bending_angle(psi, theta).unwrap();
        assert!((phi - oracle_bend(psi, theta)).abs() < 1e-9, "psi {psi} theta {theta}");
        assert!(phi <= theta + 1e-15);
    }
}

#[test]
fn cross_ratio_identity_and_mobius_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..500 {
        let p: Vec<Complex64> = (0..4).map(|_| random_point(&mut rng)).collect();
        let x = cross_ratio(p[0].into(), p[1].into(), p[2].into(), p[3].into()).unwrap();
        let cd = complex_distance_finite(p[0], p[1], p[2], p[3]).unwrap();
        assert!(cd.d >= 0.0 && cd.psi > -PI && cd.psi <= PI);
        let half = c(cd.d, cd.psi) / 2.0;
        let coth2 = (half.cosh() / half.sinh()).powi(2);
        assert!((coth2 - x).norm() < 1e-9 * x.norm().max(1.0), "{coth2} vs {x}");

        let (a, b, cc) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
        let d = (1.0 + b * cc) / a;
        let m = |z: Complex64| (a * z + b) / (cc * z + d);
        let moved = complex_distance_finite(m(p[0]), m(p[1]), m(p[2]), m(p[3])).unwrap();
        assert!((moved.d - cd.d).abs() < 1e-9, "{moved:?} vs {cd:?}");
        assert!(angle_gap(moved.psi, cd.psi) < 1e-9, "{moved:?} vs {cd:?}");

        let swapped = complex_distance_finite(p[2], p[3], p[0], p[1]).unwrap();
        assert!((swapped.d - cd.d).abs() < 1e-12);
        assert!(angle_gap(swapped.psi, cd.psi) < 1e-12);
    }
}

#[test]
fn complex_length_examples() {
    let cl = complex_length_from_trace(c(2.0 * 1f64.cosh(), 0.0));
    assert!((cl.value - c(2.0, 0.0)).norm() < 1e-12);
    assert_eq!(cl.kind, TraceKind::Loxodromic);
    let cl = complex_length_from_trace(c(-2.0 * 1f64.cosh(), 0.0));
    assert!((cl.value - c(2.0, 0.0)).norm() < 1e-12);
    let cl = complex_length_from_trace(c(3.0, 0.0));
    assert!((cl.value.re - 1.92485).abs() < 1e-5 && cl.value.im.abs() < 1e-15);
    assert!(((cl.value / 2.0).cosh() * 2.0 - 3.0).norm() < 1e-12);
    assert_eq!(complex_length_from_trace(c(-2.0, 0.0)).kind, TraceKind::Parabolic);
    assert_eq!(complex_length_from_trace(c(0.5, 0.0)).kind, TraceKind::Elliptic);
}

#[test]
fn complex_length_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut n = 0;
    while n < 100 {
        let t = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        if t.im.abs() < 1e-3 && t.re.abs() <= 2.0 {
            continue;
        }
        n += 1;
        let cl = complex_length_from_trace(t);
        assert!(cl.value.re >= 0.0);
        assert_eq!(cl.kind, TraceKind::Loxodromic);
        let back = (cl.value / 2.0).cosh() * 2.0;
        assert!((back - t).norm().min((back + t).norm()) < 1e-10 * t.norm().max(1.0), "{t}");
    }
}

proptest! {
    #[test]
    fn bending_never_exceeds_theta(psi in 1e-9..=FRAC_PI_2, theta in 0.0..PI) {
        let phi = bending_angle(psi, theta).unwrap();
        prop_assert!(phi >= 0.0 && phi <= theta + 1e-15);
    }
}
