//! Complex distance between geodesics, bending angles and complex lengths.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("geodesic endpoints must be distinct")]
    CoincidentEndpoints,
    #[error("psi = {0} outside (0, pi/2]")]
    PsiOutOfRange(f64),
    #[error("theta = {0} outside [0, pi)")]
    ThetaOutOfRange(f64),
}

/// Point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl From<Complex64> for Extended {
    fn from(z: Complex64) -> Self {
        Extended::Finite(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDistance {
    pub d: f64,
    pub psi: f64,
}

fn wrap_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// `((z1−w2)/(z1−w1))·((w1−z2)/(w2−z2))`, with factors involving `∞` replaced
/// by their limits.
pub fn cross_ratio(z1: Extended, z2: Extended, w1: Extended, w2: Extended) -> Result<Complex64, GeomError> {
    let pts = [z1, z2, w1, w2];
    let infinite: Vec<usize> = (0..4).filter(|&i| pts[i] == Extended::Infinity).collect();
    if infinite.len() > 1 {
        return Err(GeomError::CoincidentEndpoints);
    }
    let f = |i: usize| match pts[i] {
        Extended::Finite(z) => z,
        Extended::Infinity => Complex64::new(0.0, 0.0),
    };
    let diff = |i: usize, j: usize| f(i) - f(j);
    // Factors as (i, j) meaning pts[i] - pts[j]; numerator then denominator.
    let num = [(0, 3), (2, 1)];
    let den = [(0, 2), (3, 1)];
    let mut n = Complex64::new(1.0, 0.0);
    let mut d = Complex64::new(1.0, 0.0);
    let mut sign = 1.0;
    let touches = |(i, j): (usize, usize), k: usize| i == k || j == k;
    for &(i, j) in &num {
        match infinite.first() {
            Some(&k) if touches((i, j), k) => sign *= if i == k { 1.0 } else { -1.0 },
            _ => n *= diff(i, j),
        }
    }
    for &(i, j) in &den {
        match infinite.first() {
            Some(&k) if touches((i, j), k) => sign *= if i == k { 1.0 } else { -1.0 },
            _ => d *= diff(i, j),
        }
    }
    if d.norm() == 0.0 || n.norm() == 0.0 {
        return Err(GeomError::CoincidentEndpoints);
    }
    Ok(n / d * sign)
}

/// Complex distance `D = d + iψ` between the geodesics `(z1, z2)` and
/// `(w1, w2)`, with `coth²(D/2)` equal to the cross-ratio and `d ≥ 0`.
pub fn complex_distance(z1: Extended, z2: Extended, w1: Extended, w2: Extended) -> Result<ComplexDistance, GeomError> {
    let x = cross_ratio(z1, z2, w1, w2)?;
    if (x - 1.0).norm() < 1e-15 {
        return Err(GeomError::CoincidentEndpoints);
    }
    let c = x.sqrt();
    let big_d = ((c + 1.0) / (c - 1.0)).ln();
    let (mut d, mut psi) = (big_d.re, big_d.im);
    if d < 0.0 || (d == 0.0 && psi < 0.0) {
        d = -d;
        psi = -psi;
    }
    Ok(ComplexDistance { d: d.max(0.0), psi: wrap_angle(psi) })
}

/// Convenience form for four finite points.
pub fn complex_distance_finite(z1: Complex64, z2: Complex64, w1: Complex64, w2: Complex64) -> Result<ComplexDistance, GeomError> {
    complex_distance(z1.into(), z2.into(), w1.into(), w2.into())
}

/// `φ = 2 arcsin(sin ψ · sin(θ/2))`.
pub fn bending_angle(psi: f64, theta: f64) -> Result<f64, GeomError> {
    if !(psi > 0.0 && psi <= PI / 2.0) {
        return Err(GeomError::PsiOutOfRange(psi));
    }
    if !(0.0..PI).contains(&theta) {
        return Err(GeomError::ThetaOutOfRange(theta));
    }
    Ok(2.0 * (psi.sin() * (theta / 2.0).sin()).asin())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceKind {
    Loxodromic,
    Parabolic,
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLength {
    pub value: Complex64,
    pub kind: TraceKind,
}

/// Complex length `cl` with `2 cosh(cl/2) = ±tr` and `Re cl ≥ 0`.
pub fn complex_length_from_trace(tr: Complex64) -> ComplexLength {
    let t = if tr.re < 0.0 { -tr } else { tr };
    let mut cl = (t / 2.0).acosh() * 2.0;
    if cl.re < 0.0 {
        cl = -cl;
    }
    let real = tr.im.abs() <= 1e-14 * tr.norm().max(1.0);
    let kind = if real && (tr.re.abs() - 2.0).abs() <= 1e-14 {
        TraceKind::Parabolic
    } else if real && tr.re.abs() < 2.0 {
        TraceKind::Elliptic
    } else {
        TraceKind::Loxodromic
    };
    ComplexLength { value: cl, kind }
}
