//! Membership bounds, twist translations and fundamental disks.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::word::{DomainError, ParameterPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MembershipStatus {
    ProvedInside,
    ProvedOutside,
    Unknown,
}

impl fmt::Display for MembershipStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MembershipStatus::ProvedInside => "PROVED_INSIDE",
            MembershipStatus::ProvedOutside => "PROVED_OUTSIDE",
            MembershipStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    /// The binding inequality.
    pub witness: String,
}

/// Classifies a parameter point using the sufficient bound
/// (`Im τi > 1`, `Im τ1 Im τ2 > 4`) and the necessary bound
/// (`Im τi ≥ 1/2`, `Im τ1 Im τ2 ≥ 1`).
pub fn membership(p: &ParameterPoint) -> Result<MembershipVerdict, DomainError> {
    let (y1, y2) = (p.tau1.im, p.tau2.im);
    if !(y1 > 0.0 && y2 > 0.0) {
        return Err(DomainError::NotUpperHalf(y1, y2));
    }
    let prod = y1 * y2;
    let v = |status, witness: String| Ok(MembershipVerdict { status, witness });
    if y1 < 0.5 {
        return v(MembershipStatus::ProvedOutside, format!("Im tau1 = {y1} < 1/2"));
    }
    if y2 < 0.5 {
        return v(MembershipStatus::ProvedOutside, format!("Im tau2 = {y2} < 1/2"));
    }
    if prod < 1.0 {
        return v(MembershipStatus::ProvedOutside, format!("Im tau1 * Im tau2 = {prod} < 1"));
    }
    if y1 > 1.0 && y2 > 1.0 && prod > 4.0 {
        return v(
            MembershipStatus::ProvedInside,
            format!("Im tau1 = {y1} > 1, Im tau2 = {y2} > 1, Im tau1 * Im tau2 = {prod} > 4"),
        );
    }
    let witness = if y1 <= 1.0 {
        format!("Im tau1 = {y1} in [1/2, 1]")
    } else if y2 <= 1.0 {
        format!("Im tau2 = {y2} in [1/2, 1]")
    } else {
        format!("Im tau1 * Im tau2 = {prod} in [1, 4]")
    };
    v(MembershipStatus::Unknown, witness)
}

/// Translation `τ_axis ↦ τ_axis + 2n` induced by `n` twists about `σ_axis`.
pub fn dehn_twist(p: &ParameterPoint, axis: u8, n: i64) -> ParameterPoint {
    let shift = Complex64::new(2.0 * n as f64, 0.0);
    match axis {
        1 => ParameterPoint { tau1: p.tau1 + shift, tau2: p.tau2 },
        _ => ParameterPoint { tau1: p.tau1, tau2: p.tau2 + shift },
    }
}

/// Disks `B2`, `B3` paired by `ρ(T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalDisks {
    pub b2_center: Complex64,
    pub b3_center: Complex64,
    pub radius: f64,
}

pub fn fundamental_disks(p: &ParameterPoint) -> Result<FundamentalDisks, DomainError> {
    let y2 = p.tau2.im;
    if !(y2 > 0.0) {
        return Err(DomainError::NotUpperHalf(p.tau1.im, y2));
    }
    let r = 1.0 / y2;
    Ok(FundamentalDisks {
        b2_center: Complex64::new(0.0, r),
        b3_center: p.tau1 - Complex64::new(0.0, r),
        radius: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(y1: f64, y2: f64) -> ParameterPoint {
        ParameterPoint::new(Complex64::new(0.0, y1), Complex64::new(0.0, y2)).unwrap()
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(membership(&pt(2.5, 2.5)).unwrap().status, MembershipStatus::ProvedInside);
        assert_eq!(membership(&pt(0.4, 100.0)).unwrap().status, MembershipStatus::ProvedOutside);
        assert_eq!(membership(&pt(1.5, 2.0)).unwrap().status, MembershipStatus::Unknown);
        assert_eq!(membership(&pt(2.0, 2.0)).unwrap().status, MembershipStatus::Unknown);
    }

    #[test]
    fn disks_example() {
        let d = fundamental_disks(&pt(4.0, 2.0)).unwrap();
        assert_eq!(d.radius, 0.5);
        assert_eq!(d.b2_center, Complex64::new(0.0, 0.5));
        assert_eq!(d.b3_center, Complex64::new(0.0, 3.5));
    }
}
