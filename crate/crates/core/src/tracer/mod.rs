//! Pleating rays and planes as branches of `Im tr = 0` systems.
//!
//! Rays are seeded from the asymptotic formula
//! `τi ≈ −2pi/qi + 4i/(θ qi)`, corrected onto the real-trace variety by Newton
//! iteration, and continued by pseudo-arclength steps toward decreasing
//! imaginary parts until a monitored curve becomes parabolic.

pub mod newton;
mod plane;
mod ray;
mod toy;

pub use plane::{trace_plane, Corner, PlaneRay, PlaneTrace};
pub use ray::{continue_branch, trace_ray, trace_ray_with_constraints, Branch};
pub use toy::{toy_branch_check, ToyReport, ToySystem, ToyVerdict};

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::config::RunConfig;
use crate::lamination::{CanonicalCoords, LaminationError, RationalCoords, RationalLamination};
use crate::poly::PolyError;
use crate::word::{trace_at, GroupWord, ParameterPoint};

use newton::{newton_solve, NewtonOptions};

#[derive(Debug, Error, PartialEq)]
pub enum TracerError {
    #[error("expected 4 rows, got {0}")]
    RowCount(usize),
    #[error("singular Jacobian (singular value ratio {ratio:e})")]
    SingularJacobian { ratio: f64 },
    #[error("Newton did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("lamination is not admissible")]
    Inadmissible,
    #[error("seed ({tau1}, {tau2}) is not inside the sufficiency bounds; decrease theta")]
    SeedOutsideBound { tau1: Complex64, tau2: Complex64 },
    #[error("seed already lies past a cusp of {0}")]
    SeedPastCusp(String),
    #[error("the two curves {0} and {1} are not disjoint")]
    NotDisjoint(String, String),
    #[error("no admissible lamination on the grid")]
    NoAdmissibleRays,
    #[error("pseudo-ray foliation is degenerate for this pair")]
    DegenerateFoliation,
    #[error(transparent)]
    Lamination(#[from] LaminationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One equation in the real unknowns `(x1, y1, x2, y2)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Row {
    /// `Im tr w = 0`.
    ImTrace(GroupWord),
    /// `Re tr w = target`.
    ReTrace(GroupWord, f64),
    /// `coeffs · x = rhs`.
    Affine(AffineRow),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineRow {
    pub coeffs: [f64; 4],
    pub rhs: f64,
}

impl AffineRow {
    pub fn new(coeffs: [f64; 4], rhs: f64) -> Self {
        AffineRow { coeffs, rhs }
    }

    /// `Im τ1 = y`.
    pub fn fix_im_tau1(y: f64) -> Self {
        AffineRow::new([0.0, 1.0, 0.0, 0.0], y)
    }
}

fn point(x: &[f64]) -> (Complex64, Complex64) {
    (Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]))
}

impl Row {
    /// Value and scale at `x`.
    pub fn eval(&self, x: &[f64]) -> (f64, f64) {
        match self {
            Row::ImTrace(w) => {
                let (t1, t2) = point(x);
                let tr = trace_at(w, t1, t2);
                (tr.im, tr.norm().max(1.0))
            }
            Row::ReTrace(w, target) => {
                let (t1, t2) = point(x);
                let tr = trace_at(w, t1, t2);
                (tr.re - target, tr.norm().max(1.0))
            }
            Row::Affine(a) => {
                let terms: f64 = (0..4).map(|i| (a.coeffs[i] * x[i]).abs()).sum();
                let v: f64 = (0..4).map(|i| a.coeffs[i] * x[i]).sum::<f64>() - a.rhs;
                (v, terms.max(a.rhs.abs()).max(1.0))
            }
        }
    }
}

pub(crate) fn newton_options(cfg: &RunConfig) -> NewtonOptions {
    NewtonOptions {
        tol: cfg.newton_tol,
        max_iter: cfg.newton_max_iter,
        fd_step: cfg.fd_step,
        complex_pairs: true,
    }
}

fn in_chart(x: &DVector<f64>) -> bool {
    x[1] > 0.0 && x[3] > 0.0
}

/// Solves a square system of four rows from `x0`; returns the point and the
/// number of iterations.
pub fn solve_rows(rows: &[Row], x0: [f64; 4], cfg: &RunConfig) -> Result<([f64; 4], usize), TracerError> {
    if rows.len() != 4 {
        return Err(TracerError::RowCount(rows.len()));
    }
    let f = |x: &DVector<f64>| {
        let mut v = DVector::<f64>::zeros(4);
        let mut s = DVector::<f64>::zeros(4);
        for (i, r) in rows.iter().enumerate() {
            let (a, b) = r.eval(x.as_slice());
            v[i] = a;
            s[i] = b;
        }
        (v, s)
    };
    let res = newton_solve(DVector::from_row_slice(&x0), f, in_chart, &newton_options(cfg))?;
    Ok(([res.x[0], res.x[1], res.x[2], res.x[3]], res.iterations))
}

/// Corrects `p` onto `Im tr w = 0` for each constraint while holding the
/// affine normalization rows.
pub fn newton_correct(
    p: &ParameterPoint,
    constraints: &[GroupWord],
    normalizations: &[AffineRow],
    cfg: &RunConfig,
) -> Result<ParameterPoint, TracerError> {
    let rows: Vec<Row> = constraints
        .iter()
        .cloned()
        .map(Row::ImTrace)
        .chain(normalizations.iter().copied().map(Row::Affine))
        .collect();
    let (x, _) = solve_rows(&rows, p.to_real(), cfg)?;
    Ok(ParameterPoint::from_real(x))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaySample {
    pub theta_nominal: f64,
    pub point: ParameterPoint,
    /// Max over the constraint curves of `|Im tr| / max(1, |tr|)`.
    pub residual: f64,
    /// Real part of the trace of each constraint curve.
    pub trace_values: BTreeMap<String, f64>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Terminus {
    Cusp(GroupWord),
    /// The nominal bending scale reached the requested end.
    ThetaEnd,
    MaxSteps,
    Diverged,
}

impl std::fmt::Display for Terminus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Terminus::Cusp(w) => write!(f, "CUSP({w})"),
            Terminus::ThetaEnd => write!(f, "THETA_END"),
            Terminus::MaxSteps => write!(f, "MAX_STEPS"),
            Terminus::Diverged => write!(f, "DIVERGED"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayPolyline {
    /// Ordered by decreasing `Im τ1`.
    pub samples: Vec<RaySample>,
    pub terminus: Terminus,
    /// Upper bound on the distance between consecutive samples.
    pub max_arclength_step: f64,
}

impl RayPolyline {
    pub fn last_point(&self) -> Option<ParameterPoint> {
        self.samples.last().map(|s| s.point)
    }
}

fn coords_f64(c: &RationalCoords) -> [f64; 4] {
    c.map(|r| r.to_f64().unwrap_or(f64::NAN))
}

/// `τi = −2pi/qi + 4i/(θ qi)` for coordinates with `q1, q2 > 0`.
pub fn seed_from_coords(c: [f64; 4], theta: f64) -> Option<ParameterPoint> {
    let [q1, p1, q2, p2] = c;
    if !(q1 > 0.0 && q2 > 0.0 && theta > 0.0) {
        return None;
    }
    Some(ParameterPoint {
        tau1: Complex64::new(-2.0 * p1 / q1, 4.0 / (theta * q1)),
        tau2: Complex64::new(-2.0 * p2 / q2, 4.0 / (theta * q2)),
    })
}

pub fn seed_point(xi: &RationalLamination, theta: f64) -> Result<ParameterPoint, TracerError> {
    seed_from_coords(coords_f64(&xi.coords()), theta).ok_or(TracerError::Inadmissible)
}

/// Bending scale implied by the imaginary parts, averaged over both axes.
pub fn theta_nominal(q: [f64; 2], p: &ParameterPoint) -> f64 {
    0.5 * (4.0 / (q[0] * p.tau1.im) + 4.0 / (q[1] * p.tau2.im))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EDiagnostic {
    pub value: f64,
}

/// `E = (q1x1 + 2p1)η2 + (q2x2 + 2p2)η1` with `ηi = yi/√(y1² + y2²)`.
#[allow(non_snake_case)]
pub fn eval_E(c: &CanonicalCoords, p: &ParameterPoint) -> EDiagnostic {
    let (x1, y1, x2, y2) = (p.tau1.re, p.tau1.im, p.tau2.re, p.tau2.im);
    let rho = y1.hypot(y2);
    let (e1, e2) = (y1 / rho, y2 / rho);
    let value = (c.q1 as f64 * x1 + 2.0 * c.p1 as f64) * e2 + (c.q2 as f64 * x2 + 2.0 * c.p2 as f64) * e1;
    EDiagnostic { value }
}

pub(crate) fn lamination_coords(xi: &RationalLamination) -> [f64; 4] {
    coords_f64(&xi.coords())
}
