//! Pseudo-ray families spanning a pleating plane.

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::domain::{membership, MembershipStatus};
use crate::lamination::{disjoint, is_exceptional_pair, CanonicalCoords};
use crate::poly::infer_coords_from_trace;
use crate::word::{cyclic_reduce, trace_at, GroupWord, ParameterPoint};

use super::ray::Branch;
use super::{continue_branch, seed_from_coords, solve_rows, AffineRow, RayPolyline, Row, Terminus, TracerError};

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneRay {
    /// Weight of the first curve; the lamination is `s·γ1 + (1−s)·γ2`.
    pub s: f64,
    pub polyline: RayPolyline,
}

/// Point where both curves are parabolic.
#[derive(Debug, Clone, PartialEq)]
pub struct Corner {
    pub point: ParameterPoint,
    /// Grid values of the two neighbouring rays that end on different curves.
    pub between: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneTrace {
    pub rays: Vec<PlaneRay>,
    pub corners: Vec<Corner>,
    /// Set for pairs with `q1(γ1) q2(γ2) = q1(γ2) q2(γ1)`.
    pub exceptional: bool,
}

fn combo(k: usize, n: usize, c1: &CanonicalCoords, c2: &CanonicalCoords) -> [f64; 4] {
    let (k, m) = (k as f64, (n - k) as f64);
    let a = c1.as_array();
    let b = c2.as_array();
    std::array::from_fn(|i| k * a[i] as f64 + m * b[i] as f64)
}

/// Extra row selecting one pseudo-ray of the family.
fn foliation_row(c: [f64; 4], exceptional: bool, axis: usize) -> AffineRow {
    let [q1, p1, q2, p2] = c;
    if !exceptional {
        // Im τ1 / Im τ2 = q2 / q1.
        AffineRow::new([0.0, q1, 0.0, -q2], 0.0)
    } else if axis == 1 {
        // Re τ1 = −2p1/q1.
        AffineRow::new([q1, 0.0, 0.0, 0.0], -2.0 * p1)
    } else {
        AffineRow::new([0.0, 0.0, q2, 0.0], -2.0 * p2)
    }
}

/// Traces the pseudo-rays `s = k/s_grid`, `k = 0..=s_grid`, of the plane
/// spanned by two disjoint curves, each to its cusp, and locates corners
/// where neighbouring rays end on different curves.
pub fn trace_plane(
    gamma1: &GroupWord,
    gamma2: &GroupWord,
    s_grid: usize,
    theta_range: (f64, f64),
    cfg: &RunConfig,
) -> Result<PlaneTrace, TracerError> {
    let g1 = cyclic_reduce(gamma1);
    let g2 = cyclic_reduce(gamma2);
    if !disjoint(&g1, &g2)? || g1.canonical_cyclic() == g2.canonical_cyclic() {
        return Err(TracerError::NotDisjoint(g1.to_string(), g2.to_string()));
    }
    let c1 = infer_coords_from_trace(&g1)?;
    let c2 = infer_coords_from_trace(&g2)?;
    let exceptional = is_exceptional_pair(&c1, &c2);
    let axis = if !exceptional {
        0
    } else {
        let x = |c: &CanonicalCoords, i: usize| {
            let a = c.as_array();
            (a[2 * i - 1] as f64) / (a[2 * i - 2] as f64)
        };
        if c1.q1 > 0 && c2.q1 > 0 && x(&c1, 1) != x(&c2, 1) {
            1
        } else if c1.q2 > 0 && c2.q2 > 0 && x(&c1, 2) != x(&c2, 2) {
            2
        } else {
            return Err(TracerError::DegenerateFoliation);
        }
    };
    let n = s_grid.max(1);
    let ks: Vec<usize> = (0..=n)
        .filter(|&k| {
            let c = combo(k, n, &c1, &c2);
            c[0] > 0.0 && c[2] > 0.0
        })
        .collect();
    if ks.is_empty() {
        return Err(TracerError::NoAdmissibleRays);
    }
    let constraints = vec![g1.clone(), g2.clone()];
    let rays: Vec<Result<PlaneRay, TracerError>> = ks
        .par_iter()
        .map(|&k| {
            let c = combo(k, n, &c1, &c2);
            let seed = seed_from_coords(c, theta_range.0).ok_or(TracerError::Inadmissible)?;
            if membership(&seed).map(|v| v.status) != Ok(MembershipStatus::ProvedInside) {
                return Err(TracerError::SeedOutsideBound { tau1: seed.tau1, tau2: seed.tau2 });
            }
            let rows = vec![
                Row::ImTrace(g1.clone()),
                Row::ImTrace(g2.clone()),
                Row::Affine(foliation_row(c, exceptional, axis)),
            ];
            let mut start_rows = rows.clone();
            start_rows.push(Row::Affine(AffineRow::fix_im_tau1(seed.tau1.im)));
            let (start, _) = solve_rows(&start_rows, seed.to_real(), cfg)?;
            let branch = Branch {
                rows,
                constraints: constraints.clone(),
                monitored: constraints.clone(),
                q: [c[0], c[2]],
                cfg,
            };
            let polyline = continue_branch(&branch, start, theta_range.1)?;
            Ok(PlaneRay { s: k as f64 / n as f64, polyline })
        })
        .collect();
    let rays: Vec<PlaneRay> = rays.into_iter().collect::<Result<_, _>>()?;
    let mut corners = Vec::new();
    for pair in rays.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (Terminus::Cusp(wa), Terminus::Cusp(wb)) = (&a.polyline.terminus, &b.polyline.terminus) else {
            continue;
        };
        if wa == wb {
            continue;
        }
        let (Some(pa), Some(pb)) = (a.polyline.last_point(), b.polyline.last_point()) else {
            continue;
        };
        let sign = |w: &GroupWord, p: &ParameterPoint| 2.0 * trace_at(w, p.tau1, p.tau2).re.signum();
        let rows = vec![
            Row::ImTrace(wa.clone()),
            Row::ImTrace(wb.clone()),
            Row::ReTrace(wa.clone(), sign(wa, &pa)),
            Row::ReTrace(wb.clone(), sign(wb, &pb)),
        ];
        let mid: [f64; 4] = std::array::from_fn(|i| 0.5 * (pa.to_real()[i] + pb.to_real()[i]));
        if let Ok((x, _)) = solve_rows(&rows, mid, cfg) {
            corners.push(Corner { point: ParameterPoint::from_real(x), between: (a.s, b.s) });
        }
    }
    Ok(PlaneTrace { rays, corners, exceptional })
}
