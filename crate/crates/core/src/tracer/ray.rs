//! Pseudo-arclength continuation of one branch.

use std::collections::BTreeMap;

use nalgebra::{DVector, Matrix3, SVector};

use crate::config::RunConfig;
use crate::domain::{membership, MembershipStatus};
use crate::lamination::{wheel_search, RationalLamination};
use crate::word::{cyclic_reduce, trace_at, GroupWord, ParameterPoint};

use super::newton::jacobian;
use super::{
    lamination_coords, newton_options, seed_from_coords, solve_rows, theta_nominal, AffineRow, RayPolyline,
    RaySample, Row, Terminus, TracerError,
};

/// A curve in `ℝ⁴` cut out by three rows, with the curves whose traces are
/// watched for parabolicity.
pub struct Branch<'a> {
    pub rows: Vec<Row>,
    pub constraints: Vec<GroupWord>,
    pub monitored: Vec<GroupWord>,
    /// `(q1, q2)` of the lamination, for the nominal bending scale.
    pub q: [f64; 2],
    pub cfg: &'a RunConfig,
}

fn cplx(x: &[f64; 4]) -> (num_complex::Complex64, num_complex::Complex64) {
    (num_complex::Complex64::new(x[0], x[1]), num_complex::Complex64::new(x[2], x[3]))
}

impl Branch<'_> {
    fn sample(&self, x: &[f64; 4], flags: Vec<String>) -> RaySample {
        let (t1, t2) = cplx(x);
        let p = ParameterPoint { tau1: t1, tau2: t2 };
        let mut residual: f64 = 0.0;
        let mut trace_values = BTreeMap::new();
        for w in &self.constraints {
            let tr = trace_at(w, t1, t2);
            residual = residual.max(tr.im.abs() / tr.norm().max(1.0));
            trace_values.insert(w.to_string(), tr.re);
        }
        RaySample { theta_nominal: theta_nominal(self.q, &p), point: p, residual, trace_values, flags }
    }

    /// `|Re tr| − 2` minimized over monitored curves, with the minimizing index.
    fn monitor(&self, x: &[f64; 4]) -> (f64, usize) {
        let (t1, t2) = cplx(x);
        self.monitored
            .iter()
            .enumerate()
            .map(|(i, w)| (trace_at(w, t1, t2).re.abs() - 2.0, i))
            .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a })
    }

    /// Unit tangent of the branch from the 3×4 Jacobian of its rows.
    fn tangent(&self, x: &[f64; 4]) -> SVector<f64, 4> {
        let xs = DVector::from_row_slice(x);
        let n = self.rows.len();
        let f = |y: &DVector<f64>| {
            let mut v = DVector::<f64>::zeros(n);
            for (i, r) in self.rows.iter().enumerate() {
                v[i] = r.eval(y.as_slice()).0;
            }
            (v, DVector::<f64>::from_element(n, 1.0))
        };
        let j = jacobian(&f, &xs, &newton_options(self.cfg));
        let mut t = SVector::<f64, 4>::zeros();
        for k in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
            let m = Matrix3::from_fn(|r, c| j[(r, cols[c])]);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            t[k] = sign * m.determinant();
        }
        let n = t.norm();
        if n > 0.0 {
            t / n
        } else {
            t
        }
    }

    fn correct(&self, pred: &SVector<f64, 4>, t: &SVector<f64, 4>) -> Result<([f64; 4], usize), TracerError> {
        let mut rows = self.rows.clone();
        rows.push(Row::Affine(AffineRow::new([t[0], t[1], t[2], t[3]], t.dot(pred))));
        solve_rows(&rows, (*pred).into(), self.cfg)
    }

    /// Locates the first parabolic crossing on the step from `x` along `t`,
    /// where the monitor changes sign before `ds`.
    fn locate_cusp(&self, x: &[f64; 4], t: &SVector<f64, 4>, ds: f64) -> ([f64; 4], usize) {
        let base = SVector::from(*x);
        let (mut lo, mut hi) = (0.0, ds);
        let mut best = (*x, self.monitor(x).1);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let Ok((y, _)) = self.correct(&(base + t * mid), t) else {
                hi = mid;
                continue;
            };
            let (g, idx) = self.monitor(&y);
            best = (y, idx);
            if g.abs() < self.cfg.cusp_tol * 1e-2 || hi - lo < 1e-15 * ds.max(1.0) {
                break;
            }
            if g > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Polish: replace the arclength row by `Re tr = ±2` for the crossing curve.
        let (y, idx) = best;
        let w = &self.monitored[idx];
        let (t1, t2) = cplx(&y);
        let target = 2.0 * trace_at(w, t1, t2).re.signum();
        let mut rows = self.rows.clone();
        rows.push(Row::ReTrace(w.clone(), target));
        match solve_rows(&rows, y, self.cfg) {
            Ok((z, _)) if (self.monitor(&z).0).abs() <= (self.monitor(&y).0).abs() => (z, idx),
            _ => (y, idx),
        }
    }
}

/// Continues a branch from a corrected start point toward decreasing `Im`.
pub fn continue_branch(branch: &Branch<'_>, start: [f64; 4], theta_end: f64) -> Result<RayPolyline, TracerError> {
    let cfg = branch.cfg;
    let (g0, i0) = branch.monitor(&start);
    if g0 <= 0.0 {
        return Err(TracerError::SeedPastCusp(branch.monitored[i0].to_string()));
    }
    let mut samples = vec![branch.sample(&start, vec!["seed".into()])];
    let mut x = start;
    let mut t = branch.tangent(&x);
    if t[1] + t[3] > 0.0 {
        t = -t;
    }
    let mut h = cfg.initial_step;
    let mut easy = 0;
    let mut max_ds: f64 = 0.0;
    let mut terminus = Terminus::MaxSteps;
    for _ in 0..cfg.max_steps {
        let xs = SVector::from(x);
        let ds = h * xs.norm().max(1.0);
        let pred = xs + t * ds;
        let step = branch.correct(&pred, &t).and_then(|(y, it)| {
            let dist = (SVector::from(y) - pred).norm();
            if dist > 0.5 * ds {
                Err(TracerError::NoConvergence { iterations: it, residual: dist })
            } else {
                Ok((y, it))
            }
        });
        let (y, iters) = match step {
            Ok(v) => v,
            Err(_) => {
                h *= 0.5;
                easy = 0;
                if h < cfg.min_step {
                    terminus = Terminus::Diverged;
                    break;
                }
                continue;
            }
        };
        if branch.monitor(&y).0 <= 0.0 {
            let (z, idx) = branch.locate_cusp(&x, &t, ds);
            max_ds = max_ds.max((SVector::from(z) - xs).norm());
            samples.push(branch.sample(&z, vec!["cusp".into()]));
            terminus = Terminus::Cusp(branch.monitored[idx].clone());
            break;
        }
        let mut tn = branch.tangent(&y);
        if tn.dot(&t) < 0.0 {
            tn = -tn;
        }
        max_ds = max_ds.max((SVector::from(y) - xs).norm());
        let s = branch.sample(&y, Vec::new());
        let done = s.theta_nominal >= theta_end;
        samples.push(s);
        x = y;
        t = tn;
        if done {
            terminus = Terminus::ThetaEnd;
            break;
        }
        if iters <= 3 {
            easy += 1;
            if easy >= 3 {
                h = (h * 1.3).min(cfg.max_step);
                easy = 0;
            }
        } else {
            easy = 0;
        }
    }
    Ok(RayPolyline { samples, terminus, max_arclength_step: max_ds })
}

/// Traces the ray of a single admissible curve, constrained by the curve and
/// two wheel curves chosen by [`wheel_search`].
pub fn trace_ray(gamma: &GroupWord, theta_start: f64, theta_end: f64, cfg: &RunConfig) -> Result<RayPolyline, TracerError> {
    let gamma = cyclic_reduce(gamma);
    let wheel = wheel_search(&gamma, 2)?;
    let mut constraints = vec![gamma.clone()];
    constraints.extend(wheel);
    trace_ray_with_constraints(&gamma, &constraints, theta_start, theta_end, cfg)
}

/// As [`trace_ray`] with an explicit constraint set; every constraint is
/// monitored for parabolicity.
pub fn trace_ray_with_constraints(
    gamma: &GroupWord,
    constraints: &[GroupWord],
    theta_start: f64,
    theta_end: f64,
    cfg: &RunConfig,
) -> Result<RayPolyline, TracerError> {
    if constraints.len() != 3 {
        return Err(TracerError::RowCount(constraints.len() + 1));
    }
    let xi = RationalLamination::curve(gamma.clone())?;
    let c = lamination_coords(&xi);
    let seed = seed_from_coords(c, theta_start).ok_or(TracerError::Inadmissible)?;
    if membership(&seed).map(|v| v.status) != Ok(MembershipStatus::ProvedInside) {
        return Err(TracerError::SeedOutsideBound { tau1: seed.tau1, tau2: seed.tau2 });
    }
    let rows: Vec<Row> = constraints.iter().cloned().map(Row::ImTrace).collect();
    let mut start_rows = rows.clone();
    start_rows.push(Row::Affine(AffineRow::fix_im_tau1(seed.tau1.im)));
    let (start, _) = solve_rows(&start_rows, seed.to_real(), cfg)?;
    let branch = Branch {
        rows,
        constraints: constraints.to_vec(),
        monitored: constraints.to_vec(),
        q: [c[0], c[2]],
        cfg,
    };
    continue_branch(&branch, start, theta_end)
}
