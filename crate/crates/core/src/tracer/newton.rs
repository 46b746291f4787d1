//! Damped Newton iteration with finite-difference Jacobians.

use nalgebra::{DMatrix, DVector};

use super::TracerError;

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub fd_step: f64,
    /// Coordinates come in `(re, im)` pairs; the finite-difference step is
    /// then sized by the modulus of the pair.
    pub complex_pairs: bool,
}

#[derive(Debug, Clone)]
pub struct NewtonResult {
    pub x: DVector<f64>,
    pub iterations: usize,
    /// Max over rows of `|F_i| / scale_i`.
    pub residual: f64,
}

/// Residual values and their scales.
pub type Eval = (DVector<f64>, DVector<f64>);

fn merit(e: &Eval) -> f64 {
    e.0.iter().zip(e.1.iter()).map(|(f, s)| f.abs() / s).fold(0.0, f64::max)
}

fn step_size(x: &DVector<f64>, j: usize, opts: &NewtonOptions) -> f64 {
    let mag = if opts.complex_pairs && x.len() % 2 == 0 {
        let k = j / 2 * 2;
        x[k].hypot(x[k + 1])
    } else {
        x[j].abs()
    };
    opts.fd_step * mag.max(1.0)
}

/// Central-difference Jacobian of the residual values.
pub fn jacobian(f: &impl Fn(&DVector<f64>) -> Eval, x: &DVector<f64>, opts: &NewtonOptions) -> DMatrix<f64> {
    let n = x.len();
    let cols: Vec<DVector<f64>> = (0..n)
        .map(|c| {
            let h = step_size(x, c, opts);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[c] += h;
            xm[c] -= h;
            (f(&xp).0 - f(&xm).0) / (2.0 * h)
        })
        .collect();
    DMatrix::from_columns(&cols)
}

/// Solves `F(x) = 0` by damped Newton. `valid` rejects trial points outside
/// the admissible region.
pub fn newton_solve(
    x0: DVector<f64>,
    f: impl Fn(&DVector<f64>) -> Eval,
    valid: impl Fn(&DVector<f64>) -> bool,
    opts: &NewtonOptions,
) -> Result<NewtonResult, TracerError> {
    let mut x = x0;
    let mut e = f(&x);
    for it in 0..=opts.max_iter {
        let m = merit(&e);
        if !m.is_finite() {
            return Err(TracerError::NoConvergence { iterations: it, residual: m });
        }
        if m < opts.tol {
            // Up to two extra full steps push the residual toward rounding level.
            let mut best = (x, m);
            for _ in 0..2 {
                if best.1 == 0.0 {
                    break;
                }
                let jac = jacobian(&f, &best.0, opts);
                let Some(delta) = jac.lu().solve(&(-f(&best.0).0)) else { break };
                let trial = &best.0 + delta;
                if !valid(&trial) {
                    break;
                }
                let mt = merit(&f(&trial));
                if mt < best.1 {
                    best = (trial, mt);
                } else {
                    break;
                }
            }
            return Ok(NewtonResult { x: best.0, iterations: it, residual: best.1 });
        }
        if it == opts.max_iter {
            return Err(TracerError::NoConvergence { iterations: it, residual: m });
        }
        let jac = jacobian(&f, &x, opts);
        // Row-scaled copy for the conditioning test.
        let mut scaled = jac.clone();
        for r in 0..scaled.nrows() {
            let s = e.1[r];
            scaled.row_mut(r).scale_mut(1.0 / s);
        }
        let sv = scaled.singular_values();
        let (smax, smin) = (sv.max(), sv.min());
        if !(smin > 1e-11 * smax) {
            return Err(TracerError::SingularJacobian { ratio: smin / smax });
        }
        let delta = jac.lu().solve(&(-&e.0)).ok_or(TracerError::SingularJacobian { ratio: 0.0 })?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial = &x + &delta * lambda;
            if valid(&trial) {
                let et = f(&trial);
                if merit(&et) < m {
                    x = trial;
                    e = et;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(TracerError::NoConvergence { iterations: it, residual: m });
        }
    }
    unreachable!("loop returns on its final iteration")
}
