//! Model systems `Im f0 = Im fw = 0` near the origin, restricted to
//! `z1 = εi e^{iα}`, `z2 = εi e^{−iα}`.

use nalgebra::DVector;
use num_complex::Complex64;

use super::newton::{newton_solve, NewtonOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToySystem {
    /// `z1 z2 (1 − z1 + z2 + z1 z2)`
    F1,
    /// `z1 z2 (1 − z1 − z2 + z1 z2)`
    F2,
    /// `z1 z2 (1 − z1 + z2 + z1²)`
    F3,
}

impl ToySystem {
    pub fn eval(self, z1: Complex64, z2: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let tail = match self {
            ToySystem::F1 => one - z1 + z2 + z1 * z2,
            ToySystem::F2 => one - z1 - z2 + z1 * z2,
            ToySystem::F3 => one - z1 + z2 + z1 * z1,
        };
        z1 * z2 * tail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ToyVerdict {
    /// Every `α` in the window solves the system.
    Family,
    None,
    Unique(f64),
    Multiple(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToyReport {
    pub system: ToySystem,
    pub eps: f64,
    /// Scanned range `|α| ≤ window`.
    pub window: f64,
    pub verdict: ToyVerdict,
    /// Largest `|Im f0|` seen on the ansatz.
    pub max_im_f0: f64,
}

fn ansatz(eps: f64, alpha: f64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    (i * eps * Complex64::from_polar(1.0, alpha), i * eps * Complex64::from_polar(1.0, -alpha))
}

/// Scans `α` over a window of width `O(ε)` (capped at 1/2), classifies the
/// zero set of `Im fw` along the ansatz, and refines isolated roots by Newton.
pub fn toy_branch_check(which: ToySystem, eps: f64) -> ToyReport {
    let window = (50.0 * eps).min(0.5);
    let g = |a: f64| {
        let (z1, z2) = ansatz(eps, a);
        which.eval(z1, z2).im
    };
    let scale = |a: f64| {
        let (z1, z2) = ansatz(eps, a);
        which.eval(z1, z2).norm().max(f64::MIN_POSITIVE)
    };
    let n = 400;
    let grid: Vec<f64> = (0..n).map(|k| -window + 2.0 * window * (k as f64 + 0.5) / n as f64).collect();
    let mut max_im_f0: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    for &a in &grid {
        let (z1, z2) = ansatz(eps, a);
        max_im_f0 = max_im_f0.max((z1 * z2).im.abs());
        max_rel = max_rel.max(g(a).abs() / scale(a));
    }
    if max_rel < 1e-10 {
        return ToyReport { system: which, eps, window, verdict: ToyVerdict::Family, max_im_f0 };
    }
    let opts = NewtonOptions { tol: 1e-13, max_iter: 50, fd_step: 1e-7 * eps, complex_pairs: false };
    let mut roots: Vec<f64> = Vec::new();
    for w in grid.windows(2) {
        let (ga, gb) = (g(w[0]), g(w[1]));
        if ga.signum() == gb.signum() {
            continue;
        }
        let f = |x: &DVector<f64>| (DVector::from_element(1, g(x[0])), DVector::from_element(1, scale(x[0])));
        let x0 = DVector::from_element(1, 0.5 * (w[0] + w[1]));
        let inside = |x: &DVector<f64>| x[0] >= w[0] && x[0] <= w[1];
        let root = match newton_solve(x0, f, inside, &opts) {
            Ok(r) => r.x[0],
            Err(_) => {
                let (mut lo, mut hi) = (w[0], w[1]);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if g(mid).signum() == ga.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        };
        roots.push(root);
    }
    let verdict = match roots.len() {
        0 => ToyVerdict::None,
        1 => ToyVerdict::Unique(roots[0]),
        _ => ToyVerdict::Multiple(roots),
    };
    ToyReport { system: which, eps, window, verdict, max_im_f0 }
}
