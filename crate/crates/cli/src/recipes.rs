//! Named regression recipes reproducing the worked examples.

use anyhow::Result;
use maskit::tracer::{trace_plane, trace_ray, PlaneTrace, RayPolyline, Terminus};
use maskit::{parse_word, RunConfig};
use num_complex::Complex64;

pub const NAMES: [&str; 5] = ["ex1", "ex2", "ex3", "ex3a", "ex4"];

pub struct Check {
    pub label: String,
    pub measured: f64,
    pub tol: f64,
}

impl Check {
    fn new(label: &str, measured: f64, tol: f64) -> Self {
        Check { label: label.to_string(), measured, tol }
    }

    pub fn ok(&self) -> bool {
        self.measured.is_finite() && self.measured <= self.tol
    }
}

pub struct Outcome {
    pub checks: Vec<Check>,
    /// Traced polylines with their plane weight, for output.
    pub rays: Vec<(Option<f64>, RayPolyline)>,
    pub notes: Vec<String>,
}

fn flag(cond: bool) -> f64 {
    if cond {
        0.0
    } else {
        f64::INFINITY
    }
}

fn max_over<T>(it: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    it.into_iter().map(f).fold(0.0, f64::max)
}

fn ray_recipe(word: &str, theta: f64, cfg: &RunConfig, cusp: (Complex64, Complex64), re: (f64, f64)) -> Result<Outcome> {
    let g = parse_word(word)?;
    let ray = trace_ray(&g, theta, f64::INFINITY, cfg)?;
    let last = ray.last_point().expect("ray has a seed sample");
    let checks = vec![
        Check::new("terminus is a cusp of the support curve", flag(ray.terminus == Terminus::Cusp(g.clone())), 0.0),
        Check::new(
            "cusp location",
            (last.tau1 - cusp.0).norm().max((last.tau2 - cusp.1).norm()),
            1e-9,
        ),
        Check::new("max residual", max_over(&ray.samples, |s| s.residual), 1e-10),
        Check::new(
            "deviation from closed-form line",
            max_over(&ray.samples, |s| {
                let p = s.point;
                (p.tau1.re - re.0).abs().max((p.tau2.re - re.1).abs()).max((p.tau1.im - p.tau2.im).abs())
            }),
            1e-9,
        ),
    ];
    let notes = vec![format!("terminus {} at ({}, {})", ray.terminus, last.tau1, last.tau2)];
    Ok(Outcome { checks, rays: vec![(None, ray)], notes })
}

fn plane_rays(p: PlaneTrace) -> Vec<(Option<f64>, RayPolyline)> {
    p.rays.into_iter().map(|r| (Some(r.s), r.polyline)).collect()
}

fn plane_mirror_recipe(partner: &str, grid: usize, theta: f64, cfg: &RunConfig, corner: Complex64) -> Result<Outcome> {
    let p = trace_plane(&parse_word("t")?, &parse_word(partner)?, grid, (theta, f64::INFINITY), cfg)?;
    let corner_err = p
        .corners
        .iter()
        .map(|c| (c.point.tau1 - corner).norm())
        .fold(f64::INFINITY, f64::min);
    let mirror = max_over(p.rays.iter().flat_map(|r| &r.polyline.samples), |s| {
        (s.point.tau2 + s.point.tau1.conj()).norm()
    });
    let checks = vec![
        Check::new("corner tau1", corner_err, 1e-8),
        Check::new("samples on tau2 = -conj(tau1)", mirror, 1e-8),
        Check::new("pair flagged exceptional", flag(p.exceptional), 0.0),
    ];
    let notes = p.corners.iter().map(|c| format!("corner ({}, {})", c.point.tau1, c.point.tau2)).collect();
    Ok(Outcome { checks, rays: plane_rays(p), notes })
}

fn ex4(theta: f64, cfg: &RunConfig) -> Result<Outcome> {
    let t = parse_word("t")?;
    let p = trace_plane(&t, &parse_word("aTAt")?, 50, (theta, f64::INFINITY), cfg)?;
    let target = (Complex64::new(0.0, 4.0), Complex64::new(0.0, 1.0));
    let corner_err = p
        .corners
        .iter()
        .map(|c| (c.point.tau1 - target.0).norm().max((c.point.tau2 - target.1).norm()))
        .fold(f64::INFINITY, f64::min);
    let t_cusps: Vec<_> = p
        .rays
        .iter()
        .filter(|r| r.polyline.terminus == Terminus::Cusp(t.clone()))
        .filter_map(|r| r.polyline.last_point())
        .collect();
    let checks = vec![
        Check::new("corner (4i, i)", corner_err, 1e-9),
        Check::new(
            "T-cusp boundary on Im tau1 * Im tau2 = 4",
            max_over(&t_cusps, |q| (q.tau1.im * q.tau2.im - 4.0).abs()),
            1e-8,
        ),
        Check::new("at least 20 T-cusp boundary samples", flag(t_cusps.len() >= 20), 0.0),
        Check::new(
            "samples in the plane Re tau = 0",
            max_over(p.rays.iter().flat_map(|r| &r.polyline.samples), |s| {
                s.point.tau1.re.abs().max(s.point.tau2.re.abs())
            }),
            1e-9,
        ),
    ];
    let notes = vec![format!("{} rays, {} end on T", p.rays.len(), t_cusps.len())];
    Ok(Outcome { checks, rays: plane_rays(p), notes })
}

/// Runs the named recipe. `theta` is the seeding bending scale.
pub fn run(name: &str, theta: f64, cfg: &RunConfig) -> Result<Outcome> {
    let i2 = Complex64::new(0.0, 2.0);
    let s3 = 3f64.sqrt();
    match name {
        "ex1" => ray_recipe("t", theta, cfg, (i2, i2), (0.0, 0.0)),
        "ex2" => ray_recipe("aBT", theta, cfg, (2.0 + i2, -2.0 + i2), (2.0, -2.0)),
        "ex3" => plane_mirror_recipe("aBT", 20, theta, cfg, Complex64::new(1.0, s3)),
        "ex3a" => plane_mirror_recipe("AbT", 20, theta, cfg, Complex64::new(-1.0, s3)),
        "ex4" => ex4(theta, cfg),
        _ => unreachable!("recipe names are validated by the argument parser"),
    }
}
