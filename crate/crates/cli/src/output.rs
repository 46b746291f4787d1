//! Serialization of traced rays: JSON lines, CSV and a small SVG plot.

use std::io::Write;

use anyhow::Result;
use maskit::tracer::{RayPolyline, RaySample};
use serde_json::{json, Value};

pub fn sample_json(s: &RaySample, plane_s: Option<f64>) -> Value {
    let mut v = json!({
        "theta": s.theta_nominal,
        "tau1": [s.point.tau1.re, s.point.tau1.im],
        "tau2": [s.point.tau2.re, s.point.tau2.im],
        "residual": s.residual,
        "traces": s.trace_values,
        "flags": s.flags,
    });
    if let Some(x) = plane_s {
        v["s"] = json!(x);
    }
    v
}

/// One JSON object per line; `rays` pairs each polyline with its plane weight.
pub fn write_jsonl(w: &mut dyn Write, rays: &[(Option<f64>, &RayPolyline)]) -> Result<()> {
    for (s, ray) in rays {
        for sample in &ray.samples {
            writeln!(w, "{}", sample_json(sample, *s))?;
        }
    }
    Ok(())
}

pub fn write_csv(w: &mut dyn Write, rays: &[(Option<f64>, &RayPolyline)]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["s", "theta", "tau1_re", "tau1_im", "tau2_re", "tau2_im", "residual", "flags"])?;
    for (s, ray) in rays {
        for p in &ray.samples {
            out.write_record([
                s.map(|x| x.to_string()).unwrap_or_default(),
                p.theta_nominal.to_string(),
                p.point.tau1.re.to_string(),
                p.point.tau1.im.to_string(),
                p.point.tau2.re.to_string(),
                p.point.tau2.im.to_string(),
                p.residual.to_string(),
                p.flags.join(";"),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Plots `(Im τ1, Im τ2)` of every sample on log axes, one polyline per ray.
pub fn rays_svg(rays: &[(Option<f64>, &RayPolyline)]) -> String {
    let pts: Vec<Vec<(f64, f64)>> = rays
        .iter()
        .map(|(_, r)| r.samples.iter().map(|s| (s.point.tau1.im.ln(), s.point.tau2.im.ln())).collect())
        .collect();
    let all = pts.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let (w, h, pad) = (600.0, 600.0, 20.0);
    let sx = (w - 2.0 * pad) / (x1 - x0).max(1e-12);
    let sy = (h - 2.0 * pad) / (y1 - y0).max(1e-12);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    for line in &pts {
        let coords: Vec<String> = line
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", pad + (x - x0) * sx, h - pad - (y - y0) * sy))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
