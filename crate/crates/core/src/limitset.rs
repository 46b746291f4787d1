//! Orbit enumeration and limit-set rendering.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::domain::{membership, MembershipStatus};
use crate::word::{generator_matrix, GroupWord, Letter, Mat2C, ParameterPoint};

/// Breadth-first iterator over all nonempty reduced words of length at most
/// `max_len`.
pub struct ReducedWords {
    max_len: usize,
    level: Vec<GroupWord>,
    idx: usize,
}

impl Iterator for ReducedWords {
    type Item = GroupWord;
    fn next(&mut self) -> Option<GroupWord> {
        if self.idx == self.level.len() {
            let len = self.level.first().map_or(0, |w| w.len());
            if len >= self.max_len {
                return None;
            }
            let next: Vec<GroupWord> = if len == 0 {
                Letter::ALL.iter().map(|&l| GroupWord::from_letters([l])).collect()
            } else {
                self.level
                    .iter()
                    .flat_map(|w| {
                        let last = *w.letters().last().expect("nonempty");
                        Letter::ALL.iter().filter(move |&&l| l != last.inverse()).map(move |&l| {
                            let mut v = w.letters().to_vec();
                            v.push(l);
                            GroupWord::from_letters(v)
                        })
                    })
                    .collect()
            };
            self.level = next;
            self.idx = 0;
        }
        let w = self.level.get(self.idx).cloned();
        self.idx += 1;
        w
    }
}

pub fn enumerate_reduced_words(max_len: usize) -> ReducedWords {
    ReducedWords { max_len, level: vec![GroupWord::identity()], idx: 1 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitPoint {
    /// `None` for the point at infinity.
    pub z: Option<Complex64>,
    pub word_length: usize,
}

#[derive(Debug, Clone)]
pub struct LimitPoints {
    pub points: Vec<OrbitPoint>,
    /// Set when the parameter point is not proved to lie in the embedding.
    pub decorative: bool,
}

/// Images `g(z0)` for the identity and every reduced word of length at most
/// `max_len`, in breadth-first order.
pub fn limit_points_from(p: &ParameterPoint, max_len: usize, z0: Complex64) -> LimitPoints {
    let gens: Vec<Mat2C> = Letter::ALL.iter().map(|&l| generator_matrix(l, p.tau1, p.tau2)).collect();
    let mut points = vec![OrbitPoint { z: Some(z0), word_length: 0 }];
    // (matrix, index of last letter)
    let mut level: Vec<(Mat2C, usize)> = Vec::new();
    for len in 1..=max_len {
        level = if len == 1 {
            (0..6).map(|i| (gens[i], i)).collect()
        } else {
            level
                .par_iter()
                .flat_map_iter(|&(m, last)| {
                    let inv = last ^ 1;
                    let gens = &gens;
                    (0..6).filter(move |&i| i != inv).map(move |i| (m * gens[i], i))
                })
                .collect()
        };
        points.par_extend(level.par_iter().map(|(m, _)| OrbitPoint { z: m.apply(z0), word_length: len }));
    }
    let decorative = !matches!(membership(p).map(|v| v.status), Ok(MembershipStatus::ProvedInside));
    LimitPoints { points, decorative }
}

pub fn limit_points(p: &ParameterPoint, max_len: usize) -> LimitPoints {
    limit_points_from(p, max_len, Complex64::new(0.0, 0.0))
}

/// Whether `z` lies in one of the two strips `0 ≤ Im z ≤ 1/2`,
/// `Im τ1 − 1/2 ≤ Im z ≤ Im τ1`, widened by `tol`.
pub fn in_strips(z: Complex64, tau1_im: f64, tol: f64) -> bool {
    in_strips_of_height(z, tau1_im, 0.5, tol)
}

/// Height of the strips that provably contain the limit set. The disks
/// paired by `T` have diameter `2/Im τ2`, which exceeds 1/2 once `Im τ2 < 4`.
pub fn strip_height(tau2_im: f64) -> f64 {
    0.5f64.max(2.0 / tau2_im)
}

/// As [`in_strips`] with strips `0 ≤ Im z ≤ h`, `Im τ1 − h ≤ Im z ≤ Im τ1`.
pub fn in_strips_of_height(z: Complex64, tau1_im: f64, h: f64, tol: f64) -> bool {
    let y = z.im;
    (y >= -tol && y <= h + tol) || (y >= tau1_im - h - tol && y <= tau1_im + tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min: Complex64,
    pub max: Complex64,
    pub width_px: usize,
    pub height_px: usize,
}

impl Viewport {
    pub fn new(min: Complex64, max: Complex64, width_px: usize, height_px: usize) -> Option<Self> {
        (max.re > min.re && max.im > min.im && width_px > 0 && height_px > 0)
            .then_some(Viewport { min, max, width_px, height_px })
    }

    /// Pixel containing `z`, row 0 at the top.
    pub fn pixel(&self, z: Complex64) -> Option<(usize, usize)> {
        if z.re < self.min.re || z.re > self.max.re || z.im < self.min.im || z.im > self.max.im {
            return None;
        }
        let fx = (z.re - self.min.re) / (self.max.re - self.min.re) * self.width_px as f64;
        let fy = (self.max.im - z.im) / (self.max.im - self.min.im) * self.height_px as f64;
        Some(((fx as usize).min(self.width_px - 1), (fy as usize).min(self.height_px - 1)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Pgm,
    Svg,
}

/// Binary PGM: white background, black lit pixels.
pub fn render_pgm(points: &[Complex64], vp: &Viewport) -> Vec<u8> {
    let mut buf = vec![255u8; vp.width_px * vp.height_px];
    for &z in points {
        if let Some((x, y)) = vp.pixel(z) {
            buf[y * vp.width_px + x] = 0;
        }
    }
    let mut out = format!("P5\n{} {}\n255\n", vp.width_px, vp.height_px).into_bytes();
    out.extend_from_slice(&buf);
    out
}

pub fn render_svg(points: &[Complex64], vp: &Viewport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = vp.width_px,
        h = vp.height_px
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let sx = vp.width_px as f64 / (vp.max.re - vp.min.re);
    let sy = vp.height_px as f64 / (vp.max.im - vp.min.im);
    for &z in points {
        if vp.pixel(z).is_some() {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="0.6" fill="black"/>"#,
                (z.re - vp.min.re) * sx,
                (vp.max.im - z.im) * sy
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn render(points: &[Complex64], vp: &Viewport, format: RenderFormat, out_path: &Path) -> io::Result<()> {
    match format {
        RenderFormat::Pgm => fs::write(out_path, render_pgm(points, vp)),
        RenderFormat::Svg => fs::write(out_path, render_svg(points, vp)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(enumerate_reduced_words(1).count(), 6);
        assert_eq!(enumerate_reduced_words(2).count(), 36);
        assert_eq!(enumerate_reduced_words(3).count(), 186);
    }

    #[test]
    fn identity_maps_base_point_to_itself() {
        let p = ParameterPoint::new(Complex64::new(0.0, 4.0), Complex64::new(0.0, 4.0)).unwrap();
        let lp = limit_points(&p, 1);
        assert_eq!(lp.points[0].z, Some(Complex64::new(0.0, 0.0)));
        assert_eq!(lp.points.len(), 7);
    }
}
