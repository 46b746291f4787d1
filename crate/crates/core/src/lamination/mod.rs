//! Canonical coordinates of simple closed curves and rational laminations.

mod arcs;
mod enumerate;

pub use arcs::{
    arc_endpoints, coords_from_word, disjoint, is_peripheral, is_simple, realize, require_simple, BoxCounts, Side,
};
pub use enumerate::{
    enumerate_curves, enumerate_curves_with, nonexceptional_partner, reconcile_coords, wheel_search,
    wheel_search_depth, Automorphism, Curve, Reconciliation, SEED_WORDS,
};

use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::PolyError;
use crate::word::GroupWord;

#[derive(Debug, Error, PartialEq)]
pub enum LaminationError {
    #[error("word {word} is not a simple closed curve: {reason}")]
    NotSimple { word: String, reason: String },
    #[error("word {0} is peripheral (homotopic into a puncture)")]
    Peripheral(String),
    #[error("lamination {0} is not admissible: both q1 and q2 must be positive")]
    Inadmissible(String),
    #[error("curves {0} and {1} are not disjoint")]
    NotDisjoint(String, String),
    #[error("curves {0} and {1} are homotopic")]
    Duplicate(String, String),
    #[error("no suitable curve found in the enumeration up to depth {depth}")]
    NotFound { depth: usize },
    #[error("weights must be positive, got {0}")]
    BadWeight(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Integer coordinates `(q1, p1, q2, p2)`: `qi` intersection with `σi`, `pi` twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCoords {
    pub q1: i64,
    pub p1: i64,
    pub q2: i64,
    pub p2: i64,
}

impl CanonicalCoords {
    pub const fn new(q1: i64, p1: i64, q2: i64, p2: i64) -> Self {
        CanonicalCoords { q1, p1, q2, p2 }
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.q1, self.p1, self.q2, self.p2]
    }
}

impl fmt::Display for CanonicalCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.q1, self.p1, self.q2, self.p2)
    }
}

impl Serialize for CanonicalCoords {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CanonicalCoords {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [q1, p1, q2, p2] = <[i64; 4]>::deserialize(d)?;
        Ok(CanonicalCoords::new(q1, p1, q2, p2))
    }
}

/// The dual vector `(-p1, q1, -p2, q2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualVector(pub [i64; 4]);

impl DualVector {
    pub fn dot(&self, c: &CanonicalCoords) -> i64 {
        self.0.iter().zip(c.as_array()).map(|(a, b)| a * b).sum()
    }
}

pub fn star(c: &CanonicalCoords) -> DualVector {
    DualVector([-c.p1, c.q1, -c.p2, c.q2])
}

/// `Σ (qi p'i − q'i pi)`.
pub fn thurston_pairing(c: &CanonicalCoords, d: &CanonicalCoords) -> i64 {
    (c.q1 * d.p1 - d.q1 * c.p1) + (c.q2 * d.p2 - d.q2 * c.p2)
}

pub fn is_admissible(c: &CanonicalCoords) -> bool {
    c.q1 > 0 && c.q2 > 0
}

pub fn is_exceptional_pair(c: &CanonicalCoords, d: &CanonicalCoords) -> bool {
    c.q1 * d.q2 == d.q1 * c.q2
}

/// Rank over the rationals of a set of integer 4-vectors.
pub fn rank(vectors: &[[i64; 4]]) -> usize {
    let mut rows: Vec<[i128; 4]> = vectors
        .iter()
        .map(|v| [v[0] as i128, v[1] as i128, v[2] as i128, v[3] as i128])
        .collect();
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let (a, b) = (rows[r][col], rows[i][col]);
                for k in 0..4 {
                    rows[i][k] = rows[i][k] * a - rows[r][k] * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rational coordinate vector of a lamination.
pub type RationalCoords = [Rational64; 4];

#[derive(Debug, Clone, PartialEq)]
pub struct LaminationComponent {
    pub weight: Rational64,
    pub word: GroupWord,
    pub coords: CanonicalCoords,
}

/// Finite positive combination of pairwise disjoint, distinct simple curves.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalLamination {
    components: Vec<LaminationComponent>,
}

impl RationalLamination {
    /// Builds a lamination, computing coordinates with the trace oracle and
    /// checking pairwise disjointness.
    pub fn new(parts: Vec<(Rational64, GroupWord)>) -> Result<Self, LaminationError> {
        let mut components: Vec<LaminationComponent> = Vec::with_capacity(parts.len());
        for (weight, word) in parts {
            if !weight.is_positive() {
                return Err(LaminationError::BadWeight(weight.to_string()));
            }
            let coords = crate::poly::infer_coords_from_trace(&crate::word::cyclic_reduce(&word))?;
            for other in &components {
                if other.coords == coords {
                    return Err(LaminationError::Duplicate(other.word.to_string(), word.to_string()));
                }
                if !disjoint(&other.word, &word)? {
                    return Err(LaminationError::NotDisjoint(other.word.to_string(), word.to_string()));
                }
            }
            components.push(LaminationComponent { weight, word, coords });
        }
        Ok(RationalLamination { components })
    }

    /// Single curve with weight one.
    pub fn curve(word: GroupWord) -> Result<Self, LaminationError> {
        RationalLamination::new(vec![(Rational64::from_integer(1), word)])
    }

    /// Builds a lamination from components whose coordinates are already known.
    /// Disjointness is the caller's responsibility.
    pub fn from_components(components: Vec<LaminationComponent>) -> Self {
        RationalLamination { components }
    }

    pub fn components(&self) -> &[LaminationComponent] {
        &self.components
    }

    pub fn coords(&self) -> RationalCoords {
        let mut out = [Rational64::zero(); 4];
        for c in &self.components {
            for (o, v) in out.iter_mut().zip(c.coords.as_array()) {
                *o += c.weight * Rational64::from_integer(v);
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        let c = self.coords();
        c[0].is_positive() && c[2].is_positive()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<_> = self
            .components
            .iter()
            .map(|c| {
                serde_json::json!({
                    "weight": c.weight.to_string(),
                    "word": c.word.to_string(),
                    "coords": c.coords.as_array(),
                })
            })
            .collect();
        serde_json::json!({ "components": comps })
    }
}

impl fmt::Display for RationalLamination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}*{}", c.weight, c.word))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticLine {
    pub x1_star: Rational64,
    pub x2_star: Rational64,
    /// Angle with `tan ψ = q1/q2`.
    pub psi: f64,
    /// Limit of `Im τ1 / Im τ2`, equal to `q2/q1`.
    pub im_ratio: Rational64,
}

pub fn asymptotic_line(xi: &RationalLamination) -> Result<AsymptoticLine, LaminationError> {
    asymptotic_line_coords(&xi.coords()).ok_or_else(|| LaminationError::Inadmissible(xi.to_string()))
}

pub fn asymptotic_line_coords(c: &RationalCoords) -> Option<AsymptoticLine> {
    let [q1, p1, q2, p2] = *c;
    if !q1.is_positive() || !q2.is_positive() {
        return None;
    }
    let two = Rational64::from_integer(2);
    Some(AsymptoticLine {
        x1_star: -two * p1 / q1,
        x2_star: -two * p2 / q2,
        psi: (q1.to_f64()?).atan2(q2.to_f64()?),
        im_ratio: q2 / q1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_t_wheel_candidates() {
        let t = [1, 0, 1, 0];
        assert_eq!(rank(&[t, [0, 0, 2, 0], [2, 0, 0, 0]]), 2);
        assert_eq!(rank(&[t, [1, -1, 1, 1], [0, 0, 2, 0]]), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn pairing_examples() {
        let t = CanonicalCoords::new(1, 0, 1, 0);
        assert_eq!(thurston_pairing(&t, &CanonicalCoords::new(0, 0, 2, 0)), 0);
        assert_eq!(thurston_pairing(&t, &CanonicalCoords::new(1, -1, 1, 1)), 0);
        assert_eq!(thurston_pairing(&CanonicalCoords::new(1, 1, 1, 0), &t), -1);
    }
}
