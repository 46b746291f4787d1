//! Curve enumeration by mapping-class closure, wheels and partners.

use std::collections::{BTreeMap, BTreeSet};

use crate::poly::infer_coords_from_trace;
use crate::word::{parse_word, Generator, GroupWord};

use super::{
    coords_from_word, disjoint, is_admissible, is_exceptional_pair, rank, thurston_pairing,
    CanonicalCoords, LaminationError,
};

/// `T`, `[S1,T⁻¹]`, `[S2,T⁻¹]`, `S1S2⁻¹T⁻¹`, `S1⁻¹S2T⁻¹`.
pub const SEED_WORDS: [&str; 5] = ["t", "aTAt", "bTBt", "aBT", "AbT"];

/// Automorphisms of the free group induced by Dehn twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Automorphism {
    /// Twist about `σ1`: `T ↦ S1T`.
    Sigma1,
    Sigma1Inv,
    /// Twist about `σ2`: `T ↦ TS2`.
    Sigma2,
    Sigma2Inv,
    /// Twist about `γ_T`: `S1 ↦ S1T`, `S2 ↦ S2T`.
    GammaT,
    GammaTInv,
}

impl Automorphism {
    pub const SIGMA: [Automorphism; 4] = [
        Automorphism::Sigma1,
        Automorphism::Sigma1Inv,
        Automorphism::Sigma2,
        Automorphism::Sigma2Inv,
    ];

    pub const ALL: [Automorphism; 6] = [
        Automorphism::Sigma1,
        Automorphism::Sigma1Inv,
        Automorphism::Sigma2,
        Automorphism::Sigma2Inv,
        Automorphism::GammaT,
        Automorphism::GammaTInv,
    ];

    fn image(self, g: Generator) -> GroupWord {
        let s = match (self, g) {
            (Automorphism::Sigma1, Generator::T) => "at",
            (Automorphism::Sigma1Inv, Generator::T) => "At",
            (Automorphism::Sigma2, Generator::T) => "tb",
            (Automorphism::Sigma2Inv, Generator::T) => "tB",
            (Automorphism::GammaT, Generator::S1) => "at",
            (Automorphism::GammaT, Generator::S2) => "bt",
            (Automorphism::GammaTInv, Generator::S1) => "aT",
            (Automorphism::GammaTInv, Generator::S2) => "bT",
            (_, Generator::S1) => "a",
            (_, Generator::S2) => "b",
            (_, Generator::T) => "t",
        };
        parse_word(s).expect("static word")
    }

    pub fn apply(self, w: &GroupWord) -> GroupWord {
        w.substitute(|g| self.image(g))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub word: GroupWord,
    pub coords: CanonicalCoords,
}

/// Closure of the seed curves under the given automorphisms, at most `depth`
/// applications, one representative per coordinate class, sorted by word
/// length and then word.
///
/// Curves with no intersection with `σ1, σ2` (the pinched curves themselves)
/// are traversed but not returned.
pub fn enumerate_curves_with(depth: usize, auts: &[Automorphism]) -> Vec<Curve> {
    let seeds: BTreeSet<GroupWord> = SEED_WORDS
        .iter()
        .map(|s| parse_word(s).expect("static word").canonical_cyclic())
        .collect();
    let mut all = seeds.clone();
    let mut level = seeds;
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for w in &level {
            for a in auts {
                let img = a.apply(w).canonical_cyclic();
                if !all.contains(&img) {
                    next.insert(img);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    let mut words: Vec<GroupWord> = all.into_iter().collect();
    words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut by_coords: BTreeMap<CanonicalCoords, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for w in words {
        let Ok(c) = coords_from_word(&w) else {
            continue;
        };
        if c.q1 + c.q2 == 0 || by_coords.insert(c, ()).is_some() {
            continue;
        }
        out.push(Curve { word: w, coords: c });
    }
    out
}

/// Closure of the seeds under the twists about `σ1`, `σ2` and `γ_T`.
pub fn enumerate_curves(depth: usize) -> Vec<Curve> {
    enumerate_curves_with(depth, &Automorphism::ALL)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reconciliation {
    Agree,
    /// Same `q` values, with the `p` sign reversed in the flagged boxes.
    SignFlip { box1: bool, box2: bool },
    Mismatch,
}

/// Compares the combinatorial coordinates with the trace oracle.
pub fn reconcile_coords(
    w: &GroupWord,
) -> Result<(CanonicalCoords, CanonicalCoords, Reconciliation), LaminationError> {
    let from_word = coords_from_word(w)?;
    let from_trace = infer_coords_from_trace(w)?;
    let status = if from_word == from_trace {
        Reconciliation::Agree
    } else if from_word.q1 == from_trace.q1
        && from_word.q2 == from_trace.q2
        && from_word.p1.abs() == from_trace.p1.abs()
        && from_word.p2.abs() == from_trace.p2.abs()
    {
        Reconciliation::SignFlip {
            box1: from_word.p1 != from_trace.p1,
            box2: from_word.p2 != from_trace.p2,
        }
    } else {
        Reconciliation::Mismatch
    };
    Ok((from_word, from_trace, status))
}

pub const DEFAULT_WHEEL_DEPTH: usize = 4;

/// Up to `count` curves disjoint from `gamma`, chosen greedily so that each
/// one raises the rank of the span of coordinate vectors (until it reaches 3).
pub fn wheel_search(gamma: &GroupWord, count: usize) -> Result<Vec<GroupWord>, LaminationError> {
    wheel_search_depth(gamma, count, DEFAULT_WHEEL_DEPTH)
}

pub fn wheel_search_depth(
    gamma: &GroupWord,
    count: usize,
    max_depth: usize,
) -> Result<Vec<GroupWord>, LaminationError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let gc = coords_from_word(gamma)?;
    for depth in 1..=max_depth {
        let mut chosen: Vec<GroupWord> = Vec::new();
        let mut vecs = vec![gc.as_array()];
        for cand in enumerate_curves(depth) {
            if cand.coords == gc || thurston_pairing(&gc, &cand.coords) != 0 {
                continue;
            }
            let mut trial = vecs.clone();
            trial.push(cand.coords.as_array());
            let r = rank(&trial);
            if r <= rank(&vecs) && r < 3 {
                continue;
            }
            if !disjoint(gamma, &cand.word)? {
                continue;
            }
            vecs = trial;
            chosen.push(cand.word);
            if chosen.len() == count {
                return Ok(chosen);
            }
        }
    }
    Err(LaminationError::NotFound { depth: max_depth })
}

/// A curve disjoint from an admissible `gamma` that does not form an
/// exceptional pair with it.
pub fn nonexceptional_partner(gamma: &GroupWord) -> Result<GroupWord, LaminationError> {
    let gc = coords_from_word(gamma)?;
    if !is_admissible(&gc) {
        return Err(LaminationError::Inadmissible(gamma.to_string()));
    }
    for depth in 1..=DEFAULT_WHEEL_DEPTH {
        for cand in enumerate_curves(depth) {
            if cand.coords == gc
                || is_exceptional_pair(&gc, &cand.coords)
                || thurston_pairing(&gc, &cand.coords) != 0
            {
                continue;
            }
            if disjoint(gamma, &cand.word)? {
                return Ok(cand.word);
            }
        }
    }
    Err(LaminationError::NotFound { depth: DEFAULT_WHEEL_DEPTH })
}
