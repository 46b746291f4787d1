//! Arc systems on the hexagonal fundamental domain.
//!
//! The sides of the hexagon, in counter-clockwise order, are
//! `s_T, s_{S2⁻¹}, s_{S1⁻¹}, s_{T⁻¹}, s_{S1}, s_{S2}`. Side `s_X` is glued to
//! `s_{X⁻¹}` with reversed orientation. A cyclically reduced word
//! `e1 … en` contributes the arcs `s_{e_i} → s_{e_{i+1}⁻¹}`.
//!
//! Realization places parallel arcs of the same type side by side and follows
//! the gluings; a word is simple when the realization closes up into a single
//! curve equal to the word, and two words are disjoint when their joint arc
//! system realizes as exactly those two curves.

use crate::word::{cyclic_reduce, Generator, GroupWord, Letter};

use super::{CanonicalCoords, LaminationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side(pub usize);

const SIDE_LABELS: [Letter; 6] = [
    Letter::new(Generator::T, false),
    Letter::new(Generator::S2, true),
    Letter::new(Generator::S1, true),
    Letter::new(Generator::T, true),
    Letter::new(Generator::S1, false),
    Letter::new(Generator::S2, false),
];

impl Side {
    pub fn of(l: Letter) -> Side {
        Side(SIDE_LABELS.iter().position(|&x| x == l).expect("all letters label a side"))
    }

    pub fn label(self) -> Letter {
        SIDE_LABELS[self.0]
    }

    pub fn partner(self) -> Side {
        Side::of(self.label().inverse())
    }
}

/// Arc endpoints `(from, to)` of a cyclically reduced word.
pub fn arc_endpoints(w: &GroupWord) -> Vec<(Side, Side)> {
    let w = cyclic_reduce(w);
    let l = w.letters();
    let n = l.len();
    (0..n)
        .map(|i| (Side::of(l[i]), Side::of(l[(i + 1) % n].inverse())))
        .collect()
}

fn type_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn strictly_between(p: usize, lo: usize, hi: usize) -> bool {
    let d = (p + 6 - lo) % 6;
    d > 0 && d < (hi + 6 - lo) % 6
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (x, y) = a;
    let (u, v) = b;
    let mut all = [x, y, u, v];
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    strictly_between(u, x, y) != strictly_between(v, x, y)
}

/// Realizes an arc system without crossings and returns its components as
/// words, or `None` if two arc types are forced to cross.
pub fn realize(arcs: &[(Side, Side)]) -> Option<Vec<GroupWord>> {
    let mut counts = [[0usize; 6]; 6];
    for &(a, b) in arcs {
        let (i, j) = type_key(a.0, b.0);
        counts[i][j] += 1;
    }
    let types: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .filter(|&(i, j)| counts[i][j] > 0)
        .collect();
    for (k, &a) in types.iter().enumerate() {
        if types[k + 1..].iter().any(|&b| interleave(a, b)) {
            return None;
        }
    }
    let count = |a: usize, b: usize| {
        let (i, j) = type_key(a, b);
        counts[i][j]
    };
    // Endpoints on each side, ordered by decreasing counter-clockwise distance
    // of the destination; entries are (destination, index within type).
    let mut pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 6];
    for (s, list) in pos.iter_mut().enumerate() {
        for d in (1..6).rev() {
            let t = (s + d) % 6;
            for m in 0..count(s, t) {
                list.push((t, m));
            }
        }
    }
    let index_of = |s: usize, t: usize, m: usize| -> usize {
        pos[s].iter().position(|&e| e == (t, m)).expect("endpoint present")
    };
    let other = |s: usize, p: usize| -> (usize, usize) {
        let (t, m) = pos[s][p];
        let c = count(s, t);
        (t, index_of(t, s, c - 1 - m))
    };
    let glue = |s: usize, p: usize| -> (usize, usize) {
        let s2 = Side(s).partner().0;
        (s2, pos[s].len() - 1 - p)
    };
    let mut seen = vec![Vec::new(); 6];
    for s in 0..6 {
        seen[s] = vec![false; pos[s].len()];
    }
    let mut comps = Vec::new();
    for s in 0..6 {
        for p in 0..pos[s].len() {
            if seen[s][p] {
                continue;
            }
            let mut letters = Vec::new();
            let mut cur = (s, p);
            while !seen[cur.0][cur.1] {
                seen[cur.0][cur.1] = true;
                let ex = other(cur.0, cur.1);
                seen[ex.0][ex.1] = true;
                letters.push(Side(ex.0).label().inverse());
                cur = glue(ex.0, ex.1);
            }
            comps.push(GroupWord::from_letters(letters));
        }
    }
    Some(comps)
}

/// Whether the word is homotopic into one of the two punctures.
pub fn is_peripheral(w: &GroupWord) -> bool {
    let c = w.canonical_cyclic();
    ["aB", "atBT"].iter().any(|p| {
        crate::word::parse_word(p).expect("static word").canonical_cyclic() == c
    })
}

fn simple_check(w: &GroupWord) -> Result<(), String> {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return Err("empty word".into());
    }
    let comps = realize(&arc_endpoints(&w)).ok_or("arc types are forced to cross")?;
    if comps.len() != 1 {
        return Err(format!("arcs close up into {} components", comps.len()));
    }
    if comps[0].canonical_cyclic() != w.canonical_cyclic() {
        return Err(format!("arcs close up into {} instead", comps[0]));
    }
    Ok(())
}

pub fn is_simple(w: &GroupWord) -> bool {
    simple_check(w).is_ok()
}

pub fn require_simple(w: &GroupWord) -> Result<(), LaminationError> {
    simple_check(w).map_err(|reason| LaminationError::NotSimple { word: w.to_string(), reason })
}

/// Whether two simple curves admit disjoint representatives.
pub fn disjoint(w1: &GroupWord, w2: &GroupWord) -> Result<bool, LaminationError> {
    require_simple(w1)?;
    require_simple(w2)?;
    let (c1, c2) = (w1.canonical_cyclic(), w2.canonical_cyclic());
    if c1 == c2 {
        return Ok(true);
    }
    let mut arcs = arc_endpoints(w1);
    arcs.extend(arc_endpoints(w2));
    let Some(comps) = realize(&arcs) else {
        return Ok(false);
    };
    if comps.len() != 2 {
        return Ok(false);
    }
    let mut got: Vec<GroupWord> = comps.iter().map(|c| c.canonical_cyclic()).collect();
    let mut want = vec![c1, c2];
    got.sort();
    want.sort();
    Ok(got == want)
}

/// Corner and crossing counts of a curve in the two boxes.
///
/// Box `B1` is bounded by `s0, s_{S1}, s_{T⁻¹}, s_{S1⁻¹}` and box `B2` by
/// `s0, s_{S2}, s_T, s_{S2⁻¹}`, where `s0` is the diagonal from the vertex
/// between `s_{S1}, s_{S2}` to the vertex between `s_{S1⁻¹}, s_{S2⁻¹}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoxCounts {
    /// `B1` corners: around `v0` (`s0`–`s_{S1}`), `s_{S1}`–`s_{T⁻¹}`,
    /// `s_{T⁻¹}`–`s_{S1⁻¹}`, around `v1` (`s_{S1⁻¹}`–`s0`).
    pub box1: [usize; 4],
    /// `B2` corners: around `v0` (`s0`–`s_{S2}`), `s_{S2}`–`s_T`,
    /// `s_T`–`s_{S2⁻¹}`, around `v1` (`s_{S2⁻¹}`–`s0`).
    pub box2: [usize; 4],
    /// Crossings with `s0`.
    pub s0: usize,
    /// Endpoints on `s_{S1}` and on `s_{S2}`.
    pub m1: usize,
    pub m2: usize,
}

impl BoxCounts {
    pub fn from_word(w: &GroupWord) -> BoxCounts {
        let arcs = arc_endpoints(w);
        let side = |l: Letter| Side::of(l).0;
        let a = side(Letter::new(Generator::S1, false));
        let big_a = side(Letter::new(Generator::S1, true));
        let b = side(Letter::new(Generator::S2, false));
        let big_b = side(Letter::new(Generator::S2, true));
        let t = side(Letter::new(Generator::T, false));
        let big_t = side(Letter::new(Generator::T, true));
        let in_box1 = |s: usize| s == a || s == big_a || s == big_t;
        let mut bc = BoxCounts::default();
        // Pieces are unordered pairs; `None` stands for s0.
        let piece = |x: Option<usize>, y: Option<usize>, bc: &mut BoxCounts| {
            let has = |s: Option<usize>| x == s || y == s;
            if has(None) && has(Some(a)) {
                bc.box1[0] += 1;
            } else if has(Some(a)) && has(Some(big_t)) {
                bc.box1[1] += 1;
            } else if has(Some(big_t)) && has(Some(big_a)) {
                bc.box1[2] += 1;
            } else if has(Some(big_a)) && has(None) {
                bc.box1[3] += 1;
            } else if has(None) && has(Some(b)) {
                bc.box2[0] += 1;
            } else if has(Some(b)) && has(Some(t)) {
                bc.box2[1] += 1;
            } else if has(Some(t)) && has(Some(big_b)) {
                bc.box2[2] += 1;
            } else if has(Some(big_b)) && has(None) {
                bc.box2[3] += 1;
            }
        };
        for &(x, y) in &arcs {
            let (x, y) = (x.0, y.0);
            if in_box1(x) == in_box1(y) {
                piece(Some(x), Some(y), &mut bc);
            } else {
                piece(Some(x), None, &mut bc);
                piece(None, Some(y), &mut bc);
                bc.s0 += 1;
            }
            for s in [x, y] {
                if s == a {
                    bc.m1 += 1;
                }
                if s == b {
                    bc.m2 += 1;
                }
            }
        }
        bc
    }

    pub fn coords(&self) -> CanonicalCoords {
        let chi1 = *self.box1.iter().min().expect("four corners");
        let chi2 = *self.box2.iter().min().expect("four corners");
        let q1 = self.s0 as i64 - 2 * chi1 as i64;
        let q2 = self.s0 as i64 - 2 * chi2 as i64;
        let ap1 = self.m1 as i64 - 2 * chi1 as i64;
        let ap2 = self.m2 as i64 - 2 * chi2 as i64;
        let p1 = if self.box1[1] > chi1 { ap1 } else { -ap1 };
        let p2 = if self.box2[0] > chi2 { ap2 } else { -ap2 };
        CanonicalCoords::new(q1, p1, q2, p2)
    }
}

/// Coordinates computed combinatorially from the arc system of a simple word.
pub fn coords_from_word(w: &GroupWord) -> Result<CanonicalCoords, LaminationError> {
    require_simple(w)?;
    if is_peripheral(w) {
        return Err(LaminationError::Peripheral(w.to_string()));
    }
    Ok(BoxCounts::from_word(w).coords())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(s: &str) -> GroupWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn side_gluing_is_an_involution() {
        for s in 0..6 {
            assert_eq!(Side(s).partner().partner(), Side(s));
            assert_ne!(Side(s).partner(), Side(s));
        }
    }

    #[test]
    fn simplicity_of_small_words() {
        for s in ["t", "aTAt", "bTBt", "aBT", "AbT", "at", "tb", "a", "b"] {
            assert!(is_simple(&w(s)), "{s}");
        }
        for s in ["tt", "aa"] {
            assert!(!is_simple(&w(s)), "{s}");
        }
    }

    #[test]
    fn peripheral_classes() {
        assert!(is_peripheral(&w("Ba")));
        assert!(is_peripheral(&w("tbTA")));
        assert!(!is_peripheral(&w("t")));
        assert!(matches!(coords_from_word(&w("aB")), Err(LaminationError::Peripheral(_))));
    }
}
