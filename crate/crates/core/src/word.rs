//! Words in the free group on `S1`, `S2`, `T` and their images under the
//! representation `ρ(τ1, τ2)`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    S1,
    S2,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub inverted: bool,
}

impl Letter {
    pub const fn new(generator: Generator, inverted: bool) -> Self {
        Letter { generator, inverted }
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.generator, !self.inverted)
    }

    pub fn from_char(c: char) -> Option<Letter> {
        let (g, inv) = match c {
            'a' => (Generator::S1, false),
            'A' => (Generator::S1, true),
            'b' => (Generator::S2, false),
            'B' => (Generator::S2, true),
            't' => (Generator::T, false),
            'T' => (Generator::T, true),
            _ => return None,
        };
        Some(Letter::new(g, inv))
    }

    pub fn to_char(self) -> char {
        match (self.generator, self.inverted) {
            (Generator::S1, false) => 'a',
            (Generator::S1, true) => 'A',
            (Generator::S2, false) => 'b',
            (Generator::S2, true) => 'B',
            (Generator::T, false) => 't',
            (Generator::T, true) => 'T',
        }
    }

    /// Position in the fixed order `a < A < b < B < t < T` used for canonical forms.
    pub fn rank(self) -> u8 {
        let g = match self.generator {
            Generator::S1 => 0,
            Generator::S2 => 2,
            Generator::T => 4,
        };
        g + self.inverted as u8
    }

    pub const ALL: [Letter; 6] = [
        Letter::new(Generator::S1, false),
        Letter::new(Generator::S1, true),
        Letter::new(Generator::S2, false),
        Letter::new(Generator::S2, true),
        Letter::new(Generator::T, false),
        Letter::new(Generator::T, true),
    ];
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid character {ch:?} at byte offset {offset}")]
    InvalidChar { ch: char, offset: usize },
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { letters: Vec::new() }
    }

    /// Builds a word from letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) => self.letters.len() == 1 || *f != l.inverse(),
            _ => true,
        }
    }

    /// Rotation starting at index `k`.
    pub fn rotate(&self, k: usize) -> GroupWord {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut v = self.letters[k..].to_vec();
        v.extend_from_slice(&self.letters[..k]);
        GroupWord { letters: v }
    }

    /// Lexicographically least rotation of the word or its inverse, after cyclic
    /// reduction. Two words have the same canonical form iff they are conjugate
    /// up to inversion, i.e. they define the same unoriented free homotopy class.
    pub fn canonical_cyclic(&self) -> GroupWord {
        let w = cyclic_reduce(self);
        let winv = w.inverse();
        let n = w.len();
        let mut best: Option<Vec<u8>> = None;
        let mut best_word = w.clone();
        for base in [&w, &winv] {
            for k in 0..n.max(1) {
                let r = base.rotate(k);
                let key: Vec<u8> = r.letters.iter().map(|l| l.rank()).collect();
                if best.as_ref().map_or(true, |b| key < *b) {
                    best = Some(key);
                    best_word = r;
                }
            }
        }
        best_word
    }

    /// Number of occurrences of a generator or its inverse.
    pub fn generator_count(&self, g: Generator) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }

    /// Applies the endomorphism sending each generator to the given image.
    pub fn substitute(&self, image: impl Fn(Generator) -> GroupWord) -> GroupWord {
        let imgs = [image(Generator::S1), image(Generator::S2), image(Generator::T)];
        let idx = |g: Generator| match g {
            Generator::S1 => 0,
            Generator::S2 => 1,
            Generator::T => 2,
        };
        let mut out = Vec::new();
        for l in &self.letters {
            let img = &imgs[idx(l.generator)];
            if l.inverted {
                out.extend(img.inverse().letters);
            } else {
                out.extend(img.letters.iter().copied());
            }
        }
        GroupWord::from_letters(out)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupWord {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a word over `a A b B t T`; spaces and tabs are ignored.
pub fn parse_word(text: &str) -> Result<GroupWord, ParseError> {
    let mut letters = Vec::with_capacity(text.len());
    for (offset, ch) in text.char_indices() {
        if ch == ' ' || ch == '\t' {
            continue;
        }
        match Letter::from_char(ch) {
            Some(l) => letters.push(l),
            None => return Err(ParseError::InvalidChar { ch, offset }),
        }
    }
    Ok(GroupWord::from_letters(letters))
}

/// Strips matching first/last inverse pairs.
pub fn cyclic_reduce(w: &GroupWord) -> GroupWord {
    let l = &w.letters;
    let (mut i, mut j) = (0usize, l.len());
    while j - i >= 2 && l[i] == l[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    GroupWord { letters: l[i..j].to_vec() }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2C {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2C { a, b, c, d }
    }

    pub fn identity() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Mat2C::new(o, z, z, o)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn sl2_inverse(&self) -> Self {
        Mat2C::new(self.d, -self.b, -self.c, self.a)
    }

    /// Möbius action; `None` stands for the point at infinity.
    pub fn apply(&self, z: Complex64) -> Option<Complex64> {
        let den = self.c * z + self.d;
        if den == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some((self.a * z + self.b) / den)
        }
    }

    pub fn max_abs_diff(&self, o: &Mat2C) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, o: Mat2C) -> Mat2C {
        Mat2C::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("imaginary parts must be positive, got Im tau1 = {0}, Im tau2 = {1}")]
    NotUpperHalf(f64, f64),
}

/// A parameter pair `(τ1, τ2)`; the checked constructor enforces `Im τi > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterPoint {
    pub tau1: Complex64,
    pub tau2: Complex64,
}

impl ParameterPoint {
    pub fn new(tau1: Complex64, tau2: Complex64) -> Result<Self, DomainError> {
        if tau1.im > 0.0 && tau2.im > 0.0 {
            Ok(ParameterPoint { tau1, tau2 })
        } else {
            Err(DomainError::NotUpperHalf(tau1.im, tau2.im))
        }
    }

    /// Point from the real 4-vector `(x1, y1, x2, y2)`, unchecked.
    pub fn from_real(v: [f64; 4]) -> Self {
        ParameterPoint {
            tau1: Complex64::new(v[0], v[1]),
            tau2: Complex64::new(v[2], v[3]),
        }
    }

    pub fn to_real(&self) -> [f64; 4] {
        [self.tau1.re, self.tau1.im, self.tau2.re, self.tau2.im]
    }
}

pub fn generator_matrix(l: Letter, tau1: Complex64, tau2: Complex64) -> Mat2C {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let m = match l.generator {
        Generator::S1 => Mat2C::new(one, two, zero, one),
        Generator::S2 => Mat2C::new(one, zero, two, one),
        Generator::T => Mat2C::new(one + tau1 * tau2, tau1, tau2, one),
    };
    if l.inverted {
        m.sl2_inverse()
    } else {
        m
    }
}

/// `ρ(w)` at an arbitrary complex pair (no half-plane check).
pub fn evaluate_at(w: &GroupWord, tau1: Complex64, tau2: Complex64) -> Mat2C {
    w.letters
        .iter()
        .fold(Mat2C::identity(), |acc, &l| acc * generator_matrix(l, tau1, tau2))
}

pub fn evaluate(w: &GroupWord, p: &ParameterPoint) -> Mat2C {
    evaluate_at(w, p.tau1, p.tau2)
}

pub fn trace(w: &GroupWord, p: &ParameterPoint) -> Complex64 {
    evaluate(w, p).trace()
}

pub fn trace_at(w: &GroupWord, tau1: Complex64, tau2: Complex64) -> Complex64 {
    evaluate_at(w, tau1, tau2).trace()
}
