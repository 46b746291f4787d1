//! Exact bivariate polynomials in `τ1, τ2` and symbolic trace computation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lamination::CanonicalCoords;
use crate::word::{Generator, GroupWord};

pub const DEFAULT_SYMBOLIC_CAP: usize = 40;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("word length {len} exceeds the symbolic cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant trace polynomial: the curve is pinched or peripheral and has no coordinates")]
    ConstantTrace,
    #[error("not a simple curve or convention breach: {0}")]
    NotSimple(String),
}

/// Sparse polynomial keyed by `(deg τ1, deg τ2)`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        BiPoly::monomial(rat(c), 0, 0)
    }

    pub fn tau1() -> Self {
        BiPoly::monomial(rat(1), 1, 0)
    }

    pub fn tau2() -> Self {
        BiPoly::monomial(rat(1), 0, 1)
    }

    pub fn monomial(c: BigRational, d1: u32, d2: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(d1, d2, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), i64)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for ((a, b), c) in it {
            p.add_term(a, b, rat(c));
        }
        p
    }

    fn add_term(&mut self, d1: u32, d2: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((d1, d2)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(d1, d2));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d1: u32, d2: u32) -> BigRational {
        self.terms.get(&(d1, d2)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, axis: u8) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(a, b)| if axis == 1 { a } else { b })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn scale(&self, c: &BigRational) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut out = BiPoly::constant(1);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, t1: Complex64, t2: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b), c) in &self.terms {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += t1.powu(a) * t2.powu(b) * cf;
        }
        acc
    }

    /// Exact composition `τ_axis → τ_axis + delta`.
    pub fn substitute_shift(&self, axis: u8, delta: &BigRational) -> BiPoly {
        let lin = if axis == 1 {
            &BiPoly::tau1() + &BiPoly::monomial(delta.clone(), 0, 0)
        } else {
            &BiPoly::tau2() + &BiPoly::monomial(delta.clone(), 0, 0)
        };
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            let (shifted, other) = if axis == 1 {
                (a, BiPoly::monomial(c.clone(), 0, b))
            } else {
                (b, BiPoly::monomial(c.clone(), a, 0))
            };
            out = &out + &(&lin.pow(shifted) * &other);
        }
        out
    }

    /// Machine form `{"[d1,d2]": "num/den"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (&(a, b), c) in &self.terms {
            m.insert(format!("[{a},{b}]"), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(m)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|x, y| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
        for (i, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || *k == (0, 0) {
                factors.push(mag.to_string());
            }
            for (d, name) in [(k.0, "t1"), (k.1, "t2")] {
                match d {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{d}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &o.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<'a> Sub for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &o.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl<'a> Mul for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &o.terms {
                out.add_term(a + x, b + y, c * d);
            }
        }
        out
    }
}

impl<'a> Neg for &'a BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&rat(-1))
    }
}

/// Matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2P {
    pub a: BiPoly,
    pub b: BiPoly,
    pub c: BiPoly,
    pub d: BiPoly,
}

impl Mat2P {
    pub fn identity() -> Self {
        Mat2P {
            a: BiPoly::constant(1),
            b: BiPoly::zero(),
            c: BiPoly::zero(),
            d: BiPoly::constant(1),
        }
    }

    pub fn mul(&self, o: &Mat2P) -> Mat2P {
        Mat2P {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn det(&self) -> BiPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> BiPoly {
        &self.a + &self.d
    }

    fn generator(g: Generator, inverted: bool) -> Mat2P {
        let m = match g {
            Generator::S1 => Mat2P {
                a: BiPoly::constant(1),
                b: BiPoly::constant(2),
                c: BiPoly::zero(),
                d: BiPoly::constant(1),
            },
            Generator::S2 => Mat2P {
                a: BiPoly::constant(1),
                b: BiPoly::zero(),
                c: BiPoly::constant(2),
                d: BiPoly::constant(1),
            },
            Generator::T => Mat2P {
                a: BiPoly::from_terms([((0, 0), 1), ((1, 1), 1)]),
                b: BiPoly::tau1(),
                c: BiPoly::tau2(),
                d: BiPoly::constant(1),
            },
        };
        if inverted {
            Mat2P {
                a: m.d.clone(),
                b: -&m.b,
                c: -&m.c,
                d: m.a.clone(),
            }
        } else {
            m
        }
    }
}

pub fn symbolic_rep_capped(w: &GroupWord, cap: usize) -> Result<Mat2P, PolyError> {
    if w.len() > cap {
        return Err(PolyError::CapExceeded { len: w.len(), cap });
    }
    Ok(w.letters().iter().fold(Mat2P::identity(), |acc, l| {
        acc.mul(&Mat2P::generator(l.generator, l.inverted))
    }))
}

pub fn symbolic_rep(w: &GroupWord) -> Result<Mat2P, PolyError> {
    symbolic_rep_capped(w, DEFAULT_SYMBOLIC_CAP)
}

pub fn trace_poly(w: &GroupWord) -> Result<BiPoly, PolyError> {
    Ok(symbolic_rep(w)?.trace())
}

pub fn trace_poly_capped(w: &GroupWord, cap: usize) -> Result<BiPoly, PolyError> {
    Ok(symbolic_rep_capped(w, cap)?.trace())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopTermsReport {
    pub sign: i8,
    pub q1: u32,
    pub q2: u32,
    pub p1: BigRational,
    pub p2: BigRational,
    pub leading_coefficient: BigRational,
    /// Total degree of the remainder after removing the leading block; `None`
    /// when the remainder vanishes.
    pub remainder_total_degree: Option<u32>,
    pub passes: bool,
    pub failures: Vec<String>,
}

fn pow2(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << n as usize)
}

/// `±2^{|q2-q1|} (τ1 + 2p1/q1)^{q1} (τ2 + 2p2/q2)^{q2}` with the given sign.
pub fn leading_block(sign: i8, q1: u32, p1: &BigRational, q2: u32, p2: &BigRational) -> BiPoly {
    let mut block = BiPoly::monomial(pow2(q1.abs_diff(q2)) * rat(sign as i64), 0, 0);
    if q1 > 0 {
        let f = &BiPoly::tau1() + &BiPoly::monomial(rat(2) * p1 / rat(q1 as i64), 0, 0);
        block = &block * &f.pow(q1);
    }
    if q2 > 0 {
        let f = &BiPoly::tau2() + &BiPoly::monomial(rat(2) * p2 / rat(q2 as i64), 0, 0);
        block = &block * &f.pow(q2);
    }
    block
}

/// Compares a trace polynomial against the top-terms form predicted by the
/// claimed coordinates.
pub fn top_terms_check_poly(poly: &BiPoly, c: &CanonicalCoords) -> Result<TopTermsReport, PolyError> {
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut failures = Vec::new();
    if c.q1 < 0 || c.q2 < 0 || c.q1 + c.q2 == 0 {
        return Err(PolyError::NotSimple(format!("claimed coordinates {c} have no positive intersection")));
    }
    let (q1, q2) = (c.q1 as u32, c.q2 as u32);
    let (p1, p2) = (rat(c.p1), rat(c.p2));
    let d1 = poly.degree_in(1).unwrap_or(0);
    let d2 = poly.degree_in(2).unwrap_or(0);
    if d1 != q1 || d2 != q2 {
        failures.push(format!("degrees ({d1},{d2}) differ from (q1,q2) = ({q1},{q2})"));
    }
    let lead = poly.coeff(q1, q2);
    let expect = pow2(q1.abs_diff(q2));
    let sign: i8 = if lead.is_negative() { -1 } else { 1 };
    if lead.abs() != expect {
        failures.push(format!("leading coefficient {lead} is not ±{expect}"));
    }
    let block = leading_block(sign, q1, &p1, q2, &p2);
    let rem = poly - &block;
    let rdeg = rem.total_degree();
    let bound = (q1 + q2) as i64 - 2;
    if let Some(r) = rdeg {
        if r as i64 > bound {
            failures.push(format!("remainder total degree {r} exceeds {bound}"));
        }
    }
    Ok(TopTermsReport {
        sign,
        q1,
        q2,
        p1,
        p2,
        leading_coefficient: lead,
        remainder_total_degree: rdeg,
        passes: failures.is_empty(),
        failures,
    })
}

pub fn top_terms_check(w: &GroupWord, c: &CanonicalCoords) -> Result<TopTermsReport, PolyError> {
    top_terms_check_poly(&trace_poly(w)?, c)
}

/// Reads canonical coordinates off the leading block of a trace polynomial.
pub fn infer_coords_from_poly(poly: &BiPoly) -> Result<CanonicalCoords, PolyError> {
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let q1 = poly.degree_in(1).unwrap_or(0);
    let q2 = poly.degree_in(2).unwrap_or(0);
    if q1 + q2 == 0 {
        return Err(PolyError::ConstantTrace);
    }
    let lead = poly.coeff(q1, q2);
    let expect = pow2(q1.abs_diff(q2));
    if lead.abs() != expect {
        return Err(PolyError::NotSimple(format!(
            "coefficient of t1^{q1}*t2^{q2} is {lead}, expected ±{expect}"
        )));
    }
    let sub = |c: BigRational| -> Result<i64, PolyError> {
        let p = c / &lead / rat(2);
        if !p.is_integer() {
            return Err(PolyError::NotSimple(format!("non-integral twist {p}")));
        }
        p.to_integer()
            .to_i64()
            .ok_or_else(|| PolyError::NotSimple("twist out of range".into()))
    };
    let p1 = if q1 > 0 { sub(poly.coeff(q1 - 1, q2))? } else { 0 };
    let p2 = if q2 > 0 { sub(poly.coeff(q1, q2 - 1))? } else { 0 };
    let c = CanonicalCoords::new(q1 as i64, p1, q2 as i64, p2);
    let report = top_terms_check_poly(poly, &c)?;
    if !report.passes {
        return Err(PolyError::NotSimple(report.failures.join("; ")));
    }
    Ok(c)
}

pub fn infer_coords_from_trace(w: &GroupWord) -> Result<CanonicalCoords, PolyError> {
    infer_coords_from_poly(&trace_poly(w)?)
}
