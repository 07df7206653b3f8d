//! Exact arithmetic for surfaces whose coordinates live in a real quadratic
//! field `Q(√d)` (with `d = 1` meaning plain rationals).
//!
//! Coordinates are stored as pairs of integers over a common denominator, so
//! developing triangles only ever adds integers. Orientation tests need one
//! multiplication and are decided exactly in `i128`.

use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::vector::PlanarVector;
use crate::error::{FlatError, Result};

/// A rational number `num/den` in lowest terms, `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

#[allow(clippy::should_implement_trait)]
impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(FlatError::Parse("zero denominator".into()));
        }
        let g = num.gcd(&den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Ok(Rational { num: s * num / g, den: s * den / g })
    }

    pub const fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn from_i128(num: i128, den: i128) -> Result<Self> {
        let g = num.gcd(&den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let n = i64::try_from(n).map_err(|_| FlatError::Overflow)?;
        let d = i64::try_from(d).map_err(|_| FlatError::Overflow)?;
        Ok(Rational { num: n, den: d })
    }

    pub fn add(self, o: Self) -> Result<Self> {
        let n = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        Rational::from_i128(n, self.den as i128 * o.den as i128)
    }

    pub fn neg(self) -> Self {
        Rational { num: -self.num, den: self.den }
    }

    pub fn mul(self, o: Self) -> Result<Self> {
        Rational::from_i128(self.num as i128 * o.num as i128, self.den as i128 * o.den as i128)
    }

    pub fn div(self, o: Self) -> Result<Self> {
        if o.num == 0 {
            return Err(FlatError::Parse("division by zero".into()));
        }
        Rational::from_i128(self.num as i128 * o.den as i128, self.den as i128 * o.num as i128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// An exact real `a + b·√d` with rational `a`, `b` and squarefree `d ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactReal {
    a: Rational,
    b: Rational,
    d: i64,
}

impl ExactReal {
    pub fn rational(r: Rational) -> Self {
        ExactReal { a: r, b: Rational::integer(0), d: 1 }
    }

    pub fn integer(n: i64) -> Self {
        ExactReal::rational(Rational::integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        Ok(ExactReal::rational(Rational::new(num, den)?))
    }

    /// `√n` for a positive integer `n`, with square factors pulled out.
    pub fn sqrt(n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(FlatError::Parse(format!("sqrt of non-positive {n}")));
        }
        let (mut out, mut rest) = (1i64, n);
        let mut f = 2i64;
        while f * f <= rest {
            while rest % (f * f) == 0 {
                rest /= f * f;
                out *= f;
            }
            f += 1;
        }
        if rest == 1 {
            Ok(ExactReal::integer(out))
        } else {
            Ok(ExactReal { a: Rational::integer(0), b: Rational::integer(out), d: rest })
        }
    }

    pub fn rational_part(&self) -> Rational {
        self.a
    }

    pub fn surd_part(&self) -> Rational {
        self.b
    }

    /// The radicand, or 1 when the value is rational.
    pub fn radicand(&self) -> i64 {
        if self.b.is_zero() {
            1
        } else {
            self.d
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }

    fn common_d(&self, o: &Self) -> Result<i64> {
        match (self.radicand(), o.radicand()) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(FlatError::MixedRadicands(d, e)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let d = self.common_d(o)?;
        Ok(ExactReal { a: self.a.add(o.a)?, b: self.b.add(o.b)?, d })
    }

    pub fn neg(&self) -> Self {
        ExactReal { a: self.a.neg(), b: self.b.neg(), d: self.d }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let d = self.common_d(o)?;
        let dd = ExactReal::integer(d).a;
        let a = self.a.mul(o.a)?.add(self.b.mul(o.b)?.mul(dd)?)?;
        let b = self.a.mul(o.b)?.add(self.b.mul(o.a)?)?;
        Ok(ExactReal { a, b, d })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let d = self.common_d(o)?;
        // (x)/(p + q√d) = x (p − q√d) / (p² − d q²)
        let conj = ExactReal { a: o.a, b: o.b.neg(), d };
        let norm = o.a.mul(o.a)?.add(o.b.mul(o.b)?.mul(Rational::integer(d))?.neg())?;
        let num = self.mul(&conj)?;
        Ok(ExactReal { a: num.a.div(norm)?, b: num.b.div(norm)?, d })
    }

    /// Parse an exact expression: integers, decimals, `p/q`, `sqrt(n)`,
    /// parentheses, and `+ - * /`. Examples: `"3/4"`, `"sqrt(2)/2"`,
    /// `"1/sqrt(2)"`, `"1+sqrt(5)"`, `"0.125"`.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = ExprParser { s: &chars, i: 0 };
        let v = p.expr()?;
        if p.i != chars.len() {
            return Err(FlatError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b == Rational::integer(1) {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_factor(self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else {
            write!(f, "{}+{}", fmt_factor(self.a), surd)
        }
    }
}

fn fmt_factor(r: Rational) -> String {
    if r.den == 1 && r.num >= 0 {
        r.to_string()
    } else {
        format!("({r})")
    }
}

struct ExprParser<'a> {
    s: &'a [char],
    i: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<ExactReal> {
        let mut v = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.i += 1;
                let t = self.term()?;
                v = if c == '+' { v.add(&t)? } else { v.sub(&t)? };
            } else {
                break;
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<ExactReal> {
        let mut v = self.factor()?;
        while let Some(c) = self.peek() {
            if c == '*' || c == '/' {
                self.i += 1;
                let t = self.factor()?;
                v = if c == '*' { v.mul(&t)? } else { v.div(&t)? };
            } else {
                break;
            }
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<ExactReal> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(self.factor()?.neg())
            }
            Some('+') => {
                self.i += 1;
                self.factor()
            }
            Some('(') => {
                self.i += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('s') => {
                for c in "sqrt(".chars() {
                    self.expect(c)?;
                }
                let inner = self.expr()?;
                self.expect(')')?;
                if inner.radicand() != 1 || inner.a.den != 1 {
                    return Err(FlatError::Parse("sqrt argument must be an integer".into()));
                }
                ExactReal::sqrt(inner.a.num)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            other => Err(FlatError::Parse(format!("unexpected {other:?}"))),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(FlatError::Parse(format!("expected {c:?}")))
        }
    }

    fn number(&mut self) -> Result<ExactReal> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.i += 1;
        }
        let mut exp = 0i32;
        if matches!(self.peek(), Some('e') | Some('E')) {
            self.i += 1;
            let es = self.i;
            if matches!(self.peek(), Some('-') | Some('+')) {
                self.i += 1;
            }
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.i += 1;
            }
            let txt: String = self.s[es..self.i].iter().collect();
            exp = txt.parse().map_err(|_| FlatError::Parse(format!("bad exponent {txt}")))?;
        }
        let txt: String = self.s[start..self.i].iter().take_while(|c| **c != 'e' && **c != 'E').collect();
        let (int_part, frac_part) = match txt.split_once('.') {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => (txt.clone(), String::new()),
        };
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() {
            return Err(FlatError::Parse("empty number".into()));
        }
        let mantissa: i64 = digits.parse().map_err(|_| FlatError::Overflow)?;
        let scale = frac_part.len() as i32 - exp;
        let r = if scale >= 0 {
            Rational::new(mantissa, 10i64.checked_pow(scale as u32).ok_or(FlatError::Overflow)?)?
        } else {
            let m = 10i64.checked_pow((-scale) as u32).ok_or(FlatError::Overflow)?;
            Rational::integer(mantissa.checked_mul(m).ok_or(FlatError::Overflow)?)
        };
        Ok(ExactReal::rational(r))
    }
}

/// A fixed field `Q(√d)` together with a common denominator `D`; elements
/// are `QuadInt`s meaning `(r + s√d)/D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    radicand: i64,
    denom: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadInt {
    pub r: i64,
    pub s: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExactVector {
    pub x: QuadInt,
    pub y: QuadInt,
}

#[allow(clippy::should_implement_trait)]
impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { r: 0, s: 0 };

    pub fn add(self, o: Self) -> Self {
        QuadInt { r: self.r + o.r, s: self.s + o.s }
    }

    pub fn sub(self, o: Self) -> Self {
        QuadInt { r: self.r - o.r, s: self.s - o.s }
    }

    pub fn neg(self) -> Self {
        QuadInt { r: -self.r, s: -self.s }
    }

    pub fn scale(self, k: i64) -> Self {
        QuadInt { r: self.r * k, s: self.s * k }
    }
}

#[allow(clippy::should_implement_trait)]
impl ExactVector {
    pub const ZERO: ExactVector = ExactVector { x: QuadInt::ZERO, y: QuadInt::ZERO };

    pub fn add(self, o: Self) -> Self {
        ExactVector { x: self.x.add(o.x), y: self.y.add(o.y) }
    }

    pub fn sub(self, o: Self) -> Self {
        ExactVector { x: self.x.sub(o.x), y: self.y.sub(o.y) }
    }

    pub fn neg(self) -> Self {
        ExactVector { x: self.x.neg(), y: self.y.neg() }
    }

    pub fn scale(self, k: i64) -> Self {
        ExactVector { x: self.x.scale(k), y: self.y.scale(k) }
    }

    pub fn is_zero(&self) -> bool {
        *self == ExactVector::ZERO
    }
}

impl QuadField {
    pub fn new(radicand: i64, denom: i64) -> Result<Self> {
        if radicand < 1 || denom < 1 {
            return Err(FlatError::Parse(format!("invalid field Q(sqrt({radicand}))/{denom}")));
        }
        Ok(QuadField { radicand, denom })
    }

    pub fn rationals(denom: i64) -> Self {
        QuadField { radicand: 1, denom: denom.max(1) }
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// The smallest field holding every value in `values`.
    pub fn containing<'a>(values: impl IntoIterator<Item = &'a ExactReal>) -> Result<Self> {
        let (mut d, mut den) = (1i64, 1i64);
        for v in values {
            match (d, v.radicand()) {
                (_, 1) => {}
                (1, e) => d = e,
                (a, e) if a == e => {}
                (a, e) => return Err(FlatError::MixedRadicands(a, e)),
            }
            den = den.lcm(&v.a.den).lcm(&v.b.den);
        }
        Ok(QuadField { radicand: d, denom: den })
    }

    pub fn encode(&self, v: &ExactReal) -> Result<QuadInt> {
        if v.radicand() != 1 && v.radicand() != self.radicand {
            return Err(FlatError::MixedRadicands(v.radicand(), self.radicand));
        }
        let r = v.a.mul(Rational::integer(self.denom))?;
        let s = v.b.mul(Rational::integer(self.denom))?;
        if r.den != 1 || s.den != 1 {
            return Err(FlatError::Parse(format!("{v} not representable over denominator {}", self.denom)));
        }
        Ok(QuadInt { r: r.num, s: s.num })
    }

    pub fn decode(&self, q: QuadInt) -> ExactReal {
        let a = Rational::new(q.r, self.denom).expect("denominator is positive");
        let b = Rational::new(q.s, self.denom).expect("denominator is positive");
        ExactReal { a, b, d: if q.s == 0 { 1 } else { self.radicand } }
    }

    pub fn encode_vector(&self, x: &ExactReal, y: &ExactReal) -> Result<ExactVector> {
        Ok(ExactVector { x: self.encode(x)?, y: self.encode(y)? })
    }

    pub fn to_f64(&self, q: QuadInt) -> f64 {
        if q.s == 0 {
            return q.r as f64 / self.denom as f64;
        }
        let root = (self.radicand as f64).sqrt();
        (q.r as f64 + q.s as f64 * root) / self.denom as f64
    }

    pub fn to_vector(&self, v: ExactVector) -> PlanarVector {
        PlanarVector::new(self.to_f64(v.x), self.to_f64(v.y))
    }

    /// `(a·b)·D²` as an unnormalized pair.
    fn product(&self, a: QuadInt, b: QuadInt) -> (i128, i128) {
        let d = self.radicand as i128;
        (
            a.r as i128 * b.r as i128 + d * a.s as i128 * b.s as i128,
            a.r as i128 * b.s as i128 + a.s as i128 * b.r as i128,
        )
    }

    /// Sign of `r + s√d`.
    pub fn sign_of(&self, r: i128, s: i128) -> i8 {
        if self.radicand == 1 {
            return (r + s).signum() as i8;
        }
        match (r.signum(), s.signum()) {
            (0, t) | (t, 0) => t as i8,
            (1, 1) => 1,
            (-1, -1) => -1,
            (1, _) => (r * r - self.radicand as i128 * s * s).signum() as i8,
            _ => (self.radicand as i128 * s * s - r * r).signum() as i8,
        }
    }

    pub fn sign(&self, q: QuadInt) -> i8 {
        self.sign_of(q.r as i128, q.s as i128)
    }

    pub fn cross_sign(&self, a: ExactVector, b: ExactVector) -> i8 {
        let p = self.product(a.x, b.y);
        let q = self.product(a.y, b.x);
        self.sign_of(p.0 - q.0, p.1 - q.1)
    }

    pub fn dot_sign(&self, a: ExactVector, b: ExactVector) -> i8 {
        let p = self.product(a.x, b.x);
        let q = self.product(a.y, b.y);
        self.sign_of(p.0 + q.0, p.1 + q.1)
    }

    /// Apply an integer matrix `[[m0, m1], [m2, m3]]`.
    pub fn apply_integer_matrix(&self, m: [i64; 4], v: ExactVector) -> ExactVector {
        ExactVector { x: v.x.scale(m[0]).add(v.y.scale(m[1])), y: v.x.scale(m[2]).add(v.y.scale(m[3])) }
    }
}

/// Hashable identity of a holonomy vector: exact when available, otherwise
/// rounded at `1e-9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VectorKey {
    Exact(ExactVector),
    Rounded(i64, i64),
}

pub const KEY_RESOLUTION: f64 = 1e-9;

impl VectorKey {
    pub fn rounded(v: PlanarVector) -> Self {
        VectorKey::Rounded((v.x / KEY_RESOLUTION).round() as i64, (v.y / KEY_RESOLUTION).round() as i64)
    }
}

/// Number system used by the development kernels: plain `f64` with
/// tolerances, or exact quadratic-field coordinates.
pub trait Arith: Send + Sync {
    type P: Copy + Send + Sync + fmt::Debug + PartialEq;

    fn add(&self, a: Self::P, b: Self::P) -> Self::P;
    fn sub(&self, a: Self::P, b: Self::P) -> Self::P;
    fn neg(&self, a: Self::P) -> Self::P;
    fn scale_int(&self, a: Self::P, k: i64) -> Self::P;
    /// Sign of `cross(a, b)`; zero when parallel.
    fn orient(&self, a: Self::P, b: Self::P) -> i8;
    fn dot_sign(&self, a: Self::P, b: Self::P) -> i8;
    fn to_vector(&self, p: Self::P) -> PlanarVector;
    fn key(&self, p: Self::P) -> VectorKey;
    fn exact(&self, p: Self::P) -> Option<ExactVector>;

    /// Same open ray from the origin.
    fn same_ray(&self, a: Self::P, b: Self::P) -> bool {
        self.orient(a, b) == 0 && self.dot_sign(a, b) > 0
    }
}

/// `f64` coordinates; parallelism decided with a relative angular tolerance.
#[derive(Clone, Copy, Debug)]
pub struct FloatArith {
    pub angle_tol: f64,
}

pub const ANGLE_TOLERANCE: f64 = 1e-12;
pub const COORD_TOLERANCE: f64 = 1e-9;

impl Default for FloatArith {
    fn default() -> Self {
        FloatArith { angle_tol: ANGLE_TOLERANCE }
    }
}

impl Arith for FloatArith {
    type P = PlanarVector;

    fn add(&self, a: PlanarVector, b: PlanarVector) -> PlanarVector {
        a + b
    }
    fn sub(&self, a: PlanarVector, b: PlanarVector) -> PlanarVector {
        a - b
    }
    fn neg(&self, a: PlanarVector) -> PlanarVector {
        -a
    }
    fn scale_int(&self, a: PlanarVector, k: i64) -> PlanarVector {
        a.scale(k as f64)
    }
    fn orient(&self, a: PlanarVector, b: PlanarVector) -> i8 {
        let c = a.cross(b);
        if c.abs() <= self.angle_tol * a.norm() * b.norm() {
            0
        } else if c > 0.0 {
            1
        } else {
            -1
        }
    }
    fn dot_sign(&self, a: PlanarVector, b: PlanarVector) -> i8 {
        let c = a.dot(b);
        if c.abs() <= self.angle_tol * a.norm() * b.norm() {
            0
        } else if c > 0.0 {
            1
        } else {
            -1
        }
    }
    fn to_vector(&self, p: PlanarVector) -> PlanarVector {
        p
    }
    fn key(&self, p: PlanarVector) -> VectorKey {
        VectorKey::rounded(p)
    }
    fn exact(&self, _p: PlanarVector) -> Option<ExactVector> {
        None
    }
}

impl Arith for QuadField {
    type P = ExactVector;

    fn add(&self, a: ExactVector, b: ExactVector) -> ExactVector {
        a.add(b)
    }
    fn sub(&self, a: ExactVector, b: ExactVector) -> ExactVector {
        a.sub(b)
    }
    fn neg(&self, a: ExactVector) -> ExactVector {
        a.neg()
    }
    fn scale_int(&self, a: ExactVector, k: i64) -> ExactVector {
        a.scale(k)
    }
    fn orient(&self, a: ExactVector, b: ExactVector) -> i8 {
        self.cross_sign(a, b)
    }
    fn dot_sign(&self, a: ExactVector, b: ExactVector) -> i8 {
        QuadField::dot_sign(self, a, b)
    }
    fn to_vector(&self, p: ExactVector) -> PlanarVector {
        QuadField::to_vector(self, p)
    }
    fn key(&self, p: ExactVector) -> VectorKey {
        VectorKey::Exact(p)
    }
    fn exact(&self, p: ExactVector) -> Option<ExactVector> {
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let half_root2 = ExactReal::parse("sqrt(2)/2").unwrap();
        assert_eq!(ExactReal::parse("1/sqrt(2)").unwrap(), half_root2);
        assert!((half_root2.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(ExactReal::parse("3/4").unwrap(), ExactReal::ratio(3, 4).unwrap());
        assert_eq!(ExactReal::parse("0.125").unwrap(), ExactReal::ratio(1, 8).unwrap());
        assert_eq!(ExactReal::parse("-1.5e1").unwrap(), ExactReal::integer(-15));
        assert_eq!(ExactReal::parse("sqrt(8)").unwrap().to_string(), "2*sqrt(2)");
        assert!(ExactReal::parse("sqrt(2)+sqrt(3)").is_err());
        assert!(ExactReal::parse("1/0").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["1+sqrt(5)", "(1/2)*sqrt(2)", "-3/7", "(-2)+(3/4)*sqrt(3)"] {
            let v = ExactReal::parse(s).unwrap();
            assert_eq!(ExactReal::parse(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn quad_sign_is_exact() {
        let f = QuadField::new(2, 1).unwrap();
        // 99² = 9801, 2·70² = 9800: 99 − 70√2 > 0 but tiny.
        assert_eq!(f.sign_of(99, -70), 1);
        assert_eq!(f.sign_of(-99, 70), -1);
        assert_eq!(f.sign_of(140, -99), -1);
        assert_eq!(f.sign_of(0, 0), 0);
        let q = QuadField::rationals(3);
        assert_eq!(q.sign_of(5, -5), 0);
    }

    #[test]
    fn cross_sign_detects_collinear() {
        let f = QuadField::new(2, 4).unwrap();
        let a = ExactVector { x: QuadInt { r: 1, s: 1 }, y: QuadInt { r: 2, s: 0 } };
        assert_eq!(f.cross_sign(a, a.scale(3)), 0);
        assert_eq!(f.dot_sign(a, a.scale(-3)), -1);
        let b = ExactVector { x: QuadInt { r: 0, s: 0 }, y: QuadInt { r: 1, s: 0 } };
        assert_eq!(f.cross_sign(a, b), 1);
    }

    #[test]
    fn field_containing() {
        let vals = [ExactReal::parse("1/4").unwrap(), ExactReal::parse("sqrt(2)/6").unwrap()];
        let f = QuadField::containing(vals.iter()).unwrap();
        assert_eq!((f.radicand(), f.denom()), (2, 12));
        let q = f.encode(&vals[1]).unwrap();
        assert_eq!(q, QuadInt { r: 0, s: 2 });
        assert_eq!(f.decode(q), vals[1]);
    }
}
