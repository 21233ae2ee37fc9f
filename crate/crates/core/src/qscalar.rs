//! Exact arithmetic in the field Q(q) of rational functions in one variable.
//!
//! Elements are kept in a canonical form so that structural equality is field
//! equality:
//! - the numerator is a Laurent polynomial, the denominator an ordinary monic
//!   polynomial with nonzero constant term;
//! - numerator and denominator are coprime;
//! - zero is `0 / 1`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Peekable;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::{CharIndices, FromStr};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::QError;

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A Laurent polynomial `sum c_i q^(low + i)` with rational coefficients.
///
/// `coeffs` never has a zero first or last entry; the zero polynomial has no
/// coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// Builds a Laurent polynomial from `(coefficient, exponent)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (Rational, i64)>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, (c, e)| {
            acc.add_ref(&Self::monomial(c, e))
        })
    }

    fn from_parts(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn high_degree(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in ascending order of exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    fn leading(&self) -> &Rational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_degree().max(other.high_degree());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (src, off) in [(self, self.low - low), (other, other.low - low)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                coeffs[off as usize + i] += c;
            }
        }
        Self::from_parts(low, coeffs)
    }

    pub fn neg_ref(&self) -> Self {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Laurent {
            low: self.low + other.low,
            coeffs: poly_mul(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Value at `q = q0`; `q0` must be nonzero when negative powers occur.
    pub fn eval(&self, q0: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // Horner on the polynomial part, then multiply by q0^low.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        acc * Pow::pow(q0, self.low as i32)
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Division with remainder of ascending-coefficient polynomials; `b` is nonzero.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lb = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lb;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        quot[shift] = c;
        rem.pop();
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Monic greatest common divisor over Q.
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
        if let Some(l) = y.last().cloned() {
            for c in y.iter_mut() {
                *c /= &l;
            }
        }
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &l;
        }
    }
    x
}

/// An element of Q(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QScalar {
    num: Laurent,
    den: Laurent,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    /// Canonicalizes `num / den`.
    pub fn normalize(num: Laurent, den: Laurent) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let mut num = num;
        let mut den = den;
        // Powers of q are units; move them to the numerator.
        num.low -= den.low;
        den.low = 0;
        if den.coeffs.len() > 1 {
            let g = poly_gcd(&num.coeffs, &den.coeffs);
            if g.len() > 1 {
                num.coeffs = poly_divrem(&num.coeffs, &g).0;
                den.coeffs = poly_divrem(&den.coeffs, &g).0;
            }
        }
        let lc = den.leading().clone();
        if !lc.is_one() {
            for c in num.coeffs.iter_mut() {
                *c /= &lc;
            }
            for c in den.coeffs.iter_mut() {
                *c /= &lc;
            }
        }
        num.trim();
        Ok(QScalar { num, den })
    }

    pub fn zero() -> Self {
        QScalar {
            num: Laurent::zero(),
            den: Laurent::constant(Rational::one()),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::from_laurent(Laurent::monomial(Rational::one(), exp))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_laurent(Laurent::constant(r))
    }

    pub fn from_laurent(num: Laurent) -> Self {
        QScalar {
            num,
            den: Laurent::constant(Rational::one()),
        }
    }

    /// `sum c * q^e` over the given `(c, e)` integer pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_laurent(Laurent::from_terms(
            terms
                .iter()
                .map(|&(c, e)| (Rational::from_integer(BigInt::from(c)), e)),
        ))
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_inv(&self) -> Result<Self, QError> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QError> {
        if other.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(self * &other.checked_inv()?)
    }

    pub fn pow(&self, exp: i32) -> Result<Self, QError> {
        let base = if exp < 0 {
            self.checked_inv()?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `q = q0`.
    pub fn eval_at(&self, q0: &Rational) -> Result<Rational, QError> {
        if q0.is_zero() {
            return Err(QError::SpecializationPole);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(QError::SpecializationPole);
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Total number of stored terms and coefficient bits; used to prefer cheap pivots.
    pub fn size_hint(&self) -> usize {
        let bits = |p: &Laurent| -> usize {
            p.coeffs
                .iter()
                .map(|c| (c.numer().bits() + c.denom().bits()) as usize)
                .sum()
        };
        4 * (self.num.coeffs.len() + self.den.coeffs.len()) + bits(&self.num) + bits(&self.den)
    }
}

/// The q-integer `[m]_q = (q^m - q^-m) / (q - q^-1)`.
pub fn qint(m: i64) -> QScalar {
    let n = m.unsigned_abs() as i64;
    let sign = if m < 0 { -1 } else { 1 };
    let terms: Vec<(i64, i64)> = (0..n).map(|i| (sign, n - 1 - 2 * i)).collect();
    QScalar::from_terms(&terms)
}

fn add_impl(a: &QScalar, b: &QScalar) -> QScalar {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den.is_one() && b.den.is_one() {
        return QScalar::from_laurent(a.num.add_ref(&b.num));
    }
    if a.den == b.den {
        return QScalar::normalize(a.num.add_ref(&b.num), a.den.clone())
            .expect("nonzero denominator");
    }
    let num = a.num.mul_ref(&b.den).add_ref(&b.num.mul_ref(&a.den));
    QScalar::normalize(num, a.den.mul_ref(&b.den)).expect("nonzero denominator")
}

fn mul_impl(a: &QScalar, b: &QScalar) -> QScalar {
    if a.is_zero() || b.is_zero() {
        return QScalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return QScalar::from_laurent(a.num.mul_ref(&b.num));
    }
    QScalar::normalize(a.num.mul_ref(&b.num), a.den.mul_ref(&b.den)).expect("nonzero denominator")
}

fn neg_impl(a: &QScalar) -> QScalar {
    QScalar {
        num: a.num.neg_ref(),
        den: a.den.clone(),
    }
}

fn div_impl(a: &QScalar, b: &QScalar) -> QScalar {
    a.checked_div(b).expect("division by zero in Q(q)")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $imp(self, rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $imp(&self, rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $imp(self, &rhs)
            }
        }
    };
}

fn sub_impl(a: &QScalar, b: &QScalar) -> QScalar {
    add_impl(a, &neg_impl(b))
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        neg_impl(&self)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        neg_impl(self)
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = sub_impl(self, rhs);
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = mul_impl(self, rhs);
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<Rational> for QScalar {
    fn from(r: Rational) -> Self {
        QScalar::from_rational(r)
    }
}

// ---------------------------------------------------------------------------
// Rendering

fn write_laurent(f: &mut fmt::Formatter<'_>, p: &Laurent) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (exp, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let abs = c.abs();
        if exp == 0 {
            write!(f, "{abs}")?;
            continue;
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        if exp == 1 {
            f.write_str("q")?;
        } else {
            write!(f, "q^{exp}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_laurent(f, &self.num)
        } else {
            f.write_str("(")?;
            write_laurent(f, &self.num)?;
            f.write_str(")/(")?;
            write_laurent(f, &self.den)?;
            f.write_str(")")
        }
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Parsing
//
// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
// unary  := '-' unary | '+' unary | power
// power  := atom ('^' ['-'] integer)?
// atom   := integer | 'q' | '(' expr ')'

struct Parser<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.char_indices().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn err(&mut self, msg: &str) -> QError {
        let pos = self.chars.peek().map_or(self.src.len(), |&(i, _)| i);
        QError::Parse(format!("{msg} at offset {pos} in {:?}", self.src))
    }

    fn expect(&mut self, want: char) -> Result<(), QError> {
        if self.peek() == Some(want) {
            self.chars.next();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{want}'")))
        }
    }

    fn integer(&mut self) -> Result<BigInt, QError> {
        self.skip_ws();
        let start = match self.chars.peek() {
            Some(&(i, c)) if c.is_ascii_digit() => i,
            _ => return Err(self.err("expected integer")),
        };
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            end = i + 1;
            self.chars.next();
        }
        self.src[start..end]
            .parse()
            .map_err(|_| QError::Parse(format!("bad integer in {:?}", self.src)))
    }

    fn expr(&mut self) -> Result<QScalar, QError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.chars.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar, QError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.chars.next();
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.chars.next();
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(c) if c == 'q' || c == '(' || c.is_ascii_digit() => {
                    acc = acc * self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QScalar, QError> {
        match self.peek() {
            Some('-') => {
                self.chars.next();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.chars.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QScalar, QError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.chars.next();
        let negative = if self.peek() == Some('-') {
            self.chars.next();
            true
        } else {
            false
        };
        let e: i32 = self
            .integer()?
            .try_into()
            .map_err(|_| QError::Parse("exponent out of range".into()))?;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<QScalar, QError> {
        match self.peek() {
            Some('q') => {
                self.chars.next();
                Ok(QScalar::q())
            }
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QScalar::from_rational(Rational::from_integer(n)))
            }
            _ => Err(self.err("expected a number, 'q' or '('")),
        }
    }
}

impl FromStr for QScalar {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self, QError> {
        let mut p = Parser::new(s);
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

/// Orders by rendered text; only used to make outputs deterministic.
impl PartialOrd for QScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_string().cmp(&other.to_string()))
    }
}
