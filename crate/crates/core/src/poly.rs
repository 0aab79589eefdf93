//! Exact Laurent polynomials with big-integer coefficients, and rationals
//! extended by a point at infinity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Variable tag of a [`LaurentPoly`].
///
/// `SqrtT` stands for `t^(1/2)`: an exponent `k` means `t^(k/2)`. It only
/// shows up for Jones polynomials of links with an even number of
/// components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    A,
    T,
    SqrtT,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::A => write!(f, "A"),
            Variable::T => write!(f, "t"),
            Variable::SqrtT => write!(f, "t^(1/2)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Variable, Variable),
    #[error("the zero polynomial has no degree span")]
    ZeroPolynomial,
    #[error("cannot evaluate a polynomial with negative exponents at 0")]
    EvaluationAtZero,
    #[error("cannot evaluate a polynomial at infinity")]
    EvaluationAtInfinity,
    #[error("invalid rational `{0}`")]
    ParseRational(String),
}

/// Laurent polynomial in a single variable with exact integer coefficients.
///
/// The zero polynomial is the empty coefficient map. No zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Variable,
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Variable) -> Self {
        LaurentPoly { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Variable, exp: i64, coeff: impl Into<BigInt>) -> Self {
        Self::from_terms(var, [(exp, coeff.into())])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(var: Variable, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Ascending coefficient list starting at exponent `min_exp`.
    pub fn from_coeffs(var: Variable, min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(var, coeffs.iter().enumerate().map(|(k, &c)| (min_exp + k as i64, c)))
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    fn check_var(&self, other: &Self) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch(self.var, other.var))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * s)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Reindexes exponents with an injective map and retags the variable.
    pub(crate) fn map_exponents(&self, var: Variable, f: impl Fn(i64) -> i64) -> Self {
        let mut out = Self::zero(var);
        for (&e, c) in &self.coeffs {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Lowest and highest exponent with a nonzero coefficient.
    pub fn degree_span(&self) -> Result<(i64, i64), PolyError> {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Ok((lo, hi)),
            _ => Err(PolyError::ZeroPolynomial),
        }
    }

    /// Exact evaluation at a nonzero finite rational.
    pub fn substitute(&self, value: &Rational) -> Result<Rational, PolyError> {
        let x = match value {
            Rational::Infinity => return Err(PolyError::EvaluationAtInfinity),
            Rational::Finite(x) => x,
        };
        if x.is_zero() {
            if self.coeffs.keys().any(|&e| e < 0) {
                return Err(PolyError::EvaluationAtZero);
            }
            return Ok(Rational::Finite(BigRational::from_integer(self.coeff(0))));
        }
        let mut sum = BigRational::zero();
        for (&e, c) in &self.coeffs {
            let base = if e < 0 { x.recip() } else { x.clone() };
            let mut term = BigRational::from_integer(c.clone());
            term *= num_traits::pow(base, e.unsigned_abs() as usize);
            sum += term;
        }
        Ok(Rational::Finite(sum))
    }

    /// Ascending coefficient list from the lowest to the highest exponent,
    /// interior zeros included.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        self.dense_coeffs_step(1)
    }

    fn dense_coeffs_step(&self, step: i64) -> Vec<BigInt> {
        match self.degree_span() {
            Ok((lo, hi)) => (lo..=hi).step_by(step as usize).map(|e| self.coeff(e)).collect(),
            Err(_) => Vec::new(),
        }
    }

    fn uniform_parity(&self) -> bool {
        let mut it = self.coeffs.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|e| (e - first).rem_euclid(2) == 0),
        }
    }

    /// Table layout: `span=(m,M); coeffs=[c_m,...,c_M]`.
    ///
    /// For `SqrtT` polynomials the span is printed in powers of `t`, e.g.
    /// `1/2`, and consecutive coefficients step by a whole power of `t` when
    /// every exponent has the same parity.
    pub fn table_format(&self) -> String {
        let (span, coeffs) = self.table_parts();
        format!("span={span}; coeffs={coeffs}")
    }

    /// The two halves of [`table_format`](Self::table_format): span and coefficient list.
    pub fn table_parts(&self) -> (String, String) {
        let (lo, hi) = match self.degree_span() {
            Ok(s) => s,
            Err(_) => return ("()".to_string(), "[]".to_string()),
        };
        let (span, step) = match self.var {
            Variable::SqrtT => {
                let step = if self.uniform_parity() { 2 } else { 1 };
                (format!("({},{})", fmt_half(lo), fmt_half(hi)), step)
            }
            _ => (format!("({lo},{hi})"), 1),
        };
        let list: Vec<String> = self.dense_coeffs_step(step).iter().map(|c| c.to_string()).collect();
        (span, format!("[{}]", list.join(",")))
    }
}

fn fmt_half(e: i64) -> String {
    if e % 2 == 0 {
        (e / 2).to_string()
    } else {
        format!("{e}/2")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = match self.var {
            Variable::A => "A",
            Variable::T | Variable::SqrtT => "t",
        };
        for (k, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let shown = if self.var == Variable::SqrtT { fmt_half(e) } else { e.to_string() };
            if shown == "1" {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{}", if shown.contains('/') || e < 0 { format!("({shown})") } else { shown })?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on a variable mismatch; use the checked_* methods when
// mixing tags is possible.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

pub fn poly_add(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    a.checked_add(b)
}

pub fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    a.checked_mul(b)
}

pub fn substitute(p: &LaurentPoly, value: &Rational) -> Result<Rational, PolyError> {
    p.substitute(value)
}

pub fn degree_span(p: &LaurentPoly) -> Result<(i64, i64), PolyError> {
    p.degree_span()
}

/// Element of Q ∪ {∞}. Finite values are always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Finite(BigRational),
    Infinity,
}

impl Rational {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational::Finite(BigRational::from_integer(n.into()))
    }

    /// `num/den`; a zero denominator gives ∞ unless the numerator is zero too.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, PolyError> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            if num.is_zero() {
                return Err(PolyError::ParseRational("0/0".into()));
            }
            return Ok(Rational::Infinity);
        }
        Ok(Rational::Finite(BigRational::new(num, den)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Rational::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Rational::Finite(x) => Some(x),
            Rational::Infinity => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.finite().is_some_and(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.finite().filter(|x| x.is_integer()).map(|x| x.to_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.finite().is_some_and(|x| x.is_zero())
    }

    /// `1/x` with `1/∞ = 0` and `1/0 = ∞`.
    pub fn recip(&self) -> Rational {
        match self {
            Rational::Infinity => Rational::integer(0),
            Rational::Finite(x) if x.is_zero() => Rational::Infinity,
            Rational::Finite(x) => Rational::Finite(x.recip()),
        }
    }

    /// Numerator and (positive) denominator; ∞ is `1/0`.
    pub fn as_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Infinity => (BigInt::one(), BigInt::zero()),
            Rational::Finite(x) => (x.numer().clone(), x.denom().clone()),
        }
    }
}

impl From<BigRational> for Rational {
    fn from(x: BigRational) -> Self {
        Rational::Finite(x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Infinity => write!(f, "inf"),
            Rational::Finite(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Rational::Finite(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PolyError::ParseRational(s.to_string());
        if matches!(s, "inf" | "∞" | "infinity") {
            return Ok(Rational::Infinity);
        }
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_negative() {
                    return Rational::new(-n, -d);
                }
                Rational::new(n, d)
            }
            None => Ok(Rational::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}
