//! Negative continued fractions `a₁ - 1/(a₂ - 1/(… - 1/a_k))`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SurgeryError;
use crate::poly::Rational;

/// Canonical negative continued fraction: nonempty, every term after the
/// first is at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    terms: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<BigInt>) -> Result<Self, SurgeryError> {
        if terms.is_empty() {
            return Err(SurgeryError::NonCanonical("empty continued fraction".into()));
        }
        let two = BigInt::from(2);
        if let Some((k, a)) = terms.iter().enumerate().skip(1).find(|(_, a)| **a < two) {
            return Err(SurgeryError::NonCanonical(format!("term {} is {a}, must be >= 2", k + 1)));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn from_i64(terms: &[i64]) -> Result<Self, SurgeryError> {
        Self::new(terms.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Expansion by `a₁ = ⌈x⌉`, continuing with `1/(a₁ - x)`.
pub fn cfrac_expand(x: &Rational) -> Result<ContinuedFraction, SurgeryError> {
    let mut x: BigRational = x.finite().ok_or(SurgeryError::InfiniteExpansion)?.clone();
    let mut terms = Vec::new();
    loop {
        let a = x.ceil();
        terms.push(a.to_integer());
        let rest = a - &x;
        if rest.is_zero() {
            break;
        }
        x = rest.recip();
    }
    ContinuedFraction::new(terms)
}

/// Evaluates right to left.
pub fn cfrac_eval(cf: &ContinuedFraction) -> Rational {
    let mut terms = cf.terms.iter().rev();
    let mut v = BigRational::from_integer(terms.next().expect("nonempty").clone());
    for a in terms {
        // canonical form keeps v >= 1 here, so v != 0
        v = BigRational::from_integer(a.clone()) - BigRational::one() / v;
    }
    Rational::Finite(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn terms(cf: &ContinuedFraction) -> Vec<i64> {
        cf.terms().iter().map(|a| i64::try_from(a).unwrap()).collect()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(terms(&cfrac_expand(&q("2/7")).unwrap()), vec![1, 2, 2, 3]);
        assert_eq!(terms(&cfrac_expand(&q("-4")).unwrap()), vec![-4]);
        assert_eq!(terms(&cfrac_expand(&q("7/5")).unwrap()), vec![2, 2, 3]);
        assert_eq!(terms(&cfrac_expand(&q("5/2")).unwrap()), vec![3, 2]);
        assert_eq!(terms(&cfrac_expand(&q("-1/2")).unwrap()), vec![0, 2]);
        assert_eq!(cfrac_expand(&Rational::Infinity), Err(SurgeryError::InfiniteExpansion));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cfrac_eval(&ContinuedFraction::from_i64(&[1, 2, 2, 3]).unwrap()), q("2/7"));
        assert_eq!(cfrac_eval(&ContinuedFraction::from_i64(&[9]).unwrap()), q("9"));
        assert_eq!(cfrac_eval(&ContinuedFraction::from_i64(&[0, 2]).unwrap()), q("-1/2"));
        assert_eq!(cfrac_eval(&ContinuedFraction::from_i64(&[3, 2, 2]).unwrap()), q("7/3"));
    }

    #[test]
    fn non_canonical_rejected() {
        assert!(ContinuedFraction::from_i64(&[]).is_err());
        assert!(ContinuedFraction::from_i64(&[1, 1]).is_err());
        assert!(ContinuedFraction::from_i64(&[5, 2, 0]).is_err());
        assert!(ContinuedFraction::from_i64(&[-3, 2]).is_ok());
    }

    #[test]
    fn exhaustive_round_trip() {
        for num in -100i64..=100 {
            for den in 1i64..=100 {
                let x = Rational::new(num, den).unwrap();
                let cf = cfrac_expand(&x).unwrap();
                assert!(cf.terms().iter().skip(1).all(|a| *a >= BigInt::from(2)));
                assert_eq!(cfrac_eval(&cf), x);
            }
        }
    }
}
