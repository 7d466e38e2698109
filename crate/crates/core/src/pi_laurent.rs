//! Laurent polynomials in the formal symbol `P = pi^2` over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bigfloat::{pi_value, BigFloat};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ring::{ExactRing, IntDivisible};

/// Finitely supported map from the exponent of `pi^2` to its coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PiLaurent {
    terms: BTreeMap<i32, Rational>,
}

impl PiLaurent {
    pub fn zero() -> Self {
        <Self as ExactRing>::zero_elem()
    }

    pub fn one() -> Self {
        <Self as ExactRing>::one_elem()
    }

    pub fn is_zero(&self) -> bool {
        <Self as ExactRing>::is_zero_elem(self)
    }

    pub fn is_one(&self) -> bool {
        <Self as ExactRing>::is_one_elem(self)
    }

    /// `c * (pi^2)^exp`.
    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        PiLaurent { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut out = PiLaurent::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, exp: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Coefficient of `(pi^2)^exp`.
    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// True when no negative power of `pi^2` is present.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Inverse of a unit, i.e. of a single monomial.
    pub fn inv(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((e, c)) => Ok(PiLaurent::monomial(c.recip(), -e)),
            None if self.terms.is_empty() => Err(Error::DivisionByZero),
            None => Err(Error::NotAUnit(self.to_string())),
        }
    }

    /// Multiplies by `(pi^2)^k`.
    pub fn shift(&self, k: i32) -> Self {
        PiLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Numeric value at the given precision, with guard bits for the powers.
    pub fn eval(&self, precision: u32) -> Result<BigFloat> {
        let max_abs = self
            .terms
            .keys()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0);
        let work = precision + 32 + 2 * (32 - max_abs.leading_zeros());
        let pi2 = {
            let pi = pi_value(work)?;
            pi.mul(&pi)
        };
        let mut acc = BigFloat::zero(work);
        for (&e, c) in &self.terms {
            let term = pi2.powi(e as i64)?.mul(&BigFloat::from_rational(c, work));
            acc = acc.add(&term);
        }
        Ok(acc.with_precision(precision))
    }
}

impl fmt::Display for PiLaurent {
    /// `q·pi^k` terms joined by ` + ` / ` - `, lowest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}·pi^{}", 2 * e)?;
            }
        }
        Ok(())
    }
}

impl ExactRing for PiLaurent {
    fn zero_elem() -> Self {
        PiLaurent::default()
    }
    fn one_elem() -> Self {
        PiLaurent::constant(Rational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        PiLaurent::constant(Rational::from_i64(n))
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, &-c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = PiLaurent::default();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        PiLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl IntDivisible for PiLaurent {
    fn div_i64(&self, n: i64) -> Self {
        self.scale_rational(&Rational::new(1.into(), n.into()))
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return PiLaurent::default();
        }
        PiLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, c * q)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn display_matches_cli_format() {
        let c2 = PiLaurent::from_terms([(1, rat(1, 12)), (2, rat(-1, 288))]);
        assert_eq!(c2.to_string(), "1/12·pi^2 - 1/288·pi^4");
        assert_eq!(
            PiLaurent::monomial(rat(-1, 12), 1).to_string(),
            "-1/12·pi^2"
        );
        assert_eq!(PiLaurent::constant(rat(1, 2)).to_string(), "1/2");
        assert_eq!(PiLaurent::zero().to_string(), "0");
    }

    #[test]
    fn ring_ops() {
        let a = PiLaurent::from_terms([(0, rat(1, 1)), (1, rat(2, 1))]);
        let b = PiLaurent::from_terms([(-1, rat(1, 1))]);
        assert_eq!(
            a.mul_ref(&b),
            PiLaurent::from_terms([(-1, rat(1, 1)), (0, rat(2, 1))])
        );
        assert!(a.sub_ref(&a).is_zero());
        assert!(!a.mul_ref(&b).is_polynomial());
        assert_eq!(b.inv().unwrap(), PiLaurent::monomial(rat(1, 1), 1));
        assert!(matches!(a.inv(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn numeric_value() {
        let x = PiLaurent::from_terms([(1, rat(1, 1)), (-1, rat(1, 1))])
            .eval(128)
            .unwrap();
        let expected = std::f64::consts::PI.powi(2) + std::f64::consts::PI.powi(-2);
        assert!((x.to_f64() - expected).abs() < 1e-14);
    }
}
