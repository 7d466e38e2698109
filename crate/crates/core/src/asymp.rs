//! Truncated Laurent series in `x = 1/g` with [`PiLaurent`] coefficients.

use std::fmt;

use num_traits::Zero;

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::pi_laurent::PiLaurent;
use crate::poly::{GPoly, GRatFunc};
use crate::ring::ExactRing;

/// `sum_{k} coeffs[k] * g^-(valuation + k) + O(g^-precision)`, where
/// `precision = valuation + coeffs.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsympExpansion {
    valuation: i32,
    coeffs: Vec<PiLaurent>,
}

impl AsympExpansion {
    pub fn new(valuation: i32, coeffs: Vec<PiLaurent>) -> Self {
        AsympExpansion { valuation, coeffs }.normalized()
    }

    /// The zero expansion known up to `O(g^-precision)`.
    pub fn zero(precision: i32) -> Self {
        AsympExpansion {
            valuation: precision,
            coeffs: Vec::new(),
        }
    }

    /// `c * g^-k + O(g^-precision)`.
    pub fn monomial(c: PiLaurent, k: i32, precision: i32) -> Self {
        if precision <= k {
            return Self::zero(precision);
        }
        let mut coeffs = vec![PiLaurent::zero(); (precision - k) as usize];
        coeffs[0] = c;
        Self::new(k, coeffs)
    }

    /// Expansion at `g = infinity` of a polynomial, exact terms up to
    /// `O(g^-precision)`.
    pub fn from_gpoly(p: &GPoly, precision: i32) -> Self {
        Self::from_gratfunc(&GRatFunc::from_poly(p.clone()), precision)
    }

    /// Expansion at `g = infinity` of `num / den`, i.e. of
    /// `x^(deg den - deg num) rev(num)(x) / rev(den)(x)` with `x = 1/g`.
    pub fn from_gratfunc(f: &GRatFunc, precision: i32) -> Self {
        let (num, den) = (f.numer(), f.denom());
        let Some(dn) = num.degree() else {
            return Self::zero(precision);
        };
        let dd = den.degree().expect("nonzero denominator");
        let valuation = dd as i32 - dn as i32;
        if precision <= valuation {
            return Self::zero(precision);
        }
        let len = (precision - valuation) as usize;
        let rev = |p: &GPoly, deg: usize| -> Vec<Rational> {
            (0..len)
                .map(|k| {
                    if k <= deg {
                        p.coeff(deg - k)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        };
        let n = rev(num, dn);
        let d = rev(den, dd);
        let d0_inv = d[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = n[k].clone();
            for j in 1..=k.min(dd) {
                acc -= &d[j] * &q[k - j];
            }
            q.push(acc * &d0_inv);
        }
        Self::new(valuation, q.into_iter().map(PiLaurent::constant).collect())
    }

    fn normalized(mut self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.valuation += lead_zeros as i32;
        }
        self
    }

    /// Lowest power of `1/g` with a nonzero coefficient (equal to the
    /// precision for a zero expansion).
    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    /// Terms are exact below this power of `1/g`.
    pub fn precision(&self) -> i32 {
        self.valuation + self.coeffs.len() as i32
    }

    /// Coefficient of `g^-k`; `None` if `k` is at or beyond the precision.
    pub fn coeff(&self, k: i32) -> Option<PiLaurent> {
        if k >= self.precision() {
            None
        } else if k < self.valuation {
            Some(PiLaurent::zero())
        } else {
            Some(self.coeffs[(k - self.valuation) as usize].clone())
        }
    }

    pub fn with_precision(&self, precision: i32) -> Self {
        assert!(precision <= self.precision(), "cannot extend precision");
        if precision <= self.valuation {
            return Self::zero(precision);
        }
        AsympExpansion {
            valuation: self.valuation,
            coeffs: self.coeffs[..(precision - self.valuation) as usize].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let val = self.valuation.min(other.valuation);
        if prec <= val {
            return Self::zero(prec);
        }
        let coeffs = (val..prec)
            .map(|k| {
                self.coeff(k)
                    .expect("below precision")
                    .add_ref(&other.coeff(k).expect("below precision"))
            })
            .collect();
        Self::new(val, coeffs)
    }

    pub fn neg(&self) -> Self {
        AsympExpansion {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &PiLaurent) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision());
        }
        Self::new(
            self.valuation,
            self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        )
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&PiLaurent::constant(q.clone()))
    }

    /// Multiplies by `g^-k`.
    pub fn shift(&self, k: i32) -> Self {
        AsympExpansion {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let val = self.valuation + other.valuation;
        if len == 0 {
            let prec = (self.precision() + other.valuation).min(other.precision() + self.valuation);
            return Self::zero(prec);
        }
        let coeffs = (0..len)
            .map(|n| {
                (0..=n).fold(PiLaurent::zero(), |acc, i| {
                    acc.add_ref(&self.coeffs[i].mul_ref(&other.coeffs[n - i]))
                })
            })
            .collect();
        Self::new(val, coeffs)
    }

    /// Reciprocal; the leading coefficient must be a unit of `Q[P, 1/P]`.
    pub fn inv(&self) -> Result<Self> {
        let Some(lead) = self.coeffs.first() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = lead.inv()?;
        let c = &self.coeffs;
        let mut e: Vec<PiLaurent> = Vec::with_capacity(c.len());
        e.push(lead_inv.clone());
        for n in 1..c.len() {
            let s = (1..=n).fold(PiLaurent::zero(), |acc, k| {
                acc.add_ref(&c[k].mul_ref(&e[n - k]))
            });
            e.push(s.mul_ref(&lead_inv).neg_ref());
        }
        Ok(Self::new(-self.valuation, e))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Numeric value of the truncated sum at a concrete genus.
    pub fn eval(&self, g: u32, precision: u32) -> Result<BigFloat> {
        let work = precision + 32;
        let inv_g = BigFloat::from_rational(&Rational::new(1.into(), g.into()), work);
        let mut acc = BigFloat::zero(work);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.valuation + i as i32;
            acc = acc.add(&c.eval(work)?.mul(&inv_g.powi(k as i64)?));
        }
        Ok(acc.with_precision(precision))
    }
}

impl fmt::Display for AsympExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "({c}) g^{} + ", -(self.valuation + i as i32))?;
        }
        write!(f, "O(g^{})", -self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(c: &[i64]) -> GPoly {
        GPoly::new(c.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    fn consts(v: &[(i64, i64)]) -> Vec<PiLaurent> {
        v.iter()
            .map(|&(n, d)| PiLaurent::constant(rat(n, d)))
            .collect()
    }

    #[test]
    fn geometric_expansion() {
        // 1 / (g - 1) = g^-1 + g^-2 + g^-3 + ...
        let f = GRatFunc::new(p(&[1]), p(&[-1, 1])).unwrap();
        let e = AsympExpansion::from_gratfunc(&f, 4);
        assert_eq!(e.valuation(), 1);
        assert_eq!(e.precision(), 4);
        assert_eq!(e, AsympExpansion::new(1, consts(&[(1, 1), (1, 1), (1, 1)])));
    }

    #[test]
    fn leading_weight() {
        // 1 / (2g (2g - 1)) = 1/4 g^-2 + 1/8 g^-3 + 1/16 g^-4 + ...
        let den = p(&[0, 2]).mul_ref(&p(&[-1, 2]));
        let f = GRatFunc::new(p(&[1]), den).unwrap();
        let e = AsympExpansion::from_gratfunc(&f, 5);
        assert_eq!(
            e,
            AsympExpansion::new(2, consts(&[(1, 4), (1, 8), (1, 16)]))
        );
    }

    #[test]
    fn polynomial_has_negative_valuation() {
        let e = AsympExpansion::from_gpoly(&p(&[3, 0, 2]), 2);
        assert_eq!(e.valuation(), -2);
        assert_eq!(e.coeff(-2), Some(PiLaurent::from_i64(2)));
        assert_eq!(e.coeff(0), Some(PiLaurent::from_i64(3)));
        assert_eq!(e.coeff(1), Some(PiLaurent::zero()));
        assert_eq!(e.coeff(2), None);
    }

    #[test]
    fn inverse_round_trip() {
        let f = GRatFunc::new(p(&[1, 3, 1]), p(&[5, 0, 0, 2])).unwrap();
        let e = AsympExpansion::from_gratfunc(&f, 8);
        let prod = e.mul(&e.inv().unwrap());
        assert_eq!(
            prod,
            AsympExpansion::monomial(PiLaurent::one(), 0, prod.precision())
        );
        let direct = AsympExpansion::from_gratfunc(&f.inv().unwrap(), prod.precision() - 1);
        assert_eq!(e.inv().unwrap().with_precision(direct.precision()), direct);
    }

    #[test]
    fn pi_coefficients_multiply() {
        let a = AsympExpansion::monomial(PiLaurent::monomial(rat(1, 1), 1), 1, 4);
        let b = AsympExpansion::monomial(PiLaurent::monomial(rat(2, 1), -1), 0, 3);
        let c = a.mul(&b);
        assert_eq!(c.coeff(1), Some(PiLaurent::from_i64(2)));
        assert_eq!(c.precision(), 4);
    }

    #[test]
    fn numeric_eval() {
        let e = AsympExpansion::new(0, consts(&[(1, 1), (-1, 2)]));
        assert!((e.eval(4, 128).unwrap().to_f64() - 0.875).abs() < 1e-15);
    }
}
