//! Univariate polynomials and rational functions over the rationals.
//!
//! The variable is the genus `g` in the asymptotic engine, and a formal
//! exponent `lambda` when building `F^lambda`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ring::{ExactRing, IntDivisible};

/// Polynomial with coefficients stored lowest degree first, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GPoly {
    coeffs: Vec<Rational>,
}

impl GPoly {
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

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `slope * x + intercept`.
    pub fn linear(slope: i64, intercept: i64) -> Self {
        Self::new(vec![
            Rational::from_i64(intercept),
            Rational::from_i64(slope),
        ])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &GPoly) -> GPoly {
        self.coeffs.iter().rev().fold(GPoly::default(), |acc, c| {
            acc.mul_ref(inner).add_ref(&GPoly::constant(c.clone()))
        })
    }

    /// `self(x + shift)`.
    pub fn shift(&self, shift: i64) -> GPoly {
        self.compose(&GPoly::linear(1, shift))
    }

    pub fn scale(&self, c: &Rational) -> GPoly {
        GPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> GPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &GPoly) -> (GPoly, GPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (GPoly::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (GPoly::new(quot), GPoly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &GPoly) -> GPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.coeffs.is_empty() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("g"))
    }
}

impl ExactRing for GPoly {
    fn zero_elem() -> Self {
        GPoly::default()
    }
    fn one_elem() -> Self {
        GPoly::constant(Rational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        GPoly::constant(Rational::from_i64(n))
    }
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        GPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        GPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return GPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GPoly::new(out)
    }
    fn neg_ref(&self) -> Self {
        GPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl IntDivisible for GPoly {
    fn div_i64(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        self.scale(&Rational::new(1.into(), n.into()))
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
}

/// Element of `Q(g)`: reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GRatFunc {
    num: GPoly,
    den: GPoly,
}

impl GRatFunc {
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

    pub fn new(num: GPoly, den: GPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(GPoly::default()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").recip();
        Ok(GRatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: GPoly) -> Self {
        GRatFunc {
            num: p,
            den: GPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(GPoly::constant(c))
    }

    pub fn numer(&self) -> &GPoly {
        &self.num
    }

    pub fn denom(&self) -> &GPoly {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        GRatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `self(x + shift)`.
    pub fn shift(&self, shift: i64) -> Self {
        GRatFunc::new(self.num.shift(shift), self.den.shift(shift))
            .expect("a shifted nonzero denominator stays nonzero")
    }
}

impl fmt::Display for GRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl ExactRing for GRatFunc {
    fn zero_elem() -> Self {
        Self::from_poly(GPoly::default())
    }
    fn one_elem() -> Self {
        Self::from_poly(GPoly::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_poly(GPoly::from_i64(n))
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return GRatFunc::new(self.num.add_ref(&other.num), self.den.clone()).expect("nonzero");
        }
        GRatFunc::new(
            self.num
                .mul_ref(&other.den)
                .add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
        .expect("nonzero")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        GRatFunc::new(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den)).expect("nonzero")
    }
    fn neg_ref(&self) -> Self {
        GRatFunc {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
}

impl IntDivisible for GRatFunc {
    fn div_i64(&self, n: i64) -> Self {
        GRatFunc {
            num: self.num.div_i64(n),
            den: self.den.clone(),
        }
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        GRatFunc {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(c: &[i64]) -> GPoly {
        GPoly::new(c.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 2]); // 2g + 1
        let b = p(&[-1, 0, 1]); // g^2 - 1
        assert_eq!(a.mul_ref(&b), p(&[-1, -2, 1, 2]));
        assert_eq!(a.add_ref(&b), p(&[0, 2, 1]));
        assert_eq!(b.eval(&rat(3, 1)), rat(8, 1));
        assert_eq!(b.sub_ref(&b), GPoly::default());
        assert_eq!(b.degree(), Some(2));
        assert_eq!(GPoly::default().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // (g-1)(g+1)
        let b = p(&[1, 1]); // g+1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let c = p(&[2, 3, 1]); // (g+1)(g+2)
        assert_eq!(a.scale(&rat(5, 1)).gcd(&c), b);
    }

    #[test]
    fn composition() {
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.compose(&GPoly::linear(2, -1)), p(&[1, -4, 4]));
        assert_eq!(sq.shift(-1), p(&[1, -2, 1]));
    }

    #[test]
    fn rational_functions_reduce() {
        let f = GRatFunc::new(p(&[-1, 0, 1]), p(&[2, 2])).unwrap();
        // (g^2 - 1) / (2g + 2) = (g - 1) / 2
        assert_eq!(f, GRatFunc::from_poly(p(&[-1, 1]).scale(&rat(1, 2))));
        let h = GRatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        let s = h.add_ref(&h.neg_ref());
        assert!(s.is_zero());
        assert_eq!(h.mul_ref(&h.inv().unwrap()), GRatFunc::one());
        assert_eq!(h.eval(&rat(0, 1)), None);
        assert_eq!(h.shift(1).eval(&rat(1, 1)), Some(rat(1, 2)));
        assert!(GRatFunc::new(p(&[1]), GPoly::default()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 3]).to_string(), "3*g^2 - 2*g + 1");
        assert_eq!(
            GRatFunc::new(p(&[1]), p(&[0, 2])).unwrap().to_string(),
            "(1/2) / (g)"
        );
    }
}
