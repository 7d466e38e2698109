//! Masur-Veech volumes, area Siegel-Veech constants and the conjectural
//! residuals, exact first and numeric on request.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigfloat::{pi_value, BigFloat};
use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::exec;
use crate::recursion::StrataSequences;

/// `rational_part * pi^pi_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMonomialValue {
    pub rational_part: Rational,
    pub pi_exponent: i32,
}

impl PiMonomialValue {
    pub fn eval(&self, precision: u32) -> Result<BigFloat> {
        let guard = 32 + 2 * (32 - self.pi_exponent.unsigned_abs().leading_zeros());
        let work = precision + guard;
        let pi = pi_value(work)?;
        let v = pi
            .powi(self.pi_exponent as i64)?
            .mul(&BigFloat::from_rational(&self.rational_part, work));
        Ok(v.with_precision(precision))
    }
}

impl fmt::Display for PiMonomialValue {
    /// `q·pi^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·pi^{}", self.rational_part, self.pi_exponent)
    }
}

/// `Vol(2g-2) = 2 (2 pi)^2g a_g / (2g-1)!`.
pub fn volume(g: u32, a_g: &Rational) -> Result<PiMonomialValue> {
    if g < 1 {
        return Err(Error::GenusOutOfRange { got: g, min: 1 });
    }
    let two_pow = Rational::from_integer(BigInt::one() << (2 * g as usize + 1));
    Ok(PiMonomialValue {
        rational_part: two_pow * a_g / Rational::from_integer(factorial(2 * g - 1)),
        pi_exponent: 2 * g as i32,
    })
}

/// `c_area(2g-2) = d_g / (4 pi^2 a_g)`.
pub fn c_area(g: u32, a_g: &Rational, d_g: &Rational) -> Result<PiMonomialValue> {
    if g < 1 {
        return Err(Error::GenusOutOfRange { got: g, min: 1 });
    }
    if a_g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(PiMonomialValue {
        rational_part: d_g / (a_g * Rational::from_integer(4.into())),
        pi_exponent: -2,
    })
}

/// The two normalizations of the volume residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `(2g-1)/4 * Vol - 1`: the prefactor `prod (k_i + 1) = 2g - 1`.
    Conjecture,
    /// `(2g-2)/4 * Vol - 1`.
    Theorem,
}

impl Normalization {
    /// The factor multiplying `Vol / 4`.
    pub fn factor(self, g: u32) -> i64 {
        match self {
            Normalization::Conjecture => 2 * g as i64 - 1,
            Normalization::Theorem => 2 * g as i64 - 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrataRow {
    pub g: u32,
    pub a_g: Rational,
    pub d_g: Rational,
    pub vol: PiMonomialValue,
    pub c_area: PiMonomialValue,
    pub vol_numeric: BigFloat,
    pub c_area_numeric: BigFloat,
    pub eps1_conjecture: BigFloat,
    pub eps1_theorem: BigFloat,
    pub eps2: BigFloat,
}

impl StrataRow {
    pub fn new(g: u32, a_g: &Rational, d_g: &Rational, precision: u32) -> Result<Self> {
        let vol = volume(g, a_g)?;
        let c_area = c_area(g, a_g, d_g)?;
        let vol_numeric = vol.eval(precision + 16)?;
        let c_area_numeric = c_area.eval(precision + 16)?;
        let (eps1_conjecture, eps1_theorem, eps2) =
            epsilon_residuals(g, &vol_numeric, &c_area_numeric, precision);
        Ok(StrataRow {
            g,
            a_g: a_g.clone(),
            d_g: d_g.clone(),
            vol,
            c_area,
            vol_numeric: vol_numeric.with_precision(precision),
            c_area_numeric: c_area_numeric.with_precision(precision),
            eps1_conjecture,
            eps1_theorem,
            eps2,
        })
    }

    pub fn eps1(&self, normalization: Normalization) -> &BigFloat {
        match normalization {
            Normalization::Conjecture => &self.eps1_conjecture,
            Normalization::Theorem => &self.eps1_theorem,
        }
    }
}

/// `(eps1_conjecture, eps1_theorem, eps2)` from numeric volume and `c_area`.
/// Inputs should carry a few guard bits beyond `precision`.
pub fn epsilon_residuals(
    g: u32,
    vol: &BigFloat,
    c_area: &BigFloat,
    precision: u32,
) -> (BigFloat, BigFloat, BigFloat) {
    let work = vol.precision().max(c_area.precision());
    let one = BigFloat::from_integer(1, work);
    let eps1 = |n: Normalization| {
        let f = BigFloat::from_rational(&Rational::new(n.factor(g).into(), 4.into()), work);
        vol.mul(&f).sub(&one).with_precision(precision)
    };
    let half = BigFloat::from_rational(&Rational::new(1.into(), 2.into()), work);
    (
        eps1(Normalization::Conjecture),
        eps1(Normalization::Theorem),
        c_area.sub(&half).with_precision(precision),
    )
}

/// Rows for `g = 1..=g_max`, computed through [`exec::map_range`].
pub fn strata_rows(seq: &StrataSequences, precision: u32) -> Result<Vec<StrataRow>> {
    exec::map_range(1..seq.g_max() as usize + 1, |g| {
        let g = g as u32;
        StrataRow::new(g, seq.a(g), seq.d(g), precision)
    })
    .into_iter()
    .collect()
}

/// Residuals rescaled so that the large-genus conjecture predicts 1:
/// `-eps1 * 6 dim / pi^2` and `-eps2 * 2 dim` with `dim = 2g`.
#[derive(Clone, Debug, PartialEq)]
pub struct RescaledResiduals {
    pub g: u32,
    pub eps1_conjecture: BigFloat,
    pub eps1_theorem: BigFloat,
    pub eps2: BigFloat,
}

pub fn rescaled_residuals(row: &StrataRow) -> Result<RescaledResiduals> {
    let precision = row.eps2.precision();
    let work = precision + 16;
    let dim = 2 * row.g as i64;
    let pi = pi_value(work)?;
    let k1 = BigFloat::from_integer(-6 * dim, work).div(&pi.mul(&pi))?;
    let k2 = BigFloat::from_integer(-2 * dim, work);
    Ok(RescaledResiduals {
        g: row.g,
        eps1_conjecture: row.eps1_conjecture.mul(&k1).with_precision(precision),
        eps1_theorem: row.eps1_theorem.mul(&k1).with_precision(precision),
        eps2: row.eps2.mul(&k2).with_precision(precision),
    })
}

pub fn conjecture_rescaled_table(rows: &[StrataRow]) -> Result<Vec<RescaledResiduals>> {
    exec::map_slice(rows, rescaled_residuals)
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::Signed;

    #[test]
    fn volumes() {
        assert_eq!(volume(1, &rat(1, 24)).unwrap().to_string(), "1/3·pi^2");
        assert_eq!(volume(2, &rat(1, 640)).unwrap().to_string(), "1/120·pi^4");
        assert_eq!(
            volume(3, &rat(305, 580608)).unwrap().to_string(),
            "61/108864·pi^6"
        );
        assert!(volume(0, &rat(1, 1)).is_err());
    }

    #[test]
    fn siegel_veech() {
        let c = |g, a, d| c_area(g, &a, &d).unwrap().rational_part;
        assert_eq!(c(1, rat(1, 24), rat(1, 2)), rat(3, 1));
        assert_eq!(c(2, rat(1, 640), rat(1, 48)), rat(10, 3));
        assert_eq!(c(3, rat(305, 580608), rat(91, 11520)), rat(5733, 1525));
        assert_eq!(
            c_area(1, &rat(0, 1), &rat(1, 2)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn round_trips() {
        let seq = StrataSequences::compute(10).unwrap();
        for g in 1..=10 {
            let v = volume(g, seq.a(g)).unwrap();
            let back = &v.rational_part * Rational::from_integer(factorial(2 * g - 1))
                / Rational::from_integer(BigInt::one() << (2 * g as usize + 1));
            assert_eq!(&back, seq.a(g));
            let c = c_area(g, seq.a(g), seq.d(g)).unwrap();
            assert_eq!(
                &(c.rational_part * Rational::from_integer(4.into()) * seq.a(g)),
                seq.d(g)
            );
        }
    }

    #[test]
    fn residual_examples() {
        let seq = StrataSequences::compute(3).unwrap();
        let rows = strata_rows(&seq, 128).unwrap();
        assert_eq!(rows[0].eps1_theorem.to_f64(), -1.0);
        let pi = std::f64::consts::PI;
        let e1 = 0.75 * pi.powi(4) / 120.0 - 1.0;
        assert!((rows[1].eps1_conjecture.to_f64() - e1).abs() < 1e-14);
        assert!((rows[1].eps1_conjecture.to_f64() + 0.3912).abs() < 1e-4);
        assert!((rows[1].eps2.to_f64() + 0.1623).abs() < 1e-4);
        let resc = conjecture_rescaled_table(&rows).unwrap();
        assert!((resc[1].eps1_conjecture.to_f64() - 0.951).abs() < 1e-3);
        let r3 = resc[2].eps1_conjecture.to_f64();
        assert!(r3 > 0.5 && r3 < 1.5);
        // g = 1 under the theorem normalization: eps = -1 exactly, rescaled 12/pi^2.
        assert!((resc[0].eps1_theorem.to_f64() - 12.0 / (pi * pi)).abs() < 1e-14);
    }

    #[test]
    fn precision_stability() {
        let seq = StrataSequences::compute(12).unwrap();
        for p in [128u32, 256] {
            let lo = strata_rows(&seq, p).unwrap();
            let hi = strata_rows(&seq, 2 * p).unwrap();
            for (x, y) in lo.iter().zip(&hi) {
                for (u, v) in [(&x.vol_numeric, &y.vol_numeric), (&x.eps2, &y.eps2)] {
                    let diff = (u.to_rational() - v.to_rational()).abs();
                    let scale = v.to_rational().abs();
                    let tol = Rational::new(1.into(), BigInt::one() << (p as usize - 8));
                    assert!(diff <= scale * tol, "g = {}", x.g);
                }
            }
        }
    }

    #[test]
    fn eps2_negative() {
        let seq = StrataSequences::compute(25).unwrap();
        assert!(strata_rows(&seq, 128)
            .unwrap()
            .iter()
            .all(|r| r.eps2.is_negative()));
    }
}
