//! Binary floating point on top of big integers, plus a cached `pi`.
//!
//! A [`BigFloat`] is the dyadic number `mantissa * 2^exponent` with the
//! mantissa holding exactly `precision` significant bits. Every operation is
//! carried out exactly on the dyadic inputs and rounded once, to nearest with
//! ties to even, so conversions from [`Rational`] are correctly rounded.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn from_integer(n: impl Into<BigInt>, precision: u32) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()), precision)
    }

    /// Correctly rounded conversion (nearest, ties to even).
    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        assert!(precision >= 2, "precision must be at least 2 bits");
        if q.is_zero() {
            return Self::zero(precision);
        }
        let negative = q.is_negative();
        let num = q.numer().abs();
        let den = q.denom().clone();
        let p = precision as i64;
        // Choose e with 2^(p-1) <= |q| / 2^e < 2^p; the bit-length estimate
        // can be off by one.
        let mut e = num.bits() as i64 - den.bits() as i64 - p;
        let (mut quot, mut rem, mut scaled_den) = divide_scaled(&num, &den, e);
        if quot.bits() as i64 > p {
            e += 1;
            (quot, rem, scaled_den) = divide_scaled(&num, &den, e);
        } else if (quot.bits() as i64) < p {
            e -= 1;
            (quot, rem, scaled_den) = divide_scaled(&num, &den, e);
        }
        debug_assert_eq!(quot.bits() as i64, p);
        let twice: BigInt = &rem << 1usize;
        let round_up = match twice.cmp(&scaled_den) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => quot.is_odd(),
            std::cmp::Ordering::Less => false,
        };
        if round_up {
            quot += 1;
            if quot.bits() as i64 > p {
                quot >>= 1;
                e += 1;
            }
        }
        BigFloat {
            mantissa: if negative { -quot } else { quot },
            exponent: e,
            precision,
        }
    }

    /// The exact dyadic value.
    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            Rational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::from_rational(&self.to_rational(), precision)
    }

    fn combine(&self, other: &Self, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        let precision = self.precision.min(other.precision);
        Self::from_rational(&f(self.to_rational(), other.to_rational()), precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a * b)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.combine(other, |a, b| a / b))
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -&self.mantissa,
            ..self.clone()
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    /// Integer power by repeated squaring. Each step rounds, so the result
    /// carries about `log2(|n|)` ulps of error; callers needing a clean last
    /// bit should work with guard bits.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::from_integer(1, self.precision);
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        if n < 0 {
            Self::from_integer(1, self.precision).div(&acc)
        } else {
            Ok(acc)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Keep 64 leading bits; the f64 conversion rounds the rest.
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (&self.mantissa >> shift as usize)
            .to_f64()
            .unwrap_or(f64::NAN);
        let e = self.exponent + shift;
        top * pow2(e)
    }

    /// Decimal rendering with `digits` significant digits, in scientific
    /// notation when the magnitude is far from 1.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let q = self.to_rational();
        let negative = q.is_negative();
        let q = q.abs();
        // Find the decimal exponent d with 10^d <= q < 10^(d+1).
        let mut d = ((q.numer().bits() as f64 - q.denom().bits() as f64)
            * std::f64::consts::LOG10_2)
            .floor() as i64;
        let ten = Rational::from_integer(BigInt::from(10));
        loop {
            let lo = pow_rational(&ten, d);
            if q < lo {
                d -= 1;
            } else if q >= &lo * &ten {
                d += 1;
            } else {
                break;
            }
        }
        let scale = pow_rational(&ten, digits as i64 - 1 - d);
        let scaled = &q * scale;
        let mut m = scaled.round().to_integer();
        if m.to_string().len() > digits {
            m /= 10;
            d += 1;
        }
        let s = m.to_string();
        let sign = if negative { "-" } else { "" };
        let body = if (-5..=20).contains(&d) && d < digits as i64 {
            if d >= 0 {
                let (int_part, frac) = s.split_at(d as usize + 1);
                if frac.is_empty() {
                    int_part.to_string()
                } else {
                    format!("{int_part}.{frac}")
                }
            } else {
                format!("0.{}{}", "0".repeat((-d - 1) as usize), s)
            }
        } else {
            let (lead, rest) = s.split_at(1);
            if rest.is_empty() {
                format!("{lead}e{d}")
            } else {
                format!("{lead}.{rest}e{d}")
            }
        };
        format!("{sign}{body}")
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.precision as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

fn pow2(e: i64) -> f64 {
    // Split so intermediate powers stay finite.
    let mut r = 1.0f64;
    let mut e = e;
    while e > 1000 {
        r *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        r *= 2f64.powi(-1000);
        e += 1000;
    }
    r * 2f64.powi(e as i32)
}

fn pow_rational(base: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Returns `(floor(num / (den * 2^e)), remainder, den * 2^e)` with the
/// scaling moved onto whichever side keeps everything integral.
fn divide_scaled(num: &BigInt, den: &BigInt, e: i64) -> (BigInt, BigInt, BigInt) {
    let (n, d) = if e >= 0 {
        (num.clone(), den << e as usize)
    } else {
        (num << (-e) as usize, den.clone())
    };
    let (q, r) = n.div_rem(&d);
    (q, r, d)
}

/// arctan(1/x) scaled by 2^bits, truncated; error below the term count.
fn arctan_inv(x: u32, bits: u64) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << bits as usize) / x;
    let mut sum = power.clone();
    let mut n = 1u64;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * n + 1);
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

static PI_CACHE: Mutex<Option<HashMap<u32, BigFloat>>> = Mutex::new(None);

/// `pi` rounded to `precision` bits, from Machin's formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)` evaluated with guard bits.
pub fn pi_value(precision: u32) -> Result<BigFloat> {
    if precision < MIN_PRECISION {
        return Err(Error::PrecisionTooLow(precision));
    }
    {
        let cache = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = cache.as_ref().and_then(|m| m.get(&precision)) {
            return Ok(v.clone());
        }
    }
    let guard = 64 + (precision as f64).log2().ceil() as u64;
    let bits = precision as u64 + guard;
    let fixed = arctan_inv(5, bits) * 16 - arctan_inv(239, bits) * 4;
    let q = Rational::new(fixed, BigInt::one() << bits as usize);
    let value = BigFloat::from_rational(&q, precision);
    PI_CACHE
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .insert(precision, value.clone());
    Ok(value)
}

/// 320 significant digits of pi, used as the test oracle.
pub const PI_REFERENCE: &str = "3.\
1415926535897932384626433832795028841971693993751058209749445923078164062862\
0899862803482534211706798214808651328230664709384460955058223172535940812848\
1117450284102701938521105559644622948954930381964428810975665933446128475648\
2337867831652712019091456485669234603486104543266482133936072602491412737245\
870066063155882";

/// The reference digits as an exact rational.
pub fn pi_reference() -> Rational {
    let digits: String = PI_REFERENCE
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect();
    let frac_len = digits.len() - 1;
    Rational::new(
        digits.parse::<BigInt>().expect("reference digits"),
        num_traits::pow(BigInt::from(10), frac_len),
    )
}
