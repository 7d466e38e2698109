//! Exact integers and rationals: factorials, binomials, Bernoulli numbers
//! and the `lambda_g` Hodge integrals `b_g`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division
    // is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Memo for `B_0, B_1, ...`, grown on demand.
static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_n` with `B_1 = -1/2`, from the recurrence
/// `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli(n: u32) -> Rational {
    let mut memo = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if memo.is_empty() {
        memo.push(Rational::one());
    }
    while memo.len() <= n as usize {
        let m = memo.len() as u32;
        let value = if m >= 3 && m % 2 == 1 {
            Rational::zero()
        } else {
            // Pascal row n+1 = m+1, built left to right.
            let mut sum = Rational::zero();
            let mut c = BigInt::one();
            for (k, b) in memo.iter().enumerate() {
                if !b.is_zero() {
                    sum += b * &c;
                }
                c = c * (m + 1 - k as u32) / (k as u32 + 1);
            }
            // c is now C(m+1, m).
            -sum / Rational::from_integer(c)
        };
        memo.push(value);
    }
    memo[n as usize].clone()
}

/// `b_g = int_{M_{g,1}} lambda_g psi^{2g-2}`, equivalently the coefficient
/// of `t^{2g}` in `(t/2) / sin(t/2)`. `b_0 = 1`.
pub fn b_coeff(g: u32) -> Rational {
    if g == 0 {
        return Rational::one();
    }
    let pow = BigInt::one() << (2 * g - 1);
    let ratio = Rational::new(&pow - 1, pow);
    ratio * bernoulli(2 * g).abs() / Rational::from_integer(factorial(2 * g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        let iterated = (1..=20u64).product::<u64>();
        assert_eq!(factorial(20), BigInt::from(iterated));
        assert_eq!(factorial(20), "2432902008176640000".parse().unwrap());
    }

    #[test]
    fn binomials_match_pascal() {
        let mut row = vec![BigInt::one()];
        for n in 1..=30u32 {
            let mut next = vec![BigInt::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize], "C({n},{k})");
            }
        }
        assert!(binomial(3, 4).is_zero());
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_residual_vanishes() {
        for n in 1..=60u32 {
            let s: Rational = (0..=n)
                .map(|k| bernoulli(k) * int(binomial(n + 1, k)))
                .sum();
            assert!(s.is_zero(), "n = {n}");
        }
        for n in 1..=40u32 {
            assert!(bernoulli(2 * n + 1).is_zero());
        }
    }

    #[test]
    fn b_coeff_values() {
        assert_eq!(b_coeff(0), rat(1, 1));
        assert_eq!(b_coeff(1), rat(1, 24));
        assert_eq!(b_coeff(2), rat(7, 5760));
        assert_eq!(b_coeff(3), rat(31, 967680));
        assert!((0..60).all(|g| b_coeff(g).is_positive()));
    }
}
