//! Truncated power series in `t` with only even powers.
//!
//! Coefficients are stored by half-degree: entry `h` is the coefficient of
//! `t^(2h)`. A series carries its truncation order `N` (the largest valid
//! half-degree); binary operations keep the smaller of the two orders.

use crate::error::{Error, Result};
use crate::exact::{b_coeff, factorial, Rational};
use crate::exec;
use crate::ring::{ExactRing, IntDivisible};

#[derive(Clone, Debug, PartialEq)]
pub struct EvenSeries<R> {
    coeffs: Vec<R>,
}

impl<R: ExactRing> EvenSeries<R> {
    /// Series from half-degree coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        EvenSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        EvenSeries {
            coeffs: vec![R::zero_elem(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one_elem();
        s
    }

    /// Pads or cuts `coeffs` to exactly `order + 1` entries.
    pub fn from_prefix(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero_elem());
        EvenSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^(2h)`; `None` beyond the truncation order.
    pub fn coeff(&self, h: usize) -> Option<&R> {
        self.coeffs.get(h)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        EvenSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        EvenSeries {
            coeffs: (0..=n)
                .map(|h| self.coeffs[h].add_ref(&other.coeffs[h]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        EvenSeries {
            coeffs: (0..=n)
                .map(|h| self.coeffs[h].sub_ref(&other.coeffs[h]))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        EvenSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order. Output coefficients
    /// are independent and computed through [`exec::map_range`].
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = exec::map_range(0..n + 1, |h| {
            let mut acc = R::zero_elem();
            for i in 0..=h {
                if a[i].is_zero_elem() || b[h - i].is_zero_elem() {
                    continue;
                }
                acc = acc.add_ref(&a[i].mul_ref(&b[h - i]));
            }
            acc
        });
        EvenSeries { coeffs }
    }

    /// Coefficient of `t^(2h)` in `self * other`, without forming the product.
    pub fn mul_coeff(&self, other: &Self, h: usize) -> Option<R> {
        if h > self.order().min(other.order()) {
            return None;
        }
        let mut acc = R::zero_elem();
        for i in 0..=h {
            let (x, y) = (&self.coeffs[i], &other.coeffs[h - i]);
            if !x.is_zero_elem() && !y.is_zero_elem() {
                acc = acc.add_ref(&x.mul_ref(y));
            }
        }
        Some(acc)
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl<R: IntDivisible> EvenSeries<R> {
    /// Formal logarithm; requires constant term 1.
    ///
    /// With `s = t^2`, `s L' = s f' / f` gives
    /// `h L_h = h f_h - sum_{k=1}^{h-1} k L_k f_{h-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one_elem() {
            return Err(Error::LogConstantTerm(format!("{:?}", self.coeffs[0])));
        }
        let f = &self.coeffs;
        let mut l: Vec<R> = Vec::with_capacity(f.len());
        l.push(R::zero_elem());
        for h in 1..f.len() {
            let mut acc = f[h].scale_i64(h as i64);
            for k in 1..h {
                if l[k].is_zero_elem() || f[h - k].is_zero_elem() {
                    continue;
                }
                acc = acc.sub_ref(&l[k].mul_ref(&f[h - k]).scale_i64(k as i64));
            }
            l.push(acc.div_i64(h as i64));
        }
        Ok(EvenSeries { coeffs: l })
    }

    /// Formal exponential; requires constant term 0.
    ///
    /// `h E_h = sum_{k=1}^{h} k L_k E_{h-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elem() {
            return Err(Error::ExpConstantTerm(format!("{:?}", self.coeffs[0])));
        }
        let l = &self.coeffs;
        let mut e: Vec<R> = Vec::with_capacity(l.len());
        e.push(R::one_elem());
        for h in 1..l.len() {
            let mut acc = R::zero_elem();
            for k in 1..=h {
                if l[k].is_zero_elem() {
                    continue;
                }
                acc = acc.add_ref(&l[k].mul_ref(&e[h - k]).scale_i64(k as i64));
            }
            e.push(acc.div_i64(h as i64));
        }
        Ok(EvenSeries { coeffs: e })
    }

    /// `self^n` for constant term 1 via the power recurrence
    /// `h p_h = sum_{j=1}^{h} ((n+1) j - h) f_j p_{h-j}`, which is what
    /// `exp(n log self)` unrolls to without materializing the logarithm.
    pub fn pow_recurrence(&self, n: i64) -> Result<Self> {
        if !self.coeffs[0].is_one_elem() {
            return Err(Error::LogConstantTerm(format!("{:?}", self.coeffs[0])));
        }
        let f = &self.coeffs;
        let mut p: Vec<R> = Vec::with_capacity(f.len());
        p.push(R::one_elem());
        for h in 1..f.len() {
            let mut acc = R::zero_elem();
            for j in 1..=h {
                if f[j].is_zero_elem() {
                    continue;
                }
                let w = (n + 1) * j as i64 - h as i64;
                if w == 0 {
                    continue;
                }
                acc = acc.add_ref(&f[j].mul_ref(&p[h - j]).scale_i64(w));
            }
            p.push(acc.div_i64(h as i64));
        }
        Ok(EvenSeries { coeffs: p })
    }

    /// `self^n` as `exp(n log self)`; requires constant term 1.
    pub fn pow_exp_log(&self, n: i64) -> Result<Self> {
        self.log()?.scale(&R::from_i64(n)).exp()
    }
}

/// `S(t) = (t/2) / sin(t/2)` to half-degree `order`, from `b_coeff`.
pub fn s_series(order: usize) -> EvenSeries<Rational> {
    EvenSeries::new((0..=order as u32).map(b_coeff).collect())
}

/// Taylor series of `sin(t/2) / (t/2) = sum_h (-1)^h t^(2h) / (4^h (2h+1)!)`.
pub fn sinc_half_series(order: usize) -> EvenSeries<Rational> {
    EvenSeries::new(
        (0..=order as u32)
            .map(|h| {
                let den = Rational::from_integer(factorial(2 * h + 1) << (2 * h as usize));
                let sign = if h % 2 == 0 { 1 } else { -1 };
                Rational::from_i64(sign) / den
            })
            .collect(),
    )
}
