//! The sequences `a_g` and `d_g`.
//!
//! The fast path solves the generating-function identities
//!
//! ```text
//! [t^2g]   S(t) = 1/(2g)!     [t^2g] F(t)^2g
//! [t^2g-2] S(t) = 2/(2g-1)!   [t^2g] (Delta F(t)^(2g-1))
//! ```
//!
//! one genus at a time: the unknown `a_g` (resp. `d_g`) enters the right-hand
//! side linearly with coefficient `2g(2g-1)` (resp. `2g-1`). The slow path
//! enumerates ordered compositions of `g` and serves as an oracle.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{b_coeff, factorial, Rational};
use crate::exec;
use crate::series::EvenSeries;

/// How `[t^2g] F^n` is evaluated in the solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PowerMethod {
    /// `exp(n log F)`.
    ExpLog,
    /// Repeated squaring.
    Binary,
    /// The power recurrence, [`EvenSeries::pow_recurrence`]: `exp(n log F)`
    /// unrolled into a single pass.
    #[default]
    Recurrence,
}

/// `a_1..a_G`, `d_1..d_G` and `b_0..b_G`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrataSequences {
    a: Vec<Rational>,
    d: Vec<Rational>,
    b: Vec<Rational>,
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

fn series_power(f: &EvenSeries<Rational>, n: u32, method: PowerMethod) -> EvenSeries<Rational> {
    match method {
        PowerMethod::ExpLog => f.pow_exp_log(n as i64).expect("F has constant term 1"),
        PowerMethod::Binary => f.pow(n as u64),
        PowerMethod::Recurrence => f.pow_recurrence(n as i64).expect("F has constant term 1"),
    }
}

/// `1 + sum_{i<g} (2i-1) x_i t^2i`, padded with zeros to half-degree `order`;
/// entry `i - 1` of `xs` is `x_i`. With `constant = false` the leading 1 is
/// dropped (the shape of `Delta`).
fn odd_weighted(xs: &[Rational], order: usize, constant: bool) -> EvenSeries<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(if constant {
        Rational::one()
    } else {
        Rational::zero()
    });
    for (i, x) in xs.iter().enumerate().take(order) {
        coeffs.push(x * Rational::from_integer((2 * i as i64 + 1).into()));
    }
    EvenSeries::from_prefix(coeffs, order)
}

/// Extends `a` (holding `a_1..a_k`) up to `a_{g_max}`.
pub fn extend_a(a: &mut Vec<Rational>, g_max: u32, method: PowerMethod) {
    for g in (a.len() as u32 + 1)..=g_max {
        let order = g as usize;
        let f_below = odd_weighted(a, order, true);
        let known = series_power(&f_below, 2 * g, method)
            .coeff(order)
            .cloned()
            .expect("order g");
        let target = fact(2 * g) * b_coeff(g);
        let slope = Rational::from_integer((2 * g as i64 * (2 * g as i64 - 1)).into());
        a.push((target - known) / slope);
    }
}

/// Extends `d` (holding `d_1..d_k`) up to `d_{g_max}`; `a` must already
/// reach `g_max`.
///
/// The powers `F^(2g-1)` depend on `a` only, so they are formed up front
/// (in parallel when enabled); the `d` recursion itself then needs one
/// product coefficient per genus.
pub fn extend_d(
    d: &mut Vec<Rational>,
    a: &[Rational],
    g_max: u32,
    method: PowerMethod,
) -> Result<()> {
    if (a.len() as u32) < g_max {
        return Err(Error::NotComputed {
            have: a.len() as u32,
            need: g_max,
        });
    }
    let first = d.len() as u32 + 1;
    if first > g_max {
        return Ok(());
    }
    let powers = exec::map_range(first as usize..g_max as usize + 1, |g| {
        let f = odd_weighted(&a[..g], g, true);
        series_power(&f, 2 * g as u32 - 1, method)
    });
    for (g, power) in (first..=g_max).zip(powers) {
        let order = g as usize;
        let delta_below = odd_weighted(d, order, false);
        let known = delta_below.mul_coeff(&power, order).expect("order g");
        let target = fact(2 * g - 1) * b_coeff(g - 1) / Rational::from_integer(2.into());
        let slope = Rational::from_integer((2 * g as i64 - 1).into());
        d.push((target - known) / slope);
    }
    Ok(())
}

/// `a_1..a_{g_max}` by the generating-function solver.
pub fn solve_a(g_max: u32) -> Result<Vec<Rational>> {
    if g_max < 1 {
        return Err(Error::GenusOutOfRange { got: g_max, min: 1 });
    }
    let mut a = Vec::new();
    extend_a(&mut a, g_max, PowerMethod::default());
    Ok(a)
}

/// `d_1..d_{g_max}` from `a_1..a_{g_max}`.
pub fn solve_d(a: &[Rational], g_max: u32) -> Result<Vec<Rational>> {
    if g_max < 1 {
        return Err(Error::GenusOutOfRange { got: g_max, min: 1 });
    }
    let mut d = Vec::new();
    extend_d(&mut d, a, g_max, PowerMethod::default())?;
    Ok(d)
}

impl StrataSequences {
    pub fn compute(g_max: u32) -> Result<Self> {
        Self::compute_with(g_max, PowerMethod::default())
    }

    pub fn compute_with(g_max: u32, method: PowerMethod) -> Result<Self> {
        if g_max < 1 {
            return Err(Error::GenusOutOfRange { got: g_max, min: 1 });
        }
        let mut a = Vec::new();
        extend_a(&mut a, g_max, method);
        let mut d = Vec::new();
        extend_d(&mut d, &a, g_max, method)?;
        let b = (0..=g_max).map(b_coeff).collect();
        Ok(StrataSequences { a, d, b })
    }

    /// Builds from stored values without recomputing; see [`Self::validate`].
    pub fn from_parts(a: Vec<Rational>, d: Vec<Rational>) -> Result<Self> {
        if a.len() != d.len() || a.is_empty() {
            return Err(Error::GenusOutOfRange {
                got: a.len().min(d.len()) as u32,
                min: 1,
            });
        }
        let b = (0..=a.len() as u32).map(b_coeff).collect();
        Ok(StrataSequences { a, d, b })
    }

    /// Continues the recursion up to `g_max` (no-op if already there).
    pub fn extend(&mut self, g_max: u32) -> Result<()> {
        extend_a(&mut self.a, g_max, PowerMethod::default());
        extend_d(&mut self.d, &self.a, g_max, PowerMethod::default())?;
        while (self.b.len() as u32) <= g_max {
            self.b.push(b_coeff(self.b.len() as u32));
        }
        Ok(())
    }

    pub fn g_max(&self) -> u32 {
        self.a.len() as u32
    }

    /// `a_g` for `1 <= g <= g_max`.
    pub fn a(&self, g: u32) -> &Rational {
        &self.a[g as usize - 1]
    }

    pub fn d(&self, g: u32) -> &Rational {
        &self.d[g as usize - 1]
    }

    /// `b_g` for `0 <= g <= g_max`.
    pub fn b(&self, g: u32) -> &Rational {
        &self.b[g as usize]
    }

    pub fn a_values(&self) -> &[Rational] {
        &self.a
    }

    pub fn d_values(&self) -> &[Rational] {
        &self.d
    }

    /// Positivity and the bounds `a_g <= (2g-2)! b_g`,
    /// `2 d_g <= (2g-2)! b_{g-1}`. Returns the list of violations.
    pub fn inequality_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for g in 1..=self.g_max() {
            let (a, d) = (self.a(g), self.d(g));
            let f = fact(2 * g - 2);
            if !a.is_positive() {
                bad.push(format!("a_{g} = {a} is not positive"));
            }
            if !d.is_positive() {
                bad.push(format!("d_{g} = {d} is not positive"));
            }
            if a > &(&f * self.b(g)) {
                bad.push(format!("a_{g} > (2g-2)! b_g"));
            }
            if d * Rational::from_integer(2.into()) > &f * self.b(g - 1) {
                bad.push(format!("2 d_{g} > (2g-2)! b_(g-1)"));
            }
        }
        bad
    }

    /// `a_g / ((2g-2)! b_g)` and `2 d_g / ((2g-2)! b_{g-1})`.
    pub fn leading_ratios(&self, g: u32) -> (Rational, Rational) {
        let f = fact(2 * g - 2);
        (
            self.a(g) / (&f * self.b(g)),
            self.d(g) * Rational::from_integer(2.into()) / (&f * self.b(g - 1)),
        )
    }

    /// Checks `(1 - margin/g, 1]` for both leading ratios, `2 <= g <= g_max`.
    pub fn leading_ratio_violations(&self, margin: i64) -> Vec<u32> {
        (2..=self.g_max())
            .filter(|&g| {
                let lo = Rational::one() - Rational::new(margin.into(), g.into());
                let (ra, rd) = self.leading_ratios(g);
                !(ra > lo && ra <= Rational::one() && rd > lo && rd <= Rational::one())
            })
            .collect()
    }
}

/// Calls `f` with every ordered composition of `n` into positive parts.
/// `n = 0` yields the single empty composition.
pub fn for_each_composition(n: u32, f: &mut impl FnMut(&[u32])) {
    fn go(rest: u32, parts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if rest == 0 {
            f(parts);
            return;
        }
        for first in 1..=rest {
            parts.push(first);
            go(rest - first, parts, f);
            parts.pop();
        }
    }
    go(n, &mut Vec::new(), f);
}

/// `prod_j (2 g_j - 1) x_{g_j}` over the parts; `x[i-1] = x_i`.
fn weighted_product(parts: &[u32], x: &[Rational]) -> Rational {
    parts.iter().fold(Rational::one(), |acc, &p| {
        acc * &x[p as usize - 1] * Rational::from_integer((2 * p as i64 - 1).into())
    })
}

/// `sum_k 1/(k! (2g-k)!) sum_{compositions of g into k parts} prod (2d_j-1) a_{d_j}`.
/// Exponential in `g`; intended for `g <= 10`.
pub fn oracle_b_from_a(g: u32, a: &[Rational]) -> Rational {
    let mut sum = Rational::zero();
    for_each_composition(g, &mut |parts| {
        let k = parts.len() as u32;
        sum += weighted_product(parts, a) / (fact(k) * fact(2 * g - k));
    });
    sum
}

/// `sum_{g'} sum_k (2g'-1) d_{g'} / (k! (2g-1-k)!) sum_{compositions of g-g'
/// into k parts} prod (2g_i-1) a_{g_i}`; equals `b_{g-1}/2` for the true
/// sequences.
pub fn oracle_rhs_d(g: u32, a: &[Rational], d: &[Rational]) -> Rational {
    let mut sum = Rational::zero();
    for gp in 1..=g {
        let lead = &d[gp as usize - 1] * Rational::from_integer((2 * gp as i64 - 1).into());
        for_each_composition(g - gp, &mut |parts| {
            let k = parts.len() as u32;
            sum += &lead * weighted_product(parts, a) / (fact(k) * fact(2 * g - 1 - k));
        });
    }
    sum
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheckRow {
    pub g: u32,
    pub b_oracle: Rational,
    pub b_expected: Rational,
    pub d_oracle: Rational,
    pub d_expected: Rational,
}

impl CrossCheckRow {
    pub fn a_ok(&self) -> bool {
        self.b_oracle == self.b_expected
    }

    pub fn d_ok(&self) -> bool {
        self.d_oracle == self.d_expected
    }
}

/// Compares both oracles with `b_g` and `b_{g-1}/2` for `g <= g_oracle_max`.
pub fn cross_check_rows(a: &[Rational], d: &[Rational], g_oracle_max: u32) -> Vec<CrossCheckRow> {
    let top = g_oracle_max.min(a.len() as u32).min(d.len() as u32);
    exec::map_range(1..top as usize + 1, |g| {
        let g = g as u32;
        CrossCheckRow {
            g,
            b_oracle: oracle_b_from_a(g, a),
            b_expected: b_coeff(g),
            d_oracle: oracle_rhs_d(g, a, d),
            d_expected: b_coeff(g - 1) / Rational::from_integer(2.into()),
        }
    })
}

/// Like [`cross_check_rows`] but fails on the first mismatch.
pub fn cross_check(seq: &StrataSequences, g_oracle_max: u32) -> Result<Vec<CrossCheckRow>> {
    if seq.g_max() < g_oracle_max {
        return Err(Error::NotComputed {
            have: seq.g_max(),
            need: g_oracle_max,
        });
    }
    let rows = cross_check_rows(seq.a_values(), seq.d_values(), g_oracle_max);
    for row in &rows {
        if !row.a_ok() {
            return Err(Error::OracleMismatch {
                g: row.g,
                which: "b_g from a",
                solver: Box::new(row.b_expected.clone()),
                oracle: Box::new(row.b_oracle.clone()),
            });
        }
        if !row.d_ok() {
            return Err(Error::OracleMismatch {
                g: row.g,
                which: "b_(g-1)/2 from d",
                solver: Box::new(row.d_expected.clone()),
                oracle: Box::new(row.d_oracle.clone()),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn first_values() {
        let seq = StrataSequences::compute(3).unwrap();
        assert_eq!(seq.a_values(), &[rat(1, 24), rat(1, 640), rat(305, 580608)]);
        assert_eq!(seq.d_values(), &[rat(1, 2), rat(1, 48), rat(91, 11520)]);
        assert_eq!(seq.b(0), &rat(1, 1));
    }

    #[test]
    fn hand_relations() {
        // a_2 / 2 = b_2 - a_1^2 / 4 and b_1 / 2 = d_2 / 2 + d_1 a_1 / 2.
        let seq = StrataSequences::compute(2).unwrap();
        let (a1, a2) = (seq.a(1), seq.a(2));
        assert_eq!(a2 / rat(2, 1), b_coeff(2) - a1 * a1 / rat(4, 1));
        assert_eq!(
            b_coeff(1) / rat(2, 1),
            seq.d(2) / rat(2, 1) + seq.d(1) * a1 / rat(2, 1)
        );
    }

    #[test]
    fn power_methods_agree() {
        let r = StrataSequences::compute_with(12, PowerMethod::Recurrence).unwrap();
        let e = StrataSequences::compute_with(12, PowerMethod::ExpLog).unwrap();
        let b = StrataSequences::compute_with(12, PowerMethod::Binary).unwrap();
        assert_eq!(r, e);
        assert_eq!(r, b);
    }

    #[test]
    fn extend_matches_fresh() {
        let mut s = StrataSequences::compute(4).unwrap();
        s.extend(9).unwrap();
        assert_eq!(s, StrataSequences::compute(9).unwrap());
    }

    #[test]
    fn rejects_genus_zero() {
        assert!(matches!(solve_a(0), Err(Error::GenusOutOfRange { .. })));
        assert!(StrataSequences::compute(0).is_err());
        assert!(matches!(
            solve_d(&[rat(1, 24)], 2),
            Err(Error::NotComputed { .. })
        ));
    }

    #[test]
    fn compositions_enumerated() {
        let mut all = Vec::new();
        for_each_composition(3, &mut |p| all.push(p.to_vec()));
        assert_eq!(all, vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
        let mut count = 0;
        for_each_composition(0, &mut |p| {
            assert!(p.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
        let mut n8 = 0;
        for_each_composition(8, &mut |_| n8 += 1);
        assert_eq!(n8, 128);
    }

    #[test]
    fn oracle_examples() {
        let a = [rat(1, 24), rat(1, 640), rat(305, 580608)];
        let d = [rat(1, 2), rat(1, 48), rat(91, 11520)];
        assert_eq!(oracle_b_from_a(1, &a), rat(1, 24));
        assert_eq!(oracle_b_from_a(2, &a), rat(7, 5760));
        assert_eq!(oracle_b_from_a(3, &a), rat(31, 967680));
        assert_eq!(oracle_rhs_d(1, &a, &d), rat(1, 2));
        assert_eq!(oracle_rhs_d(2, &a, &d), rat(1, 48));
        assert_eq!(oracle_rhs_d(3, &a, &d), rat(7, 11520));
    }

    #[test]
    fn cross_check_detects_perturbation() {
        let seq = StrataSequences::compute(8).unwrap();
        assert_eq!(cross_check(&seq, 8).unwrap().len(), 8);
        let mut a = seq.a_values().to_vec();
        a[1] += rat(1, 1_000_000);
        let bad = StrataSequences::from_parts(a, seq.d_values().to_vec()).unwrap();
        match cross_check(&bad, 3) {
            Err(Error::OracleMismatch { g, .. }) => assert_eq!(g, 2),
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn inequalities_and_ratios() {
        let seq = StrataSequences::compute(30).unwrap();
        assert!(seq.inequality_violations().is_empty());
        assert!(seq.leading_ratio_violations(2).is_empty());
    }
}
