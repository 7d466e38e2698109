//! Symbolic large-genus expansions of `Vol(2g-2)` and `c_area(2g-2)`.
//!
//! For a fixed number `n` of equations the recursions give two upper
//! triangular systems in the unknowns `u_i = (2(g-i)-1) a_{g-i}` and
//! `v_i = (2(g-i)-1) d_{g-i}`, `0 <= i < n`:
//!
//! ```text
//! sum_{i>=k} c1_{i-k}(g-k) u_i                               = (2g-2k)!   b_{g-k}
//! sum_{i>=k} c2_{i-k}(g-k) v_i + sum_{i>k} c3_{i-k}(g-k) u_i = (2g-2k-1)! b_{g-k-1}
//! ```
//!
//! where `c1_k(g) = [x^2k] 2g F^(2g-1)`, `c2_k(g) = [x^2k] 2 F^(2g-1)` and
//! `c3_k(g) = [x^2k] 2(2g-1) Delta F^(2g-2)` are polynomials in `g`. Each row
//! drops terms of relative size `O(g^-n)`. Back-substitution over `Q(g)`
//! writes `u_0` and `v_0` as combinations of the terms `(2g-m)! b_{g-h}`,
//! and dividing by `(2g)! b_g` turns those into
//! `(4 pi^2)^h / prod_{j<m} (2g-j)` up to super-polynomially small factors.

// The triangular solves read most naturally with explicit indices.
#![allow(clippy::needless_range_loop)]
use std::collections::BTreeMap;

use num_traits::One;

use crate::asymp::AsympExpansion;
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::exec;
use crate::invariants::{c_area, volume, Normalization};
use crate::pi_laurent::PiLaurent;
use crate::poly::{GPoly, GRatFunc};
use crate::recursion::StrataSequences;
use crate::ring::ExactRing;
use crate::series::EvenSeries;

/// Extra equations beyond the requested order.
pub const GUARD_ORDERS: usize = 2;

/// `P_i(lambda) = [x^2i] exp(lambda log F)` for `i = 0..=max`, as
/// polynomials in `lambda`. `log_f` must reach half-degree `max`.
pub fn exp_lambda_coeffs(log_f: &EvenSeries<Rational>, max: usize) -> Vec<GPoly> {
    let scaled: Vec<GPoly> = log_f.coeffs()[..=max]
        .iter()
        .map(|c| GPoly::var().scale(c))
        .collect();
    EvenSeries::new(scaled)
        .exp()
        .expect("log F has zero constant term")
        .coeffs()
        .to_vec()
}

/// `P_i(lambda)` alone.
pub fn exp_lambda_coeff(i: usize, log_f: &EvenSeries<Rational>) -> GPoly {
    exp_lambda_coeffs(log_f, i).pop().expect("nonempty")
}

/// `log F` from `a_1..a_max`.
pub fn log_f_series(seq: &StrataSequences, max: usize) -> EvenSeries<Rational> {
    let mut coeffs = vec![Rational::one()];
    for i in 1..=max as u32 {
        coeffs.push(seq.a(i) * Rational::from_integer((2 * i as i64 - 1).into()));
    }
    EvenSeries::new(coeffs)
        .log()
        .expect("F has constant term 1")
}

/// The three coefficient families `c1_k`, `c2_k`, `c3_k` for `k = 0..=r`, as
/// polynomials in `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct QCoefficients {
    pub c1: Vec<GPoly>,
    pub c2: Vec<GPoly>,
    pub c3: Vec<GPoly>,
}

/// Needs `a_1..a_r` and `d_1..d_r`.
pub fn q_coefficients(seq: &StrataSequences, r: usize) -> Result<QCoefficients> {
    if (seq.g_max() as usize) < r {
        return Err(Error::NotComputed {
            have: seq.g_max(),
            need: r as u32,
        });
    }
    let p = exp_lambda_coeffs(&log_f_series(seq, r), r);
    let two_g = GPoly::linear(2, 0);
    let two_g_minus_1 = GPoly::linear(2, -1);
    let two_g_minus_2 = GPoly::linear(2, -2);
    let at_odd: Vec<GPoly> = p.iter().map(|pk| pk.compose(&two_g_minus_1)).collect();
    let at_even: Vec<GPoly> = p.iter().map(|pk| pk.compose(&two_g_minus_2)).collect();
    let c1 = at_odd.iter().map(|x| x.mul_ref(&two_g)).collect();
    let c2 = at_odd.iter().map(|x| x.scale_i64(2)).collect();
    let c3 = (0..=r)
        .map(|k| {
            let sum = (1..=k).fold(GPoly::zero(), |acc, j| {
                let w = seq.d(j as u32) * Rational::from_integer((2 * j as i64 - 1).into());
                acc.add_ref(&at_even[k - j].scale(&w))
            });
            sum.mul_ref(&two_g_minus_1).scale_i64(2)
        })
        .collect();
    Ok(QCoefficients { c1, c2, c3 })
}

/// The symbolic quantity `(2g - m)! b_{g-h}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BTerm {
    pub factorial_drop: u32,
    pub b_drop: u32,
}

impl BTerm {
    /// `(2g-m)! b_{g-h} / ((2g)! b_g)` with the exponentially small
    /// corrections dropped: `(4 pi^2)^h / prod_{j<m} (2g - j)`, returned as
    /// the pair (power of `pi^2`, rational function in `g`).
    pub fn normalized(self) -> (i32, GRatFunc) {
        let den = (0..self.factorial_drop).fold(GPoly::one(), |acc, j| {
            acc.mul_ref(&GPoly::linear(2, -(j as i64)))
        });
        let four_pow = Rational::from_integer(num_bigint::BigInt::from(4).pow(self.b_drop));
        let f = GRatFunc::new(GPoly::constant(four_pow), den).expect("nonzero");
        (self.b_drop as i32, f)
    }
}

/// Linear combination of [`BTerm`]s with coefficients in `Q(g)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BCombination {
    terms: BTreeMap<BTerm, GRatFunc>,
}

impl BCombination {
    pub fn single(term: BTerm) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(term, GRatFunc::one());
        BCombination { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BTerm, &GRatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &BCombination, factor: &GRatFunc) {
        for (t, c) in &other.terms {
            let entry = self.terms.entry(*t).or_insert_with(GRatFunc::zero);
            *entry = entry.add_ref(&c.mul_ref(factor));
            if entry.is_zero() {
                self.terms.remove(t);
            }
        }
    }

    pub fn scale(&self, factor: &GRatFunc) -> BCombination {
        let mut out = BCombination::default();
        out.add_scaled(self, factor);
        out
    }

    /// Divides by `(2g)! b_g` and collects by power of `pi^2`.
    pub fn normalized(&self) -> BTreeMap<i32, GRatFunc> {
        let mut out: BTreeMap<i32, GRatFunc> = BTreeMap::new();
        for (t, c) in &self.terms {
            let (p, f) = t.normalized();
            let entry = out.entry(p).or_insert_with(GRatFunc::zero);
            *entry = entry.add_ref(&f.mul_ref(c));
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Expands `sum_p (pi^2)^p f_p(g)` at `g = infinity` to `O(g^-precision)`.
pub fn expand_pi_rational(parts: &BTreeMap<i32, GRatFunc>, precision: i32) -> AsympExpansion {
    let items: Vec<(i32, GRatFunc)> = parts.iter().map(|(&p, f)| (p, f.clone())).collect();
    exec::map_slice(&items, |(p, f)| {
        AsympExpansion::from_gratfunc(f, precision).scale(&PiLaurent::monomial(Rational::one(), *p))
    })
    .into_iter()
    .fold(AsympExpansion::zero(precision), |acc, e| acc.add(&e))
}

/// Solution of an upper triangular system by back-substitution over `Q(g)`.
fn back_substitute(matrix: &[Vec<GPoly>], rhs: &[BCombination]) -> Result<Vec<BCombination>> {
    let n = rhs.len();
    let mut sol: Vec<BCombination> = vec![BCombination::default(); n];
    for k in (0..n).rev() {
        let diag = &matrix[k][k];
        if diag.is_zero() {
            return Err(Error::ZeroDiagonal(k));
        }
        let mut acc = rhs[k].clone();
        for i in k + 1..n {
            if matrix[k][i].is_zero() {
                continue;
            }
            acc.add_scaled(&sol[i], &GRatFunc::from_poly(matrix[k][i].neg_ref()));
        }
        let inv = GRatFunc::from_poly(diag.clone()).inv()?;
        sol[k] = acc.scale(&inv);
    }
    Ok(sol)
}

/// The `a` system with `n` equations: entries `M[k][i] = c1_{i-k}(g-k)`.
pub fn a_system_matrix(q: &QCoefficients, n: usize) -> Vec<Vec<GPoly>> {
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    if i < k {
                        GPoly::zero()
                    } else {
                        q.c1[i - k].shift(-(k as i64))
                    }
                })
                .collect()
        })
        .collect()
}

/// The triangular part of the `d` system: `M[k][i] = c2_{i-k}(g-k)`.
pub fn d_system_matrix(q: &QCoefficients, n: usize) -> Vec<Vec<GPoly>> {
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    if i < k {
                        GPoly::zero()
                    } else {
                        q.c2[i - k].shift(-(k as i64))
                    }
                })
                .collect()
        })
        .collect()
}

/// Both truncated systems solved symbolically.
#[derive(Clone, Debug)]
pub struct SymbolicSolution {
    /// Number of equations.
    pub n: usize,
    pub q: QCoefficients,
    /// `u_i` in terms of `(2g-2j)! b_{g-j}`.
    pub u: Vec<BCombination>,
    /// `v_i` in terms of `(2g-m)! b_{g-h}`.
    pub v: Vec<BCombination>,
}

impl SymbolicSolution {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::GenusOutOfRange { got: 0, min: 1 });
        }
        let seq = StrataSequences::compute(n.max(1) as u32)?;
        let q = q_coefficients(&seq, n - 1)?;
        let a_rhs: Vec<BCombination> = (0..n as u32)
            .map(|k| {
                BCombination::single(BTerm {
                    factorial_drop: 2 * k,
                    b_drop: k,
                })
            })
            .collect();
        let u = back_substitute(&a_system_matrix(&q, n), &a_rhs)?;
        let d_rhs: Vec<BCombination> = (0..n)
            .map(|k| {
                let mut r = BCombination::single(BTerm {
                    factorial_drop: 2 * k as u32 + 1,
                    b_drop: k as u32 + 1,
                });
                for i in k + 1..n {
                    let c = q.c3[i - k].shift(-(k as i64)).neg_ref();
                    r.add_scaled(&u[i], &GRatFunc::from_poly(c));
                }
                r
            })
            .collect();
        let v = back_substitute(&d_system_matrix(&q, n), &d_rhs)?;
        Ok(SymbolicSolution { n, q, u, v })
    }

    /// `a_g = sum_j w_j (2g-2j)! b_{g-j}`; returns `w_0..w_{n-1}`.
    pub fn a_weights(&self) -> Vec<GRatFunc> {
        let inv = GRatFunc::from_poly(GPoly::linear(2, -1))
            .inv()
            .expect("nonzero");
        (0..self.n as u32)
            .map(|j| {
                self.u[0]
                    .terms()
                    .find(|(t, _)| t.factorial_drop == 2 * j && t.b_drop == j)
                    .map(|(_, c)| c.mul_ref(&inv))
                    .unwrap_or_else(GRatFunc::zero)
            })
            .collect()
    }

    /// `a_g / ((2g)! b_g)` grouped by power of `pi^2`.
    pub fn a_normalized(&self) -> BTreeMap<i32, GRatFunc> {
        divide_by_poly(&self.u[0].normalized(), &GPoly::linear(2, -1))
    }

    /// `d_g / ((2g)! b_g)` grouped by power of `pi^2`.
    pub fn d_normalized(&self) -> BTreeMap<i32, GRatFunc> {
        divide_by_poly(&self.v[0].normalized(), &GPoly::linear(2, -1))
    }

    /// Residuals `M u - rhs` of the `a` system; all zero for a correct solve.
    pub fn a_system_residuals(&self) -> Vec<BCombination> {
        let m = a_system_matrix(&self.q, self.n);
        (0..self.n)
            .map(|k| {
                let mut r = BCombination::single(BTerm {
                    factorial_drop: 2 * k as u32,
                    b_drop: k as u32,
                })
                .scale(&GRatFunc::from_i64(-1));
                for i in k..self.n {
                    r.add_scaled(&self.u[i], &GRatFunc::from_poly(m[k][i].clone()));
                }
                r
            })
            .collect()
    }

    /// Residuals of the `d` system including the `c3` coupling.
    pub fn d_system_residuals(&self) -> Vec<BCombination> {
        let m = d_system_matrix(&self.q, self.n);
        (0..self.n)
            .map(|k| {
                let mut r = BCombination::single(BTerm {
                    factorial_drop: 2 * k as u32 + 1,
                    b_drop: k as u32 + 1,
                })
                .scale(&GRatFunc::from_i64(-1));
                for i in k..self.n {
                    r.add_scaled(&self.v[i], &GRatFunc::from_poly(m[k][i].clone()));
                }
                for i in k + 1..self.n {
                    let c = self.q.c3[i - k].shift(-(k as i64));
                    r.add_scaled(&self.u[i], &GRatFunc::from_poly(c));
                }
                r
            })
            .collect()
    }

    /// `A(g)` with `a_g = (2g)! b_g A(g)`, valid to relative order `g^-n`.
    pub fn expand_a(&self) -> AsympExpansion {
        // A starts at g^-2.
        expand_pi_rational(&self.a_normalized(), 2 + self.n as i32)
    }

    /// `D(g)` with `d_g = (2g)! b_g D(g)`, valid to relative order `g^-n`.
    pub fn expand_d(&self) -> AsympExpansion {
        // D starts at g^-2.
        expand_pi_rational(&self.d_normalized(), 2 + self.n as i32)
    }

    /// `(factor(g)/4) Vol(2g-2) = factor(g) * 2g * A(g)`, valid through
    /// `g^-(n-1)`.
    pub fn volume_expansion(&self, normalization: Normalization) -> AsympExpansion {
        let factor = match normalization {
            Normalization::Conjecture => GPoly::linear(2, -1),
            Normalization::Theorem => GPoly::linear(2, -2),
        }
        .mul_ref(&GPoly::linear(2, 0));
        let parts = self
            .a_normalized()
            .into_iter()
            .map(|(p, f)| (p, f.mul_ref(&GRatFunc::from_poly(factor.clone()))))
            .collect();
        expand_pi_rational(&parts, self.n as i32)
    }

    /// `c_area = D / (4 pi^2 A)`, valid through `g^-(n-1)`.
    pub fn sv_expansion(&self) -> Result<AsympExpansion> {
        let four_p = PiLaurent::monomial(Rational::from_integer(4.into()), 1);
        self.expand_d().div(&self.expand_a().scale(&four_p))
    }
}

fn divide_by_poly(parts: &BTreeMap<i32, GRatFunc>, p: &GPoly) -> BTreeMap<i32, GRatFunc> {
    let inv = GRatFunc::from_poly(p.clone()).inv().expect("nonzero");
    parts.iter().map(|(&k, f)| (k, f.mul_ref(&inv))).collect()
}

/// Weights `w_0..w_{r-1}` of `a_g = sum_j w_j (2g-2j)! b_{g-j}` from the
/// `r`-equation system.
pub fn invert_a_system(r: usize) -> Result<Vec<GRatFunc>> {
    Ok(SymbolicSolution::new(r)?.a_weights())
}

/// `A(g)` from `r` equations (`r = 0` treated as one equation).
pub fn expand_normalized(r: usize) -> Result<AsympExpansion> {
    Ok(SymbolicSolution::new(r.max(1))?.expand_a())
}

fn checked_coefficients(e: &AsympExpansion, r: usize) -> Result<AsympExpansion> {
    let out = e.with_precision(r as i32 + 1);
    for k in 0..=r {
        let c = out.coeff(k as i32).expect("within precision");
        if !c.is_polynomial() {
            return Err(Error::NegativePiPower {
                index: k,
                value: c.to_string(),
            });
        }
    }
    Ok(out)
}

/// Expansion of `(factor/4) Vol(2g-2)` through `g^-r`, computed with
/// [`GUARD_ORDERS`] extra equations.
pub fn volume_expansion(r: usize, normalization: Normalization) -> Result<AsympExpansion> {
    volume_expansion_with_guard(r, normalization, GUARD_ORDERS)
}

pub fn volume_expansion_with_guard(
    r: usize,
    normalization: Normalization,
    guard: usize,
) -> Result<AsympExpansion> {
    let sol = SymbolicSolution::new(r + guard.max(1))?;
    checked_coefficients(&sol.volume_expansion(normalization), r)
}

/// Expansion of `c_area(2g-2)` through `g^-r`.
pub fn sv_expansion(r: usize) -> Result<AsympExpansion> {
    sv_expansion_with_guard(r, GUARD_ORDERS)
}

pub fn sv_expansion_with_guard(r: usize, guard: usize) -> Result<AsympExpansion> {
    let sol = SymbolicSolution::new(r + guard.max(1))?;
    checked_coefficients(&sol.sv_expansion()?, r)
}

/// Quantity compared against an expansion in [`verify_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Volume(Normalization),
    SiegelVeech,
}

/// Exact value of the target at genus `g`, evaluated numerically.
pub fn exact_target(
    target: Target,
    g: u32,
    a_g: &Rational,
    d_g: &Rational,
    precision: u32,
) -> Result<BigFloat> {
    match target {
        Target::Volume(n) => {
            let mut v = volume(g, a_g)?;
            v.rational_part *= Rational::new(n.factor(g).into(), 4.into());
            v.eval(precision)
        }
        Target::SiegelVeech => c_area(g, a_g, d_g)?.eval(precision),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderReport {
    pub order: usize,
    /// `(g, |exact - truncated expansion|)`.
    pub residuals: Vec<(u32, f64)>,
    pub slope: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Whether the residuals decrease strictly with `g`.
    pub monotone: bool,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| {
        let dx = x.ln() - mx;
        (a + dx * (y.ln() - my), b + dx * dx)
    });
    num / den
}

/// Residual decay check: passes iff the fitted slope is at most
/// `-(order + 0.5)`.
pub fn verify_order(
    expansion: &AsympExpansion,
    target: Target,
    seq: &StrataSequences,
    g_range: std::ops::RangeInclusive<u32>,
    order: usize,
    precision: u32,
) -> Result<OrderReport> {
    let (lo, hi) = (*g_range.start(), *g_range.end());
    if hi > seq.g_max() {
        return Err(Error::NotComputed {
            have: seq.g_max(),
            need: hi,
        });
    }
    if hi < lo + 2 {
        return Err(Error::TooFewPoints {
            got: (hi + 1).saturating_sub(lo) as usize,
            need: 3,
        });
    }
    let truncated = expansion.with_precision(order as i32 + 1);
    let gs: Vec<u32> = g_range.collect();
    let residuals: Vec<(u32, f64)> = exec::map_slice(&gs, |&g| -> Result<(u32, f64)> {
        let exact = exact_target(target, g, seq.a(g), seq.d(g), precision)?;
        let approx = truncated.eval(g, precision)?;
        let r = exact.sub(&approx).abs().to_f64();
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::BadResidual { g, value: r });
        }
        Ok((g, r))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let pts: Vec<(f64, f64)> = residuals.iter().map(|&(g, r)| (g as f64, r)).collect();
    let slope = log_log_slope(&pts);
    let threshold = -(order as f64 + 0.5);
    let monotone = residuals.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(OrderReport {
        order,
        residuals,
        slope,
        threshold,
        passed: slope <= threshold,
        monotone,
    })
}

/// Empirical estimate of the coefficient of `g^-k` from exact values:
/// fits `g^k (exact - sum_{j<k} c_j g^-j)` by a quadratic in `1/g` and
/// returns the intercept.
pub fn empirical_coefficient(
    expansion: &AsympExpansion,
    target: Target,
    seq: &StrataSequences,
    g_range: std::ops::RangeInclusive<u32>,
    k: usize,
    precision: u32,
) -> Result<f64> {
    let lower = expansion.with_precision(k as i32);
    let gs: Vec<u32> = g_range.collect();
    let samples: Vec<(f64, f64)> = exec::map_slice(&gs, |&g| -> Result<(f64, f64)> {
        let exact = exact_target(target, g, seq.a(g), seq.d(g), precision)?;
        let rest = exact.sub(&lower.eval(g, precision)?);
        let scaled = rest.mul(&BigFloat::from_integer(g, precision).powi(k as i64)?);
        Ok((1.0 / g as f64, scaled.to_f64()))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    Ok(quadratic_intercept(&samples))
}

/// Least-squares fit `y = c0 + c1 x + c2 x^2`; returns `c0`.
fn quadratic_intercept(samples: &[(f64, f64)]) -> f64 {
    // Normal equations, solved by Cramer's rule.
    let mut s = [0.0f64; 5];
    let mut t = [0.0f64; 3];
    for &(x, y) in samples {
        let mut p = 1.0;
        for (i, si) in s.iter_mut().enumerate() {
            *si += p;
            if i < 3 {
                t[i] += p * y;
            }
            p *= x;
        }
    }
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let m0 = [[t[0], s[1], s[2]], [t[1], s[2], s[3]], [t[2], s[3], s[4]]];
    det3(m0) / det3(m)
}
