use std::io::Write;

use strata_core::bigfloat::{pi_value, BigFloat};
use strata_core::invariants::{rescaled_residuals, strata_rows, Normalization};
use strata_core::recursion::StrataSequences;

use crate::args::PlotdataArgs;
use crate::error::{CliError, CliResult};
use crate::expand::normalization_name;

/// Working precision of the plot columns, in bits.
pub const PRECISION: u32 = 256;
const DIGITS: usize = 15;

/// Limit of `g |eps1|` for large `g`: `pi^2/12` with the `(2g-1)/4`
/// prefactor, `1/2 + pi^2/12` with `(2g-2)/4`.
pub fn eps1_limit(normalization: Normalization) -> f64 {
    let base = std::f64::consts::PI.powi(2) / 12.0;
    match normalization {
        Normalization::Conjecture => base,
        Normalization::Theorem => base + 0.5,
    }
}

pub fn run(args: &PlotdataArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.gmax < 2 {
        return Err(CliError::Usage("--gmax must be at least 2".into()));
    }
    let normalization = Normalization::from(args.normalization);
    let seq = StrataSequences::compute(args.gmax)?;
    let rows = strata_rows(&seq, PRECISION)?;
    let first = match normalization {
        Normalization::Conjecture => 1,
        Normalization::Theorem => 2,
    };

    writeln!(out, "# minstrata plotdata, stratum H(2g-2)")?;
    writeln!(
        out,
        "# normalization: {}",
        normalization_name(normalization)
    )?;
    writeln!(out, "# precision_bits: {PRECISION}")?;
    writeln!(out, "# gmax: {}", args.gmax)?;
    if first == 2 {
        writeln!(out, "# g = 1 omitted: the factor 2g-2 vanishes")?;
    }
    writeln!(out, "g,g_abs_eps1,g_abs_eps2,rescaled_eps1,rescaled_eps2")?;

    // Used to rescale eps1 for the chosen normalization: -eps1 * 12g / pi^2.
    let work = PRECISION + 16;
    let pi = pi_value(work)?;
    let pi2 = pi.mul(&pi);
    let mut series = Vec::new();
    for row in rows.iter().filter(|r| r.g >= first) {
        let g = BigFloat::from_integer(row.g, work);
        let eps1 = row.eps1(normalization);
        let g_eps1 = eps1.abs().mul(&g);
        let g_eps2 = row.eps2.abs().mul(&g);
        let rescaled1 = eps1
            .mul(&g)
            .mul(&BigFloat::from_integer(-12, work))
            .div(&pi2)?;
        let rescaled2 = rescaled_residuals(row)?.eps2;
        writeln!(
            out,
            "{},{},{},{},{}",
            row.g,
            g_eps1.to_decimal(DIGITS),
            g_eps2.to_decimal(DIGITS),
            rescaled1.to_decimal(DIGITS),
            rescaled2.to_decimal(DIGITS)
        )?;
        series.push(g_eps1.to_f64());
    }

    let limit = eps1_limit(normalization);
    let last = *series.last().expect("at least one row");
    let gaps: Vec<f64> = series.iter().map(|v| (v - limit).abs()).collect();
    let monotone = gaps.windows(2).all(|w| w[1] <= w[0]);
    writeln!(
        out,
        "# trend: g*|eps1| = {last:.6} at g = {}, limit {limit:.6}, relative gap {:.2}%, monotone approach: {}",
        args.gmax,
        100.0 * (last - limit).abs() / limit,
        if monotone { "yes" } else { "no" }
    )?;
    Ok(())
}
