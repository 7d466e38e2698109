use std::io::Write;

use strata_core::asymptotics::{sv_expansion, volume_expansion};
use strata_core::exact::rat;
use strata_core::invariants::Normalization;
use strata_core::{AsympExpansion, PiLaurent};

use crate::args::{ExpandArgs, TargetArg};
use crate::error::CliResult;

/// Coefficients as printed in the published expansion, for comparison only.
/// Only the `(2g-1)/4` volume normalization and the area constant have
/// published values.
pub fn published(target: TargetArg, normalization: Normalization) -> Vec<PiLaurent> {
    match (target, normalization) {
        (TargetArg::Volume, Normalization::Conjecture) => vec![
            PiLaurent::constant(rat(1, 1)),
            PiLaurent::monomial(rat(-1, 12), 1),
            PiLaurent::from_terms([(1, rat(24, 288)), (2, rat(-1, 288))]),
        ],
        (TargetArg::Volume, Normalization::Theorem) => Vec::new(),
        (TargetArg::Sv, _) => vec![
            PiLaurent::constant(rat(1, 2)),
            PiLaurent::constant(rat(-1, 4)),
        ],
    }
}

pub fn expansion(
    order: usize,
    target: TargetArg,
    normalization: Normalization,
) -> CliResult<AsympExpansion> {
    Ok(match target {
        TargetArg::Volume => volume_expansion(order, normalization)?,
        TargetArg::Sv => sv_expansion(order)?,
    })
}

pub fn run(args: &ExpandArgs, out: &mut dyn Write) -> CliResult<()> {
    let order = args.order as usize;
    let normalization = Normalization::from(args.normalization);
    let e = expansion(order, args.target, normalization)?;
    let name = match args.target {
        TargetArg::Volume => "volume",
        TargetArg::Sv => "sv",
    };
    write!(out, "# target: {name}")?;
    if args.target == TargetArg::Volume {
        write!(
            out,
            ", normalization: {}",
            normalization_name(normalization)
        )?;
    }
    writeln!(out, ", order: {order}, coefficients of g^-k")?;
    for k in 0..=order {
        let c = e.coeff(k as i32).unwrap_or_default();
        writeln!(out, "c{k} = {c}  (~ {})", c.eval(128)?.to_decimal(16))?;
    }
    for (k, p) in published(args.target, normalization)
        .iter()
        .enumerate()
        .take(order + 1)
    {
        let c = e.coeff(k as i32).unwrap_or_default();
        if &c == p {
            writeln!(out, "check: c{k} agrees with the published value {p}")?;
        } else {
            writeln!(
                out,
                "FLAG: c{k} differs from the published value {p} (~ {})",
                p.eval(128)?.to_decimal(16)
            )?;
        }
    }
    Ok(())
}

pub fn normalization_name(n: Normalization) -> &'static str {
    match n {
        Normalization::Conjecture => "conjecture",
        Normalization::Theorem => "theorem",
    }
}
