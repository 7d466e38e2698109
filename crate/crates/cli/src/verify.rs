use std::io::Write;

use strata_core::asymptotics::{
    empirical_coefficient, sv_expansion, verify_order, volume_expansion, Target,
};
use strata_core::invariants::{strata_rows, Normalization};
use strata_core::recursion::{cross_check_rows, StrataSequences};
use strata_core::series::{s_series, sinc_half_series};
use strata_core::EvenSeries;

use crate::args::VerifyArgs;
use crate::cache;
use crate::error::{CliError, CliResult};

/// Largest genus checked against the composition-sum oracles.
pub const ORACLE_G_MAX: u32 = 8;
/// Smallest genus used by the empirical order checks.
pub const ORDER_G_MIN: u32 = 20;
/// Both leading ratios must lie in `(1 - margin/g, 1]`.
pub const RATIO_MARGIN: i64 = 2;
/// Allowed gap between the engine's `c'_1` and the quadratic fit.
pub const SV_C1_TOLERANCE: f64 = 1e-3;

struct Report<'a> {
    out: &'a mut dyn Write,
    failed: Vec<String>,
    passed: usize,
}

impl Report<'_> {
    fn check(&mut self, name: &str, ok: bool, detail: &str) -> CliResult<()> {
        let status = if ok { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            writeln!(self.out, "{status} {name}")?;
        } else {
            writeln!(self.out, "{status} {name}: {detail}")?;
        }
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(name.to_string());
        }
        Ok(())
    }
}

pub fn run(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.gmax == 0 {
        return Err(CliError::Usage("--gmax must be at least 1".into()));
    }
    let g_max = args.gmax;
    let seq = cache::sequences(g_max.max(ORACLE_G_MAX), args.cache.as_deref())?;
    writeln!(
        out,
        "# minstrata verify gmax={g_max} order={} precision={}",
        args.order, args.precision
    )?;
    let mut report = Report {
        out,
        failed: Vec::new(),
        passed: 0,
    };

    let rows = cross_check_rows(seq.a_values(), seq.d_values(), ORACLE_G_MAX);
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !(r.a_ok() && r.d_ok()))
        .map(|r| r.g.to_string())
        .collect();
    report.check(
        &format!("oracle cross-check g <= {ORACLE_G_MAX}"),
        bad.is_empty(),
        &if bad.is_empty() {
            String::new()
        } else {
            format!("mismatch at g = {}", bad.join(", "))
        },
    )?;

    invariants(&mut report, &seq, g_max, args.precision)?;

    if g_max < ORDER_G_MIN + 2 {
        writeln!(
            report.out,
            "warning: order checks skipped, they need --gmax >= {}",
            ORDER_G_MIN + 2
        )?;
    } else {
        order_checks(
            &mut report,
            &seq,
            g_max,
            args.order as usize,
            args.precision,
        )?;
    }

    if report.failed.is_empty() {
        writeln!(report.out, "all {} checks passed", report.passed)?;
        Ok(())
    } else {
        writeln!(
            report.out,
            "{} of {} checks failed",
            report.failed.len(),
            report.failed.len() + report.passed
        )?;
        Err(CliError::Verification(report.failed.join("; ")))
    }
}

fn invariants(
    report: &mut Report<'_>,
    seq: &StrataSequences,
    g_max: u32,
    precision: u32,
) -> CliResult<()> {
    let trimmed = StrataSequences::from_parts(
        seq.a_values()[..g_max as usize].to_vec(),
        seq.d_values()[..g_max as usize].to_vec(),
    )?;
    let bad = trimmed.inequality_violations();
    report.check(
        &format!("positivity and upper bounds g <= {g_max}"),
        bad.is_empty(),
        bad.first().map_or("", String::as_str),
    )?;

    let bad = trimmed.leading_ratio_violations(RATIO_MARGIN);
    report.check(
        &format!("leading ratios in (1 - {RATIO_MARGIN}/g, 1] for 2 <= g <= {g_max}"),
        bad.is_empty(),
        &if bad.is_empty() {
            String::new()
        } else {
            format!("violated at g = {bad:?}")
        },
    )?;

    let order = g_max as usize;
    let ok = s_series(order).mul(&sinc_half_series(order)) == EvenSeries::one(order);
    report.check(
        &format!("S(t) * sin(t/2)/(t/2) = 1 through t^{}", 2 * order),
        ok,
        "",
    )?;

    let rows = strata_rows(&trimmed, precision)?;
    let bad: Vec<u32> = rows
        .iter()
        .filter(|r| !r.eps2.is_negative())
        .map(|r| r.g)
        .collect();
    report.check(
        &format!("c_area < 1/2 for g <= {g_max}"),
        bad.is_empty(),
        &if bad.is_empty() {
            String::new()
        } else {
            format!("violated at g = {bad:?}")
        },
    )
}

fn order_checks(
    report: &mut Report<'_>,
    seq: &StrataSequences,
    g_max: u32,
    order: usize,
    precision: u32,
) -> CliResult<()> {
    let range = ORDER_G_MIN..=g_max;
    let vol = volume_expansion(order, Normalization::Conjecture)?;
    let sv = sv_expansion(order.max(1))?;
    for (label, expansion, target) in [
        ("volume", &vol, Target::Volume(Normalization::Conjecture)),
        ("sv", &sv, Target::SiegelVeech),
    ] {
        for r in 0..=order {
            let rep = verify_order(expansion, target, seq, range.clone(), r, precision)?;
            report.check(
                &format!("{label} order R={r} on g in [{ORDER_G_MIN}, {g_max}]"),
                rep.passed,
                &format!("slope {:.3} (need <= {:.1})", rep.slope, rep.threshold),
            )?;
        }
    }
    let engine = sv.coeff(1).unwrap_or_default().eval(64)?.to_f64();
    let fit = empirical_coefficient(&sv, Target::SiegelVeech, seq, range, 1, precision)?;
    report.check(
        "sv c1 engine value against exact-value fit",
        (engine - fit).abs() <= SV_C1_TOLERANCE,
        &format!("engine {engine:.6}, fit {fit:.6}, tolerance {SV_C1_TOLERANCE}"),
    )
}
