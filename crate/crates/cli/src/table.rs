use std::io::Write;

use serde::Serialize;
use strata_core::invariants::{strata_rows, StrataRow};
use strata_core::Rational;

use crate::args::{Format, TableArgs};
use crate::cache::{self, FORMAT_VERSION};
use crate::error::{CliError, CliResult};

pub const COLUMNS: [&str; 11] = [
    "g",
    "a_g",
    "d_g",
    "vol_exact",
    "vol_numeric",
    "c_area_exact",
    "c_area_numeric",
    "eps1_conjecture",
    "eps1_theorem",
    "eps2",
    "flags",
];

/// Flag carried by g = 1, where the theorem prefactor 2g - 2 vanishes.
pub const G1_FLAG: &str = "g1_degenerate";

#[derive(Debug, Serialize)]
struct JsonRow {
    g: u32,
    a_g: String,
    d_g: String,
    vol_exact: String,
    vol_numeric: String,
    c_area_exact: String,
    c_area_numeric: String,
    eps1_conjecture: String,
    eps1_theorem: String,
    eps2: String,
    flags: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
struct JsonTable {
    format_version: u32,
    precision_bits: u32,
    decimal_digits: usize,
    gmax: u32,
    columns: Vec<&'static str>,
    rows: Vec<JsonRow>,
}

/// `num/den`, always with an explicit denominator.
pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn json_row(row: &StrataRow, digits: usize) -> JsonRow {
    JsonRow {
        g: row.g,
        a_g: fraction(&row.a_g),
        d_g: fraction(&row.d_g),
        vol_exact: row.vol.to_string(),
        vol_numeric: row.vol_numeric.to_decimal(digits),
        c_area_exact: row.c_area.to_string(),
        c_area_numeric: row.c_area_numeric.to_decimal(digits),
        eps1_conjecture: row.eps1_conjecture.to_decimal(digits),
        eps1_theorem: row.eps1_theorem.to_decimal(digits),
        eps2: row.eps2.to_decimal(digits),
        flags: if row.g == 1 {
            vec![G1_FLAG]
        } else {
            Vec::new()
        },
    }
}

pub fn run(args: &TableArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.gmax == 0 {
        return Err(CliError::Usage("--gmax must be at least 1".into()));
    }
    let seq = cache::sequences(args.gmax, args.cache.as_deref())?;
    let rows = strata_rows(&seq, args.precision)?;
    let digits = crate::decimal_digits(args.precision);
    let rows: Vec<JsonRow> = rows
        .iter()
        .take(args.gmax as usize)
        .map(|r| json_row(r, digits))
        .collect();
    match args.format {
        Format::Json => {
            let table = JsonTable {
                format_version: FORMAT_VERSION,
                precision_bits: args.precision,
                decimal_digits: digits,
                gmax: args.gmax,
                columns: COLUMNS.to_vec(),
                rows,
            };
            serde_json::to_writer_pretty(&mut *out, &table).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "# minstrata table")?;
            writeln!(out, "# format_version: {FORMAT_VERSION}")?;
            writeln!(out, "# precision_bits: {}", args.precision)?;
            writeln!(out, "# decimal_digits: {digits}")?;
            writeln!(out, "# gmax: {}", args.gmax)?;
            writeln!(
                out,
                "# {G1_FLAG}: eps1_theorem uses the factor 2g-2 = 0 at g = 1"
            )?;
            writeln!(out, "{}", COLUMNS.join(","))?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.g,
                    r.a_g,
                    r.d_g,
                    r.vol_exact,
                    r.vol_numeric,
                    r.c_area_exact,
                    r.c_area_numeric,
                    r.eps1_conjecture,
                    r.eps1_theorem,
                    r.eps2,
                    r.flags.join(";")
                )?;
            }
        }
    }
    Ok(())
}
