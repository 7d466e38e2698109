//! JSON cache of the exact sequences.
//!
//! Integers are stored as decimal strings so the format carries no width
//! assumption. Loading re-checks positivity, the two upper bounds on `a_g`
//! and `d_g`, and that `b_g` matches the closed form before any row is used.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use strata_core::exact::b_coeff;
use strata_core::recursion::StrataSequences;
use strata_core::Rational;

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRow {
    pub g: u32,
    pub a_num: String,
    pub a_den: String,
    pub d_num: String,
    pub d_den: String,
    pub b_num: String,
    pub b_den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheFile {
    pub format_version: u32,
    pub rows: Vec<CacheRow>,
}

impl CacheFile {
    pub fn from_sequences(seq: &StrataSequences) -> Self {
        let rows = (1..=seq.g_max())
            .map(|g| CacheRow {
                g,
                a_num: seq.a(g).numer().to_string(),
                a_den: seq.a(g).denom().to_string(),
                d_num: seq.d(g).numer().to_string(),
                d_den: seq.d(g).denom().to_string(),
                b_num: seq.b(g).numer().to_string(),
                b_den: seq.b(g).denom().to_string(),
            })
            .collect();
        CacheFile {
            format_version: FORMAT_VERSION,
            rows,
        }
    }

    /// Validates the rows and rebuilds the sequences. The error string
    /// names the first problem found.
    pub fn to_sequences(&self) -> Result<StrataSequences, String> {
        if self.format_version != FORMAT_VERSION {
            return Err(format!(
                "format_version {} is not supported (expected {FORMAT_VERSION})",
                self.format_version
            ));
        }
        if self.rows.is_empty() {
            return Err("no rows".into());
        }
        let mut a = Vec::with_capacity(self.rows.len());
        let mut d = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let g = i as u32 + 1;
            if row.g != g {
                return Err(format!("row {i} has g = {}, expected {g}", row.g));
            }
            let a_g = parse_rational(&row.a_num, &row.a_den).map_err(|e| format!("a_{g}: {e}"))?;
            let d_g = parse_rational(&row.d_num, &row.d_den).map_err(|e| format!("d_{g}: {e}"))?;
            let b_g = parse_rational(&row.b_num, &row.b_den).map_err(|e| format!("b_{g}: {e}"))?;
            if b_g != b_coeff(g) {
                return Err(format!(
                    "b_{g} = {b_g} does not match the Bernoulli closed form"
                ));
            }
            a.push(a_g);
            d.push(d_g);
        }
        let seq = StrataSequences::from_parts(a, d).map_err(|e| e.to_string())?;
        if let Some(first) = seq.inequality_violations().into_iter().next() {
            return Err(first);
        }
        Ok(seq)
    }

    /// Pretty JSON with a trailing newline; stable for identical input.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("cache rows serialize");
        s.push('\n');
        s
    }
}

/// `num/den` as stored, in lowest terms with a positive denominator.
fn parse_rational(num: &str, den: &str) -> Result<Rational, String> {
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if !d.is_positive() {
        return Err(format!("denominator {den} is not positive"));
    }
    let q = Rational::new(n.clone(), d.clone());
    if q.numer() != &n || q.denom() != &d {
        return Err(format!("{num}/{den} is not in lowest terms"));
    }
    Ok(q)
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal integer"));
    }
    let v = BigInt::from_str(s).map_err(|e| e.to_string())?;
    if v.is_zero() && s.starts_with('-') {
        return Err(format!("{s:?} is not canonical"));
    }
    Ok(v)
}

pub fn load(path: &Path) -> CliResult<StrataSequences> {
    let corrupt = |reason: String| CliError::Corrupt {
        path: path.display().to_string(),
        reason,
    };
    let text = fs::read_to_string(path).map_err(|e| corrupt(e.to_string()))?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    file.to_sequences().map_err(corrupt)
}

pub fn save(path: &Path, seq: &StrataSequences) -> CliResult<()> {
    fs::write(path, CacheFile::from_sequences(seq).to_json())?;
    Ok(())
}

/// Sequences through `g_max`: loaded from `cache` when it exists, extended
/// if it is too short, and written back whenever it changed.
pub fn sequences(g_max: u32, cache: Option<&Path>) -> CliResult<StrataSequences> {
    let Some(path) = cache else {
        return Ok(StrataSequences::compute(g_max)?);
    };
    if !path.exists() {
        let seq = StrataSequences::compute(g_max)?;
        save(path, &seq)?;
        return Ok(seq);
    }
    let mut seq = load(path)?;
    if seq.g_max() < g_max {
        seq.extend(g_max)?;
        save(path, &seq)?;
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let seq = StrataSequences::compute(6).unwrap();
        let json = CacheFile::from_sequences(&seq).to_json();
        let back: CacheFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_sequences().unwrap(), seq);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn rejects_bad_rows() {
        let seq = StrataSequences::compute(3).unwrap();
        let good = CacheFile::from_sequences(&seq);

        let mut f = good.clone();
        f.rows[1].a_num = "-1".into();
        assert!(f.to_sequences().unwrap_err().contains("not positive"));

        let mut f = good.clone();
        f.rows[2].d_num = "1".into();
        f.rows[2].d_den = "1".into();
        assert!(f.to_sequences().is_err());

        let mut f = good.clone();
        f.rows[0].b_num = "5".into();
        assert!(f.to_sequences().unwrap_err().contains("b_1"));

        let mut f = good.clone();
        f.rows[0].a_num = "2".into();
        f.rows[0].a_den = "48".into();
        assert!(f.to_sequences().unwrap_err().contains("lowest terms"));

        let mut f = good.clone();
        f.rows[0].a_num = "1e3".into();
        assert!(f.to_sequences().is_err());

        let mut f = good;
        f.format_version = 2;
        assert!(f.to_sequences().is_err());
    }
}
