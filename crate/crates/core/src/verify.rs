//! Cross-checks the two encoders against the exhaustive oracle.

use std::fmt::Write as _;

use crate::error::Result;
use crate::gh_codec::GhCodec;
use crate::oracle::Oracle;
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    pub n: u64,
    pub oracle: bool,
    pub simple: bool,
    pub fast: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.oracle == self.simple && self.simple == self.fast
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub a: i64,
    pub max_n: u64,
    pub nonexistent: u64,
    pub mismatches: Vec<Verdicts>,
    /// Values where an emitted code did not decode back to `n`.
    pub round_trip_failures: Vec<u64>,
    /// Values where both encoders succeed with different codes; informational.
    pub differing_codes: Vec<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.round_trip_failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "pass" } else { "FAIL" };
        writeln!(out, "{status}: a = {}, n = 1..={}", self.a, self.max_n).unwrap();
        writeln!(out, "nonexistent: {}", self.nonexistent).unwrap();
        writeln!(out, "existence mismatches: {}", self.mismatches.len()).unwrap();
        for v in self.mismatches.iter().take(10) {
            writeln!(
                out,
                "  n = {}: oracle {} simple {} fast {}",
                v.n, v.oracle, v.simple, v.fast
            )
            .unwrap();
        }
        writeln!(
            out,
            "round-trip failures: {}",
            self.round_trip_failures.len()
        )
        .unwrap();
        writeln!(out, "differing codes: {}", self.differing_codes.len()).unwrap();
        out
    }
}

struct Row {
    verdicts: Verdicts,
    round_trip_ok: bool,
    codes_differ: bool,
}

pub fn verify(a: i64, max_n: u64, exec: Execution) -> Result<VerifyReport> {
    let codec = GhCodec::new(a)?;
    let oracle = Oracle::new(a)?;
    let rows = par::map_range(exec, 1..=max_n, |n| -> Result<Row> {
        let fast = codec.encode_fast(n)?.code;
        let simple = codec.encode_simple(n)?.code;
        let round_trip_ok = [&fast, &simple]
            .into_iter()
            .flatten()
            .all(|code| codec.decode(code).ok() == Some(n));
        Ok(Row {
            verdicts: Verdicts {
                n,
                oracle: oracle.exists(n)?,
                simple: simple.is_some(),
                fast: fast.is_some(),
            },
            round_trip_ok,
            codes_differ: matches!((&fast, &simple), (Some(f), Some(s)) if f != s),
        })
    });

    let mut report = VerifyReport {
        a,
        max_n,
        nonexistent: 0,
        mismatches: Vec::new(),
        round_trip_failures: Vec::new(),
        differing_codes: Vec::new(),
    };
    for row in rows {
        let row = row?;
        let v = row.verdicts;
        if !v.oracle {
            report.nonexistent += 1;
        }
        if !v.agree() {
            report.mismatches.push(v);
        }
        if !row.round_trip_ok {
            report.round_trip_failures.push(v.n);
        }
        if row.codes_differ {
            report.differing_codes.push(v.n);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_parameter_passes_with_no_gaps() {
        let report = verify(-2, 2000, Execution::default()).unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert_eq!(report.nonexistent, 0);
    }

    #[test]
    fn gapped_parameter_passes() {
        let report = verify(-7, 2000, Execution::default()).unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert!(report.nonexistent > 0);
        assert!(report.summary().starts_with("pass: a = -7"));
    }

    #[test]
    fn rejects_bad_parameter() {
        assert!(verify(-1, 10, Execution::Sequential).is_err());
    }
}
