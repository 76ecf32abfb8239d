//! Bits-per-value comparison over synthetic integer distributions.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use ghcodes::par::{self, Execution};
use ghcodes::{FibCodec, GhCodec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Zipf};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dist {
    Constant(u64),
    Uniform(u64, u64),
    /// `1 + Geometric(p)`, so the smallest value is 1.
    Geometric(f64),
    Zipf {
        s: f64,
        n: u64,
    },
}

impl FromStr for Dist {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, String> {
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |i: usize| -> Result<&str, String> {
            parts
                .get(i)
                .copied()
                .ok_or_else(|| format!("distribution {spec:?} is missing a field"))
        };
        let int = |i| num(i)?.parse::<u64>().map_err(|e| format!("{spec:?}: {e}"));
        let float = |i| num(i)?.parse::<f64>().map_err(|e| format!("{spec:?}: {e}"));
        let dist = match parts[0] {
            "constant" => Dist::Constant(int(1)?),
            "uniform" => Dist::Uniform(int(1)?, int(2)?),
            "geometric" => Dist::Geometric(float(1)?),
            "zipf" => Dist::Zipf {
                s: float(1)?,
                n: int(2)?,
            },
            other => return Err(format!("unknown distribution {other:?}")),
        };
        match dist {
            Dist::Constant(0) => Err("constant value must be positive".into()),
            Dist::Uniform(lo, hi) if lo == 0 || lo > hi => {
                Err("uniform needs 1 <= lo <= hi".into())
            }
            Dist::Geometric(p) if !(p > 0.0 && p <= 1.0) => {
                Err("geometric needs 0 < p <= 1".into())
            }
            Dist::Zipf { s, n } if s <= 0.0 || n == 0 => Err("zipf needs s > 0 and n >= 1".into()),
            _ => Ok(dist),
        }
    }
}

impl Dist {
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(match *self {
            Dist::Constant(v) => vec![v; count],
            Dist::Uniform(lo, hi) => (0..count).map(|_| rng.random_range(lo..=hi)).collect(),
            Dist::Geometric(p) => {
                let g = Geometric::new(p).context("geometric distribution")?;
                (0..count)
                    .map(|_| g.sample(&mut rng).saturating_add(1))
                    .collect()
            }
            Dist::Zipf { s, n } => {
                let z = Zipf::new(n as f64, s).context("zipf distribution")?;
                (0..count).map(|_| z.sample(&mut rng) as u64).collect()
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeSpec {
    Fib,
    Gh(i64),
}

impl CodeSpec {
    pub fn name(&self) -> String {
        match self {
            CodeSpec::Fib => "fib".into(),
            CodeSpec::Gh(a) => format!("gh:{a}"),
        }
    }
}

pub fn parse_codes(list: &str) -> Result<Vec<CodeSpec>> {
    list.split(',')
        .map(|item| match item.trim() {
            "fib" => Ok(CodeSpec::Fib),
            other => match other.strip_prefix("gh:") {
                Some(a) => Ok(CodeSpec::Gh(
                    crate::args::parse_param(a).map_err(anyhow::Error::msg)?,
                )),
                None => bail!("unknown code {other:?}; expected fib or gh:<a>"),
            },
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub code: CodeSpec,
    pub encoded: u64,
    pub skipped: u64,
    pub total_bits: u64,
    pub elapsed: Duration,
}

impl BenchRow {
    pub fn bits_per_value(&self) -> f64 {
        if self.encoded == 0 {
            0.0
        } else {
            self.total_bits as f64 / self.encoded as f64
        }
    }
}

pub fn run(code: CodeSpec, values: &[u64]) -> Result<BenchRow> {
    let start = Instant::now();
    let lengths: Vec<Option<usize>> = match code {
        CodeSpec::Fib => {
            let fib = FibCodec::new();
            par::map_slice(Execution::default(), values, |&n| {
                fib.encode(n).ok().map(|c| c.len())
            })
        }
        CodeSpec::Gh(a) => {
            let gh = GhCodec::new(a)?;
            par::map_slice(Execution::default(), values, |&n| {
                gh.encode(n).ok().flatten().map(|c| c.len())
            })
        }
    };
    let elapsed = start.elapsed();
    let encoded = lengths.iter().flatten().count() as u64;
    Ok(BenchRow {
        code,
        encoded,
        skipped: values.len() as u64 - encoded,
        total_bits: lengths.iter().flatten().map(|&l| l as u64).sum(),
        elapsed,
    })
}

pub fn render_text(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<10} {:>10} {:>8} {:>12} {:>11} {:>10}\n",
        "code", "encoded", "skipped", "total_bits", "bits/value", "time_ms"
    );
    for r in rows {
        writeln!(
            out,
            "{:<10} {:>10} {:>8} {:>12} {:>11.4} {:>10.3}",
            r.code.name(),
            r.encoded,
            r.skipped,
            r.total_bits,
            r.bits_per_value(),
            r.elapsed.as_secs_f64() * 1e3
        )
        .unwrap();
    }
    out
}

/// CSV leaves out timing so that equal flags give equal bytes.
pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("code,encoded,skipped,total_bits,bits_per_value\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.6}",
            r.code.name(),
            r.encoded,
            r.skipped,
            r.total_bits,
            r.bits_per_value()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_distributions() {
        let ones = Dist::Constant(1).sample(100, 1).unwrap();
        assert_eq!(run(CodeSpec::Fib, &ones).unwrap().bits_per_value(), 2.0);
        let sevens = Dist::Constant(7).sample(100, 1).unwrap();
        assert_eq!(
            run(CodeSpec::Gh(-2), &sevens).unwrap().bits_per_value(),
            5.0
        );
    }

    #[test]
    fn universal_parameter_skips_nothing() {
        let values = "geometric:0.05"
            .parse::<Dist>()
            .unwrap()
            .sample(100_000, 42)
            .unwrap();
        assert!(values.iter().all(|&v| v >= 1));
        let fib = run(CodeSpec::Fib, &values).unwrap();
        let gh = run(CodeSpec::Gh(-3), &values).unwrap();
        assert_eq!((fib.skipped, gh.skipped), (0, 0));
        assert!(fib.bits_per_value().is_finite() && gh.bits_per_value().is_finite());
    }

    #[test]
    fn gapped_parameter_counts_skips() {
        let values: Vec<u64> = (1..=100).collect();
        let row = run(CodeSpec::Gh(-5), &values).unwrap();
        assert!(row.skipped >= 2);
        assert_eq!(row.encoded + row.skipped, 100);
    }

    #[test]
    fn sampling_is_seeded() {
        let d: Dist = "zipf:1.2:1000".parse().unwrap();
        assert_eq!(d.sample(50, 9).unwrap(), d.sample(50, 9).unwrap());
        let u: Dist = "uniform:5:9".parse().unwrap();
        assert!(u
            .sample(200, 3)
            .unwrap()
            .iter()
            .all(|v| (5..=9).contains(v)));
    }

    #[test]
    fn bad_specs() {
        for spec in [
            "constant:0",
            "uniform:9:5",
            "geometric:0",
            "zipf:1",
            "poisson:3",
        ] {
            assert!(spec.parse::<Dist>().is_err(), "{spec}");
        }
        assert!(parse_codes("fib,gh:-1").is_err());
        assert_eq!(
            parse_codes("fib, gh:-3").unwrap(),
            [CodeSpec::Fib, CodeSpec::Gh(-3)]
        );
    }
}
