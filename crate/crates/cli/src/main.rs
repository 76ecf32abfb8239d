//! `ghcodes` command-line tool.
//!
//! Exit status: 0 on success, 1 when a requested code does not exist (or a
//! verification fails), 2 on usage errors or malformed input, 3 when a gap
//! scan exceeds the proven bound on consecutive non-encodable integers.

mod args;
mod bench;

use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ghcodes::oracle::{gap_scan, Oracle, ScanMode};
use ghcodes::stream::{self, CodecKind, ResyncToken};
use ghcodes::{verify, Execution, FibCodec, GhCodec};

use crate::args::{parse_param, parse_param_range, parse_positive_range};

#[derive(Parser)]
#[command(
    name = "ghcodes",
    version,
    about = "Gopala-Hemachandra and Fibonacci universal codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Code {
    Gh,
    Fib,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fast,
    Oracle,
}

impl From<Mode> for ScanMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Fast => ScanMode::Fast,
            Mode::Oracle => ScanMode::Oracle,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Fast,
    Simple,
}

#[derive(clap::Args)]
struct CodecArgs {
    /// Code family.
    #[arg(long, value_enum, default_value = "gh")]
    code: Code,
    /// GH parameter, at most -2; required for --code gh.
    #[arg(long = "a", allow_hyphen_values = true, value_parser = parse_param)]
    a: Option<i64>,
}

impl CodecArgs {
    fn kind(&self) -> Result<CodecKind> {
        match (self.code, self.a) {
            (Code::Fib, None) => Ok(CodecKind::Fibonacci),
            (Code::Fib, Some(_)) => bail!("--a does not apply to --code fib"),
            (Code::Gh, Some(a)) => Ok(CodecKind::Gh { a }),
            (Code::Gh, None) => bail!("--code gh needs --a"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the codeword for N.
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
        /// Encoder used for GH codes.
        #[arg(long, value_enum, default_value = "fast")]
        algorithm: Algorithm,
        n: u64,
    },
    /// Print the integer a codeword stands for.
    Decode {
        #[command(flatten)]
        codec: CodecArgs,
        codeword: String,
    },
    /// Report whether GH codes exist for N or every n in LO:HI.
    Exists {
        #[arg(long = "a", allow_hyphen_values = true, value_parser = parse_param)]
        a: i64,
        #[arg(long, value_enum, default_value = "fast")]
        mode: Mode,
        #[arg(value_parser = parse_positive_range)]
        n: RangeInclusive<u64>,
    },
    /// Tabulate codes over a grid of parameters and integers.
    Table {
        #[arg(long = "a", allow_hyphen_values = true, value_parser = parse_param_range)]
        a: RangeInclusive<i64>,
        #[arg(long, value_parser = parse_positive_range)]
        n: RangeInclusive<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Scan 1..=MAX_N for integers without a code.
    Gaps {
        #[arg(long = "a", allow_hyphen_values = true, value_parser = parse_param)]
        a: i64,
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value = "fast")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Compare code lengths over a synthetic distribution.
    Bench {
        /// constant:V, uniform:LO:HI, geometric:P or zipf:S:N.
        #[arg(long, value_parser = clap::value_parser!(bench::Dist))]
        dist: bench::Dist,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        /// Comma-separated list of fib and gh:<a>.
        #[arg(
            long,
            default_value = "fib,gh:-2,gh:-3,gh:-4",
            allow_hyphen_values = true
        )]
        codes: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check both encoders against the exhaustive oracle.
    Verify {
        #[arg(long = "a", allow_hyphen_values = true, value_parser = parse_param_range)]
        a: RangeInclusive<i64>,
        #[arg(long, default_value_t = 2000)]
        max_n: u64,
    },
    /// Pack whitespace-separated integers into a GHC1 file.
    StreamPack {
        #[command(flatten)]
        codec: CodecArgs,
        /// Input text file, or - for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        output: PathBuf,
    },
    /// Unpack a GHC1 file, one value per line.
    StreamUnpack {
        #[arg(long)]
        input: PathBuf,
        /// Keep going past damaged frames and print tokens with bit spans.
        #[arg(long)]
        resync: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(status) => ExitCode::from(status),
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8> {
    match command {
        Command::Encode {
            codec,
            algorithm,
            n,
        } => {
            if n == 0 {
                bail!("n must be positive");
            }
            let code = match codec.kind()? {
                CodecKind::Fibonacci => Some(FibCodec::new().encode(n)?),
                CodecKind::Gh { a } => {
                    let gh = GhCodec::new(a)?;
                    match algorithm {
                        Algorithm::Fast => gh.encode_fast(n)?.code,
                        Algorithm::Simple => gh.encode_simple(n)?.code,
                    }
                }
            };
            match code {
                Some(code) => {
                    writeln!(out, "{code}")?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "-")?;
                    eprintln!("no code exists for n = {n}");
                    Ok(1)
                }
            }
        }
        Command::Decode { codec, codeword } => {
            let value = match codec.kind()? {
                CodecKind::Fibonacci => FibCodec::new().decode_str(codeword.trim())?,
                CodecKind::Gh { a } => GhCodec::new(a)?.decode_str(codeword.trim())?,
            };
            writeln!(out, "{value}")?;
            Ok(0)
        }
        Command::Exists { a, mode, n } => {
            let single = n.start() == n.end();
            let mut all = true;
            let answers: Vec<(u64, bool)> = match mode {
                Mode::Fast => {
                    let gh = GhCodec::new(a)?;
                    n.map(|n| Ok((n, gh.exists(n)?))).collect::<Result<_>>()?
                }
                Mode::Oracle => {
                    let oracle = Oracle::new(a)?;
                    n.map(|n| Ok((n, oracle.exists(n)?)))
                        .collect::<Result<_>>()?
                }
            };
            for (n, exists) in answers {
                all &= exists;
                let word = if exists { "yes" } else { "no" };
                if single {
                    writeln!(out, "{word}")?;
                } else {
                    writeln!(out, "{n} {word}")?;
                }
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Table { a, n, format } => {
            if format == Format::Csv {
                writeln!(out, "a,n,code")?;
            }
            for a in a.rev() {
                let gh = GhCodec::new(a)?;
                for n in n.clone() {
                    let code = gh
                        .encode(n)?
                        .map_or_else(|| "-".to_string(), |c| c.to_string());
                    match format {
                        Format::Csv => writeln!(out, "{a},{n},{code}")?,
                        Format::Text => writeln!(out, "{a:>4} {n:>6} {code}")?,
                    }
                }
            }
            Ok(0)
        }
        Command::Gaps {
            a,
            max_n,
            mode,
            format,
            sequential,
        } => {
            if max_n == 0 {
                bail!("--max-n must be positive");
            }
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            let report = gap_scan(a, max_n, mode.into(), exec)?;
            match format {
                Format::Text => write!(out, "{}", report.summary())?,
                Format::Csv => write!(out, "{}", report.to_csv())?,
            }
            if report.within_bound() {
                Ok(0)
            } else {
                eprintln!(
                    "max_run {} exceeds the bound {}",
                    report.max_run,
                    report.allowed_run()
                );
                Ok(3)
            }
        }
        Command::Bench {
            dist,
            count,
            codes,
            seed,
            format,
        } => {
            let codes = bench::parse_codes(&codes)?;
            let values = dist.sample(count, seed)?;
            let rows = codes
                .into_iter()
                .map(|c| bench::run(c, &values))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Text => write!(out, "{}", bench::render_text(&rows))?,
                Format::Csv => write!(out, "{}", bench::render_csv(&rows))?,
            }
            Ok(0)
        }
        Command::Verify { a, max_n } => {
            if max_n == 0 {
                bail!("--max-n must be positive");
            }
            let mut ok = true;
            for a in a.rev() {
                let report = verify(a, max_n, Execution::default())?;
                ok &= report.passed();
                write!(out, "{}", report.summary())?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::StreamPack {
            codec,
            input,
            output,
        } => {
            let text = if input == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&input).with_context(|| format!("reading {input}"))?
            };
            let values = text
                .split_whitespace()
                .map(|t| t.parse::<u64>().with_context(|| format!("bad value {t:?}")))
                .collect::<Result<Vec<_>>>()?;
            let bytes = stream::encode(codec.kind()?, &values)?;
            fs::write(&output, &bytes).with_context(|| format!("writing {}", output.display()))?;
            Ok(0)
        }
        Command::StreamUnpack { input, resync } => {
            let bytes = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            if resync {
                for token in stream::resync_decode(&bytes)? {
                    match token {
                        ResyncToken::Value { value, span } => {
                            writeln!(out, "value {value} {}..{}", span.start, span.end)?
                        }
                        ResyncToken::Garbage { span } => {
                            writeln!(out, "garbage {}..{}", span.start, span.end)?
                        }
                    }
                }
            } else {
                for value in stream::decode(&bytes)? {
                    writeln!(out, "{value}")?;
                }
            }
            Ok(0)
        }
    }
}
