//! Command dispatch for the `valseries` binary.
//!
//! Exit codes: 0 on success, 1 when a verification or comparison fails,
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use valseries_core::{
    brute_force_oracle, classification_candidates, diff_series, formula_series, parse_spec_file,
    series_from_enumeration, validate_spec, verify_uniqueness, Error, SeriesDiff, SeriesTruncation,
    SpecDocument, TruncationBound, ValuationSpec,
};

#[derive(Parser, Debug)]
#[command(
    name = "valseries",
    version,
    about = "Value semigroups and Poincaré series of valuations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the candidate types for the spec's classification block.
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Print p and q for each dual-graph piece.
    Q {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Print the truncated Poincaré series.
    Series {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        bound: String,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Check that every value has exactly one constrained representation.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        bound: String,
    },
    /// Print every unconstrained representation of every value.
    Oracle {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        bound: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Enum,
    Both,
}

/// Runs one command, writing results to `out` and diagnostics to `err`, and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(path: &PathBuf) -> Result<(SpecDocument, ValuationSpec), Error> {
    let doc = parse_spec_file(path)?;
    let spec = validate_spec(&doc)?;
    Ok((doc, spec))
}

fn load_with_bound(path: &PathBuf, bound: &str) -> Result<(ValuationSpec, TruncationBound), Error> {
    let (_, spec) = load(path)?;
    let bound = spec.parse_bound(bound)?;
    Ok((spec, bound))
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Classify { spec } => {
            let doc = parse_spec_file(&spec)?;
            let labels: Vec<&str> = classification_candidates(&doc)?
                .into_iter()
                .map(|t| t.label())
                .collect();
            writeln!(out, "candidates: {}", labels.join(", ")).map_err(io)?;
            Ok(0)
        }
        Command::Q { spec } => {
            let doc = parse_spec_file(&spec)?;
            let pieces = doc.parsed_pieces()?;
            if pieces.is_empty() {
                return Err(Error::BadField {
                    key: "pieces".into(),
                    message: "spec lists no dual-graph pieces".into(),
                });
            }
            let conv = doc.convention();
            for (i, piece) in pieces.iter().enumerate() {
                let s = piece.simplify(conv)?;
                let segs: Vec<String> = s.segments.iter().map(ToString::to_string).collect();
                writeln!(out, "piece {i}: [{}] p={} q={}", segs.join(","), s.p, s.q).map_err(io)?;
            }
            Ok(0)
        }
        Command::Series {
            spec,
            bound,
            method,
        } => {
            let (spec, bound) = load_with_bound(&spec, &bound)?;
            let series = match method {
                Method::Enum => series_from_enumeration(&spec, &bound)?,
                Method::Formula | Method::Both => formula_series(&spec, &bound)?,
            };
            // compute everything before printing so a late error leaves stdout clean
            let diff = if method == Method::Both {
                let listed = match series_from_enumeration(&spec, &bound) {
                    Err(Error::NonUniqueRepresentation(_)) => semigroup_elements(&spec, &bound)?,
                    other => other?,
                };
                Some(diff_series(&series, &listed, spec.tau(), 1)?)
            } else {
                None
            };
            out.write_all(series.to_text().as_bytes()).map_err(io)?;
            match diff {
                None => Ok(0),
                Some(SeriesDiff::Equal) => {
                    writeln!(out, "VERIFIED").map_err(io)?;
                    Ok(0)
                }
                Some(SeriesDiff::Mismatches(ms)) => {
                    let m = &ms[0];
                    writeln!(
                        out,
                        "MISMATCH at {}: formula={} enum={}",
                        m.value, m.left, m.right
                    )
                    .map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Verify { spec, bound } => {
            let (spec, bound) = load_with_bound(&spec, &bound)?;
            let report = verify_uniqueness(&spec, &bound)?;
            if report.passed() {
                writeln!(out, "PASS: {} values checked", report.checked).map_err(io)?;
                return Ok(0);
            }
            for v in &report.violations {
                writeln!(
                    out,
                    "FAIL at {}: admissible {} of {} representations [{}]",
                    v.value,
                    v.admissible.len(),
                    v.representations.len(),
                    join(&v.representations)
                )
                .map_err(io)?;
            }
            writeln!(
                out,
                "FAIL: {} violations among {} values checked",
                report.violations.len(),
                report.checked
            )
            .map_err(io)?;
            Ok(1)
        }
        Command::Oracle { spec, bound } => {
            let (spec, bound) = load_with_bound(&spec, &bound)?;
            writeln!(out, "# bound={bound}").map_err(io)?;
            for entry in brute_force_oracle(&spec, &bound)? {
                writeln!(out, "{}\t{}", entry.value, join(&entry.representations)).map_err(io)?;
            }
            Ok(0)
        }
    }
}

/// Distinct semigroup elements from the brute-force search, each with
/// coefficient one. Used when the constrained enumeration is not unique.
fn semigroup_elements(
    spec: &ValuationSpec,
    bound: &TruncationBound,
) -> Result<SeriesTruncation, Error> {
    let terms = brute_force_oracle(spec, bound)?
        .into_iter()
        .map(|e| (e.value, 1u8.into()))
        .collect();
    Ok(SeriesTruncation {
        terms,
        bound: bound.clone(),
        complete: true,
    })
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
