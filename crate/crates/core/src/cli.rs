//! The `vindef` command line.
//!
//! Exit codes: 0 success or pass, 1 usage or input error, 2 negative verdict
//! (normality failed, realization failed, validation found violations, or a
//! classification differs from `--expect`), 3 internal invariant violation.
//! Bit streams go to stdout when `--out` is absent and are read from stdin
//! when `--in` is absent or `-`, so subcommands compose with pipes.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::certify::{borel_normality, champernowne_digits};
use crate::error::{Error, Result};
use crate::hilbert::{born, normalize, ORTHO_TOL};
use crate::hypergraph::{
    classify_pair, enumerate_total_states, indefiniteness_report, merge, OrthoHypergraph, Relation,
    TwoValuedState,
};
use crate::realization::{terminal_gap, verify_realization};
use crate::rng::{simulate_coin, transition_sweep, von_neumann_extract, BitStream};
use crate::{fmt_sig, round_sig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExitStatus {
    pub code: i32,
}

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus { code: 0 };
    pub const USAGE: ExitStatus = ExitStatus { code: 1 };
    pub const NEGATIVE: ExitStatus = ExitStatus { code: 2 };
    pub const INTERNAL: ExitStatus = ExitStatus { code: 3 };
}

#[derive(Parser, Debug)]
#[command(
    name = "vindef",
    version,
    about = "Quantum coin simulation, extraction, normality and gadget analysis"
)]
struct Cli {
    /// Print tables and reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample detector clicks of (1,0) measured in the basis tilted by --phi.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_seed)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write 8 bits per byte after a `len=<n>` header line.
        #[arg(long)]
        packed: bool,
    },
    /// Von Neumann extraction: 01 -> 0, 10 -> 1, drop 00 and 11.
    Extract {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print extractor statistics (to stderr when the stream goes to stdout).
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        packed: bool,
    },
    /// Borel-normality test; exit code 2 on failure.
    Certify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        max_block: Option<usize>,
    },
    /// Digits of the Champernowne sequence.
    Champernowne {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate and extract for a list of tilt angles.
    Sweep {
        /// Comma-separated angles in radians.
        #[arg(long, allow_hyphen_values = true)]
        phi_list: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_seed)]
        seed: u64,
    },
    /// Born probability |<post|pre>|^2 of comma-separated (possibly complex) components.
    Born {
        #[arg(long, allow_hyphen_values = true)]
        pre: String,
        #[arg(long, allow_hyphen_values = true)]
        post: String,
    },
    /// Orthogonality hypergraph analysis.
    #[command(subcommand)]
    Hypergraph(HypergraphCommand),
}

#[derive(Args, Debug)]
struct Terminals {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Subcommand, Debug)]
enum HypergraphCommand {
    /// List structural violations; exit code 2 if there are any.
    Validate { file: PathBuf },
    /// Enumerate total two-valued states.
    States {
        file: PathBuf,
        /// Constraint `atom=0` or `atom=1`; repeatable.
        #[arg(long = "require")]
        require: Vec<String>,
        /// Print only the number of states.
        #[arg(long)]
        count: bool,
    },
    /// Classify what `from = 1` implies for `to`.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        terminals: Terminals,
        /// Exit with code 2 unless the relation is this one.
        #[arg(long)]
        expect: Option<Relation>,
    },
    /// Identify equal atom ids of two hypergraphs and join their contexts.
    Merge {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every context is an orthonormal basis of its labels.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = ORTHO_TOL)]
        tol: f64,
    },
    /// Which atoms are forced, free or necessarily undefined given `--from = 1`.
    Report {
        file: PathBuf,
        #[arg(long, alias = "prepared")]
        from: String,
    },
    /// Classical relation next to the Born probability of the terminal labels.
    Gap {
        file: PathBuf,
        #[command(flatten)]
        terminals: Terminals,
    },
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn parse_components(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<Complex64>()
                .map_err(|_| Error::Parse(format!("invalid component {c:?}")))
        })
        .collect()
}

fn parse_requirement(s: &str) -> Result<(String, bool)> {
    let (atom, value) = s
        .rsplit_once('=')
        .ok_or_else(|| Error::Parse(format!("expected atom=value, got {s:?}")))?;
    let value = match value.trim() {
        "0" => false,
        "1" => true,
        other => return Err(Error::Parse(format!("value must be 0 or 1, got {other:?}"))),
    };
    Ok((atom.to_string(), value))
}

/// Walks a JSON value and rounds every float to 12 significant digits.
fn round_json(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect())
        }
        other => other,
    }
}

fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let v = round_json(serde_json::to_value(value)?);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) if p != Path::new("-") => Ok(std::fs::read(p)?),
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, data: &[u8]) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => Ok(std::fs::write(p, data)?),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(data)?;
            Ok(out.flush()?)
        }
    }
}

fn encode(bits: &BitStream, packed: bool) -> Vec<u8> {
    if packed {
        bits.to_packed()
    } else {
        bits.to_ascii().into_bytes()
    }
}

enum Outcome {
    Done,
    Negative,
    Internal(String),
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::USAGE
            } else {
                ExitStatus::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(Outcome::Done) => ExitStatus::SUCCESS,
        Ok(Outcome::Negative) => ExitStatus::NEGATIVE,
        Ok(Outcome::Internal(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitStatus::INTERNAL
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Simulate {
            phi,
            n,
            seed,
            out,
            packed,
        } => {
            let bits = simulate_coin(*phi, *n, *seed)?;
            write_output(out.as_deref(), &encode(&bits, *packed))?;
        }
        Command::Extract {
            input,
            out,
            stats,
            packed,
        } => {
            let raw = BitStream::from_file_bytes(&read_input(input.as_deref())?)?;
            let (bits, st) = von_neumann_extract(&raw);
            if !st.is_consistent(raw.len()) || bits.len() > raw.len() / 2 {
                return Ok(Outcome::Internal(format!("extractor statistics {st:?}")));
            }
            write_output(out.as_deref(), &encode(&bits, *packed))?;
            if *stats {
                let text = if json {
                    json_string(&st)?
                } else {
                    format!(
                        "pairs consumed: {}\npairs discarded: {}\npairs emitted: {}\noutput length: {}\n",
                        st.pairs_consumed, st.pairs_discarded, st.pairs_emitted, st.output_len
                    )
                };
                if out.is_some() {
                    print!("{text}");
                } else {
                    eprint!("{text}");
                }
            }
        }
        Command::Certify { input, max_block } => {
            let bits = BitStream::from_file_bytes(&read_input(input.as_deref())?)?;
            let report = borel_normality(&bits, *max_block)?;
            if report.pass != report.levels.iter().all(|l| l.pass) {
                return Ok(Outcome::Internal(
                    "overall verdict disagrees with block verdicts".into(),
                ));
            }
            if json {
                print!("{}", json_string(&report)?);
            } else {
                println!("{report}");
            }
            if !report.pass {
                return Ok(Outcome::Negative);
            }
        }
        Command::Champernowne { n, base, out } => {
            let digits = champernowne_digits(*n, *base)?;
            write_output(out.as_deref(), digits.as_bytes())?;
        }
        Command::Sweep { phi_list, n, seed } => {
            let phis = phi_list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("invalid angle {s:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let rows = transition_sweep(&phis, *n, *seed)?;
            if json {
                print!("{}", json_string(&rows)?);
            } else {
                println!(
                    "{:>16}  {:>16}  {:>12}  {:>16}",
                    "phi", "raw ones", "extracted", "extracted ones"
                );
                for r in rows {
                    println!(
                        "{:>16}  {:>16}  {:>12}  {:>16}",
                        fmt_sig(r.phi),
                        fmt_sig(r.raw_ones_frequency),
                        r.extracted_len,
                        r.extracted_ones_frequency.map_or("-".into(), fmt_sig)
                    );
                }
            }
        }
        Command::Born { pre, post } => {
            let pre = normalize(&parse_components(pre)?)?;
            let post = normalize(&parse_components(post)?)?;
            let p = born(&pre, &post)?;
            if json {
                print!("{}", json_string(&serde_json::json!({ "probability": p }))?);
            } else {
                println!("{}", fmt_sig(p));
            }
        }
        Command::Hypergraph(cmd) => return hypergraph(cmd, json),
    }
    Ok(Outcome::Done)
}

fn hypergraph(cmd: &HypergraphCommand, json: bool) -> Result<Outcome> {
    match cmd {
        HypergraphCommand::Validate { file } => {
            let h = OrthoHypergraph::from_path(file)?;
            let violations = h.validate();
            if json {
                print!("{}", json_string(&violations)?);
            } else if violations.is_empty() {
                println!(
                    "valid: {} atoms, {} contexts",
                    h.atoms().len(),
                    h.contexts().len()
                );
            } else {
                for v in &violations {
                    println!("{v}");
                }
            }
            if !violations.is_empty() {
                return Ok(Outcome::Negative);
            }
        }
        HypergraphCommand::States {
            file,
            require,
            count,
        } => {
            let h = OrthoHypergraph::from_path(file)?;
            let constraints = require
                .iter()
                .map(|r| parse_requirement(r))
                .collect::<Result<TwoValuedState>>()?;
            let states = enumerate_total_states(&h, &constraints)?;
            if let Some(bad) = states
                .iter()
                .find(|s| !s.is_total_for(&h) || !constraints.is_extended_by(s))
            {
                return Ok(Outcome::Internal(format!(
                    "enumerated state is not admissible: {bad}"
                )));
            }
            if json {
                let value = if *count {
                    serde_json::json!({ "count": states.len() })
                } else {
                    serde_json::json!({ "count": states.len(), "states": states })
                };
                print!("{}", json_string(&value)?);
            } else {
                println!("{} total state(s)", states.len());
                if !*count {
                    for s in &states {
                        println!("{s}");
                    }
                }
            }
        }
        HypergraphCommand::Classify {
            file,
            terminals,
            expect,
        } => {
            let h = OrthoHypergraph::from_path(file)?;
            let r = classify_pair(&h, &terminals.from, &terminals.to)?;
            if json {
                print!("{}", json_string(&r)?);
            } else {
                println!("{}", r.relation);
                println!("states with {}=1, {}=1: {}", r.from, r.to, r.both_true);
                println!("states with {}=1, {}=0: {}", r.from, r.to, r.target_false);
            }
            if expect.is_some_and(|e| e != r.relation) {
                return Ok(Outcome::Negative);
            }
        }
        HypergraphCommand::Merge { first, second, out } => {
            let merged = merge(
                &OrthoHypergraph::from_path(first)?,
                &OrthoHypergraph::from_path(second)?,
            )?;
            write_output(out.as_deref(), merged.to_json().as_bytes())?;
        }
        HypergraphCommand::Verify { file, tol } => {
            let h = OrthoHypergraph::from_path(file)?;
            let report = verify_realization(&h, *tol)?;
            if json {
                print!("{}", json_string(&report)?);
            } else {
                println!("{report}");
            }
            if !report.pass {
                return Ok(Outcome::Negative);
            }
        }
        HypergraphCommand::Report { file, from } => {
            let h = OrthoHypergraph::from_path(file)?;
            let report = indefiniteness_report(&h, from)?;
            if json {
                print!("{}", json_string(&report)?);
            } else {
                println!(
                    "prepared {}: {} total state(s) with {}=1",
                    report.prepared, report.total_states, report.prepared
                );
                let width = report.atoms.iter().map(|(a, _)| a.len()).max().unwrap_or(0);
                for (atom, status) in &report.atoms {
                    println!("{atom:<width$}  {status}");
                }
            }
        }
        HypergraphCommand::Gap { file, terminals } => {
            let h = OrthoHypergraph::from_path(file)?;
            let gap = terminal_gap(&h, &terminals.from, &terminals.to)?;
            if json {
                print!("{}", json_string(&gap)?);
            } else {
                println!("classical: {}", gap.classical.relation);
                println!("quantum:   {}", fmt_sig(gap.quantum));
                if let Some(w) = &gap.warning {
                    println!("warning:   {w}");
                }
            }
        }
    }
    Ok(Outcome::Done)
}
