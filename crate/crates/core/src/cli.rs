//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 input error.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::analytic::{
    dubinin_bound, estimate_transfinite_diameter, polya_bound_for_series, theta_table, theta_table_csv,
};
use crate::audit::{ruzsa_audit, AuditConfig, Verdict};
use crate::binomial::{binomial_transform, check_primorial_divisibility, inverse_binomial_transform};
use crate::error::{Error, Result};
use crate::hankel::{detect_rationality, hankel_table, hankel_table_csv, max_order, verify_transform_invariance};
use crate::io::{parse_hedgehog, parse_polynomial, parse_sequence, sequence_json, sequence_lines};
use crate::sequences::{
    check_congruences, eval_polynomial_sequence, generate_hall_like, generate_primary, random_integers,
    CongruenceMode, ExactSequence,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ruzsa", about = "Exact audits for congruence-preserving integer sequences")]
struct Cli {
    /// Read input from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<std::path::PathBuf>,
    /// Output format (tables default to csv, reports to json).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate sequences.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Congruence and divisibility checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Binomial transform of a sequence.
    Transform {
        #[arg(value_enum)]
        direction: Direction,
    },
    /// Hankel determinant audits.
    #[command(subcommand)]
    Hankel(HankelCommand),
    /// Rational generating function detection.
    #[command(subcommand)]
    Rational(RationalCommand),
    /// Chebyshev theta tables.
    #[command(subcommand)]
    Theta(ThetaCommand),
    /// Hedgehog capacity bounds and estimates.
    #[command(subcommand)]
    Capacity(CapacityCommand),
    /// Full audit pipeline.
    Audit {
        #[arg(long, default_value_t = std::f64::consts::E)]
        growth_bound: f64,
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of terms.
    #[arg(long)]
    n: usize,
    /// Draw the free coefficients at random instead of reading them.
    #[arg(long)]
    seed: Option<u64>,
    /// Bound on random coefficients.
    #[arg(long, default_value_t = 5)]
    bound: i64,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Evaluate a polynomial (JSON coefficient array on input) at 0..N-1.
    Poly {
        #[arg(long)]
        n: usize,
    },
    /// Primary pseudo-polynomial from coefficients c_n (b_n = P_n c_n).
    Primary(GenArgs),
    /// Inductive CRT pseudo-polynomial from a perturbation sequence.
    Hall(GenArgs),
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    Congruences {
        #[arg(long, value_enum, default_value = "primary")]
        mode: CongruenceMode,
    },
    /// Primorial divisibility of the binomial transform.
    Primorial,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Subcommand)]
enum HankelCommand {
    Table {
        #[arg(long)]
        n_max: Option<usize>,
    },
    VerifyInvariance {
        #[arg(long)]
        n_max: Option<usize>,
    },
    VerifyDivisibility {
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum RationalCommand {
    Detect {
        #[arg(long, default_value_t = 3)]
        window: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ThetaCommand {
    Table {
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CapacityCommand {
    /// Dubinin bound for a hedgehog given as JSON [[re, im], ...].
    Bound,
    /// Leja-point estimate of the transfinite diameter.
    Estimate {
        #[arg(long, default_value_t = 64)]
        leja: usize,
        #[arg(long, default_value_t = 2048)]
        points: usize,
    },
    /// 1 / (4^{1/r} rho) for a series with radius rho and r singular directions.
    Series {
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        directions: usize,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    input: Option<std::path::PathBuf>,
}

impl Io<'_> {
    fn read_text(&mut self) -> Result<String> {
        let mut text = String::new();
        match &self.input {
            Some(path) => {
                text = std::fs::read_to_string(path)
                    .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?
            }
            None => {
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| Error::input(format!("cannot read stdin: {e}")))?;
            }
        }
        Ok(text)
    }

    fn read_sequence(&mut self) -> Result<ExactSequence> {
        parse_sequence(&self.read_text()?)
    }
}

/// Output text and exit status of one command.
struct Outcome {
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: EXIT_OK }
    }

    fn checked(text: String, pass: bool) -> Self {
        Outcome { text, status: if pass { EXIT_OK } else { EXIT_PROPERTY_FAILED } }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_sequence(seq: &ExactSequence, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Csv) {
        Format::Csv => sequence_lines(seq),
        Format::Json => {
            let mut s = sequence_json(seq);
            s.push('\n');
            s
        }
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run_cli(argv: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INPUT_ERROR;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let mut io = Io { stdin, input: cli.input.clone() };
    match execute(cli.command, cli.format, &mut io) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.text.as_bytes());
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_input() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_PROPERTY_FAILED
            }
        }
    }
}

fn execute(command: Command, format: Option<Format>, io: &mut Io<'_>) -> Result<Outcome> {
    match command {
        Command::Gen(g) => gen(g, format, io),
        Command::Check(CheckCommand::Congruences { mode }) => {
            let report = check_congruences(&io.read_sequence()?, mode)?;
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from("n,modulus,lhs_residue,rhs_residue\n");
                    for v in &report.violations {
                        s.push_str(&format!("{},{},{},{}\n", v.n, v.modulus, v.lhs_residue, v.rhs_residue));
                    }
                    s
                }
            };
            Ok(Outcome::checked(text, report.holds()))
        }
        Command::Check(CheckCommand::Primorial) => {
            let report = check_primorial_divisibility(&io.read_sequence()?)?;
            Ok(Outcome::checked(to_json(&report), report.pass))
        }
        Command::Transform { direction } => {
            let seq = io.read_sequence()?;
            let out = match direction {
                Direction::Forward => binomial_transform(&seq),
                Direction::Inverse => inverse_binomial_transform(&seq),
            };
            Ok(Outcome::ok(emit_sequence(&out, format)))
        }
        Command::Hankel(h) => hankel(h, format, io),
        Command::Rational(RationalCommand::Detect { window }) => {
            let detection = detect_rationality(&io.read_sequence()?, window)?;
            let body = json!({
                "rational": detection.function.is_some(),
                "function": detection.function,
                "evidence": detection.evidence,
            });
            Ok(Outcome::ok(to_json(&body)))
        }
        Command::Theta(ThetaCommand::Table { n_max }) => {
            let rows = theta_table(n_max);
            Ok(Outcome::ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => theta_table_csv(&rows),
                Format::Json => to_json(&rows),
            }))
        }
        Command::Capacity(c) => capacity(c, io),
        Command::Audit { growth_bound, window, n_max } => {
            let seq = io.read_sequence()?;
            let config = AuditConfig { growth_bound, window, n_max, ..AuditConfig::default() };
            let report = ruzsa_audit(&seq, &config)?;
            let failed = report.lemma_violation() || report.verdict == Verdict::CongruenceViolation;
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Csv => hankel_table_csv(&report.hankel),
            };
            Ok(Outcome::checked(text, !failed))
        }
    }
}

fn gen(g: GenCommand, format: Option<Format>, io: &mut Io<'_>) -> Result<Outcome> {
    let seq = match g {
        GenCommand::Poly { n } => eval_polynomial_sequence(&parse_polynomial(&io.read_text()?)?, n)?,
        GenCommand::Primary(args) => {
            let c = match args.seed {
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    ExactSequence::from_integers(random_integers(&mut rng, args.n.max(1), -args.bound, args.bound))?
                }
                None => io.read_sequence()?,
            };
            generate_primary(&c, args.n)?
        }
        GenCommand::Hall(args) => {
            let perturbation: Vec<BigInt> = match args.seed {
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    random_integers(&mut rng, args.n.max(1), 0, args.bound)
                }
                None => io.read_sequence()?.integer_terms()?,
            };
            generate_hall_like(args.n, &perturbation)?
        }
    };
    Ok(Outcome::ok(emit_sequence(&seq, format)))
}

fn hankel(h: HankelCommand, format: Option<Format>, io: &mut Io<'_>) -> Result<Outcome> {
    let seq = io.read_sequence()?;
    let default_n = max_order(seq.len());
    match h {
        HankelCommand::Table { n_max } => {
            let table = hankel_table(&seq, n_max.unwrap_or(default_n))?;
            Ok(Outcome::ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => hankel_table_csv(&table),
                Format::Json => to_json(&table),
            }))
        }
        HankelCommand::VerifyInvariance { n_max } => {
            let report = verify_transform_invariance(&seq, n_max.unwrap_or(default_n))?;
            Ok(Outcome::checked(to_json(&report), report.pass))
        }
        HankelCommand::VerifyDivisibility { n_max } => {
            let table = hankel_table(&seq, n_max.unwrap_or(default_n))?;
            let failing: Vec<usize> = table.iter().filter(|r| !r.divisible).map(|r| r.n).collect();
            let text = match format.unwrap_or(Format::Json) {
                Format::Csv => hankel_table_csv(&table),
                Format::Json => to_json(&json!({
                    "pass": failing.is_empty(),
                    "failing_orders": failing,
                    "table": table,
                })),
            };
            Ok(Outcome::checked(text, failing.is_empty()))
        }
    }
}

fn capacity(c: CapacityCommand, io: &mut Io<'_>) -> Result<Outcome> {
    match c {
        CapacityCommand::Bound => {
            let h = parse_hedgehog(&io.read_text()?)?;
            Ok(Outcome::ok(to_json(&json!({ "spikes": h.spikes(), "dubinin_bound": dubinin_bound(&h) }))))
        }
        CapacityCommand::Estimate { leja, points } => {
            let h = parse_hedgehog(&io.read_text()?)?;
            let estimate = estimate_transfinite_diameter(&h, leja, points)?;
            Ok(Outcome::ok(to_json(&json!({
                "spikes": h.spikes(),
                "leja_points": leja,
                "points_per_spike": points,
                "estimate": estimate,
                "dubinin_bound": dubinin_bound(&h),
            }))))
        }
        CapacityCommand::Series { rho, directions } => {
            let bound = polya_bound_for_series(rho, directions)?;
            Ok(Outcome::ok(to_json(&json!({ "rho": rho, "directions": directions, "bound": bound }))))
        }
    }
}
