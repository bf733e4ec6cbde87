//! The `k3type` command line.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decision::{compact_notation, corollary_route, enumerate_admissible, is_k3_type, AdmissibleCase, K3Verdict};
use crate::error::{Error, Result};
use crate::io::{parse_problem, parse_quadratic_or_problem, to_json, GramReport, InvariantsReport};
use crate::number_field::FieldKind;
use crate::quadratic::lambda_space;
use crate::witness::{case3_obstruction, construct_period_witness, Case3Obstruction, DEFAULT_TOLERANCE};

#[derive(Debug, Parser)]
#[command(name = "k3type", version, about = "Decide whether hermitian forms over number fields are of K3 type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the K3 verdict for a problem description ("-" reads stdin).
    Decide {
        file: String,
        #[arg(long, value_enum, default_value_t = Route::Theorem1)]
        route: Route,
    },
    /// Rank, signature, discriminant and Hasse invariants of the trace form (or of a raw {"gram": …}).
    Invariants { file: String },
    /// The full rational Gram matrix of the trace form.
    TraceForm { file: String },
    /// Admissible (m, r) or (m, s) pairs.
    Enumerate {
        #[arg(long = "case", value_enum)]
        case: CaseArg,
    },
    /// A numeric period vector f with B(f,f) = 0 and B(f, conj f) > 0.
    Witness {
        file: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Invariants of the K3 lattice tensored with Q.
    Lambda,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Route {
    Theorem1,
    Corollary,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CaseArg {
    Tr,
    Cm,
}

#[derive(Serialize)]
struct BothRoutes {
    agree: bool,
    theorem1: K3Verdict,
    corollary: K3Verdict,
}

#[derive(Serialize)]
struct PairList {
    compact: String,
    pairs: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct EnumerateReport {
    case: &'static str,
    labels: &'static str,
    necessary: PairList,
    sufficient: PairList,
}

#[derive(Serialize)]
struct ObstructionReport {
    case: u8,
    obstruction: Case3Obstruction,
}

fn read_input(file: &str) -> Result<String> {
    let mut text = String::new();
    if file == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Error::InvalidInput(format!("{file}: {e}")))?;
    }
    Ok(text)
}

fn pair_list(pairs: &std::collections::BTreeSet<(usize, usize)>) -> PairList {
    PairList { compact: compact_notation(pairs), pairs: pairs.iter().map(|&(a, b)| [a, b]).collect() }
}

fn execute(command: Command) -> Result<String> {
    Ok(match command {
        Command::Decide { file, route } => {
            let problem = parse_problem(&read_input(&file)?)?;
            match route {
                Route::Theorem1 => to_json(&is_k3_type(&problem.space)?),
                Route::Corollary => to_json(&corollary_route(&problem.space)?),
                Route::Both => {
                    let theorem1 = is_k3_type(&problem.space)?;
                    let corollary = corollary_route(&problem.space)?;
                    to_json(&BothRoutes { agree: theorem1.is_k3_type == corollary.is_k3_type, theorem1, corollary })
                }
            }
        }
        Command::Invariants { file } => to_json(&InvariantsReport::of(&parse_quadratic_or_problem(&read_input(&file)?)?)),
        Command::TraceForm { file } => {
            let problem = parse_problem(&read_input(&file)?)?;
            to_json(&GramReport::of(&problem.space.trace_form()?))
        }
        Command::Enumerate { case } => {
            let (name, labels, kind) = match case {
                CaseArg::Tr => ("tr", "(m,r)", AdmissibleCase::TotallyReal),
                CaseArg::Cm => ("cm", "(m,s)", AdmissibleCase::Cm),
            };
            let a = enumerate_admissible(kind);
            to_json(&EnumerateReport {
                case: name,
                labels,
                necessary: pair_list(&a.necessary),
                sufficient: pair_list(&a.sufficient),
            })
        }
        Command::Witness { file, seed, tol } => {
            let problem = parse_problem(&read_input(&file)?)?;
            let space = &problem.space;
            if space.kind() == FieldKind::TotallyReal && space.dim() == 2 {
                to_json(&ObstructionReport { case: 3, obstruction: case3_obstruction(space)? })
            } else {
                let seed = seed.or(problem.options.seed).unwrap_or(0);
                let tol = tol.or(problem.options.tolerance).unwrap_or(DEFAULT_TOLERANCE);
                if !(tol > 0.0) {
                    return Err(Error::InvalidInput("--tol must be positive".into()));
                }
                to_json(&construct_period_witness(space, seed, tol)?)
            }
        }
        Command::Lambda => to_json(&InvariantsReport::of(&lambda_space())),
    })
}

/// Runs the CLI; returns 0 when a result was computed, 2 on invalid input, 3 on internal errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                3
            } else {
                2
            }
        }
    }
}
