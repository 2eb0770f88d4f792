//! `hyperltl`: command-line frontend to the `hyperltl` library. Every
//! subcommand prints either text or one JSON object and reports through its
//! exit code.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperltl::implication::{implication_report, ImplicationError, ImplicationVerdict};
use hyperltl::models::{parse_trace_set, EvalError, TraceSet};
use hyperltl::pcp::{encode_pcp, encode_solution_traceset, PcpInstance, PcpSolution};
use hyperltl::solver::{hyper_sat, HyperSatResult, SolverError, SolverOptions, SolverStats};
use hyperltl::syntax::{parse_hyperltl, HyperFormula};
use hyperltl::{classify, evaluate_hyperltl};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "hyperltl", version, about = "Decision procedures for HyperLTL")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Print the model (or countermodel) in trace-set format.
    #[arg(long, global = true)]
    model: bool,
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Skip re-checking models with the direct evaluator.
    #[arg(long, global = true)]
    no_verify: bool,
    /// Largest number of substituted copies when unrolling universal quantifiers.
    #[arg(long, global = true, value_name = "N", default_value_t = 1_000_000)]
    max_unroll: usize,
    /// Largest aligned loop period the evaluator accepts.
    #[arg(long, global = true, value_name = "N", default_value_t = 10_000)]
    max_period: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability of a formula (`-` reads stdin).
    Sat { file: String },
    /// Decide whether formula A implies formula B.
    Implies { a: String, b: String },
    /// Print the quantifier-prefix fragment of a formula.
    Classify { file: String },
    /// Encode a PCP instance (JSON) as a HyperLTL formula.
    EncodePcp {
        instance: String,
        /// Print the witness trace set of this solution (JSON `{"indices": [...]}`) instead.
        #[arg(long, value_name = "FILE")]
        solution: Option<String>,
    },
    /// Evaluate a formula on a trace set.
    Eval {
        #[arg(value_name = "MODEL")]
        traces: String,
        file: String,
    },
}

#[derive(Serialize, Default)]
struct Stats {
    conjuncts: Option<usize>,
    automaton_states: Option<usize>,
}

impl From<SolverStats> for Stats {
    fn from(s: SolverStats) -> Self {
        Stats {
            conjuncts: Some(s.conjuncts),
            automaton_states: Some(s.automaton_states),
        }
    }
}

#[derive(Serialize, Default)]
struct Report {
    verdict: String,
    model: Option<Vec<String>>,
    stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    fragment: Option<hyperltl::FragmentClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

/// A failed invocation and its exit code.
struct Failure {
    code: u8,
    verdict: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            verdict: "ERROR",
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            verdict: "INTERNAL-ERROR",
            message: message.into(),
        }
    }

    fn guard(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            verdict: "LIMIT-EXCEEDED",
            message: message.into(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Eval(g @ EvalError::PeriodGuard { .. }) => Failure::guard(g.to_string()),
            other => Failure::internal(other.to_string()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        SolverError::Eval(e).into()
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::input(format!("{path}: {e}")))?;
    Ok(text)
}

fn read_formula(path: &str) -> Result<HyperFormula, Failure> {
    parse_hyperltl(&read_input(path)?).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn read_traces(path: &str) -> Result<TraceSet, Failure> {
    parse_trace_set(&read_input(path)?).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn model_lines(model: &TraceSet) -> Vec<String> {
    model.iter().map(|t| t.to_string()).collect()
}

/// Runs one subcommand; `Ok` carries the report and exit code.
fn run(cli: &Cli) -> Result<(Report, u8), Failure> {
    let flags = &cli.flags;
    let opts = SolverOptions {
        unroll_limit: flags.max_unroll,
        verify_models: !flags.no_verify,
        period_guard: flags.max_period,
    };
    match &cli.command {
        Command::Sat { file } => {
            let formula = read_formula(file)?;
            let report = hyper_sat(&formula, &opts)?;
            let stats = Stats::from(report.stats);
            Ok(match report.result {
                HyperSatResult::Sat { model, .. } => (
                    Report {
                        verdict: "SAT".into(),
                        model: flags.model.then(|| model_lines(&model)),
                        stats,
                        ..Report::default()
                    },
                    0,
                ),
                HyperSatResult::Unsat => (
                    Report {
                        verdict: "UNSAT".into(),
                        stats,
                        ..Report::default()
                    },
                    0,
                ),
                HyperSatResult::UnsupportedFragment { class, message } => (
                    Report {
                        verdict: format!("UNSUPPORTED: {}", class.name()),
                        stats,
                        fragment: Some(class),
                        message: Some(message),
                        ..Report::default()
                    },
                    3,
                ),
                HyperSatResult::BlowupExceeded { required, limit } => {
                    return Err(Failure::guard(format!(
                        "unrolling needs {required} substituted copies, limit is {limit}"
                    )))
                }
            })
        }
        Command::Implies { a, b } => {
            let (a, b) = (read_formula(a)?, read_formula(b)?);
            let (verdict, stats) = implication_report(&a, &b, &opts).map_err(|e| match e {
                ImplicationError::BlowupExceeded { .. } => Failure::guard(e.to_string()),
                ImplicationError::Solver(s) => s.into(),
            })?;
            Ok(match verdict {
                ImplicationVerdict::Holds => (
                    Report {
                        verdict: "HOLDS".into(),
                        stats: stats.into(),
                        ..Report::default()
                    },
                    0,
                ),
                ImplicationVerdict::Fails(model) => (
                    Report {
                        verdict: "FAILS".into(),
                        model: flags.model.then(|| model_lines(&model)),
                        stats: stats.into(),
                        ..Report::default()
                    },
                    0,
                ),
                ImplicationVerdict::Unsupported(message) => (
                    Report {
                        verdict: "UNSUPPORTED".into(),
                        message: Some(message),
                        ..Report::default()
                    },
                    3,
                ),
            })
        }
        Command::Classify { file } => {
            let class = classify(&read_formula(file)?);
            Ok((
                Report {
                    verdict: class.name().into(),
                    fragment: Some(class),
                    ..Report::default()
                },
                0,
            ))
        }
        Command::EncodePcp { instance, solution } => {
            let inst = PcpInstance::from_json(&read_input(instance)?)
                .map_err(|e| Failure::input(format!("{instance}: {e}")))?;
            let formula = encode_pcp(&inst);
            let model = match solution {
                None => None,
                Some(path) => {
                    let sol: PcpSolution = serde_json::from_str(&read_input(path)?)
                        .map_err(|e| Failure::input(format!("{path}: {e}")))?;
                    let set = encode_solution_traceset(&inst, &sol.indices)
                        .map_err(|e| Failure::input(format!("{path}: {e}")))?;
                    Some(model_lines(&set))
                }
            };
            Ok((
                Report {
                    verdict: "ENCODED".into(),
                    model,
                    fragment: Some(classify(&formula)),
                    formula: Some(formula.to_string()),
                    ..Report::default()
                },
                0,
            ))
        }
        Command::Eval { traces, file } => {
            let traces = read_traces(traces)?;
            let formula = read_formula(file)?;
            let holds = evaluate_hyperltl(&traces, &formula, opts.period_guard)?;
            Ok((
                Report {
                    verdict: if holds { "TRUE" } else { "FALSE" }.into(),
                    ..Report::default()
                },
                0,
            ))
        }
    }
}

fn print_text(cli: &Cli, report: &Report) {
    match &cli.command {
        Command::EncodePcp { solution, .. } => match (solution, &report.model) {
            (Some(_), Some(lines)) => lines.iter().for_each(|l| println!("{l}")),
            _ => println!("{}", report.formula.as_deref().unwrap_or_default()),
        },
        _ => {
            println!("{}", report.verdict);
            if let Some(lines) = &report.model {
                lines.iter().for_each(|l| println!("{l}"));
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match run(&cli) {
        Ok(done) => done,
        Err(f) => {
            if !cli.flags.json {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.code);
            }
            (
                Report {
                    verdict: f.verdict.into(),
                    message: Some(f.message),
                    ..Report::default()
                },
                f.code,
            )
        }
    };
    if cli.flags.json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        print_text(&cli, &report);
        if code == 3 {
            if let Some(m) = &report.message {
                eprintln!("{m}");
            }
        }
    }
    ExitCode::from(code)
}
