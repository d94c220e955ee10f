//! The `cdclwidth` command line.
//!
//! Exit statuses: 10 when a verified model is printed, 20 when the formula
//! was refuted, 1 on usage, I/O or parse errors, 0 otherwise.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use cdclwidth_core::absorption::{
    absorbed_at, absorption_witness, beneficial_check, empowering_at, entails, find_beneficial_round,
    AbsorptionError,
};
use cdclwidth_core::cnf::{parse_dimacs, Clause, CnfFormula, DimacsError, Literal, Model, Trail};
use cdclwidth_core::harness::{
    extract_model, generate_formula, run_trials, write_summary_csv, write_trials_csv, BoundPolicy,
    ExtractionOutcome, FormulaFamily, HarnessError,
};
use cdclwidth_core::resolution::{saturate_bounded_width, verify_refutation, write_refutation, ProofCheck, Saturation};
use cdclwidth_core::solver::{replay_decisions, solve, Scheme, SolverConfig, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Dimacs { path: PathBuf, source: DimacsError },
    #[error("invalid clause `{text}`: {reason}")]
    ClauseSyntax { text: String, reason: String },
    #[error(transparent)]
    Absorption(#[from] AbsorptionError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Invalid(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "cdclwidth", version, about = "Clause-learning solver with absorption analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a DIMACS CNF file.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        max_conflicts: Option<u64>,
        /// Write the event log here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Search for a resolution refutation of bounded width.
    ProveWidth {
        file: PathBuf,
        #[arg(long)]
        width: usize,
        /// Write the refutation here instead of stdout.
        #[arg(long)]
        proof: Option<PathBuf>,
    },
    /// Per-literal absorption of a clause by the file's clauses.
    Absorb {
        file: PathBuf,
        /// DIMACS literals, e.g. "1 -3 0".
        #[arg(long, allow_hyphen_values = true)]
        clause: String,
    },
    /// Per-literal 1-empowerment of a clause.
    Empower {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        clause: String,
        /// Only this literal.
        #[arg(long, allow_hyphen_values = true)]
        lit: Option<i32>,
    },
    /// Check a round for being beneficial, or search for one.
    Beneficial {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        clause: String,
        #[arg(long, allow_hyphen_values = true, requires = "decisions")]
        lit: Option<i32>,
        /// Decision literals of the round, e.g. "-4 -5 0".
        #[arg(long, allow_hyphen_values = true, requires = "lit")]
        decisions: Option<String>,
    },
    /// Run seeded trials on a generated family and write CSV.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        /// Chain length, or number of pigeons.
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Trials CSV.
        #[arg(long)]
        out: PathBuf,
        /// Summary CSV; printed to stdout when absent.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Largest width tried when certifying the conflict bound.
        #[arg(long, default_value_t = 4)]
        certify_width: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Build a model from budgeted solver runs on restrictions.
    ExtractModel {
        file: PathBuf,
        #[arg(long)]
        width: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Decision,
    #[value(name = "1uip")]
    FirstUip,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Chain,
    ChainSat,
    Php,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "1uip")]
    scheme: SchemeArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    restart_every: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    random_period: u64,
    /// Run seed; for bench, the seed of trial 0 (trial i uses seed + i).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let scheme = match self.scheme {
            SchemeArg::Decision => Scheme::Decision,
            SchemeArg::FirstUip => Scheme::FirstUip,
        };
        SolverConfig {
            restart_interval: self.restart_every,
            random_decision_period: self.random_period,
            ..SolverConfig::new(scheme, self.seed)
        }
    }
}

/// Parses and runs one invocation, returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_ERROR
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_formula(path: &Path, err: &mut dyn Write) -> Result<CnfFormula, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let parsed = parse_dimacs(&text).map_err(|source| CliError::Dimacs {
        path: path.to_owned(),
        source,
    })?;
    for w in &parsed.warnings {
        writeln!(err, "c warning: {}: {w:?}", path.display())?;
    }
    Ok(parsed.formula)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Signed integers, optionally terminated by a single trailing `0`.
fn parse_literals(text: &str) -> Result<Vec<Literal>, CliError> {
    let bad = |reason: &str| CliError::ClauseSyntax {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let mut lits = Vec::new();
    let mut terminated = false;
    for tok in text.split_whitespace() {
        if terminated {
            return Err(bad("literals after the terminating 0"));
        }
        let v: i32 = tok.parse().map_err(|_| bad(&format!("`{tok}` is not an integer")))?;
        if v == 0 {
            terminated = true;
        } else {
            lits.push(Literal::from_dimacs(v));
        }
    }
    Ok(lits)
}

fn parse_clause(text: &str, num_vars: usize) -> Result<Clause, CliError> {
    let lits = parse_literals(text)?;
    if let Some(l) = lits.iter().find(|l| l.var().index() as usize > num_vars) {
        return Err(CliError::ClauseSyntax {
            text: text.to_string(),
            reason: format!("literal {l} is outside the formula's {num_vars} variables"),
        });
    }
    Ok(Clause::new(lits))
}

fn model_line(model: &Model) -> String {
    let mut line = String::from("v");
    for (i, &v) in model.values().iter().enumerate() {
        let x = i as i64 + 1;
        line.push_str(&format!(" {}", if v { x } else { -x }));
    }
    line.push_str(" 0");
    line
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_round(out: &mut dyn Write, trail: &Trail) -> Result<(), CliError> {
    writeln!(out, "c round with {} assignments", trail.len())?;
    for e in trail.entries() {
        writeln!(out, "{e}")?;
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Solve {
            file,
            solver,
            max_conflicts,
            trace,
        } => {
            let formula = read_formula(&file, err)?;
            let cfg = SolverConfig {
                max_conflicts,
                record_trace: trace.is_some(),
                ..solver.config()
            };
            let result = solve(&formula, &cfg);
            if let Some(path) = &trace {
                write_file(path, &result.trace_text())?;
            }
            writeln!(
                out,
                "c conflicts {} restarts {} decisions {}",
                result.stats.conflicts, result.stats.restarts, result.stats.decisions
            )?;
            Ok(match &result.verdict {
                Verdict::Sat(model) => {
                    writeln!(out, "s SATISFIABLE\n{}", model_line(model))?;
                    EXIT_SAT
                }
                Verdict::Unsat => {
                    writeln!(out, "s UNSATISFIABLE")?;
                    EXIT_UNSAT
                }
                Verdict::Indeterminate => {
                    writeln!(out, "s UNKNOWN")?;
                    EXIT_OK
                }
            })
        }
        Command::ProveWidth { file, width, proof } => {
            let formula = read_formula(&file, err)?;
            let sat = saturate_bounded_width(&formula, width);
            for c in sat.excluded_axioms() {
                writeln!(out, "c axiom wider than {width} left out: {c}")?;
            }
            match sat {
                Saturation::Refuted { refutation, .. } => {
                    let ProofCheck::Valid { length, width: w } = verify_refutation(&formula, &refutation) else {
                        return Err(CliError::Invalid("saturation produced an invalid refutation".into()));
                    };
                    writeln!(out, "s REFUTED length {length} width {w}")?;
                    let text = write_refutation(&refutation);
                    match &proof {
                        Some(path) => write_file(path, &text)?,
                        None => out.write_all(text.as_bytes())?,
                    }
                }
                Saturation::Saturated { clauses, .. } => {
                    writeln!(out, "s SATURATED width {width} clauses {clauses}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Absorb { file, clause } => {
            let formula = read_formula(&file, err)?;
            let c = parse_clause(&clause, formula.num_vars())?;
            if c.is_empty() {
                return Err(AbsorptionError::EmptyClause.into());
            }
            let mut all = true;
            for l in c.iter() {
                let a = absorbed_at(&formula, &c, l)?;
                all &= a;
                writeln!(out, "absorbed at {l}: {}", yes_no(a))?;
                if let Some(trail) = absorption_witness(&formula, &c, l)? {
                    write_round(out, &trail)?;
                }
            }
            writeln!(out, "absorbed: {}", yes_no(all))?;
            Ok(EXIT_OK)
        }
        Command::Empower { file, clause, lit } => {
            let formula = read_formula(&file, err)?;
            let c = parse_clause(&clause, formula.num_vars())?;
            if c.is_empty() {
                return Err(AbsorptionError::EmptyClause.into());
            }
            let lits: Vec<Literal> = match lit {
                Some(0) => return Err(CliError::Invalid("--lit must be non-zero".into())),
                Some(v) => vec![Literal::from_dimacs(v)],
                None => c.iter().collect(),
            };
            writeln!(out, "entailed: {}", yes_no(entails(&formula, &c)?))?;
            for l in lits {
                let e = empowering_at(&formula, &c, l)?;
                writeln!(out, "empowering at {l}: {}", yes_no(e))?;
                // the round propagation fails to complete, when there is one
                if let Some(trail) = absorption_witness(&formula, &c, l)? {
                    write_round(out, &trail)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Beneficial {
            file,
            clause,
            lit,
            decisions,
        } => {
            let formula = read_formula(&file, err)?;
            let c = parse_clause(&clause, formula.num_vars())?;
            match (lit, decisions) {
                (Some(l), Some(ds)) => {
                    if l == 0 {
                        return Err(CliError::Invalid("--lit must be non-zero".into()));
                    }
                    let ds = parse_literals(&ds)?;
                    let (trail, conflict) = replay_decisions(formula.clauses(), formula.num_vars(), &ds)
                        .map_err(|e| CliError::Invalid(e.to_string()))?;
                    if conflict.is_some() {
                        return Err(AbsorptionError::InvalidRound("the decisions reach a conflict".into()).into());
                    }
                    let b = beneficial_check(&formula, &c, Literal::from_dimacs(l), &trail)?;
                    write_round(out, &trail)?;
                    writeln!(out, "beneficial at {l}: {}", yes_no(b))?;
                }
                _ => match find_beneficial_round(&formula, &c)? {
                    Some(w) => {
                        let (trail, _) = replay_decisions(formula.clauses(), formula.num_vars(), &w.decisions)
                            .map_err(|e| CliError::Invalid(e.to_string()))?;
                        writeln!(out, "beneficial at {}: yes", w.literal)?;
                        write_round(out, &trail)?;
                    }
                    None => writeln!(out, "beneficial: no")?,
                },
            }
            Ok(EXIT_OK)
        }
        Command::Bench {
            family,
            n,
            trials,
            out: out_path,
            summary,
            certify_width,
            solver,
        } => {
            let fam = match family {
                Family::Chain => FormulaFamily::ChainUnsat { n },
                Family::ChainSat => FormulaFamily::ChainSat { n },
                Family::Php => FormulaFamily::Pigeonhole { pigeons: n },
            };
            let formula = generate_formula(&fam)?;
            let cfg = SolverConfig {
                record_trace: false,
                ..solver.config()
            };
            let policy = match family {
                Family::ChainSat => BoundPolicy::None,
                _ => BoundPolicy::Certify {
                    max_width: certify_width,
                },
            };
            let set = run_trials(&formula, &cfg, trials as usize, cfg.seed, policy)?;
            write_file(&out_path, &write_trials_csv(&set.records))?;
            let csv = write_summary_csv(&[set.summary(fam.name(), &fam.params())]);
            match &summary {
                Some(path) => write_file(path, &csv)?,
                None => out.write_all(csv.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::ExtractModel { file, width, solver } => {
            let formula = read_formula(&file, err)?;
            let report = extract_model(&formula, width, &solver.config())?;
            writeln!(out, "c solver runs {} budget {}", report.solver_runs, report.budget)?;
            Ok(match report.outcome {
                ExtractionOutcome::Model(m) => {
                    writeln!(out, "s SATISFIABLE\n{}", model_line(&m))?;
                    EXIT_SAT
                }
                ExtractionOutcome::Unsat => {
                    writeln!(out, "s UNSATISFIABLE")?;
                    EXIT_UNSAT
                }
                ExtractionOutcome::Inconclusive => {
                    writeln!(out, "s INCONCLUSIVE")?;
                    EXIT_OK
                }
            })
        }
    }
}
