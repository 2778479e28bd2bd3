//! The `infval` command line, as a library so it can be driven from tests.
//!
//! [`run`] parses arguments, reads the program, executes one subcommand and
//! returns the exit code together with everything that would have been
//! written to stdout and stderr.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use infval::engine::{collapse_model, solve_with, EngineError, SolveOptions, SolveTrace};
use infval::interp::{is_model, violations, Interpretation, ThreeValuedInterpretation};
use infval::lang::{LangError, Program};
use infval::oracle::{
    intersection_sequence, random_program, verify_minimum, OracleError, DEFAULT_MAX_CANDIDATES,
};
use infval::wfs::well_founded;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "infval",
    version,
    about = "Minimum infinite-valued models of normal logic programs"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Program file; standard input when omitted.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Truncation level for enumeration; defaults to the model depth plus 2.
    #[arg(long)]
    pub k: Option<u32>,

    /// Refuse to enumerate more candidate interpretations than this.
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    pub max_candidates: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the ground program in canonical form.
    Ground(Input),
    /// Compute the minimum model.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Include every stage and iterate.
        #[arg(long)]
        trace: bool,
    },
    /// Compare the collapsed minimum model with the well-founded model.
    Wfm(Input),
    /// Check whether an interpretation is a model of the program.
    Check {
        #[command(flatten)]
        input: Input,
        /// JSON object mapping atoms to values, or the output of `solve`.
        #[arg(long)]
        interp: PathBuf,
    },
    /// Check minimality of the computed model against every enumerated model.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Run the model intersection sequence over the enumerated models.
    Intersect {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Print a random propositional program.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        atoms: usize,
        #[arg(long, default_value_t = 6)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        max_body: usize,
        #[arg(long, default_value_t = 0.3)]
        neg_prob: f64,
    },
}

/// Exit code plus captured output streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `stdin` is read only when the command needs a program and no path is given.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdin),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::error(EXIT_INPUT, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    match execute_inner(cli, stdin) {
        Ok(out) => out,
        Err(out) => out,
    }
}

fn execute_inner(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Ground(input) => {
            let (_, program) = load(input, stdin)?;
            let out = match format {
                Format::Text => program.to_string(),
                Format::Json => render_json(&json!({
                    "base": program.base().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "clauses": program
                        .clauses()
                        .iter()
                        .map(|c| program.display_clause(c))
                        .collect::<Vec<_>>(),
                })),
            };
            Ok(Outcome::ok(out))
        }
        Command::Solve { input, trace } => {
            let (_, program) = load(input, stdin)?;
            let result = solve_program(&program, *trace)?;
            let out = match format {
                Format::Json => render_json(&result.to_json(&program, *trace)),
                Format::Text => solve_text(&program, &result, *trace),
            };
            Ok(Outcome::ok(out))
        }
        Command::Wfm(input) => {
            let (_, program) = load(input, stdin)?;
            let result = solve_program(&program, false)?;
            let collapsed = collapse_model(&result.model);
            let reference = well_founded(&program);
            let agree = collapsed == reference;
            let out = match format {
                Format::Json => render_json(&json!({
                    "collapsed": collapsed.to_json(&program),
                    "well_founded": reference.to_json(&program),
                    "agree": agree,
                })),
                Format::Text => wfm_text(&program, &collapsed, &reference, agree),
            };
            Ok(Outcome::with_code(
                if agree { EXIT_OK } else { EXIT_FAILED },
                out,
            ))
        }
        Command::Check { input, interp } => {
            let (_, program) = load(input, stdin)?;
            let interp = load_interpretation(&program, interp)?;
            let model = is_model(&interp, &program);
            let broken: Vec<String> = violations(&interp, &program)
                .into_iter()
                .map(|c| program.display_clause(c))
                .collect();
            let out = match format {
                Format::Json => render_json(&json!({ "model": model, "violations": broken })),
                Format::Text => {
                    let mut s = format!("model: {model}\n");
                    for c in &broken {
                        let _ = writeln!(s, "violated: {c}");
                    }
                    s
                }
            };
            Ok(Outcome::with_code(
                if model { EXIT_OK } else { EXIT_FAILED },
                out,
            ))
        }
        Command::Verify { input, oracle } => {
            let (_, program) = load(input, stdin)?;
            let result = solve_program(&program, false)?;
            let k = oracle.k.unwrap_or(result.depth + 2);
            let report = verify_minimum(&program, &result.model, k, oracle.max_candidates)
                .map_err(oracle_error)?;
            let out = match format {
                Format::Json => render_json(&report.to_json(&program)),
                Format::Text => {
                    let mut s = format!(
                        "k: {k}\nmodels: {}\nminimal: {}\n",
                        report.model_count, report.minimal
                    );
                    if let Some(cx) = &report.counterexample {
                        let _ = writeln!(s, "counterexample: {}", cx.display(&program));
                    }
                    s
                }
            };
            Ok(Outcome::with_code(
                if report.minimal { EXIT_OK } else { EXIT_FAILED },
                out,
            ))
        }
        Command::Intersect { input, oracle } => {
            let (_, program) = load(input, stdin)?;
            let result = solve_program(&program, false)?;
            let k = oracle.k.unwrap_or(result.depth + 2);
            let report =
                intersection_sequence(&program, k, oracle.max_candidates).map_err(oracle_error)?;
            let agrees = report.singleton() == Some(&result.model);
            let out = match format {
                Format::Json => {
                    let mut v = report.to_json(&program);
                    v["intersection"]["agrees_with_solve"] = Value::Bool(agrees);
                    render_json(&v)
                }
                Format::Text => {
                    let mut s = format!(
                        "k: {k}\nmodels: {}\ndelta: {}\n",
                        report.model_count, report.delta
                    );
                    for (level, stage) in report.stages.iter().enumerate() {
                        let _ = writeln!(s, "S_{level}: {} models", stage.len());
                    }
                    match report.singleton() {
                        Some(m) => {
                            let _ = writeln!(s, "singleton: {}", m.display(&program));
                        }
                        None => {
                            let _ = writeln!(
                                s,
                                "singleton: none ({} survivors)",
                                report.survivors.len()
                            );
                        }
                    }
                    let _ = writeln!(s, "agrees with solve: {agrees}");
                    s
                }
            };
            Ok(Outcome::with_code(
                if agrees { EXIT_OK } else { EXIT_FAILED },
                out,
            ))
        }
        Command::Generate {
            seed,
            atoms,
            clauses,
            max_body,
            neg_prob,
        } => {
            if !(0.0..=1.0).contains(neg_prob) {
                return Err(Outcome::error(
                    EXIT_INPUT,
                    format!("error: --neg-prob must lie in [0, 1], got {neg_prob}"),
                ));
            }
            let program = random_program(*seed, *atoms, *clauses, *max_body, *neg_prob);
            Ok(Outcome::ok(program.to_string()))
        }
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn read_source(path: Option<&Path>, stdin: &mut dyn Read) -> Result<(String, String), Outcome> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map(|text| (p.display().to_string(), text))
            .map_err(|e| Outcome::error(EXIT_INPUT, format!("error: {}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Outcome::error(EXIT_INPUT, format!("error: <stdin>: {e}")))?;
            Ok(("<stdin>".to_string(), text))
        }
    }
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<(String, Program), Outcome> {
    let (name, text) = read_source(input.path.as_deref(), stdin)?;
    match Program::parse(&text) {
        Ok(p) => Ok((name, p)),
        Err(e) => Err(lang_error(&name, &e)),
    }
}

fn lang_error(name: &str, e: &LangError) -> Outcome {
    let code = if e.is_resource_limit() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    };
    Outcome::error(code, format!("error: {name}:{e}"))
}

fn load_interpretation(program: &Program, path: &Path) -> Result<Interpretation, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("error: {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("error: {}: {e}", path.display())))?;
    let inner = match value.get("model") {
        Some(m @ Value::Object(_)) => m,
        _ => &value,
    };
    Interpretation::from_json(program, inner)
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("error: {}: {e}", path.display())))
}

fn solve_program(program: &Program, trace: bool) -> Result<SolveTrace, Outcome> {
    let options = SolveOptions {
        trace,
        check_beyond_depth: false,
    };
    solve_with(program, options).map_err(|e| {
        let code = match e {
            EngineError::IterationCap { .. } | EngineError::DepthExceeded { .. } => EXIT_RESOURCE,
            EngineError::NotAChain { .. } | EngineError::BeyondDepth { .. } => EXIT_FAILED,
        };
        Outcome::error(code, format!("error: {e}"))
    })
}

fn oracle_error(e: OracleError) -> Outcome {
    match e {
        OracleError::TooManyCandidates { .. } => Outcome::error(
            EXIT_RESOURCE,
            format!("error: {e}; lower --k or raise --max-candidates"),
        ),
    }
}

fn atom_width(program: &Program) -> usize {
    program
        .base()
        .iter()
        .map(|a| a.to_string().len())
        .max()
        .unwrap_or(0)
        .max(4)
}

fn solve_text(program: &Program, result: &SolveTrace, trace: bool) -> String {
    let width = atom_width(program);
    let wfm = result.well_founded();
    let mut s = format!(
        "depth: {}\n{:<width$}  {:<5}  wfm\n",
        result.depth, "atom", "value"
    );
    for id in program.atom_ids() {
        let _ = writeln!(
            s,
            "{:<width$}  {:<5}  {}",
            program.atom(id).to_string(),
            result.model.get(id).to_string(),
            wfm.get(id)
        );
    }
    if trace {
        for stage in &result.stages {
            let _ = writeln!(s, "\nstage {}", stage.level);
            for (n, it) in stage.iterates.iter().enumerate() {
                let _ = writeln!(s, "  {n}: {}", it.display(program));
            }
        }
    }
    s
}

fn wfm_text(
    program: &Program,
    collapsed: &ThreeValuedInterpretation,
    reference: &ThreeValuedInterpretation,
    agree: bool,
) -> String {
    let width = atom_width(program);
    let mut s = format!("{:<width$}  {:<9}  well-founded\n", "atom", "collapsed");
    for id in program.atom_ids() {
        let _ = writeln!(
            s,
            "{:<width$}  {:<9}  {}",
            program.atom(id).to_string(),
            collapsed.get(id).as_str(),
            reference.get(id)
        );
    }
    let _ = writeln!(s, "agree: {agree}");
    s
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
