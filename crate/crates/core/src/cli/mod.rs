//! Command-line entry points: `check`, `gen` and `repl`.

mod map;
mod repl;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::checker::{CheckError, Checker, PlanVerdict};
use crate::codegen::{generate_cspm, CodegenError, CodegenOptions, VerifiedPlan};
use crate::kernel::{KernelError, DEFAULT_STATE_CAP};
use crate::model::WorldSpec;
use crate::plan_io::{parse_plan, parse_world, Plan};

pub use map::{render as render_map, render_world as render_world_map};
pub use repl::{run_repl, Repl, SessionState};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    PlanInvalid = 1,
    GoalUnreachable = 2,
    ConfigError = 3,
    BoundExceeded = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "turtle-csp",
    version,
    about = "Check turtle plans against a CSP grid-world model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a plan and the goal's reachability
    Check(CheckArgs),
    /// Check a plan and write the requested artifacts if it is valid
    Gen(GenArgs),
    /// Interactive session
    Repl(ReplArgs),
}

#[derive(Debug, Args)]
struct WorldArgs {
    /// World description file
    #[arg(long, value_name = "FILE")]
    world: PathBuf,
    /// Plan tokens, e.g. "fd lt fd"
    #[arg(long, conflicts_with = "plan_file")]
    plan: Option<String>,
    /// File containing plan tokens
    #[arg(long, value_name = "FILE")]
    plan_file: Option<PathBuf>,
    /// Maximum configurations explored per check
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    world: WorldArgs,
    /// Write a JSON report to FILE (`-` prints only the JSON to standard output)
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    world: WorldArgs,
    /// Python Turtle script output
    #[arg(long, value_name = "FILE")]
    script: Option<PathBuf>,
    /// SVG rendering output
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    /// Replay expectation (JSON) output
    #[arg(long, value_name = "FILE")]
    expect: Option<PathBuf>,
    /// CSPM script output
    #[arg(long, value_name = "FILE")]
    cspm: Option<PathBuf>,
    /// Pixels per grid cell
    #[arg(long, default_value_t = 50)]
    unit: u32,
}

#[derive(Debug, Args)]
struct ReplArgs {
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    #[arg(long, default_value_t = 50)]
    unit: u32,
}

/// A failure that ends a batch command.
struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            status: ExitStatus::ConfigError,
            message: message.into(),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure {
            status: ExitStatus::BoundExceeded,
            message: e.to_string(),
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        CheckError::from(e).into()
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run_batch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let display_only = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if display_only {
                let _ = write!(out, "{e}");
                return ExitStatus::Success.code();
            }
            let _ = write!(err, "{e}");
            return ExitStatus::ConfigError.code();
        }
    };
    let result = match cli.command {
        Command::Check(args) => run_check(&args, out),
        Command::Gen(args) => run_gen(&args, out),
        Command::Repl(args) => {
            let stdin = io::stdin();
            let mut repl = Repl::new(Checker::new().with_state_cap(args.state_cap));
            match CodegenOptions::with_unit(args.unit) {
                Ok(opts) => repl.set_codegen_options(opts),
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return ExitStatus::ConfigError.code();
                }
            }
            repl.set_prompt(std::io::IsTerminal::is_terminal(&stdin));
            match repl.run(stdin.lock(), out) {
                Ok(()) => Ok(ExitStatus::Success),
                Err(e) => Err(Failure::config(format!("i/o error: {e}"))),
            }
        }
    };
    match result {
        Ok(status) => status.code(),
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.status.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))
}

fn load_world(args: &WorldArgs) -> Result<WorldSpec, Failure> {
    let text = read(&args.world)?;
    parse_world(&text).map_err(|e| Failure::config(format!("{}: {e}", args.world.display())))
}

fn load_plan(args: &WorldArgs) -> Result<Option<Plan>, Failure> {
    let (text, origin) = match (&args.plan, &args.plan_file) {
        (Some(text), _) => (text.clone(), "--plan".to_string()),
        (None, Some(path)) => (read(path)?, path.display().to_string()),
        (None, None) => return Ok(None),
    };
    parse_plan(&text)
        .map(Some)
        .map_err(|e| Failure::config(format!("{origin}: {e}")))
}

fn run_check(args: &CheckArgs, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let world = load_world(&args.world)?;
    let plan = load_plan(&args.world)?;
    let checker = Checker::new().with_state_cap(args.world.state_cap);

    let plan_verdict = plan.as_ref().map(|p| checker.check_plan(&world, p)).transpose()?;
    let goal_verdict = checker.check_goal(&world)?;

    let json_to_stdout = args.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout {
        let _ = writeln!(out, "{}", report::describe_world(&world));
        match (&plan, &plan_verdict) {
            (Some(plan), Some(verdict)) => {
                let _ = writeln!(out, "{}", report::plan_line(plan, verdict));
            }
            _ => {
                let _ = writeln!(out, "plan check: skipped (no plan given)");
            }
        }
        let _ = writeln!(out, "{}", report::goal_line(&world, &goal_verdict));
    }

    if let Some(path) = &args.json {
        let text = report::json(plan_verdict.as_ref(), &goal_verdict);
        if json_to_stdout {
            let _ = out.write_all(text.as_bytes());
        } else {
            fs::write(path, text).map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
        }
    }

    Ok(match (&plan_verdict, goal_verdict.is_reachable()) {
        (Some(PlanVerdict::Invalid { .. }), _) => ExitStatus::PlanInvalid,
        (_, false) => ExitStatus::GoalUnreachable,
        _ => ExitStatus::Success,
    })
}

fn run_gen(args: &GenArgs, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let world = load_world(&args.world)?;
    let plan = load_plan(&args.world)?.ok_or_else(|| Failure::config("gen needs --plan or --plan-file"))?;
    let opts = CodegenOptions::with_unit(args.unit).map_err(|e| Failure::config(e.to_string()))?;
    if args.script.is_none() && args.svg.is_none() && args.expect.is_none() && args.cspm.is_none() {
        return Err(Failure::config(
            "nothing to generate; pass --script, --svg, --expect or --cspm",
        ));
    }
    let checker = Checker::new().with_state_cap(args.world.state_cap);

    let verified = match VerifiedPlan::verify(&checker, &world, &plan) {
        Ok(v) => v,
        Err(CodegenError::PlanInvalid(verdict)) => {
            return Err(Failure {
                status: ExitStatus::PlanInvalid,
                message: format!("{}; no files written", report::plan_line(&plan, &verdict)),
            });
        }
        Err(CodegenError::Check(e)) => return Err(e.into()),
        Err(e) => return Err(Failure::config(e.to_string())),
    };

    // render everything before touching the filesystem
    let mut outputs: Vec<(&PathBuf, String, &str)> = Vec::new();
    if let Some(path) = &args.script {
        outputs.push((path, verified.script(&opts), "script"));
    }
    if let Some(path) = &args.svg {
        outputs.push((path, verified.svg(&opts), "SVG"));
    }
    if let Some(path) = &args.expect {
        outputs.push((path, verified.expectation(&opts).to_json(), "expectation"));
    }
    if let Some(path) = &args.cspm {
        outputs.push((path, generate_cspm(&world, &plan), "CSPM"));
    }
    let _ = writeln!(out, "{}", report::plan_line(&plan, &PlanVerdict::Valid));
    for (path, text, what) in outputs {
        fs::write(path, text).map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(out, "wrote {what} to {}", path.display());
    }
    if let Some(script) = &args.script {
        let _ = writeln!(out, "run it with: python3 {}", script.display());
    }
    Ok(ExitStatus::Success)
}
