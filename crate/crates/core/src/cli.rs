//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a solution fails validation, 2 when an
//! input cannot be read or parsed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::io::{check_solution, parse_instance, Instance, SolutionFile};
use crate::model::{BoundMode, SolverParams};
use crate::search::{solve, solve_with_trace};
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "palletpack", version, about = "Pallet loading with picking order and stability constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundArg {
    Exact,
    Lp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file and write the solution as JSON.
    Solve {
        instance: PathBuf,
        /// Solution file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Search events, one JSON object per line.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long)]
        max_branches: Option<usize>,
        #[arg(long, value_enum)]
        bound_mode: Option<BoundArg>,
        #[arg(long)]
        vertical_support: Option<f64>,
        #[arg(long)]
        horizontal_support_x: Option<f64>,
        #[arg(long)]
        horizontal_support_y: Option<f64>,
        #[arg(long)]
        gap: Option<u32>,
        #[arg(long)]
        px: Option<u32>,
        #[arg(long)]
        py: Option<u32>,
        #[arg(long)]
        pz: Option<u32>,
        /// Re-validate the solution against the instance before writing it.
        #[arg(long)]
        seed_check: bool,
    },
    /// Check a solution file against its instance.
    Validate { solution: PathBuf, instance: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Applies flag overrides to the file-level parameters.
#[allow(clippy::too_many_arguments)]
fn effective_params(
    base: &SolverParams,
    time_limit_ms: Option<u64>,
    max_branches: Option<usize>,
    bound_mode: Option<BoundArg>,
    vertical: Option<f64>,
    horizontal_x: Option<f64>,
    horizontal_y: Option<f64>,
    gap: Option<u32>,
    tolerances: [Option<u32>; 3],
) -> SolverParams {
    let mut p = base.clone();
    if let Some(v) = time_limit_ms {
        p.time_limit_ms = v;
    }
    if let Some(v) = max_branches {
        p.max_branches = v;
    }
    if let Some(v) = bound_mode {
        p.bound_mode = match v {
            BoundArg::Exact => BoundMode::ExactKnapsack,
            BoundArg::Lp => BoundMode::LpRelaxation,
        };
    }
    if let Some(v) = vertical {
        p.vertical_support_min = v;
    }
    if let Some(v) = horizontal_x {
        p.horizontal_support_min_x = v;
    }
    if let Some(v) = horizontal_y {
        p.horizontal_support_min_y = v;
    }
    if let Some(v) = gap {
        p.gap_tolerance = v;
    }
    let [px, py, pz] = tolerances;
    p.p_x = px.unwrap_or(p.p_x);
    p.p_y = py.unwrap_or(p.p_y);
    p.p_z = pz.unwrap_or(p.p_z);
    p
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Solve {
            instance,
            out,
            svg,
            trace,
            time_limit_ms,
            max_branches,
            bound_mode,
            vertical_support,
            horizontal_support_x,
            horizontal_support_y,
            gap,
            px,
            py,
            pz,
            seed_check,
        } => {
            let inst = load_instance(&instance)?;
            let params = effective_params(
                &inst.params,
                time_limit_ms,
                max_branches,
                bound_mode,
                vertical_support,
                horizontal_support_x,
                horizontal_support_y,
                gap,
                [px, py, pz],
            );
            params.validate().map_err(|e| Failure::input(e.to_string()))?;

            let (solution, events) = if trace.is_some() {
                let (s, t) = solve_with_trace(&inst.units, &inst.pallet, &params)
                    .map_err(|e| Failure::input(e.to_string()))?;
                (s, Some(t))
            } else {
                let s = solve(&inst.units, &inst.pallet, &params).map_err(|e| Failure::input(e.to_string()))?;
                (s, None)
            };
            let file = SolutionFile::new(&inst, &params, &solution);

            if seed_check {
                if let Err(issues) = check_solution(&inst, &file) {
                    let text: Vec<String> = issues.iter().map(ToString::to_string).collect();
                    return Err(Failure { code: EXIT_INVALID, message: text.join("\n") });
                }
            }

            let json = file.to_json();
            match &out {
                Some(path) => write(path, &json)?,
                None => stdout.write_all(json.as_bytes()).map_err(|e| Failure::input(e.to_string()))?,
            }
            if let Some(path) = svg {
                write(&path, &render_svg(&inst.pallet, &solution.placements))?;
            }
            if let (Some(path), Some(events)) = (trace, events) {
                let mut lines = String::new();
                for event in &events {
                    lines.push_str(&serde_json::to_string(event).expect("event serializes"));
                    lines.push('\n');
                }
                write(&path, &lines)?;
            }
            let _ = writeln!(
                stderr,
                "placed {} of {} units, utilization {:.4}, {} nodes, {} ms{}",
                solution.placements.len(),
                inst.units.len(),
                solution.utilization,
                solution.stats.nodes_expanded,
                solution.stats.elapsed_ms,
                if solution.stats.timed_out { " (time limit reached)" } else { "" }
            );
            Ok(())
        }
        Command::Validate { solution, instance } => {
            let inst = load_instance(&instance)?;
            let file = SolutionFile::parse(&read(&solution)?)
                .map_err(|e| Failure::input(format!("{}: {e}", solution.display())))?;
            match check_solution(&inst, &file) {
                Ok(()) => {
                    let _ = writeln!(stdout, "valid: {} units, utilization {:.4}", file.placements.len(), file.utilization);
                    Ok(())
                }
                Err(issues) => {
                    let text: Vec<String> = issues.iter().map(|i| format!("invalid: {i}")).collect();
                    Err(Failure { code: EXIT_INVALID, message: text.join("\n") })
                }
            }
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(stderr, "{}", failure.message);
            failure.code
        }
    }
}
