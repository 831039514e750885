//! Command-line surface for the bellforge library: reference-table
//! reproduction, threshold searches, robustness sweeps, joint-measurability
//! checks, see-saw optimization, and channel classification.
//!
//! Exit codes: 0 success, 1 joint-measurability infeasible, 2 I/O or
//! malformed input, 3 table deviations beyond tolerance, 4 non-monotone
//! threshold profile, 5 joint-measurability marginal.

mod output;

use bellforge_core::analysis::{
    classification_profile, classify, reproduce_table, robustness_curve, threshold, Mode, TableId,
    TableReport, ThresholdOptions,
};
use bellforge_core::bell::{seesaw, AssignmentJson, FunctionalSelector, SeesawOptions};
use bellforge_core::channels::{apply_to_subsystem, ChannelFamily, KrausChannel, Side};
use bellforge_core::error::Error as CoreError;
use bellforge_core::measurements::{jm_feasible, EffectJson, JmOptions, JmVerdict, MeasurementSet};
use bellforge_core::states::{bell_state, TwoQubitState};
use clap::{Args, Parser, Subcommand};
use output::Format;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_INFEASIBLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DEVIATION: u8 = 3;
const EXIT_NON_MONOTONE: u8 = 4;
const EXIT_MARGINAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "bellforge",
    about = "Bell-type nonclassicality of noisy qubit channels",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the reference tables and report deviations.
    Tables {
        /// Which table: I, II, III, or all.
        #[arg(long)]
        which: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bisect the channel parameter where a functional stops being violated.
    Threshold {
        /// Channel family (dpoc, adc, lc, dpc); a :param suffix is ignored.
        #[arg(long)]
        channel: String,
        /// Functional selector: chsh, ebi, or bn:N.
        #[arg(long)]
        functional: String,
        /// fixed (canonical observables) or optimized (see-saw).
        #[arg(long, default_value = "fixed")]
        mode: String,
        /// Bisection bracket tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Random seed; required in optimized mode.
        #[arg(long)]
        seed: Option<u64>,
        /// See-saw restarts in optimized mode.
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// White-noise robustness along a parameter grid.
    Robustness {
        #[arg(long)]
        channel: String,
        /// Grid spec start:stop:count inside [0, 1].
        #[arg(long, default_value = "0:1:21")]
        grid: String,
        #[arg(long, default_value = "fixed")]
        mode: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Joint-measurability check of a measurement set read from JSON.
    Jm {
        /// Path to a JSON array of {"c": .., "m": [x, y, z]} effects.
        #[arg(long)]
        file: PathBuf,
        /// Feasibility residual tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Iteration cap of the alternating-projection search.
        #[arg(long, default_value_t = 40_000)]
        max_iter: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// See-saw optimization of a Bell functional.
    Optimize {
        /// Probe state: phi+ or a path to a density-matrix JSON file.
        #[arg(long, default_value = "phi+")]
        state: String,
        /// Optional channel spec family:param applied before optimizing.
        #[arg(long)]
        channel: Option<String>,
        /// Which subsystem the channel acts on: first, second, or both.
        #[arg(long, default_value = "first")]
        side: String,
        #[arg(long)]
        functional: String,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        /// Random seed (runs are reproducible given the seed).
        #[arg(long)]
        seed: u64,
        /// Convergence tolerance of the see-saw sweeps.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Breaking flags of a channel at one parameter or along a grid.
    Classify {
        /// family:param for a single point, or bare family with --grid.
        #[arg(long)]
        channel: String,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("BELLFORGE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        let code = match err {
            CoreError::NonMonotoneProfile(_) => EXIT_NON_MONOTONE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: err.to_string(),
        }
    }
}

fn parse_family(spec: &str) -> Result<ChannelFamily, Failure> {
    let name = spec.split(':').next().unwrap_or(spec);
    Ok(ChannelFamily::parse(name)?)
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::input(format!(
            "grid `{spec}` must be start:stop:count"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| Failure::input("grid start is not a number"))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| Failure::input("grid stop is not a number"))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Failure::input("grid count is not an integer"))?;
    if count < 1 || !(0.0..=1.0).contains(&start) || !(start..=1.0).contains(&stop) {
        return Err(Failure::input(format!(
            "grid `{spec}` must satisfy 0 <= start <= stop <= 1 and count >= 1"
        )));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect())
}

fn parse_output(output: &OutputArgs) -> Result<(Format, Option<&PathBuf>), Failure> {
    let format = Format::parse(&output.format).map_err(Failure::input)?;
    Ok((format, output.out.as_ref()))
}

fn seesaw_options(seed: Option<u64>, restarts: usize, mode: Mode) -> Result<SeesawOptions, Failure> {
    match (mode, seed) {
        (Mode::Optimized, None) => Err(Failure::input(
            "optimized mode needs --seed for reproducible output",
        )),
        (_, seed) => Ok(SeesawOptions {
            restarts,
            seed: seed.unwrap_or(0),
            ..Default::default()
        }),
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Tables { which, output } => cmd_tables(&which, &output),
        Command::Threshold {
            channel,
            functional,
            mode,
            tol,
            seed,
            restarts,
            output,
        } => cmd_threshold(&channel, &functional, &mode, tol, seed, restarts, &output),
        Command::Robustness {
            channel,
            grid,
            mode,
            seed,
            restarts,
            output,
        } => cmd_robustness(&channel, &grid, &mode, seed, restarts, &output),
        Command::Jm {
            file,
            tol,
            max_iter,
            output,
        } => cmd_jm(&file, tol, max_iter, &output),
        Command::Optimize {
            state,
            channel,
            side,
            functional,
            restarts,
            seed,
            tol,
            output,
        } => cmd_optimize(
            &state, channel.as_deref(), &side, &functional, restarts, seed, tol, &output,
        ),
        Command::Classify {
            channel,
            grid,
            output,
        } => cmd_classify(&channel, grid.as_deref(), &output),
    }
}

#[derive(Serialize)]
struct TablesDocument {
    tables: Vec<TableReport>,
}

fn cmd_tables(which: &str, output: &OutputArgs) -> Result<u8, Failure> {
    let (format, out) = parse_output(output)?;
    let ids: Vec<TableId> = if which.eq_ignore_ascii_case("all") {
        vec![TableId::I, TableId::II, TableId::III]
    } else {
        vec![TableId::parse(which)?]
    };
    let reports: Vec<TableReport> = ids
        .into_iter()
        .map(reproduce_table)
        .collect::<Result<_, _>>()?;

    let content = match format {
        Format::Json => {
            if reports.len() == 1 {
                output::to_json_string(&reports[0])
            } else {
                output::to_json_string(&TablesDocument { tables: reports.clone() })
            }
        }
        Format::Csv => output::tables_csv(&reports),
    };
    output::emit(out.map(|p| p.as_path()), &content)?;

    let mut ok = true;
    for report in &reports {
        if !report.all_within_tolerance {
            ok = false;
            for cell in report.cells.iter().filter(|c| c.gated && !c.within_tolerance) {
                eprintln!(
                    "deviation: table {} {} / {} at p={:?}: computed {} vs reference {} (|delta| = {:.3e})",
                    report.table,
                    cell.row,
                    cell.column,
                    cell.p,
                    output::fmt9(cell.computed),
                    output::fmt9(cell.reference),
                    cell.deviation
                );
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_DEVIATION })
}

fn cmd_threshold(
    channel: &str,
    functional: &str,
    mode: &str,
    tol: f64,
    seed: Option<u64>,
    restarts: usize,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let (format, out) = parse_output(output)?;
    if format == Format::Csv {
        return Err(Failure::input("threshold reports are JSON only"));
    }
    let family = parse_family(channel)?;
    let selector = FunctionalSelector::parse(functional)?;
    let mode = Mode::parse(mode)?;
    let opts = ThresholdOptions {
        seesaw: seesaw_options(seed, restarts, mode)?,
        ..Default::default()
    };
    let report = threshold(family, selector, mode, tol, &opts)?;
    output::emit(out.map(|p| p.as_path()), &output::to_json_string(&report))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RobustnessDocument {
    family: String,
    mode: String,
    points: Vec<bellforge_core::analysis::RobustnessPoint>,
}

fn cmd_robustness(
    channel: &str,
    grid: &str,
    mode: &str,
    seed: Option<u64>,
    restarts: usize,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let (format, out) = parse_output(output)?;
    let family = parse_family(channel)?;
    let mode = Mode::parse(mode)?;
    let grid = parse_grid(grid)?;
    let opts = ThresholdOptions {
        seesaw: seesaw_options(seed, restarts, mode)?,
        ..Default::default()
    };
    let points = robustness_curve(family, &grid, mode, &opts)?;
    let content = match format {
        Format::Json => output::to_json_string(&RobustnessDocument {
            family: family.code().into(),
            mode: mode.label().into(),
            points: points.clone(),
        }),
        Format::Csv => output::robustness_csv(family.code(), mode.label(), &points),
    };
    output::emit(out.map(|p| p.as_path()), &content)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct JmDocument {
    verdict: String,
    residual: f64,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic_margin: Option<f64>,
}

fn cmd_jm(file: &std::path::Path, tol: f64, max_iter: usize, output: &OutputArgs) -> Result<u8, Failure> {
    let (_, out) = parse_output(output)?;
    let text = std::fs::read_to_string(file)?;
    let records: Vec<EffectJson> =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{file:?}: {e}")))?;
    let set = MeasurementSet::from_json(&records)?;
    let report = jm_feasible(&set, &JmOptions { tol, max_iter })?;
    let verdict = match report.verdict {
        JmVerdict::Feasible => "feasible",
        JmVerdict::Infeasible => "infeasible",
        JmVerdict::Marginal => "marginal",
    };
    let document = JmDocument {
        verdict: verdict.into(),
        residual: report.residual,
        iterations: report.iterations,
        analytic_margin: report.analytic_margin,
    };
    output::emit(out.map(|p| p.as_path()), &output::to_json_string(&document))?;
    Ok(match report.verdict {
        JmVerdict::Feasible => EXIT_OK,
        JmVerdict::Infeasible => EXIT_INFEASIBLE,
        JmVerdict::Marginal => EXIT_MARGINAL,
    })
}

#[derive(Serialize)]
struct OptimizeDocument {
    state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    channel: Option<String>,
    functional: String,
    value: f64,
    assignment: AssignmentJson,
    restarts: usize,
    sweeps: usize,
    seed: u64,
    trace: Vec<f64>,
}

fn load_state(spec: &str) -> Result<TwoQubitState, Failure> {
    if spec.eq_ignore_ascii_case("phi+") {
        return Ok(bell_state());
    }
    let text = std::fs::read_to_string(spec)?;
    let json = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{spec}: {e}")))?;
    Ok(TwoQubitState::from_json(&json)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_optimize(
    state_spec: &str,
    channel_spec: Option<&str>,
    side: &str,
    functional: &str,
    restarts: usize,
    seed: u64,
    tol: f64,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let (format, out) = parse_output(output)?;
    if format == Format::Csv {
        return Err(Failure::input("optimize reports are JSON only"));
    }
    let mut state = load_state(state_spec)?;
    let channel: Option<KrausChannel> = channel_spec
        .map(bellforge_core::channels::parse_channel_spec)
        .transpose()?;
    if let Some(channel) = &channel {
        state = apply_to_subsystem(channel, &state, Side::parse(side)?)?;
    }
    let selector = FunctionalSelector::parse(functional)?;
    let opts = SeesawOptions {
        restarts,
        seed,
        tol,
        ..Default::default()
    };
    let outcome = seesaw(&state, &selector.functional(), &opts)?;
    let document = OptimizeDocument {
        state: state_spec.into(),
        channel: channel_spec.map(|s| s.to_string()),
        functional: selector.label(),
        value: outcome.value,
        assignment: AssignmentJson::from(&outcome.assignment),
        restarts: outcome.restarts,
        sweeps: outcome.sweeps,
        seed,
        trace: outcome.trace,
    };
    output::emit(out.map(|p| p.as_path()), &output::to_json_string(&document))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ClassifyDocument {
    points: Vec<bellforge_core::analysis::Classification>,
}

fn cmd_classify(channel: &str, grid: Option<&str>, output: &OutputArgs) -> Result<u8, Failure> {
    let (format, out) = parse_output(output)?;
    let points = match grid {
        Some(grid_spec) => {
            let family = parse_family(channel)?;
            classification_profile(family, &parse_grid(grid_spec)?)?
        }
        None => {
            let (family_name, param) = channel.split_once(':').ok_or_else(|| {
                Failure::input("classify needs family:param, or a bare family with --grid")
            })?;
            let family = ChannelFamily::parse(family_name)?;
            let p: f64 = param
                .parse()
                .map_err(|_| Failure::input(format!("channel parameter `{param}` is not a number")))?;
            vec![classify(family, p)?]
        }
    };
    let content = match format {
        Format::Json => {
            if points.len() == 1 {
                output::to_json_string(&points[0])
            } else {
                output::to_json_string(&ClassifyDocument { points: points.clone() })
            }
        }
        Format::Csv => output::classify_csv(&points),
    };
    output::emit(out.map(|p| p.as_path()), &content)?;
    Ok(EXIT_OK)
}
