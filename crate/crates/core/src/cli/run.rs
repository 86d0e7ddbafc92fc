use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{parse_config, RunConfig};
use super::format::{key_value_csv, num, sweep_csv, time_series_csv};
use super::plot::emit_plot_script;
use crate::control::{critical_occupation, entanglement_time_series, optimize_couplings, sweep};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    Critical,
    Sweep,
    Optimize,
}

/// Run one experiment and return its CSV text.
pub fn run_command(command: Command, config: &RunConfig) -> Result<String> {
    let RunConfig {
        model: params,
        initial: state,
        evolution: ev,
        ..
    } = config;
    match command {
        Command::Evolve => {
            let series = entanglement_time_series(params, state, ev.t_max, ev.dt)?;
            Ok(time_series_csv(&series))
        }
        Command::Critical => {
            let r = critical_occupation(params, state, ev.t_max, ev.dt, config.tol())?;
            Ok(key_value_csv("n_crit", r.n_crit))
        }
        Command::Sweep => {
            let axes = config.sweep.clone().ok_or_else(|| Error::Validation {
                path: "sweep".into(),
                message: "the sweep command needs a `sweep` block".into(),
            })?;
            Ok(sweep_csv(&sweep(params, state, axes, ev.t_max, ev.dt)?))
        }
        Command::Optimize => {
            let opt = config.optimize.ok_or_else(|| Error::Validation {
                path: "optimize".into(),
                message: "the optimize command needs an `optimize` block".into(),
            })?;
            let r = optimize_couplings(params, opt.bounds, state, ev.t_max, ev.dt, opt.options)?;
            Ok(format!(
                "g1,g2,t_star,E_star,skipped,evaluations\n{},{},{},{},{},{}\n",
                num(r.g1),
                num(r.g2),
                num(r.t_star),
                num(r.e_star),
                r.skipped,
                r.evaluations
            ))
        }
    }
}

/// 1 for domain errors, 2 for usage/configuration errors.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_config() || matches!(err.root(), Error::Io(_)) {
        2
    } else {
        1
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twomode",
    version,
    about = "Entanglement dynamics of two coupled boson modes"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Time series of entanglement and squeezing.
    Evolve(RunArgs),
    /// Critical occupation above which no entanglement forms.
    Critical(RunArgs),
    /// Parameter sweep over one or two axes.
    Sweep(RunArgs),
    /// Coupling optimisation over a (g1, g2) box.
    Optimize(RunArgs),
    /// Gnuplot script for a CSV produced by `evolve`.
    PlotScript(PlotArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// CSV file to plot.
    csv: PathBuf,
    /// Comma-separated column names.
    #[arg(long, value_delimiter = ',', default_value = "E")]
    columns: Vec<String>,
    #[arg(long)]
    title: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn execute(sub: Sub) -> Result<()> {
    let (command, args) = match sub {
        Sub::PlotScript(p) => {
            let script = emit_plot_script(&p.csv, &p.columns, p.title.as_deref())?;
            return write_output(p.out.as_ref(), &script);
        }
        Sub::Evolve(a) => (Command::Evolve, a),
        Sub::Critical(a) => (Command::Critical, a),
        Sub::Sweep(a) => (Command::Sweep, a),
        Sub::Optimize(a) => (Command::Optimize, a),
    };
    let text = std::fs::read_to_string(&args.config)?;
    let config = parse_config(&text)?.with_overrides(args.t_max, args.dt, args.tol)?;
    let csv = run_command(command, &config)?;
    write_output(args.out.as_ref(), &csv)
}

/// Entry point of the `twomode` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
