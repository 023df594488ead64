//! Command-line front end: config parsing, subcommands and file output.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 infeasible
//! physics (no operating point, no stable grid point, no entanglement).

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use optomech::constants::TWO_PI;
use optomech::{
    classify_bistability, evaluate_point, single_photon_couplings, steady_states_at_bare_detuning,
    survival_temperature, sweep, Error as CoreError, PointStatus, SteadyStateMode,
};
use serde::Serialize;

use config::{load_config, ConfigError, Detuning, OutputFormat, RunConfig};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "optomech", version, about = "Steady states and stationary entanglement of an optomechanical cavity")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Operating points, their stability and a bistability scan over power
    SteadyState(CommonArgs),
    /// Grid sweep written as CSV (or JSON) with a JSON summary
    Sweep(CommonArgs),
    /// Highest bath temperature with nonzero entanglement
    SurvivalTemp(CommonArgs),
    /// Single-photon couplings from the interferometer geometry
    Couplings(CommonArgs),
    /// Parse and check a config without running anything
    Validate(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Run configuration (TOML, or JSON by extension)
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Point counts per sweep axis, e.g. 101x101
    #[arg(long, value_parser = parse_grid)]
    grid: Option<Grid>,
    /// Worker threads for sweeps
    #[arg(long, env = "OPTOMECH_JOBS")]
    jobs: Option<usize>,
}

#[derive(Debug, Clone)]
struct Grid(Vec<usize>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let counts = s
        .split(['x', 'X'])
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("`{s}` is not of the form N or NxM")))
        .collect::<Result<Vec<_>, _>>()?;
    if counts.is_empty() || counts.len() > 2 || counts.contains(&0) {
        return Err(format!("`{s}` is not of the form N or NxM with positive counts"));
    }
    Ok(Grid(counts))
}

enum Failure {
    Usage(anyhow::Error),
    Infeasible(anyhow::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter { .. } | CoreError::InvalidSweep(_) => Failure::Usage(e.into()),
            _ => Failure::Infeasible(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match cli.command {
        Command::SteadyState(a) => with_config(&a, steady_state_cmd),
        Command::Sweep(a) => with_config(&a, sweep_cmd),
        Command::SurvivalTemp(a) => with_config(&a, survival_cmd),
        Command::Couplings(a) => with_config(&a, couplings_cmd),
        Command::Validate(a) => with_config(&a, validate_cmd),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
        Err(Failure::Infeasible(e)) => {
            eprintln!("infeasible: {e:#}");
            EXIT_INFEASIBLE
        }
    }
}

struct Ctx {
    cfg: RunConfig,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
    pool: rayon::ThreadPool,
}

fn with_config(args: &CommonArgs, cmd: fn(&Ctx) -> Outcome) -> Outcome {
    let mut cfg = load_config(&args.config)?;
    for w in &cfg.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(Grid(counts)) = &args.grid {
        cfg.override_grid(counts)?;
    }
    let jobs = args.jobs.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("cannot start worker threads")?;
    let ctx = Ctx {
        out: args.out.clone().or_else(|| cfg.out.clone()),
        format: args.format.or(cfg.format),
        cfg,
        pool,
    };
    cmd(&ctx)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn hz(omega: f64) -> f64 {
    omega / TWO_PI
}

#[derive(Serialize)]
struct BranchRow {
    x_s: f64,
    n_s: f64,
    delta_s_hz: f64,
    kappa_s_hz: f64,
    stable: bool,
    zero_connected: bool,
}

#[derive(Serialize)]
struct WindowRow {
    start_mw: f64,
    stop_mw: f64,
}

#[derive(Serialize)]
struct ScanRow {
    power_mw: f64,
    real_roots: usize,
    admissible_roots: usize,
    stable_roots: usize,
    x_s: Vec<f64>,
}

#[derive(Serialize)]
struct BareReport {
    scenario: &'static str,
    delta_a_hz: f64,
    power_mw: f64,
    branches: Vec<BranchRow>,
    rejected_roots: Vec<f64>,
    bistable_windows: Option<Vec<WindowRow>>,
    power_scan: Option<Vec<ScanRow>>,
}

#[derive(Serialize)]
struct PointReport<'a> {
    scenario: &'static str,
    mode: &'static str,
    delta_s_over_omega_m: f64,
    x_s: Option<f64>,
    n_s: Option<f64>,
    kappa_s_hz: Option<f64>,
    status: &'a PointStatus,
    stable: bool,
    e_n: Option<f64>,
    symplectic: Option<[f64; 2]>,
}

fn steady_state_cmd(ctx: &Ctx) -> Outcome {
    let cfg = &ctx.cfg;
    let detuning = cfg.require_detuning()?;
    let mut params = cfg.params;
    cfg.scenario.apply(&mut params);

    if cfg.mode != SteadyStateMode::BareDetuning {
        let Detuning::Effective { over_omega_m } = detuning else {
            return Err(Failure::Usage(anyhow!("{} mode needs delta_s_over_omega_m", cfg.mode.name())));
        };
        if ctx.format == Some(OutputFormat::Csv) {
            return Err(Failure::Usage(anyhow!("csv output needs bare-detuning mode with a [power_scan]")));
        }
        let pt = evaluate_point(&params, cfg.scenario, cfg.mode, detuning.value(&params));
        let report = PointReport {
            scenario: cfg.scenario.name(),
            mode: cfg.mode.name(),
            delta_s_over_omega_m: over_omega_m,
            x_s: pt.steady.map(|s| s.x_s),
            n_s: pt.steady.map(|s| s.n_s),
            kappa_s_hz: pt.steady.map(|s| hz(s.kappa_s)),
            status: &pt.status,
            stable: pt.stable,
            e_n: pt.e_n,
            symplectic: pt.symplectic,
        };
        if ctx.format == Some(OutputFormat::Json) {
            emit(ctx.out.as_deref(), &output::pretty(&report).map_err(anyhow::Error::from)?)?;
        } else {
            let mut s = String::new();
            let _ = writeln!(s, "{} coupling, {} mode, delta_s = {} omega_m", report.scenario, report.mode, over_omega_m);
            match pt.steady {
                Some(ss) => {
                    let _ = writeln!(s, "x_s = {:.6e}  n_s = {:.6e}  kappa_s/2pi = {:.6e} Hz", ss.x_s, ss.n_s, hz(ss.kappa_s));
                    let _ = writeln!(s, "stable: {}", if pt.stable { "yes" } else { "no" });
                    if let Some(e) = pt.e_n {
                        let _ = writeln!(s, "E_N = {e:.6}");
                    }
                }
                None => {
                    let _ = writeln!(s, "no operating point");
                }
            }
            emit(ctx.out.as_deref(), s.as_bytes())?;
        }
        return match pt.status {
            PointStatus::Infeasible(m) => Err(Failure::Infeasible(anyhow!(m))),
            PointStatus::Failed(m) => Err(Failure::Infeasible(anyhow!(m))),
            _ => Ok(()),
        };
    }

    let delta_a = detuning.value(&params);
    let set = steady_states_at_bare_detuning(&params, delta_a)?;
    let scan = match cfg.power_scan {
        Some(ps) => Some(classify_bistability(&params, delta_a, &ps.grid())?),
        None => None,
    };
    let report = BareReport {
        scenario: cfg.scenario.name(),
        delta_a_hz: hz(delta_a),
        power_mw: params.power * 1e3,
        branches: set
            .branches
            .iter()
            .enumerate()
            .map(|(i, b)| BranchRow {
                x_s: b.state.x_s,
                n_s: b.state.n_s,
                delta_s_hz: hz(b.state.delta_s),
                kappa_s_hz: hz(b.state.kappa_s),
                stable: b.stable,
                zero_connected: set.zero_connected == Some(i),
            })
            .collect(),
        rejected_roots: set.rejected_roots.clone(),
        bistable_windows: scan.as_ref().map(|r| {
            r.windows
                .iter()
                .map(|&(a, b)| WindowRow {
                    start_mw: a * 1e3,
                    stop_mw: b * 1e3,
                })
                .collect()
        }),
        power_scan: scan.as_ref().map(|r| {
            r.entries
                .iter()
                .map(|e| ScanRow {
                    power_mw: e.power * 1e3,
                    real_roots: e.real_roots,
                    admissible_roots: e.admissible_roots,
                    stable_roots: e.stable_roots,
                    x_s: e.x_s.clone(),
                })
                .collect()
        }),
    };

    match ctx.format {
        Some(OutputFormat::Json) => emit(ctx.out.as_deref(), &output::pretty(&report).map_err(anyhow::Error::from)?)?,
        Some(OutputFormat::Csv) => {
            let rows = report
                .power_scan
                .as_ref()
                .ok_or_else(|| anyhow!("csv output needs a [power_scan] section"))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["power_mw", "real_roots", "admissible_roots", "stable_roots", "x_s"])
                .map_err(anyhow::Error::from)?;
            for r in rows {
                let xs: Vec<String> = r.x_s.iter().map(|&x| output::num(x)).collect();
                w.write_record([
                    output::num(r.power_mw),
                    r.real_roots.to_string(),
                    r.admissible_roots.to_string(),
                    r.stable_roots.to_string(),
                    xs.join(";"),
                ])
                .map_err(anyhow::Error::from)?;
            }
            let bytes = w.into_inner().map_err(|e| anyhow!("{}", e.error()))?;
            emit(ctx.out.as_deref(), &bytes)?;
        }
        None => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{} coupling, delta_a/2pi = {:.6e} Hz ({:.4} kappa_a), P = {} mW",
                report.scenario,
                report.delta_a_hz,
                delta_a / params.kappa_a,
                report.power_mw
            );
            let _ = writeln!(s, "{:>3} {:>14} {:>14} {:>14} {:>14} {:>7}", "#", "x_s", "n_s", "delta_s_hz", "kappa_s_hz", "stable");
            for (i, b) in report.branches.iter().enumerate() {
                let mark = if b.zero_connected { "*" } else { " " };
                let _ = writeln!(
                    s,
                    "{:>2}{mark} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>7}",
                    i,
                    b.x_s,
                    b.n_s,
                    b.delta_s_hz,
                    b.kappa_s_hz,
                    if b.stable { "yes" } else { "no" }
                );
            }
            if !report.rejected_roots.is_empty() {
                let _ = writeln!(s, "rejected roots (kappa_s <= 0): {:?}", report.rejected_roots);
            }
            if let (Some(ps), Some(windows)) = (cfg.power_scan, &report.bistable_windows) {
                let _ = write!(s, "power scan {}-{} mW ({} points): ", ps.start_mw, ps.stop_mw, ps.points);
                if windows.is_empty() {
                    let _ = writeln!(s, "monostable everywhere");
                } else {
                    let list: Vec<String> = windows.iter().map(|w| format!("{:.3}-{:.3} mW", w.start_mw, w.stop_mw)).collect();
                    let _ = writeln!(s, "three roots over {}", list.join(", "));
                }
            }
            emit(ctx.out.as_deref(), s.as_bytes())?;
        }
    }
    if set.branches.is_empty() {
        return Err(Failure::Infeasible(anyhow!("no admissible operating point at this detuning")));
    }
    Ok(())
}

fn sweep_cmd(ctx: &Ctx) -> Outcome {
    let cfg = &ctx.cfg;
    let spec = cfg.sweep_spec()?;
    let result = ctx.pool.install(|| sweep(&spec))?;
    let summary = output::sweep_summary(cfg, &result);
    match ctx.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            let bytes = output::sweep_csv(cfg, &result).map_err(anyhow::Error::from)?;
            emit(ctx.out.as_deref(), &bytes)?;
            if let Some(out) = &ctx.out {
                let path = out.with_extension("summary.json");
                emit(Some(&path), &output::pretty(&summary).map_err(anyhow::Error::from)?)?;
            }
        }
        OutputFormat::Json => {
            let bytes = output::sweep_json(cfg, &result).map_err(anyhow::Error::from)?;
            emit(ctx.out.as_deref(), &bytes)?;
        }
    }
    let opt = summary
        .optimum
        .as_ref()
        .map(|o| {
            let at: Vec<String> = o.coords.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            format!(", max E_N {:.6} at {}", o.e_n, at.join(", "))
        })
        .unwrap_or_default();
    eprintln!("{} points, {} stable{opt}", summary.points, summary.stable_points);
    if summary.unphysical_points > 0 {
        eprintln!("warning: {} stable points violate the uncertainty bound", summary.unphysical_points);
    }
    if summary.stable_points == 0 {
        return Err(Failure::Infeasible(anyhow!("no stable point on the grid")));
    }
    Ok(())
}

#[derive(Serialize)]
struct SurvivalReport {
    scenario: &'static str,
    mode: &'static str,
    temperature_k: f64,
    bracket_k: (f64, f64),
    saturated: bool,
    t_max_k: f64,
    scan: Vec<(f64, f64)>,
}

fn survival_cmd(ctx: &Ctx) -> Outcome {
    let cfg = &ctx.cfg;
    let detuning = cfg.require_detuning()?;
    let r = ctx.pool.install(|| {
        survival_temperature(&cfg.params, cfg.scenario, cfg.mode, detuning.value(&cfg.params), cfg.survival_t_max)
    })?;
    let report = SurvivalReport {
        scenario: cfg.scenario.name(),
        mode: cfg.mode.name(),
        temperature_k: r.temperature,
        bracket_k: r.bracket,
        saturated: r.saturated,
        t_max_k: cfg.survival_t_max,
        scan: r.scan,
    };
    let bytes = match ctx.format {
        Some(OutputFormat::Json) => output::pretty(&report).map_err(anyhow::Error::from)?,
        Some(OutputFormat::Csv) => return Err(Failure::Usage(anyhow!("survival-temp writes text or json"))),
        None if r.saturated => format!("entanglement persists up to t_max = {} K\n", cfg.survival_t_max).into_bytes(),
        None => format!(
            "survival temperature {:.3} K (bracket {:.4}-{:.4} K)\n",
            r.temperature, r.bracket.0, r.bracket.1
        )
        .into_bytes(),
    };
    emit(ctx.out.as_deref(), &bytes)?;
    Ok(())
}

#[derive(Serialize)]
struct CouplingReport {
    g_omega_hz: f64,
    g_kappa_hz: f64,
    g_omega_imag_hz: f64,
    g_kappa_imag_hz: f64,
    rho_sq: f64,
    tau_sq: f64,
    non_physical_phase: bool,
}

fn couplings_cmd(ctx: &Ctx) -> Outcome {
    let ifm = ctx
        .cfg
        .interferometer
        .ok_or_else(|| anyhow!("missing [interferometer] section"))?;
    let est = single_photon_couplings(&ifm)?;
    let report = CouplingReport {
        g_omega_hz: hz(est.g_omega),
        g_kappa_hz: hz(est.g_kappa),
        g_omega_imag_hz: hz(est.g_omega_imag),
        g_kappa_imag_hz: hz(est.g_kappa_imag),
        rho_sq: est.mirror.rho.norm_sqr(),
        tau_sq: est.mirror.tau.norm_sqr(),
        non_physical_phase: est.non_physical_phase(),
    };
    if report.non_physical_phase {
        eprintln!("warning: coupling expressions carry a sizeable imaginary part; check the phase convention");
    }
    let bytes = match ctx.format {
        Some(OutputFormat::Json) => output::pretty(&report).map_err(anyhow::Error::from)?,
        Some(OutputFormat::Csv) => return Err(Failure::Usage(anyhow!("couplings writes text or json"))),
        None => format!(
            "g_omega/2pi = {:.6e} Hz\ng_kappa/2pi = {:.6e} Hz\nimaginary parts: {:.3e} Hz, {:.3e} Hz\n|rho|^2 = {:.6}  |tau|^2 = {:.6}\n",
            report.g_omega_hz, report.g_kappa_hz, report.g_omega_imag_hz, report.g_kappa_imag_hz, report.rho_sq, report.tau_sq
        )
        .into_bytes(),
    };
    emit(ctx.out.as_deref(), &bytes)?;
    Ok(())
}

fn validate_cmd(ctx: &Ctx) -> Outcome {
    let cfg = &ctx.cfg;
    if !cfg.axes.is_empty() {
        cfg.sweep_spec()?;
    }
    let axes: Vec<String> = cfg.axes.iter().map(|a| format!("{}[{}]", a.param.column(), a.points)).collect();
    let msg = format!(
        "ok: {} coupling, {} mode{}\n",
        cfg.scenario.name(),
        cfg.mode.name(),
        if axes.is_empty() { String::new() } else { format!(", sweep {}", axes.join(" x ")) }
    );
    emit(ctx.out.as_deref(), msg.as_bytes())?;
    Ok(())
}
