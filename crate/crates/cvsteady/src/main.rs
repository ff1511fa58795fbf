use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cvsteady::config::{Fixed, Occupation, Param, Units};
use cvsteady::presets::COARSE_RESOLUTION;
use cvsteady::{emit_csv, parse_config, preset, run_sweep, SweepConfig};
use cvsteady_core::analyze_point;
use serde::Serialize;

const USAGE: u8 = 1;
const NUMERICAL: u8 = 2;

#[derive(Parser)]
#[command(name = "cvsteady", version, about = "Stationary entanglement of an opto-electro-mechanical system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single parameter point and print the diagnostics as JSON.
    Point {
        /// Parameter override such as `G=0.5` or `T=0.02`; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long, value_parser = ["omega_m", "hz"], default_value = "omega_m")]
        units: String,
        /// Reference mechanical frequency in Hz.
        #[arg(long)]
        omega_m_hz: Option<f64>,
        #[arg(long, value_parser = ["high_T", "exact"], default_value = "high_T")]
        occupation_mode: String,
    },
    /// Run a sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Run one of the built-in preset sweeps.
    Preset {
        /// One of fig2a, fig2b, fig3, fig4, fig5.
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(clap::Args)]
struct RunOpts {
    /// Use 21 points per axis.
    #[arg(long)]
    coarse: bool,
    /// Worker threads (default: one per core).
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: USAGE,
        message: message.to_string(),
    }
}

#[derive(Serialize)]
struct PointReport {
    omega_m: f64,
    omega_lc: f64,
    delta: f64,
    kappa: f64,
    gamma_m: f64,
    gamma_lc: f64,
    #[serde(rename = "G")]
    om_coupling: f64,
    g: f64,
    n_m: f64,
    n_lc: f64,
    stable: bool,
    stability_margin: f64,
    omega_m_eff: Option<f64>,
    #[serde(rename = "E_N")]
    log_negativity: Option<f64>,
    duan: Option<f64>,
    n_m_eff: Option<f64>,
    n_lc_eff: Option<f64>,
    lyapunov_residual: Option<f64>,
}

fn parse_assignment(s: &str) -> Result<(Param, f64), Failure> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("expected KEY=VALUE, got `{s}`")))?;
    let key = key.trim();
    let param = Param::ALL
        .into_iter()
        .find(|p| p.name() == key)
        .ok_or_else(|| {
            let names: Vec<_> = Param::ALL.iter().map(|p| p.name()).collect();
            usage(format!("unknown parameter `{key}`; expected one of {}", names.join(", ")))
        })?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| usage(format!("`{key}` needs a number, got `{value}`")))?;
    if !value.is_finite() {
        return Err(usage(format!("`{key}` must be finite")));
    }
    Ok((param, value))
}

fn run_point(
    params: &[String],
    units: &str,
    omega_m_hz: Option<f64>,
    occupation: &str,
) -> Result<(), Failure> {
    let mut fixed = Fixed {
        omega_m_hz,
        ..Fixed::default()
    };
    for s in params {
        let (p, v) = parse_assignment(s)?;
        fixed.set(p, v);
    }
    if fixed.gamma_lc.is_some() && fixed.q_lc.is_some() {
        return Err(usage("`Q_LC` conflicts with `gamma_lc`"));
    }
    let units = if units == "hz" { Units::Hz } else { Units::OmegaM };
    let occupation = if occupation == "exact" {
        Occupation::Exact
    } else {
        Occupation::HighTemperature
    };
    let p = fixed.resolve(units, occupation).map_err(usage)?;
    let r = analyze_point(&p).map_err(|e| Failure {
        code: NUMERICAL,
        message: e.to_string(),
    })?;
    let s = r.state.as_ref();
    let report = PointReport {
        omega_m: p.omega_m,
        omega_lc: p.omega_lc,
        delta: p.delta,
        kappa: p.kappa,
        gamma_m: p.gamma_m,
        gamma_lc: p.gamma_lc,
        om_coupling: p.om_coupling,
        g: p.em_coupling,
        n_m: p.n_m,
        n_lc: p.n_lc,
        stable: r.stable,
        stability_margin: r.stability_margin,
        omega_m_eff: r.omega_m_eff,
        log_negativity: s.map(|s| s.log_negativity),
        duan: s.map(|s| s.duan),
        n_m_eff: s.map(|s| s.n_m_eff),
        n_lc_eff: s.map(|s| s.n_lc_eff),
        lyapunov_residual: s.map(|s| s.lyapunov_residual),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}

fn run_grid(cfg: SweepConfig, out: &Path, run: &RunOpts) -> Result<(), Failure> {
    let cfg = if run.coarse {
        cfg.with_resolution(COARSE_RESOLUTION)
    } else {
        cfg
    };
    let result = run_sweep(&cfg, run.threads.map(usize::from)).map_err(usage)?;
    emit_csv(&result, out).map_err(usage)?;
    let failed = result.rows.iter().filter(|r| r.outcome.is_err()).count();
    eprintln!(
        "wrote {} rows to {}{}",
        result.rows.len(),
        out.display(),
        if failed > 0 {
            format!(" ({failed} failed points)")
        } else {
            String::new()
        }
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Point {
            params,
            units,
            omega_m_hz,
            occupation_mode,
        } => run_point(&params, &units, omega_m_hz, &occupation_mode),
        Command::Sweep { config, out, run } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| usage(format!("cannot read {}: {e}", config.display())))?;
            let cfg = parse_config(&text)
                .map_err(|e| usage(format!("{}: {e}", config.display())))?;
            run_grid(cfg, &out, &run)
        }
        Command::Preset { name, out, run } => {
            let cfg = preset(&name).map_err(usage)?;
            run_grid(cfg, &out, &run)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
