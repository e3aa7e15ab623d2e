//! Argument parsing and subcommand dispatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qdfe::dfe::critical_time_solve;
use qdfe::{correlations, DiscordPoint};
use serde::Serialize;

use crate::config::{method_name, parse_method, parse_values, Params, Resolved, SweepParam};
use crate::error::CliError;
use crate::figures::{self, FigureId};
use crate::output;
use crate::run;
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "qdfe", version, about = "Discord dynamics of two dephasing qubits in Ohmic baths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discord and correlations along one trajectory.
    Curve(Common),
    /// One trajectory per value of a swept parameter.
    Surface {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Critical time, optionally across a parameter sweep.
    CriticalTime {
        #[command(flatten)]
        common: Common,
        #[arg(long, requires = "values")]
        sweep: Option<String>,
        #[arg(long)]
        values: Option<String>,
    },
    /// Data grid of one reference figure (fig2, fig3, fig4, fig5).
    Figure {
        figure: String,
        #[arg(long, value_parser = parse_method)]
        method: Option<qdfe::Method>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Cross-check the independent numerical routes.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, hide = true, default_value_t = 2.0)]
        inject_prefactor: f64,
        #[arg(long, default_value_t = verify::SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct Sweep {
    /// beta, beta_a, beta_b, eta, eta_a, eta_b, kappa or c3.
    #[arg(long)]
    pub sweep: String,
    /// Comma list `a,b,c` or range `lo:hi:n`.
    #[arg(long)]
    pub values: String,
}

#[derive(Debug, Args, Default)]
pub struct Common {
    #[arg(long)]
    pub eta_a: Option<f64>,
    #[arg(long)]
    pub eta_b: Option<f64>,
    #[arg(long)]
    pub omega_c_a: Option<f64>,
    #[arg(long)]
    pub omega_c_b: Option<f64>,
    #[arg(long)]
    pub beta_a: Option<f64>,
    #[arg(long, conflicts_with = "kappa")]
    pub beta_b: Option<f64>,
    /// β_b = κ·β_a.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
    #[arg(long = "omega-A")]
    pub omega_a: Option<f64>,
    #[arg(long = "omega-B")]
    pub omega_b: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_parser = parse_method)]
    pub method: Option<qdfe::Method>,
    /// key=value file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV destination (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a JSON run summary here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

impl Common {
    fn flag_params(&self) -> Params {
        Params {
            eta_a: self.eta_a,
            eta_b: self.eta_b,
            omega_c_a: self.omega_c_a,
            omega_c_b: self.omega_c_b,
            beta_a: self.beta_a,
            beta_b: self.beta_b,
            kappa: self.kappa,
            c1: self.c1,
            c2: self.c2,
            c3: self.c3,
            omega_a: self.omega_a,
            omega_b: self.omega_b,
            t_max: self.t_max,
            points: self.points,
            method: self.method,
        }
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let mut p = Params::defaults();
        if let Some(path) = &self.config {
            p = p.merged(&Params::from_file(path)?);
        }
        let flags = self.flag_params();
        flags.check_exclusive("command line")?;
        p.merged(&flags).resolve()
    }
}

/// Machine-readable record of one run.
#[derive(Debug, Serialize)]
pub struct Summary {
    pub command: String,
    pub method: &'static str,
    pub eta_a: f64,
    pub eta_b: f64,
    pub omega_c_a: f64,
    pub omega_c_b: f64,
    /// Infinite β (zero temperature) serializes as null.
    pub beta_a: f64,
    pub beta_b: f64,
    pub c: [f64; 3],
    pub omega_a: f64,
    pub omega_b: f64,
    pub t_max: f64,
    pub points: usize,
    pub rows: usize,
    pub critical_time: Option<f64>,
    pub plateau: Option<f64>,
    pub max_identity_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<verify::Report>,
}

#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub parameter: String,
    pub values: Vec<f64>,
}

impl Summary {
    fn new(command: &str, r: &Resolved, rows: usize, residual: f64) -> Result<Self, CliError> {
        let c = &r.config;
        let critical_time = critical_time_solve(c)?.map(|ct| ct.t_p);
        let plateau = match critical_time {
            Some(_) => Some(correlations::discord_plateau(c.state.c3)?),
            None => None,
        };
        Ok(Self {
            command: command.into(),
            method: method_name(r.method),
            eta_a: c.bath_a.eta,
            eta_b: c.bath_b.eta,
            omega_c_a: c.bath_a.omega_c,
            omega_c_b: c.bath_b.omega_c,
            beta_a: c.bath_a.beta,
            beta_b: c.bath_b.beta,
            c: [c.state.c1, c.state.c2, c.state.c3],
            omega_a: c.qubits.omega_a,
            omega_b: c.qubits.omega_b,
            t_max: r.t_max,
            points: r.points,
            rows,
            critical_time,
            plateau,
            max_identity_residual: residual,
            sweep: None,
            verify: None,
        })
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_summary<T: Serialize>(path: &Option<PathBuf>, s: &T) -> Result<(), CliError> {
    if let Some(p) = path {
        let mut f = BufWriter::new(File::create(p)?);
        serde_json::to_writer_pretty(&mut f, s)?;
        f.write_all(b"\n")?;
        f.flush()?;
    }
    Ok(())
}

fn flat<'a>(rows: impl IntoIterator<Item = &'a Vec<DiscordPoint>>) -> impl Iterator<Item = &'a DiscordPoint> {
    rows.into_iter().flatten()
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Curve(common) => {
            let r = common.resolve()?;
            let pts = run::curve(&r.config, r.t_max, r.points, r.method)?;
            output::write_curve(open_out(&common.out)?, &pts)?;
            write_summary(&common.summary, &Summary::new("curve", &r, pts.len(), run::identity_residual(&pts))?)
        }
        Command::Surface { common, sweep } => {
            let r = common.resolve()?;
            let param: SweepParam = sweep.sweep.parse()?;
            let values = parse_values(&sweep.values)?;
            let rows = run::surface(&r, param, &values)?;
            let keyed: Vec<(Vec<String>, Vec<DiscordPoint>)> = rows
                .iter()
                .map(|(v, pts)| (vec![output::fmt_f64(*v)], pts.clone()))
                .collect();
            output::write_keyed(open_out(&common.out)?, &[param.name()], &keyed)?;
            let n = rows.iter().map(|(_, p)| p.len()).sum();
            let mut s = Summary::new("surface", &r, n, run::identity_residual(flat(rows.iter().map(|(_, p)| p))))?;
            s.sweep = Some(SweepSummary {
                parameter: param.name().into(),
                values,
            });
            write_summary(&common.summary, &s)
        }
        Command::CriticalTime { common, sweep, values } => {
            let r = common.resolve()?;
            let out = open_out(&common.out)?;
            let mut s = Summary::new("critical-time", &r, 1, 0.0)?;
            match (sweep, values) {
                (Some(name), Some(values)) => {
                    let param: SweepParam = name.parse()?;
                    let values = parse_values(&values)?;
                    let rows = run::critical_times(&r, param, &values)?;
                    output::write_critical(out, Some(param.name()), &rows)?;
                    s.rows = rows.len();
                    s.sweep = Some(SweepSummary {
                        parameter: param.name().into(),
                        values,
                    });
                }
                _ => {
                    let ct = critical_time_solve(&r.config)?;
                    output::write_critical(out, None, &[(f64::NAN, ct)])?;
                }
            }
            write_summary(&common.summary, &s)
        }
        Command::Figure { figure, method, out, summary } => {
            let id: FigureId = figure.parse()?;
            let method = method.unwrap_or_default();
            let series = figures::run_figure(id, method)?;
            figures::write_figure(open_out(&out)?, &series)?;
            write_summary(
                &summary,
                &FigureSummary {
                    figure: id.to_string(),
                    method: method_name(method),
                    series: series.len(),
                    rows: series.iter().map(|s| s.points.len()).sum(),
                    max_identity_residual: run::identity_residual(flat(series.iter().map(|s| &s.points))),
                },
            )
        }
        Command::Verify { common, inject_prefactor, seed } => {
            let r = common.resolve()?;
            let report = verify::run_verify(
                &r,
                &VerifyOptions {
                    prefactor: inject_prefactor,
                    seed,
                },
            )?;
            let mut out = open_out(&common.out)?;
            out.write_all(report.table().as_bytes())?;
            out.flush()?;
            let failures = report.failures();
            let mut s = Summary::new("verify", &r, report.checks.len(), 0.0)?;
            s.verify = Some(report);
            write_summary(&common.summary, &s)?;
            if failures > 0 {
                return Err(CliError::VerifyBreach(failures));
            }
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FigureSummary {
    pub figure: String,
    pub method: &'static str,
    pub series: usize,
    pub rows: usize,
    pub max_identity_residual: f64,
}
