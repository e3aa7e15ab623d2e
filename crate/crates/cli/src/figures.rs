//! Parameter sets and grids for the four reference figures.

use std::fmt;
use std::str::FromStr;

use qdfe::{DiscordPoint, Method, QubitPair, Reservoir, SystemConfig, XStateParams};

use crate::config::linspace;
use crate::error::CliError;
use crate::run;

pub const T_MAX: f64 = 30.0;
pub const T_POINTS: usize = 300;
pub const BETA_MIN: f64 = 1.0;
pub const BETA_MAX: f64 = 10.0;
pub const BETA_POINTS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FromStr for FigureId {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "fig2" | "2" => Ok(Self::Fig2),
            "fig3" | "3" => Ok(Self::Fig3),
            "fig4" | "4" => Ok(Self::Fig4),
            "fig5" | "5" => Ok(Self::Fig5),
            other => Err(CliError::Config(format!("unknown figure '{other}' (fig2..fig5)"))),
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
        })
    }
}

/// One labelled system of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub label: String,
    pub config: SystemConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub config: SystemConfig,
    pub points: Vec<DiscordPoint>,
}

fn system(eta: f64, beta_a: f64, beta_b: f64, state: XStateParams) -> Result<SystemConfig, CliError> {
    Ok(SystemConfig::new(
        QubitPair::default(),
        Reservoir::new(eta, 1.0, beta_a)?,
        Reservoir::new(eta, 1.0, beta_b)?,
        state,
    )?)
}

pub fn beta_grid() -> Vec<f64> {
    linspace(BETA_MIN, BETA_MAX, BETA_POINTS)
}

/// Every system of the figure, in output order.
pub fn series_specs(id: FigureId) -> Result<Vec<SeriesSpec>, CliError> {
    let mut out = Vec::new();
    match id {
        FigureId::Fig2 => {
            let state = XStateParams::new(1.0, 0.4, -0.4)?;
            for b in beta_grid() {
                out.push(SeriesSpec {
                    label: "eta=0.2".into(),
                    config: system(0.2, b, b, state)?,
                });
            }
        }
        FigureId::Fig3 => {
            let state = XStateParams::plateau_family(0.4)?;
            for eta in [0.2, 0.6, 0.9] {
                out.push(SeriesSpec {
                    label: format!("eta={eta}"),
                    config: system(eta, 5.0, 5.0, state)?,
                });
            }
        }
        FigureId::Fig4 => {
            for c3 in [0.2, 0.4, 0.8] {
                out.push(SeriesSpec {
                    label: format!("c3={c3}"),
                    config: system(0.2, 5.0, 5.0, XStateParams::plateau_family(c3)?)?,
                });
            }
        }
        FigureId::Fig5 => {
            let state = XStateParams::new(1.0, 0.4, -0.4)?;
            for kappa in [0.2, 1.0, 5.0] {
                for b in beta_grid() {
                    out.push(SeriesSpec {
                        label: format!("kappa={kappa}"),
                        config: system(0.12, b, kappa * b, state)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn run_figure(id: FigureId, method: Method) -> Result<Vec<Series>, CliError> {
    let specs = series_specs(id)?;
    let configs: Vec<SystemConfig> = specs.iter().map(|s| s.config).collect();
    let curves = run::curves(&configs, T_MAX, T_POINTS, method)?;
    Ok(specs
        .into_iter()
        .zip(curves)
        .map(|(s, points)| Series {
            label: s.label,
            config: s.config,
            points,
        })
        .collect())
}

pub const FIGURE_PREFIX: [&str; 3] = ["series", "beta_a", "beta_b"];

pub fn write_figure<W: std::io::Write>(out: W, series: &[Series]) -> Result<(), CliError> {
    let rows: Vec<(Vec<String>, Vec<DiscordPoint>)> = series
        .iter()
        .map(|s| {
            (
                vec![
                    s.label.clone(),
                    crate::output::fmt_f64(s.config.bath_a.beta),
                    crate::output::fmt_f64(s.config.bath_b.beta),
                ],
                s.points.clone(),
            )
        })
        .collect();
    crate::output::write_keyed(out, &FIGURE_PREFIX, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(series_specs(FigureId::Fig2).unwrap().len(), 50);
        assert_eq!(series_specs(FigureId::Fig3).unwrap().len(), 3);
        assert_eq!(series_specs(FigureId::Fig4).unwrap().len(), 3);
        let f5 = series_specs(FigureId::Fig5).unwrap();
        assert_eq!(f5.len(), 150);
        for s in &f5 {
            let k: f64 = s.label.trim_start_matches("kappa=").parse().unwrap();
            assert!((s.config.bath_b.beta - k * s.config.bath_a.beta).abs() < 1e-12);
            assert_eq!(s.config.bath_a.eta, 0.12);
        }
    }

    #[test]
    fn parse_ids() {
        assert_eq!("fig3".parse::<FigureId>().unwrap(), FigureId::Fig3);
        assert_eq!("FIG5".parse::<FigureId>().unwrap(), FigureId::Fig5);
        assert!("fig6".parse::<FigureId>().is_err());
        assert_eq!(FigureId::Fig4.to_string(), "fig4");
    }
}
