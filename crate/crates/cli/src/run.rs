//! Curve, surface and critical-time runs. Points are evaluated in parallel
//! and collected in grid order, so output never depends on scheduling.

use qdfe::dfe::{self, CriticalTime};
use qdfe::evolution::uniform_grid;
use qdfe::{DiscordPoint, Method, SystemConfig};
use rayon::prelude::*;

use crate::config::{Resolved, SweepParam};
use crate::error::CliError;

pub fn curve(config: &SystemConfig, t_max: f64, points: usize, method: Method) -> Result<Vec<DiscordPoint>, CliError> {
    config.validate()?;
    let times = uniform_grid(t_max, points)?;
    let out = times
        .par_iter()
        .map(|&t| dfe::discord_point(config, t, method))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(out)
}

/// Many curves on a shared time grid, one per system; flattened so every
/// (system, time) pair is a separate parallel task.
pub fn curves(
    configs: &[SystemConfig],
    t_max: f64,
    points: usize,
    method: Method,
) -> Result<Vec<Vec<DiscordPoint>>, CliError> {
    for c in configs {
        c.validate()?;
    }
    let times = uniform_grid(t_max, points)?;
    let flat = (0..configs.len() * times.len())
        .into_par_iter()
        .map(|k| dfe::discord_point(&configs[k / times.len()], times[k % times.len()], method))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(flat.chunks(times.len()).map(<[_]>::to_vec).collect())
}

pub fn surface(
    base: &Resolved,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<(f64, Vec<DiscordPoint>)>, CliError> {
    let configs = values
        .iter()
        .map(|&v| param.apply(base, v))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = curves(&configs, base.t_max, base.points, base.method)?;
    Ok(values.iter().copied().zip(rows).collect())
}

pub fn critical_times(
    base: &Resolved,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<(f64, Option<CriticalTime>)>, CliError> {
    let configs = values
        .iter()
        .map(|&v| param.apply(base, v))
        .collect::<Result<Vec<_>, _>>()?;
    let out = configs
        .par_iter()
        .map(dfe::critical_time_solve)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(values.iter().copied().zip(out).collect())
}

/// Largest |I − C − D| over a set of rows.
pub fn identity_residual<'a>(points: impl IntoIterator<Item = &'a DiscordPoint>) -> f64 {
    points
        .into_iter()
        .map(|p| (p.mutual_info - p.classical - p.discord).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Params;

    #[test]
    fn parallel_matches_serial() {
        let r = Params::defaults().resolve().unwrap();
        let par = curve(&r.config, 30.0, 101, Method::Closed).unwrap();
        let ser = dfe::scan_trajectory(&r.config, 30.0, 101).unwrap();
        assert_eq!(par, ser);
    }

    #[test]
    fn surface_rows_follow_values() {
        let mut p = Params::defaults();
        p.points = Some(20);
        let r = p.resolve().unwrap();
        let rows = surface(&r, SweepParam::Beta, &[1.0, 5.0, 10.0]).unwrap();
        assert_eq!(rows.len(), 3);
        for (v, pts) in &rows {
            let one = SweepParam::Beta.apply(&r, *v).unwrap();
            assert_eq!(pts, &curve(&one, r.t_max, 20, Method::Closed).unwrap());
        }
    }

    #[test]
    fn critical_none_without_plateau() {
        let r = Params::defaults().resolve().unwrap();
        let rows = critical_times(&r, SweepParam::C3, &[0.0, 0.4]).unwrap();
        assert!(rows[0].1.is_none());
        assert!(rows[1].1.is_some());
    }
}
