//! Cross-checks between independent numerical routes.

use std::fmt::Write as _;

use qdfe::bath::{gamma_closed, gamma_quadrature_with_prefactor};
use qdfe::correlations::{self, MeasurementGrid};
use qdfe::dfe::{critical_time_closed, critical_time_solve};
use qdfe::{evolution, Method, QubitPair, Reservoir, SystemConfig, XStateParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Resolved;
use crate::error::CliError;
use crate::run;

pub const GAMMA_DRAWS: usize = 50;
pub const BRUTEFORCE_STATES: usize = 20;
pub const SEED: u64 = 0x5eed_d15c;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Overall factor of the spectral integral; 2 is the correct value.
    pub prefactor: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            prefactor: 2.0,
            seed: SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub note: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<28} {:>14} {:>10} {:>8}  {:<6} note", "check", "max_dev", "tol", "samples", "status");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<28} {:>14.6e} {:>10.1e} {:>8}  {:<6} {}",
                c.name,
                c.max_deviation,
                c.tolerance,
                c.samples,
                if c.passed() { "PASS" } else { "FAIL" },
                c.note
            );
        }
        let _ = writeln!(
            s,
            "{}",
            if self.failures() == 0 {
                "all checks passed".to_string()
            } else {
                format!("{} check(s) failed", self.failures())
            }
        );
        s
    }
}

fn random_reservoir(rng: &mut ChaCha8Rng) -> Result<Reservoir, CliError> {
    let eta = rng.gen_range(0.05..1.0);
    let omega_c = rng.gen_range(0.5..2.0);
    let beta = if rng.gen_bool(0.1) {
        f64::INFINITY
    } else {
        rng.gen_range(0.5..20.0)
    };
    Ok(Reservoir::new(eta, omega_c, beta)?)
}

fn random_state(rng: &mut ChaCha8Rng) -> XStateParams {
    loop {
        let c = [(); 3].map(|_| rng.gen_range(-1.0..=1.0));
        if let Ok(s) = XStateParams::new(c[0], c[1], c[2]) {
            return s;
        }
    }
}

fn gamma_check(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    let mut ratios = Vec::with_capacity(GAMMA_DRAWS);
    for _ in 0..GAMMA_DRAWS {
        let r = random_reservoir(rng)?;
        let t = rng.gen_range(0.1..30.0) / r.omega_c;
        let closed = gamma_closed(&r, t)?.gamma;
        let quad = gamma_quadrature_with_prefactor(&r, t, opts.prefactor)?.gamma;
        worst = worst.max((quad - closed).abs() / closed.abs());
        ratios.push(quad / closed);
    }
    ratios.sort_by(f64::total_cmp);
    Ok(Check {
        name: "gamma quadrature vs closed",
        max_deviation: worst,
        tolerance: 1e-6,
        samples: GAMMA_DRAWS,
        note: format!("relative; median quadrature/closed ratio {:.6}", ratios[ratios.len() / 2]),
    })
}

fn bruteforce_checks(rng: &mut ChaCha8Rng) -> Result<[Check; 2], CliError> {
    let mut grid_worst = 0.0f64;
    let mut refined_worst = 0.0f64;
    for _ in 0..BRUTEFORCE_STATES {
        let cfg = SystemConfig::new(
            QubitPair::new(rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0))?,
            random_reservoir(rng)?,
            random_reservoir(rng)?,
            random_state(rng),
        )?;
        let rho = evolution::evolve(&cfg, rng.gen_range(0.0..20.0))?;
        let (closed, _) = correlations::classical_closed(&rho)?;
        let bf = correlations::classical_bruteforce(&rho, MeasurementGrid::default())?;
        grid_worst = grid_worst.max((bf.grid_classical - closed).abs());
        refined_worst = refined_worst.max((bf.classical - closed).abs());
    }
    Ok([
        Check {
            name: "classical grid vs closed",
            max_deviation: grid_worst,
            tolerance: 1e-4,
            samples: BRUTEFORCE_STATES,
            note: "absolute, bits; 91x181 grid".into(),
        },
        Check {
            name: "classical refined vs closed",
            max_deviation: refined_worst,
            tolerance: 1e-6,
            samples: BRUTEFORCE_STATES,
            note: "absolute, bits".into(),
        },
    ])
}

fn critical_check() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for eta in [0.12, 0.2, 0.6, 0.9] {
        for c3 in [0.2, 0.4, 0.8] {
            let bath = Reservoir::zero_temperature(eta, 1.0)?;
            let cfg = SystemConfig::equal_baths(bath, XStateParams::plateau_family(c3)?)?;
            let solved = critical_time_solve(&cfg)?
                .ok_or_else(|| CliError::Config("reference state has no plateau".into()))?;
            let exact = critical_time_closed(eta, c3, 1.0)?;
            worst = worst.max((solved.t_p - exact).abs() / exact);
            n += 1;
        }
    }
    Ok(Check {
        name: "critical time vs zero-T form",
        max_deviation: worst,
        tolerance: 1e-9,
        samples: n,
        note: "relative; bisection vs closed form".into(),
    })
}

fn curve_checks(base: &Resolved) -> Result<[Check; 2], CliError> {
    let pts = run::curve(&base.config, base.t_max, base.points, Method::Closed)?;
    let t_p = critical_time_solve(&base.config)?.map(|c| c.t_p);
    let (plateau_dev, n, note) = match t_p {
        Some(t_p) => {
            let plateau = correlations::discord_plateau(base.config.state.c3)?;
            let before: Vec<f64> = pts.iter().filter(|p| p.t < t_p).map(|p| p.discord).collect();
            let dev = before.iter().map(|d| (d - plateau).abs()).fold(0.0, f64::max);
            (dev, before.len(), format!("absolute; plateau {plateau:.12}, t_p {t_p:.9}"))
        }
        None => (0.0, 0, "no plateau for this state".to_string()),
    };
    Ok([
        Check {
            name: "plateau vs closed value",
            max_deviation: plateau_dev,
            tolerance: 1e-12,
            samples: n,
            note,
        },
        Check {
            name: "mutual info = C + D",
            max_deviation: run::identity_residual(&pts),
            tolerance: 1e-10,
            samples: pts.len(),
            note: "absolute, bits".into(),
        },
    ])
}

pub fn run_verify(base: &Resolved, opts: &VerifyOptions) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks = vec![gamma_check(opts, &mut rng)?];
    checks.extend(bruteforce_checks(&mut rng)?);
    checks.push(critical_check()?);
    checks.extend(curve_checks(base)?);
    Ok(Report { checks })
}
