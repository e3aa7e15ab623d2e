//! Decoherence-free evolution of discord: the critical time t_p at which the
//! optimal measurement switches branch, and regime-labelled trajectories.

use crate::bath::{self, GammaMethod};
use crate::correlations::{self, ClassicalMethod};
use crate::error::{Error, Result};
use crate::evolution;
use crate::model::{DiscordPoint, Method, Regime, SystemConfig, XDensityMatrix};

/// Upper limit of the doubling search, in units of 1/ω_c.
pub const BRACKET_CAP: f64 = (1u64 << 20) as f64;
/// Bisection stops once the bracket is narrower than this (units of 1/ω_c).
pub const BISECTION_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalMethod {
    ClosedZeroT,
    Bisection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTime {
    pub t_p: f64,
    pub method: CriticalMethod,
    pub bracket: (f64, f64),
    /// m·D_A(t_p)·D_B(t_p) − |c3| (m = 1 for the plateau family).
    pub residual: f64,
}

/// t_p = √(|c3|^{−1/η} − 1) / ω_c for two identical zero-temperature baths.
pub fn critical_time_closed(eta: f64, c3: f64, omega_c: f64) -> Result<f64> {
    let a = c3.abs();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain {
            what: "|c3| for a finite critical time (need 0 < |c3| < 1)",
            value: c3,
        });
    }
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "coupling must be finite and positive",
        });
    }
    if !(omega_c.is_finite() && omega_c > 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega_c",
            value: omega_c,
            reason: "cutoff must be finite and positive",
        });
    }
    Ok(((-a.ln() / eta).exp_m1()).sqrt() / omega_c)
}

/// Coherent-branch weight m = (|c1 − c2| + |c1 + c2|)/2, so that the coherent
/// branch of χ is m·D_A·D_B.
fn coherent_weight(config: &SystemConfig) -> f64 {
    let s = &config.state;
    0.5 * ((s.c1 - s.c2).abs() + (s.c1 + s.c2).abs())
}

/// Root of m·D_A(t)·D_B(t) = |c3| by bracket doubling and bisection.
///
/// Returns `None` when no plateau exists: c3 = 0, or the coherent branch does
/// not dominate at t = 0.
pub fn critical_time_solve(config: &SystemConfig) -> Result<Option<CriticalTime>> {
    config.validate()?;
    let c3 = config.state.c3.abs();
    let weight = coherent_weight(config);
    if c3 == 0.0 || weight <= c3 {
        return Ok(None);
    }
    let scale = 1.0 / config.omega_ref();
    let f = |t: f64| -> Result<f64> {
        Ok(weight * bath::decoherence_product(&config.bath_a, &config.bath_b, t)? - c3)
    };

    let mut lo = 0.0;
    let mut hi = scale;
    while f(hi)? >= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > BRACKET_CAP * scale {
            return Err(Error::NoRootInRange {
                t_cap: BRACKET_CAP * scale,
            });
        }
    }
    let bracket = (lo, hi);
    while hi - lo > BISECTION_WIDTH * scale {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_p = 0.5 * (lo + hi);
    Ok(Some(CriticalTime {
        t_p,
        method: CriticalMethod::Bisection,
        bracket,
        residual: f(t_p)?,
    }))
}

/// DFE while the coherent branch of χ is active (ties go to DFE); a state with
/// c3 = 0 has no plateau and is always decaying.
pub fn regime(rho: &XDensityMatrix) -> Regime {
    let c3 = rho.c3.abs();
    let coherent = 0.5 * (rho.alpha.norm() + rho.gamma.norm());
    if c3 > 0.0 && coherent >= c3 {
        Regime::Dfe
    } else {
        Regime::Decay
    }
}

/// Full correlation breakdown at one instant.
pub fn discord_point(config: &SystemConfig, t: f64, method: Method) -> Result<DiscordPoint> {
    let gamma_method = match method {
        Method::Quadrature => GammaMethod::Quadrature,
        Method::Closed | Method::BruteForce => GammaMethod::ClosedForm,
    };
    let classical_method = match method {
        Method::BruteForce => ClassicalMethod::BruteForce,
        Method::Closed | Method::Quadrature => ClassicalMethod::Closed,
    };
    let da = bath::decoherence(&config.bath_a, t, gamma_method)?;
    let db = bath::decoherence(&config.bath_b, t, gamma_method)?;
    let rho = evolution::state_from_decay(config, t, (-(da.gamma + db.gamma)).exp());
    let c = correlations::discord(&rho, classical_method)?;
    Ok(DiscordPoint {
        t,
        d_a: da.d,
        d_b: db.d,
        mutual_info: c.mutual_info,
        classical: c.classical,
        discord: c.discord,
        regime: regime(&rho),
    })
}

/// Discord trajectory on `n` uniform times over [0, t_max], closed-form route.
pub fn scan_trajectory(config: &SystemConfig, t_max: f64, n: usize) -> Result<Vec<DiscordPoint>> {
    scan_trajectory_with(config, t_max, n, Method::Closed)
}

pub fn scan_trajectory_with(
    config: &SystemConfig,
    t_max: f64,
    n: usize,
    method: Method,
) -> Result<Vec<DiscordPoint>> {
    config.validate()?;
    evolution::uniform_grid(t_max, n)?
        .into_iter()
        .map(|t| discord_point(config, t, method))
        .collect()
}
