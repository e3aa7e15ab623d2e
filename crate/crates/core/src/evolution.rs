//! Exact pure-dephasing evolution of the X state.
//!
//! Populations never change; a coherence between |l_A l_B⟩ and |j_A j_B⟩ is
//! multiplied by exp[(δ_{l_A j_A} − 1)Γ_A(t)] exp[(δ_{l_B j_B} − 1)Γ_B(t)]
//! and rotates at the Bohr frequency of the free qubits.

use num_complex::Complex64;

use crate::bath::{self, GammaMethod};
use crate::error::{Error, Result};
use crate::model::{SystemConfig, XDensityMatrix, POSITIVITY_TOL};

/// Single-qubit level label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Ground,
    Excited,
}

impl Level {
    /// Eigenvalue of σ_z.
    pub fn sigma_z(self) -> f64 {
        match self {
            Level::Ground => -1.0,
            Level::Excited => 1.0,
        }
    }

    /// Index of |l_A l_B⟩ in the basis {gg, ge, eg, ee}.
    pub fn pair_index(a: Level, b: Level) -> usize {
        let bit = |l: Level| usize::from(l == Level::Excited);
        2 * bit(a) + bit(b)
    }
}

/// State at time `t` using the closed-form decoherence functions.
pub fn evolve(config: &SystemConfig, t: f64) -> Result<XDensityMatrix> {
    evolve_with(config, t, GammaMethod::ClosedForm)
}

pub fn evolve_with(config: &SystemConfig, t: f64, method: GammaMethod) -> Result<XDensityMatrix> {
    config.validate()?;
    let da = bath::decoherence(&config.bath_a, t, method)?;
    let db = bath::decoherence(&config.bath_b, t, method)?;
    Ok(state_from_decay(config, t, (-(da.gamma + db.gamma)).exp()))
}

/// Builds ρ(t) given the precomputed product D_A(t)·D_B(t).
pub fn state_from_decay(config: &SystemConfig, t: f64, d_product: f64) -> XDensityMatrix {
    let p = &config.state;
    let q = &config.qubits;
    let alpha = (p.c1 - p.c2) * d_product;
    let gamma = (p.c1 + p.c2) * d_product;
    XDensityMatrix {
        c3: p.c3,
        alpha: Complex64::from_polar(1.0, -(q.omega_a + q.omega_b) * t) * alpha,
        gamma: Complex64::from_polar(1.0, (q.omega_b - q.omega_a) * t) * gamma,
        t,
    }
}

/// Interaction-picture decay of one density-matrix element,
/// ρ_{(l_A l_B)(j_A j_B)}(t) = ρ(0) · e^{(δ_{l_A j_A} − 1)Γ_A} · e^{(δ_{l_B j_B} − 1)Γ_B}.
pub fn element_decay(
    rho0: Complex64,
    row: (Level, Level),
    col: (Level, Level),
    config: &SystemConfig,
    t: f64,
) -> Result<Complex64> {
    let ga = bath::gamma_closed(&config.bath_a, t)?.gamma;
    let gb = bath::gamma_closed(&config.bath_b, t)?.gamma;
    let exponent = |same: bool, g: f64| if same { 0.0 } else { -g };
    Ok(rho0 * (exponent(row.0 == col.0, ga) + exponent(row.1 == col.1, gb)).exp())
}

/// Free-evolution phase e^{−i(E_row − E_col)t} with H = (Ω_A σ_z^A + Ω_B σ_z^B)/2.
pub fn free_phase(row: (Level, Level), col: (Level, Level), config: &SystemConfig, t: f64) -> Complex64 {
    let q = &config.qubits;
    let energy = |(a, b): (Level, Level)| 0.5 * (q.omega_a * a.sigma_z() + q.omega_b * b.sigma_z());
    Complex64::from_polar(1.0, -(energy(row) - energy(col)) * t)
}

/// Spectrum (1 + c3 ∓ |α̃|)/4, (1 − c3 ∓ |γ̃|)/4, clamped to [0, 1].
pub fn eigenvalues(rho: &XDensityMatrix) -> Result<[f64; 4]> {
    let a = rho.alpha.norm();
    let g = rho.gamma.norm();
    let raw = [
        (1.0 + rho.c3 - a) / 4.0,
        (1.0 + rho.c3 + a) / 4.0,
        (1.0 - rho.c3 - g) / 4.0,
        (1.0 - rho.c3 + g) / 4.0,
    ];
    let mut out = [0.0; 4];
    for (k, (&lam, slot)) in raw.iter().zip(out.iter_mut()).enumerate() {
        if lam < -POSITIVITY_TOL || lam.is_nan() {
            return Err(Error::NonPhysicalState {
                index: k + 1,
                eigenvalue: lam,
            });
        }
        *slot = lam.clamp(0.0, 1.0);
    }
    Ok(out)
}

/// Sampled evolution on a fixed time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub config: SystemConfig,
    pub times: Vec<f64>,
    pub states: Vec<XDensityMatrix>,
}

impl Trajectory {
    pub fn compute(config: &SystemConfig, times: Vec<f64>) -> Result<Self> {
        if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Domain {
                what: "time grid (must be strictly increasing)",
                value: w[1],
            });
        }
        let states = times
            .iter()
            .map(|&t| evolve(config, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            config: *config,
            times,
            states,
        })
    }

    /// `n` equally spaced times on [0, t_max].
    pub fn uniform(config: &SystemConfig, t_max: f64, n: usize) -> Result<Self> {
        Self::compute(config, uniform_grid(t_max, n)?)
    }
}

pub fn uniform_grid(t_max: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Domain {
            what: "number of time points (need at least 2)",
            value: n as f64,
        });
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::Domain {
            what: "t_max",
            value: t_max,
        });
    }
    let step = t_max / (n - 1) as f64;
    Ok((0..n)
        .map(|k| if k + 1 == n { t_max } else { k as f64 * step })
        .collect())
}
