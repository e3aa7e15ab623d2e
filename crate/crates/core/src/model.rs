//! Value types shared by the bath, evolution, correlation and critical-time
//! modules.
//!
//! Units: ħ = k_B = 1. Frequencies are measured in units of bath A's cutoff
//! ω_c, times in 1/ω_c, and inverse temperatures β in 1/ω_c. A zero
//! temperature bath is encoded as `beta = f64::INFINITY`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues below this are treated as floating-point noise around zero.
pub const POSITIVITY_TOL: f64 = 1e-12;

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];

/// Bloch-diagonal coefficients of a two-qubit state with maximally mixed
/// marginals, ρ = (I + Σ_j c_j σ_j ⊗ σ_j) / 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl XStateParams {
    /// Build and validate.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let p = Self { c1, c2, c3 };
        p.validate()?;
        Ok(p)
    }

    /// The one-parameter family c1 = 1, c2 = −c3 that shows a time-independent
    /// discord plateau.
    pub fn plateau_family(c3: f64) -> Result<Self> {
        Self::new(1.0, -c3, c3)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            if !value.is_finite() || value.abs() > 1.0 + POSITIVITY_TOL {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite with |c| ≤ 1",
                });
            }
        }
        for (index, eigenvalue) in self.eigenvalues().into_iter().enumerate() {
            if eigenvalue < -POSITIVITY_TOL {
                return Err(Error::NonPhysicalState {
                    index: index + 1,
                    eigenvalue,
                });
            }
        }
        Ok(())
    }

    /// Initial spectrum (1 + c3 ∓ |c1 − c2|)/4, (1 − c3 ∓ |c1 + c2|)/4.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let a = (self.c1 - self.c2).abs();
        let g = (self.c1 + self.c2).abs();
        [
            (1.0 + self.c3 - a) / 4.0,
            (1.0 + self.c3 + a) / 4.0,
            (1.0 - self.c3 - g) / 4.0,
            (1.0 - self.c3 + g) / 4.0,
        ]
    }

    /// Dense 4×4 matrix assembled from the Pauli expansion, in the product
    /// basis {gg, ge, eg, ee} (first label is qubit A).
    pub fn initial_matrix(&self) -> Matrix4 {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        // Single-qubit operators in the {g, e} basis with σ_z|e⟩ = +|e⟩.
        let sx = [[zero, one], [one, zero]];
        let sy = [[zero, i], [-i, zero]];
        let sz = [[-one, zero], [zero, one]];

        let mut rho = [[zero; 4]; 4];
        for (r, row) in rho.iter_mut().enumerate() {
            row[r] += one;
        }
        for (c, s) in [(self.c1, sx), (self.c2, sy), (self.c3, sz)] {
            for (r, row) in rho.iter_mut().enumerate() {
                for (col, entry) in row.iter_mut().enumerate() {
                    *entry += s[r / 2][col / 2] * s[r % 2][col % 2] * c;
                }
            }
        }
        for row in rho.iter_mut() {
            for entry in row.iter_mut() {
                *entry /= 4.0;
            }
        }
        rho
    }
}

/// One Ohmic reservoir: J(ω) = η ω exp(−ω/ω_c) at inverse temperature β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reservoir {
    pub eta: f64,
    pub omega_c: f64,
    pub beta: f64,
}

impl Reservoir {
    pub fn new(eta: f64, omega_c: f64, beta: f64) -> Result<Self> {
        let r = Self { eta, omega_c, beta };
        r.validate()?;
        Ok(r)
    }

    pub fn zero_temperature(eta: f64, omega_c: f64) -> Result<Self> {
        Self::new(eta, omega_c, f64::INFINITY)
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.beta == f64::INFINITY
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: self.eta,
                reason: "coupling must be finite and positive",
            });
        }
        if !(self.omega_c.is_finite() && self.omega_c > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega_c",
                value: self.omega_c,
                reason: "cutoff must be finite and positive",
            });
        }
        if self.beta.is_nan() || self.beta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: self.beta,
                reason: "inverse temperature must be positive (inf for T = 0)",
            });
        }
        Ok(())
    }
}

/// Qubit level splittings Ω_A, Ω_B.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QubitPair {
    pub omega_a: f64,
    pub omega_b: f64,
}

impl QubitPair {
    pub fn new(omega_a: f64, omega_b: f64) -> Result<Self> {
        let q = Self { omega_a, omega_b };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("omega_A", self.omega_a), ("omega_B", self.omega_b)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "splitting must be finite and non-negative",
                });
            }
        }
        Ok(())
    }
}

/// A complete experiment definition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub qubits: QubitPair,
    pub bath_a: Reservoir,
    pub bath_b: Reservoir,
    pub state: XStateParams,
}

impl SystemConfig {
    pub fn new(
        qubits: QubitPair,
        bath_a: Reservoir,
        bath_b: Reservoir,
        state: XStateParams,
    ) -> Result<Self> {
        let c = Self {
            qubits,
            bath_a,
            bath_b,
            state,
        };
        c.validate()?;
        Ok(c)
    }

    /// Two identical baths and resonance-free qubits (Ω_A = Ω_B = 0).
    pub fn equal_baths(bath: Reservoir, state: XStateParams) -> Result<Self> {
        Self::new(QubitPair::default(), bath, bath, state)
    }

    pub fn validate(&self) -> Result<()> {
        self.qubits.validate()?;
        self.bath_a.validate()?;
        self.bath_b.validate()?;
        self.state.validate()
    }

    /// Reference frequency scale (bath A's cutoff).
    pub fn omega_ref(&self) -> f64 {
        self.bath_a.omega_c
    }
}

/// The evolved X-shaped density matrix, stored through its independent
/// entries: c3 and the rotating coherences α̃ and γ̃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XDensityMatrix {
    pub c3: f64,
    pub alpha: Complex64,
    pub gamma: Complex64,
    pub t: f64,
}

impl XDensityMatrix {
    /// Dense form in the basis {gg, ge, eg, ee}.
    pub fn to_matrix(&self) -> Matrix4 {
        let zero = Complex64::new(0.0, 0.0);
        let p = Complex64::new((1.0 + self.c3) / 4.0, 0.0);
        let m = Complex64::new((1.0 - self.c3) / 4.0, 0.0);
        let a = self.alpha / 4.0;
        let g = self.gamma / 4.0;
        [
            [p, zero, zero, a.conj()],
            [zero, m, g.conj(), zero],
            [zero, g, m, zero],
            [a, zero, zero, p],
        ]
    }

    /// Checks |α̃| ≤ 1 + c3 and |γ̃| ≤ 1 − c3 (up to the positivity tolerance).
    pub fn validate(&self) -> Result<()> {
        crate::evolution::eigenvalues(self).map(|_| ())
    }
}

/// Which branch of χ = max(|c3|, (|α|+|γ|)/2) is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Discord frozen at its initial value.
    Dfe,
    Decay,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Dfe => "DFE",
            Regime::Decay => "DECAY",
        })
    }
}

/// Computation route for a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    /// Closed-form decoherence functions and closed-form classical correlation.
    #[default]
    Closed,
    /// Closed-form decoherence, classical correlation by explicit
    /// maximisation over projective measurements.
    BruteForce,
    /// Decoherence functions by numerical quadrature of the spectral density.
    Quadrature,
}

/// One sample of a discord trajectory. Correlations are in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordPoint {
    pub t: f64,
    pub d_a: f64,
    pub d_b: f64,
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    pub regime: Regime,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let p = XStateParams::new(1.0, 0.4, -0.4).unwrap();
        let mut ev = p.eigenvalues();
        ev.sort_by(f64::total_cmp);
        let want = [0.0, 0.0, 0.3, 0.7];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{ev:?}");
        }
        assert!(XStateParams::new(0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn bell_state_is_physical() {
        // c = (1, 1, −1) is a Bell state: spectrum {0, 0, 0, 1}.
        let p = XStateParams::new(1.0, 1.0, -1.0).unwrap();
        let mut ev = p.eigenvalues();
        ev.sort_by(f64::total_cmp);
        assert_eq!(ev, [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn non_physical_state_rejected() {
        let err = XStateParams::new(1.0, 1.0, 1.0).unwrap_err();
        match err {
            Error::NonPhysicalState { eigenvalue, .. } => {
                assert!((eigenvalue + 0.5).abs() < 1e-15)
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(XStateParams::new(1.2, 0.0, 0.0).is_err());
        assert!(XStateParams::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn reservoir_validation() {
        assert!(Reservoir::new(0.2, 1.0, 5.0).is_ok());
        assert!(Reservoir::zero_temperature(0.2, 1.0).unwrap().is_zero_temperature());
        assert!(Reservoir::new(0.0, 1.0, 5.0).is_err());
        assert!(Reservoir::new(0.2, -1.0, 5.0).is_err());
        assert!(Reservoir::new(0.2, 1.0, 0.0).is_err());
        assert!(Reservoir::new(0.2, 1.0, f64::NAN).is_err());
        assert!(QubitPair::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn initial_matrix_matches_x_layout() {
        let p = XStateParams::new(0.3, -0.2, 0.1).unwrap();
        let rho = p.initial_matrix();
        let x = XDensityMatrix {
            c3: p.c3,
            alpha: Complex64::new(p.c1 - p.c2, 0.0),
            gamma: Complex64::new(p.c1 + p.c2, 0.0),
            t: 0.0,
        }
        .to_matrix();
        for r in 0..4 {
            for c in 0..4 {
                assert!((rho[r][c] - x[r][c]).norm() < 1e-15, "({r},{c})");
            }
        }
    }

    #[test]
    fn regime_labels() {
        assert_eq!(Regime::Dfe.to_string(), "DFE");
        assert_eq!(Regime::Decay.to_string(), "DECAY");
    }
}
