use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A density-matrix eigenvalue fell below the positivity tolerance.
    #[error("non-physical state: eigenvalue λ{index} = {eigenvalue:e} is negative")]
    NonPhysicalState { index: usize, eigenvalue: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} is outside its domain (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error(
        "quadrature did not converge: estimate {estimate:e}, error {error:e} after {intervals} subintervals"
    )]
    QuadratureFailure {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("no sign change of D_A·D_B − |c3| before t = {t_cap:e}")]
    NoRootInRange { t_cap: f64 },

    #[error("measurement grid {n_theta}×{n_phi} is too coarse (need at least 91×181)")]
    InvalidGrid { n_theta: usize, n_phi: usize },

    #[error("internal consistency failure: discord = {discord:e} is negative")]
    NegativeDiscord { discord: f64 },
}
