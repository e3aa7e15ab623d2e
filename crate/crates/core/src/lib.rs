//! Exact dynamics of quantum discord for two non-interacting qubits, each
//! dephasing in its own finite-temperature Ohmic reservoir.
//!
//! The model is exactly solvable: populations are conserved and each
//! coherence is multiplied by a decohering function D(t) = exp(−Γ(t)). For the
//! X states with maximally mixed marginals, discord, classical correlation
//! and the critical time t_p at which discord stops being frozen all follow in
//! closed form; every closed form here is paired with an independent numerical
//! route (quadrature, measurement brute force, bisection).
//!
//! ```
//! use qdfe::{dfe, model::{Reservoir, SystemConfig, XStateParams}};
//!
//! let bath = Reservoir::new(0.2, 1.0, 5.0).unwrap();
//! let config = SystemConfig::equal_baths(bath, XStateParams::plateau_family(-0.4).unwrap()).unwrap();
//! let t_p = dfe::critical_time_solve(&config).unwrap().unwrap().t_p;
//! assert!(t_p > 0.0);
//! ```

pub mod bath;
pub mod correlations;
pub mod dfe;
pub mod error;
pub mod evolution;
pub mod model;
pub mod quadrature;

pub use error::{Error, Result};
pub use model::{
    DiscordPoint, Method, QubitPair, Regime, Reservoir, SystemConfig, XDensityMatrix,
    XStateParams,
};
