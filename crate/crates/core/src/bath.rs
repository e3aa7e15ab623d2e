//! Ohmic reservoirs: spectral density, decohering factor Γ(t) and decohering
//! function D(t) = exp(−Γ(t)).
//!
//! Two independent routes are provided. [`gamma_closed`] evaluates the
//! infinite-product form
//!
//! ```text
//! Γ(t) = (η/2) ln(1 + ω_c²t²) + η Σ_{n≥1} ln[1 + ω_c²t² / (1 + βω_c n)²]
//! ```
//!
//! and [`gamma_quadrature`] integrates the spectral density directly,
//!
//! ```text
//! Γ(t) = 2 ∫_0^∞ dω J(ω)/ω² coth(βω/2) sin²(ωt/2).
//! ```

use crate::error::{Error, Result};
use crate::model::Reservoir;
use crate::quadrature::{self, Tolerance};

/// Largest acceptable quadrature error estimate for Γ.
pub const QUADRATURE_MAX_ERROR: f64 = 1e-9;

/// Hard cap on the number of explicitly summed thermal terms.
pub const MAX_SERIES_TERMS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceEval {
    /// Γ(t) ≥ 0.
    pub gamma: f64,
    /// D(t) = exp(−Γ(t)).
    pub d: f64,
    pub method: GammaMethod,
    /// Absolute error estimate on `gamma`.
    pub est_error: f64,
}

impl DecoherenceEval {
    fn new(gamma: f64, method: GammaMethod, est_error: f64) -> Self {
        Self {
            gamma,
            d: (-gamma).exp(),
            method,
            est_error,
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "time",
            value: t,
        })
    }
}

/// J(ω) = η ω exp(−ω/ω_c).
pub fn spectral_density(r: &Reservoir, omega: f64) -> Result<f64> {
    if omega.is_nan() || omega < 0.0 {
        return Err(Error::Domain {
            what: "frequency",
            value: omega,
        });
    }
    if omega == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(r.eta * omega * (-omega / r.omega_c).exp())
}

/// Γ(t) from the product form, with the thermal series summed explicitly up
/// to index N and the remainder taken from the Euler–Maclaurin expansion.
pub fn gamma_closed(r: &Reservoir, t: f64) -> Result<DecoherenceEval> {
    check_time(t)?;
    let x = r.omega_c * t;
    let vacuum = 0.5 * r.eta * (x * x).ln_1p();
    if t == 0.0 || r.is_zero_temperature() {
        return Ok(DecoherenceEval::new(vacuum, GammaMethod::ClosedForm, 0.0));
    }
    let (thermal, err) = thermal_series(x / (r.beta * r.omega_c), 1.0 / (r.beta * r.omega_c));
    Ok(DecoherenceEval::new(
        vacuum + r.eta * thermal,
        GammaMethod::ClosedForm,
        r.eta * err,
    ))
}

/// Σ_{n≥1} ln(1 + c²/(n + z)²) and an estimate of its absolute error.
fn thermal_series(c: f64, z: f64) -> (f64, f64) {
    let c2 = c * c;
    let term = |u: f64| (c2 / (u * u)).ln_1p();

    // Start the asymptotic tail once u = n + z is well past c and the next
    // Euler–Maclaurin term c²/(42 u⁷) is below 1e-17.
    let u_min = (8.0 * c).max((c2 / 4.2e-16).powf(1.0 / 7.0)).max(16.0);
    let n_explicit = (u_min - z).ceil().max(1.0) as usize;
    let n_explicit = n_explicit.min(MAX_SERIES_TERMS);
    let head: f64 = (1..=n_explicit).map(|n| term(n as f64 + z)).sum();

    let u = (n_explicit + 1) as f64 + z;
    let uc = u * u + c2;
    // ∫_u^∞ ln(1 + c²/s²) ds
    let integral = 2.0 * c * (c / u).atan() - u * term(u);
    let d1 = 2.0 * u / uc - 2.0 / u;
    let d3 = 4.0 * u * (u * u - 3.0 * c2) / (uc * uc * uc) - 4.0 / (u * u * u);
    let tail = integral + 0.5 * term(u) - d1 / 12.0 + d3 / 720.0;

    // Next Euler–Maclaurin term is ≈ c²/(42 u⁷); add summation round-off.
    let err = c2 / (42.0 * u.powi(7)) + f64::EPSILON * (head + tail) * (n_explicit as f64).sqrt();
    (head + tail, err)
}

/// Γ(t) by adaptive quadrature of the spectral density.
pub fn gamma_quadrature(r: &Reservoir, t: f64) -> Result<DecoherenceEval> {
    gamma_quadrature_with_prefactor(r, t, 2.0)
}

/// Same integral with an arbitrary overall prefactor in place of 2. Only
/// useful as a negative control; any value other than 2 disagrees with
/// [`gamma_closed`].
pub fn gamma_quadrature_with_prefactor(
    r: &Reservoir,
    t: f64,
    prefactor: f64,
) -> Result<DecoherenceEval> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(DecoherenceEval::new(0.0, GammaMethod::Quadrature, 0.0));
    }
    let eta = r.eta;
    let wc = r.omega_c;
    let beta = r.beta;
    let zero_t = r.is_zero_temperature();
    let integrand = move |w: f64| {
        if w == 0.0 {
            // Finite ω → 0 limit: coth ≈ 2/(βω), sin² ≈ ω²t²/4.
            return if zero_t {
                0.0
            } else {
                prefactor * eta * t * t / (2.0 * beta)
            };
        }
        let thermal = if zero_t {
            1.0
        } else {
            1.0 / (0.5 * beta * w).tanh()
        };
        let s = (0.5 * w * t).sin();
        prefactor * eta * (-w / wc).exp() / w * thermal * s * s
    };

    // e^{-W/ω_c} < e^{-35} makes the neglected tail < 1e-15.
    let upper = wc * (35.0 + wc * t);
    // Two panels per oscillation period 2π/t.
    let panels = ((upper * t / std::f64::consts::PI).ceil() as usize + 4).min(20_000);
    let tol = Tolerance {
        abs: 1e-13,
        rel: 1e-13,
        max_intervals: 200_000,
    };
    let res = quadrature::integrate(integrand, 0.0, upper, panels, tol)?;
    if res.abs_error > QUADRATURE_MAX_ERROR {
        return Err(Error::QuadratureFailure {
            estimate: res.value,
            error: res.abs_error,
            intervals: res.intervals,
        });
    }
    Ok(DecoherenceEval::new(
        res.value,
        GammaMethod::Quadrature,
        res.abs_error,
    ))
}

pub fn decoherence(r: &Reservoir, t: f64, method: GammaMethod) -> Result<DecoherenceEval> {
    match method {
        GammaMethod::ClosedForm => gamma_closed(r, t),
        GammaMethod::Quadrature => gamma_quadrature(r, t),
    }
}

/// D_A(t)·D_B(t) from the closed form.
pub fn decoherence_product(bath_a: &Reservoir, bath_b: &Reservoir, t: f64) -> Result<f64> {
    let a = gamma_closed(bath_a, t)?;
    let b = gamma_closed(bath_b, t)?;
    Ok((-(a.gamma + b.gamma)).exp())
}
