//! Browser bindings. Each export returns a flat `Float64Array`; the pure
//! functions behind them are plain Rust and tested natively.

use qdfe::bath::{gamma_closed, gamma_quadrature};
use qdfe::dfe::{critical_time_solve, discord_point};
use qdfe::evolution::uniform_grid;
use qdfe::{Method, QubitPair, Regime, Reservoir, SystemConfig, XStateParams};
use wasm_bindgen::prelude::*;

/// Values per time sample in [`discord_curve`]: t, discord, classical,
/// mutual information, regime (1 = DFE, 0 = decay).
pub const CURVE_STRIDE: usize = 5;

fn system(eta: f64, beta_a: f64, kappa: f64, c3: f64) -> qdfe::Result<SystemConfig> {
    SystemConfig::new(
        QubitPair::default(),
        Reservoir::new(eta, 1.0, beta_a)?,
        Reservoir::new(eta, 1.0, kappa * beta_a)?,
        XStateParams::plateau_family(c3)?,
    )
}

pub fn discord_curve_values(
    eta: f64,
    beta_a: f64,
    kappa: f64,
    c3: f64,
    t_max: f64,
    points: usize,
) -> qdfe::Result<Vec<f64>> {
    let cfg = system(eta, beta_a, kappa, c3)?;
    let mut out = Vec::with_capacity(points * CURVE_STRIDE);
    for t in uniform_grid(t_max, points)? {
        let p = discord_point(&cfg, t, Method::Closed)?;
        let flag = if p.regime == Regime::Dfe { 1.0 } else { 0.0 };
        out.extend([p.t, p.discord, p.classical, p.mutual_info, flag]);
    }
    Ok(out)
}

/// Pairs (β_a, t_p); t_p is NaN where the state has no plateau.
pub fn critical_time_values(
    eta: f64,
    kappa: f64,
    c3: f64,
    beta_min: f64,
    beta_max: f64,
    points: usize,
) -> qdfe::Result<Vec<f64>> {
    if !(beta_min > 0.0 && beta_max > beta_min) {
        return Err(qdfe::Error::InvalidParameter {
            name: "beta_max",
            value: beta_max,
            reason: "need 0 < beta_min < beta_max",
        });
    }
    let span = uniform_grid(beta_max - beta_min, points)?;
    let mut out = Vec::with_capacity(2 * points);
    for s in span {
        let beta = beta_min + s;
        let tp = critical_time_solve(&system(eta, beta, kappa, c3)?)?.map_or(f64::NAN, |c| c.t_p);
        out.extend([beta, tp]);
    }
    Ok(out)
}

/// Triples (t, Γ closed form, Γ by quadrature) for one bath.
pub fn decoherence_values(eta: f64, beta: f64, t_max: f64, points: usize) -> qdfe::Result<Vec<f64>> {
    let r = Reservoir::new(eta, 1.0, beta)?;
    let mut out = Vec::with_capacity(3 * points);
    for t in uniform_grid(t_max, points)? {
        out.extend([t, gamma_closed(&r, t)?.gamma, gamma_quadrature(&r, t)?.gamma]);
    }
    Ok(out)
}

fn js(e: qdfe::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn discord_curve(eta: f64, beta_a: f64, kappa: f64, c3: f64, t_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    discord_curve_values(eta, beta_a, kappa, c3, t_max, points).map_err(js)
}

#[wasm_bindgen]
pub fn critical_time_vs_beta(
    eta: f64,
    kappa: f64,
    c3: f64,
    beta_min: f64,
    beta_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    critical_time_values(eta, kappa, c3, beta_min, beta_max, points).map_err(js)
}

#[wasm_bindgen]
pub fn decoherence_paths(eta: f64, beta: f64, t_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    decoherence_values(eta, beta, t_max, points).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_layout_and_plateau() {
        let v = discord_curve_values(0.2, 5.0, 1.0, 0.4, 30.0, 61).unwrap();
        assert_eq!(v.len(), 61 * CURVE_STRIDE);
        let plateau = qdfe::correlations::discord_plateau(0.4).unwrap();
        assert_eq!(v[4], 1.0);
        assert!((v[1] - plateau).abs() < 1e-12);
        let last = &v[60 * CURVE_STRIDE..];
        assert_eq!(last[0], 30.0);
        assert_eq!(last[4], 0.0);
        assert!(last[1] < plateau);
    }

    #[test]
    fn critical_times_grow_with_beta() {
        let v = critical_time_values(0.2, 1.0, 0.4, 1.0, 10.0, 10).unwrap();
        assert_eq!(v.len(), 20);
        assert_eq!((v[0], v[18]), (1.0, 10.0));
        assert!(v.chunks(2).zip(v.chunks(2).skip(1)).all(|(a, b)| b[1] >= a[1]));
        let none = critical_time_values(0.2, 1.0, 0.0, 1.0, 2.0, 2).unwrap();
        assert!(none[1].is_nan());
        assert!(critical_time_values(0.2, 1.0, 0.4, 5.0, 1.0, 4).is_err());
    }

    #[test]
    fn decoherence_paths_agree() {
        let v = decoherence_values(0.3, 2.0, 20.0, 11).unwrap();
        for row in v.chunks(3).skip(1) {
            assert!((row[1] - row[2]).abs() <= 1e-6 * row[1]);
        }
        assert!(decoherence_values(-1.0, 2.0, 20.0, 11).is_err());
    }
}
