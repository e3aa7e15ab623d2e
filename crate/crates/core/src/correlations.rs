//! Mutual information, classical correlation and quantum discord of the
//! evolved X state. All quantities are in bits; measurements act on qubit B.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Matrix2, XDensityMatrix};

/// Negative discord down to this magnitude is rounding noise and clamps to 0.
pub const DISCORD_CLAMP_TOL: f64 = 1e-9;

/// Projector direction |0⟩ = cos θ |g⟩ + e^{iφ} sin θ |e⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    /// θ ∈ [0, π/2]
    pub theta: f64,
    /// φ ∈ [0, 2π)
    pub phi: f64,
}

impl MeasurementAngles {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self {
            theta: theta.clamp(0.0, FRAC_PI_2),
            phi: phi.rem_euclid(2.0 * PI),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationBreakdown {
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    /// Bloch length of the optimal conditional state of A.
    pub chi: f64,
    /// Only reported by the brute-force route.
    pub optimal_angles: Option<MeasurementAngles>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ClassicalMethod {
    #[default]
    Closed,
    BruteForce,
}

/// Resolution of the (θ, φ) seed grid for the brute-force optimiser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementGrid {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for MeasurementGrid {
    fn default() -> Self {
        Self {
            n_theta: 91,
            n_phi: 181,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceClassical {
    /// Maximum after golden-section refinement.
    pub classical: f64,
    /// Best value seen on the seed grid alone.
    pub grid_classical: f64,
    pub angles: MeasurementAngles,
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// f(x) = ½(1 − x)log₂(1 − x) + ½(1 + x)log₂(1 + x), the shared kernel of the
/// classical-correlation and discord formulas.
pub fn binary_entropy_like(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "binary entropy argument",
            value: x,
        });
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    if x < 0.25 {
        // Σ x^{2k} / (2k(2k−1)): the closed form cancels to zero for small x.
        let x2 = x * x;
        let (mut term, mut sum, mut k) = (x2, 0.0, 1.0);
        while term > sum * 1e-17 {
            sum += term / (2.0 * k * (2.0 * k - 1.0));
            term *= x2;
            k += 1.0;
            if term == 0.0 {
                break;
            }
        }
        return Ok(sum / LN_2);
    }
    Ok(0.5 * ((1.0 - x) * (-x).ln_1p() + (1.0 + x) * x.ln_1p()) / LN_2)
}

/// Von Neumann entropy (bits) from a spectrum.
pub fn entropy_bits(spectrum: &[f64]) -> f64 {
    -spectrum.iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// I = 2 + Σ λ_i log₂ λ_i; both marginals are I/2.
pub fn mutual_information(rho: &XDensityMatrix) -> Result<f64> {
    let (populations, coherences) = mutual_information_parts(rho)?;
    Ok(populations + coherences)
}

/// I split as f(|c3|) + ((1+c3)/2) f(|α|/(1+c3)) + ((1−c3)/2) f(|γ|/(1−c3)).
/// Keeping the second part separate lets the discord avoid cancelling two
/// nearly equal numbers once the coherences have decayed.
fn mutual_information_parts(rho: &XDensityMatrix) -> Result<(f64, f64)> {
    rho.validate()?;
    let block = |weight: f64, coherence: f64| -> Result<f64> {
        if weight <= 0.0 {
            return Ok(0.0);
        }
        let half = 0.5 * weight;
        Ok(half * binary_entropy_like((coherence / weight).min(1.0))?)
    };
    let c3 = rho.c3;
    let populations = binary_entropy_like(c3.abs().min(1.0))?;
    let coherences = block(1.0 + c3, rho.alpha.norm())? + block(1.0 - c3, rho.gamma.norm())?;
    Ok((populations, coherences))
}

/// Coherence ⟨e|ρ_A|g⟩ of the outcome-0 conditional state, up to the factor
/// sin 2θ / 4: α̃ e^{−iφ} + γ̃ e^{iφ}. Its modulus is the |ε| of the
/// measurement-angle parametrisation with φ → −φ.
pub fn conditional_coherence(rho: &XDensityMatrix, phi: f64) -> Complex64 {
    rho.alpha * Complex64::from_polar(1.0, -phi) + rho.gamma * Complex64::from_polar(1.0, phi)
}

/// Post-measurement state of qubit A for outcome `k ∈ {0, 1}`, in the basis
/// {e, g}. Both outcomes occur with probability ½.
///
/// Outcome 1 reverses the whole conditional Bloch vector, populations
/// included, so the two outcomes share one spectrum.
pub fn conditional_state(rho: &XDensityMatrix, k: u8, m: MeasurementAngles) -> Matrix2 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let (s2, c2) = (2.0 * m.theta).sin_cos();
    let off = conditional_coherence(rho, m.phi) * (sign * s2 / 4.0);
    let z = sign * rho.c3 * c2;
    [
        [Complex64::new((1.0 - z) / 2.0, 0.0), off],
        [off.conj(), Complex64::new((1.0 + z) / 2.0, 0.0)],
    ]
}

fn qubit_spectrum(m: &Matrix2) -> [f64; 2] {
    let mean = 0.5 * (m[0][0].re + m[1][1].re);
    let half_diff = 0.5 * (m[0][0].re - m[1][1].re);
    let r = half_diff.hypot(m[0][1].norm());
    [mean - r, mean + r]
}

/// S(ρ_A) − Σ_k p_k S(ρ_A^{(k)}) for one projective measurement on B.
pub fn measured_information(rho: &XDensityMatrix, m: MeasurementAngles) -> f64 {
    let conditional: f64 = (0..2)
        .map(|k| 0.5 * entropy_bits(&qubit_spectrum(&conditional_state(rho, k, m))))
        .sum();
    1.0 - conditional
}

/// χ = max(|c3|, (|α|+|γ|)/2) and C = f(χ).
pub fn classical_closed(rho: &XDensityMatrix) -> Result<(f64, f64)> {
    let chi = closed_chi(rho);
    Ok((binary_entropy_like(chi)?, chi))
}

fn closed_chi(rho: &XDensityMatrix) -> f64 {
    let coherent = 0.5 * (rho.alpha.norm() + rho.gamma.norm());
    rho.c3.abs().max(coherent).min(1.0)
}

/// Classical correlation by explicit maximisation over projective
/// measurements: a (θ, φ) grid scan, then golden-section refinement in φ and
/// θ around the best grid maxima.
pub fn classical_bruteforce(
    rho: &XDensityMatrix,
    grid: MeasurementGrid,
) -> Result<BruteForceClassical> {
    if grid.n_theta < 91 || grid.n_phi < 181 {
        return Err(Error::InvalidGrid {
            n_theta: grid.n_theta,
            n_phi: grid.n_phi,
        });
    }
    let d_theta = FRAC_PI_2 / (grid.n_theta - 1) as f64;
    let d_phi = 2.0 * PI / grid.n_phi as f64;
    let objective = |theta: f64, phi: f64| measured_information(rho, MeasurementAngles { theta, phi });

    let mut values = vec![0.0; grid.n_theta * grid.n_phi];
    for i in 0..grid.n_theta {
        for j in 0..grid.n_phi {
            values[i * grid.n_phi + j] = objective(i as f64 * d_theta, j as f64 * d_phi);
        }
    }
    let at = |i: usize, j: usize| values[i * grid.n_phi + j];

    // Local maxima of the grid (φ periodic), best first; ties keep row-major
    // order so the smallest θ, then φ, wins.
    let mut seeds: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..grid.n_theta {
        for j in 0..grid.n_phi {
            let v = at(i, j);
            let neighbours = [i.checked_sub(1), Some(i), (i + 1 < grid.n_theta).then_some(i + 1)];
            let is_peak = neighbours.iter().flatten().all(|&ii| {
                [grid.n_phi - 1, 0, 1]
                    .iter()
                    .all(|&dj| at(ii, (j + dj) % grid.n_phi) <= v)
            });
            if is_peak {
                seeds.push((v, i, j));
            }
        }
    }
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
    let grid_best = seeds[0];

    let mut best = (grid_best.0, grid_best.1 as f64 * d_theta, grid_best.2 as f64 * d_phi);
    for &(_, i, j) in seeds.iter().take(3) {
        let theta0 = i as f64 * d_theta;
        let phi = golden_max(|p| objective(theta0, p), j as f64 * d_phi - d_phi, j as f64 * d_phi + d_phi);
        let theta = golden_max(
            |th| objective(th, phi),
            (theta0 - d_theta).max(0.0),
            (theta0 + d_theta).min(FRAC_PI_2),
        );
        let v = objective(theta, phi);
        if v > best.0 {
            best = (v, theta, phi);
        }
    }

    Ok(BruteForceClassical {
        classical: best.0.max(0.0),
        grid_classical: grid_best.0.max(0.0),
        angles: MeasurementAngles::new(best.1, best.2),
    })
}

const ANGLE_TOL: f64 = 1e-10;

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > ANGLE_TOL {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    // Compare against the bracket ends so boundary optima are not lost.
    let mid = 0.5 * (a + b);
    [a, mid, b]
        .into_iter()
        .max_by(|&p, &q| f(p).total_cmp(&f(q)))
        .unwrap_or(mid)
}

pub fn discord(rho: &XDensityMatrix, method: ClassicalMethod) -> Result<CorrelationBreakdown> {
    let (populations, coherences) = mutual_information_parts(rho)?;
    let mutual_info = populations + coherences;
    let (classical, chi, optimal_angles) = match method {
        ClassicalMethod::Closed => {
            let (c, chi) = classical_closed(rho)?;
            (c, chi, None)
        }
        ClassicalMethod::BruteForce => {
            let bf = classical_bruteforce(rho, MeasurementGrid::default())?;
            let spec = qubit_spectrum(&conditional_state(rho, 0, bf.angles));
            (bf.classical, spec[1] - spec[0], Some(bf.angles))
        }
    };
    let raw = (populations - classical) + coherences;
    if raw < -DISCORD_CLAMP_TOL {
        return Err(Error::NegativeDiscord { discord: raw });
    }
    let discord = raw.max(0.0);
    Ok(CorrelationBreakdown {
        mutual_info,
        classical: mutual_info - discord,
        discord,
        chi,
        optimal_angles,
    })
}

/// Discord of the c1 = 1, c2 = −c3 family while χ sits on the coherent
/// branch: f(|c3|), independent of time.
pub fn discord_plateau(c3: f64) -> Result<f64> {
    binary_entropy_like(c3.abs())
}

/// Discord of the same family once χ = |c3|: f(D_A D_B).
pub fn discord_decay(d_product: f64) -> Result<f64> {
    if !(d_product > 0.0 && d_product <= 1.0) {
        return Err(Error::Domain {
            what: "decoherence product",
            value: d_product,
        });
    }
    binary_entropy_like(d_product)
}
