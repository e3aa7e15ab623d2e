//! Cross-checks of the closed forms against independent dense-matrix and
//! numerical oracles.

use nalgebra::Matrix4 as NMatrix4;
use num_complex::Complex64;
use proptest::prelude::*;
use qdfe::bath::{self, gamma_closed, gamma_quadrature};
use qdfe::correlations::{self, ClassicalMethod, MeasurementAngles, MeasurementGrid};
use qdfe::evolution::{self, element_decay, free_phase, Level};
use qdfe::model::{Matrix4, QubitPair, Reservoir, SystemConfig, XDensityMatrix, XStateParams};
use qdfe::{dfe, Method, Regime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense_eigenvalues(m: &Matrix4) -> Vec<f64> {
    let n = NMatrix4::from_fn(|r, c| m[r][c]);
    let mut ev: Vec<f64> = n.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn sorted(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(f64::total_cmp);
    v
}

fn physical_state() -> impl Strategy<Value = XStateParams> {
    (-1.0f64..=1.0, -1.0f64..=1.0, -1.0f64..=1.0)
        .prop_filter_map("outside tetrahedron", |(a, b, c)| XStateParams::new(a, b, c).ok())
}

fn beta() -> impl Strategy<Value = f64> {
    prop_oneof![Just(f64::INFINITY), 0.2f64..50.0]
}

fn system() -> impl Strategy<Value = SystemConfig> {
    (
        physical_state(),
        (0.05f64..1.0, 0.5f64..2.0, beta()),
        (0.05f64..1.0, 0.5f64..2.0, beta()),
        (0.0f64..10.0, 0.0f64..10.0),
    )
        .prop_map(|(s, a, b, q)| {
            SystemConfig::new(
                QubitPair::new(q.0, q.1).unwrap(),
                Reservoir::new(a.0, a.1, a.2).unwrap(),
                Reservoir::new(b.0, b.1, b.2).unwrap(),
                s,
            )
            .unwrap()
        })
}

fn random_state(rng: &mut ChaCha8Rng) -> XStateParams {
    loop {
        let c: [f64; 3] = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
        if let Ok(p) = XStateParams::new(c[0], c[1], c[2]) {
            return p;
        }
    }
}

fn partial_traces(m: &Matrix4) -> ([[Complex64; 2]; 2], [[Complex64; 2]; 2]) {
    let zero = Complex64::new(0.0, 0.0);
    let mut a = [[zero; 2]; 2];
    let mut b = [[zero; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                a[i][j] += m[2 * i + k][2 * j + k];
                b[i][j] += m[2 * k + i][2 * k + j];
            }
        }
    }
    (a, b)
}

const LEVELS: [Level; 2] = [Level::Ground, Level::Excited];

fn labels(index: usize) -> (Level, Level) {
    (LEVELS[index / 2], LEVELS[index % 2])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn initial_matrix_is_a_density_matrix(p in physical_state()) {
        let m = p.initial_matrix();
        let trace: Complex64 = (0..4).map(|k| m[k][k]).sum();
        prop_assert!((trace - 1.0).norm() < 1e-15);
        for r in 0..4 {
            for c in 0..4 {
                prop_assert!((m[r][c] - m[c][r].conj()).norm() < 1e-15);
            }
        }
        let dense = dense_eigenvalues(&m);
        let closed = sorted(p.eigenvalues());
        for (a, b) in dense.iter().zip(closed) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn evolved_state_invariants(cfg in system(), t in 0.0f64..25.0) {
        let rho = evolution::evolve(&cfg, t).unwrap();
        prop_assert!(rho.alpha.norm() <= 1.0 + rho.c3 + 1e-12);
        prop_assert!(rho.gamma.norm() <= 1.0 - rho.c3 + 1e-12);
        let m = rho.to_matrix();
        let dense = dense_eigenvalues(&m);
        let closed = sorted(evolution::eigenvalues(&rho).unwrap());
        for (a, b) in dense.iter().zip(closed) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        prop_assert!((closed.iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let (ra, rb) = partial_traces(&m);
        for r in [ra, rb] {
            prop_assert!((r[0][0].re - 0.5).abs() < 1e-15 && (r[1][1].re - 0.5).abs() < 1e-15);
            prop_assert!(r[0][1].norm() < 1e-15);
        }
    }

    #[test]
    fn evolve_agrees_with_elementwise_decay(cfg in system(), t in 0.0f64..25.0) {
        let rho0 = cfg.state.initial_matrix();
        let rho = evolution::evolve(&cfg, t).unwrap().to_matrix();
        for r in 0..4 {
            for c in 0..4 {
                let (row, col) = (labels(r), labels(c));
                let want = element_decay(rho0[r][c], row, col, &cfg, t).unwrap() * free_phase(row, col, &cfg, t);
                prop_assert!((rho[r][c] - want).norm() < 1e-12, "({}, {}) {} vs {}", r, c, rho[r][c], want);
            }
        }
        prop_assert_eq!(Level::pair_index(Level::Excited, Level::Ground), 2);
    }

    #[test]
    fn coherence_magnitudes_ignore_splittings(cfg in system(), t in 0.0f64..25.0, wa in 0.0f64..20.0, wb in 0.0f64..20.0) {
        let mut shifted = cfg;
        shifted.qubits = QubitPair::new(wa, wb).unwrap();
        let a = evolution::evolve(&cfg, t).unwrap();
        let b = evolution::evolve(&shifted, t).unwrap();
        prop_assert!((a.alpha.norm() - b.alpha.norm()).abs() < 1e-15);
        prop_assert!((a.gamma.norm() - b.gamma.norm()).abs() < 1e-15);
    }

    #[test]
    fn conditional_state_matches_projective_measurement(
        cfg in system(), t in 0.0f64..10.0,
        theta in 0.0f64..std::f64::consts::FRAC_PI_2, phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let rho = evolution::evolve(&cfg, t).unwrap();
        let m = rho.to_matrix();
        let (s, c) = theta.sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        // Projector vectors on B in the {g, e} basis.
        let vectors = [
            [Complex64::new(c, 0.0), e * s],
            [e.conj() * s, Complex64::new(-c, 0.0)],
        ];
        for (k, v) in vectors.iter().enumerate() {
            let mut cond = [[Complex64::new(0.0, 0.0); 2]; 2];
            for a in 0..2 {
                for a2 in 0..2 {
                    for b in 0..2 {
                        for b2 in 0..2 {
                            cond[a][a2] += v[b].conj() * m[2 * a + b][2 * a2 + b2] * v[b2];
                        }
                    }
                }
            }
            let p = (cond[0][0] + cond[1][1]).re;
            prop_assert!((p - 0.5).abs() < 1e-12);
            // Reorder to {e, g} and normalise.
            let oracle = [[cond[1][1] / p, cond[1][0] / p], [cond[0][1] / p, cond[0][0] / p]];
            let got = correlations::conditional_state(&rho, k as u8, MeasurementAngles::new(theta, phi));
            for r in 0..2 {
                for col in 0..2 {
                    prop_assert!((got[r][col] - oracle[r][col]).norm() < 1e-12,
                        "k={} ({},{}) {} vs {}", k, r, col, got[r][col], oracle[r][col]);
                }
            }
        }
    }

    #[test]
    fn decoherence_is_monotone(eta in 0.05f64..1.0, b in beta(), t in 0.0f64..20.0, dt in 1e-3f64..5.0) {
        let r = Reservoir::new(eta, 1.0, b).unwrap();
        let early = gamma_closed(&r, t).unwrap();
        let late = gamma_closed(&r, t + dt).unwrap();
        prop_assert!(late.gamma > early.gamma);
        prop_assert!(late.d < early.d);
        prop_assert!((early.d - (-early.gamma).exp()).abs() == 0.0);
        if b.is_finite() {
            let colder = gamma_closed(&Reservoir::new(eta, 1.0, b * 1.5).unwrap(), t + dt).unwrap();
            prop_assert!(colder.gamma <= late.gamma);
        }
    }

    #[test]
    fn correlation_identities(cfg in system(), t in 0.0f64..25.0) {
        let rho = evolution::evolve(&cfg, t).unwrap();
        let c = correlations::discord(&rho, ClassicalMethod::Closed).unwrap();
        prop_assert!((c.mutual_info - c.classical - c.discord).abs() < 1e-10);
        prop_assert!(c.discord >= 0.0);
        prop_assert!(c.classical >= 0.0 && c.classical <= c.mutual_info + 1e-10);
        for v in [c.mutual_info, c.classical, c.discord] {
            prop_assert!((0.0..=2.0).contains(&v));
        }
    }

    #[test]
    fn regime_formulas_hold(c3 in -0.95f64..0.95, eta in 0.05f64..1.0, b in beta(), t in 0.0f64..40.0) {
        prop_assume!(c3.abs() > 1e-3);
        let cfg = SystemConfig::equal_baths(
            Reservoir::new(eta, 1.0, b).unwrap(),
            XStateParams::plateau_family(c3).unwrap(),
        ).unwrap();
        let dd = bath::decoherence_product(&cfg.bath_a, &cfg.bath_b, t).unwrap();
        let c = correlations::discord(&evolution::evolve(&cfg, t).unwrap(), ClassicalMethod::Closed).unwrap();
        let plateau = correlations::discord_plateau(c3).unwrap();
        if dd > c3.abs() {
            prop_assert!((c.discord - plateau).abs() <= 1e-12);
        } else if dd < c3.abs() {
            prop_assert!((c.classical - plateau).abs() <= 1e-12);
            prop_assert!((c.discord - correlations::discord_decay(dd).unwrap()).abs() <= 1e-12);
        }
    }
}

#[test]
fn quadrature_matches_closed_form_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..50 {
        let eta = rng.gen_range(0.05..=1.0);
        let beta = if rng.gen_bool(0.2) {
            f64::INFINITY
        } else {
            rng.gen_range(1.0..=50.0)
        };
        let t = rng.gen_range(0.0..=20.0);
        let r = Reservoir::new(eta, 1.0, beta).unwrap();
        let c = gamma_closed(&r, t).unwrap();
        let q = gamma_quadrature(&r, t).unwrap();
        let rel = (q.gamma - c.gamma).abs() / c.gamma.max(1e-3);
        assert!(rel <= 1e-6, "η={eta} β={beta} t={t}: {} vs {}", q.gamma, c.gamma);
        assert!(q.est_error <= 1e-9);
    }
}

#[test]
fn bruteforce_matches_closed_form_and_is_frame_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..20 {
        let state = random_state(&mut rng);
        let bath = Reservoir::new(rng.gen_range(0.05..1.0), 1.0, rng.gen_range(0.5..20.0)).unwrap();
        let t = rng.gen_range(0.0..10.0);
        let mut values = Vec::new();
        for omega in [0.0, 1.0, 10.0] {
            let cfg = SystemConfig::new(QubitPair::new(omega, 0.5 * omega).unwrap(), bath, bath, state).unwrap();
            let rho = evolution::evolve(&cfg, t).unwrap();
            let closed = correlations::discord(&rho, ClassicalMethod::Closed).unwrap();
            let bf = correlations::classical_bruteforce(&rho, MeasurementGrid::default()).unwrap();
            assert!((bf.classical - closed.classical).abs() <= 1e-6);
            assert!(bf.classical <= closed.classical + 1e-9);
            values.push((closed.discord, closed.classical, bf.classical));
        }
        for v in &values[1..] {
            assert!((v.0 - values[0].0).abs() <= 1e-8);
            assert!((v.1 - values[0].1).abs() <= 1e-8);
            assert!((v.2 - values[0].2).abs() <= 1e-8);
        }
    }
}

#[test]
fn discord_has_a_kink_at_the_critical_time() {
    let cfg = SystemConfig::equal_baths(
        Reservoir::new(0.2, 1.0, 5.0).unwrap(),
        XStateParams::new(1.0, 0.4, -0.4).unwrap(),
    )
    .unwrap();
    let tp = dfe::critical_time_solve(&cfg).unwrap().unwrap().t_p;
    let d = |t: f64| dfe::discord_point(&cfg, t, Method::Closed).unwrap().discord;
    let h = 1e-4;
    let left = (d(tp) - d(tp - h)) / h;
    let right = (d(tp + h) - d(tp)) / h;
    assert!((d(tp - 1e-12) - d(tp + 1e-12)).abs() <= 1e-10);
    assert!(left.abs() < 1e-9);
    assert!((left - right).abs() > 1e-3, "left {left} right {right}");
}

#[test]
fn non_plateau_states_have_no_dfe_flag() {
    let cfg = SystemConfig::equal_baths(
        Reservoir::new(0.2, 1.0, 5.0).unwrap(),
        XStateParams::new(0.5, -0.5, 0.0).unwrap(),
    )
    .unwrap();
    let pts = dfe::scan_trajectory(&cfg, 30.0, 100).unwrap();
    assert!(pts.iter().all(|p| p.regime == Regime::Decay));
}

#[test]
fn element_decay_leaves_populations_alone() {
    let cfg = SystemConfig::equal_baths(
        Reservoir::new(0.9, 1.0, 0.5).unwrap(),
        XStateParams::new(0.3, 0.2, 0.1).unwrap(),
    )
    .unwrap();
    let x = Complex64::new(0.25, 0.0);
    for idx in 0..4 {
        let l = labels(idx);
        assert_eq!(element_decay(x, l, l, &cfg, 50.0).unwrap(), x);
    }
}

#[test]
fn maximally_mixed_has_no_correlations() {
    let rho = XDensityMatrix {
        c3: 0.0,
        alpha: Complex64::new(0.0, 0.0),
        gamma: Complex64::new(0.0, 0.0),
        t: 1.0,
    };
    let bf = correlations::discord(&rho, ClassicalMethod::BruteForce).unwrap();
    assert_eq!((bf.mutual_info, bf.classical, bf.discord), (0.0, 0.0, 0.0));
}
