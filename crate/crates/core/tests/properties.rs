use std::f64::consts::PI;

use cpb_core::bose_hubbard::{
    binomial_product_state, build_bose_hubbard, build_two_mode_restricted, coherent_vector, default_cutoff,
    oscillator_matrix, overlap, HoppingForm,
};
use cpb_core::linalg::CMatrix;
use cpb_core::meanfield::{
    integrate_gp, integrate_pendulum, manybody_state, product_entanglement, wrap_angle, CondensateAmplitudes,
    ControlPulse, CoupledCpbParams, GpCoefficients, PhasePoint,
};
use cpb_core::quantum_phase::{build_phase_operator, Convention, PhaseModelParams};
use cpb_core::stability::{
    dissipator, fidelity_decay_rate, gibbs_number_stats, lifetime_ratio, DensityMatrix, LindbladParams,
};
use cpb_core::witness::{classical_no_go_property, commuting_pair, random_unitary, witness_value, ObservablePair};
use cpb_core::{eigensolve, Basis, Complex64, CpbParams, StateVector};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(seed: u64, support: usize, cutoff: usize) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps = vec![Complex64::new(0.0, 0.0); cutoff + 1];
    for z in amps.iter_mut().take(support) {
        *z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    StateVector::new(amps, Basis::Fock { cutoff })
        .unwrap()
        .normalized()
        .unwrap()
}

// Fixed seed so every run samples the same cases.
fn seeded(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x00c0_ffee),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn lowest(h: &cpb_core::HamiltonianMatrix, count: usize) -> Vec<f64> {
    eigensolve(h, count).unwrap().values
}

proptest! {
    #![proptest_config(seeded(64))]

    #[test]
    fn built_matrices_are_symmetric(n in 2u64..40, frac in 0.05f64..0.95, e_j in 0.0f64..20.0) {
        let n_bar = frac * n as f64;
        let p = CpbParams::from_josephson(1.0, e_j, n, n_bar).unwrap();
        let hs = [
            build_bose_hubbard(&p).unwrap(),
            build_two_mode_restricted(&p, 0.0, 4.0 * n_bar, HoppingForm::Exact).unwrap(),
            build_two_mode_restricted(&p, 0.0, 4.0 * n_bar, HoppingForm::PaperLiteral).unwrap(),
        ];
        for h in &hs {
            let d = h.dim();
            let m = h.to_dense();
            for i in 0..d {
                for j in 0..d {
                    prop_assert_eq!(m[i * d + j], m[j * d + i]);
                    prop_assert_eq!(h.get(i, j), m[i * d + j]);
                }
            }
        }
    }

    #[test]
    fn reflection_symmetry(n in 2u64..60, frac in 0.05f64..0.95, k in 0.0f64..3.0) {
        let n_bar = frac * n as f64;
        let nf = n as f64;
        let a = CpbParams::from_tunneling(1.3, k, n, n_bar).unwrap();
        let b = CpbParams::from_tunneling(1.3, k, n, nf - n_bar).unwrap();
        let count = (n as usize + 1).min(8);
        let ha = build_two_mode_restricted(&a, 0.0, 4.0 * 1.3 * n_bar, HoppingForm::Exact).unwrap();
        let hb = build_two_mode_restricted(&b, 0.0, 4.0 * 1.3 * (nf - n_bar), HoppingForm::Exact).unwrap();
        let scale = ha.norm();
        for (x, y) in lowest(&ha, count).iter().zip(lowest(&hb, count)) {
            prop_assert!((x - y).abs() <= 1e-10 * scale.max(1.0));
        }
        let (ra, rb) = (build_bose_hubbard(&a).unwrap(), build_bose_hubbard(&b).unwrap());
        for (x, y) in lowest(&ra, count).iter().zip(lowest(&rb, count)) {
            prop_assert!((x - y).abs() <= 1e-10 * ra.norm().max(1.0));
        }
    }

    #[test]
    fn phase_spectrum_is_periodic_and_even(a in -2.0f64..2.0, e_j in 0.0f64..30.0) {
        let p = PhaseModelParams::new(1.0, e_j, 0.0, 40).unwrap();
        let levels_at = |offset: f64| lowest(&build_phase_operator(&p.with_offset(offset).unwrap(), Convention::HoppingMatch).unwrap(), 5);
        let base = levels_at(a);
        for other in [levels_at(a + 1.0), levels_at(-a), levels_at(1.0 - a)] {
            for (x, y) in base.iter().zip(&other) {
                prop_assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
            }
        }
    }

    #[test]
    fn overlaps_are_bounded(s1 in any::<u64>(), s2 in any::<u64>(), support in 1usize..20) {
        let a = random_state(s1, support, 25);
        let b = random_state(s2, 20, 25);
        prop_assert!(overlap(&a, &b).unwrap().norm() <= 1.0 + 1e-12);
        prop_assert!((overlap(&a, &a).unwrap().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_states_are_normalised(n in 2u64..5000, frac in 0.01f64..0.99, theta in -PI..PI) {
        let v = binomial_product_state(n, frac * n as f64, theta).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-10);
        let m = v.number_moments();
        prop_assert!((m.mean - frac * n as f64).abs() < 1e-8 * n as f64);
    }

    #[test]
    fn coherent_moments(n1 in 0.1f64..2000.0, theta in -PI..PI) {
        let v = coherent_vector(n1, theta, default_cutoff(n1).max(40)).unwrap();
        let m = v.number_moments();
        prop_assert!((m.variance - n1).abs() <= 1e-6 * n1);
        let alpha = v.annihilation_expectation();
        prop_assert!((alpha.norm() - n1.sqrt()).abs() < 1e-8 * n1.sqrt().max(1.0));
    }

    #[test]
    fn dissipator_preserves_trace_and_hermiticity(seed in any::<u64>(), gamma in 0.0f64..3.0, delta in 0.0f64..3.0) {
        let phi = random_state(seed, 12, 20);
        let rho = DensityMatrix::pure(&phi).unwrap();
        let d = dissipator(&rho, &LindbladParams::new(gamma, delta).unwrap());
        prop_assert!(d.derivative.trace().norm() < 1e-12);
        prop_assert!(d.derivative.hermiticity_error() < 1e-12);
        prop_assert!(d.leakage < 1e-10);
    }

    #[test]
    fn decay_rate_bounded_below_by_gain(seed in any::<u64>(), gamma in 0.0f64..3.0, delta in 0.0f64..3.0) {
        let l = LindbladParams::new(gamma, delta).unwrap();
        let phi = random_state(seed, 31, 30);
        prop_assert!(fidelity_decay_rate(&phi, &l) >= delta - 1e-10);
        prop_assert!(lifetime_ratio(seed as f64 % 1e6, &l).unwrap() >= 1.0);
    }

    #[test]
    fn witness_is_basis_invariant(seed in any::<u64>(), d in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut herm = |scale: f64| {
            let mut m = CMatrix::zeros(d);
            for i in 0..d {
                for j in 0..=i {
                    let z = Complex64::new(rng.random_range(-scale..scale), if i == j { 0.0 } else { rng.random_range(-scale..scale) });
                    m[(i, j)] = z;
                    m[(j, i)] = z.conj();
                }
            }
            m
        };
        let pair = ObservablePair::new(herm(1.0), herm(1.0)).unwrap();
        let phi: Vec<Complex64> = (0..d).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let u = random_unitary(&mut rng, d);
        let rotated = pair.conjugated(&u).unwrap();
        let scale = pair.witness_operator().max_abs().max(1.0);
        let before = witness_value(&pair, &phi).unwrap();
        let after = witness_value(&rotated, &u.apply(&phi)).unwrap();
        prop_assert!((before - after).abs() < 1e-12 * scale);
    }

    #[test]
    fn commuting_pairs_never_violate(seed in any::<u64>(), d in 2usize..=6, rotate in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = commuting_pair(&mut rng, d, rotate).unwrap();
        prop_assert!(pair.witness_operator().min_eigenvalue().unwrap() >= -1e-10);
    }

    #[test]
    fn mean_field_states_are_unentangled(t1 in -PI..PI, x1 in -900.0f64..900.0, t2 in -PI..PI, x2 in -400.0f64..400.0) {
        let a = CpbParams::from_josephson(1.0, 50.0, 20_000, 10_000.0).unwrap();
        let b = CpbParams::from_josephson(0.7, 20.0, 4_000, 1_500.0).unwrap();
        let sa = manybody_state(PhasePoint::new(t1, x1), &a).unwrap();
        let sb = manybody_state(PhasePoint::new(t2, x2), &b).unwrap();
        prop_assert!(product_entanglement(&sa, &sb).unwrap().abs() < 1e-12);
    }

    #[test]
    fn wrapped_angles_stay_in_range(theta in -1e4f64..1e4) {
        let w = wrap_angle(theta);
        prop_assert!((-PI..PI).contains(&w));
        let turns = (theta - w) / (2.0 * PI);
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }

    #[test]
    fn coupled_stationary_equations_hold(u in 100.0f64..3000.0, v in 100.0f64..3000.0, g in -1.5f64..1.5) {
        let p = CoupledCpbParams::from_potentials((1.0, 0.8), (0.01, 0.02), (4000, 4000), (u, v), g);
        prop_assume!(p.is_ok());
        let (r1, r2) = p.unwrap().stationary_residuals();
        prop_assert!(r1.abs() <= 1e-12 * u.max(v) && r2.abs() <= 1e-12 * u.max(v));
    }

    #[test]
    fn parameter_relations(e_c in 0.1f64..5.0, e_j in 0.0f64..100.0, n in 2u64..100_000, frac in 0.01f64..0.99) {
        let n_bar = frac * n as f64;
        let p = CpbParams::from_josephson(e_c, e_j, n, n_bar).unwrap();
        prop_assert!((p.interaction() - 4.0 * e_c).abs() <= 1e-12 * p.interaction());
        prop_assert!((p.potential() / p.interaction() - n_bar).abs() <= 1e-12 * n_bar);
        let back = p.tunneling() * (n_bar * (n as f64 - n_bar)).sqrt();
        prop_assert!((back - e_j).abs() <= 1e-12 * e_j.max(1.0));
    }
}

proptest! {
    #![proptest_config(seeded(16))]

    #[test]
    fn pendulum_conserves_energy(theta in -2.5f64..2.5, xi in -5.0f64..5.0, u in -2.0f64..2.0) {
        let p = CpbParams::from_josephson(1.0, 50.0, 2000, 1000.0).unwrap();
        let traj = integrate_pendulum(PhasePoint::new(theta, xi), &p, &ControlPulse::Constant { amplitude: u }, 30.0, 1e-3).unwrap();
        // Relative to E_J: E(0) itself can be close to zero.
        let e0 = traj.energy[0];
        let drift = traj.energy.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max) / p.e_j();
        prop_assert!(drift < 1e-8, "{}", drift);
    }

    #[test]
    fn gp_conserves_norm(theta in -1.0f64..1.0, xi in -5.0f64..5.0, u in -1.0f64..1.0) {
        let p = CpbParams::from_josephson(1.0, 50.0, 2000, 1000.0).unwrap();
        let phi0 = CondensateAmplitudes::from_point(PhasePoint::new(theta, xi), 1000.0, 2000.0).unwrap();
        let traj = integrate_gp(phi0, &GpCoefficients::matched(&p), &ControlPulse::Constant { amplitude: u }, 10.0, 5e-5, 1000).unwrap();
        prop_assert!(traj.norm_drift() < 1e-9);
    }

    #[test]
    fn oscillator_is_tridiagonal_and_symmetric(n_bar in 5.0f64..500.0, e_j in 0.0f64..60.0) {
        let p = CpbParams::from_josephson(1.0, e_j, 100_000, n_bar).unwrap();
        let h = oscillator_matrix(&p, default_cutoff(n_bar)).unwrap();
        prop_assert_eq!(h.corner(), 0.0);
        prop_assert!(h.off_diagonal().iter().all(|&x| x <= 0.0));
        for i in 0..(h.dim() - 1).min(50) {
            prop_assert_eq!(h.get(i, i + 1), h.get(i + 1, i));
        }
    }
}

#[test]
fn decay_rate_minimum_over_thousand_states() {
    let l = LindbladParams::new(0.9, 0.4).unwrap();
    let mut worst = f64::INFINITY;
    for seed in 0..1000 {
        let phi = random_state(seed, 31, 30);
        worst = worst.min(fidelity_decay_rate(&phi, &l) - l.delta());
    }
    assert!(worst >= -1e-10);
    let coherent = coherent_vector(2.5, 1.1, 30).unwrap();
    assert!((fidelity_decay_rate(&coherent, &l) - l.delta()).abs() < 1e-8);
}

#[test]
fn no_go_report_is_reproducible() {
    let a = classical_no_go_property(500, 2..=6, 42, true).unwrap();
    let b = classical_no_go_property(500, 2..=6, 42, true).unwrap();
    assert_eq!(a, b);
    assert!(a.passed());
}

#[test]
fn gibbs_fluctuations_small_below_threshold() {
    for n_bar in [10.0, 100.0, 1000.0] {
        for kt in [0.05, 0.1, 0.2, 0.3, 0.345] {
            let s = gibbs_number_stats(1.0, n_bar, kt, n_bar as usize + 60).unwrap();
            assert!(s.variance < 0.1, "n̄ {n_bar}, kT {kt}: {}", s.variance);
        }
    }
}
