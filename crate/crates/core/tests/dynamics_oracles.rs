use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use bellpair::dynamics::{
    build_spectator_hamiltonian, evolve_pair_spectator, evolve_pair_two_env, propagate, SpectatorModel,
    SpectatorRealization, TwoEnvModel,
};
use bellpair::qstate::{alpha_state, concurrence, density_spectrum, purity, random_environment_state, PureState};
use bellpair::rmt::{spectral_decompose, RngStream, HEISENBERG_TIME};
use bellpair::validate::{dense_spectator_rho, dense_two_env_rho, expm_minus_i};
use nalgebra::{DMatrix, DVector, Matrix4};
use num_complex::Complex64;

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

fn eye(n: usize) -> DMatrix<Complex64> {
    DMatrix::identity(n, n)
}

fn max_diff(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

const TIMES: [f64; 10] = [0.0, 0.13, 0.9, 1.0, 2.7, 4.4, 6.3, 9.1, 15.0, 31.4];

#[test]
fn spectator_branches_match_dense_evolution() {
    for seed in 0..4 {
        let mut rng = RngStream::new(100 + seed);
        let model = SpectatorModel::sample(4, 0.5, &mut rng).unwrap();
        let chi = random_environment_state(4, &mut rng).unwrap();
        for alpha in [0.0, FRAC_PI_8, FRAC_PI_4] {
            let fast = evolve_pair_spectator(&model, &chi, alpha, &TIMES).unwrap();
            for s in &fast {
                let dense = dense_spectator_rho(&model, &chi, alpha, s.time).unwrap();
                let err = max_diff(s.rho.entries(), dense.entries());
                assert!(err <= 1e-8, "seed {seed} alpha {alpha} t {}: {err}", s.time);
            }
        }
    }
}

#[test]
fn two_environment_branches_match_dense_evolution() {
    for seed in 0..3 {
        let mut rng = RngStream::new(200 + seed);
        let model = TwoEnvModel::new(
            SpectatorModel::sample(3, 0.4, &mut rng).unwrap(),
            SpectatorModel::sample(3, 0.7, &mut rng).unwrap(),
        );
        let chi1 = random_environment_state(3, &mut rng).unwrap();
        let chi2 = random_environment_state(3, &mut rng).unwrap();
        let fast = evolve_pair_two_env(&model, &chi1, &chi2, 0.6, &TIMES).unwrap();
        for s in &fast {
            let dense = dense_two_env_rho(&model, &chi1, &chi2, 0.6, s.time).unwrap();
            assert!(max_diff(s.rho.entries(), dense.entries()) <= 1e-8);
        }
    }
}

#[test]
fn unequal_environment_sizes() {
    let mut rng = RngStream::new(7);
    let model = TwoEnvModel::new(
        SpectatorModel::sample(2, 0.3, &mut rng).unwrap(),
        SpectatorModel::sample(5, 0.2, &mut rng).unwrap(),
    );
    let chi1 = random_environment_state(2, &mut rng).unwrap();
    let chi2 = random_environment_state(5, &mut rng).unwrap();
    for s in evolve_pair_two_env(&model, &chi1, &chi2, FRAC_PI_4, &[0.5, 3.0]).unwrap() {
        let dense = dense_two_env_rho(&model, &chi1, &chi2, FRAC_PI_4, s.time).unwrap();
        assert!(max_diff(s.rho.entries(), dense.entries()) <= 1e-8);
    }
}

/// Full state on env ⊗ q1 ⊗ q2 at time t.
fn dense_state(model: &SpectatorModel, chi: &PureState, alpha: f64, t: f64) -> DVector<Complex64> {
    let h_pair = build_spectator_hamiltonian(model).unwrap().into_matrix();
    let h = kron(&h_pair, &eye(2));
    let phi = alpha_state(alpha).unwrap();
    let psi0 = DVector::from_fn(4 * chi.dim(), |idx, _| chi.amplitudes()[idx / 4] * phi.amplitudes()[idx % 4]);
    expm_minus_i(&h, t) * psi0
}

fn trace_env(psi: &DVector<Complex64>) -> Matrix4<Complex64> {
    let mut rho = Matrix4::zeros();
    for i in 0..psi.len() / 4 {
        for a in 0..4 {
            for b in 0..4 {
                rho[(a, b)] += psi[4 * i + a] * psi[4 * i + b].conj();
            }
        }
    }
    rho
}

#[test]
fn environment_local_rotation_leaves_rho_unchanged() {
    let n = 5;
    let mut rng = RngStream::new(31);
    let model = SpectatorModel::sample(n, 0.3, &mut rng).unwrap();
    let chi = random_environment_state(n, &mut rng).unwrap();
    let h0 = kron(model.h_env().matrix(), &eye(4));
    for t in [0.4, 2.0, 7.5] {
        let psi = dense_state(&model, &chi, FRAC_PI_4, t);
        let u0_dag = expm_minus_i(&h0, -t);
        let rotated = trace_env(&(u0_dag * &psi));
        let fast = &evolve_pair_spectator(&model, &chi, FRAC_PI_4, &[t]).unwrap()[0];
        assert!(max_diff(&rotated, &trace_env(&psi)) <= 1e-10);
        assert!(max_diff(&rotated, fast.rho.entries()) <= 1e-10);
    }
}

#[test]
fn relabelling_the_spectator_swaps_the_qubits() {
    // couple the environment to q2 instead, evolve densely, compare with the
    // qubit-swapped branch result
    let n = 4;
    let mut rng = RngStream::new(41);
    let model = SpectatorModel::sample(n, 0.6, &mut rng).unwrap();
    let chi = random_environment_state(n, &mut rng).unwrap();
    let alpha = 0.5;
    let mut swap = DMatrix::zeros(4, 4);
    for a in 0..4 {
        swap[((a % 2) * 2 + a / 2, a)] = Complex64::from(1.0);
    }
    let h_pair = build_spectator_hamiltonian(&model).unwrap().into_matrix();
    // env ⊗ q2 coupling, laid out as env ⊗ q1 ⊗ q2
    let p = kron(&eye(n), &swap);
    let h = &p * kron(&h_pair, &eye(2)) * p.adjoint();
    let phi = alpha_state(alpha).unwrap();
    let psi0 = DVector::from_fn(4 * n, |idx, _| chi.amplitudes()[idx / 4] * phi.amplitudes()[idx % 4]);
    for t in [0.3, 1.7, 5.0] {
        let swapped = trace_env(&(expm_minus_i(&h, t) * &psi0));
        let fast = &evolve_pair_spectator(&model, &chi, alpha, &[t]).unwrap()[0];
        let fast_swapped = fast.rho.swap_qubits();
        assert!(max_diff(&swapped, fast_swapped.entries()) <= 1e-10);
        assert!((purity(&fast.rho) - purity(&fast_swapped)).abs() <= 1e-10);
        assert!((concurrence(&fast.rho).unwrap() - concurrence(&fast_swapped).unwrap()).abs() <= 1e-10);
    }
}

#[test]
fn propagation_preserves_norm_and_matches_exponential() {
    let mut rng = RngStream::new(51);
    let model = SpectatorModel::sample(8, 0.4, &mut rng).unwrap();
    let h = build_spectator_hamiltonian(&model).unwrap();
    let decomp = spectral_decompose(&h).unwrap();
    let psi = PureState::normalized(DVector::from_fn(16, |_, _| rng.complex_normal(1.0)), vec![8, 2]).unwrap();
    assert!((propagate(&decomp, &psi, 0.0).unwrap().amplitudes() - psi.amplitudes()).norm() <= 1e-12);
    for t in [0.7, 3.0, 50.0] {
        let out = propagate(&decomp, &psi, t).unwrap();
        assert!((out.amplitudes().norm() - 1.0).abs() <= 1e-10);
        let want = expm_minus_i(h.matrix(), t) * psi.amplitudes();
        assert!((out.amplitudes() - want).norm() <= 1e-8, "t = {t}");
    }
}

#[test]
fn evolved_states_are_physical() {
    let mut rng = RngStream::new(61);
    let model = SpectatorModel::sample(32, 0.2, &mut rng).unwrap();
    let chi = random_environment_state(32, &mut rng).unwrap();
    let times: Vec<f64> = (0..40).map(|k| 0.5 * k as f64).collect();
    for s in evolve_pair_spectator(&model, &chi, FRAC_PI_4, &times).unwrap() {
        let m = s.rho.entries();
        assert!((m - m.adjoint()).norm() <= 1e-10);
        assert!((m.trace().re - 1.0).abs() <= 1e-10);
        assert!(density_spectrum(&s.rho)[3] >= -1e-10);
    }
}

#[test]
fn decohered_spectrum_is_not_werner_like() {
    // a single realization at P ≈ 0.51 has four distinct eigenvalues
    let n = 128;
    let mut rng = RngStream::new(71);
    let real = SpectatorRealization::new(SpectatorModel::sample(n, 0.1, &mut rng).unwrap()).unwrap();
    let chi = random_environment_state(n, &mut rng).unwrap();
    let times: Vec<f64> = (0..200).map(|k| HEISENBERG_TIME * k as f64 / 100.0).collect();
    let states = real.evolve(&chi, FRAC_PI_4, &times).unwrap();
    let s = states
        .iter()
        .min_by(|a, b| (purity(&a.rho) - 0.51).abs().total_cmp(&(purity(&b.rho) - 0.51).abs()))
        .unwrap();
    assert!((purity(&s.rho) - 0.51).abs() < 0.02);
    let spec = density_spectrum(&s.rho);
    let min_gap = spec.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    assert!(min_gap > 0.005, "spectrum {spec:?}");
}
