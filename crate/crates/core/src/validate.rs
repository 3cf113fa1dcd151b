//! Independent reference computations used to check the production paths.
//!
//! None of these share code with the quantities they check: dynamics are
//! redone on the full Hilbert space with a Taylor matrix exponential, the
//! concurrence is taken from an explicit matrix square root, and `f(t)` is
//! integrated directly from sampled spectra.

use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix4, Schur};
use num_complex::Complex64;

use crate::dynamics::{SpectatorModel, SpectatorRealization, TwoEnvModel, TwoEnvRealization};
use crate::error::{Error, Result};
use crate::qstate::{concurrence, purity, random_environment_state, spin_flip, werner_state, PureState, TwoQubitDensityMatrix};
use crate::rmt::{eigenvalues, sample_environment_hamiltonian, RngStream, HEISENBERG_TIME};
use crate::theory::f_lr;

/// `exp(-i H t)` by scaling and squaring a truncated Taylor series.
pub fn expm_minus_i(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let n = h.nrows();
    let a = h.map(|z| z * Complex64::new(0.0, -t));
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm1 * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a * Complex64::new(scale, 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=24 {
        term = &term * &a * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

fn eye(n: usize) -> DMatrix<Complex64> {
    DMatrix::identity(n, n)
}

/// Pair state from a dense evolution on `env ⊗ q1 ⊗ q2` with an idle `q2`.
pub fn dense_spectator_rho(
    model: &SpectatorModel,
    chi: &PureState,
    alpha: f64,
    t: f64,
) -> Result<TwoQubitDensityMatrix> {
    let n = model.env_dim();
    let h_pair = kron(model.h_env().matrix(), &eye(2)) + model.coupling().matrix() * Complex64::new(model.lambda(), 0.0);
    let h = kron(&h_pair, &eye(2));
    let (s, c) = alpha.sin_cos();
    let coef = [c, s];
    let psi0 = DVector::from_fn(4 * n, |idx, _| {
        let (i, j, k) = (idx / 4, (idx / 2) % 2, idx % 2);
        if j == k {
            chi.amplitudes()[i] * coef[j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let psi = expm_minus_i(&h, t) * psi0;
    let mut rho = Matrix4::zeros();
    for i in 0..n {
        for a in 0..4 {
            for b in 0..4 {
                rho[(a, b)] += psi[4 * i + a] * psi[4 * i + b].conj();
            }
        }
    }
    TwoQubitDensityMatrix::new(rho)
}

/// Pair state from a dense evolution on `env1 ⊗ q1 ⊗ env2 ⊗ q2`.
pub fn dense_two_env_rho(
    model: &TwoEnvModel,
    chi1: &PureState,
    chi2: &PureState,
    alpha: f64,
    t: f64,
) -> Result<TwoQubitDensityMatrix> {
    let (n1, n2) = (model.first.env_dim(), model.second.env_dim());
    let half = |m: &SpectatorModel| {
        kron(m.h_env().matrix(), &eye(2)) + m.coupling().matrix() * Complex64::new(m.lambda(), 0.0)
    };
    let h = kron(&half(&model.first), &eye(2 * n2)) + kron(&eye(2 * n1), &half(&model.second));
    let (s, c) = alpha.sin_cos();
    let coef = [c, s];
    let d2 = 2 * n2;
    let psi0 = DVector::from_fn(4 * n1 * n2, |idx, _| {
        let (left, right) = (idx / d2, idx % d2);
        let (i1, j1) = (left / 2, left % 2);
        let (i2, j2) = (right / 2, right % 2);
        if j1 == j2 {
            chi1.amplitudes()[i1] * chi2.amplitudes()[i2] * coef[j1]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let psi = expm_minus_i(&h, t) * psi0;
    let at = |i1: usize, j1: usize, i2: usize, j2: usize| psi[(2 * i1 + j1) * d2 + 2 * i2 + j2];
    let mut rho = Matrix4::zeros();
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            for a in 0..4 {
                for b in 0..4 {
                    rho[(a, b)] += at(i1, a / 2, i2, a % 2) * at(i1, b / 2, i2, b % 2).conj();
                }
            }
        }
    }
    TwoQubitDensityMatrix::new(rho)
}

/// Square root of a Hermitian positive semidefinite matrix by eigendecomposition.
pub fn sqrtm_hermitian(a: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = a.symmetric_eigen();
    let d = Matrix4::from_diagonal(&eig.eigenvalues.map(|x| Complex64::from(x.max(0.0).sqrt())));
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Principal square root of `ρ ρ̃` for full-rank `ρ`, built as
/// `√ρ · √(√ρ ρ̃ √ρ) · √ρ⁻¹`. Squaring gives `√ρ (√ρ ρ̃ √ρ) √ρ⁻¹ = ρ ρ̃`.
pub fn sqrtm_rho_rho_tilde(rho: &TwoQubitDensityMatrix) -> Option<Matrix4<Complex64>> {
    let s = sqrtm_hermitian(rho.entries());
    let s_inv = s.try_inverse()?;
    let m = s * spin_flip(rho) * s;
    let m = (m + m.adjoint()) * Complex64::from(0.5);
    Some(s * sqrtm_hermitian(&m) * s_inv)
}

/// Concurrence from the eigenvalues of `√(ρ ρ̃)` taken literally.
pub fn concurrence_via_sqrtm(rho: &TwoQubitDensityMatrix) -> Option<f64> {
    let root = sqrtm_rho_rho_tilde(rho)?;
    let (_, t) = Schur::try_new(root, 1e-15, 10_000)?.unpack();
    let mut l: Vec<f64> = (0..4).map(|i| t[(i, i)].re).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Some((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// `G G† / Tr(G G†)` with a complex Ginibre `G`.
pub fn random_wishart_density(rng: &mut RngStream) -> Result<TwoQubitDensityMatrix> {
    let g = Matrix4::from_fn(|_, _| rng.complex_normal(1.0));
    let w = g * g.adjoint();
    let tr = w.trace();
    TwoQubitDensityMatrix::new(w / tr)
}

/// `4 × (1/N) Σ_{i,i'} ∫₀ᵗ dτ ∫₀^τ dτ' cos((τ - τ')(E_i - E_i'))`, averaged
/// over the given spectra; the inner integrals are done in closed form.
pub fn spectral_f_estimate(spectra: &[Vec<f64>], t: f64) -> f64 {
    let mut total = 0.0;
    for e in spectra {
        let n = e.len() as f64;
        let mut acc = 0.0;
        for &a in e {
            for &b in e {
                let w = a - b;
                let wt = w * t;
                acc += if wt.abs() < 1e-6 {
                    // series of (1 - cos x)/w² to fourth order
                    t * t / 2.0 * (1.0 - wt * wt / 12.0)
                } else {
                    (1.0 - wt.cos()) / (w * w)
                };
            }
        }
        total += acc / n;
    }
    4.0 * total / spectra.len() as f64
}

pub fn sample_environment_spectra(n: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let mut rng = RngStream::new(seed);
    (0..count)
        .map(|_| eigenvalues(&sample_environment_hamiltonian(n, &mut rng)?))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub name: &'static str,
    pub passed: bool,
    /// Largest observed deviation.
    pub error: f64,
    pub tolerance: f64,
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} max error {:.3e} (tolerance {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.error,
            self.tolerance
        )
    }
}

fn report(name: &'static str, error: f64, tolerance: f64) -> OracleReport {
    OracleReport {
        name,
        passed: error <= tolerance,
        error,
        tolerance,
    }
}

fn max_entry_diff(a: &TwoQubitDensityMatrix, b: &TwoQubitDensityMatrix) -> f64 {
    (a.entries() - b.entries()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_times(rng: &mut RngStream, count: usize) -> Vec<f64> {
    let mut t: Vec<f64> = (0..count).map(|_| 10.0 * rng.normal().abs()).collect();
    t.sort_by(f64::total_cmp);
    t
}

/// Branch evolution against dense evolution plus partial trace.
pub fn check_spectator_dynamics(n: usize, lambda: f64, alpha: f64, seed: u64) -> Result<OracleReport> {
    let mut rng = RngStream::new(seed);
    let model = SpectatorModel::sample(n, lambda, &mut rng)?;
    let chi = random_environment_state(n, &mut rng)?;
    let times = random_times(&mut rng, 10);
    let fast = SpectatorRealization::new(model.clone())?.evolve(&chi, alpha, &times)?;
    let mut err: f64 = 0.0;
    for s in &fast {
        let dense = dense_spectator_rho(&model, &chi, alpha, s.time)?;
        err = err.max(max_entry_diff(&s.rho, &dense));
    }
    Ok(report("spectator dynamics", err, 1e-8))
}

pub fn check_two_env_dynamics(n1: usize, n2: usize, lambdas: (f64, f64), alpha: f64, seed: u64) -> Result<OracleReport> {
    let mut rng = RngStream::new(seed);
    let model = TwoEnvModel::new(
        SpectatorModel::sample(n1, lambdas.0, &mut rng)?,
        SpectatorModel::sample(n2, lambdas.1, &mut rng)?,
    );
    let chi1 = random_environment_state(n1, &mut rng)?;
    let chi2 = random_environment_state(n2, &mut rng)?;
    let times = random_times(&mut rng, 10);
    let fast = TwoEnvRealization::new(model.clone())?.evolve(&chi1, &chi2, alpha, &times)?;
    let mut err: f64 = 0.0;
    for s in &fast {
        let dense = dense_two_env_rho(&model, &chi1, &chi2, alpha, s.time)?;
        err = err.max(max_entry_diff(&s.rho, &dense));
    }
    Ok(report("two-environment dynamics", err, 1e-8))
}

pub fn check_concurrence_sqrtm(samples: usize, seed: u64) -> Result<OracleReport> {
    let mut rng = RngStream::new(seed);
    let mut err: f64 = 0.0;
    for _ in 0..samples {
        let rho = random_wishart_density(&mut rng)?;
        let literal = concurrence_via_sqrtm(&rho).ok_or_else(|| Error::Numerical {
            what: "matrix square root of ρρ̃ failed".into(),
            dim: 4,
            seed: Some(seed),
        })?;
        err = err.max((concurrence(&rho)? - literal).abs());
    }
    Ok(report("concurrence vs sqrtm", err, 1e-8))
}

/// Werner states against `C = max(0, (3p-1)/2)`, `P = (1+3p²)/4`.
pub fn check_werner_closed_form() -> Result<OracleReport> {
    let mut err: f64 = 0.0;
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        let w = werner_state(p)?;
        err = err.max((concurrence(&w)? - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs());
        err = err.max((purity(&w) - (1.0 + 3.0 * p * p) / 4.0).abs());
    }
    Ok(report("Werner closed form", err, 1e-10))
}

/// Largest relative error of the spectral estimate against `f_lr` on
/// `points` times spread over `[0.1 τ_H, 2 τ_H]`.
pub fn check_f_spectral(n: usize, spectra: usize, points: usize, seed: u64) -> Result<OracleReport> {
    let sample = sample_environment_spectra(n, spectra, seed)?;
    let mut err: f64 = 0.0;
    for k in 0..points {
        let t = HEISENBERG_TIME * (0.1 + 1.9 * k as f64 / (points - 1).max(1) as f64);
        let want = f_lr(t, HEISENBERG_TIME)?;
        err = err.max((spectral_f_estimate(&sample, t) / want - 1.0).abs());
    }
    Ok(report("f(t) spectral integral", err, 0.05))
}

#[derive(Clone, Debug)]
pub struct ValidateOptions {
    pub spectator_n: usize,
    pub two_env_n: usize,
    pub concurrence_samples: usize,
    pub spectral_n: usize,
    pub spectral_samples: usize,
    pub seed: u64,
    /// Appends a deliberately failing check.
    pub force_fail: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            spectator_n: 4,
            two_env_n: 3,
            concurrence_samples: 1000,
            spectral_n: 256,
            spectral_samples: 100,
            seed: 2024,
            force_fail: false,
        }
    }
}

pub fn run_all(opts: &ValidateOptions) -> Result<Vec<OracleReport>> {
    let s = opts.seed;
    let mut out = vec![
        check_spectator_dynamics(opts.spectator_n, 0.5, std::f64::consts::FRAC_PI_4, s)?,
        check_two_env_dynamics(opts.two_env_n, opts.two_env_n, (0.4, 0.7), 0.5, s + 1)?,
        check_concurrence_sqrtm(opts.concurrence_samples, s + 2)?,
        check_werner_closed_form()?,
        check_f_spectral(opts.spectral_n, opts.spectral_samples, 20, s + 3)?,
    ];
    if opts.force_fail {
        out.push(report("forced failure", 1.0, 0.0));
    }
    Ok(out)
}
