//! Exact evolution of the qubit pair.
//!
//! Neither Hamiltonian couples the two qubits, so starting from
//! `Σ_k c_k |χ⟩|k⟩|k⟩` each qubit value `k` of a coupled qubit defines a branch
//! `Ψ_k(t) = exp(-i H t)(χ ⊗ |k⟩)` on `env ⊗ qubit` (dimension `2N`, index
//! `i·2 + j`). The pair state is assembled from branch overlaps
//! `T_{kk'}(j, j') = Σ_i Ψ_k(i, j) Ψ_{k'}(i, j')*`, so nothing larger than a
//! `2N` vector is ever propagated.

use nalgebra::{DVector, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::qstate::{alpha_coefficients, PureState, TwoQubitDensityMatrix};
use crate::rmt::{
    sample_environment_hamiltonian, sample_gue, spectral_decompose_with_seed, HermitianOperator,
    RngStream, SpectralDecomposition,
};

/// One coupled qubit: `H = H_env ⊗ I₂ + λ V` on `env ⊗ qubit`.
#[derive(Clone, Debug)]
pub struct SpectatorModel {
    h_env: HermitianOperator,
    coupling: HermitianOperator,
    lambda: f64,
}

impl SpectatorModel {
    pub fn new(h_env: HermitianOperator, coupling: HermitianOperator, lambda: f64) -> Result<Self> {
        if coupling.dim() != 2 * h_env.dim() {
            return Err(Error::DimensionMismatch {
                expected: 2 * h_env.dim(),
                found: coupling.dim(),
            });
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(invalid(format!("coupling strength must be >= 0, got {lambda}")));
        }
        Ok(Self {
            h_env,
            coupling,
            lambda,
        })
    }

    /// Fresh environment Hamiltonian followed by a unit-variance GUE coupling,
    /// both drawn from `rng` in that order.
    pub fn sample(n: usize, lambda: f64, rng: &mut RngStream) -> Result<Self> {
        let h_env = sample_environment_hamiltonian(n, rng)?;
        let coupling = sample_gue(2 * n, 1.0, rng)?;
        Self::new(h_env, coupling, lambda)
    }

    pub fn env_dim(&self) -> usize {
        self.h_env.dim()
    }

    pub fn h_env(&self) -> &HermitianOperator {
        &self.h_env
    }

    pub fn coupling(&self) -> &HermitianOperator {
        &self.coupling
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.h_env.clone(), self.coupling.clone(), lambda)
    }
}

/// Independent environments for both qubits; either coupling may be zero.
#[derive(Clone, Debug)]
pub struct TwoEnvModel {
    pub first: SpectatorModel,
    pub second: SpectatorModel,
}

impl TwoEnvModel {
    pub fn new(first: SpectatorModel, second: SpectatorModel) -> Self {
        Self { first, second }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolvedState {
    pub time: f64,
    pub rho: TwoQubitDensityMatrix,
}

pub fn build_spectator_hamiltonian(model: &SpectatorModel) -> Result<HermitianOperator> {
    model
        .h_env
        .kron_identity(2)
        .add_scaled(&model.coupling, model.lambda)
}

/// `exp(-i H t) ψ` through the eigenbasis of `H`.
pub fn propagate(decomp: &SpectralDecomposition, psi: &PureState, t: f64) -> Result<PureState> {
    if psi.dim() != decomp.dim() {
        return Err(Error::DimensionMismatch {
            expected: decomp.dim(),
            found: psi.dim(),
        });
    }
    let coeffs = decomp.eigenvectors().ad_mul(psi.amplitudes());
    let out = evolve_coefficients(decomp, &coeffs, t);
    Ok(PureState::from_parts_unchecked(out, psi.factor_dims().to_vec()))
}

fn evolve_coefficients(
    decomp: &SpectralDecomposition,
    coeffs: &DVector<Complex64>,
    t: f64,
) -> DVector<Complex64> {
    let phased = DVector::from_iterator(
        coeffs.len(),
        decomp
            .eigenvalues()
            .iter()
            .zip(coeffs.iter())
            .map(|(&e, &c)| c * Complex64::from_polar(1.0, -e * t)),
    );
    decomp.eigenvectors() * phased
}

/// A model with its Hamiltonian diagonalized once, reusable for any number
/// of initial states and times.
#[derive(Clone, Debug)]
pub struct SpectatorRealization {
    model: SpectatorModel,
    decomposition: SpectralDecomposition,
}

/// Eigenbasis coefficients of the two branch initial states `χ ⊗ |k⟩`.
struct Branches<'a> {
    decomp: &'a SpectralDecomposition,
    coeffs: [DVector<Complex64>; 2],
}

type Overlaps = [[Matrix2<Complex64>; 2]; 2];

impl<'a> Branches<'a> {
    fn new(decomp: &'a SpectralDecomposition, chi: &PureState) -> Result<Self> {
        let n = chi.dim();
        if decomp.dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: decomp.dim() / 2,
                found: n,
            });
        }
        let coeffs = [0, 1].map(|k| {
            let start = DVector::from_fn(2 * n, |idx, _| {
                if idx % 2 == k {
                    chi.amplitudes()[idx / 2]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            decomp.eigenvectors().ad_mul(&start)
        });
        Ok(Self { decomp, coeffs })
    }

    fn overlaps(&self, t: f64) -> Overlaps {
        let psi = [0, 1].map(|k| evolve_coefficients(self.decomp, &self.coeffs[k], t));
        let n = psi[0].len() / 2;
        let mut out = [[Matrix2::zeros(); 2]; 2];
        for k in 0..2 {
            for kp in 0..2 {
                let mut m = Matrix2::zeros();
                for i in 0..n {
                    for j in 0..2 {
                        let a = psi[k][2 * i + j];
                        for jp in 0..2 {
                            m[(j, jp)] += a * psi[kp][2 * i + jp].conj();
                        }
                    }
                }
                out[k][kp] = m;
            }
        }
        out
    }
}

/// Overlaps of an untouched spectator: `T_{kk'}(j, j') = δ_{jk} δ_{j'k'}`.
fn spectator_overlaps() -> Overlaps {
    let mut out = [[Matrix2::zeros(); 2]; 2];
    for (k, row) in out.iter_mut().enumerate() {
        for (kp, m) in row.iter_mut().enumerate() {
            m[(k, kp)] = Complex64::new(1.0, 0.0);
        }
    }
    out
}

/// `ρ = Σ_{kk'} c_k c_{k'}* T¹_{kk'} ⊗ T²_{kk'}` in the `|q1 q2⟩` basis.
fn assemble(c: [f64; 2], first: &Overlaps, second: &Overlaps) -> Result<TwoQubitDensityMatrix> {
    let mut rho = Matrix4::zeros();
    for k in 0..2 {
        for kp in 0..2 {
            let w = c[k] * c[kp];
            if w == 0.0 {
                continue;
            }
            let (a, b) = (&first[k][kp], &second[k][kp]);
            for j1 in 0..2 {
                for j2 in 0..2 {
                    for j1p in 0..2 {
                        for j2p in 0..2 {
                            rho[(2 * j1 + j2, 2 * j1p + j2p)] +=
                                a[(j1, j1p)] * b[(j2, j2p)] * w;
                        }
                    }
                }
            }
        }
    }
    TwoQubitDensityMatrix::new(rho)
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(invalid("time list must not be empty"));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(invalid("times must be finite"));
    }
    Ok(())
}

impl SpectatorRealization {
    pub fn new(model: SpectatorModel) -> Result<Self> {
        Self::with_seed(model, None)
    }

    /// `seed` is reported with any eigensolver failure.
    pub fn with_seed(model: SpectatorModel, seed: Option<u64>) -> Result<Self> {
        let h = build_spectator_hamiltonian(&model)?;
        let decomposition = spectral_decompose_with_seed(&h, seed)?;
        Ok(Self {
            model,
            decomposition,
        })
    }

    pub fn model(&self) -> &SpectatorModel {
        &self.model
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn evolve(&self, chi: &PureState, alpha: f64, times: &[f64]) -> Result<Vec<EvolvedState>> {
        check_times(times)?;
        let c = alpha_coefficients(alpha)?;
        let branches = Branches::new(&self.decomposition, chi)?;
        let spectator = spectator_overlaps();
        times
            .iter()
            .map(|&t| {
                let rho = assemble(c, &branches.overlaps(t), &spectator)?;
                Ok(EvolvedState { time: t, rho })
            })
            .collect()
    }
}

pub fn evolve_pair_spectator(
    model: &SpectatorModel,
    chi: &PureState,
    alpha: f64,
    times: &[f64],
) -> Result<Vec<EvolvedState>> {
    SpectatorRealization::new(model.clone())?.evolve(chi, alpha, times)
}

/// Both halves of a [`TwoEnvModel`] diagonalized.
#[derive(Clone, Debug)]
pub struct TwoEnvRealization {
    first: SpectatorRealization,
    second: SpectatorRealization,
}

impl TwoEnvRealization {
    pub fn new(model: TwoEnvModel) -> Result<Self> {
        Self::with_seed(model, None)
    }

    pub fn with_seed(model: TwoEnvModel, seed: Option<u64>) -> Result<Self> {
        Ok(Self {
            first: SpectatorRealization::with_seed(model.first, seed)?,
            second: SpectatorRealization::with_seed(model.second, seed)?,
        })
    }

    pub fn evolve(
        &self,
        chi1: &PureState,
        chi2: &PureState,
        alpha: f64,
        times: &[f64],
    ) -> Result<Vec<EvolvedState>> {
        check_times(times)?;
        let c = alpha_coefficients(alpha)?;
        let a = Branches::new(&self.first.decomposition, chi1)?;
        let b = Branches::new(&self.second.decomposition, chi2)?;
        times
            .iter()
            .map(|&t| {
                let rho = assemble(c, &a.overlaps(t), &b.overlaps(t))?;
                Ok(EvolvedState { time: t, rho })
            })
            .collect()
    }
}

pub fn evolve_pair_two_env(
    model: &TwoEnvModel,
    chi1: &PureState,
    chi2: &PureState,
    alpha: f64,
    times: &[f64],
) -> Result<Vec<EvolvedState>> {
    TwoEnvRealization::new(model.clone())?.evolve(chi1, chi2, alpha, times)
}
