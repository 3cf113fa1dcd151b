//! Initial states and two-qubit measures.
//!
//! Two-qubit basis ordering is `|q1 q2⟩ ∈ {|00⟩, |01⟩, |10⟩, |11⟩}` with `q1`
//! the coupled qubit and `q2` the spectator.

use nalgebra::{DVector, Matrix4, Schur};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::rmt::RngStream;

const NORM_TOL: f64 = 1e-12;
/// Largest Hermiticity/trace correction silently absorbed by
/// [`TwoQubitDensityMatrix::new`].
pub const DENSITY_CORRECTION_TOL: f64 = 1e-8;
const PSD_TOL: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Normalized vector on a tensor-product space.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
    factor_dims: Vec<usize>,
}

impl PureState {
    /// Checks the norm to within `1e-12` and the factor dimensions.
    pub fn new(amplitudes: DVector<Complex64>, factor_dims: Vec<usize>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 {
            return Err(invalid("state dimension must be at least 1"));
        }
        if factor_dims.iter().product::<usize>() != dim || factor_dims.contains(&0) {
            return Err(invalid(format!(
                "factor dimensions {factor_dims:?} do not multiply to {dim}"
            )));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(invalid(format!("state is not normalized: |ψ|² = {norm_sqr}")));
        }
        Ok(Self {
            amplitudes,
            factor_dims,
        })
    }

    /// Normalizes `amplitudes` first.
    pub fn normalized(amplitudes: DVector<Complex64>, factor_dims: Vec<usize>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(invalid("cannot normalize a zero or non-finite vector"));
        }
        Self::new(amplitudes.unscale(norm), factor_dims)
    }

    /// Skips the norm check; used for unitary images of valid states.
    pub(crate) fn from_parts_unchecked(amplitudes: DVector<Complex64>, factor_dims: Vec<usize>) -> Self {
        Self {
            amplitudes,
            factor_dims,
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// `self ⊗ other`, with `other` as the fast index.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let (n, m) = (self.dim(), other.dim());
        let amplitudes = DVector::from_fn(n * m, |idx, _| {
            self.amplitudes[idx / m] * other.amplitudes[idx % m]
        });
        let mut factor_dims = self.factor_dims.clone();
        factor_dims.extend_from_slice(&other.factor_dims);
        PureState {
            amplitudes,
            factor_dims,
        }
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(invalid(format!("basis index {k} out of range for dim {dim}")));
        }
        let mut v = DVector::zeros(dim);
        v[k] = c(1.0);
        Self::new(v, vec![dim])
    }

    /// `|ψ⟩⟨ψ|` for a two-qubit state.
    pub fn projector(&self) -> Result<TwoQubitDensityMatrix> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: self.dim(),
            });
        }
        let a = &self.amplitudes;
        TwoQubitDensityMatrix::new(Matrix4::from_fn(|i, j| a[i] * a[j].conj()))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::FRAC_PI_4 + 1e-15).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0, π/4], got {alpha}")));
    }
    Ok(())
}

/// `cos α |00⟩ + sin α |11⟩`.
pub fn alpha_state(alpha: f64) -> Result<PureState> {
    check_alpha(alpha)?;
    let (s, co) = alpha.sin_cos();
    PureState::new(
        DVector::from_vec(vec![c(co), c(0.0), c(0.0), c(s)]),
        vec![2, 2],
    )
}

/// Branch amplitudes `(cos α, sin α)` of [`alpha_state`].
pub fn alpha_coefficients(alpha: f64) -> Result<[f64; 2]> {
    check_alpha(alpha)?;
    let (s, co) = alpha.sin_cos();
    Ok([co, s])
}

/// Random environment state: i.i.d. complex Gaussians of variance `1/n`,
/// then normalized exactly.
pub fn random_environment_state(n: usize, rng: &mut RngStream) -> Result<PureState> {
    let raw = random_environment_amplitudes(n, rng)?;
    PureState::normalized(raw, vec![n])
}

/// Pre-normalization amplitudes drawn by [`random_environment_state`].
pub fn random_environment_amplitudes(n: usize, rng: &mut RngStream) -> Result<DVector<Complex64>> {
    if n == 0 {
        return Err(invalid("environment dimension must be at least 1"));
    }
    let var = 1.0 / n as f64;
    Ok(DVector::from_fn(n, |_, _| rng.complex_normal(var)))
}

/// Hermitian, unit-trace, positive semidefinite 4×4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitDensityMatrix {
    entries: Matrix4<Complex64>,
}

impl TwoQubitDensityMatrix {
    /// Hermitizes and trace-normalizes `m`, failing if either correction
    /// exceeds [`DENSITY_CORRECTION_TOL`] or if an eigenvalue is below `-1e-10`.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("density matrix has non-finite entries"));
        }
        let herm = (m + m.adjoint()) * c(0.5);
        let herm_dev = (m - herm).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm_dev > DENSITY_CORRECTION_TOL {
            return Err(invalid(format!("density matrix not Hermitian: deviation {herm_dev}")));
        }
        let tr = herm.trace().re;
        if (tr - 1.0).abs() > DENSITY_CORRECTION_TOL {
            return Err(invalid(format!("density matrix trace is {tr}, expected 1")));
        }
        let entries = herm / c(tr);
        let min_ev = entries
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_ev < -PSD_TOL {
            return Err(invalid(format!("density matrix not PSD: eigenvalue {min_ev}")));
        }
        Ok(Self { entries })
    }

    pub fn maximally_mixed() -> Self {
        Self {
            entries: Matrix4::identity() * c(0.25),
        }
    }

    pub fn entries(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    /// Swaps the roles of the two qubits.
    pub fn swap_qubits(&self) -> Self {
        const P: [usize; 4] = [0, 2, 1, 3];
        Self {
            entries: Matrix4::from_fn(|i, j| self.entries[(P[i], P[j])]),
        }
    }

    /// 32 whitespace-separated reals, row-major, real/imaginary interleaved.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::with_capacity(32);
        for i in 0..4 {
            for j in 0..4 {
                let z = self.entries[(i, j)];
                parts.push(format!("{:.16e}", z.re));
                parts.push(format!("{:.16e}", z.im));
            }
        }
        parts.join(" ")
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let vals: Vec<f64> = s
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| invalid(format!("bad real {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if vals.len() != 32 {
            return Err(invalid(format!("expected 32 reals, got {}", vals.len())));
        }
        Self::new(Matrix4::from_fn(|i, j| {
            let k = 2 * (4 * i + j);
            Complex64::new(vals[k], vals[k + 1])
        }))
    }
}

/// `p |Bell⟩⟨Bell| + (1 - p) I/4` with `|Bell⟩ = (|00⟩ + |11⟩)/√2`.
pub fn werner_state(p: f64) -> Result<TwoQubitDensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("Werner parameter must lie in [0, 1], got {p}")));
    }
    let mut m = Matrix4::identity() * c((1.0 - p) / 4.0);
    for &i in &[0, 3] {
        for &j in &[0, 3] {
            m[(i, j)] += c(p / 2.0);
        }
    }
    TwoQubitDensityMatrix::new(m)
}

/// `Tr ρ²`.
pub fn purity(rho: &TwoQubitDensityMatrix) -> f64 {
    // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// `σ_y ⊗ σ_y`, a real matrix in the computational basis.
fn sigma_yy() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    m[(0, 3)] = c(-1.0);
    m[(1, 2)] = c(1.0);
    m[(2, 1)] = c(1.0);
    m[(3, 0)] = c(-1.0);
    m
}

/// Spin-flipped state `(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flip(rho: &TwoQubitDensityMatrix) -> Matrix4<Complex64> {
    let yy = sigma_yy();
    yy * rho.entries.map(|z| z.conj()) * yy
}

/// Eigenvalues of `ρ ρ̃` smaller than this are roundoff: `‖ρ ρ̃‖ ≤ 1`, and the
/// Schur backward error puts zero eigenvalues at `~1e-16`, which the square
/// root would inflate to `~1e-8`.
pub const CONCURRENCE_EIGEN_FLOOR: f64 = 1e-14;

/// Wootters concurrence from the eigenvalues of the non-Hermitian product
/// `ρ ρ̃`. Negative, imaginary and sub-[`CONCURRENCE_EIGEN_FLOOR`] residues are
/// clipped to zero before the root.
pub fn concurrence(rho: &TwoQubitDensityMatrix) -> Result<f64> {
    let r = rho.entries * spin_flip(rho);
    let (_, t) = Schur::try_new(r, 1e-15, 10_000)
        .ok_or_else(|| Error::Numerical {
            what: "Schur decomposition of ρρ̃ did not converge".into(),
            dim: 4,
            seed: None,
        })?
        .unpack();
    let mut l: Vec<f64> = (0..4)
        .map(|i| {
            let mu = t[(i, i)].re;
            if mu > CONCURRENCE_EIGEN_FLOOR {
                mu.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Eigenvalues of `ρ` in non-increasing order.
pub fn density_spectrum(rho: &TwoQubitDensityMatrix) -> [f64; 4] {
    let mut ev: Vec<f64> = rho.entries.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    [ev[0], ev[1], ev[2], ev[3]]
}

/// Point of a concurrence-purity trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CPPoint {
    pub time: f64,
    pub purity: f64,
    pub concurrence: f64,
}
