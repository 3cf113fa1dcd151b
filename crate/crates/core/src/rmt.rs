//! GUE sampling, spectral decomposition and spectral-statistics diagnostics.
//!
//! Conventions: a GUE sample with entry variance `v` has real Gaussian
//! diagonal entries of variance `v` and complex Gaussian off-diagonal entries
//! whose real and imaginary parts each carry variance `v / 2`. The coupling
//! operator uses `v = 1`. Environment Hamiltonians are scaled so that the
//! level density averaged over eigenstates is one, which puts the Heisenberg
//! time at `2π`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};

/// Heisenberg time of every environment produced by
/// [`sample_environment_hamiltonian`].
pub const HEISENBERG_TIME: f64 = 2.0 * PI;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// Deterministic random stream. The same `(seed, stream)` pair yields the
/// same sequence on every platform.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent substream `stream` of the generator keyed by `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Complex Gaussian with `E|z|^2 = variance`.
    pub fn complex_normal(&mut self, variance: f64) -> Complex64 {
        let s = (variance / 2.0).sqrt();
        Complex64::new(s * self.normal(), s * self.normal())
    }
}

/// Dense Hermitian matrix, exactly Hermitian as stored.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Wraps `matrix` after checking squareness and Hermiticity within `tol`
    /// (absolute, per entry). The stored matrix is symmetrized so that the
    /// invariant holds bit-exactly.
    pub fn from_matrix(matrix: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c {
            return Err(invalid(format!("matrix is not square: {r}x{c}")));
        }
        if r == 0 {
            return Err(invalid("operator dimension must be at least 1"));
        }
        let mut m = matrix;
        for i in 0..r {
            for j in i..r {
                let a = m[(i, j)];
                let b = m[(j, i)].conj();
                if (a - b).norm() > tol {
                    return Err(invalid(format!(
                        "matrix is not Hermitian at ({i},{j}): deviation {}",
                        (a - b).norm()
                    )));
                }
                let avg = (a + b) * 0.5;
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(invalid("operator dimension must be at least 1"));
        }
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Ok(Self {
            matrix: DMatrix::from_diagonal(&d),
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_real_diagonal(&vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_real_diagonal(&vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// `self ⊗ I_k`, with the identity factor as the fast index.
    pub fn kron_identity(&self, k: usize) -> Self {
        let n = self.dim();
        let mut out = DMatrix::zeros(n * k, n * k);
        for i in 0..n {
            for j in 0..n {
                let v = self.matrix[(i, j)];
                for a in 0..k {
                    out[(i * k + a, j * k + a)] = v;
                }
            }
        }
        Self { matrix: out }
    }

    /// `self + scale * other`; `scale` is real so Hermiticity is preserved.
    pub fn add_scaled(&self, other: &Self, scale: f64) -> Result<Self> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let matrix = &self.matrix + other.matrix.map(|z| z * scale);
        Ok(Self { matrix })
    }
}

/// Eigenvalues in non-decreasing order with the matching unitary
/// eigenvector matrix (eigenvectors are columns).
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    /// `U diag(E) U†`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let mut scaled = self.eigenvectors.clone();
        for (j, &e) in self.eigenvalues.iter().enumerate() {
            scaled.column_mut(j).scale_mut(e);
        }
        scaled * self.eigenvectors.adjoint()
    }
}

pub fn sample_gue(dim: usize, entry_variance: f64, rng: &mut RngStream) -> Result<HermitianOperator> {
    if dim == 0 {
        return Err(invalid("GUE dimension must be at least 1"));
    }
    if !(entry_variance > 0.0 && entry_variance.is_finite()) {
        return Err(invalid(format!(
            "GUE entry variance must be positive, got {entry_variance}"
        )));
    }
    let sd = entry_variance.sqrt();
    let mut m = DMatrix::zeros(dim, dim);
    // Row-major fill of the upper triangle keeps the draw order fixed.
    for i in 0..dim {
        m[(i, i)] = Complex64::new(sd * rng.normal(), 0.0);
        for j in (i + 1)..dim {
            let z = rng.complex_normal(entry_variance);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Ok(HermitianOperator { matrix: m })
}

/// Entry variance of an `n`-level environment: `64 n / (9 π⁴)`.
///
/// With this scale the semicircle radius is `16 n / (3 π²)` and the mean
/// level density seen by a typical eigenstate, `(1/n)∫ρ(E)² dE`, equals one.
pub fn environment_entry_variance(n: usize) -> f64 {
    64.0 * n as f64 / (9.0 * PI.powi(4))
}

/// Radius of the semicircle support of an environment of dimension `n`.
pub fn environment_spectral_radius(n: usize) -> f64 {
    2.0 * (environment_entry_variance(n) * n as f64).sqrt()
}

pub fn sample_environment_hamiltonian(n: usize, rng: &mut RngStream) -> Result<HermitianOperator> {
    if n < 2 {
        return Err(invalid(format!("environment dimension must be at least 2, got {n}")));
    }
    sample_gue(n, environment_entry_variance(n), rng)
}

pub fn spectral_decompose(h: &HermitianOperator) -> Result<SpectralDecomposition> {
    spectral_decompose_with_seed(h, None)
}

/// As [`spectral_decompose`], attaching `seed` to any failure for replay.
pub fn spectral_decompose_with_seed(
    h: &HermitianOperator,
    seed: Option<u64>,
) -> Result<SpectralDecomposition> {
    let dim = h.dim();
    let eig = SymmetricEigen::try_new(h.matrix.clone(), EIGEN_EPS, EIGEN_MAX_ITER).ok_or_else(|| {
        Error::Numerical {
            what: "Hermitian eigensolver did not converge".into(),
            dim,
            seed,
        }
    })?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = DVector::from_iterator(dim, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut eigenvectors = DMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    if eigenvalues.iter().any(|e| !e.is_finite()) {
        return Err(Error::Numerical {
            what: "non-finite eigenvalue".into(),
            dim,
            seed,
        });
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Sorted eigenvalues only.
pub fn eigenvalues(h: &HermitianOperator) -> Result<Vec<f64>> {
    let dim = h.dim();
    let mut ev: Vec<f64> = h
        .matrix
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    if ev.iter().any(|e| !e.is_finite()) {
        return Err(Error::Numerical {
            what: "non-finite eigenvalue".into(),
            dim,
            seed: None,
        });
    }
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// GUE two-level form factor: `1 - τ` on `[0, 1]`, zero beyond.
pub fn form_factor_b2(tau: f64) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(invalid(format!("form factor argument must be >= 0, got {tau}")));
    }
    Ok(if tau <= 1.0 { 1.0 - tau } else { 0.0 })
}

/// Index range of the central half of a spectrum of length `n`.
fn central_half(n: usize) -> std::ops::Range<usize> {
    let lo = n / 4;
    let hi = n - n / 4;
    lo..hi
}

/// Average nearest-neighbour gap over the central half of a sorted spectrum.
pub fn mean_level_spacing_center(eigenvalues: &[f64]) -> Result<f64> {
    if eigenvalues.len() < 4 {
        return Err(invalid(format!(
            "need at least 4 eigenvalues, got {}",
            eigenvalues.len()
        )));
    }
    if eigenvalues.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(invalid("eigenvalues must be sorted non-decreasing"));
    }
    let r = central_half(eigenvalues.len());
    let (a, b) = (r.start, r.end - 1);
    let spacing = (eigenvalues[b] - eigenvalues[a]) / (b - a) as f64;
    if !(spacing > 0.0) {
        return Err(invalid("central eigenvalues are fully degenerate"));
    }
    Ok(spacing)
}

/// Central-half nearest-neighbour spacings divided by their mean.
pub fn unfolded_central_spacings(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let mean = mean_level_spacing_center(eigenvalues)?;
    let r = central_half(eigenvalues.len());
    Ok(eigenvalues[r]
        .windows(2)
        .map(|w| (w[1] - w[0]) / mean)
        .collect())
}

/// Mean level spacing at the band centre, `1/ρ(0)`, for the environment scale.
pub fn environment_center_spacing(n: usize) -> f64 {
    let r = environment_spectral_radius(n);
    PI * r / (2.0 * n as f64)
}

/// Fraction of the unit semicircle law lying in `[-1, x]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / PI
}

/// Large-`n` prediction for [`mean_level_spacing_center`] on an environment
/// spectrum: the gap between the 1/4 and 3/4 semicircle quantiles spread over
/// `n/2` levels.
pub fn environment_central_spacing(n: usize) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if semicircle_cdf(mid) < 0.75 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = 0.5 * (lo + hi);
    4.0 * q * environment_spectral_radius(n) / n as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Fixed-width histogram on `[0, bins * width)`; values beyond are dropped.
pub fn histogram(values: &[f64], width: f64, bins: usize) -> Vec<HistogramBin> {
    let mut out: Vec<HistogramBin> = (0..bins)
        .map(|k| HistogramBin {
            lo: k as f64 * width,
            hi: (k + 1) as f64 * width,
            count: 0,
        })
        .collect();
    for &v in values {
        if v >= 0.0 {
            let k = (v / width) as usize;
            if k < bins {
                out[k].count += 1;
            }
        }
    }
    out
}

/// Wigner surmise for the GUE, `(32/π²) s² exp(-4s²/π)`.
pub fn wigner_surmise_gue(s: f64) -> f64 {
    32.0 / (PI * PI) * s * s * (-4.0 * s * s / PI).exp()
}
