//! Closed-form linear-response predictions for purity and concurrence.

use crate::error::{invalid, Result};
use crate::rmt::HEISENBERG_TIME;

/// Couplings, initial-state angle and Heisenberg times of the two
/// environments. `lambda2 = 0` is the spectator configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoryParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub alpha: f64,
    pub tau_h1: f64,
    pub tau_h2: f64,
}

impl TheoryParams {
    pub fn new(lambda1: f64, lambda2: f64, alpha: f64, tau_h1: f64, tau_h2: f64) -> Result<Self> {
        for (name, v) in [("lambda1", lambda1), ("lambda2", lambda2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be >= 0, got {v}")));
            }
        }
        for (name, v) in [("tau_h1", tau_h1), ("tau_h2", tau_h2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be > 0, got {v}")));
            }
        }
        g_alpha(alpha)?;
        Ok(Self {
            lambda1,
            lambda2,
            alpha,
            tau_h1,
            tau_h2,
        })
    }

    /// One coupled qubit, default Heisenberg time.
    pub fn spectator(lambda: f64, alpha: f64) -> Result<Self> {
        Self::new(lambda, 0.0, alpha, HEISENBERG_TIME, HEISENBERG_TIME)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(invalid(format!("time must be >= 0, got {t}")));
    }
    Ok(())
}

/// Double time integral of the GUE spectral correlation, Gaussian beyond
/// the Heisenberg time.
pub fn f_lr(t: f64, tau_h: f64) -> Result<f64> {
    check_time(t)?;
    if !(tau_h > 0.0) {
        return Err(invalid(format!("Heisenberg time must be > 0, got {tau_h}")));
    }
    Ok(if t < tau_h {
        2.0 * t * tau_h + 2.0 * t.powi(3) / (3.0 * tau_h)
    } else {
        2.0 * t * t + 2.0 * tau_h * tau_h / 3.0
    })
}

/// `cos⁴α + sin⁴α`.
pub fn g_alpha(alpha: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::FRAC_PI_4 + 1e-15).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0, π/4], got {alpha}")));
    }
    let (s, c) = alpha.sin_cos();
    Ok(c.powi(4) + s.powi(4))
}

/// Linear-response purity `1 - (2 - g_α)[λ₁² f₁(t) + λ₂² f₂(t)]`.
pub fn purity_lr(t: f64, p: &TheoryParams) -> Result<f64> {
    let g = g_alpha(p.alpha)?;
    let decay = p.lambda1.powi(2) * f_lr(t, p.tau_h1)? + p.lambda2.powi(2) * f_lr(t, p.tau_h2)?;
    Ok(1.0 - (2.0 - g) * decay)
}

/// Exponentiated linear response, saturating at `g_α / 2`.
pub fn purity_elr(t: f64, p: &TheoryParams) -> Result<f64> {
    let g = g_alpha(p.alpha)?;
    let floor = g / 2.0;
    let span = 1.0 - floor;
    Ok(floor + span * ((purity_lr(t, p)? - 1.0) / span).exp())
}

/// Concurrence of the Werner state with purity `purity`.
pub fn werner_concurrence_from_purity(purity: f64) -> Result<f64> {
    if !(0.25..=1.0).contains(&purity) {
        return Err(invalid(format!("purity must lie in [1/4, 1], got {purity}")));
    }
    Ok((((12.0 * purity - 3.0).sqrt() - 1.0) / 2.0).max(0.0))
}

/// Werner-curve concurrence evaluated on [`purity_elr`].
pub fn concurrence_elr(t: f64, p: &TheoryParams) -> Result<f64> {
    // ELR purity stays inside [g/2, 1] ⊂ [1/4, 1]; clamp rounding at the ends.
    werner_concurrence_from_purity(purity_elr(t, p)?.clamp(0.25, 1.0))
}
