//! Finite-key secret-key length of the two-decoy efficient BB84 protocol.
//!
//! Detection statistics are accumulated as expected values over a symmetric
//! window of a pass, then turned into a key length through Hoeffding-corrected
//! decoy bounds, a finite-sample phase-error estimate and the usual
//! error-correction and composability costs. The key is distilled from the X
//! basis; the Z basis is used for phase-error estimation.

mod bounds;
mod key;
mod optimize;
mod tallies;

pub use bounds::{decoy_bounds, decoy_bounds_with, DecoyEstimates, FiniteSize};
pub use key::{binary_entropy, phase_error, phase_error_correction, skl, FiniteKeyResult};
pub use optimize::{optimize_params, BoundsBox, OptimizedParams, OptimizerConfig};
pub use tallies::{simulate_tallies, Basis, TallyCounts};

use crate::error::{Error, Result};

/// Decoy intensities, their probabilities, and the key-basis bias.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolParams {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    /// Probability of choosing the X (key) basis, same on both sides.
    pub px: f64,
    /// Pulse repetition rate, Hz.
    pub source_rate: f64,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        Self::new(0.8, 0.1, 0.0, 0.7, 0.2, 0.7, 2e8)
    }
}

impl ProtocolParams {
    /// Builds a parameter set with `p3 = 1 - p1 - p2`.
    pub fn new(mu1: f64, mu2: f64, mu3: f64, p1: f64, p2: f64, px: f64, source_rate: f64) -> Self {
        Self { mu1, mu2, mu3, p1, p2, p3: 1.0 - p1 - p2, px, source_rate }
    }

    pub fn intensities(&self) -> [f64; 3] {
        [self.mu1, self.mu2, self.mu3]
    }

    pub fn probabilities(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu1 > self.mu2 && self.mu2 > self.mu3 && self.mu3 >= 0.0) {
            return Err(Error::domain("intensities must satisfy mu1 > mu2 > mu3 >= 0"));
        }
        if !(self.mu1 > self.mu2 + self.mu3) {
            return Err(Error::domain("intensities must satisfy mu1 > mu2 + mu3"));
        }
        let probs = self.probabilities();
        if probs.iter().any(|p| !(*p > 0.0 && *p < 1.0)) {
            return Err(Error::domain("intensity probabilities must lie in (0, 1)"));
        }
        if (probs.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::domain("intensity probabilities must sum to 1"));
        }
        if !(self.px > 0.0 && self.px < 1.0) {
            return Err(Error::domain("basis probability must lie in (0, 1)"));
        }
        if !(self.source_rate > 0.0) {
            return Err(Error::domain("source rate must be positive"));
        }
        Ok(())
    }
}

/// Security parameters and post-processing efficiencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecurityParams {
    pub eps_sec: f64,
    pub eps_cor: f64,
    /// Error-correction inefficiency, >= 1.
    pub f_ec: f64,
    /// Intrinsic misalignment error probability.
    pub e_intrinsic: f64,
}

impl Default for SecurityParams {
    fn default() -> Self {
        Self { eps_sec: 1e-9, eps_cor: 1e-15, f_ec: 1.16, e_intrinsic: 0.01 }
    }
}

impl SecurityParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_sec > 0.0 && self.eps_sec < 1.0) || !(self.eps_cor > 0.0 && self.eps_cor < 1.0) {
            return Err(Error::domain("security epsilons must lie in (0, 1)"));
        }
        if !(self.f_ec >= 1.0) {
            return Err(Error::domain("error-correction inefficiency must be >= 1"));
        }
        if !(0.0..0.5).contains(&self.e_intrinsic) {
            return Err(Error::domain("intrinsic error must lie in [0, 0.5)"));
        }
        Ok(())
    }
}
