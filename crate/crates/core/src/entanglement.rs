//! Fidelity of a photon pair shared from one transmitter to two receivers
//! under background light.
//!
//! Each receiver's click is a signal photon with probability `q` and a
//! background click otherwise. A background click carries no correlation, so
//! the post-selected two-qubit state is a Werner state of weight `q_a q_b`
//! and its fidelity with the ideal Bell state is `(1 + 3 q_a q_b) / 4`.

use crate::channel::{background_counts, system_loss, LinkBudget, NoiseEnvironment};
use crate::error::{Error, Result};

/// One receiver of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DownlinkArm {
    pub budget: LinkBudget,
    pub range: f64,
    pub noise: NoiseEnvironment,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualDownlink {
    pub link_a: DownlinkArm,
    pub link_b: DownlinkArm,
    /// Pair generation rate, Hz.
    pub pair_rate: f64,
    /// Mean number of pairs per detection gate.
    pub pair_mean: f64,
}

impl DualDownlink {
    /// Two identical arms.
    pub fn symmetric(arm: DownlinkArm, pair_rate: f64, pair_mean: f64) -> Self {
        Self { link_a: arm, link_b: arm, pair_rate, pair_mean }
    }

    pub fn swapped(&self) -> Self {
        Self { link_a: self.link_b, link_b: self.link_a, ..*self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.pair_mean > 0.0) || !(self.pair_rate >= 0.0) {
            return Err(Error::domain("pair mean must be positive and pair rate non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityResult {
    pub fidelity: f64,
    pub q_a: f64,
    pub q_b: f64,
    /// Expected coincidence rate, Hz.
    pub coincidence_rate: f64,
}

/// Fraction of clicks at one receiver that come from the transmitted photon.
pub fn signal_fraction(budget: &LinkBudget, range: f64, env: &NoiseEnvironment, pair_mean: f64) -> Result<f64> {
    let p_signal = pair_mean * system_loss(budget, range)?.transmittance;
    let p_background = background_counts(env, budget)?;
    let total = p_signal + p_background;
    Ok(if total > 0.0 { p_signal / total } else { 0.0 })
}

/// Werner-state fidelity for the given signal weight `q_a q_b`.
pub fn werner_fidelity(weight: f64) -> f64 {
    (1.0 + 3.0 * weight) / 4.0
}

pub fn dual_link_fidelity(link: &DualDownlink) -> Result<FidelityResult> {
    link.validate()?;
    let arm = |a: &DownlinkArm| -> Result<(f64, f64)> {
        let q = signal_fraction(&a.budget, a.range, &a.noise, link.pair_mean)?;
        Ok((q, system_loss(&a.budget, a.range)?.transmittance))
    };
    let (q_a, eta_a) = arm(&link.link_a)?;
    let (q_b, eta_b) = arm(&link.link_b)?;
    Ok(FidelityResult {
        fidelity: werner_fidelity(q_a * q_b),
        q_a,
        q_b,
        coincidence_rate: link.pair_rate * eta_a * eta_b,
    })
}

/// Applies each radiance to both receivers and evaluates the fidelity.
pub fn fidelity_sweep(link: &DualDownlink, radiance_grid: &[f64]) -> Result<Vec<(f64, FidelityResult)>> {
    if radiance_grid.iter().any(|h| !(*h >= 0.0)) {
        return Err(Error::domain("radiance grid must be non-negative"));
    }
    if radiance_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("radiance grid must be strictly increasing"));
    }
    radiance_grid
        .iter()
        .map(|&h| {
            let mut l = *link;
            l.link_a.noise = l.link_a.noise.with_radiance(h);
            l.link_b.noise = l.link_b.noise.with_radiance(h);
            Ok((h, dual_link_fidelity(&l)?))
        })
        .collect()
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..n).map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64)).collect()
        }
    }
}
