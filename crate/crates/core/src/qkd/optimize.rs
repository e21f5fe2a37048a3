use std::cmp::Ordering;

use super::key::{skl, FiniteKeyResult};
use super::tallies::{accumulate, window};
use super::{ProtocolParams, SecurityParams};
use crate::channel::LinkRecord;
use crate::error::{Error, Result};
use crate::optim::{minimize, SimplexOptions};

/// Closed search ranges for `(mu1, mu2, px, p1, p2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsBox {
    pub mu1: (f64, f64),
    pub mu2: (f64, f64),
    pub px: (f64, f64),
    pub p1: (f64, f64),
    pub p2: (f64, f64),
}

impl Default for BoundsBox {
    fn default() -> Self {
        Self {
            mu1: (0.2, 1.0),
            mu2: (0.02, 0.5),
            px: (0.5, 0.95),
            p1: (0.1, 0.9),
            p2: (0.05, 0.6),
        }
    }
}

impl BoundsBox {
    fn axes(&self) -> [(f64, f64); 5] {
        [self.mu1, self.mu2, self.px, self.p1, self.p2]
    }

    pub fn validate(&self) -> Result<()> {
        for (lo, hi) in self.axes() {
            if !(lo <= hi) || !(lo > 0.0) {
                return Err(Error::domain(format!("invalid search range [{lo}, {hi}]")));
            }
        }
        if !(self.px.1 < 1.0 && self.p1.1 < 1.0 && self.p2.1 < 1.0) {
            return Err(Error::domain("probability ranges must stay below 1"));
        }
        Ok(())
    }

    fn lower(&self) -> [f64; 5] {
        self.axes().map(|a| a.0)
    }

    fn upper(&self) -> [f64; 5] {
        self.axes().map(|a| a.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Seeding grid points per axis.
    pub grid_points: usize,
    /// Simplex runs started from the best grid points.
    pub starts: usize,
    pub simplex: SimplexOptions,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { grid_points: 5, starts: 3, simplex: SimplexOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedParams {
    pub params: ProtocolParams,
    pub result: FiniteKeyResult,
    /// Best key length found on the seeding grid alone.
    pub grid_best_skl: f64,
}

fn to_params(x: &[f64], base: &ProtocolParams) -> ProtocolParams {
    ProtocolParams::new(x[0], x[1], base.mu3, x[3], x[4], x[2], base.source_rate)
}

/// Objective ordering: larger raw length first, then lower mu1, then the
/// remaining coordinates lexicographically.
fn better(a: &(Vec<f64>, FiniteKeyResult), b: &(Vec<f64>, FiniteKeyResult)) -> bool {
    match a.1.raw_length.total_cmp(&b.1.raw_length) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            for (x, y) in a.0.iter().zip(&b.0) {
                match x.total_cmp(y) {
                    Ordering::Less => return true,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
            false
        }
    }
}

/// Maximises the secret-key length over the window by a grid search on the
/// box followed by simplex refinement from the best grid points.
pub fn optimize_params(
    link: &[LinkRecord],
    sample_interval: f64,
    window_half: f64,
    security: &SecurityParams,
    base: &ProtocolParams,
    bounds: &BoundsBox,
    config: &OptimizerConfig,
) -> Result<OptimizedParams> {
    security.validate()?;
    bounds.validate()?;
    if !(sample_interval > 0.0) {
        return Err(Error::domain("sample interval must be positive"));
    }
    if config.grid_points < 2 || config.starts == 0 {
        return Err(Error::domain("optimizer needs >= 2 grid points per axis and >= 1 start"));
    }
    let records = window(link, window_half)?;

    let evaluate = |x: &[f64]| -> Option<FiniteKeyResult> {
        let params = to_params(x, base);
        params.validate().ok()?;
        let tallies = accumulate(&params, records, sample_interval, security.e_intrinsic);
        skl(&tallies, &params, security).ok()
    };

    let axes = bounds.axes();
    let g = config.grid_points;
    let mut scored: Vec<(Vec<f64>, FiniteKeyResult)> = Vec::new();
    let mut idx = [0usize; 5];
    loop {
        let x: Vec<f64> = idx
            .iter()
            .zip(axes)
            .map(|(&i, (lo, hi))| lo + (hi - lo) * i as f64 / (g - 1) as f64)
            .collect();
        if let Some(r) = evaluate(&x) {
            scored.push((x, r));
        }
        // odometer increment
        let mut axis = 0;
        while axis < 5 {
            idx[axis] += 1;
            if idx[axis] < g {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
        if axis == 5 {
            break;
        }
    }

    scored.sort_by(|a, b| if better(a, b) { Ordering::Less } else if better(b, a) { Ordering::Greater } else { Ordering::Equal });
    let grid_best_skl = scored.first().map_or(0.0, |s| s.1.skl);

    let mut best = match scored.first() {
        Some(s) if s.1.feasible => s.clone(),
        Some(s) => return Ok(OptimizedParams { params: to_params(&s.0, base), result: s.1, grid_best_skl }),
        None => {
            return Ok(OptimizedParams {
                params: to_params(&bounds.lower(), base),
                result: FiniteKeyResult::empty(),
                grid_best_skl,
            })
        }
    };

    let (lower, upper) = (bounds.lower(), bounds.upper());
    let starts: Vec<Vec<f64>> = scored
        .iter()
        .filter(|s| s.1.feasible)
        .take(config.starts)
        .map(|s| s.0.clone())
        .collect();
    for start in starts {
        let run = minimize(
            |x| evaluate(x).map_or(f64::INFINITY, |r| if r.feasible { -r.raw_length } else { f64::INFINITY }),
            &start,
            &lower,
            &upper,
            &config.simplex,
        );
        if let Some(r) = evaluate(&run.x) {
            let candidate = (run.x, r);
            if better(&candidate, &best) {
                best = candidate;
            }
        }
    }

    Ok(OptimizedParams { params: to_params(&best.0, base), result: best.1, grid_best_skl })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(eta: f64) -> Vec<LinkRecord> {
        (-50..=50).map(|k| LinkRecord { t: k as f64, eta_sys: eta, background: 2e-7 }).collect()
    }

    #[test]
    fn dead_link_is_infeasible() {
        let r = optimize_params(
            &link(0.0),
            1.0,
            50.0,
            &SecurityParams::default(),
            &ProtocolParams::default(),
            &BoundsBox::default(),
            &OptimizerConfig::default(),
        )
        .unwrap();
        assert!(!r.result.feasible);
        assert_eq!(r.result.skl, 0.0);
    }

    #[test]
    fn beats_grid() {
        let r = optimize_params(
            &link(1e-3),
            1.0,
            50.0,
            &SecurityParams::default(),
            &ProtocolParams::default(),
            &BoundsBox::default(),
            &OptimizerConfig::default(),
        )
        .unwrap();
        assert!(r.result.feasible);
        assert!(r.result.skl >= r.grid_best_skl);
        assert!(r.params.validate().is_ok());
    }
}
