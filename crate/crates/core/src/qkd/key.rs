use super::bounds::{decoy_bounds, DecoyEstimates};
use super::tallies::{Basis, TallyCounts};
use super::{ProtocolParams, SecurityParams};
use crate::error::{Error, Result};

/// Binary Shannon entropy in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("binary entropy argument {x} outside [0, 1]")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

fn entropy_capped(x: f64) -> f64 {
    binary_entropy(x.clamp(0.0, 0.5)).unwrap_or(1.0)
}

/// Finite-sample correction `gamma(a, b, c, d)` added to an observed error
/// rate `b` when transferring it from a sample of size `c` to one of size `d`.
pub fn phase_error_correction(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let spread = (1.0 - b) * b;
    if spread <= 0.0 {
        return 0.0;
    }
    let arg = (c + d) / (c * d * spread) * 21.0 * 21.0 / (a * a);
    let inner = (c + d) * spread / (c * d * std::f64::consts::LN_2) * arg.log2();
    inner.max(0.0).sqrt()
}

/// Upper bound on the single-photon phase-error rate in the key basis,
/// capped at 1/2.
pub fn phase_error(s_z1: f64, v_z1: f64, s_x1: f64, eps_sec: f64) -> Result<f64> {
    if !(s_z1 > 0.0) || !(s_x1 > 0.0) {
        return Err(Error::domain("single-photon counts must be positive"));
    }
    if !(0.0..=s_z1).contains(&v_z1) {
        return Err(Error::domain("single-photon errors must lie in [0, s_z1]"));
    }
    let ratio = v_z1 / s_z1;
    if ratio >= 0.5 {
        return Ok(0.5);
    }
    Ok((ratio + phase_error_correction(eps_sec, ratio, s_z1, s_x1)).min(0.5))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteKeyResult {
    /// Secret-key length in bits (integer valued).
    pub skl: f64,
    /// Key length before flooring and clamping; negative when the costs
    /// exceed the certified entropy. Used as the optimisation objective.
    pub raw_length: f64,
    /// Detections in the key basis.
    pub n_key: f64,
    pub qber_key_basis: f64,
    pub phase_error_bound: f64,
    pub s0_lower: f64,
    pub s1_lower: f64,
    pub v1_upper: f64,
    pub feasible: bool,
}

impl FiniteKeyResult {
    pub(crate) fn empty() -> Self {
        Self {
            skl: 0.0,
            raw_length: f64::NEG_INFINITY,
            n_key: 0.0,
            qber_key_basis: 0.0,
            phase_error_bound: 0.5,
            s0_lower: 0.0,
            s1_lower: 0.0,
            v1_upper: 0.0,
            feasible: false,
        }
    }

    fn infeasible(n_key: f64, qber: f64, b: &DecoyEstimates) -> Self {
        Self {
            skl: 0.0,
            raw_length: f64::NEG_INFINITY,
            n_key,
            qber_key_basis: qber,
            phase_error_bound: 0.5,
            s0_lower: b.s_x0,
            s1_lower: b.s_x1,
            v1_upper: b.v_z1,
            feasible: false,
        }
    }
}

/// Secret-key length for the accumulated tallies.
pub fn skl(tallies: &TallyCounts, params: &ProtocolParams, security: &SecurityParams) -> Result<FiniteKeyResult> {
    params.validate()?;
    security.validate()?;
    let n_x = tallies.detected_total(Basis::X);
    let m_x = tallies.errors_total(Basis::X);
    let qber = if n_x > 0.0 { m_x / n_x } else { 0.0 };
    let b = decoy_bounds(tallies, params, security);
    if !b.feasible || qber >= 0.5 {
        return Ok(FiniteKeyResult::infeasible(n_x, qber, &b));
    }
    let phi = phase_error(b.s_z1, b.v_z1, b.s_x1, security.eps_sec)?;
    let leak_ec = security.f_ec * n_x * entropy_capped(qber);
    let raw = b.s_x0 + b.s_x1 * (1.0 - entropy_capped(phi)) - leak_ec
        - 6.0 * (21.0 / security.eps_sec).log2()
        - (2.0 / security.eps_cor).log2();
    Ok(FiniteKeyResult {
        skl: raw.floor().clamp(0.0, n_x.floor()),
        raw_length: raw,
        n_key: n_x,
        qber_key_basis: qber,
        phase_error_bound: phi,
        s0_lower: b.s_x0,
        s1_lower: b.s_x1,
        v1_upper: b.v_z1,
        feasible: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        // high-precision reference
        assert!((binary_entropy(0.11).unwrap() - 0.499_915_958_164_528).abs() < 1e-13);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn gamma_reference_value() {
        // high-precision reference for c = d = 1e6, b = 0.02, a = 1e-9
        let g = phase_error_correction(1e-9, 0.02, 1e6, 1e6);
        assert!((g / 0.001_768_782_484_269_55 - 1.0).abs() < 1e-12, "{g}");
    }

    #[test]
    fn phase_error_limits() {
        assert!(phase_error(1e15, 0.0, 1e15, 1e-9).unwrap() < 1e-6);
        assert_eq!(phase_error(1e4, 5e3, 1e4, 1e-9).unwrap(), 0.5);
        assert!(phase_error(1e4, 4.9e3, 1e2, 1e-9).unwrap() <= 0.5);
        assert!(phase_error(0.0, 0.0, 1e4, 1e-9).is_err());
        assert!(phase_error(1e4, 2e4, 1e4, 1e-9).is_err());
    }

    #[test]
    fn zero_transmittance_window_has_no_key() {
        let t = TallyCounts::from_counts([[1e9; 3]; 2], [[0.0; 3]; 2], [[0.0; 3]; 2]).unwrap();
        let r = skl(&t, &ProtocolParams::default(), &SecurityParams::default()).unwrap();
        assert_eq!(r.skl, 0.0);
        assert!(!r.feasible);
    }
}
