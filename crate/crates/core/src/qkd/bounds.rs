use super::tallies::{Basis, TallyCounts};
use super::ProtocolParams;

/// Whether statistical fluctuations are accounted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteSize {
    /// Hoeffding deviations with failure probability `eps_sec / 21` each.
    Hoeffding,
    /// Expected counts taken at face value.
    Asymptotic,
}

/// Vacuum and single-photon bounds for both bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoyEstimates {
    pub s_x0: f64,
    pub s_x1: f64,
    pub s_z0: f64,
    pub s_z1: f64,
    /// Upper bound on single-photon errors in the Z basis.
    pub v_z1: f64,
    pub feasible: bool,
}

/// `sum_k p_k exp(-mu_k) mu_k^n / n!`: probability that a pulse carries `n`
/// photons.
pub(crate) fn photon_number_weight(params: &ProtocolParams, n: u32) -> f64 {
    let factorial: f64 = (1..=n).map(f64::from).product();
    params
        .intensities()
        .iter()
        .zip(params.probabilities())
        .map(|(&mu, p)| p * (-mu).exp() * mu.powi(n as i32) / factorial)
        .sum()
}

fn deviation(total: f64, eps_sec: f64, mode: FiniteSize) -> f64 {
    match mode {
        FiniteSize::Hoeffding => (total / 2.0 * (21.0 / eps_sec).ln()).sqrt(),
        FiniteSize::Asymptotic => 0.0,
    }
}

struct Corrected {
    lower: [f64; 3],
    upper: [f64; 3],
}

fn corrected(counts: [f64; 3], params: &ProtocolParams, delta: f64) -> Corrected {
    let mu = params.intensities();
    let p = params.probabilities();
    let scale = |k: usize| mu[k].exp() / p[k];
    Corrected {
        lower: [0, 1, 2].map(|k| scale(k) * (counts[k] - delta)),
        upper: [0, 1, 2].map(|k| scale(k) * (counts[k] + delta)),
    }
}

/// Returns `(s0, s1)` lower bounds for one basis.
fn vacuum_and_single(tallies: &TallyCounts, basis: Basis, params: &ProtocolParams, eps_sec: f64, mode: FiniteSize) -> (f64, f64) {
    let [mu1, mu2, mu3] = params.intensities();
    let tau0 = photon_number_weight(params, 0);
    let tau1 = photon_number_weight(params, 1);
    let counts = [0, 1, 2].map(|k| tallies.detected(basis, k));
    let n = corrected(counts, params, deviation(tallies.detected_total(basis), eps_sec, mode));

    // A negative vacuum estimate only means the data cannot certify any
    // vacuum contribution; zero remains a valid lower bound.
    let s0 = (tau0 * (mu2 * n.lower[2] - mu3 * n.upper[1]) / (mu2 - mu3)).max(0.0);
    let s1 = tau1 * mu1
        * (n.lower[1] - n.upper[2] - (mu2 * mu2 - mu3 * mu3) / (mu1 * mu1) * (n.upper[0] - s0 / tau0))
        / (mu1 * (mu2 - mu3) - mu2 * mu2 + mu3 * mu3);
    (s0, s1)
}

pub fn decoy_bounds_with(tallies: &TallyCounts, params: &ProtocolParams, eps_sec: f64, mode: FiniteSize) -> DecoyEstimates {
    let [_, mu2, mu3] = params.intensities();
    let (s_x0, s_x1) = vacuum_and_single(tallies, Basis::X, params, eps_sec, mode);
    let (s_z0, s_z1) = vacuum_and_single(tallies, Basis::Z, params, eps_sec, mode);

    let errs = [0, 1, 2].map(|k| tallies.errors(Basis::Z, k));
    let m = corrected(errs, params, deviation(tallies.errors_total(Basis::Z), eps_sec, mode));
    let tau1 = photon_number_weight(params, 1);
    let v_z1 = (tau1 * (m.upper[1] - m.lower[2]) / (mu2 - mu3)).max(0.0);

    let feasible = s_x1 > 0.0 && s_z1 > 0.0 && v_z1 <= s_z1 && [s_x1, s_z1, v_z1].iter().all(|v| v.is_finite());
    DecoyEstimates { s_x0, s_x1, s_z0, s_z1, v_z1, feasible }
}

/// Hoeffding-corrected two-decoy bounds.
pub fn decoy_bounds(tallies: &TallyCounts, params: &ProtocolParams, security: &super::SecurityParams) -> DecoyEstimates {
    decoy_bounds_with(tallies, params, security.eps_sec, FiniteSize::Hoeffding)
}
