use super::ProtocolParams;
use crate::channel::LinkRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    X,
    Z,
}

impl Basis {
    fn index(self) -> usize {
        match self {
            Basis::X => 0,
            Basis::Z => 1,
        }
    }
}

/// Expected pulse, detection and error counts per basis and intensity.
/// Only rounds where both parties picked the same basis are counted.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TallyCounts {
    sent: [[f64; 3]; 2],
    detected: [[f64; 3]; 2],
    errors: [[f64; 3]; 2],
}

impl TallyCounts {
    pub fn from_counts(sent: [[f64; 3]; 2], detected: [[f64; 3]; 2], errors: [[f64; 3]; 2]) -> Result<Self> {
        for b in 0..2 {
            for k in 0..3 {
                let (n, d, m) = (sent[b][k], detected[b][k], errors[b][k]);
                if !(0.0 <= m && m <= d && d <= n) {
                    return Err(Error::domain(format!("tally cell ({b}, {k}) violates 0 <= m <= n <= N")));
                }
            }
        }
        Ok(Self { sent, detected, errors })
    }

    pub fn sent(&self, basis: Basis, k: usize) -> f64 {
        self.sent[basis.index()][k]
    }

    pub fn detected(&self, basis: Basis, k: usize) -> f64 {
        self.detected[basis.index()][k]
    }

    pub fn errors(&self, basis: Basis, k: usize) -> f64 {
        self.errors[basis.index()][k]
    }

    pub fn detected_total(&self, basis: Basis) -> f64 {
        self.detected[basis.index()].iter().sum()
    }

    pub fn errors_total(&self, basis: Basis) -> f64 {
        self.errors[basis.index()].iter().sum()
    }

    /// Multiplies every cell by `factor`, as if the window were longer.
    pub fn scaled(&self, factor: f64) -> Self {
        let s = |a: [[f64; 3]; 2]| a.map(|row| row.map(|v| v * factor));
        Self { sent: s(self.sent), detected: s(self.detected), errors: s(self.errors) }
    }
}

/// Records inside `[-window_half, +window_half]`, checking that the link
/// covers the whole window.
pub(crate) fn window(link: &[LinkRecord], window_half: f64) -> Result<&[LinkRecord]> {
    if !(window_half > 0.0) {
        return Err(Error::domain("window half-width must be positive"));
    }
    let (first, last) = match (link.first(), link.last()) {
        (Some(a), Some(b)) => (a.t, b.t),
        _ => return Err(Error::domain("empty link")),
    };
    let slack = 1e-9 * window_half.max(1.0);
    if first > -window_half + slack || last < window_half - slack {
        return Err(Error::domain(format!(
            "window +/-{window_half} s exceeds link support [{first}, {last}] s"
        )));
    }
    let start = link.partition_point(|r| r.t < -window_half - slack);
    let end = link.partition_point(|r| r.t <= window_half + slack);
    Ok(&link[start..end])
}

/// Accumulates expected tallies over the window in time order.
///
/// Per gate, a detector pair clicks with probability
/// `1 - (1 - 2 p) exp(-eta mu)` where `p = 1 - exp(-N_b)` is the background
/// click probability of one detector. Signal clicks are wrong with
/// probability `e_intrinsic`; noise-only clicks are wrong half of the time.
pub fn simulate_tallies(
    params: &ProtocolParams,
    link: &[LinkRecord],
    sample_interval: f64,
    window_half: f64,
    e_intrinsic: f64,
) -> Result<TallyCounts> {
    params.validate()?;
    if !(sample_interval > 0.0) {
        return Err(Error::domain("sample interval must be positive"));
    }
    let records = window(link, window_half)?;
    Ok(accumulate(params, records, sample_interval, e_intrinsic))
}

pub(crate) fn accumulate(
    params: &ProtocolParams,
    records: &[LinkRecord],
    sample_interval: f64,
    e_intrinsic: f64,
) -> TallyCounts {
    let mu = params.intensities();
    let probs = params.probabilities();
    let basis_weight = [params.px * params.px, (1.0 - params.px) * (1.0 - params.px)];
    let pulses = params.source_rate * sample_interval;

    let mut tally = TallyCounts::default();
    for r in records {
        let p_noise = -(-r.background).exp_m1();
        for k in 0..3 {
            let vacuum = (-r.eta_sys * mu[k]).exp();
            let signal = -(-r.eta_sys * mu[k]).exp_m1();
            let click = signal + 2.0 * p_noise * vacuum;
            let wrong = e_intrinsic * signal + p_noise * vacuum;
            for b in 0..2 {
                let sent = pulses * probs[k] * basis_weight[b];
                tally.sent[b][k] += sent;
                tally.detected[b][k] += sent * click;
                tally.errors[b][k] += sent * wrong;
            }
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(eta: f64, background: f64, n: i64) -> Vec<LinkRecord> {
        (-n..=n).map(|k| LinkRecord { t: k as f64, eta_sys: eta, background }).collect()
    }

    #[test]
    fn dark_channel_gives_nothing() {
        let t = simulate_tallies(&ProtocolParams::default(), &flat(0.0, 0.0, 5), 1.0, 5.0, 0.01).unwrap();
        for b in [Basis::X, Basis::Z] {
            assert_eq!(t.detected_total(b), 0.0);
            assert!(t.sent(b, 0) > 0.0);
        }
    }

    #[test]
    fn noiseless_intrinsic_free_has_no_errors() {
        let t = simulate_tallies(&ProtocolParams::default(), &flat(1e-3, 0.0, 5), 1.0, 5.0, 0.0).unwrap();
        assert_eq!(t.errors_total(Basis::X), 0.0);
        assert!(t.detected_total(Basis::X) > 0.0);
    }

    #[test]
    fn single_sample_closed_form() {
        let params = ProtocolParams::new(0.5, 0.1, 0.0, 0.6, 0.3, 0.7, 1e8);
        let link = [LinkRecord { t: 0.0, eta_sys: 1e-3, background: 0.0 }];
        let t = accumulate(&params, &link, 1.0, 0.0);
        let d = 1.0 - (-5e-4f64).exp();
        assert!((d - 4.998_750_208e-4).abs() < 1e-12);
        let expected = 1e8 * 0.6 * 0.49 * d;
        assert!((t.detected(Basis::X, 0) / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn window_must_fit() {
        let link = flat(1e-3, 0.0, 5);
        assert!(simulate_tallies(&ProtocolParams::default(), &link, 1.0, 6.0, 0.01).is_err());
        assert!(simulate_tallies(&ProtocolParams::default(), &link, 1.0, 0.0, 0.01).is_err());
        assert_eq!(window(&link, 2.0).unwrap().len(), 5);
    }

    #[test]
    fn from_counts_checks_ordering() {
        let ok = [[10.0; 3]; 2];
        assert!(TallyCounts::from_counts(ok, [[5.0; 3]; 2], [[1.0; 3]; 2]).is_ok());
        assert!(TallyCounts::from_counts(ok, [[5.0; 3]; 2], [[6.0; 3]; 2]).is_err());
    }
}
