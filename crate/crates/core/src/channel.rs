//! Free-space channel transmittance and background counts.
//!
//! Losses are diffraction (Gaussian far-field footprint against a circular
//! receive aperture), random pointing jitter, and fixed optics, atmosphere and
//! detector efficiencies. Background counts come from sky radiance collected
//! through the receiver field of view plus detector dark counts.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::geometry::PassGeometry;

pub const PLANCK: f64 = 6.626_070_15e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointingLabel {
    Weak,
    Moderate,
    Strong,
    Custom,
}

impl PointingLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointingLabel::Weak => "weak",
            PointingLabel::Moderate => "moderate",
            PointingLabel::Strong => "strong",
            PointingLabel::Custom => "custom",
        }
    }
}

impl fmt::Display for PointingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// A named pointing-jitter level. `sigma` is the per-axis angular standard
/// deviation in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingError {
    pub label: PointingLabel,
    pub sigma: f64,
}

impl PointingError {
    pub const WEAK_SIGMA: f64 = 3.3e-6;
    pub const MODERATE_SIGMA: f64 = 10e-6;
    pub const STRONG_SIGMA: f64 = 20e-6;

    pub fn weak() -> Self {
        Self { label: PointingLabel::Weak, sigma: Self::WEAK_SIGMA }
    }

    pub fn moderate() -> Self {
        Self { label: PointingLabel::Moderate, sigma: Self::MODERATE_SIGMA }
    }

    pub fn strong() -> Self {
        Self { label: PointingLabel::Strong, sigma: Self::STRONG_SIGMA }
    }

    pub fn custom(sigma: f64) -> Self {
        Self { label: PointingLabel::Custom, sigma }
    }
}

/// Optical link parameters. Lengths in metres, angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub wavelength: f64,
    /// Full divergence angle at the 1/e^2 intensity points.
    pub divergence_full: f64,
    pub tx_aperture: f64,
    pub rx_aperture: f64,
    /// Per-axis pointing jitter standard deviation.
    pub pointing_sigma: f64,
    pub eta_tx: f64,
    pub eta_rx: f64,
    pub eta_det: f64,
    pub eta_atm: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        Self {
            wavelength: 810e-9,
            divergence_full: 33e-6,
            tx_aperture: 0.09,
            rx_aperture: 0.35,
            pointing_sigma: PointingError::WEAK_SIGMA,
            eta_tx: 0.8,
            eta_rx: 0.8,
            eta_det: 0.5,
            eta_atm: 1.0,
        }
    }
}

fn check_efficiency(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {v} outside (0, 1]")))
    }
}

fn check_range(range: f64) -> Result<()> {
    if range > 0.0 && range.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("range {range} must be positive")))
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eta_tx", self.eta_tx),
            ("eta_rx", self.eta_rx),
            ("eta_det", self.eta_det),
            ("eta_atm", self.eta_atm),
        ] {
            check_efficiency(name, v)?;
        }
        if !(self.wavelength > 0.0) || !(self.divergence_full > 0.0) {
            return Err(Error::domain("wavelength and divergence must be positive"));
        }
        if !(self.tx_aperture > 0.0) || !(self.rx_aperture > 0.0) {
            return Err(Error::domain("apertures must be positive"));
        }
        if !(self.pointing_sigma >= 0.0) {
            return Err(Error::domain("pointing sigma must be non-negative"));
        }
        Ok(())
    }

    pub fn with_pointing(self, pe: PointingError) -> Self {
        Self { pointing_sigma: pe.sigma, ..self }
    }

    fn rx_radius(&self) -> f64 {
        self.rx_aperture / 2.0
    }
}

/// Far-field 1/e^2 beam radius at `range`.
pub fn beam_radius(budget: &LinkBudget, range: f64) -> Result<f64> {
    check_range(range)?;
    Ok(budget.divergence_full / 2.0 * range)
}

/// Fraction of a perfectly centred Gaussian beam collected by the aperture.
pub fn centered_transmittance(budget: &LinkBudget, range: f64) -> Result<f64> {
    let w = beam_radius(budget, range)?;
    let a = budget.rx_radius();
    Ok(-(-2.0 * a * a / (w * w)).exp_m1())
}

/// Equivalent-beam parameters `(A0, w_eq^2)` for aperture radius `a` and beam radius `w`.
pub fn equivalent_beam(a: f64, w: f64) -> (f64, f64) {
    let v = (FRAC_PI_2).sqrt() * a / w;
    let erf_v = erf(v);
    let a0 = erf_v * erf_v;
    let w_eq2 = if v < 1e-8 {
        // erf(v) / (2 v exp(-v^2)) -> 1/sqrt(pi)
        w * w
    } else {
        w * w * PI.sqrt() * erf_v / (2.0 * v * (-v * v).exp())
    };
    (a0, w_eq2)
}

/// Pointing-averaged transmittance for Rayleigh-distributed beam displacement
/// with scale `pointing_sigma * range`.
pub fn pointing_transmittance_expected(budget: &LinkBudget, range: f64) -> Result<f64> {
    let w = beam_radius(budget, range)?;
    let (a0, w_eq2) = equivalent_beam(budget.rx_radius(), w);
    let sigma_d = budget.pointing_sigma * range;
    if sigma_d == 0.0 {
        return Ok(a0);
    }
    let gamma = w_eq2 / (4.0 * sigma_d * sigma_d);
    Ok(a0 * gamma / (gamma + 1.0))
}

/// Total system transmittance and its factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemLoss {
    pub pointing: f64,
    pub eta_atm: f64,
    pub eta_tx: f64,
    pub eta_rx: f64,
    pub eta_det: f64,
    pub transmittance: f64,
}

impl SystemLoss {
    /// Loss in dB, `-10 log10(transmittance)`.
    pub fn db(&self) -> f64 {
        to_db(self.transmittance)
    }

    /// Per-factor losses in dB, in the order pointing, atm, tx, rx, det.
    pub fn factor_db(&self) -> [f64; 5] {
        [self.pointing, self.eta_atm, self.eta_tx, self.eta_rx, self.eta_det].map(to_db)
    }
}

fn to_db(t: f64) -> f64 {
    -10.0 * t.log10()
}

pub fn system_loss(budget: &LinkBudget, range: f64) -> Result<SystemLoss> {
    budget.validate()?;
    let pointing = pointing_transmittance_expected(budget, range)?;
    Ok(SystemLoss {
        pointing,
        eta_atm: budget.eta_atm,
        eta_tx: budget.eta_tx,
        eta_rx: budget.eta_rx,
        eta_det: budget.eta_det,
        transmittance: pointing * budget.eta_atm * budget.eta_tx * budget.eta_rx * budget.eta_det,
    })
}

/// Receiver background environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEnvironment {
    /// Sky spectral radiance H_b, W m^-2 nm^-1 sr^-1.
    pub spectral_radiance: f64,
    /// Receiver field of view, sr.
    pub fov: f64,
    /// Spectral filter bandwidth, nm.
    pub filter_bandwidth: f64,
    /// Detection gate, s.
    pub gate_time: f64,
    /// Dark count rate per detector, Hz.
    pub dark_count_rate: f64,
}

impl Default for NoiseEnvironment {
    fn default() -> Self {
        Self {
            spectral_radiance: 0.0,
            fov: 1e-8,
            filter_bandwidth: 1.0,
            gate_time: 1e-9,
            dark_count_rate: 200.0,
        }
    }
}

impl NoiseEnvironment {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("spectral_radiance", self.spectral_radiance),
            ("fov", self.fov),
            ("filter_bandwidth", self.filter_bandwidth),
            ("gate_time", self.gate_time),
            ("dark_count_rate", self.dark_count_rate),
        ];
        match fields.iter().find(|(_, v)| !(*v >= 0.0)) {
            Some((name, v)) => Err(Error::domain(format!("{name} = {v} must be non-negative"))),
            None => Ok(()),
        }
    }

    pub fn with_radiance(self, spectral_radiance: f64) -> Self {
        Self { spectral_radiance, ..self }
    }
}

/// Expected background clicks per gate: collected sky photons after receive
/// optics and detector efficiency, plus dark counts.
pub fn background_counts(env: &NoiseEnvironment, budget: &LinkBudget) -> Result<f64> {
    env.validate()?;
    let area = PI * budget.rx_radius().powi(2);
    let photon_energy = PLANCK * SPEED_OF_LIGHT / budget.wavelength;
    let sky_power = env.spectral_radiance * env.fov * area * env.filter_bandwidth;
    let sky = sky_power / photon_energy * env.gate_time * budget.eta_rx * budget.eta_det;
    Ok(sky + env.dark_count_rate * env.gate_time)
}

/// Per-sample channel state for a pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRecord {
    pub t: f64,
    pub eta_sys: f64,
    /// Expected background clicks per gate.
    pub background: f64,
}

pub fn link_timeseries(pass: &PassGeometry, budget: &LinkBudget, env: &NoiseEnvironment) -> Result<Vec<LinkRecord>> {
    let background = background_counts(env, budget)?;
    pass.samples()
        .iter()
        .enumerate()
        .map(|(index, s)| {
            let loss = system_loss(budget, s.range).map_err(|e| Error::AtSample { index, source: Box::new(e) })?;
            Ok(LinkRecord { t: s.t, eta_sys: loss.transmittance, background })
        })
        .collect()
}
