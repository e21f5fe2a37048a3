//! Vertical turbulence and wind profiles, and the slant-path turbulence
//! metrics derived from them: Fried coherence length, Greenwood frequency and
//! the plane-wave scintillation index.
//!
//! The refractive-index structure profile is Hufnagel-Valley:
//!
//! ```text
//! Cn2(h) = 0.00594 (v_rms/27)^2 (1e-5 h)^10 exp(-h/1000)
//!        + 2.7e-16 exp(-h/1500)
//!        + A exp(-h/100)
//! ```
//!
//! and the transverse wind is a Bufton profile with a pseudo-wind term for
//! the line-of-sight slew of a tracking telescope:
//!
//! ```text
//! V(h) = omega_s h + v_g + 30 exp(-((h - 9400)/4800)^2)
//! ```
//!
//! Altitudes are metres above mean sea level; all three moments are
//! integrated along the vertical and mapped to the slant path with sec(zenith).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};

/// Altitudes where the profile changes character; used as quadrature breakpoints.
const BREAKPOINTS: [f64; 8] = [100.0, 300.0, 1_000.0, 3_000.0, 6_000.0, 9_400.0, 14_000.0, 20_000.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbulenceProfile {
    /// Ground-level structure constant A, m^(-2/3).
    pub ground_cn2: f64,
    /// RMS upper-altitude wind v_rms, m/s.
    pub rms_wind: f64,
    /// Ground wind speed v_g, m/s.
    pub ground_wind: f64,
    /// Line-of-sight slew rate omega_s, rad/s.
    pub slew_rate: f64,
    /// Upper integration limit for the turbulence moments, m.
    pub ceiling: f64,
}

impl Default for TurbulenceProfile {
    /// HV5/7 with a 5 m/s ground wind and no slew.
    fn default() -> Self {
        Self {
            ground_cn2: 1.7e-14,
            rms_wind: 21.0,
            ground_wind: 5.0,
            slew_rate: 0.0,
            ceiling: 30e3,
        }
    }
}

impl TurbulenceProfile {
    pub fn validate(&self) -> Result<()> {
        if !(self.ground_cn2 > 0.0) || !(self.rms_wind > 0.0) {
            return Err(Error::domain("ground Cn2 and rms wind must be positive"));
        }
        if !(self.ground_wind >= 0.0) || !(self.slew_rate >= 0.0) {
            return Err(Error::domain("ground wind and slew rate must be non-negative"));
        }
        if !(self.ceiling > 0.0) {
            return Err(Error::domain("integration ceiling must be positive"));
        }
        Ok(())
    }

    pub fn with_slew_rate(self, slew_rate: f64) -> Self {
        Self { slew_rate, ..self }
    }

    /// Refractive-index structure parameter at altitude `h`, m^(-2/3).
    pub fn cn2(&self, h: f64) -> f64 {
        let tropo = 0.00594 * (self.rms_wind / 27.0).powi(2) * (1e-5 * h).powi(10) * (-h / 1000.0).exp();
        tropo + 2.7e-16 * (-h / 1500.0).exp() + self.ground_cn2 * (-h / 100.0).exp()
    }

    /// Transverse wind speed at altitude `h`, m/s.
    pub fn wind(&self, h: f64) -> f64 {
        let z = (h - 9400.0) / 4800.0;
        self.slew_rate * h + self.ground_wind + 30.0 * (-z * z).exp()
    }
}

/// Vertical geometry and wavelength of a slant path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlantPath {
    pub zenith: f64,
    pub h_low: f64,
    pub h_high: f64,
    pub wavelength: f64,
}

impl SlantPath {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..FRAC_PI_2).contains(&self.zenith) {
            return Err(Error::domain(format!("zenith {} rad outside [0, pi/2)", self.zenith)));
        }
        if !(self.h_high > self.h_low) || self.h_low < 0.0 {
            return Err(Error::domain("slant path needs h_high > h_low >= 0"));
        }
        if !(self.wavelength > 0.0) {
            return Err(Error::domain("wavelength must be positive"));
        }
        Ok(())
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    fn sec(&self) -> f64 {
        1.0 / self.zenith.cos()
    }
}

/// Vertical moments of the profile over `[h_low, min(h_high, ceiling)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbulenceMoments {
    /// Integral of Cn2(h), m^(1/3).
    pub cn2: f64,
    /// Integral of Cn2(h) V(h)^(5/3).
    pub wind: f64,
    /// Integral of Cn2(h) (h - h_low)^(5/6).
    pub rytov: f64,
}

fn upper_limit(profile: &TurbulenceProfile, path: &SlantPath) -> f64 {
    path.h_high.min(profile.ceiling).max(path.h_low)
}

pub fn turbulence_moments(profile: &TurbulenceProfile, path: &SlantPath) -> Result<TurbulenceMoments> {
    profile.validate()?;
    path.validate()?;
    let (lo, hi) = (path.h_low, upper_limit(profile, path));
    let tol = Tolerance::default();
    let cn2 = integrate(|h| profile.cn2(h), lo, hi, &BREAKPOINTS, tol)?;
    let wind = integrate(|h| profile.cn2(h) * profile.wind(h).powf(5.0 / 3.0), lo, hi, &BREAKPOINTS, tol)?;
    let rytov = integrate(|h| profile.cn2(h) * (h - lo).powf(5.0 / 6.0), lo, hi, &BREAKPOINTS, tol)?;
    let moments = TurbulenceMoments { cn2, wind, rytov };
    if [cn2, wind, rytov].iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical(format!("non-finite turbulence moments {moments:?}")));
    }
    Ok(moments)
}

/// r0 from a precomputed vertical Cn2 integral.
pub fn fried_from_moment(cn2_moment: f64, path: &SlantPath) -> f64 {
    let k = path.wavenumber();
    (0.423 * k * k * path.sec() * cn2_moment).powf(-3.0 / 5.0)
}

/// f_G from a precomputed vertical Cn2 V^(5/3) integral.
pub fn greenwood_from_moment(wind_moment: f64, path: &SlantPath) -> f64 {
    2.31 * path.wavelength.powf(-6.0 / 5.0) * (path.sec() * wind_moment).powf(3.0 / 5.0)
}

/// Plane-wave Rytov variance from a precomputed weighted Cn2 integral.
pub fn rytov_from_moment(rytov_moment: f64, path: &SlantPath) -> f64 {
    2.25 * path.wavenumber().powf(7.0 / 6.0) * path.sec().powf(11.0 / 6.0) * rytov_moment
}

/// Fried coherence length r0 along the slant path, m.
pub fn fried_r0(profile: &TurbulenceProfile, path: &SlantPath) -> Result<f64> {
    let m = turbulence_moments(profile, path)?;
    Ok(fried_from_moment(m.cn2, path))
}

/// Greenwood frequency f_G along the slant path, Hz.
pub fn greenwood_fg(profile: &TurbulenceProfile, path: &SlantPath) -> Result<f64> {
    let m = turbulence_moments(profile, path)?;
    Ok(greenwood_from_moment(m.wind, path))
}

/// Plane-wave Rytov variance reported as scintillation index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scintillation {
    pub si: f64,
    /// Set when `si >= 1`: the weak-fluctuation expression no longer holds.
    pub strong_fluctuation: bool,
}

/// Scintillation index of a downlink received at `path.h_low`.
pub fn scintillation_index(profile: &TurbulenceProfile, path: &SlantPath) -> Result<Scintillation> {
    let m = turbulence_moments(profile, path)?;
    let si = rytov_from_moment(m.rytov, path);
    Ok(Scintillation { si, strong_fluctuation: si >= 1.0 })
}
