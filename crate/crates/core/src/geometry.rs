//! Pass geometry between an orbiting transmitter and a quasi-static station.
//!
//! The Earth is a non-rotating sphere of radius [`EARTH_RADIUS`]. Orbits are
//! circular; a pass is parameterised by its maximum elevation, which fixes the
//! cross-track central angle between the station and the orbital plane. All
//! samples are placed on a symmetric grid `t = k * dt` around the epoch of
//! maximum elevation, so `t = 0` is always sampled exactly.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Standard gravitational parameter of the Earth, m^3/s^2.
pub const GM_EARTH: f64 = 3.986004418e14;

/// Mean spherical Earth radius, m.
pub const EARTH_RADIUS: f64 = 6_371_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlatformKind {
    LeoOrbiter,
    /// HAPS, LAPS and ground stations.
    QuasiStatic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatformSpec {
    /// Altitude above mean sea level, m.
    pub altitude: f64,
    pub kind: PlatformKind,
}

impl PlatformSpec {
    pub fn leo(altitude: f64) -> Self {
        Self { altitude, kind: PlatformKind::LeoOrbiter }
    }

    pub fn quasi_static(altitude: f64) -> Self {
        Self { altitude, kind: PlatformKind::QuasiStatic }
    }
}

/// One time step of a pass. Angles in radians, range in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassSample {
    /// Seconds relative to the maximum-elevation epoch.
    pub t: f64,
    pub elevation: f64,
    pub zenith: f64,
    /// Direction of the line of sight in the station's horizontal plane,
    /// measured from the cross-track axis towards the along-track axis.
    pub azimuth: f64,
    pub range: f64,
    /// Angular rate of the line of sight seen from the station, rad/s.
    pub slew_rate: f64,
}

impl PassSample {
    fn line_of_sight(&self) -> [f64; 3] {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        [se, ce * sa, ce * ca]
    }
}

/// Time-ordered samples of a platform-to-platform pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PassGeometry {
    samples: Vec<PassSample>,
}

impl PassGeometry {
    /// Builds a pass from samples, checking ordering and range positivity.
    /// Slew rates in the input are recomputed from the line-of-sight angles.
    pub fn from_samples(mut samples: Vec<PassSample>) -> Result<Self> {
        if samples.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::domain("pass samples must be strictly increasing in t"));
        }
        if let Some(s) = samples.iter().find(|s| !(s.range > 0.0)) {
            return Err(Error::domain(format!("non-positive range {} at t = {}", s.range, s.t)));
        }
        let rates: Vec<f64> = (0..samples.len())
            .map(|i| los_rate(&samples, i))
            .collect::<Result<_>>()?;
        for (s, r) in samples.iter_mut().zip(rates) {
            s.slew_rate = r;
        }
        Ok(Self { samples })
    }

    /// A quasi-static link held at a fixed elevation and range for
    /// `duration` seconds, centred on `t = 0`.
    pub fn stationary(elevation: f64, range: f64, duration: f64, sample_interval: f64) -> Result<Self> {
        if !(sample_interval > 0.0) || !(duration >= 0.0) {
            return Err(Error::domain("sample interval must be positive and duration non-negative"));
        }
        let half = ((duration / 2.0) / sample_interval).floor().max(1.0) as i64;
        let samples = (-half..=half)
            .map(|k| PassSample {
                t: k as f64 * sample_interval,
                elevation,
                zenith: FRAC_PI_2 - elevation,
                azimuth: 0.0,
                range,
                slew_rate: 0.0,
            })
            .collect();
        Self::from_samples(samples)
    }

    pub fn samples(&self) -> &[PassSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Spacing of the first two samples; all generated passes are uniform.
    pub fn sample_interval(&self) -> Option<f64> {
        match self.samples.as_slice() {
            [a, b, ..] => Some(b.t - a.t),
            _ => None,
        }
    }

    /// Time span `[first t, last t]` covered by the samples.
    pub fn support(&self) -> Option<(f64, f64)> {
        Some((self.samples.first()?.t, self.samples.last()?.t))
    }

    /// Slew rate at a given elevation on the descending half of the pass
    /// (`t >= 0`), linearly interpolated between samples.
    pub fn slew_at_elevation(&self, elevation: f64) -> Option<f64> {
        let descending: Vec<&PassSample> = self.samples.iter().filter(|s| s.t >= 0.0).collect();
        let first = descending.first()?;
        if elevation >= first.elevation {
            return Some(first.slew_rate);
        }
        descending.windows(2).find_map(|w| {
            let (hi, lo) = (w[0], w[1]);
            if elevation <= hi.elevation && elevation >= lo.elevation {
                let span = hi.elevation - lo.elevation;
                let f = if span > 0.0 { (elevation - lo.elevation) / span } else { 0.0 };
                Some(lo.slew_rate + f * (hi.slew_rate - lo.slew_rate))
            } else {
                None
            }
        })
    }
}

/// Slant range on a spherical Earth from a receiver at `h_rx` to a
/// transmitter at `h_tx`, seen at elevation `elevation` from the receiver.
pub fn slant_range(elevation: f64, h_tx: f64, h_rx: f64, earth_radius: f64) -> Result<f64> {
    if !(h_tx > h_rx) || h_rx < 0.0 {
        return Err(Error::domain(format!(
            "slant range needs h_tx > h_rx >= 0 (got h_tx = {h_tx}, h_rx = {h_rx})"
        )));
    }
    if !(0.0..=FRAC_PI_2).contains(&elevation) {
        return Err(Error::domain(format!("elevation {elevation} rad outside [0, pi/2]")));
    }
    let r_tx = earth_radius + h_tx;
    let r_rx = earth_radius + h_rx;
    let (s, c) = elevation.sin_cos();
    if elevation == FRAC_PI_2 {
        return Ok(h_tx - h_rx);
    }
    Ok((r_tx * r_tx - (r_rx * c).powi(2)).sqrt() - r_rx * s)
}

/// Flat-Earth slant path between two altitudes at a given zenith angle.
/// Used for the short (sub-100 km) platform-to-platform links.
pub fn short_range_path(zenith: f64, h_high: f64, h_low: f64) -> Result<f64> {
    if !(0.0..FRAC_PI_2).contains(&zenith) {
        return Err(Error::domain(format!("zenith {zenith} rad outside [0, pi/2)")));
    }
    if !(h_high > h_low) {
        return Err(Error::domain("short range path needs h_high > h_low"));
    }
    Ok((h_high - h_low) / zenith.cos())
}

/// Options controlling [`propagate_pass`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassOptions {
    pub max_elevation: f64,
    pub sample_interval: f64,
    pub horizon_elevation: f64,
}

impl Default for PassOptions {
    fn default() -> Self {
        Self {
            max_elevation: FRAC_PI_2,
            sample_interval: 1.0,
            horizon_elevation: 10f64.to_radians(),
        }
    }
}

/// Earth central angle between station and sub-satellite point when the
/// satellite is seen at `elevation`.
fn central_angle_at(elevation: f64, r_orbit: f64, r_station: f64) -> f64 {
    (r_station * elevation.cos() / r_orbit).acos() - elevation
}

/// Samples a circular-orbit pass over `station` between the two crossings of
/// `horizon_elevation`.
pub fn propagate_pass(orbiter: &PlatformSpec, station: &PlatformSpec, opts: &PassOptions) -> Result<PassGeometry> {
    if orbiter.kind != PlatformKind::LeoOrbiter {
        return Err(Error::domain("pass propagation needs a LEO orbiter as transmitter"));
    }
    if !(orbiter.altitude > station.altitude) || station.altitude < 0.0 {
        return Err(Error::domain("orbiter must be above the station"));
    }
    if !(opts.sample_interval > 0.0) {
        return Err(Error::domain("sample interval must be positive"));
    }
    let max_el = opts.max_elevation;
    if !(0.0..=FRAC_PI_2).contains(&max_el) || max_el < opts.horizon_elevation {
        return Err(Error::domain(format!(
            "maximum elevation {:.4} deg is unreachable above horizon {:.4} deg",
            max_el.to_degrees(),
            opts.horizon_elevation.to_degrees()
        )));
    }

    let r_orbit = EARTH_RADIUS + orbiter.altitude;
    let r_station = EARTH_RADIUS + station.altitude;
    let omega = (GM_EARTH / r_orbit.powi(3)).sqrt();

    let cross_track = central_angle_at(max_el, r_orbit, r_station);
    let horizon_angle = central_angle_at(opts.horizon_elevation, r_orbit, r_station);
    let ratio = (horizon_angle.cos() / cross_track.cos()).min(1.0);
    let half_duration = ratio.acos() / omega;
    let half_steps = (half_duration / opts.sample_interval).floor() as i64;

    let (sb, cb) = cross_track.sin_cos();
    let samples = (-half_steps..=half_steps)
        .map(|k| {
            let t = k as f64 * opts.sample_interval;
            let (sg, cg) = (omega * t).sin_cos();
            // Station frame: x up, y along-track, z cross-track.
            let los = [r_orbit * cb * cg - r_station, r_orbit * sg, r_orbit * sb * cg];
            let range = (los[0] * los[0] + los[1] * los[1] + los[2] * los[2]).sqrt();
            let elevation = (los[0] / range).asin();
            PassSample {
                t,
                elevation,
                zenith: FRAC_PI_2 - elevation,
                azimuth: los[1].atan2(los[2]),
                range,
                slew_rate: 0.0,
            }
        })
        .collect();
    PassGeometry::from_samples(samples)
}

fn angle_between(a: [f64; 3], b: [f64; 3]) -> f64 {
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    norm.atan2(dot)
}

fn los_rate(samples: &[PassSample], index: usize) -> Result<f64> {
    let len = samples.len();
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    if len < 3 {
        return Err(Error::domain("slew rate needs at least 3 samples"));
    }
    let (lo, hi) = match index {
        0 => (0, 1),
        i if i == len - 1 => (i - 1, i),
        i => (i - 1, i + 1),
    };
    let a = &samples[lo];
    let b = &samples[hi];
    Ok(angle_between(a.line_of_sight(), b.line_of_sight()) / (b.t - a.t))
}

/// Line-of-sight angular rate at sample `index`: central difference inside
/// the pass, one-sided at the endpoints.
pub fn slew_rate(pass: &PassGeometry, index: usize) -> Result<f64> {
    los_rate(&pass.samples, index)
}
