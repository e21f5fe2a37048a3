//! Scenario files: sectioned `key = value` text with `#` comments.
//!
//! Keys carry their unit as a suffix (`_km`, `_rad`, `_deg`, `_hz`, ...).
//! Every key is optional; omitted keys take documented defaults and are
//! recorded so reports can list them. Unknown sections or keys are errors.
//!
//! ```text
//! [platforms]
//! transmitter = "leo"            # "leo" | "quasi_static"
//! transmitter_altitude_km = 535.0
//! receiver_altitude_km = 20.0
//!
//! [pointing]
//! levels = ["weak", "moderate", "strong"]
//! ```
//!
//! The syntax is the TOML subset made of tables, scalar keys and flat arrays.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::atmosphere::TurbulenceProfile;
use crate::channel::{LinkBudget, NoiseEnvironment, PointingError, PointingLabel};
use crate::entanglement::log_grid;
use crate::geometry::{PassOptions, PlatformSpec};
use crate::optim::SimplexOptions;
use crate::qkd::{BoundsBox, OptimizerConfig, ProtocolParams, SecurityParams};

/// A malformed or invalid scenario, with the source position when known.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub origin: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{}:{}: {}", self.origin, l, c, self.message),
            _ => write!(f, "{}: {}", self.origin, self.message),
        }
    }
}

const DEFAULT_MARKER: &str = "  # default";

trait Canonical {
    fn canonical(&self) -> String;
}

impl Canonical for f64 {
    fn canonical(&self) -> String {
        format!("{self:?}")
    }
}

impl Canonical for usize {
    fn canonical(&self) -> String {
        self.to_string()
    }
}

impl Canonical for bool {
    fn canonical(&self) -> String {
        self.to_string()
    }
}

impl Canonical for String {
    fn canonical(&self) -> String {
        format!("{self:?}")
    }
}

impl<T: Canonical> Canonical for Vec<T> {
    fn canonical(&self) -> String {
        let items: Vec<String> = self.iter().map(Canonical::canonical).collect();
        format!("[{}]", items.join(", "))
    }
}

macro_rules! sections {
    ($( $sec:ident : $Raw:ident => $Resolved:ident {
        $( $field:ident : $ty:ty = $default:expr ),* $(,)?
    } )*) => {
        $(
            #[derive(Debug, Default, Deserialize)]
            #[serde(deny_unknown_fields)]
            struct $Raw { $( $field: Option<$ty>, )* }

            #[derive(Debug, Clone, PartialEq)]
            pub struct $Resolved { $( pub $field: $ty, )* }

            impl Default for $Resolved {
                fn default() -> Self {
                    Self { $( $field: $default, )* }
                }
            }

            impl $Raw {
                fn resolve(self, defaults: &mut Vec<String>) -> $Resolved {
                    let base = $Resolved::default();
                    $Resolved {
                        $( $field: match self.$field {
                            Some(v) => v,
                            None => {
                                defaults.push(concat!(stringify!($sec), ".", stringify!($field)).to_string());
                                base.$field.clone()
                            }
                        }, )*
                    }
                }
            }

            impl $Resolved {
                fn entries(&self) -> Vec<(&'static str, String)> {
                    vec![ $( (stringify!($field), self.$field.canonical()), )* ]
                }
            }
        )*

        #[derive(Debug, Default, Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawScenario { $( $sec: Option<$Raw>, )* }

        /// Fully resolved scenario values, one struct per section.
        #[derive(Debug, Clone, PartialEq, Default)]
        pub struct Settings { $( pub $sec: $Resolved, )* }

        impl RawScenario {
            fn resolve(self, defaults: &mut Vec<String>) -> Settings {
                Settings { $( $sec: self.$sec.unwrap_or_default().resolve(defaults), )* }
            }
        }

        impl Settings {
            fn sections(&self) -> Vec<(&'static str, Vec<(&'static str, String)>)> {
                vec![ $( (stringify!($sec), self.$sec.entries()), )* ]
            }
        }
    };
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

sections! {
    platforms: RawPlatforms => Platforms {
        transmitter: String = "leo".into(),
        transmitter_altitude_km: f64 = 535.0,
        receiver_altitude_km: f64 = 20.0,
    }
    pass: RawPass => Pass {
        max_elevation_deg: f64 = 90.0,
        sample_interval_s: f64 = 1.0,
        horizon_elevation_deg: f64 = 10.0,
        link_zenith_deg: f64 = 40.0,
        duration_s: f64 = 200.0,
    }
    link: RawLink => Link {
        wavelength_nm: f64 = 810.0,
        divergence_rad: f64 = 33e-6,
        tx_aperture_m: f64 = 0.09,
        rx_aperture_m: f64 = 0.35,
        eta_tx: f64 = 0.8,
        eta_rx: f64 = 0.8,
        eta_det: f64 = 0.5,
        eta_atm: f64 = 1.0,
    }
    pointing: RawPointing => Pointing {
        sigma_rad: f64 = PointingError::WEAK_SIGMA,
        weak_rad: f64 = PointingError::WEAK_SIGMA,
        moderate_rad: f64 = PointingError::MODERATE_SIGMA,
        strong_rad: f64 = PointingError::STRONG_SIGMA,
        levels: Vec<String> = strings(&["weak", "moderate", "strong"]),
    }
    noise: RawNoise => Noise {
        radiance_w_m2_nm_sr: f64 = 0.0,
        fov_sr: f64 = 1e-8,
        filter_nm: f64 = 1.0,
        gate_s: f64 = 1e-9,
        dark_count_hz: f64 = 200.0,
    }
    turbulence: RawTurbulence => Turbulence {
        ground_cn2_m23: f64 = 1.7e-14,
        rms_wind_m_s: f64 = 21.0,
        ground_wind_m_s: f64 = 5.0,
        ceiling_km: f64 = 30.0,
    }
    protocol: RawProtocol => Protocol {
        source_rate_hz: f64 = 2e8,
        mu1: f64 = 0.8,
        mu2: f64 = 0.1,
        mu3: f64 = 0.0,
        p1: f64 = 0.7,
        p2: f64 = 0.2,
        px: f64 = 0.7,
        optimize: bool = true,
    }
    security: RawSecurity => Security {
        eps_sec: f64 = 1e-9,
        eps_cor: f64 = 1e-15,
        f_ec: f64 = 1.16,
        e_intrinsic: f64 = 0.01,
    }
    optimizer: RawOptimizer => Optimizer {
        mu1_range: Vec<f64> = vec![0.2, 1.0],
        mu2_range: Vec<f64> = vec![0.02, 0.5],
        px_range: Vec<f64> = vec![0.5, 0.95],
        p1_range: Vec<f64> = vec![0.1, 0.9],
        p2_range: Vec<f64> = vec![0.05, 0.6],
        grid_points: usize = 5,
        starts: usize = 3,
        rel_tol: f64 = 1e-3,
        max_iterations: usize = 400,
    }
    entanglement: RawEntanglement => Entanglement {
        pair_rate_hz: f64 = 1e8,
        pair_mean: f64 = 0.1,
    }
    sweep: RawSweep => Sweep {
        dt_s: Vec<f64> = (1..=10).map(|i| 10.0 * i as f64).collect(),
        radiance_min: f64 = 1e-7,
        radiance_max: f64 = 1e-1,
        radiance_points: usize = 25,
        radiance_include_zero: bool = false,
        divergences_rad: Vec<f64> = vec![33e-6, 1e-3],
        zenith_min_deg: f64 = 0.0,
        zenith_max_deg: f64 = 80.0,
        zenith_step_deg: f64 = 1.0,
        wavelengths_nm: Vec<f64> = vec![810.0, 1550.0],
    }
}

/// A parsed, validated scenario with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub settings: Settings,
    /// `section.key` of every value taken from defaults, in declaration order.
    pub defaults_applied: Vec<String>,
    pub warnings: Vec<String>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario::parse_str("", "<defaults>").expect("defaults are valid")
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Position of `key` inside `[section]`, 1-based.
fn locate(src: &str, section: &str, key: &str) -> Option<(usize, usize)> {
    let mut current = String::new();
    for (i, line) in src.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix('[') {
            current = rest.split(']').next().unwrap_or("").trim().to_string();
            continue;
        }
        if current == section {
            if let Some(rest) = trimmed.strip_prefix(key) {
                if rest.trim_start().starts_with('=') {
                    return Some((i + 1, line.len() - trimmed.len() + 1));
                }
            }
        }
    }
    None
}

struct Checker<'a> {
    src: &'a str,
    origin: &'a str,
}

impl Checker<'_> {
    fn check(&self, ok: bool, section: &str, key: &str, msg: &str) -> Result<(), ConfigError> {
        if ok {
            return Ok(());
        }
        let pos = locate(self.src, section, key);
        Err(ConfigError {
            origin: self.origin.to_string(),
            line: pos.map(|p| p.0),
            column: pos.map(|p| p.1),
            message: format!("{section}.{key}: {msg}"),
        })
    }
}

fn in_unit(v: f64) -> bool {
    v > 0.0 && v <= 1.0
}

fn valid_range(r: &[f64]) -> bool {
    r.len() == 2 && r[0] > 0.0 && r[0] <= r[1] && r[1].is_finite()
}

fn validate(s: &Settings, c: &Checker<'_>) -> Result<Vec<String>, ConfigError> {
    let mut warnings = Vec::new();

    let p = &s.platforms;
    c.check(matches!(p.transmitter.as_str(), "leo" | "quasi_static"), "platforms", "transmitter", "expected \"leo\" or \"quasi_static\"")?;
    c.check(p.receiver_altitude_km >= 0.0, "platforms", "receiver_altitude_km", "must be >= 0")?;
    c.check(p.transmitter_altitude_km > p.receiver_altitude_km, "platforms", "transmitter_altitude_km", "must exceed receiver altitude")?;

    let ps = &s.pass;
    c.check(ps.max_elevation_deg > 0.0 && ps.max_elevation_deg <= 90.0, "pass", "max_elevation_deg", "must lie in (0, 90]")?;
    c.check(ps.sample_interval_s > 0.0, "pass", "sample_interval_s", "must be > 0")?;
    c.check((0.0..90.0).contains(&ps.horizon_elevation_deg), "pass", "horizon_elevation_deg", "must lie in [0, 90)")?;
    c.check(ps.max_elevation_deg >= ps.horizon_elevation_deg, "pass", "max_elevation_deg", "must be >= horizon elevation")?;
    c.check((0.0..90.0).contains(&ps.link_zenith_deg), "pass", "link_zenith_deg", "must lie in [0, 90)")?;
    c.check(ps.duration_s > 0.0, "pass", "duration_s", "must be > 0")?;

    let l = &s.link;
    c.check(l.wavelength_nm > 0.0, "link", "wavelength_nm", "must be > 0")?;
    c.check(l.divergence_rad > 0.0, "link", "divergence_rad", "must be > 0")?;
    c.check(l.tx_aperture_m > 0.0, "link", "tx_aperture_m", "must be > 0")?;
    c.check(l.rx_aperture_m > 0.0, "link", "rx_aperture_m", "must be > 0")?;
    for (key, v) in [("eta_tx", l.eta_tx), ("eta_rx", l.eta_rx), ("eta_det", l.eta_det), ("eta_atm", l.eta_atm)] {
        c.check(in_unit(v), "link", key, "must lie in (0, 1]")?;
    }

    let pt = &s.pointing;
    for (key, v) in [("sigma_rad", pt.sigma_rad), ("weak_rad", pt.weak_rad), ("moderate_rad", pt.moderate_rad), ("strong_rad", pt.strong_rad)] {
        c.check(v >= 0.0 && v.is_finite(), "pointing", key, "must be >= 0")?;
    }
    c.check(!pt.levels.is_empty(), "pointing", "levels", "must not be empty")?;
    for level in &pt.levels {
        c.check(
            matches!(level.as_str(), "weak" | "moderate" | "strong" | "custom"),
            "pointing",
            "levels",
            &format!("unknown level {level:?}"),
        )?;
    }
    if !(pt.weak_rad <= pt.moderate_rad && pt.moderate_rad <= pt.strong_rad) {
        warnings.push("pointing levels are not ordered weak <= moderate <= strong".to_string());
    }

    let n = &s.noise;
    for (key, v) in [
        ("radiance_w_m2_nm_sr", n.radiance_w_m2_nm_sr),
        ("fov_sr", n.fov_sr),
        ("filter_nm", n.filter_nm),
        ("gate_s", n.gate_s),
        ("dark_count_hz", n.dark_count_hz),
    ] {
        c.check(v >= 0.0 && v.is_finite(), "noise", key, "must be >= 0")?;
    }

    let t = &s.turbulence;
    c.check(t.ground_cn2_m23 > 0.0, "turbulence", "ground_cn2_m23", "must be > 0")?;
    c.check(t.rms_wind_m_s > 0.0, "turbulence", "rms_wind_m_s", "must be > 0")?;
    c.check(t.ground_wind_m_s >= 0.0, "turbulence", "ground_wind_m_s", "must be >= 0")?;
    c.check(t.ceiling_km > 0.0, "turbulence", "ceiling_km", "must be > 0")?;

    let pr = &s.protocol;
    c.check(pr.source_rate_hz > 0.0, "protocol", "source_rate_hz", "must be > 0")?;
    c.check(pr.mu3 >= 0.0, "protocol", "mu3", "must be >= 0")?;
    c.check(pr.mu1 > pr.mu2 && pr.mu2 > pr.mu3 && pr.mu1 > pr.mu2 + pr.mu3, "protocol", "mu1", "intensities must satisfy mu1 > mu2 + mu3, mu2 > mu3")?;
    c.check(pr.p1 > 0.0 && pr.p2 > 0.0 && pr.p1 + pr.p2 < 1.0, "protocol", "p1", "need p1, p2 > 0 and p1 + p2 < 1")?;
    c.check(pr.px > 0.0 && pr.px < 1.0, "protocol", "px", "must lie in (0, 1)")?;

    let se = &s.security;
    c.check(se.eps_sec > 0.0 && se.eps_sec < 1.0, "security", "eps_sec", "must lie in (0, 1)")?;
    c.check(se.eps_cor > 0.0 && se.eps_cor < 1.0, "security", "eps_cor", "must lie in (0, 1)")?;
    c.check(se.f_ec >= 1.0, "security", "f_ec", "must be >= 1")?;
    c.check((0.0..0.5).contains(&se.e_intrinsic), "security", "e_intrinsic", "must lie in [0, 0.5)")?;

    let o = &s.optimizer;
    for (key, r) in [
        ("mu1_range", &o.mu1_range),
        ("mu2_range", &o.mu2_range),
        ("px_range", &o.px_range),
        ("p1_range", &o.p1_range),
        ("p2_range", &o.p2_range),
    ] {
        c.check(valid_range(r), "optimizer", key, "expected [lo, hi] with 0 < lo <= hi")?;
    }
    for (key, r) in [("px_range", &o.px_range), ("p1_range", &o.p1_range), ("p2_range", &o.p2_range)] {
        c.check(r[1] < 1.0, "optimizer", key, "probabilities must stay below 1")?;
    }
    c.check(o.grid_points >= 2, "optimizer", "grid_points", "must be >= 2")?;
    c.check(o.starts >= 1, "optimizer", "starts", "must be >= 1")?;
    c.check(o.rel_tol > 0.0, "optimizer", "rel_tol", "must be > 0")?;
    c.check(o.max_iterations >= 1, "optimizer", "max_iterations", "must be >= 1")?;

    let e = &s.entanglement;
    c.check(e.pair_rate_hz >= 0.0, "entanglement", "pair_rate_hz", "must be >= 0")?;
    c.check(e.pair_mean > 0.0, "entanglement", "pair_mean", "must be > 0")?;

    let sw = &s.sweep;
    c.check(!sw.dt_s.is_empty() && sw.dt_s.iter().all(|v| *v > 0.0), "sweep", "dt_s", "must be a non-empty list of positive values")?;
    c.check(sw.dt_s.windows(2).all(|w| w[1] > w[0]), "sweep", "dt_s", "must be strictly increasing")?;
    c.check(sw.radiance_min > 0.0, "sweep", "radiance_min", "must be > 0")?;
    c.check(sw.radiance_max >= sw.radiance_min, "sweep", "radiance_max", "must be >= radiance_min")?;
    c.check(sw.radiance_points >= 1, "sweep", "radiance_points", "must be >= 1")?;
    c.check(
        !sw.divergences_rad.is_empty() && sw.divergences_rad.iter().all(|v| *v > 0.0),
        "sweep",
        "divergences_rad",
        "must be a non-empty list of positive values",
    )?;
    c.check((0.0..90.0).contains(&sw.zenith_min_deg), "sweep", "zenith_min_deg", "must lie in [0, 90)")?;
    c.check(
        (0.0..90.0).contains(&sw.zenith_max_deg) && sw.zenith_max_deg >= sw.zenith_min_deg,
        "sweep",
        "zenith_max_deg",
        "must lie in [zenith_min_deg, 90)",
    )?;
    c.check(sw.zenith_step_deg > 0.0, "sweep", "zenith_step_deg", "must be > 0")?;
    c.check(
        !sw.wavelengths_nm.is_empty() && sw.wavelengths_nm.iter().all(|v| *v > 0.0),
        "sweep",
        "wavelengths_nm",
        "must be a non-empty list of positive values",
    )?;

    Ok(warnings)
}

impl Scenario {
    pub fn parse_str(src: &str, origin: &str) -> Result<Self, ConfigError> {
        let raw: RawScenario = toml::from_str(src).map_err(|e| {
            let pos = e.span().map(|s| line_col(src, s.start));
            ConfigError {
                origin: origin.to_string(),
                line: pos.map(|p| p.0),
                column: pos.map(|p| p.1),
                message: e.message().trim().to_string(),
            }
        })?;
        let mut defaults_applied = Vec::new();
        let settings = raw.resolve(&mut defaults_applied);
        let warnings = validate(&settings, &Checker { src, origin })?;
        Ok(Self { settings, defaults_applied, warnings })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let origin = path.display().to_string();
        let src = std::fs::read_to_string(path).map_err(|e| ConfigError {
            origin: origin.clone(),
            line: None,
            column: None,
            message: e.to_string(),
        })?;
        Self::parse_str(&src, &origin)
    }

    /// Canonical text of the resolved values. With `mark_defaults`, keys that
    /// came from defaults carry a trailing `# default` comment.
    pub fn canonical_text(&self, mark_defaults: bool) -> String {
        let mut out = String::new();
        for (i, (section, entries)) in self.settings.sections().into_iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{section}]\n"));
            for (key, value) in entries {
                out.push_str(&format!("{key} = {value}"));
                if mark_defaults && self.defaults_applied.iter().any(|d| *d == format!("{section}.{key}")) {
                    out.push_str(DEFAULT_MARKER);
                }
                out.push('\n');
            }
        }
        out
    }

    /// Content hash of the resolved scenario, independent of which values
    /// were written explicitly.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_text(false).as_bytes());
        let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }

    /// Rebuilds a scenario from the `# scenario:` metadata lines of a report.
    /// Values marked `# default` are left out so they resolve as defaults
    /// again and the replayed report carries the same markers.
    pub fn from_report(text: &str) -> Result<Self, ConfigError> {
        let src: String = text
            .lines()
            .filter_map(|l| l.strip_prefix(crate::report::SCENARIO_PREFIX))
            .filter(|l| !l.ends_with(DEFAULT_MARKER))
            .map(|l| format!("{l}\n"))
            .collect();
        Self::parse_str(&src, "<report metadata>")
    }

    pub fn transmitter(&self) -> PlatformSpec {
        let alt = self.settings.platforms.transmitter_altitude_km * 1e3;
        match self.settings.platforms.transmitter.as_str() {
            "leo" => PlatformSpec::leo(alt),
            _ => PlatformSpec::quasi_static(alt),
        }
    }

    pub fn receiver(&self) -> PlatformSpec {
        PlatformSpec::quasi_static(self.settings.platforms.receiver_altitude_km * 1e3)
    }

    pub fn pass_options(&self) -> PassOptions {
        let p = &self.settings.pass;
        PassOptions {
            max_elevation: p.max_elevation_deg.to_radians(),
            sample_interval: p.sample_interval_s,
            horizon_elevation: p.horizon_elevation_deg.to_radians(),
        }
    }

    /// Link budget with the scenario's `pointing.sigma_rad`.
    pub fn link_budget(&self) -> LinkBudget {
        let l = &self.settings.link;
        LinkBudget {
            wavelength: l.wavelength_nm * 1e-9,
            divergence_full: l.divergence_rad,
            tx_aperture: l.tx_aperture_m,
            rx_aperture: l.rx_aperture_m,
            pointing_sigma: self.settings.pointing.sigma_rad,
            eta_tx: l.eta_tx,
            eta_rx: l.eta_rx,
            eta_det: l.eta_det,
            eta_atm: l.eta_atm,
        }
    }

    /// Pointing levels to sweep, in the order listed.
    pub fn pointing_levels(&self) -> Vec<PointingError> {
        let p = &self.settings.pointing;
        p.levels
            .iter()
            .map(|l| match l.as_str() {
                "weak" => PointingError { label: PointingLabel::Weak, sigma: p.weak_rad },
                "moderate" => PointingError { label: PointingLabel::Moderate, sigma: p.moderate_rad },
                "strong" => PointingError { label: PointingLabel::Strong, sigma: p.strong_rad },
                _ => PointingError::custom(p.sigma_rad),
            })
            .collect()
    }

    pub fn noise(&self) -> NoiseEnvironment {
        let n = &self.settings.noise;
        NoiseEnvironment {
            spectral_radiance: n.radiance_w_m2_nm_sr,
            fov: n.fov_sr,
            filter_bandwidth: n.filter_nm,
            gate_time: n.gate_s,
            dark_count_rate: n.dark_count_hz,
        }
    }

    pub fn turbulence(&self) -> TurbulenceProfile {
        let t = &self.settings.turbulence;
        TurbulenceProfile {
            ground_cn2: t.ground_cn2_m23,
            rms_wind: t.rms_wind_m_s,
            ground_wind: t.ground_wind_m_s,
            slew_rate: 0.0,
            ceiling: t.ceiling_km * 1e3,
        }
    }

    pub fn protocol(&self) -> ProtocolParams {
        let p = &self.settings.protocol;
        ProtocolParams::new(p.mu1, p.mu2, p.mu3, p.p1, p.p2, p.px, p.source_rate_hz)
    }

    pub fn security(&self) -> SecurityParams {
        let s = &self.settings.security;
        SecurityParams { eps_sec: s.eps_sec, eps_cor: s.eps_cor, f_ec: s.f_ec, e_intrinsic: s.e_intrinsic }
    }

    pub fn bounds_box(&self) -> BoundsBox {
        let o = &self.settings.optimizer;
        let r = |v: &Vec<f64>| (v[0], v[1]);
        BoundsBox { mu1: r(&o.mu1_range), mu2: r(&o.mu2_range), px: r(&o.px_range), p1: r(&o.p1_range), p2: r(&o.p2_range) }
    }

    pub fn optimizer_config(&self) -> OptimizerConfig {
        let o = &self.settings.optimizer;
        OptimizerConfig {
            grid_points: o.grid_points,
            starts: o.starts,
            simplex: SimplexOptions { rel_tol: o.rel_tol, max_iterations: o.max_iterations, ..Default::default() },
        }
    }

    pub fn radiance_grid(&self) -> Vec<f64> {
        let s = &self.settings.sweep;
        let mut grid = Vec::with_capacity(s.radiance_points + 1);
        if s.radiance_include_zero {
            grid.push(0.0);
        }
        grid.extend(log_grid(s.radiance_min, s.radiance_max, s.radiance_points));
        grid
    }

    /// Zenith angles in degrees from `zenith_min_deg` to `zenith_max_deg`.
    pub fn zenith_grid_deg(&self) -> Vec<f64> {
        let s = &self.settings.sweep;
        let n = ((s.zenith_max_deg - s.zenith_min_deg) / s.zenith_step_deg + 1e-9).floor() as usize;
        (0..=n).map(|i| s.zenith_min_deg + i as f64 * s.zenith_step_deg).collect()
    }
}
