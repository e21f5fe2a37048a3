//! Scenario-driven studies. Each runner resolves the scenario into model
//! inputs, evaluates its sweep and returns a [`StudyReport`].
//!
//! Sweep points may run on a worker pool; rows are always emitted in sweep
//! order, so output does not depend on the thread count.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::atmosphere::{fried_from_moment, greenwood_from_moment, rytov_from_moment, turbulence_moments, SlantPath};
use crate::channel::{link_timeseries, LinkRecord, PointingError};
use crate::entanglement::{dual_link_fidelity, DownlinkArm, DualDownlink};
use crate::error::{Error, Result};
use crate::geometry::{propagate_pass, short_range_path, slant_range, PassGeometry, PassOptions, PlatformKind, EARTH_RADIUS};
use crate::qkd::{optimize_params, simulate_tallies, skl, OptimizedParams};
use crate::report::{format_number, Cell, StudyReport};
use crate::scenario::Scenario;

pub const PASS_COLUMNS: [&str; 5] = ["t_s", "elevation_deg", "range_km", "slew_rad_s", "eta_sys_db"];
pub const SKL_COLUMNS: [&str; 10] = ["dt_s", "pe_label", "skl_bits", "qber", "phase_err", "mu1", "mu2", "px", "p1", "p2"];
pub const FIDELITY_COLUMNS: [&str; 6] = ["radiance", "pe_label", "divergence_rad", "fidelity", "q_a", "q_b"];
pub const TURBULENCE_COLUMNS: [&str; 5] = ["zenith_deg", "wavelength_nm", "greenwood_hz", "fried_m", "si"];

/// Maps `f` over `items` on a pool of `threads` workers (0 = one per core)
/// and returns the results in input order. The first failing item in input
/// order wins, independent of scheduling.
fn ordered_map<T, R, F>(threads: usize, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<R>> = pool.install(|| items.par_iter().map(&f).collect());
    results.into_iter().collect()
}

/// The pass (LEO transmitter) or held link (quasi-static transmitter) the
/// scenario describes.
pub fn scenario_pass(sc: &Scenario) -> Result<PassGeometry> {
    let tx = sc.transmitter();
    let rx = sc.receiver();
    match tx.kind {
        PlatformKind::LeoOrbiter => propagate_pass(&tx, &rx, &sc.pass_options()),
        PlatformKind::QuasiStatic => {
            let p = &sc.settings.pass;
            let zenith = p.link_zenith_deg.to_radians();
            let range = short_range_path(zenith, tx.altitude, rx.altitude)?;
            PassGeometry::stationary(FRAC_PI_2 - zenith, range, p.duration_s, p.sample_interval_s)
        }
    }
}

/// Transmitter-receiver distance at the scenario's link zenith angle.
pub fn link_range(sc: &Scenario) -> Result<f64> {
    let tx = sc.transmitter();
    let rx = sc.receiver();
    let zenith = sc.settings.pass.link_zenith_deg.to_radians();
    match tx.kind {
        PlatformKind::LeoOrbiter => slant_range(FRAC_PI_2 - zenith, tx.altitude, rx.altitude, EARTH_RADIUS),
        PlatformKind::QuasiStatic => short_range_path(zenith, tx.altitude, rx.altitude),
    }
}

/// Pass samples with the link budget at `pointing.sigma_rad`.
pub fn run_pass(sc: &Scenario) -> Result<StudyReport> {
    let pass = scenario_pass(sc)?;
    let link = link_timeseries(&pass, &sc.link_budget(), &sc.noise())?;
    let mut report = StudyReport::new("pass", sc, &PASS_COLUMNS);
    for (s, r) in pass.samples().iter().zip(&link) {
        report.push_row(vec![
            s.t.into(),
            s.elevation.to_degrees().into(),
            (s.range / 1e3).into(),
            s.slew_rate.into(),
            (10.0 * r.eta_sys.log10()).into(),
        ]);
    }
    Ok(report)
}

fn skl_point(sc: &Scenario, link: &[LinkRecord], interval: f64, dt: f64) -> Result<OptimizedParams> {
    let security = sc.security();
    let base = sc.protocol();
    if sc.settings.protocol.optimize {
        return optimize_params(link, interval, dt, &security, &base, &sc.bounds_box(), &sc.optimizer_config());
    }
    let tallies = simulate_tallies(&base, link, interval, dt, security.e_intrinsic)?;
    let result = skl(&tallies, &base, &security)?;
    Ok(OptimizedParams { params: base, result, grid_best_skl: result.skl })
}

/// Secret-key length per half-window `dt_s` and pointing level.
pub fn run_skl(sc: &Scenario, threads: usize) -> Result<StudyReport> {
    let pass = scenario_pass(sc)?;
    let interval = pass.sample_interval().ok_or_else(|| Error::domain("pass has fewer than two samples"))?;
    let levels = sc.pointing_levels();
    let links: Vec<Vec<LinkRecord>> = levels
        .iter()
        .map(|pe| link_timeseries(&pass, &sc.link_budget().with_pointing(*pe), &sc.noise()))
        .collect::<Result<_>>()?;

    let jobs: Vec<(f64, usize)> = sc
        .settings
        .sweep
        .dt_s
        .iter()
        .flat_map(|&dt| (0..levels.len()).map(move |i| (dt, i)))
        .collect();
    let results = ordered_map(threads, &jobs, |&(dt, i)| {
        skl_point(sc, &links[i], interval, dt)
            .map_err(|e| e.at_point(format!("dt_s={} pe_label={}", format_number(dt), levels[i].label)))
    })?;

    let mut report = StudyReport::new("skl", sc, &SKL_COLUMNS);
    for (&(dt, i), r) in jobs.iter().zip(results) {
        let p = r.params;
        report.push_row(vec![
            dt.into(),
            levels[i].label.as_str().into(),
            r.result.skl.into(),
            r.result.qber_key_basis.into(),
            r.result.phase_error_bound.into(),
            p.mu1.into(),
            p.mu2.into(),
            p.px.into(),
            p.p1.into(),
            p.p2.into(),
        ]);
    }
    Ok(report)
}

/// Entanglement fidelity per divergence, pointing level and sky radiance,
/// with both receivers at the scenario's link geometry.
pub fn run_fidelity(sc: &Scenario, threads: usize) -> Result<StudyReport> {
    let range = link_range(sc)?;
    let levels = sc.pointing_levels();
    let radiance = sc.radiance_grid();
    let ent = &sc.settings.entanglement;

    let mut jobs: Vec<(f64, PointingError, f64)> = Vec::new();
    for &div in &sc.settings.sweep.divergences_rad {
        for pe in &levels {
            for &h in &radiance {
                jobs.push((div, *pe, h));
            }
        }
    }
    let results = ordered_map(threads, &jobs, |&(div, pe, h)| {
        let budget = sc.link_budget().with_pointing(pe);
        let arm = DownlinkArm {
            budget: crate::channel::LinkBudget { divergence_full: div, ..budget },
            range,
            noise: sc.noise().with_radiance(h),
        };
        dual_link_fidelity(&DualDownlink::symmetric(arm, ent.pair_rate_hz, ent.pair_mean)).map_err(|e| {
            e.at_point(format!(
                "radiance={} pe_label={} divergence_rad={}",
                format_number(h),
                pe.label,
                format_number(div)
            ))
        })
    })?;

    let mut report = StudyReport::new("fidelity", sc, &FIDELITY_COLUMNS);
    for (&(div, pe, h), r) in jobs.iter().zip(results) {
        report.push_row(vec![
            h.into(),
            pe.label.as_str().into(),
            div.into(),
            r.fidelity.into(),
            r.q_a.into(),
            r.q_b.into(),
        ]);
    }
    Ok(report)
}

/// Greenwood frequency, Fried length and scintillation index per wavelength
/// and zenith angle, on the path between the scenario's platforms.
///
/// For a LEO transmitter the wind profile includes the line-of-sight slew at
/// each zenith angle, read from the descending half of the scenario pass
/// extended down to 0 deg elevation.
pub fn run_turbulence(sc: &Scenario, threads: usize) -> Result<StudyReport> {
    let tx = sc.transmitter();
    let rx = sc.receiver();
    let profile = sc.turbulence();
    let zeniths = sc.zenith_grid_deg();
    let pass = match tx.kind {
        PlatformKind::LeoOrbiter => {
            let opts = PassOptions { horizon_elevation: 0.0, ..sc.pass_options() };
            Some(propagate_pass(&tx, &rx, &opts)?)
        }
        PlatformKind::QuasiStatic => None,
    };

    // The moments do not depend on wavelength, so each zenith is integrated once.
    let moments = ordered_map(threads, &zeniths, |&z| {
        let point = || format!("zenith_deg={}", format_number(z));
        let slew = match &pass {
            Some(p) => p
                .slew_at_elevation((90.0 - z).to_radians())
                .ok_or_else(|| Error::domain("zenith below the pass horizon").at_point(point()))?,
            None => 0.0,
        };
        let path = SlantPath { zenith: z.to_radians(), h_low: rx.altitude, h_high: tx.altitude, wavelength: 1.0 };
        turbulence_moments(&profile.with_slew_rate(slew), &path).map_err(|e| e.at_point(point()))
    })?;

    let mut report = StudyReport::new("turbulence", sc, &TURBULENCE_COLUMNS);
    for &wl in &sc.settings.sweep.wavelengths_nm {
        for (&z, m) in zeniths.iter().zip(&moments) {
            let path = SlantPath { zenith: z.to_radians(), h_low: rx.altitude, h_high: tx.altitude, wavelength: wl * 1e-9 };
            let si = rytov_from_moment(m.rytov, &path);
            if si >= 1.0 {
                report.warnings.push(format!(
                    "strong fluctuation at zenith_deg={} wavelength_nm={}: si={}",
                    format_number(z),
                    format_number(wl),
                    format_number(si)
                ));
            }
            let row: Vec<Cell> = vec![
                z.into(),
                wl.into(),
                greenwood_from_moment(m.wind, &path).into(),
                fried_from_moment(m.cn2, &path).into(),
                si.into(),
            ];
            if row.iter().any(|c| c.as_f64().is_some_and(|v| !v.is_finite())) {
                return Err(Error::numerical("non-finite turbulence metric")
                    .at_point(format!("zenith_deg={} wavelength_nm={}", format_number(z), format_number(wl))));
            }
            report.push_row(row);
        }
    }
    Ok(report)
}

/// Runs a study by name: `pass`, `skl`, `fidelity` or `turbulence`.
pub fn run_study(name: &str, sc: &Scenario, threads: usize) -> Result<StudyReport> {
    match name {
        "pass" => run_pass(sc),
        "skl" => run_skl(sc, threads),
        "fidelity" => run_fidelity(sc, threads),
        "turbulence" => run_turbulence(sc, threads),
        other => Err(Error::domain(format!("unknown study {other:?}"))),
    }
}
