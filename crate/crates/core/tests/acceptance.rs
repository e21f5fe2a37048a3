//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary (`harness = false`).

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::erf::erf;

use qlink::atmosphere::{turbulence_moments, SlantPath, TurbulenceProfile};
use qlink::channel::{link_timeseries, pointing_transmittance_expected, LinkBudget, LinkRecord};
use qlink::qkd::{
    decoy_bounds_with, optimize_params, simulate_tallies, skl, Basis, FiniteSize, ProtocolParams, SecurityParams,
    TallyCounts,
};
use qlink::report::StudyReport;
use qlink::scenario::Scenario;
use qlink::{studies, svg};

type Outcome = Result<String, String>;

struct Runner {
    failed: usize,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.1} s]"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {name}: {detail} [{secs:.1} s]");
            }
        }
    }

    fn info(&self, name: &str, detail: &str) {
        println!("INFO {name}: {detail}");
    }
}

fn scenario(name: &str) -> Scenario {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "scenarios", name].iter().collect();
    Scenario::load(&path).unwrap_or_else(|e| panic!("{e}"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn text_column(report: &StudyReport, name: &str) -> Vec<String> {
    let i = report.column_index(name).expect("column");
    report.rows.iter().map(|r| r[i].as_text()).collect()
}

fn num_column(report: &StudyReport, name: &str) -> Vec<f64> {
    report.column(name).expect("column")
}

// ---- 1: key length over the LEO-to-HAPS pass

fn skl_at(report: &StudyReport, dt: f64, label: &str) -> f64 {
    let dts = num_column(report, "dt_s");
    let labels = text_column(report, "pe_label");
    let skls = num_column(report, "skl_bits");
    (0..dts.len()).find(|&i| dts[i] == dt && labels[i] == label).map(|i| skls[i]).expect("row")
}

fn skl_band(report: &StudyReport, elapsed: Duration) -> Outcome {
    let dts: Vec<f64> = {
        let mut v = num_column(report, "dt_s");
        v.dedup();
        v
    };
    let weak = skl_at(report, 100.0, "weak");
    ensure((3e5..=9e5).contains(&weak), || format!("weak SKL at dt=100 s is {weak}, outside [3e5, 9e5]"))?;
    for &dt in &dts {
        for label in ["moderate", "strong"] {
            let v = skl_at(report, dt, label);
            ensure(v < 2e5, || format!("{label} SKL at dt={dt} is {v} >= 2e5"))?;
        }
        if dt >= 20.0 {
            let (w, m, s) = (skl_at(report, dt, "weak"), skl_at(report, dt, "moderate"), skl_at(report, dt, "strong"));
            ensure(w > m && m > s, || format!("ordering broken at dt={dt}: {w}, {m}, {s}"))?;
        }
    }
    ensure(elapsed.as_secs_f64() <= 300.0, || format!("runtime {:.1} s > 300 s", elapsed.as_secs_f64()))?;
    Ok(format!(
        "weak {weak:.0}, moderate {:.0}, strong {:.0} bits at dt=100 s; run {:.1} s",
        skl_at(report, 100.0, "moderate"),
        skl_at(report, 100.0, "strong"),
        elapsed.as_secs_f64()
    ))
}

// ---- 2: entanglement fidelity HAPS to two LAPS

struct FidelitySeries {
    radiance: Vec<f64>,
    fidelity: Vec<f64>,
}

fn fidelity_series(report: &StudyReport, label: &str, divergence: f64) -> FidelitySeries {
    let labels = text_column(report, "pe_label");
    let div = num_column(report, "divergence_rad");
    let rad = num_column(report, "radiance");
    let fid = num_column(report, "fidelity");
    let idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label && div[i] == divergence).collect();
    FidelitySeries { radiance: idx.iter().map(|&i| rad[i]).collect(), fidelity: idx.iter().map(|&i| fid[i]).collect() }
}

fn fidelity_checks(sc: &Scenario, report: &StudyReport, elapsed: Duration) -> Outcome {
    let sigma = sc.link_budget().pointing_sigma;
    let label = sc
        .pointing_levels()
        .iter()
        .find(|p| p.sigma == sigma)
        .map(|p| p.label.to_string())
        .ok_or_else(|| format!("no pointing level with sigma {sigma}"))?;
    let narrow = fidelity_series(report, &label, 33e-6);
    let wide = fidelity_series(report, &label, 1e-3);
    ensure(!narrow.radiance.is_empty() && narrow.radiance == wide.radiance, || "grids differ".to_string())?;
    ensure(narrow.radiance.len() == sc.radiance_grid().len(), || "grid incomplete".to_string())?;
    let min = narrow.fidelity.iter().cloned().fold(f64::INFINITY, f64::min);
    ensure(min >= 0.80, || format!("{label} 33 urad min F = {min}"))?;
    for (i, (n, w)) in narrow.fidelity.iter().zip(&wide.fidelity).enumerate() {
        ensure(w < n, || format!("F(1 mrad) = {w} >= F(33 urad) = {n} at H = {}", narrow.radiance[i]))?;
    }
    let levels: Vec<String> = sc.pointing_levels().iter().map(|p| p.label.to_string()).collect();
    for lvl in &levels {
        for d in &sc.settings.sweep.divergences_rad {
            let s = fidelity_series(report, lvl, *d);
            for w in s.fidelity.windows(2) {
                ensure(w[1] <= w[0], || format!("{lvl} {d} rad: F rises from {} to {}", w[0], w[1]))?;
            }
        }
    }
    ensure(elapsed.as_secs_f64() <= 10.0, || format!("runtime {:.2} s > 10 s", elapsed.as_secs_f64()))?;
    Ok(format!(
        "{label}: min F(33 urad) {min:.4}, F(1 mrad) {:.4}..{:.4}; run {:.2} s",
        wide.fidelity.last().unwrap(),
        wide.fidelity[0],
        elapsed.as_secs_f64()
    ))
}

fn fidelity_scintillation(sc: &Scenario) -> Outcome {
    let report = studies::run_turbulence(sc, 1).map_err(|e| e.to_string())?;
    let z = num_column(&report, "zenith_deg");
    let si = num_column(&report, "si");
    let worst = z.iter().zip(&si).filter(|(z, _)| **z <= 70.0).map(|(_, s)| *s).fold(0.0, f64::max);
    ensure(z.iter().any(|&z| z >= 70.0), || "zenith grid stops below 70 deg".to_string())?;
    ensure(worst < 0.5, || format!("max SI for zenith <= 70 deg is {worst}"))?;
    Ok(format!("max SI(zenith <= 70 deg) = {worst:.3}"))
}

// ---- 3: adaptive-optics metrics for the LEO-to-ground downlink

fn by_wavelength(report: &StudyReport, column: &str, wavelength: f64) -> Vec<(f64, f64)> {
    let wl = num_column(report, "wavelength_nm");
    let z = num_column(report, "zenith_deg");
    let v = num_column(report, column);
    (0..wl.len()).filter(|&i| wl[i] == wavelength).map(|i| (z[i], v[i])).collect()
}

fn turbulence_bandwidth(report: &StudyReport) -> Outcome {
    let ir = by_wavelength(report, "greenwood_hz", 1550.0);
    let nir = by_wavelength(report, "greenwood_hz", 810.0);
    ensure(!ir.is_empty() && !nir.is_empty(), || "missing wavelength rows".to_string())?;
    let ir_max = ir.iter().filter(|(z, _)| *z <= 80.0).map(|(_, f)| *f).fold(0.0, f64::max);
    ensure(ir_max <= 1500.0, || format!("f_G(1550) reaches {ir_max} Hz"))?;
    let first_above = nir.iter().find(|(_, f)| *f > 1500.0).map(|(z, _)| *z);
    let last_below = nir.iter().rev().find(|(_, f)| *f <= 1500.0).map(|(z, _)| *z);
    let (Some(above), Some(below)) = (first_above, last_below) else {
        return Err("f_G(810) never crosses 1.5 kHz".to_string());
    };
    ensure(below < above, || "f_G(810) crosses 1.5 kHz more than once".to_string())?;
    ensure(below > 55.0 && above < 70.0, || format!("f_G(810) crosses between {below} and {above} deg"))?;
    Ok(format!("max f_G(1550) {ir_max:.0} Hz; f_G(810) crosses 1.5 kHz between {below} and {above} deg"))
}

fn turbulence_scaling(report: &StudyReport) -> Outcome {
    let expected = (1550.0f64 / 810.0).powf(1.2);
    let fg_nir = by_wavelength(report, "greenwood_hz", 810.0);
    let fg_ir = by_wavelength(report, "greenwood_hz", 1550.0);
    let r0_nir = by_wavelength(report, "fried_m", 810.0);
    let r0_ir = by_wavelength(report, "fried_m", 1550.0);
    let mut worst: f64 = 0.0;
    for i in 0..fg_nir.len() {
        let z = fg_nir[i].0;
        ensure(fg_ir[i].0 == z && r0_nir[i].0 == z && r0_ir[i].0 == z, || "zenith grids differ".to_string())?;
        for ratio in [fg_nir[i].1 / fg_ir[i].1, r0_ir[i].1 / r0_nir[i].1] {
            let rel = (ratio / expected - 1.0).abs();
            worst = worst.max(rel);
            ensure(rel <= 1e-6, || format!("zenith {z}: ratio {ratio} vs {expected}"))?;
        }
    }
    Ok(format!("{} zenith rows, worst relative deviation {worst:.1e}", fg_nir.len()))
}

// ---- 4: oracle equivalences

fn pointing_monte_carlo() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let a = 0.175;
    let mut worst: f64 = 0.0;
    for ratio_a in [0.02, 0.1, 0.3, 0.7, 1.5] {
        for ratio_s in [0.01, 0.1, 0.3, 0.6, 1.0] {
            for range in [10e3, 100e3, 500e3, 1e6, 2e6] {
                let w = a / ratio_a;
                let sigma_d = ratio_s * w;
                let budget = LinkBudget {
                    divergence_full: 2.0 * w / range,
                    rx_aperture: 2.0 * a,
                    pointing_sigma: sigma_d / range,
                    ..Default::default()
                };
                let got = pointing_transmittance_expected(&budget, range).map_err(|e| e.to_string())?;
                let v = (PI / 2.0).sqrt() * a / w;
                let a0 = erf(v).powi(2);
                let weq2 = w * w * PI.sqrt() * erf(v) / (2.0 * v * (-v * v).exp());
                let draws = 1_000_000;
                let sum: f64 = (0..draws)
                    .map(|_| {
                        let x: f64 = StandardNormal.sample(&mut rng);
                        let y: f64 = StandardNormal.sample(&mut rng);
                        (-2.0 * sigma_d * sigma_d * (x * x + y * y) / weq2).exp()
                    })
                    .sum();
                let mc = a0 * sum / draws as f64;
                let rel = (got / mc - 1.0).abs();
                worst = worst.max(rel);
                ensure(rel < 0.01, || format!("a/w={ratio_a} sd/w={ratio_s} L={range}: {got} vs {mc}"))?;
            }
        }
    }
    Ok(format!("125 cells x 1e6 draws, worst relative deviation {worst:.2e}"))
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    h / 3.0 * (f(a) + inner + f(b))
}

fn turbulence_quadrature() -> Outcome {
    let cases = [
        (TurbulenceProfile::default(), 0.0, 535e3),
        (TurbulenceProfile::default().with_slew_rate(0.0147), 20e3, 535e3),
        (TurbulenceProfile { ground_cn2: 1.5e-12, ground_wind: 15.0, ..Default::default() }.with_slew_rate(0.01), 0.0, 535e3),
        (TurbulenceProfile { rms_wind: 15.0, ..Default::default() }, 1e3, 20e3),
    ];
    let mut worst: f64 = 0.0;
    for (profile, h_low, h_high) in cases {
        let path = SlantPath { zenith: 0.7, h_low, h_high, wavelength: 810e-9 };
        let m = turbulence_moments(&profile, &path).map_err(|e| e.to_string())?;
        let top = h_high.min(profile.ceiling);
        let n = ((top - h_low) / 0.1) as usize;
        let refs = [
            simpson(|h| profile.cn2(h), h_low, top, n),
            simpson(|h| profile.cn2(h) * profile.wind(h).powf(5.0 / 3.0), h_low, top, n),
            simpson(|h| profile.cn2(h) * (h - h_low).powf(5.0 / 6.0), h_low, top, n),
        ];
        for (got, want) in [m.cn2, m.wind, m.rytov].into_iter().zip(refs) {
            let rel = (got / want - 1.0).abs();
            worst = worst.max(rel);
            ensure(rel < 1e-3, || format!("h {h_low}..{h_high}: {got} vs {want}"))?;
        }
    }
    Ok(format!("3 moments x 4 paths against 0.1 m Simpson, worst {worst:.1e}"))
}

fn flat(eta: f64, background: f64, half: i64) -> Vec<LinkRecord> {
    (-half..=half).map(|k| LinkRecord { t: k as f64, eta_sys: eta, background }).collect()
}

fn decoy_poisson() -> Outcome {
    let eta = 1e-3;
    let mut worst: f64 = 0.0;
    for (mu1, mu2) in [(0.5, 0.02), (0.4, 0.01), (0.3, 0.02)] {
        let params = ProtocolParams::new(mu1, mu2, 0.0, 0.6, 0.3, 0.7, 1e9);
        let t = simulate_tallies(&params, &flat(eta, 0.0, 10), 1.0, 10.0, 0.0).map_err(|e| e.to_string())?;
        let b = decoy_bounds_with(&t, &params, 1e-9, FiniteSize::Asymptotic);
        for (basis, s1) in [(Basis::X, b.s_x1), (Basis::Z, b.s_z1)] {
            let truth: f64 = (0..3)
                .map(|k| {
                    let mu = params.intensities()[k];
                    t.sent(basis, k) * mu * (-mu).exp() * eta
                })
                .sum();
            let rel = (s1 / truth - 1.0).abs();
            worst = worst.max(rel);
            ensure(rel < 0.01, || format!("mu=({mu1},{mu2}) {basis:?}: {s1} vs {truth}"))?;
        }
    }
    Ok(format!("3 intensity pairs x 2 bases, worst {worst:.2e}"))
}

// ---- 5: finite-key properties

fn zero_transmittance() -> Outcome {
    let params = ProtocolParams::default();
    let sec = SecurityParams::default();
    let t = simulate_tallies(&params, &flat(0.0, 2e-7, 50), 1.0, 50.0, sec.e_intrinsic).map_err(|e| e.to_string())?;
    let r = skl(&t, &params, &sec).map_err(|e| e.to_string())?;
    ensure(r.skl == 0.0, || format!("SKL = {}", r.skl))?;
    Ok("SKL = 0".to_string())
}

fn key_below_detections() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let sec = SecurityParams::default();
    let cases = 2000;
    let mut positive = 0;
    for _ in 0..cases {
        let eta = 10f64.powf(rng.random_range(-7.0..-0.3));
        let background = rng.random_range(0.0..1e-2);
        let mu1 = rng.random_range(0.2..1.0);
        let mu2 = mu1 * rng.random_range(0.05..0.9);
        let p1 = rng.random_range(0.1..0.8);
        let p2 = (1.0 - p1) * rng.random_range(0.05..0.9);
        let px = rng.random_range(0.5..0.95);
        let half = rng.random_range(1..60i64);
        let params = ProtocolParams::new(mu1, mu2, 0.0, p1, p2, px, 10f64.powf(rng.random_range(6.0..9.0)));
        let t = simulate_tallies(&params, &flat(eta, background, half), 1.0, half as f64, sec.e_intrinsic)
            .map_err(|e| e.to_string())?;
        let r = skl(&t, &params, &sec).map_err(|e| e.to_string())?;
        let n_x = t.detected_total(Basis::X);
        ensure(r.skl >= 0.0 && r.skl <= n_x, || format!("SKL {} vs n_X {n_x} for {params:?}", r.skl))?;
        positive += usize::from(r.skl > 0.0);
    }
    Ok(format!("{cases} random channels, {positive} with a positive key"))
}

fn half_error_rate() -> Outcome {
    let sent = [[1e10; 3]; 2];
    let det = [[1e7, 2e6, 1e3]; 2];
    for qber in [0.5, 0.6, 0.9] {
        let errs = [[qber * 1e7, qber * 2e6, 5e2], [1e5, 2e4, 5e2]];
        let t = TallyCounts::from_counts(sent, det, errs).map_err(|e| e.to_string())?;
        let r = skl(&t, &ProtocolParams::default(), &SecurityParams::default()).map_err(|e| e.to_string())?;
        ensure(r.qber_key_basis >= 0.5, || format!("QBER {} below 0.5", r.qber_key_basis))?;
        ensure(r.skl == 0.0, || format!("QBER {}: SKL = {}", r.qber_key_basis, r.skl))?;
    }
    Ok("QBER 0.5, 0.6, 0.9 give SKL = 0".to_string())
}

fn optimizer_vs_grid(scenarios: &[(&str, &Scenario)]) -> Outcome {
    let mut parts = Vec::new();
    for (name, sc) in scenarios {
        let pass = studies::scenario_pass(sc).map_err(|e| e.to_string())?;
        let interval = pass.sample_interval().ok_or("short pass")?;
        let link = link_timeseries(&pass, &sc.link_budget(), &sc.noise()).map_err(|e| e.to_string())?;
        let dt = sc.settings.sweep.dt_s.iter().cloned().fold(0.0, f64::max);
        let opt = optimize_params(&link, interval, dt, &sc.security(), &sc.protocol(), &sc.bounds_box(), &sc.optimizer_config())
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(opt.result.skl >= opt.grid_best_skl, || {
            format!("{name}: optimum {} below grid best {}", opt.result.skl, opt.grid_best_skl)
        })?;
        parts.push(format!("{name} {:.0} >= {:.0}", opt.result.skl, opt.grid_best_skl));
    }
    Ok(parts.join("; "))
}

// ---- 6: determinism

fn render(study: &str, sc: &Scenario, threads: usize) -> Result<(String, String), String> {
    let report = studies::run_study(study, sc, threads).map_err(|e| e.to_string())?;
    let svg = svg::emit_svg(&report, &svg::recipe(study).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok((report.to_csv(), svg))
}

fn deterministic(study: &str, sc: &Scenario, single: Option<&StudyReport>) -> Outcome {
    let one = match single {
        Some(r) => {
            let svg = svg::emit_svg(r, &svg::recipe(study).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            (r.to_csv(), svg)
        }
        None => render(study, sc, 1)?,
    };
    let eight = render(study, sc, 8)?;
    ensure(one.0 == eight.0, || "CSV differs between 1 and 8 threads".to_string())?;
    ensure(one.1 == eight.1, || "SVG differs between 1 and 8 threads".to_string())?;
    Ok(format!("{} CSV bytes, {} SVG bytes identical", one.0.len(), one.1.len()))
}

fn main() -> ExitCode {
    let mut run = Runner { failed: 0 };
    let fig2 = scenario("fig2_leo_haps.scn");
    let fig3 = scenario("fig3_haps_laps.scn");
    let fig4 = scenario("fig4_leo_ground.scn");

    let (skl_report, skl_time) = timed(|| studies::run_skl(&fig2, 1));
    let skl_report = skl_report.expect("skl study");
    run.check("1 skl band, fig2_leo_haps", || skl_band(&skl_report, skl_time));

    let (fid_report, fid_time) = timed(|| studies::run_fidelity(&fig3, 1));
    let fid_report = fid_report.expect("fidelity study");
    run.check("2a fidelity, fig3_haps_laps", || fidelity_checks(&fig3, &fid_report, fid_time));
    run.check("2b scintillation below 0.5 to 70 deg, fig3_haps_laps", || fidelity_scintillation(&fig3));
    for label in ["moderate", "strong"] {
        let s = fidelity_series(&fid_report, label, 33e-6);
        let min = s.fidelity.iter().cloned().fold(f64::INFINITY, f64::min);
        run.info(&format!("2 {label} pointing, 33 urad"), &format!("min F = {min:.4} at H = {}", s.radiance.last().unwrap()));
    }

    let (turb_report, turb_time) = timed(|| studies::run_turbulence(&fig4, 1));
    let turb_report = turb_report.expect("turbulence study");
    run.check("3a Greenwood bandwidth, fig4_leo_ground", || turbulence_bandwidth(&turb_report));
    run.check("3b wavelength scaling, fig4_leo_ground", || turbulence_scaling(&turb_report));
    run.check("3c turbulence runtime", || {
        let s = turb_time.as_secs_f64();
        ensure(s <= 5.0, || format!("{s:.2} s > 5 s"))?;
        Ok(format!("{s:.2} s"))
    });

    run.check("4a pointing loss vs Monte Carlo", pointing_monte_carlo);
    run.check("4b turbulence integrals vs refined quadrature", turbulence_quadrature);
    run.check("4c decoy bounds vs Poisson expansion", decoy_poisson);

    run.check("5a zero transmittance", zero_transmittance);
    run.check("5b SKL <= n_X", key_below_detections);
    run.check("5c QBER >= 0.5", half_error_rate);
    run.check("5d optimizer >= seeding grid", || {
        optimizer_vs_grid(&[("fig2_leo_haps", &fig2), ("fig3_haps_laps", &fig3), ("fig4_leo_ground", &fig4)])
    });

    run.check("6a determinism skl, fig2_leo_haps", || deterministic("skl", &fig2, Some(&skl_report)));
    run.check("6b determinism fidelity, fig3_haps_laps", || deterministic("fidelity", &fig3, Some(&fid_report)));
    run.check("6c determinism turbulence, fig4_leo_ground", || deterministic("turbulence", &fig4, Some(&turb_report)));
    for (name, sc) in [("fig2_leo_haps", &fig2), ("fig3_haps_laps", &fig3), ("fig4_leo_ground", &fig4)] {
        run.check(&format!("6d determinism pass, {name}"), || deterministic("pass", sc, None));
    }

    println!("{} criteria failed", run.failed);
    if run.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
