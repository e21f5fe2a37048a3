use qlink::geometry::{propagate_pass, slant_range, slew_rate, PassOptions, PlatformSpec, EARTH_RADIUS, GM_EARTH};

type Vec3 = [f64; 3];

fn add(a: Vec3, b: Vec3, s: f64) -> Vec3 {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

fn norm(a: Vec3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn accel(r: Vec3) -> Vec3 {
    let d = norm(r).powi(3);
    [-GM_EARTH * r[0] / d, -GM_EARTH * r[1] / d, -GM_EARTH * r[2] / d]
}

/// Classic RK4 step of the two-body problem.
fn rk4(r: Vec3, v: Vec3, h: f64) -> (Vec3, Vec3) {
    let k1v = accel(r);
    let k1r = v;
    let k2v = accel(add(r, k1r, h / 2.0));
    let k2r = add(v, k1v, h / 2.0);
    let k3v = accel(add(r, k2r, h / 2.0));
    let k3r = add(v, k2v, h / 2.0);
    let k4v = accel(add(r, k3r, h));
    let k4r = add(v, k3v, h);
    let comb = |a: Vec3, b: Vec3, c: Vec3, d: Vec3| [0, 1, 2].map(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0);
    (add(r, comb(k1r, k2r, k3r, k4r), h), add(v, comb(k1v, k2v, k3v, k4v), h))
}

fn elevation(sat: Vec3, station: Vec3) -> f64 {
    let los = add(sat, station, -1.0);
    let up = station.map(|c| c / norm(station));
    ((los[0] * up[0] + los[1] * up[1] + los[2] * up[2]) / norm(los)).asin()
}

/// Whole seconds after zenith at which the propagated satellite is still at
/// or above 10 deg elevation.
fn oracle_half_samples(h_orb: f64, h_sta: f64) -> i64 {
    let r0 = EARTH_RADIUS + h_orb;
    let station = [EARTH_RADIUS + h_sta, 0.0, 0.0];
    let (mut r, mut v) = ([r0, 0.0, 0.0], [0.0, (GM_EARTH / r0).sqrt(), 0.0]);
    let horizon = 10f64.to_radians();
    let mut last = 0;
    for step in 1..100_000 {
        (r, v) = rk4(r, v, 0.1);
        if elevation(r, station) < horizon {
            break;
        }
        if step % 10 == 0 {
            last = step / 10;
        }
    }
    last
}

#[test]
fn pass_duration_matches_two_body_propagation() {
    for h_sta in [0.0, 20e3] {
        let pass = propagate_pass(&PlatformSpec::leo(535e3), &PlatformSpec::quasi_static(h_sta), &PassOptions::default()).unwrap();
        let half = oracle_half_samples(535e3, h_sta);
        let expected = 2 * half + 1;
        assert!(
            (pass.len() as i64 - expected).abs() <= 1,
            "station {h_sta}: {} samples vs oracle {expected}",
            pass.len()
        );
    }
}

#[test]
fn peak_slew_matches_overhead_formula() {
    // v_orb / (h_orb - h_sta), high-precision evaluation
    for (h_sta, expected) in [(0.0, 0.014_200_440_577_08), (20e3, 0.014_751_913_997_55)] {
        let pass = propagate_pass(&PlatformSpec::leo(535e3), &PlatformSpec::quasi_static(h_sta), &PassOptions::default()).unwrap();
        let mid = pass.len() / 2;
        assert_eq!(pass.samples()[mid].t, 0.0);
        let got = slew_rate(&pass, mid).unwrap();
        assert!((got / expected - 1.0).abs() < 1e-4, "{got} vs {expected}");
        let peak = pass.samples().iter().map(|s| s.slew_rate).fold(0.0, f64::max);
        assert_eq!(peak, got);
    }
}

#[test]
fn horizon_range_matches_closed_form() {
    // sqrt(h^2 + 2 Re h), Re = 6371 km, h = 535 km
    let got = slant_range(0.0, 535e3, 0.0, EARTH_RADIUS).unwrap();
    assert!((got / 2_665_181.982_529_52 - 1.0).abs() < 1e-12);
}

#[test]
fn pass_ranges_agree_with_slant_range() {
    let opts = PassOptions { max_elevation: 90f64.to_radians(), ..Default::default() };
    let pass = propagate_pass(&PlatformSpec::leo(535e3), &PlatformSpec::quasi_static(20e3), &opts).unwrap();
    for s in pass.samples() {
        let r = slant_range(s.elevation, 535e3, 20e3, EARTH_RADIUS).unwrap();
        assert!((s.range / r - 1.0).abs() < 1e-6, "t={} {} vs {}", s.t, s.range, r);
    }
}

#[test]
fn overhead_pass_is_time_symmetric() {
    let pass = propagate_pass(&PlatformSpec::leo(535e3), &PlatformSpec::quasi_static(0.0), &PassOptions::default()).unwrap();
    let s = pass.samples();
    let n = s.len();
    for i in 0..n / 2 {
        let (a, b) = (&s[i], &s[n - 1 - i]);
        assert_eq!(a.t, -b.t);
        assert!((a.elevation - b.elevation).abs() < 1e-9);
        assert!((a.range / b.range - 1.0).abs() < 1e-9);
    }
    assert!((s[n / 2].elevation - 90f64.to_radians()).abs() < 1e-9);
}

#[test]
fn low_pass_peaks_at_requested_elevation() {
    for max_el in [30.0f64, 55.0, 75.0] {
        let opts = PassOptions { max_elevation: max_el.to_radians(), ..Default::default() };
        let pass = propagate_pass(&PlatformSpec::leo(535e3), &PlatformSpec::quasi_static(20e3), &opts).unwrap();
        let peak = pass.samples().iter().map(|s| s.elevation).fold(f64::MIN, f64::max);
        assert!((peak - max_el.to_radians()).abs() < 1e-9, "{max_el}: {}", peak.to_degrees());
        assert!(pass.samples().iter().all(|s| s.elevation >= 10f64.to_radians() - 1e-12));
    }
}
