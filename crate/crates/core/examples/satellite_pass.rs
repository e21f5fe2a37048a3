//! Overhead pass of a 535 km orbiter seen from a 20 km HAPS: elevation,
//! range and line-of-sight slew every 30 s.

use qlink::geometry::{propagate_pass, slant_range, PassOptions, PlatformSpec, EARTH_RADIUS};

fn main() -> qlink::Result<()> {
    let sat = PlatformSpec::leo(535e3);
    let haps = PlatformSpec::quasi_static(20e3);
    let pass = propagate_pass(&sat, &haps, &PassOptions::default())?;

    let (t0, t1) = pass.support().expect("non-empty pass");
    println!("pass above 10 deg: {:.0} s ({} samples)", t1 - t0, pass.len());
    println!("{:>7} {:>8} {:>9} {:>10}", "t [s]", "el [deg]", "range [km]", "slew [mrad/s]");
    for s in pass.samples().iter().filter(|s| (s.t as i64) % 30 == 0) {
        println!(
            "{:>7.0} {:>8.2} {:>9.1} {:>10.3}",
            s.t,
            s.elevation.to_degrees(),
            s.range / 1e3,
            s.slew_rate * 1e3
        );
    }

    let horizon = slant_range(0.0, sat.altitude, haps.altitude, EARTH_RADIUS)?;
    println!("range at 0 deg elevation: {:.1} km", horizon / 1e3);
    Ok(())
}
