//! Fried length, Greenwood frequency and scintillation on a satellite
//! downlink, with the wind profile including the tracking slew.

use qlink::atmosphere::{fried_r0, greenwood_fg, scintillation_index, SlantPath, TurbulenceProfile};
use qlink::geometry::{propagate_pass, PassOptions, PlatformSpec};

fn main() -> qlink::Result<()> {
    let pass = propagate_pass(
        &PlatformSpec::leo(535e3),
        &PlatformSpec::quasi_static(0.0),
        &PassOptions { horizon_elevation: 0.0, ..Default::default() },
    )?;
    let profile = TurbulenceProfile::default();

    println!("{:>5} {:>6} {:>10} {:>9} {:>7}", "z", "lambda", "f_G [Hz]", "r0 [cm]", "SI");
    for zenith_deg in [0.0, 30.0, 60.0, 75.0] {
        let slew = pass.slew_at_elevation((90.0f64 - zenith_deg).to_radians()).unwrap_or(0.0);
        let p = profile.with_slew_rate(slew);
        for wavelength_nm in [810.0, 1550.0] {
            let path = SlantPath { zenith: f64::to_radians(zenith_deg), h_low: 0.0, h_high: 535e3, wavelength: wavelength_nm * 1e-9 };
            println!(
                "{:>5.0} {:>6.0} {:>10.1} {:>9.2} {:>7.3}",
                zenith_deg,
                wavelength_nm,
                greenwood_fg(&p, &path)?,
                fried_r0(&p, &path)? * 100.0,
                scintillation_index(&p, &path)?.si
            );
        }
    }
    Ok(())
}
