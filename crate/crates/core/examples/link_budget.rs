//! Downlink transmittance breakdown at zenith for the three pointing-error
//! levels, and the background clicks per gate under a daytime sky.

use qlink::channel::{background_counts, beam_radius, system_loss, LinkBudget, NoiseEnvironment, PointingError};

fn main() -> qlink::Result<()> {
    let range = 515e3;
    let base = LinkBudget { eta_det: 0.6, ..Default::default() };
    println!("beam radius at {:.0} km: {:.2} m", range / 1e3, beam_radius(&base, range)?);

    println!("{:>9} {:>10} {:>10} {:>10}", "PE", "pointing", "total", "loss [dB]");
    for pe in [PointingError::weak(), PointingError::moderate(), PointingError::strong()] {
        let loss = system_loss(&base.with_pointing(pe), range)?;
        println!("{:>9} {:>10.3e} {:>10.3e} {:>10.2}", pe.label, loss.pointing, loss.transmittance, loss.db());
    }

    for radiance in [0.0, 1e-4, 1e-2] {
        let env = NoiseEnvironment { spectral_radiance: radiance, ..Default::default() };
        println!("H_b = {radiance:e} W/m2/nm/sr -> {:.3e} clicks/gate", background_counts(&env, &base)?);
    }
    Ok(())
}
