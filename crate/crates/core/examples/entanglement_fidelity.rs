//! Fidelity of pairs sent from a 20 km HAPS to two LAPS receivers as the
//! sky brightens, for a narrow and a wide beam.

use qlink::channel::{LinkBudget, NoiseEnvironment};
use qlink::entanglement::{fidelity_sweep, log_grid, DownlinkArm, DualDownlink};
use qlink::geometry::short_range_path;

fn main() -> qlink::Result<()> {
    let range = short_range_path(40f64.to_radians(), 20e3, 1e3)?;
    let noise = NoiseEnvironment { fov: 2.5e-10, filter_bandwidth: 0.1, ..Default::default() };
    let grid = log_grid(1e-6, 1e-1, 6);

    for divergence in [33e-6, 1e-3] {
        let arm = DownlinkArm {
            budget: LinkBudget { divergence_full: divergence, rx_aperture: 0.15, eta_det: 0.6, eta_atm: 0.9, ..Default::default() },
            range,
            noise,
        };
        println!("divergence {divergence:e} rad, range {:.1} km", range / 1e3);
        for (h, r) in fidelity_sweep(&DualDownlink::symmetric(arm, 1e8, 0.1), &grid)? {
            println!("  H_b = {h:>8.1e}  F = {:.4}  q = {:.4}  coincidences = {:.3e} /s", r.fidelity, r.q_a, r.coincidence_rate);
        }
    }
    Ok(())
}
