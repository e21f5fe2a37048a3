//! Finite-key secret-key length for a LEO-to-HAPS pass: fixed protocol
//! parameters versus the optimised ones, for a +-60 s window.

use qlink::channel::{link_timeseries, LinkBudget, NoiseEnvironment};
use qlink::geometry::{propagate_pass, PassOptions, PlatformSpec};
use qlink::qkd::{optimize_params, simulate_tallies, skl, BoundsBox, OptimizerConfig, ProtocolParams, SecurityParams};

fn main() -> qlink::Result<()> {
    let pass = propagate_pass(&PlatformSpec::leo(535e3), &PlatformSpec::quasi_static(20e3), &PassOptions::default())?;
    let budget = LinkBudget { eta_det: 0.6, ..Default::default() };
    let link = link_timeseries(&pass, &budget, &NoiseEnvironment::default())?;
    let security = SecurityParams::default();
    let window_half = 60.0;

    let fixed = ProtocolParams::default();
    let tallies = simulate_tallies(&fixed, &link, 1.0, window_half, security.e_intrinsic)?;
    let r = skl(&tallies, &fixed, &security)?;
    println!("fixed params:     SKL = {:>8.0} bits, QBER = {:.4}, phase error <= {:.4}", r.skl, r.qber_key_basis, r.phase_error_bound);

    let opt = optimize_params(
        &link,
        1.0,
        window_half,
        &security,
        &fixed,
        &BoundsBox::default(),
        &OptimizerConfig::default(),
    )?;
    let p = opt.params;
    println!("optimised params: SKL = {:>8.0} bits (grid best {:.0})", opt.result.skl, opt.grid_best_skl);
    println!("  mu1 = {:.3}, mu2 = {:.3}, Px = {:.3}, p1 = {:.3}, p2 = {:.3}", p.mu1, p.mu2, p.px, p.p1, p.p2);
    Ok(())
}
