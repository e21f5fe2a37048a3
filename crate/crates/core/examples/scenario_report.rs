//! Runs a study from a scenario file and writes the CSV report and its SVG
//! plot to a temporary directory.
//!
//! ```text
//! cargo run --example scenario_report -- scenarios/fig4_leo_ground.scn turbulence
//! ```

use qlink::scenario::Scenario;
use qlink::{studies, svg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/fig3_haps_laps.scn").into());
    let study = args.next().unwrap_or_else(|| "fidelity".into());

    let scenario = Scenario::load(&path)?;
    println!("{path}: digest {}, {} defaulted keys", scenario.digest(), scenario.defaults_applied.len());
    let report = studies::run_study(&study, &scenario, 0)?;

    let dir = std::env::temp_dir();
    let csv_path = dir.join(format!("{study}.csv"));
    let svg_path = dir.join(format!("{study}.svg"));
    std::fs::write(&csv_path, report.to_csv())?;
    std::fs::write(&svg_path, svg::emit_svg(&report, &svg::recipe(&study)?)?)?;
    println!("{} rows -> {}", report.rows.len(), csv_path.display());
    println!("plot -> {}", svg_path.display());
    for w in &report.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
