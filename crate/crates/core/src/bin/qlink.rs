use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qlink::report::StudyReport;
use qlink::scenario::Scenario;
use qlink::{studies, svg, Error};

#[derive(Parser)]
#[command(name = "qlink", version, about = "Satellite and aerial quantum link studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pass geometry and system transmittance per time step.
    Pass(StudyArgs),
    /// Finite-key secret-key length versus half-window and pointing error.
    Skl(StudyArgs),
    /// Entanglement fidelity versus sky radiance.
    Fidelity(StudyArgs),
    /// Greenwood frequency, Fried length and scintillation versus zenith.
    Turbulence(StudyArgs),
    /// Render an existing report CSV as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        /// Plot recipe; defaults to the study named in the report.
        #[arg(long)]
        recipe: Option<String>,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Args)]
struct StudyArgs {
    /// Scenario file; all defaults when omitted.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}

fn run_study(name: &str, args: &StudyArgs) -> Result<(), Error> {
    let scenario = match &args.scenario {
        Some(p) => Scenario::load(p)?,
        None => Scenario::default(),
    };
    for w in &scenario.warnings {
        eprintln!("warning: {w}");
    }
    let report = studies::run_study(name, &scenario, args.threads)?;
    let csv = report.to_csv();
    match &args.out {
        Some(p) => write_file(p, &csv)?,
        None => std::io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| Error::Domain(format!("cannot write stdout: {e}")))?,
    }
    if let Some(p) = &args.svg {
        write_file(p, &svg::emit_svg(&report, &svg::recipe(name)?)?)?;
    }
    Ok(())
}

fn plot(input: &Path, recipe: Option<&str>, out: &Path) -> Result<(), Error> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", input.display())))?;
    let report = StudyReport::parse_csv(&text)?;
    let axes = svg::recipe(recipe.unwrap_or(&report.study))?;
    write_file(out, &svg::emit_svg(&report, &axes)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pass(a) => run_study("pass", a),
        Command::Skl(a) => run_study("skl", a),
        Command::Fidelity(a) => run_study("fidelity", a),
        Command::Turbulence(a) => run_study("turbulence", a),
        Command::Plot { input, recipe, svg } => plot(input, recipe.as_deref(), svg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
