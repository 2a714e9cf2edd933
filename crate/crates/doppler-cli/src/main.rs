use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use doppler_cli::{list_scenarios, load_scenario, run, verify, write_csv, write_json, CliError, Format, Perturbation, Table};

#[derive(Parser)]
#[command(name = "doppler", version, about = "Evaluate Doppler scenarios from JSON files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario over its time grid
    Run {
        file: PathBuf,
        /// Output file, `-` for stdout; overrides outputs.path in the scenario
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Worker threads for grid evaluation
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Compare the closed form with its independent reference
    Verify {
        file: PathBuf,
        /// Write the comparison table here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        threads: Option<usize>,
        /// Scale the closed form by 1 +/- this amount (mutation check)
        #[arg(long)]
        perturb: Option<f64>,
        /// Seed for the perturbation signs
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List accepted scenario tags
    ListScenarios,
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Validation(format!("cannot write {}: {e}", path.display()))
}

fn emit(table: &Table, warnings: &[String], format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let write = |w: &mut dyn Write| match format {
        Format::Csv => write_csv(w, table),
        Format::Json => write_json(w, table, warnings),
    };
    match path.filter(|p| *p != Path::new("-")) {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io_err(p))?;
            }
            let file = File::create(p).map_err(io_err(p))?;
            write(&mut BufWriter::new(file)).map_err(io_err(p))
        }
        None => write(&mut io::stdout().lock()).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn execute(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::ListScenarios => {
            print!("{}", list_scenarios());
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { file, output, format, threads } => {
            let scn = load_scenario(&file)?;
            let (table, report) = run(&scn, threads)?;
            let format = format.or(scn.outputs.format).unwrap_or(Format::Csv);
            let path = output.or_else(|| scn.output_path());
            emit(&table, &report.warnings, format, path.as_deref())?;
            eprintln!("scenario: {}", scn.tag());
            eprintln!("rows: {}", report.rows);
            eprintln!("elapsed: {:.3} s", report.elapsed.as_secs_f64());
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, output, format, threads, perturb, seed } => {
            let scn = load_scenario(&file)?;
            let perturb = perturb.map(|relative| Perturbation { relative, seed });
            let rep = verify(&scn, threads, perturb)?;
            emit(&rep.table, &[], format.unwrap_or(Format::Csv), output.as_deref())?;
            let verdict = if rep.passed { "PASS" } else { "FAIL" };
            eprintln!(
                "{}: {} max relative deviation {:e} (tolerance {:e}) {verdict}",
                scn.tag(),
                rep.quantity,
                rep.max_deviation,
                rep.tolerance
            );
            Ok(if rep.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
