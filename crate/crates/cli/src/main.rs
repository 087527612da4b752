use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use axishell_cli::{commands, CliError, ExperimentConfig};
use clap::{Parser, Subcommand};

/// First eigenmodes of thin axisymmetric shells.
#[derive(Parser)]
#[command(name = "axishell", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shell class, minimizers of H0 and membrane limit.
    Classify { config: PathBuf },
    /// Asymptotic law of the first mode as JSON (also written to the output directory).
    Predict {
        config: PathBuf,
        #[arg(long)]
        no_write: bool,
    },
    /// Dispersion curve of one thickness as CSV.
    Dispersion {
        config: PathBuf,
        /// Full thickness; defaults to the first configured value.
        #[arg(long)]
        h: Option<f64>,
        /// Print to stdout instead of the output directory.
        #[arg(long)]
        stdout: bool,
    },
    /// All configured thicknesses: per-thickness curves and a summary CSV.
    Sweep {
        config: PathBuf,
        /// Overrides the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Computed special constants.
    Constants,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    match cli.cmd {
        Cmd::Classify { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            write!(stdout.lock(), "{}", commands::classify_report(&cfg)?)?;
        }
        Cmd::Predict { config, no_write } => {
            let cfg = ExperimentConfig::load(&config)?;
            let json = commands::predict_record(&cfg)?.to_json();
            if !no_write {
                std::fs::create_dir_all(&cfg.output.dir)?;
                std::fs::write(cfg.output.dir.join("prediction.json"), format!("{json}\n"))?;
            }
            writeln!(stdout.lock(), "{json}")?;
        }
        Cmd::Dispersion { config, h, stdout: to_stdout } => {
            let cfg = ExperimentConfig::load(&config)?;
            if to_stdout {
                commands::dispersion(&cfg, h, stdout.lock())?;
            } else {
                std::fs::create_dir_all(&cfg.output.dir)?;
                let h_val = h.unwrap_or(2.0 * cfg.eps[0]);
                let path = cfg.output.dir.join(commands::dispersion_file_name(h_val));
                let curve = commands::dispersion(&cfg, Some(h_val), io::BufWriter::new(std::fs::File::create(&path)?))?;
                writeln!(stdout.lock(), "{}: k*={} stop_reason={}", path.display(), curve.argmin_k, curve.stop_reason.as_str())?;
            }
        }
        Cmd::Sweep { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let dir = out.unwrap_or_else(|| cfg.output.dir.clone());
            let report = commands::sweep(&cfg, &dir)?;
            for n in &report.notes {
                eprintln!("{n}");
            }
            writeln!(stdout.lock(), "{}", report.summary.display())?;
        }
        Cmd::Constants => {
            write!(stdout.lock(), "{}", commands::constants_report())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("axishell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
