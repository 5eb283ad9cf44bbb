use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qimc::datasets::DatasetSpec;
use qimc::experiment::{
    emit_shade_plot, run_experiment, ExperimentConfig, ExperimentReport, RunOptions, TableFormat,
};
use qimc::{Error, Result};

/// Quantum image classification experiments.
#[derive(Parser)]
#[command(name = "qimc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cell of an experiment config and write its JSON-lines report.
    Run {
        config: PathBuf,
        /// Overrides both the training and the data seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Report path, overriding `output` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of cells trained concurrently.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Root for relative data paths (default: $QIMC_DATA_DIR).
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
    /// Render a report as CSV or a markdown table.
    Table {
        report: PathBuf,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plot validation accuracy against shade as SVG.
    Plot {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a data set described by a TOML file and dump it as JSON.
    GenData {
        spec: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Report(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            seed,
            out,
            parallel,
            data_dir,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.train.seed = s;
                cfg.dataset.seed = s;
            }
            let mut opts = RunOptions::from_env();
            opts.parallel = parallel.max(1);
            opts.output = out;
            if data_dir.is_some() {
                opts.data_root = data_dir;
            }
            eprintln!("running {} cell(s)", cfg.num_cells());
            let report = run_experiment(&cfg, &opts)?;
            for r in &report.rows {
                eprintln!(
                    "cell {:>3}: {} n={} train={} -> validation accuracy {:.3} ({:.1}s)",
                    r.cell, r.classifier, r.n, r.train_size, r.validation_accuracy, r.wall_time_s
                );
            }
            print!("{}", report.to_markdown()?);
            Ok(())
        }
        Command::Table {
            report,
            format,
            out,
        } => {
            let format: TableFormat = format.parse()?;
            let report = ExperimentReport::load(&report)?;
            write_output(out.as_deref(), &report.emit_table(format)?)
        }
        Command::Plot { report, out } => {
            let report = ExperimentReport::load(&report)?;
            write_output(out.as_deref(), &emit_shade_plot(&report)?)
        }
        Command::GenData {
            spec,
            seed,
            out,
            data_dir,
        } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", spec.display())))?;
            let mut ds: DatasetSpec =
                toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
            if let Some(s) = seed {
                ds.seed = s;
            }
            let root = data_dir.or_else(|| RunOptions::from_env().data_root);
            let set = ds.generate(root.as_deref())?;
            let mut json = serde_json::to_string(&set)?;
            json.push('\n');
            write_output(out.as_deref(), &json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
