//! Configuration-driven sweeps producing JSON-lines reports, tables and
//! shade plots.

mod config;
mod plot;
mod report;

pub use config::{
    check_pairing, Cell, EpochOverride, ExperimentConfig, Sweep, SweepValue, TrainSettings,
    SWEEP_FIELDS,
};
pub use plot::emit_shade_plot;
pub use report::{ExperimentReport, ReportRow, TableFormat};

use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::trainer::{train, EncodedSet};
use crate::{Error, Result};
use report::RowWriter;

/// Environment variable naming the directory that relative data paths are
/// resolved against.
pub const DATA_DIR_ENV: &str = "QIMC_DATA_DIR";

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Number of cells trained concurrently; 1 runs them in order.
    pub parallel: usize,
    pub data_root: Option<PathBuf>,
    /// Overrides the configured report path.
    pub output: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            parallel: 1,
            data_root: None,
            output: None,
        }
    }
}

impl RunOptions {
    /// Defaults with `data_root` taken from the environment.
    pub fn from_env() -> Self {
        Self {
            data_root: std::env::var_os(DATA_DIR_ENV).map(PathBuf::from),
            ..Self::default()
        }
    }
}

/// Trains and evaluates one cell.
pub fn run_cell(cell: &Cell, opts: &RunOptions) -> Result<ReportRow> {
    let start = Instant::now();
    let (train_set, val_set) = cell.dataset.train_validation(
        cell.train.train_size,
        cell.train.validation_size,
        opts.data_root.as_deref(),
    )?;
    let train_enc = EncodedSet::encode(&train_set, cell.encoder)?;
    let val_enc = EncodedSet::encode(&val_set, cell.encoder)?;
    let history = train(&train_enc, &val_enc, &cell.train)?;
    Ok(ReportRow {
        cell: cell.index,
        dataset: cell.dataset.kind.name().to_owned(),
        encoder: cell.encoder.name().to_owned(),
        classifier: cell.train.classifier.name().to_owned(),
        n: cell.dataset.n,
        shade: cell.dataset.shade,
        corruption: cell.dataset.corruption.clone(),
        digits: train_set.meta().digits.clone(),
        train_size: cell.train.train_size,
        validation_size: cell.train.validation_size,
        epochs: cell.train.epochs,
        layers: cell.train.layers(),
        seed: cell.train.seed,
        data_seed: cell.dataset.seed,
        validation_accuracy: history.validation_accuracy,
        validation_accuracy_uncalibrated: history.validation_accuracy_uncalibrated,
        train_accuracy: history.train_accuracy,
        final_loss: history.final_loss(),
        wall_time_s: start.elapsed().as_secs_f64(),
        split: history.params.split,
        multi_bounds: history.params.multi_bounds,
        ac_threshold: history.params.ac_threshold,
    })
}

/// Runs every sweep cell, appending each finished row to the report file as
/// it completes. The returned report is ordered by cell index.
pub fn run_experiment(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    cfg.validate()?;
    let cells = cfg.cells()?;
    let output = opts.output.clone().or_else(|| cfg.output.clone());
    let writer = output
        .as_deref()
        .map(RowWriter::create)
        .transpose()?
        .map(Mutex::new);

    let finish = |cell: &Cell| -> Result<ReportRow> {
        let row = run_cell(cell, opts)?;
        if let Some(w) = &writer {
            w.lock()
                .map_err(|_| Error::Report("report writer poisoned".into()))?
                .append(&row)?;
        }
        Ok(row)
    };

    let rows: Result<Vec<ReportRow>> = if opts.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| cells.par_iter().map(finish).collect())
    } else {
        cells.iter().map(finish).collect()
    };
    let mut rows = rows?;
    rows.sort_by_key(|r| r.cell);
    Ok(ExperimentReport { rows })
}
