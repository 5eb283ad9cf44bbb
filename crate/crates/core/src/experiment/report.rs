use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Metrics of one sweep cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub cell: usize,
    pub dataset: String,
    pub encoder: String,
    pub classifier: String,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shade: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub digits: Vec<u8>,
    pub train_size: usize,
    pub validation_size: usize,
    pub epochs: usize,
    pub layers: usize,
    pub seed: u64,
    pub data_seed: u64,
    pub validation_accuracy: f64,
    pub validation_accuracy_uncalibrated: f64,
    pub train_accuracy: f64,
    pub final_loss: f64,
    pub wall_time_s: f64,
    pub split: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multi_bounds: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ac_threshold: Option<f64>,
}

/// Rows of a finished (or interrupted) run, ordered by cell index.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "md" | "markdown" => Ok(TableFormat::Markdown),
            other => Err(Error::Report(format!(
                "unknown table format {other:?}; expected csv or md"
            ))),
        }
    }
}

const CSV_COLUMNS: [&str; 20] = [
    "cell",
    "dataset",
    "encoder",
    "classifier",
    "n",
    "shade",
    "corruption",
    "digits",
    "train_size",
    "validation_size",
    "epochs",
    "layers",
    "seed",
    "data_seed",
    "validation_accuracy",
    "validation_accuracy_uncalibrated",
    "train_accuracy",
    "final_loss",
    "wall_time_s",
    "split",
];

impl ExperimentReport {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reads a JSON-lines report; blank lines are skipped.
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut rows = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let row: ReportRow = serde_json::from_str(&line).map_err(|e| Error::Format {
                format: "report",
                path: path.to_path_buf(),
                reason: format!("line {}: {e}", i + 1),
            })?;
            rows.push(row);
        }
        rows.sort_by_key(|r| r.cell);
        Ok(Self { rows })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = Vec::new();
        for row in &self.rows {
            serde_json::to_writer(&mut out, row)?;
            out.push(b'\n');
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn emit_table(&self, format: TableFormat) -> Result<String> {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Markdown => self.to_markdown(),
        }
    }

    /// One line per row with a fixed column order.
    pub fn to_csv(&self) -> Result<String> {
        self.check_nonempty()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Report(e.to_string());
        w.write_record(CSV_COLUMNS).map_err(csv_err)?;
        for r in &self.rows {
            let digits = r
                .digits
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                r.cell.to_string(),
                r.dataset.clone(),
                r.encoder.clone(),
                r.classifier.clone(),
                r.n.to_string(),
                r.shade.map(|s| s.to_string()).unwrap_or_default(),
                r.corruption.clone().unwrap_or_default(),
                digits,
                r.train_size.to_string(),
                r.validation_size.to_string(),
                r.epochs.to_string(),
                r.layers.to_string(),
                r.seed.to_string(),
                r.data_seed.to_string(),
                format!("{:.3}", r.validation_accuracy),
                format!("{:.3}", r.validation_accuracy_uncalibrated),
                format!("{:.3}", r.train_accuracy),
                format!("{:.6}", r.final_loss),
                format!("{:.3}", r.wall_time_s),
                format!("{:.4}", r.split),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Report(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Report(e.to_string()))
    }

    /// Validation accuracy pivoted with one line per (train size, classifier)
    /// and one column per value of `n`, shade or corruption. Repeated cells
    /// are averaged.
    pub fn to_markdown(&self) -> Result<String> {
        self.check_nonempty()?;
        let axis = self.column_axis();
        let mut columns: Vec<ColumnKey> = Vec::new();
        for r in &self.rows {
            let k = axis.key(r);
            if !columns.contains(&k) {
                columns.push(k);
            }
        }
        columns.sort();
        let mut lines: BTreeMap<LineKey, BTreeMap<ColumnKey, (f64, usize)>> = BTreeMap::new();
        for r in &self.rows {
            let line = (
                r.train_size,
                classifier_rank(&r.classifier),
                r.classifier.clone(),
            );
            let cell = lines
                .entry(line)
                .or_default()
                .entry(axis.key(r))
                .or_default();
            cell.0 += r.validation_accuracy;
            cell.1 += 1;
        }

        let mut out = String::new();
        out.push_str("| Training Set Size | Classifier |");
        for c in &columns {
            out.push_str(&format!(" {} |", c.label(axis)));
        }
        out.push_str("\n|---|---|");
        out.push_str(&"---|".repeat(columns.len()));
        out.push('\n');
        for ((size, _, classifier), cells) in &lines {
            out.push_str(&format!("| {size} | {} |", classifier.to_uppercase()));
            for c in &columns {
                match cells.get(c) {
                    Some((sum, count)) => out.push_str(&format!(" {:.3} |", sum / *count as f64)),
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }
        Ok(out)
    }

    fn check_nonempty(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::Report("report has no rows".into()));
        }
        Ok(())
    }

    fn column_axis(&self) -> Axis {
        let distinct = |f: &dyn Fn(&ReportRow) -> String| {
            let mut v: Vec<String> = self.rows.iter().map(f).collect();
            v.sort();
            v.dedup();
            v.len()
        };
        if self.rows.iter().any(|r| r.shade.is_some())
            && distinct(&|r| format!("{:?}", r.shade)) > 1
        {
            Axis::Shade
        } else if distinct(&|r| format!("{:?}", r.corruption)) > 1 {
            Axis::Corruption
        } else {
            Axis::N
        }
    }
}

/// Train size, classifier order, classifier name.
type LineKey = (usize, u8, String);

fn classifier_rank(name: &str) -> u8 {
    match name {
        "vqc" => 0,
        "ac" => 1,
        _ => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    N,
    Shade,
    Corruption,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ColumnKey {
    Number(i64),
    Name(String),
}

impl Axis {
    fn key(self, r: &ReportRow) -> ColumnKey {
        match self {
            Axis::N => ColumnKey::Number(i64::from(r.n)),
            Axis::Shade => ColumnKey::Number(r.shade.map_or(-1, i64::from)),
            Axis::Corruption => ColumnKey::Name(r.corruption.clone().unwrap_or_default()),
        }
    }
}

impl ColumnKey {
    fn label(&self, axis: Axis) -> String {
        match (self, axis) {
            (ColumnKey::Number(v), Axis::N) => format!("n={v}"),
            (ColumnKey::Number(v), _) => format!("shade {v}"),
            (ColumnKey::Name(s), _) => s.clone(),
        }
    }
}

/// Appends rows to a JSON-lines file, flushing after each one so an
/// interrupted run keeps every completed cell.
pub(crate) struct RowWriter {
    file: std::fs::File,
    path: std::path::PathBuf,
}

impl RowWriter {
    pub(crate) fn create(path: &Path) -> Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        Ok(Self {
            file,
            path: path.to_path_buf(),
        })
    }

    pub(crate) fn append(&mut self, row: &ReportRow) -> Result<()> {
        let mut line = serde_json::to_vec(row)?;
        line.push(b'\n');
        self.file
            .write_all(&line)
            .and_then(|_| self.file.flush())
            .map_err(|e| Error::io(&self.path, e))
    }
}
