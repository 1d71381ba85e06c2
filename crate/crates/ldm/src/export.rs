//! On-disk formats: LDM and per-trial CSV, JSON summaries and PGM heatmaps.

use crate::error::{Error, Result};
use ldm_core::heatmap::{intensities, HeatmapConfig};
use ldm_core::ldm::index_to_labeling;
use ldm_core::recorder::{chance_baseline, CapacityEstimate};
use ldm_core::{FitReport, LDMatrix};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn finish(path: &Path, mut w: impl Write) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).map_err(|e| Error::io(path, e))?;
    finish(path, w)
}

/// Writes an LDM as CSV: a `labeling` column holding the class digits of
/// the row (first holdout point first), then `col_0 .. col_{K-1}`.
/// Values use the shortest representation that parses back exactly.
pub fn write_ldm_csv<W: Write>(ldm: &LDMatrix, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["labeling".to_string()];
    header.extend((0..ldm.cols()).map(|i| format!("col_{i}")));
    w.write_record(&header)?;
    let mut row = Vec::with_capacity(ldm.cols() + 1);
    for r in 0..ldm.rows() {
        row.clear();
        let labeling = index_to_labeling(r, ldm.num_classes(), ldm.holdout_size())
            .expect("row index within the labeling space");
        row.push(labeling.iter().map(|d| d.to_string()).collect::<String>());
        row.extend((0..ldm.cols()).map(|c| format!("{:e}", ldm.get(r, c))));
        w.write_record(&row)?;
    }
    w.flush()
}

pub fn save_ldm_csv(ldm: &LDMatrix, path: &Path) -> Result<()> {
    let w = create(path)?;
    write_ldm_csv(ldm, w).map_err(|e| Error::io(path, e))
}

/// Writes `trial,count` rows.
pub fn save_trials_csv(counts: &[usize], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let to_err = |source| Error::Csv {
        path: path.into(),
        source,
    };
    w.write_record(["trial", "count"]).map_err(to_err)?;
    for (t, c) in counts.iter().enumerate() {
        w.write_record([t.to_string(), c.to_string()])
            .map_err(to_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Binary PGM (`P5`, maxval 255): one row per labeling, one column per run.
pub fn write_pgm<W: Write>(
    ldm: &LDMatrix,
    config: &HeatmapConfig,
    mut out: W,
) -> std::io::Result<()> {
    write!(out, "P5\n{} {}\n255\n", ldm.cols(), ldm.rows())?;
    out.write_all(&intensities(ldm, config))?;
    out.flush()
}

pub fn render_pgm(ldm: &LDMatrix, config: &HeatmapConfig, path: &Path) -> Result<()> {
    let w = create(path)?;
    write_pgm(ldm, config, w).map_err(|e| Error::io(path, e))
}

/// Parameters needed to read a heatmap back into probabilities.
#[derive(Debug, Clone, Serialize)]
pub struct HeatmapInfo {
    pub num_classes: usize,
    pub holdout_size: usize,
    pub columns: usize,
    pub scale: String,
    pub gamma: f64,
    pub invert: bool,
    pub max_probability: f64,
}

impl HeatmapInfo {
    pub fn new(ldm: &LDMatrix, config: &HeatmapConfig) -> Self {
        HeatmapInfo {
            num_classes: ldm.num_classes(),
            holdout_size: ldm.holdout_size(),
            columns: ldm.cols(),
            scale: config.scale.to_string(),
            gamma: config.gamma,
            invert: config.invert,
            max_probability: ldm.max_entry(),
        }
    }
}

/// One Dirichlet fit of an LDM built from `seed`.
#[derive(Debug, Clone, Serialize)]
pub struct FitRecord {
    pub seed: u64,
    pub alpha: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub final_delta: f64,
    pub entropy: f64,
}

impl FitRecord {
    pub fn new(seed: u64, report: &FitReport) -> Self {
        FitRecord {
            seed,
            alpha: report.params.alpha().to_vec(),
            iterations: report.iterations,
            converged: report.converged,
            final_delta: report.final_delta,
            entropy: report.entropy(),
        }
    }
}

/// Entropy of one classifier's LDMs, averaged over repeated master seeds.
#[derive(Debug, Clone, Serialize)]
pub struct LdmSummary {
    pub spec: String,
    pub dataset: String,
    pub master_seed: u64,
    pub num_classes: usize,
    pub holdout_size: usize,
    pub columns: usize,
    pub average_entropy: f64,
    pub all_converged: bool,
    pub runs: Vec<FitRecord>,
}

impl LdmSummary {
    pub fn from_runs(
        spec: String,
        dataset: String,
        master_seed: u64,
        ldm: &LDMatrix,
        runs: Vec<FitRecord>,
    ) -> Self {
        let average_entropy = runs.iter().map(|r| r.entropy).sum::<f64>() / runs.len() as f64;
        LdmSummary {
            spec,
            dataset,
            master_seed,
            num_classes: ldm.num_classes(),
            holdout_size: ldm.holdout_size(),
            columns: ldm.cols(),
            average_entropy,
            all_converged: runs.iter().all(|r| r.converged),
            runs,
        }
    }
}

/// Label-recorder result for one classifier.
#[derive(Debug, Clone, Serialize)]
pub struct RecordSummary {
    pub spec: String,
    pub dataset: String,
    pub master_seed: u64,
    pub mean_recovered: f64,
    pub std_dev: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: usize,
    pub dataset_size: usize,
    pub num_classes: usize,
    pub chance_baseline: f64,
}

impl RecordSummary {
    pub fn new(spec: String, dataset: String, master_seed: u64, e: &CapacityEstimate) -> Self {
        RecordSummary {
            spec,
            dataset,
            master_seed,
            mean_recovered: e.mean_recovered,
            std_dev: e.std_dev,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            trials: e.trials,
            dataset_size: e.dataset_size,
            num_classes: e.num_classes,
            chance_baseline: chance_baseline(e.dataset_size, e.num_classes),
        }
    }
}
