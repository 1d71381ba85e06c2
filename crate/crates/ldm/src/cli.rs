//! The `ldm` command line: `ldm`, `record` and `compare` subcommands.

use crate::data::{DatasetSource, LoadedDataset};
use crate::error::{Error, Result};
use crate::export::{
    render_pgm, save_ldm_csv, save_trials_csv, write_json, FitRecord, HeatmapInfo, LdmSummary,
    RecordSummary,
};
use crate::parallel::{build_ldm_par, estimate_capacity_par};
use clap::{Args, Parser, Subcommand};
use ldm_core::dirichlet::fit_ldm;
use ldm_core::heatmap::{HeatmapConfig, Scale};
use ldm_core::seed::{self, role};
use ldm_core::{ClassifierSpec, Depth, LDMatrix};
use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "ldm",
    version,
    about = "Estimate classifier capacity with labeling distribution matrices and label recorders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build LDMs, fit a Dirichlet to each and report its entropy.
    Ldm(RunArgs),
    /// Count how many uniformly random training labels each model reproduces.
    Record(RunArgs),
    /// Run both pipelines and write one combined row per classifier.
    Compare(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// `iris` or `csv:PATH:LABELCOL` (column index or header name).
    #[arg(long, default_value = "iris")]
    dataset: String,
    /// Classifier such as `knn:k=3` or `random_forest:n=10,max_depth=5`;
    /// repeat for several. Defaults to the standard nine-model suite.
    #[arg(long = "spec", value_name = "SPEC")]
    specs: Vec<String>,
    /// LDM columns (training runs per matrix).
    #[arg(long, default_value_t = 100)]
    k: usize,
    /// Holdout points N'; the matrix has C^N' rows.
    #[arg(long, default_value_t = 5)]
    holdout: usize,
    /// Recorder trials per classifier.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// LDMs per classifier whose entropies are averaged.
    #[arg(long, default_value_t = 20)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Heatmap intensity scale: linear or log.
    #[arg(long, default_value = "linear")]
    scale: String,
    /// Heatmap display exponent.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

/// Everything a run depends on. Outputs are a pure function of it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dataset: DatasetSource,
    pub specs: Vec<ClassifierSpec>,
    pub k: usize,
    pub holdout_size: usize,
    pub trials: usize,
    pub repeats: usize,
    pub master_seed: u64,
    pub out_dir: PathBuf,
    pub heatmap: HeatmapConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dataset: DatasetSource::Iris,
            specs: default_suite(),
            k: 100,
            holdout_size: 5,
            trials: 1000,
            repeats: 20,
            master_seed: 0,
            out_dir: PathBuf::from("."),
            heatmap: HeatmapConfig::default(),
        }
    }
}

/// Random forest, Gaussian naive Bayes, AdaBoost, QDA, decision tree and
/// KNN with K = 10, 5, 3, 1.
pub fn default_suite() -> Vec<ClassifierSpec> {
    vec![
        ClassifierSpec::random_forest(),
        ClassifierSpec::GaussianNb,
        ClassifierSpec::adaboost(),
        ClassifierSpec::Qda,
        ClassifierSpec::decision_tree(Depth::Default),
        ClassifierSpec::knn(10),
        ClassifierSpec::knn(5),
        ClassifierSpec::knn(3),
        ClassifierSpec::knn(1),
    ]
}

impl TryFrom<RunArgs> for RunConfig {
    type Error = Error;

    fn try_from(a: RunArgs) -> Result<Self> {
        let specs = if a.specs.is_empty() {
            default_suite()
        } else {
            a.specs
                .iter()
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?
        };
        Ok(RunConfig {
            dataset: a.dataset.parse()?,
            specs,
            k: a.k,
            holdout_size: a.holdout,
            trials: a.trials,
            repeats: a.repeats,
            master_seed: a.seed,
            out_dir: a.out,
            heatmap: HeatmapConfig::new(a.scale.parse::<Scale>()?, a.gamma, false)?,
        })
    }
}

impl RunConfig {
    fn check_common(&self) -> Result<()> {
        if self.specs.is_empty() {
            return Err(Error::Usage("no classifier given".into()));
        }
        let mut seen = HashSet::new();
        for spec in &self.specs {
            spec.validate()?;
            if !seen.insert(spec.slug()) {
                return Err(Error::Usage(format!("classifier `{spec}` given twice")));
            }
        }
        Ok(())
    }

    fn check_ldm(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Usage(format!(
                "--k must be at least 2, got {}",
                self.k
            )));
        }
        if self.holdout_size < 1 {
            return Err(Error::Usage("--holdout must be at least 1".into()));
        }
        if self.repeats < 1 {
            return Err(Error::Usage("--repeats must be at least 1".into()));
        }
        Ok(())
    }

    fn check_record(&self) -> Result<()> {
        if self.trials < 2 {
            return Err(Error::Usage(format!(
                "--trials must be at least 2, got {}",
                self.trials
            )));
        }
        Ok(())
    }

    fn prepare(&self) -> Result<LoadedDataset> {
        let data = self.dataset.load()?;
        std::fs::create_dir_all(&self.out_dir).map_err(|e| Error::io(&self.out_dir, e))?;
        Ok(data)
    }
}

/// Master seed of LDM repeat `r`.
pub fn repeat_seed(master_seed: u64, r: usize) -> u64 {
    seed::derive(master_seed, role::LDM_REPEAT, r as u64)
}

/// Builds `repeats` LDMs and fits each; returns the summary and the first
/// matrix.
fn ldm_entropy(
    config: &RunConfig,
    data: &LoadedDataset,
    spec: &ClassifierSpec,
) -> Result<(LdmSummary, LDMatrix)> {
    let mut runs = Vec::with_capacity(config.repeats);
    let mut first = None;
    for r in 0..config.repeats {
        let s = repeat_seed(config.master_seed, r);
        let ldm = build_ldm_par(spec, &data.dataset, config.k, config.holdout_size, s)?;
        let report = fit_ldm(&ldm)?;
        runs.push(FitRecord::new(s, &report));
        first.get_or_insert(ldm);
    }
    let ldm = first.expect("at least one repeat");
    let summary = LdmSummary::from_runs(
        spec.to_string(),
        config.dataset.to_string(),
        config.master_seed,
        &ldm,
        runs,
    );
    Ok((summary, ldm))
}

/// For each classifier writes `<slug>.json` (every fit and the average
/// entropy), `<slug>.csv` (the first LDM), `<slug>.pgm` and
/// `<slug>.pgm.json` (its heatmap).
pub fn cmd_ldm(config: &RunConfig) -> Result<Vec<LdmSummary>> {
    config.check_common()?;
    config.check_ldm()?;
    let data = config.prepare()?;
    let mut summaries = Vec::new();
    for spec in &config.specs {
        let (summary, ldm) = ldm_entropy(config, &data, spec)?;
        let base = |ext: &str| config.out_dir.join(format!("{}.{ext}", spec.slug()));
        write_json(&base("json"), &summary)?;
        save_ldm_csv(&ldm, &base("csv"))?;
        render_pgm(&ldm, &config.heatmap, &base("pgm"))?;
        write_json(&base("pgm.json"), &HeatmapInfo::new(&ldm, &config.heatmap))?;
        summaries.push(summary);
    }
    Ok(summaries)
}

fn record_one(
    config: &RunConfig,
    data: &LoadedDataset,
    spec: &ClassifierSpec,
) -> Result<(RecordSummary, Vec<usize>)> {
    let learner = spec.for_recorder();
    let run = estimate_capacity_par(&learner, &data.dataset, config.trials, config.master_seed)?;
    let summary = RecordSummary::new(
        learner.to_string(),
        config.dataset.to_string(),
        config.master_seed,
        &run.estimate,
    );
    Ok((summary, run.counts))
}

/// For each classifier writes `<slug>.record.json` and `<slug>.trials.csv`.
/// Depth defaults are replaced by unpruned trees.
pub fn cmd_record(config: &RunConfig) -> Result<Vec<RecordSummary>> {
    config.check_common()?;
    config.check_record()?;
    let data = config.prepare()?;
    let mut summaries = Vec::new();
    for spec in &config.specs {
        let (summary, counts) = record_one(config, &data, spec)?;
        let base = |ext: &str| config.out_dir.join(format!("{}.{ext}", spec.slug()));
        write_json(&base("record.json"), &summary)?;
        save_trials_csv(&counts, &base("trials.csv"))?;
        summaries.push(summary);
    }
    Ok(summaries)
}

/// One row of `compare.csv`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CompareRow {
    pub spec: String,
    pub average_entropy: f64,
    pub all_converged: bool,
    pub mean_recovered: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Runs both pipelines and writes `compare.csv`, sorted by recorder mean
/// (highest first).
pub fn cmd_compare(config: &RunConfig) -> Result<Vec<CompareRow>> {
    if config.specs.len() < 2 {
        return Err(Error::Usage(
            "compare needs at least two --spec values".into(),
        ));
    }
    config.check_common()?;
    config.check_ldm()?;
    config.check_record()?;
    let data = config.prepare()?;
    let mut rows = Vec::new();
    for spec in &config.specs {
        let (ldm, _) = ldm_entropy(config, &data, spec)?;
        let (rec, _) = record_one(config, &data, spec)?;
        rows.push(CompareRow {
            spec: spec.to_string(),
            average_entropy: ldm.average_entropy,
            all_converged: ldm.all_converged,
            mean_recovered: rec.mean_recovered,
            ci_low: rec.ci_low,
            ci_high: rec.ci_high,
        });
    }
    rows.sort_by(|a, b| b.mean_recovered.total_cmp(&a.mean_recovered));
    let path = config.out_dir.join("compare.csv");
    let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    let mut w = csv::Writer::from_writer(file);
    for row in &rows {
        w.serialize(row).map_err(|source| Error::Csv {
            path: path.clone(),
            source,
        })?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(rows)
}

fn spec_width<'a>(names: impl Iterator<Item = &'a str>) -> usize {
    names.map(str::len).max().unwrap_or(0).max(4)
}

fn print_ldm(rows: &[LdmSummary], out: &mut dyn Write) -> std::io::Result<()> {
    let w = spec_width(rows.iter().map(|r| r.spec.as_str()));
    writeln!(out, "{:<w$}  {:>14}  converged", "spec", "avg_entropy")?;
    for r in rows {
        let done = r.runs.iter().filter(|f| f.converged).count();
        writeln!(
            out,
            "{:<w$}  {:>14.4}  {}/{}",
            r.spec,
            r.average_entropy,
            done,
            r.runs.len()
        )?;
    }
    Ok(())
}

fn print_record(rows: &[RecordSummary], out: &mut dyn Write) -> std::io::Result<()> {
    let w = spec_width(rows.iter().map(|r| r.spec.as_str()));
    writeln!(
        out,
        "{:<w$}  {:>9}  {:>9}  {:>9}",
        "spec", "mean", "ci_low", "ci_high"
    )?;
    for r in rows {
        writeln!(
            out,
            "{:<w$}  {:>9.2}  {:>9.2}  {:>9.2}",
            r.spec, r.mean_recovered, r.ci_low, r.ci_high
        )?;
    }
    Ok(())
}

fn print_compare(rows: &[CompareRow], out: &mut dyn Write) -> std::io::Result<()> {
    let w = spec_width(rows.iter().map(|r| r.spec.as_str()));
    writeln!(
        out,
        "{:<w$}  {:>14}  {:>9}  {:>9}  {:>9}",
        "spec", "avg_entropy", "mean", "ci_low", "ci_high"
    )?;
    for r in rows {
        let flag = if r.all_converged {
            ""
        } else {
            " (not converged)"
        };
        writeln!(
            out,
            "{:<w$}  {:>14.4}  {:>9.2}  {:>9.2}  {:>9.2}{flag}",
            r.spec, r.average_entropy, r.mean_recovered, r.ci_low, r.ci_high
        )?;
    }
    Ok(())
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<()> {
    let io = |e| Error::io("<stdout>", e);
    match command {
        Command::Ldm(args) => print_ldm(&cmd_ldm(&args.try_into()?)?, stdout).map_err(io),
        Command::Record(args) => print_record(&cmd_record(&args.try_into()?)?, stdout).map_err(io),
        Command::Compare(args) => {
            print_compare(&cmd_compare(&args.try_into()?)?, stdout).map_err(io)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status: 0 on success, 1 for usage or data errors, 2 when the
/// labeling space is too large.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.exit_code() == 2 {
                let _ = writeln!(
                    stderr,
                    "hint: lower --holdout so that C^N' stays within the limit"
                );
            }
            e.exit_code()
        }
    }
}
