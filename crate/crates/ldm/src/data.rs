//! Loading labeled datasets from CSV, plus the bundled Iris data.

use crate::error::{Error, Result};
use ldm_core::dataset::Features;
use ldm_core::LabeledDataset;
use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

const IRIS_CSV: &str = include_str!("../data/iris.csv");

/// Which column of a CSV file holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Index(usize),
    /// Header name; the file must have a header row.
    Name(String),
}

impl FromStr for LabelColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Usage("empty label column".into()));
        }
        Ok(match s.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(s.to_string()),
        })
    }
}

impl fmt::Display for LabelColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelColumn::Index(i) => write!(f, "{i}"),
            LabelColumn::Name(n) => f.write_str(n),
        }
    }
}

/// `iris` or `csv:PATH:LABELCOL`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetSource {
    Iris,
    Csv { path: PathBuf, label: LabelColumn },
}

impl DatasetSource {
    pub fn load(&self) -> Result<LoadedDataset> {
        match self {
            DatasetSource::Iris => Ok(builtin_iris()),
            DatasetSource::Csv { path, label } => load_csv(path, label),
        }
    }
}

impl FromStr for DatasetSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "iris" {
            return Ok(DatasetSource::Iris);
        }
        let rest = s.strip_prefix("csv:").ok_or_else(|| {
            Error::Usage(format!(
                "unknown dataset `{s}`, expected iris or csv:PATH:LABELCOL"
            ))
        })?;
        // the path may itself contain colons, the label column may not
        let (path, label) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::Usage(format!("`{s}` is missing the label column")))?;
        if path.is_empty() {
            return Err(Error::Usage(format!("`{s}` is missing the file path")));
        }
        Ok(DatasetSource::Csv {
            path: PathBuf::from(path),
            label: label.parse()?,
        })
    }
}

impl fmt::Display for DatasetSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetSource::Iris => f.write_str("iris"),
            DatasetSource::Csv { path, label } => write!(f, "csv:{}:{label}", path.display()),
        }
    }
}

/// A dataset together with the original label names, indexed by class.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDataset {
    pub dataset: LabeledDataset,
    pub class_names: Vec<String>,
    pub feature_names: Option<Vec<String>>,
}

/// The 150-row Iris data (4 features, 3 species in the order setosa,
/// versicolor, virginica).
pub fn builtin_iris() -> LoadedDataset {
    parse_csv(
        IRIS_CSV.as_bytes(),
        Path::new("<iris>"),
        &LabelColumn::Index(4),
    )
    .expect("bundled Iris data is well formed")
}

/// Reads a CSV file with one feature per column and one label column.
///
/// The first row is taken as a header when any of its feature cells is not
/// a number. Label values are arbitrary strings, numbered in order of first
/// appearance. At least two distinct labels are required.
pub fn load_csv(path: &Path, label: &LabelColumn) -> Result<LoadedDataset> {
    let mut text = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut text))
        .map_err(|e| Error::io(path, e))?;
    parse_csv(&text, path, label)
}

fn invalid(path: &Path, msg: impl fmt::Display) -> Error {
    Error::Core(ldm_core::Error::InvalidDataset(format!(
        "{}: {msg}",
        path.display()
    )))
}

fn parse_csv(bytes: &[u8], path: &Path, label: &LabelColumn) -> Result<LoadedDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|source| Error::Csv {
            path: path.into(),
            source,
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push(rec);
    }
    let Some(first) = records.first() else {
        return Err(invalid(path, "no rows"));
    };
    let width = first.len();
    if width < 2 {
        return Err(invalid(
            path,
            "need at least one feature column and a label column",
        ));
    }

    let label_col = match label {
        LabelColumn::Index(i) if *i < width => *i,
        LabelColumn::Index(i) => {
            return Err(invalid(
                path,
                format!("label column {i} out of range ({width} columns)"),
            ))
        }
        LabelColumn::Name(name) => first
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| invalid(path, format!("no column named `{name}` in the header")))?,
    };
    let has_header = matches!(label, LabelColumn::Name(_))
        || first
            .iter()
            .enumerate()
            .any(|(j, cell)| j != label_col && cell.parse::<f64>().is_err());
    let feature_names = has_header.then(|| {
        first
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != label_col)
            .map(|(_, h)| h.to_string())
            .collect()
    });

    let body = &records[usize::from(has_header)..];
    let mut data = Vec::with_capacity(body.len() * (width - 1));
    let mut labels = Vec::with_capacity(body.len());
    let mut class_ids: HashMap<String, usize> = HashMap::new();
    let mut class_names = Vec::new();
    for (i, rec) in body.iter().enumerate() {
        // 1-based line number in the file
        let line = i + 1 + usize::from(has_header);
        if rec.len() != width {
            return Err(invalid(
                path,
                format!("row {line} has {} fields, expected {width}", rec.len()),
            ));
        }
        for (j, cell) in rec.iter().enumerate() {
            if j == label_col {
                let next = class_names.len();
                let id = *class_ids.entry(cell.to_string()).or_insert(next);
                if id == next {
                    class_names.push(cell.to_string());
                }
                labels.push(id);
            } else {
                let v: f64 = cell.parse().map_err(|_| {
                    invalid(
                        path,
                        format!("row {line}, column {j}: `{cell}` is not a number"),
                    )
                })?;
                if !v.is_finite() {
                    return Err(invalid(
                        path,
                        format!("row {line}, column {j}: non-finite value"),
                    ));
                }
                data.push(v);
            }
        }
    }
    if body.is_empty() {
        return Err(invalid(path, "no data rows"));
    }
    if class_names.len() < 2 {
        return Err(invalid(
            path,
            format!(
                "need at least 2 distinct labels, found {}",
                class_names.len()
            ),
        ));
    }
    let features = Features::new(data, body.len(), width - 1)?;
    let dataset = LabeledDataset::new(features, labels, class_names.len())?;
    Ok(LoadedDataset {
        dataset,
        class_names,
        feature_names,
    })
}
