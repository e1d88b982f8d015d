//! Feature-matrix CSV and its JSON sidecar.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Design, FeatureMatrix, FeatureProfile, Imputation};
use crate::{Error, Result};

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("CSV output: {e}"))
}

/// Writes one row per essay: `id`, the raw numeric features in profile
/// order, the one-hot categorical columns, then `label` and `score` when any
/// row carries them. Numbers use the shortest representation that reads back
/// to the same `f64`.
pub fn write_csv<W: Write>(writer: W, m: &FeatureMatrix) -> Result<()> {
    let design = Design::fit(m);
    let has_label = m.rows.iter().any(|r| r.label.is_some());
    let has_score = m.rows.iter().any(|r| r.score.is_some());
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id".to_string()];
    header.extend(design.expanded_names());
    if has_label {
        header.push("label".into());
    }
    if has_score {
        header.push("score".into());
    }
    w.write_record(&header).map_err(csv_err)?;
    let n = m.width();
    for r in &m.rows {
        let mut rec = vec![r.id.clone()];
        rec.extend(r.values.iter().map(|v| v.to_string()));
        rec.extend(design.row(r)[n..].iter().map(|v| v.to_string()));
        if has_label {
            rec.push(r.label.map(|l| l.to_string()).unwrap_or_default());
        }
        if has_score {
            rec.push(r.score.map(|s| s.to_string()).unwrap_or_default());
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| csv_err(e.into()))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub format_version: u32,
    pub profile: FeatureProfile,
    /// Scaling and vocabularies fitted on the exported rows.
    pub design: Design,
    pub imputations: Vec<Imputation>,
}

impl Sidecar {
    pub const FORMAT_VERSION: u32 = 1;

    pub fn new(m: &FeatureMatrix) -> Self {
        Sidecar {
            format_version: Self::FORMAT_VERSION,
            profile: m.profile.clone(),
            design: Design::fit(m),
            imputations: m.imputations(),
        }
    }
}

pub fn write_sidecar<W: Write>(writer: W, m: &FeatureMatrix) -> Result<()> {
    serde_json::to_writer_pretty(writer, &Sidecar::new(m))
        .map_err(|e| Error::Config(format!("sidecar output: {e}")))
}

pub fn read_sidecar<R: Read>(reader: R) -> Result<Sidecar> {
    serde_json::from_reader(reader).map_err(|source| Error::Json { line: 0, source })
}
