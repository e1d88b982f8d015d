//! Min-max scaling fitted on training rows, and one-hot categoricals.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::{FeatureMatrix, FeatureVector};

/// Per-column training minimum and maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMax {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl MinMax {
    /// Imputed entries do not contribute; a column with no defined value is
    /// treated as constant.
    pub fn fit(rows: &[FeatureVector], width: usize) -> Self {
        let mut min = vec![f64::INFINITY; width];
        let mut max = vec![f64::NEG_INFINITY; width];
        for r in rows {
            for (j, &v) in r.values.iter().enumerate() {
                if r.imputed.contains(&j) {
                    continue;
                }
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        for j in 0..width {
            if min[j] > max[j] {
                min[j] = 0.0;
                max[j] = 0.0;
            }
        }
        MinMax { min, max }
    }

    /// Scales into [0, 1], clamping values outside the training range.
    /// Constant columns map to 0.
    pub fn scale(&self, j: usize, v: f64) -> f64 {
        let (lo, hi) = (self.min[j], self.max[j]);
        if hi > lo {
            ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }

    pub fn unscale(&self, j: usize, z: f64) -> f64 {
        self.min[j] + z * (self.max[j] - self.min[j])
    }

    pub fn is_constant(&self, j: usize) -> bool {
        self.max[j] <= self.min[j]
    }
}

/// Sorted vocabulary of a categorical slot.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CategoricalEncoder {
    pub vocabulary: Vec<String>,
}

impl CategoricalEncoder {
    pub fn fit<'a>(values: impl IntoIterator<Item = &'a str>) -> Self {
        let mut vocabulary: Vec<String> = values.into_iter().map(str::to_string).collect();
        vocabulary.sort();
        vocabulary.dedup();
        CategoricalEncoder { vocabulary }
    }

    pub fn encode(&self, value: &str) -> Vec<f64> {
        encode_categorical(value, &self.vocabulary)
    }
}

/// One indicator per vocabulary entry; an unseen value gives all zeros.
pub fn encode_categorical(value: &str, vocabulary: &[String]) -> Vec<f64> {
    vocabulary.iter().map(|v| if v == value { 1.0 } else { 0.0 }).collect()
}

/// Everything needed to turn raw feature vectors into model inputs: the
/// numeric scaling and the categorical vocabularies, all fitted on training
/// rows only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Design {
    pub features: Vec<String>,
    pub scaling: MinMax,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt: Option<CategoricalEncoder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<CategoricalEncoder>,
}

impl Design {
    pub fn fit(train: &FeatureMatrix) -> Self {
        let p = &train.profile;
        let vocab = |get: fn(&FeatureVector) -> Option<&str>| {
            CategoricalEncoder::fit(train.rows.iter().filter_map(get))
        };
        Design {
            features: p.features.clone(),
            scaling: MinMax::fit(&train.rows, p.len()),
            prompt: p.include_prompt.then(|| vocab(|r| r.prompt.as_deref())),
            l1: p.include_l1.then(|| vocab(|r| r.l1.as_deref())),
        }
    }

    /// Column names after categorical expansion: numerics, then
    /// `prompt=<value>` and `L1=<value>` indicators.
    pub fn expanded_names(&self) -> Vec<String> {
        let mut names = self.features.clone();
        if let Some(e) = &self.prompt {
            names.extend(e.vocabulary.iter().map(|v| format!("prompt={v}")));
        }
        if let Some(e) = &self.l1 {
            names.extend(e.vocabulary.iter().map(|v| format!("L1={v}")));
        }
        names
    }

    pub fn width(&self) -> usize {
        self.features.len()
            + self.prompt.as_ref().map_or(0, |e| e.vocabulary.len())
            + self.l1.as_ref().map_or(0, |e| e.vocabulary.len())
    }

    pub fn row(&self, r: &FeatureVector) -> Vec<f64> {
        let mut out: Vec<f64> = r
            .values
            .iter()
            .enumerate()
            .map(|(j, &v)| self.scaling.scale(j, v))
            .collect();
        if let Some(e) = &self.prompt {
            out.extend(e.encode(r.prompt.as_deref().unwrap_or_default()));
        }
        if let Some(e) = &self.l1 {
            out.extend(e.encode(r.l1.as_deref().unwrap_or_default()));
        }
        out
    }

    pub fn transform(&self, m: &FeatureMatrix) -> Array2<f64> {
        let w = self.width();
        let mut x = Array2::zeros((m.len(), w));
        for (i, r) in m.rows.iter().enumerate() {
            for (j, v) in self.row(r).into_iter().enumerate() {
                x[[i, j]] = v;
            }
        }
        x
    }
}
