//! Linear models: pairwise SVM classifiers and an epsilon-insensitive regressor.

use std::io::{Read, Write};

use ndarray::{Array2, ArrayView1};
use serde::{Deserialize, Serialize};

use super::smo::{primal_weights, solve_svc, solve_svr};
use crate::annotate::Label;
use crate::par::Execution;
use crate::vector::{Design, FeatureMatrix, FeatureVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Classification,
    Regression,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyper {
    #[serde(rename = "C")]
    pub c: f64,
    pub epsilon: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for Hyper {
    fn default() -> Self {
        Hyper { c: 1.0, epsilon: 0.001, tolerance: 0.001, seed: 1 }
    }
}

/// One pairwise machine: a positive decision value votes for `positive`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryMachine {
    pub positive: Label,
    pub negative: Label,
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl BinaryMachine {
    pub fn decision(&self, x: ArrayView1<f64>) -> f64 {
        dot(&self.weights, x) + self.bias
    }
}

/// Regressor trained on the min-max scaled target; predictions are mapped
/// back with `target_min + f(x) · (target_max − target_min)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regressor {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub target_min: f64,
    pub target_max: f64,
}

impl Regressor {
    pub fn predict(&self, x: ArrayView1<f64>) -> f64 {
        let f = dot(&self.weights, x) + self.bias;
        self.target_min + f * (self.target_max - self.target_min)
    }
}

fn dot(w: &[f64], x: ArrayView1<f64>) -> f64 {
    w.iter().zip(x).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub format_version: u32,
    pub task: Task,
    pub profile: String,
    /// Feature scaling and categorical vocabularies from the training rows.
    pub design: Design,
    /// Expanded input names, aligned with every weight vector.
    pub inputs: Vec<String>,
    /// Classes seen in training, in fixed order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Label>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub machines: Vec<BinaryMachine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regressor: Option<Regressor>,
    pub hyper: Hyper,
}

/// A model's output for one essay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Prediction {
    Label(Label),
    Score(f64),
}

impl Prediction {
    pub fn label(self) -> Option<Label> {
        match self {
            Prediction::Label(l) => Some(l),
            Prediction::Score(_) => None,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Prediction::Label(l) => l.ordinal(),
            Prediction::Score(s) => s,
        }
    }
}

pub const MODEL_FORMAT_VERSION: u32 = 1;

fn check_rows(m: &FeatureMatrix) -> Result<()> {
    if m.len() < 2 {
        return Err(Error::Degenerate(format!("{} training row(s); at least 2 needed", m.len())));
    }
    Ok(())
}

fn labels_of(m: &FeatureMatrix) -> Result<Vec<Label>> {
    m.rows
        .iter()
        .map(|r| {
            r.label
                .ok_or_else(|| Error::Config(format!("essay `{}` has no label to train on", r.id)))
        })
        .collect()
}

fn targets_of(m: &FeatureMatrix) -> Result<Vec<f64>> {
    m.rows
        .iter()
        .map(|r| {
            r.target()
                .ok_or_else(|| Error::Config(format!("essay `{}` has no score or label", r.id)))
        })
        .collect()
}

/// Trains one binary machine per unordered pair of the classes present.
/// The lower class of each pair (in [`Label::ALL`] order) is the positive side.
pub fn train_classifier(m: &FeatureMatrix, hyper: Hyper, exec: Execution) -> Result<LinearModel> {
    check_rows(m)?;
    let labels = labels_of(m)?;
    let classes: Vec<Label> = Label::ALL.into_iter().filter(|c| labels.contains(c)).collect();
    if classes.len() < 2 {
        return Err(Error::Degenerate("only one class present".into()));
    }
    let design = Design::fit(m);
    let x = design.transform(m);
    let k = x.dot(&x.t());
    let mut pairs = Vec::new();
    for (a, &pos) in classes.iter().enumerate() {
        for &neg in &classes[a + 1..] {
            pairs.push((pos, neg));
        }
    }
    let machines = exec.map(&pairs, |&(pos, neg)| {
        let idx: Vec<usize> = (0..labels.len())
            .filter(|&i| labels[i] == pos || labels[i] == neg)
            .collect();
        let y: Vec<f64> = idx.iter().map(|&i| if labels[i] == pos { 1.0 } else { -1.0 }).collect();
        let sub = Array2::from_shape_fn((idx.len(), idx.len()), |(a, b)| k[[idx[a], idx[b]]]);
        let sol = solve_svc(&sub, &y, hyper.c, hyper.tolerance);
        let coef: Vec<f64> = y.iter().zip(&sol.alpha).map(|(y, a)| y * a).collect();
        let xs = x.select(ndarray::Axis(0), &idx);
        BinaryMachine {
            positive: pos,
            negative: neg,
            weights: primal_weights(&xs, &coef),
            bias: -sol.rho,
        }
    });
    Ok(LinearModel {
        format_version: MODEL_FORMAT_VERSION,
        task: Task::Classification,
        profile: m.profile.name.clone(),
        inputs: design.expanded_names(),
        design,
        classes,
        machines,
        regressor: None,
        hyper,
    })
}

/// Epsilon-insensitive linear regression on the scaled target.
pub fn train_regressor(m: &FeatureMatrix, hyper: Hyper) -> Result<LinearModel> {
    check_rows(m)?;
    let t = targets_of(m)?;
    let design = Design::fit(m);
    let x = design.transform(m);
    let lo = t.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let regressor = if hi > lo {
        let z: Vec<f64> = t.iter().map(|v| (v - lo) / (hi - lo)).collect();
        let k = x.dot(&x.t());
        let sol = solve_svr(&k, &z, hyper.c, hyper.epsilon, hyper.tolerance);
        let n = z.len();
        let coef: Vec<f64> = (0..n).map(|i| sol.alpha[i] - sol.alpha[i + n]).collect();
        Regressor {
            weights: primal_weights(&x, &coef),
            bias: -sol.rho,
            target_min: lo,
            target_max: hi,
        }
    } else {
        Regressor { weights: vec![0.0; x.ncols()], bias: 0.0, target_min: lo, target_max: hi }
    };
    Ok(LinearModel {
        format_version: MODEL_FORMAT_VERSION,
        task: Task::Regression,
        profile: m.profile.name.clone(),
        inputs: design.expanded_names(),
        design,
        classes: Vec::new(),
        machines: Vec::new(),
        regressor: Some(regressor),
        hyper,
    })
}

pub fn train(m: &FeatureMatrix, task: Task, hyper: Hyper, exec: Execution) -> Result<LinearModel> {
    match task {
        Task::Classification => train_classifier(m, hyper, exec),
        Task::Regression => train_regressor(m, hyper),
    }
}

impl LinearModel {
    /// Pairwise vote; ties go to the class listed first.
    pub fn predict_row(&self, x: ArrayView1<f64>) -> Prediction {
        if let Some(r) = &self.regressor {
            return Prediction::Score(r.predict(x));
        }
        let mut votes = [0usize; 3];
        for m in &self.machines {
            let winner = if m.decision(x) > 0.0 { m.positive } else { m.negative };
            votes[winner.index()] += 1;
        }
        let mut best = self.classes[0];
        for &c in &self.classes[1..] {
            if votes[c.index()] > votes[best.index()] {
                best = c;
            }
        }
        Prediction::Label(best)
    }

    pub fn predict_vector(&self, v: &FeatureVector) -> Prediction {
        let row = ndarray::Array1::from(self.design.row(v));
        self.predict_row(row.view())
    }

    /// Predicts every row. The matrix must carry the model's features, in
    /// any order and possibly with extra columns.
    pub fn predict(&self, m: &FeatureMatrix) -> Result<Vec<Prediction>> {
        let aligned = if m.profile.features == self.design.features {
            std::borrow::Cow::Borrowed(m)
        } else {
            let mut p = m.profile.clone();
            p.features = self.design.features.clone();
            std::borrow::Cow::Owned(m.project(&p)?)
        };
        let x = self.design.transform(&aligned);
        Ok(x.rows().into_iter().map(|r| self.predict_row(r)).collect())
    }

    pub fn machine(&self, positive: Label, negative: Label) -> Option<&BinaryMachine> {
        self.machines
            .iter()
            .find(|m| m.positive == positive && m.negative == negative)
    }

    pub fn save<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, self)
            .map_err(|e| Error::Config(format!("model output: {e}")))
    }

    pub fn load<R: Read>(reader: R) -> Result<Self> {
        let m: LinearModel =
            serde_json::from_reader(reader).map_err(|source| Error::Json { line: 0, source })?;
        if m.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Config(format!(
                "model format version {} is not supported",
                m.format_version
            )));
        }
        Ok(m)
    }
}
