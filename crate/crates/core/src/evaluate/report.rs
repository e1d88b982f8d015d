//! Evaluation reports, model weight inspection and plain-text tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::metrics::{mae, pearson};
use crate::annotate::Label;
use crate::learn::{LinearModel, Task};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub task: Task,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    /// Gold (rows) by predicted (columns), in [`Label::ALL`] order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confusion: Option<[[usize; 3]; 3]>,
    /// Per class; `None` where the class was never predicted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<[Option<f64>; 3]>,
    /// Per class; `None` where the class never occurs in the gold labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recall: Option<[Option<f64>; 3]>,
    /// Undefined (absent) when either side is constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pearson: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mae: Option<f64>,
}

/// Confusion matrix, accuracy and per-class precision/recall. Pearson and
/// MAE are computed on the class ordinals.
pub fn classification_report(pred: &[Label], gold: &[Label]) -> Result<EvalReport> {
    if pred.len() != gold.len() {
        return Err(Error::LengthMismatch { left: pred.len(), right: gold.len() });
    }
    if pred.is_empty() {
        return Err(Error::UndefinedInput("empty prediction list".into()));
    }
    let mut cm = [[0usize; 3]; 3];
    for (p, g) in pred.iter().zip(gold) {
        cm[g.index()][p.index()] += 1;
    }
    let n = pred.len();
    let trace: usize = (0..3).map(|c| cm[c][c]).sum();
    let precision = std::array::from_fn(|c| {
        let col: usize = (0..3).map(|g| cm[g][c]).sum();
        (col > 0).then(|| cm[c][c] as f64 / col as f64)
    });
    let recall = std::array::from_fn(|c| {
        let row: usize = cm[c].iter().sum();
        (row > 0).then(|| cm[c][c] as f64 / row as f64)
    });
    let po: Vec<f64> = pred.iter().map(|l| l.ordinal()).collect();
    let go: Vec<f64> = gold.iter().map(|l| l.ordinal()).collect();
    Ok(EvalReport {
        task: Task::Classification,
        n,
        accuracy: Some(trace as f64 / n as f64),
        confusion: Some(cm),
        precision: Some(precision),
        recall: Some(recall),
        pearson: pearson(&po, &go).ok(),
        mae: Some(mae(&po, &go)?),
    })
}

pub fn regression_report(pred: &[f64], gold: &[f64]) -> Result<EvalReport> {
    let m = mae(pred, gold)?;
    Ok(EvalReport {
        task: Task::Regression,
        n: pred.len(),
        accuracy: None,
        confusion: None,
        precision: None,
        recall: None,
        pearson: pearson(pred, gold).ok(),
        mae: Some(m),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedWeight {
    pub name: String,
    pub weight: f64,
    /// False for zero weights listed only because nothing else was available.
    pub discriminative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightReport {
    pub positive: Vec<RankedWeight>,
    pub negative: Vec<RankedWeight>,
}

/// The `top_k` largest positive and most negative weights, ties broken by
/// name. Zero weights are left out, except that an all-zero model lists
/// its first `top_k` names on both sides, flagged as non-discriminative.
pub fn weight_report(names: &[String], weights: &[f64], top_k: usize) -> Result<WeightReport> {
    if names.len() != weights.len() {
        return Err(Error::LengthMismatch { left: names.len(), right: weights.len() });
    }
    let mut pairs: Vec<(&String, f64)> = names.iter().zip(weights.iter().copied()).collect();
    let entry = |(n, w): (&String, f64)| RankedWeight { name: n.clone(), weight: w, discriminative: w != 0.0 };
    if pairs.iter().all(|p| p.1 == 0.0) {
        pairs.sort_by(|a, b| a.0.cmp(b.0));
        let zeros: Vec<RankedWeight> = pairs.into_iter().take(top_k).map(entry).collect();
        return Ok(WeightReport { positive: zeros.clone(), negative: zeros });
    }
    let mut pos: Vec<(&String, f64)> = pairs.iter().copied().filter(|p| p.1 > 0.0).collect();
    pos.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let mut neg: Vec<(&String, f64)> = pairs.iter().copied().filter(|p| p.1 < 0.0).collect();
    neg.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0)));
    Ok(WeightReport {
        positive: pos.into_iter().take(top_k).map(entry).collect(),
        negative: neg.into_iter().take(top_k).map(entry).collect(),
    })
}

/// Weight report of a regression model, or of one pairwise machine of a
/// classifier (default: the lowest against the highest class).
pub fn model_weight_report(
    model: &LinearModel,
    pair: Option<(Label, Label)>,
    top_k: usize,
) -> Result<WeightReport> {
    let weights = match (&model.regressor, pair) {
        (Some(r), _) => &r.weights,
        (None, pair) => {
            let (p, n) = pair.unwrap_or((model.classes[0], *model.classes.last().unwrap_or(&model.classes[0])));
            &model
                .machine(p, n)
                .ok_or_else(|| Error::Config(format!("the model has no {p}-vs-{n} machine")))?
                .weights
        }
    };
    weight_report(&model.inputs, weights, top_k)
}

/// Left-aligned first column, right-aligned others, single-space padded.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (j, cell) in r.iter().enumerate().take(cols) {
            width[j] = width[j].max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (j, c) in cells.iter().enumerate() {
            if j > 0 {
                s.push_str("  ");
            }
            if j == 0 {
                let _ = write!(s, "{c:<w$}", w = width[j]);
            } else {
                let _ = write!(s, "{c:>w$}", w = width[j]);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn fmt_opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

impl EvalReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}", self.n);
        if let Some(a) = self.accuracy {
            let _ = writeln!(out, "accuracy = {:.1}%", 100.0 * a);
        }
        if let Some(r) = self.pearson {
            let _ = writeln!(out, "pearson = {r:.3}");
        }
        if let Some(m) = self.mae {
            let _ = writeln!(out, "mae = {m:.3}");
        }
        if let Some(cm) = self.confusion {
            out.push('\n');
            let rows: Vec<Vec<String>> = Label::ALL
                .iter()
                .map(|g| {
                    let mut r = vec![g.to_string()];
                    r.extend(cm[g.index()].iter().map(|c| c.to_string()));
                    r
                })
                .collect();
            out.push_str(&render_table(&["gold \\ predicted", "low", "medium", "high"], &rows));
        }
        if let (Some(p), Some(r)) = (self.precision, self.recall) {
            out.push('\n');
            let rows: Vec<Vec<String>> = Label::ALL
                .iter()
                .map(|c| vec![c.to_string(), fmt_opt(p[c.index()], 3), fmt_opt(r[c.index()], 3)])
                .collect();
            out.push_str(&render_table(&["class", "precision", "recall"], &rows));
        }
        out
    }
}

impl WeightReport {
    pub fn to_text(&self) -> String {
        let n = self.positive.len().max(self.negative.len());
        let cell = |v: &[RankedWeight], i: usize| -> (String, String) {
            v.get(i).map_or((String::new(), String::new()), |w| {
                let mark = if w.discriminative { "" } else { " (non-discriminative)" };
                (format!("{:+.3}", w.weight), format!("{}{mark}", w.name))
            })
        };
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| {
                let (pw, pn) = cell(&self.positive, i);
                let (nw, nn) = cell(&self.negative, i);
                vec![pn, pw, nn, nw]
            })
            .collect();
        render_table(&["positive", "weight", "negative", "weight"], &rows)
    }
}

/// One row of a feature-group comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRow {
    pub group: String,
    pub features: usize,
    /// One report per profile variant: with prompt and L1, without prompt,
    /// without prompt and L1.
    pub reports: Vec<EvalReport>,
}

/// Feature group by metric, one metric column per variant.
pub fn render_group_table(task: Task, rows: &[GroupRow]) -> String {
    let header: &[&str] = match task {
        Task::Classification => &["group", "features", "accuracy", "without prompt", "without prompt and L1"],
        Task::Regression => &["group", "features", "r", "r without prompt", "r without prompt and L1", "MAE"],
    };
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut cells = vec![r.group.clone(), r.features.to_string()];
            for rep in &r.reports {
                cells.push(match task {
                    Task::Classification => rep.accuracy.map_or("-".into(), |a| format!("{:.1}%", 100.0 * a)),
                    Task::Regression => fmt_opt(rep.pearson, 2),
                });
            }
            if task == Task::Regression {
                cells.push(fmt_opt(r.reports.first().and_then(|x| x.mae), 2));
            }
            cells
        })
        .collect();
    render_table(header, &body)
}
