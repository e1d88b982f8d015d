//! k-fold cross-validation with per-fold normalization.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::{train, Hyper, Prediction, Task};
use crate::annotate::Label;
use crate::evaluate::{classification_report, regression_report, EvalReport};
use crate::par::Execution;
use crate::vector::FeatureMatrix;
use crate::{Error, Result};

fn check_k(k: usize, rows: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Config(format!("cross-validation needs at least 2 folds, got {k}")));
    }
    if k > rows {
        return Err(Error::Config(format!("{k} folds requested for {rows} rows")));
    }
    Ok(())
}

/// Fold number for each row. Each class's rows are shuffled and dealt
/// round-robin, continuing the deal across classes so fold sizes differ by
/// at most one.
pub fn stratified_folds(labels: &[Label], k: usize, seed: u64) -> Result<Vec<usize>> {
    check_k(k, labels.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold = vec![0; labels.len()];
    let mut next = 0;
    for class in Label::ALL {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(&mut rng);
        for i in idx {
            fold[i] = next % k;
            next += 1;
        }
    }
    Ok(fold)
}

/// Unstratified shuffled folds, for numeric targets.
pub fn shuffled_folds(rows: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    check_k(k, rows)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..rows).collect();
    idx.shuffle(&mut rng);
    let mut fold = vec![0; rows];
    for (n, i) in idx.into_iter().enumerate() {
        fold[i] = n % k;
    }
    Ok(fold)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub folds: usize,
    pub seed: u64,
    /// Fold assignment per row.
    pub fold_of: Vec<usize>,
    /// Out-of-fold prediction per row, in row order.
    pub predictions: Vec<Prediction>,
    /// Metrics over the pooled out-of-fold predictions.
    pub report: EvalReport,
}

/// Trains on k−1 folds and predicts the held-out one, k times. Scaling and
/// vocabularies are refitted on each training part, so the held-out rows
/// never inform them.
pub fn cross_validate(
    m: &FeatureMatrix,
    task: Task,
    k: usize,
    hyper: Hyper,
    exec: Execution,
) -> Result<CvResult> {
    let seed = hyper.seed;
    let fold_of = match task {
        Task::Classification => {
            let labels: Vec<Label> = m
                .rows
                .iter()
                .map(|r| r.label.ok_or_else(|| Error::Config(format!("essay `{}` has no label", r.id))))
                .collect::<Result<_>>()?;
            stratified_folds(&labels, k, seed)?
        }
        Task::Regression => shuffled_folds(m.len(), k, seed)?,
    };
    let per_fold = exec.map_range(k, |f| -> Result<Vec<(usize, Prediction)>> {
        let train_idx: Vec<usize> = (0..m.len()).filter(|&i| fold_of[i] != f).collect();
        let test_idx: Vec<usize> = (0..m.len()).filter(|&i| fold_of[i] == f).collect();
        let model = train(&m.select(&train_idx), task, hyper, Execution::Sequential)?;
        let pred = model.predict(&m.select(&test_idx))?;
        Ok(test_idx.into_iter().zip(pred).collect())
    });
    let mut predictions: Vec<Option<Prediction>> = vec![None; m.len()];
    for fold in per_fold {
        for (i, p) in fold? {
            predictions[i] = Some(p);
        }
    }
    let predictions: Vec<Prediction> = predictions.into_iter().map(|p| p.expect("every row is in a fold")).collect();
    let report = match task {
        Task::Classification => {
            let pred: Vec<Label> = predictions.iter().filter_map(|p| p.label()).collect();
            let gold: Vec<Label> = m.rows.iter().filter_map(|r| r.label).collect();
            classification_report(&pred, &gold)?
        }
        Task::Regression => {
            let pred: Vec<f64> = predictions.iter().map(|p| p.value()).collect();
            let gold: Vec<f64> = m.rows.iter().filter_map(|r| r.target()).collect();
            regression_report(&pred, &gold)?
        }
    };
    Ok(CvResult { folds: k, seed, fold_of, predictions, report })
}
