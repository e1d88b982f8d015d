//! End-to-end protocol on the synthetic corpus: extraction, stratified
//! cross-validation, class balancing and the shuffled-label control.

use aes_core::annotate::Label;
use aes_core::discfeat::ConnectiveLexicon;
use aes_core::learn::{class_counts, cross_validate, subsample_balance, Hyper, Task};
use aes_core::synth::{generate, SynthConfig};
use aes_core::vector::{extract, FeatureMatrix, FeatureProfile, Resources};
use aes_core::Execution;
use rand::seq::SliceRandom;

use crate::support::{ensure, rng, Check, Outcome};

pub fn separable() -> Vec<Check> {
    vec![("10-fold CV on 3x300 synthetic essays", separable_cv)]
}

pub fn balancing() -> Vec<Check> {
    vec![("subsampling to the rarest class", balance_counts)]
}

pub fn shuffled() -> Vec<Check> {
    vec![("10-fold CV with permuted labels", shuffled_cv)]
}

fn matrix(permute_labels: bool) -> Result<FeatureMatrix, String> {
    let docs = generate(&SynthConfig { permute_labels, ..SynthConfig::default() }).map_err(|e| e.to_string())?;
    let profile = FeatureProfile::builtin("paper-114").ok_or("paper-114 is not built in")?;
    let res = Resources { lexicon: Some(ConnectiveLexicon::builtin()), dictionary: None };
    extract(&docs, &profile, &res, Execution::Parallel).map_err(|e| e.to_string())
}

fn cv_confusion(permute_labels: bool) -> Result<(f64, [[usize; 3]; 3]), String> {
    let m = matrix(permute_labels)?;
    ensure(m.len() == 900, || format!("{} essays", m.len()))?;
    let cv = cross_validate(&m, Task::Classification, 10, Hyper::default(), Execution::Parallel)
        .map_err(|e| e.to_string())?;
    let accuracy = cv.report.accuracy.ok_or("no accuracy")?;
    let confusion = cv.report.confusion.ok_or("no confusion matrix")?;
    Ok((accuracy, confusion))
}

fn separable_cv() -> Outcome {
    let (accuracy, c) = cv_confusion(false)?;
    let adjacent = c[0][1] + c[1][0] + c[1][2] + c[2][1];
    let distant = c[0][2] + c[2][0];
    ensure(accuracy >= 0.95, || format!("accuracy {accuracy:.4} below 0.95, confusion {c:?}"))?;
    ensure(adjacent >= 10 * distant, || format!("{adjacent} adjacent vs {distant} low-high confusions"))?;
    Ok(format!("accuracy {accuracy:.4}, adjacent {adjacent}, low-high {distant}"))
}

fn shuffled_cv() -> Outcome {
    let (accuracy, c) = cv_confusion(true)?;
    ensure((0.23..=0.43).contains(&accuracy), || format!("accuracy {accuracy:.4} outside chance band, confusion {c:?}"))?;
    Ok(format!("accuracy {accuracy:.4}"))
}

fn balance_counts() -> Outcome {
    let mut labels: Vec<Option<Label>> = [(Label::Low, 1069), (Label::Medium, 5366), (Label::High, 3464)]
        .into_iter()
        .flat_map(|(l, n)| std::iter::repeat_n(Some(l), n))
        .collect();
    labels.shuffle(&mut rng(5));
    let picked = subsample_balance(&labels, 1).map_err(|e| e.to_string())?;
    let counts = class_counts(picked.iter().map(|&i| labels[i].expect("labelled")));
    ensure(counts == [1069; 3], || format!("balanced counts {counts:?}"))?;
    let mut unique = picked.clone();
    unique.sort_unstable();
    unique.dedup();
    ensure(unique.len() == picked.len(), || "an essay was picked twice".into())?;
    ensure(picked == subsample_balance(&labels, 1).map_err(|e| e.to_string())?, || "not deterministic".into())?;
    Ok(format!("{counts:?}"))
}
