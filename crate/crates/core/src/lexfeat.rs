//! Lexical diversity: four type-token ratios and MTLD.
//!
//! Types are case-folded forms. Callers pass word tokens only (see
//! [`crate::tags::is_word`]); [`word_features`] does that filtering.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::annotate::EssayDoc;
use crate::{Error, Result};

pub const MTLD_THRESHOLD: f64 = 0.72;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TtrFamily {
    pub ttr: f64,
    pub corrected: f64,
    pub root: f64,
    /// `None` for a single token (ln 1 / ln 1).
    pub bilog: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LexicalProfile {
    pub ttr: f64,
    pub corrected_ttr: f64,
    pub root_ttr: f64,
    pub bilog_ttr: Option<f64>,
    /// `None` when the text never falls below the threshold (no factors).
    pub mtld: Option<f64>,
}

fn type_count<S: AsRef<str>>(tokens: &[S]) -> usize {
    tokens
        .iter()
        .map(|t| t.as_ref().to_lowercase())
        .collect::<HashSet<_>>()
        .len()
}

pub fn ttr_family<S: AsRef<str>>(tokens: &[S]) -> Result<TtrFamily> {
    if tokens.is_empty() {
        return Err(Error::UndefinedInput("type-token ratio of zero tokens".into()));
    }
    let n = tokens.len() as f64;
    let types = type_count(tokens) as f64;
    Ok(TtrFamily {
        ttr: types / n,
        corrected: types / (2.0 * n).sqrt(),
        root: types / n.sqrt(),
        bilog: (tokens.len() > 1).then(|| types.ln() / n.ln()),
    })
}

/// Factor count of one directional MTLD pass, partial factor included.
fn mtld_factors<'a>(tokens: impl Iterator<Item = &'a str>, threshold: f64) -> (f64, usize) {
    let mut factors = 0.0;
    let mut types: HashSet<String> = HashSet::new();
    let mut count = 0usize;
    let mut total = 0usize;
    let mut ttr = 1.0;
    for tok in tokens {
        total += 1;
        count += 1;
        types.insert(tok.to_lowercase());
        ttr = types.len() as f64 / count as f64;
        if ttr < threshold {
            factors += 1.0;
            types.clear();
            count = 0;
            ttr = 1.0;
        }
    }
    if count > 0 {
        factors += (1.0 - ttr) / (1.0 - threshold);
    }
    (factors, total)
}

/// Bidirectional MTLD: mean of the forward and backward passes.
///
/// Returns `Ok(None)` when neither pass yields a factor, i.e. every token
/// is distinct.
pub fn mtld<S: AsRef<str>>(tokens: &[S], threshold: f64) -> Result<Option<f64>> {
    if tokens.is_empty() {
        return Err(Error::UndefinedInput("MTLD of zero tokens".into()));
    }
    let (fwd, n) = mtld_factors(tokens.iter().map(AsRef::as_ref), threshold);
    let (bwd, _) = mtld_factors(tokens.iter().rev().map(AsRef::as_ref), threshold);
    if fwd == 0.0 || bwd == 0.0 {
        return Ok(None);
    }
    let n = n as f64;
    Ok(Some((n / fwd + n / bwd) / 2.0))
}

pub fn word_features(doc: &EssayDoc) -> Result<LexicalProfile> {
    let words: Vec<&str> = doc.words().map(|t| t.form.as_str()).collect();
    let fam = ttr_family(&words)?;
    Ok(LexicalProfile {
        ttr: fam.ttr,
        corrected_ttr: fam.corrected,
        root_ttr: fam.root,
        bilog_ttr: fam.bilog,
        mtld: mtld(&words, MTLD_THRESHOLD)?,
    })
}
