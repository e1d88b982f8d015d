//! Class balancing by downsampling to the minority class.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::annotate::Label;
use crate::{Error, Result};

/// Indices to keep so that every class present has as many rows as the
/// smallest one. Rows are drawn without replacement using `seed` and
/// returned in their original order.
pub fn subsample_balance(labels: &[Option<Label>], seed: u64) -> Result<Vec<usize>> {
    let mut by_class: [Vec<usize>; 3] = Default::default();
    for (i, l) in labels.iter().enumerate() {
        let l = l.ok_or_else(|| Error::Config(format!("row {i} has no class label to balance on")))?;
        by_class[l.index()].push(i);
    }
    let present: Vec<&mut Vec<usize>> = by_class.iter_mut().filter(|v| !v.is_empty()).collect();
    if present.is_empty() {
        return Err(Error::Config("no labelled rows to balance".into()));
    }
    let min = present.iter().map(|v| v.len()).min().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = Vec::with_capacity(min * present.len());
    for v in present {
        if v.len() > min {
            v.shuffle(&mut rng);
            v.truncate(min);
        }
        keep.extend_from_slice(v);
    }
    keep.sort_unstable();
    Ok(keep)
}

/// Class counts in [`Label::ALL`] order.
pub fn class_counts(labels: impl IntoIterator<Item = Label>) -> [usize; 3] {
    let mut c = [0; 3];
    for l in labels {
        c[l.index()] += 1;
    }
    c
}
