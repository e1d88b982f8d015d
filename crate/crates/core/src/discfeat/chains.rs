//! Coreference chain features.

use crate::annotate::{derive_mention_kind, EssayDoc, MentionKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChainProfile {
    pub average_length: f64,
    /// Share of all chain mentions for each kind in [`MentionKind::REPORTED`].
    pub proportions: [f64; 8],
}

/// Fails when the essay carries no chain layer; an empty layer gives zeros.
pub fn chain_features(doc: &EssayDoc) -> Result<ChainProfile> {
    let chains = doc.chains.as_ref().ok_or_else(|| Error::MissingLayer {
        essay: doc.id.clone(),
        layer: "chains",
        group: "Disc-Chains",
        detail: "no coreference annotation".into(),
    })?;
    let mut counts = [0usize; 8];
    let mut total = 0usize;
    for m in chains.iter().flat_map(|c| &c.mentions) {
        total += 1;
        let kind = derive_mention_kind(doc, m);
        if let Some(k) = MentionKind::REPORTED.iter().position(|&r| r == kind) {
            counts[k] += 1;
        }
    }
    if chains.is_empty() || total == 0 {
        return Ok(ChainProfile::default());
    }
    Ok(ChainProfile {
        average_length: total as f64 / chains.len() as f64,
        proportions: counts.map(|c| c as f64 / total as f64),
    })
}
