//! Local and global lexical overlap between sentences.

use std::collections::{BTreeMap, BTreeSet};

use crate::annotate::{EssayDoc, Token};
use crate::tags;

/// The item an overlap measure compares between sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapKind {
    /// Case-folded form of nouns, verbs, adjectives and adverbs.
    ContentWord,
    /// Case-folded noun form.
    Noun,
    /// Stem of a content word.
    Stem,
    /// Noun stem, or the form of a personal pronoun.
    Argument,
}

impl OverlapKind {
    pub const ALL: [OverlapKind; 4] = [
        OverlapKind::ContentWord,
        OverlapKind::Noun,
        OverlapKind::Stem,
        OverlapKind::Argument,
    ];

    pub fn item(self, t: &Token) -> Option<String> {
        let pos = t.pos.as_str();
        match self {
            OverlapKind::ContentWord => tags::is_lexical(pos).then(|| t.folded()),
            OverlapKind::Noun => tags::is_noun(pos).then(|| t.folded()),
            OverlapKind::Stem => tags::is_lexical(pos).then(|| t.stem_or_derived()),
            OverlapKind::Argument => {
                if tags::is_noun(pos) {
                    Some(t.stem_or_derived())
                } else if tags::is_in(tags::PERSONAL_PRONOUNS, pos) {
                    Some(t.folded())
                } else {
                    None
                }
            }
        }
    }
}

/// Eight overlap values: the four kinds at the local level, then the same
/// four at the global level.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OverlapProfile {
    pub local: [f64; 4],
    pub global: [f64; 4],
}

impl OverlapProfile {
    pub fn values(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        out[..4].copy_from_slice(&self.local);
        out[4..].copy_from_slice(&self.global);
        out
    }
}

/// Per-sentence item sets for one overlap kind.
pub fn sentence_items(doc: &EssayDoc, kind: OverlapKind) -> Vec<BTreeSet<String>> {
    doc.sentences
        .iter()
        .map(|s| s.tokens.iter().filter_map(|t| kind.item(t)).collect())
        .collect()
}

/// Fractions of adjacent and of all unordered sentence pairs sharing an item.
///
/// Works from posting lists (item -> sentences containing it) so the cost
/// depends on how often items repeat rather than on the square of the
/// sentence count.
pub fn pair_overlap(items: &[BTreeSet<String>]) -> (f64, f64) {
    let n = items.len();
    if n < 2 {
        return (0.0, 0.0);
    }
    let mut postings: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, set) in items.iter().enumerate() {
        for item in set {
            postings.entry(item.as_str()).or_default().push(i);
        }
    }
    let mut adjacent = vec![false; n - 1];
    let mut any = vec![false; n * (n - 1) / 2];
    // Pair (i, j), i < j, sits at row offset i*(2n-i-1)/2 plus j-i-1.
    let slot = |i: usize, j: usize| i * (2 * n - i - 1) / 2 + (j - i - 1);
    for list in postings.values() {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                any[slot(i, j)] = true;
                if j == i + 1 {
                    adjacent[i] = true;
                }
            }
        }
    }
    let count = |v: &[bool]| v.iter().filter(|&&b| b).count() as f64;
    (
        count(&adjacent) / (n - 1) as f64,
        count(&any) / any.len() as f64,
    )
}

pub fn overlap_features(doc: &EssayDoc) -> OverlapProfile {
    let mut p = OverlapProfile::default();
    for (k, kind) in OverlapKind::ALL.into_iter().enumerate() {
        let (local, global) = pair_overlap(&sentence_items(doc, kind));
        p.local[k] = local;
        p.global[k] = global;
    }
    p
}
