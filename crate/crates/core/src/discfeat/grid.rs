//! Entity grid: syntactic roles of head nouns across sentences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::annotate::EssayDoc;
use crate::tags;
use crate::treeops::{NodeId, ParseTree};
use crate::Result;

/// Grid cell. Ordered so that the stronger role wins when an entity is
/// mentioned more than once in a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    Absent,
    Other,
    Object,
    Subject,
}

impl Role {
    /// Row/column order of the transition table.
    pub const ORDER: [Role; 4] = [Role::Subject, Role::Object, Role::Other, Role::Absent];

    pub fn symbol(self) -> char {
        match self {
            Role::Subject => 'S',
            Role::Object => 'O',
            Role::Other => 'X',
            Role::Absent => '-',
        }
    }

    fn slot(self) -> usize {
        match self {
            Role::Subject => 0,
            Role::Object => 1,
            Role::Other => 2,
            Role::Absent => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityGrid {
    /// Entity -> one cell per sentence.
    pub rows: BTreeMap<String, Vec<Role>>,
    pub sentences: usize,
    /// Mentions found, before merging repeats within a sentence.
    pub mentions: usize,
}

/// NP mentions of one tree as (case-folded head noun, role).
///
/// A mention is an NP with a noun among its immediate children; its head is
/// the rightmost such noun. The role is read off the maximal NP projection
/// above it: subject when that NP's parent is a clause and its next sister
/// is a VP, object when its parent is a VP, other elsewhere.
pub fn tree_mentions(tree: &ParseTree) -> Vec<(String, Role)> {
    let mut out = Vec::new();
    for id in tree.ids() {
        if tree.label(id) != "NP" {
            continue;
        }
        let head = tree
            .children(id)
            .iter()
            .rev()
            .find(|&&c| tree.node(c).is_terminal() && tags::is_noun(tree.label(c)));
        let Some(&head) = head else { continue };
        let text = tree.node(head).text.as_deref().unwrap_or_default().to_lowercase();
        out.push((text, role_of(tree, id)));
    }
    out
}

fn role_of(tree: &ParseTree, np: NodeId) -> Role {
    let mut top = np;
    while let Some(p) = tree.parent(top).filter(|&p| tree.label(p) == "NP") {
        top = p;
    }
    let Some(parent) = tree.parent(top) else {
        return Role::Other;
    };
    match tree.label(parent) {
        "S" | "SINV" | "SQ" if tree.next_sibling(top).is_some_and(|s| tree.label(s) == "VP") => {
            Role::Subject
        }
        "VP" => Role::Object,
        _ => Role::Other,
    }
}

pub fn build_grid(trees: &[ParseTree]) -> EntityGrid {
    let n = trees.len();
    let mut rows: BTreeMap<String, Vec<Role>> = BTreeMap::new();
    let mut mentions = 0;
    for (i, tree) in trees.iter().enumerate() {
        for (entity, role) in tree_mentions(tree) {
            mentions += 1;
            let row = rows.entry(entity).or_insert_with(|| vec![Role::Absent; n]);
            row[i] = row[i].max(role);
        }
    }
    EntityGrid { rows, sentences: n, mentions }
}

impl EntityGrid {
    /// Transition counts indexed `[from][to]` in [`Role::ORDER`].
    pub fn transition_counts(&self) -> [[usize; 4]; 4] {
        let mut counts = [[0usize; 4]; 4];
        for row in self.rows.values() {
            for w in row.windows(2) {
                counts[w[0].slot()][w[1].slot()] += 1;
            }
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EntityProfile {
    /// Transition probabilities, row-major in [`Role::ORDER`].
    pub transitions: [f64; 16],
    pub entities_per_sentence: f64,
    pub entities_per_text: f64,
    pub unique_entities: f64,
    pub words_per_entity: f64,
}

impl EntityProfile {
    pub fn densities(&self) -> [f64; 4] {
        [
            self.entities_per_sentence,
            self.entities_per_text,
            self.unique_entities,
            self.words_per_entity,
        ]
    }
}

pub fn profile_from_grid(grid: &EntityGrid, words: usize) -> EntityProfile {
    let counts = grid.transition_counts();
    let total: usize = counts.iter().flatten().sum();
    let mut transitions = [0.0; 16];
    if total > 0 {
        for (k, c) in counts.iter().flatten().enumerate() {
            transitions[k] = *c as f64 / total as f64;
        }
    }
    let m = grid.mentions as f64;
    EntityProfile {
        transitions,
        entities_per_sentence: if grid.sentences == 0 { 0.0 } else { m / grid.sentences as f64 },
        entities_per_text: m,
        unique_entities: grid.rows.len() as f64,
        words_per_entity: if grid.mentions == 0 { 0.0 } else { words as f64 / m },
    }
}

pub fn entity_grid_features(doc: &EssayDoc) -> Result<EntityProfile> {
    let trees = doc.trees("Disc-Entities")?;
    Ok(profile_from_grid(&build_grid(&trees), doc.word_count()))
}
