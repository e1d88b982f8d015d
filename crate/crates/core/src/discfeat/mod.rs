//! Discourse features in five groups: lexical overlap, referential
//! expressions, connectives, entity-grid transitions and coreference chains.

mod chains;
mod connectives;
mod grid;
mod overlap;
mod refex;

pub use chains::{chain_features, ChainProfile};
pub use connectives::{
    classify_connective, connective_features, sentence_connectives, ConnectiveHit,
    ConnectiveLexicon, ConnectiveProfile,
};
pub use grid::{
    build_grid, entity_grid_features, profile_from_grid, tree_mentions, EntityGrid,
    EntityProfile, Role,
};
pub use overlap::{
    overlap_features, pair_overlap, sentence_items, OverlapKind, OverlapProfile,
};
pub use refex::{refex_features, RefexProfile};
