//! Penn Treebank bracket trees and a small Tregex-style pattern matcher.

mod counts;
mod pattern;
mod tree;

pub use counts::{syntactic_counts, SyntacticCounts};
pub use pattern::{match_count, match_nodes, PatternError, TreePattern};
pub use tree::{Node, NodeId, ParseError, ParseErrorKind, ParseTree};
