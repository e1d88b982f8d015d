//! Per-sentence syntactic unit counts.
//!
//! Unit definitions:
//!
//! * **clause**: `S|SINV|SQ` with a child VP that has a finite child
//!   (`VBD|VBP|VBZ|MD`), directly or through one child VP (coordinated or
//!   auxiliary VPs).
//! * **T-unit**: a clause with no clause among its ancestors. Coordinated
//!   main clauses sit under a non-clause S and therefore each count.
//! * **dependent clause**: a clause dominated by SBAR.
//! * **complex T-unit**: a T-unit dominating a dependent clause.
//! * **coordinate phrase**: `ADJP|ADVP|NP|VP < CC`.
//! * **complex nominal**: one of
//!   - an NP not directly under NP that dominates an adjective, `POS`, PP,
//!     SBAR or participle (`VBG|VBN`), or has an appositive child pair `NP , NP`;
//!   - a nominal SBAR (under VP, or immediately before a VP) whose first child
//!     is WHNP, S, or the complementiser *that*/*for*;
//!   - a gerund or infinitive subject: S whose child VP starts with `VBG|TO`
//!     and whose right sister is a VP.
//!
//! Phrase sizes count the words a phrase dominates; punctuation is left out.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::pattern::{match_nodes, TreePattern};
use super::tree::{NodeId, ParseTree};
use crate::tags;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntacticCounts {
    pub words: usize,
    pub clauses: usize,
    pub t_units: usize,
    pub complex_t_units: usize,
    pub dependent_clauses: usize,
    pub coordinate_phrases: usize,
    pub complex_nominals: usize,
    pub verb_phrases: usize,
    pub noun_phrases: usize,
    pub prep_phrases: usize,
    pub sbars: usize,
    pub rrcs: usize,
    pub conjps: usize,
    pub wh_phrases: usize,
    pub constituents: usize,
    pub subtrees: usize,
    pub height: usize,
    pub np_size: usize,
    pub vp_size: usize,
    pub pp_size: usize,
}

impl std::ops::AddAssign for SyntacticCounts {
    fn add_assign(&mut self, o: Self) {
        self.words += o.words;
        self.clauses += o.clauses;
        self.t_units += o.t_units;
        self.complex_t_units += o.complex_t_units;
        self.dependent_clauses += o.dependent_clauses;
        self.coordinate_phrases += o.coordinate_phrases;
        self.complex_nominals += o.complex_nominals;
        self.verb_phrases += o.verb_phrases;
        self.noun_phrases += o.noun_phrases;
        self.prep_phrases += o.prep_phrases;
        self.sbars += o.sbars;
        self.rrcs += o.rrcs;
        self.conjps += o.conjps;
        self.wh_phrases += o.wh_phrases;
        self.constituents += o.constituents;
        self.subtrees += o.subtrees;
        self.height += o.height;
        self.np_size += o.np_size;
        self.vp_size += o.vp_size;
        self.pp_size += o.pp_size;
    }
}

struct Patterns {
    clause_direct: TreePattern,
    clause_nested: TreePattern,
    under_sbar: TreePattern,
    coordinate: TreePattern,
    cn_modified_np: TreePattern,
    cn_appositive: TreePattern,
    sbar_complement: TreePattern,
    sbar_subject: TreePattern,
    vp: TreePattern,
    np: TreePattern,
    pp: TreePattern,
    sbar: TreePattern,
    rrc: TreePattern,
    conjp: TreePattern,
    wh: TreePattern,
}

fn pat(s: &str) -> TreePattern {
    TreePattern::parse(s).expect("built-in pattern")
}

static PATTERNS: LazyLock<Patterns> = LazyLock::new(|| Patterns {
    clause_direct: pat("S|SINV|SQ < (VP < VBD|VBP|VBZ|MD)"),
    clause_nested: pat("S|SINV|SQ < (VP < (VP < VBD|VBP|VBZ|MD))"),
    under_sbar: pat("__ >> SBAR"),
    coordinate: pat("ADJP|ADVP|NP|VP < CC"),
    cn_modified_np: pat("NP !> NP << JJ|JJR|JJS|POS|PP|SBAR|VBG|VBN"),
    cn_appositive: pat("NP !> NP < (NP $. (, $. NP))"),
    sbar_complement: pat("SBAR > VP"),
    sbar_subject: pat("SBAR $. VP"),
    vp: pat("VP"),
    np: pat("NP"),
    pp: pat("PP"),
    sbar: pat("SBAR"),
    rrc: pat("RRC"),
    conjp: pat("CONJP"),
    wh: pat("WHNP|WHPP|WHADJP|WHADVP"),
});

fn union(mut a: Vec<NodeId>, b: Vec<NodeId>) -> Vec<NodeId> {
    a.extend(b);
    a.sort_unstable();
    a.dedup();
    a
}

fn is_nominal_clause_head(tree: &ParseTree, sbar: NodeId) -> bool {
    let Some(&first) = tree.children(sbar).first() else {
        return false;
    };
    let node = tree.node(first);
    match node.label.as_str() {
        "WHNP" | "S" => true,
        "IN" => node
            .text
            .as_deref()
            .is_some_and(|t| t.eq_ignore_ascii_case("that") || t.eq_ignore_ascii_case("for")),
        _ => false,
    }
}

fn is_verbal_subject(tree: &ParseTree, s: NodeId) -> bool {
    if tree.label(s) != "S" {
        return false;
    }
    let vp_starts_nonfinite = tree.children(s).iter().any(|&c| {
        tree.label(c) == "VP"
            && tree
                .children(c)
                .first()
                .is_some_and(|&f| matches!(tree.label(f), "VBG" | "TO"))
    });
    vp_starts_nonfinite && tree.next_sibling(s).is_some_and(|n| tree.label(n) == "VP")
}

/// Ids of clause nodes, in pre-order.
pub(crate) fn clause_nodes(tree: &ParseTree) -> Vec<NodeId> {
    let p = &*PATTERNS;
    union(match_nodes(tree, &p.clause_direct), match_nodes(tree, &p.clause_nested))
}

fn phrase_size(tree: &ParseTree, ids: &[NodeId]) -> usize {
    ids.iter()
        .map(|&i| tree.terminals_under(i).filter(|&t| tags::is_word(tree.label(t))).count())
        .sum()
}

pub fn syntactic_counts(tree: &ParseTree) -> SyntacticCounts {
    let p = &*PATTERNS;
    let clauses = clause_nodes(tree);
    let is_clause = |id: NodeId| clauses.binary_search(&id).is_ok();
    let t_units: Vec<NodeId> = clauses
        .iter()
        .copied()
        .filter(|&c| !tree.ancestors(c).any(is_clause))
        .collect();
    let under_sbar = match_nodes(tree, &p.under_sbar);
    let dependent: Vec<NodeId> = clauses
        .iter()
        .copied()
        .filter(|c| under_sbar.binary_search(c).is_ok())
        .collect();
    let complex_t_units = t_units
        .iter()
        .filter(|&&t| dependent.iter().any(|&d| tree.dominates(t, d)))
        .count();

    let nominal_nps = union(
        match_nodes(tree, &p.cn_modified_np),
        match_nodes(tree, &p.cn_appositive),
    );
    let nominal_clauses = union(
        match_nodes(tree, &p.sbar_complement),
        match_nodes(tree, &p.sbar_subject),
    )
    .into_iter()
    .filter(|&s| is_nominal_clause_head(tree, s))
    .count();
    let verbal_subjects = tree.ids().filter(|&i| is_verbal_subject(tree, i)).count();

    let vps = match_nodes(tree, &p.vp);
    let nps = match_nodes(tree, &p.np);
    let pps = match_nodes(tree, &p.pp);

    SyntacticCounts {
        words: tree
            .terminals()
            .filter(|&i| tags::is_word(tree.label(i)))
            .count(),
        clauses: clauses.len(),
        t_units: t_units.len(),
        complex_t_units,
        dependent_clauses: dependent.len(),
        coordinate_phrases: match_nodes(tree, &p.coordinate).len(),
        complex_nominals: nominal_nps.len() + nominal_clauses + verbal_subjects,
        verb_phrases: vps.len(),
        noun_phrases: nps.len(),
        prep_phrases: pps.len(),
        sbars: match_nodes(tree, &p.sbar).len(),
        rrcs: match_nodes(tree, &p.rrc).len(),
        conjps: match_nodes(tree, &p.conjp).len(),
        wh_phrases: match_nodes(tree, &p.wh).len(),
        constituents: tree.nodes().iter().filter(|n| !n.is_terminal()).count(),
        subtrees: tree.len(),
        height: tree.height(),
        np_size: phrase_size(tree, &nps),
        vp_size: phrase_size(tree, &vps),
        pp_size: phrase_size(tree, &pps),
    }
}
