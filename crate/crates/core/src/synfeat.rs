//! Syntactic complexity over a whole essay.
//!
//! Unit counts from [`crate::treeops::syntactic_counts`] are summed over
//! sentences and ratios are taken of those totals (not averaged per
//! sentence). A ratio with a zero denominator is 0.

use serde::{Deserialize, Serialize};

use crate::annotate::EssayDoc;
use crate::treeops::{syntactic_counts, SyntacticCounts};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SynProfile {
    pub avg_sentence_length: f64,
    pub mean_length_of_clauses: f64,
    pub mean_length_of_t_units: f64,
    pub complex_nominals_per_clause: f64,
    pub complex_nominals_per_t_unit: f64,
    pub complex_t_unit_ratio: f64,
    pub coordinate_phrases_per_clause: f64,
    pub coordinate_phrases_per_t_unit: f64,
    pub dependent_clause_ratio: f64,
    pub dependent_clauses_per_t_unit: f64,
    pub t_unit_complexity_ratio: f64,
    pub vps_per_t_unit: f64,
    pub t_units_per_sentence: f64,
    pub clauses_per_sentence: f64,
    pub avg_parse_tree_height: f64,
    pub num_sentences: f64,
    pub constituents_per_sentence: f64,
    pub conjps_per_sentence: f64,
    pub avg_np_size: f64,
    pub nps_per_sentence: f64,
    pub avg_pp_size: f64,
    pub pps_per_sentence: f64,
    pub rrcs_per_sentence: f64,
    pub sbars_per_sentence: f64,
    pub subtrees_per_sentence: f64,
    pub avg_vp_size: f64,
    pub vps_per_sentence: f64,
    pub wh_phrases_per_sentence: f64,
}

impl SynProfile {
    pub fn values(&self) -> [f64; 28] {
        [
            self.avg_sentence_length,
            self.mean_length_of_clauses,
            self.mean_length_of_t_units,
            self.complex_nominals_per_clause,
            self.complex_nominals_per_t_unit,
            self.complex_t_unit_ratio,
            self.coordinate_phrases_per_clause,
            self.coordinate_phrases_per_t_unit,
            self.dependent_clause_ratio,
            self.dependent_clauses_per_t_unit,
            self.t_unit_complexity_ratio,
            self.vps_per_t_unit,
            self.t_units_per_sentence,
            self.clauses_per_sentence,
            self.avg_parse_tree_height,
            self.num_sentences,
            self.constituents_per_sentence,
            self.conjps_per_sentence,
            self.avg_np_size,
            self.nps_per_sentence,
            self.avg_pp_size,
            self.pps_per_sentence,
            self.rrcs_per_sentence,
            self.sbars_per_sentence,
            self.subtrees_per_sentence,
            self.avg_vp_size,
            self.vps_per_sentence,
            self.wh_phrases_per_sentence,
        ]
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Builds the profile from document totals over `sentences` parsed sentences.
pub fn profile_from_totals(t: &SyntacticCounts, sentences: usize) -> SynProfile {
    let per_sen = |x| ratio(x, sentences);
    SynProfile {
        avg_sentence_length: per_sen(t.words),
        mean_length_of_clauses: ratio(t.words, t.clauses),
        mean_length_of_t_units: ratio(t.words, t.t_units),
        complex_nominals_per_clause: ratio(t.complex_nominals, t.clauses),
        complex_nominals_per_t_unit: ratio(t.complex_nominals, t.t_units),
        complex_t_unit_ratio: ratio(t.complex_t_units, t.t_units),
        coordinate_phrases_per_clause: ratio(t.coordinate_phrases, t.clauses),
        coordinate_phrases_per_t_unit: ratio(t.coordinate_phrases, t.t_units),
        dependent_clause_ratio: ratio(t.dependent_clauses, t.clauses),
        dependent_clauses_per_t_unit: ratio(t.dependent_clauses, t.t_units),
        t_unit_complexity_ratio: ratio(t.clauses, t.t_units),
        vps_per_t_unit: ratio(t.verb_phrases, t.t_units),
        t_units_per_sentence: per_sen(t.t_units),
        clauses_per_sentence: per_sen(t.clauses),
        avg_parse_tree_height: per_sen(t.height),
        num_sentences: sentences as f64,
        constituents_per_sentence: per_sen(t.constituents),
        conjps_per_sentence: per_sen(t.conjps),
        avg_np_size: ratio(t.np_size, t.noun_phrases),
        nps_per_sentence: per_sen(t.noun_phrases),
        avg_pp_size: ratio(t.pp_size, t.prep_phrases),
        pps_per_sentence: per_sen(t.prep_phrases),
        rrcs_per_sentence: per_sen(t.rrcs),
        sbars_per_sentence: per_sen(t.sbars),
        subtrees_per_sentence: per_sen(t.subtrees),
        avg_vp_size: ratio(t.vp_size, t.verb_phrases),
        vps_per_sentence: per_sen(t.verb_phrases),
        wh_phrases_per_sentence: per_sen(t.wh_phrases),
    }
}

/// Sums per-sentence counts over the essay. Fails if any sentence lacks a parse.
pub fn document_counts(doc: &EssayDoc) -> Result<SyntacticCounts> {
    let mut total = SyntacticCounts::default();
    for tree in doc.trees("syntactic features")? {
        total += syntactic_counts(&tree);
    }
    Ok(total)
}

pub fn syntactic_complexity(doc: &EssayDoc) -> Result<SynProfile> {
    let totals = document_counts(doc)?;
    Ok(profile_from_totals(&totals, doc.sentences.len()))
}
