//! POS-tag densities and lexical variation.
//!
//! Densities are tag counts over word tokens. Variation measures use the
//! lexical-word count (nouns, verbs, adjectives, adverbs) or verb counts as
//! denominators and are 0 when that denominator is 0. Verb types are
//! case-folded lemmas where available, otherwise case-folded forms.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::annotate::{EssayDoc, Token};
use crate::tags::{self, is_in};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PosDensity {
    pub nouns: f64,
    pub proper_nouns: f64,
    pub pronouns: f64,
    pub personal_pronouns: f64,
    pub adjectives: f64,
    pub adverbs: f64,
    pub conjunctions: f64,
    pub interjections: f64,
    pub determiners: f64,
    pub prepositions: f64,
    pub verbs: f64,
    pub wh_pronouns: f64,
    pub vbd: f64,
    pub vbg: f64,
    pub vbn: f64,
    pub vbp: f64,
    pub vbz: f64,
    pub modals: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LexicalVariation {
    pub adjective_variation: f64,
    pub adverb_variation: f64,
    pub corrected_verb_variation1: f64,
    pub modifier_variation: f64,
    pub noun_variation: f64,
    pub squared_verb_variation1: f64,
    pub verb_variation1: f64,
    pub verb_variation2: f64,
    pub lexical_words: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PosProfile {
    pub density: PosDensity,
    pub variation: LexicalVariation,
}

impl PosProfile {
    pub fn values(&self) -> [f64; 27] {
        let v = &self.variation;
        let d = &self.density;
        [
            v.adjective_variation,
            v.adverb_variation,
            v.corrected_verb_variation1,
            v.modifier_variation,
            v.noun_variation,
            v.squared_verb_variation1,
            v.verb_variation1,
            v.verb_variation2,
            v.lexical_words,
            d.nouns,
            d.proper_nouns,
            d.pronouns,
            d.personal_pronouns,
            d.adjectives,
            d.adverbs,
            d.conjunctions,
            d.interjections,
            d.determiners,
            d.prepositions,
            d.verbs,
            d.wh_pronouns,
            d.vbd,
            d.vbg,
            d.vbn,
            d.vbp,
            d.vbz,
            d.modals,
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

pub fn pos_density(doc: &EssayDoc) -> Result<PosDensity> {
    let words: Vec<&Token> = doc.words().collect();
    if words.is_empty() {
        return Err(Error::UndefinedInput(format!(
            "essay `{}` has no word tokens",
            doc.id
        )));
    }
    let n = words.len();
    let share = |set: &[&str]| ratio(words.iter().filter(|t| is_in(set, &t.pos)).count(), n);
    let tag = |t: &str| ratio(words.iter().filter(|w| w.pos == t).count(), n);
    Ok(PosDensity {
        nouns: share(tags::NOUNS),
        proper_nouns: share(tags::PROPER_NOUNS),
        pronouns: share(tags::PRONOUNS),
        personal_pronouns: share(tags::PERSONAL_PRONOUNS),
        adjectives: share(tags::ADJECTIVES),
        adverbs: share(tags::ADVERBS),
        conjunctions: share(tags::CONJUNCTIONS),
        interjections: share(tags::INTERJECTIONS),
        determiners: share(tags::DETERMINERS),
        prepositions: share(tags::PREPOSITIONS),
        verbs: share(tags::VERBS),
        wh_pronouns: share(tags::WH_PRONOUNS),
        vbd: tag("VBD"),
        vbg: tag("VBG"),
        vbn: tag("VBN"),
        vbp: tag("VBP"),
        vbz: tag("VBZ"),
        modals: share(tags::MODALS),
    })
}

fn verb_type(t: &Token) -> String {
    match &t.lemma {
        Some(l) if !l.is_empty() => l.to_lowercase(),
        _ => t.folded(),
    }
}

pub fn lexical_variation(doc: &EssayDoc) -> LexicalVariation {
    let words: Vec<&Token> = doc.words().collect();
    let lexical = words.iter().filter(|t| tags::is_lexical(&t.pos)).count();
    let count = |set: &[&str]| words.iter().filter(|t| is_in(set, &t.pos)).count();
    let nouns = count(tags::NOUNS);
    let adjectives = count(tags::ADJECTIVES);
    let adverbs = count(tags::ADVERBS);
    let verbs: Vec<&&Token> = words.iter().filter(|t| tags::is_verb(&t.pos)).collect();
    let verb_tokens = verbs.len();
    let verb_types = verbs.iter().map(|t| verb_type(t)).collect::<HashSet<_>>().len();

    let adjective_variation = ratio(adjectives, lexical);
    let adverb_variation = ratio(adverbs, lexical);
    let (vv1, squared, corrected) = if verb_tokens == 0 {
        (0.0, 0.0, 0.0)
    } else {
        let types = verb_types as f64;
        let toks = verb_tokens as f64;
        (types / toks, types * types / toks, types / (2.0 * toks).sqrt())
    };
    LexicalVariation {
        adjective_variation,
        adverb_variation,
        corrected_verb_variation1: corrected,
        modifier_variation: adjective_variation + adverb_variation,
        noun_variation: ratio(nouns, lexical),
        squared_verb_variation1: squared,
        verb_variation1: vv1,
        verb_variation2: ratio(verb_types, lexical),
        lexical_words: ratio(lexical, words.len()),
    }
}

pub fn pos_features(doc: &EssayDoc) -> Result<PosProfile> {
    Ok(PosProfile {
        density: pos_density(doc)?,
        variation: lexical_variation(doc),
    })
}
