//! Penn Treebank tag groupings shared by the feature extractors.

pub const PUNCTUATION: &[&str] = &[".", ",", ":", "``", "''", "-LRB-", "-RRB-", "SYM", "#", "$"];

pub const NOUNS: &[&str] = &["NN", "NNS", "NNP", "NNPS"];
pub const PROPER_NOUNS: &[&str] = &["NNP", "NNPS"];
pub const PRONOUNS: &[&str] = &["PRP", "PRP$", "WP", "WP$"];
pub const PERSONAL_PRONOUNS: &[&str] = &["PRP"];
pub const POSSESSIVE_PRONOUNS: &[&str] = &["PRP$", "WP$"];
pub const ADJECTIVES: &[&str] = &["JJ", "JJR", "JJS"];
pub const ADVERBS: &[&str] = &["RB", "RBR", "RBS"];
pub const CONJUNCTIONS: &[&str] = &["CC"];
pub const INTERJECTIONS: &[&str] = &["UH"];
pub const DETERMINERS: &[&str] = &["DT", "PDT", "WDT"];
pub const PREPOSITIONS: &[&str] = &["IN", "TO"];
pub const VERBS: &[&str] = &["VB", "VBD", "VBG", "VBN", "VBP", "VBZ"];
pub const WH_PRONOUNS: &[&str] = &["WP", "WP$"];
pub const MODALS: &[&str] = &["MD"];
pub const FINITE_VERBS: &[&str] = &["VBD", "VBP", "VBZ", "MD"];

#[inline]
pub fn is_in(set: &[&str], tag: &str) -> bool {
    set.contains(&tag)
}

/// Tokens that count as words: anything not tagged as punctuation or a symbol.
#[inline]
pub fn is_word(tag: &str) -> bool {
    !is_in(PUNCTUATION, tag)
}

#[inline]
pub fn is_noun(tag: &str) -> bool {
    is_in(NOUNS, tag)
}

#[inline]
pub fn is_verb(tag: &str) -> bool {
    is_in(VERBS, tag)
}

/// Nouns, verbs, adjectives and adverbs.
#[inline]
pub fn is_lexical(tag: &str) -> bool {
    is_noun(tag) || is_verb(tag) || is_in(ADJECTIVES, tag) || is_in(ADVERBS, tag)
}
