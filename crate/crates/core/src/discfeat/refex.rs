//! Referential expressions: definite articles and pronouns.

use crate::annotate::EssayDoc;
use crate::tags;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RefexProfile {
    pub definite_articles_per_word: f64,
    pub definite_articles_per_sentence: f64,
    pub pronouns_per_word: f64,
    pub pronouns_per_sentence: f64,
    pub personal_pronouns_per_word: f64,
    pub personal_pronouns_per_sentence: f64,
    pub possessive_pronouns_per_word: f64,
    pub possessive_pronouns_per_sentence: f64,
    pub pronouns_per_noun: f64,
    pub proper_nouns_per_noun: f64,
}

impl RefexProfile {
    pub fn values(&self) -> [f64; 10] {
        [
            self.definite_articles_per_word,
            self.definite_articles_per_sentence,
            self.pronouns_per_word,
            self.pronouns_per_sentence,
            self.personal_pronouns_per_word,
            self.personal_pronouns_per_sentence,
            self.possessive_pronouns_per_word,
            self.possessive_pronouns_per_sentence,
            self.pronouns_per_noun,
            self.proper_nouns_per_noun,
        ]
    }
}

pub fn refex_features(doc: &EssayDoc) -> Result<RefexProfile> {
    let mut words = 0usize;
    let (mut the, mut pron, mut pers, mut poss, mut nouns, mut proper) = (0, 0, 0, 0, 0, 0);
    for t in doc.words() {
        words += 1;
        let pos = t.pos.as_str();
        if pos == "DT" && t.form.eq_ignore_ascii_case("the") {
            the += 1;
        }
        pron += tags::is_in(tags::PRONOUNS, pos) as usize;
        pers += tags::is_in(tags::PERSONAL_PRONOUNS, pos) as usize;
        poss += tags::is_in(tags::POSSESSIVE_PRONOUNS, pos) as usize;
        nouns += tags::is_noun(pos) as usize;
        proper += tags::is_in(tags::PROPER_NOUNS, pos) as usize;
    }
    if words == 0 {
        return Err(Error::UndefinedInput(format!(
            "essay `{}` has no word tokens",
            doc.id
        )));
    }
    let w = words as f64;
    let s = doc.sentences.len() as f64;
    let per_noun = |x: usize| if nouns == 0 { 0.0 } else { x as f64 / nouns as f64 };
    Ok(RefexProfile {
        definite_articles_per_word: the as f64 / w,
        definite_articles_per_sentence: the as f64 / s,
        pronouns_per_word: pron as f64 / w,
        pronouns_per_sentence: pron as f64 / s,
        personal_pronouns_per_word: pers as f64 / w,
        personal_pronouns_per_sentence: pers as f64 / s,
        possessive_pronouns_per_word: poss as f64 / w,
        possessive_pronouns_per_sentence: poss as f64 / s,
        pronouns_per_noun: per_noun(pron),
        proper_nouns_per_noun: per_noun(proper),
    })
}
