//! Error features from error annotations, with a small dictionary-based
//! checker for essays that carry none.

use std::collections::HashSet;
use std::path::Path;

use crate::annotate::{EssayDoc, ErrorAnnotation, ErrorKind, Token};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorProfile {
    pub spelling_per_sentence: f64,
    pub non_spelling_per_sentence: f64,
    /// Always the sum of the two rates above.
    pub all_per_sentence: f64,
    /// Spelling errors as a share of all errors, 0 when there are none.
    pub spelling_share: f64,
}

impl ErrorProfile {
    pub fn values(&self) -> [f64; 4] {
        [
            self.spelling_per_sentence,
            self.non_spelling_per_sentence,
            self.all_per_sentence,
            self.spelling_share,
        ]
    }
}

/// Case-folded word list, one word per line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    words: HashSet<String>,
}

impl Dictionary {
    pub fn parse(text: &str) -> Self {
        Dictionary {
            words: text
                .lines()
                .map(|l| l.trim().to_lowercase())
                .filter(|l| !l.is_empty())
                .collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        std::fs::read_to_string(path)
            .map(|t| Self::parse(&t))
            .map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Dictionary {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Dictionary {
            words: iter.into_iter().map(|w| w.into().to_lowercase()).collect(),
        }
    }
}

fn alphabetic(t: &Token) -> bool {
    !t.form.is_empty() && t.form.chars().all(char::is_alphabetic)
}

fn starts_with_vowel(form: &str) -> bool {
    form.chars()
        .next()
        .is_some_and(|c| matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u'))
}

/// Stand-in checker.
///
/// Spelling: an alphabetic token that is not a proper noun and whose
/// case-folded form is missing from the dictionary. Non-spelling: a word
/// immediately repeated, or `a` before a vowel-initial word, or `an` before a
/// consonant-initial one. Results are ordered by sentence then position.
pub fn fallback_check(doc: &EssayDoc, dictionary: &Dictionary) -> Result<Vec<ErrorAnnotation>> {
    if dictionary.is_empty() {
        return Err(Error::Config("the spelling dictionary is empty".into()));
    }
    let mut out = Vec::new();
    for (si, s) in doc.sentences.iter().enumerate() {
        let toks = &s.tokens;
        for (i, t) in toks.iter().enumerate() {
            let err = |kind, start| ErrorAnnotation { sentence: si, kind, start, end: i };
            if alphabetic(t)
                && !matches!(t.pos.as_str(), "NNP" | "NNPS")
                && !dictionary.contains(&t.form)
            {
                out.push(err(ErrorKind::Spelling, i));
            }
            let Some(prev) = i.checked_sub(1).map(|p| &toks[p]) else {
                continue;
            };
            if alphabetic(prev) && alphabetic(t) {
                let prev_form = prev.folded();
                let repeated = prev_form == t.folded();
                let article = match prev_form.as_str() {
                    "a" => starts_with_vowel(&t.form),
                    "an" => !starts_with_vowel(&t.form),
                    _ => false,
                };
                if repeated || article {
                    out.push(err(ErrorKind::NonSpelling, i - 1));
                }
            }
        }
    }
    Ok(out)
}

pub fn profile_from_errors(errors: &[ErrorAnnotation], sentences: usize) -> ErrorProfile {
    let spelling = errors.iter().filter(|e| e.kind == ErrorKind::Spelling).count();
    let other = errors.len() - spelling;
    if sentences == 0 {
        return ErrorProfile::default();
    }
    let n = sentences as f64;
    let spelling_per_sentence = spelling as f64 / n;
    let non_spelling_per_sentence = other as f64 / n;
    ErrorProfile {
        spelling_per_sentence,
        non_spelling_per_sentence,
        all_per_sentence: spelling_per_sentence + non_spelling_per_sentence,
        spelling_share: if errors.is_empty() {
            0.0
        } else {
            spelling as f64 / errors.len() as f64
        },
    }
}

/// Annotated errors win; the fallback checker runs only on essays without an
/// error layer, and only when a dictionary is supplied.
pub fn error_features(doc: &EssayDoc, dictionary: Option<&Dictionary>) -> Result<ErrorProfile> {
    let n = doc.sentences.len();
    match (&doc.errors, dictionary) {
        (Some(errors), _) => Ok(profile_from_errors(errors, n)),
        (None, Some(dict)) => Ok(profile_from_errors(&fallback_check(doc, dict)?, n)),
        (None, None) => Err(Error::MissingLayer {
            essay: doc.id.clone(),
            layer: "errors",
            group: "Error",
            detail: "no error annotation and no dictionary for the fallback checker".into(),
        }),
    }
}
