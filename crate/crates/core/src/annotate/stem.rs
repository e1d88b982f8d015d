use super::EssayDoc;

/// Suffixes tried longest first.
pub const SUFFIXES: &[&str] = &["ing", "es", "ed", "ly", "s"];
pub const MIN_STEM_LEN: usize = 3;

/// Fallback stemmer: case-fold, then strip the longest listed suffix that
/// leaves at least [`MIN_STEM_LEN`] characters. Words with no such suffix
/// are returned case-folded.
pub fn stem_word(form: &str) -> String {
    let folded = form.to_lowercase();
    let n = folded.chars().count();
    for suffix in SUFFIXES {
        if let Some(rest) = folded.strip_suffix(suffix) {
            if n - suffix.chars().count() >= MIN_STEM_LEN {
                return rest.to_string();
            }
        }
    }
    folded
}

/// Fills in every missing or empty stem. Existing stems are left untouched.
pub fn derive_stems(doc: &EssayDoc) -> EssayDoc {
    let mut out = doc.clone();
    for tok in out.sentences.iter_mut().flat_map(|s| s.tokens.iter_mut()) {
        if tok.stem.as_deref().is_none_or(str::is_empty) {
            tok.stem = Some(stem_word(&tok.form));
        }
    }
    out
}
