use super::{EssayDoc, Mention, MentionKind};

const DEMONSTRATIVES: &[&str] = &["this", "that", "these", "those"];

/// Mention kind from the annotation, falling back to POS-based rules on the
/// mention's tokens:
///
/// * first token `PRP`: reflexive if it ends in `self`/`selves`, else personal pronoun
/// * first token `PRP$`: possessive determiner
/// * first token a demonstrative `DT`: pronoun when it stands alone, else determiner
/// * first token `a`/`an`: indefinite NP; `the`: definite NP
/// * last token `NNP`/`NNPS`: proper noun
/// * anything else: other
pub fn derive_mention_kind(doc: &EssayDoc, m: &Mention) -> MentionKind {
    if let Some(k) = m.kind {
        return k;
    }
    let Some(sentence) = doc.sentences.get(m.sentence) else {
        return MentionKind::Other;
    };
    let Some(span) = sentence.tokens.get(m.start..=m.end) else {
        return MentionKind::Other;
    };
    let (Some(first), Some(last)) = (span.first(), span.last()) else {
        return MentionKind::Other;
    };
    let form = first.folded();
    match first.pos.as_str() {
        "PRP" if form.ends_with("self") || form.ends_with("selves") => {
            return MentionKind::ReflexivePronoun
        }
        "PRP" => return MentionKind::PersonalPronoun,
        "PRP$" => return MentionKind::PossessiveDeterminer,
        "DT" if DEMONSTRATIVES.contains(&form.as_str()) => {
            return if span.len() == 1 {
                MentionKind::DemonstrativePronoun
            } else {
                MentionKind::DemonstrativeDeterminer
            };
        }
        _ => {}
    }
    match form.as_str() {
        "a" | "an" => MentionKind::IndefiniteNp,
        "the" => MentionKind::DefiniteNp,
        _ if matches!(last.pos.as_str(), "NNP" | "NNPS") => MentionKind::ProperNoun,
        _ => MentionKind::Other,
    }
}
