//! Discourse connectives: lexicon lookup, usage disambiguation and sense rates.

use std::collections::HashMap;
use std::path::Path;

use crate::annotate::{EssayDoc, Sense, Sentence, Token, Usage};
use crate::treeops::{NodeId, ParseTree};
use crate::{Error, Result};

const EMBEDDED: &str = include_str!("../../resources/connectives.tsv");

/// Labels whose immediate children are read as clause-level connectives.
const CLAUSE_LEVEL: &[&str] = &["S", "SINV", "SQ", "SBAR", "SBARQ", "PRN"];
const CLAUSES: &[&str] = &["S", "SINV", "SQ"];

/// Connective forms mapped to their majority sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectiveLexicon {
    entries: HashMap<String, Sense>,
    max_words: usize,
}

impl ConnectiveLexicon {
    /// Parses `form<TAB>sense` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        let mut max_words = 0;
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Config(format!("connective lexicon line {}: {msg}", n + 1));
            let (form, sense) = line.split_once('\t').ok_or_else(|| bad("expected form<TAB>sense"))?;
            let sense: Sense = sense.trim().parse().map_err(|_| bad("unknown sense"))?;
            if sense == Sense::Unspecified {
                return Err(bad("a lexicon sense must be one of the four discourse senses"));
            }
            let words: Vec<String> = form.split_whitespace().map(str::to_lowercase).collect();
            if words.is_empty() {
                return Err(bad("empty form"));
            }
            max_words = max_words.max(words.len());
            entries.insert(words.join(" "), sense);
        }
        Ok(ConnectiveLexicon { entries, max_words })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The lexicon shipped in `resources/connectives.tsv`.
    pub fn builtin() -> Self {
        Self::parse(EMBEDDED).expect("embedded lexicon is well-formed")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sense(&self, form: &str) -> Option<Sense> {
        self.entries.get(&form.to_lowercase()).copied()
    }

    /// Longest lexicon entry starting at `start`, as (token count, sense).
    pub fn longest_match(&self, tokens: &[Token], start: usize) -> Option<(usize, Sense)> {
        let mut key = String::new();
        let mut best = None;
        for (k, t) in tokens.iter().skip(start).take(self.max_words).enumerate() {
            if k > 0 {
                key.push(' ');
            }
            key.push_str(&t.folded());
            if let Some(&s) = self.entries.get(&key) {
                best = Some((k + 1, s));
            }
        }
        best
    }
}

/// One connective occurrence in a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectiveHit {
    pub index: usize,
    pub len: usize,
    pub usage: Usage,
    pub sense: Sense,
}

/// Parse-based usage decision for the connective whose first token is
/// terminal number `index`.
///
/// Discourse when the preterminal's parent is clause-level (S, SINV, SQ,
/// SBAR, SBARQ, PRN), when that parent is an ADVP or WHADVP sitting directly
/// under a clause-level node, or when the token is a CC whose parent
/// dominates at least two clauses.
fn discourse_by_tree(tree: &ParseTree, index: usize) -> bool {
    let Some(pre) = tree.terminals().nth(index) else {
        return false;
    };
    let Some(parent) = tree.parent(pre) else {
        return false;
    };
    let is = |id: NodeId, set: &[&str]| set.contains(&tree.label(id));
    if is(parent, CLAUSE_LEVEL) {
        return true;
    }
    if matches!(tree.label(parent), "ADVP" | "WHADVP")
        && tree.parent(parent).is_some_and(|g| is(g, CLAUSE_LEVEL))
    {
        return true;
    }
    if tree.label(pre) == "CC" {
        let clauses = tree
            .descendants(parent)
            .filter(|&d| d != parent && is(d, CLAUSES))
            .count();
        return clauses >= 2;
    }
    false
}

fn hit(index: usize, len: usize, discourse: bool, sense: Sense) -> ConnectiveHit {
    if discourse {
        ConnectiveHit { index, len, usage: Usage::Discourse, sense }
    } else {
        ConnectiveHit { index, len, usage: Usage::NonDiscourse, sense: Sense::Unspecified }
    }
}

/// Usage and sense of the token at `index`, or `None` if it does not start a
/// connective.
///
/// Annotations on the sentence are returned verbatim; an annotated sentence
/// has no connectives besides the annotated ones. Otherwise the lexicon
/// decides whether the token starts a connective, the parse decides its
/// usage, and discourse usages take the lexicon's sense.
pub fn classify_connective(
    sentence: &Sentence,
    index: usize,
    lexicon: &ConnectiveLexicon,
) -> Result<Option<(Usage, Sense)>> {
    if let Some(ann) = &sentence.connectives {
        return Ok(ann.iter().find(|c| c.index == index).map(|c| (c.usage, c.sense)));
    }
    let Some((_, sense)) = lexicon.longest_match(&sentence.tokens, index) else {
        return Ok(None);
    };
    let tree = match sentence.tree() {
        Some(t) => t?,
        None => {
            return Err(Error::UndefinedInput(
                "connective usage needs either connective annotations or a parse".into(),
            ))
        }
    };
    let h = hit(index, 1, discourse_by_tree(&tree, index), sense);
    Ok(Some((h.usage, h.sense)))
}

/// All connectives of a sentence, scanning left to right with longest match.
pub fn sentence_connectives(
    sentence: &Sentence,
    lexicon: &ConnectiveLexicon,
) -> Result<Option<Vec<ConnectiveHit>>> {
    if let Some(ann) = &sentence.connectives {
        return Ok(Some(
            ann.iter()
                .map(|c| ConnectiveHit { index: c.index, len: 1, usage: c.usage, sense: c.sense })
                .collect(),
        ));
    }
    let Some(tree) = sentence.tree().transpose()? else {
        return Ok(None);
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < sentence.tokens.len() {
        match lexicon.longest_match(&sentence.tokens, i) {
            Some((len, sense)) => {
                out.push(hit(i, len, discourse_by_tree(&tree, i), sense));
                i += len;
            }
            None => i += 1,
        }
    }
    Ok(Some(out))
}

/// Seven per-sentence rates. `discourse` is defined as the sum of the four
/// sense rates, and `all` as discourse plus non-discourse.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConnectiveProfile {
    pub discourse: f64,
    pub non_discourse: f64,
    pub all: f64,
    pub expansion: f64,
    pub contingency: f64,
    pub comparison: f64,
    pub temporal: f64,
}

impl ConnectiveProfile {
    pub fn values(&self) -> [f64; 7] {
        [
            self.discourse,
            self.non_discourse,
            self.all,
            self.expansion,
            self.contingency,
            self.comparison,
            self.temporal,
        ]
    }
}

pub fn connective_features(doc: &EssayDoc, lexicon: &ConnectiveLexicon) -> Result<ConnectiveProfile> {
    let mut senses = [0usize; 4];
    let mut non_discourse = 0usize;
    for (i, s) in doc.sentences.iter().enumerate() {
        let hits = sentence_connectives(s, lexicon)?.ok_or_else(|| Error::MissingLayer {
            essay: doc.id.clone(),
            layer: "parse",
            group: "Disc-Conn",
            detail: format!("sentence {i} has neither connective annotations nor a parse"),
        })?;
        for h in hits {
            match h.usage {
                Usage::NonDiscourse => non_discourse += 1,
                Usage::Discourse => {
                    if let Some(k) = Sense::DISCOURSE.iter().position(|&x| x == h.sense) {
                        senses[k] += 1;
                    }
                }
            }
        }
    }
    let n = doc.sentences.len();
    if n == 0 {
        return Ok(ConnectiveProfile::default());
    }
    let rate = |c: usize| c as f64 / n as f64;
    let [expansion, contingency, comparison, temporal] = senses.map(rate);
    let discourse = expansion + contingency + comparison + temporal;
    let non_discourse = rate(non_discourse);
    Ok(ConnectiveProfile {
        discourse,
        non_discourse,
        all: discourse + non_discourse,
        expansion,
        contingency,
        comparison,
        temporal,
    })
}
