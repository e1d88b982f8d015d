//! Annotated-essay data model and the JSON-lines corpus format.
//!
//! One essay per line. Optional fields are omitted rather than written as
//! `null`. `chains` and `errors` distinguish "not annotated" (absent) from
//! "annotated, nothing found" (empty list).

mod mention;
mod stem;

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::treeops::ParseTree;
use crate::{Error, Result};

pub use mention::derive_mention_kind;
pub use stem::{derive_stems, stem_word, MIN_STEM_LEN, SUFFIXES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Low,
    Medium,
    High,
}

impl Label {
    /// Fixed class order used for voting ties and report layout.
    pub const ALL: [Label; 3] = [Label::Low, Label::Medium, Label::High];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Label> {
        Label::ALL.get(i).copied()
    }

    /// Numeric encoding used when a labelled corpus is modelled as regression.
    pub fn ordinal(self) -> f64 {
        (self.index() + 1) as f64
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Low => "low",
            Label::Medium => "medium",
            Label::High => "high",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Label::Low),
            "medium" => Ok(Label::Medium),
            "high" => Ok(Label::High),
            other => Err(Error::Config(format!("unknown label `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
    pub pos: String,
}

impl Token {
    pub fn new(form: impl Into<String>, pos: impl Into<String>) -> Self {
        Token {
            form: form.into(),
            lemma: None,
            stem: None,
            pos: pos.into(),
        }
    }

    pub fn folded(&self) -> String {
        self.form.to_lowercase()
    }

    pub fn is_word(&self) -> bool {
        crate::tags::is_word(&self.pos)
    }

    /// The annotated stem, or the fallback suffix-stripping stem.
    pub fn stem_or_derived(&self) -> String {
        match &self.stem {
            Some(s) if !s.is_empty() => s.clone(),
            _ => stem_word(&self.form),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Usage {
    #[serde(rename = "discourse")]
    Discourse,
    #[serde(rename = "non-discourse")]
    NonDiscourse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Expansion,
    Contingency,
    Comparison,
    Temporal,
    #[serde(rename = "none")]
    Unspecified,
}

impl Sense {
    pub const DISCOURSE: [Sense; 4] = [
        Sense::Expansion,
        Sense::Contingency,
        Sense::Comparison,
        Sense::Temporal,
    ];
}

impl std::str::FromStr for Sense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Expansion" => Ok(Sense::Expansion),
            "Contingency" => Ok(Sense::Contingency),
            "Comparison" => Ok(Sense::Comparison),
            "Temporal" => Ok(Sense::Temporal),
            "none" => Ok(Sense::Unspecified),
            other => Err(Error::Config(format!("unknown connective sense `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectiveAnnotation {
    pub index: usize,
    pub usage: Usage,
    pub sense: Sense,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parse: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connectives: Option<Vec<ConnectiveAnnotation>>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence {
            tokens,
            parse: None,
            connectives: None,
        }
    }

    pub fn with_parse(mut self, parse: impl Into<String>) -> Self {
        self.parse = Some(parse.into());
        self
    }

    pub fn tree(&self) -> Option<Result<ParseTree>> {
        self.parse
            .as_deref()
            .map(|p| ParseTree::parse(p).map_err(Error::from))
    }

    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word()).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MentionKind {
    PersonalPronoun,
    DemonstrativePronoun,
    ReflexivePronoun,
    ProperNoun,
    PossessiveDeterminer,
    DemonstrativeDeterminer,
    IndefiniteNp,
    DefiniteNp,
    Other,
}

impl MentionKind {
    /// The eight kinds reported as chain proportions; `Other` absorbs the rest.
    pub const REPORTED: [MentionKind; 8] = [
        MentionKind::PersonalPronoun,
        MentionKind::DemonstrativePronoun,
        MentionKind::ReflexivePronoun,
        MentionKind::ProperNoun,
        MentionKind::PossessiveDeterminer,
        MentionKind::DemonstrativeDeterminer,
        MentionKind::IndefiniteNp,
        MentionKind::DefiniteNp,
    ];
}

/// Token span `start..=end` within one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub sentence: usize,
    pub start: usize,
    pub end: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<MentionKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorefChain {
    pub mentions: Vec<Mention>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorKind {
    #[serde(rename = "spelling")]
    Spelling,
    #[serde(rename = "non-spelling")]
    NonSpelling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorAnnotation {
    pub sentence: usize,
    pub kind: ErrorKind,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssayDoc {
    pub id: String,
    pub prompt: String,
    pub l1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
    pub sentences: Vec<Sentence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chains: Option<Vec<CorefChain>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<Vec<ErrorAnnotation>>,
}

impl EssayDoc {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens().filter(|t| t.is_word())
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }

    /// Parses every sentence tree; fails on the first sentence without a parse.
    pub fn trees(&self, group: &'static str) -> Result<Vec<ParseTree>> {
        self.sentences
            .iter()
            .enumerate()
            .map(|(i, s)| match s.tree() {
                Some(t) => t,
                None => Err(Error::MissingLayer {
                    essay: self.id.clone(),
                    layer: "parse",
                    group,
                    detail: format!("sentence {i} has no parse"),
                }),
            })
            .collect()
    }

    /// Numeric regression target: the score, else the label's ordinal.
    pub fn target(&self) -> Option<f64> {
        self.score.or(self.label.map(Label::ordinal))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub essay: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            field: field.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "essay `{}`:", self.essay)?;
        for v in &self.violations {
            write!(f, " {}: {};", v.field, v.message)?;
        }
        Ok(())
    }
}

fn check_span(
    report: &mut ValidationReport,
    field: &str,
    doc: &EssayDoc,
    sentence: usize,
    start: usize,
    end: usize,
) {
    let Some(s) = doc.sentences.get(sentence) else {
        report.push(
            format!("{field}.sentence"),
            format!(
                "sentence index {sentence} out of range ({} sentences)",
                doc.sentences.len()
            ),
        );
        return;
    };
    if start > end {
        report.push(field, format!("start {start} > end {end}"));
    }
    if end >= s.tokens.len() {
        report.push(
            format!("{field}.end"),
            format!(
                "token {end} out of range (sentence {sentence} has {} tokens)",
                s.tokens.len()
            ),
        );
    }
}

/// Checks every structural invariant of an essay. Violations are data, not errors.
pub fn validate(doc: &EssayDoc) -> ValidationReport {
    let mut r = ValidationReport {
        essay: doc.id.clone(),
        violations: Vec::new(),
    };
    if doc.id.is_empty() {
        r.push("id", "empty");
    }
    if doc.tokens().next().is_none() {
        r.push("sentences", "essay has no tokens");
    }
    if let Some(score) = doc.score {
        if !score.is_finite() {
            r.push("score", "not a finite number");
        }
    }
    for (si, s) in doc.sentences.iter().enumerate() {
        for (ti, t) in s.tokens.iter().enumerate() {
            if t.form.is_empty() {
                r.push(format!("sentences[{si}].tokens[{ti}].form"), "empty");
            }
            if t.pos.is_empty() {
                r.push(format!("sentences[{si}].tokens[{ti}].pos"), "empty");
            }
        }
        if let Some(p) = &s.parse {
            match ParseTree::parse(p) {
                Ok(tree) => {
                    let leaves = tree.leaf_count();
                    if leaves != s.tokens.len() {
                        r.push(
                            format!("sentences[{si}].parse"),
                            format!(
                                "parse has {leaves} leaves but sentence {si} has {} tokens",
                                s.tokens.len()
                            ),
                        );
                    }
                }
                Err(e) => r.push(format!("sentences[{si}].parse"), e.to_string()),
            }
        }
        if let Some(conns) = &s.connectives {
            for (ci, c) in conns.iter().enumerate() {
                let field = format!("sentences[{si}].connectives[{ci}]");
                if c.index >= s.tokens.len() {
                    r.push(
                        format!("{field}.index"),
                        format!("token {} out of range", c.index),
                    );
                }
                match (c.usage, c.sense) {
                    (Usage::Discourse, Sense::Unspecified) => {
                        r.push(format!("{field}.sense"), "discourse usage needs a sense")
                    }
                    (Usage::NonDiscourse, s) if s != Sense::Unspecified => r.push(
                        format!("{field}.sense"),
                        "non-discourse usage must have sense `none`",
                    ),
                    _ => {}
                }
            }
        }
    }
    if let Some(chains) = &doc.chains {
        for (ci, chain) in chains.iter().enumerate() {
            if chain.mentions.is_empty() {
                r.push(format!("chains[{ci}].mentions"), "chain has no mentions");
            }
            for (mi, m) in chain.mentions.iter().enumerate() {
                check_span(
                    &mut r,
                    &format!("chains[{ci}].mentions[{mi}]"),
                    doc,
                    m.sentence,
                    m.start,
                    m.end,
                );
            }
        }
    }
    if let Some(errors) = &doc.errors {
        for (ei, e) in errors.iter().enumerate() {
            check_span(&mut r, &format!("errors[{ei}]"), doc, e.sentence, e.start, e.end);
        }
    }
    r
}

/// Reads a JSON-lines corpus from any reader. Blank lines are skipped.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<EssayDoc>> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        if let Some(doc) = read_line(i + 1, line, &mut seen)? {
            docs.push(doc);
        }
    }
    Ok(docs)
}

/// Like [`read_corpus`] but keeps going past bad lines, returning the good
/// essays together with one error per bad line. A read failure still stops
/// the scan.
pub fn scan_corpus<R: BufRead>(reader: R) -> (Vec<EssayDoc>, Vec<Error>) {
    let mut docs = Vec::new();
    let mut errors = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let stop = line.is_err();
        match read_line(i + 1, line, &mut seen) {
            Ok(Some(doc)) => docs.push(doc),
            Ok(None) => {}
            Err(e) => errors.push(e),
        }
        if stop {
            break;
        }
    }
    (docs, errors)
}

fn read_line(
    line_no: usize,
    line: std::io::Result<String>,
    seen: &mut HashSet<String>,
) -> Result<Option<EssayDoc>> {
    let line = line.map_err(|source| Error::Io {
        path: format!("<line {line_no}>").into(),
        source,
    })?;
    if line.trim().is_empty() {
        return Ok(None);
    }
    let doc: EssayDoc = serde_json::from_str(&line).map_err(|source| Error::Json {
        line: line_no,
        source,
    })?;
    let report = validate(&doc);
    if !report.is_empty() {
        return Err(Error::Invalid {
            line: line_no,
            report,
        });
    }
    if !seen.insert(doc.id.clone()) {
        return Err(Error::DuplicateId {
            line: line_no,
            id: doc.id,
        });
    }
    Ok(Some(doc))
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<EssayDoc>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_corpus(BufReader::new(file))
}

pub fn write_corpus<W: Write>(mut writer: W, docs: &[EssayDoc]) -> std::io::Result<()> {
    for doc in docs {
        serde_json::to_writer(&mut writer, doc)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

pub fn save_corpus(path: impl AsRef<Path>, docs: &[EssayDoc]) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_corpus(BufWriter::new(file), docs).map_err(io_err)
}
