//! Synthetic annotated corpora with planted quality signals.
//!
//! Every essay draws a latent quality `q` in `[0, 1)`. Each surface property
//! (length, vocabulary breadth, modification, subordination, connective use,
//! topic continuity, error rates) is driven by its own noisy copy of `q`.
//! The gold label is the third of the range that the realized length
//! position `(words - 120) / 300` falls in, and the score is `1 + 4` times
//! that position. Essays whose realized label differs from the class they
//! were drawn for are redrawn, so classes stay balanced. Essays carry parses,
//! coreference chains and error annotations, and go through the real
//! extraction pipeline.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::annotate::{
    CorefChain, EssayDoc, ErrorAnnotation, ErrorKind, Label, Mention, Sentence, Token,
};
use crate::{Error, Result};

pub const PROMPTS: [&str; 3] = ["P1", "P2", "P3"];
pub const L1S: [&str; 11] = [
    "ARA", "CHI", "FRE", "GER", "HIN", "ITA", "JPN", "KOR", "SPA", "TEL", "TUR",
];

const VERBS: [&str; 16] = [
    "shows", "needs", "makes", "takes", "helps", "keeps", "finds", "gives", "uses", "brings",
    "changes", "supports", "builds", "offers", "follows", "explains",
];
const ADJECTIVES: [&str; 16] = [
    "good", "new", "important", "difficult", "useful", "modern", "simple", "strong", "young",
    "public", "different", "serious", "common", "small", "large", "social",
];
const PREPOSITIONS: [&str; 4] = ["of", "in", "for", "with"];
const SUBORDINATORS: [&str; 4] = ["because", "although", "while", "if"];
/// (form, tag, wrapped in ADVP)
const OPENERS: [(&str, &str, bool); 7] = [
    ("However", "RB", true),
    ("Moreover", "RB", true),
    ("Therefore", "RB", true),
    ("Then", "RB", true),
    ("Also", "RB", true),
    ("And", "CC", false),
    ("But", "CC", false),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub per_class: usize,
    pub seed: u64,
    /// Standard deviation of each signal's deviation from the latent quality.
    pub noise: f64,
    /// Shuffle labels and scores across essays, destroying the signal.
    pub permute_labels: bool,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig { per_class: 300, seed: 1, noise: 0.04, permute_labels: false }
    }
}

/// A pronounceable pseudo-noun, distinct for every index.
pub fn pseudo_noun(i: usize) -> String {
    const ONSETS: [&str; 12] = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t"];
    const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];
    let mut out = String::new();
    let mut x = i;
    loop {
        out.push_str(ONSETS[x % ONSETS.len()]);
        x /= ONSETS.len();
        out.push_str(VOWELS[x % VOWELS.len()]);
        x /= VOWELS.len();
        if x == 0 {
            break;
        }
        x -= 1;
    }
    out.push('n');
    out
}

struct Params {
    target_words: usize,
    nouns: usize,
    adjective: f64,
    pp: f64,
    subordinate: f64,
    opener: f64,
    topic: f64,
    spelling: f64,
    non_spelling: f64,
}

impl Params {
    fn draw(q: f64, noise: f64, rng: &mut ChaCha8Rng) -> Self {
        let normal = Normal::new(0.0, noise.max(0.0)).expect("finite standard deviation");
        let mut s = || (q + normal.sample(rng)).clamp(0.0, 1.0);
        Params {
            target_words: (MIN_WORDS + WORD_RANGE * s()).round() as usize,
            nouns: (15.0 + 250.0 * s()).round() as usize,
            adjective: 0.1 + 0.6 * s(),
            pp: 0.05 + 0.4 * s(),
            subordinate: 0.05 + 0.6 * s(),
            opener: 0.05 + 0.5 * s(),
            topic: 0.2 + 0.6 * s(),
            spelling: 0.12 * (1.0 - s()),
            non_spelling: 0.06 * (1.0 - s()),
        }
    }
}

struct Builder<'a> {
    rng: &'a mut ChaCha8Rng,
    p: &'a Params,
    tokens: Vec<Token>,
}

impl Builder<'_> {
    fn leaf(&mut self, tag: &str, form: &str) -> String {
        self.tokens.push(Token::new(form, tag));
        format!("({tag} {form})")
    }

    fn noun(&mut self) -> String {
        pseudo_noun(self.rng.random_range(0..self.p.nouns))
    }

    fn simple_np(&mut self, det: &str, noun: &str) -> String {
        let d = self.leaf("DT", det);
        let adj = if self.rng.random_bool(self.p.adjective) {
            let a = ADJECTIVES[self.rng.random_range(0..ADJECTIVES.len())];
            format!(" {}", self.leaf("JJ", a))
        } else {
            String::new()
        };
        let n = self.leaf("NN", noun);
        format!("(NP {d}{adj} {n})")
    }

    fn np(&mut self, det: &str, noun: &str) -> String {
        let head = self.simple_np(det, noun);
        if !self.rng.random_bool(self.p.pp) {
            return head;
        }
        let prep = PREPOSITIONS[self.rng.random_range(0..PREPOSITIONS.len())];
        let i = self.leaf("IN", prep);
        let inner_noun = self.noun();
        let inner = self.simple_np("the", &inner_noun);
        format!("(NP {head} (PP {i} {inner}))")
    }

    fn vp(&mut self, depth: usize) -> String {
        let verb = VERBS[self.rng.random_range(0..VERBS.len())];
        let v = self.leaf("VBZ", verb);
        let det = if self.rng.random_bool(0.5) { "the" } else { "a" };
        let noun = self.noun();
        let obj = self.np(det, &noun);
        let sbar = if depth == 0 && self.rng.random_bool(self.p.subordinate) {
            let sub = SUBORDINATORS[self.rng.random_range(0..SUBORDINATORS.len())];
            let i = self.leaf("IN", sub);
            let noun = self.noun();
            let subj = self.np("the", &noun);
            let inner = self.vp(depth + 1);
            format!(" (SBAR {i} (S {subj} {inner}))")
        } else {
            String::new()
        };
        format!("(VP {v} {obj}{sbar})")
    }
}

struct EssayState {
    topic: String,
    chain: Vec<Mention>,
    words: usize,
}

fn sentence(rng: &mut ChaCha8Rng, p: &Params, index: usize, st: &mut EssayState) -> Sentence {
    let mut b = Builder { rng, p, tokens: Vec::new() };
    let mut parts = Vec::new();
    if index > 0 && b.rng.random_bool(p.opener) {
        let (form, tag, advp) = OPENERS[b.rng.random_range(0..OPENERS.len())];
        let l = b.leaf(tag, form);
        parts.push(if advp { format!("(ADVP {l})") } else { l });
        if advp {
            parts.push(b.leaf(",", ","));
        }
    }
    let start = b.tokens.len();
    let on_topic = index == 0 || b.rng.random_bool(p.topic);
    let subject = if on_topic && index > 0 && b.rng.random_bool(0.4) {
        let l = b.leaf("PRP", "it");
        format!("(NP {l})")
    } else if on_topic {
        let topic = st.topic.clone();
        b.simple_np("the", &topic)
    } else {
        let noun = b.noun();
        b.np("the", &noun)
    };
    if on_topic {
        st.chain.push(Mention { sentence: index, start, end: b.tokens.len() - 1, kind: None });
    }
    parts.push(subject);
    parts.push(b.vp(0));
    parts.push(b.leaf(".", "."));
    let tokens = b.tokens;
    st.words += tokens.iter().filter(|t| t.is_word()).count();
    Sentence::new(tokens).with_parse(format!("(ROOT (S {}))", parts.join(" ")))
}

const MIN_WORDS: f64 = 120.0;
const WORD_RANGE: f64 = 300.0;

fn essay(rng: &mut ChaCha8Rng, id: String, class: Label, noise: f64) -> EssayDoc {
    loop {
        let q = (class.index() as f64 + rng.random::<f64>()) / 3.0;
        let doc = draft(rng, &id, q, noise);
        if doc.label == Some(class) {
            return doc;
        }
    }
}

fn draft(rng: &mut ChaCha8Rng, id: &str, q: f64, noise: f64) -> EssayDoc {
    let p = Params::draw(q, noise, rng);
    let topic = pseudo_noun(rng.random_range(0..p.nouns));
    let mut st = EssayState { topic, chain: Vec::new(), words: 0 };
    let mut sentences = Vec::new();
    while st.words < p.target_words {
        let s = sentence(rng, &p, sentences.len(), &mut st);
        sentences.push(s);
    }
    let mut errors = Vec::new();
    for (si, s) in sentences.iter().enumerate() {
        for (ti, t) in s.tokens.iter().enumerate() {
            if !t.is_word() {
                continue;
            }
            let kind = if rng.random_bool(p.spelling) {
                ErrorKind::Spelling
            } else if rng.random_bool(p.non_spelling) {
                ErrorKind::NonSpelling
            } else {
                continue;
            };
            errors.push(ErrorAnnotation { sentence: si, kind, start: ti, end: ti });
        }
    }
    let realized = ((st.words as f64 - MIN_WORDS) / WORD_RANGE).clamp(0.0, 1.0);
    let label = Label::from_index(((realized * 3.0) as usize).min(2)).expect("index below three");
    EssayDoc {
        id: id.to_string(),
        prompt: PROMPTS[rng.random_range(0..PROMPTS.len())].to_string(),
        l1: L1S[rng.random_range(0..L1S.len())].to_string(),
        label: Some(label),
        score: Some(((1.0 + 4.0 * realized) * 100.0).round() / 100.0),
        sentences,
        chains: Some(vec![CorefChain { mentions: st.chain }]),
        errors: Some(errors),
    }
}

/// `3 * per_class` essays, balanced over labels, in id order.
pub fn generate(cfg: &SynthConfig) -> Result<Vec<EssayDoc>> {
    if cfg.per_class == 0 {
        return Err(Error::Config("per-class essay count must be positive".into()));
    }
    if !(cfg.noise.is_finite() && cfg.noise >= 0.0) {
        return Err(Error::Config(format!("noise must be a non-negative number, got {}", cfg.noise)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut classes: Vec<Label> = Label::ALL
        .iter()
        .flat_map(|&c| std::iter::repeat_n(c, cfg.per_class))
        .collect();
    classes.shuffle(&mut rng);
    let width = (classes.len() as f64).log10().floor() as usize + 1;
    let mut docs: Vec<EssayDoc> = classes
        .iter()
        .enumerate()
        .map(|(i, &c)| essay(&mut rng, format!("syn-{:0width$}", i + 1), c, cfg.noise))
        .collect();
    if cfg.permute_labels {
        let mut targets: Vec<(Option<Label>, Option<f64>)> =
            docs.iter().map(|d| (d.label, d.score)).collect();
        targets.shuffle(&mut rng);
        for (d, (l, s)) in docs.iter_mut().zip(targets) {
            d.label = l;
            d.score = s;
        }
    }
    Ok(docs)
}
