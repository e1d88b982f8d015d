//! Feature groups, their column names, and the built-in profiles.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An extractor output block. Every feature name belongs to exactly one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    DocLen,
    Word,
    Pos,
    Syn,
    DiscOverlap,
    DiscRefex,
    DiscConn,
    DiscEntities,
    /// The four entity densities, outside the canonical 114.
    DiscEntityDensity,
    DiscChains,
    /// Average chain length, outside the canonical 114.
    DiscChainLength,
    Error,
}

const DOC_LEN: &[&str] = &["docLen"];

const WORD: &[&str] = &["WORD_TTR", "WORD_CorrectedTTR", "WORD_RootTTR", "WORD_BilogTTR", "WORD_MTLD"];

const POS: &[&str] = &[
    "POS_adjectiveVariation",
    "POS_adverbVariation",
    "POS_correctedVerbVariation1",
    "POS_modifierVariation",
    "POS_nounVar",
    "POS_squaredVerbVar1",
    "POS_verbVar1",
    "POS_verbVar2",
    "POS_numLexicalWords",
    "POS_numNouns",
    "POS_numProperNouns",
    "POS_numPronouns",
    "POS_numPerPronouns",
    "POS_numAdjectives",
    "POS_numAdverbs",
    "POS_numConjunctions",
    "POS_numInterjections",
    "POS_numDeterminers",
    "POS_numPrepositions",
    "POS_numVerbs",
    "POS_numWhPronouns",
    "POS_numVerbsVBD",
    "POS_numVerbsVBG",
    "POS_numVerbsVBN",
    "POS_numVerbsVBP",
    "POS_numVerbsVBZ",
    "POS_numModalVerbs",
];

const SYN: &[&str] = &[
    "SYN_avgSentenceLength",
    "SYN_MeanLengthofClauses",
    "SYN_MeanLengthofTunits",
    "SYN_ComplexNominalsPerClause",
    "SYN_CNPerTunit",
    "SYN_ComplexTunitRatio",
    "SYN_CoordinatePhrasesPerClause",
    "SYN_CoordPerTunit",
    "SYN_DependentClauseRatio",
    "SYN_DependentClausesPerTunit",
    "SYN_TunitComplexityRatio",
    "SYN_VPPerTunit",
    "SYN_numTunitsPerSen",
    "SYN_numClausesPerSen",
    "SYN_avgParseTreeHeightPerSen",
    "SYN_numSentences",
    "SYN_numConstitutentsPerSen",
    "SYN_numConjPPerSen",
    "SYN_avgNPSize",
    "SYN_numNPsPerSen",
    "SYN_numPPSize",
    "SYN_numPPsPerSen",
    "SYN_numRRCsPerSen",
    "SYN_numSBARsPerSen",
    "SYN_numSubtreesPerSen",
    "SYN_numVPSize",
    "SYN_numVPsPerSen",
    "SYN_WhPhrasesPerSen",
];

const DISC_OVERLAP: &[&str] = &[
    "DISC_localContentWordOverlap",
    "DISC_localNounOverlap",
    "DISC_localStemOverlap",
    "DISC_localArgumentOverlap",
    "DISC_globalContentWordOverlap",
    "DISC_globalNounOverlap",
    "DISC_globalStemOverlap",
    "DISC_globalArgumentOverlap",
];

const DISC_REFEX: &[&str] = &[
    "DISC_definiteArticlesPerWord",
    "DISC_definiteArticlesPerSen",
    "DISC_pronounsPerWord",
    "DISC_pronounsPerSen",
    "DISC_personalPronounsPerWord",
    "DISC_personalPronounsPerSen",
    "DISC_possessivePronounsPerWord",
    "DISC_possessivePronounsPerSen",
    "DISC_pronounsPerNoun",
    "DISC_properNounsPerNoun",
];

const DISC_CONN: &[&str] = &[
    "DISC_discourseConnectivesPerSen",
    "DISC_nonDiscourseConnectivesPerSen",
    "DISC_allConnectivesPerSen",
    "DISC_expansionConnectivesPerSen",
    "DISC_contingencyConnectivesPerSen",
    "DISC_comparisonConnectivesPerSen",
    "DISC_temporalConnectivesPerSen",
];

// S, O, X, A(bsent); row = role in the earlier sentence.
const DISC_ENTITIES: &[&str] = &[
    "DISC_transSS", "DISC_transSO", "DISC_transSX", "DISC_transSA",
    "DISC_transOS", "DISC_transOO", "DISC_transOX", "DISC_transOA",
    "DISC_transXS", "DISC_transXO", "DISC_transXX", "DISC_transXA",
    "DISC_transAS", "DISC_transAO", "DISC_transAX", "DISC_transAA",
];

const DISC_ENTITY_DENSITY: &[&str] = &[
    "DISC_entitiesPerSen",
    "DISC_entitiesPerText",
    "DISC_uniqueEntitiesPerText",
    "DISC_wordsPerEntity",
];

const DISC_CHAINS: &[&str] = &[
    "DISC_chainPersonalPronouns",
    "DISC_chainDemonstrativePronouns",
    "DISC_chainReflexivePronouns",
    "DISC_chainProperNouns",
    "DISC_chainPossessiveDeterminers",
    "DISC_chainDemonstrativeDeterminers",
    "DISC_chainIndefiniteNPs",
    "DISC_chainDefiniteNPs",
];

const DISC_CHAIN_LENGTH: &[&str] = &["DISC_avgChainLength"];

const ERROR: &[&str] = &[
    "ERR_spellingErrorsPerSen",
    "ERR_nonSpellingErrorsPerSen",
    "ERR_allErrorsPerSen",
    "ERR_spellingErrorShare",
];

impl Group {
    pub const ALL: [Group; 12] = [
        Group::DocLen,
        Group::Word,
        Group::Pos,
        Group::Syn,
        Group::DiscOverlap,
        Group::DiscRefex,
        Group::DiscConn,
        Group::DiscEntities,
        Group::DiscEntityDensity,
        Group::DiscChains,
        Group::DiscChainLength,
        Group::Error,
    ];

    /// Groups of the canonical 114-feature profile, in column order.
    pub const CANONICAL: [Group; 10] = [
        Group::DocLen,
        Group::Word,
        Group::Pos,
        Group::Syn,
        Group::DiscOverlap,
        Group::DiscRefex,
        Group::DiscConn,
        Group::DiscEntities,
        Group::DiscChains,
        Group::Error,
    ];

    pub const DISCOURSE: [Group; 5] = [
        Group::DiscOverlap,
        Group::DiscRefex,
        Group::DiscConn,
        Group::DiscEntities,
        Group::DiscChains,
    ];

    pub fn names(self) -> &'static [&'static str] {
        match self {
            Group::DocLen => DOC_LEN,
            Group::Word => WORD,
            Group::Pos => POS,
            Group::Syn => SYN,
            Group::DiscOverlap => DISC_OVERLAP,
            Group::DiscRefex => DISC_REFEX,
            Group::DiscConn => DISC_CONN,
            Group::DiscEntities => DISC_ENTITIES,
            Group::DiscEntityDensity => DISC_ENTITY_DENSITY,
            Group::DiscChains => DISC_CHAINS,
            Group::DiscChainLength => DISC_CHAIN_LENGTH,
            Group::Error => ERROR,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Group::DocLen => "docLen",
            Group::Word => "Word",
            Group::Pos => "POS",
            Group::Syn => "Syn",
            Group::DiscOverlap => "Disc-Overlap",
            Group::DiscRefex => "Disc-RefEx",
            Group::DiscConn => "Disc-Conn",
            Group::DiscEntities => "Disc-Entities",
            Group::DiscEntityDensity => "Disc-EntityDensity",
            Group::DiscChains => "Disc-Chains",
            Group::DiscChainLength => "Disc-ChainLength",
            Group::Error => "Error",
        }
    }

    /// Group and position of a feature name.
    pub fn of(name: &str) -> Option<(Group, usize)> {
        Group::ALL
            .into_iter()
            .find_map(|g| g.names().iter().position(|n| *n == name).map(|i| (g, i)))
    }
}

/// A named, ordered selection of numeric features plus categorical switches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureProfile {
    pub name: String,
    pub features: Vec<String>,
    pub include_prompt: bool,
    pub include_l1: bool,
}

/// Base profiles: one per feature-group row of the results tables, the
/// canonical 114, and the extended 119.
const BASES: &[(&str, &[Group])] = &[
    ("doclen", &[Group::DocLen]),
    ("word", &[Group::Word]),
    ("pos", &[Group::Pos]),
    ("syn", &[Group::Syn]),
    ("disc-all", &Group::DISCOURSE),
    ("disc-overlap", &[Group::DiscOverlap]),
    ("disc-refex", &[Group::DiscRefex]),
    ("disc-conn", &[Group::DiscConn]),
    ("disc-entities", &[Group::DiscEntities]),
    ("disc-chains", &[Group::DiscChains]),
    ("error", &[Group::Error]),
    ("paper-114", &Group::CANONICAL),
    (
        "extended",
        &[
            Group::DocLen,
            Group::Word,
            Group::Pos,
            Group::Syn,
            Group::DiscOverlap,
            Group::DiscRefex,
            Group::DiscConn,
            Group::DiscEntities,
            Group::DiscEntityDensity,
            Group::DiscChains,
            Group::DiscChainLength,
            Group::Error,
        ],
    ),
];

/// Suffixes for the ablation variants: drop prompt, drop prompt and L1.
pub const NO_PROMPT: &str = "-noprompt";
pub const NO_PROMPT_L1: &str = "-noprompt-nol1";

impl FeatureProfile {
    pub fn from_groups(name: impl Into<String>, groups: &[Group], prompt: bool, l1: bool) -> Self {
        FeatureProfile {
            name: name.into(),
            features: groups
                .iter()
                .flat_map(|g| g.names().iter().map(|s| s.to_string()))
                .collect(),
            include_prompt: prompt,
            include_l1: l1,
        }
    }

    /// Names of every built-in profile, base names first then their variants.
    pub fn builtin_names() -> Vec<String> {
        let mut out: Vec<String> = BASES.iter().map(|(n, _)| n.to_string()).collect();
        for suffix in [NO_PROMPT, NO_PROMPT_L1] {
            out.extend(BASES.iter().map(|(n, _)| format!("{n}{suffix}")));
        }
        out
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let (base, prompt, l1) = if let Some(b) = name.strip_suffix(NO_PROMPT_L1) {
            (b, false, false)
        } else if let Some(b) = name.strip_suffix(NO_PROMPT) {
            (b, false, true)
        } else {
            (name, true, true)
        };
        let (_, groups) = BASES.iter().find(|(n, _)| *n == base)?;
        Some(Self::from_groups(name, groups, prompt, l1))
    }

    /// Base profile groups for building report tables.
    pub fn base_groups() -> impl Iterator<Item = (&'static str, &'static [Group])> {
        BASES.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    /// Checks that names are unique and known, and returns each feature's
    /// group and position within it.
    pub fn resolve(&self) -> Result<Vec<(Group, usize)>> {
        let mut seen = std::collections::HashSet::new();
        self.features
            .iter()
            .map(|f| {
                if !seen.insert(f.as_str()) {
                    return Err(Error::Config(format!(
                        "profile `{}` lists `{f}` twice",
                        self.name
                    )));
                }
                Group::of(f).ok_or_else(|| {
                    Error::Config(format!("profile `{}`: unknown feature `{f}`", self.name))
                })
            })
            .collect()
    }

    /// Distinct groups the profile draws on, in [`Group`] order.
    pub fn groups(&self) -> Result<Vec<Group>> {
        let mut gs: Vec<Group> = self.resolve()?.into_iter().map(|(g, _)| g).collect();
        gs.sort();
        gs.dedup();
        Ok(gs)
    }
}
