//! Named feature vectors, their normalization, and CSV export.

mod catalog;
mod export;
mod normalize;

use serde::{Deserialize, Serialize};

use crate::annotate::{EssayDoc, Label};
use crate::discfeat::{self, ConnectiveLexicon};
use crate::errfeat::{self, Dictionary};
use crate::par::Execution;
use crate::{lexfeat, posfeat, synfeat, Error, Result};

pub use catalog::{FeatureProfile, Group, NO_PROMPT, NO_PROMPT_L1};
pub use export::{read_sidecar, write_csv, write_sidecar, Sidecar};
pub use normalize::{encode_categorical, CategoricalEncoder, Design, MinMax};

/// Resource files some groups depend on.
#[derive(Debug, Clone, Default)]
pub struct Resources {
    pub lexicon: Option<ConnectiveLexicon>,
    pub dictionary: Option<Dictionary>,
}

impl Resources {
    /// Fails with a configuration error when the profile needs the connective
    /// lexicon and none was supplied.
    pub fn check(&self, profile: &FeatureProfile) -> Result<()> {
        if profile.groups()?.contains(&Group::DiscConn) && self.lexicon.is_none() {
            return Err(Error::MissingResource {
                resource: "connective lexicon",
                group: "Disc-Conn",
            });
        }
        Ok(())
    }
}

/// One group's values aligned to [`Group::names`]; `None` marks an
/// undefined value.
pub fn group_values(group: Group, doc: &EssayDoc, res: &Resources) -> Result<Vec<Option<f64>>> {
    let all = |v: &[f64]| v.iter().map(|&x| Some(x)).collect::<Vec<_>>();
    Ok(match group {
        Group::DocLen => vec![Some(doc.word_count() as f64)],
        Group::Word => {
            let w = lexfeat::word_features(doc)?;
            vec![Some(w.ttr), Some(w.corrected_ttr), Some(w.root_ttr), w.bilog_ttr, w.mtld]
        }
        Group::Pos => all(&posfeat::pos_features(doc)?.values()),
        Group::Syn => all(&synfeat::syntactic_complexity(doc)?.values()),
        Group::DiscOverlap => all(&discfeat::overlap_features(doc).values()),
        Group::DiscRefex => all(&discfeat::refex_features(doc)?.values()),
        Group::DiscConn => {
            let lex = res.lexicon.as_ref().ok_or(Error::MissingResource {
                resource: "connective lexicon",
                group: "Disc-Conn",
            })?;
            all(&discfeat::connective_features(doc, lex)?.values())
        }
        Group::DiscEntities => all(&discfeat::entity_grid_features(doc)?.transitions),
        Group::DiscEntityDensity => all(&discfeat::entity_grid_features(doc)?.densities()),
        Group::DiscChains => all(&discfeat::chain_features(doc)?.proportions),
        Group::DiscChainLength => vec![Some(discfeat::chain_features(doc)?.average_length)],
        Group::Error => all(&errfeat::error_features(doc, res.dictionary.as_ref())?.values()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub id: String,
    /// Numeric values in profile order, undefined values already imputed.
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
    /// Positions whose value was undefined and imputed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub imputed: Vec<usize>,
}

impl FeatureVector {
    pub fn target(&self) -> Option<f64> {
        self.score.or(self.label.map(Label::ordinal))
    }
}

/// Value substituted for undefined features.
pub const IMPUTED_VALUE: f64 = 0.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub profile: FeatureProfile,
    pub rows: Vec<FeatureVector>,
}

/// An undefined value that was replaced by [`IMPUTED_VALUE`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Imputation {
    pub essay: String,
    pub feature: String,
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn width(&self) -> usize {
        self.profile.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.values[j]).collect()
    }

    pub fn imputations(&self) -> Vec<Imputation> {
        self.rows
            .iter()
            .flat_map(|r| {
                r.imputed.iter().map(|&j| Imputation {
                    essay: r.id.clone(),
                    feature: self.profile.features[j].clone(),
                })
            })
            .collect()
    }

    /// Rows at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            profile: self.profile.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Keeps only the named numeric columns, under a new profile.
    pub fn project(&self, profile: &FeatureProfile) -> Result<FeatureMatrix> {
        let idx: Vec<usize> = profile
            .features
            .iter()
            .map(|f| {
                self.profile.features.iter().position(|g| g == f).ok_or_else(|| {
                    Error::Config(format!("feature `{f}` is not in profile `{}`", self.profile.name))
                })
            })
            .collect::<Result<_>>()?;
        let rows = self
            .rows
            .iter()
            .map(|r| FeatureVector {
                values: idx.iter().map(|&j| r.values[j]).collect(),
                imputed: idx
                    .iter()
                    .enumerate()
                    .filter(|(_, j)| r.imputed.contains(j))
                    .map(|(k, _)| k)
                    .collect(),
                prompt: r.prompt.clone().filter(|_| profile.include_prompt),
                l1: r.l1.clone().filter(|_| profile.include_l1),
                ..r.clone()
            })
            .collect();
        Ok(FeatureMatrix { profile: profile.clone(), rows })
    }
}

/// Extracts one essay's vector under `profile`.
pub fn assemble(doc: &EssayDoc, profile: &FeatureProfile, res: &Resources) -> Result<FeatureVector> {
    let slots = profile.resolve()?;
    let mut cache: Vec<(Group, Vec<Option<f64>>)> = Vec::new();
    let mut values = Vec::with_capacity(slots.len());
    let mut imputed = Vec::new();
    for (j, (group, k)) in slots.into_iter().enumerate() {
        let pos = match cache.iter().position(|(g, _)| *g == group) {
            Some(p) => p,
            None => {
                cache.push((group, group_values(group, doc, res)?));
                cache.len() - 1
            }
        };
        match cache[pos].1[k] {
            Some(v) => values.push(v),
            None => {
                values.push(IMPUTED_VALUE);
                imputed.push(j);
            }
        }
    }
    Ok(FeatureVector {
        id: doc.id.clone(),
        values,
        prompt: profile.include_prompt.then(|| doc.prompt.clone()),
        l1: profile.include_l1.then(|| doc.l1.clone()),
        label: doc.label,
        score: doc.score,
        imputed,
    })
}

/// Extracts every essay, in corpus order. Resource requirements are checked
/// before any essay is touched.
pub fn extract(
    docs: &[EssayDoc],
    profile: &FeatureProfile,
    res: &Resources,
    exec: Execution,
) -> Result<FeatureMatrix> {
    profile.resolve()?;
    res.check(profile)?;
    let rows = exec.try_map(docs, |d| assemble(d, profile, res))?;
    Ok(FeatureMatrix { profile: profile.clone(), rows })
}
