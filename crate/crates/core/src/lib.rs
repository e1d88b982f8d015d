//! Feature extraction and linear scoring for pre-annotated learner essays.
//!
//! The pipeline reads annotated essays ([`annotate`]), computes word, POS,
//! syntactic, discourse and error features, assembles them into named
//! vectors ([`vector`]), and trains pairwise SVM classifiers or
//! epsilon-insensitive regressors ([`learn`]) whose output is scored by
//! [`evaluate`].

pub mod annotate;
pub mod discfeat;
pub mod errfeat;
pub mod error;
pub mod evaluate;
pub mod learn;
pub mod lexfeat;
pub mod par;
pub mod posfeat;
pub mod synth;
pub mod synfeat;
pub mod tags;
pub mod treeops;
pub mod vector;

pub use error::{Error, Result};
pub use par::Execution;
