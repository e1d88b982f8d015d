//! `aes`: extract features from annotated essay corpora, train and evaluate
//! linear scoring models, rank features, balance and synthesize corpora.
//!
//! Exit codes: 0 success, 1 data or validation failure, 2 configuration
//! failure (bad flags, missing resources, unknown profiles).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use aes_core::learn::{Hyper, Task};
use aes_core::{Error, Execution};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "aes", version, about = "Feature-based automated essay scoring")]
pub struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Extract a feature matrix (CSV plus JSON sidecar).
    Extract {
        #[command(flatten)]
        input: FeatureInput,
        /// Output CSV; the sidecar goes next to it with a `.sidecar.json` suffix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a model on the whole corpus.
    Train {
        #[command(flatten)]
        input: FeatureInput,
        /// Classification over labels or regression over scores.
        #[arg(long, value_enum, default_value_t = TaskArg::Classify)]
        task: TaskArg,
        #[command(flatten)]
        hyper: HyperArgs,
        /// Where to write the trained model (JSON).
        #[arg(long)]
        model: PathBuf,
    },
    /// Predict every essay of a corpus with a trained model.
    Predict {
        /// Annotated corpus (JSON lines).
        #[arg(long)]
        corpus: PathBuf,
        /// Trained model from `train`.
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        resources: ResourceArgs,
        /// Output CSV (id, prediction, gold when known); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stratified k-fold cross-validation.
    Crossval {
        #[command(flatten)]
        input: FeatureInput,
        /// Classification over labels or regression over scores.
        #[arg(long, value_enum, default_value_t = TaskArg::Classify)]
        task: TaskArg,
        /// Number of folds.
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[command(flatten)]
        hyper: HyperArgs,
        /// JSON report; the text table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank features with ReliefF (classify) or RReliefF (regress).
    Relieff {
        #[command(flatten)]
        input: FeatureInput,
        /// Classification over labels or regression over scores.
        #[arg(long, value_enum, default_value_t = TaskArg::Classify)]
        task: TaskArg,
        /// Neighbours per class.
        #[arg(long = "k-neighbors", default_value_t = 10)]
        k_neighbors: usize,
        /// Output TSV (rank, feature, weight); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subsample every class down to the minority class size.
    Balance {
        /// Annotated corpus (JSON lines).
        #[arg(long)]
        corpus: PathBuf,
        /// Seed for choosing the retained essays.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Balanced corpus (JSON lines).
        #[arg(long)]
        out: PathBuf,
    },
    /// Model weights, prediction evaluation, or a feature-group table.
    Report {
        /// Weight report of a trained model.
        #[arg(long, conflicts_with_all = ["predictions", "groups"])]
        model: Option<PathBuf>,
        /// Pairwise machine to inspect, as `positive,negative` (default: low,high).
        #[arg(long, requires = "model")]
        pair: Option<String>,
        /// Weights listed at each end of the ranking.
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Evaluate a predictions CSV from `predict` against the corpus labels.
        #[arg(long, requires = "corpus", conflicts_with = "groups")]
        predictions: Option<PathBuf>,
        /// Cross-validate every base profile and its ablation variants.
        #[arg(long, requires = "corpus")]
        groups: bool,
        /// Annotated corpus (JSON lines).
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        resources: ResourceArgs,
        /// Classification over labels or regression over scores.
        #[arg(long, value_enum, default_value_t = TaskArg::Classify)]
        task: TaskArg,
        /// Number of folds.
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[command(flatten)]
        hyper: HyperArgs,
        /// JSON report; the text table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic annotated corpus with planted quality signals.
    Synth {
        /// Corpus to write (JSON lines).
        #[arg(long)]
        out: PathBuf,
        /// Essays per class.
        #[arg(long = "per-class", default_value_t = 300)]
        per_class: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Standard deviation of each signal around the latent quality.
        #[arg(long, default_value_t = 0.04)]
        noise: f64,
        /// Shuffle labels and scores across essays.
        #[arg(long = "permute-labels")]
        permute_labels: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ResourceArgs {
    /// Spelling dictionary (one word per line) for essays without error annotations.
    #[arg(long)]
    pub dictionary: Option<PathBuf>,
    /// Connective lexicon (`form<TAB>sense` lines), or `builtin`.
    #[arg(long)]
    pub connectives: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FeatureInput {
    /// Annotated corpus (JSON lines).
    #[arg(long)]
    pub corpus: PathBuf,
    /// Built-in profile name or a JSON profile file.
    #[arg(long, default_value = "paper-114")]
    pub profile: String,
    #[command(flatten)]
    pub resources: ResourceArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct HyperArgs {
    /// Soft-margin complexity constant.
    #[arg(long = "C", default_value_t = 1.0)]
    pub c: f64,
    /// Width of the insensitive tube for regression.
    #[arg(long, default_value_t = 0.001)]
    pub epsilon: f64,
    /// Optimizer stopping tolerance.
    #[arg(long, default_value_t = 0.001)]
    pub tolerance: f64,
    /// Random seed; fixes the fold assignment.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

impl HyperArgs {
    pub fn hyper(self) -> Hyper {
        Hyper { c: self.c, epsilon: self.epsilon, tolerance: self.tolerance, seed: self.seed }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskArg {
    Classify,
    Regress,
}

impl From<TaskArg> for Task {
    fn from(t: TaskArg) -> Task {
        match t {
            TaskArg::Classify => Task::Classification,
            TaskArg::Regress => Task::Regression,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_config() {
        2
    } else {
        1
    }
}

fn hint(e: &Error) -> Option<&'static str> {
    match e {
        Error::MissingResource { resource: "connective lexicon", .. } => {
            Some("pass --connectives <file> or --connectives builtin")
        }
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match commands::run(cli.command, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(errors) => {
            for e in &errors {
                eprintln!("error: {e}");
                if let Some(h) = hint(e) {
                    eprintln!("hint: {h}");
                }
            }
            let code = errors.iter().map(exit_code).max().unwrap_or(1);
            ExitCode::from(code)
        }
    }
}
