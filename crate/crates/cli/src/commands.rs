//! Subcommand implementations. Every output file `X` gets a sibling
//! `X.run.json` holding the run configuration, seed included.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use aes_core::annotate::{scan_corpus, write_corpus, EssayDoc, Label};
use aes_core::discfeat::ConnectiveLexicon;
use aes_core::errfeat::Dictionary;
use aes_core::evaluate::{
    classification_report, model_weight_report, regression_report, render_group_table,
    EvalReport, GroupRow, WeightReport,
};
use aes_core::learn::{
    class_counts, cross_validate, rank, subsample_balance, train, CvResult, Hyper, LinearModel,
    Prediction, Task,
};
use aes_core::synth::{generate, SynthConfig};
use aes_core::vector::{
    extract, write_csv, write_sidecar, FeatureMatrix, FeatureProfile, Resources, NO_PROMPT,
    NO_PROMPT_L1,
};
use aes_core::{Error, Execution, Result};
use serde::{Deserialize, Serialize};

use crate::{Command, FeatureInput, ResourceArgs};

/// Everything needed to rerun a command, persisted next to its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<Task>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyper: Option<Hyper>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub folds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_neighbors: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dictionary: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connectives: Option<PathBuf>,
    pub execution: Execution,
}

impl RunConfig {
    fn new(subcommand: &str, seed: u64, exec: Execution) -> Self {
        RunConfig {
            subcommand: subcommand.into(),
            corpus: None,
            out: None,
            profile: None,
            task: None,
            hyper: None,
            seed,
            folds: None,
            k_neighbors: None,
            dictionary: None,
            connectives: None,
            execution: exec,
        }
    }

    fn input(mut self, input: &FeatureInput) -> Self {
        self.corpus = Some(input.corpus.clone());
        self.profile = Some(input.profile.clone());
        self.resources(&input.resources)
    }

    fn resources(mut self, r: &ResourceArgs) -> Self {
        self.dictionary = r.dictionary.clone();
        self.connectives = r.connectives.clone();
        self
    }
}

type Outcome = std::result::Result<(), Vec<Error>>;

pub fn run(command: Command, exec: Execution) -> Outcome {
    match command {
        Command::Extract { input, out } => {
            let docs = load_docs(&input.corpus)?;
            let run = RunConfig { out: Some(out.clone()), ..RunConfig::new("extract", 0, exec).input(&input) };
            one(extract_cmd(&docs, &input, &out, &run))
        }
        Command::Train { input, task, hyper, model } => {
            let docs = load_docs(&input.corpus)?;
            let run = RunConfig {
                out: Some(model.clone()),
                task: Some(task.into()),
                hyper: Some(hyper.hyper()),
                ..RunConfig::new("train", hyper.seed, exec).input(&input)
            };
            one(train_cmd(&docs, &input, task.into(), hyper.hyper(), &model, &run))
        }
        Command::Predict { corpus, model, resources, out } => {
            let docs = load_docs(&corpus)?;
            let run = RunConfig {
                corpus: Some(corpus),
                out: out.clone(),
                ..RunConfig::new("predict", 0, exec).resources(&resources)
            };
            one(predict_cmd(&docs, &model, &resources, out.as_deref(), &run))
        }
        Command::Crossval { input, task, folds, hyper, out } => {
            let docs = load_docs(&input.corpus)?;
            let run = RunConfig {
                out: out.clone(),
                task: Some(task.into()),
                hyper: Some(hyper.hyper()),
                folds: Some(folds),
                ..RunConfig::new("crossval", hyper.seed, exec).input(&input)
            };
            one(crossval_cmd(&docs, &input, folds, out.as_deref(), &run))
        }
        Command::Relieff { input, task, k_neighbors, out } => {
            let docs = load_docs(&input.corpus)?;
            let run = RunConfig {
                out: out.clone(),
                task: Some(task.into()),
                k_neighbors: Some(k_neighbors),
                ..RunConfig::new("relieff", 0, exec).input(&input)
            };
            one(relieff_cmd(&docs, &input, k_neighbors, out.as_deref(), &run))
        }
        Command::Balance { corpus, seed, out } => {
            let docs = load_docs(&corpus)?;
            let run = RunConfig {
                corpus: Some(corpus),
                out: Some(out.clone()),
                ..RunConfig::new("balance", seed, exec)
            };
            one(balance_cmd(&docs, seed, &out, &run))
        }
        Command::Report { model, pair, top, predictions, groups, corpus, resources, task, folds, hyper, out } => {
            let mut run = RunConfig {
                corpus: corpus.clone(),
                out: out.clone(),
                ..RunConfig::new("report", hyper.seed, exec).resources(&resources)
            };
            if let Some(model) = model {
                return one(weights_cmd(&model, pair.as_deref(), top, out.as_deref(), &run));
            }
            let Some(corpus) = corpus else {
                return Err(vec![Error::Config(
                    "report needs --model, or --corpus with --predictions or --groups".into(),
                )]);
            };
            let docs = load_docs(&corpus)?;
            if let Some(p) = predictions {
                return one(evaluate_cmd(&docs, &p, out.as_deref(), &run));
            }
            if groups {
                run.task = Some(task.into());
                run.hyper = Some(hyper.hyper());
                run.folds = Some(folds);
                return one(groups_cmd(&docs, &resources, folds, out.as_deref(), &run));
            }
            Err(vec![Error::Config("report needs --model, --predictions or --groups".into())])
        }
        Command::Synth { out, per_class, seed, noise, permute_labels } => {
            let run = RunConfig { out: Some(out.clone()), ..RunConfig::new("synth", seed, exec) };
            let cfg = SynthConfig { per_class, seed, noise, permute_labels };
            one(synth_cmd(&cfg, &out, &run))
        }
    }
}

fn one(r: Result<()>) -> Outcome {
    r.map_err(|e| vec![e])
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e.into() })?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(io_err(path))
}

fn write_run(out: &Path, run: &RunConfig) -> Result<()> {
    write_json(&sibling(out, "run.json"), run)
}

/// Loads a corpus, reporting every bad line rather than only the first.
/// Essays come back sorted by id.
fn load_docs(path: &Path) -> std::result::Result<Vec<EssayDoc>, Vec<Error>> {
    let file = File::open(path).map_err(|e| vec![io_err(path)(e)])?;
    let (mut docs, errors) = scan_corpus(BufReader::new(file));
    if !errors.is_empty() {
        return Err(errors);
    }
    docs.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(docs)
}

fn load_profile(spec: &str) -> Result<FeatureProfile> {
    if let Some(p) = FeatureProfile::builtin(spec) {
        return Ok(p);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let file = File::open(path).map_err(io_err(path))?;
        let p: FeatureProfile = serde_json::from_reader(BufReader::new(file))
            .map_err(|e| Error::Config(format!("profile file {}: {e}", path.display())))?;
        p.resolve()?;
        return Ok(p);
    }
    Err(Error::Config(format!(
        "unknown profile `{spec}`; built-in profiles: {}",
        FeatureProfile::builtin_names().join(", ")
    )))
}

fn load_resources(r: &ResourceArgs) -> Result<Resources> {
    let lexicon = match &r.connectives {
        Some(p) if p.as_os_str() == "builtin" => Some(ConnectiveLexicon::builtin()),
        Some(p) => Some(ConnectiveLexicon::load(p)?),
        None => None,
    };
    let dictionary = r.dictionary.as_ref().map(Dictionary::load).transpose()?;
    Ok(Resources { lexicon, dictionary })
}

fn features(docs: &[EssayDoc], input: &FeatureInput, exec: Execution) -> Result<FeatureMatrix> {
    let profile = load_profile(&input.profile)?;
    let res = load_resources(&input.resources)?;
    extract(docs, &profile, &res, exec)
}

fn extract_cmd(docs: &[EssayDoc], input: &FeatureInput, out: &Path, run: &RunConfig) -> Result<()> {
    let m = features(docs, input, run.execution)?;
    write_csv(create(out)?, &m)?;
    let sidecar = sibling(out, "sidecar.json");
    write_sidecar(create(&sidecar)?, &m)?;
    let imputed = m.imputations().len();
    if imputed > 0 {
        eprintln!("imputed {imputed} undefined values (listed in {})", sidecar.display());
    }
    write_run(out, run)
}

fn train_cmd(
    docs: &[EssayDoc],
    input: &FeatureInput,
    task: Task,
    hyper: Hyper,
    path: &Path,
    run: &RunConfig,
) -> Result<()> {
    let m = features(docs, input, run.execution)?;
    let model = train(&m, task, hyper, run.execution)?;
    let mut w = create(path)?;
    model.save(&mut w)?;
    w.flush().map_err(io_err(path))?;
    eprintln!("trained on {} essays, {} inputs", m.len(), model.inputs.len());
    write_run(path, run)
}

fn load_model(path: &Path) -> Result<LinearModel> {
    LinearModel::load(BufReader::new(File::open(path).map_err(io_err(path))?))
}

fn prediction_text(p: Prediction) -> String {
    match p {
        Prediction::Label(l) => l.to_string(),
        Prediction::Score(s) => s.to_string(),
    }
}

fn predict_cmd(
    docs: &[EssayDoc],
    model_path: &Path,
    resources: &ResourceArgs,
    out: Option<&Path>,
    run: &RunConfig,
) -> Result<()> {
    let model = load_model(model_path)?;
    let profile = FeatureProfile {
        name: model.profile.clone(),
        features: model.design.features.clone(),
        include_prompt: model.design.prompt.is_some(),
        include_l1: model.design.l1.is_some(),
    };
    let m = extract(docs, &profile, &load_resources(resources)?, run.execution)?;
    let preds = model.predict(&m)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let csv_err = |e: csv::Error| Error::Io { path: out.unwrap_or(Path::new("<stdout>")).to_path_buf(), source: e.into() };
    let mut w = csv::Writer::from_writer(sink);
    let has_gold = docs.iter().all(|d| gold_of(d, model.task).is_some());
    let mut header = vec!["id", "prediction"];
    if has_gold {
        header.push("gold");
    }
    w.write_record(&header).map_err(csv_err)?;
    for (d, p) in docs.iter().zip(preds) {
        let mut rec = vec![d.id.clone(), prediction_text(p)];
        if has_gold {
            rec.push(gold_of(d, model.task).expect("checked above"));
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| csv_err(e.into()))?;
    match out {
        Some(p) => write_run(p, run),
        None => Ok(()),
    }
}

fn gold_of(d: &EssayDoc, task: Task) -> Option<String> {
    match task {
        Task::Classification => d.label.map(|l| l.to_string()),
        Task::Regression => d.target().map(|t| t.to_string()),
    }
}

#[derive(Serialize)]
struct CrossvalOutput<'a> {
    run: &'a RunConfig,
    ids: Vec<&'a str>,
    result: &'a CvResult,
}

fn crossval_cmd(docs: &[EssayDoc], input: &FeatureInput, folds: usize, out: Option<&Path>, run: &RunConfig) -> Result<()> {
    let m = features(docs, input, run.execution)?;
    let hyper = run.hyper.expect("crossval always records its hyperparameters");
    let task = run.task.expect("crossval always records its task");
    let result = cross_validate(&m, task, folds, hyper, run.execution)?;
    print!("{}", result.report.to_text());
    if let Some(out) = out {
        let ids = docs.iter().map(|d| d.id.as_str()).collect();
        write_json(out, &CrossvalOutput { run, ids, result: &result })?;
        write_run(out, run)?;
    }
    Ok(())
}

fn relieff_cmd(docs: &[EssayDoc], input: &FeatureInput, k: usize, out: Option<&Path>, run: &RunConfig) -> Result<()> {
    let m = features(docs, input, run.execution)?;
    let numeric = run.task == Some(Task::Regression);
    let ranking = rank(&m, numeric, k, run.execution)?;
    let mut text = String::from("rank\tfeature\tweight\n");
    for (i, (name, w)) in ranking.entries.iter().enumerate() {
        text.push_str(&format!("{}\t{name}\t{w}\n", i + 1));
    }
    match out {
        Some(p) => {
            let mut f = create(p)?;
            f.write_all(text.as_bytes()).and_then(|_| f.flush()).map_err(io_err(p))?;
            write_run(p, run)
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn balance_cmd(docs: &[EssayDoc], seed: u64, out: &Path, run: &RunConfig) -> Result<()> {
    let labels: Vec<Option<Label>> = docs.iter().map(|d| d.label).collect();
    let keep = subsample_balance(&labels, seed)?;
    let kept: Vec<EssayDoc> = keep.iter().map(|&i| docs[i].clone()).collect();
    write_corpus(create(out)?, &kept).map_err(io_err(out))?;
    let before = class_counts(labels.iter().flatten().copied());
    let after = class_counts(kept.iter().filter_map(|d| d.label));
    eprintln!("class counts {before:?} -> {after:?}");
    write_run(out, run)
}

fn parse_pair(s: &str) -> Result<(Label, Label)> {
    let bad = || Error::Config(format!("--pair expects `positive,negative` class names, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: Label = a.trim().parse().map_err(|_| bad())?;
    let b: Label = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

#[derive(Serialize)]
struct WeightOutput<'a> {
    run: &'a RunConfig,
    model: &'a Path,
    weights: &'a WeightReport,
}

fn weights_cmd(path: &Path, pair: Option<&str>, top: usize, out: Option<&Path>, run: &RunConfig) -> Result<()> {
    let model = load_model(path)?;
    let pair = pair.map(parse_pair).transpose()?;
    let report = model_weight_report(&model, pair, top)?;
    print!("{}", report.to_text());
    if let Some(out) = out {
        write_json(out, &WeightOutput { run, model: path, weights: &report })?;
        write_run(out, run)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    run: &'a RunConfig,
    report: &'a EvalReport,
}

fn evaluate_cmd(docs: &[EssayDoc], predictions: &Path, out: Option<&Path>, run: &RunConfig) -> Result<()> {
    let by_id: HashMap<&str, &EssayDoc> = docs.iter().map(|d| (d.id.as_str(), d)).collect();
    let file = File::open(predictions).map_err(io_err(predictions))?;
    let csv_err = |e: csv::Error| Error::Io { path: predictions.to_path_buf(), source: e.into() };
    let mut rdr = csv::Reader::from_reader(BufReader::new(file));
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("{} has no `{name}` column", predictions.display())))
    };
    let (id_col, pred_col) = (col("id")?, col("prediction")?);
    let mut pairs: Vec<(String, &EssayDoc)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let id = &rec[id_col];
        let doc = by_id
            .get(id)
            .ok_or_else(|| Error::UndefinedInput(format!("prediction for unknown essay `{id}`")))?;
        pairs.push((rec[pred_col].to_string(), doc));
    }
    let labels: Option<Vec<Label>> = pairs.iter().map(|(p, _)| p.parse().ok()).collect();
    let report = match labels {
        Some(pred) => {
            let gold: Vec<Label> = pairs
                .iter()
                .map(|(_, d)| d.label.ok_or_else(|| Error::UndefinedInput(format!("essay `{}` has no label", d.id))))
                .collect::<Result<_>>()?;
            classification_report(&pred, &gold)?
        }
        None => {
            let pred: Vec<f64> = pairs
                .iter()
                .map(|(p, _)| p.parse().map_err(|_| Error::UndefinedInput(format!("prediction `{p}` is neither a class nor a number"))))
                .collect::<Result<_>>()?;
            let gold: Vec<f64> = pairs
                .iter()
                .map(|(_, d)| d.target().ok_or_else(|| Error::UndefinedInput(format!("essay `{}` has no score or label", d.id))))
                .collect::<Result<_>>()?;
            regression_report(&pred, &gold)?
        }
    };
    print!("{}", report.to_text());
    if let Some(out) = out {
        write_json(out, &EvalOutput { run, report: &report })?;
        write_run(out, run)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GroupOutput<'a> {
    run: &'a RunConfig,
    rows: &'a [GroupRow],
}

fn groups_cmd(docs: &[EssayDoc], resources: &ResourceArgs, folds: usize, out: Option<&Path>, run: &RunConfig) -> Result<()> {
    let res = load_resources(resources)?;
    let hyper = run.hyper.expect("group reports record their hyperparameters");
    let task = run.task.expect("group reports record their task");
    let mut rows = Vec::new();
    for (name, _) in FeatureProfile::base_groups() {
        let full = FeatureProfile::builtin(name).expect("base names are built-in");
        let m = extract(docs, &full, &res, run.execution)?;
        let mut reports = Vec::new();
        for suffix in ["", NO_PROMPT, NO_PROMPT_L1] {
            let variant = FeatureProfile::builtin(&format!("{name}{suffix}")).expect("variants are built-in");
            reports.push(cross_validate(&m.project(&variant)?, task, folds, hyper, run.execution)?.report);
        }
        rows.push(GroupRow { group: name.to_string(), features: full.len(), reports });
    }
    print!("{}", render_group_table(task, &rows));
    if let Some(out) = out {
        write_json(out, &GroupOutput { run, rows: &rows })?;
        write_run(out, run)?;
    }
    Ok(())
}

fn synth_cmd(cfg: &SynthConfig, out: &Path, run: &RunConfig) -> Result<()> {
    let docs = generate(cfg)?;
    write_corpus(create(out)?, &docs).map_err(io_err(out))?;
    eprintln!("wrote {} essays to {}", docs.len(), out.display());
    write_run(out, run)
}
