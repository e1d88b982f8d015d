//! Property checks, one group per module, driven by a seeded proptest runner
//! so that every run explores the same cases.

use std::fmt::Debug;

use aes_core::annotate::{derive_stems, read_corpus, validate, write_corpus, EssayDoc, Label};
use aes_core::discfeat::{
    chain_features, connective_features, entity_grid_features, overlap_features, refex_features,
    ConnectiveLexicon,
};
use aes_core::errfeat::{error_features, fallback_check, Dictionary};
use aes_core::evaluate::{classification_report, pearson};
use aes_core::learn::{relieff, smo, train_classifier, Attributes, Column, Hyper};
use aes_core::lexfeat::{mtld, ttr_family, MTLD_THRESHOLD};
use aes_core::posfeat::{lexical_variation, pos_density};
use aes_core::synfeat::syntactic_complexity;
use aes_core::treeops::{match_count, syntactic_counts, ParseTree, TreePattern};
use aes_core::vector::{assemble, FeatureMatrix, FeatureProfile, FeatureVector, MinMax, Resources};
use aes_core::Execution;
use ndarray::Array2;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::support::{ensure, random_doc, rng, synth_docs, Check, Outcome};

const CASES: u32 = 96;

pub fn checks() -> Vec<Check> {
    vec![
        ("annotate", annotate),
        ("treeops", treeops),
        ("lexfeat", lexfeat),
        ("posfeat", posfeat),
        ("synfeat", synfeat),
        ("discfeat", discfeat),
        ("errfeat", errfeat),
        ("vector", vector),
        ("learn", learn),
        ("evaluate", evaluate),
    ]
}

fn run<S>(seed: u8, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]));
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Fail(reason, input) => {
            let input = format!("{input:?}");
            let cut = input.char_indices().nth(300).map_or(input.len(), |(i, _)| i);
            format!("{reason} (input {})", &input[..cut])
        }
        TestError::Abort(reason) => reason.to_string(),
    })
}

fn fail(e: impl ToString) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Tagged tokens without parses.
fn loose_doc() -> impl Strategy<Value = EssayDoc> {
    any::<u64>().prop_map(|s| random_doc(&mut rng(s), 8))
}

/// Fully annotated synthetic essays.
fn parsed_doc() -> impl Strategy<Value = EssayDoc> {
    (0u64..10_000, 0usize..3).prop_map(|(s, i)| synth_docs(s..s + 1).swap_remove(i))
}

const PHRASES: &[&str] = &["S", "SBAR", "NP", "VP", "PP", "ADJP", "ADVP", "WHNP", "SQ", "FRAG"];
const PRETERMINALS: &[&str] = &["NN", "NNS", "VBD", "VBZ", "MD", "DT", "IN", "JJ", "PRP", "WP", ",", "."];
const WORDS: &[&str] = &["dog", "ran", "is", "can", "the", "of", "big", "it", "who", ",", "."];

fn bracketed() -> impl Strategy<Value = String> {
    let leaf = (select(PRETERMINALS), select(WORDS)).prop_map(|(t, w)| format!("({t} {w})"));
    leaf.prop_recursive(5, 40, 4, |inner| {
        (select(PHRASES), vec(inner, 1..4)).prop_map(|(l, kids)| format!("({l} {})", kids.join(" ")))
    })
    .prop_map(|t| format!("(ROOT {t})"))
}

// ------------------------------------------------------------- annotate

fn annotate() -> Outcome {
    run(1, prop_oneof![loose_doc(), parsed_doc()], |doc| {
        let mut buf = Vec::new();
        write_corpus(&mut buf, std::slice::from_ref(&doc)).map_err(fail)?;
        let back = read_corpus(buf.as_slice()).map_err(fail)?;
        prop_assert_eq!(&back, &vec![doc.clone()]);
        prop_assert_eq!(validate(&doc), validate(&doc.clone()));
        let once = derive_stems(&doc);
        prop_assert_eq!(derive_stems(&once), once);
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

// -------------------------------------------------------------- treeops

fn treeops() -> Outcome {
    let np = TreePattern::parse("NP").map_err(|e| e.to_string())?;
    let vp = TreePattern::parse("VP").map_err(|e| e.to_string())?;
    let either = TreePattern::parse("NP|VP").map_err(|e| e.to_string())?;
    run(2, bracketed(), |s| {
        let tree = ParseTree::parse(&s).map_err(fail)?;
        let c = syntactic_counts(&tree);
        prop_assert!(c.subtrees >= c.constituents && c.constituents >= c.clauses, "{c:?}");
        prop_assert!(c.height >= 2);
        prop_assert_eq!(match_count(&tree, &either), match_count(&tree, &np) + match_count(&tree, &vp));
        prop_assert_eq!(ParseTree::parse(&tree.render()).map_err(fail)?, tree);
        prop_assert!(ParseTree::parse(&s[..s.len() - 1]).is_err());
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

// -------------------------------------------------------------- lexfeat

fn lexfeat() -> Outcome {
    let tokens = vec(select(&["a", "A", "b", "c", "d", "e", "f"][..]), 1..60);
    run(3, (tokens, any::<u64>()), |(toks, seed)| {
        let mut shuffled = toks.clone();
        shuffled.shuffle(&mut rng(seed));
        let f = ttr_family(&toks).map_err(fail)?;
        prop_assert_eq!(f, ttr_family(&shuffled).map_err(fail)?);
        prop_assert!(close(f.corrected, f.root / 2f64.sqrt(), 1e-12));
        let reversed: Vec<&str> = toks.iter().rev().copied().collect();
        let fwd = mtld(&toks, MTLD_THRESHOLD).map_err(fail)?;
        prop_assert_eq!(fwd.map(f64::to_bits), mtld(&reversed, MTLD_THRESHOLD).map_err(fail)?.map(f64::to_bits));
        Ok(())
    })?;
    // Same tokens, different order, different MTLD.
    let a = mtld(&["a", "a", "b", "b"], MTLD_THRESHOLD).map_err(|e| e.to_string())?;
    let b = mtld(&["a", "b", "a", "b"], MTLD_THRESHOLD).map_err(|e| e.to_string())?;
    ensure(a == Some(2.0) && b == Some(4.0), || format!("order witness: {a:?} vs {b:?}"))?;
    Ok(format!("{} cases", CASES))
}

// -------------------------------------------------------------- posfeat

fn posfeat() -> Outcome {
    run(4, prop_oneof![loose_doc(), parsed_doc()], |doc| {
        if doc.word_count() == 0 {
            return Ok(());
        }
        let d = pos_density(&doc).map_err(fail)?;
        let exclusive = d.nouns + d.pronouns + d.adjectives + d.adverbs + d.conjunctions + d.interjections
            + d.determiners + d.prepositions + d.verbs + d.modals;
        prop_assert!(exclusive <= 1.0 + 1e-12, "{exclusive}");
        let v = lexical_variation(&doc);
        prop_assert_eq!(v.modifier_variation, v.adjective_variation + v.adverb_variation);
        let verbs: Vec<String> = doc
            .words()
            .filter(|t| t.pos.starts_with("VB"))
            .map(|t| t.lemma.clone().filter(|l| !l.is_empty()).unwrap_or_else(|| t.form.clone()).to_lowercase())
            .collect();
        let mut types = verbs.clone();
        types.sort();
        types.dedup();
        let (ty, tok) = (types.len() as f64, verbs.len() as f64);
        let (squared, corrected) = if verbs.is_empty() { (0.0, 0.0) } else { (ty * ty / tok, ty / (2.0 * tok).sqrt()) };
        prop_assert!(close(v.squared_verb_variation1, squared, 1e-12));
        prop_assert!(close(v.corrected_verb_variation1, corrected, 1e-12));
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

// -------------------------------------------------------------- synfeat

fn synfeat() -> Outcome {
    run(5, parsed_doc(), |doc| {
        let p = syntactic_complexity(&doc).map_err(fail)?;
        let mut doubled = doc.clone();
        doubled.sentences.extend(doc.sentences.clone());
        let q = syntactic_complexity(&doubled).map_err(fail)?;
        prop_assert_eq!(q.num_sentences, 2.0 * p.num_sentences);
        for (i, (a, b)) in p.values().iter().zip(q.values()).enumerate() {
            if i != 15 {
                prop_assert!(close(*a, b, 1e-12), "feature {i}: {a} vs {b}");
            }
        }
        if p.clauses_per_sentence > 0.0 && p.t_units_per_sentence > 0.0 {
            prop_assert!(close(
                p.complex_nominals_per_clause * p.clauses_per_sentence,
                p.complex_nominals_per_t_unit * p.t_units_per_sentence,
                1e-12
            ));
        }
        if p.nps_per_sentence > 0.0 {
            prop_assert!(p.avg_np_size >= 1.0);
        }
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

// ------------------------------------------------------------- discfeat

fn unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

fn discfeat() -> Outcome {
    let lexicon = ConnectiveLexicon::builtin();
    run(6, parsed_doc(), |doc| {
        let n = doc.sentences.len() as f64;
        let o = overlap_features(&doc);
        prop_assert!(o.values().iter().all(|&x| unit(x)));
        for k in 0..4 {
            // Every overlapping adjacent pair is also an overlapping pair.
            prop_assert!(o.global[k] * n * (n - 1.0) / 2.0 >= o.local[k] * (n - 1.0) - 1e-9);
        }
        let t = entity_grid_features(&doc).map_err(fail)?.transitions;
        prop_assert!(t.iter().all(|&x| unit(x)));
        let sum: f64 = t.iter().sum();
        prop_assert!(sum == 0.0 || (sum - 1.0).abs() <= 1e-12, "{sum}");
        let c = connective_features(&doc, &lexicon).map_err(fail)?;
        prop_assert!(close(c.discourse, c.expansion + c.contingency + c.comparison + c.temporal, 1e-12));
        prop_assert!(close(c.all, c.discourse + c.non_discourse, 1e-12));
        let chains = chain_features(&doc).map_err(fail)?;
        prop_assert!(chains.proportions.iter().all(|&x| unit(x)));
        prop_assert!(chains.proportions.iter().sum::<f64>() <= 1.0 + 1e-12);
        let r = refex_features(&doc).map_err(fail)?;
        for x in [
            r.definite_articles_per_word,
            r.pronouns_per_word,
            r.personal_pronouns_per_word,
            r.possessive_pronouns_per_word,
            r.proper_nouns_per_noun,
        ] {
            prop_assert!(unit(x), "{r:?}");
        }
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

// -------------------------------------------------------------- errfeat

fn errfeat() -> Outcome {
    let dictionary = Dictionary::parse("cat\ndog\nthe\na\nhe\nshe\nit\nred\nidea\n");
    run(7, prop_oneof![loose_doc(), parsed_doc()], |doc| {
        if doc.sentences.is_empty() {
            return Ok(());
        }
        for profile in [error_features(&doc, None), error_features(&doc, Some(&dictionary))] {
            let p = profile.map_err(fail)?;
            prop_assert!(close(p.all_per_sentence, p.spelling_per_sentence + p.non_spelling_per_sentence, 1e-12));
            prop_assert!(unit(p.spelling_share));
        }
        let first = fallback_check(&doc, &dictionary).map_err(fail)?;
        prop_assert_eq!(&first, &fallback_check(&doc, &dictionary).map_err(fail)?);
        let mut reversed = doc.clone();
        reversed.sentences.reverse();
        let last = doc.sentences.len() - 1;
        let mut remapped: Vec<_> = fallback_check(&reversed, &dictionary)
            .map_err(fail)?
            .into_iter()
            .map(|mut e| {
                e.sentence = last - e.sentence;
                (e.sentence, e.start, e.end, e.kind as u8)
            })
            .collect();
        remapped.sort_unstable();
        let mut original: Vec<_> = first.iter().map(|e| (e.sentence, e.start, e.end, e.kind as u8)).collect();
        original.sort_unstable();
        prop_assert_eq!(remapped, original);
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

// --------------------------------------------------------------- vector

fn vector() -> Outcome {
    for name in FeatureProfile::builtin_names() {
        let p = FeatureProfile::builtin(&name).ok_or_else(|| format!("{name} missing"))?;
        p.resolve().map_err(|e| format!("{name}: {e}"))?;
    }
    let profile = FeatureProfile::builtin("paper-114").ok_or("paper-114 is not built in")?;
    let res = Resources { lexicon: Some(ConnectiveLexicon::builtin()), dictionary: None };
    run(8, parsed_doc(), |doc| {
        let a = assemble(&doc, &profile, &res).map_err(fail)?;
        prop_assert_eq!(a.values.len(), 114);
        prop_assert_eq!(&a, &assemble(&doc, &profile, &res).map_err(fail)?);
        Ok(())
    })?;
    let rows = vec(vec(-1e3f64..1e3, 3), 1..20);
    run(9, rows, |rows| {
        let vectors: Vec<FeatureVector> = rows.iter().map(|v| plain_row(v.clone(), None)).collect();
        let mm = MinMax::fit(&vectors, 3);
        for v in &rows {
            for (j, &x) in v.iter().enumerate() {
                let z = mm.scale(j, x);
                prop_assert!(unit(z));
                if !mm.is_constant(j) {
                    let range = mm.max[j] - mm.min[j];
                    prop_assert!((mm.unscale(j, z) - x).abs() <= 1e-9 * range.max(1.0));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{} cases", CASES))
}

fn plain_row(values: Vec<f64>, label: Option<Label>) -> FeatureVector {
    FeatureVector { id: String::new(), values, prompt: None, l1: None, label, score: None, imputed: Vec::new() }
}

// ---------------------------------------------------------------- learn

fn points(n: usize, d: usize, seed: u64) -> Array2<f64> {
    let mut r = rng(seed);
    Array2::from_shape_fn((n, d), |_| r.random_range(-1.0..1.0))
}

fn learn() -> Outcome {
    run(10, (2usize..25, 1usize..4, 0.05f64..5.0, any::<u64>()), |(n, d, c, seed)| {
        let x = points(n, d, seed);
        let k = x.dot(&x.t());
        let y: Vec<f64> = (0..n).map(|i| if (i + seed as usize).is_multiple_of(2) { 1.0 } else { -1.0 }).collect();
        let tol = 1e-3;
        let sol = smo::solve_svc(&k, &y, c, tol);
        prop_assert!(sol.alpha.iter().all(|&a| (0.0..=c).contains(&a)));
        let p = vec![-1.0; n];
        let kkt = smo::kkt_violation(&k, &y, &p, c, &sol.alpha);
        prop_assert!(kkt <= tol + 1e-9, "violation {kkt}");
        Ok(())
    })?;

    run(11, (10usize..40, 1usize..4, any::<u64>()), |(n, d, seed)| {
        let x = points(n, d, seed);
        let labels: Vec<Label> = (0..n).map(|i| Label::ALL[i % 3]).collect();
        let column = |order: &[usize], j: usize| Column::Numeric(order.iter().map(|&i| (x[[i, j]] + 1.0) / 2.0).collect());
        let attrs = |order: &[usize]| Attributes {
            names: (0..d).map(|j| format!("a{j}")).collect(),
            columns: (0..d).map(|j| column(order, j)).collect(),
        };
        let identity: Vec<usize> = (0..n).collect();
        let w = relieff(&attrs(&identity), &labels, 3, Execution::Sequential).map_err(fail)?;
        prop_assert!(w.iter().all(|v| (-1.0..=1.0).contains(v)));
        let mut order = identity.clone();
        order.shuffle(&mut rng(seed ^ 1));
        let permuted: Vec<Label> = order.iter().map(|&i| labels[i]).collect();
        let v = relieff(&attrs(&order), &permuted, 3, Execution::Sequential).map_err(fail)?;
        for (a, b) in w.iter().zip(&v) {
            prop_assert!((a - b).abs() <= 1e-12, "{w:?} vs {v:?}");
        }
        Ok(())
    })?;

    let profile = FeatureProfile::builtin("word-noprompt-nol1").ok_or("word profile missing")?;
    run(12, (any::<u64>(), 0usize..5, -8i32..8), |(seed, col, exp)| {
        let x = points(30, 5, seed);
        let rows = |factor: f64| FeatureMatrix {
            profile: profile.clone(),
            rows: (0..30)
                .map(|i| {
                    let mut v: Vec<f64> = x.row(i).to_vec();
                    v[col] *= factor;
                    plain_row(v, Some(Label::ALL[i % 3]))
                })
                .collect(),
        };
        let (plain, scaled) = (rows(1.0), rows(2f64.powi(exp)));
        let a = train_classifier(&plain, Hyper::default(), Execution::Sequential).map_err(fail)?;
        let b = train_classifier(&scaled, Hyper::default(), Execution::Sequential).map_err(fail)?;
        prop_assert_eq!(a.predict(&plain).map_err(fail)?, b.predict(&scaled).map_err(fail)?);
        prop_assert_eq!(&a.machines, &b.machines);
        Ok(())
    })?;
    Ok(format!("{} cases per property", CASES))
}

// ------------------------------------------------------------- evaluate

fn evaluate() -> Outcome {
    let labels = || vec(select(Label::ALL.to_vec()), 1..50);
    run(13, (labels(), labels()), |(pred, gold)| {
        let n = pred.len().min(gold.len());
        let r = classification_report(&pred[..n], &gold[..n]).map_err(fail)?;
        let cm = r.confusion.ok_or_else(|| fail("no confusion"))?;
        let trace: usize = (0..3).map(|i| cm[i][i]).sum();
        let total: usize = cm.iter().flatten().sum();
        prop_assert_eq!(total, n);
        prop_assert_eq!(r.accuracy, Some(trace as f64 / total as f64));
        Ok(())
    })?;
    let series = (3usize..30).prop_flat_map(|n| (vec(-10.0f64..10.0, n), vec(-10.0f64..10.0, n)));
    run(14, (series, 0.1f64..10.0, -100.0f64..100.0), |((a, b), scale, shift)| {
        let Ok(r) = pearson(&a, &b) else {
            return Ok(());
        };
        let moved: Vec<f64> = a.iter().map(|x| scale * x + shift).collect();
        let negated: Vec<f64> = a.iter().map(|x| -x).collect();
        prop_assert!((pearson(&moved, &b).map_err(fail)? - r).abs() <= 1e-9);
        prop_assert!((pearson(&negated, &b).map_err(fail)? + r).abs() <= 1e-12);
        Ok(())
    })?;
    Ok(format!("{} cases per property", CASES))
}
