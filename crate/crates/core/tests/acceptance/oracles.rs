//! Implementations checked against independent straight-line oracles on
//! randomized small instances.

use std::collections::BTreeSet;

use aes_core::annotate::{EssayDoc, Label, Token};
use aes_core::discfeat::{build_grid, entity_grid_features, overlap_features};
use aes_core::evaluate::partial_correlation;
use aes_core::learn::{relieff, smo, Attributes, Column};
use aes_core::lexfeat::mtld;
use aes_core::treeops::{syntactic_counts, ParseTree, SyntacticCounts};
use aes_core::Execution;
use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::support::{ensure, random_doc, rng, synth_docs, Check, Outcome};

pub const INSTANCES: usize = 250;

pub fn checks() -> Vec<Check> {
    vec![
        ("MTLD vs straight-line oracle", mtld_oracle),
        ("overlap vs brute-force pairs", overlap_oracle),
        ("entity-grid probabilities", grid_sums),
        ("syntactic counts on 10 hand-enumerated trees", hand_trees),
        ("ReliefF vs direct formula", relieff_oracle),
        ("SVC dual vs projected-gradient QP", svc_oracle),
        ("SVR dual vs projected-gradient QP", svr_oracle),
        ("partial correlation vs residual regression", partial_oracle),
    ]
}

// ---------------------------------------------------------------- MTLD

fn mtld_direction<'a>(tokens: impl Iterator<Item = &'a String>, threshold: f64) -> f64 {
    let mut factors = 0.0;
    let mut seen: Vec<String> = Vec::new();
    let mut count = 0usize;
    for t in tokens {
        let folded = t.to_lowercase();
        if !seen.contains(&folded) {
            seen.push(folded);
        }
        count += 1;
        if (seen.len() as f64 / count as f64) < threshold {
            factors += 1.0;
            seen.clear();
            count = 0;
        }
    }
    if count > 0 {
        factors += (1.0 - seen.len() as f64 / count as f64) / (1.0 - threshold);
    }
    factors
}

fn mtld_reference(tokens: &[String], threshold: f64) -> Option<f64> {
    let n = tokens.len() as f64;
    let fwd = mtld_direction(tokens.iter(), threshold);
    let bwd = mtld_direction(tokens.iter().rev(), threshold);
    (fwd > 0.0 && bwd > 0.0).then(|| (n / fwd + n / bwd) / 2.0)
}

fn mtld_oracle() -> Outcome {
    let mut r = rng(11);
    let vocab = ["a", "A", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];
    let mut undefined = 0;
    for case in 0..INSTANCES {
        let v = r.random_range(1..=vocab.len());
        let len = r.random_range(1..=80);
        let tokens: Vec<String> = (0..len).map(|_| vocab[r.random_range(0..v)].to_string()).collect();
        let threshold = if case % 2 == 0 { 0.72 } else { r.random_range(0.3..0.9) };
        let got = mtld(&tokens, threshold).map_err(|e| e.to_string())?;
        let want = mtld_reference(&tokens, threshold);
        undefined += want.is_none() as usize;
        ensure(got.map(f64::to_bits) == want.map(f64::to_bits), || {
            format!("case {case}: {got:?} vs {want:?} on {tokens:?} at {threshold}")
        })?;
    }
    Ok(format!("{INSTANCES} exact, {undefined} undefined"))
}

// ------------------------------------------------------------- overlap

const NOUNS: [&str; 4] = ["NN", "NNS", "NNP", "NNPS"];
const LEXICAL: [&str; 14] = [
    "NN", "NNS", "NNP", "NNPS", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "JJ", "JJR", "JJS", "RB",
];

fn lexical(pos: &str) -> bool {
    LEXICAL.contains(&pos) || pos == "RBR" || pos == "RBS"
}

fn crude_stem(form: &str) -> String {
    let w = form.to_lowercase();
    for suffix in ["ing", "es", "ed", "ly", "s"] {
        if let Some(stem) = w.strip_suffix(suffix) {
            if stem.chars().count() >= 3 {
                return stem.to_string();
            }
        }
    }
    w
}

fn stem(t: &Token) -> String {
    match &t.stem {
        Some(s) if !s.is_empty() => s.clone(),
        _ => crude_stem(&t.form),
    }
}

fn items(doc: &EssayDoc, item: impl Fn(&Token) -> Option<String>) -> Vec<BTreeSet<String>> {
    doc.sentences.iter().map(|s| s.tokens.iter().filter_map(&item).collect()).collect()
}

fn brute_pairs(sets: &[BTreeSet<String>]) -> (f64, f64) {
    let n = sets.len();
    if n < 2 {
        return (0.0, 0.0);
    }
    let shares = |i: usize, j: usize| sets[i].iter().any(|x| sets[j].contains(x));
    let mut adjacent = 0usize;
    let mut all = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if shares(i, j) {
                all += 1;
                if j == i + 1 {
                    adjacent += 1;
                }
            }
        }
    }
    (adjacent as f64 / (n - 1) as f64, all as f64 / (n * (n - 1) / 2) as f64)
}

type Item = Box<dyn Fn(&Token) -> Option<String>>;

fn overlap_reference(doc: &EssayDoc) -> [f64; 8] {
    let kinds: [Item; 4] = [
        Box::new(|t| lexical(&t.pos).then(|| t.form.to_lowercase())),
        Box::new(|t| NOUNS.contains(&t.pos.as_str()).then(|| t.form.to_lowercase())),
        Box::new(|t| lexical(&t.pos).then(|| stem(t))),
        Box::new(|t| {
            if NOUNS.contains(&t.pos.as_str()) {
                Some(stem(t))
            } else if t.pos == "PRP" {
                Some(t.form.to_lowercase())
            } else {
                None
            }
        }),
    ];
    let mut out = [0.0; 8];
    for (k, item) in kinds.iter().enumerate() {
        let (local, global) = brute_pairs(&items(doc, item));
        out[k] = local;
        out[k + 4] = global;
    }
    out
}

fn overlap_oracle() -> Outcome {
    let mut r = rng(12);
    let mut docs: Vec<EssayDoc> = (0..INSTANCES).map(|_| random_doc(&mut r, 10)).collect();
    docs.extend(synth_docs(0..10));
    for (case, doc) in docs.iter().enumerate() {
        let got = overlap_features(doc).values();
        let want = overlap_reference(doc);
        ensure(got.map(f64::to_bits) == want.map(f64::to_bits), || {
            format!("case {case}: {got:?} vs {want:?}")
        })?;
    }
    Ok(format!("{} exact", docs.len()))
}

// --------------------------------------------------------- entity grid

fn grid_sums() -> Outcome {
    let mut docs = synth_docs(100..170);
    let singles: Vec<EssayDoc> = docs
        .iter()
        .take(40)
        .map(|d| EssayDoc { sentences: d.sentences[..1].to_vec(), ..d.clone() })
        .collect();
    docs.extend(singles);
    let mut zero = 0;
    for doc in &docs {
        let trees = doc.trees("test").map_err(|e| e.to_string())?;
        let grid = build_grid(&trees);
        let total = grid.rows.len() * trees.len().saturating_sub(1);
        let p = entity_grid_features(doc).map_err(|e| e.to_string())?.transitions;
        if total == 0 {
            ensure(p.iter().all(|&x| x == 0.0), || format!("{}: no transitions but {p:?}", doc.id))?;
            zero += 1;
            continue;
        }
        let mut sum = 0usize;
        for &x in &p {
            let c = (x * total as f64).round() as usize;
            ensure(x == c as f64 / total as f64, || format!("{}: {x} is not a count over {total}", doc.id))?;
            sum += c;
        }
        ensure(sum == total, || format!("{}: counts sum to {sum}, expected {total}", doc.id))?;
    }
    Ok(format!("{} documents, {zero} without transitions", docs.len()))
}

// ------------------------------------------------------- 10 hand trees

/// Column order of the hand-enumerated rows.
fn as_row(c: &SyntacticCounts) -> [usize; 20] {
    [
        c.words, c.clauses, c.t_units, c.complex_t_units, c.dependent_clauses,
        c.coordinate_phrases, c.complex_nominals, c.verb_phrases, c.noun_phrases,
        c.prep_phrases, c.sbars, c.rrcs, c.conjps, c.wh_phrases, c.constituents, c.subtrees,
        c.height, c.np_size, c.vp_size, c.pp_size,
    ]
}

#[rustfmt::skip]
const TREES: [(&str, [usize; 20]); 10] = [
    //                                                      wd cl tu ct dc cp cn vp np pp sb rr cj wh cons sub ht nps vps pps
    ("(ROOT (S (NP (PRP I)) (VP (VBP run))))",
                                                           [2, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0,  4,  6, 4,  1,  1,  0]),
    ("(ROOT (S (S (NP (NNP Ann)) (VP (VP (VBD sang)) (CC and) (VP (VBD danced)))) (CC but) (S (NP (NNP Bo)) (VP (VBD slept))) (. .)))",
                                                           [7, 2, 2, 0, 0, 1, 0, 4, 2, 0, 0, 0, 0, 0, 10, 18, 6,  2,  6,  0]),
    ("(ROOT (S (NP (PRP She)) (VP (VBD left) (SBAR (IN because) (S (NP (PRP it)) (VP (VBD rained))))) (. .)))",
                                                           [5, 2, 1, 1, 1, 0, 0, 2, 2, 0, 1, 0, 0, 0,  8, 14, 7,  2,  5,  0]),
    ("(ROOT (S (NP (DT The) (JJ old) (NN man)) (VP (VBZ says) (SBAR (IN that) (S (NP (NNS dogs)) (VP (VBP bark))))) (. .)))",
                                                           [7, 2, 1, 1, 1, 0, 2, 2, 2, 0, 1, 0, 0, 0,  8, 16, 7,  4,  5,  0]),
    ("(ROOT (S (NP (NP (NNP John) (POS 's)) (NN book)) (VP (VBD fell) (PP (IN on) (NP (DT the) (VBN polished) (NN floor)))) (. .)))",
                                                           [8, 1, 1, 0, 0, 0, 2, 1, 3, 1, 0, 0, 0, 0,  7, 16, 6,  8,  5,  4]),
    ("(ROOT (S (SBAR (IN That) (S (NP (PRP he)) (VP (VBD lied)))) (VP (VBZ is) (ADJP (JJ clear))) (. .)))",
                                                           [5, 2, 1, 1, 1, 0, 1, 2, 1, 0, 1, 0, 0, 0,  8, 14, 6,  1,  3,  0]),
    ("(ROOT (S (NP (NP (NNP Maria)) (, ,) (NP (DT a) (NN doctor)) (, ,)) (VP (VBZ helps) (NP (NP (NNS people)) (SBAR (WHNP (WP who)) (S (VP (VBP need) (NP (NN care))))))) (. .)))",
                                                           [8, 2, 1, 1, 1, 0, 2, 2, 6, 0, 1, 0, 0, 1, 13, 24, 9, 12,  7,  0]),
    ("(ROOT (S (S (VP (VBG Reading) (NP (NNS books)))) (VP (VBZ is) (ADJP (JJ fun) (CC and) (JJ useful))) (. .)))",
                                                           [6, 1, 1, 0, 0, 1, 1, 2, 1, 0, 0, 0, 0, 0,  7, 14, 6,  1,  6,  0]),
    ("(ROOT (SBARQ (WHADVP (WRB When)) (SQ (MD will) (NP (PRP they)) (VP (VB leave) (PP (IN after) (NP (NN lunch))))) (. ?)))",
                                                           [6, 0, 0, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 1,  8, 15, 7,  2,  3,  2]),
    ("(ROOT (S (NP (NP (NNS cats)) (CONJP (RB as) (RB well) (IN as)) (NP (NNS dogs))) (VP (VBP like) (NP (NP (NN food)) (RRC (ADVP (RB mostly)) (NP (NN fish))))) (. .)))",
                                                           [9, 1, 1, 0, 0, 0, 0, 1, 6, 0, 0, 1, 1, 0, 12, 22, 7, 12,  4,  0]),
];

fn hand_trees() -> Outcome {
    for (i, (bracket, want)) in TREES.iter().enumerate() {
        let tree = ParseTree::parse(bracket).map_err(|e| format!("tree {}: {e}", i + 1))?;
        let got = as_row(&syntactic_counts(&tree));
        ensure(&got == want, || format!("tree {}: {got:?}, expected {want:?}", i + 1))?;
    }
    Ok(String::new())
}

// ------------------------------------------------------------- ReliefF

fn relieff_reference(cols: &[Column], labels: &[Label], k: usize) -> Vec<f64> {
    let n = labels.len();
    let diff = |c: &Column, a: usize, b: usize| match c {
        Column::Numeric(v) => (v[a] - v[b]).abs(),
        Column::Nominal(v) => f64::from(u8::from(v[a] != v[b])),
    };
    let dist = |a: usize, b: usize| cols.iter().map(|c| diff(c, a, b)).sum::<f64>();
    let prior = |c: Label| labels.iter().filter(|&&l| l == c).count() as f64 / n as f64;
    let mut w = vec![0.0; cols.len()];
    for i in 0..n {
        for class in Label::ALL {
            let mut others: Vec<usize> = (0..n).filter(|&j| j != i && labels[j] == class).collect();
            others.sort_by(|&a, &b| dist(i, a).total_cmp(&dist(i, b)));
            let near = &others[..k.min(others.len())];
            if near.is_empty() {
                continue;
            }
            let factor = if class == labels[i] {
                -1.0
            } else {
                prior(class) / (1.0 - prior(labels[i]))
            };
            for (a, c) in cols.iter().enumerate() {
                let s: f64 = near.iter().map(|&j| diff(c, i, j)).sum();
                w[a] += factor * s / near.len() as f64;
            }
        }
    }
    w.iter().map(|x| x / n as f64).collect()
}

fn relieff_oracle() -> Outcome {
    let mut r = rng(13);
    let mut worst: f64 = 0.0;
    for case in 0..INSTANCES {
        let n = 30;
        let mut labels: Vec<Label> = (0..n).map(|i| Label::ALL[i % 3]).collect();
        // Uneven classes, each still larger than any k drawn below.
        for l in labels.iter_mut().take(r.random_range(0..4)) {
            *l = Label::High;
        }
        labels.shuffle(&mut r);
        let numeric = r.random_range(1..=4);
        let mut columns: Vec<Column> = (0..numeric)
            .map(|_| Column::Numeric((0..n).map(|_| r.random::<f64>()).collect()))
            .collect();
        columns.push(Column::Nominal((0..n).map(|_| r.random_range(0..3)).collect()));
        let names = (0..columns.len()).map(|j| format!("a{j}")).collect();
        let attrs = Attributes { names, columns: columns.clone() };
        let k = r.random_range(1..=6);
        let got = relieff(&attrs, &labels, k, Execution::Sequential).map_err(|e| e.to_string())?;
        let want = relieff_reference(&columns, &labels, k);
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((g - w).abs());
        }
        ensure(worst <= 1e-9, || format!("case {case}: {got:?} vs {want:?}"))?;
    }
    Ok(format!("max deviation {worst:.1e}"))
}

// ------------------------------------------------------------- SVM QP

/// Euclidean projection onto `{0 ≤ a ≤ c, yᵀa = 0}` with `y ∈ {±1}`. The
/// constraint sum `g(λ) = Σ y_i clip(v_i − λ y_i)` is piecewise linear and
/// non-increasing, so the root is found exactly between two breakpoints.
fn project(v: &[f64], y: &[f64], c: f64) -> Vec<f64> {
    let at = |lam: f64| -> Vec<f64> { v.iter().zip(y).map(|(vi, yi)| (vi - lam * yi).clamp(0.0, c)).collect() };
    let g = |lam: f64| -> f64 { at(lam).iter().zip(y).map(|(a, yi)| a * yi).sum() };
    let mut bps: Vec<f64> = v.iter().zip(y).flat_map(|(vi, yi)| [vi / yi, (vi - c) / yi]).collect();
    bps.sort_by(f64::total_cmp);
    let (first, last) = (bps[0], bps[bps.len() - 1]);
    if g(first) <= 0.0 {
        return at(first);
    }
    if g(last) >= 0.0 {
        return at(last);
    }
    // g(bps[lo]) > 0 > g(bps[hi]) throughout.
    let (mut lo, mut hi) = (0, bps.len() - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if g(bps[mid]) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (bps[lo], bps[hi]);
    let (ga, gb) = (g(a), g(b));
    at(a + (b - a) * ga / (ga - gb))
}

fn objective(q: &Array2<f64>, p: &[f64], a: &[f64]) -> f64 {
    let l = a.len();
    let quad: f64 = (0..l).map(|i| (0..l).map(|j| a[i] * q[[i, j]] * a[j]).sum::<f64>()).sum();
    quad / 2.0 + p.iter().zip(a).map(|(x, y)| x * y).sum::<f64>()
}

/// Accelerated projected gradient with function-value restarts.
fn qp_oracle(q: &Array2<f64>, p: &[f64], y: &[f64], c: f64) -> (Vec<f64>, f64) {
    let l = p.len();
    let lipschitz = (0..l).map(|i| (0..l).map(|j| q[[i, j]].abs()).sum::<f64>()).fold(1e-12, f64::max);
    let mut x = vec![0.0; l];
    let mut z = x.clone();
    let mut t = 1.0f64;
    let mut fx = objective(q, p, &x);
    for _ in 0..20_000 {
        let grad: Vec<f64> = (0..l).map(|i| (0..l).map(|j| q[[i, j]] * z[j]).sum::<f64>() + p[i]).collect();
        let step: Vec<f64> = z.iter().zip(&grad).map(|(zi, gi)| zi - gi / lipschitz).collect();
        let next = project(&step, y, c);
        let f_next = objective(q, p, &next);
        if f_next > fx {
            t = 1.0;
            z = x.clone();
            continue;
        }
        let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        let momentum = (t - 1.0) / t_next;
        z = next.iter().zip(&x).map(|(n, o)| n + momentum * (n - o)).collect();
        x = next;
        fx = f_next;
        t = t_next;
    }
    (x, fx)
}

fn random_points(r: &mut impl Rng, n: usize, d: usize) -> Array2<f64> {
    Array2::from_shape_fn((n, d), |_| r.random_range(-1.0..1.0))
}

fn gram(x: &Array2<f64>) -> Array2<f64> {
    x.dot(&x.t())
}

fn check_dual(k: &Array2<f64>, y: &[f64], p: &[f64], c: f64, alpha: &[f64]) -> Result<f64, String> {
    let n = k.nrows();
    let l = y.len();
    let q = Array2::from_shape_fn((l, l), |(i, j)| y[i] * y[j] * k[[i % n, j % n]]);
    ensure(alpha.iter().all(|&a| (-1e-12..=c + 1e-12).contains(&a)), || "alpha leaves the box".into())?;
    let balance: f64 = alpha.iter().zip(y).map(|(a, b)| a * b).sum();
    ensure(balance.abs() <= 1e-9, || format!("yᵀα = {balance}"))?;
    let solver = objective(&q, p, alpha);
    let (_, oracle) = qp_oracle(&q, p, y, c);
    Ok(solver - oracle)
}

fn svc_oracle() -> Outcome {
    let mut r = rng(14);
    let mut worst: f64 = 0.0;
    for case in 0..INSTANCES {
        let n = r.random_range(2..=10);
        let d = r.random_range(1..=3);
        let x = random_points(&mut r, n, d);
        let mut y: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        y.shuffle(&mut r);
        let c = r.random_range(0.1..2.0);
        let k = gram(&x);
        let sol = smo::solve_svc(&k, &y, c, 1e-7);
        let p = vec![-1.0; n];
        let gap = check_dual(&k, &y, &p, c, &sol.alpha).map_err(|e| format!("case {case}: {e}"))?;
        worst = worst.max(gap.abs());
        ensure(gap.abs() <= 1e-4, || format!("case {case}: solver minus oracle objective {gap:e}"))?;
    }
    Ok(format!("max |Δobjective| {worst:.1e}"))
}

fn svr_oracle() -> Outcome {
    let mut r = rng(15);
    let mut worst: f64 = 0.0;
    for case in 0..INSTANCES {
        let n = r.random_range(2..=10);
        let d = r.random_range(1..=3);
        let x = random_points(&mut r, n, d);
        let z: Vec<f64> = (0..n).map(|_| r.random_range(0.0..1.0)).collect();
        let c = r.random_range(0.1..2.0);
        let eps = r.random_range(0.0..0.2);
        let k = gram(&x);
        let sol = smo::solve_svr(&k, &z, c, eps, 1e-7);
        let mut y = vec![1.0; n];
        y.extend(vec![-1.0; n]);
        let mut p: Vec<f64> = z.iter().map(|t| eps - t).collect();
        p.extend(z.iter().map(|t| eps + t));
        let gap = check_dual(&k, &y, &p, c, &sol.alpha).map_err(|e| format!("case {case}: {e}"))?;
        worst = worst.max(gap.abs());
        ensure(gap.abs() <= 1e-4, || format!("case {case}: solver minus oracle objective {gap:e}"))?;
    }
    Ok(format!("max |Δobjective| {worst:.1e}"))
}

// --------------------------------------------------- partial correlation

fn residuals(v: &[f64], z: &[f64]) -> Vec<f64> {
    let n = v.len() as f64;
    let (mv, mz) = (v.iter().sum::<f64>() / n, z.iter().sum::<f64>() / n);
    let sxz: f64 = v.iter().zip(z).map(|(a, b)| (a - mv) * (b - mz)).sum();
    let szz: f64 = z.iter().map(|b| (b - mz) * (b - mz)).sum();
    let slope = sxz / szz;
    v.iter().zip(z).map(|(a, b)| a - mv - slope * (b - mz)).collect()
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let sab: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let saa: f64 = a.iter().map(|x| (x - ma) * (x - ma)).sum();
    let sbb: f64 = b.iter().map(|y| (y - mb) * (y - mb)).sum();
    sab / (saa * sbb).sqrt()
}

fn partial_oracle() -> Outcome {
    let mut r = rng(16);
    let mut worst: f64 = 0.0;
    for case in 0..INSTANCES {
        let n = r.random_range(5..=40);
        let (a, b) = (r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let z: Vec<f64> = (0..n).map(|_| r.sample(StandardNormal)).collect();
        let x: Vec<f64> = z.iter().map(|zi| a * zi + r.sample::<f64, _>(StandardNormal)).collect();
        let y: Vec<f64> = z.iter().zip(&x).map(|(zi, xi)| b * zi + 0.5 * xi + r.sample::<f64, _>(StandardNormal)).collect();
        let got = partial_correlation(&x, &y, &z).map_err(|e| format!("case {case}: {e}"))?;
        let want = correlation(&residuals(&x, &z), &residuals(&y, &z));
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-9, || format!("case {case}: {got} vs {want}"))?;
    }
    Ok(format!("max deviation {worst:.1e}"))
}
