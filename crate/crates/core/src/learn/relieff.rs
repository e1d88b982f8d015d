//! ReliefF (nominal class) and RReliefF (numeric target) attribute weights.

use serde::{Deserialize, Serialize};

use crate::annotate::Label;
use crate::par::Execution;
use crate::vector::{FeatureMatrix, MinMax};
use crate::{Error, Result};

/// One attribute: min-max scaled numeric values, or category codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Numeric(Vec<f64>),
    Nominal(Vec<u32>),
}

impl Column {
    fn diff(&self, a: usize, b: usize) -> f64 {
        match self {
            Column::Numeric(v) => (v[a] - v[b]).abs(),
            Column::Nominal(v) => (v[a] != v[b]) as u8 as f64,
        }
    }
}

/// Attribute table for ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct Attributes {
    pub names: Vec<String>,
    pub columns: Vec<Column>,
}

impl Attributes {
    pub fn rows(&self) -> usize {
        match self.columns.first() {
            Some(Column::Numeric(v)) => v.len(),
            Some(Column::Nominal(v)) => v.len(),
            None => 0,
        }
    }

    /// Numeric features scaled on the whole matrix, plus `prompt` and `L1`
    /// as single nominal attributes when the profile includes them.
    pub fn from_matrix(m: &FeatureMatrix) -> Self {
        let stats = MinMax::fit(&m.rows, m.width());
        let mut names = m.profile.features.clone();
        let mut columns: Vec<Column> = (0..m.width())
            .map(|j| Column::Numeric(m.rows.iter().map(|r| stats.scale(j, r.values[j])).collect()))
            .collect();
        let mut nominal = |name: &str, get: fn(&crate::vector::FeatureVector) -> Option<&str>| {
            let mut vocab: Vec<&str> = m.rows.iter().filter_map(get).collect();
            vocab.sort();
            vocab.dedup();
            let codes = m
                .rows
                .iter()
                .map(|r| get(r).and_then(|v| vocab.binary_search(&v).ok()).map_or(u32::MAX, |c| c as u32))
                .collect();
            names.push(name.to_string());
            columns.push(Column::Nominal(codes));
        };
        if m.profile.include_prompt {
            nominal("prompt", |r| r.prompt.as_deref());
        }
        if m.profile.include_l1 {
            nominal("L1", |r| r.l1.as_deref());
        }
        Attributes { names, columns }
    }

    fn distance(&self, a: usize, b: usize) -> f64 {
        self.columns.iter().map(|c| c.diff(a, b)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanking {
    /// (name, weight), weight non-increasing, ties by name.
    pub entries: Vec<(String, f64)>,
}

impl FeatureRanking {
    fn new(names: &[String], weights: &[f64]) -> Self {
        let mut entries: Vec<(String, f64)> = names.iter().cloned().zip(weights.iter().copied()).collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        FeatureRanking { entries }
    }

    pub fn weight(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, w)| *w)
    }
}

/// The k nearest of `candidates` to `i`, as (index, share) with shares
/// summing to `min(k, candidates)`. Candidates tied with the k-th distance
/// split the remaining slots equally, so the result does not depend on the
/// order of the candidates.
pub fn nearest(attrs: &Attributes, i: usize, candidates: &[usize], k: usize) -> Vec<(usize, f64)> {
    let mut d: Vec<(f64, usize)> = candidates.iter().map(|&c| (attrs.distance(i, c), c)).collect();
    d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let k = k.min(d.len());
    if k == 0 {
        return Vec::new();
    }
    let cut = d[k - 1].0;
    let closer = d.iter().take_while(|x| x.0 < cut).count();
    let tied = d.iter().filter(|x| x.0 == cut).count();
    let share = (k - closer) as f64 / tied as f64;
    d.iter()
        .take_while(|x| x.0 <= cut)
        .map(|&(dist, c)| (c, if dist < cut { 1.0 } else { share }))
        .collect()
}

fn check_k(rows: usize, k: usize) -> Result<()> {
    if rows <= k {
        return Err(Error::Config(format!(
            "ReliefF needs more rows ({rows}) than neighbours ({k})"
        )));
    }
    if k == 0 {
        return Err(Error::Config("ReliefF needs at least one neighbour".into()));
    }
    Ok(())
}

/// ReliefF over every instance. Hits lower a weight by the attribute's
/// difference, misses raise it weighted by `P(C) / (1 − P(class))`; each
/// class's neighbour sum is divided by the neighbours actually found and the
/// total by the number of instances.
pub fn relieff(attrs: &Attributes, labels: &[Label], k: usize, exec: Execution) -> Result<Vec<f64>> {
    let n = attrs.rows();
    if labels.len() != n {
        return Err(Error::LengthMismatch { left: n, right: labels.len() });
    }
    check_k(n, k)?;
    let by_class: Vec<Vec<usize>> = Label::ALL
        .iter()
        .map(|&c| (0..n).filter(|&i| labels[i] == c).collect())
        .collect();
    let prior: Vec<f64> = by_class.iter().map(|v| v.len() as f64 / n as f64).collect();
    let a = attrs.columns.len();
    let contrib = exec.map_range(n, |i| {
        let own = labels[i].index();
        let mut w = vec![0.0; a];
        for (c, members) in by_class.iter().enumerate() {
            let others: Vec<usize> = members.iter().copied().filter(|&j| j != i).collect();
            let found = nearest(attrs, i, &others, k);
            let total: f64 = found.iter().map(|x| x.1).sum();
            if total == 0.0 {
                continue;
            }
            let scale = if c == own {
                -1.0 / total
            } else {
                prior[c] / (1.0 - prior[own]) / total
            };
            for (col, wj) in attrs.columns.iter().zip(w.iter_mut()) {
                *wj += scale * found.iter().map(|&(j, s)| s * col.diff(i, j)).sum::<f64>();
            }
        }
        w
    });
    let mut w = vec![0.0; a];
    for c in contrib {
        for (wj, cj) in w.iter_mut().zip(c) {
            *wj += cj;
        }
    }
    Ok(w.into_iter().map(|x| x / n as f64).collect())
}

/// RReliefF: estimates `P(diff attr | diff target)` against
/// `P(diff attr | same target)` from the k nearest neighbours of every
/// instance, each neighbour weighted equally.
pub fn rrelieff(attrs: &Attributes, target: &[f64], k: usize, exec: Execution) -> Result<Vec<f64>> {
    let n = attrs.rows();
    if target.len() != n {
        return Err(Error::LengthMismatch { left: n, right: target.len() });
    }
    check_k(n, k)?;
    let lo = target.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = target.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tdiff = |i: usize, j: usize| if hi > lo { (target[i] - target[j]).abs() / (hi - lo) } else { 0.0 };
    let a = attrs.columns.len();
    // Per instance: (N_dC, N_dA per attribute, N_dC&dA per attribute).
    let parts = exec.map_range(n, |i| {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let found = nearest(attrs, i, &others, k);
        let total: f64 = found.iter().map(|x| x.1).sum();
        let mut n_dc = 0.0;
        let mut n_da = vec![0.0; a];
        let mut n_both = vec![0.0; a];
        for &(j, s) in &found {
            let d = s / total;
            let dc = tdiff(i, j);
            n_dc += dc * d;
            for (q, col) in attrs.columns.iter().enumerate() {
                let da = col.diff(i, j);
                n_da[q] += da * d;
                n_both[q] += dc * da * d;
            }
        }
        (n_dc, n_da, n_both)
    });
    let mut n_dc = 0.0;
    let mut n_da = vec![0.0; a];
    let mut n_both = vec![0.0; a];
    for (dc, da, both) in parts {
        n_dc += dc;
        for q in 0..a {
            n_da[q] += da[q];
            n_both[q] += both[q];
        }
    }
    let m = n as f64;
    Ok((0..a)
        .map(|q| {
            let first = if n_dc > 0.0 { n_both[q] / n_dc } else { 0.0 };
            let second = if m - n_dc > 0.0 { (n_da[q] - n_both[q]) / (m - n_dc) } else { 0.0 };
            first - second
        })
        .collect())
}

/// Ranks the matrix's attributes against its labels (or numeric targets
/// when `numeric` is set).
pub fn rank(m: &FeatureMatrix, numeric: bool, k: usize, exec: Execution) -> Result<FeatureRanking> {
    let attrs = Attributes::from_matrix(m);
    let weights = if numeric {
        let t: Vec<f64> = m
            .rows
            .iter()
            .map(|r| r.target().ok_or_else(|| Error::Config(format!("essay `{}` has no score", r.id))))
            .collect::<Result<_>>()?;
        rrelieff(&attrs, &t, k, exec)?
    } else {
        let l: Vec<Label> = m
            .rows
            .iter()
            .map(|r| r.label.ok_or_else(|| Error::Config(format!("essay `{}` has no label", r.id))))
            .collect::<Result<_>>()?;
        relieff(&attrs, &l, k, exec)?
    };
    Ok(FeatureRanking::new(&attrs.names, &weights))
}
