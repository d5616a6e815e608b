//! Lexical simplification metrics over ranked substitute lists:
//! ACC@1, ACC@K@top1, MAP@K, Potential@K, Precision@K and Recall@K.
//!
//! All metrics are macro-averaged over instances. Candidates and gold
//! substitutes are compared after case-folding, with set semantics.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::Path;

use crate::corpus::{self, fold, LexInstance, PredictionRecord};
use crate::error::{Error, Result};
use crate::par;
use crate::report::Report;

/// A gold item paired with a system's ranked predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct LexEvalItem {
    gold_set: BTreeSet<String>,
    modes: BTreeSet<String>,
    predictions: Vec<String>,
}

impl LexEvalItem {
    pub fn new(gold: &LexInstance, prediction: Option<&PredictionRecord>) -> Self {
        let preds = prediction.map_or(&[][..], |p| p.candidates.as_slice());
        Self::build(gold.gold_set(), gold.gold_modes(), preds)
    }

    /// From a raw gold multiset and a ranked list.
    pub fn from_parts<S: AsRef<str>, T: AsRef<str>>(gold: &[S], predictions: &[T]) -> Self {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for g in gold {
            *counts.entry(fold(g.as_ref())).or_insert(0) += 1;
        }
        let best = counts.values().copied().max().unwrap_or(0);
        let modes = counts
            .iter()
            .filter(|&(_, &c)| c == best)
            .map(|(g, _)| g.clone())
            .collect();
        let preds: Vec<String> = predictions.iter().map(|p| p.as_ref().to_string()).collect();
        Self::build(counts.into_keys().collect(), modes, &preds)
    }

    fn build(gold_set: BTreeSet<String>, modes: BTreeSet<String>, preds: &[String]) -> Self {
        let mut seen = HashSet::new();
        let predictions = preds
            .iter()
            .map(|p| fold(p))
            .filter(|p| seen.insert(p.clone()))
            .collect();
        LexEvalItem {
            gold_set,
            modes,
            predictions,
        }
    }

    fn top(&self, k: usize) -> &[String] {
        &self.predictions[..k.min(self.predictions.len())]
    }

    fn potential(&self, k: usize) -> f64 {
        indicator(self.top(k).iter().any(|p| self.gold_set.contains(p)))
    }

    fn acc_top1(&self, k: usize) -> f64 {
        indicator(self.top(k).iter().any(|p| self.modes.contains(p)))
    }

    fn average_precision(&self, k: usize) -> f64 {
        let denom = k.min(self.gold_set.len());
        if denom == 0 {
            return 0.0;
        }
        let mut hits = 0usize;
        let mut sum = 0.0;
        for (i, p) in self.top(k).iter().enumerate() {
            if self.gold_set.contains(p) {
                hits += 1;
                sum += hits as f64 / (i + 1) as f64;
            }
        }
        sum / denom as f64
    }

    fn hits(&self, k: usize) -> usize {
        self.top(k).iter().filter(|p| self.gold_set.contains(*p)).count()
    }
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn check(items: &[LexEvalItem], k: usize) -> Result<()> {
    if items.is_empty() {
        return Err(Error::invalid("no instances to evaluate"));
    }
    if k == 0 {
        return Err(Error::invalid("K must be at least 1"));
    }
    Ok(())
}

/// Mean of per-instance values, summed in input order.
fn mean(items: &[LexEvalItem], f: impl Fn(&LexEvalItem) -> f64 + Sync + Send) -> f64 {
    let values = par::map(items, f);
    values.iter().sum::<f64>() / values.len() as f64
}

/// Share of instances with a gold substitute among the top `k` predictions.
pub fn potential_at_k(items: &[LexEvalItem], k: usize) -> Result<f64> {
    check(items, k)?;
    Ok(mean(items, |it| it.potential(k)))
}

/// Share of instances whose top `k` predictions contain a most frequent
/// gold substitute (any one of them on ties).
pub fn acc_at_k_top1(items: &[LexEvalItem], k: usize) -> Result<f64> {
    check(items, k)?;
    Ok(mean(items, |it| it.acc_top1(k)))
}

/// Gold-set membership of the top prediction.
pub fn acc_at_1(items: &[LexEvalItem]) -> Result<f64> {
    potential_at_k(items, 1)
}

/// Mean average precision with AP@K normalised by `min(K, |gold set|)`.
pub fn map_at_k(items: &[LexEvalItem], k: usize) -> Result<f64> {
    check(items, k)?;
    Ok(mean(items, |it| it.average_precision(k)))
}

/// Macro-averaged `hits/K` and `hits/|gold set|`.
pub fn precision_recall_at_k(items: &[LexEvalItem], k: usize) -> Result<(f64, f64)> {
    check(items, k)?;
    let pairs = par::map(items, |it| {
        let hits = it.hits(k) as f64;
        (hits / k as f64, hits / it.gold_set.len().max(1) as f64)
    });
    let n = pairs.len() as f64;
    let (p, r) = pairs.iter().fold((0.0, 0.0), |(p, r), &(a, b)| (p + a, r + b));
    Ok((p / n, r / n))
}

/// K values reported for each metric family.
#[derive(Debug, Clone, PartialEq)]
pub struct KGrid {
    pub acc_top1: Vec<usize>,
    pub map: Vec<usize>,
    pub potential: Vec<usize>,
    pub precision_recall: Vec<usize>,
}

impl Default for KGrid {
    fn default() -> Self {
        KGrid {
            acc_top1: vec![1, 2, 3],
            map: vec![1, 3, 5, 10],
            potential: vec![1, 3, 5, 10],
            precision_recall: (1..=10).collect(),
        }
    }
}

impl KGrid {
    /// The same K values for every family.
    pub fn uniform(ks: &[usize]) -> Result<Self> {
        if ks.is_empty() || ks.contains(&0) {
            return Err(Error::invalid("K grid values must be positive"));
        }
        let ks: Vec<usize> = ks.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(KGrid {
            acc_top1: ks.clone(),
            map: ks.clone(),
            potential: ks.clone(),
            precision_recall: ks,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexReport {
    pub metrics: BTreeMap<String, f64>,
    pub instances: usize,
}

impl LexReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        for (k, &v) in &self.metrics {
            r.num(k.clone(), v);
        }
        r.int("instances", self.instances as u64);
        r
    }
}

pub fn lexical_report(items: &[LexEvalItem], grid: &KGrid) -> Result<LexReport> {
    let mut metrics = BTreeMap::new();
    metrics.insert("ACC@1".to_string(), acc_at_1(items)?);
    for &k in &grid.acc_top1 {
        metrics.insert(format!("ACC@{k}@top1"), acc_at_k_top1(items, k)?);
    }
    for &k in &grid.map {
        metrics.insert(format!("MAP@{k}"), map_at_k(items, k)?);
    }
    for &k in &grid.potential {
        metrics.insert(format!("Potential@{k}"), potential_at_k(items, k)?);
    }
    for &k in &grid.precision_recall {
        let (p, r) = precision_recall_at_k(items, k)?;
        metrics.insert(format!("Precision@{k}"), p);
        metrics.insert(format!("Recall@{k}"), r);
    }
    Ok(LexReport {
        metrics,
        instances: items.len(),
    })
}

/// Matches predictions to gold instances by sentence and complex word.
///
/// A gold instance without a prediction line gets an empty ranking. A
/// prediction matching no gold instance, or two predictions for the same
/// instance, is an error.
pub fn pair_items(gold: &[LexInstance], predictions: &[PredictionRecord]) -> Result<Vec<LexEvalItem>> {
    let mut by_key: HashMap<(String, String), &PredictionRecord> = HashMap::new();
    let gold_keys: HashSet<(String, String)> = gold.iter().map(LexInstance::key).collect();
    for (i, p) in predictions.iter().enumerate() {
        let key = p.key();
        if !gold_keys.contains(&key) {
            return Err(Error::invalid(format!(
                "prediction {} (complex word {:?}) matches no gold instance",
                i + 1,
                p.complex_word
            )));
        }
        if by_key.insert(key, p).is_some() {
            return Err(Error::invalid(format!(
                "duplicate prediction {} for complex word {:?}",
                i + 1,
                p.complex_word
            )));
        }
    }
    Ok(gold
        .iter()
        .map(|g| LexEvalItem::new(g, by_key.get(&g.key()).copied()))
        .collect())
}

pub fn evaluate_lexical(gold_path: &Path, pred_path: &Path, grid: &KGrid) -> Result<LexReport> {
    let gold = corpus::load_lexical_gold(gold_path)?;
    let preds = corpus::load_predictions(pred_path)?;
    lexical_report(&pair_items(&gold, &preds)?, grid)
}
