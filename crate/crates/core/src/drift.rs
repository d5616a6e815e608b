//! Complexity drift between a parallel corpus and its machine translation.
//!
//! For each pair, the within-pair cosine similarity of sentence embeddings
//! and the within-pair character edit distance are measured in both corpora;
//! the translated value minus the original value is the drift.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::corpus::ParallelPair;
use crate::error::{self, Error, Result};
use crate::lexres::{cosine, parse_vector};
use crate::par;
use crate::report::{fixed6, Report, Value};
use crate::sentmetrics::edit_distance;

/// Precomputed sentence vectors keyed by id (`id<TAB>v1 … vd` rows).
#[derive(Debug, Clone, Default)]
pub struct SentenceEmbeddings {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

/// Key of a pair's complex (source) sentence in a sentence-embedding file.
pub fn source_key(pair_id: &str) -> String {
    format!("{pair_id}:src")
}

/// Key of a pair's simple (first reference) sentence.
pub fn reference_key(pair_id: &str) -> String {
    format!("{pair_id}:ref")
}

impl SentenceEmbeddings {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut out = SentenceEmbeddings::default();
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let (id, rest) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n, "expected id<TAB>vector"))?;
            let v = parse_vector(rest.split_whitespace()).map_err(|m| Error::parse(origin, n, m))?;
            if v.is_empty() {
                return Err(Error::parse(origin, n, "empty vector"));
            }
            if out.dim == 0 {
                out.dim = v.len();
            } else if v.len() != out.dim {
                return Err(Error::parse(
                    origin,
                    n,
                    format!("{} components, expected {}", v.len(), out.dim),
                ));
            }
            if out.vectors.insert(id.trim().to_string(), v).is_some() {
                return Err(Error::parse(origin, n, format!("duplicate id {:?}", id.trim())));
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }

    pub fn insert(&mut self, id: impl Into<String>, v: Vec<f64>) {
        self.dim = v.len();
        self.vectors.insert(id.into(), v);
    }

    pub fn get(&self, id: &str) -> Option<&[f64]> {
        self.vectors.get(id).map(Vec::as_slice)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn pair_cosine(&self, pair: &ParallelPair, what: &str) -> Result<f64> {
        let lookup = |key: String| {
            self.get(&key)
                .ok_or_else(|| Error::invalid(format!("{what} sentence embeddings have no row {key:?}")))
        };
        cosine(lookup(source_key(&pair.id))?, lookup(reference_key(&pair.id))?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriftPair {
    pub id: String,
    pub original_cos: f64,
    pub translated_cos: f64,
    pub original_edit: usize,
    pub translated_edit: usize,
}

impl DriftPair {
    pub fn delta_cos(&self) -> f64 {
        self.translated_cos - self.original_cos
    }

    pub fn delta_edit(&self) -> i64 {
        self.translated_edit as i64 - self.original_edit as i64
    }
}

fn pair_edit(pair: &ParallelPair) -> usize {
    edit_distance(pair.source.raw(), pair.references[0].raw())
}

/// One drift record per pair id, in the order of `original`.
pub fn compute_drift(
    original: &[ParallelPair],
    translated: &[ParallelPair],
    original_embeddings: &SentenceEmbeddings,
    translated_embeddings: &SentenceEmbeddings,
) -> Result<Vec<DriftPair>> {
    let by_id: HashMap<&str, &ParallelPair> = translated.iter().map(|p| (p.id.as_str(), p)).collect();
    let original_ids: HashSet<&str> = original.iter().map(|p| p.id.as_str()).collect();
    let mut unmatched: Vec<&str> = original_ids
        .iter()
        .copied()
        .filter(|id| !by_id.contains_key(id))
        .chain(by_id.keys().copied().filter(|id| !original_ids.contains(id)))
        .collect();
    if !unmatched.is_empty() {
        unmatched.sort_unstable();
        return Err(Error::invalid(format!(
            "ids present in only one corpus: {}",
            unmatched.join(", ")
        )));
    }
    par::try_map(original, |orig| {
        let trans = by_id[orig.id.as_str()];
        Ok(DriftPair {
            id: orig.id.clone(),
            original_cos: original_embeddings.pair_cosine(orig, "original")?,
            translated_cos: translated_embeddings.pair_cosine(trans, "translated")?,
            original_edit: pair_edit(orig),
            translated_edit: pair_edit(trans),
        })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriftSummary {
    pub count: usize,
    pub fraction_positive: f64,
    pub fraction_zero: f64,
    pub fraction_negative: f64,
    pub median: f64,
    pub median_positive: Option<f64>,
    pub median_negative: Option<f64>,
}

impl DriftSummary {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.int("count", self.count as u64)
            .num("fraction_positive", self.fraction_positive)
            .num("fraction_zero", self.fraction_zero)
            .num("fraction_negative", self.fraction_negative)
            .num("median", self.median);
        if let Some(m) = self.median_positive {
            r.num("median_positive", m);
        }
        if let Some(m) = self.median_negative {
            r.num("median_negative", m);
        }
        r
    }
}

/// Median of sorted values; the midpoint of the two central ones for even
/// counts.
fn median_sorted(v: &[f64]) -> Option<f64> {
    let n = v.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(v[n / 2]),
        _ => Some((v[n / 2 - 1] + v[n / 2]) / 2.0),
    }
}

pub fn summarize(deltas: &[f64]) -> Result<DriftSummary> {
    if deltas.is_empty() {
        return Err(Error::invalid("cannot summarize an empty list of deltas"));
    }
    if deltas.iter().any(|d| d.is_nan()) {
        return Err(Error::invalid("deltas contain NaN"));
    }
    let mut sorted = deltas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let positive: Vec<f64> = sorted.iter().copied().filter(|&d| d > 0.0).collect();
    let negative: Vec<f64> = sorted.iter().copied().filter(|&d| d < 0.0).collect();
    let n = deltas.len() as f64;
    let zero = deltas.len() - positive.len() - negative.len();
    Ok(DriftSummary {
        count: deltas.len(),
        fraction_positive: positive.len() as f64 / n,
        fraction_zero: zero as f64 / n,
        fraction_negative: negative.len() as f64 / n,
        median: median_sorted(&sorted).expect("non-empty"),
        median_positive: median_sorted(&positive),
        median_negative: median_sorted(&negative),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Bins {
    /// Equal-width bins spanning the data range.
    Count(usize),
    /// Explicit ascending edges.
    Edges(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub underflow: usize,
    pub overflow: usize,
}

/// Bins `values`. A value on an interior edge falls in the bin to its
/// right; the last edge belongs to the last bin.
pub fn histogram(values: &[f64], bins: &Bins) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::invalid("histogram of no values"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("histogram values must be finite"));
    }
    let edges = match bins {
        Bins::Count(0) => return Err(Error::invalid("bin count must be at least 1")),
        Bins::Count(k) => {
            let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if lo == hi {
                lo -= 0.5;
                hi += 0.5;
            }
            let width = (hi - lo) / *k as f64;
            let mut e: Vec<f64> = (0..*k).map(|i| lo + i as f64 * width).collect();
            e.push(hi);
            e
        }
        Bins::Edges(e) => {
            if e.len() < 2 || e.iter().any(|x| x.is_nan()) || e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(
                    "explicit bin edges must be at least two ascending values",
                ));
            }
            e.clone()
        }
    };
    let last = edges.len() - 2;
    let mut h = Histogram {
        counts: vec![0; edges.len() - 1],
        edges,
        underflow: 0,
        overflow: 0,
    };
    for &v in values {
        if v < h.edges[0] {
            h.underflow += 1;
        } else if v > h.edges[last + 1] {
            h.overflow += 1;
        } else {
            let i = h.edges.partition_point(|&e| e <= v) - 1;
            h.counts[i.min(last)] += 1;
        }
    }
    Ok(h)
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.underflow + self.overflow
    }

    /// `bin_lo,bin_hi,count` rows; under- and overflow rows appear only when
    /// non-empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count\n");
        if self.underflow > 0 {
            out.push_str(&format!("-inf,{},{}\n", fixed6(self.edges[0]), self.underflow));
        }
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                fixed6(self.edges[i]),
                fixed6(self.edges[i + 1]),
                c
            ));
        }
        if self.overflow > 0 {
            out.push_str(&format!(
                "{},inf,{}\n",
                fixed6(self.edges[self.edges.len() - 1]),
                self.overflow
            ));
        }
        out
    }
}

/// Summaries of both deltas, ready for the JSON report.
pub fn drift_report(pairs: &[DriftPair]) -> Result<Report> {
    let cos: Vec<f64> = pairs.iter().map(DriftPair::delta_cos).collect();
    let edit: Vec<f64> = pairs.iter().map(|p| p.delta_edit() as f64).collect();
    let mut r = Report::new();
    r.int("pairs", pairs.len() as u64)
        .insert("delta_cos", Value::Obj(summarize(&cos)?.to_report()))
        .insert("delta_edit", Value::Obj(summarize(&edit)?.to_report()));
    Ok(r)
}
