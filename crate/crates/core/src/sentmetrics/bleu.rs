//! Corpus-level BLEU with clipped n-gram counts and a brevity penalty.

use super::{count_of, ngram_counts, Interner};
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BleuConfig {
    pub max_n: usize,
    /// Add-one smoothing of the modified precisions of order 2 and above.
    pub smoothing: bool,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig {
            max_n: 4,
            smoothing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BleuScore {
    pub score: f64,
    /// Corpus modified precision per order; `None` where the outputs hold no
    /// n-gram of that order.
    pub precisions: Vec<Option<f64>>,
    pub brevity_penalty: f64,
    pub hyp_len: usize,
    pub ref_len: usize,
}

#[derive(Debug, Clone, Default)]
struct SentenceStats {
    matches: Vec<usize>,
    totals: Vec<usize>,
    hyp_len: usize,
    ref_len: usize,
}

fn sentence_stats(hyp: &[String], refs: &[Vec<String>], max_n: usize) -> SentenceStats {
    let mut stats = SentenceStats {
        matches: vec![0; max_n],
        totals: vec![0; max_n],
        hyp_len: hyp.len(),
        ref_len: closest_ref_len(hyp.len(), refs),
    };
    let mut interner = Interner::default();
    let hyp_ids = interner.ids(hyp);
    let ref_ids: Vec<Vec<u32>> = refs.iter().map(|r| interner.ids(r)).collect();
    for n in 1..=max_n {
        let ref_counts: Vec<_> = ref_ids.iter().map(|r| ngram_counts(r, n)).collect();
        stats.totals[n - 1] = hyp.len().saturating_sub(n - 1);
        stats.matches[n - 1] = ngram_counts(&hyp_ids, n)
            .iter()
            .map(|&(g, c)| {
                let max_ref = ref_counts.iter().map(|rc| count_of(rc, g)).max().unwrap_or(0);
                c.min(max_ref)
            })
            .sum();
    }
    stats
}

/// Reference length closest to `hyp_len`, the shorter one on ties.
fn closest_ref_len(hyp_len: usize, refs: &[Vec<String>]) -> usize {
    refs.iter()
        .map(Vec::len)
        .min_by_key(|&l| (l.abs_diff(hyp_len), l))
        .unwrap_or(0)
}

/// Corpus BLEU of tokenized `outputs` against line-aligned reference lists.
pub fn corpus_bleu(
    outputs: &[Vec<String>],
    references: &[Vec<Vec<String>>],
    config: BleuConfig,
) -> Result<BleuScore> {
    if outputs.is_empty() {
        return Err(Error::invalid("BLEU of an empty corpus"));
    }
    if outputs.len() != references.len() {
        return Err(Error::invalid(format!(
            "{} outputs but {} reference lists",
            outputs.len(),
            references.len()
        )));
    }
    if config.max_n == 0 {
        return Err(Error::invalid("BLEU max n-gram order must be at least 1"));
    }
    if references.iter().any(Vec::is_empty) {
        return Err(Error::invalid("every output needs at least one reference"));
    }
    let idx: Vec<usize> = (0..outputs.len()).collect();
    let per_sentence = par::map(&idx, |&i| {
        sentence_stats(&outputs[i], &references[i], config.max_n)
    });

    let mut total = SentenceStats {
        matches: vec![0; config.max_n],
        totals: vec![0; config.max_n],
        ..Default::default()
    };
    for s in &per_sentence {
        for n in 0..config.max_n {
            total.matches[n] += s.matches[n];
            total.totals[n] += s.totals[n];
        }
        total.hyp_len += s.hyp_len;
        total.ref_len += s.ref_len;
    }
    Ok(combine(&total, config))
}

fn combine(total: &SentenceStats, config: BleuConfig) -> BleuScore {
    let (c, r) = (total.hyp_len, total.ref_len);
    let precisions: Vec<Option<f64>> = (0..config.max_n)
        .map(|n| {
            let (m, t) = (total.matches[n], total.totals[n]);
            if t == 0 {
                None
            } else if config.smoothing && n > 0 {
                Some((m + 1) as f64 / (t + 1) as f64)
            } else {
                Some(m as f64 / t as f64)
            }
        })
        .collect();
    let brevity_penalty = if c == 0 {
        if r == 0 {
            1.0
        } else {
            0.0
        }
    } else if c < r {
        (1.0 - r as f64 / c as f64).exp()
    } else {
        1.0
    };
    let used: Vec<f64> = precisions.iter().flatten().copied().collect();
    let score = if used.is_empty() {
        brevity_penalty
    } else if used.contains(&0.0) {
        0.0
    } else {
        let log_mean = used.iter().map(|p| p.ln()).sum::<f64>() / used.len() as f64;
        (brevity_penalty * log_mean.exp()).min(1.0)
    };
    BleuScore {
        score,
        precisions,
        brevity_penalty,
        hyp_len: c,
        ref_len: r,
    }
}

/// BLEU against the inputs, rewarding outputs that change little.
pub fn source_bleu(
    sources: &[Vec<String>],
    outputs: &[Vec<String>],
    config: BleuConfig,
) -> Result<BleuScore> {
    let refs: Vec<Vec<Vec<String>>> = sources.iter().map(|s| vec![s.clone()]).collect();
    corpus_bleu(outputs, &refs, config)
}
