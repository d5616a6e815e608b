//! Candidate scoring: grammaticality G, simplicity S, meaning preservation
//! M, and the final ordering by `2*S + M` over grammatical candidates.

use std::collections::BTreeSet;

use crate::corpus::TokenizedSentence;
use crate::error::Result;
use crate::lexres::{Analysis, CefrLexicon, EmbeddingTable, CEFR_MAX};
use crate::sentmetrics::embed_similarity_f1;

/// Scores of one generated candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateScore {
    pub candidate: String,
    /// G: some analysis agrees with the target in POS and every feature.
    pub grammatical: bool,
    /// S: CEFR level, 1 (A1) to 6 (C2).
    pub simplicity: u8,
    /// M: 1 for the best meaning preservation, N for the worst.
    pub meaning: usize,
    /// 0-based position in the generated list.
    pub generation_rank: usize,
}

impl CandidateScore {
    pub fn g(&self) -> u8 {
        u8::from(self.grammatical)
    }

    /// `2*S + M`, defined for grammatical candidates only.
    pub fn combined(&self) -> Option<usize> {
        self.grammatical
            .then(|| 2 * self.simplicity as usize + self.meaning)
    }
}

/// POS tags of the candidate analyses that agree exactly with some target
/// analysis. Empty means G = 0.
pub fn matching_pos(target: &[Analysis], candidate: &[Analysis]) -> BTreeSet<String> {
    candidate
        .iter()
        .filter(|c| target.iter().any(|t| t.pos == c.pos && t.feats == c.feats))
        .map(|c| c.pos.clone())
        .collect()
}

/// 1 when some candidate analysis has the POS and feature map of some target
/// analysis, else 0. Unknown candidates get 0.
pub fn grammaticality(target: &[Analysis], candidate: &[Analysis]) -> u8 {
    u8::from(!matching_pos(target, candidate).is_empty())
}

/// CEFR level of `candidate`, read for the POS it was matched under when
/// such entries exist, otherwise the form level (6 when unknown).
pub fn simplicity(candidate: &str, matched_pos: &BTreeSet<String>, cefr: &CefrLexicon) -> u8 {
    matched_pos
        .iter()
        .filter_map(|pos| cefr.lookup_pos(candidate, pos))
        .min()
        .or_else(|| cefr.lookup(candidate))
        .unwrap_or(CEFR_MAX)
}

/// Meaning-preservation ranks, index-aligned with `candidates`.
///
/// Each candidate is substituted at `target_index` and the new sentence is
/// compared with the original by greedy embedding F1. Higher F1 gets a
/// smaller rank; ties keep generation order.
pub fn meaning_ranks(
    sentence: &TokenizedSentence,
    target_index: usize,
    candidates: &[String],
    embeddings: &EmbeddingTable,
) -> Result<Vec<usize>> {
    let original = sentence.tokens();
    let f1: Vec<f64> = candidates
        .iter()
        .map(|c| {
            let substituted = sentence.substituted(target_index, c);
            embed_similarity_f1(original, &substituted, embeddings).map(|s| s.f1)
        })
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| f1[b].total_cmp(&f1[a]).then(a.cmp(&b)));
    let mut ranks = vec![0; candidates.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = pos + 1;
    }
    Ok(ranks)
}

/// Grammatical candidates in ascending `2*S + M`, ties on smaller M then
/// generation order, cut to `limit`.
pub fn rank_candidates(scored: &[CandidateScore], limit: usize) -> Vec<CandidateScore> {
    let mut kept: Vec<&CandidateScore> = scored.iter().filter(|c| c.grammatical).collect();
    kept.sort_by_key(|c| (c.combined(), c.meaning, c.generation_rank));
    kept.into_iter().take(limit).cloned().collect()
}
