//! Three-stage lexical simplification: complex word identification,
//! candidate generation, and candidate ranking.

mod cwi;
mod rank;
mod suggest;

use std::collections::HashSet;
use std::path::Path;

pub use cwi::identify_complex_word;
pub use rank::{grammaticality, matching_pos, meaning_ranks, rank_candidates, simplicity, CandidateScore};
pub use suggest::{CandidateFileSuggester, NearestNeighbourSuggester, Suggester, SynonymSuggester};

use crate::corpus::{fold, PredictionRecord, TokenizedSentence};
use crate::error::{self, Error, Result};
use crate::lexres::{MorphLexicon, ResourceSet, Stoplist};
use crate::par;

/// The word chosen for simplification and its token position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub index: usize,
    pub word: String,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Number of generated candidates N.
    pub candidates: usize,
    /// Length cap of the final ranking.
    pub limit: usize,
    /// CWI returns nothing unless the best level exceeds this.
    pub cwi_floor: u8,
    /// Neighbours requested from the embedding suggester.
    pub knn_k: usize,
    pub stoplist: Stoplist,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            candidates: 20,
            limit: 10,
            cwi_floor: 1,
            knn_k: 50,
            stoplist: Stoplist::english(),
        }
    }
}

impl PipelineConfig {
    /// Parses `key = value` lines. `#` starts a comment. A relative
    /// `stoplist` path resolves against `base_dir`.
    pub fn parse(text: &str, origin: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = PipelineConfig::default();
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            let line = line.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(origin, n, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |what: &str| -> Result<usize> {
                value
                    .parse()
                    .map_err(|_| Error::parse(origin, n, format!("{what} must be a non-negative integer")))
            };
            match key {
                "candidates" | "N" => cfg.candidates = number(key)?,
                "limit" => cfg.limit = number(key)?,
                "cwi_floor" => {
                    cfg.cwi_floor = number(key)?
                        .try_into()
                        .ok()
                        .filter(|f| *f <= 6)
                        .ok_or_else(|| Error::parse(origin, n, "cwi_floor must be in 0..6"))?
                }
                "knn_k" => cfg.knn_k = number(key)?,
                "stoplist" => cfg.stoplist = Stoplist::load(&base_dir.join(value))?,
                other => return Err(Error::parse(origin, n, format!("unknown key {other:?}"))),
            }
        }
        if cfg.candidates == 0 || cfg.limit == 0 {
            return Err(Error::parse(origin, 0, "candidates and limit must be positive"));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&error::read_to_string(path)?, &error::origin(path), base)
    }
}

/// Lowercases, deduplicates and drops every inflection of the target, then
/// keeps the first `n`.
pub fn generate_candidates(
    sentence: &TokenizedSentence,
    target: &Target,
    suggester: &dyn Suggester,
    morph: &MorphLexicon,
    n: usize,
) -> Result<Vec<String>> {
    let excluded = morph.lemma_forms(&target.word);
    let mut seen = HashSet::new();
    Ok(suggester
        .suggest(sentence, target)?
        .iter()
        .map(|s| fold(s.trim()))
        .filter(|s| !s.is_empty() && !excluded.contains(s) && seen.insert(s.clone()))
        .take(n)
        .collect())
}

/// Output of one sentence through the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplificationResult {
    pub target: Option<Target>,
    /// Every generated candidate, in generation order.
    pub scored: Vec<CandidateScore>,
    /// Final substitutes, best first.
    pub ranked: Vec<String>,
}

impl SimplificationResult {
    pub fn to_prediction(&self, sentence: &TokenizedSentence) -> PredictionRecord {
        PredictionRecord {
            sentence: sentence.raw().to_string(),
            complex_word: self.target.as_ref().map(|t| t.word.clone()).unwrap_or_default(),
            candidates: self.ranked.clone(),
        }
    }

    /// Candidates removed by the grammaticality filter.
    pub fn excluded(&self) -> impl Iterator<Item = &CandidateScore> {
        self.scored.iter().filter(|c| !c.grammatical)
    }
}

/// Generates and ranks substitutes for a known target.
pub fn simplify_target(
    sentence: &TokenizedSentence,
    target: Target,
    resources: &ResourceSet,
    suggester: &dyn Suggester,
    config: &PipelineConfig,
) -> Result<SimplificationResult> {
    let morph = resources.morph()?;
    let cefr = resources.cefr()?;
    let embeddings = resources.embeddings()?;
    let candidates = generate_candidates(sentence, &target, suggester, morph, config.candidates)?;
    let meanings = meaning_ranks(sentence, target.index, &candidates, embeddings)?;
    let target_analyses = morph.analyses(&target.word);
    let scored: Vec<CandidateScore> = candidates
        .into_iter()
        .zip(meanings)
        .enumerate()
        .map(|(rank, (candidate, meaning))| {
            let pos = matching_pos(target_analyses, morph.analyses(&candidate));
            CandidateScore {
                simplicity: simplicity(&candidate, &pos, cefr),
                grammatical: !pos.is_empty(),
                candidate,
                meaning,
                generation_rank: rank,
            }
        })
        .collect();
    let ranked = rank_candidates(&scored, config.limit)
        .into_iter()
        .map(|c| c.candidate)
        .collect();
    Ok(SimplificationResult {
        target: Some(target),
        scored,
        ranked,
    })
}

/// Runs all three stages on one sentence.
pub fn simplify_sentence(
    sentence: &TokenizedSentence,
    resources: &ResourceSet,
    suggester: &dyn Suggester,
    config: &PipelineConfig,
) -> Result<SimplificationResult> {
    resources.morph()?;
    resources.embeddings()?;
    match identify_complex_word(sentence, resources, &config.stoplist, config.cwi_floor)? {
        Some(target) => simplify_target(sentence, target, resources, suggester, config),
        None => Ok(SimplificationResult::default()),
    }
}

/// A sentence, optionally with its complex word already chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineInput {
    pub sentence: TokenizedSentence,
    pub complex_word: Option<String>,
}

/// Simplifies a batch in parallel; results are in input order.
///
/// A given complex word skips identification. It must occur in the sentence.
pub fn simplify_batch(
    inputs: &[PipelineInput],
    resources: &ResourceSet,
    suggester: &dyn Suggester,
    config: &PipelineConfig,
) -> Result<Vec<SimplificationResult>> {
    par::try_map(inputs, |input| match &input.complex_word {
        Some(word) => {
            let index = input.sentence.find(word).ok_or_else(|| {
                Error::invalid(format!(
                    "complex word {word:?} not found in {:?}",
                    input.sentence.raw()
                ))
            })?;
            let target = Target {
                index,
                word: input.sentence.tokens()[index].clone(),
            };
            simplify_target(&input.sentence, target, resources, suggester, config)
        }
        None => simplify_sentence(&input.sentence, resources, suggester, config),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;

    fn run_morph() -> MorphLexicon {
        MorphLexicon::parse(
            "ran\trun\tVERB\tTense=Past\nruns\trun\tVERB\tTense=Pres\nrunning\trun\tVERB\tVerbForm=Ger\n",
            "m",
        )
        .unwrap()
    }

    fn target(word: &str, index: usize) -> Target {
        Target {
            index,
            word: word.into(),
        }
    }

    #[test]
    fn generation_example() {
        let list: Vec<String> = ["Ran", "running", "jogged", "jogged", "moved"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let sug = move |_: &TokenizedSentence, _: &Target| Ok(list.clone());
        let s = tokenize("He ran home");
        let got = generate_candidates(&s, &target("ran", 1), &sug, &run_morph(), 20).unwrap();
        assert_eq!(got, ["jogged", "moved"]);
    }

    #[test]
    fn generation_empty_and_truncation() {
        let s = tokenize("He ran home");
        let none = |_: &TokenizedSentence, _: &Target| Ok(Vec::new());
        assert!(
            generate_candidates(&s, &target("ran", 1), &none, &run_morph(), 20)
                .unwrap()
                .is_empty()
        );
        let many = |_: &TokenizedSentence, _: &Target| Ok((0..25).map(|i| format!("w{i}")).collect());
        let got = generate_candidates(&s, &target("ran", 1), &many, &run_morph(), 20).unwrap();
        assert_eq!(got.len(), 20);
        assert_eq!(got[19], "w19");
    }

    #[test]
    fn suggester_failure_propagates() {
        let s = tokenize("He ran home");
        let bad = |_: &TokenizedSentence, _: &Target| Err(Error::invalid("backend down"));
        assert!(generate_candidates(&s, &target("ran", 1), &bad, &run_morph(), 20).is_err());
    }

    #[test]
    fn config_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("stop.txt"), "foo\n").unwrap();
        let cfg = PipelineConfig::parse(
            "# comment\ncandidates = 15\nlimit=5\ncwi_floor = 2\nstoplist = stop.txt\n",
            "cfg",
            dir.path(),
        )
        .unwrap();
        assert_eq!((cfg.candidates, cfg.limit, cfg.cwi_floor), (15, 5, 2));
        assert!(cfg.stoplist.contains("Foo"));
        assert!(PipelineConfig::parse("bogus = 1", "cfg", dir.path()).is_err());
        assert!(PipelineConfig::parse("limit = x", "cfg", dir.path()).is_err());
        assert!(PipelineConfig::parse("cwi_floor = 9", "cfg", dir.path()).is_err());
    }
}
