//! Candidate sources for the generation stage.

use std::collections::HashMap;
use std::path::Path;

use super::Target;
use crate::corpus::{self, fold, TokenizedSentence};
use crate::error::{self, Error, Result};
use crate::lexres::EmbeddingTable;

/// Produces ranked substitution suggestions for a target word in context.
pub trait Suggester: Sync {
    fn suggest(&self, sentence: &TokenizedSentence, target: &Target) -> Result<Vec<String>>;
}

impl<F> Suggester for F
where
    F: Fn(&TokenizedSentence, &Target) -> Result<Vec<String>> + Sync,
{
    fn suggest(&self, sentence: &TokenizedSentence, target: &Target) -> Result<Vec<String>> {
        self(sentence, target)
    }
}

/// Suggestions from a `form<TAB>s1,s2,…` synonym table.
#[derive(Debug, Clone, Default)]
pub struct SynonymSuggester {
    table: HashMap<String, Vec<String>>,
}

impl SynonymSuggester {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut table: HashMap<String, Vec<String>> = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let (form, list) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, i + 1, "expected form<TAB>suggestions"))?;
            table.entry(fold(form.trim())).or_default().extend(
                list.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from),
            );
        }
        Ok(SynonymSuggester { table })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }
}

impl Suggester for SynonymSuggester {
    fn suggest(&self, _: &TokenizedSentence, target: &Target) -> Result<Vec<String>> {
        Ok(self.table.get(&fold(&target.word)).cloned().unwrap_or_default())
    }
}

/// The `k` nearest neighbours of the target in an embedding table.
#[derive(Debug, Clone, Copy)]
pub struct NearestNeighbourSuggester<'a> {
    pub table: &'a EmbeddingTable,
    pub k: usize,
}

impl Suggester for NearestNeighbourSuggester<'_> {
    fn suggest(&self, _: &TokenizedSentence, target: &Target) -> Result<Vec<String>> {
        Ok(self
            .table
            .nearest(&target.word, self.k)
            .into_iter()
            .map(|(w, _)| w)
            .collect())
    }
}

/// Replays candidates produced elsewhere, read from a Predictions TSV file
/// and keyed by sentence and complex word.
#[derive(Debug, Clone, Default)]
pub struct CandidateFileSuggester {
    table: HashMap<(String, String), Vec<String>>,
}

impl CandidateFileSuggester {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let table = corpus::parse_predictions(text, origin)?
            .into_iter()
            .map(|p| (p.key(), p.candidates))
            .collect();
        Ok(CandidateFileSuggester { table })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }
}

impl Suggester for CandidateFileSuggester {
    fn suggest(&self, sentence: &TokenizedSentence, target: &Target) -> Result<Vec<String>> {
        let key = (sentence.raw().to_string(), fold(&target.word));
        Ok(self.table.get(&key).cloned().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;

    fn target(word: &str) -> Target {
        Target {
            index: 0,
            word: word.into(),
        }
    }

    #[test]
    fn synonym_table() {
        let s = SynonymSuggester::parse("ran\tjogged, sprinted\nRan\tmoved\n", "s").unwrap();
        let got = s.suggest(&tokenize("Ran home"), &target("Ran")).unwrap();
        assert_eq!(got, ["jogged", "sprinted", "moved"]);
        assert!(s.suggest(&tokenize("x"), &target("x")).unwrap().is_empty());
        assert!(SynonymSuggester::parse("no tab here", "s").is_err());
    }

    #[test]
    fn candidate_file() {
        let s = CandidateFileSuggester::parse("He ran home.\tran\tjogged\twalked\n", "c").unwrap();
        let got = s.suggest(&tokenize("He ran home."), &target("RAN")).unwrap();
        assert_eq!(got, ["jogged", "walked"]);
        assert!(s
            .suggest(&tokenize("He ran."), &target("ran"))
            .unwrap()
            .is_empty());
    }
}
