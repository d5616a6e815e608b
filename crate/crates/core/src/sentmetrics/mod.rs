//! Sentence-level simplification metrics and the corpus evaluation report.

mod bleu;
mod edit;
mod embed;
mod sari;

use std::collections::HashMap;
use std::path::Path;

pub use bleu::{corpus_bleu, source_bleu, BleuConfig, BleuScore};
pub use edit::edit_distance;
pub use embed::{embed_similarity_f1, SimilarityF1};
pub use sari::{corpus_sari, sentence_sari, SariScore, SARI_ORDER};

use crate::corpus::{self, is_word_token, tokenize, ParallelPair, TokenizedSentence};
use crate::error::{Error, Result};
use crate::lexres::{EmbeddingTable, FreqLexicon, Stoplist};
use crate::par;
use crate::report::Report;

/// Maps the tokens of one sentence group to small integer ids.
#[derive(Default)]
pub(crate) struct Interner<'a>(HashMap<&'a str, u32>);

impl<'a> Interner<'a> {
    pub(crate) fn ids(&mut self, tokens: &'a [String]) -> Vec<u32> {
        tokens
            .iter()
            .map(|t| {
                let next = self.0.len() as u32;
                *self.0.entry(t.as_str()).or_insert(next)
            })
            .collect()
    }
}

/// Distinct n-grams with their counts, sorted.
pub(crate) fn ngram_counts(ids: &[u32], n: usize) -> Vec<(&[u32], usize)> {
    let mut grams: Vec<&[u32]> = ids.windows(n).collect();
    grams.sort_unstable();
    let mut out: Vec<(&[u32], usize)> = Vec::with_capacity(grams.len());
    for g in grams {
        match out.last_mut() {
            Some((last, c)) if *last == g => *c += 1,
            _ => out.push((g, 1)),
        }
    }
    out
}

/// Count of `g` in a list built by [`ngram_counts`]; 0 when absent.
pub(crate) fn count_of(counts: &[(&[u32], usize)], g: &[u32]) -> usize {
    counts
        .binary_search_by(|(x, _)| (*x).cmp(g))
        .map_or(0, |i| counts[i].1)
}

/// Frequency-based simplicity of a sentence: the mean over content tokens of
/// `ln(1 + f(w)) / ln(1 + f_max)`. No content tokens gives 0.
pub fn isim(tokens: &[String], freq: &FreqLexicon, stoplist: &Stoplist) -> f64 {
    let denom = (1.0 + freq.max() as f64).ln();
    let content: Vec<&String> = tokens
        .iter()
        .filter(|t| is_word_token(t) && !stoplist.contains(t))
        .collect();
    if content.is_empty() || denom == 0.0 {
        return 0.0;
    }
    content
        .iter()
        .map(|w| (1.0 + freq.freq(w) as f64).ln() / denom)
        .sum::<f64>()
        / content.len() as f64
}

#[derive(Debug, Clone)]
pub struct SentOptions {
    pub bleu: BleuConfig,
    /// Drop pairs whose references all repeat the source.
    pub exclude_identity: bool,
    pub lowercase: bool,
}

impl Default for SentOptions {
    fn default() -> Self {
        SentOptions {
            bleu: BleuConfig::default(),
            exclude_identity: false,
            lowercase: true,
        }
    }
}

/// Optional resources for the frequency and embedding based columns.
#[derive(Debug, Clone, Copy, Default)]
pub struct SentResources<'a> {
    pub freq: Option<(&'a FreqLexicon, &'a Stoplist)>,
    pub embeddings: Option<&'a EmbeddingTable>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentReport {
    pub pairs: usize,
    pub excluded_identity: usize,
    pub bleu: BleuScore,
    pub source_bleu: BleuScore,
    pub sari: SariScore,
    pub isim: Option<f64>,
    pub embed_f1: Option<f64>,
    pub edit_distance: f64,
}

impl SentReport {
    /// JSON layout: "BLEU" and "SARI" plus component and auxiliary columns.
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.num("BLEU", self.bleu.score)
            .num("BLEU_bp", self.bleu.brevity_penalty)
            .num("BLEU_source", self.source_bleu.score)
            .num("SARI", self.sari.score)
            .num("SARI_add", self.sari.add)
            .num("SARI_del", self.sari.del)
            .num("SARI_keep", self.sari.keep)
            .num("edit_distance", self.edit_distance)
            .int("pairs", self.pairs as u64)
            .int("excluded_identity", self.excluded_identity as u64);
        for (n, p) in self.bleu.precisions.iter().enumerate() {
            if let Some(p) = p {
                r.num(format!("BLEU_p{}", n + 1), *p);
            }
        }
        if let Some(v) = self.isim {
            r.num("iSiM", v);
        }
        if let Some(v) = self.embed_f1 {
            r.num("embed_F1", v);
        }
        r
    }
}

fn prepare(s: &TokenizedSentence, lowercase: bool) -> Vec<String> {
    if lowercase {
        s.folded_tokens()
    } else {
        s.tokens().to_vec()
    }
}

/// Scores outputs against sources and references. The three slices must be
/// line-aligned.
pub fn evaluate_sentence(
    sources: &[TokenizedSentence],
    outputs: &[TokenizedSentence],
    references: &[Vec<TokenizedSentence>],
    resources: SentResources<'_>,
    options: &SentOptions,
) -> Result<SentReport> {
    if sources.len() != outputs.len() || outputs.len() != references.len() {
        return Err(Error::invalid(format!(
            "line counts differ: {} sources, {} outputs, {} reference lists",
            sources.len(),
            outputs.len(),
            references.len()
        )));
    }
    let keep: Vec<usize> = (0..sources.len())
        .filter(|&i| {
            !options.exclude_identity || !references[i].iter().all(|r| r.tokens() == sources[i].tokens())
        })
        .collect();
    let excluded_identity = sources.len() - keep.len();
    if keep.is_empty() {
        return Err(Error::invalid("no sentence pairs left to evaluate"));
    }
    let lc = options.lowercase;
    let src: Vec<Vec<String>> = keep.iter().map(|&i| prepare(&sources[i], lc)).collect();
    let out: Vec<Vec<String>> = keep.iter().map(|&i| prepare(&outputs[i], lc)).collect();
    let refs: Vec<Vec<Vec<String>>> = keep
        .iter()
        .map(|&i| references[i].iter().map(|r| prepare(r, lc)).collect())
        .collect();

    let bleu = corpus_bleu(&out, &refs, options.bleu)?;
    let source_bleu = source_bleu(&src, &out, options.bleu)?;
    let sari = corpus_sari(&src, &out, &refs)?;
    let n = keep.len() as f64;

    let edits = par::map(&keep, |&i| edit_distance(sources[i].raw(), outputs[i].raw()));
    let edit_distance = edits.iter().sum::<usize>() as f64 / n;

    let isim = resources.freq.map(|(freq, stop)| {
        let v = par::map(&out, |o| isim(o, freq, stop));
        v.iter().sum::<f64>() / n
    });
    let embed_f1 = resources.embeddings.map(|table| {
        let idx: Vec<usize> = (0..out.len()).collect();
        let v = par::map(&idx, |&i| {
            refs[i]
                .iter()
                .filter_map(|r| embed_similarity_f1(&out[i], r, table).ok())
                .map(|s| s.f1)
                .fold(0.0, f64::max)
        });
        v.iter().sum::<f64>() / n
    });

    Ok(SentReport {
        pairs: keep.len(),
        excluded_identity,
        bleu,
        source_bleu,
        sari,
        isim,
        embed_f1,
        edit_distance,
    })
}

/// File-level evaluation. When `source_path` is absent the sources come
/// from the reference file.
pub fn evaluate_sentence_files(
    source_path: Option<&Path>,
    output_path: &Path,
    refs_path: &Path,
    resources: SentResources<'_>,
    options: &SentOptions,
) -> Result<SentReport> {
    let pairs: Vec<ParallelPair> = corpus::load_parallel(refs_path)?;
    let outputs = corpus::load_lines(output_path)?;
    let sources: Vec<TokenizedSentence> = match source_path {
        Some(p) => {
            let lines = corpus::load_lines(p)?;
            if lines.len() != pairs.len() {
                return Err(Error::invalid(format!(
                    "{} has {} lines but {} has {} pairs",
                    p.display(),
                    lines.len(),
                    refs_path.display(),
                    pairs.len()
                )));
            }
            lines.iter().map(|l| tokenize(l)).collect()
        }
        None => pairs.iter().map(|p| p.source.clone()).collect(),
    };
    if outputs.len() != pairs.len() {
        return Err(Error::invalid(format!(
            "{} has {} lines but {} has {} pairs",
            output_path.display(),
            outputs.len(),
            refs_path.display(),
            pairs.len()
        )));
    }
    let outputs: Vec<TokenizedSentence> = outputs.iter().map(|l| tokenize(l)).collect();
    let references: Vec<Vec<TokenizedSentence>> = pairs.into_iter().map(|p| p.references).collect();
    evaluate_sentence(&sources, &outputs, &references, resources, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Value;

    fn ts(s: &str) -> TokenizedSentence {
        tokenize(s)
    }

    fn toks(s: &str) -> Vec<String> {
        tokenize(s).tokens().to_vec()
    }

    #[test]
    fn isim_examples() {
        let stop = Stoplist::english();
        let f = FreqLexicon::parse("cat\t99\ndog\t9", "f").unwrap();
        assert_eq!(isim(&toks("the cat"), &f, &stop), 1.0);
        assert_eq!(isim(&toks("zebra ."), &f, &stop), 0.0);
        assert!((isim(&toks("dog"), &f, &stop) - 0.5).abs() < 1e-12);
        assert_eq!(isim(&toks("the ."), &f, &stop), 0.0);
    }

    #[test]
    fn outputs_equal_references() {
        let src = vec![ts("The feline rested."), ts("He departed swiftly.")];
        let out = vec![ts("The cat slept."), ts("He left fast.")];
        let refs: Vec<Vec<_>> = out.iter().map(|o| vec![o.clone()]).collect();
        let table = EmbeddingTable::parse(
            "6 2\nthe 1 0\ncat 0 1\nslept 1 1\nhe 1 2\nleft 2 1\nfast 1 3\n",
            "e",
        )
        .unwrap();
        let res = SentResources {
            freq: None,
            embeddings: Some(&table),
        };
        // the final "." has no vector, so the F1 is 3/4 and 3/4, not 1
        let r = evaluate_sentence(&src, &out, &refs, res, &SentOptions::default()).unwrap();
        assert_eq!(r.bleu.score, 1.0);
        assert_eq!(r.sari.score, 1.0);
        assert!((r.embed_f1.unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn identity_exclusion_counts() {
        let src = vec![ts("a b"), ts("c d"), ts("e f"), ts("g h")];
        let out = src.clone();
        let refs = vec![vec![ts("a b")], vec![ts("c")], vec![ts("e")], vec![ts("g")]];
        let opts = SentOptions {
            exclude_identity: true,
            ..Default::default()
        };
        let r = evaluate_sentence(&src, &out, &refs, SentResources::default(), &opts).unwrap();
        assert_eq!(r.pairs, 3);
        assert_eq!(r.excluded_identity, 1);
        let all = evaluate_sentence(
            &src,
            &out,
            &refs,
            SentResources::default(),
            &SentOptions::default(),
        )
        .unwrap();
        assert_eq!(all.pairs, 4);
    }

    #[test]
    fn report_has_table_columns() {
        let src = vec![ts("a b c")];
        let r = evaluate_sentence(
            &src,
            &src,
            &[vec![ts("a b")]],
            SentResources::default(),
            &SentOptions::default(),
        )
        .unwrap()
        .to_report();
        assert!(r.get("BLEU").is_some() && r.get("SARI").is_some());
        assert!(matches!(r.get("pairs"), Some(Value::Int(1))));
    }
}
