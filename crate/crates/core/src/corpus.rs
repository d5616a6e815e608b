//! Sentences, tokenization, the gold/prediction/parallel file formats and
//! one-to-one sentence alignment.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use serde::Deserialize;
use unicode_normalization::char::is_combining_mark;

use crate::error::{self, Error, Result};
use crate::par;

/// Maximum number of ranked candidates a prediction line may carry.
pub const MAX_PREDICTIONS: usize = 10;

/// Simple Unicode lowercase used for every case-insensitive comparison.
pub fn fold(s: &str) -> String {
    s.to_lowercase()
}

/// A sentence together with its tokens and their byte spans in `raw`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenizedSentence {
    raw: String,
    tokens: Vec<String>,
    offsets: Vec<(usize, usize)>,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_combining_mark(c)
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-' | '\u{2010}')
}

/// A token made of letters (and word-internal marks, apostrophes or
/// hyphens) with at least one letter.
pub fn is_word_token(token: &str) -> bool {
    token.chars().any(char::is_alphabetic)
        && token
            .chars()
            .all(|c| c.is_alphabetic() || is_combining_mark(c) || is_joiner(c))
}

/// Splits `text` into word runs and single-character punctuation tokens.
///
/// A word is a maximal run of letters, digits and combining marks; an
/// apostrophe or hyphen stays inside a word when it sits between two word
/// characters. Any other non-whitespace character is a token on its own.
pub fn tokenize(text: &str) -> TokenizedSentence {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let end_of = |k: usize| chars.get(k).map_or(text.len(), |&(b, _)| b);
    let mut tokens = Vec::new();
    let mut offsets = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (start, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let mut next = k + 1;
        if is_word_char(c) {
            while next < chars.len() {
                let c = chars[next].1;
                if is_word_char(c) {
                    next += 1;
                } else if is_joiner(c) && next + 1 < chars.len() && is_word_char(chars[next + 1].1) {
                    next += 2;
                } else {
                    break;
                }
            }
        }
        let end = end_of(next);
        tokens.push(text[start..end].to_string());
        offsets.push((start, end));
        k = next;
    }
    TokenizedSentence {
        raw: text.to_string(),
        tokens,
        offsets,
    }
}

impl TokenizedSentence {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Byte spans of each token in [`raw`](Self::raw).
    pub fn offsets(&self) -> &[(usize, usize)] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn folded_tokens(&self) -> Vec<String> {
        self.tokens.iter().map(|t| fold(t)).collect()
    }

    /// Position of the first occurrence of `word`'s token sequence,
    /// compared case-insensitively.
    pub fn find(&self, word: &str) -> Option<usize> {
        let needle = tokenize(word).folded_tokens();
        if needle.is_empty() || needle.len() > self.tokens.len() {
            return None;
        }
        let hay = self.folded_tokens();
        hay.windows(needle.len()).position(|w| w == needle.as_slice())
    }

    /// Token sequence with the token at `index` replaced by the tokens of
    /// `replacement`.
    pub fn substituted(&self, index: usize, replacement: &str) -> Vec<String> {
        let mut out = Vec::with_capacity(self.tokens.len() + 1);
        out.extend_from_slice(&self.tokens[..index]);
        out.extend(tokenize(replacement).tokens);
        out.extend_from_slice(&self.tokens[index + 1..]);
        out
    }
}

/// A gold lexical simplification item.
#[derive(Debug, Clone, PartialEq)]
pub struct LexInstance {
    pub sentence: TokenizedSentence,
    pub complex_word: String,
    pub target_index: usize,
    /// One entry per annotator suggestion; duplicates are meaningful.
    pub gold: Vec<String>,
}

impl LexInstance {
    /// Counts of case-folded gold substitutes.
    pub fn gold_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.gold {
            *counts.entry(fold(g)).or_insert(0) += 1;
        }
        counts
    }

    /// Distinct case-folded gold substitutes.
    pub fn gold_set(&self) -> BTreeSet<String> {
        self.gold.iter().map(|g| fold(g)).collect()
    }

    /// The most frequently suggested substitutes (several on ties).
    pub fn gold_modes(&self) -> BTreeSet<String> {
        let counts = self.gold_counts();
        let best = counts.values().copied().max().unwrap_or(0);
        counts
            .into_iter()
            .filter(|&(_, c)| c == best)
            .map(|(g, _)| g)
            .collect()
    }

    pub fn key(&self) -> (String, String) {
        (self.sentence.raw().to_string(), fold(&self.complex_word))
    }
}

/// A system's ranked substitutes for one complex word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionRecord {
    pub sentence: String,
    pub complex_word: String,
    pub candidates: Vec<String>,
}

impl PredictionRecord {
    /// Builds a record, dropping candidates that repeat an earlier one after
    /// case-folding.
    pub fn new(
        sentence: impl Into<String>,
        complex_word: impl Into<String>,
        candidates: Vec<String>,
    ) -> Self {
        let mut seen = HashSet::new();
        let candidates = candidates.into_iter().filter(|c| seen.insert(fold(c))).collect();
        PredictionRecord {
            sentence: sentence.into(),
            complex_word: complex_word.into(),
            candidates,
        }
    }

    pub fn key(&self) -> (String, String) {
        (self.sentence.clone(), fold(&self.complex_word))
    }

    /// One Predictions TSV line, without the trailing newline.
    pub fn to_tsv_line(&self) -> String {
        let mut line = format!("{}\t{}", self.sentence, self.complex_word);
        for c in &self.candidates {
            line.push('\t');
            line.push_str(c);
        }
        line
    }
}

/// A source sentence with one or more reference simplifications.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelPair {
    pub id: String,
    pub source: TokenizedSentence,
    pub references: Vec<TokenizedSentence>,
}

impl ParallelPair {
    /// True when every reference repeats the source token for token.
    pub fn is_identity(&self) -> bool {
        self.references.iter().all(|r| r.tokens() == self.source.tokens())
    }
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split('\t').map(str::trim).collect()
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Parses Gold TSV text: `sentence<TAB>complex_word<TAB>sub_1<TAB>…`.
pub fn parse_lexical_gold(text: &str, origin: &str) -> Result<Vec<LexInstance>> {
    numbered_lines(text)
        .map(|(n, line)| {
            let fields = split_fields(line);
            if fields.len() < 3 {
                return Err(Error::parse(
                    origin,
                    n,
                    format!(
                        "too few fields ({}), expected sentence, complex word and substitutes",
                        fields.len()
                    ),
                ));
            }
            let sentence = tokenize(fields[0]);
            let complex_word = fields[1].to_string();
            let target_index = sentence.find(&complex_word).ok_or_else(|| {
                Error::parse(
                    origin,
                    n,
                    format!("complex word {complex_word:?} not found in sentence"),
                )
            })?;
            let gold: Vec<String> = fields[2..]
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| s.to_string())
                .collect();
            if gold.is_empty() {
                return Err(Error::parse(origin, n, "no gold substitutes"));
            }
            Ok(LexInstance {
                sentence,
                complex_word,
                target_index,
                gold,
            })
        })
        .collect()
}

pub fn load_lexical_gold(path: &Path) -> Result<Vec<LexInstance>> {
    parse_lexical_gold(&error::read_to_string(path)?, &error::origin(path))
}

/// Parses Predictions TSV text: `sentence<TAB>complex_word<TAB>cand_1<TAB>…`.
pub fn parse_predictions(text: &str, origin: &str) -> Result<Vec<PredictionRecord>> {
    numbered_lines(text)
        .map(|(n, line)| {
            let fields = split_fields(line);
            if fields.len() < 2 {
                return Err(Error::parse(
                    origin,
                    n,
                    "too few fields, expected sentence and complex word",
                ));
            }
            let candidates = fields[2..]
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| s.to_string())
                .collect();
            let record = PredictionRecord::new(fields[0], fields[1], candidates);
            if record.candidates.len() > MAX_PREDICTIONS {
                return Err(Error::parse(
                    origin,
                    n,
                    format!(
                        "{} candidates, at most {MAX_PREDICTIONS} allowed",
                        record.candidates.len()
                    ),
                ));
            }
            Ok(record)
        })
        .collect()
}

pub fn load_predictions(path: &Path) -> Result<Vec<PredictionRecord>> {
    parse_predictions(&error::read_to_string(path)?, &error::origin(path))
}

#[derive(Deserialize)]
struct RawPair {
    id: Option<String>,
    source: String,
    references: Vec<String>,
}

/// Parses Parallel JSONL text. Missing ids default to the 1-based line number.
pub fn parse_parallel(text: &str, origin: &str) -> Result<Vec<ParallelPair>> {
    numbered_lines(text)
        .map(|(n, line)| {
            let raw: RawPair =
                serde_json::from_str(line).map_err(|e| Error::parse(origin, n, e.to_string()))?;
            if raw.references.is_empty() {
                return Err(Error::parse(origin, n, "empty references array"));
            }
            Ok(ParallelPair {
                id: raw.id.unwrap_or_else(|| n.to_string()),
                source: tokenize(&raw.source),
                references: raw.references.iter().map(|r| tokenize(r)).collect(),
            })
        })
        .collect()
}

pub fn load_parallel(path: &Path) -> Result<Vec<ParallelPair>> {
    parse_parallel(&error::read_to_string(path)?, &error::origin(path))
}

/// Reads a one-sentence-per-line file. Blank lines are kept as empty
/// sentences so line alignment with other files is preserved.
pub fn load_lines(path: &Path) -> Result<Vec<String>> {
    Ok(error::read_to_string(path)?
        .lines()
        .map(|l| l.trim_end_matches('\r').to_string())
        .collect())
}

/// Similarity band of retained alignments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityBand {
    pub lo: f64,
    pub hi: f64,
}

impl Default for SimilarityBand {
    fn default() -> Self {
        SimilarityBand { lo: 0.3, hi: 0.95 }
    }
}

impl SimilarityBand {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return Err(Error::invalid(format!(
                "similarity band needs 0 <= lo < hi <= 1, got lo={lo} hi={hi}"
            )));
        }
        Ok(SimilarityBand { lo, hi })
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.lo && s <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alignment {
    pub src: usize,
    pub tgt: usize,
    pub similarity: f64,
}

/// Greedy one-to-one sentence alignment.
///
/// Repeatedly takes the unmatched pair of globally maximal similarity (ties
/// on the smaller source index, then the smaller target index), then drops
/// matches outside `band`. Output is sorted by source index.
pub fn align_one_to_one<S, T, F>(src: &[S], tgt: &[T], sim: F, band: SimilarityBand) -> Result<Vec<Alignment>>
where
    S: Sync,
    T: Sync,
    F: Fn(&S, &T) -> f64 + Sync + Send,
{
    let rows = par::map(src, |s| tgt.iter().map(|t| sim(s, t)).collect::<Vec<_>>());
    let mut cells = Vec::with_capacity(src.len() * tgt.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, &s) in row.iter().enumerate() {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::invalid(format!(
                    "similarity of ({i}, {j}) is {s}, expected a value in [0, 1]"
                )));
            }
            cells.push(Alignment {
                src: i,
                tgt: j,
                similarity: s,
            });
        }
    }
    cells.sort_by(|a, b| {
        b.similarity
            .total_cmp(&a.similarity)
            .then(a.src.cmp(&b.src))
            .then(a.tgt.cmp(&b.tgt))
    });
    let mut src_used = vec![false; src.len()];
    let mut tgt_used = vec![false; tgt.len()];
    let mut out = Vec::new();
    for cell in cells {
        if src_used[cell.src] || tgt_used[cell.tgt] {
            continue;
        }
        src_used[cell.src] = true;
        tgt_used[cell.tgt] = true;
        if band.contains(cell.similarity) {
            out.push(cell);
        }
    }
    out.sort_by_key(|a| a.src);
    Ok(out)
}

/// Dice coefficient of the case-folded token sets of two sentences.
pub fn token_dice(a: &TokenizedSentence, b: &TokenizedSentence) -> f64 {
    let a: HashSet<String> = a.folded_tokens().into_iter().collect();
    let b: HashSet<String> = b.folded_tokens().into_iter().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let shared = a.intersection(&b).count();
    2.0 * shared as f64 / (a.len() + b.len()) as f64
}
