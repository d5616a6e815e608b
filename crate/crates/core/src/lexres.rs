//! Lexical resources: word frequencies, CEFR levels, morphological
//! analyses and word-embedding tables.
//!
//! Every lookup case-folds its key. Out-of-vocabulary words get frequency 0,
//! CEFR level 6 and no morphological analyses.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::{Path, PathBuf};

use crate::corpus::fold;
use crate::error::{self, Error, Result};
use crate::par;

/// Lowest (easiest, A1) and highest (hardest, C2) CEFR level.
pub const CEFR_MIN: u8 = 1;
pub const CEFR_MAX: u8 = 6;

#[derive(Debug, Clone, Default)]
pub struct FreqLexicon {
    counts: HashMap<String, u64>,
    max: u64,
}

impl FreqLexicon {
    pub fn from_counts<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<str>,
    {
        let mut lex = FreqLexicon::default();
        for (form, count) in entries {
            lex.insert(form.as_ref(), count);
        }
        lex
    }

    fn insert(&mut self, form: &str, count: u64) {
        let slot = self.counts.entry(fold(form)).or_insert(0);
        *slot += count;
        self.max = self.max.max(*slot);
    }

    /// `form<TAB>count` rows. Forms that collide after case-folding are summed.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lex = FreqLexicon::default();
        lex.counts.reserve(text.len() / 12);
        for (n, line) in data_lines(text) {
            let (form, count) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n, "expected form<TAB>count"))?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| Error::parse(origin, n, format!("bad count {:?}", count.trim())))?;
            lex.insert(form.trim(), count);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }

    pub fn freq(&self, form: &str) -> u64 {
        self.counts.get(&fold(form)).copied().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// CEFR difficulty levels keyed by form and coarse POS.
#[derive(Debug, Clone, Default)]
pub struct CefrLexicon {
    by_pos: HashMap<(String, String), u8>,
    by_form: HashMap<String, u8>,
}

impl CefrLexicon {
    /// `form<TAB>UPOS<TAB>level` rows.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lex = CefrLexicon::default();
        for (n, line) in data_lines(text) {
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [form, pos, level] = fields[..] else {
                return Err(Error::parse(origin, n, "expected form<TAB>UPOS<TAB>level"));
            };
            let level: u8 = level
                .parse()
                .ok()
                .filter(|l| (CEFR_MIN..=CEFR_MAX).contains(l))
                .ok_or_else(|| Error::parse(origin, n, format!("level {level:?} out of range 1..6")))?;
            lex.insert(form, pos, level).map_err(|prev| {
                Error::parse(
                    origin,
                    n,
                    format!("{form}/{pos} has conflicting levels {prev} and {level}"),
                )
            })?;
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }

    /// Adds an entry. Returns the previous level if it conflicts.
    pub fn insert(&mut self, form: &str, pos: &str, level: u8) -> std::result::Result<(), u8> {
        assert!((CEFR_MIN..=CEFR_MAX).contains(&level), "CEFR level out of range");
        let form = fold(form);
        match self.by_pos.insert((form.clone(), pos.to_string()), level) {
            Some(prev) if prev != level => return Err(prev),
            _ => {}
        }
        let slot = self.by_form.entry(form).or_insert(level);
        *slot = (*slot).min(level);
        Ok(())
    }

    /// Minimum level across POS, `None` when unknown.
    pub fn lookup(&self, form: &str) -> Option<u8> {
        self.by_form.get(&fold(form)).copied()
    }

    pub fn lookup_pos(&self, form: &str, pos: &str) -> Option<u8> {
        self.by_pos.get(&(fold(form), pos.to_string())).copied()
    }

    /// Level with the out-of-vocabulary default (6).
    pub fn level(&self, form: &str) -> u8 {
        self.lookup(form).unwrap_or(CEFR_MAX)
    }

    pub fn has_pos(&self, form: &str, pos: &str) -> bool {
        self.by_pos.contains_key(&(fold(form), pos.to_string()))
    }
}

/// One morphological analysis of a word form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Analysis {
    pub lemma: String,
    pub pos: String,
    pub feats: BTreeMap<String, String>,
}

impl Analysis {
    pub fn new(lemma: &str, pos: &str, feats: &[(&str, &str)]) -> Self {
        Analysis {
            lemma: fold(lemma),
            pos: pos.to_string(),
            feats: feats
                .iter()
                .map(|&(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }
}

fn parse_feats(s: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut feats = BTreeMap::new();
    if s == "_" || s.is_empty() {
        return Ok(feats);
    }
    for kv in s.split('|') {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("feature {kv:?} is not Key=Val"))?;
        if feats.insert(k.to_string(), v.to_string()).is_some() {
            return Err(format!("duplicate feature key {k:?}"));
        }
    }
    Ok(feats)
}

#[derive(Debug, Clone, Default)]
pub struct MorphLexicon {
    analyses: HashMap<String, Vec<Analysis>>,
    forms_by_lemma: HashMap<String, BTreeSet<String>>,
}

impl MorphLexicon {
    /// `form<TAB>lemma<TAB>UPOS<TAB>feats` rows, several rows per form allowed.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lex = MorphLexicon::default();
        for (n, line) in data_lines(text) {
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [form, lemma, pos, feats] = fields[..] else {
                return Err(Error::parse(
                    origin,
                    n,
                    "expected form<TAB>lemma<TAB>UPOS<TAB>feats",
                ));
            };
            let feats = parse_feats(feats).map_err(|m| Error::parse(origin, n, m))?;
            lex.insert(
                form,
                Analysis {
                    lemma: fold(lemma),
                    pos: pos.to_string(),
                    feats,
                },
            );
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }

    pub fn insert(&mut self, form: &str, analysis: Analysis) {
        let form = fold(form);
        self.forms_by_lemma
            .entry(analysis.lemma.clone())
            .or_default()
            .insert(form.clone());
        let list = self.analyses.entry(form).or_default();
        if !list.contains(&analysis) {
            list.push(analysis);
        }
    }

    pub fn analyses(&self, form: &str) -> &[Analysis] {
        self.analyses.get(&fold(form)).map_or(&[], Vec::as_slice)
    }

    pub fn has_pos(&self, form: &str, pos: &str) -> bool {
        self.analyses(form).iter().any(|a| a.pos == pos)
    }

    /// Every form sharing at least one lemma with `form`; `{form}` when unknown.
    pub fn lemma_forms(&self, form: &str) -> BTreeSet<String> {
        let folded = fold(form);
        let mut out = BTreeSet::new();
        for a in self.analyses(&folded) {
            if let Some(forms) = self.forms_by_lemma.get(&a.lemma) {
                out.extend(forms.iter().cloned());
            }
        }
        out.insert(folded);
        out
    }
}

/// Cosine similarity. Fails on mismatched dimensions or a zero vector.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::invalid(format!(
            "cosine of vectors with dimensions {} and {}",
            u.len(),
            v.len()
        )));
    }
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::invalid("cosine similarity of a zero vector is undefined"));
    }
    Ok((dot(u, v) / (nu * nv)).clamp(-1.0, 1.0))
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// Parses whitespace-separated vector components, rejecting non-finite ones.
pub(crate) fn parse_vector<'a>(
    parts: impl Iterator<Item = &'a str>,
) -> std::result::Result<Vec<f64>, String> {
    parts
        .map(|p| match p.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            Ok(_) => Err(format!("non-finite component {p:?}")),
            Err(_) => Err(format!("bad number {p:?}")),
        })
        .collect()
}

/// Dense word vectors of a fixed dimension.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
    data: Vec<f64>,
    norms: Vec<f64>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "embedding dimension must be positive");
        EmbeddingTable {
            dim,
            words: Vec::new(),
            index: HashMap::new(),
            data: Vec::new(),
            norms: Vec::new(),
        }
    }

    /// Adds a vector. A form already present (after case-folding) keeps its
    /// first vector and `false` is returned.
    pub fn insert(&mut self, form: &str, vector: &[f64]) -> Result<bool> {
        if vector.len() != self.dim {
            return Err(Error::invalid(format!(
                "vector for {form:?} has {} components, table dimension is {}",
                vector.len(),
                self.dim
            )));
        }
        if vector.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid(format!(
                "vector for {form:?} has non-finite components"
            )));
        }
        let form = fold(form);
        if self.index.contains_key(&form) {
            return Ok(false);
        }
        self.index.insert(form.clone(), self.words.len());
        self.words.push(form);
        self.data.extend_from_slice(vector);
        self.norms.push(norm(vector));
        Ok(true)
    }

    /// Text word-vector format: a `count dim` header, then `form v1 … vd` rows.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(origin, 1, "missing `count dim` header"))?;
        let header: Vec<usize> = header
            .split_whitespace()
            .map(|x| {
                x.parse()
                    .map_err(|_| Error::parse(origin, 1, "bad `count dim` header"))
            })
            .collect::<Result<_>>()?;
        let [count, dim] = header[..] else {
            return Err(Error::parse(origin, 1, "header must be `count dim`"));
        };
        if dim == 0 {
            return Err(Error::parse(origin, 1, "dimension must be positive"));
        }
        let mut table = EmbeddingTable::new(dim);
        let mut rows = 0;
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let form = parts.next().unwrap_or_default();
            let vector = parse_vector(parts).map_err(|m| Error::parse(origin, n, m))?;
            if vector.len() != dim {
                return Err(Error::parse(
                    origin,
                    n,
                    format!("{} components, header declares dimension {dim}", vector.len()),
                ));
            }
            table
                .insert(form, &vector)
                .map_err(|e| Error::parse(origin, n, e.to_string()))?;
            rows += 1;
        }
        if rows != count {
            return Err(Error::parse(
                origin,
                1,
                format!("header declares {count} rows, found {rows}"),
            ));
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&error::read_to_string(path)?, &error::origin(path))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, form: &str) -> Option<&[f64]> {
        self.index.get(&fold(form)).map(|&i| self.row(i))
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Cosine between two words; `None` when either is missing or zero.
    pub fn similarity(&self, a: &str, b: &str) -> Option<f64> {
        let ia = *self.index.get(&fold(a))?;
        let ib = *self.index.get(&fold(b))?;
        let (na, nb) = (self.norms[ia], self.norms[ib]);
        if na == 0.0 || nb == 0.0 {
            return None;
        }
        Some((dot(self.row(ia), self.row(ib)) / (na * nb)).clamp(-1.0, 1.0))
    }

    /// The `k` words closest to `form` by cosine, best first, skipping `form`
    /// itself and zero vectors. Ties keep table order.
    pub fn nearest(&self, form: &str, k: usize) -> Vec<(String, f64)> {
        let Some(&q) = self.index.get(&fold(form)) else {
            return Vec::new();
        };
        if self.norms[q] == 0.0 {
            return Vec::new();
        }
        let query = self.row(q);
        let qn = self.norms[q];
        let sims = par::map_range(self.words.len(), |i| {
            if i == q || self.norms[i] == 0.0 {
                None
            } else {
                Some(dot(query, self.row(i)) / (qn * self.norms[i]))
            }
        });
        let mut scored: Vec<(usize, f64)> = sims
            .into_iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|s| (i, s)))
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        scored
            .into_iter()
            .take(k)
            .map(|(i, s)| (self.words[i].clone(), s))
            .collect()
    }

    /// Applies `f` to every vector, e.g. a rotation.
    pub fn map_vectors(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let mut out = EmbeddingTable::new(self.dim);
        for (i, w) in self.words.iter().enumerate() {
            out.insert(w, &f(self.row(i)))?;
        }
        Ok(out)
    }
}

/// Case-folded function words excluded from complexity scoring.
#[derive(Debug, Clone, Default)]
pub struct Stoplist(HashSet<String>);

const ENGLISH_STOPWORDS: &str = "a about above after again against all am an and any are as at be because been \
before being below between both but by can could did do does doing down during each few for from further had \
has have having he her here hers herself him himself his how i if in into is it its itself just me more most my \
myself no nor not now of off on once only or other our ours ourselves out over own same she should so some such \
than that the their theirs them themselves then there these they this those through to too under until up very \
was we were what when where which while who whom why will with would you your yours yourself yourselves";

impl Stoplist {
    pub fn english() -> Self {
        ENGLISH_STOPWORDS.split_whitespace().collect()
    }

    /// One word per line; `#` starts a comment line.
    pub fn parse(text: &str) -> Self {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(Self::parse(&error::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(&fold(word))
    }
}

impl<'a> FromIterator<&'a str> for Stoplist {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        Stoplist(iter.into_iter().map(fold).collect())
    }
}

/// Loaded resources. Absent members make dependent stages fail with
/// [`Error::MissingResource`].
#[derive(Debug, Clone, Default)]
pub struct ResourceSet {
    pub freq: Option<FreqLexicon>,
    pub cefr: Option<CefrLexicon>,
    pub morph: Option<MorphLexicon>,
    pub embeddings: Option<EmbeddingTable>,
}

#[derive(Debug, Clone, Default)]
pub struct ResourcePaths {
    pub freq: Option<PathBuf>,
    pub cefr: Option<PathBuf>,
    pub morph: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
}

impl ResourcePaths {
    /// Conventional file names inside a resource directory; files that do
    /// not exist are left unset.
    pub fn from_dir(dir: &Path) -> Self {
        let pick = |name: &str| Some(dir.join(name)).filter(|p| p.is_file());
        ResourcePaths {
            freq: pick(FREQ_FILE),
            cefr: pick(CEFR_FILE),
            morph: pick(MORPH_FILE),
            embeddings: pick(EMBEDDINGS_FILE),
        }
    }
}

pub const FREQ_FILE: &str = "freq.tsv";
pub const CEFR_FILE: &str = "cefr.tsv";
pub const MORPH_FILE: &str = "morph.tsv";
pub const EMBEDDINGS_FILE: &str = "embeddings.vec";

pub fn load_resources(paths: &ResourcePaths) -> Result<ResourceSet> {
    Ok(ResourceSet {
        freq: paths.freq.as_deref().map(FreqLexicon::load).transpose()?,
        cefr: paths.cefr.as_deref().map(CefrLexicon::load).transpose()?,
        morph: paths.morph.as_deref().map(MorphLexicon::load).transpose()?,
        embeddings: paths
            .embeddings
            .as_deref()
            .map(EmbeddingTable::load)
            .transpose()?,
    })
}

impl ResourceSet {
    pub fn freq(&self) -> Result<&FreqLexicon> {
        self.freq
            .as_ref()
            .ok_or_else(|| Error::MissingResource(format!("frequency lexicon ({FREQ_FILE})")))
    }

    pub fn cefr(&self) -> Result<&CefrLexicon> {
        self.cefr
            .as_ref()
            .ok_or_else(|| Error::MissingResource(format!("CEFR lexicon ({CEFR_FILE})")))
    }

    pub fn morph(&self) -> Result<&MorphLexicon> {
        self.morph
            .as_ref()
            .ok_or_else(|| Error::MissingResource(format!("morphological lexicon ({MORPH_FILE})")))
    }

    pub fn embeddings(&self) -> Result<&EmbeddingTable> {
        self.embeddings
            .as_ref()
            .ok_or_else(|| Error::MissingResource(format!("embedding table ({EMBEDDINGS_FILE})")))
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn freq_lookup() {
        let f = FreqLexicon::parse("the\t1000\ncat\t50", "f").unwrap();
        assert_eq!(f.freq("the"), 1000);
        assert_eq!(f.freq("The"), 1000);
        assert_eq!(f.freq("dog"), 0);
        assert_eq!(f.max(), 1000);
        assert!(FreqLexicon::parse("the\t-3", "f").is_err());
        assert!(FreqLexicon::parse("the 3", "f").is_err());
    }

    #[test]
    fn cefr_rows() {
        match CefrLexicon::parse("risk\tNOUN\t3\nmitigate\tVERB\t7", "c") {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(CefrLexicon::parse("left\tVERB\t2\nleft\tVERB\t3", "c").is_err());
        let c = CefrLexicon::parse("left\tVERB\t2\nleft\tVERB\t2\nleft\tADJ\t1", "c").unwrap();
        assert_eq!(c.lookup("Left"), Some(1));
        assert_eq!(c.lookup_pos("left", "VERB"), Some(2));
        assert_eq!(c.level("unknown"), CEFR_MAX);
    }

    #[test]
    fn embedding_dimension_checks() {
        assert!(EmbeddingTable::parse("1 3\nx 1 2", "e").is_err());
        assert!(EmbeddingTable::parse("2 2\nx 1 2", "e").is_err());
        assert!(EmbeddingTable::parse("1 2\nx 1 NaN", "e").is_err());
        let t = EmbeddingTable::parse("2 2\nx 1 0\nY 0 1\n", "e").unwrap();
        assert_eq!(t.get("y"), Some(&[0.0, 1.0][..]));
        assert_eq!(t.similarity("x", "y"), Some(0.0));
    }

    #[test]
    fn cosine_examples() {
        let u = [0.3, -1.2, 4.0];
        assert!((cosine(&u, &u).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert!((cosine(&[1.0, 0.0], &[1.0, 1.0]).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(cosine(&[0.0, 0.0], &[1.0, 1.0]).is_err());
        assert!(cosine(&[1.0], &[1.0, 1.0]).is_err());
    }

    fn run_family() -> MorphLexicon {
        MorphLexicon::parse(
            "ran\trun\tVERB\tTense=Past\n\
             runs\trun\tVERB\tNumber=Sing|Person=3|Tense=Pres\n\
             running\trun\tVERB\tVerbForm=Ger\n\
             left\tleave\tVERB\tTense=Past\n\
             left\tleft\tADJ\t_\n\
             leave\tleave\tVERB\tTense=Pres\n\
             leaves\tleaf\tNOUN\tNumber=Plur\n\
             leaves\tleave\tVERB\tNumber=Sing|Person=3|Tense=Pres\n\
             lefter\tleft\tADJ\tDegree=Cmp\n",
            "m",
        )
        .unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn lemma_forms_examples() {
        let m = run_family();
        assert_eq!(m.lemma_forms("ran"), set(&["ran", "runs", "running"]));
        assert_eq!(m.lemma_forms("zzz"), set(&["zzz"]));
        // leave family {left, leave, leaves} united with left(ADJ) family {left, lefter}
        assert_eq!(m.lemma_forms("left"), set(&["leave", "leaves", "left", "lefter"]));
    }

    #[test]
    fn morph_feature_errors() {
        assert!(MorphLexicon::parse("x\tx\tNOUN\tNumber", "m").is_err());
        assert!(MorphLexicon::parse("x\tx\tNOUN\tA=1|A=2", "m").is_err());
        assert!(MorphLexicon::parse("x\tx\tNOUN", "m").is_err());
    }

    #[test]
    fn missing_resources_are_reported() {
        let r = ResourceSet::default();
        assert!(matches!(r.cefr(), Err(Error::MissingResource(_))));
        assert!(matches!(r.embeddings(), Err(Error::MissingResource(_))));
    }

    #[test]
    fn nearest_neighbours() {
        let t = EmbeddingTable::parse("4 2\nq 1 0\na 1 0.1\nb 0 1\nc 1 0.1\n", "e").unwrap();
        let n: Vec<String> = t.nearest("q", 2).into_iter().map(|(w, _)| w).collect();
        assert_eq!(n, ["a", "c"]);
        assert!(t.nearest("zzz", 2).is_empty());
    }

    proptest! {
        #[test]
        fn cosine_symmetric_and_scale_invariant(
            u in proptest::collection::vec(-5.0f64..5.0, 4),
            v in proptest::collection::vec(-5.0f64..5.0, 4),
            alpha in 0.01f64..100.0,
        ) {
            prop_assume!(norm(&u) > 1e-3 && norm(&v) > 1e-3);
            let c = cosine(&u, &v).unwrap();
            prop_assert!((c - cosine(&v, &u).unwrap()).abs() < 1e-12);
            let scaled: Vec<f64> = u.iter().map(|x| x * alpha).collect();
            prop_assert!((c - cosine(&scaled, &v).unwrap()).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(&c));
        }

        #[test]
        fn lemma_forms_reflexive_and_symmetric(a in 0usize..9, b in 0usize..9) {
            let m = run_family();
            let forms = ["ran", "runs", "running", "left", "leave", "leaves", "lefter", "ran", "left"];
            let (fa, fb) = (forms[a], forms[b]);
            prop_assert!(m.lemma_forms(fa).contains(fa));
            prop_assert_eq!(m.lemma_forms(fa).contains(fb), m.lemma_forms(fb).contains(fa));
        }

        #[test]
        fn freq_lookup_total(w in "\\PC{0,12}") {
            let f = FreqLexicon::parse("the\t10", "f").unwrap();
            let _ = f.freq(&w);
        }
    }
}
