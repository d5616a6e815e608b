//! SARI: keep, addition and deletion n-gram scores of an output measured
//! against both its input and its references.
//!
//! Per order n the n-grams of input I, output O and each reference are taken
//! as sets. rho(g) is the fraction of references containing g.
//!
//! * keep: P = sum_{I&O} rho / |I&O|, R = sum_{I&O} rho / sum_I rho, F1 of both
//! * deletion: P = sum_{I-O} (1 - rho) / |I-O|, precision only
//! * addition: P = |(O-I) & refs| / |O-I|, R = |(O-I) & refs| / |refs - I|, F1
//!
//! An empty ratio 0/0 counts as 1. The sentence score is the mean over
//! orders of (F_keep + F_add + P_del) / 3.

use super::{count_of, ngram_counts, Interner};
use crate::error::{Error, Result};
use crate::par;

pub const SARI_ORDER: usize = 4;

/// Keep, addition and deletion parts, averaged over n-gram orders.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SariScore {
    pub score: f64,
    pub keep: f64,
    pub add: f64,
    pub del: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        1.0
    } else {
        num / den
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn order_components(source: &[u32], output: &[u32], refs: &[Vec<u32>], n: usize) -> (f64, f64, f64) {
    let input = ngram_counts(source, n);
    let out = ngram_counts(output, n);
    // Each reference contributes its distinct n-grams once.
    let mut pooled: Vec<&[u32]> = refs
        .iter()
        .flat_map(|r| ngram_counts(r, n).into_iter().map(|(g, _)| g))
        .collect();
    pooled.sort_unstable();
    let mut ref_count: Vec<(&[u32], usize)> = Vec::new();
    for g in pooled {
        match ref_count.last_mut() {
            Some((last, c)) if *last == g => *c += 1,
            _ => ref_count.push((g, 1)),
        }
    }
    let m = refs.len() as f64;
    let count = |g: &[u32]| count_of(&ref_count, g);
    let in_input = |g: &[u32]| count_of(&input, g) > 0;
    let in_output = |g: &[u32]| count_of(&out, g) > 0;

    // Sums of reference counts stay integral, so rho scaling is exact.
    let mut kept = 0usize;
    let mut kept_rho = 0usize;
    let mut deleted = 0usize;
    let mut deleted_rho = 0usize;
    let mut input_rho = 0usize;
    for &(g, _) in &input {
        let c = count(g);
        input_rho += c;
        if in_output(g) {
            kept += 1;
            kept_rho += c;
        } else {
            deleted += 1;
            deleted_rho += c;
        }
    }
    let keep_p = ratio(kept_rho as f64, m * kept as f64);
    let keep_r = ratio(kept_rho as f64, input_rho as f64);
    let del_p = ratio(m * deleted as f64 - deleted_rho as f64, m * deleted as f64);

    let added = out.iter().filter(|(g, _)| !in_input(g)).count();
    let added_good = out.iter().filter(|(g, _)| !in_input(g) && count(g) > 0).count();
    let ref_new = ref_count.iter().filter(|(g, _)| !in_input(g)).count();
    let add_p = ratio(added_good as f64, added as f64);
    let add_r = ratio(added_good as f64, ref_new as f64);

    (harmonic(keep_p, keep_r), harmonic(add_p, add_r), del_p)
}

/// SARI of one output sentence.
pub fn sentence_sari(source: &[String], output: &[String], refs: &[Vec<String>]) -> Result<SariScore> {
    if refs.is_empty() {
        return Err(Error::invalid("SARI needs at least one reference"));
    }
    let mut interner = Interner::default();
    let source = interner.ids(source);
    let output = interner.ids(output);
    let refs: Vec<Vec<u32>> = refs.iter().map(|r| interner.ids(r)).collect();
    let mut acc = SariScore::default();
    for n in 1..=SARI_ORDER {
        let (keep, add, del) = order_components(&source, &output, &refs, n);
        acc.keep += keep;
        acc.add += add;
        acc.del += del;
    }
    let k = SARI_ORDER as f64;
    acc.keep /= k;
    acc.add /= k;
    acc.del /= k;
    acc.score = (acc.keep + acc.add + acc.del) / 3.0;
    Ok(acc)
}

/// Corpus SARI: the mean of sentence scores, summed in line order.
pub fn corpus_sari(
    sources: &[Vec<String>],
    outputs: &[Vec<String>],
    references: &[Vec<Vec<String>>],
) -> Result<SariScore> {
    if outputs.is_empty() {
        return Err(Error::invalid("SARI of an empty corpus"));
    }
    if sources.len() != outputs.len() || outputs.len() != references.len() {
        return Err(Error::invalid(format!(
            "SARI inputs differ in length: {} sources, {} outputs, {} reference lists",
            sources.len(),
            outputs.len(),
            references.len()
        )));
    }
    let idx: Vec<usize> = (0..outputs.len()).collect();
    let scores = par::try_map(&idx, |&i| sentence_sari(&sources[i], &outputs[i], &references[i]))?;
    let mut total = SariScore::default();
    for s in &scores {
        total.score += s.score;
        total.keep += s.keep;
        total.add += s.add;
        total.del += s.del;
    }
    let n = scores.len() as f64;
    Ok(SariScore {
        score: total.score / n,
        keep: total.keep / n,
        add: total.add / n,
        del: total.del / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn hand_cases() {
        let s = sentence_sari(&t("the big cat"), &t("the large cat"), &[t("the large cat")]).unwrap();
        assert_eq!(s.score, 1.0);
        let s = sentence_sari(&t("the big cat"), &t("the big cat"), &[t("the big cat")]).unwrap();
        assert_eq!(s.score, 1.0);
        // unigrams (0.8 + 0 + 1)/3, bi- and trigrams 1/3, 4-grams vacuous
        let s = sentence_sari(&t("the big cat"), &t("the big cat"), &[t("the large cat")]).unwrap();
        assert!((s.score - 0.56667).abs() < 1e-4);
        assert!((s.score - (0.6 + 1.0 / 3.0 + 1.0 / 3.0 + 1.0) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn duplicated_references_do_not_change_score() {
        let src = t("a b c d e");
        let out = t("a x c e");
        let one = [t("a y c d")];
        let many = vec![t("a y c d"); 10];
        assert_eq!(
            sentence_sari(&src, &out, &one).unwrap(),
            sentence_sari(&src, &out, &many).unwrap()
        );
    }

    #[test]
    fn errors() {
        assert!(sentence_sari(&t("a"), &t("a"), &[]).is_err());
        assert!(corpus_sari(&[], &[], &[]).is_err());
        assert!(corpus_sari(&[t("a")], &[t("a"), t("b")], &[vec![t("a")]]).is_err());
    }
}
