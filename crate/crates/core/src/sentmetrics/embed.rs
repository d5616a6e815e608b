use crate::error::{Error, Result};
use crate::lexres::EmbeddingTable;

/// Greedy-matching precision, recall and F1 between two token sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityF1 {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Recall averages, over tokens of `a`, the best cosine against any token of
/// `b`; precision does the same from `b`'s side. Tokens missing from the
/// table (or with zero vectors) match at 0. F1 is 0 unless both are positive.
pub fn embed_similarity_f1(a: &[String], b: &[String], table: &EmbeddingTable) -> Result<SimilarityF1> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("embedding similarity of an empty token sequence"));
    }
    let sims: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| table.similarity(x, y).unwrap_or(0.0)).collect())
        .collect();
    let recall = sims
        .iter()
        .map(|row| row.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .sum::<f64>()
        / a.len() as f64;
    let precision = (0..b.len())
        .map(|j| sims.iter().map(|row| row[j]).fold(f64::NEG_INFINITY, f64::max))
        .sum::<f64>()
        / b.len() as f64;
    let f1 = if precision > 0.0 && recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(SimilarityF1 {
        precision,
        recall,
        f1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn table() -> EmbeddingTable {
        EmbeddingTable::parse("5 3\nx 1 0 0\ny 0 1 0\nz 1 1 0\nu 0 0 1\nv 1 0 1\n", "e").unwrap()
    }

    #[test]
    fn self_match() {
        let r = embed_similarity_f1(&t("x y u"), &t("x y u"), &table()).unwrap();
        assert_eq!((r.precision, r.recall, r.f1), (1.0, 1.0, 1.0));
    }

    #[test]
    fn swap_exchanges_precision_and_recall() {
        let tab = table();
        let ab = embed_similarity_f1(&t("x y u"), &t("z v"), &tab).unwrap();
        let ba = embed_similarity_f1(&t("z v"), &t("x y u"), &tab).unwrap();
        assert_eq!(ab.precision, ba.recall);
        assert_eq!(ab.recall, ba.precision);
        assert!((ab.f1 - ba.f1).abs() < 1e-15);
    }

    #[test]
    fn three_by_two_against_max_per_row() {
        // cos(x,z)=cos(x,v)=cos(y,z)=cos(u,v)=1/sqrt2, cos(y,v)=cos(u,z)=0
        let r = embed_similarity_f1(&t("x y u"), &t("z v"), &table()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.recall - h).abs() < 1e-12);
        assert!((r.precision - h).abs() < 1e-12);
        // missing token matches at 0
        let r = embed_similarity_f1(&t("x qq"), &t("x"), &table()).unwrap();
        assert_eq!(r.recall, 0.5);
        assert_eq!(r.precision, 1.0);
        assert!(embed_similarity_f1(&[], &t("x"), &table()).is_err());
    }
}
