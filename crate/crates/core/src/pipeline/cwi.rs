use std::cmp::Reverse;

use super::Target;
use crate::corpus::{is_word_token, TokenizedSentence};
use crate::error::Result;
use crate::lexres::{ResourceSet, Stoplist};

/// Picks the token most in need of simplification.
///
/// Candidates are word tokens outside the stoplist. The highest CEFR level
/// wins; ties prefer tokens with a VERB reading, then the more frequent
/// token, then the leftmost one. Returns `None` when nothing is eligible or
/// the best level does not exceed `floor`.
pub fn identify_complex_word(
    sentence: &TokenizedSentence,
    resources: &ResourceSet,
    stoplist: &Stoplist,
    floor: u8,
) -> Result<Option<Target>> {
    let cefr = resources.cefr()?;
    let freq = resources.freq()?;
    let morph = resources.morph.as_ref();
    let best = sentence
        .tokens()
        .iter()
        .enumerate()
        .filter(|(_, t)| is_word_token(t) && !stoplist.contains(t))
        .map(|(i, t)| {
            let verb = cefr.has_pos(t, "VERB") || morph.is_some_and(|m| m.has_pos(t, "VERB"));
            ((cefr.level(t), verb, freq.freq(t), Reverse(i)), i)
        })
        .max_by_key(|&(key, _)| key);
    Ok(best.and_then(|((level, ..), i)| {
        (level > floor).then(|| Target {
            index: i,
            word: sentence.tokens()[i].clone(),
        })
    }))
}
