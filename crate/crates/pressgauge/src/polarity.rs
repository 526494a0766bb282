//! Polarity scoring: per-token lexicon scores folded along a pattern into
//! one score per dimension.
//!
//! The fold uses [`combine`], a bounded, commutative merge on `[-1,+1]`:
//! zero is the identity, same-sign scores reinforce without leaving the
//! range (`sign(a) * min(1, |a| + |b|*(1-|a|))`), and opposite signs add
//! with clamping. Scores fold in a fixed order — term tokens in span order,
//! then members by (distance, token index) — so results are deterministic
//! even where the opposite-sign branch is non-associative. Intensifier
//! members then scale the magnitude, and each negator member applies one
//! damped sign flip.

use crate::corpus::Sentence;
use crate::lexicon::{token_polarity, Dimension, LexiconBundle};
use crate::pattern::Pattern;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PolarityError {
    #[error("polarity {value} outside [-1,+1]")]
    OutOfRange { value: f64 },
}

/// Tunable propagation constants.
///
/// `intensifier_factor` scales magnitude per intensifier occurrence (capped
/// at 1). `negation_factor` damps each sign flip: flipping without damping
/// would overstate reversed polarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationParams {
    pub intensifier_factor: f64,
    pub negation_factor: f64,
}

pub const DEFAULT_INTENSIFIER_FACTOR: f64 = 1.5;
pub const DEFAULT_NEGATION_FACTOR: f64 = 0.75;

impl Default for PropagationParams {
    fn default() -> Self {
        PropagationParams {
            intensifier_factor: DEFAULT_INTENSIFIER_FACTOR,
            negation_factor: DEFAULT_NEGATION_FACTOR,
        }
    }
}

/// A seven-dimensional polarity score; every component lies in `[-1,+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PolarityVector {
    values: [f64; 7],
}

impl PolarityVector {
    pub fn zero() -> Self {
        PolarityVector::default()
    }

    pub fn get(&self, dimension: Dimension) -> f64 {
        self.values[Self::slot(dimension)]
    }

    pub fn set(&mut self, dimension: Dimension, value: f64) {
        self.values[Self::slot(dimension)] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// Components paired with their dimensions, in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (Dimension, f64)> + '_ {
        Dimension::ALL.iter().map(move |d| (*d, self.get(*d)))
    }

    fn slot(dimension: Dimension) -> usize {
        Dimension::ALL.iter().position(|d| *d == dimension).unwrap()
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn combine_unchecked(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    if b == 0.0 {
        return a;
    }
    if sign(a) == sign(b) {
        sign(a) * (a.abs() + b.abs() * (1.0 - a.abs())).min(1.0)
    } else {
        (a + b).clamp(-1.0, 1.0)
    }
}

/// Merges two polarity scores. Zero is the identity; the result never
/// leaves `[-1,+1]`. Errors if either input is outside the range.
pub fn combine(a: f64, b: f64) -> Result<f64, PolarityError> {
    for value in [a, b] {
        if !(-1.0..=1.0).contains(&value) {
            return Err(PolarityError::OutOfRange { value });
        }
    }
    Ok(combine_unchecked(a, b))
}

/// One intensifier application: scales magnitude, never changes sign,
/// never exceeds 1.
pub fn apply_intensifier(s: f64, factor: f64) -> f64 {
    sign(s) * (factor * s.abs()).min(1.0)
}

/// One negation application: a damped sign flip. Applying it twice leaves
/// the original sign at `factor^2` of the magnitude.
pub fn apply_negation(s: f64, factor: f64) -> f64 {
    -sign(s) * (factor * s.abs()).min(1.0)
}

/// Propagates lexicon scores through a pattern onto its term, for one
/// dimension.
///
/// Term-token scores fold first (span order), then member scores by
/// (distance, token index). Tokens on the negator list contribute no direct
/// lexicon score; they act only through the flip. Each intensifier occurrence
/// then scales the result, and each negator applies one damped flip.
pub fn propagate(
    pattern: &Pattern,
    sentence: &Sentence,
    bundle: &LexiconBundle,
    dimension: Dimension,
    params: &PropagationParams,
) -> f64 {
    let score_of = |token_index: usize| -> f64 {
        let Some(tok) = sentence.token(token_index) else {
            return 0.0;
        };
        if bundle.modifiers.negators.contains(&tok.lemma) {
            return 0.0;
        }
        token_polarity(bundle, &tok.lemma, dimension)
    };

    let mut s = 0.0;
    for idx in pattern.toi.token_indices() {
        s = combine_unchecked(s, score_of(idx));
    }
    for member in &pattern.members {
        s = combine_unchecked(s, score_of(member.token_index));
    }
    for _ in &pattern.intensifier_lemmas {
        s = apply_intensifier(s, params.intensifier_factor);
    }
    for _ in 0..pattern.negator_count {
        s = apply_negation(s, params.negation_factor);
    }
    s
}

/// [`propagate`] across all seven dimensions.
pub fn score_pattern(
    pattern: &Pattern,
    sentence: &Sentence,
    bundle: &LexiconBundle,
    params: &PropagationParams,
) -> PolarityVector {
    let mut v = PolarityVector::zero();
    for dimension in Dimension::ALL {
        v.set(dimension, propagate(pattern, sentence, bundle, dimension, params));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Token;
    use crate::lexicon::{
        Gazetteer, ModifierLists, PolarityLexicon, PolaritySet, SimilarityTable, ToiLexicon,
    };
    use crate::pattern::find_toi_occurrences;

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-12, "{a} != {b}");
    }

    #[test]
    fn zero_is_the_identity() {
        for x in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            close(combine(0.0, x).unwrap(), x);
            close(combine(x, 0.0).unwrap(), x);
        }
    }

    #[test]
    fn same_sign_reinforces() {
        close(combine(-0.4, -0.5).unwrap(), -0.7);
        close(combine(0.4, 0.5).unwrap(), 0.7);
    }

    #[test]
    fn opposite_signs_add() {
        close(combine(0.6, -0.2).unwrap(), 0.4);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(combine(1.2, 0.0).is_err());
        assert!(combine(0.0, -1.01).is_err());
    }

    #[test]
    fn combine_is_commutative() {
        for a in [-0.9, -0.2, 0.0, 0.3, 0.8] {
            for b in [-0.7, -0.1, 0.0, 0.5, 1.0] {
                close(combine(a, b).unwrap(), combine(b, a).unwrap());
            }
        }
    }

    #[test]
    fn double_negation_damps_to_factor_squared() {
        let s = 0.8;
        let once = apply_negation(s, 0.75);
        close(once, -0.6);
        let twice = apply_negation(once, 0.75);
        close(twice, 0.45); // 0.5625 * 0.8, original sign
    }

    #[test]
    fn intensifier_keeps_sign_and_caps_at_one() {
        close(apply_intensifier(-0.62, 1.5), -0.93);
        close(apply_intensifier(0.9, 1.5), 1.0);
        close(apply_intensifier(0.0, 1.5), 0.0);
    }

    fn bundle_with(sentiment: &[(&str, f64)], negators: &[&str], intensifiers: &[&str]) -> LexiconBundle {
        let toi = ToiLexicon::from_terms(vec![vec!["salary"], vec!["job", "insecurity"]]).unwrap();
        let lexicons = Dimension::ALL
            .iter()
            .map(|d| {
                if *d == Dimension::Sentiment {
                    PolarityLexicon::from_entries(*d, sentiment.iter().map(|(l, s)| (*l, *s))).unwrap()
                } else {
                    PolarityLexicon::new(*d)
                }
            })
            .collect();
        LexiconBundle {
            toi,
            similarity: SimilarityTable::default(),
            polarity: PolaritySet::new(lexicons).unwrap(),
            gazetteer: Gazetteer::default(),
            modifiers: ModifierLists::new(
                negators.iter().map(|s| s.to_string()).collect(),
                intensifiers.iter().map(|s| s.to_string()).collect(),
                Default::default(),
            )
            .unwrap(),
        }
    }

    fn sentence(spec: &[(&str, &str, usize, &str)]) -> Sentence {
        Sentence::new(
            spec.iter()
                .enumerate()
                .map(|(i, (lemma, upos, head, deprel))| Token {
                    index: i + 1,
                    surface: lemma.to_string(),
                    lemma: lemma.to_string(),
                    upos: upos.to_string(),
                    head: *head,
                    deprel: deprel.to_string(),
                })
                .collect(),
        )
    }

    #[test]
    fn unlexiconed_pattern_scores_zero_vector() {
        let b = bundle_with(&[], &[], &[]);
        let s = sentence(&[("salary", "NOUN", 2, "nsubj"), ("grow", "VERB", 0, "root")]);
        let span = find_toi_occurrences(&s, 0, &b.toi).remove(0);
        let pattern = crate::pattern::extract_pattern(&s, &span, &b.modifiers);
        let v = score_pattern(&pattern, &s, &b, &PropagationParams::default());
        assert!(v.is_zero());
    }

    #[test]
    fn single_negator_flips_and_damps() {
        let b = bundle_with(&[("freeze", -0.4)], &["not"], &[]);
        let s = sentence(&[
            ("not", "PART", 2, "advmod"),
            ("freeze", "VERB", 0, "root"),
            ("salary", "NOUN", 2, "obj"),
        ]);
        let span = find_toi_occurrences(&s, 0, &b.toi).remove(0);
        let pattern = crate::pattern::extract_pattern(&s, &span, &b.modifiers);
        assert_eq!(pattern.negator_count, 1);
        let got = propagate(&pattern, &s, &b, Dimension::Sentiment, &PropagationParams::default());
        close(got, 0.3); // -0.75 * -0.4
    }

    #[test]
    fn intensified_negative_term_grows_more_negative() {
        let b = bundle_with(&[("insecurity", -0.62)], &[], &["greater"]);
        let s = sentence(&[
            ("greater", "ADJ", 3, "amod"),
            ("job", "NOUN", 3, "compound"),
            ("insecurity", "NOUN", 0, "root"),
        ]);
        let span = find_toi_occurrences(&s, 0, &b.toi).remove(0);
        let pattern = crate::pattern::extract_pattern(&s, &span, &b.modifiers);
        let got = propagate(&pattern, &s, &b, Dimension::Sentiment, &PropagationParams::default());
        close(got, -0.93);
        assert!(got.abs() >= 0.62);
    }

    #[test]
    fn negator_lemma_contributes_no_direct_score() {
        // "lack" carries a lexicon score but is also a negator: only the flip applies
        let b = bundle_with(&[("lack", -0.5), ("growth", 0.4)], &["lack"], &[]);
        let s = sentence(&[
            ("salary", "NOUN", 3, "nsubj"),
            ("growth", "NOUN", 1, "compound"),
            ("lack", "VERB", 0, "root"),
        ]);
        // salary's pattern: growth would be a compound dependent of salary
        let span = find_toi_occurrences(&s, 0, &b.toi).remove(0);
        let pattern = crate::pattern::extract_pattern(&s, &span, &b.modifiers);
        let got = propagate(&pattern, &s, &b, Dimension::Sentiment, &PropagationParams::default());
        close(got, -0.3); // 0.4 folded, then one damped flip; lack's own -0.5 ignored
    }

    #[test]
    fn dimensions_are_independent() {
        let b = bundle_with(&[("freeze", -0.4)], &[], &[]);
        let s = sentence(&[("freeze", "VERB", 0, "root"), ("salary", "NOUN", 1, "obj")]);
        let span = find_toi_occurrences(&s, 0, &b.toi).remove(0);
        let pattern = crate::pattern::extract_pattern(&s, &span, &b.modifiers);
        let v = score_pattern(&pattern, &s, &b, &PropagationParams::default());
        assert!(v.get(Dimension::Sentiment) < 0.0);
        for d in Dimension::ALL.iter().skip(1) {
            assert_eq!(v.get(*d), 0.0);
        }
    }
}
