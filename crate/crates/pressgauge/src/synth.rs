//! Deterministic synthetic news corpus for demos, benchmarks and
//! ground-truth recovery tests.
//!
//! Generation is pure arithmetic over the document index (a splitmix64
//! mixer), so the same configuration always yields byte-identical corpora
//! with no RNG state to seed. Articles span three calendar years and six
//! regions; roughly 15% of term sentences carry an explicit female
//! reference, and those draw a share of their sentiment-bearing adjectives
//! from a tail palette that sits strictly below every base-palette score in
//! the bundled sentiment lexicon. The planted effect: female-tagged
//! patterns are shifted extra-negative in the lower tail, while central
//! tendency stays comparable.

use chrono::{Days, NaiveDate};

use crate::corpus::{Document, Scope, Sentence, Token, write_conllu};

/// Sentiment-bearing adjectives drawn by all articles; scores in the
/// bundled lexicon range from -0.72 to 0.86.
pub const BASE_ADJECTIVES: [&str; 19] = [
    "dismal",
    "bleak",
    "grim",
    "precarious",
    "weak",
    "uncertain",
    "sluggish",
    "fragile",
    "modest",
    "steady",
    "stable",
    "encouraging",
    "solid",
    "healthy",
    "strong",
    "vigorous",
    "robust",
    "thriving",
    "excellent",
];

/// Extra-negative adjectives reserved for the planted female lower tail;
/// every score sits below the most negative base adjective.
pub const TAIL_ADJECTIVES: [&str; 4] = ["catastrophic", "devastating", "hopeless", "dire"];

const OUTLETS: [&str; 6] = [
    "El Heraldo",
    "La Gaceta",
    "El Faro",
    "Tribuna",
    "La Cronica",
    "El Observador",
];

/// (surface, lemma) of the six gazetteer places articles mention.
const PLACES: [(&str, &str); 6] = [
    ("Madrid", "madrid"),
    ("Barcelona", "barcelona"),
    ("Seville", "seville"),
    ("Valencia", "valencia"),
    ("Bilbao", "bilbao"),
    ("Zaragoza", "zaragoza"),
];

#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub documents: usize,
    pub start: NaiveDate,
    pub span_days: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            documents: 10_000,
            start: NaiveDate::from_ymd_opt(2019, 1, 1).expect("valid date"),
            span_days: 1095, // three years
        }
    }
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn draw(doc: usize, tag: u64, modulus: u64) -> u64 {
    mix((doc as u64).wrapping_mul(0x1000_0000_0000_003F).wrapping_add(tag)) % modulus
}

fn tok(index: usize, surface: &str, lemma: &str, upos: &str, head: usize, deprel: &str) -> Token {
    Token {
        index,
        surface: surface.to_string(),
        lemma: lemma.to_string(),
        upos: upos.to_string(),
        head,
        deprel: deprel.to_string(),
    }
}

/// A ~41-token sentence whose only term occurrence is "labour market"; the
/// adjective one hop from the term carries the whole sentiment score.
fn toi_sentence(adjective: &str, female: bool, place: Option<(&str, &str)>) -> Sentence {
    let (group_surface, group_lemma) = if female { ("women", "woman") } else { ("employers", "employer") };
    let (place_surface, place_lemma) = place.unwrap_or(("town", "town"));
    let spec: Vec<(&str, &str, &str, usize, &str)> = vec![
        ("The", "the", "DET", 4, "det"),
        (adjective, adjective, "ADJ", 4, "amod"),
        ("labour", "labour", "NOUN", 4, "compound"),
        ("market", "market", "NOUN", 5, "nsubj"),
        ("concerned", "concern", "VERB", 0, "root"),
        (group_surface, group_lemma, "NOUN", 5, "obj"),
        ("in", "in", "ADP", 8, "case"),
        (place_surface, place_lemma, "PROPN", 5, "obl"),
        (",", ",", "PUNCT", 5, "punct"),
        ("while", "while", "SCONJ", 13, "mark"),
        ("the", "the", "DET", 12, "det"),
        ("bulletin", "bulletin", "NOUN", 13, "nsubj"),
        ("summarized", "summarize", "VERB", 5, "advcl"),
        ("registry", "registry", "NOUN", 15, "compound"),
        ("figures", "figure", "NOUN", 13, "obj"),
        ("collected", "collect", "VERB", 15, "acl"),
        ("by", "by", "ADP", 20, "case"),
        ("the", "the", "DET", 20, "det"),
        ("municipal", "municipal", "ADJ", 20, "amod"),
        ("staff", "staff", "NOUN", 16, "obl"),
        ("during", "during", "ADP", 24, "case"),
        ("the", "the", "DET", 24, "det"),
        ("reporting", "reporting", "NOUN", 24, "compound"),
        ("period", "period", "NOUN", 16, "obl"),
        ("under", "under", "ADP", 28, "case"),
        ("the", "the", "DET", 28, "det"),
        ("standard", "standard", "ADJ", 28, "amod"),
        ("procedure", "procedure", "NOUN", 16, "obl"),
        ("published", "publish", "VERB", 28, "acl"),
        ("by", "by", "ADP", 32, "case"),
        ("the", "the", "DET", 32, "det"),
        ("office", "office", "NOUN", 29, "obl"),
        ("of", "of", "ADP", 35, "case"),
        ("provincial", "provincial", "ADJ", 35, "amod"),
        ("statistics", "statistics", "NOUN", 32, "nmod"),
        ("for", "for", "ADP", 38, "case"),
        ("every", "every", "DET", 38, "det"),
        ("quarter", "quarter", "NOUN", 29, "obl"),
        ("this", "this", "DET", 40, "det"),
        ("year", "year", "NOUN", 38, "nmod"),
        (".", ".", "PUNCT", 5, "punct"),
    ];
    Sentence::new(
        spec.iter()
            .enumerate()
            .map(|(i, (surface, lemma, upos, head, deprel))| tok(i + 1, surface, lemma, upos, *head, deprel))
            .collect(),
    )
}

/// A ~41-token sentence with no term occurrence; may mention a place, which
/// feeds the article-fallback location.
fn filler_sentence(place: Option<(&str, &str)>) -> Sentence {
    let (place_surface, place_lemma) = place.unwrap_or(("town", "town"));
    let spec: Vec<(&str, &str, &str, usize, &str)> = vec![
        ("The", "the", "DET", 3, "det"),
        ("provincial", "provincial", "ADJ", 3, "amod"),
        ("office", "office", "NOUN", 4, "nsubj"),
        ("released", "release", "VERB", 0, "root"),
        ("the", "the", "DET", 7, "det"),
        ("monthly", "monthly", "ADJ", 7, "amod"),
        ("bulletin", "bulletin", "NOUN", 4, "obj"),
        ("in", "in", "ADP", 9, "case"),
        (place_surface, place_lemma, "PROPN", 4, "obl"),
        (",", ",", "PUNCT", 4, "punct"),
        ("describing", "describe", "VERB", 4, "advcl"),
        ("administrative", "administrative", "ADJ", 13, "amod"),
        ("records", "record", "NOUN", 11, "obj"),
        ("gathered", "gather", "VERB", 13, "acl"),
        ("by", "by", "ADP", 17, "case"),
        ("regional", "regional", "ADJ", 17, "amod"),
        ("clerks", "clerk", "NOUN", 14, "obl"),
        ("during", "during", "ADP", 21, "case"),
        ("the", "the", "DET", 21, "det"),
        ("previous", "previous", "ADJ", 21, "amod"),
        ("quarter", "quarter", "NOUN", 14, "obl"),
        ("and", "and", "CCONJ", 23, "cc"),
        ("reviewed", "review", "VERB", 14, "conj"),
        ("by", "by", "ADP", 26, "case"),
        ("independent", "independent", "ADJ", 26, "amod"),
        ("auditors", "auditor", "NOUN", 23, "obl"),
        ("before", "before", "ADP", 29, "case"),
        ("formal", "formal", "ADJ", 29, "amod"),
        ("publication", "publication", "NOUN", 23, "obl"),
        ("at", "at", "ADP", 32, "case"),
        ("the", "the", "DET", 32, "det"),
        ("ministry", "ministry", "NOUN", 29, "nmod"),
        ("of", "of", "ADP", 34, "case"),
        ("administration", "administration", "NOUN", 32, "nmod"),
        ("with", "with", "ADP", 37, "case"),
        ("detailed", "detailed", "ADJ", 37, "amod"),
        ("annexes", "annex", "NOUN", 23, "obl"),
        ("for", "for", "ADP", 40, "case"),
        ("each", "each", "DET", 40, "det"),
        ("district", "district", "NOUN", 37, "nmod"),
        (".", ".", "PUNCT", 4, "punct"),
    ];
    Sentence::new(
        spec.iter()
            .enumerate()
            .map(|(i, (surface, lemma, upos, head, deprel))| tok(i + 1, surface, lemma, upos, *head, deprel))
            .collect(),
    )
}

fn pick_adjective(doc: usize, tag: u64, female: bool) -> &'static str {
    // 30% of female term sentences draw from the tail palette
    if female && draw(doc, tag, 10) < 3 {
        TAIL_ADJECTIVES[draw(doc, tag.wrapping_add(101), TAIL_ADJECTIVES.len() as u64) as usize]
    } else {
        BASE_ADJECTIVES[draw(doc, tag.wrapping_add(102), BASE_ADJECTIVES.len() as u64) as usize]
    }
}

/// Generates the corpus for `config`. Same config, same corpus.
pub fn generate_corpus(config: &SynthConfig) -> Vec<Document> {
    let mut docs = Vec::with_capacity(config.documents);
    for i in 0..config.documents {
        let date = config.start + Days::new(draw(i, 1, config.span_days));
        let outlet = OUTLETS[draw(i, 2, OUTLETS.len() as u64) as usize].to_string();
        let scope = if draw(i, 3, 4) == 0 { Scope::National } else { Scope::Regional };
        let has_toi = draw(i, 4, 5) != 0; // 80% of articles discuss the topic
        let place_at = |tag: u64, chance_in_5: u64| -> Option<(&str, &str)> {
            if draw(i, tag, 5) < chance_in_5 {
                Some(PLACES[draw(i, tag.wrapping_add(50), PLACES.len() as u64) as usize])
            } else {
                None
            }
        };
        let sentences = if has_toi {
            let female_1 = draw(i, 10, 20) < 3; // 15%
            let female_3 = draw(i, 11, 20) < 3;
            vec![
                toi_sentence(pick_adjective(i, 20, female_1), female_1, place_at(30, 3)),
                filler_sentence(place_at(31, 2)),
                // last term sentence never names a place: exercises fallback
                toi_sentence(pick_adjective(i, 21, female_3), female_3, None),
            ]
        } else {
            vec![filler_sentence(place_at(32, 2)), filler_sentence(None)]
        };
        docs.push(Document {
            doc_id: format!("synth-{i:06}"),
            date,
            outlet,
            scope,
            sentences,
        });
    }
    docs
}

/// Serializes a generated corpus to one CoNLL-U stream.
pub fn corpus_to_conllu(docs: &[Document]) -> String {
    let mut out = String::with_capacity(docs.len() * 4096);
    for doc in docs {
        write_conllu(doc, &mut out);
    }
    out
}
