//! Helpers shared by the integration test suites.
#![allow(dead_code)] // each test binary uses its own subset

use std::path::{Path, PathBuf};

use pressgauge::corpus::{parse_corpus_path, Document};
use pressgauge::lexicon::{load_lexicons, LexiconBundle, LexiconPaths};
use pressgauge::pattern::extract_all;
use pressgauge::polarity::{score_pattern, PropagationParams};
use pressgauge::records::ScoredRecord;

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn lexicon_dir() -> PathBuf {
    fixture("lexicons")
}

/// The bundled mini-lexicons with the term set expanded at the default
/// threshold.
pub fn load_bundle() -> LexiconBundle {
    load_lexicons(&LexiconPaths::from_dir(&lexicon_dir()))
        .expect("fixture lexicons load")
        .with_expanded_toi(0.7)
}

pub fn parse_fixture_corpus(rel: &str) -> Vec<Document> {
    let parsed = parse_corpus_path(&fixture(rel)).expect("fixture parses");
    assert!(parsed.rejects.is_empty(), "fixture rejects: {:?}", parsed.rejects);
    parsed.documents
}

/// Library-level extract+score over already-parsed documents.
pub fn extract_scored(docs: &[Document], bundle: &LexiconBundle) -> Vec<ScoredRecord> {
    let params = PropagationParams::default();
    let mut out = Vec::new();
    for doc in docs {
        for lp in extract_all(doc, bundle) {
            let sentence = &doc.sentences[lp.pattern.toi.sentence_index];
            let vector = score_pattern(&lp.pattern, sentence, bundle, &params);
            out.push(ScoredRecord::from_located(&lp, &vector));
        }
    }
    out
}
