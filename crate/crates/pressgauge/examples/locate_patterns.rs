//! Resolve pattern locations: sentence matches, nationality adjectives, and
//! the article-level fallback.
//!
//! ```bash
//! cargo run -p pressgauge --example locate_patterns
//! ```

use std::path::Path;

use pressgauge::corpus::parse_corpus_path;
use pressgauge::lexicon::{load_lexicons, LexiconPaths};
use pressgauge::pattern::{article_main_location, extract_all, sentence_locations};

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let bundle = load_lexicons(&LexiconPaths::from_dir(&root.join("fixtures/lexicons")))
        .expect("lexicons load")
        .with_expanded_toi(0.7);
    let docs = parse_corpus_path(&root.join("fixtures/corpus/excerpts.conllu"))
        .expect("corpus parses")
        .documents;

    for doc in &docs {
        println!("== {} ==", doc.doc_id);
        for (si, sentence) in doc.sentences.iter().enumerate() {
            let matches = sentence_locations(sentence, &bundle.gazetteer);
            if matches.is_empty() {
                println!("  s{si}: no gazetteer match");
            } else {
                for m in matches {
                    println!("  s{si}: tokens {}..{} -> {}", m.start, m.end, m.code);
                }
            }
        }
        if let Some(main) = article_main_location(doc, &bundle.gazetteer) {
            println!("  article main location: {main}");
        }
        for lp in extract_all(doc, &bundle) {
            println!(
                "  pattern {:24} nuts3={:8} nuts2={:6} source={} gender={}",
                lp.pattern.toi.matched_term.join(" "),
                lp.nuts3.as_deref().unwrap_or("-"),
                lp.nuts2.as_deref().unwrap_or("-"),
                lp.location_source.as_str(),
                lp.gender.as_str()
            );
        }
        println!();
    }
}
