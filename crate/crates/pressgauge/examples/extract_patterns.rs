//! Find term occurrences and build their dependency neighborhoods.
//!
//! ```bash
//! cargo run -p pressgauge --example extract_patterns
//! ```

use std::path::Path;

use pressgauge::corpus::parse_corpus_path;
use pressgauge::lexicon::{load_lexicons, LexiconPaths};
use pressgauge::pattern::{extract_pattern, find_toi_occurrences};

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
            let surfaces: Vec<&str> = sentence.tokens.iter().map(|t| t.surface.as_str()).collect();
            println!("  s{si}: {}", surfaces.join(" "));
            for span in find_toi_occurrences(sentence, si, &bundle.toi) {
                let pattern = extract_pattern(sentence, &span, &bundle.modifiers);
                println!(
                    "    term {:?} at tokens {}..{}",
                    span.matched_term.join(" "),
                    span.start,
                    span.end
                );
                for member in &pattern.members {
                    let tok = sentence.token(member.token_index).unwrap();
                    println!(
                        "      member {:10} ({} hop{}, {})",
                        tok.lemma,
                        member.distance,
                        if member.distance == 1 { "" } else { "s" },
                        tok.deprel
                    );
                }
                if pattern.negator_count > 0 {
                    println!("      negators: {}", pattern.negator_count);
                }
                if !pattern.intensifier_lemmas.is_empty() {
                    println!("      intensifiers: {:?}", pattern.intensifier_lemmas);
                }
            }
        }
    }
}
