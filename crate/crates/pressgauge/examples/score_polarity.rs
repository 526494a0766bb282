//! Propagate lexicon scores through patterns: the four worked excerpts.
//!
//! ```bash
//! cargo run -p pressgauge --example score_polarity
//! ```

use std::path::Path;

use pressgauge::corpus::parse_corpus_path;
use pressgauge::lexicon::{load_lexicons, Dimension, LexiconPaths};
use pressgauge::pattern::{extract_pattern, find_toi_occurrences};
use pressgauge::polarity::{combine, score_pattern, PropagationParams};

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let bundle = load_lexicons(&LexiconPaths::from_dir(&root.join("fixtures/lexicons")))
        .expect("lexicons load")
        .with_expanded_toi(0.7);
    let docs = parse_corpus_path(&root.join("fixtures/corpus/excerpts.conllu"))
        .expect("corpus parses")
        .documents;

    println!("the combine rule on [-1,+1]:");
    for (a, b) in [(0.0, 0.4), (-0.4, -0.5), (0.6, -0.2), (0.62, 0.87)] {
        println!("  combine({a:+.2}, {b:+.2}) = {:+.4}", combine(a, b).unwrap());
    }

    let params = PropagationParams::default();
    println!(
        "\npropagation with intensifier x{} and damped negation x{}:",
        params.intensifier_factor, params.negation_factor
    );
    for doc in &docs {
        for (si, sentence) in doc.sentences.iter().enumerate() {
            for span in find_toi_occurrences(sentence, si, &bundle.toi) {
                let pattern = extract_pattern(sentence, &span, &bundle.modifiers);
                let vector = score_pattern(&pattern, sentence, &bundle, &params);
                let mut notable: Vec<String> = vector
                    .components()
                    .filter(|(_, v)| *v != 0.0)
                    .map(|(d, v)| format!("{d}={v:+.3}"))
                    .collect();
                if notable.is_empty() {
                    notable.push("all neutral".to_string());
                }
                println!("  {} {:24} -> {}", doc.doc_id, span.matched_term.join(" "), notable.join(", "));
            }
        }
    }

    // spotlight: the liberty excerpt flips a positive score through "prevent"
    let liberty_doc = docs.iter().find(|d| d.doc_id == "ex-liberty").unwrap();
    let sentence = &liberty_doc.sentences[0];
    let span = find_toi_occurrences(sentence, 0, &bundle.toi).remove(0);
    let pattern = extract_pattern(sentence, &span, &bundle.modifiers);
    let vector = score_pattern(&pattern, sentence, &bundle, &params);
    println!(
        "\n\"preventing ... from entering posts\": lex(enter)=+0.52, one negator -> liberty {:+.3}",
        vector.get(Dimension::Liberty)
    );
}
