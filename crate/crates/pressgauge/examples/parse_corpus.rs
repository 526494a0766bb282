//! Parse a CoNLL-U corpus with metadata comments and inspect the model.
//!
//! ```bash
//! cargo run -p pressgauge --example parse_corpus
//! ```

use std::path::Path;

use pressgauge::corpus::{parse_corpus_path, parse_corpus_str, validate_document, to_conllu};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/three_docs.conllu");
    let parsed = parse_corpus_path(&path).expect("fixture corpus parses");

    println!("documents: {}, rejected: {}", parsed.documents.len(), parsed.rejects.len());
    for doc in &parsed.documents {
        println!(
            "  {} | {} | {} | {} | {} sentence(s)",
            doc.doc_id,
            doc.date,
            doc.outlet,
            doc.scope.as_str(),
            doc.sentences.len()
        );
        for sentence in &doc.sentences {
            let lemmas: Vec<&str> = sentence.lemmas().collect();
            println!("    lemmas: {}", lemmas.join(" "));
        }
        assert!(validate_document(doc).is_empty());
    }

    // the serializer emits the same canonical subset the reader consumes
    let round_trip = parse_corpus_str(&to_conllu(&parsed.documents[0])).unwrap();
    assert_eq!(round_trip.documents[0], parsed.documents[0]);
    println!("\nround trip through the serializer preserves the model");

    // malformed documents are rejected individually, with reasons
    let broken = "# newdoc id = broken\n# meta::date = not-a-date\n# meta::outlet = X\n# meta::scope = national\n1\tx\tx\tNOUN\t_\t_\t0\troot\t_\t_\n";
    let partial = parse_corpus_str(broken).unwrap();
    println!(
        "\nbroken document rejected: {}",
        partial.rejects[0].reason
    );
}
