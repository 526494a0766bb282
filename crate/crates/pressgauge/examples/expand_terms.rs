//! Expand the seed term list with precomputed similarity neighbors.
//!
//! ```bash
//! cargo run -p pressgauge --example expand_terms
//! ```

use std::path::Path;

use pressgauge::lexicon::{expand_toi, load_lexicons, LexiconPaths};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/lexicons");
    let bundle = load_lexicons(&LexiconPaths::from_dir(&dir)).expect("lexicons load");

    for threshold in [0.9, 0.7, 0.5] {
        let expanded = expand_toi(&bundle.toi, &bundle.similarity, threshold);
        println!(
            "threshold {threshold}: {} seeds -> {} terms",
            bundle.toi.len(),
            expanded.len()
        );
    }

    let expanded = expand_toi(&bundle.toi, &bundle.similarity, 0.7);
    println!("\nterm set at the default 0.7 threshold:");
    for term in expanded.iter() {
        let marker = if bundle.toi.contains(term) { "seed    " } else { "expanded" };
        println!("  [{marker}] {}", term.join(" "));
    }

    // expansion is single-pass: a neighbor's own neighbors stay out
    let idleness = vec!["idleness".to_string()];
    assert!(!expanded.contains(&idleness));
    println!("\nneighbors of neighbors (e.g. \"idleness\") are not pulled in");
}
