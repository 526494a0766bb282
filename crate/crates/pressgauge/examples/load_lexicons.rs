//! Load the bundled mini-lexicon set and query it.
//!
//! ```bash
//! cargo run -p pressgauge --example load_lexicons
//! ```

use std::path::Path;

use pressgauge::lexicon::{load_lexicons, rescale_moral_valence, token_polarity, Dimension, LexiconPaths};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/lexicons");
    let bundle = load_lexicons(&LexiconPaths::from_dir(&dir)).expect("lexicons load");

    println!("terms of interest: {} seeds", bundle.toi.len());
    println!("gazetteer places: {}", bundle.gazetteer.place_count());
    println!("negators: {:?}", bundle.modifiers.negators);
    println!("intensifiers: {:?}", bundle.modifiers.intensifiers);

    println!("\nlexicon lookups (0 = absent/neutral):");
    for (lemma, dimension) in [
        ("insecurity", Dimension::Sentiment),
        ("freeze", Dimension::Sentiment),
        ("right", Dimension::Fairness),
        ("enter", Dimension::Liberty),
        ("harm", Dimension::Care),      // loaded from a 1-9 scale file
        ("respect", Dimension::Authority), // also 1-9
        ("zyzzyva", Dimension::Sentiment),
    ] {
        println!("  {lemma:12} {dimension:10} -> {:+.2}", token_polarity(&bundle, lemma, dimension));
    }

    println!("\n1-9 moral valence rescaling, (raw - 5) / 4:");
    for raw in [1.0, 3.0, 5.0, 7.0, 9.0] {
        println!("  {raw} -> {:+.2}", rescale_moral_valence(raw).unwrap());
    }
}
