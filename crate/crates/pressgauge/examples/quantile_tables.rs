//! Build yearly and regional quantile tables with Female vs Non-Female
//! percentage differences.
//!
//! ```bash
//! cargo run -p pressgauge --example quantile_tables
//! ```

use std::path::Path;

use pressgauge::lexicon::{load_lexicons, Dimension, LexiconPaths};
use pressgauge::pattern::extract_all;
use pressgauge::polarity::{score_pattern, PropagationParams};
use pressgauge::records::ScoredRecord;
use pressgauge::stats::{group_tables, pct_diff, quantiles, Grouping, QuantileTable};
use pressgauge::synth::{generate_corpus, SynthConfig};

fn print_table(title: &str, table: &QuantileTable) {
    println!("{title}");
    println!("  {:10} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "key", "mean", "q10", "q25", "q50", "q75", "q90");
    let cell = |v: Option<f64>| v.map(|x| format!("{x:8.2}")).unwrap_or_else(|| format!("{:>8}", "-"));
    for row in &table.rows {
        println!(
            "  {:10} {} {} {} {} {} {}",
            row.key,
            cell(row.mean),
            cell(row.q10),
            cell(row.q25),
            cell(row.q50),
            cell(row.q75),
            cell(row.q90)
        );
    }
}

fn main() {
    let lexicon_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/lexicons");
    let bundle = load_lexicons(&LexiconPaths::from_dir(&lexicon_dir))
        .expect("lexicons load")
        .with_expanded_toi(0.7);
    let docs = generate_corpus(&SynthConfig {
        documents: 2500,
        ..SynthConfig::default()
    });
    let params = PropagationParams::default();
    let mut records = Vec::new();
    for doc in &docs {
        for lp in extract_all(doc, &bundle) {
            let sentence = &doc.sentences[lp.pattern.toi.sentence_index];
            let vector = score_pattern(&lp.pattern, sentence, &bundle, &params);
            records.push(ScoredRecord::from_located(&lp, &vector));
        }
    }
    println!("{} scored patterns\n", records.len());

    println!("quantiles use linear interpolation at rank h = (n-1)p:");
    let sample = [1.0, 2.0, 3.0, 4.0, 5.0];
    let q = quantiles(&sample, &[0.1, 0.25, 0.5, 0.75, 0.9]).unwrap();
    println!("  {sample:?} -> {q:?}");
    println!(
        "  percentage difference of (-0.6 vs -0.4): {:.1}%\n",
        pct_diff(-0.6, -0.4).unwrap()
    );

    let yearly = group_tables(&records, Dimension::Sentiment, Grouping::Year);
    print_table("female sentiment per year:", &yearly.female);
    print_table("non-female sentiment per year:", &yearly.non_female);
    print_table("percentage differences per year:", &yearly.pct_diff);

    let regional = group_tables(&records, Dimension::Sentiment, Grouping::Nuts2WithSpain);
    print_table("\npercentage differences per region (SPAIN row pools everything):", &regional.pct_diff);
    for warning in &regional.warnings {
        println!("warning: {warning}");
    }
}
