//! Aggregate scored patterns into normalized daily series and smooth them.
//!
//! ```bash
//! cargo run -p pressgauge --example daily_series
//! ```

use std::path::Path;

use pressgauge::lexicon::{load_lexicons, Dimension, LexiconPaths};
use pressgauge::pattern::{extract_all, Gender};
use pressgauge::polarity::{score_pattern, PropagationParams};
use pressgauge::records::ScoredRecord;
use pressgauge::stats::{daily_aggregate, rolling_mean, CorpusCounts, GroupKey};
use pressgauge::synth::{generate_corpus, SynthConfig};

fn main() {
    let lexicon_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/lexicons");
    let bundle = load_lexicons(&LexiconPaths::from_dir(&lexicon_dir))
        .expect("lexicons load")
        .with_expanded_toi(0.7);
    let docs = generate_corpus(&SynthConfig {
        documents: 1200,
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
    let counts = CorpusCounts::from_documents(&docs);
    println!("{} scored patterns over {} calendar days", records.len(), counts.len());

    let series = daily_aggregate(&records, &counts, Dimension::Sentiment, &GroupKey::all())
        .expect("counts cover every pattern date");
    println!("\nraw daily rows (first 5):");
    println!("  {:10} {:>5} {:>9} {:>8} {:>11}", "date", "n", "mean", "articles", "normalized");
    for row in series.rows.iter().take(5) {
        println!(
            "  {} {:>5} {:>+9.4} {:>8} {:>+11.4}",
            row.date, row.pattern_count, row.mean_polarity, row.article_count, row.normalized_value
        );
    }

    for window in [1, 30, 90] {
        let smoothed = rolling_mean(&series, window);
        let last = smoothed.rows.last().unwrap();
        println!("window {window:>3}: final smoothed value {:+.4}", last.normalized_value);
    }

    // per-gender series feed the plot-data files of the report stage
    for gender in [Gender::Female, Gender::NonFemale] {
        let series =
            daily_aggregate(&records, &counts, Dimension::Sentiment, &GroupKey::gender(gender)).unwrap();
        let smoothed = rolling_mean(&series, 90);
        let mean: f64 =
            smoothed.rows.iter().map(|r| r.normalized_value).sum::<f64>() / smoothed.rows.len() as f64;
        println!("{:10} rows {:>4}, mean smoothed value {mean:+.4}", gender.as_str(), smoothed.rows.len());
    }
}
