//! Run both pipeline stages end to end on the bundled demo corpus.
//!
//! ```bash
//! cargo run -p pressgauge --example full_pipeline
//! ```

use std::fs;
use std::path::Path;

use pressgauge::pipeline::{run_extract, run_report, ReportConfig, RunConfig};

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join("pressgauge-full-pipeline");
    let _ = fs::remove_dir_all(&out);

    let mut config = RunConfig::new(
        vec![root.join("fixtures/corpus/demo.conllu")],
        root.join("fixtures/lexicons"),
        out.join("extract"),
    );
    config.workers = 4;
    let extract = run_extract(&config).expect("extraction succeeds");
    println!(
        "extract: {} documents read, {} rejected, {} patterns",
        extract.documents_read, extract.documents_rejected, extract.patterns_emitted
    );

    let report = run_report(&ReportConfig::new(
        extract.patterns_path.clone(),
        extract.counts_path.clone(),
        out.join("report"),
    ))
    .expect("reporting succeeds");
    for warning in &report.warnings {
        println!("warning: {warning}");
    }
    println!("report: {} files from {} records", report.files_written.len(), report.records);

    println!("\nfirst pattern record:");
    let patterns = fs::read_to_string(&extract.patterns_path).unwrap();
    println!("  {}", patterns.lines().next().unwrap());

    println!("\ngender summary (sentiment):");
    for line in fs::read_to_string(out.join("report/summary_sentiment.csv")).unwrap().lines() {
        println!("  {line}");
    }

    println!("\nyearly percentage differences (sentiment):");
    for line in fs::read_to_string(out.join("report/yearly_pct_diff_sentiment.csv")).unwrap().lines() {
        println!("  {line}");
    }

    println!("\noutputs under {}", out.display());
}
