//! Generate a synthetic corpus and run the packaged demo pipeline on it,
//! twice, to show end-to-end determinism.
//!
//! ```bash
//! cargo run -p pressgauge --example synthetic_demo
//! ```

use std::fs;

use pressgauge::pipeline::run_demo;
use pressgauge::records::read_records;

fn main() {
    let base = std::env::temp_dir().join("pressgauge-synthetic-demo");
    let _ = fs::remove_dir_all(&base);

    let first = run_demo(&base.join("run1"), 1000, 4).expect("demo runs");
    println!(
        "run 1: {} documents -> {} patterns (generate {:.2}s, extract {:.2}s, report {:.2}s)",
        first.documents, first.patterns, first.generate_secs, first.extract_secs, first.report_secs
    );

    let second = run_demo(&base.join("run2"), 1000, 1).expect("demo runs");
    println!(
        "run 2: same corpus with one worker -> {} patterns",
        second.patterns
    );

    let a = fs::read(base.join("run1/extract/patterns.jsonl")).unwrap();
    let b = fs::read(base.join("run2/extract/patterns.jsonl")).unwrap();
    assert_eq!(a, b);
    println!("pattern files are byte-identical across runs and worker counts");

    let records = read_records(&first.extract.patterns_path).unwrap();
    let female = records.iter().filter(|r| r.gender == pressgauge::Gender::Female).count();
    let located = records.iter().filter(|r| r.nuts3.is_some()).count();
    println!(
        "{} records: {} female-tagged, {} with a resolved location",
        records.len(),
        female,
        located
    );
    println!("outputs under {}", base.display());
}
