//! Fine-grained, aspect-based polarity analysis of news corpora.
//!
//! `pressgauge` reads dependency-parsed articles (CoNLL-U with metadata
//! comments), finds occurrences of configurable terms of interest, builds
//! the dependency neighborhood around each occurrence, and propagates
//! lexicon scores onto the term across seven dimensions: sentiment plus the
//! moral foundations of care, fairness, loyalty, authority, purity and
//! liberty. Each pattern is tagged with a resolved location (NUTS3 code
//! rolled up to NUTS2, with an article-level fallback) and a sentence-scope
//! gender label. A statistics layer turns scored patterns into normalized
//! smoothed daily series, grouped quantile tables with Female vs Non-Female
//! percentage differences, and Mann-Whitney U tests.
//!
//! The crate-level surface is organized as a pipeline:
//!
//! 1. [`corpus`] — parse and validate corpora
//! 2. [`lexicon`] — load terms, polarity lexicons, modifier lists, gazetteer
//! 3. [`pattern`] — term matching, dependency traversal, location and gender
//! 4. [`polarity`] — score propagation
//! 5. [`stats`] — series, quantile tables, tests
//! 6. [`pipeline`] — the two-stage `extract` / `report` orchestration
//!
//! Each major capability has a runnable example under `examples/`; start
//! with `full_pipeline`:
//!
//! ```bash
//! cargo run -p pressgauge --example full_pipeline
//! ```

pub mod corpus;
pub mod lexicon;
pub mod pattern;
pub mod pipeline;
pub mod polarity;
pub mod records;
pub mod stats;
pub mod synth;

pub use corpus::{parse_corpus, parse_corpus_path, parse_corpus_str, validate_document, Document, Sentence, Token};
pub use lexicon::{
    expand_toi, load_lexicons, rescale_moral_valence, token_polarity, Dimension, LexiconBundle,
    LexiconPaths, ToiLexicon,
};
pub use pattern::{
    detect_gender, extract_all, extract_pattern, find_toi_occurrences, resolve_location, Gender,
    LocatedPattern, LocationSource, Pattern, ToiSpan,
};
pub use pipeline::{run_demo, run_extract, run_report, PipelineError, ReportConfig, RunConfig};
pub use polarity::{combine, propagate, score_pattern, PolarityVector, PropagationParams};
pub use records::ScoredRecord;
pub use stats::{
    daily_aggregate, distribution_summary, group_tables, mann_whitney_u, pct_diff, quantiles,
    rolling_mean, CorpusCounts, DailySeries, GroupTables, Grouping, QuantileTable, TestMethod,
    TestReport,
};
