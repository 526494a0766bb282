//! Two-stage pipeline: `extract` turns corpora into a durable scored-pattern
//! file, `report` turns that file into the statistical artifacts. The
//! pattern file is the only state between the stages, so extraction over a
//! large corpus runs once while reports re-run cheaply.
//!
//! Every output is a pure function of (inputs, analysis configuration) —
//! worker count and output paths never influence file bytes.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{parse_corpus_path, Document, DocumentReject};
use crate::lexicon::{load_lexicons, Dimension, LexiconError, LexiconPaths};
use crate::pattern::{extract_all, Gender};
use crate::polarity::{
    score_pattern, PropagationParams, DEFAULT_INTENSIFIER_FACTOR, DEFAULT_NEGATION_FACTOR,
};
use crate::records::{read_records, write_records, RecordError, ScoredRecord};
use crate::stats::{
    daily_aggregate, distribution_summary, group_tables, mann_whitney_u, rolling_mean, tail_values,
    CorpusCounts, GroupKey, Grouping, StatsError, TestReport,
};
use crate::synth::{corpus_to_conllu, generate_corpus, SynthConfig};

pub const DEFAULT_THRESHOLD: f64 = 0.7;
pub const DEFAULT_WINDOW_DAYS: u32 = 90;

/// File names produced by the extract stage.
pub const PATTERNS_FILE: &str = "patterns.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const CORPUS_COUNTS_FILE: &str = "corpus_counts.csv";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Corpus(#[from] crate::corpus::CorpusError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("missing input: {0}")]
    MissingInput(PathBuf),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl PipelineError {
    /// Process exit code: 1 usage/config, 2 input, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            PipelineError::Internal(_) => 3,
            _ => 2,
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Extraction-stage configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpus: Vec<PathBuf>,
    pub lexicon_dir: PathBuf,
    pub out_dir: PathBuf,
    pub threshold: f64,
    pub negation_factor: f64,
    pub intensifier_factor: f64,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(corpus: Vec<PathBuf>, lexicon_dir: PathBuf, out_dir: PathBuf) -> Self {
        RunConfig {
            corpus,
            lexicon_dir,
            out_dir,
            threshold: DEFAULT_THRESHOLD,
            negation_factor: DEFAULT_NEGATION_FACTOR,
            intensifier_factor: DEFAULT_INTENSIFIER_FACTOR,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.corpus.is_empty() {
            return Err(PipelineError::Config("no corpus files given".to_string()));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(PipelineError::Config(format!(
                "threshold {} outside [0,1]",
                self.threshold
            )));
        }
        if self.negation_factor <= 0.0 || self.intensifier_factor <= 0.0 {
            return Err(PipelineError::Config("factors must be positive".to_string()));
        }
        if self.workers < 1 {
            return Err(PipelineError::Config("worker count must be at least 1".to_string()));
        }
        Ok(())
    }

    fn propagation(&self) -> PropagationParams {
        PropagationParams {
            intensifier_factor: self.intensifier_factor,
            negation_factor: self.negation_factor,
        }
    }
}

#[derive(Debug, Serialize)]
struct ManifestInput {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct ManifestConfig {
    threshold: f64,
    negation_factor: f64,
    intensifier_factor: f64,
}

#[derive(Debug, Serialize)]
struct ManifestCounts {
    documents_read: usize,
    documents_accepted: usize,
    documents_rejected: usize,
    patterns_emitted: usize,
}

#[derive(Debug, Serialize)]
struct ManifestReject {
    doc_id: Option<String>,
    line: usize,
    reason: String,
}

#[derive(Debug, Serialize)]
struct Manifest {
    inputs: Vec<ManifestInput>,
    config: ManifestConfig,
    counts: ManifestCounts,
    rejects: Vec<ManifestReject>,
}

fn sha256_file(path: &Path) -> Result<String, PipelineError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Outcome of the extract stage.
#[derive(Debug, Clone)]
pub struct ExtractSummary {
    pub documents_read: usize,
    pub documents_accepted: usize,
    pub documents_rejected: usize,
    pub patterns_emitted: usize,
    pub patterns_path: PathBuf,
    pub counts_path: PathBuf,
    pub manifest_path: PathBuf,
}

/// Runs extraction: parse every corpus file, extract and score patterns in
/// parallel, and write the pattern file, derived per-day corpus counts, and
/// the run manifest. Nothing is written until every input has been consumed,
/// so failed runs leave no partial outputs.
pub fn run_extract(config: &RunConfig) -> Result<ExtractSummary, PipelineError> {
    config.validate()?;
    for path in &config.corpus {
        if !path.exists() {
            return Err(PipelineError::MissingInput(path.clone()));
        }
    }
    let paths = LexiconPaths::from_dir(&config.lexicon_dir);
    let bundle = load_lexicons(&paths)?.with_expanded_toi(config.threshold);

    let mut documents: Vec<Document> = Vec::new();
    let mut rejects: Vec<DocumentReject> = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for path in &config.corpus {
        let parsed = parse_corpus_path(path)?;
        rejects.extend(parsed.rejects);
        for doc in parsed.documents {
            if seen_ids.insert(doc.doc_id.clone()) {
                documents.push(doc);
            } else {
                rejects.push(DocumentReject {
                    doc_id: Some(doc.doc_id),
                    line: 0,
                    reason: "duplicate doc id across corpus files".to_string(),
                });
            }
        }
    }

    let params = config.propagation();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| PipelineError::Internal(e.to_string()))?;
    let mut scored: Vec<(ScoredRecord, usize)> = pool.install(|| {
        documents
            .par_iter()
            .flat_map_iter(|doc| {
                extract_all(doc, &bundle)
                    .into_iter()
                    .map(|lp| {
                        let sentence = &doc.sentences[lp.pattern.toi.sentence_index];
                        let vector = score_pattern(&lp.pattern, sentence, &bundle, &params);
                        let start = lp.pattern.toi.start;
                        (ScoredRecord::from_located(&lp, &vector), start)
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    });
    // durable order: (doc id, sentence, span start), independent of workers
    scored.sort_by(|(a, sa), (b, sb)| {
        (&a.doc_id, a.sentence_index, *sa).cmp(&(&b.doc_id, b.sentence_index, *sb))
    });
    let records: Vec<ScoredRecord> = scored.into_iter().map(|(r, _)| r).collect();

    let counts = CorpusCounts::from_documents(&documents);

    let mut inputs = Vec::new();
    for path in config.corpus.iter().map(|p| p.as_path()).chain(paths.all_files()) {
        inputs.push(ManifestInput {
            path: path.display().to_string(),
            sha256: sha256_file(path)?,
        });
    }
    let manifest = Manifest {
        inputs,
        config: ManifestConfig {
            threshold: config.threshold,
            negation_factor: config.negation_factor,
            intensifier_factor: config.intensifier_factor,
        },
        counts: ManifestCounts {
            documents_read: documents.len() + rejects.len(),
            documents_accepted: documents.len(),
            documents_rejected: rejects.len(),
            patterns_emitted: records.len(),
        },
        rejects: rejects
            .iter()
            .map(|r| ManifestReject {
                doc_id: r.doc_id.clone(),
                line: r.line,
                reason: r.reason.clone(),
            })
            .collect(),
    };

    fs::create_dir_all(&config.out_dir).map_err(io_err(&config.out_dir))?;
    let patterns_path = config.out_dir.join(PATTERNS_FILE);
    let counts_path = config.out_dir.join(CORPUS_COUNTS_FILE);
    let manifest_path = config.out_dir.join(MANIFEST_FILE);
    write_records(&patterns_path, &records)?;
    fs::write(&counts_path, counts.to_csv()).map_err(io_err(&counts_path))?;
    let manifest_json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| PipelineError::Internal(e.to_string()))?;
    fs::write(&manifest_path, manifest_json + "\n").map_err(io_err(&manifest_path))?;

    Ok(ExtractSummary {
        documents_read: manifest.counts.documents_read,
        documents_accepted: manifest.counts.documents_accepted,
        documents_rejected: manifest.counts.documents_rejected,
        patterns_emitted: manifest.counts.patterns_emitted,
        patterns_path,
        counts_path,
        manifest_path,
    })
}

/// Report-stage configuration.
#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub patterns: PathBuf,
    pub corpus_counts: PathBuf,
    pub out_dir: PathBuf,
    pub window_days: u32,
}

impl ReportConfig {
    pub fn new(patterns: PathBuf, corpus_counts: PathBuf, out_dir: PathBuf) -> Self {
        ReportConfig {
            patterns,
            corpus_counts,
            out_dir,
            window_days: DEFAULT_WINDOW_DAYS,
        }
    }
}

/// Outcome of the report stage.
#[derive(Debug, Clone)]
pub struct ReportSummary {
    pub records: usize,
    pub files_written: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

fn fmt_cell3(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.3}")).unwrap_or_default()
}

fn fmt_cell2(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2}")).unwrap_or_default()
}

#[derive(Serialize)]
struct TestReportJson {
    u_statistic: f64,
    p_value: f64,
    method: String,
    n1: usize,
    n2: usize,
}

impl From<&TestReport> for TestReportJson {
    fn from(r: &TestReport) -> Self {
        TestReportJson {
            u_statistic: r.u_statistic,
            p_value: r.p_value,
            method: r.method.as_str().to_string(),
            n1: r.n1,
            n2: r.n2,
        }
    }
}

#[derive(Serialize)]
struct DimensionTests {
    dimension: String,
    overall: Option<TestReportJson>,
    tail_q10: Option<TestReportJson>,
    tail_q25: Option<TestReportJson>,
}

fn gender_values(records: &[ScoredRecord], dimension: Dimension, gender: Gender) -> Vec<f64> {
    records
        .iter()
        .filter(|r| r.gender == gender)
        .map(|r| r.polarity.get(dimension))
        .collect()
}

/// Runs the reporting stage over a pattern file. Writes, under `out_dir`:
///
/// - `summary_sentiment.csv` — count/mean/std/quantiles per gender
/// - `yearly_pct_diff_sentiment.csv` — Female vs Non-Female percentage differences per year
/// - `regional_pct_diff_<dimension>.csv` — the same per NUTS2 region plus a SPAIN row, per dimension
/// - `mann_whitney.json` — overall and lower-tail tests per dimension
/// - `series_<dimension>_<gender>.csv` — smoothed normalized daily series
pub fn run_report(config: &ReportConfig) -> Result<ReportSummary, PipelineError> {
    if !config.patterns.exists() {
        return Err(PipelineError::MissingInput(config.patterns.clone()));
    }
    if !config.corpus_counts.exists() {
        return Err(PipelineError::MissingInput(config.corpus_counts.clone()));
    }
    if config.window_days < 1 {
        return Err(PipelineError::Config("window must be at least 1 day".to_string()));
    }
    let records = read_records(&config.patterns)?;
    let counts = CorpusCounts::read_csv(&config.corpus_counts)?;
    fs::create_dir_all(&config.out_dir).map_err(io_err(&config.out_dir))?;

    let mut files_written = Vec::new();
    let mut warnings = Vec::new();
    let write_file = |path: PathBuf, contents: String| -> Result<PathBuf, PipelineError> {
        fs::write(&path, contents).map_err(io_err(&path))?;
        Ok(path)
    };

    // gender distribution summary (sentiment)
    {
        let female = distribution_summary(&gender_values(&records, Dimension::Sentiment, Gender::Female)).ok();
        let non_female =
            distribution_summary(&gender_values(&records, Dimension::Sentiment, Gender::NonFemale)).ok();
        if female.is_none() {
            warnings.push("no female patterns in summary".to_string());
        }
        if non_female.is_none() {
            warnings.push("no non-female patterns in summary".to_string());
        }
        let mut csv = String::from("statistic,female,non_female\n");
        csv.push_str(&format!(
            "count,{},{}\n",
            female.as_ref().map(|s| s.count.to_string()).unwrap_or_default(),
            non_female.as_ref().map(|s| s.count.to_string()).unwrap_or_default()
        ));
        type Pick = fn(&crate::stats::DistributionSummary) -> f64;
        let picks: [(&str, Pick); 7] = [
            ("mean", |s| s.mean),
            ("std", |s| s.std),
            ("q10", |s| s.q10),
            ("q25", |s| s.q25),
            ("q50", |s| s.q50),
            ("q75", |s| s.q75),
            ("q90", |s| s.q90),
        ];
        for (name, pick) in picks {
            csv.push_str(&format!(
                "{name},{},{}\n",
                fmt_cell3(female.as_ref().map(pick)),
                fmt_cell3(non_female.as_ref().map(pick))
            ));
        }
        files_written.push(write_file(config.out_dir.join("summary_sentiment.csv"), csv)?);
    }

    // yearly percentage differences (sentiment)
    {
        let tables = group_tables(&records, Dimension::Sentiment, Grouping::Year);
        warnings.extend(tables.warnings.iter().cloned());
        let mut csv = String::from("year,mean,q10,q25,q50,q75,q90\n");
        for row in &tables.pct_diff.rows {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.key,
                fmt_cell2(row.mean),
                fmt_cell2(row.q10),
                fmt_cell2(row.q25),
                fmt_cell2(row.q50),
                fmt_cell2(row.q75),
                fmt_cell2(row.q90)
            ));
        }
        files_written.push(write_file(config.out_dir.join("yearly_pct_diff_sentiment.csv"), csv)?);
    }

    // regional percentage differences, one file per dimension
    for dimension in Dimension::ALL {
        let tables = group_tables(&records, dimension, Grouping::Nuts2WithSpain);
        if dimension == Dimension::Sentiment {
            warnings.extend(tables.warnings.iter().cloned());
        }
        let mut csv = String::from("region,mean,q10,q25,q50,q75,q90\n");
        for row in &tables.pct_diff.rows {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.key,
                fmt_cell2(row.mean),
                fmt_cell2(row.q10),
                fmt_cell2(row.q25),
                fmt_cell2(row.q50),
                fmt_cell2(row.q75),
                fmt_cell2(row.q90)
            ));
        }
        files_written.push(write_file(
            config.out_dir.join(format!("regional_pct_diff_{dimension}.csv")),
            csv,
        )?);
    }

    // Mann-Whitney tests: overall plus pooled lower-tail subsets
    {
        let mut tests = Vec::new();
        for dimension in Dimension::ALL {
            let female = gender_values(&records, dimension, Gender::Female);
            let non_female = gender_values(&records, dimension, Gender::NonFemale);
            let overall = mann_whitney_u(&female, &non_female).ok();
            let tail = |p: f64| -> Option<TestReportJson> {
                let (f, n) = tail_values(&female, &non_female, p);
                mann_whitney_u(&f, &n).ok().map(|r| TestReportJson::from(&r))
            };
            tests.push(DimensionTests {
                dimension: dimension.as_str().to_string(),
                overall: overall.as_ref().map(TestReportJson::from),
                tail_q10: tail(0.10),
                tail_q25: tail(0.25),
            });
        }
        let json = serde_json::to_string_pretty(&tests)
            .map_err(|e| PipelineError::Internal(e.to_string()))?;
        files_written.push(write_file(config.out_dir.join("mann_whitney.json"), json + "\n")?);
    }

    // smoothed daily series per dimension and gender
    for dimension in Dimension::ALL {
        for gender in [Gender::Female, Gender::NonFemale] {
            let series = daily_aggregate(&records, &counts, dimension, &GroupKey::gender(gender))?;
            let smoothed = rolling_mean(&series, config.window_days);
            let mut csv = String::from("date,value\n");
            for row in &smoothed.rows {
                csv.push_str(&format!("{},{:.6}\n", row.date, row.normalized_value));
            }
            files_written.push(write_file(
                config.out_dir.join(format!("series_{dimension}_{}.csv", gender.as_str())),
                csv,
            )?);
        }
    }

    Ok(ReportSummary {
        records: records.len(),
        files_written,
        warnings,
    })
}

/// The bundled mini-lexicon set, embedded so `demo` runs anywhere.
pub const EMBEDDED_LEXICONS: [(&str, &str); 16] = [
    ("toi.tsv", include_str!("../fixtures/lexicons/toi.tsv")),
    ("similarity.tsv", include_str!("../fixtures/lexicons/similarity.tsv")),
    ("sentiment.tsv", include_str!("../fixtures/lexicons/sentiment.tsv")),
    ("care.tsv", include_str!("../fixtures/lexicons/care.tsv")),
    ("fairness.tsv", include_str!("../fixtures/lexicons/fairness.tsv")),
    ("loyalty.tsv", include_str!("../fixtures/lexicons/loyalty.tsv")),
    ("authority.tsv", include_str!("../fixtures/lexicons/authority.tsv")),
    ("purity.tsv", include_str!("../fixtures/lexicons/purity.tsv")),
    ("liberty.tsv", include_str!("../fixtures/lexicons/liberty.tsv")),
    ("gazetteer.csv", include_str!("../fixtures/lexicons/gazetteer.csv")),
    ("rollup.csv", include_str!("../fixtures/lexicons/rollup.csv")),
    ("nationalities.csv", include_str!("../fixtures/lexicons/nationalities.csv")),
    ("regions.csv", include_str!("../fixtures/lexicons/regions.csv")),
    ("negators.tsv", include_str!("../fixtures/lexicons/negators.tsv")),
    ("intensifiers.tsv", include_str!("../fixtures/lexicons/intensifiers.tsv")),
    ("female_terms.tsv", include_str!("../fixtures/lexicons/female_terms.tsv")),
];

/// Writes the embedded mini-lexicons into `dir`.
pub fn materialize_lexicons(dir: &Path) -> Result<(), PipelineError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (name, contents) in EMBEDDED_LEXICONS {
        let path = dir.join(name);
        fs::write(&path, contents).map_err(io_err(&path))?;
    }
    Ok(())
}

/// Outcome and timings of a demo run.
#[derive(Debug, Clone)]
pub struct DemoSummary {
    pub documents: usize,
    pub patterns: usize,
    pub generate_secs: f64,
    pub extract_secs: f64,
    pub report_secs: f64,
    pub extract: ExtractSummary,
    pub report: ReportSummary,
    pub out_dir: PathBuf,
}

/// Generates a synthetic corpus, materializes the bundled lexicons, and runs
/// both stages under `out_dir` (`corpus.conllu`, `lexicons/`, `extract/`,
/// `report/`).
pub fn run_demo(out_dir: &Path, documents: usize, workers: usize) -> Result<DemoSummary, PipelineError> {
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let t0 = Instant::now();
    let docs = generate_corpus(&SynthConfig {
        documents,
        ..SynthConfig::default()
    });
    let corpus_path = out_dir.join("corpus.conllu");
    fs::write(&corpus_path, corpus_to_conllu(&docs)).map_err(io_err(&corpus_path))?;
    let generate_secs = t0.elapsed().as_secs_f64();

    let lexicon_dir = out_dir.join("lexicons");
    materialize_lexicons(&lexicon_dir)?;

    let t1 = Instant::now();
    let mut extract_config = RunConfig::new(
        vec![corpus_path],
        lexicon_dir,
        out_dir.join("extract"),
    );
    extract_config.workers = workers;
    let extract = run_extract(&extract_config)?;
    let extract_secs = t1.elapsed().as_secs_f64();

    let t2 = Instant::now();
    let report_config = ReportConfig::new(
        extract.patterns_path.clone(),
        extract.counts_path.clone(),
        out_dir.join("report"),
    );
    let report = run_report(&report_config)?;
    let report_secs = t2.elapsed().as_secs_f64();

    Ok(DemoSummary {
        documents,
        patterns: extract.patterns_emitted,
        generate_secs,
        extract_secs,
        report_secs,
        extract,
        report,
        out_dir: out_dir.to_path_buf(),
    })
}
