//! Thin command-line front end over the library pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pressgauge::pipeline::{
    run_demo, run_extract, run_report, ReportConfig, RunConfig, DEFAULT_THRESHOLD,
    DEFAULT_WINDOW_DAYS,
};
use pressgauge::polarity::{DEFAULT_INTENSIFIER_FACTOR, DEFAULT_NEGATION_FACTOR};

#[derive(Parser)]
#[command(name = "pressgauge", version, about = "Aspect-based polarity extraction and reporting for parsed news corpora", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract and score patterns from one or more corpora
    Extract(ExtractArgs),
    /// Build the statistical reports from a pattern file
    Report(ReportArgs),
    /// Generate a synthetic corpus and run both stages on it
    Demo(DemoArgs),
}

#[derive(Args)]
struct ExtractArgs {
    /// Corpus files (CoNLL-U with metadata comments)
    #[arg(long, required = true, num_args = 1.., env = "PRESSGAUGE_CORPUS", value_delimiter = ',')]
    corpus: Vec<PathBuf>,
    /// Directory holding the lexicon files
    #[arg(long, env = "PRESSGAUGE_LEXICONS")]
    lexicons: PathBuf,
    /// Output directory
    #[arg(long, env = "PRESSGAUGE_OUT")]
    out: PathBuf,
    /// Similarity threshold for term expansion
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, env = "PRESSGAUGE_THRESHOLD")]
    threshold: f64,
    /// Worker threads for extraction
    #[arg(long, default_value_t = 1, env = "PRESSGAUGE_WORKERS")]
    workers: usize,
    /// Damping factor applied by each negator
    #[arg(long, default_value_t = DEFAULT_NEGATION_FACTOR, env = "PRESSGAUGE_NEGATION_FACTOR")]
    negation_factor: f64,
    /// Magnitude factor applied by each intensifier
    #[arg(long, default_value_t = DEFAULT_INTENSIFIER_FACTOR, env = "PRESSGAUGE_INTENSIFIER_FACTOR")]
    intensifier_factor: f64,
}

#[derive(Args)]
struct ReportArgs {
    /// Pattern file produced by `extract`
    #[arg(long, env = "PRESSGAUGE_PATTERNS")]
    patterns: PathBuf,
    /// Per-day corpus counts CSV (date,article_count,outlet_count)
    #[arg(long, env = "PRESSGAUGE_CORPUS_COUNTS")]
    corpus_counts: PathBuf,
    /// Output directory
    #[arg(long, env = "PRESSGAUGE_OUT")]
    out: PathBuf,
    /// Smoothing window in days for the daily series
    #[arg(long, default_value_t = DEFAULT_WINDOW_DAYS, env = "PRESSGAUGE_WINDOW")]
    window: u32,
}

#[derive(Args)]
struct DemoArgs {
    /// Output directory
    #[arg(long, default_value = "demo_out", env = "PRESSGAUGE_OUT")]
    out: PathBuf,
    /// Synthetic documents to generate
    #[arg(long, default_value_t = 10_000, env = "PRESSGAUGE_DOCS")]
    docs: usize,
    /// Worker threads for extraction
    #[arg(long, default_value_t = 4, env = "PRESSGAUGE_WORKERS")]
    workers: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit codes don't distinguish usage errors; keep 0
            // for --help/--version and 1 for bad usage
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let result = match cli.command {
        Command::Extract(args) => {
            let mut config = RunConfig::new(args.corpus, args.lexicons, args.out);
            config.threshold = args.threshold;
            config.workers = args.workers;
            config.negation_factor = args.negation_factor;
            config.intensifier_factor = args.intensifier_factor;
            run_extract(&config).map(|summary| {
                println!(
                    "documents read: {} (accepted {}, rejected {})",
                    summary.documents_read, summary.documents_accepted, summary.documents_rejected
                );
                println!("patterns emitted: {}", summary.patterns_emitted);
                println!("wrote {}", summary.patterns_path.display());
                println!("wrote {}", summary.counts_path.display());
                println!("wrote {}", summary.manifest_path.display());
            })
        }
        Command::Report(args) => {
            let mut config = ReportConfig::new(args.patterns, args.corpus_counts, args.out);
            config.window_days = args.window;
            run_report(&config).map(|summary| {
                for warning in &summary.warnings {
                    eprintln!("warning: {warning}");
                }
                println!("records read: {}", summary.records);
                println!("files written: {}", summary.files_written.len());
                for file in &summary.files_written {
                    println!("wrote {}", file.display());
                }
            })
        }
        Command::Demo(args) => run_demo(&args.out, args.docs, args.workers).map(|summary| {
            for warning in &summary.report.warnings {
                eprintln!("warning: {warning}");
            }
            println!(
                "generated {} documents in {:.2}s",
                summary.documents, summary.generate_secs
            );
            println!(
                "extract: {} patterns in {:.2}s",
                summary.patterns, summary.extract_secs
            );
            println!(
                "report: {} files in {:.2}s",
                summary.report.files_written.len(),
                summary.report_secs
            );
            println!("outputs under {}", summary.out_dir.display());
        }),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
