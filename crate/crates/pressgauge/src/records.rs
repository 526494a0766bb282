//! The durable interchange record: one JSON line per scored pattern.
//!
//! Field order is fixed: `doc_id, date, outlet, sentence_index, toi_term,
//! member_indices, negator_count, intensifiers, nuts3, nuts2,
//! location_source, gender`, then the seven polarity components
//! (`sentiment … liberty`) serialized with six decimal places. Absent
//! locations serialize as `null`.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::Deserialize;
use thiserror::Error;

use crate::lexicon::Dimension;
use crate::pattern::{Gender, LocatedPattern, LocationSource};
use crate::polarity::PolarityVector;

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("{path}: i/o error: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

/// A located pattern plus its seven-dimensional score, as written to and
/// read from the pattern file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredRecord {
    pub doc_id: String,
    pub date: NaiveDate,
    pub outlet: String,
    pub sentence_index: usize,
    pub toi_term: String,
    pub member_indices: Vec<usize>,
    pub negator_count: usize,
    pub intensifiers: Vec<String>,
    pub nuts3: Option<String>,
    pub nuts2: Option<String>,
    pub location_source: LocationSource,
    pub gender: Gender,
    pub polarity: PolarityVector,
}

/// Serialized polarity values carry six decimal places; scores are rounded
/// to that grid when a record is built so in-memory and re-read pipelines
/// see identical numbers.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0 // normalize -0.0 so zero always serializes the same way
    } else {
        r
    }
}

impl ScoredRecord {
    pub fn from_located(lp: &LocatedPattern, polarity: &PolarityVector) -> Self {
        let mut rounded = PolarityVector::zero();
        for (d, v) in polarity.components() {
            rounded.set(d, round6(v));
        }
        ScoredRecord {
            doc_id: lp.doc_id.clone(),
            date: lp.date,
            outlet: lp.outlet.clone(),
            sentence_index: lp.pattern.toi.sentence_index,
            toi_term: lp.pattern.toi.matched_term.join(" "),
            member_indices: lp.pattern.members.iter().map(|m| m.token_index).collect(),
            negator_count: lp.pattern.negator_count,
            intensifiers: lp.pattern.intensifier_lemmas.clone(),
            nuts3: lp.nuts3.clone(),
            nuts2: lp.nuts2.clone(),
            location_source: lp.location_source,
            gender: lp.gender,
            polarity: rounded,
        }
    }

    /// The record as one JSON line (no trailing newline).
    pub fn to_json_line(&self) -> String {
        let mut s = String::with_capacity(256);
        s.push('{');
        write!(s, "\"doc_id\":{}", json_str(&self.doc_id)).unwrap();
        write!(s, ",\"date\":\"{}\"", self.date).unwrap();
        write!(s, ",\"outlet\":{}", json_str(&self.outlet)).unwrap();
        write!(s, ",\"sentence_index\":{}", self.sentence_index).unwrap();
        write!(s, ",\"toi_term\":{}", json_str(&self.toi_term)).unwrap();
        s.push_str(",\"member_indices\":[");
        for (i, idx) in self.member_indices.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{idx}").unwrap();
        }
        s.push(']');
        write!(s, ",\"negator_count\":{}", self.negator_count).unwrap();
        s.push_str(",\"intensifiers\":[");
        for (i, lemma) in self.intensifiers.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&json_str(lemma));
        }
        s.push(']');
        write!(s, ",\"nuts3\":{}", json_opt_str(&self.nuts3)).unwrap();
        write!(s, ",\"nuts2\":{}", json_opt_str(&self.nuts2)).unwrap();
        write!(s, ",\"location_source\":\"{}\"", self.location_source.as_str()).unwrap();
        write!(s, ",\"gender\":\"{}\"", self.gender.as_str()).unwrap();
        for (d, v) in self.polarity.components() {
            write!(s, ",\"{}\":{:.6}", d.as_str(), v).unwrap();
        }
        s.push('}');
        s
    }

    pub fn parse_json_line(line: &str) -> Result<Self, String> {
        let raw: RawRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let location_source = match raw.location_source.as_str() {
            "sentence" => LocationSource::Sentence,
            "article_fallback" => LocationSource::ArticleFallback,
            "none" => LocationSource::None,
            other => return Err(format!("unknown location_source {other:?}")),
        };
        let gender = match raw.gender.as_str() {
            "female" => Gender::Female,
            "non_female" => Gender::NonFemale,
            other => return Err(format!("unknown gender {other:?}")),
        };
        let mut polarity = PolarityVector::zero();
        polarity.set(Dimension::Sentiment, raw.sentiment);
        polarity.set(Dimension::Care, raw.care);
        polarity.set(Dimension::Fairness, raw.fairness);
        polarity.set(Dimension::Loyalty, raw.loyalty);
        polarity.set(Dimension::Authority, raw.authority);
        polarity.set(Dimension::Purity, raw.purity);
        polarity.set(Dimension::Liberty, raw.liberty);
        Ok(ScoredRecord {
            doc_id: raw.doc_id,
            date: raw.date,
            outlet: raw.outlet,
            sentence_index: raw.sentence_index,
            toi_term: raw.toi_term,
            member_indices: raw.member_indices,
            negator_count: raw.negator_count,
            intensifiers: raw.intensifiers,
            nuts3: raw.nuts3,
            nuts2: raw.nuts2,
            location_source,
            gender,
            polarity,
        })
    }
}

#[derive(Deserialize)]
struct RawRecord {
    doc_id: String,
    date: NaiveDate,
    outlet: String,
    sentence_index: usize,
    toi_term: String,
    member_indices: Vec<usize>,
    negator_count: usize,
    intensifiers: Vec<String>,
    nuts3: Option<String>,
    nuts2: Option<String>,
    location_source: String,
    gender: String,
    sentiment: f64,
    care: f64,
    fairness: f64,
    loyalty: f64,
    authority: f64,
    purity: f64,
    liberty: f64,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

fn json_opt_str(s: &Option<String>) -> String {
    match s {
        Some(v) => json_str(v),
        None => "null".to_string(),
    }
}

pub fn write_records(path: &Path, records: &[ScoredRecord]) -> Result<(), RecordError> {
    let io_err = |source| RecordError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    for record in records {
        writeln!(w, "{}", record.to_json_line()).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_records(path: &Path) -> Result<Vec<ScoredRecord>, RecordError> {
    let file = File::open(path).map_err(|source| RecordError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = BufReader::new(file);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| RecordError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record = ScoredRecord::parse_json_line(&line).map_err(|message| RecordError::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        })?;
        out.push(record);
    }
    Ok(out)
}
