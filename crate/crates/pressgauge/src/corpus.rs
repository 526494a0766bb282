//! Dependency-parsed corpus model and CoNLL-U reader.
//!
//! A corpus is a single UTF-8 stream of CoNLL-U sentences (10 tab-separated
//! columns) with document boundaries and article metadata carried in comment
//! lines:
//!
//! ```text
//! # newdoc id = d01
//! # meta::date = 2008-10-27
//! # meta::outlet = El Mundo
//! # meta::scope = national
//! 1	Unemployment	unemployment	NOUN	_	_	2	nsubj	_	_
//! 2	rises	rise	VERB	_	_	0	root	_	_
//! ```
//!
//! Only the ID, FORM, LEMMA, UPOS, HEAD and DEPREL columns are read; XPOS,
//! FEATS, DEPS and MISC are ignored. Token IDs must be plain integers
//! (multiword ranges and empty nodes are outside the canonical subset).
//! Lemmas are lowercased at ingestion; all downstream lexicon matching is
//! lemma-and-lowercase based.
//!
//! Reading is fault-tolerant at document granularity: a malformed token line,
//! missing metadata, or an invalid dependency tree rejects the containing
//! document (with a reason and line number) and reading resumes at the next
//! `# newdoc` header. Structural errors in the stream itself (content before
//! the first document header, non-UTF-8 bytes) abort the whole read.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use thiserror::Error;

/// Whether an outlet has national or regional circulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    National,
    Regional,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::National => "national",
            Scope::Regional => "regional",
        }
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "national" => Ok(Scope::National),
            "regional" => Ok(Scope::Regional),
            other => Err(format!("invalid scope {other:?} (expected national|regional)")),
        }
    }
}

/// One token of a dependency-parsed sentence.
///
/// `index` is the 1-based position within the sentence. `head` is the index
/// of the governing token, with 0 marking the sentence root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub surface: String,
    pub lemma: String,
    pub upos: String,
    pub head: usize,
    pub deprel: String,
}

/// An ordered list of tokens whose head links form a single-rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> Option<&Token> {
        self.tokens.get(index.checked_sub(1)?)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.lemma.as_str())
    }
}

/// A parsed article: metadata plus its sentences (title sentences first,
/// then the body, in input order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub date: NaiveDate,
    pub outlet: String,
    pub scope: Scope,
    pub sentences: Vec<Sentence>,
}

/// A single structural defect found by [`validate_document`].
///
/// Violations are data, not failures: a report with no entries means the
/// document satisfies every model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 0-based sentence index, when the defect is sentence-scoped.
    pub sentence: Option<usize>,
    /// 1-based token index, when the defect is token-scoped.
    pub token: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sentence, self.token) {
            (Some(s), Some(t)) => write!(f, "sentence {s}, token {t}: {}", self.message),
            (Some(s), None) => write!(f, "sentence {s}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

fn violation(sentence: Option<usize>, token: Option<usize>, message: impl Into<String>) -> Violation {
    Violation {
        sentence,
        token,
        message: message.into(),
    }
}

/// Checks every model invariant and returns the list of violations found.
pub fn validate_document(doc: &Document) -> Vec<Violation> {
    let mut out = Vec::new();
    if doc.doc_id.is_empty() {
        out.push(violation(None, None, "empty doc id"));
    }
    if doc.sentences.is_empty() {
        out.push(violation(None, None, "no sentences"));
    }
    for (si, sentence) in doc.sentences.iter().enumerate() {
        validate_sentence(sentence, si, &mut out);
    }
    out
}

fn validate_sentence(sentence: &Sentence, si: usize, out: &mut Vec<Violation>) {
    let n = sentence.tokens.len();
    if n == 0 {
        out.push(violation(Some(si), None, "empty sentence"));
        return;
    }
    let mut structurally_sound = true;
    for (pos, tok) in sentence.tokens.iter().enumerate() {
        if tok.index != pos + 1 {
            out.push(violation(
                Some(si),
                Some(tok.index),
                format!("token index {} at position {}", tok.index, pos + 1),
            ));
            structurally_sound = false;
        }
        if tok.lemma.is_empty() {
            out.push(violation(Some(si), Some(tok.index), "empty lemma"));
        }
        if tok.upos.is_empty() {
            out.push(violation(Some(si), Some(tok.index), "empty upos"));
        }
        if tok.head == tok.index {
            out.push(violation(Some(si), Some(tok.index), "token is its own head"));
            structurally_sound = false;
        }
        if tok.head > n {
            out.push(violation(
                Some(si),
                Some(tok.index),
                format!("head {} out of range ({} tokens)", tok.head, n),
            ));
            structurally_sound = false;
        }
    }
    let roots = sentence.tokens.iter().filter(|t| t.head == 0).count();
    if roots != 1 {
        out.push(violation(Some(si), None, format!("expected one root, found {roots}")));
    }
    if !structurally_sound || roots != 1 {
        return;
    }
    // Single root and in-range heads established; any remaining defect is a cycle.
    for tok in &sentence.tokens {
        let mut cur = tok.head;
        let mut steps = 0;
        while cur != 0 {
            cur = sentence.tokens[cur - 1].head;
            steps += 1;
            if steps > n {
                out.push(violation(
                    Some(si),
                    Some(tok.index),
                    "head links contain a cycle",
                ));
                return;
            }
        }
    }
}

/// A document dropped during reading, with the reason it was dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentReject {
    pub doc_id: Option<String>,
    /// 1-based line of the `# newdoc` header (or of the offending line).
    pub line: usize,
    pub reason: String,
}

/// Result of reading a corpus stream: accepted documents in input order,
/// plus every rejected document with its reason. Documents read equals
/// `documents.len() + rejects.len()`.
#[derive(Debug, Clone, Default)]
pub struct ParsedCorpus {
    pub documents: Vec<Document>,
    pub rejects: Vec<DocumentReject>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error reading corpus: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: content before the first `# newdoc id =` header")]
    ContentBeforeFirstDocument { line: usize },
}

struct DocBuilder {
    doc_id: String,
    header_line: usize,
    meta: BTreeMap<String, String>,
    sentences: Vec<Sentence>,
    current: Vec<Token>,
    failure: Option<String>,
}

impl DocBuilder {
    fn new(doc_id: String, header_line: usize) -> Self {
        DocBuilder {
            doc_id,
            header_line,
            meta: BTreeMap::new(),
            sentences: Vec::new(),
            current: Vec::new(),
            failure: None,
        }
    }

    fn fail(&mut self, reason: String) {
        if self.failure.is_none() {
            self.failure = Some(reason);
        }
    }

    fn end_sentence(&mut self) {
        if !self.current.is_empty() {
            self.sentences.push(Sentence::new(std::mem::take(&mut self.current)));
        }
    }

    fn finish(mut self, seen_ids: &mut HashSet<String>) -> Result<Document, DocumentReject> {
        self.end_sentence();
        let reject = |doc_id: &str, line: usize, reason: String| DocumentReject {
            doc_id: Some(doc_id.to_string()),
            line,
            reason,
        };
        if let Some(reason) = self.failure {
            return Err(reject(&self.doc_id, self.header_line, reason));
        }
        let missing: Vec<&str> = ["date", "outlet", "scope"]
            .iter()
            .copied()
            .filter(|k| !self.meta.contains_key(*k))
            .collect();
        if !missing.is_empty() {
            return Err(reject(
                &self.doc_id,
                self.header_line,
                format!("missing required metadata: {}", missing.join(", ")),
            ));
        }
        let date = match self.meta["date"].parse::<NaiveDate>() {
            Ok(d) => d,
            Err(_) => {
                return Err(reject(
                    &self.doc_id,
                    self.header_line,
                    format!("invalid meta::date {:?} (expected ISO-8601 day)", self.meta["date"]),
                ))
            }
        };
        let scope = match self.meta["scope"].parse::<Scope>() {
            Ok(s) => s,
            Err(e) => return Err(reject(&self.doc_id, self.header_line, e)),
        };
        let doc = Document {
            doc_id: self.doc_id,
            date,
            outlet: self.meta["outlet"].clone(),
            scope,
            sentences: self.sentences,
        };
        let violations = validate_document(&doc);
        if !violations.is_empty() {
            let reasons: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(reject(&doc.doc_id, self.header_line, reasons.join("; ")));
        }
        if !seen_ids.insert(doc.doc_id.clone()) {
            return Err(reject(
                &doc.doc_id,
                self.header_line,
                "duplicate doc id within corpus".to_string(),
            ));
        }
        Ok(doc)
    }
}

fn parse_token_line(line: &str, line_no: usize) -> Result<Token, String> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(format!("line {line_no}: expected 10 columns, found {}", cols.len()));
    }
    let index: usize = cols[0]
        .parse()
        .map_err(|_| format!("line {line_no}: token id {:?} is not a plain integer", cols[0]))?;
    let head: usize = cols[6]
        .parse()
        .map_err(|_| format!("line {line_no}: head {:?} is not a non-negative integer", cols[6]))?;
    Ok(Token {
        index,
        surface: cols[1].to_string(),
        lemma: cols[2].to_lowercase(),
        upos: cols[3].to_string(),
        head,
        deprel: cols[7].to_string(),
    })
}

/// Reads a corpus stream into accepted documents plus per-document rejects.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<ParsedCorpus, CorpusError> {
    let mut out = ParsedCorpus::default();
    let mut seen_ids: HashSet<String> = HashSet::new();
    let mut builder: Option<DocBuilder> = None;

    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let mut line = line?;
        if line_no == 1 {
            if let Some(stripped) = line.strip_prefix('\u{feff}') {
                line = stripped.to_string();
            }
        }
        let line = line.trim_end_matches('\r');

        if let Some(id) = line.strip_prefix("# newdoc id =") {
            if let Some(done) = builder.take() {
                match done.finish(&mut seen_ids) {
                    Ok(doc) => out.documents.push(doc),
                    Err(reject) => out.rejects.push(reject),
                }
            }
            builder = Some(DocBuilder::new(id.trim().to_string(), line_no));
            continue;
        }

        if line.trim().is_empty() {
            if let Some(b) = builder.as_mut() {
                b.end_sentence();
            }
            continue;
        }

        let Some(b) = builder.as_mut() else {
            return Err(CorpusError::ContentBeforeFirstDocument { line: line_no });
        };
        if b.failure.is_some() {
            continue; // skip to the next document header
        }

        if let Some(rest) = line.strip_prefix("# meta::") {
            if let Some(eq) = rest.find('=') {
                let key = rest[..eq].trim().to_string();
                let value = rest[eq + 1..].trim().to_string();
                b.meta.insert(key, value);
            } else {
                b.fail(format!("line {line_no}: malformed metadata line {line:?}"));
            }
            continue;
        }
        if line.starts_with('#') {
            continue; // other comments (e.g. `# text = ...`) are ignored
        }

        match parse_token_line(line, line_no) {
            Ok(tok) => b.current.push(tok),
            Err(reason) => b.fail(reason),
        }
    }

    if let Some(done) = builder.take() {
        match done.finish(&mut seen_ids) {
            Ok(doc) => out.documents.push(doc),
            Err(reject) => out.rejects.push(reject),
        }
    }
    Ok(out)
}

pub fn parse_corpus_str(input: &str) -> Result<ParsedCorpus, CorpusError> {
    parse_corpus(input.as_bytes())
}

pub fn parse_corpus_path(path: &Path) -> Result<ParsedCorpus, CorpusError> {
    let file = File::open(path)?;
    parse_corpus(BufReader::new(file))
}

/// Serializes a document back to the canonical CoNLL-U subset emitted and
/// consumed by this crate. Re-parsing the output reproduces the document
/// field-by-field.
pub fn to_conllu(doc: &Document) -> String {
    let mut out = String::new();
    write_conllu(doc, &mut out);
    out
}

/// Appends the canonical serialization of `doc` to `out`.
pub fn write_conllu(doc: &Document, out: &mut String) {
    use std::fmt::Write;
    writeln!(out, "# newdoc id = {}", doc.doc_id).unwrap();
    writeln!(out, "# meta::date = {}", doc.date).unwrap();
    writeln!(out, "# meta::outlet = {}", doc.outlet).unwrap();
    writeln!(out, "# meta::scope = {}", doc.scope.as_str()).unwrap();
    for sentence in &doc.sentences {
        for t in &sentence.tokens {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_",
                t.index, t.surface, t.lemma, t.upos, t.head, t.deprel
            )
            .unwrap();
        }
        out.push('\n');
    }
}
