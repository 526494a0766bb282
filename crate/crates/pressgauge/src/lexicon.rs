//! Lexical resources: topic terms, polarity lexicons, modifier lists and the
//! geographic gazetteer.
//!
//! All resources load from plain text files with fixed schemas:
//!
//! | file | schema |
//! |---|---|
//! | `toi.tsv` | one term per line, space-separated lemmas (1–4) |
//! | `similarity.tsv` | `seed<TAB>neighbor<TAB>score`, score in `[0,1]` |
//! | `<dimension>.tsv` | first line `#scale=[-1,1]` or `#scale=[1,9]`, then `lemma<TAB>score` |
//! | `gazetteer.csv` | header `name,nuts3`; names may span several words |
//! | `rollup.csv` | header `nuts3,nuts2` |
//! | `nationalities.csv` | header `adjective_lemma,code` |
//! | `regions.csv` | header `nuts2,name` |
//! | `negators.tsv`, `intensifiers.tsv`, `female_terms.tsv` | one lemma per line |
//!
//! Polarity files on the 1–9 valence scale are rescaled to `[-1,+1]` at load
//! via [`rescale_moral_valence`]. Lemmas and place names are lowercased at
//! load; scores outside their declared range, duplicate entries, and NUTS3
//! codes without a rollup row are load errors. A loaded [`LexiconBundle`] is
//! immutable and safe to share across threads.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

/// The seven polarity dimensions: plain sentiment plus six moral foundations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Sentiment,
    Care,
    Fairness,
    Loyalty,
    Authority,
    Purity,
    Liberty,
}

impl Dimension {
    pub const ALL: [Dimension; 7] = [
        Dimension::Sentiment,
        Dimension::Care,
        Dimension::Fairness,
        Dimension::Loyalty,
        Dimension::Authority,
        Dimension::Purity,
        Dimension::Liberty,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::Sentiment => "sentiment",
            Dimension::Care => "care",
            Dimension::Fairness => "fairness",
            Dimension::Loyalty => "loyalty",
            Dimension::Authority => "authority",
            Dimension::Purity => "purity",
            Dimension::Liberty => "liberty",
        }
    }

    fn ordinal(self) -> usize {
        Dimension::ALL.iter().position(|d| *d == self).unwrap()
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dimension::ALL
            .iter()
            .copied()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| format!("unknown dimension {s:?}"))
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: i/o error: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Schema {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: score {value} outside {range}")]
    ScoreOutOfRange {
        path: PathBuf,
        line: usize,
        value: f64,
        range: &'static str,
    },
    #[error("gazetteer NUTS3 code {nuts3} has no rollup entry")]
    MissingRollup { nuts3: String },
    #[error("rollup target {nuts2} has no region name")]
    MissingRegionName { nuts2: String },
    #[error("raw moral valence {raw} outside [1,9]")]
    ValenceOutOfRange { raw: f64 },
    #[error("modifier lists overlap on lemma {lemma:?}")]
    ModifierOverlap { lemma: String },
}

fn schema(path: &Path, line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Schema {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Maps a raw 1–9 moral-valence rating onto the `[-1,+1]` polarity range:
/// `(raw - 5) / 4`. Affine, monotone, exact at the endpoints and midpoint.
pub fn rescale_moral_valence(raw: f64) -> Result<f64, LexiconError> {
    if !(1.0..=9.0).contains(&raw) {
        return Err(LexiconError::ValenceOutOfRange { raw });
    }
    Ok((raw - 5.0) / 4.0)
}

/// Terms of interest: a set of lowercased lemma sequences (1–4 lemmas each)
/// that trigger pattern extraction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ToiLexicon {
    terms: BTreeSet<Vec<String>>,
    by_first: HashMap<String, Vec<Vec<String>>>,
}

impl ToiLexicon {
    /// Builds a lexicon from lemma sequences, lowercasing and deduplicating.
    /// Sequences must have 1 to 4 lemmas.
    pub fn from_terms<I, S>(terms: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for term in terms {
            let seq: Vec<String> = term.iter().map(|l| l.as_ref().to_lowercase()).collect();
            if seq.is_empty() || seq.len() > 4 {
                return Err(format!("term {seq:?} must have 1 to 4 lemmas"));
            }
            if seq.iter().any(|l| l.is_empty()) {
                return Err(format!("term {seq:?} contains an empty lemma"));
            }
            set.insert(seq);
        }
        Ok(Self::from_set(set))
    }

    fn from_set(terms: BTreeSet<Vec<String>>) -> Self {
        let mut by_first: HashMap<String, Vec<Vec<String>>> = HashMap::new();
        for term in &terms {
            by_first.entry(term[0].clone()).or_default().push(term.clone());
        }
        for candidates in by_first.values_mut() {
            // longest first so matching is leftmost-longest
            candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        }
        ToiLexicon { terms, by_first }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: &[String]) -> bool {
        self.terms.contains(term)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<String>> {
        self.terms.iter()
    }

    /// Length of the longest term that matches `lemmas` starting at `pos`
    /// (0-based), or `None`.
    pub fn longest_match_at(&self, lemmas: &[&str], pos: usize) -> Option<usize> {
        let candidates = self.by_first.get(lemmas[pos])?;
        'cand: for term in candidates {
            if pos + term.len() > lemmas.len() {
                continue;
            }
            for (k, lemma) in term.iter().enumerate() {
                if lemmas[pos + k] != lemma {
                    continue 'cand;
                }
            }
            return Some(term.len());
        }
        None
    }
}

/// Precomputed semantic-similarity rows `(seed, neighbor, score)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimilarityTable {
    rows: Vec<SimilarityRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityRow {
    pub seed: Vec<String>,
    pub neighbor: Vec<String>,
    pub score: f64,
}

impl SimilarityTable {
    pub fn new(rows: Vec<SimilarityRow>) -> Result<Self, String> {
        let mut seen: HashSet<(Vec<String>, Vec<String>)> = HashSet::new();
        for row in &rows {
            if !(0.0..=1.0).contains(&row.score) {
                return Err(format!("similarity score {} outside [0,1]", row.score));
            }
            if !seen.insert((row.seed.clone(), row.neighbor.clone())) {
                return Err(format!("duplicate similarity pair {:?} -> {:?}", row.seed, row.neighbor));
            }
        }
        Ok(SimilarityTable { rows })
    }

    pub fn rows(&self) -> &[SimilarityRow] {
        &self.rows
    }
}

/// Single-pass seed expansion: the union of `seeds` and every table neighbor
/// whose seed is in `seeds` and whose score is at least `threshold`.
///
/// Expansion is deliberately non-transitive — neighbors of neighbors are not
/// pulled in, so applying it twice can only grow the set if a neighbor also
/// occurs as a table seed.
pub fn expand_toi(seeds: &ToiLexicon, table: &SimilarityTable, threshold: f64) -> ToiLexicon {
    debug_assert!((0.0..=1.0).contains(&threshold));
    let mut terms: BTreeSet<Vec<String>> = seeds.iter().cloned().collect();
    for row in table.rows() {
        if row.score >= threshold && seeds.contains(&row.seed) {
            terms.insert(row.neighbor.clone());
        }
    }
    ToiLexicon::from_set(terms)
}

/// Lemma-to-score lexicon for one polarity dimension; scores lie in `[-1,+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarityLexicon {
    pub dimension: Dimension,
    entries: BTreeMap<String, f64>,
}

impl PolarityLexicon {
    pub fn new(dimension: Dimension) -> Self {
        PolarityLexicon {
            dimension,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I, S>(dimension: Dimension, entries: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut lex = PolarityLexicon::new(dimension);
        for (lemma, score) in entries {
            lex.insert(lemma.as_ref(), score)?;
        }
        Ok(lex)
    }

    pub fn insert(&mut self, lemma: &str, score: f64) -> Result<(), String> {
        if !(-1.0..=1.0).contains(&score) {
            return Err(format!("score {score} outside [-1,1]"));
        }
        let lemma = lemma.to_lowercase();
        if self.entries.insert(lemma.clone(), score).is_some() {
            return Err(format!("duplicate lemma {lemma:?}"));
        }
        Ok(())
    }

    pub fn score(&self, lemma: &str) -> Option<f64> {
        self.entries.get(lemma).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The seven per-dimension polarity lexicons as one lookup structure.
#[derive(Debug, Clone, PartialEq)]
pub struct PolaritySet {
    lexicons: Vec<PolarityLexicon>,
}

impl PolaritySet {
    /// Expects exactly one lexicon per dimension, in any order.
    pub fn new(mut lexicons: Vec<PolarityLexicon>) -> Result<Self, String> {
        lexicons.sort_by_key(|l| l.dimension.ordinal());
        let dims: Vec<Dimension> = lexicons.iter().map(|l| l.dimension).collect();
        if dims != Dimension::ALL {
            return Err(format!("expected one lexicon per dimension, got {dims:?}"));
        }
        Ok(PolaritySet { lexicons })
    }

    pub fn get(&self, dimension: Dimension) -> &PolarityLexicon {
        &self.lexicons[dimension.ordinal()]
    }
}

/// Place names and nationality adjectives resolving to NUTS3 (or country)
/// codes, with the NUTS3→NUTS2 rollup used for regional reporting.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Gazetteer {
    places: BTreeMap<Vec<String>, String>,
    nationalities: BTreeMap<String, String>,
    rollup: BTreeMap<String, String>,
    region_names: BTreeMap<String, String>,
    places_by_first: HashMap<String, Vec<Vec<String>>>,
}

impl Gazetteer {
    pub fn new(
        places: BTreeMap<Vec<String>, String>,
        nationalities: BTreeMap<String, String>,
        rollup: BTreeMap<String, String>,
        region_names: BTreeMap<String, String>,
    ) -> Result<Self, LexiconError> {
        for code in places.values() {
            if !rollup.contains_key(code) {
                return Err(LexiconError::MissingRollup { nuts3: code.clone() });
            }
        }
        for nuts2 in rollup.values() {
            if !region_names.contains_key(nuts2) {
                return Err(LexiconError::MissingRegionName { nuts2: nuts2.clone() });
            }
        }
        let mut places_by_first: HashMap<String, Vec<Vec<String>>> = HashMap::new();
        for name in places.keys() {
            places_by_first.entry(name[0].clone()).or_default().push(name.clone());
        }
        for candidates in places_by_first.values_mut() {
            candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        }
        Ok(Gazetteer {
            places,
            nationalities,
            rollup,
            region_names,
            places_by_first,
        })
    }

    /// NUTS2 for a resolved code. Country-level codes (from nationality
    /// adjectives) have no rollup entry and yield `None`.
    pub fn nuts2_of(&self, code: &str) -> Option<&str> {
        self.rollup.get(code).map(|s| s.as_str())
    }

    pub fn region_name(&self, nuts2: &str) -> Option<&str> {
        self.region_names.get(nuts2).map(|s| s.as_str())
    }

    pub fn nationality(&self, lemma: &str) -> Option<&str> {
        self.nationalities.get(lemma).map(|s| s.as_str())
    }

    /// Longest place name matching lowercased surface forms at `pos`
    /// (0-based); returns `(length, code)`.
    pub fn longest_place_match_at(&self, surfaces: &[String], pos: usize) -> Option<(usize, &str)> {
        let candidates = self.places_by_first.get(&surfaces[pos])?;
        'cand: for name in candidates {
            if pos + name.len() > surfaces.len() {
                continue;
            }
            for (k, word) in name.iter().enumerate() {
                if &surfaces[pos + k] != word {
                    continue 'cand;
                }
            }
            return Some((name.len(), self.places[name].as_str()));
        }
        None
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }
}

/// Negator, intensifier and female-reference lemma lists; pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModifierLists {
    pub negators: BTreeSet<String>,
    pub intensifiers: BTreeSet<String>,
    pub female_terms: BTreeSet<String>,
}

impl ModifierLists {
    pub fn new(
        negators: BTreeSet<String>,
        intensifiers: BTreeSet<String>,
        female_terms: BTreeSet<String>,
    ) -> Result<Self, LexiconError> {
        let lists = [&negators, &intensifiers, &female_terms];
        for (i, a) in lists.iter().enumerate() {
            for b in lists.iter().skip(i + 1) {
                if let Some(lemma) = a.intersection(b).next() {
                    return Err(LexiconError::ModifierOverlap { lemma: lemma.clone() });
                }
            }
        }
        Ok(ModifierLists {
            negators,
            intensifiers,
            female_terms,
        })
    }
}

/// Every lexical resource needed by the pipeline, loaded and validated.
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconBundle {
    pub toi: ToiLexicon,
    pub similarity: SimilarityTable,
    pub polarity: PolaritySet,
    pub gazetteer: Gazetteer,
    pub modifiers: ModifierLists,
}

impl LexiconBundle {
    /// Replaces the term set with its similarity expansion at `threshold`.
    pub fn with_expanded_toi(mut self, threshold: f64) -> Self {
        self.toi = expand_toi(&self.toi, &self.similarity, threshold);
        self
    }
}

/// Lexicon score of `lemma` on `dimension`; absent lemmas are neutral (0).
pub fn token_polarity(bundle: &LexiconBundle, lemma: &str, dimension: Dimension) -> f64 {
    bundle.polarity.get(dimension).score(lemma).unwrap_or(0.0)
}

/// Locations of the individual lexicon files.
#[derive(Debug, Clone)]
pub struct LexiconPaths {
    pub toi: PathBuf,
    pub similarity: PathBuf,
    pub polarity: [PathBuf; 7],
    pub gazetteer: PathBuf,
    pub rollup: PathBuf,
    pub nationalities: PathBuf,
    pub regions: PathBuf,
    pub negators: PathBuf,
    pub intensifiers: PathBuf,
    pub female_terms: PathBuf,
}

/// File names expected by [`LexiconPaths::from_dir`].
pub const LEXICON_FILE_NAMES: [&str; 16] = [
    "toi.tsv",
    "similarity.tsv",
    "sentiment.tsv",
    "care.tsv",
    "fairness.tsv",
    "loyalty.tsv",
    "authority.tsv",
    "purity.tsv",
    "liberty.tsv",
    "gazetteer.csv",
    "rollup.csv",
    "nationalities.csv",
    "regions.csv",
    "negators.tsv",
    "intensifiers.tsv",
    "female_terms.tsv",
];

impl LexiconPaths {
    /// Standard directory layout: one file per resource, named
    /// `<dimension>.tsv` for polarity lexicons (see [`LEXICON_FILE_NAMES`]).
    pub fn from_dir(dir: &Path) -> Self {
        let polarity =
            Dimension::ALL.map(|d| dir.join(format!("{}.tsv", d.as_str())));
        LexiconPaths {
            toi: dir.join("toi.tsv"),
            similarity: dir.join("similarity.tsv"),
            polarity,
            gazetteer: dir.join("gazetteer.csv"),
            rollup: dir.join("rollup.csv"),
            nationalities: dir.join("nationalities.csv"),
            regions: dir.join("regions.csv"),
            negators: dir.join("negators.tsv"),
            intensifiers: dir.join("intensifiers.tsv"),
            female_terms: dir.join("female_terms.tsv"),
        }
    }

    pub fn all_files(&self) -> Vec<&Path> {
        let mut v: Vec<&Path> = vec![
            &self.toi,
            &self.similarity,
        ];
        v.extend(self.polarity.iter().map(|p| p.as_path()));
        v.extend([
            self.gazetteer.as_path(),
            self.rollup.as_path(),
            self.nationalities.as_path(),
            self.regions.as_path(),
            self.negators.as_path(),
            self.intensifiers.as_path(),
            self.female_terms.as_path(),
        ]);
        v
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, LexiconError> {
    let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text.lines().map(|l| l.trim_end_matches('\r').to_string()).collect())
}

fn parse_term(text: &str) -> Vec<String> {
    text.split_whitespace().map(|l| l.to_lowercase()).collect()
}

fn load_toi(path: &Path) -> Result<ToiLexicon, LexiconError> {
    let mut terms = BTreeSet::new();
    for (i, line) in read_lines(path)?.iter().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let seq = parse_term(line);
        if seq.len() > 4 {
            return Err(schema(path, line_no, format!("term has {} lemmas, maximum is 4", seq.len())));
        }
        if !terms.insert(seq.clone()) {
            return Err(schema(path, line_no, format!("duplicate term {:?}", line.trim())));
        }
    }
    if terms.is_empty() {
        return Err(schema(path, 1, "term lexicon is empty"));
    }
    Ok(ToiLexicon::from_set(terms))
}

fn load_similarity(path: &Path) -> Result<SimilarityTable, LexiconError> {
    let mut rows = Vec::new();
    let mut seen: HashSet<(Vec<String>, Vec<String>)> = HashSet::new();
    for (i, line) in read_lines(path)?.iter().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(schema(path, line_no, format!("expected 3 columns, found {}", cols.len())));
        }
        let score: f64 = cols[2]
            .trim()
            .parse()
            .map_err(|_| schema(path, line_no, format!("invalid score {:?}", cols[2])))?;
        if !(0.0..=1.0).contains(&score) {
            return Err(LexiconError::ScoreOutOfRange {
                path: path.to_path_buf(),
                line: line_no,
                value: score,
                range: "[0,1]",
            });
        }
        let row = SimilarityRow {
            seed: parse_term(cols[0]),
            neighbor: parse_term(cols[1]),
            score,
        };
        if !seen.insert((row.seed.clone(), row.neighbor.clone())) {
            return Err(schema(path, line_no, format!("duplicate pair {:?} -> {:?}", cols[0], cols[1])));
        }
        rows.push(row);
    }
    Ok(SimilarityTable { rows })
}

fn load_polarity(path: &Path, dimension: Dimension) -> Result<PolarityLexicon, LexiconError> {
    let lines = read_lines(path)?;
    let header = lines
        .first()
        .map(|l| l.trim())
        .ok_or_else(|| schema(path, 1, "empty polarity lexicon (missing #scale header)"))?;
    let raw_scale = match header {
        "#scale=[-1,1]" => false,
        "#scale=[1,9]" => true,
        other => {
            return Err(schema(
                path,
                1,
                format!("first line must be #scale=[-1,1] or #scale=[1,9], found {other:?}"),
            ))
        }
    };
    let mut lex = PolarityLexicon::new(dimension);
    for (i, line) in lines.iter().enumerate().skip(1) {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 2 {
            return Err(schema(path, line_no, format!("expected 2 columns, found {}", cols.len())));
        }
        let raw: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|_| schema(path, line_no, format!("invalid score {:?}", cols[1])))?;
        let score = if raw_scale {
            rescale_moral_valence(raw).map_err(|_| LexiconError::ScoreOutOfRange {
                path: path.to_path_buf(),
                line: line_no,
                value: raw,
                range: "[1,9]",
            })?
        } else {
            if !(-1.0..=1.0).contains(&raw) {
                return Err(LexiconError::ScoreOutOfRange {
                    path: path.to_path_buf(),
                    line: line_no,
                    value: raw,
                    range: "[-1,1]",
                });
            }
            raw
        };
        lex.insert(cols[0], score)
            .map_err(|msg| schema(path, line_no, msg))?;
    }
    Ok(lex)
}

fn split_csv_row<'a>(path: &Path, line_no: usize, line: &'a str, cols: usize) -> Result<Vec<&'a str>, LexiconError> {
    let parts: Vec<&str> = line.split(',').collect();
    if parts.len() != cols {
        return Err(schema(path, line_no, format!("expected {cols} comma-separated fields, found {}", parts.len())));
    }
    Ok(parts.into_iter().map(|p| p.trim()).collect())
}

fn load_csv_map(path: &Path, header: &str) -> Result<Vec<(String, String)>, LexiconError> {
    let lines = read_lines(path)?;
    match lines.first().map(|l| l.trim()) {
        Some(h) if h == header => {}
        Some(other) => return Err(schema(path, 1, format!("expected header {header:?}, found {other:?}"))),
        None => return Err(schema(path, 1, format!("empty file (expected header {header:?})"))),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.iter().enumerate().skip(1) {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cols = split_csv_row(path, line_no, line, 2)?;
        rows.push((cols[0].to_string(), cols[1].to_string()));
    }
    Ok(rows)
}

fn load_gazetteer(paths: &LexiconPaths) -> Result<Gazetteer, LexiconError> {
    let mut places = BTreeMap::new();
    for (i, (name, code)) in load_csv_map(&paths.gazetteer, "name,nuts3")?.into_iter().enumerate() {
        let seq = parse_term(&name);
        if seq.is_empty() {
            return Err(schema(&paths.gazetteer, i + 2, "empty place name"));
        }
        if places.insert(seq, code).is_some() {
            return Err(schema(&paths.gazetteer, i + 2, format!("duplicate place name {name:?}")));
        }
    }
    let mut rollup = BTreeMap::new();
    for (i, (nuts3, nuts2)) in load_csv_map(&paths.rollup, "nuts3,nuts2")?.into_iter().enumerate() {
        if rollup.insert(nuts3.clone(), nuts2).is_some() {
            return Err(schema(&paths.rollup, i + 2, format!("duplicate rollup for {nuts3}")));
        }
    }
    let mut nationalities = BTreeMap::new();
    for (i, (lemma, code)) in load_csv_map(&paths.nationalities, "adjective_lemma,code")?.into_iter().enumerate() {
        if nationalities.insert(lemma.to_lowercase(), code).is_some() {
            return Err(schema(&paths.nationalities, i + 2, format!("duplicate nationality {lemma:?}")));
        }
    }
    let mut region_names = BTreeMap::new();
    for (i, (nuts2, name)) in load_csv_map(&paths.regions, "nuts2,name")?.into_iter().enumerate() {
        if region_names.insert(nuts2.clone(), name).is_some() {
            return Err(schema(&paths.regions, i + 2, format!("duplicate region {nuts2}")));
        }
    }
    Gazetteer::new(places, nationalities, rollup, region_names)
}

fn load_lemma_set(path: &Path) -> Result<BTreeSet<String>, LexiconError> {
    let mut set = BTreeSet::new();
    for line in read_lines(path)? {
        let lemma = line.trim();
        if lemma.is_empty() || lemma.starts_with('#') {
            continue;
        }
        set.insert(lemma.to_lowercase());
    }
    Ok(set)
}

/// Loads and validates every resource. The returned bundle is a pure
/// function of the file contents: loading the same files twice yields
/// equal bundles.
pub fn load_lexicons(paths: &LexiconPaths) -> Result<LexiconBundle, LexiconError> {
    let toi = load_toi(&paths.toi)?;
    let similarity = load_similarity(&paths.similarity)?;
    let mut lexicons = Vec::with_capacity(7);
    for (dim, path) in Dimension::ALL.iter().zip(paths.polarity.iter()) {
        lexicons.push(load_polarity(path, *dim)?);
    }
    let polarity = PolaritySet::new(lexicons).expect("one lexicon per dimension by construction");
    let gazetteer = load_gazetteer(paths)?;
    let modifiers = ModifierLists::new(
        load_lemma_set(&paths.negators)?,
        load_lemma_set(&paths.intensifiers)?,
        load_lemma_set(&paths.female_terms)?,
    )?;
    Ok(LexiconBundle {
        toi,
        similarity,
        polarity,
        gazetteer,
        modifiers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(s: &str) -> Vec<String> {
        parse_term(s)
    }

    #[test]
    fn rescale_is_exact_at_probe_points() {
        assert_eq!(rescale_moral_valence(5.0).unwrap(), 0.0);
        assert_eq!(rescale_moral_valence(1.0).unwrap(), -1.0);
        assert_eq!(rescale_moral_valence(9.0).unwrap(), 1.0);
        assert_eq!(rescale_moral_valence(7.0).unwrap(), 0.5);
    }

    #[test]
    fn rescale_rejects_out_of_domain() {
        assert!(rescale_moral_valence(0.5).is_err());
        assert!(rescale_moral_valence(9.1).is_err());
        assert!(rescale_moral_valence(f64::NAN).is_err());
    }

    #[test]
    fn expand_keeps_high_scoring_neighbors_only() {
        let seeds = ToiLexicon::from_terms(vec![vec!["unemployment"]]).unwrap();
        let table = SimilarityTable::new(vec![
            SimilarityRow { seed: term("unemployment"), neighbor: term("joblessness"), score: 0.82 },
            SimilarityRow { seed: term("unemployment"), neighbor: term("holiday"), score: 0.31 },
        ])
        .unwrap();
        let expanded = expand_toi(&seeds, &table, 0.7);
        assert_eq!(expanded.len(), 2);
        assert!(expanded.contains(&term("joblessness")));
        assert!(!expanded.contains(&term("holiday")));
    }

    #[test]
    fn expand_with_unreachable_threshold_is_identity() {
        let seeds = ToiLexicon::from_terms(vec![vec!["salary"]]).unwrap();
        let table = SimilarityTable::new(vec![SimilarityRow {
            seed: term("salary"),
            neighbor: term("wage"),
            score: 0.99,
        }])
        .unwrap();
        let expanded = expand_toi(&seeds, &table, 1.0);
        assert_eq!(expanded, seeds);
    }

    #[test]
    fn expand_is_single_pass_not_transitive() {
        let seeds = ToiLexicon::from_terms(vec![vec!["unemployment"]]).unwrap();
        let table = SimilarityTable::new(vec![
            SimilarityRow { seed: term("unemployment"), neighbor: term("joblessness"), score: 0.9 },
            SimilarityRow { seed: term("joblessness"), neighbor: term("idleness"), score: 0.9 },
        ])
        .unwrap();
        let once = expand_toi(&seeds, &table, 0.7);
        assert!(!once.contains(&term("idleness")));
        // applying again treats the acquired neighbor as a seed: documented
        // single-pass semantics, growth only through chained table rows
        let twice = expand_toi(&once, &table, 0.7);
        assert!(twice.contains(&term("idleness")));
    }

    #[test]
    fn expand_is_idempotent_without_chained_seeds() {
        let seeds = ToiLexicon::from_terms(vec![vec!["salary"], vec!["layoff"]]).unwrap();
        let table = SimilarityTable::new(vec![
            SimilarityRow { seed: term("salary"), neighbor: term("wage"), score: 0.88 },
            SimilarityRow { seed: term("layoff"), neighbor: term("dismissal"), score: 0.79 },
        ])
        .unwrap();
        let once = expand_toi(&seeds, &table, 0.7);
        let twice = expand_toi(&once, &table, 0.7);
        assert_eq!(once, twice);
    }

    #[test]
    fn polarity_lexicon_rejects_out_of_range_and_duplicates() {
        let mut lex = PolarityLexicon::new(Dimension::Sentiment);
        assert!(lex.insert("good", 1.5).is_err());
        lex.insert("good", 0.5).unwrap();
        assert!(lex.insert("good", 0.4).is_err());
    }

    #[test]
    fn gazetteer_requires_rollup_for_every_place_code() {
        let mut places = BTreeMap::new();
        places.insert(term("madrid"), "ES300".to_string());
        let err = Gazetteer::new(places, BTreeMap::new(), BTreeMap::new(), BTreeMap::new()).unwrap_err();
        match err {
            LexiconError::MissingRollup { nuts3 } => assert_eq!(nuts3, "ES300"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn modifier_lists_must_be_disjoint() {
        let negators: BTreeSet<String> = ["not".to_string()].into();
        let intensifiers: BTreeSet<String> = ["not".to_string()].into();
        let err = ModifierLists::new(negators, intensifiers, BTreeSet::new()).unwrap_err();
        assert!(matches!(err, LexiconError::ModifierOverlap { .. }));
    }

    #[test]
    fn leftmost_longest_helper_prefers_longer_terms() {
        let lex = ToiLexicon::from_terms(vec![vec!["job"], vec!["job", "insecurity"]]).unwrap();
        let lemmas = ["great", "job", "insecurity"];
        assert_eq!(lex.longest_match_at(&lemmas, 1), Some(2));
        assert_eq!(lex.longest_match_at(&lemmas, 0), None);
    }
}
