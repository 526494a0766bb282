//! Statistical reporting over scored patterns: normalized daily series with
//! trailing smoothing, distribution summaries, grouped quantile tables with
//! Female vs Non-Female percentage differences, and Mann-Whitney U tests.
//!
//! Aggregations sort their inputs before folding, so every statistic is
//! invariant under input order and under how work was split across workers.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{Datelike, Days, NaiveDate};
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::corpus::Document;
use crate::lexicon::Dimension;
use crate::pattern::Gender;
use crate::records::ScoredRecord;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("no corpus counts for date {date}")]
    MissingDate { date: NaiveDate },
    #[error("{path}: i/o error: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

/// Per-day corpus volume used for normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DayCount {
    pub articles: u64,
    pub outlets: u64,
}

/// Calendar of per-day article and outlet counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusCounts {
    per_day: BTreeMap<NaiveDate, DayCount>,
}

impl CorpusCounts {
    pub fn new(per_day: BTreeMap<NaiveDate, DayCount>) -> Self {
        CorpusCounts { per_day }
    }

    pub fn get(&self, date: NaiveDate) -> Option<DayCount> {
        self.per_day.get(&date).copied()
    }

    pub fn len(&self) -> usize {
        self.per_day.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_day.is_empty()
    }

    /// Day-level tally of a document set: articles per date, distinct
    /// outlets per date.
    pub fn from_documents(docs: &[Document]) -> Self {
        let mut articles: BTreeMap<NaiveDate, u64> = BTreeMap::new();
        let mut outlets: BTreeMap<NaiveDate, std::collections::BTreeSet<&str>> = BTreeMap::new();
        for doc in docs {
            *articles.entry(doc.date).or_default() += 1;
            outlets.entry(doc.date).or_default().insert(doc.outlet.as_str());
        }
        let per_day = articles
            .into_iter()
            .map(|(date, a)| {
                (
                    date,
                    DayCount {
                        articles: a,
                        outlets: outlets[&date].len() as u64,
                    },
                )
            })
            .collect();
        CorpusCounts { per_day }
    }

    /// `date,article_count,outlet_count` rows, sorted by date.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("date,article_count,outlet_count\n");
        for (date, count) in &self.per_day {
            out.push_str(&format!("{date},{},{}\n", count.articles, count.outlets));
        }
        out
    }

    pub fn read_csv(path: &Path) -> Result<Self, StatsError> {
        let text = fs::read_to_string(path).map_err(|source| StatsError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let malformed = |line: usize, message: String| StatsError::Malformed {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "date,article_count,outlet_count" => {}
            Some((_, h)) => return Err(malformed(1, format!("unexpected header {h:?}"))),
            None => return Err(malformed(1, "empty file".to_string())),
        }
        let mut per_day = BTreeMap::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(malformed(i + 1, format!("expected 3 fields, found {}", cols.len())));
            }
            let date: NaiveDate = cols[0]
                .trim()
                .parse()
                .map_err(|_| malformed(i + 1, format!("invalid date {:?}", cols[0])))?;
            let articles: u64 = cols[1]
                .trim()
                .parse()
                .map_err(|_| malformed(i + 1, format!("invalid article count {:?}", cols[1])))?;
            let outlets: u64 = cols[2]
                .trim()
                .parse()
                .map_err(|_| malformed(i + 1, format!("invalid outlet count {:?}", cols[2])))?;
            per_day.insert(date, DayCount { articles, outlets });
        }
        Ok(CorpusCounts { per_day })
    }
}

/// Subset of patterns a series or table is computed over.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupKey {
    /// Restrict to one gender, or include both.
    pub gender: Option<Gender>,
    /// Restrict to one NUTS2 region, or include all locations.
    pub region: Option<String>,
}

impl GroupKey {
    pub fn all() -> Self {
        GroupKey::default()
    }

    pub fn gender(gender: Gender) -> Self {
        GroupKey {
            gender: Some(gender),
            region: None,
        }
    }

    fn matches(&self, record: &ScoredRecord) -> bool {
        if let Some(g) = self.gender {
            if record.gender != g {
                return false;
            }
        }
        if let Some(region) = &self.region {
            if record.nuts2.as_deref() != Some(region.as_str()) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DailyRow {
    pub date: NaiveDate,
    pub mean_polarity: f64,
    pub pattern_count: usize,
    pub article_count: u64,
    pub outlet_count: u64,
    /// Sum of pattern polarities divided by the day's article count.
    pub normalized_value: f64,
}

/// Per-day aggregate of one dimension over one pattern subset. Rows are
/// strictly increasing in date; days without patterns emit no row.
#[derive(Debug, Clone, PartialEq)]
pub struct DailySeries {
    pub dimension: Dimension,
    pub group: GroupKey,
    pub rows: Vec<DailyRow>,
}

fn sorted(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

/// Daily mean and article-normalized sum of `dimension` over the records
/// matched by `group`. Errors if a pattern date is missing from `counts`.
pub fn daily_aggregate(
    records: &[ScoredRecord],
    counts: &CorpusCounts,
    dimension: Dimension,
    group: &GroupKey,
) -> Result<DailySeries, StatsError> {
    let mut per_day: BTreeMap<NaiveDate, Vec<f64>> = BTreeMap::new();
    for record in records.iter().filter(|r| group.matches(r)) {
        per_day
            .entry(record.date)
            .or_default()
            .push(record.polarity.get(dimension));
    }
    let mut rows = Vec::with_capacity(per_day.len());
    for (date, values) in per_day {
        let day = counts.get(date).ok_or(StatsError::MissingDate { date })?;
        let values = sorted(values);
        let sum: f64 = values.iter().sum();
        rows.push(DailyRow {
            date,
            mean_polarity: sum / values.len() as f64,
            pattern_count: values.len(),
            article_count: day.articles,
            outlet_count: day.outlets,
            normalized_value: sum / day.articles as f64,
        });
    }
    Ok(DailySeries {
        dimension,
        group: group.clone(),
        rows,
    })
}

/// Trailing smoothing: each output value is the mean of `normalized_value`
/// over input rows with date in `(d - window_days, d]`. Rows are emitted
/// only for dates present in the input.
pub fn rolling_mean(series: &DailySeries, window_days: u32) -> DailySeries {
    assert!(window_days >= 1, "window must be at least one day");
    let rows = &series.rows;
    let mut out = Vec::with_capacity(rows.len());
    let mut lo = 0usize;
    for (i, row) in rows.iter().enumerate() {
        let window_start = row.date - Days::new(u64::from(window_days)); // exclusive
        while rows[lo].date <= window_start {
            lo += 1;
        }
        let window = &rows[lo..=i];
        let mean = window.iter().map(|r| r.normalized_value).sum::<f64>() / window.len() as f64;
        out.push(DailyRow {
            normalized_value: mean,
            ..row.clone()
        });
    }
    DailySeries {
        dimension: series.dimension,
        group: series.group.clone(),
        rows: out,
    }
}

/// Quantiles by linear interpolation between order statistics at rank
/// `h = (n-1) * p`. Output is monotone in `probs` and bounded by the sample
/// extremes.
pub fn quantiles(values: &[f64], probs: &[f64]) -> Result<Vec<f64>, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let data = sorted(values.to_vec());
    Ok(probs.iter().map(|&p| quantile_sorted(&data, p)).collect())
}

fn quantile_sorted(data: &[f64], p: f64) -> f64 {
    let n = data.len();
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        data[lo]
    } else {
        data[lo] + (h - lo as f64) * (data[hi] - data[lo])
    }
}

/// Count, mean, sample standard deviation and the five probe quantiles.
///
/// `std_defined` is false for single-value samples, where the (n-1) variance
/// denominator is undefined and 0 is reported.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSummary {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub std_defined: bool,
    pub q10: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
    pub q90: f64,
}

pub const PROBE_QUANTILES: [f64; 5] = [0.10, 0.25, 0.50, 0.75, 0.90];

pub fn distribution_summary(values: &[f64]) -> Result<DistributionSummary, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let data = sorted(values.to_vec());
    let n = data.len();
    let mean = data.iter().sum::<f64>() / n as f64;
    let (std, std_defined) = if n > 1 {
        let var = data.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        (var.sqrt(), true)
    } else {
        (0.0, false)
    };
    let q: Vec<f64> = PROBE_QUANTILES.iter().map(|&p| quantile_sorted(&data, p)).collect();
    Ok(DistributionSummary {
        count: n,
        mean,
        std,
        std_defined,
        q10: q[0],
        q25: q[1],
        q50: q[2],
        q75: q[3],
        q90: q[4],
    })
}

/// Percentage difference of a Female statistic relative to the Non-Female
/// one: `100 * (female - non_female) / |non_female|`. `None` when the
/// denominator is zero.
pub fn pct_diff(stat_female: f64, stat_nonfemale: f64) -> Option<f64> {
    if stat_nonfemale == 0.0 {
        return None;
    }
    Some(100.0 * (stat_female - stat_nonfemale) / stat_nonfemale.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    Exact,
    NormalApproximation,
}

impl TestMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TestMethod::Exact => "exact",
            TestMethod::NormalApproximation => "normal_approximation",
        }
    }
}

/// Mann-Whitney U result: `U = min(U_a, U_b)` and the two-sided p-value.
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub u_statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    pub n1: usize,
    pub n2: usize,
}

/// Average ranks of the pooled sample, split back into the two groups.
fn rank_sums(a: &[f64], b: &[f64]) -> (f64, bool) {
    let n = a.len() + b.len();
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut rank_sum_a = 0.0;
    let mut has_ties = false;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        if j > i {
            has_ties = true;
        }
        // ranks are 1-based; tied values share the average rank
        let avg_rank = (i + 1 + j + 1) as f64 / 2.0;
        for entry in &pooled[i..=j] {
            if entry.1 {
                rank_sum_a += avg_rank;
            }
        }
        i = j + 1;
    }
    (rank_sum_a, has_ties)
}

fn tie_correction_term(a: &[f64], b: &[f64]) -> f64 {
    let mut pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    pooled.sort_by(|x, y| x.total_cmp(y));
    let mut term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1] == pooled[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        term += t * t * t - t;
        i = j + 1;
    }
    term
}

/// Number of rank assignments of (n1, n2) with U statistic exactly `u`,
/// via the standard recurrence.
fn exact_u_counts(n1: usize, n2: usize) -> Vec<f64> {
    let umax = n1 * n2;
    // counts[m][n] holds the distribution for sample sizes (m, n)
    let mut table: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); n2 + 1]; n1 + 1];
    for m in 0..=n1 {
        for n in 0..=n2 {
            let size = m * n + 1;
            let mut dist = vec![0.0; size.max(1)];
            if m == 0 || n == 0 {
                dist[0] = 1.0;
            } else {
                for u in 0..size {
                    let mut c = 0.0;
                    // last element of the pooled order comes from sample a...
                    if u >= n {
                        c += table[m - 1][n].get(u - n).copied().unwrap_or(0.0);
                    }
                    // ...or from sample b
                    c += table[m][n - 1].get(u).copied().unwrap_or(0.0);
                    dist[u] = c;
                }
            }
            table[m][n] = dist;
        }
    }
    let mut out = table[n1][n2].clone();
    out.resize(umax + 1, 0.0);
    out
}

const EXACT_LIMIT: usize = 16;

fn mann_whitney_impl(a: &[f64], b: &[f64], force: Option<TestMethod>) -> Result<TestReport, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n1 = a.len();
    let n2 = b.len();
    let (rank_sum_a, has_ties) = rank_sums(a, b);
    let u_a = rank_sum_a - (n1 * (n1 + 1)) as f64 / 2.0;
    let u_b = (n1 * n2) as f64 - u_a;
    let u = u_a.min(u_b);

    let method = match force {
        Some(m) => m,
        None if n1 + n2 <= EXACT_LIMIT && !has_ties => TestMethod::Exact,
        None => TestMethod::NormalApproximation,
    };

    let p_value = match method {
        TestMethod::Exact => {
            let counts = exact_u_counts(n1, n2);
            let total: f64 = counts.iter().sum();
            let cutoff = u.floor() as usize;
            let below: f64 = counts[..=cutoff.min(n1 * n2)].iter().sum();
            (2.0 * below / total).min(1.0)
        }
        TestMethod::NormalApproximation => {
            let n1f = n1 as f64;
            let n2f = n2 as f64;
            let n = n1f + n2f;
            let mu = n1f * n2f / 2.0;
            let tie_term = if has_ties { tie_correction_term(a, b) } else { 0.0 };
            let var = n1f * n2f / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
            if var <= 0.0 {
                1.0 // all pooled values identical: no evidence either way
            } else {
                let z = (u - mu + 0.5) / var.sqrt(); // continuity correction toward the center
                let normal = Normal::new(0.0, 1.0).expect("unit normal");
                (2.0 * normal.cdf(z)).min(1.0)
            }
        }
    };

    Ok(TestReport {
        u_statistic: u,
        p_value,
        method,
        n1,
        n2,
    })
}

/// Two-sided Mann-Whitney U test with average ranks for ties. Uses the
/// exact U distribution (full enumeration via recurrence) for tie-free
/// samples with `n1 + n2 <= 16`, otherwise a normal approximation with
/// tie-corrected variance and continuity correction.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<TestReport, StatsError> {
    mann_whitney_impl(a, b, None)
}

/// [`mann_whitney_u`] with the method forced, for cross-checking the two
/// routes against each other.
pub fn mann_whitney_u_with_method(a: &[f64], b: &[f64], method: TestMethod) -> Result<TestReport, StatsError> {
    mann_whitney_impl(a, b, Some(method))
}

/// Lower-tail subsets for tail-focused tests: the pooled `p`-quantile is the
/// threshold, and each sample keeps its values at or below it.
pub fn tail_values(a: &[f64], b: &[f64], p: f64) -> (Vec<f64>, Vec<f64>) {
    let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    if pooled.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let threshold = quantile_sorted(&sorted(pooled), p);
    (
        a.iter().copied().filter(|v| *v <= threshold).collect(),
        b.iter().copied().filter(|v| *v <= threshold).collect(),
    )
}

/// How quantile tables are keyed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// One row per calendar year of the pattern dates.
    Year,
    /// One row per NUTS2 region, plus a SPAIN row pooling every pattern
    /// (including country-level and unlocated ones).
    Nuts2WithSpain,
}

/// Label of the whole-corpus row in regional tables.
pub const SPAIN_ROW: &str = "SPAIN";

#[derive(Debug, Clone, PartialEq)]
pub struct QuantileRow {
    pub key: String,
    pub mean: Option<f64>,
    pub q10: Option<f64>,
    pub q25: Option<f64>,
    pub q50: Option<f64>,
    pub q75: Option<f64>,
    pub q90: Option<f64>,
}

impl QuantileRow {
    fn from_summary(key: &str, s: &DistributionSummary) -> Self {
        QuantileRow {
            key: key.to_string(),
            mean: Some(s.mean),
            q10: Some(s.q10),
            q25: Some(s.q25),
            q50: Some(s.q50),
            q75: Some(s.q75),
            q90: Some(s.q90),
        }
    }

    fn empty(key: &str) -> Self {
        QuantileRow {
            key: key.to_string(),
            mean: None,
            q10: None,
            q25: None,
            q50: None,
            q75: None,
            q90: None,
        }
    }
}

/// Rows of (key, mean, q10..q90); cells are `None` where a statistic is
/// undefined for the group.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuantileTable {
    pub rows: Vec<QuantileRow>,
}

/// The per-group quantile tables for both genders plus their column-wise
/// percentage differences.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupTables {
    pub grouping: Grouping,
    pub dimension: Dimension,
    pub female: QuantileTable,
    pub non_female: QuantileTable,
    pub pct_diff: QuantileTable,
    pub warnings: Vec<String>,
}

fn group_label(record: &ScoredRecord, grouping: Grouping) -> Option<String> {
    match grouping {
        Grouping::Year => Some(record.date.year().to_string()),
        Grouping::Nuts2WithSpain => record.nuts2.clone(),
    }
}

/// Builds the Female / Non-Female quantile tables and their percentage
/// differences per group.
pub fn group_tables(records: &[ScoredRecord], dimension: Dimension, grouping: Grouping) -> GroupTables {
    let mut groups: BTreeMap<String, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for record in records {
        let value = record.polarity.get(dimension);
        let mut push = |key: String| {
            let entry = groups.entry(key).or_default();
            match record.gender {
                Gender::Female => entry.0.push(value),
                Gender::NonFemale => entry.1.push(value),
            }
        };
        if let Some(key) = group_label(record, grouping) {
            push(key);
        }
        if grouping == Grouping::Nuts2WithSpain {
            push(SPAIN_ROW.to_string());
        }
    }

    let mut keys: Vec<String> = groups.keys().cloned().collect();
    if grouping == Grouping::Nuts2WithSpain {
        // SPAIN closes the table
        keys.retain(|k| k != SPAIN_ROW);
        if groups.contains_key(SPAIN_ROW) {
            keys.push(SPAIN_ROW.to_string());
        }
    }

    let mut tables = GroupTables {
        grouping,
        dimension,
        female: QuantileTable::default(),
        non_female: QuantileTable::default(),
        pct_diff: QuantileTable::default(),
        warnings: Vec::new(),
    };
    for key in keys {
        let (female_values, nonfemale_values) = &groups[&key];
        let female = distribution_summary(female_values).ok();
        let non_female = distribution_summary(nonfemale_values).ok();
        if female.is_none() {
            tables.warnings.push(format!("group {key}: no female patterns"));
        }
        if non_female.is_none() {
            tables.warnings.push(format!("group {key}: no non-female patterns"));
        }
        tables.female.rows.push(match &female {
            Some(s) => QuantileRow::from_summary(&key, s),
            None => QuantileRow::empty(&key),
        });
        tables.non_female.rows.push(match &non_female {
            Some(s) => QuantileRow::from_summary(&key, s),
            None => QuantileRow::empty(&key),
        });
        let diff = match (&female, &non_female) {
            (Some(f), Some(n)) => QuantileRow {
                key: key.clone(),
                mean: pct_diff(f.mean, n.mean),
                q10: pct_diff(f.q10, n.q10),
                q25: pct_diff(f.q25, n.q25),
                q50: pct_diff(f.q50, n.q50),
                q75: pct_diff(f.q75, n.q75),
                q90: pct_diff(f.q90, n.q90),
            },
            _ => QuantileRow::empty(&key),
        };
        tables.pct_diff.rows.push(diff);
    }
    tables
}
