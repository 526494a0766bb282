//! Property tests for the matching, propagation and statistics invariants.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{extract_scored, load_bundle, parse_fixture_corpus};
use pressgauge::corpus::{Sentence, Token};
use pressgauge::lexicon::{
    expand_toi, Dimension, Gazetteer, LexiconBundle, ModifierLists, PolarityLexicon, PolaritySet,
    SimilarityRow, SimilarityTable, ToiLexicon,
};
use pressgauge::pattern::{
    detect_gender, extract_pattern, find_toi_occurrences, Gender, TRAVERSAL_RADIUS,
};
use pressgauge::polarity::{combine, propagate, PropagationParams};
use pressgauge::records::round6;
use pressgauge::stats::{
    daily_aggregate, mann_whitney_u, mann_whitney_u_with_method, pct_diff, quantiles, rolling_mean,
    CorpusCounts, DayCount, GroupKey, TestMethod,
};

fn token(index: usize, lemma: &str, upos: &str, head: usize, deprel: &str) -> Token {
    Token {
        index,
        surface: lemma.to_string(),
        lemma: lemma.to_string(),
        upos: upos.to_string(),
        head,
        deprel: deprel.to_string(),
    }
}

proptest! {
    #[test]
    fn combine_stays_bounded_and_commutative(a in -1.0f64..=1.0, b in -1.0f64..=1.0) {
        let ab = combine(a, b).unwrap();
        let ba = combine(b, a).unwrap();
        prop_assert!((-1.0..=1.0).contains(&ab));
        prop_assert!((ab - ba).abs() < 1e-15);
    }

    #[test]
    fn quantiles_are_monotone_and_bounded(values in prop::collection::vec(-1.0f64..=1.0, 1..80)) {
        let probs = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
        let q = quantiles(&values, &probs).unwrap();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for pair in q.windows(2) {
            prop_assert!(pair[0] <= pair[1]);
        }
        prop_assert!(q[0] >= min - 1e-12 && q[6] <= max + 1e-12);
    }

    #[test]
    fn mann_whitney_is_symmetric(
        a in prop::collection::vec(-1.0f64..=1.0, 1..30),
        b in prop::collection::vec(-1.0f64..=1.0, 1..30),
    ) {
        let r1 = mann_whitney_u(&a, &b).unwrap();
        let r2 = mann_whitney_u(&b, &a).unwrap();
        prop_assert_eq!(r1.u_statistic, r2.u_statistic);
        prop_assert!((r1.p_value - r2.p_value).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&r1.p_value));
        prop_assert!(r1.u_statistic >= 0.0);
        prop_assert!(r1.u_statistic <= (a.len() * b.len()) as f64);
    }

    // boundary of the exact regime: both routes agree on tie-free samples
    #[test]
    fn exact_and_normal_p_agree_at_the_boundary(perm in Just(()).prop_perturb(|_, mut rng| {
        let mut values: Vec<f64> = (0..16).map(|i| i as f64 + rng.random_range(0.0..0.5)).collect();
        for i in (1..values.len()).rev() {
            let j = rng.random_range(0..=i);
            values.swap(i, j);
        }
        values
    })) {
        let (a, b) = perm.split_at(8);
        let exact = mann_whitney_u_with_method(a, b, TestMethod::Exact).unwrap();
        let approx = mann_whitney_u_with_method(a, b, TestMethod::NormalApproximation).unwrap();
        prop_assert!(
            (exact.p_value - approx.p_value).abs() <= 0.02,
            "exact {} vs approx {}", exact.p_value, approx.p_value
        );
    }

    #[test]
    fn pct_diff_reflects_around_the_baseline(x in -5.0f64..5.0, y in 0.01f64..5.0) {
        let lhs = pct_diff(x, y).unwrap();
        let rhs = -pct_diff(2.0 * y - x, y).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn round6_is_idempotent_and_close(x in -1.0f64..=1.0) {
        let r = round6(x);
        prop_assert_eq!(round6(r), r);
        prop_assert!((r - x).abs() <= 5e-7);
    }

    #[test]
    fn rescale_is_affine(a in 1.0f64..=9.0, b in 1.0f64..=9.0) {
        let ra = pressgauge::rescale_moral_valence(a).unwrap();
        let rb = pressgauge::rescale_moral_valence(b).unwrap();
        prop_assert!((ra - rb - (a - b) / 4.0).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&ra));
    }
}

/// Brute-force leftmost-longest matcher used as the span oracle.
fn brute_force_spans(lemmas: &[&str], terms: &[Vec<String>]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut pos = 0;
    while pos < lemmas.len() {
        let mut best: Option<usize> = None;
        for term in terms {
            if term.len() <= lemmas.len() - pos
                && term.iter().zip(&lemmas[pos..]).all(|(a, b)| a == b)
                && best.map_or(true, |len| term.len() > len)
            {
                best = Some(term.len());
            }
        }
        match best {
            Some(len) => {
                spans.push((pos + 1, pos + len));
                pos += len;
            }
            None => pos += 1,
        }
    }
    spans
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]
    #[test]
    fn span_matching_equals_brute_force(
        lemma_ids in prop::collection::vec(0usize..6, 1..12),
        term_specs in prop::collection::vec(prop::collection::vec(0usize..6, 1..4), 1..20),
    ) {
        let vocab = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];
        let lemmas: Vec<&str> = lemma_ids.iter().map(|&i| vocab[i]).collect();
        let terms: Vec<Vec<String>> = term_specs
            .iter()
            .map(|spec| spec.iter().map(|&i| vocab[i].to_string()).collect())
            .collect();
        let lexicon = ToiLexicon::from_terms(terms.clone()).unwrap();
        let unique_terms: Vec<Vec<String>> = lexicon.iter().cloned().collect();

        let sentence = Sentence::new(
            lemmas
                .iter()
                .enumerate()
                .map(|(i, lemma)| token(i + 1, lemma, "NOUN", if i == 0 { 0 } else { 1 }, if i == 0 { "root" } else { "dep" }))
                .collect(),
        );
        let got: Vec<(usize, usize)> = find_toi_occurrences(&sentence, 0, &lexicon)
            .iter()
            .map(|s| (s.start, s.end))
            .collect();
        let want = brute_force_spans(&lemmas, &unique_terms);
        prop_assert_eq!(&got, &want);
        // spans never overlap
        for pair in got.windows(2) {
            prop_assert!(pair[0].1 < pair[1].0);
        }
    }
}

/// Random dependency tree: token i (0-based, i>0) gets a head drawn from
/// the earlier tokens, so the structure is always a valid single-rooted tree.
fn arbitrary_sentence() -> impl Strategy<Value = Sentence> {
    (2usize..14).prop_flat_map(|n| {
        let heads = (1..n)
            .map(|i| (0..i).boxed())
            .collect::<Vec<_>>();
        let deprels = prop::collection::vec(0usize..8, n - 1);
        let upos_picks = prop::collection::vec(0usize..4, n);
        (Just(n), heads, deprels, upos_picks).prop_map(|(n, heads, deprels, upos_picks)| {
            let relations = ["amod", "advmod", "compound", "nsubj", "obj", "conj", "nmod", "case"];
            let upos_tags = ["NOUN", "VERB", "ADJ", "DET"];
            let mut tokens = vec![token(1, "w0", upos_tags[upos_picks[0] % 3], 0, "root")];
            for i in 1..n {
                tokens.push(token(
                    i + 1,
                    &format!("w{i}"),
                    upos_tags[upos_picks[i]],
                    heads[i - 1] + 1,
                    relations[deprels[i - 1]],
                ));
            }
            Sentence::new(tokens)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]
    #[test]
    fn members_stay_within_two_undirected_hops(sentence in arbitrary_sentence()) {
        let mods = ModifierLists::default();
        let toi = ToiLexicon::from_terms(vec![vec!["w0"]]).unwrap();
        let spans = find_toi_occurrences(&sentence, 0, &toi);
        prop_assume!(!spans.is_empty());
        let pattern = extract_pattern(&sentence, &spans[0], &mods);

        // independent undirected BFS over the tree
        let n = sentence.len();
        let mut adjacent = vec![Vec::new(); n];
        for (i, t) in sentence.tokens.iter().enumerate() {
            if t.head >= 1 {
                adjacent[i].push(t.head - 1);
                adjacent[t.head - 1].push(i);
            }
        }
        let mut dist = vec![usize::MAX; n];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for &next in &adjacent[cur] {
                if dist[next] == usize::MAX {
                    dist[next] = dist[cur] + 1;
                    queue.push_back(next);
                }
            }
        }
        for member in &pattern.members {
            let undirected = dist[member.token_index - 1];
            prop_assert!(undirected <= TRAVERSAL_RADIUS, "member {} at undirected distance {undirected}", member.token_index);
            prop_assert!(member.distance >= undirected);
            prop_assert!(member.distance <= TRAVERSAL_RADIUS);
        }
    }

    #[test]
    fn gender_matches_its_definition(
        sentence in arbitrary_sentence(),
        female_ids in prop::collection::btree_set(0usize..20, 0..5),
    ) {
        let female_terms: BTreeSet<String> = female_ids.iter().map(|i| format!("w{i}")).collect();
        let mods = ModifierLists::new(BTreeSet::new(), BTreeSet::new(), female_terms.clone()).unwrap();
        let expected = sentence.lemmas().any(|l| female_terms.contains(l));
        let got = detect_gender(&sentence, &mods) == Gender::Female;
        prop_assert_eq!(got, expected);
    }
}

fn bundle_from_scores(scores: &[(String, f64)], negators: &[String], intensifiers: &[String]) -> LexiconBundle {
    let lexicons = Dimension::ALL
        .iter()
        .map(|d| {
            if *d == Dimension::Sentiment {
                PolarityLexicon::from_entries(*d, scores.iter().map(|(l, s)| (l.as_str(), *s))).unwrap()
            } else {
                PolarityLexicon::new(*d)
            }
        })
        .collect();
    LexiconBundle {
        toi: ToiLexicon::from_terms(vec![vec!["w0"]]).unwrap(),
        similarity: SimilarityTable::default(),
        polarity: PolaritySet::new(lexicons).unwrap(),
        gazetteer: Gazetteer::default(),
        modifiers: ModifierLists::new(
            negators.iter().cloned().collect(),
            intensifiers
                .iter()
                .filter(|l| !negators.contains(l))
                .cloned()
                .collect(),
            BTreeSet::new(),
        )
        .unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]
    #[test]
    fn propagation_is_bounded_and_neutral_on_empty_lexicons(
        sentence in arbitrary_sentence(),
        scores in prop::collection::vec(-1.0f64..=1.0, 14),
        negator_ids in prop::collection::vec(0usize..14, 0..3),
        intensifier_ids in prop::collection::vec(0usize..14, 0..3),
    ) {
        let lemma_scores: Vec<(String, f64)> =
            scores.iter().enumerate().map(|(i, s)| (format!("w{i}"), *s)).collect();
        let negators: Vec<String> = negator_ids.iter().map(|i| format!("w{i}")).collect();
        let intensifiers: Vec<String> = intensifier_ids.iter().map(|i| format!("w{i}")).collect();
        let bundle = bundle_from_scores(&lemma_scores, &negators, &intensifiers);
        let spans = find_toi_occurrences(&sentence, 0, &bundle.toi);
        prop_assume!(!spans.is_empty());
        let pattern = extract_pattern(&sentence, &spans[0], &bundle.modifiers);
        let params = PropagationParams::default();
        for dimension in Dimension::ALL {
            let s = propagate(&pattern, &sentence, &bundle, dimension, &params);
            prop_assert!((-1.0..=1.0).contains(&s), "{dimension}: {s}");
            if dimension != Dimension::Sentiment {
                // no lexicon entries in this dimension: exact neutrality
                prop_assert_eq!(s, 0.0);
            }
        }
    }

    #[test]
    fn expansion_is_idempotent_without_chained_seeds(
        seed_ids in prop::collection::btree_set(0usize..8, 1..5),
        rows in prop::collection::vec((0usize..8, 8usize..16, 0.0f64..=1.0), 0..12),
    ) {
        let seeds = ToiLexicon::from_terms(
            seed_ids.iter().map(|i| vec![format!("t{i}")]).collect::<Vec<_>>(),
        ).unwrap();
        // neighbor ids start at 8 so no neighbor ever appears as a seed
        let mut seen = std::collections::HashSet::new();
        let table = SimilarityTable::new(
            rows.iter()
                .filter(|(s, n, _)| seen.insert((*s, *n)))
                .map(|(s, n, score)| SimilarityRow {
                    seed: vec![format!("t{s}")],
                    neighbor: vec![format!("t{n}")],
                    score: *score,
                })
                .collect(),
        ).unwrap();
        let once = expand_toi(&seeds, &table, 0.7);
        let twice = expand_toi(&once, &table, 0.7);
        prop_assert_eq!(&once, &twice);
        // expansion only ever grows the set
        for term in seeds.iter() {
            prop_assert!(once.contains(term));
        }
    }
}

proptest! {
    #[test]
    fn token_polarity_never_leaves_the_unit_interval(lemma in "[a-z]{1,12}") {
        let bundle = load_bundle();
        for dimension in Dimension::ALL {
            let score = pressgauge::token_polarity(&bundle, &lemma, dimension);
            prop_assert!((-1.0..=1.0).contains(&score));
        }
    }
}

// 30 days, 50 patterns: every output row must match a spreadsheet-style
// recomputation done with independent arithmetic
#[test]
fn daily_aggregate_matches_brute_force_oracle() {
    use pressgauge::pattern::LocationSource;
    use pressgauge::polarity::PolarityVector;
    use pressgauge::records::ScoredRecord;

    let start: chrono::NaiveDate = "2020-03-01".parse().unwrap();
    let mut records = Vec::new();
    for i in 0..50usize {
        let date = start + chrono::Days::new((i % 30) as u64);
        let mut polarity = PolarityVector::zero();
        polarity.set(Dimension::Sentiment, ((i * 7 % 19) as f64 - 9.0) / 10.0);
        records.push(ScoredRecord {
            doc_id: format!("o{i}"),
            date,
            outlet: "o".into(),
            sentence_index: 0,
            toi_term: "salary".into(),
            member_indices: vec![],
            negator_count: 0,
            intensifiers: vec![],
            nuts3: None,
            nuts2: None,
            location_source: LocationSource::None,
            gender: Gender::NonFemale,
            polarity,
        });
    }
    let counts = CorpusCounts::new(
        (0..30)
            .map(|d| {
                (
                    start + chrono::Days::new(d),
                    DayCount { articles: d + 3, outlets: 2 },
                )
            })
            .collect(),
    );
    let series = daily_aggregate(&records, &counts, Dimension::Sentiment, &GroupKey::all()).unwrap();

    // independent tally
    let mut by_day: std::collections::BTreeMap<chrono::NaiveDate, Vec<f64>> = Default::default();
    for r in &records {
        by_day.entry(r.date).or_default().push(r.polarity.get(Dimension::Sentiment));
    }
    assert_eq!(series.rows.len(), by_day.len());
    for row in &series.rows {
        let values = &by_day[&row.date];
        let sum: f64 = values.iter().sum();
        assert_eq!(row.pattern_count, values.len());
        assert!((row.mean_polarity - sum / values.len() as f64).abs() < 1e-12, "mean on {}", row.date);
        let articles = counts.get(row.date).unwrap().articles;
        assert_eq!(row.article_count, articles);
        assert!((row.normalized_value - sum / articles as f64).abs() < 1e-12, "normalized on {}", row.date);
    }
    // emitted dates strictly increase
    for pair in series.rows.windows(2) {
        assert!(pair[0].date < pair[1].date);
    }
}

// raw quantile tables are monotone across their columns
#[test]
fn raw_quantile_tables_are_monotone() {
    use pressgauge::stats::{group_tables, Grouping};
    let docs = parse_fixture_corpus("corpus/demo.conllu");
    let records = extract_scored(&docs, &load_bundle());
    for grouping in [Grouping::Year, Grouping::Nuts2WithSpain] {
        let tables = group_tables(&records, Dimension::Sentiment, grouping);
        for table in [&tables.female, &tables.non_female] {
            for row in &table.rows {
                if let (Some(q10), Some(q25), Some(q50), Some(q75), Some(q90)) =
                    (row.q10, row.q25, row.q50, row.q75, row.q90)
                {
                    assert!(q10 <= q25 && q25 <= q50 && q50 <= q75 && q75 <= q90, "row {}", row.key);
                }
            }
        }
    }
}

#[test]
fn daily_series_is_invariant_under_record_order() {
    let docs = parse_fixture_corpus("corpus/demo.conllu");
    let bundle = load_bundle();
    let mut records = extract_scored(&docs, &bundle);
    let counts = CorpusCounts::new(
        records
            .iter()
            .map(|r| (r.date, DayCount { articles: 3, outlets: 2 }))
            .collect(),
    );
    let baseline = daily_aggregate(&records, &counts, Dimension::Sentiment, &GroupKey::all()).unwrap();
    let smoothed_baseline = rolling_mean(&baseline, 90);
    records.reverse();
    records.rotate_left(7);
    let shuffled = daily_aggregate(&records, &counts, Dimension::Sentiment, &GroupKey::all()).unwrap();
    assert_eq!(baseline, shuffled);
    assert_eq!(smoothed_baseline, rolling_mean(&shuffled, 90));
}

#[test]
fn negation_and_intensity_steps_compose_as_documented() {
    use pressgauge::polarity::{apply_intensifier, apply_negation};
    for s in [-0.9, -0.4, -0.1, 0.0, 0.2, 0.62, 1.0] {
        let twice = apply_negation(apply_negation(s, 0.75), 0.75);
        assert!((twice - 0.5625 * s).abs() < 1e-12, "double negation of {s}");
        let up = apply_intensifier(s, 1.5);
        assert!(up.abs() >= s.abs() && up.signum() * s.signum() >= 0.0);
    }
}
