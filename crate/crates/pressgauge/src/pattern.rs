//! Term-of-interest detection and dependency-neighborhood pattern
//! construction, with location and gender tagging.
//!
//! A pattern is the set of tokens within two dependency hops of a matched
//! term occurrence. A hop either descends from a head to a dependent whose
//! relation is on the traversal allow-list ([`TRAVERSAL_RELATIONS`]), or
//! ascends from any token to its head. Punctuation and determiners are never
//! visited. Matching — for terms and for gazetteer names alike — is
//! leftmost-longest over contiguous sequences, so spans never overlap and
//! extraction is deterministic.

use chrono::NaiveDate;

use crate::corpus::{Document, Sentence};
use crate::lexicon::{Gazetteer, LexiconBundle, ModifierLists, ToiLexicon};

/// Dependency relations a pattern may descend through (head → dependent).
/// Ascending to a token's head is always permitted.
pub const TRAVERSAL_RELATIONS: [&str; 12] = [
    "amod",  // adjectival modifier
    "advmod", // adverbial modifier
    "neg",   // negation
    "compound",
    "nsubj", // nominal subject
    "obj",   // object (with the dobj/iobj spellings)
    "dobj",
    "iobj",
    "ccomp", // clausal complement
    "xcomp", // open clausal complement
    "acomp", // adjectival complement
    "conj",  // conjunct
];

/// Maximum dependency distance from a term token to a pattern member.
pub const TRAVERSAL_RADIUS: usize = 2;

fn relation_allowed(deprel: &str) -> bool {
    TRAVERSAL_RELATIONS.contains(&deprel)
}

fn upos_excluded(upos: &str) -> bool {
    upos == "PUNCT" || upos == "DET"
}

/// One term-of-interest occurrence: a contiguous token range (1-based,
/// inclusive) within a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToiSpan {
    pub sentence_index: usize,
    pub start: usize,
    pub end: usize,
    pub matched_term: Vec<String>,
}

impl ToiSpan {
    pub fn token_indices(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

/// A pattern member: token index plus its dependency distance from the
/// nearest term token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternMember {
    pub token_index: usize,
    pub distance: usize,
}

/// The dependency neighborhood extracted around one term occurrence.
///
/// `members` are sorted by (distance, token index) and never include the
/// term tokens themselves. `negator_count` counts members that negate
/// (lemma in the negator list, or `neg` relation); `intensifier_lemmas`
/// lists member lemmas found in the intensifier list, in member order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub toi: ToiSpan,
    pub members: Vec<PatternMember>,
    pub negator_count: usize,
    pub intensifier_lemmas: Vec<String>,
}

/// Sentence-scope gender tag: female iff any lemma is a female-reference term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gender {
    Female,
    NonFemale,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::NonFemale => "non_female",
        }
    }
}

/// How a pattern's location was resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocationSource {
    /// A gazetteer match inside the pattern's own sentence.
    Sentence,
    /// No match in the sentence; the article's most frequent location.
    ArticleFallback,
    /// No location anywhere in the article.
    None,
}

impl LocationSource {
    pub fn as_str(self) -> &'static str {
        match self {
            LocationSource::Sentence => "sentence",
            LocationSource::ArticleFallback => "article_fallback",
            LocationSource::None => "none",
        }
    }
}

/// A pattern with its article metadata, resolved location and gender tag.
///
/// `nuts2` is the rollup of `nuts3` when one exists; country-level codes
/// resolved from nationality adjectives carry no rollup and report only in
/// whole-corpus rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatedPattern {
    pub pattern: Pattern,
    pub doc_id: String,
    pub date: NaiveDate,
    pub outlet: String,
    pub nuts3: Option<String>,
    pub nuts2: Option<String>,
    pub location_source: LocationSource,
    pub gender: Gender,
}

/// Finds every term occurrence in a sentence: leftmost-longest matching over
/// contiguous lemma sequences; matches never overlap.
pub fn find_toi_occurrences(sentence: &Sentence, sentence_index: usize, toi: &ToiLexicon) -> Vec<ToiSpan> {
    let lemmas: Vec<&str> = sentence.lemmas().collect();
    let mut spans = Vec::new();
    let mut pos = 0;
    while pos < lemmas.len() {
        match toi.longest_match_at(&lemmas, pos) {
            Some(len) => {
                spans.push(ToiSpan {
                    sentence_index,
                    start: pos + 1,
                    end: pos + len,
                    matched_term: lemmas[pos..pos + len].iter().map(|l| l.to_string()).collect(),
                });
                pos += len;
            }
            None => pos += 1,
        }
    }
    spans
}

/// Builds the dependency neighborhood around a span produced by
/// [`find_toi_occurrences`] on the same sentence.
pub fn extract_pattern(sentence: &Sentence, span: &ToiSpan, mods: &ModifierLists) -> Pattern {
    let n = sentence.len();
    let tokens = &sentence.tokens;
    // children[i] = 0-based indices of tokens whose head is token i+1
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, tok) in tokens.iter().enumerate() {
        if tok.head >= 1 && tok.head <= n {
            children[tok.head - 1].push(i);
        }
    }

    let in_span = |idx0: usize| idx0 + 1 >= span.start && idx0 + 1 <= span.end;
    let mut distance: Vec<Option<usize>> = vec![None; n];
    let mut queue: Vec<usize> = Vec::new();
    for idx in span.token_indices() {
        if idx >= 1 && idx <= n {
            distance[idx - 1] = Some(0);
            queue.push(idx - 1);
        }
    }

    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head];
        head += 1;
        let d = distance[cur].unwrap();
        if d >= TRAVERSAL_RADIUS {
            continue;
        }
        let visit = |next: usize, distance_vec: &mut Vec<Option<usize>>, queue: &mut Vec<usize>| {
            if distance_vec[next].is_none() && !upos_excluded(&tokens[next].upos) {
                distance_vec[next] = Some(d + 1);
                queue.push(next);
            }
        };
        // ascend to the head unconditionally
        if tokens[cur].head >= 1 && tokens[cur].head <= n {
            visit(tokens[cur].head - 1, &mut distance, &mut queue);
        }
        // descend only through allow-listed relations
        for &child in &children[cur] {
            if relation_allowed(&tokens[child].deprel) {
                visit(child, &mut distance, &mut queue);
            }
        }
    }

    let mut members: Vec<PatternMember> = (0..n)
        .filter(|&i| !in_span(i))
        .filter_map(|i| {
            distance[i].map(|d| PatternMember {
                token_index: i + 1,
                distance: d,
            })
        })
        .collect();
    members.sort_by_key(|m| (m.distance, m.token_index));

    let mut negator_count = 0;
    let mut intensifier_lemmas = Vec::new();
    for member in &members {
        let tok = &tokens[member.token_index - 1];
        if mods.negators.contains(&tok.lemma) || tok.deprel == "neg" {
            negator_count += 1;
        }
        if mods.intensifiers.contains(&tok.lemma) {
            intensifier_lemmas.push(tok.lemma.clone());
        }
    }

    Pattern {
        toi: span.clone(),
        members,
        negator_count,
        intensifier_lemmas,
    }
}

/// A gazetteer match inside one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocationMatch {
    /// 1-based inclusive token range of the matched name.
    pub start: usize,
    pub end: usize,
    pub code: String,
}

/// All gazetteer matches in a sentence, leftmost-longest and non-overlapping.
/// Multi-word place names match on lowercased surface forms; nationality
/// adjectives match on single lemmas where no place name starts.
pub fn sentence_locations(sentence: &Sentence, gaz: &Gazetteer) -> Vec<LocationMatch> {
    let surfaces: Vec<String> = sentence.tokens.iter().map(|t| t.surface.to_lowercase()).collect();
    let mut matches = Vec::new();
    let mut pos = 0;
    while pos < surfaces.len() {
        if let Some((len, code)) = gaz.longest_place_match_at(&surfaces, pos) {
            matches.push(LocationMatch {
                start: pos + 1,
                end: pos + len,
                code: code.to_string(),
            });
            pos += len;
            continue;
        }
        if let Some(code) = gaz.nationality(&sentence.tokens[pos].lemma) {
            matches.push(LocationMatch {
                start: pos + 1,
                end: pos + 1,
                code: code.to_string(),
            });
        }
        pos += 1;
    }
    matches
}

/// The article's main location: the most frequent gazetteer match across all
/// sentences, ties broken by earliest first occurrence.
pub fn article_main_location(doc: &Document, gaz: &Gazetteer) -> Option<String> {
    // (count, first occurrence order) per code
    let mut order = 0usize;
    let mut tally: Vec<(String, usize, usize)> = Vec::new();
    for sentence in &doc.sentences {
        for m in sentence_locations(sentence, gaz) {
            match tally.iter_mut().find(|(code, _, _)| *code == m.code) {
                Some(entry) => entry.1 += 1,
                None => tally.push((m.code, 1, order)),
            }
            order += 1;
        }
    }
    tally
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.2.cmp(&a.2)))
        .map(|(code, _, _)| code)
}

fn span_distance(m: &LocationMatch, span: &ToiSpan) -> usize {
    if m.end < span.start {
        span.start - m.end
    } else if m.start > span.end {
        m.start - span.end
    } else {
        0
    }
}

/// Resolves a pattern's location. Sentence-level matches win, nearest to the
/// term span by token distance (ties leftmost); otherwise the article's main
/// location; otherwise none.
pub fn resolve_location(
    sentence: &Sentence,
    span: &ToiSpan,
    doc: &Document,
    gaz: &Gazetteer,
) -> (Option<String>, LocationSource) {
    let matches = sentence_locations(sentence, gaz);
    if let Some(best) = matches
        .iter()
        .min_by_key(|m| (span_distance(m, span), m.start))
    {
        return (Some(best.code.clone()), LocationSource::Sentence);
    }
    match article_main_location(doc, gaz) {
        Some(code) => (Some(code), LocationSource::ArticleFallback),
        None => (None, LocationSource::None),
    }
}

/// Female iff any token lemma belongs to the female-reference list.
pub fn detect_gender(sentence: &Sentence, mods: &ModifierLists) -> Gender {
    if sentence.lemmas().any(|l| mods.female_terms.contains(l)) {
        Gender::Female
    } else {
        Gender::NonFemale
    }
}

/// Runs the full per-document extraction: for every sentence, for every term
/// occurrence, one located pattern. Output is ordered by (sentence index,
/// span start). Pure function of `(doc, bundle)`.
pub fn extract_all(doc: &Document, bundle: &LexiconBundle) -> Vec<LocatedPattern> {
    let mut out = Vec::new();
    let fallback = article_main_location(doc, &bundle.gazetteer);
    for (si, sentence) in doc.sentences.iter().enumerate() {
        let spans = find_toi_occurrences(sentence, si, &bundle.toi);
        if spans.is_empty() {
            continue;
        }
        let matches = sentence_locations(sentence, &bundle.gazetteer);
        let gender = detect_gender(sentence, &bundle.modifiers);
        for span in spans {
            let pattern = extract_pattern(sentence, &span, &bundle.modifiers);
            let (nuts3, location_source) = if let Some(best) = matches
                .iter()
                .min_by_key(|m| (span_distance(m, &span), m.start))
            {
                (Some(best.code.clone()), LocationSource::Sentence)
            } else {
                match &fallback {
                    Some(code) => (Some(code.clone()), LocationSource::ArticleFallback),
                    None => (None, LocationSource::None),
                }
            };
            let nuts2 = nuts3
                .as_deref()
                .and_then(|code| bundle.gazetteer.nuts2_of(code))
                .map(|s| s.to_string());
            out.push(LocatedPattern {
                pattern,
                doc_id: doc.doc_id.clone(),
                date: doc.date,
                outlet: doc.outlet.clone(),
                nuts3,
                nuts2,
                location_source,
                gender,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Scope, Token};
    use chrono::NaiveDate;
    use std::collections::BTreeMap;
    use std::collections::BTreeSet;

    fn tok(index: usize, surface: &str, lemma: &str, upos: &str, head: usize, deprel: &str) -> Token {
        Token {
            index,
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            upos: upos.to_string(),
            head,
            deprel: deprel.to_string(),
        }
    }

    fn simple_sentence(lemmas: &[(&str, &str, usize, &str)]) -> Sentence {
        Sentence::new(
            lemmas
                .iter()
                .enumerate()
                .map(|(i, (lemma, upos, head, deprel))| tok(i + 1, lemma, lemma, upos, *head, deprel))
                .collect(),
        )
    }

    fn mods() -> ModifierLists {
        ModifierLists::new(
            ["no", "not", "never", "without", "prevent", "lack"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            ["very", "greater", "strongly", "significantly", "highly"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            ["female", "woman", "girl", "she", "her", "maternal", "maternity", "mother"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
        .unwrap()
    }

    fn gaz() -> Gazetteer {
        let mut places = BTreeMap::new();
        places.insert(vec!["madrid".to_string()], "ES300".to_string());
        places.insert(vec!["seville".to_string()], "ES618".to_string());
        places.insert(vec!["catalonia".to_string()], "ES511".to_string());
        places.insert(vec!["basque".to_string(), "country".to_string()], "ES213".to_string());
        let mut nationalities = BTreeMap::new();
        nationalities.insert("spanish".to_string(), "ES".to_string());
        let mut rollup = BTreeMap::new();
        rollup.insert("ES300".to_string(), "ES30".to_string());
        rollup.insert("ES618".to_string(), "ES61".to_string());
        rollup.insert("ES511".to_string(), "ES51".to_string());
        rollup.insert("ES213".to_string(), "ES21".to_string());
        let mut region_names = BTreeMap::new();
        region_names.insert("ES30".to_string(), "Madrid".to_string());
        region_names.insert("ES61".to_string(), "Andalusia".to_string());
        region_names.insert("ES51".to_string(), "Catalonia".to_string());
        region_names.insert("ES21".to_string(), "Basque Country".to_string());
        Gazetteer::new(places, nationalities, rollup, region_names).unwrap()
    }

    fn doc(sentences: Vec<Sentence>) -> Document {
        Document {
            doc_id: "d".to_string(),
            date: NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(),
            outlet: "Test".to_string(),
            scope: Scope::National,
            sentences,
        }
    }

    #[test]
    fn finds_multiword_term() {
        let sentence = simple_sentence(&[
            ("the", "DET", 3, "det"),
            ("labour", "NOUN", 3, "compound"),
            ("market", "NOUN", 4, "nsubj"),
            ("improve", "VERB", 0, "root"),
        ]);
        let toi = ToiLexicon::from_terms(vec![vec!["labour", "market"]]).unwrap();
        let spans = find_toi_occurrences(&sentence, 0, &toi);
        assert_eq!(spans.len(), 1);
        assert_eq!((spans[0].start, spans[0].end), (2, 3));
        assert_eq!(spans[0].matched_term, vec!["labour", "market"]);
    }

    #[test]
    fn longest_match_wins_over_prefix_term() {
        let sentence = simple_sentence(&[
            ("great", "ADJ", 3, "amod"),
            ("job", "NOUN", 3, "compound"),
            ("insecurity", "NOUN", 0, "root"),
        ]);
        let toi = ToiLexicon::from_terms(vec![vec!["job"], vec!["job", "insecurity"]]).unwrap();
        let spans = find_toi_occurrences(&sentence, 0, &toi);
        assert_eq!(spans.len(), 1);
        assert_eq!((spans[0].start, spans[0].end), (2, 3));
        assert_eq!(spans[0].matched_term, vec!["job", "insecurity"]);
    }

    #[test]
    fn sentence_without_terms_yields_nothing() {
        let sentence = simple_sentence(&[("nothing", "NOUN", 0, "root")]);
        let toi = ToiLexicon::from_terms(vec![vec!["salary"]]).unwrap();
        assert!(find_toi_occurrences(&sentence, 0, &toi).is_empty());
    }

    // "employers propose to freeze salaries": the governing verb chain joins
    // the pattern, the mark and the distant subject do not.
    #[test]
    fn extracts_head_verbs_within_two_hops() {
        let sentence = simple_sentence(&[
            ("employer", "NOUN", 2, "nsubj"),
            ("propose", "VERB", 0, "root"),
            ("to", "PART", 4, "mark"),
            ("freeze", "VERB", 2, "xcomp"),
            ("salary", "NOUN", 4, "obj"),
        ]);
        let toi = ToiLexicon::from_terms(vec![vec!["salary"]]).unwrap();
        let span = find_toi_occurrences(&sentence, 0, &toi).remove(0);
        let pattern = extract_pattern(&sentence, &span, &mods());
        let indices: Vec<usize> = pattern.members.iter().map(|m| m.token_index).collect();
        assert_eq!(indices, vec![4, 2]); // freeze (1 hop), propose (2 hops)
        assert_eq!(pattern.members[0].distance, 1);
        assert_eq!(pattern.members[1].distance, 2);
        assert_eq!(pattern.negator_count, 0);
        assert!(pattern.intensifier_lemmas.is_empty());
    }

    #[test]
    fn intensifier_member_is_recorded() {
        let sentence = simple_sentence(&[
            ("greater", "ADJ", 3, "amod"),
            ("job", "NOUN", 3, "compound"),
            ("insecurity", "NOUN", 0, "root"),
        ]);
        let toi = ToiLexicon::from_terms(vec![vec!["job", "insecurity"]]).unwrap();
        let span = find_toi_occurrences(&sentence, 0, &toi).remove(0);
        let pattern = extract_pattern(&sentence, &span, &mods());
        assert_eq!(pattern.intensifier_lemmas, vec!["greater"]);
    }

    #[test]
    fn bare_root_term_has_no_members() {
        let sentence = simple_sentence(&[
            ("the", "DET", 2, "det"),
            ("salary", "NOUN", 0, "root"),
            (".", "PUNCT", 2, "punct"),
        ]);
        let toi = ToiLexicon::from_terms(vec![vec!["salary"]]).unwrap();
        let span = find_toi_occurrences(&sentence, 0, &toi).remove(0);
        let pattern = extract_pattern(&sentence, &span, &mods());
        assert!(pattern.members.is_empty());
        assert_eq!(pattern.negator_count, 0);
    }

    #[test]
    fn neg_relation_counts_as_negator() {
        let sentence = simple_sentence(&[
            ("nobody", "PRON", 3, "neg"), // lemma not in the list, relation is
            ("salary", "NOUN", 3, "nsubj"),
            ("grow", "VERB", 0, "root"),
        ]);
        let toi = ToiLexicon::from_terms(vec![vec!["salary"]]).unwrap();
        let span = find_toi_occurrences(&sentence, 0, &toi).remove(0);
        let pattern = extract_pattern(&sentence, &span, &mods());
        assert_eq!(pattern.negator_count, 1);
    }

    #[test]
    fn location_from_sentence_match() {
        let sentence = simple_sentence(&[
            ("insecurity", "NOUN", 2, "nsubj"),
            ("grow", "VERB", 0, "root"),
            ("in", "ADP", 4, "case"),
            ("catalonia", "PROPN", 2, "obl"),
        ]);
        let d = doc(vec![sentence.clone()]);
        let span = ToiSpan {
            sentence_index: 0,
            start: 1,
            end: 1,
            matched_term: vec!["insecurity".to_string()],
        };
        let (code, source) = resolve_location(&sentence, &span, &d, &gaz());
        assert_eq!(code.as_deref(), Some("ES511"));
        assert_eq!(source, LocationSource::Sentence);
    }

    #[test]
    fn fallback_uses_most_frequent_article_location() {
        let no_place = simple_sentence(&[("salary", "NOUN", 0, "root")]);
        let madrid = simple_sentence(&[("madrid", "PROPN", 0, "root")]);
        let seville = simple_sentence(&[("seville", "PROPN", 0, "root")]);
        let d = doc(vec![
            no_place.clone(),
            madrid.clone(),
            madrid.clone(),
            madrid,
            seville,
        ]);
        let span = ToiSpan {
            sentence_index: 0,
            start: 1,
            end: 1,
            matched_term: vec!["salary".to_string()],
        };
        let (code, source) = resolve_location(&no_place, &span, &d, &gaz());
        assert_eq!(code.as_deref(), Some("ES300"));
        assert_eq!(source, LocationSource::ArticleFallback);
    }

    #[test]
    fn nationality_adjective_resolves_to_country_code() {
        let sentence = simple_sentence(&[
            ("spanish", "ADJ", 2, "amod"),
            ("worker", "NOUN", 3, "nsubj"),
            ("strike", "VERB", 0, "root"),
        ]);
        let d = doc(vec![sentence.clone()]);
        let span = ToiSpan {
            sentence_index: 0,
            start: 2,
            end: 2,
            matched_term: vec!["worker".to_string()],
        };
        let (code, source) = resolve_location(&sentence, &span, &d, &gaz());
        assert_eq!(code.as_deref(), Some("ES"));
        assert_eq!(source, LocationSource::Sentence);
        assert_eq!(gaz().nuts2_of("ES"), None);
    }

    #[test]
    fn nearest_sentence_match_wins_ties_leftmost() {
        let sentence = simple_sentence(&[
            ("madrid", "PROPN", 4, "obl"),
            ("and", "CCONJ", 3, "cc"),
            ("seville", "PROPN", 1, "conj"),
            ("salary", "NOUN", 0, "root"),
        ]);
        let d = doc(vec![sentence.clone()]);
        let span = ToiSpan {
            sentence_index: 0,
            start: 4,
            end: 4,
            matched_term: vec!["salary".to_string()],
        };
        // seville (distance 1) beats madrid (distance 3)
        let (code, _) = resolve_location(&sentence, &span, &d, &gaz());
        assert_eq!(code.as_deref(), Some("ES618"));
        // equidistant matches fall back to the leftmost
        let span2 = ToiSpan {
            sentence_index: 0,
            start: 2,
            end: 2,
            matched_term: vec!["and".to_string()],
        };
        let (code2, _) = resolve_location(&sentence, &span2, &d, &gaz());
        assert_eq!(code2.as_deref(), Some("ES300"));
    }

    #[test]
    fn gender_detection_matches_spec_examples() {
        let m = mods();
        let female = simple_sentence(&[
            ("female", "NOUN", 2, "nsubj"),
            ("enter", "VERB", 0, "root"),
        ]);
        assert_eq!(detect_gender(&female, &m), Gender::Female);
        let neutral = simple_sentence(&[
            ("spanish", "ADJ", 2, "amod"),
            ("worker", "NOUN", 0, "root"),
        ]);
        assert_eq!(detect_gender(&neutral, &m), Gender::NonFemale);
        let empty_list = ModifierLists::new(BTreeSet::new(), BTreeSet::new(), BTreeSet::new()).unwrap();
        assert_eq!(detect_gender(&female, &empty_list), Gender::NonFemale);
    }

    fn mini_bundle() -> LexiconBundle {
        use crate::lexicon::{PolarityLexicon, PolaritySet, SimilarityTable};
        let toi = ToiLexicon::from_terms(vec![vec!["salary"], vec!["unemployment"]]).unwrap();
        let polarity = PolaritySet::new(
            crate::lexicon::Dimension::ALL
                .iter()
                .map(|d| PolarityLexicon::new(*d))
                .collect(),
        )
        .unwrap();
        LexiconBundle {
            toi,
            similarity: SimilarityTable::default(),
            polarity,
            gazetteer: gaz(),
            modifiers: mods(),
        }
    }

    #[test]
    fn extract_all_orders_by_sentence_and_span() {
        let s1 = simple_sentence(&[
            ("salary", "NOUN", 2, "nsubj"),
            ("fall", "VERB", 0, "root"),
        ]);
        let s2 = simple_sentence(&[
            ("unemployment", "NOUN", 2, "nsubj"),
            ("rise", "VERB", 0, "root"),
            ("in", "ADP", 4, "case"),
            ("madrid", "PROPN", 2, "obl"),
        ]);
        let d = doc(vec![s1, s2]);
        let patterns = extract_all(&d, &mini_bundle());
        assert_eq!(patterns.len(), 2);
        assert_eq!(patterns[0].pattern.toi.sentence_index, 0);
        assert_eq!(patterns[1].pattern.toi.sentence_index, 1);
        // sentence 1 has no place: falls back to the article's only location
        assert_eq!(patterns[0].location_source, LocationSource::ArticleFallback);
        assert_eq!(patterns[0].nuts3.as_deref(), Some("ES300"));
        assert_eq!(patterns[0].nuts2.as_deref(), Some("ES30"));
        assert_eq!(patterns[1].location_source, LocationSource::Sentence);
    }

    #[test]
    fn document_without_terms_yields_empty_list() {
        let d = doc(vec![simple_sentence(&[("quiet", "ADJ", 0, "root")])]);
        assert!(extract_all(&d, &mini_bundle()).is_empty());
    }
}
