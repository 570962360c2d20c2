//! Expert-based topic inference for keywords.
//!
//! For a keyword `k`, let `E_k` be the set of topical experts who posted it.
//! The keyword is only classified when `|E_k|` reaches the minimum support.
//! Each topic `t` then scores `f_t / N_t`, where `f_t` is the fraction of
//! `E_k` mapped to `t` and `N_t` is the number of experts on `t` overall.
//! The highest score wins; ties go to the earlier topic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::corpus::{ExpertProfile, Keyword, KeywordExtractor, Tweet};
use crate::taxonomy::{Taxonomy, TopicId};
use crate::{Error, Result};

pub const DEFAULT_MIN_SUPPORT: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndexStats {
    pub profiles: usize,
    /// Experts whose tags matched no topic; they are left out of the index.
    pub unmapped_experts: usize,
    pub unmatched_tags: usize,
    /// Tweets whose author has no expert profile.
    pub foreign_tweets: usize,
    pub malformed_keywords: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpertIndex {
    topics_of: BTreeMap<String, BTreeSet<TopicId>>,
    topic_count: [usize; TopicId::COUNT],
    posters: BTreeMap<Keyword, BTreeSet<String>>,
    stats: IndexStats,
}

impl ExpertIndex {
    pub fn build(
        experts: &[ExpertProfile],
        expert_tweets: &[Tweet],
        taxonomy: &Taxonomy,
        extractor: &KeywordExtractor,
    ) -> Result<ExpertIndex> {
        if experts.is_empty() {
            return Err(Error::NoExperts);
        }
        let mut stats = IndexStats {
            profiles: experts.len(),
            ..Default::default()
        };

        // Repeated profiles for one user are merged before matching.
        let mut tags_of: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for e in experts {
            tags_of
                .entry(&e.user)
                .or_default()
                .extend(e.tags.iter().map(String::as_str));
        }

        let mut topics_of = BTreeMap::new();
        let mut topic_count = [0usize; TopicId::COUNT];
        for (user, tags) in tags_of {
            let m = taxonomy.match_tags(&tags);
            stats.unmatched_tags += m.unmatched;
            if m.topics.is_empty() {
                stats.unmapped_experts += 1;
                continue;
            }
            for t in &m.topics {
                topic_count[t.index()] += 1;
            }
            topics_of.insert(user.to_string(), m.topics);
        }

        let profiled: BTreeSet<&str> = experts.iter().map(|e| e.user.as_str()).collect();
        let mut posters: BTreeMap<Keyword, BTreeSet<String>> = BTreeMap::new();
        for tweet in expert_tweets {
            if !topics_of.contains_key(&tweet.author) {
                if !profiled.contains(tweet.author.as_str()) {
                    stats.foreign_tweets += 1;
                }
                continue;
            }
            let ex = extractor.extract(&tweet.text);
            stats.malformed_keywords += ex.malformed;
            for k in ex.keywords {
                posters.entry(k).or_default().insert(tweet.author.clone());
            }
        }
        if stats.foreign_tweets > 0 {
            log::warn!(
                "{} expert tweets were authored by users without a profile",
                stats.foreign_tweets
            );
        }

        Ok(ExpertIndex {
            topics_of,
            topic_count,
            posters,
            stats,
        })
    }

    /// Topics of a (mapped) expert.
    pub fn topics_of(&self, user: &str) -> Option<&BTreeSet<TopicId>> {
        self.topics_of.get(user)
    }

    /// `N_t`: number of mapped experts on `topic`.
    pub fn topic_count(&self, topic: TopicId) -> usize {
        self.topic_count[topic.index()]
    }

    /// `E_k`: distinct mapped experts who posted `keyword`.
    pub fn posters(&self, keyword: &Keyword) -> Option<&BTreeSet<String>> {
        self.posters.get(keyword)
    }

    pub fn keywords(&self) -> impl Iterator<Item = &Keyword> {
        self.posters.keys()
    }

    pub fn expert_count(&self) -> usize {
        self.topics_of.len()
    }

    pub fn stats(&self) -> &IndexStats {
        &self.stats
    }
}

pub fn build_expert_index(
    experts: &[ExpertProfile],
    expert_tweets: &[Tweet],
    taxonomy: &Taxonomy,
) -> Result<ExpertIndex> {
    ExpertIndex::build(experts, expert_tweets, taxonomy, &KeywordExtractor::new())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TopicInference {
    pub keyword: Keyword,
    pub topic: TopicId,
    /// `f_t`: share of the keyword's posters mapped to the topic.
    pub raw_fraction: f64,
    /// `f_t / N_t`.
    pub normalized_score: f64,
    /// `|E_k|`.
    pub support: usize,
}

/// Why a keyword got no topic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Uninferred {
    /// No mapped expert ever posted it.
    Absent,
    BelowSupport {
        support: usize,
    },
}

impl Uninferred {
    pub fn reason_code(self) -> &'static str {
        match self {
            Uninferred::Absent => "absent",
            Uninferred::BelowSupport { .. } => "below_support",
        }
    }

    pub fn support(self) -> usize {
        match self {
            Uninferred::Absent => 0,
            Uninferred::BelowSupport { support } => support,
        }
    }
}

impl fmt::Display for Uninferred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason_code())
    }
}

/// Infers the topic of one keyword. `min_support` below 1 behaves as 1.
pub fn infer_topic(
    keyword: &Keyword,
    index: &ExpertIndex,
    min_support: usize,
) -> std::result::Result<TopicInference, Uninferred> {
    let posters = index.posters(keyword).ok_or(Uninferred::Absent)?;
    let support = posters.len();
    if support == 0 {
        return Err(Uninferred::Absent);
    }
    if support < min_support.max(1) {
        return Err(Uninferred::BelowSupport { support });
    }

    let mut hits = [0usize; TopicId::COUNT];
    for user in posters {
        for t in index.topics_of(user).into_iter().flatten() {
            hits[t.index()] += 1;
        }
    }

    // score_t = hits_t / (support * N_t); compare by cross-multiplication so
    // equal scores compare equal and the earlier topic keeps the lead.
    let mut best: Option<TopicId> = None;
    for t in TopicId::all() {
        let (h, n) = (hits[t.index()], index.topic_count(t));
        if h == 0 || n == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => {
                let lhs = h as u128 * index.topic_count(b) as u128;
                let rhs = hits[b.index()] as u128 * n as u128;
                lhs.cmp(&rhs) == Ordering::Greater
            }
        };
        if better {
            best = Some(t);
        }
    }

    // Every poster is a mapped expert, so some topic has a hit.
    let topic = best.expect("posters are mapped experts");
    let raw_fraction = hits[topic.index()] as f64 / support as f64;
    Ok(TopicInference {
        keyword: keyword.clone(),
        topic,
        raw_fraction,
        normalized_score: raw_fraction / index.topic_count(topic) as f64,
        support,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InferenceSet {
    pub inferred: BTreeMap<Keyword, TopicInference>,
    pub uninferred: BTreeMap<Keyword, Uninferred>,
    /// Share of distinct keywords that got a topic; 0 for an empty input.
    pub coverage: f64,
}

impl InferenceSet {
    pub fn topic_of(&self, keyword: &Keyword) -> Option<TopicId> {
        self.inferred.get(keyword).map(|i| i.topic)
    }
}

/// Infers every distinct keyword in `keywords`.
pub fn infer_all<'a, I>(keywords: I, index: &ExpertIndex, min_support: usize) -> InferenceSet
where
    I: IntoIterator<Item = &'a Keyword>,
{
    let distinct: BTreeSet<&Keyword> = keywords.into_iter().collect();
    let mut out = InferenceSet::default();
    for k in &distinct {
        match infer_topic(k, index, min_support) {
            Ok(inf) => {
                out.inferred.insert((*k).clone(), inf);
            }
            Err(why) => {
                out.uninferred.insert((*k).clone(), why);
            }
        }
    }
    if !distinct.is_empty() {
        out.coverage = out.inferred.len() as f64 / distinct.len() as f64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expert(user: &str, tags: &[&str]) -> ExpertProfile {
        ExpertProfile {
            user: user.into(),
            tags: tags.iter().map(|t| t.to_string()).collect(),
        }
    }

    fn tweet(id: usize, user: &str, text: &str) -> Tweet {
        Tweet {
            id: id.to_string(),
            author: user.into(),
            timestamp: id as i64,
            text: text.into(),
            retweet_of: None,
        }
    }

    #[test]
    fn index_counts_posters_once() {
        let experts = vec![expert("a", &["sports"]), expert("b", &["sports"])];
        let mut tweets = vec![tweet(0, "b", "#nba")];
        for i in 1..=5 {
            tweets.push(tweet(i, "a", "#NBA tonight"));
        }
        let idx = build_expert_index(&experts, &tweets, &Taxonomy::bundled()).unwrap();
        assert_eq!(idx.topic_count(TopicId::SPORTS), 2);
        let posters = idx.posters(&Keyword::hashtag("nba")).unwrap();
        assert_eq!(posters.iter().collect::<Vec<_>>(), ["a", "b"]);
    }

    #[test]
    fn multi_topic_expert_counts_twice() {
        let experts = vec![expert("x", &["politics", "physics"])];
        let idx = build_expert_index(&experts, &[], &Taxonomy::bundled()).unwrap();
        assert_eq!(idx.topic_count(TopicId::POLITICS_LAW), 1);
        assert_eq!(idx.topic_count(TopicId::SCIENCE), 1);
        assert_eq!(idx.topic_count(TopicId::SPORTS), 0);
    }

    #[test]
    fn unmapped_and_foreign_are_dropped() {
        let experts = vec![expert("a", &["sports"]), expert("noise", &["celebs"])];
        let tweets = vec![
            tweet(0, "a", "#x"),
            tweet(1, "noise", "#x"),
            tweet(2, "stranger", "#x"),
        ];
        let idx = build_expert_index(&experts, &tweets, &Taxonomy::bundled()).unwrap();
        assert_eq!(idx.posters(&Keyword::hashtag("x")).unwrap().len(), 1);
        assert_eq!(idx.stats().unmapped_experts, 1);
        assert_eq!(idx.stats().foreign_tweets, 1);
        assert_eq!(idx.expert_count(), 1);
    }

    #[test]
    fn empty_expert_list_is_an_error() {
        assert!(matches!(
            build_expert_index(&[], &[], &Taxonomy::bundled()),
            Err(Error::NoExperts)
        ));
    }

    // N_A = 100 (science), N_B = 10 (sports); 6 posters on each.
    fn two_topic_index(n_a: usize, n_b: usize, on_a: usize, on_b: usize) -> ExpertIndex {
        let mut experts = Vec::new();
        let mut tweets = Vec::new();
        for i in 0..n_a {
            experts.push(expert(&format!("a{i}"), &["physics"]));
            if i < on_a {
                tweets.push(tweet(tweets.len(), &format!("a{i}"), "#k"));
            }
        }
        for i in 0..n_b {
            experts.push(expert(&format!("b{i}"), &["football"]));
            if i < on_b {
                tweets.push(tweet(tweets.len(), &format!("b{i}"), "#k"));
            }
        }
        build_expert_index(&experts, &tweets, &Taxonomy::bundled()).unwrap()
    }

    #[test]
    fn normalization_by_topic_size() {
        let idx = two_topic_index(100, 10, 6, 6);
        let inf = infer_topic(&Keyword::hashtag("k"), &idx, 10).unwrap();
        assert_eq!(inf.topic, TopicId::SPORTS);
        assert_eq!(inf.support, 12);
        assert_eq!(inf.raw_fraction, 0.5);
        assert!((inf.normalized_score - 0.05).abs() < 1e-15);
    }

    #[test]
    fn below_support_and_absent() {
        let idx = two_topic_index(20, 0, 9, 0);
        assert_eq!(
            infer_topic(&Keyword::hashtag("k"), &idx, 10),
            Err(Uninferred::BelowSupport { support: 9 })
        );
        assert_eq!(
            infer_topic(&Keyword::hashtag("nope"), &idx, 10),
            Err(Uninferred::Absent)
        );
        assert!(infer_topic(&Keyword::hashtag("k"), &idx, 9).is_ok());
    }

    #[test]
    fn unanimous_keyword() {
        let idx = two_topic_index(0, 10, 0, 10);
        let inf = infer_topic(&Keyword::hashtag("k"), &idx, 10).unwrap();
        assert_eq!((inf.topic, inf.raw_fraction), (TopicId::SPORTS, 1.0));
    }

    #[test]
    fn exact_tie_goes_to_earlier_topic() {
        // 5 entertainment experts out of 10, 10 sports out of 20: both 0.5/|E|.
        let mut experts = Vec::new();
        let mut tweets = Vec::new();
        for i in 0..10 {
            experts.push(expert(&format!("e{i}"), &["music"]));
            if i < 5 {
                tweets.push(tweet(tweets.len(), &format!("e{i}"), "#k"));
            }
        }
        for i in 0..20 {
            experts.push(expert(&format!("s{i}"), &["sports"]));
            if i < 10 {
                tweets.push(tweet(tweets.len(), &format!("s{i}"), "#k"));
            }
        }
        let idx = build_expert_index(&experts, &tweets, &Taxonomy::bundled()).unwrap();
        let inf = infer_topic(&Keyword::hashtag("k"), &idx, 10).unwrap();
        assert_eq!(inf.topic, TopicId::ENTERTAINMENT);
    }

    #[test]
    fn coverage_counts_distinct_keywords() {
        let idx = two_topic_index(0, 12, 0, 12);
        let k = Keyword::hashtag("k");
        let other = Keyword::hashtag("other");
        let set = infer_all([&k, &k, &other], &idx, 10);
        assert_eq!(set.coverage, 0.5);
        assert_eq!(set.uninferred[&other], Uninferred::Absent);

        let none = infer_all([&other], &idx, 10);
        assert_eq!(none.coverage, 0.0);
        assert!(none.inferred.is_empty());
    }
}
