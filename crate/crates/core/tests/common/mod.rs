//! Random corpora and brute-force oracles shared by the integration tests
//! and the acceptance suite. Nothing here calls into the inference code.

#![allow(dead_code)]

use infodiet_core::{ExpertProfile, Keyword, Taxonomy, TopicId, Tweet};
use rand::seq::SliceRandom;
use rand::Rng;

pub struct RandomCorpus {
    pub experts: Vec<ExpertProfile>,
    pub tweets: Vec<Tweet>,
    pub keywords: Vec<Keyword>,
}

/// Experts get 0-3 tags drawn from taxonomy terms and noise words; a few
/// topics are favoured so that exact score ties show up. Keyword popularity
/// is skewed so that some keywords clear a support of 10 and some do not.
pub fn random_corpus<R: Rng>(rng: &mut R, max_experts: usize, max_keywords: usize) -> RandomCorpus {
    let taxonomy = Taxonomy::bundled();
    let n_experts = rng.gen_range(10..=max_experts);
    let n_keywords = rng.gen_range(1..=max_keywords);
    let hot: Vec<TopicId> = TopicId::all()
        .collect::<Vec<_>>()
        .choose_multiple(rng, 3)
        .copied()
        .collect();
    let noise = [
        "celebs",
        "singers",
        "misc",
        "news",
        "Real Estate",
        "Mental Health",
    ];

    let experts: Vec<ExpertProfile> = (0..n_experts)
        .map(|i| {
            let n_tags = rng.gen_range(0..=3);
            let tags = (0..n_tags)
                .map(|_| match rng.gen_range(0..4) {
                    0 => noise.choose(rng).unwrap().to_string(),
                    1 => {
                        let t = TopicId::from_index(rng.gen_range(0..18)).unwrap();
                        let terms: Vec<&String> = taxonomy.terms(t).iter().collect();
                        terms.choose(rng).unwrap().to_uppercase()
                    }
                    _ => hot.choose(rng).unwrap().name().to_string(),
                })
                .collect();
            ExpertProfile {
                user: format!("e{i}"),
                tags,
            }
        })
        .collect();

    let mut tweets = Vec::new();
    for k in 0..n_keywords {
        let posters = if rng.gen_bool(0.5) {
            rng.gen_range(0..=n_experts.min(14))
        } else {
            rng.gen_range(0..=n_experts)
        };
        let chosen: Vec<&ExpertProfile> = experts.choose_multiple(rng, posters).collect();
        for e in chosen {
            for _ in 0..rng.gen_range(1..=2) {
                let id = tweets.len();
                let other = rng.gen_range(0..n_keywords);
                let text = if rng.gen_bool(0.3) {
                    format!("#K{k} and #k{other}")
                } else {
                    format!("#k{k}")
                };
                tweets.push(Tweet {
                    id: format!("x{id}"),
                    author: e.user.clone(),
                    timestamp: id as i64,
                    text,
                    retweet_of: None,
                });
            }
        }
    }
    // Tweets by strangers must be ignored.
    tweets.push(Tweet {
        id: "stranger".into(),
        author: "nobody".into(),
        timestamp: 0,
        text: "#k0".into(),
        retweet_of: None,
    });

    let mut keywords: Vec<Keyword> = (0..n_keywords)
        .map(|k| Keyword::hashtag(&format!("k{k}")))
        .collect();
    keywords.push(Keyword::hashtag("never-posted"));
    RandomCorpus {
        experts,
        tweets,
        keywords,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome {
    Absent,
    BelowSupport(usize),
    Topic {
        topic: TopicId,
        raw_fraction: f64,
        support: usize,
    },
}

fn oracle_normalize(s: &str) -> String {
    let lower = s.to_lowercase();
    let t = lower.trim_matches(|c: char| !c.is_alphanumeric());
    let mut out = String::new();
    for part in t.split(|c: char| c.is_whitespace() || c == '_' || c == '-') {
        if part.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push('-');
        }
        out.push_str(part);
    }
    out
}

/// Topics of one expert by scanning every term of every topic.
pub fn oracle_topics(tags: &[String], taxonomy: &Taxonomy) -> Vec<TopicId> {
    TopicId::all()
        .filter(|t| {
            tags.iter().any(|tag| {
                let tag = oracle_normalize(tag);
                tag == t.name() || taxonomy.terms(*t).iter().any(|term| *term == tag)
            })
        })
        .collect()
}

/// Recounts `E_k`, `f_t`, `N_t` and the argmax from the raw records.
/// Tweets in these corpora only contain whitespace-separated hashtags.
pub struct Oracle {
    topics: Vec<(String, Vec<TopicId>)>,
    posters: std::collections::HashMap<String, Vec<String>>,
}

impl Oracle {
    pub fn new(experts: &[ExpertProfile], tweets: &[Tweet], taxonomy: &Taxonomy) -> Oracle {
        let mut merged: Vec<(String, Vec<String>)> = Vec::new();
        for e in experts {
            match merged.iter_mut().find(|(u, _)| *u == e.user) {
                Some((_, tags)) => tags.extend(e.tags.iter().cloned()),
                None => merged.push((e.user.clone(), e.tags.clone())),
            }
        }
        let topics: Vec<(String, Vec<TopicId>)> = merged
            .into_iter()
            .map(|(u, tags)| {
                let t = oracle_topics(&tags, taxonomy);
                (u, t)
            })
            .filter(|(_, t)| !t.is_empty())
            .collect();
        let mut posters: std::collections::HashMap<String, Vec<String>> = Default::default();
        for tw in tweets {
            if !topics.iter().any(|(u, _)| *u == tw.author) {
                continue;
            }
            for w in tw.text.split_whitespace().filter(|w| w.starts_with('#')) {
                let list = posters.entry(w.to_lowercase()).or_default();
                if !list.contains(&tw.author) {
                    list.push(tw.author.clone());
                }
            }
        }
        Oracle { topics, posters }
    }

    /// Per-topic `(score, hits)` for a keyword's posters, topics with no hits left out.
    fn scores(&self, posters: &[String]) -> Vec<(TopicId, f64, usize)> {
        let support = posters.len();
        let mut out = Vec::new();
        for t in TopicId::all() {
            let n_t = self.topics.iter().filter(|(_, ts)| ts.contains(&t)).count();
            let hits = posters
                .iter()
                .filter(|p| self.topics.iter().any(|(u, ts)| u == *p && ts.contains(&t)))
                .count();
            if hits == 0 || n_t == 0 {
                continue;
            }
            out.push((t, hits as f64 / (support * n_t) as f64, hits));
        }
        out
    }

    fn posters_of(&self, keyword: &Keyword) -> &[String] {
        self.posters
            .get(&format!("#{}", keyword.canonical))
            .map_or(&[], Vec::as_slice)
    }

    pub fn infer(&self, keyword: &Keyword, min_support: usize) -> OracleOutcome {
        let posters = self.posters_of(keyword);
        if posters.is_empty() {
            return OracleOutcome::Absent;
        }
        if posters.len() < min_support {
            return OracleOutcome::BelowSupport(posters.len());
        }
        let support = posters.len();
        let mut best: Option<(TopicId, f64, usize)> = None;
        for cand in self.scores(posters) {
            if best.is_none_or(|(_, s, _)| cand.1 > s) {
                best = Some(cand);
            }
        }
        let (topic, _, hits) = best.unwrap();
        OracleOutcome::Topic {
            topic,
            raw_fraction: hits as f64 / support as f64,
            support,
        }
    }

    /// Whether two or more topics share the best score.
    pub fn tied(&self, keyword: &Keyword, min_support: usize) -> bool {
        let posters = self.posters_of(keyword);
        if posters.is_empty() || posters.len() < min_support {
            return false;
        }
        let scores = self.scores(posters);
        let best = scores.iter().map(|s| s.1).fold(0.0, f64::max);
        scores.iter().filter(|s| s.1 == best).count() > 1
    }
}

pub fn oracle_infer(
    keyword: &Keyword,
    experts: &[ExpertProfile],
    tweets: &[Tweet],
    taxonomy: &Taxonomy,
    min_support: usize,
) -> OracleOutcome {
    Oracle::new(experts, tweets, taxonomy).infer(keyword, min_support)
}
