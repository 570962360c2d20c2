//! Deterministic replay of a tweet stream over a follow graph.
//!
//! A passive user *consumes* every tweet authored by the accounts they
//! follow. Every `snapshot_interval` seconds a simple social recommender
//! surfaces up to `top_k` tweets that are popular in the user's 2-hop
//! neighbourhood (followings and followings-of-followings) within the
//! lookback window. The recommender is a model: it ranks original tweets by
//! the number of distinct neighbours who posted or retweeted them, then by
//! recency, then by id.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::analysis::{mitigation_report, MitigationReport, UserDietPair};
use crate::corpus::{FollowGraph, Keyword, KeywordExtractor, Tweet};
use crate::diet::{combine, compute_diet_with, normalize, DietDistribution, DEFAULT_KL_ALPHA};
use crate::inference::TopicInference;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Seconds between recommendation snapshots.
    pub snapshot_interval: i64,
    /// Tweets kept per snapshot.
    pub top_k: usize,
    /// Popularity lookback in seconds; the snapshot interval when unset.
    pub window: Option<i64>,
    /// Reserved for stochastic stream generators; the replay itself is
    /// deterministic.
    pub seed: u64,
    pub dedupe_across_snapshots: bool,
    /// Let tweets authored by direct followings be recommended too.
    pub include_direct_followings: bool,
    pub kl_alpha: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            snapshot_interval: 1800,
            top_k: 10,
            window: None,
            seed: 0,
            dedupe_across_snapshots: true,
            include_direct_followings: false,
            kl_alpha: DEFAULT_KL_ALPHA,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.snapshot_interval <= 0 {
            return bad(format!(
                "snapshot_interval must be > 0, got {}",
                self.snapshot_interval
            ));
        }
        if self.top_k == 0 {
            return bad("top_k must be >= 1".into());
        }
        if let Some(w) = self.window {
            if w <= 0 {
                return bad(format!("window must be > 0, got {w}"));
            }
        }
        if !(self.kl_alpha >= 0.0 && self.kl_alpha.is_finite()) {
            return bad(format!("kl_alpha must be >= 0, got {}", self.kl_alpha));
        }
        Ok(())
    }

    pub fn window(&self) -> i64 {
        self.window.unwrap_or(self.snapshot_interval)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t_end: i64,
    pub tweets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UserSim {
    pub user: String,
    pub consumed: Vec<String>,
    pub snapshots: Vec<Snapshot>,
    pub consumed_diet: DietDistribution,
    pub recommended_diet: DietDistribution,
    pub combined_diet: DietDistribution,
}

impl UserSim {
    pub fn pair(&self) -> UserDietPair {
        UserDietPair {
            user: self.user.clone(),
            consumed: self.consumed_diet,
            recommended: self.recommended_diet,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedUser {
    pub user: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub config: SimConfig,
    pub snapshot_times: Vec<i64>,
    pub users: Vec<UserSim>,
    /// Users without topical mass in their consumed or recommended diet.
    pub skipped: Vec<SkippedUser>,
}

/// A stream prepared for replay: sorted by `(timestamp, id)`.
#[derive(Debug)]
pub struct Simulator<'a> {
    graph: &'a FollowGraph,
    stream: Vec<&'a Tweet>,
    by_id: HashMap<&'a str, &'a Tweet>,
    cfg: SimConfig,
    extractor: KeywordExtractor,
}

impl<'a> Simulator<'a> {
    pub fn new(graph: &'a FollowGraph, stream: &'a [Tweet], cfg: SimConfig) -> Result<Self> {
        cfg.validate()?;
        let mut sorted: Vec<&Tweet> = stream.iter().collect();
        sorted.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.id.cmp(&b.id)));
        let by_id = sorted.iter().map(|t| (t.id.as_str(), *t)).collect();
        Ok(Simulator {
            graph,
            stream: sorted,
            by_id,
            cfg,
            extractor: KeywordExtractor::new(),
        })
    }

    pub fn with_extractor(mut self, extractor: KeywordExtractor) -> Self {
        self.extractor = extractor;
        self
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    /// Ids of all tweets (retweets included) authored by the accounts
    /// `user` follows.
    pub fn deliver(&self, user: &str) -> BTreeSet<String> {
        let Some(followings) = self.graph.followings(user) else {
            log::warn!("user {user} is not in the follow graph");
            return BTreeSet::new();
        };
        self.stream
            .iter()
            .filter(|t| followings.contains(&t.author))
            .map(|t| t.id.clone())
            .collect()
    }

    /// Direct followings and the full 2-hop neighbourhood, minus `user`.
    fn neighbourhood(&self, user: &str) -> (BTreeSet<&'a str>, BTreeSet<&'a str>) {
        let graph: &'a FollowGraph = self.graph;
        let mut direct = BTreeSet::new();
        let mut hood = BTreeSet::new();
        for f in graph.followings(user).into_iter().flatten() {
            direct.insert(f.as_str());
            hood.insert(f.as_str());
            hood.extend(
                graph
                    .followings(f)
                    .into_iter()
                    .flatten()
                    .map(String::as_str),
            );
        }
        hood.remove(user);
        (direct, hood)
    }

    /// Tweets recommended to `user` at `t_end`, best first.
    pub fn recommend(&self, user: &str, t_end: i64) -> Vec<String> {
        let (direct, hood) = self.neighbourhood(user);
        if hood.is_empty() {
            return Vec::new();
        }
        let start = t_end - self.cfg.window();
        let in_window = |t: &Tweet| t.timestamp > start && t.timestamp <= t_end;

        let mut engagers: HashMap<&str, BTreeSet<&str>> = HashMap::new();
        for t in self.stream.iter().filter(|t| in_window(t)) {
            if hood.contains(t.author.as_str()) {
                engagers.entry(t.root_id()).or_default().insert(&t.author);
            }
        }

        let mut ranked: Vec<(usize, &Tweet)> = self
            .stream
            .iter()
            .filter(|t| t.retweet_of.is_none() && in_window(t))
            .filter(|t| t.author != user)
            .filter(|t| self.cfg.include_direct_followings || !direct.contains(t.author.as_str()))
            .filter_map(|t| engagers.get(t.id.as_str()).map(|e| (e.len(), *t)))
            .collect();
        ranked.sort_by(|(sa, a), (sb, b)| {
            sb.cmp(sa)
                .then(b.timestamp.cmp(&a.timestamp))
                .then_with(|| a.id.cmp(&b.id))
        });
        ranked
            .into_iter()
            .take(self.cfg.top_k)
            .map(|(_, t)| t.id.clone())
            .collect()
    }

    /// Snapshot instants tiling the stream span: the first window starts at
    /// the earliest timestamp and the last one reaches the latest.
    pub fn snapshot_times(&self) -> Vec<i64> {
        let (Some(first), Some(last)) = (self.stream.first(), self.stream.last()) else {
            return Vec::new();
        };
        let (t_min, t_max) = (first.timestamp, last.timestamp);
        if t_max - t_min < self.cfg.snapshot_interval {
            log::warn!(
                "stream spans {}s, shorter than one snapshot interval; taking a single snapshot",
                t_max - t_min
            );
            return vec![t_max];
        }
        let mut out = Vec::new();
        let mut t = t_min - 1;
        while t < t_max {
            t += self.cfg.snapshot_interval;
            out.push(t);
        }
        out
    }

    fn diet_of<'t, I: IntoIterator<Item = &'t str>>(
        &self,
        ids: I,
        inferences: &BTreeMap<Keyword, TopicInference>,
    ) -> Result<DietDistribution> {
        let tweets = ids.into_iter().filter_map(|id| self.by_id.get(id).copied());
        normalize(&compute_diet_with(tweets, inferences, &self.extractor))
    }

    /// Runs consumption and recommendation for every user, then compares
    /// the resulting diets with the baseline.
    pub fn run(
        &self,
        users: &[String],
        inferences: &BTreeMap<Keyword, TopicInference>,
        baseline_name: &str,
        baseline: &DietDistribution,
    ) -> Result<(SimResult, MitigationReport)> {
        if self.stream.is_empty() {
            return Err(Error::InvalidArgument("empty tweet stream".into()));
        }
        let times = self.snapshot_times();
        let mut result = SimResult {
            config: self.cfg.clone(),
            snapshot_times: times.clone(),
            users: Vec::new(),
            skipped: Vec::new(),
        };

        let mut seen_users = BTreeSet::new();
        for user in users {
            if !seen_users.insert(user) {
                continue;
            }
            let consumed = self.deliver(user);
            let snapshots: Vec<Snapshot> = times
                .iter()
                .map(|&t_end| Snapshot {
                    t_end,
                    tweets: self.recommend(user, t_end),
                })
                .collect();

            let recommended: Vec<&str> = if self.cfg.dedupe_across_snapshots {
                let set: BTreeSet<&str> = snapshots
                    .iter()
                    .flat_map(|s| s.tweets.iter().map(String::as_str))
                    .collect();
                set.into_iter().collect()
            } else {
                snapshots
                    .iter()
                    .flat_map(|s| s.tweets.iter().map(String::as_str))
                    .collect()
            };

            let consumed_diet = self.diet_of(consumed.iter().map(String::as_str), inferences);
            let recommended_diet = self.diet_of(recommended, inferences);
            let (consumed_diet, recommended_diet) = match (consumed_diet, recommended_diet) {
                (Ok(c), Ok(r)) => (c, r),
                (c, _) => {
                    let which = if c.is_err() {
                        "consumed"
                    } else {
                        "recommended"
                    };
                    log::warn!("skipping {user}: empty {which} diet");
                    result.skipped.push(SkippedUser {
                        user: user.clone(),
                        reason: format!("empty {which} diet"),
                    });
                    continue;
                }
            };

            result.users.push(UserSim {
                user: user.clone(),
                consumed: consumed.into_iter().collect(),
                snapshots,
                consumed_diet,
                recommended_diet,
                combined_diet: combine(&consumed_diet, &recommended_diet),
            });
        }

        let pairs: Vec<UserDietPair> = result.users.iter().map(UserSim::pair).collect();
        let report = mitigation_report(&pairs, baseline_name, baseline, self.cfg.kl_alpha)?;
        Ok((result, report))
    }
}

pub fn deliver_timeline(user: &str, graph: &FollowGraph, stream: &[Tweet]) -> BTreeSet<String> {
    Simulator::new(graph, stream, SimConfig::default())
        .expect("default config is valid")
        .deliver(user)
}

pub fn recommend_snapshot(
    user: &str,
    graph: &FollowGraph,
    stream: &[Tweet],
    t_end: i64,
    cfg: &SimConfig,
) -> Result<Vec<String>> {
    Ok(Simulator::new(graph, stream, cfg.clone())?.recommend(user, t_end))
}

pub fn run_experiment(
    users: &[String],
    graph: &FollowGraph,
    stream: &[Tweet],
    inferences: &BTreeMap<Keyword, TopicInference>,
    cfg: &SimConfig,
    baseline_name: &str,
    baseline: &DietDistribution,
) -> Result<(SimResult, MitigationReport)> {
    Simulator::new(graph, stream, cfg.clone())?.run(users, inferences, baseline_name, baseline)
}
