//! Population statistics over per-user diets.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::diet::{combine, kl_divergence, DietDistribution};
use crate::taxonomy::TopicId;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DietRole {
    Produced,
    Consumed,
    Recommended,
    Combined,
}

impl fmt::Display for DietRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DietRole::Produced => "produced",
            DietRole::Consumed => "consumed",
            DietRole::Recommended => "recommended",
            DietRole::Combined => "combined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UserDiet {
    pub user: String,
    pub dist: DietDistribution,
    pub role: DietRole,
}

/// The topic holding the largest share; ties go to the earlier topic.
pub fn top_topic(d: &DietDistribution) -> (TopicId, f64) {
    let mut best = (TopicId::ARTS_CRAFTS, d.get(TopicId::ARTS_CRAFTS));
    for (t, x) in d.iter().skip(1) {
        if x > best.1 {
            best = (t, x);
        }
    }
    best
}

/// Sum of the `k` smallest shares.
pub fn tail_contribution(d: &DietDistribution, k: usize) -> Result<f64> {
    if !(1..=TopicId::COUNT).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "tail size must be in 1..=18, got {k}"
        )));
    }
    Ok(d.share_of(&d.bottom_topics(k)))
}

/// Sum of the `k` largest shares.
pub fn head_contribution(d: &DietDistribution, k: usize) -> f64 {
    d.share_of(&d.top_topics(k))
}

/// Tail size used by the group statistics.
pub const TAIL_SIZE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroupStats {
    pub count: usize,
    pub mean_top_share: f64,
    pub mean_tail_share: f64,
}

/// Groups users by top topic and averages their top-topic share and their
/// bottom-12 share. Topics nobody leads with are left out.
pub fn group_top_topic_means(diets: &[UserDiet]) -> BTreeMap<TopicId, GroupStats> {
    let mut sums: BTreeMap<TopicId, (usize, f64, f64)> = BTreeMap::new();
    for d in diets {
        let (topic, share) = top_topic(&d.dist);
        let tail = tail_contribution(&d.dist, TAIL_SIZE).expect("constant tail size is valid");
        let e = sums.entry(topic).or_default();
        e.0 += 1;
        e.1 += share;
        e.2 += tail;
    }
    sums.into_iter()
        .map(|(t, (n, top, tail))| {
            (
                t,
                GroupStats {
                    count: n,
                    mean_top_share: top / n as f64,
                    mean_tail_share: tail / n as f64,
                },
            )
        })
        .collect()
}

/// Fraction of users whose top topic is each topic. Empty input gives an
/// empty map.
pub fn top_topic_distribution(diets: &[UserDiet]) -> BTreeMap<TopicId, f64> {
    let mut counts: BTreeMap<TopicId, usize> = BTreeMap::new();
    for d in diets {
        *counts.entry(top_topic(&d.dist).0).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(t, c)| (t, c as f64 / diets.len() as f64))
        .collect()
}

/// Fraction of users whose `k` largest topics together exceed `threshold`.
pub fn top_k_share_quantile(diets: &[UserDiet], k: usize, threshold: f64) -> f64 {
    if diets.is_empty() {
        return 0.0;
    }
    let hits = diets
        .iter()
        .filter(|d| head_contribution(&d.dist, k) > threshold)
        .count();
    hits as f64 / diets.len() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UserDietPair {
    pub user: String,
    pub consumed: DietDistribution,
    pub recommended: DietDistribution,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MitigationRecord {
    pub user: String,
    pub kl_consumed_baseline: f64,
    pub kl_combined_baseline: f64,
    pub kl_reco_consumed: f64,
    /// The combined diet is strictly closer to the baseline.
    pub mitigated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MitigationReport {
    pub baseline: String,
    pub alpha: f64,
    pub records: Vec<MitigationRecord>,
}

impl MitigationReport {
    pub fn mitigated_fraction(&self) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        self.records.iter().filter(|r| r.mitigated).count() as f64 / self.records.len() as f64
    }
}

/// Compares each user's consumed and combined diets against a baseline.
pub fn mitigation_report(
    users: &[UserDietPair],
    baseline_name: &str,
    baseline: &DietDistribution,
    alpha: f64,
) -> Result<MitigationReport> {
    let mut records = Vec::with_capacity(users.len());
    for u in users {
        let combined = combine(&u.consumed, &u.recommended);
        let kl_consumed_baseline = kl_divergence(&u.consumed, baseline, alpha)?;
        let kl_combined_baseline = kl_divergence(&combined, baseline, alpha)?;
        records.push(MitigationRecord {
            user: u.user.clone(),
            kl_consumed_baseline,
            kl_combined_baseline,
            kl_reco_consumed: kl_divergence(&u.recommended, &u.consumed, alpha)?,
            mitigated: kl_combined_baseline < kl_consumed_baseline,
        });
    }
    Ok(MitigationReport {
        baseline: baseline_name.to_string(),
        alpha,
        records,
    })
}
