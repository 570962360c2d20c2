//! Topical "information diets" of social-media posts.
//!
//! Keywords (hashtags and URLs) are assigned a topic from the 18-category
//! taxonomy by looking at which topical experts post them. The topics of the
//! keywords in a set of tweets then add up to a diet vector, which can be
//! compared with other diets and with bundled mass-media baselines.
//!
//! The crate is organised as a pipeline:
//!
//! - [`taxonomy`]: the fixed topic categories and the expert-tag matcher.
//! - [`corpus`]: tweet/expert/graph ingestion and keyword extraction.
//! - [`inference`]: the expert index and per-keyword topic inference.
//! - [`diet`]: diet vectors, distributions, KL divergence and baselines.
//! - [`analysis`]: population statistics over per-user diets.
//! - [`simnet`]: a deterministic consumption / 2-hop recommendation harness.

pub mod analysis;
pub mod corpus;
pub mod diet;
mod error;
pub mod inference;
pub mod simnet;
pub mod taxonomy;

pub use analysis::{
    group_top_topic_means, mitigation_report, tail_contribution, top_k_share_quantile, top_topic,
    top_topic_distribution, DietRole, GroupStats, MitigationRecord, MitigationReport, UserDiet,
    UserDietPair, TAIL_SIZE,
};
pub use corpus::{
    canonicalize_url, extract_keywords, is_english, load_corpus, load_dictionary, load_experts,
    load_graph, load_tweets, Corpus, ExpertProfile, FollowGraph, Keyword, KeywordExtractor,
    KeywordKind, LoadStats, ParseMode, RedirectMap, Tweet,
};
pub use diet::{
    combine, compute_diet, compute_diet_with, kl_divergence, load_baseline, load_baseline_from,
    normalize, parse_baseline_csv, Baseline, DietDistribution, DietReport, DietVector,
    DEFAULT_KL_ALPHA,
};
pub use error::{Error, Result};
pub use inference::{
    build_expert_index, infer_all, infer_topic, ExpertIndex, InferenceSet, TopicInference,
    Uninferred, DEFAULT_MIN_SUPPORT,
};
pub use simnet::{
    deliver_timeline, recommend_snapshot, run_experiment, SimConfig, SimResult, Simulator,
};
pub use taxonomy::{load_taxonomy, map_expert_tags, normalize_term, Taxonomy, TopicId};
