//! Synthetic workloads for the benchmarks.

use infodiet_core::{ExpertProfile, FollowGraph, Taxonomy, TopicId, Tweet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Workload {
    pub taxonomy: Taxonomy,
    pub experts: Vec<ExpertProfile>,
    pub expert_tweets: Vec<Tweet>,
    pub stream: Vec<Tweet>,
    pub graph: FollowGraph,
    pub users: Vec<String>,
}

/// A corpus with `n_experts` experts posting from a pool of `n_keywords`
/// hashtags, and a `n_users`-account network producing `n_tweets` tweets.
pub fn workload(n_experts: usize, n_keywords: usize, n_users: usize, n_tweets: usize) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let taxonomy = Taxonomy::bundled();
    let topics: Vec<TopicId> = TopicId::all().collect();

    let experts: Vec<ExpertProfile> = (0..n_experts)
        .map(|i| {
            let t = *topics.choose(&mut rng).unwrap();
            ExpertProfile {
                user: format!("e{i}"),
                tags: vec![t.name().to_string()],
            }
        })
        .collect();
    let expert_tweets: Vec<Tweet> = (0..n_experts * 4)
        .map(|i| {
            let a = rng.gen_range(0..n_keywords);
            let b = rng.gen_range(0..n_keywords);
            Tweet {
                id: format!("x{i}"),
                author: format!("e{}", i % n_experts),
                timestamp: i as i64,
                text: format!("#k{a} #k{b}"),
                retweet_of: None,
            }
        })
        .collect();

    let mut graph = FollowGraph::new();
    for u in 0..n_users {
        for _ in 0..20 {
            let v = rng.gen_range(0..n_users);
            graph.add_edge(&format!("u{u}"), &format!("u{v}"));
        }
    }
    let mut stream = Vec::with_capacity(n_tweets);
    for i in 0..n_tweets {
        let author = format!("u{}", rng.gen_range(0..n_users));
        let retweet_of = (i > 0 && rng.gen_bool(0.3)).then(|| format!("t{}", rng.gen_range(0..i)));
        stream.push(Tweet {
            id: format!("t{i}"),
            author,
            timestamp: (i as i64) * 10,
            text: format!("#k{} news", rng.gen_range(0..n_keywords)),
            retweet_of,
        });
    }
    let users = (0..n_users.min(20)).map(|u| format!("u{u}")).collect();
    Workload {
        taxonomy,
        experts,
        expert_tweets,
        stream,
        graph,
        users,
    }
}
