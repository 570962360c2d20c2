use std::collections::BTreeMap;

use infodiet_core::{
    group_top_topic_means, top_k_share_quantile, top_topic_distribution, DietDistribution,
    DietRole, TopicId, UserDiet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn diets(seed: u64, n: usize) -> Vec<UserDiet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            // A dominant topic plus noise, so groups have several members.
            let lead = rng.gen_range(0..5) * 3;
            let mut w = [0.0; 18];
            for (j, x) in w.iter_mut().enumerate() {
                *x = rng.gen_range(0.0..1.0) + if j == lead { 6.0 } else { 0.0 };
            }
            UserDiet {
                user: format!("u{i}"),
                dist: DietDistribution::from_weights(w).unwrap(),
                role: DietRole::Consumed,
            }
        })
        .collect()
}

// Row-by-row recomputation: sort each user's shares, pick the top and sum
// the twelve smallest, then average per group.
fn spreadsheet(ds: &[UserDiet]) -> BTreeMap<usize, (usize, f64, f64)> {
    let mut rows: Vec<(usize, f64, f64)> = Vec::new();
    for d in ds {
        let shares: Vec<f64> = d.dist.as_array().to_vec();
        let mut top = 0;
        for j in 1..18 {
            if shares[j] > shares[top] {
                top = j;
            }
        }
        let mut sorted = shares.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let tail: f64 = sorted[..12].iter().sum();
        rows.push((top, shares[top], tail));
    }
    let mut out: BTreeMap<usize, (usize, f64, f64)> = BTreeMap::new();
    for (t, share, tail) in rows {
        let e = out.entry(t).or_default();
        e.0 += 1;
        e.1 += share;
        e.2 += tail;
    }
    out.into_iter()
        .map(|(t, (n, a, b))| (t, (n, a / n as f64, b / n as f64)))
        .collect()
}

#[test]
fn group_means_match_recomputation() {
    let ds = diets(1, 10);
    let got = group_top_topic_means(&ds);
    let want = spreadsheet(&ds);
    assert_eq!(got.len(), want.len());
    for (t, stats) in &got {
        let (n, top, tail) = want[&t.index()];
        assert_eq!(stats.count, n);
        assert!((stats.mean_top_share - top).abs() < 1e-12);
        assert!((stats.mean_tail_share - tail).abs() < 1e-12);
    }
}

#[test]
fn top_topic_distribution_matches_recount() {
    let ds = diets(2, 20);
    let got = top_topic_distribution(&ds);
    let mut counts = [0usize; 18];
    for d in &ds {
        let a = d.dist.as_array();
        let best = (0..18).fold(0, |b, j| if a[j] > a[b] { j } else { b });
        counts[best] += 1;
    }
    for t in TopicId::all() {
        let want = counts[t.index()] as f64 / 20.0;
        assert_eq!(got.get(&t).copied().unwrap_or(0.0), want, "{t}");
    }
    assert!((got.values().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn top_k_share_matches_recount() {
    let ds = diets(3, 40);
    for (k, thr) in [(1, 0.3), (2, 0.5), (3, 0.45), (18, 0.99)] {
        let hits = ds
            .iter()
            .filter(|d| {
                let mut s = d.dist.as_array().to_vec();
                s.sort_by(|a, b| b.partial_cmp(a).unwrap());
                s[..k].iter().sum::<f64>() > thr
            })
            .count();
        assert_eq!(
            top_k_share_quantile(&ds, k, thr),
            hits as f64 / 40.0,
            "k={k}"
        );
    }
}
