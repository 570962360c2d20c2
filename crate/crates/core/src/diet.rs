//! Information-diet vectors and the operations comparing them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::corpus::{Keyword, KeywordExtractor, Tweet};
use crate::inference::TopicInference;
use crate::taxonomy::TopicId;
use crate::{Error, Result};

const N: usize = TopicId::COUNT;

/// Additive smoothing used by [`kl_divergence`] unless told otherwise.
pub const DEFAULT_KL_ALPHA: f64 = 1e-4;

/// Tolerance accepted by [`DietDistribution::new`] on the total mass.
const SUM_TOLERANCE: f64 = 1e-9;

/// Keyword mass held exactly as a count of `1/n` shares per `n`.
///
/// Sums of shares from different tweets are integer additions, so diet
/// vectors add associatively; the float value is materialized in a fixed
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Mass(BTreeMap<u32, u64>);

impl Mass {
    fn add_share(&mut self, n: u32) {
        *self.0.entry(n).or_default() += 1;
    }

    fn merge(&mut self, other: &Mass) {
        for (&n, &c) in &other.0 {
            *self.0.entry(n).or_default() += c;
        }
    }

    fn value(&self) -> f64 {
        self.0
            .iter()
            .fold(0.0, |acc, (&n, &c)| acc + c as f64 / n as f64)
    }
}

/// Raw topic mass of a set of tweets.
///
/// Each tweet carrying `n >= 1` keywords spreads a total weight of 1 over
/// them, `1/n` per keyword occurrence. Mass of keywords without an inferred
/// topic goes to `unattributed`. Tweets without keywords are only counted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DietVector {
    weights: [Mass; N],
    unattributed: Mass,
    tweet_count: usize,
    keywordless_count: usize,
}

impl DietVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one tweet given the topics of its keyword occurrences
    /// (`None` for keywords without an inferred topic).
    pub fn add_tweet<I>(&mut self, keyword_topics: I)
    where
        I: IntoIterator<Item = Option<TopicId>>,
        I::IntoIter: ExactSizeIterator,
    {
        let topics = keyword_topics.into_iter();
        let n = topics.len();
        if n == 0 {
            self.keywordless_count += 1;
            return;
        }
        let n = u32::try_from(n).expect("keyword count fits in u32");
        for topic in topics {
            match topic {
                Some(t) => self.weights[t.index()].add_share(n),
                None => self.unattributed.add_share(n),
            }
        }
        self.tweet_count += 1;
    }

    pub fn weight(&self, topic: TopicId) -> f64 {
        self.weights[topic.index()].value()
    }

    pub fn weights(&self) -> [f64; N] {
        std::array::from_fn(|i| self.weights[i].value())
    }

    pub fn unattributed(&self) -> f64 {
        self.unattributed.value()
    }

    /// Tweets with at least one keyword.
    pub fn tweet_count(&self) -> usize {
        self.tweet_count
    }

    pub fn keywordless_count(&self) -> usize {
        self.keywordless_count
    }

    pub fn topical_mass(&self) -> f64 {
        self.weights().iter().sum()
    }
}

impl AddAssign<&DietVector> for DietVector {
    fn add_assign(&mut self, rhs: &DietVector) {
        for (a, b) in self.weights.iter_mut().zip(&rhs.weights) {
            a.merge(b);
        }
        self.unattributed.merge(&rhs.unattributed);
        self.tweet_count += rhs.tweet_count;
        self.keywordless_count += rhs.keywordless_count;
    }
}

impl Add for DietVector {
    type Output = DietVector;

    fn add(mut self, rhs: DietVector) -> DietVector {
        self += &rhs;
        self
    }
}

/// Diet of `tweets`, looking keyword topics up in `inferences`.
pub fn compute_diet<'a, I>(tweets: I, inferences: &BTreeMap<Keyword, TopicInference>) -> DietVector
where
    I: IntoIterator<Item = &'a Tweet>,
{
    compute_diet_with(tweets, inferences, &KeywordExtractor::new())
}

pub fn compute_diet_with<'a, I>(
    tweets: I,
    inferences: &BTreeMap<Keyword, TopicInference>,
    extractor: &KeywordExtractor,
) -> DietVector
where
    I: IntoIterator<Item = &'a Tweet>,
{
    let mut diet = DietVector::new();
    for tweet in tweets {
        let topics: Vec<Option<TopicId>> = extractor
            .keywords(&tweet.text)
            .iter()
            .map(|k| inferences.get(k).map(|i| i.topic))
            .collect();
        diet.add_tweet(topics);
    }
    diet
}

/// A probability distribution over the 18 topics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DietDistribution {
    p: [f64; N],
}

impl DietDistribution {
    /// Wraps `p` as is after checking it is a distribution (non-negative,
    /// finite, summing to 1 within 1e-9).
    pub fn new(p: [f64; N]) -> Result<Self> {
        if let Some(i) = p.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "{} = {}",
                TopicId::from_index(i).unwrap(),
                p[i]
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("sums to {sum}")));
        }
        Ok(DietDistribution { p })
    }

    /// Scales non-negative weights to sum to 1.
    pub fn from_weights(w: [f64; N]) -> Result<Self> {
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidDistribution(
                "negative or non-finite weight".into(),
            ));
        }
        let total: f64 = w.iter().sum();
        if total <= 0.0 {
            return Err(Error::EmptyDiet);
        }
        Ok(DietDistribution {
            p: w.map(|x| x / total),
        })
    }

    pub fn uniform() -> Self {
        DietDistribution {
            p: [1.0 / N as f64; N],
        }
    }

    pub fn indicator(topic: TopicId) -> Self {
        let mut p = [0.0; N];
        p[topic.index()] = 1.0;
        DietDistribution { p }
    }

    pub fn get(&self, topic: TopicId) -> f64 {
        self.p[topic.index()]
    }

    pub fn as_array(&self) -> &[f64; N] {
        &self.p
    }

    pub fn iter(&self) -> impl Iterator<Item = (TopicId, f64)> + '_ {
        TopicId::all().zip(self.p.iter().copied())
    }

    /// Combined share of a set of topics.
    pub fn share_of<'a, I: IntoIterator<Item = &'a TopicId>>(&self, topics: I) -> f64 {
        topics.into_iter().map(|t| self.get(*t)).sum()
    }

    /// The `k` largest topics, largest first; ties by topic order.
    pub fn top_topics(&self, k: usize) -> Vec<TopicId> {
        let mut order: Vec<TopicId> = TopicId::all().collect();
        order.sort_by(|a, b| self.get(*b).total_cmp(&self.get(*a)).then(a.cmp(b)));
        order.truncate(k);
        order
    }

    /// The `k` smallest topics, smallest first; ties by topic order.
    pub fn bottom_topics(&self, k: usize) -> Vec<TopicId> {
        let mut order: Vec<TopicId> = TopicId::all().collect();
        order.sort_by(|a, b| self.get(*a).total_cmp(&self.get(*b)).then(a.cmp(b)));
        order.truncate(k);
        order
    }

    pub fn to_map(&self) -> BTreeMap<&'static str, f64> {
        self.iter().map(|(t, x)| (t.name(), x)).collect()
    }
}

impl Serialize for DietDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DietDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<TopicId, f64>::deserialize(deserializer)?;
        let mut p = [0.0; N];
        for (t, x) in map {
            p[t.index()] = x;
        }
        DietDistribution::new(p).map_err(serde::de::Error::custom)
    }
}

/// Topic shares of a diet, unattributed mass excluded.
pub fn normalize(d: &DietVector) -> Result<DietDistribution> {
    DietDistribution::from_weights(d.weights())
}

/// Shares over topics plus the unattributed slot, all summing to 1. For
/// reporting only; comparisons use [`normalize`].
pub fn reporting_shares(d: &DietVector) -> Result<([f64; N], f64)> {
    let w = d.weights();
    let u = d.unattributed();
    let total = w.iter().sum::<f64>() + u;
    if total <= 0.0 {
        return Err(Error::EmptyDiet);
    }
    Ok((w.map(|x| x / total), u / total))
}

/// `KL(p || q)` in nats after smoothing both sides with
/// `x -> (x + alpha) / (1 + 18 alpha)`.
pub fn kl_divergence(p: &DietDistribution, q: &DietDistribution, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be >= 0, got {alpha}"
        )));
    }
    let denom = 1.0 + N as f64 * alpha;
    let smooth = |x: f64| (x + alpha) / denom;
    let mut total = 0.0;
    for topic in TopicId::all() {
        let pi = smooth(p.get(topic));
        let qi = smooth(q.get(topic));
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::DivergenceUndefined(topic.name()));
        }
        total += pi * (pi / qi).ln();
    }
    // Rounding can leave a tiny negative sum when p and q nearly coincide.
    Ok(total.max(0.0))
}

/// Elementwise mean of two diets.
pub fn combine(consumed: &DietDistribution, recommended: &DietDistribution) -> DietDistribution {
    DietDistribution {
        p: std::array::from_fn(|i| (consumed.p[i] + recommended.p[i]) / 2.0),
    }
}

/// Bundled mass-media baseline diets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Baseline {
    NyTimes,
    WashPost,
    Economist,
}

impl Baseline {
    pub const ALL: [Baseline; 3] = [Baseline::NyTimes, Baseline::WashPost, Baseline::Economist];

    pub fn name(self) -> &'static str {
        match self {
            Baseline::NyTimes => "nytimes",
            Baseline::WashPost => "washpost",
            Baseline::Economist => "economist",
        }
    }

    fn bundled_csv(self) -> &'static str {
        match self {
            Baseline::NyTimes => include_str!("../data/baselines/nytimes.csv"),
            Baseline::WashPost => include_str!("../data/baselines/washpost.csv"),
            Baseline::Economist => include_str!("../data/baselines/economist.csv"),
        }
    }

    /// Published percentages, as stored.
    pub fn percentages(self) -> [f64; N] {
        parse_baseline_csv(self.bundled_csv()).expect("bundled baselines are valid")
    }

    /// Percentages over 100, rescaled to sum to 1.
    pub fn distribution(self) -> DietDistribution {
        baseline_distribution(&self.percentages()).expect("bundled baselines are valid")
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Baseline::ALL
            .into_iter()
            .find(|b| b.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownBaseline(s.to_string()))
    }
}

pub fn load_baseline(name: &str) -> Result<DietDistribution> {
    Ok(name.parse::<Baseline>()?.distribution())
}

/// Reads `<dir>/<name>.csv` instead of the bundled copy.
pub fn load_baseline_from(dir: impl AsRef<Path>, name: &str) -> Result<DietDistribution> {
    let path = dir.as_ref().join(format!("{name}.csv"));
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    baseline_distribution(&parse_baseline_csv(&text)?)
}

fn baseline_distribution(percent: &[f64; N]) -> Result<DietDistribution> {
    DietDistribution::from_weights(percent.map(|x| x / 100.0))
}

/// Parses a `topic,percent` CSV naming each topic once.
pub fn parse_baseline_csv(text: &str) -> Result<[f64; N]> {
    let bad = |line: usize, reason: String| Error::Malformed {
        path: "<baseline>".into(),
        line,
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| bad(1, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["topic", "percent"] {
        return Err(bad(1, "expected header \"topic,percent\"".into()));
    }
    let mut out: [Option<f64>; N] = [None; N];
    for rec in rdr.records() {
        let rec = rec.map_err(|e| bad(0, e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 2 {
            return Err(bad(line, "expected two fields".into()));
        }
        let topic: TopicId = rec[0].parse()?;
        let value: f64 = rec[1]
            .parse()
            .map_err(|_| bad(line, format!("bad percent {:?}", &rec[1])))?;
        if !(value.is_finite() && value >= 0.0) {
            return Err(bad(line, format!("bad percent {value}")));
        }
        if out[topic.index()].replace(value).is_some() {
            return Err(Error::DuplicateTopic(topic.name().into()));
        }
    }
    let mut percent = [0.0; N];
    for (t, v) in TopicId::all().zip(out) {
        percent[t.index()] = v.ok_or_else(|| Error::MissingTopic(t.name().into()))?;
    }
    Ok(percent)
}

/// JSON diet report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DietReport {
    pub weights: BTreeMap<&'static str, f64>,
    pub unattributed: f64,
    pub tweet_count: usize,
    pub keywordless_count: usize,
    /// `None` when the diet has no topical mass.
    pub distribution: Option<DietDistribution>,
}

impl DietReport {
    pub fn new(d: &DietVector) -> Self {
        DietReport {
            weights: TopicId::all().map(|t| (t.name(), d.weight(t))).collect(),
            unattributed: d.unattributed(),
            tweet_count: d.tweet_count(),
            keywordless_count: d.keywordless_count(),
            distribution: normalize(d).ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Keyword;
    use proptest::prelude::*;

    fn inference(k: &Keyword, topic: TopicId) -> (Keyword, TopicInference) {
        (
            k.clone(),
            TopicInference {
                keyword: k.clone(),
                topic,
                raw_fraction: 1.0,
                normalized_score: 0.1,
                support: 10,
            },
        )
    }

    fn tweet(id: &str, text: &str) -> Tweet {
        Tweet {
            id: id.into(),
            author: "u".into(),
            timestamp: 0,
            text: text.into(),
            retweet_of: None,
        }
    }

    #[test]
    fn half_attributed_tweet() {
        let nba = Keyword::hashtag("nba");
        let inf = BTreeMap::from([inference(&nba, TopicId::SPORTS)]);
        let d = compute_diet(&[tweet("1", "#nba http://x.com/y")], &inf);
        assert_eq!(d.weight(TopicId::SPORTS), 0.5);
        assert_eq!(d.unattributed(), 0.5);
        assert_eq!(d.tweet_count(), 1);
    }

    #[test]
    fn two_tweet_mix() {
        let nba = Keyword::hashtag("nba");
        let vote = Keyword::hashtag("vote");
        let inf = BTreeMap::from([
            inference(&nba, TopicId::SPORTS),
            inference(&vote, TopicId::POLITICS_LAW),
        ]);
        let d = compute_diet(&[tweet("1", "#nba"), tweet("2", "#vote #nba")], &inf);
        assert_eq!(d.weight(TopicId::SPORTS), 1.5);
        assert_eq!(d.weight(TopicId::POLITICS_LAW), 0.5);

        let p = normalize(&d).unwrap();
        assert_eq!(p.get(TopicId::SPORTS), 0.75);
        assert_eq!(p.get(TopicId::POLITICS_LAW), 0.25);
    }

    #[test]
    fn keywordless_tweet_only_counted() {
        let d = compute_diet(&[tweet("1", "hello there")], &BTreeMap::new());
        assert_eq!(d.keywordless_count(), 1);
        assert_eq!(d.tweet_count(), 0);
        assert_eq!(d.weights(), [0.0; N]);
        assert!(matches!(normalize(&d), Err(Error::EmptyDiet)));
    }

    #[test]
    fn reporting_shares_include_unattributed() {
        let mut d = DietVector::new();
        d.add_tweet([Some(TopicId::SPORTS), None]);
        d.add_tweet([Some(TopicId::SPORTS)]);
        let (topics, u) = reporting_shares(&d).unwrap();
        assert_eq!(topics[TopicId::SPORTS.index()], 0.75);
        assert_eq!(u, 0.25);
        assert_eq!(
            normalize(&d).unwrap(),
            DietDistribution::indicator(TopicId::SPORTS)
        );
    }

    #[test]
    fn kl_known_values() {
        let u = DietDistribution::uniform();
        let ind = DietDistribution::indicator(TopicId::SPORTS);
        assert_eq!(kl_divergence(&u, &u, 0.0).unwrap(), 0.0);
        let v = kl_divergence(&ind, &u, 0.0).unwrap();
        assert!((v - 18f64.ln()).abs() < 1e-12);
        assert!(matches!(
            kl_divergence(&u, &ind, 0.0),
            Err(Error::DivergenceUndefined(_))
        ));
        assert!(kl_divergence(&u, &u, -1.0).is_err());
        assert!(kl_divergence(&u, &u, f64::NAN).is_err());
    }

    #[test]
    fn kl_smoothed_matches_scalar_sum() {
        let u = DietDistribution::uniform();
        let ind = DietDistribution::indicator(TopicId::SPORTS);
        let a: f64 = 1e-4;
        let d = 1.0 + 18.0 * a;
        let hot = (1.0 + a) / d;
        let cold = a / d;
        let p = (1.0 / 18.0 + a) / d;
        let expected = p * (p / hot).ln() + 17.0 * p * (p / cold).ln();
        let got = kl_divergence(&u, &ind, a).unwrap();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
        assert!(got.is_finite() && got > 0.0);
    }

    #[test]
    fn combine_examples() {
        let s = DietDistribution::indicator(TopicId::SPORTS);
        let p = DietDistribution::indicator(TopicId::POLITICS_LAW);
        let c = combine(&s, &p);
        assert_eq!(c.get(TopicId::SPORTS), 0.5);
        assert_eq!(c.get(TopicId::POLITICS_LAW), 0.5);
        assert_eq!(combine(&s, &s), s);
    }

    #[test]
    fn baselines() {
        let ny = Baseline::NyTimes.percentages();
        assert_eq!(ny[TopicId::POLITICS_LAW.index()], 29.49);
        assert_eq!(ny[TopicId::SPORTS.index()], 15.01);
        assert_eq!(ny[TopicId::ENTERTAINMENT.index()], 12.33);
        let ec = Baseline::Economist.percentages();
        assert_eq!(ec[TopicId::BUSINESS_FINANCE.index()], 28.04);
        assert_eq!(ec[TopicId::POLITICS_LAW.index()], 35.06);
        for b in Baseline::ALL {
            let sum: f64 = b.distribution().as_array().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12);
        }
        assert!(matches!(
            load_baseline("guardian"),
            Err(Error::UnknownBaseline(_))
        ));
        assert_eq!(
            load_baseline("NYTimes").unwrap(),
            Baseline::NyTimes.distribution()
        );
    }

    #[test]
    fn baseline_csv_validation() {
        let text = Baseline::NyTimes.bundled_csv();
        assert!(matches!(
            parse_baseline_csv(&text.replace("science,1.34\n", "")),
            Err(Error::MissingTopic(t)) if t == "science"
        ));
        assert!(parse_baseline_csv(&text.replace("science,1.34", "science,x")).is_err());
        assert!(parse_baseline_csv(&text.replace("science,1.34", "sports,1.34")).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(DietDistribution::new([0.0; N]).is_err());
        let mut p = [0.0; N];
        p[0] = 1.5;
        p[1] = -0.5;
        assert!(DietDistribution::new(p).is_err());
        assert!(DietDistribution::new(*DietDistribution::uniform().as_array()).is_ok());
    }

    #[test]
    fn top_and_bottom_topics() {
        let ny = Baseline::NyTimes.distribution();
        assert_eq!(
            ny.top_topics(3),
            [
                TopicId::POLITICS_LAW,
                TopicId::SPORTS,
                TopicId::ENTERTAINMENT
            ]
        );
        assert_eq!(ny.bottom_topics(1), [TopicId::FASHION_STYLE]);
        assert_eq!(
            DietDistribution::uniform().top_topics(2),
            [TopicId::ARTS_CRAFTS, TopicId::AUTOMOTIVE]
        );
    }

    fn arb_tweet_topics() -> impl Strategy<Value = Vec<Option<u8>>> {
        proptest::collection::vec(proptest::option::weighted(0.8, 0u8..18), 0..6)
    }

    fn build(tweets: &[Vec<Option<u8>>]) -> DietVector {
        let mut d = DietVector::new();
        for t in tweets {
            d.add_tweet(
                t.iter()
                    .map(|x| x.map(|i| TopicId::from_index(i as usize).unwrap()))
                    .collect::<Vec<_>>(),
            );
        }
        d
    }

    fn arb_dist() -> impl Strategy<Value = DietDistribution> {
        proptest::collection::vec(0.0f64..1.0, N).prop_filter_map("zero mass", |w| {
            DietDistribution::from_weights(w.try_into().unwrap()).ok()
        })
    }

    proptest! {
        #[test]
        fn weight_is_conserved(tweets in proptest::collection::vec(arb_tweet_topics(), 0..40)) {
            let d = build(&tweets);
            let total = d.topical_mass() + d.unattributed();
            prop_assert!((total - d.tweet_count() as f64).abs() <= 1e-9);
            prop_assert_eq!(d.tweet_count() + d.keywordless_count(), tweets.len());
        }

        #[test]
        fn diets_add_over_disjoint_sets(
            a in proptest::collection::vec(arb_tweet_topics(), 0..20),
            b in proptest::collection::vec(arb_tweet_topics(), 0..20),
        ) {
            let mut all = a.clone();
            all.extend(b.iter().cloned());
            let joint = build(&all);
            let sum = build(&a) + build(&b);
            prop_assert_eq!(joint.weights(), sum.weights());
            prop_assert_eq!(joint.unattributed(), sum.unattributed());
            prop_assert_eq!(joint, sum);
        }

        #[test]
        fn kl_is_nonnegative(p in arb_dist(), q in arb_dist(), alpha in 0.0f64..0.01) {
            let v = kl_divergence(&p, &q, alpha).unwrap();
            prop_assert!(v >= 0.0 && v.is_finite());
            prop_assert!(kl_divergence(&p, &p, 0.0).unwrap() <= 1e-12);
        }

        #[test]
        fn combine_is_symmetric_mean(p in arb_dist(), q in arb_dist()) {
            let c = combine(&p, &q);
            prop_assert_eq!(c, combine(&q, &p));
            let sum: f64 = c.as_array().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
        }
    }
}
