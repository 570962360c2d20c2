//! The 18 topic categories and the matcher that maps expertise tags onto them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::{Error, Result};

const TOPIC_NAMES: [&str; TopicId::COUNT] = [
    "arts-crafts",
    "automotive",
    "business-finance",
    "career",
    "education-books",
    "entertainment",
    "environment",
    "fashion-style",
    "food-drink",
    "health-fitness",
    "hobbies",
    "paranormal",
    "politics-law",
    "religion",
    "science",
    "society",
    "sports",
    "technology",
];

const BUNDLED_TABLE: &str = include_str!("../data/table1.json");

/// One of the 18 topic categories.
///
/// The ordering is the canonical table order and is what every tie-break in
/// the crate falls back to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopicId(u8);

impl TopicId {
    pub const COUNT: usize = 18;

    pub const ARTS_CRAFTS: TopicId = TopicId(0);
    pub const AUTOMOTIVE: TopicId = TopicId(1);
    pub const BUSINESS_FINANCE: TopicId = TopicId(2);
    pub const CAREER: TopicId = TopicId(3);
    pub const EDUCATION_BOOKS: TopicId = TopicId(4);
    pub const ENTERTAINMENT: TopicId = TopicId(5);
    pub const ENVIRONMENT: TopicId = TopicId(6);
    pub const FASHION_STYLE: TopicId = TopicId(7);
    pub const FOOD_DRINK: TopicId = TopicId(8);
    pub const HEALTH_FITNESS: TopicId = TopicId(9);
    pub const HOBBIES: TopicId = TopicId(10);
    pub const PARANORMAL: TopicId = TopicId(11);
    pub const POLITICS_LAW: TopicId = TopicId(12);
    pub const RELIGION: TopicId = TopicId(13);
    pub const SCIENCE: TopicId = TopicId(14);
    pub const SOCIETY: TopicId = TopicId(15);
    pub const SPORTS: TopicId = TopicId(16);
    pub const TECHNOLOGY: TopicId = TopicId(17);

    pub fn all() -> impl DoubleEndedIterator<Item = TopicId> + ExactSizeIterator + Clone {
        (0..Self::COUNT as u8).map(TopicId)
    }

    pub fn from_index(index: usize) -> Option<TopicId> {
        (index < Self::COUNT).then_some(TopicId(index as u8))
    }

    /// Looks a topic up by name. The name is normalized first, so
    /// `"Politics Law"` finds `politics-law`.
    pub fn from_name(name: &str) -> Option<TopicId> {
        let name = normalize_term(name);
        TOPIC_NAMES
            .iter()
            .position(|n| *n == name)
            .map(|i| TopicId(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        TOPIC_NAMES[self.index()]
    }
}

impl fmt::Display for TopicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopicId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TopicId::from_name(s).ok_or_else(|| Error::UnknownTopic(s.to_string()))
    }
}

impl Serialize for TopicId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for TopicId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        TopicId::from_name(&s).ok_or_else(|| de::Error::custom(format!("unknown topic: {s}")))
    }
}

/// Normalizes a term or tag for matching.
///
/// Lowercases, trims non-alphanumeric characters from both ends and turns
/// every run of spaces, underscores and hyphens into a single hyphen.
pub fn normalize_term(raw: &str) -> String {
    let lower = raw.to_lowercase();
    let trimmed = lower.trim_matches(|c: char| !c.is_alphanumeric());
    let mut out = String::with_capacity(trimmed.len());
    let mut in_sep = false;
    for c in trimmed.chars() {
        if c.is_whitespace() || c == '_' || c == '-' {
            if !in_sep {
                out.push('-');
            }
            in_sep = true;
        } else {
            out.push(c);
            in_sep = false;
        }
    }
    out
}

/// Topic categories with their related terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taxonomy {
    terms: Vec<BTreeSet<String>>,
    lookup: HashMap<String, Vec<TopicId>>,
}

/// Outcome of matching one expert's tags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TagMatch {
    pub topics: BTreeSet<TopicId>,
    pub unmatched: usize,
}

impl Taxonomy {
    /// The taxonomy shipped with the crate.
    pub fn bundled() -> Taxonomy {
        Taxonomy::from_json_str(BUNDLED_TABLE).expect("bundled taxonomy is valid")
    }

    pub fn from_json_str(json: &str) -> Result<Taxonomy> {
        let entries: OrderedEntries = serde_json::from_str(json)?;
        Taxonomy::from_entries(entries.0)
    }

    /// Builds a taxonomy from `(topic name, terms)` pairs. Every topic must
    /// appear exactly once with at least one term.
    pub fn from_entries<I, S, T>(entries: I) -> Result<Taxonomy>
    where
        I: IntoIterator<Item = (S, Vec<T>)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut terms: Vec<Option<BTreeSet<String>>> = vec![None; TopicId::COUNT];
        for (name, raw_terms) in entries {
            let name = name.as_ref();
            let topic = TopicId::from_name(name).ok_or_else(|| Error::UnknownTopic(name.into()))?;
            let slot = &mut terms[topic.index()];
            if slot.is_some() {
                return Err(Error::DuplicateTopic(topic.name().into()));
            }
            let mut set: BTreeSet<String> = raw_terms
                .iter()
                .map(|t| normalize_term(t.as_ref()))
                .filter(|t| !t.is_empty())
                .collect();
            if set.is_empty() {
                return Err(Error::EmptyTerms(topic.name().into()));
            }
            set.insert(topic.name().to_string());
            *slot = Some(set);
        }

        let mut complete = Vec::with_capacity(TopicId::COUNT);
        for (topic, slot) in TopicId::all().zip(terms) {
            complete.push(slot.ok_or_else(|| Error::MissingTopic(topic.name().into()))?);
        }

        let mut lookup: HashMap<String, Vec<TopicId>> = HashMap::new();
        for (topic, set) in TopicId::all().zip(&complete) {
            for term in set {
                lookup.entry(term.clone()).or_default().push(topic);
            }
        }
        Ok(Taxonomy {
            terms: complete,
            lookup,
        })
    }

    pub fn terms(&self, topic: TopicId) -> &BTreeSet<String> {
        &self.terms[topic.index()]
    }

    /// Topics whose term set contains the normalized form of `term`.
    pub fn topics_for_term(&self, term: &str) -> &[TopicId] {
        self.lookup
            .get(&normalize_term(term))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Maps a list of expertise tags to the union of their topics.
    pub fn match_tags<S: AsRef<str>>(&self, tags: &[S]) -> TagMatch {
        let mut out = TagMatch::default();
        for tag in tags {
            let hits = self.topics_for_term(tag.as_ref());
            if hits.is_empty() {
                out.unmatched += 1;
            }
            out.topics.extend(hits.iter().copied());
        }
        out
    }
}

/// Reads a taxonomy JSON file (`{"topic": ["term", ...], ...}`).
pub fn load_taxonomy(path: impl AsRef<Path>) -> Result<Taxonomy> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Taxonomy::from_json_str(&text)
}

pub fn map_expert_tags<S: AsRef<str>>(tags: &[S], taxonomy: &Taxonomy) -> BTreeSet<TopicId> {
    taxonomy.match_tags(tags).topics
}

// JSON object read as a list so duplicate keys survive to validation.
struct OrderedEntries(Vec<(String, Vec<String>)>);

impl<'de> Deserialize<'de> for OrderedEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = OrderedEntries;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping topic names to term lists")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<OrderedEntries, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, Vec<String>>()? {
                    out.push(entry);
                }
                Ok(OrderedEntries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}
