//! Ingestion of tweets, expert profiles and follow graphs, plus keyword
//! extraction.
//!
//! File formats:
//!
//! - tweets: JSONL, `{"id":str,"user":str,"ts":int,"text":str,"retweet_of":str|null}`
//! - experts: JSONL, `{"user":str,"tags":[str,...]}`
//! - graph: CSV with header `follower,followee`
//! - redirect map: CSV with header `short,target`
//! - dictionary: one lowercase word per line

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use url::Url;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    #[serde(rename = "user")]
    pub author: String,
    #[serde(rename = "ts")]
    pub timestamp: i64,
    pub text: String,
    #[serde(default)]
    pub retweet_of: Option<String>,
}

impl Tweet {
    /// Id of the original tweet this one carries (itself unless a retweet).
    pub fn root_id(&self) -> &str {
        self.retweet_of.as_deref().unwrap_or(&self.id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpertProfile {
    pub user: String,
    #[serde(default)]
    pub tags: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeywordKind {
    Hashtag,
    Url,
}

impl KeywordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            KeywordKind::Hashtag => "hashtag",
            KeywordKind::Url => "url",
        }
    }
}

/// A canonicalized hashtag or URL.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Keyword {
    pub kind: KeywordKind,
    pub canonical: String,
}

impl Keyword {
    /// Hashtag keyword from its text, with or without the leading `#`.
    pub fn hashtag(tag: &str) -> Keyword {
        Keyword {
            kind: KeywordKind::Hashtag,
            canonical: tag.trim_start_matches('#').to_ascii_lowercase(),
        }
    }

    /// URL keyword from an already canonical `host/path` string.
    pub fn url(canonical: &str) -> Keyword {
        Keyword {
            kind: KeywordKind::Url,
            canonical: canonical.to_string(),
        }
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            KeywordKind::Hashtag => write!(f, "#{}", self.canonical),
            KeywordKind::Url => f.write_str(&self.canonical),
        }
    }
}

/// Offline shortener expansion: canonical short URL to canonical target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RedirectMap {
    map: HashMap<String, String>,
}

impl RedirectMap {
    /// Builds a map from raw pairs. Both sides may be given with or without
    /// a scheme; they are canonicalized before insertion.
    pub fn from_pairs<I, A, B>(pairs: I) -> Result<RedirectMap>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut map = HashMap::new();
        for (short, target) in pairs {
            let short = canonical_url_string(&with_scheme(short.as_ref()))?;
            let target = canonical_url_string(&with_scheme(target.as_ref()))?;
            map.insert(short, target);
        }
        Ok(RedirectMap { map })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<RedirectMap> {
        let path = path.as_ref();
        let rows = read_csv_pairs(path, ["short", "target"])?;
        let mut map = HashMap::new();
        for (line, short, target) in rows {
            let malformed = |e: Error| Error::Malformed {
                path: path.to_path_buf(),
                line,
                reason: e.to_string(),
            };
            let short = canonical_url_string(&with_scheme(&short)).map_err(malformed)?;
            let target = canonical_url_string(&with_scheme(&target)).map_err(malformed)?;
            map.insert(short, target);
        }
        Ok(RedirectMap { map })
    }

    pub fn resolve<'a>(&'a self, canonical: &'a str) -> &'a str {
        self.map
            .get(canonical)
            .map(String::as_str)
            .unwrap_or(canonical)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn with_scheme(s: &str) -> String {
    let lower = s.trim().to_ascii_lowercase();
    if lower.starts_with("http://") || lower.starts_with("https://") {
        s.trim().to_string()
    } else {
        format!("http://{}", s.trim())
    }
}

fn canonical_url_string(raw: &str) -> Result<String> {
    let malformed = || Error::MalformedUrl(raw.to_string());
    let parsed = Url::parse(raw).map_err(|_| malformed())?;
    if !matches!(parsed.scheme(), "http" | "https") {
        return Err(malformed());
    }
    let host = parsed.host_str().unwrap_or("").to_lowercase();
    let host = host.strip_prefix("www.").unwrap_or(&host);
    if host.is_empty() {
        return Err(malformed());
    }
    let path = parsed.path().to_lowercase();
    Ok(format!("{host}{}", path.trim_end_matches('/')))
}

/// Canonical form of an `http(s)` URL: lowercase `host/path` without scheme,
/// `www.` prefix, query, fragment or trailing slash.
pub fn canonicalize_url(raw: &str) -> Result<Keyword> {
    canonical_url_string(raw).map(|c| Keyword::url(&c))
}

/// Keywords found in one text, plus the number of URL tokens that failed to
/// parse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extraction {
    pub keywords: Vec<Keyword>,
    pub malformed: usize,
}

#[derive(Clone, Debug, Default)]
pub struct KeywordExtractor {
    redirects: Option<RedirectMap>,
}

const URL_TRAILING: &[char] = &['.', ',', ';', ':', '!', '?', ')', ']', '}', '"', '\'', '>'];
const URL_LEADING: &[char] = &['(', '[', '{', '"', '\'', '<'];

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn url_token(token: &str) -> Option<&str> {
    let t = token.trim_start_matches(URL_LEADING);
    let head = t.get(..8).unwrap_or(t).to_ascii_lowercase();
    (head.starts_with("http://") || head.starts_with("https://"))
        .then(|| t.trim_end_matches(URL_TRAILING))
}

fn push_hashtags(token: &str, out: &mut Vec<Keyword>) {
    let mut prev: Option<char> = None;
    let mut chars = token.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c == '#' && !prev.is_some_and(is_word_char) {
            let start = i + 1;
            let mut end = start;
            while let Some(&(j, d)) = chars.peek() {
                if !is_word_char(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            if end > start {
                out.push(Keyword::hashtag(&token[start..end]));
                // A '#' right after a hashtag starts a new one.
                prev = None;
                continue;
            }
        }
        prev = Some(c);
    }
}

impl KeywordExtractor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_redirects(redirects: RedirectMap) -> Self {
        KeywordExtractor {
            redirects: Some(redirects),
        }
    }

    pub fn canonicalize_url(&self, raw: &str) -> Result<Keyword> {
        let canonical = canonical_url_string(raw)?;
        Ok(match &self.redirects {
            Some(map) => Keyword::url(map.resolve(&canonical)),
            None => Keyword::url(&canonical),
        })
    }

    /// Hashtags and URLs in order of appearance, duplicates kept.
    pub fn extract(&self, text: &str) -> Extraction {
        let mut out = Extraction::default();
        for token in text.split_whitespace() {
            if let Some(raw) = url_token(token) {
                match self.canonicalize_url(raw) {
                    Ok(k) => out.keywords.push(k),
                    Err(_) => out.malformed += 1,
                }
            } else {
                push_hashtags(token, &mut out.keywords);
            }
        }
        out
    }

    pub fn keywords(&self, text: &str) -> Vec<Keyword> {
        self.extract(text).keywords
    }
}

/// [`KeywordExtractor::keywords`] without a redirect map.
pub fn extract_keywords(text: &str) -> Vec<Keyword> {
    KeywordExtractor::new().keywords(text)
}

/// Dictionary-majority English test: at least half of the countable words
/// are dictionary words. Hashtags, URLs and mentions are not counted, and
/// surrounding punctuation is stripped. No countable words means false.
pub fn is_english(text: &str, dictionary: &HashSet<String>) -> bool {
    let mut total = 0usize;
    let mut known = 0usize;
    for token in text.split_whitespace() {
        if token.starts_with('#') || token.starts_with('@') || url_token(token).is_some() {
            continue;
        }
        let word = token
            .trim_matches(|c: char| !c.is_alphanumeric())
            .to_lowercase();
        if word.is_empty() {
            continue;
        }
        total += 1;
        if dictionary.contains(&word) {
            known += 1;
        }
    }
    total > 0 && 2 * known >= total
}

pub fn load_dictionary(path: impl AsRef<Path>) -> Result<HashSet<String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect())
}

/// Directed follow edges: user -> users they follow.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FollowGraph {
    followings: BTreeMap<String, BTreeSet<String>>,
}

impl FollowGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `follower -> followee`. Self-loops are refused (returns false);
    /// duplicate edges are absorbed.
    pub fn add_edge(&mut self, follower: &str, followee: &str) -> bool {
        if follower == followee {
            return false;
        }
        self.followings
            .entry(follower.to_string())
            .or_default()
            .insert(followee.to_string());
        true
    }

    pub fn remove_edge(&mut self, follower: &str, followee: &str) -> bool {
        self.followings
            .get_mut(follower)
            .is_some_and(|s| s.remove(followee))
    }

    pub fn contains_user(&self, user: &str) -> bool {
        self.followings.contains_key(user)
    }

    pub fn followings(&self, user: &str) -> Option<&BTreeSet<String>> {
        self.followings.get(user)
    }

    /// Users with at least one outgoing edge, sorted.
    pub fn users(&self) -> impl Iterator<Item = &str> {
        self.followings.keys().map(String::as_str)
    }

    pub fn edge_count(&self) -> usize {
        self.followings.values().map(BTreeSet::len).sum()
    }
}

impl<A: AsRef<str>, B: AsRef<str>> FromIterator<(A, B)> for FollowGraph {
    fn from_iter<I: IntoIterator<Item = (A, B)>>(iter: I) -> Self {
        let mut g = FollowGraph::new();
        for (a, b) in iter {
            g.add_edge(a.as_ref(), b.as_ref());
        }
        g
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// Skip and count malformed records.
    #[default]
    Lenient,
    /// Fail on the first malformed record.
    Strict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoadStats {
    pub records: usize,
    pub skipped: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

struct Reader<'a> {
    path: &'a Path,
    mode: ParseMode,
    stats: LoadStats,
}

impl Reader<'_> {
    fn reject(&mut self, line: usize, reason: impl Into<String>) -> Result<()> {
        let reason = reason.into();
        match self.mode {
            ParseMode::Strict => Err(Error::Malformed {
                path: self.path.to_path_buf(),
                line,
                reason,
            }),
            ParseMode::Lenient => {
                log::debug!("{}:{line}: skipping: {reason}", self.path.display());
                self.stats.skipped += 1;
                Ok(())
            }
        }
    }
}

fn read_jsonl<T: DeserializeOwned>(
    path: &Path,
    mode: ParseMode,
    mut validate: impl FnMut(&T) -> std::result::Result<(), String>,
) -> Result<(Vec<T>, LoadStats)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = Reader {
        path,
        mode,
        stats: LoadStats::default(),
    };
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<T>(line) {
            Ok(rec) => match validate(&rec) {
                Ok(()) => out.push(rec),
                Err(reason) => reader.reject(i + 1, reason)?,
            },
            Err(e) => reader.reject(i + 1, e.to_string())?,
        }
    }
    reader.stats.records = out.len();
    Ok((out, reader.stats))
}

pub fn load_tweets(path: impl AsRef<Path>, mode: ParseMode) -> Result<(Vec<Tweet>, LoadStats)> {
    let mut seen = HashSet::new();
    read_jsonl(path.as_ref(), mode, |t: &Tweet| {
        if t.id.is_empty() {
            Err("empty tweet id".into())
        } else if t.author.is_empty() {
            Err("empty user".into())
        } else if !seen.insert(t.id.clone()) {
            Err(format!("duplicate tweet id {}", t.id))
        } else {
            Ok(())
        }
    })
}

pub fn load_experts(
    path: impl AsRef<Path>,
    mode: ParseMode,
) -> Result<(Vec<ExpertProfile>, LoadStats)> {
    let path = path.as_ref();
    let loaded = read_jsonl(path, mode, |e: &ExpertProfile| {
        if e.user.is_empty() {
            Err("empty user".into())
        } else {
            Ok(())
        }
    })?;
    if loaded.0.is_empty() {
        log::warn!("{}: no expert profiles", path.display());
    }
    Ok(loaded)
}

// Rows of a two-column CSV with the given header, tagged with line numbers.
fn read_csv_pairs(path: &Path, header: [&str; 2]) -> Result<Vec<(usize, String, String)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let malformed = |line: usize, reason: String| Error::Malformed {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut saw_header = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| malformed(0, e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if !saw_header {
            saw_header = true;
            if rec.len() == 2 && rec[0] == *header[0] && rec[1] == *header[1] {
                continue;
            }
            return Err(malformed(
                line,
                format!("expected header \"{},{}\"", header[0], header[1]),
            ));
        }
        // Wrong arity surfaces as an empty field for the caller to reject.
        if rec.len() == 2 {
            rows.push((line, rec[0].to_string(), rec[1].to_string()));
        } else {
            rows.push((line, String::new(), String::new()));
        }
    }
    Ok(rows)
}

pub fn load_graph(path: impl AsRef<Path>, mode: ParseMode) -> Result<(FollowGraph, LoadStats)> {
    let path = path.as_ref();
    let rows = read_csv_pairs(path, ["follower", "followee"])?;
    let mut reader = Reader {
        path,
        mode,
        stats: LoadStats::default(),
    };
    let mut graph = FollowGraph::new();
    for (line, follower, followee) in rows {
        if follower.is_empty() || followee.is_empty() {
            reader.reject(line, "edge needs two non-empty user ids")?;
            continue;
        }
        if follower == followee {
            log::debug!("{}:{line}: dropping self-loop {follower}", path.display());
            reader.stats.self_loops += 1;
            continue;
        }
        let before = graph.edge_count();
        graph.add_edge(&follower, &followee);
        if graph.edge_count() == before {
            reader.stats.duplicates += 1;
        } else {
            reader.stats.records += 1;
        }
    }
    Ok((graph, reader.stats))
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Corpus {
    pub tweets: Vec<Tweet>,
    pub experts: Vec<ExpertProfile>,
    pub graph: FollowGraph,
    pub tweet_stats: LoadStats,
    pub expert_stats: LoadStats,
    pub graph_stats: LoadStats,
}

/// Loads the three corpus files. The graph path is optional because
/// production-only analyses do not need one.
pub fn load_corpus(
    tweets_path: impl AsRef<Path>,
    experts_path: impl AsRef<Path>,
    graph_path: Option<&Path>,
    mode: ParseMode,
) -> Result<Corpus> {
    let (tweets, tweet_stats) = load_tweets(tweets_path, mode)?;
    let (experts, expert_stats) = load_experts(experts_path, mode)?;
    let (graph, graph_stats) = match graph_path {
        Some(p) => load_graph(p, mode)?,
        None => Default::default(),
    };
    Ok(Corpus {
        tweets,
        experts,
        graph,
        tweet_stats,
        expert_stats,
        graph_stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write;

    fn tmp_file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn extracts_hashtag_and_url() {
        assert_eq!(
            extract_keywords("Go #NBA! see https://nyti.ms/Abc?x=1"),
            vec![Keyword::hashtag("nba"), Keyword::url("nyti.ms/abc")]
        );
    }

    #[test]
    fn no_keywords_in_plain_text() {
        assert!(extract_keywords("just chatting today").is_empty());
        assert!(extract_keywords("").is_empty());
        assert!(extract_keywords("# alone, C#, a#b").is_empty());
    }

    #[test]
    fn duplicates_are_kept() {
        assert_eq!(
            extract_keywords("#Health #health"),
            vec![Keyword::hashtag("health"), Keyword::hashtag("health")]
        );
        assert_eq!(
            extract_keywords("#a#b ##c #d_1-x"),
            vec![
                Keyword::hashtag("a"),
                Keyword::hashtag("b"),
                Keyword::hashtag("c"),
                Keyword::hashtag("d_1")
            ]
        );
    }

    #[test]
    fn url_fragment_is_not_a_hashtag() {
        assert_eq!(
            extract_keywords("(https://example.com/page#section)."),
            vec![Keyword::url("example.com/page")]
        );
    }

    #[test]
    fn canonical_urls() {
        assert_eq!(
            canonicalize_url("https://www.NYTimes.com/politics/").unwrap(),
            Keyword::url("nytimes.com/politics")
        );
        assert_eq!(
            canonicalize_url("http://example.com").unwrap(),
            Keyword::url("example.com")
        );
        assert!(matches!(
            canonicalize_url("https://"),
            Err(Error::MalformedUrl(_))
        ));
        assert!(canonicalize_url("ftp://example.com/x").is_err());
    }

    #[test]
    fn redirects_apply_once() {
        let map =
            RedirectMap::from_pairs([("t.co/x", "nytimes.com/a"), ("nytimes.com/a", "z.com")])
                .unwrap();
        let ex = KeywordExtractor::with_redirects(map);
        assert_eq!(
            ex.canonicalize_url("http://t.co/x").unwrap(),
            Keyword::url("nytimes.com/a")
        );
    }

    #[test]
    fn malformed_urls_are_counted() {
        let ex = KeywordExtractor::new();
        let got = ex.extract("#a https:// #b");
        assert_eq!(
            got.keywords,
            vec![Keyword::hashtag("a"), Keyword::hashtag("b")]
        );
        assert_eq!(got.malformed, 1);
    }

    fn dict(words: &[&str]) -> HashSet<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn english_filter() {
        let d = dict(&["the", "cat", "sat", "on", "mat"]);
        assert!(is_english("the cat sat", &d));
        assert!(!is_english("xyzzy qwerty zzz", &d));
        assert!(is_english("the cat xyzzy qwerty", &d));
        assert!(!is_english("the xyzzy qwerty", &d));
        assert!(!is_english("#nba @bob https://x.com !!", &d));
        assert!(is_english("The, CAT! @someone #tag zzz?", &d));
    }

    #[test]
    fn lenient_and_strict_tweet_loading() {
        let f = tmp_file(
            "{\"id\":\"1\",\"user\":\"a\",\"ts\":1,\"text\":\"hi\",\"retweet_of\":null}\n\
             not json\n\
             {\"id\":\"2\",\"user\":\"b\",\"ts\":2,\"text\":\"#x\"}\n",
        );
        let (tweets, stats) = load_tweets(f.path(), ParseMode::Lenient).unwrap();
        assert_eq!(tweets.len(), 2);
        assert_eq!(stats.skipped, 1);
        assert_eq!(tweets[1].retweet_of, None);

        match load_tweets(f.path(), ParseMode::Strict) {
            Err(Error::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_tweet_ids_rejected() {
        let f = tmp_file(
            "{\"id\":\"1\",\"user\":\"a\",\"ts\":1,\"text\":\"\"}\n\
             {\"id\":\"1\",\"user\":\"b\",\"ts\":2,\"text\":\"\"}\n",
        );
        let (tweets, stats) = load_tweets(f.path(), ParseMode::Lenient).unwrap();
        assert_eq!((tweets.len(), stats.skipped), (1, 1));
    }

    #[test]
    fn empty_expert_file() {
        let f = tmp_file("");
        let (experts, stats) = load_experts(f.path(), ParseMode::Strict).unwrap();
        assert!(experts.is_empty());
        assert_eq!(stats, LoadStats::default());
    }

    #[test]
    fn graph_drops_self_loops_and_duplicates() {
        let f = tmp_file("follower,followee\nu1,u1\nu1,u2\nu1,u2\nu2,u3\n");
        let (g, stats) = load_graph(f.path(), ParseMode::Strict).unwrap();
        assert_eq!(stats.self_loops, 1);
        assert_eq!(stats.duplicates, 1);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.followings("u1").unwrap().contains("u1"));
    }

    #[test]
    fn graph_rejects_bad_rows() {
        let f = tmp_file("follower,followee\nu1\nu1,u2\n");
        assert!(load_graph(f.path(), ParseMode::Strict).is_err());
        let (g, stats) = load_graph(f.path(), ParseMode::Lenient).unwrap();
        assert_eq!((g.edge_count(), stats.skipped), (1, 1));

        let no_header = tmp_file("u1,u2\n");
        assert!(load_graph(no_header.path(), ParseMode::Lenient).is_err());
    }

    #[test]
    fn corpus_unchanged_by_appending_empty_file() {
        let tweets = "{\"id\":\"1\",\"user\":\"a\",\"ts\":1,\"text\":\"#x\"}\n";
        let experts = "{\"user\":\"a\",\"tags\":[\"music\"]}\n";
        let graph = "follower,followee\nb,a\n";
        let t1 = tmp_file(tweets);
        let e1 = tmp_file(experts);
        let g1 = tmp_file(graph);
        let t2 = tmp_file(tweets);
        let e2 = tmp_file(&format!("{experts}\n"));
        let g2 = tmp_file(graph);
        let a = load_corpus(t1.path(), e1.path(), Some(g1.path()), ParseMode::Strict).unwrap();
        let b = load_corpus(t2.path(), e2.path(), Some(g2.path()), ParseMode::Strict).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn redirect_map_file() {
        let f = tmp_file("short,target\nt.co/x,https://www.nytimes.com/a/\n");
        let map = RedirectMap::load(f.path()).unwrap();
        assert_eq!(map.resolve("t.co/x"), "nytimes.com/a");
        assert_eq!(map.resolve("other.com"), "other.com");
    }

    proptest! {
        #[test]
        fn extraction_is_idempotent(text in "(#[A-Za-z0-9_]{1,6}|https?://(www\\.)?[A-Za-z]{1,6}\\.[a-z]{2,3}(/[A-Za-z0-9]{0,5}){0,3}/?(\\?q=1)?|[a-z]{1,5}|[ .,!])( (#[A-Za-z]{1,5}|[a-z]{1,5}|http://[a-z]{1,4}\\.com/[A-Z]{0,3})){0,6}") {
            let first = extract_keywords(&text);
            let rendered: Vec<String> = first
                .iter()
                .map(|k| match k.kind {
                    KeywordKind::Hashtag => format!("#{}", k.canonical),
                    KeywordKind::Url => format!("http://{}", k.canonical),
                })
                .collect();
            let second = extract_keywords(&rendered.join(" "));
            prop_assert_eq!(first, second);
        }

        #[test]
        fn english_ignores_word_order(mut words in proptest::collection::vec("[a-e]{1,2}", 1..10), seed in 0usize..100) {
            let d = dict(&["a", "b", "cc", "dd", "e"]);
            let before = is_english(&words.join(" "), &d);
            let n = words.len();
            words.rotate_left(seed % n);
            words.reverse();
            prop_assert_eq!(before, is_english(&words.join(" "), &d));
        }
    }
}
