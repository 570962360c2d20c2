//! Command-line front end: `infodiet <subcommand>`.
//!
//! Exit codes: 0 on success, 1 for usage and validation errors, 2 for data
//! errors. Reports are written atomically into `--out`, or the primary report
//! goes to stdout when no output directory is given.

use std::collections::{BTreeMap, HashSet};
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use infodiet_core::{
    compute_diet_with, group_top_topic_means, infer_all, is_english, load_baseline,
    load_baseline_from, load_dictionary, load_experts, load_graph, load_taxonomy, load_tweets,
    mitigation_report, normalize, parse_baseline_csv, tail_contribution, top_topic,
    top_topic_distribution, Baseline, DietDistribution, DietReport, DietRole, DietVector, Error,
    ExpertIndex, InferenceSet, Keyword, KeywordExtractor, MitigationReport, ParseMode, RedirectMap,
    SimResult, Simulator, Taxonomy, TopicId, TopicInference, Tweet, UserDiet, TAIL_SIZE,
};
use serde::Serialize;

pub mod config;
pub mod output;

pub use config::RunConfig;
use output::{csv_bytes, Format, Outputs};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid configuration: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "infodiet",
    version,
    about = "Topical information diets of social media users"
)]
pub struct Cli {
    /// Log more (repeat for debug output).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Infer a topic for every keyword from expert postings.
    InferTopics(InferArgs),
    /// Topical diet of a set of tweets.
    Diet(DietArgs),
    /// Population statistics over per-user diets.
    Analyze(AnalyzeArgs),
    /// Replay a stream and measure recommendation mitigation.
    Simulate(SimulateArgs),
    /// Print the bundled mass-media baselines.
    Baselines(BaselinesArgs),
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// TOML run config; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, visible_alias = "stream")]
    pub tweets: Option<PathBuf>,
    #[arg(long)]
    pub experts: Option<PathBuf>,
    #[arg(long)]
    pub expert_tweets: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Topic term list (JSON); the bundled taxonomy otherwise.
    #[arg(long)]
    pub taxonomy: Option<PathBuf>,
    /// Word list for the English filter.
    #[arg(long)]
    pub dictionary: Option<PathBuf>,
    /// `short,target` CSV of resolved short links.
    #[arg(long)]
    pub redirects: Option<PathBuf>,
    /// Directory holding `<name>.csv` baselines.
    #[arg(long)]
    pub baselines_dir: Option<PathBuf>,
    #[arg(long)]
    pub min_support: Option<usize>,
    /// KL smoothing constant.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Drop tweets that do not look English.
    #[arg(long)]
    pub english_filter: bool,
    /// Fail on the first malformed record instead of skipping it.
    #[arg(long)]
    pub strict: bool,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct DietArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Only tweets by these authors.
    #[arg(long = "author")]
    pub authors: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RoleArg {
    Consumed,
    Recommended,
    Combined,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Analyze a `simulate` result instead of produced diets from `--tweets`.
    #[arg(long)]
    pub sim_result: Option<PathBuf>,
    /// Which simulated diet to group users by.
    #[arg(long, value_enum, default_value = "consumed")]
    pub role: RoleArg,
    #[arg(long)]
    pub baseline: Option<String>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Users to simulate; everyone with a following otherwise.
    #[arg(long = "user")]
    pub users: Vec<String>,
    #[arg(long)]
    pub baseline: Option<String>,
    #[arg(long)]
    pub top_k: Option<usize>,
    #[arg(long)]
    pub snapshot_interval: Option<i64>,
    #[arg(long)]
    pub window: Option<i64>,
}

#[derive(Debug, Args)]
pub struct BaselinesArgs {
    /// One baseline; all of them otherwise.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub baselines_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_env("INFODIET_LOG")
        .format_timestamp(None)
        .try_init();
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("infodiet: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::InferTopics(a) => infer_topics(a),
        Command::Diet(a) => diet(a),
        Command::Analyze(a) => analyze(a),
        Command::Simulate(a) => simulate(a),
        Command::Baselines(a) => baselines(a),
    }
}

/// Merges the config file and flag overrides.
pub fn resolve_config(c: &CommonArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let paths = [
        (&c.tweets, &mut cfg.tweets),
        (&c.experts, &mut cfg.experts),
        (&c.expert_tweets, &mut cfg.expert_tweets),
        (&c.graph, &mut cfg.graph),
        (&c.taxonomy, &mut cfg.taxonomy),
        (&c.dictionary, &mut cfg.dictionary),
        (&c.redirects, &mut cfg.redirects),
        (&c.baselines_dir, &mut cfg.baselines_dir),
        (&c.out, &mut cfg.out),
    ];
    for (flag, slot) in paths {
        if flag.is_some() {
            slot.clone_from(flag);
        }
    }
    if let Some(m) = c.min_support {
        cfg.min_support = m;
    }
    if c.alpha.is_some() {
        cfg.alpha = c.alpha;
    }
    cfg.english_filter |= c.english_filter;
    cfg.strict |= c.strict;
    Ok(cfg)
}

/// Inputs shared by the pipeline stages.
struct Pipeline {
    taxonomy: Taxonomy,
    extractor: KeywordExtractor,
    dictionary: Option<HashSet<String>>,
    mode: ParseMode,
}

impl Pipeline {
    fn new(cfg: &RunConfig) -> Result<Pipeline, CliError> {
        let taxonomy = match &cfg.taxonomy {
            Some(p) => load_taxonomy(p)?,
            None => Taxonomy::bundled(),
        };
        let extractor = match &cfg.redirects {
            Some(p) => KeywordExtractor::with_redirects(RedirectMap::load(p)?),
            None => KeywordExtractor::new(),
        };
        let dictionary = match (&cfg.dictionary, cfg.english_filter) {
            (Some(p), true) => Some(load_dictionary(p)?),
            _ => None,
        };
        let mode = if cfg.strict {
            ParseMode::Strict
        } else {
            ParseMode::Lenient
        };
        Ok(Pipeline {
            taxonomy,
            extractor,
            dictionary,
            mode,
        })
    }

    fn tweets(&self, path: &Path) -> Result<Vec<Tweet>, CliError> {
        let (mut tweets, stats) = load_tweets(path, self.mode)?;
        if stats.skipped > 0 {
            log::warn!(
                "{}: skipped {} malformed records",
                path.display(),
                stats.skipped
            );
        }
        if let Some(dict) = &self.dictionary {
            let before = tweets.len();
            tweets.retain(|t| is_english(&t.text, dict));
            log::info!(
                "{}: kept {} of {before} English tweets",
                path.display(),
                tweets.len()
            );
        }
        Ok(tweets)
    }

    fn index(&self, cfg: &RunConfig) -> Result<ExpertIndex, CliError> {
        let experts_path = cfg.require("experts", &cfg.experts)?;
        let (experts, stats) = load_experts(experts_path, self.mode)?;
        if stats.skipped > 0 {
            log::warn!(
                "{}: skipped {} malformed records",
                experts_path.display(),
                stats.skipped
            );
        }
        let expert_tweets = self.tweets(cfg.require("expert_tweets", &cfg.expert_tweets)?)?;
        let index = ExpertIndex::build(&experts, &expert_tweets, &self.taxonomy, &self.extractor)?;
        log::info!("expert index: {:?}", index.stats());
        Ok(index)
    }

    fn infer(&self, index: &ExpertIndex, tweets: &[Tweet], min_support: usize) -> InferenceSet {
        let keywords: Vec<Keyword> = tweets
            .iter()
            .flat_map(|t| self.extractor.keywords(&t.text))
            .collect();
        let set = infer_all(&keywords, index, min_support);
        log::info!(
            "inferred {} of {} keywords",
            set.inferred.len(),
            set.inferred.len() + set.uninferred.len()
        );
        set
    }
}

fn load_named_baseline(cfg: &RunConfig) -> Result<DietDistribution, CliError> {
    Ok(match &cfg.baselines_dir {
        Some(dir) => load_baseline_from(dir, &cfg.baseline)?,
        None => load_baseline(&cfg.baseline)?,
    })
}

fn num(x: f64) -> String {
    x.to_string()
}

fn infer_topics(args: InferArgs) -> Result<(), CliError> {
    let cfg = resolve_config(&args.common)?;
    cfg.validate()?;
    cfg.require("experts", &cfg.experts)?;
    cfg.require("expert_tweets", &cfg.expert_tweets)?;
    let format = args.common.format.unwrap_or(Format::Csv);

    let p = Pipeline::new(&cfg)?;
    let index = p.index(&cfg)?;
    let set = match &cfg.tweets {
        Some(path) => p.infer(&index, &p.tweets(path)?, cfg.min_support),
        None => {
            let keywords: Vec<Keyword> = index.keywords().cloned().collect();
            infer_all(&keywords, &index, cfg.min_support)
        }
    };

    let mut out = Outputs::default();
    match format {
        Format::Csv => {
            out.add(
                "topics.csv",
                csv_bytes(
                    &[
                        "keyword_kind",
                        "keyword",
                        "topic",
                        "raw_fraction",
                        "normalized_score",
                        "support",
                    ],
                    set.inferred.values().map(|i| {
                        [
                            i.keyword.kind.as_str().to_string(),
                            i.keyword.canonical.clone(),
                            i.topic.name().to_string(),
                            num(i.raw_fraction),
                            num(i.normalized_score),
                            i.support.to_string(),
                        ]
                    }),
                ),
            );
            out.add(
                "uninferred.csv",
                csv_bytes(
                    &["keyword_kind", "keyword", "reason", "support"],
                    set.uninferred.iter().map(|(k, why)| {
                        [
                            k.kind.as_str().to_string(),
                            k.canonical.clone(),
                            why.reason_code().to_string(),
                            why.support().to_string(),
                        ]
                    }),
                ),
            );
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Miss<'a> {
                keyword: &'a Keyword,
                reason: &'static str,
                support: usize,
            }
            #[derive(Serialize)]
            struct Report<'a> {
                coverage: f64,
                inferred: Vec<&'a TopicInference>,
                uninferred: Vec<Miss<'a>>,
            }
            out.add_json(
                "topics.json",
                &Report {
                    coverage: set.coverage,
                    inferred: set.inferred.values().collect(),
                    uninferred: set
                        .uninferred
                        .iter()
                        .map(|(k, why)| Miss {
                            keyword: k,
                            reason: why.reason_code(),
                            support: why.support(),
                        })
                        .collect(),
                },
            );
        }
    }
    out.write(cfg.out.as_deref())?;
    eprintln!("coverage: {}", set.coverage);
    Ok(())
}

fn diet(args: DietArgs) -> Result<(), CliError> {
    let cfg = resolve_config(&args.common)?;
    cfg.validate()?;
    let tweets_path = cfg.require("tweets", &cfg.tweets)?;
    cfg.require("experts", &cfg.experts)?;
    cfg.require("expert_tweets", &cfg.expert_tweets)?;
    let format = args.common.format.unwrap_or(Format::Json);

    let p = Pipeline::new(&cfg)?;
    let mut tweets = p.tweets(tweets_path)?;
    if !args.authors.is_empty() {
        let keep: HashSet<&str> = args.authors.iter().map(String::as_str).collect();
        tweets.retain(|t| keep.contains(t.author.as_str()));
    }
    let index = p.index(&cfg)?;
    let set = p.infer(&index, &tweets, cfg.min_support);
    let vector = compute_diet_with(&tweets, &set.inferred, &p.extractor);
    let report = DietReport::new(&vector);

    let mut out = Outputs::default();
    match format {
        Format::Json => out.add_json("diet.json", &report),
        Format::Csv => out.add(
            "diet.csv",
            csv_bytes(
                &["topic", "weight", "share"],
                TopicId::all().map(|t| {
                    [
                        t.name().to_string(),
                        num(vector.weight(t)),
                        report.distribution.map_or(String::new(), |d| num(d.get(t))),
                    ]
                }),
            ),
        ),
    }
    out.write(cfg.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct GroupRow {
    topic: TopicId,
    count: usize,
    mean_top_share: f64,
    mean_tail_share: f64,
}

#[derive(Serialize)]
struct UserRow {
    user: String,
    top_topic: TopicId,
    top_share: f64,
    tail_share: f64,
}

fn analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let mut cfg = resolve_config(&args.common)?;
    if let Some(b) = &args.baseline {
        cfg.baseline.clone_from(b);
    }
    cfg.validate()?;
    if let Some(p) = &args.sim_result {
        if !p.is_file() {
            return Err(CliError::Validation(format!(
                "sim_result: no such file: {}",
                p.display()
            )));
        }
    } else {
        cfg.require("tweets", &cfg.tweets)?;
        cfg.require("experts", &cfg.experts)?;
        cfg.require("expert_tweets", &cfg.expert_tweets)?;
    }
    let format = args.common.format.unwrap_or(Format::Csv);

    let (diets, mitigation) = match &args.sim_result {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let sim: SimResult = serde_json::from_str(&text)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let baseline = load_named_baseline(&cfg)?;
            let alpha = cfg.alpha.unwrap_or(sim.config.kl_alpha);
            let pairs: Vec<_> = sim.users.iter().map(|u| u.pair()).collect();
            let report = mitigation_report(&pairs, &cfg.baseline, &baseline, alpha)?;
            let diets = sim
                .users
                .iter()
                .map(|u| {
                    let (dist, role) = match args.role {
                        RoleArg::Consumed => (u.consumed_diet, DietRole::Consumed),
                        RoleArg::Recommended => (u.recommended_diet, DietRole::Recommended),
                        RoleArg::Combined => (u.combined_diet, DietRole::Combined),
                    };
                    UserDiet {
                        user: u.user.clone(),
                        dist,
                        role,
                    }
                })
                .collect();
            (diets, Some(report))
        }
        None => (produced_diets(&cfg)?, None),
    };

    let groups: Vec<GroupRow> = group_top_topic_means(&diets)
        .into_iter()
        .map(|(topic, g)| GroupRow {
            topic,
            count: g.count,
            mean_top_share: g.mean_top_share,
            mean_tail_share: g.mean_tail_share,
        })
        .collect();
    let shares = top_topic_distribution(&diets);
    let users: Vec<UserRow> = diets
        .iter()
        .map(|d| {
            let (top, share) = top_topic(&d.dist);
            UserRow {
                user: d.user.clone(),
                top_topic: top,
                top_share: share,
                tail_share: tail_contribution(&d.dist, TAIL_SIZE).expect("valid tail size"),
            }
        })
        .collect();

    let mut out = Outputs::default();
    match format {
        Format::Csv => {
            out.add(
                "groups.csv",
                csv_bytes(
                    &["topic", "count", "mean_top_share", "mean_tail_share"],
                    groups.iter().map(|g| {
                        [
                            g.topic.name().to_string(),
                            g.count.to_string(),
                            num(g.mean_top_share),
                            num(g.mean_tail_share),
                        ]
                    }),
                ),
            );
            out.add(
                "top_topics.csv",
                csv_bytes(
                    &["topic", "share_of_users"],
                    shares.iter().map(|(t, x)| [t.name().to_string(), num(*x)]),
                ),
            );
            out.add(
                "users.csv",
                csv_bytes(
                    &["user", "top_topic", "top_share", "tail_share"],
                    users.iter().map(|u| {
                        [
                            u.user.clone(),
                            u.top_topic.name().to_string(),
                            num(u.top_share),
                            num(u.tail_share),
                        ]
                    }),
                ),
            );
            if let Some(m) = &mitigation {
                out.add("mitigation.csv", mitigation_csv(m));
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                groups: &'a [GroupRow],
                top_topics: &'a BTreeMap<TopicId, f64>,
                users: &'a [UserRow],
                mitigation: Option<&'a MitigationReport>,
            }
            out.add_json(
                "analysis.json",
                &Report {
                    groups: &groups,
                    top_topics: &shares,
                    users: &users,
                    mitigation: mitigation.as_ref(),
                },
            );
        }
    }
    out.write(cfg.out.as_deref())?;
    Ok(())
}

/// Per-author diets of the tweets each user wrote. Authors without topical
/// mass are left out.
fn produced_diets(cfg: &RunConfig) -> Result<Vec<UserDiet>, CliError> {
    let p = Pipeline::new(cfg)?;
    let tweets = p.tweets(cfg.require("tweets", &cfg.tweets)?)?;
    let index = p.index(cfg)?;
    let set = p.infer(&index, &tweets, cfg.min_support);
    let mut by_author: BTreeMap<&str, Vec<&Tweet>> = BTreeMap::new();
    for t in &tweets {
        by_author.entry(t.author.as_str()).or_default().push(t);
    }
    let mut diets = Vec::new();
    for (user, ts) in by_author {
        let v: DietVector = compute_diet_with(ts, &set.inferred, &p.extractor);
        match normalize(&v) {
            Ok(dist) => diets.push(UserDiet {
                user: user.to_string(),
                dist,
                role: DietRole::Produced,
            }),
            Err(_) => log::debug!("{user}: no topical tweets"),
        }
    }
    Ok(diets)
}

fn mitigation_csv(m: &MitigationReport) -> Vec<u8> {
    csv_bytes(
        &[
            "user",
            "kl_consumed_baseline",
            "kl_combined_baseline",
            "kl_reco_consumed",
            "mitigated",
        ],
        m.records.iter().map(|r| {
            [
                r.user.clone(),
                num(r.kl_consumed_baseline),
                num(r.kl_combined_baseline),
                num(r.kl_reco_consumed),
                r.mitigated.to_string(),
            ]
        }),
    )
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let mut cfg = resolve_config(&args.common)?;
    if let Some(b) = &args.baseline {
        cfg.baseline.clone_from(b);
    }
    if !args.users.is_empty() {
        cfg.users.clone_from(&args.users);
    }
    if let Some(k) = args.top_k {
        cfg.sim.top_k = k;
    }
    if let Some(i) = args.snapshot_interval {
        cfg.sim.snapshot_interval = i;
    }
    if args.window.is_some() {
        cfg.sim.window = args.window;
    }
    if let Some(a) = cfg.alpha {
        cfg.sim.kl_alpha = a;
    }
    cfg.validate()?;
    let stream_path = cfg.require("tweets", &cfg.tweets)?;
    let graph_path = cfg.require("graph", &cfg.graph)?;
    cfg.require("experts", &cfg.experts)?;
    cfg.require("expert_tweets", &cfg.expert_tweets)?;
    let format = args.common.format.unwrap_or(Format::Csv);

    let p = Pipeline::new(&cfg)?;
    let baseline = load_named_baseline(&cfg)?;
    let stream = p.tweets(stream_path)?;
    let (graph, gstats) = load_graph(graph_path, p.mode)?;
    if gstats.skipped + gstats.self_loops > 0 {
        log::warn!(
            "{}: skipped {} malformed edges and {} self-loops",
            graph_path.display(),
            gstats.skipped,
            gstats.self_loops
        );
    }
    let index = p.index(&cfg)?;
    let set = p.infer(&index, &stream, cfg.min_support);
    let users: Vec<String> = if cfg.users.is_empty() {
        graph.users().map(str::to_string).collect()
    } else {
        cfg.users.clone()
    };

    let sim = Simulator::new(&graph, &stream, cfg.sim.clone())?.with_extractor(p.extractor.clone());
    let (result, report) = sim.run(&users, &set.inferred, &cfg.baseline, &baseline)?;

    let mut out = Outputs::default();
    out.add_json("sim_result.json", &result);
    match format {
        Format::Csv => out.add("mitigation.csv", mitigation_csv(&report)),
        Format::Json => out.add_json("mitigation.json", &report),
    }
    out.write(cfg.out.as_deref())?;
    eprintln!(
        "mitigated {} of {} users ({} skipped)",
        report.records.iter().filter(|r| r.mitigated).count(),
        report.records.len(),
        result.skipped.len()
    );
    Ok(())
}

#[derive(Serialize)]
struct BaselineView {
    name: String,
    percent: BTreeMap<TopicId, f64>,
    distribution: DietDistribution,
}

fn baselines(args: BaselinesArgs) -> Result<(), CliError> {
    let names: Vec<String> = match &args.name {
        Some(n) => vec![n.trim().to_ascii_lowercase()],
        None => Baseline::ALL.iter().map(|b| b.name().to_string()).collect(),
    };
    for n in &names {
        match &args.baselines_dir {
            Some(dir) => {
                let p = dir.join(format!("{n}.csv"));
                if !p.is_file() {
                    return Err(CliError::Validation(format!(
                        "no such baseline file: {}",
                        p.display()
                    )));
                }
            }
            None => {
                n.parse::<Baseline>()?;
            }
        }
    }

    let mut views = Vec::new();
    for n in names {
        let (percent, distribution) = match &args.baselines_dir {
            Some(dir) => {
                let p = dir.join(format!("{n}.csv"));
                let text = std::fs::read_to_string(&p)
                    .map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
                (parse_baseline_csv(&text)?, load_baseline_from(dir, &n)?)
            }
            None => {
                let b: Baseline = n.parse()?;
                (b.percentages(), b.distribution())
            }
        };
        views.push(BaselineView {
            name: n,
            percent: TopicId::all().map(|t| (t, percent[t.index()])).collect(),
            distribution,
        });
    }

    let mut out = Outputs::default();
    match args.format.unwrap_or(Format::Json) {
        Format::Json if views.len() == 1 => out.add_json("baseline.json", &views[0]),
        Format::Json => out.add_json("baselines.json", &views),
        Format::Csv => out.add(
            "baselines.csv",
            csv_bytes(
                &["name", "topic", "percent", "share"],
                views.iter().flat_map(|v| {
                    TopicId::all().map(move |t| {
                        [
                            v.name.clone(),
                            t.name().to_string(),
                            num(v.percent[&t]),
                            num(v.distribution.get(t)),
                        ]
                    })
                }),
            ),
        ),
    }
    out.write(None)?;
    Ok(())
}
