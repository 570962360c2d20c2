use std::fs;
use std::path::{Path, PathBuf};

use infodiet_core::{Baseline, SimConfig, DEFAULT_MIN_SUPPORT};
use serde::Deserialize;

use crate::CliError;

/// Settings shared by every subcommand. Loaded from a TOML file, then
/// overridden by flags.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(alias = "stream")]
    pub tweets: Option<PathBuf>,
    pub experts: Option<PathBuf>,
    pub expert_tweets: Option<PathBuf>,
    pub graph: Option<PathBuf>,
    pub taxonomy: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub redirects: Option<PathBuf>,
    pub baselines_dir: Option<PathBuf>,
    pub min_support: usize,
    /// KL smoothing; falls back to `sim.kl_alpha`.
    pub alpha: Option<f64>,
    pub english_filter: bool,
    pub strict: bool,
    pub out: Option<PathBuf>,
    pub baseline: String,
    pub users: Vec<String>,
    pub sim: SimConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tweets: None,
            experts: None,
            expert_tweets: None,
            graph: None,
            taxonomy: None,
            dictionary: None,
            redirects: None,
            baselines_dir: None,
            min_support: DEFAULT_MIN_SUPPORT,
            alpha: None,
            english_filter: false,
            strict: false,
            out: None,
            baseline: Baseline::NyTimes.name().to_string(),
            users: Vec::new(),
            sim: SimConfig::default(),
        }
    }
}

impl RunConfig {
    /// Reads a TOML config. Relative paths resolve against the file's directory.
    pub fn from_file(path: &Path) -> Result<RunConfig, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in cfg.paths_mut().into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    fn paths_mut(&mut self) -> [&mut Option<PathBuf>; 9] {
        [
            &mut self.tweets,
            &mut self.experts,
            &mut self.expert_tweets,
            &mut self.graph,
            &mut self.taxonomy,
            &mut self.dictionary,
            &mut self.redirects,
            &mut self.baselines_dir,
            &mut self.out,
        ]
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(self.sim.kl_alpha)
    }

    /// Checks ranges and that every referenced input exists.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Validation(m));
        if self.min_support < 1 {
            return bad(format!(
                "min_support must be >= 1, got {}",
                self.min_support
            ));
        }
        let alpha = self.alpha();
        if !(alpha.is_finite() && alpha >= 0.0) {
            return bad(format!("alpha must be a finite value >= 0, got {alpha}"));
        }
        self.sim.validate()?;
        if self.english_filter && self.dictionary.is_none() {
            return bad("english_filter needs a dictionary".into());
        }
        let files = [
            ("tweets", &self.tweets),
            ("experts", &self.experts),
            ("expert_tweets", &self.expert_tweets),
            ("graph", &self.graph),
            ("taxonomy", &self.taxonomy),
            ("dictionary", &self.dictionary),
            ("redirects", &self.redirects),
        ];
        for (name, p) in files {
            match p {
                Some(p) if !p.is_file() => {
                    return bad(format!("{name}: no such file: {}", p.display()));
                }
                _ => {}
            }
        }
        match &self.baselines_dir {
            Some(dir) => {
                let p = dir.join(format!("{}.csv", self.baseline));
                if !p.is_file() {
                    return bad(format!("baseline: no such file: {}", p.display()));
                }
            }
            None => {
                self.baseline.parse::<Baseline>()?;
            }
        }
        if let Some(out) = &self.out {
            if out.exists() && !out.is_dir() {
                return bad(format!("out: not a directory: {}", out.display()));
            }
        }
        Ok(())
    }

    pub fn require<'a>(&self, name: &str, p: &'a Option<PathBuf>) -> Result<&'a Path, CliError> {
        p.as_deref()
            .ok_or_else(|| CliError::Validation(format!("missing required input: {name}")))
    }
}
