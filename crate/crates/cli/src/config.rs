//! Pipeline configuration file.
//!
//! ```text
//! # comment
//! alpha = 0.85
//! persons = persons.tsv
//! output_dir = out
//!
//! [editions]
//! EN = graphs/en.edges
//!
//! [labels]
//! EN = graphs/en.labels
//! ```
//!
//! Relative paths are resolved against the directory holding the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use wikirank::graph::{LabelMode, LoadOptions};
use wikirank::rank::{GoogleParams, RankError, DEFAULT_ALPHA, DEFAULT_MAX_ITER, DEFAULT_TOL};
use wikirank::registry::LangCode;

pub const CACHE_ENV: &str = "WIKIRANK_CACHE_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub top_n: usize,
    pub editions: Vec<(LangCode, PathBuf)>,
    pub labels: BTreeMap<LangCode, PathBuf>,
    pub persons: Option<PathBuf>,
    pub culture_map: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub toplist_dir: Option<PathBuf>,
    pub before_century: Option<i32>,
    pub cache_dir: Option<PathBuf>,
    pub load: LoadOptions,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            alpha: DEFAULT_ALPHA,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            top_n: 100,
            editions: Vec::new(),
            labels: BTreeMap::new(),
            persons: None,
            culture_map: None,
            output_dir: PathBuf::from("out"),
            toplist_dir: None,
            before_century: None,
            cache_dir: None,
            load: LoadOptions::default(),
        }
    }
}

#[derive(PartialEq)]
enum Section {
    Top,
    Editions,
    Labels,
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v)
}

fn parse_bool(v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => bail!("expected true or false, found {v:?}"),
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = PipelineConfig {
            output_dir: base.join("out"),
            ..Default::default()
        };
        let resolve = |v: &str| base.join(v);
        let mut section = Section::Top;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = match name.trim() {
                    "editions" => Section::Editions,
                    "labels" => Section::Labels,
                    other => bail!("line {lineno}: unknown section [{other}]"),
                };
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {lineno}: expected key = value"))?;
            let (key, value) = (key.trim(), unquote(value.trim()));
            let ctx = || format!("line {lineno}: bad value for {key}");
            match section {
                Section::Editions | Section::Labels => {
                    let code = LangCode::parse_edition(key).with_context(ctx)?;
                    if section == Section::Editions {
                        if cfg.editions.iter().any(|(c, _)| *c == code) {
                            bail!("line {lineno}: edition {code} listed twice");
                        }
                        cfg.editions.push((code, resolve(value)));
                    } else if cfg.labels.insert(code, resolve(value)).is_some() {
                        bail!("line {lineno}: labels for {code} listed twice");
                    }
                }
                Section::Top => match key {
                    "alpha" => cfg.alpha = value.parse().with_context(ctx)?,
                    "tol" => cfg.tol = value.parse().with_context(ctx)?,
                    "max_iter" => cfg.max_iter = value.parse().with_context(ctx)?,
                    "top_n" => cfg.top_n = value.parse().with_context(ctx)?,
                    "persons" => cfg.persons = Some(resolve(value)),
                    "culture_map" => cfg.culture_map = Some(resolve(value)),
                    "output_dir" => cfg.output_dir = resolve(value),
                    "toplist_dir" => cfg.toplist_dir = Some(resolve(value)),
                    "cache_dir" => cfg.cache_dir = Some(resolve(value)),
                    "before_century" => cfg.before_century = Some(value.parse().with_context(ctx)?),
                    "drop_self_loops" => cfg.load.drop_self_loops = parse_bool(value).with_context(ctx)?,
                    "label_mode" => {
                        cfg.load.label_mode = match value {
                            "integer" => LabelMode::IntegerIds,
                            "string" => LabelMode::StringLabels,
                            _ => bail!("line {lineno}: label_mode must be integer or string"),
                        }
                    }
                    other => bail!("line {lineno}: unknown key {other:?}"),
                },
            }
        }
        Ok(cfg)
    }

    /// Checks numeric ranges and that every referenced input file exists.
    pub fn validate(&self) -> Result<()> {
        self.params()?;
        if self.top_n == 0 || self.top_n > wikirank::aggregate::MAX_LIST_LEN {
            bail!("top_n must be in 1..={}, found {}", wikirank::aggregate::MAX_LIST_LEN, self.top_n);
        }
        if self.before_century == Some(0) {
            bail!("before_century 0 does not exist");
        }
        let mut files: Vec<(&str, &Path)> = self.editions.iter().map(|(_, p)| ("edge list", p.as_path())).collect();
        files.extend(self.labels.values().map(|p| ("labels", p.as_path())));
        files.extend(self.persons.as_deref().map(|p| ("persons", p)));
        files.extend(self.culture_map.as_deref().map(|p| ("culture map", p)));
        for (what, p) in files {
            if !p.is_file() {
                bail!("{what} file {} does not exist", p.display());
            }
        }
        for code in self.labels.keys() {
            if self.edition_path(*code).is_none() {
                bail!("labels given for {code}, which has no edge list");
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Result<GoogleParams, RankError> {
        GoogleParams::new(self.alpha, self.tol, self.max_iter)
    }

    pub fn edition_path(&self, code: LangCode) -> Option<&Path> {
        self.editions.iter().find(|(c, _)| *c == code).map(|(_, p)| p.as_path())
    }

    pub fn toplist_dir(&self) -> PathBuf {
        self.toplist_dir.clone().unwrap_or_else(|| self.output_dir.join("toplists"))
    }

    pub fn edition_codes(&self) -> Vec<LangCode> {
        self.editions.iter().map(|(c, _)| *c).collect()
    }
}
