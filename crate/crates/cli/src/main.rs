mod commands;
mod config;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wikirank::cache::RankCache;
use wikirank::graph::{LabelMode, LoadOptions};
use wikirank::rank::{Algorithm, GoogleParams, DEFAULT_ALPHA, DEFAULT_MAX_ITER, DEFAULT_TOL};
use wikirank::registry::LangCode;

use crate::commands::{GlobalArgs, RankArgs};
use crate::config::{PipelineConfig, CACHE_ENV};
use crate::failure::{Failure, InputResult};

/// PageRank, CheiRank and 2DRank of hyperlink networks, and the
/// cross-edition analysis of their top historical figures.
#[derive(Parser)]
#[command(name = "wikirank", version)]
struct Cli {
    /// Log more (repeat for debug output).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the nodes of one edge list.
    Rank(RankCmd),
    /// Extract the top persons of one or all configured editions.
    TopPeople(TopPeopleCmd),
    /// Global ranking, distributions and overlaps from stored top lists.
    Global(GlobalCmd),
    /// Build and rank the network of cultures.
    Culture(CultureCmd),
    /// Run the built-in oracle checks.
    Selfcheck(SelfcheckCmd),
}

#[derive(Args)]
struct RankCmd {
    /// Edge list, one "source target" pair per line.
    graph: PathBuf,
    #[arg(long, default_value = "pagerank")]
    algorithm: Algorithm,
    /// Tab-separated "id<TAB>label" file for integer edge lists.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Node tokens are article titles rather than integer ids.
    #[arg(long)]
    string_labels: bool,
    #[arg(long)]
    keep_self_loops: bool,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Output CSV; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
}

/// Settings that override the configuration file.
#[derive(Args)]
struct ConfigArgs {
    #[arg(short, long)]
    config: PathBuf,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    top_n: Option<usize>,
    #[arg(long)]
    persons: Option<PathBuf>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    toplist_dir: Option<PathBuf>,
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
}

impl ConfigArgs {
    fn load(&self) -> Result<PipelineConfig, Failure> {
        let mut cfg = PipelineConfig::load(&self.config).input()?;
        cfg.alpha = self.alpha.unwrap_or(cfg.alpha);
        cfg.tol = self.tol.unwrap_or(cfg.tol);
        cfg.max_iter = self.max_iter.unwrap_or(cfg.max_iter);
        cfg.top_n = self.top_n.unwrap_or(cfg.top_n);
        if let Some(p) = &self.persons {
            cfg.persons = Some(p.clone());
        }
        if let Some(p) = &self.output_dir {
            cfg.output_dir = p.clone();
        }
        if let Some(p) = &self.toplist_dir {
            cfg.toplist_dir = Some(p.clone());
        }
        if let Some(p) = &self.cache_dir {
            cfg.cache_dir = Some(p.clone());
        }
        cfg.validate().input()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct TopPeopleCmd {
    #[command(flatten)]
    config: ConfigArgs,
    /// Only this edition; all configured editions when omitted.
    #[arg(long)]
    edition: Option<LangCode>,
    #[arg(long, default_value = "pagerank")]
    algorithm: Algorithm,
}

#[derive(Args)]
struct GlobalCmd {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, default_value = "pagerank")]
    algorithm: Algorithm,
    /// Reference name list (one English title per line) to overlap with.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Also write the ranking restricted to women.
    #[arg(long)]
    women: bool,
}

#[derive(Args)]
struct CultureCmd {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, default_value = "pagerank")]
    algorithm: Algorithm,
    /// Count only figures born before this century.
    #[arg(long, allow_hyphen_values = true)]
    before_century: Option<i32>,
}

#[derive(Args)]
struct SelfcheckCmd {
    /// Also validate this configuration file.
    #[arg(short, long)]
    config: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Rank(a) => {
            let params = GoogleParams::new(a.alpha, a.tol, a.max_iter)?;
            let options = LoadOptions {
                drop_self_loops: !a.keep_self_loops,
                label_mode: if a.string_labels {
                    LabelMode::StringLabels
                } else {
                    LabelMode::IntegerIds
                },
            };
            commands::cmd_rank(RankArgs {
                graph: &a.graph,
                labels: a.labels.as_deref(),
                options,
                params,
                algorithm: a.algorithm,
                output: a.output.as_deref(),
                cache: a.cache_dir.map(RankCache::new),
            })
        }
        Command::TopPeople(a) => {
            let cfg = a.config.load()?;
            for path in commands::cmd_top_people(&cfg, a.edition, a.algorithm)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Global(a) => {
            let cfg = a.config.load()?;
            let dir = commands::cmd_global(
                &cfg,
                GlobalArgs {
                    algorithm: a.algorithm,
                    reference: a.reference.as_deref(),
                    women: a.women,
                },
            )?;
            println!("{}", dir.display());
            Ok(())
        }
        Command::Culture(a) => {
            let cfg = a.config.load()?;
            let filter = a.before_century.or(cfg.before_century);
            let dir = commands::cmd_culture(&cfg, a.algorithm, filter)?;
            println!("{}", dir.display());
            Ok(())
        }
        Command::Selfcheck(a) => {
            if let Some(path) = a.config {
                let cfg = PipelineConfig::load(&path).input()?;
                cfg.validate().input()?;
            }
            commands::cmd_selfcheck()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, Failure::SelfCheck(_)) {
                eprintln!("error: {e}");
            } else {
                eprintln!("{e}");
            }
            e.exit_code()
        }
    }
}
