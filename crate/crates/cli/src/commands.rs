use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use log::{info, warn};
use rayon::prelude::*;

use wikirank::aggregate::{
    culture_slices, female_ranking, gender_distribution, global_ranking, language_representation,
    locality_ratio, overlap_report, spatial_distribution, temporal_distribution, Thresholds, TopList,
};
use wikirank::cache::{cache_key, RankCache};
use wikirank::culture::{build_culture_network, culture_google_matrix, culture_ranks};
use wikirank::graph::{load_edge_list, load_labels, DirectedGraph, LoadOptions, NodeId};
use wikirank::output::{self, write_csv_file};
use wikirank::rank::{
    cheirank_parallel, pagerank_parallel, rank_indices, two_d_rank, Algorithm, GoogleParams,
    RankVector, VectorKind,
};
use wikirank::registry::{select_top_people, CountryCultureMap, LangCode, PersonRegistry};
use wikirank::selfcheck;

use crate::config::PipelineConfig;
use crate::failure::{Failure, InputResult};

/// An edge list loaded together with its raw bytes, which key the cache.
pub struct LoadedGraph {
    pub bytes: Vec<u8>,
    pub graph: DirectedGraph,
    pub options: LoadOptions,
}

pub fn load_graph(path: &Path, labels: Option<&Path>, options: LoadOptions) -> Result<LoadedGraph, Failure> {
    let bytes = fs::read(path)
        .with_context(|| format!("cannot read edge list {}", path.display()))
        .input()?;
    let mut graph = load_edge_list(bytes.as_slice(), options)
        .with_context(|| format!("in edge list {}", path.display()))
        .input()?;
    if let Some(lp) = labels {
        let file = File::open(lp)
            .with_context(|| format!("cannot open labels {}", lp.display()))
            .input()?;
        let names = load_labels(BufReader::new(file), graph.node_count())
            .with_context(|| format!("in labels {}", lp.display()))
            .input()?;
        graph = graph.with_labels(names).input()?;
    }
    let stats = graph.stats();
    info!(
        "{}: {} nodes, {} edges, {} dangling, {} self-loops dropped",
        path.display(),
        stats.node_count,
        stats.edge_count,
        stats.dangling_count,
        stats.self_loop_count
    );
    Ok(LoadedGraph { bytes, graph, options })
}

/// Returns a cached vector when a valid entry exists; otherwise computes
/// and stores it. Unreadable entries are reported and recomputed.
pub fn rank_vector(
    loaded: &LoadedGraph,
    params: &GoogleParams,
    kind: VectorKind,
    cache: Option<&RankCache>,
) -> Result<RankVector, Failure> {
    let n = loaded.graph.node_count();
    let key = cache.map(|_| cache_key(&loaded.bytes, &loaded.options, params, kind));
    if let (Some(c), Some(k)) = (cache, &key) {
        match c.load(k, kind, params.alpha(), n) {
            Ok(Some(v)) => {
                info!("cache hit {}", c.path_for(k).display());
                return Ok(v);
            }
            Ok(None) => {}
            Err(e) => warn!("ignoring cache entry {}: {e}; recomputing", c.path_for(k).display()),
        }
    }
    let v = match kind {
        VectorKind::PageRank => pagerank_parallel(&loaded.graph, params)?,
        VectorKind::CheiRank => cheirank_parallel(&loaded.graph, params)?,
    };
    info!("{kind:?} converged in {} iterations (residual {:e})", v.iterations, v.residual);
    if let (Some(c), Some(k)) = (cache, &key) {
        if let Err(e) = c.store(k, &v, params.alpha()) {
            warn!("cannot write cache entry {}: {e}", c.path_for(k).display());
        }
    }
    Ok(v)
}

/// Node ordering of a graph under `algorithm`.
pub fn node_ordering(
    loaded: &LoadedGraph,
    algorithm: Algorithm,
    params: &GoogleParams,
    cache: Option<&RankCache>,
) -> Result<Vec<NodeId>, Failure> {
    Ok(match algorithm {
        Algorithm::PageRank => rank_indices(&rank_vector(loaded, params, VectorKind::PageRank, cache)?).ordering,
        Algorithm::CheiRank => rank_indices(&rank_vector(loaded, params, VectorKind::CheiRank, cache)?).ordering,
        Algorithm::TwoDRank => {
            let k = rank_indices(&rank_vector(loaded, params, VectorKind::PageRank, cache)?);
            let ks = rank_indices(&rank_vector(loaded, params, VectorKind::CheiRank, cache)?);
            two_d_rank(&k, &ks)?.ordering
        }
    })
}

pub struct RankArgs<'a> {
    pub graph: &'a Path,
    pub labels: Option<&'a Path>,
    pub options: LoadOptions,
    pub params: GoogleParams,
    pub algorithm: Algorithm,
    pub output: Option<&'a Path>,
    pub cache: Option<RankCache>,
}

pub fn cmd_rank(args: RankArgs<'_>) -> Result<(), Failure> {
    let loaded = load_graph(args.graph, args.labels, args.options)?;
    let cache = args.cache.as_ref();
    let labels = loaded.graph.labels();
    let mut w = csv::Writer::from_writer(Vec::new());
    match args.algorithm {
        Algorithm::PageRank | Algorithm::CheiRank => {
            let kind = if args.algorithm == Algorithm::PageRank {
                VectorKind::PageRank
            } else {
                VectorKind::CheiRank
            };
            let v = rank_vector(&loaded, &args.params, kind, cache)?;
            output::write_rank_csv(&mut w, &v, &rank_indices(&v), labels).input()?;
        }
        Algorithm::TwoDRank => {
            let k = rank_indices(&rank_vector(&loaded, &args.params, VectorKind::PageRank, cache)?);
            let ks = rank_indices(&rank_vector(&loaded, &args.params, VectorKind::CheiRank, cache)?);
            let td = two_d_rank(&k, &ks)?;
            output::write_two_d_csv(&mut w, &k, &ks, &td, labels).input()?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Input(anyhow!("{e}")))?;
    match args.output {
        Some(path) => output::write_atomic(path, |f| f.write_all(&bytes))
            .with_context(|| format!("cannot write {}", path.display()))
            .input(),
        None => io::stdout().lock().write_all(&bytes).input(),
    }
}

pub fn load_registry(cfg: &PipelineConfig) -> Result<PersonRegistry, Failure> {
    let map = match &cfg.culture_map {
        Some(p) => {
            let f = File::open(p).with_context(|| format!("cannot open {}", p.display())).input()?;
            CountryCultureMap::load(BufReader::new(f))
                .with_context(|| format!("in culture map {}", p.display()))
                .input()?
        }
        None => CountryCultureMap::default(),
    };
    let path = cfg
        .persons
        .as_ref()
        .ok_or_else(|| Failure::Input(anyhow!("no persons file configured")))?;
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display())).input()?;
    let registry = PersonRegistry::load(BufReader::new(f), map)
        .with_context(|| format!("in persons file {}", path.display()))
        .input()?;
    info!("{} persons loaded", registry.len());
    Ok(registry)
}

fn cache_of(cfg: &PipelineConfig) -> Option<RankCache> {
    cfg.cache_dir.as_ref().map(RankCache::new)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create {}", dir.display()))
        .input()
}

fn write_file<F>(path: &Path, fill: F) -> Result<(), Failure>
where
    F: FnOnce(&mut csv::Writer<&mut File>) -> Result<(), output::OutputError>,
{
    write_csv_file(path, fill)
        .with_context(|| format!("cannot write {}", path.display()))
        .input()?;
    info!("wrote {}", path.display());
    Ok(())
}

fn edition_top_list(
    cfg: &PipelineConfig,
    code: LangCode,
    algorithm: Algorithm,
    params: &GoogleParams,
    cache: Option<&RankCache>,
    registry: &PersonRegistry,
) -> Result<TopList, Failure> {
    let path = cfg
        .edition_path(code)
        .ok_or_else(|| Failure::Input(anyhow!("edition {code} is not configured")))?;
    let loaded = load_graph(path, cfg.labels.get(&code).map(PathBuf::as_path), cfg.load)?;
    let labels = loaded.graph.labels().ok_or_else(|| {
        Failure::Input(anyhow!("integer node ids and no labels file; titles are needed"))
    })?;
    let ordering = node_ordering(&loaded, algorithm, params, cache)?;
    Ok(select_top_people(&ordering, labels, registry, code, algorithm, cfg.top_n))
}

pub fn cmd_top_people(
    cfg: &PipelineConfig,
    edition: Option<LangCode>,
    algorithm: Algorithm,
) -> Result<Vec<PathBuf>, Failure> {
    let editions = match edition {
        Some(code) => {
            if cfg.edition_path(code).is_none() {
                return Err(Failure::Input(anyhow!("edition {code} is not configured")));
            }
            vec![code]
        }
        None => cfg.edition_codes(),
    };
    let registry = load_registry(cfg)?;
    let params = cfg.params()?;
    let cache = cache_of(cfg);
    let lists: Vec<TopList> = editions
        .par_iter()
        .map(|&code| {
            edition_top_list(cfg, code, algorithm, &params, cache.as_ref(), &registry)
                .map_err(|e| e.context(format!("edition {code}")))
        })
        .collect::<Result<_, _>>()?;

    let dir = cfg.toplist_dir();
    create_dir(&dir)?;
    let mut written = Vec::new();
    for list in &lists {
        if list.is_empty() {
            warn!("{} {algorithm}: no person matched, writing an empty list", list.edition);
        }
        let path = dir.join(output::toplist_file_name(list.edition, algorithm));
        write_file(&path, |w| output::write_toplist(w, list, &registry))?;
        written.push(path);
    }
    Ok(written)
}

/// Reads the stored top list of every configured edition.
pub fn load_toplists(cfg: &PipelineConfig, algorithm: Algorithm) -> Result<Vec<TopList>, Failure> {
    let dir = cfg.toplist_dir();
    cfg.edition_codes()
        .into_iter()
        .map(|code| {
            let path = dir.join(output::toplist_file_name(code, algorithm));
            let file = File::open(&path).map_err(|e| {
                Failure::Input(anyhow!("no {algorithm} top list for edition {code} ({}): {e}", path.display()))
            })?;
            output::read_toplist(BufReader::new(file), code, algorithm)
                .with_context(|| format!("in top list {}", path.display()))
                .input()
        })
        .collect()
}

fn algorithm_dir(cfg: &PipelineConfig, algorithm: Algorithm) -> PathBuf {
    cfg.output_dir.join(algorithm.as_str())
}

pub struct GlobalArgs<'a> {
    pub algorithm: Algorithm,
    pub reference: Option<&'a Path>,
    pub women: bool,
}

pub fn cmd_global(cfg: &PipelineConfig, args: GlobalArgs<'_>) -> Result<PathBuf, Failure> {
    if cfg.editions.is_empty() {
        return Err(Failure::Input(anyhow!("no editions configured")));
    }
    let registry = load_registry(cfg)?;
    let lists = load_toplists(cfg, args.algorithm)?;
    let dir = algorithm_dir(cfg, args.algorithm);
    create_dir(&dir)?;
    let thresholds = Thresholds::default();

    let global = global_ranking(&lists, args.algorithm);
    for e in &global {
        if registry.get(&e.person_id).is_none() {
            return Err(Failure::Input(anyhow!("{:?} is not in the person registry", e.person_id)));
        }
    }
    write_file(&dir.join("global_ranking.csv"), |w| {
        output::write_global(w, &global, &registry, &thresholds)
    })?;
    if args.women {
        let women = female_ranking(&global, &registry);
        write_file(&dir.join("female_ranking.csv"), |w| {
            output::write_global(w, &women, &registry, &thresholds)
        })?;
    }
    let slices = culture_slices(&global, &registry, 10);
    write_file(&dir.join("culture_top10.csv"), |w| {
        w.write_record(["culture", "rank", "person_id", "theta", "n_appear", "mean_rank"])?;
        for (culture, entries) in &slices {
            for (k, e) in entries.iter().enumerate() {
                w.write_record([
                    culture.to_string(),
                    (k + 1).to_string(),
                    e.person_id.clone(),
                    e.theta.to_string(),
                    e.n_appear.to_string(),
                    e.mean_rank.to_string(),
                ])?;
            }
        }
        Ok(())
    })?;

    let spatial = spatial_distribution(&lists, &registry).input()?;
    write_file(&dir.join("spatial_distribution.csv"), |w| {
        output::write_distribution(w, &spatial.tables())
    })?;
    let temporal = temporal_distribution(&lists, &registry).input()?;
    if temporal.excluded > 0 {
        warn!("{} listed persons have no birth year and are left out of century tables", temporal.excluded);
    }
    write_file(&dir.join("temporal_distribution.csv"), |w| {
        output::write_distribution(w, &temporal.tables())
    })?;
    let locality = locality_ratio(&lists, &registry).input()?;
    write_file(&dir.join("locality_ratio.csv"), |w| output::write_locality(w, &locality))?;
    let gender = gender_distribution(&lists, &registry).input()?;
    write_file(&dir.join("gender_distribution.csv"), |w| {
        let normalized = gender.table.column_normalized();
        output::write_distribution(w, &[&gender.table, &normalized])
    })?;
    write_file(&dir.join("gender_counts.csv"), |w| output::write_gender_counts(w, &gender))?;
    write_file(&dir.join("female_ratio.csv"), |w| output::write_female_ratio(w, &gender))?;
    let rep = language_representation(&global, &lists, &registry, 100).input()?;
    write_file(&dir.join("language_representation.csv"), |w| {
        output::write_representation(w, &rep)
    })?;

    if let Some(ref_path) = args.reference {
        let f = File::open(ref_path)
            .with_context(|| format!("cannot open reference list {}", ref_path.display()))
            .input()?;
        let names = output::load_reference_list(BufReader::new(f)).input()?;
        let report = overlap_report(&names, &global, &lists, args.algorithm, 100);
        info!("overlap with {}: {}", ref_path.display(), report.global_overlap);
        let path = dir.join("overlap.json");
        output::write_atomic(&path, |f| output::write_overlap_json(f, &report))
            .with_context(|| format!("cannot write {}", path.display()))
            .input()?;
    }
    Ok(dir)
}

pub fn cmd_culture(
    cfg: &PipelineConfig,
    algorithm: Algorithm,
    before_century: Option<i32>,
) -> Result<PathBuf, Failure> {
    if cfg.editions.is_empty() {
        return Err(Failure::Input(anyhow!("no editions configured")));
    }
    if before_century == Some(0) {
        return Err(Failure::Input(anyhow!("century 0 does not exist")));
    }
    let registry = load_registry(cfg)?;
    let lists = load_toplists(cfg, algorithm)?;
    let net = build_culture_network(&lists, &cfg.edition_codes(), &registry, before_century).input()?;
    let ranks = culture_ranks(&net, cfg.alpha)?;
    let g = culture_google_matrix(&net, cfg.alpha)?;

    let name = match before_century {
        Some(c) => format!("culture_before_{c}"),
        None => "culture".to_string(),
    };
    let dir = algorithm_dir(cfg, algorithm).join(name);
    create_dir(&dir)?;
    write_file(&dir.join("culture_network.csv"), |w| output::write_culture_network(w, &net))?;
    write_file(&dir.join("culture_own.csv"), |w| output::write_culture_own(w, &net))?;
    write_file(&dir.join("culture_ranks.csv"), |w| output::write_culture_ranks(w, &ranks))?;
    let by_k: Vec<usize> = ranks.k.ordering.iter().map(|&i| i as usize).collect();
    write_file(&dir.join("culture_matrix.csv"), |w| output::write_culture_matrix(w, &g, &by_k))?;
    Ok(dir)
}

pub fn cmd_selfcheck() -> Result<(), Failure> {
    let results = selfcheck::run_all();
    let mut failed = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} {}: {}", r.name, r.detail);
        failed += usize::from(!r.passed);
    }
    if failed > 0 {
        Err(Failure::SelfCheck(failed))
    } else {
        Ok(())
    }
}
