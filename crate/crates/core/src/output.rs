//! File formats written and read by the pipeline.
//!
//! Floats are written with Rust's shortest round-trip formatting, so every
//! CSV reads back to the exact in-memory value.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::aggregate::{
    AggregateError, DistributionTable, FigureClass, GenderDistribution, GlobalEntry, LocalityTable,
    OverlapReport, Representation, Thresholds, TopEntry, TopList,
};
use crate::culture::{CultureNetwork, CultureRanks};
use crate::rank::{Algorithm, DenseMatrix, RankIndex, RankVector, TwoDRankResult};
use crate::registry::{normalize_title, LangCode, PersonRegistry};

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("missing column {0:?}")]
    MissingColumn(&'static str),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    List(#[from] AggregateError),
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Writes `path` through a temporary sibling file that is renamed into
/// place once `fill` succeeds. Readers never observe a partial file.
pub fn write_atomic<F>(path: &Path, fill: F) -> io::Result<()>
where
    F: FnOnce(&mut File) -> io::Result<()>,
{
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = dir.join(format!(
        ".{}.{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id(),
        TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let result = (|| {
        let mut f = File::create(&tmp)?;
        fill(&mut f)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Atomic write of a CSV produced by `fill`.
pub fn write_csv_file<F>(path: &Path, fill: F) -> Result<(), OutputError>
where
    F: FnOnce(&mut csv::Writer<&mut File>) -> Result<(), OutputError>,
{
    let mut inner = None;
    write_atomic(path, |f| {
        let mut w = csv::Writer::from_writer(f);
        let r = fill(&mut w).and_then(|_| w.flush().map_err(OutputError::from));
        match r {
            Ok(()) => Ok(()),
            Err(e) => {
                inner = Some(e);
                Err(io::Error::other("csv write failed"))
            }
        }
    })
    .map_err(|e| inner.take().unwrap_or(OutputError::Io(e)))
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn label_of(labels: Option<&[String]>, node: usize) -> String {
    labels.map(|l| l[node].clone()).unwrap_or_else(|| node.to_string())
}

/// `node_id,label,probability,rank`, one row per node in rank order.
pub fn write_rank_csv<W: Write>(
    w: &mut csv::Writer<W>,
    v: &RankVector,
    index: &RankIndex,
    labels: Option<&[String]>,
) -> Result<(), OutputError> {
    w.write_record(["node_id", "label", "probability", "rank"])?;
    for (k, &node) in index.ordering.iter().enumerate() {
        let i = node as usize;
        w.write_record([
            i.to_string(),
            label_of(labels, i),
            v.probabilities[i].to_string(),
            (k + 1).to_string(),
        ])?;
    }
    Ok(())
}

/// `node_id,label,K,Kstar,Kprime,rank`, one row per node by ascending `K'`.
pub fn write_two_d_csv<W: Write>(
    w: &mut csv::Writer<W>,
    k: &RankIndex,
    kstar: &RankIndex,
    td: &TwoDRankResult,
    labels: Option<&[String]>,
) -> Result<(), OutputError> {
    w.write_record(["node_id", "label", "K", "Kstar", "Kprime", "rank"])?;
    for (r, &node) in td.ordering.iter().enumerate() {
        let i = node as usize;
        w.write_record([
            i.to_string(),
            label_of(labels, i),
            k.position[i].to_string(),
            kstar.position[i].to_string(),
            td.kprime[i].to_string(),
            (r + 1).to_string(),
        ])?;
    }
    Ok(())
}

/// File name of a top list, e.g. `EN_pagerank.csv`.
pub fn toplist_file_name(edition: LangCode, algorithm: Algorithm) -> String {
    format!("{edition}_{algorithm}.csv")
}

const TOPLIST_HEADER: [&str; 7] = ["person_id", "title", "rank", "culture", "country", "century", "gender"];

pub fn write_toplist<W: Write>(
    w: &mut csv::Writer<W>,
    list: &TopList,
    registry: &PersonRegistry,
) -> Result<(), OutputError> {
    w.write_record(TOPLIST_HEADER)?;
    for e in &list.entries {
        let p = registry
            .get(&e.person_id)
            .ok_or_else(|| AggregateError::UnknownPerson(e.person_id.clone()))?;
        w.write_record([
            p.id.clone(),
            p.title(list.edition).unwrap_or(&p.id).to_string(),
            e.rank.to_string(),
            p.culture.to_string(),
            p.birth_country.to_string(),
            fmt_opt(p.century()),
            p.gender.to_string(),
        ])?;
    }
    Ok(())
}

/// Reads a top list written by [`write_toplist`]. Only `person_id` and
/// `rank` are required; other columns are ignored.
pub fn read_toplist<R: Read>(
    r: R,
    edition: LangCode,
    algorithm: Algorithm,
) -> Result<TopList, OutputError> {
    let mut rdr = csv::Reader::from_reader(r);
    let headers = rdr.headers()?.clone();
    let col = |name: &'static str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or(OutputError::MissingColumn(name))
    };
    let (id_col, rank_col) = (col("person_id")?, col("rank")?);
    let mut entries = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let rank_text = record.get(rank_col).unwrap_or("").trim();
        let rank = rank_text.parse().map_err(|_| OutputError::Parse {
            line,
            message: format!("invalid rank {rank_text:?}"),
        })?;
        entries.push(TopEntry {
            person_id: record.get(id_col).unwrap_or("").to_string(),
            rank,
        });
    }
    Ok(TopList::new(edition, algorithm, entries)?)
}

pub fn write_global<W: Write>(
    w: &mut csv::Writer<W>,
    entries: &[GlobalEntry],
    registry: &PersonRegistry,
    thresholds: &Thresholds,
) -> Result<(), OutputError> {
    w.write_record([
        "rank", "person_id", "theta", "n_appear", "mean_rank", "class", "gender", "culture", "century",
    ])?;
    for (k, e) in entries.iter().enumerate() {
        let p = registry
            .get(&e.person_id)
            .ok_or_else(|| AggregateError::UnknownPerson(e.person_id.clone()))?;
        w.write_record([
            (k + 1).to_string(),
            e.person_id.clone(),
            e.theta.to_string(),
            e.n_appear.to_string(),
            e.mean_rank.to_string(),
            FigureClass::of(e, thresholds).as_str().to_string(),
            p.gender.to_string(),
            p.culture.to_string(),
            fmt_opt(p.century()),
        ])?;
    }
    Ok(())
}

/// Long-form `row_key,col_key,value,normalization` for any number of tables.
pub fn write_distribution<W: Write>(
    w: &mut csv::Writer<W>,
    tables: &[&DistributionTable],
) -> Result<(), OutputError> {
    w.write_record(["row_key", "col_key", "value", "normalization"])?;
    for t in tables {
        for (&(r, c), v) in &t.cells {
            w.write_record([
                r.to_string(),
                c.to_string(),
                v.to_string(),
                t.normalization.as_str().to_string(),
            ])?;
        }
    }
    Ok(())
}

/// `edition,century,m,n,ratio`; an undefined ratio is written as `null`.
pub fn write_locality<W: Write>(w: &mut csv::Writer<W>, t: &LocalityTable) -> Result<(), OutputError> {
    w.write_record(["edition", "century", "m", "n", "ratio"])?;
    for (&(e, c), cell) in &t.cells {
        w.write_record([
            e.to_string(),
            c.to_string(),
            cell.m.to_string(),
            cell.n.to_string(),
            cell.ratio.map_or_else(|| "null".to_string(), |r| r.to_string()),
        ])?;
    }
    Ok(())
}

pub fn write_gender_counts<W: Write>(
    w: &mut csv::Writer<W>,
    g: &GenderDistribution,
) -> Result<(), OutputError> {
    w.write_record(["edition", "female", "male", "unknown"])?;
    for (e, c) in &g.per_edition {
        w.write_record([e.to_string(), c.female.to_string(), c.male.to_string(), c.unknown.to_string()])?;
    }
    w.write_record(["AVG".to_string(), g.mean_female.to_string(), String::new(), String::new()])?;
    Ok(())
}

/// `century,female,male,ratio`; an undefined ratio is written as `null`.
pub fn write_female_ratio<W: Write>(
    w: &mut csv::Writer<W>,
    g: &GenderDistribution,
) -> Result<(), OutputError> {
    w.write_record(["century", "female", "male", "ratio"])?;
    for (c, v) in &g.by_century {
        w.write_record([
            c.to_string(),
            v.female.to_string(),
            v.male.to_string(),
            v.ratio.map_or_else(|| "null".to_string(), |r| r.to_string()),
        ])?;
    }
    Ok(())
}

pub fn write_representation<W: Write>(
    w: &mut csv::Writer<W>,
    rep: &BTreeMap<LangCode, Representation>,
) -> Result<(), OutputError> {
    w.write_record(["language", "global_top", "own_edition", "edition_len"])?;
    for (l, r) in rep {
        w.write_record([
            l.to_string(),
            r.global.to_string(),
            fmt_opt(r.own_edition),
            fmt_opt(r.edition_len),
        ])?;
    }
    Ok(())
}

/// Non-zero links as `from,to,weight`.
pub fn write_culture_network<W: Write>(
    w: &mut csv::Writer<W>,
    net: &CultureNetwork,
) -> Result<(), OutputError> {
    w.write_record(["from", "to", "weight"])?;
    for (a, b, weight) in net.links() {
        w.write_record([a.to_string(), b.to_string(), weight.to_string()])?;
    }
    Ok(())
}

/// `culture,own_count,foreign_count,filtered_len` per edition culture.
pub fn write_culture_own<W: Write>(
    w: &mut csv::Writer<W>,
    net: &CultureNetwork,
) -> Result<(), OutputError> {
    w.write_record(["culture", "own_count", "foreign_count", "filtered_len"])?;
    for &c in LangCode::editions() {
        let i = c.index();
        w.write_record([
            c.to_string(),
            net.own_count[i].to_string(),
            net.out_weight(c).to_string(),
            net.filtered_len[i].to_string(),
        ])?;
    }
    Ok(())
}

pub fn write_culture_ranks<W: Write>(
    w: &mut csv::Writer<W>,
    ranks: &CultureRanks,
) -> Result<(), OutputError> {
    w.write_record(["culture", "K", "Kstar", "Kprime", "pagerank_prob", "cheirank_prob"])?;
    let mut rows = ranks.rows();
    rows.sort_by_key(|r| r.k);
    for r in rows {
        w.write_record([
            r.culture.to_string(),
            r.k.to_string(),
            r.kstar.to_string(),
            r.kprime.to_string(),
            r.pagerank.to_string(),
            r.cheirank.to_string(),
        ])?;
    }
    Ok(())
}

/// The matrix with rows and columns in `ordering`, headed by culture codes.
pub fn write_culture_matrix<W: Write>(
    w: &mut csv::Writer<W>,
    g: &DenseMatrix,
    ordering: &[usize],
) -> Result<(), OutputError> {
    let p = g.permuted(ordering);
    let codes: Vec<String> = ordering.iter().map(|&i| LangCode::ALL[i].to_string()).collect();
    w.write_record(std::iter::once("culture".to_string()).chain(codes.iter().cloned()))?;
    for (r, code) in codes.iter().enumerate() {
        w.write_record(std::iter::once(code.clone()).chain(p.row(r).iter().map(|v| v.to_string())))?;
    }
    Ok(())
}

pub fn write_overlap_json<W: Write>(w: W, report: &OverlapReport) -> io::Result<()> {
    serde_json::to_writer_pretty(w, report).map_err(io::Error::other)
}

/// One name per line; names are trimmed and NFC-normalized, blank lines
/// and lines starting with `#` skipped.
pub fn load_reference_list<R: BufRead>(r: R) -> io::Result<Vec<String>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            out.push(normalize_title(t).into_owned());
        }
    }
    Ok(out)
}
