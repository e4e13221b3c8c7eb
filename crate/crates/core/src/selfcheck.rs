//! Small oracle suite that can run from an installed binary.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::aggregate::{global_ranking, TopList};
use crate::cache::{CacheError, RankCache};
use crate::graph::NodeId;
use crate::rank::{
    cheirank, dense_google_matrix, dense_stationary, l1_distance, pagerank, two_d_rank, Algorithm,
    GoogleParams, RankError, RankIndex, VectorKind,
};
use crate::registry::LangCode;
use crate::synth::random_graph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<String, String>) -> CheckResult {
    match outcome {
        Ok(detail) => CheckResult { name, passed: true, detail },
        Err(detail) => CheckResult { name, passed: false, detail },
    }
}

pub fn run_all() -> Vec<CheckResult> {
    vec![
        check("dense-vs-sparse", dense_vs_sparse()),
        check("cheirank-duality", duality()),
        check("two-d-rank-exhaustive", two_d_exhaustive()),
        check("theta-brute-force", theta_brute_force()),
        check("alpha-validation", alpha_validation()),
        check("cache-corruption", cache_corruption()),
    ]
}

fn dense_vs_sparse() -> Result<String, String> {
    let params = GoogleParams::default();
    let mut worst: f64 = 0.0;
    for seed in 0..10 {
        let g = random_graph(80, 0.03, seed);
        let sparse = pagerank(&g, &params).map_err(|e| e.to_string())?;
        let dense = dense_google_matrix(&g, params.alpha())
            .and_then(|m| dense_stationary(&m))
            .map_err(|e| e.to_string())?;
        worst = worst.max(l1_distance(&sparse.probabilities, &dense.probabilities));
    }
    if worst <= 1e-8 {
        Ok(format!("max L1 {worst:.2e} over 10 graphs"))
    } else {
        Err(format!("L1 {worst:.2e} exceeds 1e-8"))
    }
}

fn duality() -> Result<String, String> {
    let params = GoogleParams::default();
    let g = random_graph(150, 0.02, 7);
    let c = cheirank(&g, &params).map_err(|e| e.to_string())?;
    let p = pagerank(&g.reverse(), &params).map_err(|e| e.to_string())?;
    let same = c
        .probabilities
        .iter()
        .zip(&p.probabilities)
        .all(|(a, b)| a.to_bits() == b.to_bits());
    if same {
        Ok("bitwise identical".into())
    } else {
        Err("cheirank differs from pagerank of the reversed graph".into())
    }
}

fn permutations(n: usize) -> Vec<Vec<NodeId>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, (n - 1) as NodeId);
            out.push(q);
        }
    }
    out
}

/// Grows the square `[1, s] × [1, s]` of the (K, K*) plane and appends the
/// nodes that enter it, by K* then K.
fn square_scan(k: &[u32], ks: &[u32]) -> Vec<NodeId> {
    let n = k.len();
    let mut placed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for s in 1..=n as u32 {
        let mut entering: Vec<usize> = (0..n).filter(|&i| !placed[i] && k[i] <= s && ks[i] <= s).collect();
        entering.sort_by_key(|&i| (ks[i], k[i]));
        for i in entering {
            placed[i] = true;
            out.push(i as NodeId);
        }
    }
    out
}

fn two_d_exhaustive() -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=4 {
        let perms = permutations(n);
        for a in &perms {
            for b in &perms {
                let (k, ks) = (RankIndex::from_ordering(a.clone()), RankIndex::from_ordering(b.clone()));
                let td = two_d_rank(&k, &ks).map_err(|e| e.to_string())?;
                for i in 0..n {
                    if td.kprime[i] != k.position[i].max(ks.position[i]) {
                        return Err(format!("K' wrong for node {i} of {a:?} / {b:?}"));
                    }
                }
                if td.ordering != square_scan(&k.position, &ks.position) {
                    return Err(format!("ordering differs for {a:?} / {b:?}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} permutation pairs"))
}

fn theta_brute_force() -> Result<String, String> {
    let editions = [LangCode::En, LangCode::De, LangCode::Ja];
    let lists: Vec<TopList> = editions
        .iter()
        .enumerate()
        .map(|(e, &code)| {
            let ids = (0..25).map(|r| format!("p{}", (r * [3, 7, 11][e] + e * 5) % 40)).collect();
            TopList::from_ranked_ids(code, Algorithm::PageRank, ids).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let mut theta: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    for l in &lists {
        for (pos, e) in l.entries.iter().enumerate() {
            let t = theta.entry(e.person_id.clone()).or_default();
            t.0 += 101 - (pos as u32 + 1);
            t.1 += 1;
        }
    }
    let global = global_ranking(&lists, Algorithm::PageRank);
    if global.len() != theta.len() {
        return Err(format!("{} entries, expected {}", global.len(), theta.len()));
    }
    for g in &global {
        let (t, na) = theta[&g.person_id];
        if g.theta != t || g.n_appear != na || g.theta < na || g.theta > 100 * na {
            return Err(format!("{}: theta {} n_appear {}, expected {t} {na}", g.person_id, g.theta, g.n_appear));
        }
    }
    if global.windows(2).any(|w| w[0].theta < w[1].theta) {
        return Err("not sorted by theta".into());
    }
    Ok(format!("{} persons", global.len()))
}

fn alpha_validation() -> Result<String, String> {
    for alpha in [1.0, 0.0, -0.5, f64::NAN] {
        if !matches!(GoogleParams::with_alpha(alpha), Err(RankError::BadAlpha(_))) {
            return Err(format!("alpha {alpha} accepted"));
        }
    }
    Ok("alpha outside (0, 1) rejected".into())
}

fn cache_corruption() -> Result<String, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let dir = std::env::temp_dir().join(format!("wikirank-selfcheck-{}", std::process::id()));
    let result = (|| {
        let cache = RankCache::new(&dir);
        let params = GoogleParams::default();
        let g = random_graph(50, 0.05, 3);
        let v = pagerank(&g, &params).map_err(|e| err(&e))?;
        cache.store("selfcheck", &v, params.alpha()).map_err(|e| err(&e))?;
        let path = cache.path_for("selfcheck");
        let mut bytes = std::fs::read(&path).map_err(|e| err(&e))?;
        bytes[0] = b'X';
        std::fs::write(&path, bytes).map_err(|e| err(&e))?;
        match cache.load("selfcheck", VectorKind::PageRank, params.alpha(), 50) {
            Err(CacheError::BadMagic(_)) => {}
            other => return Err(format!("corrupt entry not detected: {other:?}")),
        }
        let again = pagerank(&g, &params).map_err(|e| err(&e))?;
        cache.store("selfcheck", &again, params.alpha()).map_err(|e| err(&e))?;
        let reloaded = cache
            .load("selfcheck", VectorKind::PageRank, params.alpha(), 50)
            .map_err(|e| err(&e))?
            .ok_or("entry missing after recompute")?;
        if reloaded.probabilities != v.probabilities {
            return Err("recomputed entry differs".into());
        }
        Ok("bad magic detected, entry recomputed".to_string())
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result
}
