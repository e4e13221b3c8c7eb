//! Deterministic synthetic graphs for fixtures, self-checks and benchmarks.
//! The ranking pipeline itself never draws random numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DirectedGraph, NodeId};

/// Uniform random digraph with about `density · n · (n − 1)` links. Every
/// 20th node (ids 19, 39, ...) keeps no outgoing link, so the graph always
/// has dangling nodes once `n ≥ 20`.
pub fn random_graph(n: usize, density: f64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = (density * n as f64 * (n.saturating_sub(1)) as f64).round() as usize;
    let mut edges = Vec::with_capacity(target);
    while edges.len() < target && n > 1 {
        let s = rng.random_range(0..n as NodeId);
        let t = rng.random_range(0..n as NodeId);
        if s != t && s % 20 != 19 {
            edges.push((s, t));
        }
    }
    DirectedGraph::from_edges(n, edges, true).expect("ids are in range")
}

/// `m` uniformly drawn links over `n` nodes, self-loops and duplicates
/// left to the graph builder.
pub fn uniform_edges(n: usize, m: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            (
                rng.random_range(0..n as NodeId),
                rng.random_range(0..n as NodeId),
            )
        })
        .collect()
}

/// Directed preferential attachment: node `i` links to `links` earlier
/// nodes picked with probability proportional to in-degree + 1. Every
/// 10th node links nowhere.
pub fn scale_free(n: usize, links: usize, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Each node appears once plus once per incoming link.
    let mut urn: Vec<NodeId> = Vec::with_capacity(n * (links + 1));
    let mut edges = Vec::with_capacity(n * links);
    for i in 0..n as NodeId {
        if i > 0 && i % 10 != 0 {
            for _ in 0..links {
                let t = urn[rng.random_range(0..urn.len())];
                edges.push((i, t));
                urn.push(t);
            }
        }
        urn.push(i);
    }
    DirectedGraph::from_edges(n, edges, true).expect("ids are in range")
}
