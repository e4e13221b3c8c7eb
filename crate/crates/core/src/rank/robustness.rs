use std::collections::HashSet;

use serde::Serialize;

use super::{pagerank_parallel, rank_indices, GoogleParams, RankError, DEFAULT_TOL, DEFAULT_MAX_ITER};
use crate::graph::{DirectedGraph, NodeId};

/// Size of the top-`top` intersection between the PageRank orderings at two damping factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaOverlap {
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub overlap: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub top: usize,
    pub alphas: Vec<f64>,
    pub iterations: Vec<usize>,
    pub pairs: Vec<AlphaOverlap>,
}

/// Top-`top` PageRank overlaps for every pair of damping factors. This is
/// a report; nothing here is judged.
pub fn alpha_robustness(
    g: &DirectedGraph,
    alphas: &[f64],
    top: usize,
) -> Result<RobustnessReport, RankError> {
    let mut tops: Vec<HashSet<NodeId>> = Vec::with_capacity(alphas.len());
    let mut iterations = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let params = GoogleParams::new(alpha, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        let v = pagerank_parallel(g, &params)?;
        iterations.push(v.iterations);
        let idx = rank_indices(&v);
        tops.push(idx.ordering.iter().take(top).copied().collect());
    }
    let mut pairs = Vec::new();
    for a in 0..alphas.len() {
        for b in a + 1..alphas.len() {
            pairs.push(AlphaOverlap {
                alpha_a: alphas[a],
                alpha_b: alphas[b],
                overlap: tops[a].intersection(&tops[b]).count(),
            });
        }
    }
    Ok(RobustnessReport {
        top,
        alphas: alphas.to_vec(),
        iterations,
        pairs,
    })
}
