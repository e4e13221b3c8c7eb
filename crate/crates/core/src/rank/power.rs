use rayon::prelude::*;

use super::{l1_distance, GoogleParams, RankError, RankVector, VectorKind};
use crate::graph::{DirectedGraph, NodeId};

/// One column of the stochastic matrix `S`.
#[derive(Debug, Clone, PartialEq)]
pub enum StochasticColumn {
    /// `(target, 1/k_out)` for every out-neighbor.
    Links(Vec<(NodeId, f64)>),
    /// A dangling node: every entry is `1/n`. Never materialized.
    Uniform { n: usize },
}

impl StochasticColumn {
    pub fn sum(&self) -> f64 {
        match self {
            StochasticColumn::Links(entries) => entries.iter().map(|&(_, w)| w).sum(),
            StochasticColumn::Uniform { n } => *n as f64 * (1.0 / *n as f64),
        }
    }

    pub fn get(&self, row: NodeId) -> f64 {
        match self {
            StochasticColumn::Links(entries) => entries
                .iter()
                .find(|&&(t, _)| t == row)
                .map_or(0.0, |&(_, w)| w),
            StochasticColumn::Uniform { n } => 1.0 / *n as f64,
        }
    }
}

pub fn stochastic_column(g: &DirectedGraph, j: NodeId) -> StochasticColumn {
    let k = g.out_degree(j);
    if k == 0 {
        return StochasticColumn::Uniform { n: g.node_count() };
    }
    let w = 1.0 / k as f64;
    StochasticColumn::Links(g.successors(j).into_iter().map(|t| (t, w)).collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Execution {
    Serial,
    Parallel,
}

#[inline]
fn gather(g: &DirectedGraph, share: &[f64], i: NodeId) -> f64 {
    g.predecessors(i).iter().map(|&j| share[j as usize]).sum()
}

fn normalize(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= s);
}

fn power_iterate(
    g: &DirectedGraph,
    params: &GoogleParams,
    kind: VectorKind,
    exec: Execution,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<RankVector, RankError> {
    let n = g.node_count();
    if n == 0 {
        return Err(RankError::EmptyGraph);
    }
    let alpha = params.alpha();
    let nf = n as f64;
    let teleport = (1.0 - alpha) / nf;

    let inv_out: Vec<f64> = g
        .out_degrees()
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / d as f64 })
        .collect();
    let dangling: Vec<NodeId> = (0..n as NodeId).filter(|&j| g.is_dangling(j)).collect();

    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut share = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iteration in 1..=params.max_iter() {
        let dangling_mass: f64 = dangling.iter().map(|&j| x[j as usize]).sum();
        let base = teleport + alpha * dangling_mass / nf;

        match exec {
            Execution::Serial => {
                for ((s, &xj), &w) in share.iter_mut().zip(&x).zip(&inv_out) {
                    *s = xj * w;
                }
                for (i, v) in next.iter_mut().enumerate() {
                    *v = base + alpha * gather(g, &share, i as NodeId);
                }
            }
            Execution::Parallel => {
                share
                    .par_iter_mut()
                    .zip(x.par_iter())
                    .zip(inv_out.par_iter())
                    .for_each(|((s, &xj), &w)| *s = xj * w);
                let share = &share;
                next.par_iter_mut()
                    .enumerate()
                    .with_min_len(4096)
                    .for_each(|(i, v)| *v = base + alpha * gather(g, share, i as NodeId));
            }
        }

        residual = l1_distance(&x, &next);
        std::mem::swap(&mut x, &mut next);
        if let Some(t) = trace.as_deref_mut() {
            t.push(residual);
        }
        if residual <= params.tol() {
            normalize(&mut x);
            return Ok(RankVector {
                probabilities: x,
                kind,
                iterations: iteration,
                residual,
            });
        }
    }

    normalize(&mut x);
    Err(RankError::NotConverged {
        iterations: params.max_iter(),
        residual,
        last: Box::new(RankVector {
            probabilities: x,
            kind,
            iterations: params.max_iter(),
            residual,
        }),
    })
}

/// PageRank by serial power iteration from the uniform vector. The result
/// is bitwise reproducible.
pub fn pagerank(g: &DirectedGraph, params: &GoogleParams) -> Result<RankVector, RankError> {
    power_iterate(g, params, VectorKind::PageRank, Execution::Serial, None)
}

/// PageRank with the per-node gather spread over the rayon pool. Every
/// entry is computed with the same arithmetic as [`pagerank`] and all
/// reductions stay serial, so the output matches it bit for bit.
pub fn pagerank_parallel(
    g: &DirectedGraph,
    params: &GoogleParams,
) -> Result<RankVector, RankError> {
    power_iterate(g, params, VectorKind::PageRank, Execution::Parallel, None)
}

/// PageRank plus the L1 residual of every sweep.
pub fn pagerank_traced(
    g: &DirectedGraph,
    params: &GoogleParams,
) -> Result<(RankVector, Vec<f64>), RankError> {
    let mut trace = Vec::new();
    let v = power_iterate(
        g,
        params,
        VectorKind::PageRank,
        Execution::Serial,
        Some(&mut trace),
    )?;
    Ok((v, trace))
}

/// CheiRank: PageRank of the reversed graph.
pub fn cheirank(g: &DirectedGraph, params: &GoogleParams) -> Result<RankVector, RankError> {
    power_iterate(
        &g.reverse(),
        params,
        VectorKind::CheiRank,
        Execution::Serial,
        None,
    )
}

pub fn cheirank_parallel(
    g: &DirectedGraph,
    params: &GoogleParams,
) -> Result<RankVector, RankError> {
    power_iterate(
        &g.reverse(),
        params,
        VectorKind::CheiRank,
        Execution::Parallel,
        None,
    )
}
