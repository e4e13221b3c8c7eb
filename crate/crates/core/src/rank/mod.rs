//! Stationary vectors of the Google matrix `G = αS + (1 − α)/N`.
//!
//! `S` is the column-normalized adjacency matrix in which a node without
//! outgoing links is given the uniform column `1/N`. PageRank is the fixed
//! point of `P = GP`; CheiRank is PageRank of the link-reversed graph.
//! 2DRank combines both orderings through `K' = max(K, K*)`.

mod dense;
mod index;
mod power;
mod robustness;

pub use dense::{
    dense_google_matrix, dense_google_matrix_with_limit, dense_stationary, weighted_google_matrix,
    DenseMatrix, DENSE_LIMIT,
};
pub use index::{rank_indices, two_d_rank, RankIndex, TwoDRankResult};
pub use power::{
    cheirank, cheirank_parallel, pagerank, pagerank_parallel, pagerank_traced, stochastic_column,
    StochasticColumn,
};
pub use robustness::{alpha_robustness, AlphaOverlap, RobustnessReport};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const DEFAULT_ALPHA: f64 = 0.85;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 1000;

#[derive(Debug, Error)]
pub enum RankError {
    #[error("damping factor must lie in (0, 1), got {0}")]
    BadAlpha(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("max_iter must be positive")]
    BadMaxIter,
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        last: Box<RankVector>,
    },
    #[error("{n} nodes exceed the dense limit of {limit}")]
    DenseLimit { n: usize, limit: usize },
    #[error("column {column} sums to {sum}, not 1")]
    NotStochastic { column: usize, sum: f64 },
    #[error("rank indices cover {left} and {right} nodes")]
    MismatchedNodes { left: usize, right: usize },
}

/// Damping factor and stopping rule for power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoogleParams {
    alpha: f64,
    tol: f64,
    max_iter: usize,
}

impl GoogleParams {
    pub fn new(alpha: f64, tol: f64, max_iter: usize) -> Result<Self, RankError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(RankError::BadAlpha(alpha));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(RankError::BadTolerance(tol));
        }
        if max_iter == 0 {
            return Err(RankError::BadMaxIter);
        }
        Ok(GoogleParams {
            alpha,
            tol,
            max_iter,
        })
    }

    pub fn with_alpha(alpha: f64) -> Result<Self, RankError> {
        Self::new(alpha, DEFAULT_TOL, DEFAULT_MAX_ITER)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for GoogleParams {
    fn default() -> Self {
        GoogleParams {
            alpha: DEFAULT_ALPHA,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Which stationary vector a [`RankVector`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VectorKind {
    PageRank,
    CheiRank,
}

impl VectorKind {
    pub fn tag(self) -> u8 {
        match self {
            VectorKind::PageRank => 0,
            VectorKind::CheiRank => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(VectorKind::PageRank),
            1 => Some(VectorKind::CheiRank),
            _ => None,
        }
    }
}

/// Ranking algorithms exposed on the command line and used to tag top lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    PageRank,
    CheiRank,
    TwoDRank,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::PageRank => "pagerank",
            Algorithm::CheiRank => "cheirank",
            Algorithm::TwoDRank => "2drank",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pagerank" | "pr" => Ok(Algorithm::PageRank),
            "cheirank" | "cr" => Ok(Algorithm::CheiRank),
            "2drank" | "2d" | "twodrank" => Ok(Algorithm::TwoDRank),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

/// A stationary probability vector and how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    pub probabilities: Vec<f64>,
    pub kind: VectorKind,
    pub iterations: usize,
    /// L1 distance between the last two iterates.
    pub residual: f64,
}

impl RankVector {
    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.probabilities.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// L1 distance between two equally long vectors.
pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
