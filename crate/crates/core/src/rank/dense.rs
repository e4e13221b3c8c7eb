use super::{l1_distance, RankError, RankVector, VectorKind};
use crate::graph::{DirectedGraph, NodeId};

/// Largest graph for which the Google matrix is materialized by default.
pub const DENSE_LIMIT: usize = 2000;

const STOCHASTIC_TOL: f64 = 1e-12;
const STATIONARY_TOL: f64 = 1e-14;
const STATIONARY_MAX_ITER: usize = 100_000;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        DenseMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.data[row * self.n + col] = v;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for r in 0..self.n {
            for (s, v) in sums.iter_mut().zip(self.row(r)) {
                *s += v;
            }
        }
        sums
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Reorders rows and columns together: entry `(a, b)` of the result is
    /// entry `(ordering[a], ordering[b])` of `self`.
    pub fn permuted(&self, ordering: &[usize]) -> DenseMatrix {
        assert_eq!(ordering.len(), self.n);
        let mut out = DenseMatrix::zeros(self.n);
        for (a, &ra) in ordering.iter().enumerate() {
            for (b, &cb) in ordering.iter().enumerate() {
                out.set(a, b, self.get(ra, cb));
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }
}

fn check_alpha(alpha: f64) -> Result<(), RankError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(RankError::BadAlpha(alpha))
    }
}

pub fn dense_google_matrix(g: &DirectedGraph, alpha: f64) -> Result<DenseMatrix, RankError> {
    dense_google_matrix_with_limit(g, alpha, DENSE_LIMIT)
}

pub fn dense_google_matrix_with_limit(
    g: &DirectedGraph,
    alpha: f64,
    limit: usize,
) -> Result<DenseMatrix, RankError> {
    check_alpha(alpha)?;
    let n = g.node_count();
    if n > limit {
        return Err(RankError::DenseLimit { n, limit });
    }
    if n == 0 {
        return Err(RankError::EmptyGraph);
    }
    let teleport = (1.0 - alpha) / n as f64;
    let mut m = DenseMatrix {
        n,
        data: vec![teleport; n * n],
    };
    for j in 0..n {
        let k = g.out_degree(j as NodeId);
        if k == 0 {
            let v = alpha / n as f64 + teleport;
            for i in 0..n {
                m.set(i, j, v);
            }
        }
    }
    for (s, t) in g.edges() {
        let (s, t) = (s as usize, t as usize);
        let k = g.out_degree(s as NodeId) as f64;
        m.set(t, s, alpha / k + teleport);
    }
    Ok(m)
}

/// Google matrix of a weighted network. `weights.get(from, to)` is the
/// weight of the link `from → to`; column `from` of `S` is the row `from`
/// of `weights` divided by its sum, or uniform when that sum is zero.
pub fn weighted_google_matrix(weights: &DenseMatrix, alpha: f64) -> Result<DenseMatrix, RankError> {
    check_alpha(alpha)?;
    let n = weights.dim();
    if n == 0 {
        return Err(RankError::EmptyGraph);
    }
    let teleport = (1.0 - alpha) / n as f64;
    let mut m = DenseMatrix::zeros(n);
    for from in 0..n {
        let row = weights.row(from);
        let total: f64 = row.iter().sum();
        for to in 0..n {
            let s = if total > 0.0 {
                row[to] / total
            } else {
                1.0 / n as f64
            };
            m.set(to, from, alpha * s + teleport);
        }
    }
    Ok(m)
}

/// Stationary vector of a column-stochastic matrix by dense power
/// iteration, stopped when successive iterates differ by at most 1e-14 in
/// L1.
pub fn dense_stationary(g: &DenseMatrix) -> Result<RankVector, RankError> {
    let n = g.dim();
    if n == 0 {
        return Err(RankError::EmptyGraph);
    }
    if n > DENSE_LIMIT {
        return Err(RankError::DenseLimit {
            n,
            limit: DENSE_LIMIT,
        });
    }
    for (column, sum) in g.column_sums().into_iter().enumerate() {
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(RankError::NotStochastic { column, sum });
        }
    }
    if let Some(pos) = g.data.iter().position(|&v| v < 0.0 || !v.is_finite()) {
        return Err(RankError::NotStochastic {
            column: pos % n,
            sum: f64::NAN,
        });
    }

    let mut x = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=STATIONARY_MAX_ITER {
        let mut y = g.mul_vec(&x);
        let s: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= s);
        residual = l1_distance(&x, &y);
        x = y;
        if residual <= STATIONARY_TOL {
            return Ok(RankVector {
                probabilities: x,
                kind: VectorKind::PageRank,
                iterations: iteration,
                residual,
            });
        }
    }
    Err(RankError::NotConverged {
        iterations: STATIONARY_MAX_ITER,
        residual,
        last: Box::new(RankVector {
            probabilities: x,
            kind: VectorKind::PageRank,
            iterations: STATIONARY_MAX_ITER,
            residual,
        }),
    })
}
