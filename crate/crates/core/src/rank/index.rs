use super::{RankError, RankVector};
use crate::graph::NodeId;

/// A node ordering and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankIndex {
    /// `ordering[k]` is the node at rank `k + 1`.
    pub ordering: Vec<NodeId>,
    /// `position[i]` is the 1-based rank `K(i)` of node `i`.
    pub position: Vec<u32>,
}

impl RankIndex {
    /// Builds the index from an ordering, which must be a permutation.
    pub fn from_ordering(ordering: Vec<NodeId>) -> Self {
        let mut position = vec![0u32; ordering.len()];
        for (k, &node) in ordering.iter().enumerate() {
            position[node as usize] = k as u32 + 1;
        }
        RankIndex { ordering, position }
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }
}

/// Orders nodes by decreasing probability. Equal probabilities keep
/// ascending node id.
pub fn rank_indices(v: &RankVector) -> RankIndex {
    let p = &v.probabilities;
    let mut ordering: Vec<NodeId> = (0..p.len() as NodeId).collect();
    ordering.sort_by(|&a, &b| {
        p[b as usize]
            .total_cmp(&p[a as usize])
            .then_with(|| a.cmp(&b))
    });
    RankIndex::from_ordering(ordering)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDRankResult {
    /// `K'_i = max(K_i, K*_i)`.
    pub kprime: Vec<u32>,
    /// Nodes by ascending `K'`; ties by `K*`, then `K`, then node id.
    pub ordering: Vec<NodeId>,
}

impl TwoDRankResult {
    pub fn index(&self) -> RankIndex {
        RankIndex::from_ordering(self.ordering.clone())
    }
}

pub fn two_d_rank(pagerank: &RankIndex, cheirank: &RankIndex) -> Result<TwoDRankResult, RankError> {
    if pagerank.len() != cheirank.len() {
        return Err(RankError::MismatchedNodes {
            left: pagerank.len(),
            right: cheirank.len(),
        });
    }
    let k = &pagerank.position;
    let ks = &cheirank.position;
    let kprime: Vec<u32> = k.iter().zip(ks).map(|(&a, &b)| a.max(b)).collect();
    let mut ordering: Vec<NodeId> = (0..k.len() as NodeId).collect();
    ordering.sort_by_key(|&i| {
        let i = i as usize;
        (kprime[i], ks[i], k[i], i)
    });
    Ok(TwoDRankResult { kprime, ordering })
}
