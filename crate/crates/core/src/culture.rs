//! The 25-node network of cultures and its rankings.
//!
//! Node order is [`LangCode::ALL`]: the 24 editions in catalog order, then
//! `WR`. An edge `A → B` of weight `w` means `w` figures of culture `B`
//! appear in edition `A`'s top list.

use std::collections::BTreeMap;

use crate::aggregate::{check_lists, AggregateError, TopList};
use crate::rank::{
    dense_stationary, rank_indices, two_d_rank, weighted_google_matrix, Algorithm, DenseMatrix,
    RankError, RankIndex, RankVector, VectorKind,
};
use crate::registry::{LangCode, PersonRegistry};

pub const CULTURES: usize = 25;

#[derive(Debug, thiserror::Error)]
pub enum CultureError {
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("{0} has no edition and cannot own a top list")]
    NotAnEdition(LangCode),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CultureNetwork {
    /// `weights[a][b]`, indexed by [`LangCode::index`].
    pub weights: [[u64; CULTURES]; CULTURES],
    /// Own-culture figures of each edition, kept out of `weights`.
    pub own_count: [u64; CULTURES],
    /// Entries of each edition's list that passed the filter.
    pub filtered_len: [u64; CULTURES],
    /// Only figures born strictly before this century were counted.
    pub before_century: Option<i32>,
    pub algorithm: Option<Algorithm>,
}

impl CultureNetwork {
    pub fn weight(&self, from: LangCode, to: LangCode) -> u64 {
        self.weights[from.index()][to.index()]
    }

    pub fn out_weight(&self, from: LangCode) -> u64 {
        self.weights[from.index()].iter().sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().flatten().sum()
    }

    /// Network with every link reversed.
    pub fn transposed(&self) -> CultureNetwork {
        let mut t = self.clone();
        for a in 0..CULTURES {
            for b in 0..CULTURES {
                t.weights[a][b] = self.weights[b][a];
            }
        }
        t
    }

    /// All weights multiplied by `k`.
    pub fn scaled(&self, k: u64) -> CultureNetwork {
        let mut s = self.clone();
        s.weights.iter_mut().flatten().for_each(|w| *w *= k);
        s
    }

    /// `W` as a dense matrix, `get(from, to)`.
    pub fn weight_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_rows(
            self.weights
                .iter()
                .map(|row| row.iter().map(|&w| w as f64).collect())
                .collect(),
        )
    }

    /// Non-zero links as `(from, to, weight)` in node order.
    pub fn links(&self) -> impl Iterator<Item = (LangCode, LangCode, u64)> + '_ {
        LangCode::ALL.iter().flat_map(move |&a| {
            LangCode::ALL
                .iter()
                .map(move |&b| (a, b, self.weight(a, b)))
                .filter(|l| l.2 > 0)
        })
    }
}

/// Tallies cross-cultural appearances over one top list per edition in
/// `editions`. With `before_century = Some(x)` only figures with a known
/// birth century `< x` are counted.
pub fn build_culture_network(
    lists: &[TopList],
    editions: &[LangCode],
    registry: &PersonRegistry,
    before_century: Option<i32>,
) -> Result<CultureNetwork, CultureError> {
    let algorithm = check_lists(lists)?;
    let by_edition: BTreeMap<LangCode, &TopList> = lists.iter().map(|l| (l.edition, l)).collect();
    for &e in editions {
        if !e.is_edition() {
            return Err(CultureError::NotAnEdition(e));
        }
        if !by_edition.contains_key(&e) {
            return Err(AggregateError::MissingEdition(e).into());
        }
    }
    let mut net = CultureNetwork {
        weights: [[0; CULTURES]; CULTURES],
        own_count: [0; CULTURES],
        filtered_len: [0; CULTURES],
        before_century,
        algorithm,
    };
    for l in lists {
        if !l.edition.is_edition() {
            return Err(CultureError::NotAnEdition(l.edition));
        }
        let a = l.edition.index();
        for e in &l.entries {
            let p = registry
                .get(&e.person_id)
                .ok_or_else(|| AggregateError::UnknownPerson(e.person_id.clone()))?;
            if let Some(x) = before_century {
                match p.century() {
                    Some(c) if c < x => {}
                    _ => continue,
                }
            }
            net.filtered_len[a] += 1;
            let b = p.culture.index();
            if a == b {
                net.own_count[a] += 1;
            } else {
                net.weights[a][b] += 1;
            }
        }
    }
    Ok(net)
}

/// Weighted Google matrix of the network: column `A` is row `A` of `W`
/// divided by its sum (uniform when zero), damped by `alpha`.
pub fn culture_google_matrix(net: &CultureNetwork, alpha: f64) -> Result<DenseMatrix, RankError> {
    weighted_google_matrix(&net.weight_matrix(), alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CultureRank {
    pub culture: LangCode,
    pub k: u32,
    pub kstar: u32,
    pub kprime: u32,
    pub pagerank: f64,
    pub cheirank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CultureRanks {
    pub pagerank: RankVector,
    pub cheirank: RankVector,
    pub k: RankIndex,
    pub kstar: RankIndex,
    /// Cultures by ascending `K'`.
    pub two_d: RankIndex,
    pub kprime: Vec<u32>,
}

impl CultureRanks {
    /// One row per culture in node order.
    pub fn rows(&self) -> Vec<CultureRank> {
        LangCode::ALL
            .iter()
            .enumerate()
            .map(|(i, &culture)| CultureRank {
                culture,
                k: self.k.position[i],
                kstar: self.kstar.position[i],
                kprime: self.kprime[i],
                pagerank: self.pagerank.probabilities[i],
                cheirank: self.cheirank.probabilities[i],
            })
            .collect()
    }

    pub fn get(&self, culture: LangCode) -> CultureRank {
        self.rows().swap_remove(culture.index())
    }
}

/// PageRank and CheiRank of the culture network, solved densely.
pub fn culture_ranks(net: &CultureNetwork, alpha: f64) -> Result<CultureRanks, RankError> {
    let mut pagerank = dense_stationary(&culture_google_matrix(net, alpha)?)?;
    let mut cheirank = dense_stationary(&culture_google_matrix(&net.transposed(), alpha)?)?;
    pagerank.kind = VectorKind::PageRank;
    cheirank.kind = VectorKind::CheiRank;
    let k = rank_indices(&pagerank);
    let kstar = rank_indices(&cheirank);
    let td = two_d_rank(&k, &kstar)?;
    Ok(CultureRanks {
        two_d: td.index(),
        kprime: td.kprime,
        pagerank,
        cheirank,
        k,
        kstar,
    })
}

/// `G` with rows and columns reordered so that entry `(r, c)` is
/// `G[ordering[r]][ordering[c]]`.
pub fn export_matrix_by_rank(g: &DenseMatrix, ordering: &[usize]) -> DenseMatrix {
    g.permuted(ordering)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{CountryCultureMap, Gender};

    fn registry() -> PersonRegistry {
        let mut r = PersonRegistry::new(CountryCultureMap::default());
        for i in 0..100 {
            let (cc, year) = match i % 4 {
                0 => ("FR", 1850),
                1 => ("US", 1700),
                2 => ("DE", -200),
                _ => ("AQ", 1200),
            };
            r.insert(&format!("p{i}"), BTreeMap::new(), cc.parse().unwrap(), Some(year), Gender::Male)
                .unwrap();
        }
        r
    }

    fn list(edition: LangCode, ids: impl IntoIterator<Item = usize>) -> TopList {
        let ids = ids.into_iter().map(|i| format!("p{i}")).collect();
        TopList::from_ranked_ids(edition, Algorithm::PageRank, ids).unwrap()
    }

    #[test]
    fn five_french_in_english() {
        let r = registry();
        let en = list(LangCode::En, (0..20).step_by(4).chain([1, 5]));
        let net = build_culture_network(&[en], &[LangCode::En], &r, None).unwrap();
        assert_eq!(net.weight(LangCode::En, LangCode::Fr), 5);
        assert_eq!(net.own_count[LangCode::En.index()], 2);
        assert_eq!(net.filtered_len[LangCode::En.index()], 7);
    }

    #[test]
    fn own_culture_only() {
        let r = registry();
        let de = list(LangCode::De, (2..100).step_by(4));
        let net = build_culture_network(&[de], &[LangCode::De], &r, None).unwrap();
        assert_eq!(net.total_weight(), 0);
        let g = culture_google_matrix(&net, 0.85).unwrap();
        for i in 0..CULTURES {
            for j in 0..CULTURES {
                assert!((g.get(i, j) - 1.0 / 25.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn century_filter() {
        let r = registry();
        let fr = list(LangCode::Es, 0..8);
        let net = build_culture_network(&[fr], &[], &r, Some(19)).unwrap();
        let es = LangCode::Es.index();
        assert_eq!(net.filtered_len[es], 6);
        assert_eq!(net.weight(LangCode::Es, LangCode::Fr), 0);
        assert_eq!(net.weight(LangCode::Es, LangCode::Wr), 2);
    }

    #[test]
    fn missing_edition_and_unknown_person() {
        let r = registry();
        let en = list(LangCode::En, 0..3);
        assert!(matches!(
            build_culture_network(&[en], &[LangCode::En, LangCode::Ja], &r, None),
            Err(CultureError::Aggregate(AggregateError::MissingEdition(LangCode::Ja)))
        ));
        let ghost = TopList::from_ranked_ids(LangCode::En, Algorithm::PageRank, vec!["x".into()]).unwrap();
        assert!(build_culture_network(&[ghost], &[], &r, None).is_err());
    }

    #[test]
    fn toy_column() {
        let mut net = build_culture_network(&[], &[], &registry(), None).unwrap();
        net.weights[0][1] = 2;
        net.weights[0][2] = 1;
        let g = culture_google_matrix(&net, 0.85).unwrap();
        let t = 0.15 / 25.0;
        assert!((g.get(1, 0) - (0.85 * 2.0 / 3.0 + t)).abs() < 1e-15);
        assert!((g.get(2, 0) - (0.85 / 3.0 + t)).abs() < 1e-15);
        assert!((g.get(0, 0) - t).abs() < 1e-15);
        for s in g.column_sums() {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_network_ties_by_node_order() {
        let net = build_culture_network(&[], &[], &registry(), None).unwrap();
        let ranks = culture_ranks(&net, 0.85).unwrap();
        assert_eq!(ranks.k.ordering, (0..25).collect::<Vec<u32>>());
        assert_eq!(ranks.get(LangCode::Wr).k, 25);
    }

    #[test]
    fn scaling_keeps_orderings() {
        let r = registry();
        let lists = [list(LangCode::En, 0..40), list(LangCode::Fr, 10..70), list(LangCode::Ru, 33..50)];
        let net = build_culture_network(&lists, &[], &r, None).unwrap();
        let a = culture_ranks(&net, 0.85).unwrap();
        let b = culture_ranks(&net.scaled(7), 0.85).unwrap();
        assert_eq!(a.k, b.k);
        assert_eq!(a.kstar, b.kstar);
    }

    #[test]
    fn permutation_round_trip() {
        let mut net = build_culture_network(&[], &[], &registry(), None).unwrap();
        net.weights[3][7] = 4;
        net.weights[7][1] = 1;
        let g = culture_google_matrix(&net, 0.85).unwrap();
        let id: Vec<usize> = (0..25).collect();
        assert_eq!(export_matrix_by_rank(&g, &id), g);
        let perm: Vec<usize> = (0..25).map(|i| (i * 7) % 25).collect();
        let mut inv = vec![0; 25];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let p = export_matrix_by_rank(&g, &perm);
        for s in p.column_sums() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert_eq!(export_matrix_by_rank(&p, &inv), g);
    }
}
