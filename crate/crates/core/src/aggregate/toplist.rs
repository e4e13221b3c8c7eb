use std::collections::HashSet;

use super::AggregateError;
use crate::rank::Algorithm;
use crate::registry::LangCode;

/// Longest list the `101 − R` score is defined for.
pub const MAX_LIST_LEN: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopEntry {
    pub person_id: String,
    pub rank: u32,
}

/// The top persons of one edition under one algorithm, ranks `1..=len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopList {
    pub edition: LangCode,
    pub algorithm: Algorithm,
    pub entries: Vec<TopEntry>,
}

impl TopList {
    pub fn new(
        edition: LangCode,
        algorithm: Algorithm,
        entries: Vec<TopEntry>,
    ) -> Result<Self, AggregateError> {
        if entries.len() > MAX_LIST_LEN {
            return Err(AggregateError::TooLong(entries.len()));
        }
        let mut seen = HashSet::with_capacity(entries.len());
        for (position, e) in entries.iter().enumerate() {
            if e.rank as usize != position + 1 {
                return Err(AggregateError::BadRank {
                    position,
                    found: e.rank,
                });
            }
            if !seen.insert(e.person_id.as_str()) {
                return Err(AggregateError::DuplicateEntry(e.person_id.clone()));
            }
        }
        Ok(TopList {
            edition,
            algorithm,
            entries,
        })
    }

    /// Ranks are assigned from the order of `ids`.
    pub fn from_ranked_ids(
        edition: LangCode,
        algorithm: Algorithm,
        ids: Vec<String>,
    ) -> Result<Self, AggregateError> {
        let entries = ids
            .into_iter()
            .enumerate()
            .map(|(i, person_id)| TopEntry {
                person_id,
                rank: i as u32 + 1,
            })
            .collect();
        Self::new(edition, algorithm, entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_of(&self, person_id: &str) -> Option<u32> {
        self.entries
            .iter()
            .find(|e| e.person_id == person_id)
            .map(|e| e.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &str, rank: u32) -> TopEntry {
        TopEntry {
            person_id: id.into(),
            rank,
        }
    }

    #[test]
    fn validation() {
        let ok = TopList::new(LangCode::En, Algorithm::PageRank, vec![entry("a", 1), entry("b", 2)]);
        assert_eq!(ok.unwrap().rank_of("b"), Some(2));
        assert!(matches!(
            TopList::new(LangCode::En, Algorithm::PageRank, vec![entry("a", 2)]),
            Err(AggregateError::BadRank { position: 0, found: 2 })
        ));
        assert!(matches!(
            TopList::new(LangCode::En, Algorithm::PageRank, vec![entry("a", 1), entry("a", 2)]),
            Err(AggregateError::DuplicateEntry(_))
        ));
        let long: Vec<String> = (0..101).map(|i| i.to_string()).collect();
        assert!(matches!(
            TopList::from_ranked_ids(LangCode::En, Algorithm::PageRank, long),
            Err(AggregateError::TooLong(101))
        ));
    }
}
