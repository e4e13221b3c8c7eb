//! Cross-edition aggregation of top-person lists.

mod distribution;
mod global;
mod toplist;

pub use distribution::{
    gender_distribution, locality_ratio, spatial_distribution, temporal_distribution, Axis,
    CenturyGender, DistributionTable, FacetDistribution, GenderCounts, GenderDistribution, Key,
    LocalityCell, LocalityTable, Normalization,
};
pub use global::{
    classify_figures, culture_slices, female_ranking, global_ranking, language_representation,
    overlap, overlap_report, theta_score, FigureClass, GlobalEntry, OverlapReport, Representation,
    Thresholds,
};
pub use toplist::{TopEntry, TopList, MAX_LIST_LEN};

use thiserror::Error;

use crate::rank::Algorithm;
use crate::registry::LangCode;

#[derive(Debug, Error)]
pub enum AggregateError {
    #[error("top list has {0} entries, at most {MAX_LIST_LEN} allowed")]
    TooLong(usize),
    #[error("rank {found} at position {position}, expected {}", position + 1)]
    BadRank { position: usize, found: u32 },
    #[error("{0:?} listed twice")]
    DuplicateEntry(String),
    #[error("{0:?} appears in no top list")]
    NotListed(String),
    #[error("{0:?} is not in the person registry")]
    UnknownPerson(String),
    #[error("top lists mix {0} and {1}")]
    MixedAlgorithms(Algorithm, Algorithm),
    #[error("no top list for edition {0}")]
    MissingEdition(LangCode),
    #[error("two top lists for edition {0}")]
    DuplicateEdition(LangCode),
}

/// Returns the common algorithm of a set of lists and rejects duplicate
/// editions.
pub(crate) fn check_lists(lists: &[TopList]) -> Result<Option<Algorithm>, AggregateError> {
    let mut seen = std::collections::HashSet::new();
    let mut algorithm = None;
    for l in lists {
        if !seen.insert(l.edition) {
            return Err(AggregateError::DuplicateEdition(l.edition));
        }
        match algorithm {
            None => algorithm = Some(l.algorithm),
            Some(a) if a != l.algorithm => return Err(AggregateError::MixedAlgorithms(a, l.algorithm)),
            _ => {}
        }
    }
    Ok(algorithm)
}
