//! Birth-place, birth-century and gender tables over a set of top lists.
//!
//! Tables have one row per edition and one column per facet value
//! (country, century, gender). "Column-normalized" divides every column by
//! its total across editions, so each facet value sums to 1 over editions.
//! Normalized and averaged forms are always new tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{check_lists, AggregateError, TopList};
use crate::registry::{CountryCode, Gender, LangCode, Person, PersonRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Edition,
    Country,
    Century,
    Gender,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Raw,
    ColumnNormalized,
    EditionAveraged,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::ColumnNormalized => "column-normalized",
            Normalization::EditionAveraged => "edition-averaged",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Key {
    Edition(LangCode),
    Country(CountryCode),
    Century(i32),
    Gender(Gender),
    /// Row key of an edition-averaged table.
    Average,
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Edition(e) => write!(f, "{e}"),
            Key::Country(c) => write!(f, "{c}"),
            Key::Century(c) => write!(f, "{c}"),
            Key::Gender(g) => write!(f, "{g}"),
            Key::Average => f.write_str("AVG"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    pub row_axis: Axis,
    pub col_axis: Axis,
    pub normalization: Normalization,
    pub cells: BTreeMap<(Key, Key), f64>,
}

impl DistributionTable {
    fn new(col_axis: Axis) -> Self {
        DistributionTable {
            row_axis: Axis::Edition,
            col_axis,
            normalization: Normalization::Raw,
            cells: BTreeMap::new(),
        }
    }

    fn bump(&mut self, row: Key, col: Key) {
        *self.cells.entry((row, col)).or_insert(0.0) += 1.0;
    }

    pub fn get(&self, row: Key, col: Key) -> f64 {
        self.cells.get(&(row, col)).copied().unwrap_or(0.0)
    }

    pub fn rows(&self) -> BTreeSet<Key> {
        self.cells.keys().map(|&(r, _)| r).collect()
    }

    pub fn columns(&self) -> BTreeSet<Key> {
        self.cells.keys().map(|&(_, c)| c).collect()
    }

    pub fn row_total(&self, row: Key) -> f64 {
        self.cells
            .iter()
            .filter(|((r, _), _)| *r == row)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn column_totals(&self) -> BTreeMap<Key, f64> {
        let mut totals = BTreeMap::new();
        for (&(_, c), v) in &self.cells {
            *totals.entry(c).or_insert(0.0) += v;
        }
        totals
    }

    /// Every column divided by its total; all-zero columns are left out.
    pub fn column_normalized(&self) -> DistributionTable {
        let totals = self.column_totals();
        let cells = self
            .cells
            .iter()
            .filter(|((_, c), _)| totals[c] > 0.0)
            .map(|(&k, &v)| (k, v / totals[&k.1]))
            .collect();
        DistributionTable {
            normalization: Normalization::ColumnNormalized,
            cells,
            ..*self
        }
    }

    /// Column totals divided by `editions`, as a single [`Key::Average`] row.
    pub fn edition_averaged(&self, editions: usize) -> DistributionTable {
        let cells = self
            .column_totals()
            .into_iter()
            .map(|(c, t)| ((Key::Average, c), t / editions as f64))
            .collect();
        DistributionTable {
            normalization: Normalization::EditionAveraged,
            cells,
            ..*self
        }
    }
}

/// Raw, edition-averaged and column-normalized forms of one facet.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetDistribution {
    pub raw: DistributionTable,
    pub averaged: DistributionTable,
    pub normalized: DistributionTable,
    /// Listed persons left out for lack of data (unknown birth year).
    pub excluded: usize,
}

impl FacetDistribution {
    fn from_raw(raw: DistributionTable, editions: usize, excluded: usize) -> Self {
        FacetDistribution {
            averaged: raw.edition_averaged(editions.max(1)),
            normalized: raw.column_normalized(),
            raw,
            excluded,
        }
    }

    pub fn tables(&self) -> [&DistributionTable; 3] {
        [&self.raw, &self.averaged, &self.normalized]
    }
}

pub(crate) fn person<'r>(registry: &'r PersonRegistry, id: &str) -> Result<&'r Person, AggregateError> {
    registry
        .get(id)
        .ok_or_else(|| AggregateError::UnknownPerson(id.to_string()))
}

fn facet<F>(
    lists: &[TopList],
    registry: &PersonRegistry,
    col_axis: Axis,
    key: F,
) -> Result<FacetDistribution, AggregateError>
where
    F: Fn(&Person) -> Option<Key>,
{
    check_lists(lists)?;
    let mut raw = DistributionTable::new(col_axis);
    let mut excluded = 0;
    for l in lists {
        for e in &l.entries {
            match key(person(registry, &e.person_id)?) {
                Some(k) => raw.bump(Key::Edition(l.edition), k),
                None => excluded += 1,
            }
        }
    }
    Ok(FacetDistribution::from_raw(raw, lists.len(), excluded))
}

/// Birth-country counts per edition.
pub fn spatial_distribution(
    lists: &[TopList],
    registry: &PersonRegistry,
) -> Result<FacetDistribution, AggregateError> {
    facet(lists, registry, Axis::Country, |p| Some(Key::Country(p.birth_country)))
}

/// Birth-century counts per edition; persons without a birth year are
/// counted in `excluded`.
pub fn temporal_distribution(
    lists: &[TopList],
    registry: &PersonRegistry,
) -> Result<FacetDistribution, AggregateError> {
    facet(lists, registry, Axis::Century, |p| p.century().map(Key::Century))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalityCell {
    /// Figures of this century born in the edition's own culture.
    pub m: u32,
    /// All figures of this century in the edition's list.
    pub n: u32,
    /// `m / n`, or `None` when `n = 0`.
    pub ratio: Option<f64>,
}

/// `(edition, century)` cells for every listed edition and every century
/// that occurs in any of the lists.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalityTable {
    pub cells: BTreeMap<(LangCode, i32), LocalityCell>,
}

pub fn locality_ratio(
    lists: &[TopList],
    registry: &PersonRegistry,
) -> Result<LocalityTable, AggregateError> {
    check_lists(lists)?;
    let mut counts: BTreeMap<(LangCode, i32), (u32, u32)> = BTreeMap::new();
    let mut centuries = BTreeSet::new();
    for l in lists {
        for e in &l.entries {
            let p = person(registry, &e.person_id)?;
            if let Some(c) = p.century() {
                centuries.insert(c);
                let slot = counts.entry((l.edition, c)).or_default();
                slot.1 += 1;
                if p.culture == l.edition {
                    slot.0 += 1;
                }
            }
        }
    }
    let mut cells = BTreeMap::new();
    for l in lists {
        for &c in &centuries {
            let (m, n) = counts.get(&(l.edition, c)).copied().unwrap_or((0, 0));
            let ratio = (n > 0).then(|| m as f64 / n as f64);
            cells.insert((l.edition, c), LocalityCell { m, n, ratio });
        }
    }
    Ok(LocalityTable { cells })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GenderCounts {
    pub female: u32,
    pub male: u32,
    pub unknown: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenturyGender {
    pub female: u32,
    pub male: u32,
    /// `female / (female + male)`, `None` when both are zero.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenderDistribution {
    pub per_edition: BTreeMap<LangCode, GenderCounts>,
    /// Mean number of women per list.
    pub mean_female: f64,
    /// Counts pooled over all editions, per birth century.
    pub by_century: BTreeMap<i32, CenturyGender>,
    /// Edition × gender counts.
    pub table: DistributionTable,
}

pub fn gender_distribution(
    lists: &[TopList],
    registry: &PersonRegistry,
) -> Result<GenderDistribution, AggregateError> {
    check_lists(lists)?;
    let mut per_edition: BTreeMap<LangCode, GenderCounts> = BTreeMap::new();
    let mut pooled: BTreeMap<i32, (u32, u32)> = BTreeMap::new();
    let mut table = DistributionTable::new(Axis::Gender);
    for l in lists {
        let counts = per_edition.entry(l.edition).or_default();
        for e in &l.entries {
            let p = person(registry, &e.person_id)?;
            table.bump(Key::Edition(l.edition), Key::Gender(p.gender));
            match p.gender {
                Gender::Female => counts.female += 1,
                Gender::Male => counts.male += 1,
                Gender::Unknown => counts.unknown += 1,
            }
            if let (Some(c), true) = (p.century(), p.gender != Gender::Unknown) {
                let slot = pooled.entry(c).or_default();
                if p.gender == Gender::Female {
                    slot.0 += 1;
                } else {
                    slot.1 += 1;
                }
            }
        }
    }
    let mean_female = if lists.is_empty() {
        0.0
    } else {
        per_edition.values().map(|c| c.female as f64).sum::<f64>() / lists.len() as f64
    };
    let by_century = pooled
        .into_iter()
        .map(|(c, (female, male))| {
            let ratio = (female + male > 0).then(|| female as f64 / (female + male) as f64);
            (c, CenturyGender { female, male, ratio })
        })
        .collect();
    Ok(GenderDistribution {
        per_edition,
        mean_female,
        by_century,
        table,
    })
}
