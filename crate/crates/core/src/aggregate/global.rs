use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{check_lists, AggregateError, TopList};
use crate::rank::Algorithm;
use crate::registry::{Gender, LangCode, PersonRegistry};

/// Cross-edition score of one person: `theta = Σ_E (101 − R_E)` over the
/// editions where the person is listed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalEntry {
    pub person_id: String,
    pub theta: u32,
    /// Number of editions listing the person.
    pub n_appear: u32,
    /// Mean rank over those editions.
    pub mean_rank: f64,
}

#[derive(Default)]
struct Tally {
    theta: u32,
    n_appear: u32,
    rank_sum: u32,
}

impl Tally {
    fn add(&mut self, rank: u32) {
        self.theta += 101 - rank;
        self.n_appear += 1;
        self.rank_sum += rank;
    }

    fn entry(self, person_id: String) -> GlobalEntry {
        GlobalEntry {
            person_id,
            theta: self.theta,
            n_appear: self.n_appear,
            mean_rank: self.rank_sum as f64 / self.n_appear as f64,
        }
    }
}

pub fn theta_score(person_id: &str, lists: &[TopList]) -> Result<GlobalEntry, AggregateError> {
    let mut t = Tally::default();
    for l in lists {
        if let Some(r) = l.rank_of(person_id) {
            t.add(r);
        }
    }
    if t.n_appear == 0 {
        return Err(AggregateError::NotListed(person_id.to_string()));
    }
    Ok(t.entry(person_id.to_string()))
}

/// All persons of the `algorithm` lists by descending score. Ties go to more
/// appearances, then lower mean rank, then person id.
pub fn global_ranking(lists: &[TopList], algorithm: Algorithm) -> Vec<GlobalEntry> {
    let mut tallies: BTreeMap<&str, Tally> = BTreeMap::new();
    for l in lists.iter().filter(|l| l.algorithm == algorithm) {
        for e in &l.entries {
            tallies.entry(e.person_id.as_str()).or_default().add(e.rank);
        }
    }
    let mut out: Vec<GlobalEntry> = tallies
        .into_iter()
        .map(|(id, t)| t.entry(id.to_string()))
        .collect();
    out.sort_by(|a, b| {
        b.theta
            .cmp(&a.theta)
            .then(b.n_appear.cmp(&a.n_appear))
            .then(a.mean_rank.total_cmp(&b.mean_rank))
            .then_with(|| a.person_id.cmp(&b.person_id))
    });
    out
}

/// The female-only slice of a global ranking.
pub fn female_ranking(global: &[GlobalEntry], registry: &PersonRegistry) -> Vec<GlobalEntry> {
    global
        .iter()
        .filter(|e| registry.get(&e.person_id).is_some_and(|p| p.gender == Gender::Female))
        .cloned()
        .collect()
}

/// The best `k` entries of every culture, in global order.
pub fn culture_slices(
    global: &[GlobalEntry],
    registry: &PersonRegistry,
    k: usize,
) -> BTreeMap<LangCode, Vec<GlobalEntry>> {
    let mut out: BTreeMap<LangCode, Vec<GlobalEntry>> = BTreeMap::new();
    for e in global {
        if let Some(p) = registry.get(&e.person_id) {
            let slot = out.entry(p.culture).or_default();
            if slot.len() < k {
                slot.push(e.clone());
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub na_min: u32,
    pub k_max: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            na_min: 18,
            k_max: 50.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FigureClass {
    /// Listed widely and ranked high.
    Global,
    /// Listed in few editions but ranked high there.
    LocalHigh,
    LocalLow,
}

impl FigureClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FigureClass::Global => "global",
            FigureClass::LocalHigh => "local_high",
            FigureClass::LocalLow => "local_low",
        }
    }

    pub fn of(entry: &GlobalEntry, t: &Thresholds) -> FigureClass {
        let high = entry.mean_rank <= t.k_max;
        match (entry.n_appear >= t.na_min, high) {
            (true, true) => FigureClass::Global,
            (false, true) => FigureClass::LocalHigh,
            _ => FigureClass::LocalLow,
        }
    }
}

pub fn classify_figures(entries: &[GlobalEntry], thresholds: &Thresholds) -> Vec<FigureClass> {
    entries.iter().map(|e| FigureClass::of(e, thresholds)).collect()
}

/// Size of the intersection of two name sets.
pub fn overlap<'a, A, B>(a: A, b: B) -> usize
where
    A: IntoIterator<Item = &'a str>,
    B: IntoIterator<Item = &'a str>,
{
    let a: HashSet<&str> = a.into_iter().collect();
    let b: HashSet<&str> = b.into_iter().collect();
    a.intersection(&b).count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapReport {
    pub algorithm: String,
    pub reference_size: usize,
    pub global_top: usize,
    pub global_overlap: usize,
    pub per_edition: BTreeMap<String, usize>,
}

/// Overlap of a reference name list with the global top `top` and with
/// every edition's list.
pub fn overlap_report(
    reference: &[String],
    global: &[GlobalEntry],
    lists: &[TopList],
    algorithm: Algorithm,
    top: usize,
) -> OverlapReport {
    let refs = || reference.iter().map(String::as_str);
    let global_top: Vec<&str> = global.iter().take(top).map(|e| e.person_id.as_str()).collect();
    let per_edition = lists
        .iter()
        .filter(|l| l.algorithm == algorithm)
        .map(|l| {
            let names = l.entries.iter().map(|e| e.person_id.as_str());
            (l.edition.to_string(), overlap(refs(), names))
        })
        .collect();
    OverlapReport {
        algorithm: algorithm.to_string(),
        reference_size: refs().collect::<HashSet<_>>().len(),
        global_top: global_top.len(),
        global_overlap: overlap(refs(), global_top.iter().copied()),
        per_edition,
    }
}

/// Per-language counts for one algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Representation {
    /// Persons of this culture in the global top list.
    pub global: u32,
    /// Persons of this culture in the language's own edition list; `None`
    /// for `WR` and for editions without a list.
    pub own_edition: Option<u32>,
    /// Length of the own-edition list.
    pub edition_len: Option<u32>,
}

pub fn language_representation(
    global: &[GlobalEntry],
    lists: &[TopList],
    registry: &PersonRegistry,
    top: usize,
) -> Result<BTreeMap<LangCode, Representation>, AggregateError> {
    check_lists(lists)?;
    let culture = |id: &str| {
        registry
            .get(id)
            .map(|p| p.culture)
            .ok_or_else(|| AggregateError::UnknownPerson(id.to_string()))
    };
    let mut out: BTreeMap<LangCode, Representation> = LangCode::ALL
        .iter()
        .map(|&c| {
            (
                c,
                Representation {
                    global: 0,
                    own_edition: None,
                    edition_len: None,
                },
            )
        })
        .collect();
    for e in global.iter().take(top) {
        out.get_mut(&culture(&e.person_id)?).unwrap().global += 1;
    }
    for l in lists {
        let mut own = 0;
        for e in &l.entries {
            if culture(&e.person_id)? == l.edition {
                own += 1;
            }
        }
        let slot = out.get_mut(&l.edition).unwrap();
        slot.own_edition = Some(own);
        slot.edition_len = Some(l.len() as u32);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::TopEntry;
    use crate::registry::{CountryCultureMap, CountryCode};

    fn list(edition: LangCode, ids: &[&str]) -> TopList {
        TopList::from_ranked_ids(
            edition,
            Algorithm::PageRank,
            ids.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    /// A 100-entry list of fillers with some persons planted at given ranks.
    fn planted(edition: LangCode, plant: &[(&str, u32)]) -> TopList {
        let mut ids: Vec<String> = (1..=100).map(|k| format!("filler-{edition}-{k}")).collect();
        for &(id, r) in plant {
            ids[r as usize - 1] = id.to_string();
        }
        TopList::new(
            edition,
            Algorithm::PageRank,
            ids.into_iter()
                .enumerate()
                .map(|(i, person_id)| TopEntry {
                    person_id,
                    rank: i as u32 + 1,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn theta_extremes() {
        let top: Vec<TopList> = LangCode::editions().iter().map(|&e| list(e, &["p"])).collect();
        let e = theta_score("p", &top).unwrap();
        assert_eq!((e.theta, e.n_appear, e.mean_rank), (2400, 24, 1.0));

        let last = vec![planted(LangCode::En, &[("q", 100)])];
        let e = theta_score("q", &last).unwrap();
        assert_eq!((e.theta, e.n_appear, e.mean_rank), (1, 1, 100.0));

        assert!(matches!(theta_score("nobody", &last), Err(AggregateError::NotListed(_))));
    }

    #[test]
    fn close_scores_order() {
        // Rank sums 140 and 142 over 24 editions give 2284 and 2282.
        let lists: Vec<TopList> = LangCode::editions()
            .iter()
            .enumerate()
            .map(|(k, &e)| {
                let l = if k == 0 { 2 } else { 6 };
                let j = if k < 22 { 5 } else { 16 };
                planted(e, &[("Carl Linnaeus", l), ("Jesus", j)])
            })
            .collect();
        let g = global_ranking(&lists, Algorithm::PageRank);
        assert_eq!(g[0].person_id, "Carl Linnaeus");
        assert_eq!((g[0].theta, g[0].n_appear), (2284, 24));
        assert_eq!(g[1].person_id, "Jesus");
        assert_eq!((g[1].theta, g[1].n_appear), (2282, 24));
    }

    #[test]
    fn single_list_keeps_order() {
        let l = list(LangCode::Fr, &["c", "a", "b"]);
        let g = global_ranking(std::slice::from_ref(&l), Algorithm::PageRank);
        let ids: Vec<_> = g.iter().map(|e| e.person_id.as_str()).collect();
        assert_eq!(ids, ["c", "a", "b"]);
        assert!(global_ranking(&[l], Algorithm::TwoDRank).is_empty());
    }

    #[test]
    fn ties_prefer_more_appearances() {
        // x: rank 1 once (theta 100); y: rank 51 twice (theta 100).
        let a = planted(LangCode::En, &[("x", 1), ("y", 51)]);
        let b = planted(LangCode::De, &[("y", 51)]);
        let g = global_ranking(&[a, b], Algorithm::PageRank);
        let pos = |id: &str| g.iter().position(|e| e.person_id == id).unwrap();
        assert!(pos("y") < pos("x"));
    }

    #[test]
    fn classes() {
        let e = |n_appear, mean_rank| GlobalEntry {
            person_id: String::new(),
            theta: 0,
            n_appear,
            mean_rank,
        };
        let t = Thresholds::default();
        let c = classify_figures(&[e(24, 10.0), e(2, 5.0), e(1, 99.0), e(18, 50.0), e(20, 50.5)], &t);
        assert_eq!(
            c,
            [
                FigureClass::Global,
                FigureClass::LocalHigh,
                FigureClass::LocalLow,
                FigureClass::Global,
                FigureClass::LocalLow
            ]
        );
    }

    #[test]
    fn overlaps() {
        let a: Vec<String> = (0..100).map(|i| format!("n{i}")).collect();
        let b: Vec<String> = (100..200).map(|i| format!("n{i}")).collect();
        fn s(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        assert_eq!(overlap(s(&a), s(&a)), 100);
        assert_eq!(overlap(s(&a), s(&b)), 0);
        assert_eq!(overlap(s(&a), ["n5", "n6", "zz"]), 2);
        assert_eq!(overlap(["n5", "n6", "zz"], s(&a)), 2);
    }

    fn registry(persons: &[(&str, &str, Gender)]) -> PersonRegistry {
        let mut r = PersonRegistry::new(CountryCultureMap::default());
        for &(id, cc, g) in persons {
            r.insert(id, BTreeMap::new(), cc.parse::<CountryCode>().unwrap(), Some(1900), g)
                .unwrap();
        }
        r
    }

    #[test]
    fn representation_counts() {
        let reg = registry(&[
            ("a", "FR", Gender::Male),
            ("b", "FR", Gender::Female),
            ("c", "DE", Gender::Male),
            ("d", "UA", Gender::Male),
        ]);
        let lists = vec![list(LangCode::Fr, &["a", "b"]), list(LangCode::De, &["a", "d", "c"])];
        let g = global_ranking(&lists, Algorithm::PageRank);
        let rep = language_representation(&g, &lists, &reg, 100).unwrap();
        assert_eq!(rep[&LangCode::Fr].own_edition, Some(2));
        assert_eq!(rep[&LangCode::De].own_edition, Some(1));
        assert_eq!(rep[&LangCode::Wr].own_edition, None);
        assert_eq!(rep[&LangCode::En].own_edition, None);
        let total: u32 = rep.values().map(|r| r.global).sum();
        assert_eq!(total, 4);
        assert_eq!(rep[&LangCode::Fr].global, 2);
        assert_eq!(rep[&LangCode::Wr].global, 1);

        assert_eq!(female_ranking(&g, &reg).len(), 1);
        let slices = culture_slices(&g, &reg, 1);
        assert_eq!(slices[&LangCode::Fr].len(), 1);
        assert_eq!(slices[&LangCode::Fr][0].person_id, "a");
    }
}
