//! Bounded search for crossing changes that make a diagram split (or an
//! unlink), giving upper bounds to set against the obstruction lower bounds.
//!
//! Crossing changes commute, so depth `k` means trying every `k`-subset of
//! eligible crossings in lexicographic order. Subsets are pruned by linking
//! numbers: a split link has all pairwise linking numbers zero, and changing a
//! crossing of sign `s` between components `i` and `j` shifts `lk(i, j)` by `-s`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{LinkDiagram, Quantity};
use crate::exec::Exec;
use crate::factor::univariate::combinations;
use crate::obstructions::ObstructionReport;

pub const MAX_SEARCH_DEPTH: usize = 4;
pub const MAX_SEARCH_CROSSINGS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Any crossing may change.
    AnyCrossing,
    /// Only crossings between distinct components may change.
    InterComponentOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Goal {
    /// Every component in its own part of the diagrammatic split.
    TotallySplit,
    /// Totally split with every component descending.
    Unlink,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search depth {depth} exceeds the limit of {limit}")]
    DepthTooLarge { depth: usize, limit: usize },
    #[error("diagram has {crossings} crossings, above the search budget of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("{quantity}: upper bound {upper} is below lower bound {lower}")]
    Inconsistent { quantity: Quantity, lower: u32, upper: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub found: bool,
    pub mode: Mode,
    pub goal: Goal,
    /// Crossings changed, ascending. Empty when nothing was found.
    pub sequence: Vec<usize>,
    /// Diagrammatic split of the final diagram (of the input when nothing was found).
    pub result_partition: Vec<Vec<usize>>,
    /// Depth of the sequence when found, else the largest depth searched.
    pub depth: usize,
}

impl SearchResult {
    /// Replays the sequence and checks the partition and goal it claims.
    pub fn replay_matches(&self, d: &LinkDiagram) -> bool {
        let Ok(end) = d.change_crossings(&self.sequence) else { return false };
        !self.found || (end.split_diagrammatically() == self.result_partition && reached(&end, self.goal))
    }
}

fn reached(d: &LinkDiagram, goal: Goal) -> bool {
    match goal {
        Goal::TotallySplit => d.is_totally_split(),
        Goal::Unlink => d.is_unlink_diagram(),
    }
}

struct Pruner {
    /// `(i, j, sign)` for inter-component crossings, `None` for self-crossings.
    pair_of: Vec<Option<(usize, usize, i64)>>,
    linking: BTreeMap<(usize, usize), i64>,
}

impl Pruner {
    fn new(d: &LinkDiagram) -> Pruner {
        let pair_of: Vec<_> = (0..d.crossing_count())
            .map(|c| {
                let (u, o) = d.crossing_components(c);
                (u != o).then(|| (u.min(o), u.max(o), d.sign(c) as i64))
            })
            .collect();
        let mut linking = BTreeMap::new();
        for (i, j, s) in pair_of.iter().flatten() {
            *linking.entry((*i, *j)).or_insert(0) += s;
        }
        for v in linking.values_mut() {
            *v /= 2;
        }
        Pruner { pair_of, linking }
    }

    /// Whether changing `set` leaves every linking number at zero.
    fn admits(&self, set: &[usize]) -> bool {
        let mut shift: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &c in set {
            if let Some((i, j, s)) = self.pair_of[c] {
                *shift.entry((i, j)).or_insert(0) += s;
            }
        }
        self.linking.iter().all(|(k, &lk)| shift.get(k).copied().unwrap_or(0) == lk)
    }
}

/// Shallowest crossing set, lexicographically smallest at that depth, whose
/// change reaches `goal`.
pub fn bounded_search(
    d: &LinkDiagram,
    max_depth: usize,
    mode: Mode,
    goal: Goal,
    exec: Exec,
) -> Result<SearchResult, SearchError> {
    if max_depth > MAX_SEARCH_DEPTH {
        return Err(SearchError::DepthTooLarge { depth: max_depth, limit: MAX_SEARCH_DEPTH });
    }
    if d.crossing_count() > MAX_SEARCH_CROSSINGS {
        return Err(SearchError::TooManyCrossings { crossings: d.crossing_count(), limit: MAX_SEARCH_CROSSINGS });
    }
    let eligible: Vec<usize> =
        (0..d.crossing_count()).filter(|&c| mode == Mode::AnyCrossing || d.is_inter_component(c)).collect();
    let pruner = Pruner::new(d);
    for depth in 0..=max_depth.min(eligible.len()) {
        let candidates: Vec<Vec<usize>> = combinations(eligible.len(), depth)
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| eligible[i]).collect::<Vec<usize>>())
            .filter(|set| pruner.admits(set))
            .collect();
        let hits = exec.map(candidates, |set| {
            let end = d.change_crossings(&set).expect("eligible crossings exist");
            reached(&end, goal).then(|| (set, end.split_diagrammatically()))
        });
        if let Some((sequence, result_partition)) = hits.into_iter().flatten().next() {
            return Ok(SearchResult { found: true, mode, goal, sequence, result_partition, depth });
        }
    }
    Ok(SearchResult {
        found: false,
        mode,
        goal,
        sequence: Vec::new(),
        result_partition: d.split_diagrammatically(),
        depth: max_depth,
    })
}

/// Shallowest diagrammatic total split within `max_depth` crossing changes.
pub fn bounded_split_search(d: &LinkDiagram, max_depth: usize, mode: Mode) -> Result<SearchResult, SearchError> {
    bounded_search(d, max_depth, mode, Goal::TotallySplit, Exec::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: u32,
    pub upper: Option<u32>,
    pub status: Status,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) => write!(f, "[{}, {}]", self.lower, u),
            None => write!(f, "[{}, ?]", self.lower),
        }
    }
}

/// Which quantities a successful search bounds from above.
fn bounded_quantities(r: &SearchResult) -> &'static [Quantity] {
    match (r.goal, r.mode) {
        (Goal::TotallySplit, Mode::InterComponentOnly) => &[Quantity::Splitting, Quantity::WeakSplitting],
        (Goal::TotallySplit, Mode::AnyCrossing) => &[Quantity::WeakSplitting],
        (Goal::Unlink, Mode::InterComponentOnly) => {
            &[Quantity::Unlinking, Quantity::Splitting, Quantity::WeakSplitting]
        }
        (Goal::Unlink, Mode::AnyCrossing) => &[Quantity::Unlinking, Quantity::WeakSplitting],
    }
}

/// Sandwiches each quantity between its obstruction lower bound and the
/// smallest depth among successful searches that bound it.
pub fn certify_gap(
    d: &LinkDiagram,
    report: &ObstructionReport,
    searches: &[SearchResult],
) -> Result<BTreeMap<Quantity, Interval>, SearchError> {
    debug_assert_eq!(d.component_count(), report.m, "report and diagram describe the same link");
    let mut out = BTreeMap::new();
    for q in Quantity::ALL {
        let lower = report.bound(q).lower;
        let upper =
            searches.iter().filter(|r| r.found && bounded_quantities(r).contains(&q)).map(|r| r.depth as u32).min();
        if let Some(upper) = upper {
            if upper < lower {
                return Err(SearchError::Inconsistent { quantity: q, lower, upper });
            }
        }
        let status = if upper == Some(lower) { Status::Exact } else { Status::Inconclusive };
        out.insert(q, Interval { lower, upper, status });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn hopf() -> LinkDiagram {
        parse_pd("X[4,1,3,2],X[2,3,1,4]").unwrap()
    }

    #[test]
    fn hopf_splits_after_one_change() {
        let r = bounded_split_search(&hopf(), 1, Mode::InterComponentOnly).unwrap();
        assert!(r.found);
        assert_eq!((r.depth, r.sequence.clone()), (1, vec![0]));
        assert_eq!(r.result_partition, vec![vec![0], vec![1]]);
        assert!(r.replay_matches(&hopf()));
        let r0 = bounded_split_search(&hopf(), 0, Mode::InterComponentOnly).unwrap();
        assert!(!r0.found);
    }

    #[test]
    fn unlink_found_at_depth_zero() {
        let r = bounded_search(&LinkDiagram::unlink(3), 0, Mode::AnyCrossing, Goal::Unlink, Exec::Sequential).unwrap();
        assert!(r.found && r.depth == 0 && r.sequence.is_empty());
    }

    #[test]
    fn trefoil_needs_one_change_to_unknot() {
        let t = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap();
        let split = bounded_search(&t, 2, Mode::AnyCrossing, Goal::TotallySplit, Exec::Sequential).unwrap();
        assert_eq!(split.depth, 0);
        let unknot = bounded_search(&t, 2, Mode::AnyCrossing, Goal::Unlink, Exec::Sequential).unwrap();
        assert_eq!((unknot.found, unknot.depth), (true, 1));
    }

    #[test]
    fn limits() {
        assert!(matches!(
            bounded_split_search(&hopf(), 5, Mode::AnyCrossing),
            Err(SearchError::DepthTooLarge { depth: 5, limit: 4 })
        ));
    }

    #[test]
    fn gap_for_hopf() {
        let d = hopf();
        let report = ObstructionReport::compute("hopf", &d, Exec::Sequential);
        let r = bounded_split_search(&d, 1, Mode::InterComponentOnly).unwrap();
        let gap = certify_gap(&d, &report, &[r]).unwrap();
        assert_eq!(gap[&Quantity::Splitting], Interval { lower: 1, upper: Some(1), status: Status::Exact });
        assert_eq!(gap[&Quantity::Unlinking].upper, None);
        assert_eq!(gap[&Quantity::Unlinking].status, Status::Inconclusive);
    }

    #[test]
    fn gap_rejects_impossible_upper() {
        let d = hopf();
        let report = ObstructionReport::compute("hopf", &d, Exec::Sequential);
        let fake = SearchResult {
            found: true,
            mode: Mode::InterComponentOnly,
            goal: Goal::TotallySplit,
            sequence: Vec::new(),
            result_partition: vec![vec![0, 1]],
            depth: 0,
        };
        assert!(matches!(certify_gap(&d, &report, &[fake]), Err(SearchError::Inconsistent { .. })));
    }
}
