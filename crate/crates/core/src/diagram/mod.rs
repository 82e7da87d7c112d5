//! Oriented link diagrams in planar-diagram (PD) notation.
//!
//! A crossing `X[i,j,k,l]` lists its four edge labels counterclockwise,
//! starting with the incoming under-strand; the under-strand runs `i -> k`.
//! The over-strand runs either `l -> j` (positive crossing) or `j -> l`
//! (negative crossing). Components are ordered by their smallest label, and
//! components without crossings ("free loops") are carried explicitly.

mod fixture;
mod wirtinger;

pub use fixture::{parse_fixture, parse_pd, External, Fixture, Quantity};
pub use wirtinger::{FoxJacobian, Relation, WirtingerPresentation};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing '{0}:' header")]
    MissingHeader(&'static str),
    #[error("edge label {label} occurs {count} times (expected exactly 2)")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("inconsistent strand orientation at edge {label}")]
    Orientation { label: u32 },
    #[error("header declares {declared} components but the diagram has {found}")]
    ComponentCount { declared: usize, found: usize },
    #[error("component {index} out of range (diagram has {count})")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("crossing {index} out of range (diagram has {count})")]
    CrossingOutOfRange { index: usize, count: usize },
    #[error("a component cannot be paired with itself here")]
    SameComponent,
    #[error("the set of components to keep is empty")]
    EmptyKeep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    In,
    Out,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }
}

/// Direction of the strand at each slot of a crossing with the given sign.
fn slot_dirs(sign: i8) -> [Dir; 4] {
    if sign > 0 {
        [Dir::In, Dir::Out, Dir::Out, Dir::In]
    } else {
        [Dir::In, Dir::In, Dir::Out, Dir::Out]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    signs: Vec<i8>,
    /// Edge labels of each component in orientation order; empty for a free loop.
    components: Vec<Vec<u32>>,
}

/// Positions of the two occurrences of every label, as `4 * crossing + slot`.
fn label_slots(crossings: &[[u32; 4]]) -> Result<BTreeMap<u32, Vec<usize>>, DiagramError> {
    let mut slots: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (p, &label) in x.iter().enumerate() {
            slots.entry(label).or_default().push(4 * c + p);
        }
    }
    if let Some((&label, v)) = slots.iter().find(|(_, v)| v.len() != 2) {
        return Err(DiagramError::LabelMultiplicity { label, count: v.len() });
    }
    Ok(slots)
}

impl LinkDiagram {
    /// Builds a diagram whose orientation is fixed by the crossing signs.
    /// `free_loop_positions` are the final component indices of crossingless components.
    pub fn from_oriented(
        crossings: Vec<[u32; 4]>,
        signs: Vec<i8>,
        free_loop_positions: &[usize],
    ) -> Result<Self, DiagramError> {
        let slots = label_slots(&crossings)?;
        let dir = |s: usize| slot_dirs(signs[s / 4])[s % 4];
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        for (&label, v) in &slots {
            let (a, b) = (v[0], v[1]);
            if dir(a) == dir(b) {
                return Err(DiagramError::Orientation { label });
            }
            let head = if dir(a) == Dir::In { a } else { b };
            let through = (head & !3) | ((head % 4) ^ 2);
            next.insert(label, crossings[through / 4][through % 4]);
        }
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in next.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = next[&start];
            while cur != start {
                if !seen.insert(cur) {
                    return Err(DiagramError::Orientation { label: cur });
                }
                cycle.push(cur);
                cur = next[&cur];
            }
            cycles.push(cycle);
        }
        let total = cycles.len() + free_loop_positions.len();
        let free: BTreeSet<usize> = free_loop_positions.iter().copied().collect();
        if free.len() != free_loop_positions.len() || free.iter().any(|&p| p >= total) {
            return Err(DiagramError::ComponentOutOfRange {
                index: free.iter().copied().max().unwrap_or(0),
                count: total,
            });
        }
        let mut cycles = cycles.into_iter();
        let components = (0..total)
            .map(|i| if free.contains(&i) { Vec::new() } else { cycles.next().expect("count matches") })
            .collect();
        Ok(LinkDiagram { crossings, signs, components })
    }

    /// Builds a diagram from unsigned PD tuples, inferring over-strand directions
    /// from the under-strands. A component that never passes under anything is
    /// oriented so that its smallest label is followed by the next label, when possible.
    pub fn from_pd(crossings: Vec<[u32; 4]>, free_loop_positions: &[usize]) -> Result<Self, DiagramError> {
        let slots = label_slots(&crossings)?;
        let nslots = 4 * crossings.len();
        let partner = |s: usize| {
            let v = &slots[&crossings[s / 4][s % 4]];
            if v[0] == s {
                v[1]
            } else {
                v[0]
            }
        };
        let mut dir: Vec<Option<Dir>> = vec![None; nslots];
        let mut queue = VecDeque::new();
        let assign = |dir: &mut Vec<Option<Dir>>, queue: &mut VecDeque<usize>, s: usize, d: Dir| match dir[s] {
            Some(old) if old != d => Err(DiagramError::Orientation { label: crossings[s / 4][s % 4] }),
            Some(_) => Ok(()),
            None => {
                dir[s] = Some(d);
                queue.push_back(s);
                Ok(())
            }
        };
        let propagate = |dir: &mut Vec<Option<Dir>>, queue: &mut VecDeque<usize>| -> Result<(), DiagramError> {
            while let Some(s) = queue.pop_front() {
                let d = dir[s].expect("queued slots are assigned");
                assign(dir, queue, partner(s), d.flip())?;
                assign(dir, queue, (s & !3) | ((s % 4) ^ 2), d.flip())?;
            }
            Ok(())
        };
        for c in 0..crossings.len() {
            assign(&mut dir, &mut queue, 4 * c, Dir::In)?;
            assign(&mut dir, &mut queue, 4 * c + 2, Dir::Out)?;
        }
        propagate(&mut dir, &mut queue)?;
        while let Some(s) = (0..nslots).filter(|&s| dir[s].is_none()).min_by_key(|&s| crossings[s / 4][s % 4]) {
            // Orient the free-floating strand of smallest label `a` so that it
            // leaves slot `s` and its successor is `a + 1` if that is consistent.
            let label = crossings[s / 4][s % 4];
            let head = partner(s);
            let through = (head & !3) | ((head % 4) ^ 2);
            let forward = crossings[through / 4][through % 4] == label + 1;
            let backward = {
                let through_s = (s & !3) | ((s % 4) ^ 2);
                crossings[through_s / 4][through_s % 4] == label + 1
            };
            let d = if backward && !forward { Dir::In } else { Dir::Out };
            assign(&mut dir, &mut queue, s, d)?;
            propagate(&mut dir, &mut queue)?;
        }
        let signs = (0..crossings.len()).map(|c| if dir[4 * c + 3] == Some(Dir::In) { 1 } else { -1 }).collect();
        Self::from_oriented(crossings, signs, free_loop_positions)
    }

    /// The `m`-component unlink drawn with no crossings.
    pub fn unlink(m: usize) -> Self {
        LinkDiagram { crossings: Vec::new(), signs: Vec::new(), components: vec![Vec::new(); m] }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Edge labels of component `i` in orientation order (empty for a free loop).
    pub fn component_edges(&self, i: usize) -> &[u32] {
        &self.components[i]
    }

    pub fn free_loop_positions(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&i| self.components[i].is_empty()).collect()
    }

    pub fn component_of_label(&self, label: u32) -> usize {
        self.components.iter().position(|edges| edges.contains(&label)).expect("every label lies on a component")
    }

    /// `(under component, over component)` at crossing `c`.
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.component_of_label(x[0]), self.component_of_label(x[1]))
    }

    pub fn is_inter_component(&self, c: usize) -> bool {
        let (u, o) = self.crossing_components(c);
        u != o
    }

    fn check_component(&self, i: usize) -> Result<(), DiagramError> {
        if i >= self.components.len() {
            return Err(DiagramError::ComponentOutOfRange { index: i, count: self.components.len() });
        }
        Ok(())
    }

    /// Half the signed count of crossings between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramError> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(DiagramError::SameComponent);
        }
        let total: i64 = (0..self.crossings.len())
            .filter(|&c| {
                let (u, o) = self.crossing_components(c);
                (u, o) == (i, j) || (u, o) == (j, i)
            })
            .map(|c| self.signs[c] as i64)
            .sum();
        Ok(total / 2)
    }

    /// Sum of `lk(L_i, L_j)` over all pairs `i < j`.
    pub fn total_linking(&self) -> i64 {
        let inter: i64 =
            (0..self.crossings.len()).filter(|&c| self.is_inter_component(c)).map(|c| self.signs[c] as i64).sum();
        inter / 2
    }

    /// Swaps over and under at crossing `c`.
    pub fn crossing_change(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        if c >= self.crossings.len() {
            return Err(DiagramError::CrossingOutOfRange { index: c, count: self.crossings.len() });
        }
        let mut out = self.clone();
        let [i, j, k, l] = self.crossings[c];
        out.crossings[c] = if self.signs[c] > 0 { [l, i, j, k] } else { [j, k, l, i] };
        out.signs[c] = -self.signs[c];
        Ok(out)
    }

    /// Reverses the orientation of component `i`. Crossings where it passes
    /// under are rotated by half a turn, and a crossing changes sign whenever
    /// exactly one of its strands belongs to `i`.
    pub fn reverse_component(&self, i: usize) -> Result<LinkDiagram, DiagramError> {
        if i >= self.components.len() {
            return Err(DiagramError::ComponentOutOfRange { index: i, count: self.components.len() });
        }
        let mut out = self.clone();
        for c in 0..self.crossings.len() {
            let (under, over) = self.crossing_components(c);
            if under == i {
                let [a, b, k, l] = self.crossings[c];
                out.crossings[c] = [k, l, a, b];
            }
            if (under == i) != (over == i) {
                out.signs[c] = -self.signs[c];
            }
        }
        out.components[i].reverse();
        Ok(out)
    }

    /// Applies several crossing changes.
    pub fn change_crossings(&self, cs: &[usize]) -> Result<LinkDiagram, DiagramError> {
        cs.iter().try_fold(self.clone(), |d, &c| d.crossing_change(c))
    }

    /// Slot (`4 * crossing + position`) at which each edge ends.
    pub(crate) fn head_slots(&self) -> BTreeMap<u32, usize> {
        let mut heads = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, d) in slot_dirs(self.signs[c]).into_iter().enumerate() {
                if d == Dir::In {
                    heads.insert(x[p], 4 * c + p);
                }
            }
        }
        heads
    }

    /// Assembles a diagram from the crossings in `kept` and closed strands given
    /// as cycles of old edge labels. Consecutive labels are merged wherever the
    /// strand passes through a removed crossing; cycles meeting no kept crossing
    /// become free loops. Free loops listed in `loops` keep their place in `order`.
    fn assemble(&self, kept: &[usize], cycles: Vec<Option<Vec<u32>>>) -> LinkDiagram {
        let heads = self.head_slots();
        let kept_set: BTreeSet<usize> = kept.iter().copied().collect();
        let ends_at_kept = |e: &u32| kept_set.contains(&(heads[e] / 4));
        let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
        let mut next_label = 1u32;
        let mut components = Vec::new();
        for cycle in cycles {
            let Some(mut cycle) = cycle.filter(|c| c.iter().any(ends_at_kept)) else {
                components.push(Vec::new());
                continue;
            };
            let last_kept = cycle.iter().rposition(ends_at_kept).expect("checked above");
            let len = cycle.len();
            cycle.rotate_left((last_kept + 1) % len);
            let mut edges = Vec::new();
            for e in cycle {
                relabel.insert(e, next_label);
                if ends_at_kept(&e) {
                    edges.push(next_label);
                    next_label += 1;
                }
            }
            components.push(edges);
        }
        let crossings = kept.iter().map(|&c| self.crossings[c].map(|e| relabel[&e])).collect();
        let signs = kept.iter().map(|&c| self.signs[c]).collect();
        LinkDiagram { crossings, signs, components }
    }

    fn cycles_in_order(&self, order: &[usize]) -> Vec<Option<Vec<u32>>> {
        order.iter().map(|&i| Some(self.components[i].clone()).filter(|e| !e.is_empty())).collect()
    }

    /// Sublink on the components in `keep` (0-based), in their original order.
    /// Where a kept strand met a deleted one, the kept strand is spliced through.
    pub fn delete_components(&self, keep: &BTreeSet<usize>) -> Result<LinkDiagram, DiagramError> {
        if keep.is_empty() {
            return Err(DiagramError::EmptyKeep);
        }
        for &i in keep {
            self.check_component(i)?;
        }
        let kept: Vec<usize> = (0..self.crossings.len())
            .filter(|&c| {
                let (u, o) = self.crossing_components(c);
                keep.contains(&u) && keep.contains(&o)
            })
            .collect();
        let order: Vec<usize> = keep.iter().copied().collect();
        Ok(self.assemble(&kept, self.cycles_in_order(&order)))
    }

    /// Oriented smoothing of crossing `c`. Component order of the result follows
    /// smallest original label, with crossingless loops last.
    pub fn smooth(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        if c >= self.crossings.len() {
            return Err(DiagramError::CrossingOutOfRange { index: c, count: self.crossings.len() });
        }
        let [i, j, k, l] = self.crossings[c];
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        for edges in &self.components {
            for (idx, &e) in edges.iter().enumerate() {
                next.insert(e, edges[(idx + 1) % edges.len()]);
            }
        }
        if self.signs[c] > 0 {
            next.insert(i, j);
            next.insert(l, k);
        } else {
            next.insert(i, l);
            next.insert(j, k);
        }
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in next.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut cur = next[&start];
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                cur = next[&cur];
            }
            cycles.push(Some(cycle));
        }
        let old_loops = self.components.iter().filter(|e| e.is_empty()).count();
        cycles.extend(std::iter::repeat_n(None, old_loops));
        let kept: Vec<usize> = (0..self.crossings.len()).filter(|&x| x != c).collect();
        let mut out = self.assemble(&kept, cycles);
        let (mut live, free): (Vec<_>, Vec<_>) = out.components.drain(..).partition(|e| !e.is_empty());
        live.extend(free);
        out.components = live;
        Ok(out)
    }

    /// Relabels edges consecutively along each component, in component order.
    pub fn canonical(&self) -> LinkDiagram {
        let kept: Vec<usize> = (0..self.crossings.len()).collect();
        let order: Vec<usize> = (0..self.components.len()).collect();
        self.assemble(&kept, self.cycles_in_order(&order))
    }

    /// Groups components that can be pulled apart using the diagram alone.
    ///
    /// Component `a` lies above `b` if `a` passes over `b` somewhere. Strongly
    /// connected classes of this relation can be stacked at different heights
    /// in a topological order, so each class sits in its own ball. Returns the
    /// classes sorted by smallest member.
    pub fn split_diagrammatically(&self) -> Vec<Vec<usize>> {
        let m = self.components.len();
        let mut above = vec![BTreeSet::new(); m];
        for c in 0..self.crossings.len() {
            let (u, o) = self.crossing_components(c);
            if u != o {
                above[o].insert(u);
            }
        }
        let mut reach = vec![vec![false; m]; m];
        for (a, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![a];
            row[a] = true;
            while let Some(x) = stack.pop() {
                for &y in &above[x] {
                    if !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        let mut assigned = vec![false; m];
        let mut parts = Vec::new();
        for a in 0..m {
            if assigned[a] {
                continue;
            }
            let part: Vec<usize> = (a..m).filter(|&b| reach[a][b] && reach[b][a]).collect();
            for &b in &part {
                assigned[b] = true;
            }
            parts.push(part);
        }
        parts
    }

    /// Whether every component sits in its own ball, judged from the diagram.
    pub fn is_totally_split(&self) -> bool {
        self.split_diagrammatically().len() == self.components.len()
    }

    /// Whether some basepoint on component `i` meets every self-crossing first
    /// along the over-strand. Such a component bounds a disk above its own
    /// diagram, so it is an unknot.
    pub fn component_is_descending(&self, i: usize) -> bool {
        let edges = &self.components[i];
        if edges.is_empty() {
            return true;
        }
        let heads = self.head_slots();
        (0..edges.len()).any(|start| {
            let mut seen = BTreeSet::new();
            (0..edges.len()).all(|k| {
                let slot = heads[&edges[(start + k) % edges.len()]];
                let c = slot / 4;
                let (u, o) = self.crossing_components(c);
                u != o || !seen.insert(c) || !slot.is_multiple_of(4)
            })
        })
    }

    /// Totally split with every component descending: a certified unlink.
    pub fn is_unlink_diagram(&self) -> bool {
        self.is_totally_split() && (0..self.components.len()).all(|i| self.component_is_descending(i))
    }

    pub fn to_pd_text(&self) -> String {
        self.crossings.iter().map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3])).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X[4,1,3,2],X[2,3,1,4]";
    const TREFOIL: &str = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]";

    #[test]
    fn parses_table_codes() {
        let hopf = parse_pd(HOPF).unwrap();
        assert_eq!((hopf.component_count(), hopf.crossing_count()), (2, 2));
        assert_eq!(hopf.linking_number(0, 1).unwrap().abs(), 1);
        assert_eq!(hopf.linking_number(0, 1), hopf.linking_number(1, 0));
        let trefoil = parse_pd(TREFOIL).unwrap();
        assert_eq!((trefoil.component_count(), trefoil.crossing_count()), (1, 3));
        assert!(trefoil.signs().iter().all(|&s| s == trefoil.sign(0)));
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(parse_pd("X[1,1,2,2],X[2,4,4,1]"), Err(DiagramError::LabelMultiplicity { .. })));
        assert!(matches!(parse_pd("X[1,2,3]"), Err(DiagramError::Syntax { .. })));
        assert!(matches!(parse_pd("X[1,2,3,4] X[1,2,3,4]"), Err(DiagramError::Syntax { .. })));
        assert!(matches!(parse_pd("X[0,1,1,0]"), Err(DiagramError::Syntax { .. })));
        assert!(parse_pd("X[1,2,2,1],X[3,4,4,3]").is_ok());
    }

    #[test]
    fn crossing_changes() {
        let hopf = parse_pd(HOPF).unwrap();
        let once = hopf.crossing_change(0).unwrap();
        assert_eq!(once.crossing_change(0).unwrap(), hopf);
        assert_eq!(once.linking_number(0, 1).unwrap(), 0);
        assert_eq!(once.sign(0), -hopf.sign(0));
        assert!(hopf.crossing_change(2).is_err());
        assert!(!hopf.is_totally_split());
        assert!(once.is_totally_split());
    }

    #[test]
    fn deletion_and_smoothing() {
        let hopf = parse_pd(HOPF).unwrap();
        let first = hopf.delete_components(&BTreeSet::from([0])).unwrap();
        assert_eq!((first.component_count(), first.crossing_count()), (1, 0));
        let both = hopf.delete_components(&BTreeSet::from([0, 1])).unwrap();
        assert_eq!(both, hopf.canonical());
        assert!(hopf.delete_components(&BTreeSet::new()).is_err());

        let s = hopf.smooth(0).unwrap();
        assert_eq!((s.component_count(), s.crossing_count()), (1, 1));
        let trefoil = parse_pd(TREFOIL).unwrap();
        let s = trefoil.smooth(0).unwrap();
        assert_eq!((s.component_count(), s.crossing_count()), (2, 2));
        assert_eq!(s.linking_number(0, 1).unwrap().abs(), 1);
    }

    #[test]
    fn fox_rows_satisfy_identity() {
        for code in [HOPF, TREFOIL] {
            let j = parse_pd(code).unwrap().fox_jacobian();
            assert_eq!(j.row_count(), j.column_count());
            assert!((0..j.row_count()).all(|r| j.row_identity_holds(r)));
            assert!(j.rows.iter().all(|row| row.iter().filter(|e| !e.is_zero()).count() <= 3));
        }
    }

    #[test]
    fn fixture_round_trip() {
        let text = "# two trefoils\nname: T+T\ncomponents: 3\nfreeloops: 1 at 2\npd: X[1,4,2,5],X[3,6,4,1],\n  X[5,2,6,3], X[7,10,8,11],X[9,12,10,7],X[11,8,12,9]\nexternal: splitting 0 trivial\nexternal: unlinking 2-\n";
        let f = parse_fixture(text).unwrap();
        assert_eq!(f.diagram.component_count(), 3);
        assert_eq!(f.diagram.free_loop_positions(), vec![1]);
        assert_eq!(f.diagram.split_diagrammatically(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(f.externals.len(), 2);
        assert_eq!(f.externals[1].upper, None);
        let again = parse_fixture(&f.to_text()).unwrap();
        assert_eq!(again, f);
        assert!(parse_fixture("name: x\ncomponents: 2\npd: X[1,2,2,1]\n").is_err());
        assert!(parse_fixture("name: x\ncomponents: 1\npd: X[1,2,2,1]\nbogus\n").is_err());
    }
}
