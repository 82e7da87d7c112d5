//! Wirtinger presentations and their Fox Jacobians over the Laurent ring.
//!
//! Generators are the arcs of the diagram (maximal strands that only pass
//! over), plus one generator per free loop. Crossing `c` with incoming
//! under-arc `a`, outgoing under-arc `b` and over-arc `o` gives the relation
//! `b = o a o^-1` when positive and `b = o^-1 a o` when negative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LinkDiagram;
use crate::laurent::{LaurentPoly, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub under_in: usize,
    pub under_out: usize,
    pub over: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerPresentation {
    /// Component index of each generator.
    pub generator_component: Vec<usize>,
    pub relations: Vec<Relation>,
    pub component_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoxJacobian {
    pub nvars: usize,
    pub generator_component: Vec<usize>,
    /// Row-major, one row per relation.
    pub rows: Vec<Vec<LaurentPoly>>,
}

impl LinkDiagram {
    pub fn wirtinger(&self) -> WirtingerPresentation {
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        fn find(parent: &BTreeMap<u32, u32>, mut x: u32) -> u32 {
            while let Some(&p) = parent.get(&x) {
                x = p;
            }
            x
        }
        for x in self.crossings() {
            let (a, b) = (find(&parent, x[1]), find(&parent, x[3]));
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
        let mut arc_of: BTreeMap<u32, usize> = BTreeMap::new();
        let mut generator_component = Vec::new();
        let mut index_of_root: BTreeMap<u32, usize> = BTreeMap::new();
        for edges in (0..self.component_count()).map(|i| self.component_edges(i)) {
            for &e in edges {
                let root = find(&parent, e);
                let next = index_of_root.len();
                let idx = *index_of_root.entry(root).or_insert(next);
                if idx == generator_component.len() {
                    generator_component.push(self.component_of_label(e));
                }
                arc_of.insert(e, idx);
            }
        }
        // Reorder arcs by smallest label so numbering does not depend on traversal.
        let mut order: Vec<(u32, usize)> = index_of_root.iter().map(|(&r, &i)| (r, i)).collect();
        order.sort();
        let mut renumber = vec![0; order.len()];
        for (new, &(_, old)) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let mut comps = vec![0; order.len()];
        for (old, &new) in renumber.iter().enumerate() {
            comps[new] = generator_component[old];
        }
        let mut generator_component = comps;
        for p in self.free_loop_positions() {
            generator_component.push(p);
        }
        let arc = |e: u32| renumber[arc_of[&e]];
        let relations = self
            .crossings()
            .iter()
            .enumerate()
            .map(|(c, x)| Relation { under_in: arc(x[0]), under_out: arc(x[2]), over: arc(x[1]), sign: self.sign(c) })
            .collect();
        WirtingerPresentation { generator_component, relations, component_count: self.component_count() }
    }

    pub fn fox_jacobian(&self) -> FoxJacobian {
        self.wirtinger().fox_jacobian()
    }
}

impl WirtingerPresentation {
    pub fn fox_jacobian(&self) -> FoxJacobian {
        let m = self.component_count;
        let g = self.generator_component.len();
        let t = |gen: usize| LaurentPoly::var(m, self.generator_component[gen]);
        let t_inv = |gen: usize| LaurentPoly::term(Monomial::var_power(m, self.generator_component[gen], -1), 1);
        let one = LaurentPoly::one(m);
        let rows = self
            .relations
            .iter()
            .map(|r| {
                let mut row = vec![LaurentPoly::zero(m); g];
                let (over_entry, in_entry) = if r.sign > 0 {
                    (&one - &t(r.under_in), t(r.over))
                } else {
                    (t_inv(r.over) * (t(r.under_in) - &one), t_inv(r.over))
                };
                row[r.over] = &row[r.over] + &over_entry;
                row[r.under_in] = &row[r.under_in] + &in_entry;
                row[r.under_out] = &row[r.under_out] - &one;
                row
            })
            .collect();
        FoxJacobian { nvars: m, generator_component: self.generator_component.clone(), rows }
    }
}

impl FoxJacobian {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.generator_component.len()
    }

    /// `t_i - 1` for the component of generator `col`.
    pub fn column_weight(&self, col: usize) -> LaurentPoly {
        LaurentPoly::t_minus_one(self.nvars, self.generator_component[col])
    }

    /// Whether `sum_c entry(r, c) * (t_comp(c) - 1) = 0` for row `r`.
    pub fn row_identity_holds(&self, r: usize) -> bool {
        self.rows[r]
            .iter()
            .enumerate()
            .fold(LaurentPoly::zero(self.nvars), |acc, (c, e)| acc + e * &self.column_weight(c))
            .is_zero()
    }
}
