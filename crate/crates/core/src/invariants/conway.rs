//! Conway polynomial by the skein relation `∇(D+) - ∇(D-) = z ∇(D0)`.
//!
//! Each step picks basepoints making as many crossings as possible
//! "descending" (first reached along the over-strand when the components are
//! walked in order). A diagram with no remaining bad crossings is an unlink.
//! Otherwise one bad crossing is changed and smoothed, which strictly reduces
//! either the bad-crossing count or the crossing count.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::laurent::LaurentPoly;

/// Largest diagram accepted by the skein recursion.
pub const DEFAULT_CONWAY_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error("diagram has {crossings} crossings, above the skein budget of {budget}")]
    BudgetExceeded { crossings: usize, budget: usize },
    #[error("expected a 2-component link, got {0} components")]
    ComponentCount(usize),
    #[error("linking number is {0}, expected 0")]
    NonzeroLinking(i64),
}

/// Coefficients of `∇(z)` in ascending degree, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConwayPoly(pub Vec<i64>);

impl ConwayPoly {
    pub fn coefficient(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trimmed(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        ConwayPoly(v)
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let sep = if first { "" } else { " " };
            let mag = c.abs();
            let body = match (k, mag) {
                (0, _) => mag.to_string(),
                (_, 1) => String::new(),
                _ => format!("{mag}*"),
            };
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if first {
                write!(f, "{sign}{body}{var}")?;
            } else {
                write!(f, "{sep}{sign} {body}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A crossing that is reached first along its under-strand, for the best basepoints.
fn bad_crossing(d: &LinkDiagram) -> Option<usize> {
    let heads = d.head_slots();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut first_bad = None;
    for i in 0..d.component_count() {
        let edges = d.component_edges(i);
        if edges.is_empty() {
            continue;
        }
        let walk = |start: usize, seen: &mut BTreeSet<usize>| -> (usize, Option<usize>) {
            let mut bad = 0;
            let mut first = None;
            for k in 0..edges.len() {
                let slot = heads[&edges[(start + k) % edges.len()]];
                if seen.insert(slot / 4) && slot.is_multiple_of(4) {
                    bad += 1;
                    first.get_or_insert(slot / 4);
                }
            }
            (bad, first)
        };
        let best = (0..edges.len()).min_by_key(|&s| walk(s, &mut seen.clone()).0).expect("component has edges");
        let (_, first) = walk(best, &mut seen);
        if first_bad.is_none() {
            first_bad = first;
        }
    }
    first_bad
}

fn add_scaled(acc: &mut Vec<i64>, other: &[i64], scale: i64, shift: usize) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, 0);
    }
    for (k, &c) in other.iter().enumerate() {
        acc[k + shift] += scale * c;
    }
}

fn skein(d: &LinkDiagram, memo: &mut HashMap<LinkDiagram, Vec<i64>>) -> Vec<i64> {
    let d = d.canonical();
    if let Some(v) = memo.get(&d) {
        return v.clone();
    }
    let m = d.component_count();
    let value = if m > 1 && d.split_diagrammatically().len() > 1 {
        Vec::new()
    } else {
        match bad_crossing(&d) {
            None => {
                if m == 1 {
                    vec![1]
                } else {
                    Vec::new()
                }
            }
            Some(c) => {
                let changed = d.crossing_change(c).expect("crossing exists");
                let smoothed = d.smooth(c).expect("crossing exists");
                let mut v = skein(&changed, memo);
                let s = skein(&smoothed, memo);
                add_scaled(&mut v, &s, d.sign(c) as i64, 1);
                v
            }
        }
    };
    let value = ConwayPoly::trimmed(value).0;
    memo.insert(d, value.clone());
    value
}

pub fn conway_polynomial(d: &LinkDiagram, budget: usize) -> Result<ConwayPoly, ConwayError> {
    if d.crossing_count() > budget {
        return Err(ConwayError::BudgetExceeded { crossings: d.crossing_count(), budget });
    }
    Ok(ConwayPoly::trimmed(skein(d, &mut HashMap::new())))
}

/// `∇(t^(1/2) - t^(-1/2))` as a one-variable Laurent polynomial in unit normal
/// form. For an even number of components the odd powers of `z` carry a factor
/// `t^(1/2) - t^(-1/2)`, which becomes `t - 1` after clearing the half-unit.
pub fn one_variable_alexander(d: &LinkDiagram, budget: usize) -> Result<LaurentPoly, ConwayError> {
    let nabla = conway_polynomial(d, budget)?;
    let z2 = LaurentPoly::from_terms(1, [(vec![1], 1), (vec![0], -2), (vec![-1], 1)]);
    let odd = d.component_count().is_multiple_of(2);
    let mut acc = LaurentPoly::zero(1);
    for (k, &c) in nabla.0.iter().enumerate() {
        if c == 0 {
            continue;
        }
        debug_assert_eq!(k % 2 == 1, odd, "Conway parity matches component count");
        acc = acc + z2.pow((k / 2) as u32).scale(&c.into());
    }
    if odd {
        acc = acc * LaurentPoly::t_minus_one(1, 0);
    }
    Ok(if acc.is_zero() { acc } else { acc.normalize_unit().expect("nonzero").into_poly() })
}

/// Minus the `z^3` coefficient of `∇`, for 2-component links with linking number 0.
pub fn sato_levine(d: &LinkDiagram, budget: usize) -> Result<i64, ConwayError> {
    if d.component_count() != 2 {
        return Err(ConwayError::ComponentCount(d.component_count()));
    }
    let lk = d.linking_number(0, 1).expect("two components");
    if lk != 0 {
        return Err(ConwayError::NonzeroLinking(lk));
    }
    Ok(-conway_polynomial(d, budget)?.coefficient(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::laurent::parse_poly;

    const B: usize = DEFAULT_CONWAY_BUDGET;

    #[test]
    fn basic_values() {
        assert_eq!(conway_polynomial(&LinkDiagram::unlink(1), B).unwrap(), ConwayPoly(vec![1]));
        assert!(conway_polynomial(&LinkDiagram::unlink(3), B).unwrap().is_zero());
        let hopf = parse_pd("X[4,1,3,2],X[2,3,1,4]").unwrap();
        let lk = hopf.linking_number(0, 1).unwrap();
        assert_eq!(conway_polynomial(&hopf, B).unwrap(), ConwayPoly(vec![0, lk]));
        let trefoil = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap();
        assert_eq!(conway_polynomial(&trefoil, B).unwrap(), ConwayPoly(vec![1, 0, 1]));
        assert_eq!(conway_polynomial(&trefoil, B).unwrap().to_string(), "z^2 + 1");
    }

    #[test]
    fn one_variable_forms() {
        let trefoil = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap();
        assert_eq!(one_variable_alexander(&trefoil, B).unwrap(), parse_poly("t1^2 - t1 + 1", Some(1)).unwrap());
        let hopf = parse_pd("X[4,1,3,2],X[2,3,1,4]").unwrap();
        assert_eq!(one_variable_alexander(&hopf, B).unwrap(), parse_poly("t1 - 1", Some(1)).unwrap());
        assert!(matches!(sato_levine(&hopf, B), Err(ConwayError::NonzeroLinking(_))));
        assert_eq!(sato_levine(&LinkDiagram::unlink(2), B).unwrap(), 0);
        assert!(matches!(sato_levine(&trefoil, B), Err(ConwayError::ComponentCount(1))));
    }
}
