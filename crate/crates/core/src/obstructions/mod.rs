//! Lower bounds for the unlinking, splitting and weak splitting numbers, and
//! verdicts comparing Alexander data of links related by crossing changes.
//!
//! Each bound starts from the rank bound `m - 1 - beta`. When the Alexander
//! polynomial is nonzero and fails the norm condition attached to the
//! quantity, the value `m - 1` is excluded and the bound becomes `m`.

mod verdicts;

pub use verdicts::{
    band_clasping_check, forced_knot_complexity, gordian_extremal_divisibility, gordian_rank_bound,
    splitting_sequence_knot_constraint, BandClaspVerdict, GordianVerdict, KnotComplexity, ObstructionError,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{LinkDiagram, Quantity};
use crate::exec::Exec;
use crate::factor::{is_norm_modulo_univariate, is_norm_up_to_negligible, NormVerdict};
use crate::invariants::AlexanderData;
use crate::laurent::LaurentPoly;

/// A rule that can raise a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `m - 1 - beta`.
    Rank,
    /// The Alexander polynomial is not a norm times a negligible factor.
    UnlinkingNorm,
    /// The Alexander polynomial over the product of component polynomials is
    /// not a norm times a negligible factor, or is not a polynomial at all.
    SplittingNorm,
    /// The Alexander polynomial is not a norm once single-variable factors are dropped.
    WeakSplittingNorm,
    /// The splitting number has the parity of the total linking number.
    Parity,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Rank => "rank",
            Rule::UnlinkingNorm => "unlinking-norm",
            Rule::SplittingNorm => "splitting-norm",
            Rule::WeakSplittingNorm => "weak-splitting-norm",
            Rule::Parity => "parity",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub lower: u32,
    /// Rules that determined `lower`. A norm rule supersedes the rank rule it extends.
    pub reasons: Vec<Rule>,
}

impl Bound {
    fn rank(a: &AlexanderData) -> Bound {
        let lower = rank_bound(a);
        Bound { lower, reasons: if lower > 0 { vec![Rule::Rank] } else { Vec::new() } }
    }

    fn raised_by(rule: Rule, m: usize) -> Bound {
        Bound { lower: m as u32, reasons: vec![rule] }
    }
}

fn rank_bound(a: &AlexanderData) -> u32 {
    (a.components - 1 - a.beta) as u32
}

/// Outcome of the component-polynomial division behind the splitting rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentQuotient {
    /// `Δ / prod Δ_{L_i}(t_i)`, absent when the division is not exact.
    pub quotient: Option<LaurentPoly>,
    pub verdict: Option<NormVerdict>,
}

/// Unlinking-number lower bound.
pub fn unlinking_bound(a: &AlexanderData) -> (Bound, Option<NormVerdict>) {
    if a.delta.is_zero() {
        return (Bound::rank(a), None);
    }
    let verdict = is_norm_up_to_negligible(&a.delta).expect("nonzero polynomial");
    let bound = if verdict.is_norm { Bound::rank(a) } else { Bound::raised_by(Rule::UnlinkingNorm, a.components) };
    (bound, Some(verdict))
}

/// Product of the component polynomials, the `i`-th in variable `t_i`.
pub fn component_product(component_polys: &[LaurentPoly]) -> LaurentPoly {
    let m = component_polys.len();
    component_polys.iter().enumerate().fold(LaurentPoly::one(m), |acc, (i, p)| acc * p.embed(m, &[i]))
}

/// Splitting-number lower bound, before the parity refinement.
/// `component_polys[i]` is the one-variable Alexander polynomial of component `i`.
pub fn splitting_bound(a: &AlexanderData, component_polys: &[LaurentPoly]) -> (Bound, Option<ComponentQuotient>) {
    assert_eq!(component_polys.len(), a.components, "one polynomial per component");
    if a.delta.is_zero() {
        return (Bound::rank(a), None);
    }
    let product = component_product(component_polys);
    let quotient = a.delta.divide_exact(&product).expect("same ring");
    let verdict = quotient.as_ref().map(|q| is_norm_up_to_negligible(q).expect("nonzero quotient"));
    let passes = verdict.as_ref().is_some_and(|v| v.is_norm);
    let bound = if passes { Bound::rank(a) } else { Bound::raised_by(Rule::SplittingNorm, a.components) };
    (bound, Some(ComponentQuotient { quotient, verdict }))
}

/// Weak-splitting-number lower bound.
pub fn weak_splitting_bound(a: &AlexanderData) -> (Bound, Option<NormVerdict>) {
    if a.delta.is_zero() {
        return (Bound::rank(a), None);
    }
    let verdict = is_norm_modulo_univariate(&a.delta).expect("nonzero polynomial");
    let bound = if verdict.is_norm { Bound::rank(a) } else { Bound::raised_by(Rule::WeakSplittingNorm, a.components) };
    (bound, Some(verdict))
}

/// Smallest integer at least `bound` with the parity of the total linking number.
pub fn parity_refine(bound: u32, d: &LinkDiagram) -> u32 {
    refine_to_parity(bound, d.total_linking())
}

fn refine_to_parity(bound: u32, lk_sum: i64) -> u32 {
    if (bound as i64 - lk_sum).rem_euclid(2) == 0 {
        bound
    } else {
        bound + 1
    }
}

/// One-variable Alexander polynomial of each component on its own.
pub fn component_polynomials(d: &LinkDiagram, exec: Exec) -> Vec<LaurentPoly> {
    let m = d.component_count();
    exec.map((0..m).collect(), |i| {
        let knot = d.delete_components(&BTreeSet::from([i])).expect("component index in range");
        AlexanderData::compute(&knot, Exec::Sequential).delta
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub link_name: String,
    pub m: usize,
    pub beta: usize,
    pub delta: LaurentPoly,
    pub delta_tor: LaurentPoly,
    pub component_polys: Vec<LaurentPoly>,
    pub bounds: BTreeMap<Quantity, Bound>,
    /// Total linking number mod 2, which the splitting number must match.
    pub parity: u8,
    pub norm_verdicts: BTreeMap<Rule, NormVerdict>,
    pub component_quotient: Option<ComponentQuotient>,
}

impl ObstructionReport {
    pub fn compute(name: impl Into<String>, d: &LinkDiagram, exec: Exec) -> ObstructionReport {
        let a = AlexanderData::compute(d, exec);
        let polys = component_polynomials(d, exec);
        Self::from_parts(name, d, &a, polys)
    }

    /// Assembles a report from invariants computed elsewhere for `d`.
    pub fn from_parts(
        name: impl Into<String>,
        d: &LinkDiagram,
        a: &AlexanderData,
        component_polys: Vec<LaurentPoly>,
    ) -> ObstructionReport {
        let mut bounds = BTreeMap::new();
        let mut norm_verdicts = BTreeMap::new();

        let (u, v) = unlinking_bound(a);
        bounds.insert(Quantity::Unlinking, u);
        if let Some(v) = v {
            norm_verdicts.insert(Rule::UnlinkingNorm, v);
        }

        let (mut sp, quotient) = splitting_bound(a, &component_polys);
        let refined = parity_refine(sp.lower, d);
        if refined != sp.lower {
            sp.lower = refined;
            sp.reasons.push(Rule::Parity);
        }
        bounds.insert(Quantity::Splitting, sp);
        if let Some(v) = quotient.as_ref().and_then(|q| q.verdict.clone()) {
            norm_verdicts.insert(Rule::SplittingNorm, v);
        }

        let (wsp, v) = weak_splitting_bound(a);
        bounds.insert(Quantity::WeakSplitting, wsp);
        if let Some(v) = v {
            norm_verdicts.insert(Rule::WeakSplittingNorm, v);
        }

        ObstructionReport {
            link_name: name.into(),
            m: a.components,
            beta: a.beta,
            delta: a.delta.clone(),
            delta_tor: a.delta_tor.clone(),
            component_polys,
            bounds,
            parity: d.total_linking().rem_euclid(2) as u8,
            norm_verdicts,
            component_quotient: quotient,
        }
    }

    pub fn bound(&self, q: Quantity) -> &Bound {
        &self.bounds[&q]
    }

    /// `m - 1 - beta`, the floor under every bound.
    pub fn rank_bound(&self) -> u32 {
        (self.m - 1 - self.beta) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::laurent::parse_poly;

    fn data(delta: &str, m: usize) -> AlexanderData {
        let delta = parse_poly(delta, Some(m)).unwrap();
        AlexanderData { components: m, beta: 0, delta: delta.clone(), delta_tor: delta }
    }

    #[test]
    fn parity_rounds_up_only() {
        assert_eq!(refine_to_parity(2, 1), 3);
        assert_eq!(refine_to_parity(3, 1), 3);
        assert_eq!(refine_to_parity(0, 0), 0);
        assert_eq!(refine_to_parity(0, -3), 1);
        assert_eq!(refine_to_parity(4, -2), 4);
    }

    #[test]
    fn norm_rules_raise_to_m() {
        let (b, v) = unlinking_bound(&data("(t1-1)(t2-1)(t3-1)(t2t3-1)", 3));
        assert_eq!(b, Bound { lower: 3, reasons: vec![Rule::UnlinkingNorm] });
        assert_eq!(v.unwrap().blocking_factors, vec![parse_poly("t2t3-1", Some(3)).unwrap()]);
        let (b, _) = unlinking_bound(&data("(t1-1)(t2-1)(2t1-1)(2t1^-1-1)", 2));
        assert_eq!(b, Bound { lower: 1, reasons: vec![Rule::Rank] });
        let (b, _) = weak_splitting_bound(&data("(t1-1)(t2-1)(t2^2-t2+1)", 2));
        assert_eq!(b.lower, 1);
        let (b, _) = weak_splitting_bound(&data("(t1-1)(t2-1)(t1t2+1)", 2));
        assert_eq!(b.lower, 2);
    }

    #[test]
    fn splitting_rule_divides_out_components() {
        let a = data("(t1^2-t1+1)(t2^2-t2+1)", 2);
        let trefoil = parse_poly("t1^2-t1+1", Some(1)).unwrap();
        let (b, q) = splitting_bound(&a, &[trefoil.clone(), trefoil.clone()]);
        assert_eq!(b.lower, 1);
        assert!(q.unwrap().quotient.unwrap().is_one());
        let (b, q) = splitting_bound(&a, &[LaurentPoly::one(1), LaurentPoly::one(1)]);
        assert_eq!(b, Bound { lower: 2, reasons: vec![Rule::SplittingNorm] });
        assert!(!q.unwrap().verdict.unwrap().is_norm);
        let (b, q) = splitting_bound(&a, &[parse_poly("t1^2+1", Some(1)).unwrap(), trefoil]);
        assert_eq!(b.lower, 2);
        assert!(q.unwrap().quotient.is_none());
    }

    #[test]
    fn hopf_report() {
        let hopf = parse_pd("X[4,1,3,2],X[2,3,1,4]").unwrap();
        let r = ObstructionReport::compute("hopf", &hopf, Exec::Sequential);
        for q in Quantity::ALL {
            assert_eq!(r.bound(q).lower, 1, "{q}");
        }
        assert_eq!(r.parity, 1);
        assert_eq!(r.component_polys, vec![LaurentPoly::one(1), LaurentPoly::one(1)]);
    }

    #[test]
    fn unlink_report_is_zero() {
        let r = ObstructionReport::compute("u3", &LinkDiagram::unlink(3), Exec::Sequential);
        assert!(r.bounds.values().all(|b| b.lower == 0 && b.reasons.is_empty()));
        assert!(r.norm_verdicts.is_empty());
    }
}
