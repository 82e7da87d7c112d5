//! Deciding whether a polynomial is a norm `f * involute(f)` once certain
//! irreducible factors are set aside.
//!
//! Each irreducible class `q` either equals its conjugate class `q̄`, in which
//! case it must occur to an even power, or pairs with a distinct class `q̄`
//! that must occur exactly as often.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{factor_irreducible, FactorError};
use crate::laurent::{LaurentPoly, UnitNormalForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormVerdict {
    pub is_norm: bool,
    /// `f` with `input ≐ f * involute(f) * (discarded factors)`.
    pub witness: Option<LaurentPoly>,
    pub blocking_factors: Vec<LaurentPoly>,
}

/// Result of comparing two polynomials modulo norms and negligible factors:
/// `a * f * f̄ ≐ b * g * ḡ * n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormEquivalence {
    pub equivalent: bool,
    pub f: Option<LaurentPoly>,
    pub g: Option<LaurentPoly>,
    pub blocking_factors: Vec<LaurentPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddMultiplicity {
    pub multiplicity: u32,
    pub forced_divides: bool,
}

fn conjugate_class(q: &LaurentPoly) -> LaurentPoly {
    q.involute().normalize_unit().expect("nonzero").into_poly()
}

fn is_t_minus_one(q: &LaurentPoly) -> bool {
    q.len() == 2 && q.vars_involved().len() == 1 && q.is_negligible()
}

struct Pairing {
    ok: bool,
    positive: LaurentPoly,
    negative: LaurentPoly,
    blocking: Vec<LaurentPoly>,
}

/// Pairs classes of a signed multiset of irreducibles. Excess on the positive
/// side goes into `positive`, excess on the negative side into `negative`.
fn pair_classes(counts: &BTreeMap<LaurentPoly, i64>, nvars: usize) -> Pairing {
    let mut out = Pairing {
        ok: true,
        positive: LaurentPoly::one(nvars),
        negative: LaurentPoly::one(nvars),
        blocking: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for (q, &e) in counts {
        if !seen.insert(q.clone()) {
            continue;
        }
        let conj = conjugate_class(q);
        let (rep, power) = if &conj == q {
            if e % 2 != 0 {
                out.ok = false;
                out.blocking.push(q.clone());
                continue;
            }
            (q.clone(), e / 2)
        } else {
            seen.insert(conj.clone());
            let e_conj = counts.get(&conj).copied().unwrap_or(0);
            if e != e_conj {
                out.ok = false;
                out.blocking.push(if e > e_conj { q.clone() } else { conj });
                continue;
            }
            (q.clone().min(conj), e)
        };
        let side = if power >= 0 { &mut out.positive } else { &mut out.negative };
        *side = side.checked_mul(&rep.pow(power.unsigned_abs() as u32)).expect("same ring");
    }
    out
}

fn verdict_for(p: &LaurentPoly, skip: impl Fn(&LaurentPoly) -> bool) -> Result<NormVerdict, FactorError> {
    let fact = factor_irreducible(p)?;
    let counts: BTreeMap<LaurentPoly, i64> =
        fact.factors.into_iter().filter(|(q, _)| !skip(q)).map(|(q, e)| (q, e as i64)).collect();
    let pairing = pair_classes(&counts, p.nvars());
    Ok(if pairing.ok {
        NormVerdict { is_norm: true, witness: Some(pairing.positive), blocking_factors: Vec::new() }
    } else {
        NormVerdict { is_norm: false, witness: None, blocking_factors: pairing.blocking }
    })
}

/// `p ≐ f * f̄ * n` with `n` negligible.
pub fn is_norm_up_to_negligible(p: &LaurentPoly) -> Result<NormVerdict, FactorError> {
    verdict_for(p, is_t_minus_one)
}

/// `p ≐ prod p_i(t_i) * f * f̄ * n`: factors in at most one variable are unconstrained.
pub fn is_norm_modulo_univariate(p: &LaurentPoly) -> Result<NormVerdict, FactorError> {
    verdict_for(p, |q| q.vars_involved().len() <= 1)
}

/// `p ≐ f * f̄` with nothing discarded beyond `±t^k`; `(t_i - 1)` factors must pair too.
pub fn is_norm_up_to_units(p: &LaurentPoly) -> Result<NormVerdict, FactorError> {
    verdict_for(p, |_| false)
}

/// Whether `a * f * f̄ ≐ b * g * ḡ * n` for some `f`, `g` and negligible `n`.
pub fn norm_equivalent(a: &LaurentPoly, b: &LaurentPoly) -> Result<NormEquivalence, FactorError> {
    let fa = factor_irreducible(a)?;
    let fb = factor_irreducible(b)?;
    let mut counts: BTreeMap<LaurentPoly, i64> = BTreeMap::new();
    for (q, e) in fa.factors {
        *counts.entry(q).or_default() += e as i64;
    }
    for (q, e) in fb.factors {
        *counts.entry(q).or_default() -= e as i64;
    }
    counts.retain(|q, e| *e != 0 && !is_t_minus_one(q));
    let pairing = pair_classes(&counts, a.nvars());
    Ok(if pairing.ok {
        // Excess in `a` is balanced by `g` on the `b` side and vice versa.
        NormEquivalence {
            equivalent: true,
            f: Some(pairing.negative),
            g: Some(pairing.positive),
            blocking_factors: Vec::new(),
        }
    } else {
        NormEquivalence { equivalent: false, f: None, g: None, blocking_factors: pairing.blocking }
    })
}

/// Multiplicity of a symmetric, non-negligible irreducible `q` in `p`.
pub fn odd_multiplicity_divisor(p: &LaurentPoly, q: &LaurentPoly) -> Result<OddMultiplicity, FactorError> {
    if p.is_zero() || q.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if q.is_negligible() {
        return Err(FactorError::Negligible(q.to_string()));
    }
    if !factor_irreducible(q)?.is_irreducible() {
        return Err(FactorError::Reducible(q.to_string()));
    }
    let nf: UnitNormalForm = q.normalize_unit()?;
    if &conjugate_class(q) != nf.poly() {
        return Err(FactorError::NotSymmetric(q.to_string()));
    }
    let mut rest = p.clone();
    let mut multiplicity = 0;
    while let Some(next) = rest.divide_exact(q)? {
        rest = next;
        multiplicity += 1;
    }
    Ok(OddMultiplicity { multiplicity, forced_divides: multiplicity % 2 == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, Some(n)).unwrap()
    }

    #[test]
    fn negligible_norm_examples() {
        let v = is_norm_up_to_negligible(&p("(t1-1)(t2-1)(t3-1)(t2t3-1)", 3)).unwrap();
        assert!(!v.is_norm);
        assert_eq!(v.blocking_factors, vec![p("t2t3-1", 3)]);

        let v = is_norm_up_to_negligible(&p("(2t1-1)(2t1^-1-1)", 1)).unwrap();
        assert!(v.is_norm);
        let w = v.witness.unwrap();
        assert!(w.associate(&p("2t1-1", 1)) || w.associate(&p("t1-2", 1)));

        let v = is_norm_up_to_negligible(&p("(t3-1)(t2-1)(t1-1)(t3^2-t3+1)", 3)).unwrap();
        assert!(!v.is_norm);
        assert_eq!(v.blocking_factors, vec![p("t3^2-t3+1", 3)]);
    }

    #[test]
    fn univariate_factors_are_free() {
        assert!(!is_norm_modulo_univariate(&p("(t1-1)(t2-1)(t3-1)(t2t3-1)", 3)).unwrap().is_norm);
        assert!(is_norm_modulo_univariate(&p("(2t2^2-3t2+2)(t1-1)(t2-1)", 2)).unwrap().is_norm);
        assert!(!is_norm_modulo_univariate(&p("t1^2t2^2-t1t2^2+3t1t2-t1+1", 2)).unwrap().is_norm);
    }

    #[test]
    fn equivalence_examples() {
        let b = p("(t1^2 - t1 + 1)(t2 - 3)", 2);
        assert!(norm_equivalent(&b, &b).unwrap().equivalent);
        let q = p("2t1 + t2 - 1", 2);
        let a = q.clone() * q.involute() * p("1 - t1", 2) * &b;
        let e = norm_equivalent(&a, &b).unwrap();
        assert!(e.equivalent);
        let g = e.g.unwrap();
        let f = e.f.unwrap();
        let lhs = a * &f * f.involute();
        let rhs = b.clone() * &g * g.involute();
        assert!(lhs.negligible_decompose().unwrap().core == rhs.negligible_decompose().unwrap().core);
        let c = p("t1^2 - t1 + 1", 2) * &b;
        assert!(!norm_equivalent(&c, &b).unwrap().equivalent);
        assert!(!norm_equivalent(&b, &c).unwrap().equivalent);
    }

    #[test]
    fn odd_multiplicity_examples() {
        let q = p("t1^2 - t1 + 1", 1);
        let r = odd_multiplicity_divisor(&(q.pow(3) * p("t1 - 2", 1)), &q).unwrap();
        assert_eq!(r, OddMultiplicity { multiplicity: 3, forced_divides: true });
        let r = odd_multiplicity_divisor(&q.pow(2), &q).unwrap();
        assert_eq!(r, OddMultiplicity { multiplicity: 2, forced_divides: false });
        let band = p("(1 - t1 + t1^2)(1 - t2 + t2^2)(t1^-1 - 1 + t2)(t1 - 1 + t2^-1)", 2);
        for q in ["t1^2 - t1 + 1", "t2^2 - t2 + 1"] {
            assert_eq!(odd_multiplicity_divisor(&band, &p(q, 2)).unwrap().multiplicity, 1);
        }
        assert!(matches!(odd_multiplicity_divisor(&q, &p("t1 - 1", 1)), Err(FactorError::Negligible(_))));
        assert!(matches!(odd_multiplicity_divisor(&q, &p("(t1^2 - t1 + 1)^2", 1)), Err(FactorError::Reducible(_))));
        assert!(matches!(odd_multiplicity_divisor(&q, &p("t1 - 2", 1)), Err(FactorError::NotSymmetric(_))));
    }
}
