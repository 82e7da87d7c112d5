//! Verdicts that compare Alexander data across crossing changes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{
    is_norm_up_to_negligible, is_norm_up_to_units, norm_equivalent, odd_multiplicity_divisor, FactorError,
    NormEquivalence, NormVerdict,
};
use crate::invariants::AlexanderData;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("links have {left} and {right} components")]
    ComponentMismatch { left: usize, right: usize },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

fn same_count(l: &AlexanderData, j: &AlexanderData) -> Result<(), ObstructionError> {
    if l.components != j.components {
        return Err(ObstructionError::ComponentMismatch { left: l.components, right: j.components });
    }
    Ok(())
}

/// `|beta(L) - beta(J)|`, a lower bound for the Gordian distance and the clasp number.
pub fn gordian_rank_bound(l: &AlexanderData, j: &AlexanderData) -> Result<usize, ObstructionError> {
    same_count(l, j)?;
    Ok(l.beta.abs_diff(j.beta))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GordianVerdict {
    /// The distance `|beta(L) - beta(J)|` being tested.
    pub candidate: usize,
    /// False certifies that the distance exceeds `candidate`.
    pub compatible: bool,
    /// Torsion polynomial of the larger-rank link divided out of the other one.
    pub quotient: Option<LaurentPoly>,
    pub verdict: Option<NormVerdict>,
}

/// Tests whether the Gordian distance can equal the rank difference. The link
/// with the larger rank plays the role of `J`; at that distance its torsion
/// polynomial must divide the other one with a norm times a negligible quotient.
pub fn gordian_extremal_divisibility(l: &AlexanderData, j: &AlexanderData) -> Result<GordianVerdict, ObstructionError> {
    let candidate = gordian_rank_bound(l, j)?;
    let (low, high) = if l.beta <= j.beta { (l, j) } else { (j, l) };
    let quotient = low.delta_tor.divide_exact(&high.delta_tor).map_err(FactorError::from)?;
    let verdict = quotient.as_ref().map(is_norm_up_to_negligible).transpose()?;
    Ok(GordianVerdict { candidate, compatible: verdict.as_ref().is_some_and(|v| v.is_norm), quotient, verdict })
}

/// Whether two splitting sequences of length `m - 1` ending in split links with
/// component polynomial products `k_product` and `j_product` can coexist. Only
/// meaningful when `Δ_L ≠ 0` and the weak splitting number is `m - 1`; the caller
/// vouches for the latter.
pub fn splitting_sequence_knot_constraint(
    l: &AlexanderData,
    k_product: &LaurentPoly,
    j_product: &LaurentPoly,
) -> Result<NormEquivalence, ObstructionError> {
    if l.delta.is_zero() {
        return Err(ObstructionError::Hypothesis("the Alexander polynomial is zero".into()));
    }
    Ok(norm_equivalent(k_product, j_product)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotComplexity {
    pub multiplicity: u32,
    /// Lower bound on the span of the Alexander polynomial of any knot that
    /// arises from the other splitting sequences.
    pub min_alex_degree: u32,
    pub min_crossings: u32,
}

/// When `delta_j` (in `t_1`) divides `delta_l` to an odd power, every knot in
/// the first component after a one-change split has `delta_j` as a factor.
pub fn forced_knot_complexity(
    delta_l: &LaurentPoly,
    delta_j: &LaurentPoly,
) -> Result<KnotComplexity, ObstructionError> {
    if delta_j.nvars() != 1 {
        return Err(ObstructionError::Hypothesis(format!("{delta_j} is not a one-variable polynomial")));
    }
    let q = delta_j.embed(delta_l.nvars(), &[0]);
    let odd = odd_multiplicity_divisor(delta_l, &q)?;
    if !odd.forced_divides {
        return Err(ObstructionError::Hypothesis(format!(
            "{delta_j} divides with even multiplicity {}",
            odd.multiplicity
        )));
    }
    let min_alex_degree = delta_j.span(0);
    Ok(KnotComplexity { multiplicity: odd.multiplicity, min_alex_degree, min_crossings: min_alex_degree + 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandClaspVerdict {
    pub consistent: bool,
    /// `Δ_L / (Δ_K(t_2) Δ_J(t_1))`, absent when the division is not exact.
    pub quotient: Option<LaurentPoly>,
    /// `g` with `quotient ≐ g * ḡ`.
    pub g: Option<LaurentPoly>,
    /// Whether `g ≐ 1`, as for a trivial band-clasping.
    pub trivial: bool,
    pub blocking_factors: Vec<LaurentPoly>,
}

/// Tests `Δ_L(s, t) ≐ Δ_K(t) Δ_J(s) g ḡ` with `s = t_1` and `t = t_2`.
/// Only `±` monomials are discarded, so factors `t_i - 1` must pair up as well.
pub fn band_clasping_check(
    delta_l: &LaurentPoly,
    delta_k: &LaurentPoly,
    delta_j: &LaurentPoly,
) -> Result<BandClaspVerdict, ObstructionError> {
    if delta_l.nvars() != 2 || delta_k.nvars() != 1 || delta_j.nvars() != 1 {
        return Err(ObstructionError::Hypothesis("expected a two-variable and two one-variable polynomials".into()));
    }
    if delta_l.is_zero() {
        return Err(FactorError::ZeroInput.into());
    }
    let product = delta_k.embed(2, &[1]) * delta_j.embed(2, &[0]);
    let Some(quotient) = delta_l.divide_exact(&product).map_err(FactorError::from)? else {
        return Ok(BandClaspVerdict {
            consistent: false,
            quotient: None,
            g: None,
            trivial: false,
            blocking_factors: Vec::new(),
        });
    };
    let v = is_norm_up_to_units(&quotient)?;
    let trivial = v.witness.as_ref().is_some_and(LaurentPoly::is_one);
    Ok(BandClaspVerdict {
        consistent: v.is_norm,
        quotient: Some(quotient),
        g: v.witness,
        trivial,
        blocking_factors: v.blocking_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, Some(n)).unwrap()
    }

    fn data(beta: usize, tor: &str, m: usize) -> AlexanderData {
        let delta_tor = p(tor, m);
        let delta = if beta == 0 { delta_tor.clone() } else { LaurentPoly::zero(m) };
        AlexanderData { components: m, beta, delta, delta_tor }
    }

    #[test]
    fn rank_difference() {
        let l = data(0, "(t1-1)(t2-1)(t3-1)(t2t3+1)", 3);
        let u = data(2, "1", 3);
        assert_eq!(gordian_rank_bound(&l, &u).unwrap(), 2);
        assert_eq!(gordian_rank_bound(&l, &l).unwrap(), 0);
        assert!(matches!(
            gordian_rank_bound(&l, &data(1, "1", 2)),
            Err(ObstructionError::ComponentMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn extremal_divisibility() {
        let j = data(1, "t1^2-t1+1", 2);
        let l = data(0, "(t1^2-t1+1)(t1t2-2)(t1^-1t2^-1-2)(t2-1)", 2);
        let v = gordian_extremal_divisibility(&l, &j).unwrap();
        assert!(v.compatible);
        assert_eq!(v.candidate, 1);
        let l = data(0, "(t1^2-t1+1)(t2^2-t2+1)", 2);
        let v = gordian_extremal_divisibility(&l, &j).unwrap();
        assert!(!v.compatible);
        assert_eq!(v.verdict.unwrap().blocking_factors, vec![p("t2^2-t2+1", 2)]);
        let v = gordian_extremal_divisibility(&data(0, "t1t2+1", 2), &j).unwrap();
        assert!(!v.compatible && v.quotient.is_none());
    }

    #[test]
    fn sequence_constraint_is_symmetric() {
        let l = data(0, "(t1-1)(t2-1)", 2);
        let a = p("t1^2-t1+1", 2);
        let b = p("(t1^2-t1+1)(t1t2-2)(t1^-1t2^-1-2)(1-t1)", 2);
        let c = p("(t1^2-t1+1)(t2^2-t2+1)", 2);
        assert!(splitting_sequence_knot_constraint(&l, &a, &a).unwrap().equivalent);
        assert!(splitting_sequence_knot_constraint(&l, &a, &b).unwrap().equivalent);
        assert!(splitting_sequence_knot_constraint(&l, &b, &a).unwrap().equivalent);
        assert!(!splitting_sequence_knot_constraint(&l, &a, &c).unwrap().equivalent);
        assert!(!splitting_sequence_knot_constraint(&l, &c, &a).unwrap().equivalent);
        let zero = data(1, "1", 2);
        assert!(matches!(splitting_sequence_knot_constraint(&zero, &a, &a), Err(ObstructionError::Hypothesis(_))));
    }

    #[test]
    fn complexity_from_odd_multiplicity() {
        let l = p("(t1-1)(t2-1)(t1^2-t1+1)", 2);
        let k = forced_knot_complexity(&l, &p("t1^2-t1+1", 1)).unwrap();
        assert_eq!((k.multiplicity, k.min_alex_degree, k.min_crossings), (1, 2, 3));
        // Cyclotomic polynomial of the prime 7 has alternating coefficients.
        let phi7 = p("t1^6-t1^5+t1^4-t1^3+t1^2-t1+1", 1);
        let l7 = phi7.embed(2, &[0]) * p("(t1-1)(t2-1)", 2);
        assert_eq!(forced_knot_complexity(&l7, &phi7).unwrap().min_crossings, 7);
        let sq = p("(t1^2-t1+1)^2(t2-1)", 2);
        assert!(matches!(forced_knot_complexity(&sq, &p("t1^2-t1+1", 1)), Err(ObstructionError::Hypothesis(_))));
        assert!(matches!(
            forced_knot_complexity(&l, &p("(t1^2-t1+1)^2", 1)),
            Err(ObstructionError::Factor(FactorError::Reducible(_)))
        ));
    }

    #[test]
    fn band_clasping() {
        let k = p("t1^2-t1+1", 1);
        let l = p("(1-t1+t1^2)(1-t2+t2^2)(t1^-1-1+t2)(t1-1+t2^-1)", 2);
        let v = band_clasping_check(&l, &k, &k).unwrap();
        assert!(v.consistent && !v.trivial);
        let g = v.g.unwrap();
        let class = p("t1-1+t2^-1", 2);
        assert!(g.associate(&class) || g.associate(&class.involute()));

        let trivial = p("(t1^2-t1+1)(t2^2-t2+1)", 2);
        let v = band_clasping_check(&trivial, &k, &k).unwrap();
        assert!(v.consistent && v.trivial);

        let bad = p("(t1^2-t1+1)(t2^2-t2+1)(t1t2+1)", 2);
        let v = band_clasping_check(&bad, &k, &k).unwrap();
        assert!(!v.consistent);
        assert_eq!(v.blocking_factors, vec![p("t1t2+1", 2)]);
        // A lone t - 1 is not a norm here, unlike for the splitting rule.
        let v = band_clasping_check(&(trivial * p("t2-1", 2)), &k, &k).unwrap();
        assert!(!v.consistent);
    }
}
