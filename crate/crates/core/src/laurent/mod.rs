//! Exact arithmetic in the Laurent polynomial ring `Z[t1^±1, ..., tm^±1]`.
//!
//! Polynomials are stored sparsely as a map from exponent vectors to nonzero
//! arbitrary-precision integer coefficients. Terms are kept in ascending
//! lexicographic order of their exponent vectors (`t1` most significant), so the
//! leading term is the last entry of the map.

mod parse;

pub use parse::{parse_poly, ParseError};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("operation is undefined for the zero polynomial")]
    ZeroInput,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("substitution covers {got} variables, polynomial has {expected}")]
    BadSubstitution { expected: usize, got: usize },
}

/// Exponent vector of a Laurent monomial `t1^e1 ... tm^em`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `t_var^exp`.
    pub fn var_power(nvars: usize, var: usize, exp: i32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.0, true)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[i32], show_one: bool) -> fmt::Result {
    let mut first = true;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "t{}", i + 1)?;
        } else {
            write!(f, "t{}^{}", i + 1, e)?;
        }
    }
    if first && show_one {
        f.write_str("1")?;
    }
    Ok(())
}

/// An element of `Z[t1^±1, ..., tm^±1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let nvars = m.nvars();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_{var+1}` (variables are zero-indexed internally).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::term(Monomial::var_power(nvars, var, 1), 1)
    }

    /// `t_{var+1} - 1`.
    pub fn t_minus_one(nvars: usize, var: usize) -> Self {
        Self::var(nvars, var) - Self::one(nvars)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c.into());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Lexicographically greatest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// `Some((sign, monomial))` when the polynomial is a unit `±t^k` of the ring.
    pub fn as_unit(&self) -> Option<(i8, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, m.clone()))
        } else if (-c).is_one() {
            Some((-1, m.clone()))
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The involution `t_i -> t_i^{-1}`.
    pub fn involute(&self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.inverse(), c.clone())).collect() }
    }

    /// Variables with a nonzero exponent in some term.
    pub fn vars_involved(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.keys().any(|m| m.0[v] != 0)).collect()
    }

    pub fn max_exp(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn min_exp(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    /// `max - min` exponent of `var`; 0 for the zero polynomial.
    pub fn span(&self, var: usize) -> u32 {
        match (self.min_exp(var), self.max_exp(var)) {
            (Some(lo), Some(hi)) => (hi - lo) as u32,
            _ => 0,
        }
    }

    /// Componentwise minimal exponent vector over all terms.
    pub fn min_monomial(&self) -> Monomial {
        Monomial((0..self.nvars).map(|v| self.min_exp(v).unwrap_or(0)).collect())
    }

    /// Shift so that every variable has minimal exponent 0; returns `(shift, shifted)`
    /// with `self = t^shift * shifted`.
    pub fn shift_to_polynomial(&self) -> (Monomial, LaurentPoly) {
        let shift = self.min_monomial();
        (shift.clone(), self.mul_monomial(&shift.inverse()))
    }

    /// Gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<LaurentPoly> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(LaurentPoly { nvars: self.nvars, terms })
    }

    /// Splits `self = sign * t^shift * nf` with `nf` in unit normal form.
    pub fn unit_split(&self) -> Result<(i8, Monomial, LaurentPoly), LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroInput);
        }
        let (shift, mut nf) = self.shift_to_polynomial();
        let mut sign = 1i8;
        if nf.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            nf = -nf;
            sign = -1;
        }
        Ok((sign, shift, nf))
    }

    /// Canonical representative of the class of `self` under multiplication by units.
    pub fn normalize_unit(&self) -> Result<UnitNormalForm, LaurentError> {
        self.unit_split().map(|(_, _, nf)| UnitNormalForm(nf))
    }

    /// `self ≐ other`: equal up to multiplication by `±t^k`.
    pub fn associate(&self, other: &LaurentPoly) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.nvars == other.nvars && self.normalize_unit().ok() == other.normalize_unit().ok(),
            _ => false,
        }
    }

    /// Applies the ring homomorphism sending `t_i` to the monomial `subst[i]`
    /// of a (possibly different) Laurent ring.
    pub fn evaluate(&self, subst: &[Monomial]) -> Result<LaurentPoly, LaurentError> {
        if subst.len() != self.nvars {
            return Err(LaurentError::BadSubstitution { expected: self.nvars, got: subst.len() });
        }
        let out_vars = subst.first().map_or(0, |m| m.nvars());
        if subst.iter().any(|m| m.nvars() != out_vars) {
            return Err(LaurentError::BadSubstitution { expected: out_vars, got: 0 });
        }
        let mut out = LaurentPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut target = Monomial::one(out_vars);
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    target = target.mul(&subst[i].pow(e));
                }
            }
            out.add_term(target, c.clone());
        }
        Ok(out)
    }

    /// Substitution `t_i -> t` for all `i`, into a one-variable ring.
    pub fn diagonal(&self) -> LaurentPoly {
        let subst = vec![Monomial(vec![1]); self.nvars];
        self.evaluate(&subst).expect("diagonal substitution is total")
    }

    /// Sets `t_var = 1`, keeping the variable count (the variable no longer occurs).
    pub fn at_one(&self, var: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[var] = 0;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Re-embeds into a ring with `nvars_out` variables, sending `t_i` to `t_{map[i]}`.
    pub fn embed(&self, nvars_out: usize, map: &[usize]) -> LaurentPoly {
        let subst: Vec<Monomial> = map.iter().map(|&j| Monomial::var_power(nvars_out, j, 1)).collect();
        self.evaluate(&subst).expect("embedding map covers all variables")
    }

    /// Exact quotient `self / divisor`, or `Ok(None)` when the divisor does not divide.
    pub fn divide_exact(&self, divisor: &LaurentPoly) -> Result<Option<LaurentPoly>, LaurentError> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Some(LaurentPoly::zero(self.nvars)));
        }
        let (sa, a) = self.shift_to_polynomial();
        let (sb, b) = divisor.shift_to_polynomial();
        Ok(divide_polynomial(&a, &b).map(|q| q.mul_monomial(&sa.mul(&sb.inverse()))))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        matches!(other.divide_exact(self), Ok(Some(_)))
    }

    /// Splits off the maximal powers of `(1 - t_i)` and the unit part.
    pub fn negligible_decompose(&self) -> Result<NegligibleDecomposition, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroInput);
        }
        let mut rest = self.clone();
        let mut exps = vec![0u32; self.nvars];
        for v in 0..self.nvars {
            let one_minus = LaurentPoly::one(self.nvars) - LaurentPoly::var(self.nvars, v);
            while rest.at_one(v).is_zero() {
                rest = rest.divide_exact(&one_minus)?.expect("factor theorem: vanishing at t=1 implies divisibility");
                exps[v] += 1;
            }
        }
        let (sign, shift, nf) = rest.unit_split()?;
        Ok(NegligibleDecomposition {
            core: UnitNormalForm(nf),
            monomial_part: shift,
            sign,
            one_minus_t_exponents: exps,
        })
    }

    /// Whether `self` is `± t^r * prod (1 - t_i)^{s_i}` with `s_i >= 0`.
    pub fn is_negligible(&self) -> bool {
        self.negligible_decompose().is_ok_and(|d| d.core.poly().is_one())
    }
}

/// Division in `Z[t]` for polynomials with nonnegative exponents.
fn divide_polynomial(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let n = a.nvars;
    let deg_a: Vec<i32> = (0..n).map(|v| a.max_exp(v).unwrap_or(0)).collect();
    let deg_b: Vec<i32> = (0..n).map(|v| b.max_exp(v).unwrap_or(0)).collect();
    let bound: Vec<i32> = deg_a.iter().zip(&deg_b).map(|(x, y)| x - y).collect();
    if bound.iter().any(|&d| d < 0) {
        return None;
    }
    let (lead_m, lead_c) = b.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = a.clone();
    let mut quot = LaurentPoly::zero(n);
    while let Some((rm, rc)) = rem.leading_term() {
        let e: Vec<i32> = rm.0.iter().zip(&lead_m.0).map(|(x, y)| x - y).collect();
        if e.iter().zip(&bound).any(|(&x, &d)| x < 0 || x > d) {
            return None;
        }
        let (q, r) = rc.div_rem(&lead_c);
        if !r.is_zero() {
            return None;
        }
        let qm = Monomial(e);
        for (bm, bc) in &b.terms {
            rem.add_term(bm.mul(&qm), -(bc * &q));
        }
        quot.add_term(qm, q);
    }
    Some(quot)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &m.0, false)?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_poly(&text, None).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("operands live in the same Laurent ring")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

/// Canonical representative of a class modulo units `±t^k`: every variable has
/// minimal exponent 0 and the lexicographically leading coefficient is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitNormalForm(LaurentPoly);

impl UnitNormalForm {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }
}

impl fmt::Display for UnitNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: by variable count, then term count, then terms in descending order.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then(self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

/// `input = sign * t^monomial_part * prod (1 - t_i)^{s_i} * core`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegligibleDecomposition {
    pub core: UnitNormalForm,
    pub monomial_part: Monomial,
    pub sign: i8,
    pub one_minus_t_exponents: Vec<u32>,
}

impl NegligibleDecomposition {
    pub fn is_negligible(&self) -> bool {
        self.core.poly().is_one()
    }

    /// The negligible factor `sign * t^r * prod (1 - t_i)^{s_i}`.
    pub fn negligible_part(&self) -> LaurentPoly {
        let n = self.monomial_part.nvars();
        let mut p = LaurentPoly::term(self.monomial_part.clone(), self.sign as i64);
        for (v, &s) in self.one_minus_t_exponents.iter().enumerate() {
            let one_minus = LaurentPoly::one(n) - LaurentPoly::var(n, v);
            p = p * one_minus.pow(s);
        }
        p
    }

    pub fn recombine(&self) -> LaurentPoly {
        self.negligible_part() * self.core.poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, Some(n)).unwrap()
    }

    #[test]
    fn expansion_and_zero() {
        assert_eq!(p("(t1-1)*(t2-1)", 2), p("t1*t2 - t1 - t2 + 1", 2));
        assert!((p("t1^3 - 7*t2", 2) * LaurentPoly::zero(2)).is_zero());
        assert_eq!(p("(t1-1)*(t1^-1-1)", 1), p("-t1 + 2 - t1^-1", 1));
        assert_eq!(p("(t1-1)*(t1^-1-1)", 1), p("-t1^-1*(t1-1)^2", 1));
    }

    #[test]
    fn mismatched_rings() {
        let err = p("t1", 1).checked_add(&p("t1", 2)).unwrap_err();
        assert_eq!(err, LaurentError::VarCountMismatch { left: 1, right: 2 });
    }

    #[test]
    fn involution_examples() {
        assert_eq!(p("t1^2*t2 - 3", 2).involute(), p("t1^-2*t2^-1 - 3", 2));
        assert_eq!(p("5", 1).involute(), p("5", 1));
        let q = p("t2*t3 - 1", 3);
        assert_eq!(q.involute(), p("t2^-1*t3^-1*(1 - t2*t3)", 3));
        assert!(q.involute().associate(&q));
    }

    #[test]
    fn unit_normal_forms() {
        let nf = p("-t1^-1*(t1-1)^2", 1).normalize_unit().unwrap();
        assert_eq!(nf.poly(), &p("t1^2 - 2*t1 + 1", 1));
        assert!(p("t1*t2", 2).normalize_unit().unwrap().poly().is_one());
        let nf = p("t2^-1*t3^-1 - 1", 3).normalize_unit().unwrap();
        assert_eq!(nf.poly(), &p("t2*t3 - 1", 3));
        assert_eq!(LaurentPoly::zero(2).normalize_unit(), Err(LaurentError::ZeroInput));
    }

    #[test]
    fn negligible_examples() {
        let d = p("(t1-1)*(t2-1)*(t3-1)*(t2*t3-1)", 3).negligible_decompose().unwrap();
        assert_eq!(d.core.poly(), &p("t2*t3-1", 3));
        assert_eq!(d.one_minus_t_exponents, vec![1, 1, 1]);
        assert_eq!(d.recombine(), p("(t1-1)*(t2-1)*(t3-1)*(t2*t3-1)", 3));

        let d = p("(1-t1)^3", 1).negligible_decompose().unwrap();
        assert!(d.is_negligible());
        assert_eq!(d.one_minus_t_exponents, vec![3]);

        let q = p("t2^2 - t2 + 1", 2);
        assert!(!q.at_one(1).is_zero());
        let d = q.negligible_decompose().unwrap();
        assert_eq!(d.core.poly(), &q);
        assert_eq!(d.one_minus_t_exponents, vec![0, 0]);
        assert!(!q.is_negligible());
        assert!(p("-t1^-4*(1-t2)^2", 2).is_negligible());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p("t1*t2 - 1", 2).diagonal(), p("t1^2 - 1", 1));
        let kron = vec![Monomial::var_power(2, 0, 1), Monomial::var_power(2, 0, 5)];
        assert_eq!(p("t1 + t2", 2).evaluate(&kron).unwrap(), p("t1 + t1^5", 2));
        let hopf = LaurentPoly::one(2);
        let one_var = hopf.diagonal() * p("t1 - 1", 1);
        assert!(one_var.associate(&p("t1 - 1", 1)));
    }

    #[test]
    fn exact_division_examples() {
        let a = p("(t1-1)*(t2*t3-1)", 3);
        let b = p("t2*t3-1", 3);
        assert_eq!(a.divide_exact(&b).unwrap(), Some(p("t1-1", 3)));
        assert_eq!(p("t1^2+1", 1).divide_exact(&p("t1+1", 1)).unwrap(), None);
        assert_eq!(LaurentPoly::zero(1).divide_exact(&p("t1-1", 1)).unwrap(), Some(LaurentPoly::zero(1)));
        assert_eq!(p("t1", 1).divide_exact(&LaurentPoly::zero(1)), Err(LaurentError::ZeroDivisor));
        // Laurent quotients may carry negative exponents.
        let q = p("t1^-3*t2 - 2", 2);
        let d = p("t1^2 - t2^-1 + 4", 2);
        assert_eq!((&q * &d).divide_exact(&d).unwrap(), Some(q));
        // divisible by the monomial part only
        assert_eq!(p("t1^2-4", 1).divide_exact(&p("2*t1", 1)).unwrap(), None);
    }

    #[test]
    fn display_round_trip() {
        let q = p("-t1^2*t2^-1 + 3*t2 - 1", 2);
        assert_eq!(q.to_string(), "-t1^2*t2^-1 + 3*t2 - 1");
        assert_eq!(parse_poly(&q.to_string(), Some(2)).unwrap(), q);
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
    }
}
