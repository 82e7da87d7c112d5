//! Multivariate gcd over `Z[t1, ..., tm]` by recursive content / primitive-part
//! reduction and primitive pseudo-remainder sequences in the highest variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::univariate;
use crate::laurent::{LaurentPoly, Monomial};

/// Substitution points tried for the variables other than the one kept.
const IMAGE_POINTS: [i64; 4] = [2, -3, 5, 7];

/// Coefficients of `p` as a polynomial in `t_var`, keyed by exponent.
fn coefficients_in(p: &LaurentPoly, var: usize) -> BTreeMap<i32, LaurentPoly> {
    let n = p.nvars();
    let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let k = std::mem::replace(&mut e[var], 0);
        out.entry(k).or_insert_with(|| LaurentPoly::zero(n)).add_term(Monomial::new(e), c.clone());
    }
    out
}

fn degree_in(p: &LaurentPoly, var: usize) -> i32 {
    p.max_exp(var).unwrap_or(0)
}

fn leading_coefficient_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    coefficients_in(p, var).pop_last().map(|(_, c)| c).expect("nonzero polynomial")
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `t_var`.
fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut coeffs = coefficients_in(p, var).into_values();
    let first = coeffs.next().expect("nonzero polynomial");
    coeffs.fold(first, |g, c| if g.is_one() { g } else { poly_gcd(&g, &c) })
}

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.divide_exact(b).expect("same ring").expect("divisor known to divide")
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let n = a.nvars();
    let db = degree_in(b, var);
    let lb = leading_coefficient_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, var) >= db {
        let dr = degree_in(&r, var);
        let lr = leading_coefficient_in(&r, var);
        let shift = Monomial::var_power(n, var, dr - db);
        r = &lb * &r - (lr * b).mul_monomial(&shift);
    }
    r
}

/// `p` as a dense univariate polynomial in `t_var`, with every other variable
/// `t_w` replaced by `base + w`.
fn image_in(p: &LaurentPoly, var: usize, base: i64) -> univariate::ZPoly {
    let mut out = vec![BigInt::zero(); degree_in(p, var) as usize + 1];
    for (m, c) in p.terms() {
        let mut value = c.clone();
        for (w, &e) in m.exponents().iter().enumerate() {
            if w != var {
                value *= BigInt::from(base + w as i64).pow(e as u32);
            }
        }
        out[m.exponents()[var] as usize] += value;
    }
    univariate::trim(&mut out);
    out
}

/// Proves that the gcd of two polynomials with nonnegative exponents has degree
/// zero in every variable. The true gcd maps onto a divisor of the gcd of the
/// images, with its degree intact whenever the leading coefficients survive, so
/// constant image gcds at such points leave only an integer gcd. A `false` answer
/// proves nothing.
fn certified_coprime(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    let vars: Vec<usize> = (0..a.nvars()).filter(|&v| degree_in(a, v) > 0 && degree_in(b, v) > 0).collect();
    vars.into_iter().all(|var| {
        IMAGE_POINTS.iter().any(|&base| {
            let (ia, ib) = (image_in(a, var, base), image_in(b, var, base));
            let full = |img: &univariate::ZPoly, p: &LaurentPoly| img.len() == degree_in(p, var) as usize + 1;
            full(&ia, a) && full(&ib, b) && univariate::gcd(&ia, &ib).len() == 1
        })
    })
}

/// Gcd of two polynomials with nonnegative exponents, up to sign.
pub(crate) fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let n = a.nvars();
    let var = a.vars_involved().into_iter().chain(b.vars_involved()).max();
    let Some(var) = var else {
        let g = a.constant_value().expect("constant").gcd(&b.constant_value().expect("constant"));
        return LaurentPoly::constant(n, g);
    };
    if certified_coprime(a, b) {
        return LaurentPoly::constant(n, a.content().gcd(&b.content()));
    }
    let (ca, cb) = (content_in(a, var), content_in(b, var));
    let c = poly_gcd(&ca, &cb);
    let (mut x, mut y) = (exact(a, &ca), exact(b, &cb));
    if degree_in(&x, var) < degree_in(&y, var) {
        std::mem::swap(&mut x, &mut y);
    }
    while degree_in(&y, var) > 0 {
        let r = pseudo_rem(&x, &y, var);
        if r.is_zero() {
            break;
        }
        x = y;
        y = exact(&r, &content_in(&r, var));
    }
    if degree_in(&y, var) == 0 {
        // A nonzero primitive polynomial of degree 0 in `var` is a unit here.
        return c;
    }
    c * y
}

/// Gcd in the Laurent ring, in unit normal form.
pub(crate) fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (_, pa) = if a.is_zero() { (Monomial::one(a.nvars()), a.clone()) } else { a.shift_to_polynomial() };
    let (_, pb) = if b.is_zero() { (Monomial::one(b.nvars()), b.clone()) } else { b.shift_to_polynomial() };
    let g = poly_gcd(&pa, &pb);
    debug_assert!(!g.is_zero() || (a.is_zero() && b.is_zero()));
    if g.is_zero() {
        return g;
    }
    g.normalize_unit().expect("nonzero").into_poly()
}
