#![allow(dead_code)]

use std::path::PathBuf;

use linkbounds::diagram::{parse_fixture, Fixture};
use linkbounds::laurent::{parse_poly, LaurentPoly, Monomial};
use proptest::prelude::*;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load(name: &str) -> Fixture {
    let path = fixture_dir().join(format!("{name}.link"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_fixture(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every fixture, sorted by file name.
pub fn corpus() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "link"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| parse_fixture(&std::fs::read_to_string(p).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", p.display())))
        .collect()
}

pub fn poly(s: &str, nvars: usize) -> LaurentPoly {
    parse_poly(s, Some(nvars)).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn poly_in(nvars: usize, max_terms: usize, exp: i32, coef: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-exp..=exp, nvars), -coef..=coef), 0..=max_terms)
        .prop_map(move |terms| LaurentPoly::from_terms(nvars, terms))
}

pub fn nonzero_in(nvars: usize, max_terms: usize, exp: i32, coef: i64) -> impl Strategy<Value = LaurentPoly> {
    poly_in(nvars, max_terms, exp, coef).prop_filter("nonzero", |p| !p.is_zero())
}

/// `± t^r * prod (1 - t_i)^{s_i}`.
pub fn negligible(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    (any::<bool>(), prop::collection::vec(-3i32..=3, nvars), prop::collection::vec(0u32..=2, nvars)).prop_map(
        move |(neg, shift, powers)| {
            let mut p = LaurentPoly::term(Monomial::new(shift), if neg { -1 } else { 1 });
            for (v, s) in powers.into_iter().enumerate() {
                p = p * (LaurentPoly::one(nvars) - LaurentPoly::var(nvars, v)).pow(s);
            }
            p
        },
    )
}

/// A pair of polynomials in a shared ring of 1 to 3 variables.
pub fn pair(max_terms: usize) -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    (1usize..=3).prop_flat_map(move |n| (poly_in(n, max_terms, 2, 4), poly_in(n, max_terms, 2, 4)))
}

/// Kept to exponents in `-1..=1` so the Kronecker images stay small.
pub fn nonzero_pair(max_terms: usize) -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    (1usize..=3).prop_flat_map(move |n| (nonzero_in(n, max_terms, 1, 4), nonzero_in(n, max_terms, 1, 4)))
}
