//! Fraction-free (Bareiss) elimination over the Laurent ring, and a modular
//! evaluation shortcut for ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::LaurentPoly;

pub type Matrix = Vec<Vec<LaurentPoly>>;

fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.divide_exact(b).expect("same ring").expect("Bareiss quotients are exact")
}

/// Runs Bareiss elimination in place and returns the rank. Rows are permuted
/// as pivots are found; the returned sign is the parity of those swaps.
fn bareiss(m: &mut Matrix, ncols: usize) -> (usize, i8) {
    let nrows = m.len();
    let nvars = m.first().and_then(|r| r.first()).map_or(1, LaurentPoly::nvars);
    let mut prev = LaurentPoly::one(nvars);
    let mut rank = 0;
    let mut sign = 1i8;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| m[r][col].len()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = m[r][col].clone();
            for c in col + 1..ncols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = exact_div(&v, &prev);
            }
            m[r][col] = LaurentPoly::zero(nvars);
        }
        prev = pivot;
        rank += 1;
    }
    (rank, sign)
}

/// Rank over the quotient field, by exact elimination.
pub fn rank_exact(m: &Matrix, ncols: usize) -> usize {
    let mut work = m.clone();
    bareiss(&mut work, ncols).0
}

/// Determinant of a square matrix (the empty matrix has determinant 1).
pub fn determinant(m: &Matrix, nvars: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    let mut work = m.clone();
    let (rank, sign) = bareiss(&mut work, n);
    if rank < n {
        return LaurentPoly::zero(nvars);
    }
    let d = work[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

const PRIME: u64 = 2_147_483_647;

fn modpow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % PRIME;
        }
        a = a * a % PRIME;
        e >>= 1;
    }
    acc
}

fn eval_mod(p: &LaurentPoly, point: &[u64]) -> u64 {
    let p_big = BigInt::from(PRIME);
    let mut acc = 0u64;
    for (m, c) in p.terms() {
        let mut v = c.mod_floor(&p_big).to_u64().expect("reduced");
        for (&x, &e) in point.iter().zip(m.exponents()) {
            let base = if e < 0 { modpow(x, PRIME - 2) } else { x };
            v = v * modpow(base, e.unsigned_abs() as u64) % PRIME;
        }
        acc = (acc + v) % PRIME;
    }
    acc
}

/// Rank of the matrix evaluated at `point` over `F_p`, a lower bound for the
/// true rank that is equal to it for all but a sparse set of points.
pub fn rank_at_point(m: &Matrix, ncols: usize, point: &[u64]) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(|e| eval_mod(e, point)).collect()).collect();
    let nrows = a.len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| a[r][col] != 0) else { continue };
        a.swap(p, rank);
        let inv = modpow(a[rank][col], PRIME - 2);
        for r in rank + 1..nrows {
            let f = a[r][col] * inv % PRIME;
            if f == 0 {
                continue;
            }
            for c in col..ncols {
                a[r][c] = (a[r][c] + PRIME - f * a[rank][c] % PRIME) % PRIME;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Ranks at `samples` pseudo-random points, seeded deterministically.
pub fn sampled_ranks(m: &Matrix, ncols: usize, nvars: usize, samples: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let point: Vec<u64> = (0..nvars).map(|_| rng.gen_range(2..PRIME)).collect();
            rank_at_point(m, ncols, &point)
        })
        .collect()
}
