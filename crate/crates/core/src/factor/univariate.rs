//! Dense univariate polynomials over `Z` and `F_p`, and factorization over `Z`
//! by the Zassenhaus method: factor modulo a small prime, Hensel-lift the
//! modular factors, then recombine subsets into true factors.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients in ascending degree order, no trailing zeros; zero is `[]`.
pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(p: &[BigInt]) -> ZPoly {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

pub fn derivative(p: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut out);
    out
}

/// Exact division in `Z[x]`; `None` if `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(a)?;
    if da < db {
        return None;
    }
    let lb = &b[db];
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Pseudo-remainder `lc(b)^k a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem = a.to_vec();
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let top = rem.last().cloned().expect("nonempty");
        for c in rem.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &top * bj;
        }
        trim(&mut rem);
    }
    rem
}

/// Gcd in `Z[x]` by primitive remainder sequences; primitive part times content gcd,
/// with positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return primitive_part(b).into_iter().map(|c| c * content(b)).collect();
    }
    if b.is_empty() {
        return primitive_part(a).into_iter().map(|c| c * content(a)).collect();
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    x.into_iter().map(|v| v * &c).collect()
}

// ---------------------------------------------------------------------------
// Arithmetic over F_p, p < 2^31.

type FpPoly = Vec<u64>;

fn fp_trim(p: &mut FpPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn reduce(p: &[BigInt], modulus: u64) -> FpPoly {
    let m = BigInt::from(modulus);
    let mut out: FpPoly = p.iter().map(|c| c.mod_floor(&m).to_u64().expect("reduced below modulus")).collect();
    fp_trim(&mut out);
    out
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut q = vec![0u64; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(rem[k + db], inv, p);
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - mulmod(c, bj, p)) % p;
        }
    }
    fp_trim(&mut q);
    fp_trim(&mut rem);
    (q, rem)
}

fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = fp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Returns `(g, s, t)` with `s a + t b = g` monic.
fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = invmod(*r0.last().expect("nonzero gcd"), p);
    let sc = |v: &[u64]| -> FpPoly {
        let mut o: FpPoly = v.iter().map(|&c| mulmod(c, inv, p)).collect();
        fp_trim(&mut o);
        o
    };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_powmod_big(base: &[u64], e: &BigUint, modulus: &[u64], p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let base = fp_divrem(base, modulus, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), modulus, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &base, p), modulus, p).1;
        }
    }
    acc
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect();
    fp_trim(&mut out);
    out
}

/// Distinct-degree then equal-degree (Cantor–Zassenhaus) factorization of a
/// monic square-free polynomial over `F_p`, `p` odd.
fn fp_factor(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let mut g = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 1usize;
    while 2 * d <= g.len().saturating_sub(1) {
        h = fp_powmod_big(&h, &pb, &g, p);
        let gd = fp_gcd(&g, &fp_sub(&h, &x, p), p);
        if gd.len() > 1 {
            equal_degree(&gd, d, p, rng, &mut out);
            g = fp_divrem(&g, &gd, p).0;
            h = fp_divrem(&h, &g, p).1;
        }
        d += 1;
    }
    if g.len() > 1 {
        out.push(fp_monic(&g, p));
    }
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp_trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod_big(&a, &exp, g, p), &[1], p);
        let u = fp_gcd(g, &b, p);
        if u.len() > 1 && u.len() < g.len() {
            let v = fp_divrem(g, &u, p).0;
            equal_degree(&u, d, p, rng, out);
            equal_degree(&v, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a prime power, coefficients kept in [0, m).

fn zm_reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zm_reduce(&mul(a, b), m)
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let sum: ZPoly =
        (0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect();
    zm_reduce(&sum, m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let neg: ZPoly = b.iter().map(|c| -c).collect();
    zm_add(a, &neg, m)
}

/// Division by a monic polynomial modulo `m`.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut rem = zm_reduce(a, m);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigInt::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
    }
    trim(&mut q);
    trim(&mut rem);
    (q, rem)
}

fn lift_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from factorization data modulo `m` to `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zm_sub(f, &zm_mul(g, h, m2), m2);
    let (q, r) = zm_divrem_monic(&zm_mul(s, &e, m2), h, m2);
    let g2 = zm_add(&zm_add(g, &zm_mul(t, &e, m2), m2), &zm_mul(&q, g, m2), m2);
    let h2 = zm_add(h, &r, m2);
    let b = zm_sub(&zm_add(&zm_mul(s, &g2, m2), &zm_mul(t, &h2, m2), m2), &[BigInt::one()], m2);
    let (c, d) = zm_divrem_monic(&zm_mul(s, &b, m2), &h2, m2);
    let s2 = zm_sub(s, &d, m2);
    let t2 = zm_sub(&zm_sub(t, &zm_mul(t, &b, m2), m2), &zm_mul(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts monic modular factors of `f` (mod `p`) to monic factors modulo `p^(2^k)`.
fn multifactor_lift(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let target = pb.pow(1u32 << k);
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").mod_floor(&target);
        let inv = lc.modinv(&target).expect("leading coefficient is a unit mod p");
        let scaled: ZPoly = f.iter().map(|c| c * &inv).collect();
        return vec![zm_reduce(&scaled, &target)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc = f.last().expect("nonzero").mod_floor(&pb).to_u64().expect("small");
    let g0 = left.iter().fold(vec![lc], |acc, q| fp_mul(&acc, q, p));
    let h0 = right.iter().fold(vec![1u64], |acc, q| fp_mul(&acc, q, p));
    let (_, s0, t0) = fp_ext_gcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = pb.clone();
    for _ in 0..k {
        m = &m * &m;
        let (g2, h2, s2, t2) = hensel_step(&zm_reduce(f, &m), &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
    }
    let mut out = multifactor_lift(&g, left, p, k);
    out.extend(multifactor_lift(&h, right, p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Irreducible factors of a primitive, square-free `f` with `f(0) != 0`.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![primitive_part(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let big_primes = (1000u64..).filter(|&q| is_prime_u64(q));
    for p in SMALL_PRIMES.iter().copied().chain(big_primes) {
        let fp = reduce(f, p);
        if fp.len() != f.len() {
            continue;
        }
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = fp_factor(&fp_monic(&fp, p), p, &mut rng);
        if facs.len() == 1 {
            return vec![primitive_part(f)];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime exists for square-free input");

    // Coefficient bound for any factor: 2^n * ||f||_2, times the leading coefficient.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let lc_abs = f[n].abs();
    let bound = (isqrt_ceil(&norm2) << n) * &lc_abs * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut k = 0u32;
    while pb.pow(1u32 << k) <= bound {
        k += 1;
    }
    let modulus = pb.pow(1u32 << k);
    let mut lifted = multifactor_lift(f, &modular, p, k);

    let mut found = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = rest.last().cloned().expect("nonzero");
        for combo in combinations(lifted.len(), size) {
            let cand = combo.iter().fold(vec![lc.clone()], |acc, &i| zm_mul(&acc, &lifted[i], &modulus));
            let cand = primitive_part(&symmetric(&cand, &modulus));
            if let Some(q) = div_exact(&rest, &cand) {
                found.push(cand);
                rest = q;
                let mut idx = 0;
                lifted.retain(|_| {
                    let keep = !combo.contains(&idx);
                    idx += 1;
                    keep
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        found.push(primitive_part(&rest));
    }
    found
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Complete factorization over `Z` of a nonconstant-or-constant polynomial,
/// returned as `(content, [(irreducible primitive factor, multiplicity)])`
/// with factors having positive leading coefficient. The content carries the sign.
/// A prime keeping the degree and leaving `f` square-free proves `f` square-free
/// over the integers, skipping the costly integer gcd with the derivative.
fn squarefree_mod_some_prime(f: &[BigInt]) -> bool {
    SMALL_PRIMES.iter().take(8).any(|&p| {
        let fp = reduce(f, p);
        fp.len() == f.len() && fp_gcd(&fp, &fp_derivative(&fp, p), p).len() == 1
    })
}

pub fn factor(f: &[BigInt]) -> (BigInt, Vec<(ZPoly, u32)>) {
    assert!(!f.is_empty(), "cannot factor zero");
    let mut c = content(f);
    if f.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    let mut g: ZPoly = f.iter().map(|x| x / &c).collect();
    let mut out = Vec::new();
    let zeros = g.iter().take_while(|x| x.is_zero()).count();
    if zeros > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], zeros as u32));
        g.drain(..zeros);
    }
    if g.len() <= 1 {
        return (c, out);
    }
    let squarefree = if squarefree_mod_some_prime(&g) {
        g.clone()
    } else {
        let d = gcd(&g, &derivative(&g));
        primitive_part(&div_exact(&g, &d).expect("gcd divides"))
    };
    for q in zassenhaus(&squarefree) {
        let mut mult = 0;
        while let Some(next) = div_exact(&g, &q) {
            g = next;
            mult += 1;
        }
        debug_assert!(mult > 0);
        out.push((q, mult));
    }
    debug_assert!(g.len() == 1 && g[0].abs().is_one(), "factors exhaust input");
    if g.len() == 1 && g[0].sign() == Sign::Minus {
        c = -c;
    }
    (c, out)
}
