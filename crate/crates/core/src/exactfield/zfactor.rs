//! Factorization of squarefree primitive integer polynomials by modular
//! factoring and Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ZPoly = Vec<BigInt>;
type FpPoly = Vec<u64>;

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];
const EXTRA_PRIMES: [u64; 6] = [1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 1_000_099];

/// Factors a squarefree, primitive integer polynomial with positive leading
/// coefficient into irreducible factors over Z (each primitive, positive lead).
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = ztrim(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    // Strip a factor x, which every prime sees.
    if f[0].is_zero() {
        let rest: ZPoly = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter().chain(EXTRA_PRIMES.iter()) {
        let lc = mod_p(&f[n], p);
        if lc == 0 {
            continue;
        }
        let fp = to_fp(&f, p);
        let dfp = fp_derivative(&fp, p);
        if fp_degree(&fp_gcd(&fp, &dfp, p)) != Some(0) {
            continue;
        }
        let factors = fp_factor(&fp, p);
        if factors.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, factors) = best.expect("no lucky prime found for a squarefree polynomial");
    let bound = mignotte_bound(&f);
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= p;
        k += 1;
    }
    let lifted = hensel_lift_all(&f, &factors, p, k);
    recombine(f, lifted, &BigInt::from(p).pow(k))
}

fn ztrim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let max = f.iter().map(|c| c.abs()).max().unwrap();
    let lc = f[n].abs();
    // 2 * 2^n * (n+1) * max|a_i| * |lc|
    (BigInt::one() << (n + 1)) * BigInt::from(n + 1) * max * lc
}

fn mod_p(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn to_fp(f: &[BigInt], p: u64) -> FpPoly {
    fp_trim(f.iter().map(|c| mod_p(c, p)).collect())
}

fn fp_trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
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
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = fp_degree(b).expect("division by zero");
    let mut r = fp_trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = fp_degree(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], inv, p);
        let s = dr - db;
        for i in 0..=db {
            r[s + i] = (r[s + i] + p - mulmod(c, b[i], p)) % p;
        }
        q[s] = c;
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match fp_degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = invmod(a[d], p);
            a[..=d].iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = fp_trim(a.to_vec());
    let mut y = fp_trim(b.to_vec());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Returns `(s, t)` with `s a + t b = 1` modulo `p` (inputs coprime).
fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let d = fp_degree(&r0).expect("gcd of zero polynomials");
    assert_eq!(d, 0, "polynomials are not coprime modulo p");
    let inv = invmod(r0[0], p);
    let sc = |v: &[u64]| fp_trim(v.iter().map(|&c| mulmod(c, inv, p)).collect());
    (sc(&s0), sc(&t0))
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn fp_powmod_poly(base: &[u64], mut e: u128, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_divrem(&fp_mul(&acc, &b, p), m, p).1;
        }
        e >>= 1;
        if e > 0 {
            b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        }
    }
    acc
}

/// Monic irreducible factors of a squarefree polynomial modulo `p`.
fn fp_factor(f: &[u64], p: u64) -> Vec<FpPoly> {
    let f = fp_monic(f, p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    // Distinct-degree factorization.
    while fp_degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod_poly(&h, p as u128, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if fp_degree(&g).unwrap_or(0) > 0 {
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
    }
    if fp_degree(&rest).unwrap_or(0) > 0 {
        out.push(fp_monic(&rest, p));
    }
    out.sort();
    out
}

fn equal_degree_split(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = fp_degree(g).unwrap();
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let e: u128 = ((p as u128).pow(d as u32) - 1) / 2;
    loop {
        let a: FpPoly = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if fp_degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = fp_sub(&fp_powmod_poly(&a, e, g, p), &[1], p);
        let c = fp_gcd(&b, g, p);
        let dc = fp_degree(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            equal_degree_split(&c, d, p, rng, out);
            let other = fp_divrem(g, &c, p).0;
            equal_degree_split(&other, d, p, rng, out);
            return;
        }
    }
}

// ---- arithmetic modulo m = p^k on integer polynomials ----

fn zm_reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zm_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zm_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
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
    zm_reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = zm_reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        let s = dr - db;
        for i in 0..=db {
            r[s + i] = (&r[s + i] - &c * &b[i]).mod_floor(m);
        }
        q[s] = c;
        r = ztrim(r);
    }
    (ztrim(q), r)
}

fn lift_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step from modulus `m` to `m^2`.
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
    let g1 = zm_add(g, &zm_add(&zm_mul(t, &e, m2), &zm_mul(&q, g, m2), m2), m2);
    let h1 = zm_add(h, &r, m2);
    let b = zm_sub(&zm_add(&zm_mul(s, &g1, m2), &zm_mul(t, &h1, m2), m2), &[BigInt::one()], m2);
    let (c, d) = zm_divrem_monic(&zm_mul(s, &b, m2), &h1, m2);
    let s1 = zm_sub(s, &d, m2);
    let t1 = zm_sub(t, &zm_add(&zm_mul(t, &b, m2), &zm_mul(&c, &g1, m2), m2), m2);
    (g1, h1, s1, t1)
}

/// Lifts `f = lc(f) * prod(factors) mod p` to a factorization modulo
/// `p^k`, returning monic lifted factors.
fn hensel_lift_all(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let target = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc_inv = mod_inverse(&f[f.len() - 1], &target);
        return vec![zm_reduce(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &target)];
    }
    let lc = f[f.len() - 1].clone();
    let lc_p = mod_p(&lc, p);
    let g0: FpPoly = factors[0].iter().map(|&c| mulmod(c, lc_p, p)).collect();
    let mut h0: FpPoly = vec![1];
    for fac in &factors[1..] {
        h0 = fp_mul(&h0, fac, p);
    }
    let (s0, t0) = fp_xgcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = BigInt::from(p);
    while m < target {
        let m2 = (&m * &m).min(target.clone());
        let step = hensel_step(f, &g, &h, &s, &t, &m2);
        g = step.0;
        h = step.1;
        s = step.2;
        t = step.3;
        m = m2;
    }
    let lc_inv = mod_inverse(&lc, &target);
    let g_monic = zm_reduce(&g.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &target);
    let mut out = vec![g_monic];
    out.extend(hensel_lift_all(&h, &factors[1..], p, k));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(a: ZPoly) -> ZPoly {
    let mut c = content(&a);
    if c.is_zero() {
        return a;
    }
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.into_iter().map(|x| x / &c).collect()
}

/// Exact division over Z; `None` if `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        let s = dr - db;
        for i in 0..=db {
            r[s + i] -= &c * &b[i];
        }
        q[s] = c;
        r = ztrim(r);
    }
    if r.is_empty() {
        Some(ztrim(q))
    } else {
        None
    }
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut result = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut g: ZPoly = vec![lc.clone()];
            for &i in &subset {
                g = zm_mul(&g, &lifted[i], m);
            }
            let g = primitive(symmetric(&g, m));
            // cheap constant-term screen before trial division
            if !f[0].is_zero() && !g[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
                continue;
            }
            if let Some(q) = zdiv_exact(&f, &g) {
                result.push(g);
                f = primitive(q);
                found = Some(subset);
                break;
            }
        }
        match found {
            Some(subset) => {
                let mut i = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        result.push(f);
    }
    result
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
