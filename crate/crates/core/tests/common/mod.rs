#![allow(dead_code)]

use ambig_core::exactfield::{rat, ratio, FieldElement, NumberField, Rational};
use ambig_core::exactlinalg::{Matrix, Vector};
use ambig_core::wfa::LinRep;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q() -> NumberField {
    NumberField::rationals()
}

pub fn sqrt5() -> NumberField {
    NumberField::new(vec![rat(-5), rat(0), rat(1)]).unwrap()
}

pub fn int(n: i64) -> FieldElement {
    q().from_int(n)
}

pub fn fraction(n: i64, d: i64) -> FieldElement {
    q().from_rational(ratio(n, d))
}

pub fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(&q(), rows)
}

pub fn vec_q(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn letters(n: usize) -> Vec<String> {
    ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect()
}

pub fn fibonacci(k: &NumberField) -> LinRep {
    let m = Matrix::from_ints(k, &[&[0, 1], &[1, 1]]);
    LinRep::new(k, letters(1), vec![k.one(), k.zero()], vec![k.zero(), k.one()], vec![m]).unwrap()
}

pub fn fib_numbers(n: usize) -> Vec<i64> {
    let mut f = vec![0i64, 1];
    while f.len() <= n {
        let l = f.len();
        f.push(f[l - 1] + f[l - 2]);
    }
    f.truncate(n + 1);
    f
}

const WEIGHTS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (3, 1)];

pub fn weight<R: Rng>(rng: &mut R) -> FieldElement {
    let (n, d) = *WEIGHTS.choose(rng).unwrap();
    fraction(n, d)
}

pub fn small_entry<R: Rng>(rng: &mut R) -> FieldElement {
    int(rng.gen_range(-2..=2))
}

pub fn random_vector<R: Rng>(rng: &mut R, d: usize) -> Vector {
    loop {
        let v: Vector = (0..d).map(|_| small_entry(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(&q(), d, d);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, weight(rng));
    }
    m
}

pub fn random_integer_matrix<R: Rng>(rng: &mut R, d: usize, lo: i64, hi: i64) -> Matrix {
    let rows: Vec<Vec<FieldElement>> = (0..d).map(|_| (0..d).map(|_| int(rng.gen_range(lo..=hi))).collect()).collect();
    Matrix::from_rows(&q(), rows)
}

pub fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    loop {
        let m = random_integer_matrix(rng, d, -2, 2);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Product of elementary integer matrices, so the inverse is integral too.
pub fn random_unimodular<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    let mut t = Matrix::identity(&q(), d);
    if d < 2 {
        return t;
    }
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = *[-1i64, 1, 2].choose(rng).unwrap();
        let mut e = Matrix::identity(&q(), d);
        e.set(i, j, int(c));
        t = t.mul(&e);
    }
    t
}

pub fn random_monomial_rep<R: Rng>(rng: &mut R, d: usize, k: usize) -> LinRep {
    let mats = (0..k).map(|_| random_monomial(rng, d)).collect();
    LinRep::new(&q(), letters(k), random_vector(rng, d), random_vector(rng, d), mats).unwrap()
}

/// `[[D1, X], [0, D2]]` with monomial diagonal blocks.
pub fn block_triangular<R: Rng>(rng: &mut R, b1: usize, b2: usize) -> Matrix {
    let d1 = random_monomial(rng, b1);
    let d2 = random_monomial(rng, b2);
    let x = random_integer_matrix_rect(rng, b1, b2);
    Matrix::block(&q(), &[vec![d1, x], vec![Matrix::zeros(&q(), b2, b1), d2]])
}

pub fn random_integer_matrix_rect<R: Rng>(rng: &mut R, r: usize, c: usize) -> Matrix {
    let rows: Vec<Vec<FieldElement>> = (0..r).map(|_| (0..c).map(|_| small_entry(rng)).collect()).collect();
    Matrix::from_rows(&q(), rows)
}

/// Letter `a = wI + N` with `N` nonzero in the off-diagonal block only, so
/// `u aⁿ v` carries an `n·wⁿ` term whenever `uNv ≠ 0`.
pub fn random_block_triangular_rep<R: Rng>(rng: &mut R) -> LinRep {
    loop {
        let b1 = rng.gen_range(1..=2);
        let b2 = rng.gen_range(1..=2);
        let d = b1 + b2;
        let w = weight(rng);
        let mut n = Matrix::zeros(&q(), d, d);
        for i in 0..b1 {
            for j in b1..d {
                n.set(i, j, small_entry(rng));
            }
        }
        let a = Matrix::scalar(&w, d).add(&n);
        let mut mats = vec![a];
        if rng.gen_bool(0.5) {
            mats.push(block_triangular(rng, b1, b2));
        }
        let u = random_vector(rng, d);
        let v = random_vector(rng, d);
        let unv = n.mul_vec(&v).iter().zip(&u).fold(q().zero(), |acc, (x, y)| &acc + &(x * y));
        if unv.is_zero() {
            continue;
        }
        let k = mats.len();
        return LinRep::new(&q(), letters(k), u, v, mats).unwrap();
    }
}

pub fn rational(x: &FieldElement) -> Rational {
    x.as_rational().cloned().expect("rational element")
}
