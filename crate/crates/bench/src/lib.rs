//! Fixed inputs shared by the benchmarks.

use ambig_core::exactfield::{rat, NumberField};
use ambig_core::exactlinalg::Matrix;
use ambig_core::groupdec::GroupInput;
use ambig_core::wfa::LinRep;

pub fn sqrt5() -> NumberField {
    NumberField::new(vec![rat(-5), rat(0), rat(1)]).expect("x^2 - 5 is irreducible")
}

pub fn fibonacci(k: &NumberField) -> LinRep {
    let m = Matrix::from_ints(k, &[&[0, 1], &[1, 1]]);
    LinRep::new(k, vec!["a".into()], vec![k.one(), k.zero()], vec![k.zero(), k.one()], vec![m]).expect("valid automaton")
}

/// A 4-state monomial automaton over two letters, conjugated by a dense
/// integer matrix.
pub fn conjugated_monomial() -> LinRep {
    let q = NumberField::rationals();
    let a = Matrix::from_ints(&q, &[&[0, 2, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 3], &[1, 0, 0, 0]]);
    let b = Matrix::from_ints(&q, &[&[0, 1, 0, 0], &[-2, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]]);
    let ints = |xs: &[i64]| xs.iter().map(|&x| q.from_int(x)).collect();
    let rep = LinRep::new(&q, vec!["a".into(), "b".into()], ints(&[1, 0, 1, 1]), ints(&[1, 1, 0, 1]), vec![a, b]).expect("valid automaton");
    let lower = Matrix::from_ints(&q, &[&[1, 0, 0, 0], &[2, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 2, 1]]);
    let upper = Matrix::from_ints(&q, &[&[1, 1, 0, 2], &[0, 1, 1, 0], &[0, 0, 1, -1], &[0, 0, 0, 1]]);
    let t = lower.mul(&upper);
    rep.conjugate(&t).expect("invertible conjugator")
}

pub fn jordan_automaton() -> LinRep {
    let q = NumberField::rationals();
    let a = Matrix::from_ints(&q, &[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]);
    let ints = |xs: &[i64]| xs.iter().map(|&x| q.from_int(x)).collect();
    LinRep::new(&q, vec!["a".into()], ints(&[1, 0, 0]), ints(&[0, 0, 1]), vec![a]).expect("valid automaton")
}

pub fn rotation_group() -> GroupInput {
    let q = NumberField::rationals();
    GroupInput::new(&q, 2, vec![Matrix::from_ints(&q, &[&[0, -1], &[1, 0]])]).expect("invertible generator")
}

/// Two copies of a dense automaton glued side by side.
pub fn redundant_automaton() -> LinRep {
    let q = NumberField::rationals();
    let a = Matrix::from_ints(&q, &[&[1, 1, 0, 0], &[1, 2, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 2]]);
    let b = Matrix::from_ints(&q, &[&[2, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 1]]);
    let ints = |xs: &[i64]| xs.iter().map(|&x| q.from_int(x)).collect();
    LinRep::new(&q, vec!["a".into(), "b".into()], ints(&[1, 0, 1, 0]), ints(&[0, 1, 0, 1]), vec![a, b]).expect("valid automaton")
}
