mod common;

use ambig_core::config::SearchConfig;
use ambig_core::exactlinalg::Matrix;
use ambig_core::groupdec::{decide_virtually_diagonalizable, GroupInput, RefutationKind};
use ambig_core::repsplit::{
    composition_chain, decide_fg_spectrum, fg_spectrum_blocks_over_extension, is_absolutely_irreducible, verify_spectrum_certificate,
};
use ambig_core::spectral::{analyze, power_splitting_exponent, spectrum};
use ambig_core::synth::{block_monomialize, classify_series, lrs_classify_rep, verify_classification, SeriesClassification};
use ambig_core::wfa::{count_runs, equivalent, evaluate, structural_ambiguity, AmbiguityClass, LinRep};
use ambig_core::Error;
use common::*;
use num_bigint::BigUint;

fn one_letter(m: Matrix, u: &[i64], v: &[i64]) -> LinRep {
    LinRep::new(&q(), letters(1), vec_q(u), vec_q(v), vec![m]).unwrap()
}

#[test]
fn fibonacci_spectrum_lives_in_sqrt5() {
    let a = ints(&[&[0, 1], &[1, 1]]);
    let s = spectrum(&a).unwrap();
    assert_eq!(s.splitting_field.degree(), 2);
    assert!(s.diagonalizable);
    assert_eq!(power_splitting_exponent(&a).unwrap(), None);
    let over = Matrix::from_ints(&sqrt5(), &[&[0, 1], &[1, 1]]);
    let an = analyze(&over).unwrap();
    assert_eq!(an.power_splitting_exponent, Some(1));
    assert!(an.is_steady);
}

#[test]
fn jordan_sequence_is_polynomially_ambiguous() {
    let rep = one_letter(ints(&[&[1, 1], &[0, 1]]), &[1, 0], &[0, 1]);
    let c = classify_series(&rep, &SearchConfig::default()).unwrap();
    verify_classification(&rep, &c).unwrap();
    let SeriesClassification::PolynomiallyAmbiguousEquivalent { group_refutation, synthesized, level_dims, minimal, spectrum } = &c else {
        panic!("got {}", c.class_name());
    };
    assert_eq!(group_refutation.kind, RefutationKind::NonDiagonalizable);
    assert_eq!(level_dims, &vec![1, 1]);
    assert_eq!(synthesized.dim(), 2);
    for n in 0..10 {
        assert_eq!(evaluate(synthesized, &vec![0; n]).unwrap(), int(n as i64));
    }
    assert_eq!(structural_ambiguity(synthesized).class, AmbiguityClass::PolynomiallyAmbiguous);
    let (again, _) = block_monomialize(minimal, spectrum).unwrap();
    assert!(equivalent(&again, &rep).unwrap());
}

#[test]
fn unambiguous_input_reports_degree_one() {
    let rep = LinRep::new(
        &q(),
        letters(2),
        vec_q(&[1, 0]),
        vec_q(&[1, 1]),
        vec![ints(&[&[0, 2], &[3, 0]]), ints(&[&[1, 0], &[0, -1]])],
    )
    .unwrap();
    let c = classify_series(&rep, &SearchConfig::default()).unwrap();
    verify_classification(&rep, &c).unwrap();
    assert_eq!(c.minimal_m(), Some(1));
}

#[test]
fn synthesized_degree_is_attained() {
    let rep = LinRep::new(&q(), letters(1), vec_q(&[1, 1, 1]), vec_q(&[1, 1, 1]), vec![Matrix::diagonal(&q(), &[int(2), int(3), int(5)])]).unwrap();
    let c = classify_series(&rep, &SearchConfig::default()).unwrap();
    let SeriesClassification::FinitelyAmbiguousEquivalent { certificate, .. } = &c else { panic!() };
    assert_eq!(certificate.minimal_m, 3);
    assert_eq!(count_runs(&certificate.synthesized, &certificate.witness_word).unwrap(), BigUint::from(3u32));
}

#[test]
fn singular_inputs_are_out_of_scope() {
    let rep = one_letter(ints(&[&[1, 1], &[0, 0]]), &[1, 0], &[1, 1]);
    assert!(matches!(classify_series(&rep, &SearchConfig::default()), Err(Error::OutOfScope(_))));
}

#[test]
fn lrs_improves_over_splitting_field() {
    let l = lrs_classify_rep(&fibonacci(&q()), &SearchConfig::default()).unwrap();
    assert_eq!(l.base.class_name(), "ExponentialOnly");
    let imp = l.improvement.expect("splitting field is proper");
    assert_eq!(imp.field.degree(), 2);
    assert_eq!(imp.classification.minimal_m(), Some(2));
}

#[test]
fn rotation_over_unipotent_has_finite_index_spectrum() {
    let g = GroupInput::new(
        &q(),
        3,
        vec![ints(&[&[0, -1, 1], &[1, 0, 2], &[0, 0, 1]])],
    )
    .unwrap();
    let d = decide_fg_spectrum(&g, &SearchConfig::default()).unwrap();
    let cert = d.certificate().expect("finitely generated spectrum");
    verify_spectrum_certificate(&g, cert).unwrap();
    for block in fg_spectrum_blocks_over_extension(&g, &SearchConfig::default()).unwrap() {
        assert!(block.certificate().is_some());
    }
}

#[test]
fn burnside_and_chains() {
    let r = ints(&[&[0, -1], &[1, 0]]);
    assert!(!is_absolutely_irreducible(&q(), 2, std::slice::from_ref(&r)));
    let s = ints(&[&[1, 1], &[0, 1]]);
    let t = ints(&[&[1, 0], &[1, 1]]);
    assert!(is_absolutely_irreducible(&q(), 2, &[s.clone(), t]));
    let chain = composition_chain(&q(), 2, &[s], &SearchConfig::default()).unwrap();
    assert_eq!(chain.block_dims(), vec![1, 1]);
}

#[test]
fn incompatible_pair_is_reported_first() {
    let g1 = Matrix::diagonal(&q(), &[int(2), fraction(1, 2)]);
    let g2 = Matrix::from_rows(&q(), vec![vec![int(2), fraction(-3, 2)], vec![int(0), fraction(1, 2)]]);
    let g = GroupInput::new(&q(), 2, vec![g1, g2]).unwrap();
    let d = decide_virtually_diagonalizable(&g, &SearchConfig::default()).unwrap();
    let r = d.refutation().unwrap();
    assert_eq!(r.kind, RefutationKind::IncompatibleSteadyPair);
    assert!(r.detail.as_ref().unwrap().partial.is_partial());
}
