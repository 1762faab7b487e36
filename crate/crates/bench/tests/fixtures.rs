use ambig_bench::{conjugated_monomial, fibonacci, jordan_automaton, redundant_automaton, rotation_group, sqrt5};
use ambig_core::config::SearchConfig;
use ambig_core::groupdec::decide_virtually_diagonalizable;
use ambig_core::synth::classify_series;
use ambig_core::wfa::{is_invertible, minimize};

#[test]
fn fixtures_exercise_each_class() {
    let cfg = SearchConfig::default();
    assert_eq!(classify_series(&fibonacci(&sqrt5()), &cfg).unwrap().minimal_m(), Some(2));
    let mono = conjugated_monomial();
    assert!(is_invertible(&mono));
    assert_eq!(classify_series(&mono, &cfg).unwrap().class_name(), "FinitelyAmbiguousEquivalent");
    assert_eq!(classify_series(&jordan_automaton(), &cfg).unwrap().class_name(), "PolynomiallyAmbiguousEquivalent");
    let d = decide_virtually_diagonalizable(&rotation_group(), &cfg).unwrap();
    assert_eq!(d.certificate().unwrap().diagonal_index, 2);
    assert_eq!(minimize(&redundant_automaton()).dim(), 2);
}
