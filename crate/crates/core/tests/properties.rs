mod common;

use ambig_core::config::SearchConfig;
use ambig_core::exactlinalg::Matrix;
use ambig_core::groupdec::{decide_virtually_diagonalizable, monomial_lift, verify_certificate, GroupDecision};
use ambig_core::synth::{ambiguity_degree, classify_series, transition_group};
use ambig_core::wfa::{count_runs, equivalent, evaluate, minimize, structural_ambiguity, LinRep};
use ambig_core::wire;
use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn permutation_matrix(perm: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(&q(), perm.len(), perm.len());
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, int(1));
    }
    m
}

fn random_rep(r: &mut ChaCha8Rng) -> LinRep {
    let d = r.gen_range(1..=3);
    let k = r.gen_range(1..=2);
    let mats = (0..k).map(|_| random_integer_matrix(r, d, -1, 2)).collect();
    LinRep::new(&q(), letters(k), random_vector(r, d), random_vector(r, d), mats).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, .. ProptestConfig::default() })]

    #[test]
    fn automaton_json_round_trips(seed in any::<u64>()) {
        let rep = random_rep(&mut rng(seed));
        let text = wire::emit_automaton(&rep);
        let back = wire::parse_automaton(&text).unwrap();
        prop_assert_eq!(&back, &rep);
        prop_assert_eq!(wire::emit_automaton(&back), text);
    }

    #[test]
    fn minimize_agrees_on_short_words(seed in any::<u64>()) {
        let rep = random_rep(&mut rng(seed));
        let m = minimize(&rep);
        prop_assert!(m.dim() <= rep.dim());
        for w in rep.words_up_to(rep.dim() + m.dim() + 1) {
            prop_assert_eq!(evaluate(&rep, &w).unwrap(), evaluate(&m, &w).unwrap());
        }
    }

    #[test]
    fn structural_class_ignores_state_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = random_rep(&mut r);
        let mut perm: Vec<usize> = (0..rep.dim()).collect();
        perm.shuffle(&mut r);
        let relabeled = rep.conjugate(&permutation_matrix(&perm)).unwrap();
        prop_assert_eq!(structural_ambiguity(&rep).class, structural_ambiguity(&relabeled).class);
        prop_assert!(equivalent(&rep, &relabeled).unwrap());
    }

    #[test]
    fn monomial_degree_bounds_run_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=4);
        let rep = random_monomial_rep(&mut r, d, 2);
        let m = ambiguity_degree(&rep).unwrap();
        let mut attained = false;
        for w in rep.words_up_to(6) {
            let c = count_runs(&rep, &w).unwrap();
            prop_assert!(c <= BigUint::from(m));
            attained |= c == BigUint::from(m);
        }
        prop_assert!(attained);
    }

    #[test]
    fn monomial_lift_is_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=3);
        let t = random_invertible(&mut r, d);
        let ti = t.inverse().unwrap();
        let gens: Vec<Matrix> = (0..2).map(|_| ti.mul(&random_monomial(&mut r, d)).mul(&t)).collect();
        let g = ambig_core::groupdec::GroupInput::new(&q(), d, gens.clone()).unwrap();
        let GroupDecision::Certificate(cert) = decide_virtually_diagonalizable(&g, &SearchConfig::default()).unwrap() else {
            panic!("conjugated monomial group refuted");
        };
        verify_certificate(&g, &cert).unwrap();
        let lift = monomial_lift(&g, &cert).unwrap();
        for (h, gen) in lift.generators.iter().zip(&gens) {
            prop_assert!(h.is_monomial());
            prop_assert_eq!(lift.epimorphism.mul(h), gen.mul(&lift.epimorphism));
        }
    }
}

#[test]
fn classification_json_round_trips_on_random_inputs() {
    let mut r = rng(11);
    let cfg = SearchConfig::default();
    for _ in 0..12 {
        let rep = if r.gen_bool(0.5) {
            let d = r.gen_range(1..=3);
            random_monomial_rep(&mut r, d, 2).conjugate(&random_invertible(&mut r, d)).unwrap()
        } else {
            random_block_triangular_rep(&mut r)
        };
        let c = classify_series(&rep, &cfg).unwrap();
        let j = wire::classification_to_json(&c);
        let text = wire::to_pretty(&j);
        let parsed: wire::ClassificationJson = serde_json::from_str(&text).unwrap();
        let back = wire::classification_from_json(&parsed).unwrap();
        assert_eq!(back, c);
        assert_eq!(wire::to_pretty(&wire::classification_to_json(&back)), text);
    }
}

#[test]
fn transition_group_of_monomial_rep_has_small_index() {
    let mut r = rng(12);
    for _ in 0..10 {
        let rep = random_monomial_rep(&mut r, 3, 2);
        let g = transition_group(&rep).unwrap();
        let d = decide_virtually_diagonalizable(&g, &SearchConfig::default()).unwrap();
        let cert = d.certificate().expect("monomial groups are virtually diagonal");
        assert!(cert.diagonal_index <= 6);
    }
}
