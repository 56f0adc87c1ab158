use std::sync::Arc;

use proptest::prelude::*;
use treeaut::io::{parse_transducer, write_transducer};
use treeaut::ops::{
    determinise, intersection, is_empty, minimise, prune_unreachable, reduce_by_equivalence,
    union, check_inclusion_antichain, QuotientMap,
};
use treeaut::oracle::{
    accepted_in, random_alphabet, random_automaton, random_transducer, seeded, to_explicit,
    TermTable,
};
use treeaut::transducer::{apply_step, compose};
use treeaut::{Alphabet, Manager, TreeAutomaton};

fn setup(seed: u64) -> (Manager, Arc<Alphabet>, TreeAutomaton, TreeAutomaton, rand_chacha::ChaCha8Rng) {
    let mut rng = seeded(seed);
    let alpha = Arc::new(random_alphabet(&mut rng));
    let mut m = Manager::new(alpha.width());
    let a = random_automaton(&mut m, &alpha, &mut rng, 5).unwrap();
    let b = random_automaton(&mut m, &alpha, &mut rng, 5).unwrap();
    (m, alpha, a, b, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn emptiness_matches_reachability(seed in any::<u64>()) {
        let (mut m, _, a, _, _) = setup(seed);
        let x = to_explicit(&m, &a).unwrap();
        prop_assert_eq!(is_empty(&mut m, &a).unwrap(), x.is_empty());
    }

    #[test]
    fn union_contains_both_operands(seed in any::<u64>()) {
        let (mut m, _, a, b, _) = setup(seed);
        let u = union(&mut m, &a, &b).unwrap();
        prop_assert!(check_inclusion_antichain(&mut m, &a, &u).unwrap());
        prop_assert!(check_inclusion_antichain(&mut m, &b, &u).unwrap());
        let i = intersection(&mut m, &a, &b).unwrap();
        prop_assert!(check_inclusion_antichain(&mut m, &i, &a).unwrap());
    }

    #[test]
    fn prune_is_idempotent(seed in any::<u64>()) {
        let (mut m, _, a, _, _) = setup(seed);
        let p = prune_unreachable(&mut m, &a).unwrap();
        let pp = prune_unreachable(&mut m, &p).unwrap();
        prop_assert_eq!(to_explicit(&m, &p).unwrap(), to_explicit(&m, &pp).unwrap());
    }

    #[test]
    fn identity_quotient_changes_nothing(seed in any::<u64>()) {
        let (mut m, _, a, _, _) = setup(seed);
        let r = reduce_by_equivalence(&mut m, &a, &QuotientMap::identity(a.num_states())).unwrap();
        prop_assert_eq!(to_explicit(&m, &r).unwrap(), to_explicit(&m, &a).unwrap());
    }

    #[test]
    fn minimisation_is_confluent(seed in any::<u64>()) {
        let (mut m, _, a, _, _) = setup(seed);
        let direct = minimise(&mut m, &a).unwrap();
        let d = determinise(&mut m, &a).unwrap();
        let via = minimise(&mut m, &d).unwrap();
        prop_assert_eq!(direct.num_states(), via.num_states());
    }

    #[test]
    fn images_preserve_shape(seed in any::<u64>()) {
        let (mut m, alpha, a, _, mut rng) = setup(seed);
        let t = random_transducer(&mut m, &alpha, &mut rng, 3).unwrap();
        let table = TermTable::upto(&alpha, 3).unwrap();
        let input = accepted_in(&m, &a, &table).unwrap();
        let img = apply_step(&mut m, &t, &a).unwrap();
        for out in accepted_in(&m, &img, &table).unwrap() {
            prop_assert!(input.iter().any(|t| t.same_shape(&out)));
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let (mut m, alpha, a, _, mut rng) = setup(seed);
        let t1 = random_transducer(&mut m, &alpha, &mut rng, 2).unwrap();
        let t2 = random_transducer(&mut m, &alpha, &mut rng, 2).unwrap();
        let t3 = random_transducer(&mut m, &alpha, &mut rng, 2).unwrap();
        let left = compose(&mut m, &t1, &t2).unwrap();
        let left = compose(&mut m, &left, &t3).unwrap();
        let right = compose(&mut m, &t2, &t3).unwrap();
        let right = compose(&mut m, &t1, &right).unwrap();
        let table = TermTable::upto(&alpha, 3).unwrap();
        let l = apply_step(&mut m, &left, &a).unwrap();
        let r = apply_step(&mut m, &right, &a).unwrap();
        prop_assert_eq!(accepted_in(&m, &l, &table).unwrap(), accepted_in(&m, &r, &table).unwrap());
    }

    #[test]
    fn transducer_text_round_trip(seed in any::<u64>()) {
        let (mut m, alpha, _, _, mut rng) = setup(seed);
        let t = random_transducer(&mut m, &alpha, &mut rng, 3).unwrap();
        let text = write_transducer(&m, &t).unwrap();
        let (m2, t2) = parse_transducer(&text).unwrap();
        prop_assert_eq!(write_transducer(&m2, &t2).unwrap(), text);
    }
}

#[test]
fn empty_language_has_empty_image() {
    let (mut m, alpha, _, _, mut rng) = setup(3);
    let mut empty = TreeAutomaton::new(&m, alpha.clone()).unwrap();
    empty.add_state("q").unwrap();
    let t = random_transducer(&mut m, &alpha, &mut rng, 3).unwrap();
    let img = apply_step(&mut m, &t, &empty).unwrap();
    assert!(is_empty(&mut m, &img).unwrap());
}
