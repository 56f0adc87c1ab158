//! Workload builders shared by the benchmarks.

use std::sync::Arc;

use treeaut::oracle::{random_alphabet, random_automaton, seeded};
use treeaut::{Alphabet, Manager, TreeAutomaton};

/// Two four-state automata over `2^bits` symbols, one rule per symbol. The
/// rule of symbol `i` depends only on `i mod 4`, so the state space is fixed
/// while the alphabet grows.
pub fn one_rule_per_symbol(bits: u32) -> (Manager, TreeAutomaton, TreeAutomaton) {
    let count = 1usize << bits;
    let arity_of = |i: usize| [0, 1, 2, 1][i & 3];
    let names: Vec<String> = (0..count).map(|i| format!("f{i}")).collect();
    let alpha = Arc::new(
        Alphabet::from_symbols(names.iter().enumerate().map(|(i, n)| (n.as_str(), arity_of(i))))
            .expect("distinct names"),
    );
    let mut m = Manager::new(alpha.width());
    let mut build = |offset: u32| {
        let mut a = TreeAutomaton::new(&m, alpha.clone()).expect("fresh manager");
        for q in 0..4 {
            a.add_state(&format!("q{q}")).expect("distinct names");
        }
        a.set_final(3).expect("declared state");
        for (f, s) in alpha.symbols() {
            let low = f.0 & 3;
            let src = vec![(low + offset) % 4; s.arity];
            a.insert_transition(&mut m, f, &src, &[(low + 1 + offset) % 4])
                .expect("well-formed rule");
        }
        a
    };
    let a = build(0);
    let b = build(1);
    (m, a, b)
}

/// A seeded random pair over a small random alphabet.
pub fn random_pair(seed: u64, max_states: usize) -> (Manager, TreeAutomaton, TreeAutomaton) {
    let mut rng = seeded(seed);
    let alpha = Arc::new(random_alphabet(&mut rng));
    let mut m = Manager::new(alpha.width());
    let a = random_automaton(&mut m, &alpha, &mut rng, max_states).expect("generator");
    let b = random_automaton(&mut m, &alpha, &mut rng, max_states).expect("generator");
    (m, a, b)
}
