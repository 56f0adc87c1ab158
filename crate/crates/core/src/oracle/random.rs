use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::automaton::{for_each_tuple, StateId, TreeAutomaton};
use crate::error::Result;
use crate::mtbdd::Manager;
use crate::transducer::Transducer;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two to four symbols of arity at most two, at least one nullary. Names
/// are sometimes reused at a second arity.
pub fn random_alphabet<R: Rng>(rng: &mut R) -> Alphabet {
    let size = rng.gen_range(2..=4);
    let mut symbols: Vec<(String, usize)> = vec![("a".into(), 0)];
    let names = ["b", "c", "d"];
    while symbols.len() < size {
        let arity = rng.gen_range(0..=2);
        let name = if rng.gen_bool(0.2) {
            symbols.choose(rng).unwrap().0.clone()
        } else {
            names[symbols.len() - 1].to_string()
        };
        if !symbols.iter().any(|(n, a)| *n == name && *a == arity) {
            symbols.push((name, arity));
        } else {
            symbols.push((names[symbols.len() - 1].to_string(), arity));
        }
    }
    if !symbols.iter().any(|(_, a)| *a > 0) {
        let last = symbols.len() - 1;
        symbols[last].1 = rng.gen_range(1..=2);
    }
    Alphabet::from_symbols(symbols.iter().map(|(n, a)| (n.as_str(), *a))).expect("distinct symbols")
}

fn random_targets<R: Rng>(rng: &mut R, n: usize) -> Vec<StateId> {
    let mut t: Vec<StateId> = (0..n as StateId).filter(|_| rng.gen_bool(0.3)).collect();
    if t.is_empty() {
        t.push(rng.gen_range(0..n as StateId));
    }
    t
}

fn random_states<R: Rng>(rng: &mut R, max_states: usize) -> (usize, f64, Vec<bool>) {
    let n = rng.gen_range(1..=max_states);
    let density = rng.gen_range(0.1..0.5);
    let mut finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    if !finals.contains(&true) {
        finals[rng.gen_range(0..n)] = true;
    }
    (n, density, finals)
}

/// Automaton with one to `max_states` states; every `(symbol, source)`
/// carries a transition with a randomly drawn probability.
pub fn random_automaton<R: Rng>(
    manager: &mut Manager,
    alphabet: &Arc<Alphabet>,
    rng: &mut R,
    max_states: usize,
) -> Result<TreeAutomaton> {
    let (n, density, finals) = random_states(rng, max_states);
    let mut a = TreeAutomaton::new(manager, alphabet.clone())?;
    for (q, &fin) in finals.iter().enumerate() {
        a.add_state(&format!("q{q}"))?;
        if fin {
            a.set_final(q as StateId)?;
        }
    }
    let states: Vec<StateId> = (0..n as StateId).collect();
    for (f, s) in alphabet.symbols() {
        let p = if s.arity == 0 { 0.7 } else { density };
        let mut sources = Vec::new();
        for_each_tuple(&vec![states.clone(); s.arity], |t| sources.push(t.to_vec()));
        for src in sources {
            if rng.gen_bool(p) {
                let targets = random_targets(rng, n);
                a.insert_transition(manager, f, &src, &targets)?;
            }
        }
    }
    Ok(a)
}

/// Relabelling transducer; each chosen input pairs with one or two output
/// symbols of the same arity.
pub fn random_transducer<R: Rng>(
    manager: &mut Manager,
    alphabet: &Arc<Alphabet>,
    rng: &mut R,
    max_states: usize,
) -> Result<Transducer> {
    let (n, density, finals) = random_states(rng, max_states);
    let mut t = Transducer::new(manager, alphabet.clone())?;
    for (q, &fin) in finals.iter().enumerate() {
        t.add_state(&format!("t{q}"))?;
        if fin {
            t.set_final(q as StateId)?;
        }
    }
    let states: Vec<StateId> = (0..n as StateId).collect();
    for (f, s) in alphabet.symbols() {
        let outputs: Vec<_> = alphabet.symbols_of_arity(s.arity).collect();
        let p = if s.arity == 0 { 0.8 } else { density + 0.2 };
        let mut sources = Vec::new();
        for_each_tuple(&vec![states.clone(); s.arity], |tu| sources.push(tu.to_vec()));
        for src in sources {
            if !rng.gen_bool(p) {
                continue;
            }
            // occasionally a second output for the same input
            let count = if rng.gen_bool(0.25) { 2 } else { 1 };
            for g in outputs.choose_multiple(rng, count) {
                let targets = random_targets(rng, n);
                t.insert_rule(manager, f, &src, *g, &targets)?;
            }
        }
    }
    Ok(t)
}
