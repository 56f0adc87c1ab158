use std::collections::{HashMap, VecDeque};

use crate::automaton::{for_each_tuple, StateId, TreeAutomaton};
use crate::error::Result;
use crate::mtbdd::{LeafPool, LeafRef, Manager};
use crate::ops::product::containing;
use crate::ops::{complement, intersection, is_empty};

/// ⊆-minimal partner sets per state of the left automaton.
#[derive(Default)]
struct Antichain {
    entries: HashMap<StateId, Vec<(LeafRef, bool)>>,
    queue: VecDeque<(StateId, LeafRef)>,
}

impl Antichain {
    fn insert(&mut self, pool: &LeafPool, q: StateId, set: LeafRef) {
        let list = self.entries.entry(q).or_default();
        if list.iter().any(|(e, _)| pool.is_subset(*e, set)) {
            return;
        }
        list.retain(|(e, _)| !pool.is_subset(set, *e));
        list.push((set, false));
        self.queue.push_back((q, set));
    }

    fn collect(&mut self, pool: &mut LeafPool, lhs: LeafRef, rhs: LeafRef) -> LeafRef {
        for q in pool.get(lhs).to_vec() {
            self.insert(pool, q, rhs);
        }
        LeafRef::BOTTOM
    }

    fn processed(&self, q: StateId) -> Vec<LeafRef> {
        self.entries
            .get(&q)
            .map(|l| l.iter().filter(|(_, p)| *p).map(|(s, _)| *s).collect())
            .unwrap_or_default()
    }

    /// Marks `(q, set)` processed; false if it was subsumed meanwhile.
    fn take(&mut self, q: StateId, set: LeafRef) -> bool {
        match self
            .entries
            .get_mut(&q)
            .and_then(|l| l.iter_mut().find(|(s, _)| *s == set))
        {
            Some(e) => {
                e.1 = true;
                true
            }
            None => false,
        }
    }
}

/// Decides `L(a1) ⊆ L(a2)` by a bottom-up search for a state of `a1` paired
/// with a set of `a2` states that witnesses a counterexample term. Only
/// ⊆-minimal pairs are kept.
pub fn check_inclusion_antichain(
    manager: &mut Manager,
    a1: &TreeAutomaton,
    a2: &TreeAutomaton,
) -> Result<bool> {
    a1.check_manager(manager)?;
    a1.check_compatible(a2)?;
    let mut chain = Antichain::default();
    let by_state = containing(a1.transitions());

    let (i1, i2) = (a1.root(manager, &[]), a2.root(manager, &[]));
    manager.apply(i1, i2, |pool, l, r| chain.collect(pool, l, r))?;

    while let Some((q, set)) = chain.queue.pop_front() {
        if !chain.take(q, set) {
            continue;
        }
        if a1.is_final(q) && !manager.leaf_set(set).iter().any(|r| a2.is_final(*r)) {
            return Ok(false);
        }
        let Some(list) = by_state.get(&q) else { continue };
        for (sp, root1) in list {
            for (j, _) in sp.states().iter().enumerate().filter(|(_, p)| **p == q) {
                let choices: Vec<Vec<LeafRef>> = sp
                    .states()
                    .iter()
                    .enumerate()
                    .map(|(i, p)| if i == j { vec![set] } else { chain.processed(*p) })
                    .collect();
                let mut combos = Vec::new();
                for_each_tuple(&choices, |c| combos.push(c.to_vec()));
                for combo in combos {
                    let members: Vec<Vec<StateId>> = combo
                        .iter()
                        .map(|s| manager.leaf_set(*s).to_vec())
                        .collect();
                    let mut roots = Vec::new();
                    for_each_tuple(&members, |t| {
                        if let Some(r) = a2.transitions().get(t) {
                            roots.push(r);
                        }
                    });
                    let mut tmp = manager.bottom();
                    for r in roots {
                        tmp = manager.union(tmp, r)?;
                    }
                    manager.apply(*root1, tmp, |pool, l, r| chain.collect(pool, l, r))?;
                }
            }
        }
    }
    Ok(true)
}

/// `L(a1) ⊆ L(a2)` via emptiness of `a1 ∩ ¬a2`.
pub fn check_inclusion_classical(
    manager: &mut Manager,
    a1: &TreeAutomaton,
    a2: &TreeAutomaton,
) -> Result<bool> {
    a1.check_compatible(a2)?;
    let c = complement(manager, a2)?;
    let i = intersection(manager, a1, &c)?;
    is_empty(manager, &i)
}
