use std::collections::{HashMap, VecDeque};

use crate::automaton::{for_each_tuple, StateId, TreeAutomaton};
use crate::error::Result;
use crate::mtbdd::{Bank, LeafPool, LeafRef, Manager, NodeRef};

/// Maps target sets to macrostate ids in order of discovery.
#[derive(Default)]
struct Macrostates {
    ids: HashMap<LeafRef, StateId>,
    members: Vec<LeafRef>,
    queue: VecDeque<StateId>,
}

impl Macrostates {
    fn collect(&mut self, pool: &mut LeafPool, leaf: LeafRef) -> LeafRef {
        if leaf.is_bottom() {
            return leaf;
        }
        let id = match self.ids.get(&leaf) {
            Some(id) => *id,
            None => {
                let id = self.members.len() as StateId;
                self.ids.insert(leaf, id);
                self.members.push(leaf);
                self.queue.push_back(id);
                id
            }
        };
        pool.intern_sorted(vec![id])
    }
}

/// Subset construction over reachable macrostates. Result states are named
/// `s<i>` in discovery order, which depends only on the language structure
/// and not on the input state names.
pub fn determinise(manager: &mut Manager, a: &TreeAutomaton) -> Result<TreeAutomaton> {
    a.check_manager(manager)?;
    let mut out = a.empty_like();
    let mut macros = Macrostates::default();

    let init = a.root(manager, &[]);
    let init = manager.monadic_apply(init, |p, l| macros.collect(p, l))?;
    out.set_root(manager, &[], init);

    let arities: Vec<usize> = a.transitions().arities().into_iter().filter(|n| *n > 0).collect();
    let by_arity: HashMap<usize, Vec<(Vec<StateId>, NodeRef)>> = arities
        .iter()
        .map(|n| {
            let v = a
                .transitions()
                .of_arity(*n)
                .into_iter()
                .map(|(s, r)| (s.0, r))
                .collect();
            (*n, v)
        })
        .collect();

    while let Some(k) = macros.queue.pop_front() {
        let name = format!("s{k}");
        out.states.add_unique(&name);
        let members: Vec<StateId> = manager.leaf_set(macros.members[k as usize]).to_vec();
        if members.iter().any(|q| a.is_final(*q)) {
            out.finals.insert(k);
        }
        for &n in &arities {
            let stored = &by_arity[&n];
            // tuples over 0..=k that mention k
            let range: Vec<StateId> = (0..=k).collect();
            let sets = vec![range; n];
            let mut tuples = Vec::new();
            for_each_tuple(&sets, |t| {
                if t.contains(&k) {
                    tuples.push(t.to_vec());
                }
            });
            for t in tuples {
                let member_sets: Vec<Vec<StateId>> = t
                    .iter()
                    .map(|s| manager.leaf_set(macros.members[*s as usize]).to_vec())
                    .collect();
                let product: usize = member_sets.iter().map(Vec::len).product();
                let mut roots = Vec::new();
                if product <= stored.len() {
                    for_each_tuple(&member_sets, |p| {
                        if let Some(r) = a.transitions().get(p) {
                            roots.push(r);
                        }
                    });
                } else {
                    for (p, r) in stored {
                        if p.iter().zip(&member_sets).all(|(q, set)| set.binary_search(q).is_ok()) {
                            roots.push(*r);
                        }
                    }
                }
                let mut tmp = manager.bottom();
                for r in roots {
                    tmp = manager.union(tmp, r)?;
                }
                if manager.is_bottom(tmp) {
                    continue;
                }
                let root = manager.monadic_apply(tmp, |p, l| macros.collect(p, l))?;
                out.set_root(manager, &t, root);
            }
        }
    }
    Ok(out)
}

/// Determinises, completes with a fresh sink state and flips the final set.
pub fn complement(manager: &mut Manager, a: &TreeAutomaton) -> Result<TreeAutomaton> {
    let mut out = determinise(manager, a)?;
    let sink = out.add_fresh_state();
    let finals = out.state_ids().filter(|q| !out.is_final(*q)).collect();
    out.finals = finals;

    let sink_leaf = manager.intern_leaf([sink]);
    let alphabet = out.alphabet().clone();
    let all: Vec<StateId> = out.state_ids().collect();
    for n in alphabet.arities() {
        let mut mask = manager.bottom();
        for f in alphabet.symbols_of_arity(n) {
            let single = manager.create_mtbdd(&alphabet.encode(f), &[Bank::X], sink_leaf)?;
            mask = manager.union(mask, single)?;
        }
        let mut tuples = Vec::new();
        for_each_tuple(&vec![all.clone(); n], |t| tuples.push(t.to_vec()));
        for t in tuples {
            let current = out.root(manager, &t);
            let filled = manager.apply(current, mask, |_, x, y| if x.is_bottom() { y } else { x })?;
            out.set_root(manager, &t, filled);
        }
    }
    Ok(out)
}
