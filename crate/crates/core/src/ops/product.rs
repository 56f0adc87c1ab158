//! Lazy product construction shared by intersection, transduction and
//! transducer composition.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automaton::{StateId, SuperState, SuperStateIndex};
use crate::error::Result;
use crate::mtbdd::{LeafPool, LeafRef, Manager, NodeRef};

/// Allocates product ids for state pairs as the `intersect` functor meets them.
#[derive(Debug, Default)]
pub(crate) struct Discovery {
    ids: HashMap<(StateId, StateId), StateId>,
    pairs: Vec<(StateId, StateId)>,
    queue: VecDeque<StateId>,
}

impl Discovery {
    fn id(&mut self, pair: (StateId, StateId)) -> StateId {
        if let Some(id) = self.ids.get(&pair) {
            return *id;
        }
        let id = self.pairs.len() as StateId;
        self.ids.insert(pair, id);
        self.pairs.push(pair);
        self.queue.push_back(id);
        id
    }

    /// Cartesian product of the two leaves, as product ids.
    pub(crate) fn intersect(&mut self, pool: &mut LeafPool, l: LeafRef, r: LeafRef) -> LeafRef {
        if l.is_bottom() || r.is_bottom() {
            return LeafRef::BOTTOM;
        }
        let (ls, rs) = (pool.get(l).to_vec(), pool.get(r).to_vec());
        let mut out = Vec::with_capacity(ls.len() * rs.len());
        for &a in &ls {
            for &b in &rs {
                out.push(self.id((a, b)));
            }
        }
        pool.intern(out)
    }
}

pub(crate) struct Operand<'a> {
    pub finals: &'a BTreeSet<StateId>,
    pub transitions: &'a SuperStateIndex,
}

pub(crate) struct Product {
    pub pairs: Vec<(StateId, StateId)>,
    pub finals: Vec<StateId>,
    pub transitions: SuperStateIndex,
}

/// Super-states of arity ≥ 1 grouped by the states they contain.
pub(crate) fn containing(index: &SuperStateIndex) -> HashMap<StateId, Vec<(SuperState, NodeRef)>> {
    let mut out: HashMap<StateId, Vec<(SuperState, NodeRef)>> = HashMap::new();
    for (sp, root) in index.iter() {
        let mut seen: Vec<StateId> = sp.states().to_vec();
        seen.sort_unstable();
        seen.dedup();
        for q in seen {
            out.entry(q).or_default().push((sp.clone(), root));
        }
    }
    out
}

/// Explores reachable pairs from the initial super-states. `combine` builds
/// the diagram of one product super-state from the two operand roots and must
/// route leaf pairs through [`Discovery::intersect`].
pub(crate) fn build<F>(
    manager: &mut Manager,
    left: Operand<'_>,
    right: Operand<'_>,
    mut combine: F,
) -> Result<Product>
where
    F: FnMut(&mut Manager, NodeRef, NodeRef, &mut Discovery) -> Result<NodeRef>,
{
    let mut disc = Discovery::default();
    let mut transitions = SuperStateIndex::default();
    let bottom = manager.bottom();

    if let (Some(l), Some(r)) = (left.transitions.get(&[]), right.transitions.get(&[])) {
        let root = combine(manager, l, r, &mut disc)?;
        if root != bottom {
            transitions.set(&[], Some(root));
        }
    }

    let lc = containing(left.transitions);
    let rc = containing(right.transitions);
    let mut processed: Vec<bool> = Vec::new();
    let mut done: HashSet<Vec<StateId>> = HashSet::new();
    let mut finals = Vec::new();

    while let Some(k) = disc.queue.pop_front() {
        if processed.len() <= k as usize {
            processed.resize(k as usize + 1, false);
        }
        processed[k as usize] = true;
        let (qa, qb) = disc.pairs[k as usize];
        if left.finals.contains(&qa) && right.finals.contains(&qb) {
            finals.push(k);
        }
        let (Some(ls), Some(rs)) = (lc.get(&qa), rc.get(&qb)) else {
            continue;
        };
        for (sp1, r1) in ls {
            for (sp2, r2) in rs {
                if sp1.arity() != sp2.arity() {
                    continue;
                }
                let tuple: Option<Vec<StateId>> = sp1
                    .states()
                    .iter()
                    .zip(sp2.states())
                    .map(|(a, b)| {
                        disc.ids
                            .get(&(*a, *b))
                            .copied()
                            .filter(|id| processed.get(*id as usize).copied().unwrap_or(false))
                    })
                    .collect();
                let Some(tuple) = tuple else { continue };
                if !done.insert(tuple.clone()) {
                    continue;
                }
                let root = combine(manager, *r1, *r2, &mut disc)?;
                if root != bottom {
                    transitions.set(&tuple, Some(root));
                }
            }
        }
    }

    finals.sort_unstable();
    Ok(Product {
        pairs: disc.pairs,
        finals,
        transitions,
    })
}
