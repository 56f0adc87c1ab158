use std::collections::BTreeSet;

use crate::automaton::{StateId, TreeAutomaton};
use crate::error::{Error, Result};
use crate::mtbdd::{LeafRef, Manager};
use crate::ops::{determinise, prune_unreachable};

/// Assignment of states to equivalence classes. Classes are numbered by
/// their least member; a class may be marked as dropped, in which case its
/// states disappear from the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    class_of: Vec<u32>,
    representatives: Vec<StateId>,
    dropped: Option<u32>,
}

impl QuotientMap {
    /// Normalises arbitrary class labels, one per state.
    pub fn from_labels(labels: &[u32]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut representatives = Vec::new();
        for (q, l) in labels.iter().enumerate() {
            let c = *seen.entry(*l).or_insert_with(|| {
                representatives.push(q as StateId);
                representatives.len() as u32 - 1
            });
            class_of.push(c);
        }
        QuotientMap {
            class_of,
            representatives,
            dropped: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        QuotientMap {
            class_of: (0..n as u32).collect(),
            representatives: (0..n as StateId).collect(),
            dropped: None,
        }
    }

    pub fn with_dropped(mut self, class: Option<u32>) -> Self {
        self.dropped = class;
        self
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    /// Classes that survive in the quotient.
    pub fn num_kept(&self) -> usize {
        self.num_classes() - usize::from(self.dropped.is_some())
    }

    pub fn class(&self, q: StateId) -> u32 {
        self.class_of[q as usize]
    }

    pub fn representative(&self, class: u32) -> StateId {
        self.representatives[class as usize]
    }

    pub fn dropped(&self) -> Option<u32> {
        self.dropped
    }
}

/// Merges the states of each class. Transitions into a dropped class vanish.
pub fn reduce_by_equivalence(
    manager: &mut Manager,
    a: &TreeAutomaton,
    quotient: &QuotientMap,
) -> Result<TreeAutomaton> {
    a.check_manager(manager)?;
    if quotient.len() < a.num_states() {
        return Err(Error::PartialQuotient(quotient.len() as u32));
    }
    let mut out = a.empty_like();
    let mut new_id: Vec<Option<StateId>> = vec![None; quotient.num_classes()];
    for c in 0..quotient.num_classes() as u32 {
        if Some(c) == quotient.dropped() {
            continue;
        }
        let rep = quotient.representative(c);
        new_id[c as usize] = Some(out.states.add_unique(a.state_name(rep)));
    }
    let image = |q: StateId| new_id[quotient.class(q) as usize];
    for q in a.finals() {
        if let Some(c) = image(*q) {
            out.finals.insert(c);
        }
    }
    for (sp, root) in a.transitions().iter() {
        let Some(src) = sp.states().iter().map(|q| image(*q)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let current = out.root(manager, &src);
        let merged = manager.apply(current, root, |pool, x, y| {
            if y.is_bottom() {
                return x;
            }
            let mapped: Vec<StateId> = pool.get(y).iter().filter_map(|q| image(*q)).collect();
            let mapped = pool.intern(mapped);
            pool.union(x, mapped)
        })?;
        out.set_root(manager, &src, merged);
    }
    Ok(out)
}

/// A super-state with one position left open.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Context {
    tuple: Vec<StateId>,
    hole: usize,
}

/// Coarsest congruence of a deterministic automaton that respects the final
/// states. The missing targets behave like one implicit rejecting sink; the
/// class containing that sink is reported as dropped.
pub fn compute_congruence(manager: &mut Manager, a: &TreeAutomaton) -> Result<QuotientMap> {
    a.check_manager(manager)?;
    for root in a.transitions().roots() {
        for leaf in manager.leaves_of(root)? {
            if manager.leaf_set(leaf).len() > 1 {
                return Err(Error::Nondeterministic);
            }
        }
    }
    let n = a.num_states();
    let sink = n as StateId;

    let mut contexts = BTreeSet::new();
    for (sp, _) in a.transitions().iter() {
        for hole in 0..sp.arity() {
            let mut tuple = sp.0.clone();
            tuple[hole] = sink;
            contexts.insert(Context { tuple, hole });
        }
    }
    let contexts: Vec<Context> = contexts.into_iter().collect();

    let mut class: Vec<u32> = (0..=n)
        .map(|q| u32::from(q < n && a.is_final(q as StateId)))
        .collect();
    let mut count = class.iter().collect::<BTreeSet<_>>().len();

    loop {
        let mut next = vec![0u32; n + 1];
        let mut reps: Vec<(u32, StateId)> = Vec::new();
        for q in 0..=sink {
            let mut assigned = None;
            for (i, (old, r)) in reps.iter().enumerate() {
                if *old == class[q as usize]
                    && agree(manager, a, &contexts, &class, sink, *r, q)?
                {
                    assigned = Some(i as u32);
                    break;
                }
            }
            next[q as usize] = match assigned {
                Some(c) => c,
                None => {
                    reps.push((class[q as usize], q));
                    reps.len() as u32 - 1
                }
            };
        }
        class = next;
        if reps.len() == count {
            break;
        }
        count = reps.len();
    }

    let quotient = QuotientMap::from_labels(&class[..n]);
    let dropped = class[..n]
        .iter()
        .position(|c| *c == class[n])
        .map(|q| quotient.class(q as StateId));
    Ok(quotient.with_dropped(dropped))
}

/// Every context sends `r` and `q` into the same class.
fn agree(
    manager: &mut Manager,
    a: &TreeAutomaton,
    contexts: &[Context],
    class: &[u32],
    sink: StateId,
    r: StateId,
    q: StateId,
) -> Result<bool> {
    let bottom = manager.bottom();
    let root_at = |ctx: &Context, s: StateId| {
        if s == sink {
            return bottom;
        }
        let mut t = ctx.tuple.clone();
        t[ctx.hole] = s;
        a.transitions().get(&t).unwrap_or(bottom)
    };
    let target_class = |set: &[StateId]| class[set.first().copied().unwrap_or(sink) as usize];
    for ctx in contexts {
        let (lr, lq) = (root_at(ctx, r), root_at(ctx, q));
        if lr == lq {
            continue;
        }
        let mut same = true;
        manager.apply(lr, lq, |pool, x, y| {
            if target_class(pool.get(x)) != target_class(pool.get(y)) {
                same = false;
            }
            LeafRef::BOTTOM
        })?;
        if !same {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Prune, determinise, merge congruent states and renumber canonically.
pub fn minimise(manager: &mut Manager, a: &TreeAutomaton) -> Result<TreeAutomaton> {
    let pruned = prune_unreachable(manager, a)?;
    let det = determinise(manager, &pruned)?;
    let quotient = compute_congruence(manager, &det)?;
    let reduced = reduce_by_equivalence(manager, &det, &quotient)?;
    determinise(manager, &reduced)
}
