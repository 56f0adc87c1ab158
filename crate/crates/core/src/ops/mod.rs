//! Language and structural operations on [`TreeAutomaton`]s.

mod determinise;
mod inclusion;
pub(crate) mod product;
mod prune;
mod reduce;
mod simulation;

pub use determinise::{complement, determinise};
pub use inclusion::{check_inclusion_antichain, check_inclusion_classical};
pub use prune::{is_empty, prune_unreachable};
pub use reduce::{compute_congruence, minimise, reduce_by_equivalence, QuotientMap};
pub use simulation::{downward_simulation, reduce_by_simulation, SimulationRelation};

use crate::automaton::{StateId, TreeAutomaton};
use crate::error::Result;
use crate::mtbdd::{LeafPool, LeafRef, Manager};

/// Disjoint union. States of `a2` follow those of `a1`; the initial
/// super-states are merged with a single binary apply.
pub fn union(manager: &mut Manager, a1: &TreeAutomaton, a2: &TreeAutomaton) -> Result<TreeAutomaton> {
    a1.check_manager(manager)?;
    a1.check_compatible(a2)?;
    let mut out = a1.empty_like();
    for q in a1.state_ids() {
        out.states.add_unique(a1.state_name(q));
    }
    let offset = a1.num_states() as StateId;
    for q in a2.state_ids() {
        out.states.add_unique(a2.state_name(q));
    }
    out.finals.extend(a1.finals().iter().copied());
    out.finals.extend(a2.finals().iter().map(|q| q + offset));

    let mut shift = |pool: &mut LeafPool, leaf: LeafRef| -> LeafRef {
        if leaf.is_bottom() {
            return leaf;
        }
        let moved: Vec<StateId> = pool.get(leaf).iter().map(|q| q + offset).collect();
        pool.intern_sorted(moved)
    };

    for (sp, root) in a1.transitions().iter() {
        if sp.arity() > 0 {
            out.transitions.set(sp.states(), Some(root));
        }
    }
    for (sp, root) in a2.transitions().iter() {
        if sp.arity() > 0 {
            let moved: Vec<StateId> = sp.states().iter().map(|q| q + offset).collect();
            let root = manager.monadic_apply(root, &mut shift)?;
            out.transitions.set(&moved, Some(root));
        }
    }
    let init2 = a2.root(manager, &[]);
    let init2 = manager.monadic_apply(init2, &mut shift)?;
    let init = manager.union(a1.root(manager, &[]), init2)?;
    out.set_root(manager, &[], init);
    Ok(out)
}

/// Product automaton restricted to pairs reachable from the initial
/// super-states. Product states are named `p_q` after their components.
pub fn intersection(
    manager: &mut Manager,
    a1: &TreeAutomaton,
    a2: &TreeAutomaton,
) -> Result<TreeAutomaton> {
    a1.check_manager(manager)?;
    a1.check_compatible(a2)?;
    let built = product::build(
        manager,
        product::Operand {
            finals: a1.finals(),
            transitions: a1.transitions(),
        },
        product::Operand {
            finals: a2.finals(),
            transitions: a2.transitions(),
        },
        |m, l, r, disc| m.apply(l, r, |pool, x, y| disc.intersect(pool, x, y)),
    )?;
    let mut out = a1.empty_like();
    for (p, q) in &built.pairs {
        out.states
            .add_unique(&format!("{}_{}", a1.state_name(*p), a2.state_name(*q)));
    }
    out.finals.extend(built.finals);
    out.transitions = built.transitions;
    Ok(out)
}
