use std::collections::VecDeque;

use crate::automaton::{StateId, TreeAutomaton};
use crate::error::Result;
use crate::mtbdd::{LeafPool, LeafRef, Manager};
use crate::ops::product::containing;

/// Old-to-new renumbering in order of discovery.
struct Reach {
    new_id: Vec<Option<StateId>>,
    order: Vec<StateId>,
    queue: VecDeque<StateId>,
}

impl Reach {
    fn new(n: usize) -> Self {
        Reach {
            new_id: vec![None; n],
            order: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn visit(&mut self, q: StateId) -> StateId {
        if let Some(id) = self.new_id[q as usize] {
            return id;
        }
        let id = self.order.len() as StateId;
        self.new_id[q as usize] = Some(id);
        self.order.push(q);
        self.queue.push_back(q);
        id
    }

    fn collect(&mut self, pool: &mut LeafPool, leaf: LeafRef) -> LeafRef {
        if leaf.is_bottom() {
            return leaf;
        }
        let states = pool.get(leaf).to_vec();
        let mapped: Vec<StateId> = states.into_iter().map(|q| self.visit(q)).collect();
        pool.intern(mapped)
    }
}

/// Keeps only states reachable bottom-up from the nullary transitions.
/// Surviving states keep their names and are renumbered by discovery.
pub fn prune_unreachable(manager: &mut Manager, a: &TreeAutomaton) -> Result<TreeAutomaton> {
    a.check_manager(manager)?;
    let mut out = a.empty_like();
    let mut reach = Reach::new(a.num_states());
    let mut dequeued = vec![false; a.num_states()];
    let by_state = containing(a.transitions());

    let init = a.root(manager, &[]);
    let init = manager.monadic_apply(init, |p, l| reach.collect(p, l))?;
    out.set_root(manager, &[], init);

    while let Some(q) = reach.queue.pop_front() {
        dequeued[q as usize] = true;
        let Some(list) = by_state.get(&q) else { continue };
        for (sp, root) in list {
            // handled once, when its last component comes off the queue
            if !sp.states().iter().all(|p| dequeued[*p as usize]) {
                continue;
            }
            let src: Vec<StateId> = sp
                .states()
                .iter()
                .map(|p| reach.new_id[*p as usize].expect("dequeued"))
                .collect();
            let mapped = manager.monadic_apply(*root, |p, l| reach.collect(p, l))?;
            out.set_root(manager, &src, mapped);
        }
    }

    for &old in &reach.order {
        out.states.add_unique(a.state_name(old));
    }
    for (new, &old) in reach.order.iter().enumerate() {
        if a.is_final(old) {
            out.finals.insert(new as StateId);
        }
    }
    Ok(out)
}

/// True when no final state is reachable; stops at the first one found.
pub fn is_empty(manager: &mut Manager, a: &TreeAutomaton) -> Result<bool> {
    a.check_manager(manager)?;
    let mut reach = Reach::new(a.num_states());
    let mut dequeued = vec![false; a.num_states()];
    let by_state = containing(a.transitions());

    let init = a.root(manager, &[]);
    manager.monadic_apply(init, |p, l| {
        reach.collect(p, l);
        l
    })?;
    while let Some(q) = reach.queue.pop_front() {
        if a.is_final(q) {
            return Ok(false);
        }
        dequeued[q as usize] = true;
        let Some(list) = by_state.get(&q) else { continue };
        for (sp, root) in list {
            if !sp.states().iter().all(|p| dequeued[*p as usize]) {
                continue;
            }
            manager.monadic_apply(*root, |p, l| {
                reach.collect(p, l);
                l
            })?;
        }
    }
    Ok(true)
}
