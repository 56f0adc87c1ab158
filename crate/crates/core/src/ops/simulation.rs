use crate::automaton::{StateId, TreeAutomaton};
use crate::error::Result;
use crate::mtbdd::{LeafRef, Manager};
use crate::ops::{reduce_by_equivalence, QuotientMap};

/// Square boolean relation over the states of one automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationRelation {
    n: usize,
    rel: Vec<bool>,
}

impl SimulationRelation {
    pub fn full(n: usize) -> Self {
        SimulationRelation {
            n,
            rel: vec![true; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `r` simulates `q`.
    pub fn contains(&self, q: StateId, r: StateId) -> bool {
        self.rel[q as usize * self.n + r as usize]
    }

    pub fn remove(&mut self, q: StateId, r: StateId) {
        self.rel[q as usize * self.n + r as usize] = false;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        (0..self.n as StateId)
            .flat_map(move |q| (0..self.n as StateId).map(move |r| (q, r)))
            .filter(|(q, r)| self.contains(*q, *r))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n as StateId).all(|q| self.contains(q, q))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs().all(|(q, r)| {
            (0..self.n as StateId).all(|s| !self.contains(r, s) || self.contains(q, s))
        })
    }

    /// Classes of mutual simulation.
    pub fn quotient(&self) -> QuotientMap {
        let labels: Vec<u32> = (0..self.n as StateId)
            .map(|q| {
                (0..=q)
                    .find(|r| self.contains(q, *r) && self.contains(*r, q))
                    .expect("reflexive")
            })
            .collect();
        QuotientMap::from_labels(&labels)
    }
}

/// Greatest downward simulation: `q ⪯ r` when every transition into `q` is
/// matched by a transition with the same symbol into `r` from a pointwise
/// simulating super-state.
pub fn downward_simulation(manager: &mut Manager, a: &TreeAutomaton) -> Result<SimulationRelation> {
    a.check_manager(manager)?;
    let n = a.num_states();
    let mut sim = SimulationRelation::full(n);
    let groups: Vec<_> = a
        .transitions()
        .arities()
        .into_iter()
        .map(|k| a.transitions().of_arity(k))
        .collect();
    loop {
        let mut changed = false;
        for group in &groups {
            for (qs, qroot) in group {
                let mut tmp = manager.bottom();
                for (rs, rroot) in group {
                    if qs.states().iter().zip(rs.states()).all(|(q, r)| sim.contains(*q, *r)) {
                        tmp = manager.union(tmp, *rroot)?;
                    }
                }
                manager.apply(*qroot, tmp, |pool, lhs, rhs| {
                    let rhs = pool.get(rhs);
                    for &q in pool.get(lhs) {
                        for r in 0..n as StateId {
                            if sim.contains(q, r) && rhs.binary_search(&r).is_err() {
                                sim.remove(q, r);
                                changed = true;
                            }
                        }
                    }
                    LeafRef::BOTTOM
                })?;
            }
        }
        if !changed {
            return Ok(sim);
        }
    }
}

/// Merges mutually simulating states.
pub fn reduce_by_simulation(manager: &mut Manager, a: &TreeAutomaton) -> Result<TreeAutomaton> {
    let sim = downward_simulation(manager, a)?;
    reduce_by_equivalence(manager, a, &sim.quotient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::tests::{alpha, parity, terms};

    #[test]
    fn duplicated_states_simulate_each_other() {
        let alpha = alpha();
        let mut m = Manager::new(alpha.width());
        let ev = parity(&mut m, &alpha, true);
        let u = crate::ops::union(&mut m, &ev, &ev).unwrap();
        let sim = downward_simulation(&mut m, &u).unwrap();
        assert!(sim.is_reflexive() && sim.is_transitive());
        assert!(sim.contains(0, 2) && sim.contains(2, 0));
        assert!(!sim.contains(0, 1));
        let r = reduce_by_simulation(&mut m, &u).unwrap();
        assert_eq!(r.num_states(), 2);
        for t in terms(&alpha) {
            assert_eq!(r.accepts(&m, &t).unwrap(), ev.accepts(&m, &t).unwrap());
        }
    }
}
