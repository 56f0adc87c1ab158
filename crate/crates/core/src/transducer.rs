//! Relabelling tree transducers. Rules `f(q1..qn) -> q(g)` live in diagrams
//! over the interleaved input (x) and output (y) banks.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::alphabet::{Alphabet, SymbolId};
use crate::automaton::{overwrite, StateId, StateRegistry, SuperStateIndex, TreeAutomaton};
use crate::error::{Error, Result};
use crate::mtbdd::{Bank, Manager, NodeRef};
use crate::ops::product;

#[derive(Debug, Clone)]
pub struct Transducer {
    pub(crate) name: String,
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) manager: u32,
    pub(crate) states: StateRegistry,
    pub(crate) finals: BTreeSet<StateId>,
    pub(crate) transitions: SuperStateIndex,
}

impl Transducer {
    pub fn new(manager: &Manager, alphabet: Arc<Alphabet>) -> Result<Self> {
        if alphabet.width() != manager.width() {
            return Err(Error::WidthMismatch {
                expected: manager.width(),
                found: alphabet.width(),
            });
        }
        Ok(Transducer {
            name: "T".to_string(),
            alphabet,
            manager: manager.id(),
            states: StateRegistry::default(),
            finals: BTreeSet::new(),
            transitions: SuperStateIndex::default(),
        })
    }

    /// One final state `q` with `f(q..q) -> q(f)` for every symbol.
    pub fn identity(manager: &mut Manager, alphabet: Arc<Alphabet>) -> Result<Self> {
        let mut t = Transducer::new(manager, alphabet.clone())?;
        let q = t.add_state("q")?;
        t.set_final(q)?;
        for (f, s) in alphabet.symbols() {
            t.insert_rule(manager, f, &vec![q; s.arity], f, &[q])?;
        }
        Ok(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn manager_id(&self) -> u32 {
        self.manager
    }

    pub fn add_state(&mut self, name: &str) -> Result<StateId> {
        self.states.add(name)
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.id(name)
    }

    pub fn state_name(&self, id: StateId) -> &str {
        self.states.name(id)
    }

    pub fn states(&self) -> &StateRegistry {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_ids(&self) -> std::ops::Range<StateId> {
        0..self.states.len() as StateId
    }

    pub fn set_final(&mut self, id: StateId) -> Result<()> {
        if !self.states.contains(id) {
            return Err(Error::UnknownState(id.to_string()));
        }
        self.finals.insert(id);
        Ok(())
    }

    pub fn is_final(&self, id: StateId) -> bool {
        self.finals.contains(&id)
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn transitions(&self) -> &SuperStateIndex {
        &self.transitions
    }

    pub fn root(&self, manager: &Manager, source: &[StateId]) -> NodeRef {
        self.transitions
            .get(source)
            .unwrap_or_else(|| manager.bottom())
    }

    pub fn set_root(&mut self, manager: &Manager, source: &[StateId], root: NodeRef) {
        let entry = (!manager.is_bottom(root)).then_some(root);
        self.transitions.set(source, entry);
    }

    fn check_manager(&self, manager: &Manager) -> Result<()> {
        if self.manager != manager.id() {
            return Err(Error::ForeignManager);
        }
        Ok(())
    }

    fn check_rule(&self, input: SymbolId, source: &[StateId], output: SymbolId) -> Result<()> {
        let (ai, ao) = (self.alphabet.arity(input), self.alphabet.arity(output));
        if ai != ao {
            return Err(Error::ArityMismatch {
                expected: ai,
                found: ao,
            });
        }
        if ai != source.len() {
            return Err(Error::ArityMismatch {
                expected: ai,
                found: source.len(),
            });
        }
        if let Some(q) = source.iter().find(|q| !self.states.contains(**q)) {
            return Err(Error::UnknownState(q.to_string()));
        }
        Ok(())
    }

    /// Sets `input(source) -> targets(output)`, replacing earlier targets.
    pub fn insert_rule(
        &mut self,
        manager: &mut Manager,
        input: SymbolId,
        source: &[StateId],
        output: SymbolId,
        targets: &[StateId],
    ) -> Result<()> {
        self.check_manager(manager)?;
        self.check_rule(input, source, output)?;
        if targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        if let Some(q) = targets.iter().find(|q| !self.states.contains(**q)) {
            return Err(Error::UnknownState(q.to_string()));
        }
        let cube = self.alphabet.encode_pair(input, output)?;
        let leaf = manager.intern_leaf(targets.iter().copied());
        let single = manager.create_mtbdd(&cube, &[Bank::X, Bank::Y], leaf)?;
        let current = self.root(manager, source);
        let merged = manager.apply(current, single, overwrite)?;
        self.set_root(manager, source, merged);
        Ok(())
    }

    /// Adds `targets` to the rule's current target set.
    pub fn add_rule(
        &mut self,
        manager: &mut Manager,
        input: SymbolId,
        source: &[StateId],
        output: SymbolId,
        targets: &[StateId],
    ) -> Result<()> {
        let mut all = self.lookup_rule(manager, input, source, output)?.to_vec();
        all.extend_from_slice(targets);
        self.insert_rule(manager, input, source, output, &all)
    }

    /// Targets of `input(source) -> _(output)`.
    pub fn lookup_rule<'m>(
        &self,
        manager: &'m Manager,
        input: SymbolId,
        source: &[StateId],
        output: SymbolId,
    ) -> Result<&'m [StateId]> {
        self.check_manager(manager)?;
        self.check_rule(input, source, output)?;
        let Some(root) = self.transitions.get(source) else {
            return Ok(&[]);
        };
        let width = self.alphabet.width();
        let (ci, co) = (self.alphabet.code(input), self.alphabet.code(output));
        let leaf = manager.eval_with(root, |var| {
            let bit = Bank::bit(var);
            let code = if Bank::of(var) == Bank::Y { co } else { ci };
            (code >> (width - 1 - bit)) & 1 == 1
        })?;
        Ok(manager.leaf_set(leaf))
    }

    /// Distinct diagram nodes used by this transducer.
    pub fn node_count(&self, manager: &Manager) -> Result<usize> {
        self.check_manager(manager)?;
        manager.node_count(&self.transitions.roots())
    }
}

fn check_pair(manager: &Manager, a: &Arc<Alphabet>, b: &Arc<Alphabet>, ma: u32, mb: u32) -> Result<()> {
    if ma != manager.id() || mb != manager.id() {
        return Err(Error::ForeignManager);
    }
    if !Arc::ptr_eq(a, b) && a != b {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// Image of `L(a)` under the transducer.
pub fn apply_step(
    manager: &mut Manager,
    tr: &Transducer,
    a: &TreeAutomaton,
) -> Result<TreeAutomaton> {
    check_pair(manager, a.alphabet(), &tr.alphabet, a.manager_id(), tr.manager)?;
    let built = product::build(
        manager,
        product::Operand {
            finals: a.finals(),
            transitions: a.transitions(),
        },
        product::Operand {
            finals: &tr.finals,
            transitions: &tr.transitions,
        },
        |m, ra, rt, disc| {
            let joined = m.apply(ra, rt, |pool, x, y| disc.intersect(pool, x, y))?;
            let outputs = m.trim_variables(joined, Bank::X)?;
            m.rename_variables(outputs, Bank::Y, Bank::X)
        },
    )?;
    let mut out = a.empty_like();
    for (p, q) in &built.pairs {
        out.states
            .add_unique(&format!("{}_{}", a.state_name(*p), tr.state_name(*q)));
    }
    out.finals.extend(built.finals);
    out.transitions = built.transitions;
    Ok(out)
}

/// Transducer for `t2 ∘ t1`: first `t1`, then `t2`.
pub fn compose(manager: &mut Manager, t1: &Transducer, t2: &Transducer) -> Result<Transducer> {
    check_pair(manager, &t1.alphabet, &t2.alphabet, t1.manager, t2.manager)?;
    let built = product::build(
        manager,
        product::Operand {
            finals: &t1.finals,
            transitions: &t1.transitions,
        },
        product::Operand {
            finals: &t2.finals,
            transitions: &t2.transitions,
        },
        |m, r1, r2, disc| {
            // t2 reads t1's output on y and writes to z
            let shifted = m.rename_variables(r2, Bank::Y, Bank::Z)?;
            let shifted = m.rename_variables(shifted, Bank::X, Bank::Y)?;
            let joined = m.apply(r1, shifted, |pool, x, y| disc.intersect(pool, x, y))?;
            let outer = m.trim_variables(joined, Bank::Y)?;
            m.rename_variables(outer, Bank::Z, Bank::Y)
        },
    )?;
    let mut out = Transducer::new(manager, t1.alphabet.clone())?;
    out.name = t1.name.clone();
    for (p, q) in &built.pairs {
        out.states
            .add_unique(&format!("{}_{}", t1.state_name(*p), t2.state_name(*q)));
    }
    out.finals.extend(built.finals);
    out.transitions = built.transitions;
    Ok(out)
}
