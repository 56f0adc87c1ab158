//! Bottom-up tree automata whose transition function lives in a shared MTBDD.
//!
//! The transition function is stored per super-state: a tuple of source
//! states maps to the root of a diagram from symbol codewords to target sets.
//! A missing super-state is the constant-bottom diagram, so every automaton is
//! complete with an implicit rejecting sink.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};
use crate::mtbdd::{Bank, LeafPool, LeafRef, Manager, NodeRef};
use crate::term::Term;

pub type StateId = u32;

/// Tuple of source states; the empty tuple is the initial super-state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SuperState(pub Vec<StateId>);

impl SuperState {
    pub fn initial() -> Self {
        SuperState(Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn states(&self) -> &[StateId] {
        &self.0
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.contains(&q)
    }
}

impl From<&[StateId]> for SuperState {
    fn from(s: &[StateId]) -> Self {
        SuperState(s.to_vec())
    }
}

impl fmt::Display for SuperState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

/// Super-state → root map, bucketed by arity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuperStateIndex {
    nullary: Option<NodeRef>,
    unary: Vec<Option<NodeRef>>,
    binary: BTreeMap<(StateId, StateId), NodeRef>,
    higher: BTreeMap<usize, BTreeMap<Vec<StateId>, NodeRef>>,
}

impl SuperStateIndex {
    pub fn get(&self, source: &[StateId]) -> Option<NodeRef> {
        match source {
            [] => self.nullary,
            [q] => self.unary.get(*q as usize).copied().flatten(),
            [p, q] => self.binary.get(&(*p, *q)).copied(),
            _ => self
                .higher
                .get(&source.len())
                .and_then(|m| m.get(source))
                .copied(),
        }
    }

    /// Stores `root`, or removes the entry when `root` is `None`.
    pub fn set(&mut self, source: &[StateId], root: Option<NodeRef>) {
        match source {
            [] => self.nullary = root,
            [q] => {
                let q = *q as usize;
                if self.unary.len() <= q {
                    self.unary.resize(q + 1, None);
                }
                self.unary[q] = root;
            }
            [p, q] => match root {
                Some(r) => {
                    self.binary.insert((*p, *q), r);
                }
                None => {
                    self.binary.remove(&(*p, *q));
                }
            },
            _ => {
                let bucket = self.higher.entry(source.len()).or_default();
                match root {
                    Some(r) => {
                        bucket.insert(source.to_vec(), r);
                    }
                    None => {
                        bucket.remove(source);
                    }
                }
            }
        }
    }

    /// Stored tuples of one arity, lexicographically.
    pub fn of_arity(&self, arity: usize) -> Vec<(SuperState, NodeRef)> {
        match arity {
            0 => self
                .nullary
                .map(|r| vec![(SuperState::initial(), r)])
                .unwrap_or_default(),
            1 => self
                .unary
                .iter()
                .enumerate()
                .filter_map(|(q, r)| r.map(|r| (SuperState(vec![q as StateId]), r)))
                .collect(),
            2 => self
                .binary
                .iter()
                .map(|(&(p, q), r)| (SuperState(vec![p, q]), *r))
                .collect(),
            n => self
                .higher
                .get(&n)
                .map(|m| {
                    m.iter()
                        .map(|(k, r)| (SuperState(k.clone()), *r))
                        .collect()
                })
                .unwrap_or_default(),
        }
    }

    /// Arities with at least one stored tuple, ascending.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if self.nullary.is_some() {
            out.push(0);
        }
        if self.unary.iter().any(Option::is_some) {
            out.push(1);
        }
        if !self.binary.is_empty() {
            out.push(2);
        }
        out.extend(
            self.higher
                .iter()
                .filter(|(_, m)| !m.is_empty())
                .map(|(n, _)| *n),
        );
        out
    }

    /// Every stored entry, by arity then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (SuperState, NodeRef)> + '_ {
        self.arities().into_iter().flat_map(|n| self.of_arity(n))
    }

    pub fn len(&self) -> usize {
        self.arities().iter().map(|n| self.of_arity(*n).len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.arities().is_empty()
    }

    pub fn roots(&self) -> Vec<NodeRef> {
        self.iter().map(|(_, r)| r).collect()
    }
}

/// Dense ids ↔ unique names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StateRegistry {
    names: Vec<String>,
    index: HashMap<String, StateId>,
}

impl StateRegistry {
    pub fn add(&mut self, name: &str) -> Result<StateId> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateState(name.to_string()));
        }
        let id = self.names.len() as StateId;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: StateId) -> &str {
        &self.names[id as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, id: StateId) -> bool {
        (id as usize) < self.names.len()
    }

    /// Adds `base`, or `base'`, `base''`, ... when taken.
    pub fn add_unique(&mut self, base: &str) -> StateId {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('\'');
        }
        self.add(&name).expect("name is fresh")
    }
}

/// Nondeterministic bottom-up finite tree automaton.
#[derive(Debug, Clone)]
pub struct TreeAutomaton {
    pub(crate) name: String,
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) manager: u32,
    pub(crate) states: StateRegistry,
    pub(crate) finals: BTreeSet<StateId>,
    pub(crate) transitions: SuperStateIndex,
}

impl TreeAutomaton {
    /// Creates an empty automaton bound to `manager`.
    pub fn new(manager: &Manager, alphabet: Arc<Alphabet>) -> Result<Self> {
        if alphabet.width() != manager.width() {
            return Err(Error::WidthMismatch {
                expected: manager.width(),
                found: alphabet.width(),
            });
        }
        Ok(TreeAutomaton {
            name: "A".to_string(),
            alphabet,
            manager: manager.id(),
            states: StateRegistry::default(),
            finals: BTreeSet::new(),
            transitions: SuperStateIndex::default(),
        })
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

    pub fn check_manager(&self, manager: &Manager) -> Result<()> {
        if self.manager != manager.id() {
            return Err(Error::ForeignManager);
        }
        Ok(())
    }

    /// Both operands share manager and alphabet.
    pub fn check_compatible(&self, other: &TreeAutomaton) -> Result<()> {
        if self.manager != other.manager {
            return Err(Error::ForeignManager);
        }
        if !Arc::ptr_eq(&self.alphabet, &other.alphabet) && self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn add_state(&mut self, name: &str) -> Result<StateId> {
        self.states.add(name)
    }

    /// Adds a state named `s<id>` (primed if taken).
    pub fn add_fresh_state(&mut self) -> StateId {
        let name = format!("s{}", self.states.len());
        self.states.add_unique(&name)
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

    pub fn set_final_by_name(&mut self, name: &str) -> Result<()> {
        let id = self
            .states
            .id(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))?;
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

    /// Root for `source`, bottom when absent.
    pub fn root(&self, manager: &Manager, source: &[StateId]) -> NodeRef {
        self.transitions
            .get(source)
            .unwrap_or_else(|| manager.bottom())
    }

    /// Replaces the diagram of `source`; bottom removes the entry.
    pub fn set_root(&mut self, manager: &Manager, source: &[StateId], root: NodeRef) {
        let entry = (!manager.is_bottom(root)).then_some(root);
        self.transitions.set(source, entry);
    }

    /// Stored super-states of the given arity, lexicographically.
    pub fn super_states(&self, arity: usize) -> Vec<SuperState> {
        self.transitions
            .of_arity(arity)
            .into_iter()
            .map(|(s, _)| s)
            .collect()
    }

    fn check_source(&self, symbol: SymbolId, source: &[StateId]) -> Result<()> {
        let arity = self.alphabet.arity(symbol);
        if arity != source.len() {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: source.len(),
            });
        }
        for q in source {
            if !self.states.contains(*q) {
                return Err(Error::UnknownState(q.to_string()));
            }
        }
        Ok(())
    }

    /// Sets `symbol(source) -> targets`, replacing any earlier target set.
    pub fn insert_transition(
        &mut self,
        manager: &mut Manager,
        symbol: SymbolId,
        source: &[StateId],
        targets: &[StateId],
    ) -> Result<()> {
        self.check_manager(manager)?;
        self.check_source(symbol, source)?;
        if targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        if let Some(q) = targets.iter().find(|q| !self.states.contains(**q)) {
            return Err(Error::UnknownState(q.to_string()));
        }
        let leaf = manager.intern_leaf(targets.iter().copied());
        let cube = self.alphabet.encode(symbol);
        let single = manager.create_mtbdd(&cube, &[Bank::X], leaf)?;
        let current = self.root(manager, source);
        let merged = manager.apply(current, single, overwrite)?;
        self.set_root(manager, source, merged);
        Ok(())
    }

    /// Adds `targets` to whatever `symbol(source)` already reaches.
    pub fn add_transition(
        &mut self,
        manager: &mut Manager,
        symbol: SymbolId,
        source: &[StateId],
        targets: &[StateId],
    ) -> Result<()> {
        let mut all = self.lookup(manager, symbol, source)?.to_vec();
        all.extend_from_slice(targets);
        self.insert_transition(manager, symbol, source, &all)
    }

    /// Target set of `symbol(source)`, empty when there is none.
    pub fn get_transition(
        &self,
        manager: &mut Manager,
        symbol: SymbolId,
        source: &[StateId],
    ) -> Result<Vec<StateId>> {
        self.check_manager(manager)?;
        let arity = self.alphabet.arity(symbol);
        if arity != source.len() {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: source.len(),
            });
        }
        let root = self.root(manager, source);
        let cube = self.alphabet.encode(symbol);
        let projected = manager.project(root, &cube, &[Bank::X])?;
        let mut states = LeafRef::BOTTOM;
        manager.monadic_apply(projected, |pool, leaf| {
            states = pool.union(states, leaf);
            leaf
        })?;
        Ok(manager.leaf_set(states).to_vec())
    }

    /// Read-only variant of [`get_transition`](Self::get_transition) that walks
    /// the diagram directly.
    pub fn lookup<'m>(
        &self,
        manager: &'m Manager,
        symbol: SymbolId,
        source: &[StateId],
    ) -> Result<&'m [StateId]> {
        self.check_manager(manager)?;
        let arity = self.alphabet.arity(symbol);
        if arity != source.len() {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: source.len(),
            });
        }
        let Some(root) = self.transitions.get(source) else {
            return Ok(&[]);
        };
        let leaf = manager.eval_code(root, self.alphabet.code(symbol))?;
        Ok(manager.leaf_set(leaf))
    }

    /// States reachable at the root of `term`.
    pub fn run(&self, manager: &Manager, term: &Term) -> Result<BTreeSet<StateId>> {
        let arity = self.alphabet.arity(term.symbol);
        if arity != term.children.len() {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: term.children.len(),
            });
        }
        let child_sets: Vec<Vec<StateId>> = term
            .children
            .iter()
            .map(|c| self.run(manager, c).map(|s| s.into_iter().collect()))
            .collect::<Result<_>>()?;
        let mut out = BTreeSet::new();
        for_each_tuple(&child_sets, |tuple| {
            if let Ok(ts) = self.lookup(manager, term.symbol, tuple) {
                out.extend(ts.iter().copied());
            }
        });
        Ok(out)
    }

    pub fn accepts(&self, manager: &Manager, term: &Term) -> Result<bool> {
        Ok(self.run(manager, term)?.iter().any(|q| self.is_final(*q)))
    }

    /// Copy with `s0..sk` state names.
    pub fn with_canonical_names(&self) -> TreeAutomaton {
        let mut out = self.clone();
        out.states = StateRegistry::default();
        for i in 0..self.num_states() {
            out.states.add(&format!("s{i}")).expect("fresh");
        }
        out
    }

    pub(crate) fn empty_like(&self) -> TreeAutomaton {
        TreeAutomaton {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            manager: self.manager,
            states: StateRegistry::default(),
            finals: BTreeSet::new(),
            transitions: SuperStateIndex::default(),
        }
    }

    /// Distinct diagram nodes used by this automaton.
    pub fn node_count(&self, manager: &Manager) -> Result<usize> {
        self.check_manager(manager)?;
        manager.node_count(&self.transitions.roots())
    }
}

/// Insertion functor: the new value wins wherever it is defined.
pub(crate) fn overwrite(_: &mut LeafPool, current: LeafRef, new: LeafRef) -> LeafRef {
    if new.is_bottom() {
        current
    } else {
        new
    }
}

/// Calls `f` on every element of the Cartesian product of `sets`.
pub fn for_each_tuple<T: Copy, F: FnMut(&[T])>(sets: &[Vec<T>], mut f: F) {
    if sets.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; sets.len()];
    let mut tuple: Vec<T> = sets.iter().map(|s| s[0]).collect();
    loop {
        f(&tuple);
        let mut k = sets.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                tuple[k] = sets[k][idx[k]];
                break;
            }
            idx[k] = 0;
            tuple[k] = sets[k][0];
        }
    }
}
