use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, SymbolId};
use crate::automaton::{for_each_tuple, StateId, TreeAutomaton};
use crate::error::{Error, Result};
use crate::mtbdd::Manager;
use crate::term::Term;

/// Largest height the enumerators accept.
pub const MAX_HEIGHT: usize = 4;
/// Largest number of terms the enumerators build.
pub const MAX_TERMS: usize = 1_000_000;

/// Every term up to a height, children stored before their parents.
#[derive(Debug, Clone)]
pub struct TermTable {
    nodes: Vec<(SymbolId, Vec<usize>)>,
}

impl TermTable {
    pub fn upto(alphabet: &Alphabet, h: usize) -> Result<TermTable> {
        if h > MAX_HEIGHT {
            return Err(Error::TooLarge(format!("height {h} exceeds {MAX_HEIGHT}")));
        }
        let mut nodes: Vec<(SymbolId, Vec<usize>)> = Vec::new();
        // nodes[lower..prev] are the terms of height exactly level - 1
        let (mut lower, mut prev) = (0usize, 0usize);
        for level in 1..=h {
            for (f, s) in alphabet.symbols() {
                if s.arity == 0 {
                    if level == 1 {
                        nodes.push((f, Vec::new()));
                    }
                    continue;
                }
                if prev == 0 {
                    continue;
                }
                let count = prev.checked_pow(s.arity as u32).unwrap_or(usize::MAX);
                if nodes.len().saturating_add(count) > MAX_TERMS {
                    return Err(Error::TooLarge(format!("more than {MAX_TERMS} terms")));
                }
                let all: Vec<usize> = (0..prev).collect();
                for_each_tuple(&vec![all; s.arity], |kids| {
                    if kids.iter().any(|k| *k >= lower) {
                        nodes.push((f, kids.to_vec()));
                    }
                });
            }
            (lower, prev) = (prev, nodes.len());
        }
        Ok(TermTable { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn entry(&self, k: usize) -> (SymbolId, &[usize]) {
        (self.nodes[k].0, &self.nodes[k].1)
    }

    pub fn term(&self, k: usize) -> Term {
        let (f, kids) = &self.nodes[k];
        Term::node(*f, kids.iter().map(|c| self.term(*c)).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.len()).map(|k| self.term(k))
    }
}

/// Terms of height at most `h` accepted by a symbolic automaton, evaluated
/// through its own diagrams.
pub fn accepted_upto(manager: &Manager, aut: &TreeAutomaton, h: usize) -> Result<BTreeSet<Term>> {
    let table = TermTable::upto(aut.alphabet(), h)?;
    accepted_in(manager, aut, &table)
}

pub fn accepted_in(manager: &Manager, aut: &TreeAutomaton, table: &TermTable) -> Result<BTreeSet<Term>> {
    let mut runs: Vec<Vec<StateId>> = Vec::with_capacity(table.len());
    let mut out = BTreeSet::new();
    for k in 0..table.len() {
        let (f, kids) = table.entry(k);
        let sets: Vec<Vec<StateId>> = kids.iter().map(|c| runs[*c].clone()).collect();
        let mut here = BTreeSet::new();
        let mut failure = None;
        for_each_tuple(&sets, |t| match aut.lookup(manager, f, t) {
            Ok(ts) => here.extend(ts.iter().copied()),
            Err(e) => failure = Some(e),
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if here.iter().any(|q| aut.is_final(*q)) {
            out.insert(table.term(k));
        }
        runs.push(here.into_iter().collect());
    }
    Ok(out)
}
