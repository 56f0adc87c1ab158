use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::alphabet::{Alphabet, SymbolId};
use crate::automaton::{for_each_tuple, StateId, TreeAutomaton};
use crate::error::{Error, Result};
use crate::io::{explicit_rules, explicit_rules_transducer};
use crate::mtbdd::Manager;
use crate::oracle::terms::TermTable;
use crate::term::Term;
use crate::transducer::Transducer;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub symbol: SymbolId,
    pub source: Vec<StateId>,
    pub target: StateId,
}

/// Tree automaton given by an enumerated rule set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitTA {
    pub alphabet: Arc<Alphabet>,
    pub num_states: usize,
    pub finals: BTreeSet<StateId>,
    pub rules: BTreeSet<Rule>,
}

/// Cap on the number of states the subset and product constructions may
/// create.
const STATE_GUARD: usize = 4096;

pub fn to_explicit(manager: &Manager, aut: &TreeAutomaton) -> Result<ExplicitTA> {
    let mut rules = BTreeSet::new();
    for (symbol, source, targets) in explicit_rules(manager, aut)? {
        for target in targets {
            rules.insert(Rule {
                symbol,
                source: source.0.clone(),
                target,
            });
        }
    }
    Ok(ExplicitTA {
        alphabet: aut.alphabet().clone(),
        num_states: aut.num_states(),
        finals: aut.finals().clone(),
        rules,
    })
}

/// Symbolic automaton with states `s0..`, one insertion per rule group.
pub fn from_explicit(manager: &mut Manager, x: &ExplicitTA) -> Result<TreeAutomaton> {
    let mut aut = TreeAutomaton::new(manager, x.alphabet.clone())?;
    for q in 0..x.num_states {
        aut.add_state(&format!("s{q}"))?;
    }
    for q in &x.finals {
        aut.set_final(*q)?;
    }
    let mut grouped: BTreeMap<(SymbolId, Vec<StateId>), Vec<StateId>> = BTreeMap::new();
    for r in &x.rules {
        grouped.entry((r.symbol, r.source.clone())).or_default().push(r.target);
    }
    for ((f, src), targets) in grouped {
        aut.insert_transition(manager, f, &src, &targets)?;
    }
    Ok(aut)
}

impl ExplicitTA {
    pub fn new(alphabet: Arc<Alphabet>, num_states: usize) -> Self {
        ExplicitTA {
            alphabet,
            num_states,
            finals: BTreeSet::new(),
            rules: BTreeSet::new(),
        }
    }

    fn index(&self) -> HashMap<(SymbolId, &[StateId]), Vec<StateId>> {
        let mut idx: HashMap<(SymbolId, &[StateId]), Vec<StateId>> = HashMap::new();
        for r in &self.rules {
            idx.entry((r.symbol, r.source.as_slice())).or_default().push(r.target);
        }
        idx
    }

    /// Run sets of every term in `table`, in table order.
    pub fn runs(&self, table: &TermTable) -> Vec<BTreeSet<StateId>> {
        let idx = self.index();
        let mut out: Vec<BTreeSet<StateId>> = Vec::with_capacity(table.len());
        for k in 0..table.len() {
            let (symbol, children) = table.entry(k);
            let sets: Vec<Vec<StateId>> =
                children.iter().map(|c| out[*c].iter().copied().collect()).collect();
            let mut here = BTreeSet::new();
            for_each_tuple(&sets, |t| {
                if let Some(ts) = idx.get(&(symbol, t)) {
                    here.extend(ts.iter().copied());
                }
            });
            out.push(here);
        }
        out
    }

    pub fn run(&self, term: &Term) -> BTreeSet<StateId> {
        let sets: Vec<Vec<StateId>> = term
            .children
            .iter()
            .map(|c| self.run(c).into_iter().collect())
            .collect();
        let mut out = BTreeSet::new();
        for r in &self.rules {
            if r.symbol == term.symbol
                && r.source.len() == sets.len()
                && r.source.iter().zip(&sets).all(|(q, s)| s.contains(q))
            {
                out.insert(r.target);
            }
        }
        out
    }

    pub fn accepts(&self, term: &Term) -> bool {
        self.run(term).iter().any(|q| self.finals.contains(q))
    }

    /// Accepted terms of height at most `h`.
    pub fn language_upto(&self, h: usize) -> Result<BTreeSet<Term>> {
        let table = TermTable::upto(&self.alphabet, h)?;
        Ok(self.language_in(&table))
    }

    pub fn language_in(&self, table: &TermTable) -> BTreeSet<Term> {
        self.runs(table)
            .iter()
            .enumerate()
            .filter(|(_, run)| run.iter().any(|q| self.finals.contains(q)))
            .map(|(k, _)| table.term(k))
            .collect()
    }

    /// States reached by some term.
    pub fn reachable(&self) -> BTreeSet<StateId> {
        let mut reached = BTreeSet::new();
        loop {
            let before = reached.len();
            for r in &self.rules {
                if r.source.iter().all(|q| reached.contains(q)) {
                    reached.insert(r.target);
                }
            }
            if reached.len() == before {
                return reached;
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.reachable().is_disjoint(&self.finals)
    }

    /// Disjoint union; states of `other` follow those of `self`.
    pub fn union(&self, other: &ExplicitTA) -> ExplicitTA {
        let off = self.num_states as StateId;
        let mut out = self.clone();
        out.num_states += other.num_states;
        out.finals.extend(other.finals.iter().map(|q| q + off));
        out.rules.extend(other.rules.iter().map(|r| Rule {
            symbol: r.symbol,
            source: r.source.iter().map(|q| q + off).collect(),
            target: r.target + off,
        }));
        out
    }

    /// Full product over `Q1 × Q2`, pair `(p, q)` numbered `p * |Q2| + q`.
    pub fn intersection(&self, other: &ExplicitTA) -> ExplicitTA {
        let n2 = other.num_states as StateId;
        let pair = |p: StateId, q: StateId| p * n2 + q;
        let mut out = ExplicitTA::new(self.alphabet.clone(), self.num_states * other.num_states);
        for p in &self.finals {
            for q in &other.finals {
                out.finals.insert(pair(*p, *q));
            }
        }
        for r1 in &self.rules {
            for r2 in &other.rules {
                if r1.symbol == r2.symbol && r1.source.len() == r2.source.len() {
                    out.rules.insert(Rule {
                        symbol: r1.symbol,
                        source: r1.source.iter().zip(&r2.source).map(|(a, b)| pair(*a, *b)).collect(),
                        target: pair(r1.target, r2.target),
                    });
                }
            }
        }
        out
    }

    /// Subset construction over reachable non-empty subsets, optionally
    /// completed with the empty set as sink state 0.
    fn subsets(&self, complete: bool) -> Result<ExplicitTA> {
        let idx = self.index();
        let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
        let mut sets: Vec<BTreeSet<StateId>> = Vec::new();
        let mut rules: BTreeMap<(SymbolId, Vec<StateId>), StateId> = BTreeMap::new();
        let symbols: Vec<(SymbolId, usize)> =
            self.alphabet.symbols().map(|(f, s)| (f, s.arity)).collect();
        let mut intern = |set: BTreeSet<StateId>, sets: &mut Vec<BTreeSet<StateId>>| -> Result<StateId> {
            if let Some(id) = ids.get(&set) {
                return Ok(*id);
            }
            if sets.len() >= STATE_GUARD {
                return Err(Error::TooLarge("subset construction".into()));
            }
            let id = sets.len() as StateId;
            ids.insert(set.clone(), id);
            sets.push(set);
            Ok(id)
        };
        if complete {
            intern(BTreeSet::new(), &mut sets)?;
        }
        let mut done = 0usize;
        loop {
            let known = sets.len();
            for &(f, arity) in &symbols {
                let range: Vec<StateId> = (0..known as StateId).collect();
                let mut tuples = Vec::new();
                for_each_tuple(&vec![range; arity], |t| {
                    if arity == 0 || t.iter().any(|s| *s as usize >= done) {
                        tuples.push(t.to_vec());
                    }
                });
                if arity == 0 && done > 0 {
                    tuples.clear();
                }
                for t in tuples {
                    let members: Vec<Vec<StateId>> =
                        t.iter().map(|s| sets[*s as usize].iter().copied().collect()).collect();
                    let mut target = BTreeSet::new();
                    for_each_tuple(&members, |src| {
                        if let Some(ts) = idx.get(&(f, src)) {
                            target.extend(ts.iter().copied());
                        }
                    });
                    if target.is_empty() && !complete {
                        continue;
                    }
                    let id = intern(target, &mut sets)?;
                    rules.insert((f, t), id);
                }
            }
            done = known;
            if sets.len() == known {
                break;
            }
        }
        let mut out = ExplicitTA::new(self.alphabet.clone(), sets.len());
        for (k, s) in sets.iter().enumerate() {
            if s.iter().any(|q| self.finals.contains(q)) {
                out.finals.insert(k as StateId);
            }
        }
        out.rules = rules
            .into_iter()
            .map(|((symbol, source), target)| Rule {
                symbol,
                source,
                target,
            })
            .collect();
        Ok(out)
    }

    pub fn determinise(&self) -> Result<ExplicitTA> {
        self.subsets(false)
    }

    /// Complete deterministic automaton for the complement language.
    pub fn complement(&self) -> Result<ExplicitTA> {
        let mut d = self.subsets(true)?;
        d.finals = (0..d.num_states as StateId)
            .filter(|q| !d.finals.contains(q))
            .collect();
        Ok(d)
    }

    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.rules.iter().all(|r| seen.insert((r.symbol, r.source.clone())))
    }

    /// State count of the minimal deterministic automaton without a sink
    /// state, by Moore refinement of the completed subset automaton.
    pub fn minimal_state_count(&self) -> Result<usize> {
        let d = self.subsets(true)?;
        let n = d.num_states;
        let delta: HashMap<(SymbolId, Vec<StateId>), StateId> = d
            .rules
            .iter()
            .map(|r| ((r.symbol, r.source.clone()), r.target))
            .collect();
        let symbols: Vec<(SymbolId, usize)> =
            self.alphabet.symbols().map(|(f, s)| (f, s.arity)).collect();
        let all: Vec<StateId> = (0..n as StateId).collect();
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(d.finals.contains(&(q as StateId)))).collect();
        loop {
            let mut sigs: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next = vec![0; n];
            for q in 0..n as StateId {
                let mut sig = vec![class[q as usize]];
                for &(f, arity) in &symbols {
                    for hole in 0..arity {
                        for_each_tuple(&vec![all.clone(); arity.saturating_sub(1)], |rest| {
                            let mut src = rest.to_vec();
                            src.insert(hole, q);
                            sig.push(class[delta[&(f, src)] as usize]);
                        });
                    }
                }
                let fresh = sigs.len();
                next[q as usize] = *sigs.entry(sig).or_insert(fresh);
            }
            let before = class.iter().collect::<BTreeSet<_>>().len();
            class = next;
            if sigs.len() == before {
                return Ok(sigs.len() - 1);
            }
        }
    }

    /// Greatest downward simulation as `sim[q][r]`, `r` simulating `q`.
    pub fn greatest_simulation(&self) -> Vec<Vec<bool>> {
        let n = self.num_states;
        let mut sim = vec![vec![true; n]; n];
        let mut into: BTreeMap<StateId, Vec<&Rule>> = BTreeMap::new();
        for r in &self.rules {
            into.entry(r.target).or_default().push(r);
        }
        loop {
            let mut changed = false;
            for q in 0..n {
                for r in 0..n {
                    if !sim[q][r] {
                        continue;
                    }
                    let ok = into.get(&(q as StateId)).into_iter().flatten().all(|rq| {
                        into.get(&(r as StateId)).into_iter().flatten().any(|rr| {
                            rr.symbol == rq.symbol
                                && rr.source.len() == rq.source.len()
                                && rq
                                    .source
                                    .iter()
                                    .zip(&rr.source)
                                    .all(|(a, b)| sim[*a as usize][*b as usize])
                        })
                    });
                    if !ok {
                        sim[q][r] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return sim;
            }
        }
    }

    /// `rel[q][r]` satisfies the defining implication of a downward
    /// simulation.
    pub fn is_downward_simulation(&self, rel: &[Vec<bool>]) -> bool {
        self.rules.iter().all(|rq| {
            (0..self.num_states).all(|r| {
                !rel[rq.target as usize][r]
                    || self.rules.iter().any(|rr| {
                        rr.target as usize == r
                            && rr.symbol == rq.symbol
                            && rr.source.len() == rq.source.len()
                            && rq
                                .source
                                .iter()
                                .zip(&rr.source)
                                .all(|(a, b)| rel[*a as usize][*b as usize])
                    })
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransducerRule {
    pub input: SymbolId,
    pub source: Vec<StateId>,
    pub output: SymbolId,
    pub target: StateId,
}

/// Relabelling transducer as an enumerated rule set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitTransducer {
    pub alphabet: Arc<Alphabet>,
    pub num_states: usize,
    pub finals: BTreeSet<StateId>,
    pub rules: BTreeSet<TransducerRule>,
}

/// Cap on the relabellings tracked per subterm.
const IMAGE_GUARD: usize = 100_000;

pub fn transducer_to_explicit(manager: &Manager, tr: &Transducer) -> Result<ExplicitTransducer> {
    let mut rules = BTreeSet::new();
    for (input, source, output, targets) in explicit_rules_transducer(manager, tr)? {
        for target in targets {
            rules.insert(TransducerRule {
                input,
                source: source.0.clone(),
                output,
                target,
            });
        }
    }
    Ok(ExplicitTransducer {
        alphabet: tr.alphabet().clone(),
        num_states: tr.num_states(),
        finals: tr.finals().clone(),
        rules,
    })
}

impl ExplicitTransducer {
    /// All `(state, output term)` pairs the transducer can produce on `t`.
    pub fn outputs(&self, t: &Term) -> Result<BTreeSet<(StateId, Term)>> {
        let children: Vec<Vec<(StateId, Term)>> = t
            .children
            .iter()
            .map(|c| self.outputs(c).map(|s| s.into_iter().collect()))
            .collect::<Result<_>>()?;
        let mut out = BTreeSet::new();
        for r in &self.rules {
            if r.input != t.symbol || r.source.len() != children.len() {
                continue;
            }
            let options: Vec<Vec<usize>> = r
                .source
                .iter()
                .zip(&children)
                .map(|(q, outs)| (0..outs.len()).filter(|k| outs[*k].0 == *q).collect())
                .collect();
            for_each_tuple(&options, |pick| {
                let kids = pick.iter().zip(&children).map(|(k, outs)| outs[*k].1.clone()).collect();
                out.insert((r.target, Term::node(r.output, kids)));
            });
            if out.len() > IMAGE_GUARD {
                return Err(Error::TooLarge("relabelling image".into()));
            }
        }
        Ok(out)
    }

    /// `{t' : (t, t') ∈ τ, t ∈ language}`.
    pub fn image(&self, language: &BTreeSet<Term>) -> Result<BTreeSet<Term>> {
        let mut out = BTreeSet::new();
        for t in language {
            for (q, t2) in self.outputs(t)? {
                if self.finals.contains(&q) {
                    out.insert(t2);
                }
            }
        }
        Ok(out)
    }

    /// Rule chaining: `f/g` of `self` followed by `g/h` of `next`, states
    /// paired as `p * |Q_next| + q`.
    pub fn then(&self, next: &ExplicitTransducer) -> ExplicitTransducer {
        let n2 = next.num_states as StateId;
        let pair = |p: StateId, q: StateId| p * n2 + q;
        let mut rules = BTreeSet::new();
        for r1 in &self.rules {
            for r2 in &next.rules {
                if r1.output == r2.input && r1.source.len() == r2.source.len() {
                    rules.insert(TransducerRule {
                        input: r1.input,
                        source: r1.source.iter().zip(&r2.source).map(|(a, b)| pair(*a, *b)).collect(),
                        output: r2.output,
                        target: pair(r1.target, r2.target),
                    });
                }
            }
        }
        let mut finals = BTreeSet::new();
        for p in &self.finals {
            for q in &next.finals {
                finals.insert(pair(*p, *q));
            }
        }
        ExplicitTransducer {
            alphabet: self.alphabet.clone(),
            num_states: self.num_states * next.num_states,
            finals,
            rules,
        }
    }
}
