//! `--check-oracle`: recompute the answer with the explicit oracle over all
//! terms up to height 3 and compare.

use std::collections::BTreeSet;

use treeaut::oracle::{accepted_in, to_explicit, transducer_to_explicit, ExplicitTA, TermTable};
use treeaut::{Error, Manager, Term, Transducer, TreeAutomaton};

use crate::error::CliError;

pub const HEIGHT: usize = 3;

/// `Ok(None)` when the oracle's size guard trips; the check is then skipped.
fn guarded<T>(r: treeaut::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooLarge(what)) => {
            eprintln!("oracle check skipped: {what} too large");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn mismatch(what: &str) -> CliError {
    CliError::Invariant(format!("oracle disagrees on {what}"))
}

/// Compares the language of `result` with `expected(table, explicit inputs)`.
pub fn language<F>(
    m: &Manager,
    inputs: &[&TreeAutomaton],
    result: &TreeAutomaton,
    what: &str,
    expected: F,
) -> Result<(), CliError>
where
    F: FnOnce(&TermTable, &[ExplicitTA]) -> BTreeSet<Term>,
{
    let Some(table) = guarded(TermTable::upto(result.alphabet(), HEIGHT))? else {
        return Ok(());
    };
    let mut xs = Vec::new();
    for a in inputs {
        match guarded(to_explicit(m, a))? {
            Some(x) => xs.push(x),
            None => return Ok(()),
        }
    }
    if accepted_in(m, result, &table)? != expected(&table, &xs) {
        return Err(mismatch(what));
    }
    Ok(())
}

pub fn emptiness(m: &Manager, a: &TreeAutomaton, empty: bool) -> Result<(), CliError> {
    let Some(x) = guarded(to_explicit(m, a))? else {
        return Ok(());
    };
    if x.is_empty() != empty {
        return Err(mismatch("emptiness"));
    }
    Ok(())
}

pub fn membership(m: &Manager, a: &TreeAutomaton, t: &Term, member: bool) -> Result<(), CliError> {
    let Some(x) = guarded(to_explicit(m, a))? else {
        return Ok(());
    };
    if x.accepts(t) != member {
        return Err(mismatch("membership"));
    }
    Ok(())
}

/// A counterexample of bounded height refutes inclusion.
pub fn inclusion(m: &Manager, a: &TreeAutomaton, b: &TreeAutomaton, holds: bool) -> Result<(), CliError> {
    let Some(table) = guarded(TermTable::upto(a.alphabet(), HEIGHT))? else {
        return Ok(());
    };
    let la = accepted_in(m, a, &table)?;
    let lb = accepted_in(m, b, &table)?;
    if holds && !la.is_subset(&lb) {
        return Err(mismatch("inclusion"));
    }
    Ok(())
}

pub fn image(m: &Manager, t: &Transducer, a: &TreeAutomaton, result: &TreeAutomaton) -> Result<(), CliError> {
    let Some(table) = guarded(TermTable::upto(a.alphabet(), HEIGHT))? else {
        return Ok(());
    };
    let xt = transducer_to_explicit(m, t)?;
    let Some(want) = guarded(xt.image(&accepted_in(m, a, &table)?))? else {
        return Ok(());
    };
    if accepted_in(m, result, &table)? != want {
        return Err(mismatch("transducer image"));
    }
    Ok(())
}

/// The composite relates the same pairs as rule chaining, checked on the
/// images of every bounded term.
pub fn composition(m: &Manager, t1: &Transducer, t2: &Transducer, tc: &Transducer) -> Result<(), CliError> {
    let Some(table) = guarded(TermTable::upto(t1.alphabet(), HEIGHT))? else {
        return Ok(());
    };
    let all: BTreeSet<Term> = table.terms().collect();
    let chained = transducer_to_explicit(m, t1)?.then(&transducer_to_explicit(m, t2)?);
    let direct = transducer_to_explicit(m, tc)?;
    let (Some(want), Some(got)) = (guarded(chained.image(&all))?, guarded(direct.image(&all))?) else {
        return Ok(());
    };
    if want != got {
        return Err(mismatch("composition"));
    }
    Ok(())
}
