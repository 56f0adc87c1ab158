use crate::alphabet::{SymbolAssignment, SymbolId, Ternary};
use crate::automaton::{StateId, SuperState, TreeAutomaton};
use crate::error::{Error, Result};
use crate::mtbdd::{Bank, LeafRef, Manager, NodeRef, NodeView};
use crate::transducer::Transducer;

/// One path of a transition diagram: all assignments in `cube` lead from
/// `source` to `targets`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionCube {
    pub cube: SymbolAssignment,
    pub source: SuperState,
    pub targets: Vec<StateId>,
}

/// Disjoint cubes covering every non-bottom assignment of `root`, with their
/// leaves. Variables outside `banks` are rejected. Low branches come first.
pub fn extract_cubes(
    manager: &Manager,
    root: NodeRef,
    banks: &[Bank],
) -> Result<Vec<(SymbolAssignment, LeafRef)>> {
    let mut cube = SymbolAssignment::any(manager.width() * banks.len());
    let mut out = Vec::new();
    walk(manager, root, banks, &mut cube, &mut out)?;
    Ok(out)
}

fn walk(
    manager: &Manager,
    node: NodeRef,
    banks: &[Bank],
    cube: &mut SymbolAssignment,
    out: &mut Vec<(SymbolAssignment, LeafRef)>,
) -> Result<()> {
    match manager.view(node)? {
        NodeView::Leaf(leaf) => {
            if !leaf.is_bottom() {
                out.push((cube.clone(), leaf));
            }
        }
        NodeView::Inner { var, low, high } => {
            let bank = banks
                .iter()
                .position(|b| *b == Bank::of(var))
                .ok_or(Error::PartialAssignment)?;
            let pos = Bank::bit(var) * banks.len() + bank;
            cube.set(pos, Ternary::Zero);
            walk(manager, low, banks, cube, out)?;
            cube.set(pos, Ternary::One);
            walk(manager, high, banks, cube, out)?;
            cube.set(pos, Ternary::Any);
        }
    }
    Ok(())
}

/// Cubes of every stored super-state, super-states in index order.
pub fn extract_transitions(manager: &Manager, aut: &TreeAutomaton) -> Result<Vec<TransitionCube>> {
    aut.check_manager(manager)?;
    let mut out = Vec::new();
    for (source, root) in aut.transitions().iter() {
        for (cube, leaf) in extract_cubes(manager, root, &[Bank::X])? {
            out.push(TransitionCube {
                cube,
                source: source.clone(),
                targets: manager.leaf_set(leaf).to_vec(),
            });
        }
    }
    Ok(out)
}

/// Explicit `(symbol, source, targets)` rules of an automaton; only symbols
/// whose arity matches the source are reported.
pub fn explicit_rules(
    manager: &Manager,
    aut: &TreeAutomaton,
) -> Result<Vec<(SymbolId, SuperState, Vec<StateId>)>> {
    let alphabet = aut.alphabet();
    let mut out = Vec::new();
    for tc in extract_transitions(manager, aut)? {
        for f in alphabet.decode_cube(&tc.cube, Some(tc.source.arity()))? {
            out.push((f, tc.source.clone(), tc.targets.clone()));
        }
    }
    Ok(out)
}

/// `(input, source, output, targets)`.
pub type TransducerRuleRow = (SymbolId, SuperState, SymbolId, Vec<StateId>);

/// Explicit rules of a transducer.
pub fn explicit_rules_transducer(manager: &Manager, tr: &Transducer) -> Result<Vec<TransducerRuleRow>> {
    if tr.manager_id() != manager.id() {
        return Err(Error::ForeignManager);
    }
    let alphabet = tr.alphabet();
    let mut out = Vec::new();
    for (source, root) in tr.transitions().iter() {
        let arity = source.arity();
        for (cube, leaf) in extract_cubes(manager, root, &[Bank::X, Bank::Y])? {
            let inputs = alphabet.decode_cube(&cube.stride(0, 2), Some(arity))?;
            let outputs = alphabet.decode_cube(&cube.stride(1, 2), Some(arity))?;
            for f in &inputs {
                for g in &outputs {
                    out.push((*f, source.clone(), *g, manager.leaf_set(leaf).to_vec()));
                }
            }
        }
    }
    Ok(out)
}
