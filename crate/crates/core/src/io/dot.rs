use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alphabet::SymbolId;
use crate::automaton::{StateId, TreeAutomaton};
use crate::error::Result;
use crate::io::extract::explicit_rules;
use crate::mtbdd::Manager;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Bipartite rendering: states as circles, super-states as records with one
/// field per position.
pub fn to_dot(manager: &Manager, aut: &TreeAutomaton) -> Result<String> {
    let alphabet = aut.alphabet();
    // super-state -> target -> symbols
    let mut edges: BTreeMap<Vec<StateId>, BTreeMap<StateId, Vec<SymbolId>>> = BTreeMap::new();
    for (f, src, targets) in explicit_rules(manager, aut)? {
        let per_target = edges.entry(src.0).or_default();
        for q in targets {
            per_target.entry(q).or_default().push(f);
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(aut.name()));
    for q in aut.state_ids() {
        let shape = if aut.is_final(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(
            out,
            "  q{q} [shape={shape}, label={}];",
            quote(aut.state_name(q))
        );
    }
    for (k, (src, per_target)) in edges.iter().enumerate() {
        let fields: Vec<String> = (1..=src.len()).map(|i| format!("<p{i}> {i}")).collect();
        let label = if fields.is_empty() { String::new() } else { fields.join("|") };
        let _ = writeln!(out, "  ss{k} [shape=record, label={}];", quote(&label));
        for (i, p) in src.iter().enumerate() {
            let _ = writeln!(out, "  q{p} -> ss{k}:p{} [label=\"{}\"];", i + 1, i + 1);
        }
        for (q, symbols) in per_target {
            let mut symbols = symbols.clone();
            symbols.sort_unstable();
            symbols.dedup();
            let names: Vec<&str> = symbols
                .iter()
                .map(|f| alphabet.symbol(*f).name.as_str())
                .collect();
            let _ = writeln!(out, "  ss{k} -> q{q} [label={}];", quote(&names.join(",")));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
