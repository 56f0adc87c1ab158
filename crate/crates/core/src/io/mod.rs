//! Text import and export: Timbuk documents, cube extraction and DOT.

mod dot;
mod extract;
mod timbuk;

pub use dot::to_dot;
pub use extract::{
    explicit_rules, explicit_rules_transducer, extract_cubes, extract_transitions, TransducerRuleRow, TransitionCube,
};
pub use timbuk::{
    merged_alphabet, parse_timbuk, parse_transducer, write_timbuk, write_transducer, DocumentKind,
    RuleLine, TimbukDocument,
};
