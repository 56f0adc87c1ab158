//! Nondeterministic bottom-up finite tree automata whose transition functions
//! are stored in a shared multi-terminal BDD.

pub mod alphabet;
pub mod automaton;
pub mod error;
pub mod io;
pub mod mtbdd;
pub mod ops;
pub mod oracle;
pub mod term;
pub mod transducer;

pub use alphabet::{Alphabet, AlphabetBuilder, Symbol, SymbolAssignment, SymbolId, Ternary};
pub use automaton::{StateId, SuperState, SuperStateIndex, TreeAutomaton};
pub use error::{Error, Result};
pub use mtbdd::{Bank, LeafPool, LeafRef, Manager, NodeRef, NodeView};
pub use term::Term;
pub use automaton::StateRegistry;
pub use ops::{QuotientMap, SimulationRelation};
pub use transducer::Transducer;
