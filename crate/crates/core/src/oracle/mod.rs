//! Explicit-representation reference implementation and random instance
//! generators, used to cross-check the symbolic operations.

mod explicit;
mod random;
mod terms;

pub use explicit::{
    from_explicit, to_explicit, transducer_to_explicit, ExplicitTA, ExplicitTransducer, Rule,
    TransducerRule,
};
pub use random::{random_alphabet, random_automaton, random_transducer, seeded};
pub use terms::{accepted_in, accepted_upto, TermTable, MAX_HEIGHT, MAX_TERMS};
