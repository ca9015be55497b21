//! Deterministic and nondeterministic forest automata.
//!
//! A forest automaton is a finite monoid of states `(Q, +, 0)` together with
//! a transition table over an alphabet and a set of accepting states. A forest
//! is evaluated bottom-up: the empty forest maps to `0`, a tree `a(f)` maps to
//! `δ(a, value(f))`, and a sequence of trees maps to the sum of their values.
//! In the nondeterministic variant transitions yield sets of states and the
//! evaluation of a forest is a set.

mod alphabet;
mod construct;
mod dfa;
mod monoid;
mod nfa;
mod raw;

pub use alphabet::Alphabet;
pub use construct::{
    complement, determinize, extend_alphabet, globally, inverse_hom, product, product_nfa,
    reorder_nfa, split_neutral, split_neutral_nfa, HomSpec, ProductMode,
};
pub use dfa::Dfa;
pub(crate) use monoid::check_monoid_laws;
pub use monoid::StateMonoid;
pub use nfa::{Nfa, StateSet};
pub use raw::{Automaton, RawAutomaton};
