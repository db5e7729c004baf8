//! A toolkit for synchronizing finite automata and the ideal languages of
//! their reset words.
//!
//! The crate covers four areas:
//!
//! * **Automata** ([`dfa`], [`format`], [`ops`]) — complete DFAs with named
//!   states, a line-oriented file format, and the generic language
//!   operations (products, minimization, equivalence with counterexamples,
//!   subset construction).
//! * **Synchronization** ([`sync`]) — reset words, the power automaton with
//!   a merged singleton sink, canonical shortest reset words, and the
//!   reset-word language as a minimal acceptor.
//! * **Decisions** ([`decide`]) — inclusion, equality and strict inclusion
//!   of reset-word languages with separating words, the two-sided ideal
//!   test, and intersection nonemptiness for acceptor collections.
//! * **Constructions** ([`gadgets`], [`rc`]) — the gadget automata that tie
//!   intersection emptiness to reset-language equality, the binary-alphabet
//!   lift with its encoding morphisms, and exact reset-complexity search at
//!   desk scale.
//!
//! Everything is a pure function over immutable values; results are
//! deterministic, with witnesses canonicalized to shortest-then-lex-least
//! by declared alphabet order. The searched spaces are worst-case
//! exponential, so the exploring operations take explicit caps and fail
//! loudly instead of truncating.

pub mod dfa;
pub mod decide;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod ops;
pub mod rc;
pub mod sync;

#[cfg(test)]
pub(crate) mod testutil;

pub use dfa::{Alphabet, Dfa, StateSet, Word};
pub use error::{Error, ParseError, Result};

/// Default cap on discovered subset states (power automaton, subset
/// construction, product searches).
pub const DEFAULT_SUBSET_CAP: usize = 1 << 20;

/// Default cap on discovered nodes in pair-of-image-sets searches.
pub const DEFAULT_PAIR_CAP: usize = 1 << 22;
