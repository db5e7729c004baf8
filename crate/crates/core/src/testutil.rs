//! Random automaton strategies shared by the in-crate property tests.

use proptest::collection::vec;
use proptest::prelude::*;

use crate::dfa::{Alphabet, Dfa};

const LETTER_POOL: [&str; 5] = ["a", "b", "c", "d", "e"];

pub(crate) fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(LETTER_POOL[..k].iter().copied()).unwrap()
}

fn build(n: usize, k: usize, table: Vec<usize>, initial: Option<usize>, finals: Vec<bool>) -> Dfa {
    let states: Vec<String> = (0..n).map(|s| format!("q{s}")).collect();
    Dfa::from_index_table(states, alphabet(k), table, initial, finals)
        .expect("generated tables are well-formed")
}

/// A bare DFA (no initial, no finals) with up to the given dimensions.
pub(crate) fn arb_bare(max_n: usize, max_k: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        vec(0..n, n * k).prop_map(move |table| build(n, k, table, None, vec![false; n]))
    })
}

/// An acceptor with an initial state and a random (possibly empty) final set.
pub(crate) fn arb_acceptor(max_n: usize, max_k: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        (vec(0..n, n * k), 0..n, vec(any::<bool>(), n))
            .prop_map(move |(table, init, finals)| build(n, k, table, Some(init), finals))
    })
}

/// Two bare DFAs over the same alphabet.
pub(crate) fn arb_bare_pair(max_n: usize, k: usize) -> impl Strategy<Value = (Dfa, Dfa)> {
    let one = move |n: usize| {
        vec(0..n, n * k).prop_map(move |table| build(n, k, table, None, vec![false; n]))
    };
    (1..=max_n, 1..=max_n).prop_flat_map(move |(n1, n2)| (one(n1), one(n2)))
}

/// Two acceptors over the same alphabet.
pub(crate) fn arb_acceptor_pair(max_n: usize, k: usize) -> impl Strategy<Value = (Dfa, Dfa)> {
    let one = move |n: usize| {
        (vec(0..n, n * k), 0..n, vec(any::<bool>(), n))
            .prop_map(move |(table, init, finals)| build(n, k, table, Some(init), finals))
    };
    (1..=max_n, 1..=max_n).prop_flat_map(move |(n1, n2)| (one(n1), one(n2)))
}

/// Letter indices to be taken modulo the alphabet size at the use site.
pub(crate) fn arb_raw_word(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    vec(0..64usize, 0..=max_len)
}
