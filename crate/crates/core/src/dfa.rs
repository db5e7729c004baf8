//! Complete deterministic finite automata with named states and letters.
//!
//! Every [`Dfa`] is total: the transition table defines a successor for every
//! (state, letter) pair. An automaton may optionally carry an initial state
//! and a (possibly empty) set of final states, in which case it doubles as an
//! acceptor. State identity is by token name; two isomorphic automata with
//! different names are different values.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Checks the token rules shared by state names and letters.
pub(crate) fn check_token(tok: &str) -> Result<()> {
    if tok.is_empty() || tok.chars().any(|c| c.is_whitespace() || c == ':' || c == '#') {
        return Err(Error::BadToken(tok.to_string()));
    }
    Ok(())
}

/// An ordered alphabet of distinct letter tokens.
///
/// Order is significant: it drives tie-breaking (lexicographically least
/// witnesses) everywhere downstream.
#[derive(Debug, Clone)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            check_token(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters, index })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> &str {
        &self.letters[i]
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.index.get(letter).copied()
    }

    pub fn require(&self, letter: &str) -> Result<usize> {
        self.index_of(letter)
            .ok_or_else(|| Error::UnknownLetter(letter.to_string()))
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.index.contains_key(letter)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Alphabet {}

/// A finite word: a sequence of letter tokens.
///
/// Words are not tied to an alphabet; membership of each token is checked at
/// the point of use.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<String>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word(letters.into_iter().map(Into::into).collect())
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: impl Into<String>) {
        self.0.push(letter.into());
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    pub fn from_indices(alphabet: &Alphabet, indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| alphabet.letter(i).to_string()).collect())
    }

    /// Resolves every token against `alphabet`, failing on the first unknown.
    pub fn to_indices(&self, alphabet: &Alphabet) -> Result<Vec<usize>> {
        self.0.iter().map(|l| alphabet.require(l)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.0.join(" "))
        }
    }
}

/// A set of state indices backed by a fixed-width bitset.
///
/// All sets participating in one computation must be created with the same
/// capacity (the state count of the automaton at hand).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    blocks: Vec<u64>,
}

impl StateSet {
    pub fn empty(capacity: usize) -> Self {
        StateSet {
            blocks: vec![0; capacity.div_ceil(64).max(1)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = StateSet::empty(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn singleton(capacity: usize, state: usize) -> Self {
        let mut s = StateSet::empty(capacity);
        s.insert(state);
        s
    }

    pub fn insert(&mut self, state: usize) {
        self.blocks[state / 64] |= 1u64 << (state % 64);
    }

    pub fn contains(&self, state: usize) -> bool {
        self.blocks[state / 64] & (1u64 << (state % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_singleton(&self) -> bool {
        self.len() == 1
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// State indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            (0..64).filter_map(move |bit| {
                if block & (1u64 << bit) != 0 {
                    Some(bi * 64 + bit)
                } else {
                    None
                }
            })
        })
    }
}

/// A complete deterministic finite automaton, optionally decorated with an
/// initial state and final states.
#[derive(Debug, Clone)]
pub struct Dfa {
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    alphabet: Alphabet,
    // table[s * k + l] = successor of state s under letter l
    table: Vec<usize>,
    initial: Option<usize>,
    finals: Vec<bool>,
}

impl PartialEq for Dfa {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states
            && self.alphabet == other.alphabet
            && self.table == other.table
            && self.initial == other.initial
            && self.finals == other.finals
    }
}

impl Eq for Dfa {}

impl Dfa {
    /// Builds a DFA from named parts, validating completeness and all tokens.
    pub fn new(
        states: &[&str],
        letters: &[&str],
        transitions: &[(&str, &str, &str)],
        initial: Option<&str>,
        finals: &[&str],
    ) -> Result<Dfa> {
        let alphabet = Alphabet::new(letters.iter().copied())?;
        if states.is_empty() {
            return Err(Error::NoStates);
        }
        let mut state_index = HashMap::new();
        let state_names: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        for (i, s) in state_names.iter().enumerate() {
            check_token(s)?;
            if state_index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let n = state_names.len();
        let k = alphabet.len();
        let mut table = vec![usize::MAX; n * k];
        for &(src, letter, dst) in transitions {
            let s = *state_index
                .get(src)
                .ok_or_else(|| Error::UnknownState(src.to_string()))?;
            let l = alphabet.require(letter)?;
            let t = *state_index
                .get(dst)
                .ok_or_else(|| Error::UnknownState(dst.to_string()))?;
            if table[s * k + l] != usize::MAX {
                return Err(Error::DuplicateTransition {
                    state: src.to_string(),
                    letter: letter.to_string(),
                });
            }
            table[s * k + l] = t;
        }
        for s in 0..n {
            for l in 0..k {
                if table[s * k + l] == usize::MAX {
                    return Err(Error::IncompleteTransitions {
                        state: state_names[s].clone(),
                        letter: alphabet.letter(l).to_string(),
                    });
                }
            }
        }
        let initial = match initial {
            None => None,
            Some(name) => Some(
                *state_index
                    .get(name)
                    .ok_or_else(|| Error::UnknownState(name.to_string()))?,
            ),
        };
        let mut final_flags = vec![false; n];
        for name in finals {
            let i = *state_index
                .get(*name)
                .ok_or_else(|| Error::UnknownState(name.to_string()))?;
            final_flags[i] = true;
        }
        Ok(Dfa {
            states: state_names,
            state_index,
            alphabet,
            table,
            initial,
            finals: final_flags,
        })
    }

    /// Low-level constructor from an index-based transition table.
    ///
    /// `table` is laid out state-major: `table[s * k + l]`.
    pub fn from_index_table(
        states: Vec<String>,
        alphabet: Alphabet,
        table: Vec<usize>,
        initial: Option<usize>,
        finals: Vec<bool>,
    ) -> Result<Dfa> {
        if states.is_empty() {
            return Err(Error::NoStates);
        }
        let n = states.len();
        let k = alphabet.len();
        let mut state_index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            check_token(s)?;
            if state_index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        if table.len() != n * k
            || table.iter().any(|&t| t >= n)
            || finals.len() != n
            || initial.is_some_and(|i| i >= n)
        {
            return Err(Error::BadTable);
        }
        Ok(Dfa {
            states,
            state_index,
            alphabet,
            table,
            initial,
            finals,
        })
    }

    /// Returns a copy decorated with the given initial and final states.
    pub fn into_acceptor(mut self, initial: &str, finals: &[&str]) -> Result<Dfa> {
        let init = self.require_state(initial)?;
        let mut flags = vec![false; self.states.len()];
        for f in finals {
            let i = self.require_state(f)?;
            flags[i] = true;
        }
        self.initial = Some(init);
        self.finals = flags;
        Ok(self)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    pub fn require_state(&self, name: &str) -> Result<usize> {
        self.state_index(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial_index(&self) -> Option<usize> {
        self.initial
    }

    pub fn initial(&self) -> Option<&str> {
        self.initial.map(|i| self.states[i].as_str())
    }

    pub fn is_final(&self, i: usize) -> bool {
        self.finals[i]
    }

    pub fn final_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| if f { Some(i) } else { None })
    }

    pub fn final_count(&self) -> usize {
        self.finals.iter().filter(|&&f| f).count()
    }

    /// Successor of state `s` under letter `l` (both by index).
    #[inline]
    pub fn step(&self, s: usize, l: usize) -> usize {
        self.table[s * self.alphabet.len() + l]
    }

    /// Extended transition function on indices: folds `letters` from `s`.
    pub fn apply_index(&self, s: usize, letters: &[usize]) -> usize {
        letters.iter().fold(s, |q, &l| self.step(q, l))
    }

    /// Extended transition function: the state reached from `state` by `word`.
    pub fn apply(&self, state: &str, word: &Word) -> Result<&str> {
        let s = self.require_state(state)?;
        let ix = word.to_indices(&self.alphabet)?;
        Ok(self.state_name(self.apply_index(s, &ix)))
    }

    /// Whether the acceptor accepts `word`. Requires an initial state.
    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let ix = word.to_indices(&self.alphabet)?;
        self.accepts_indices(&ix)
    }

    /// Index-based variant of [`Dfa::accepts`].
    pub fn accepts_indices(&self, letters: &[usize]) -> Result<bool> {
        let init = self.initial.ok_or(Error::MissingInitial)?;
        Ok(self.finals[self.apply_index(init, letters)])
    }

    /// Image of a state set under one letter.
    pub fn image(&self, set: &StateSet, letter: usize) -> StateSet {
        let mut out = StateSet::empty(self.states.len());
        for s in set.iter() {
            out.insert(self.step(s, letter));
        }
        out
    }

    /// Image of a state set under a word given by letter indices.
    pub fn image_word(&self, set: &StateSet, letters: &[usize]) -> StateSet {
        let mut cur = set.clone();
        for &l in letters {
            cur = self.image(&cur, l);
        }
        cur
    }

    /// Display name for a subset of this automaton's states, e.g. `{p1,s}`.
    pub fn subset_name(&self, set: &StateSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.states[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> Dfa {
        Dfa::new(
            &["q0", "q1"],
            &["a", "b"],
            &[
                ("q0", "a", "q1"),
                ("q0", "b", "q0"),
                ("q1", "a", "q1"),
                ("q1", "b", "q0"),
            ],
            Some("q0"),
            &["q1"],
        )
        .unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let d = two_state();
        assert_eq!(d.apply("q0", &Word::empty()).unwrap(), "q0");
        assert_eq!(d.apply("q1", &Word::empty()).unwrap(), "q1");
    }

    #[test]
    fn apply_follows_transitions() {
        let d = two_state();
        assert_eq!(d.apply("q0", &Word::new(["b", "a"])).unwrap(), "q1");
        assert!(d.accepts(&Word::new(["b", "a"])).unwrap());
        assert!(!d.accepts(&Word::empty()).unwrap());
    }

    #[test]
    fn missing_transition_is_rejected() {
        let err = Dfa::new(
            &["q0"],
            &["a", "b"],
            &[("q0", "a", "q0")],
            None,
            &[],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::IncompleteTransitions {
                state: "q0".into(),
                letter: "b".into()
            }
        );
    }

    #[test]
    fn duplicate_transition_is_rejected() {
        let err = Dfa::new(
            &["q0"],
            &["a"],
            &[("q0", "a", "q0"), ("q0", "a", "q0")],
            None,
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateTransition { .. }));
    }

    #[test]
    fn unknown_tokens_are_rejected() {
        let d = two_state();
        assert_eq!(
            d.apply("nope", &Word::empty()).unwrap_err(),
            Error::UnknownState("nope".into())
        );
        assert_eq!(
            d.apply("q0", &Word::new(["c"])).unwrap_err(),
            Error::UnknownLetter("c".into())
        );
    }

    #[test]
    fn bad_tokens_are_rejected() {
        assert!(matches!(
            Alphabet::new(["a:b"]).unwrap_err(),
            Error::BadToken(_)
        ));
        assert!(matches!(Alphabet::new([""]).unwrap_err(), Error::BadToken(_)));
        assert!(matches!(
            Dfa::new(&["q 0"], &["a"], &[], None, &[]).unwrap_err(),
            Error::BadToken(_)
        ));
    }

    #[test]
    fn state_set_basics() {
        let mut s = StateSet::empty(70);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(69);
        assert_eq!(s.len(), 2);
        assert!(s.contains(69));
        assert!(!s.contains(68));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 69]);
        assert!(!s.is_singleton());
        assert!(StateSet::singleton(70, 3).is_singleton());
        assert_eq!(StateSet::full(70).len(), 70);
    }

    #[test]
    fn word_display() {
        assert_eq!(Word::empty().to_string(), "ε");
        assert_eq!(Word::new(["a", "b"]).to_string(), "a b");
    }
}
