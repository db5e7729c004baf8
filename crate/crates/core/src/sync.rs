//! Synchronization analysis: reset words, the power automaton, the language
//! of reset words as a minimal acceptor, and state complexity.

use std::collections::HashMap;

use crate::dfa::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

/// Name of the merged singleton sink in power automata.
pub const SINK_NAME: &str = "SINK";

/// Verdict of a shortest-reset-word search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncReport {
    pub synchronizing: bool,
    /// Canonical (shortest, then lexicographically least) reset word.
    pub shortest_reset: Option<Word>,
    pub shortest_length: Option<usize>,
}

/// Whether `w` maps every state of `d` to one common state.
pub fn is_reset_word(d: &Dfa, w: &Word) -> Result<bool> {
    let ix = w.to_indices(d.alphabet())?;
    Ok(is_reset_indices(d, &ix))
}

/// Index-based variant of [`is_reset_word`].
pub fn is_reset_indices(d: &Dfa, letters: &[usize]) -> bool {
    let full = StateSet::full(d.state_count());
    d.image_word(&full, letters).is_singleton()
}

/// Whether `w` is reset and no proper prefix nor proper suffix of it is.
pub fn is_minimal_reset_word(d: &Dfa, w: &Word) -> Result<bool> {
    let ix = w.to_indices(d.alphabet())?;
    if !is_reset_indices(d, &ix) {
        return Ok(false);
    }
    for cut in 0..ix.len() {
        // proper prefix w[..cut] and proper suffix w[cut+1..]
        if is_reset_indices(d, &ix[..cut]) || is_reset_indices(d, &ix[cut + 1..]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Polynomial synchronization test: every pair of states must reach a
/// common state in the pair graph.
pub fn is_synchronizing(d: &Dfa) -> bool {
    let n = d.state_count();
    if n == 1 {
        return true;
    }
    let k = d.letter_count();

    let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for s in 0..n {
        for l in 0..k {
            inverse[l][d.step(s, l)].push(s);
        }
    }

    let pair_id = |p: usize, q: usize| {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        lo * n + hi
    };
    let mut mergeable = vec![false; n * n];
    let mut queue: Vec<(usize, usize)> = Vec::new();

    // Seed: pairs merged by a single letter.
    for l in 0..k {
        for target in 0..n {
            let sources = &inverse[l][target];
            for i in 0..sources.len() {
                for j in i + 1..sources.len() {
                    let id = pair_id(sources[i], sources[j]);
                    if !mergeable[id] {
                        mergeable[id] = true;
                        queue.push((sources[i], sources[j]));
                    }
                }
            }
        }
    }

    // Backward closure over the pair graph.
    while let Some((p, q)) = queue.pop() {
        for l in 0..k {
            for &s in &inverse[l][p] {
                for &t in &inverse[l][q] {
                    if s != t {
                        let id = pair_id(s, t);
                        if !mergeable[id] {
                            mergeable[id] = true;
                            queue.push((s, t));
                        }
                    }
                }
            }
        }
    }

    for p in 0..n {
        for q in p + 1..n {
            if !mergeable[pair_id(p, q)] {
                return false;
            }
        }
    }
    true
}

/// A power-automaton state: a subset of source states, or the merged sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerState {
    Subset(StateSet),
    Sink,
}

/// The power automaton of a DFA with all singletons merged into one
/// accepting sink; it recognizes the language of reset words.
#[derive(Debug, Clone)]
pub struct PowerAutomaton {
    acceptor: Dfa,
    source: Dfa,
    labels: Vec<PowerState>,
    sink: Option<usize>,
}

impl PowerAutomaton {
    /// Acceptor over the source alphabet recognizing the reset-word language.
    pub fn acceptor(&self) -> &Dfa {
        &self.acceptor
    }

    pub fn source(&self) -> &Dfa {
        &self.source
    }

    /// What each acceptor state stands for, in state order.
    pub fn labels(&self) -> &[PowerState] {
        &self.labels
    }

    /// Index of the merged sink, when reachable.
    pub fn sink_index(&self) -> Option<usize> {
        self.sink
    }
}

/// Builds the power automaton of `d`, exploring subsets breadth-first in
/// alphabet order starting from the full state set.
///
/// Only reachable subsets are materialized; discovering more than `cap`
/// states is an error.
pub fn power_automaton(d: &Dfa, cap: usize) -> Result<PowerAutomaton> {
    let n = d.state_count();
    let k = d.letter_count();

    if n == 1 {
        // The full set is already a singleton, so the initial state is the sink.
        let acceptor = Dfa::from_index_table(
            vec![SINK_NAME.to_string()],
            d.alphabet().clone(),
            vec![0; k],
            Some(0),
            vec![true],
        )?;
        return Ok(PowerAutomaton {
            acceptor,
            source: d.clone(),
            labels: vec![PowerState::Sink],
            sink: Some(0),
        });
    }

    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut labels: Vec<PowerState> = Vec::new();
    let mut sink: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();

    let full = StateSet::full(n);
    index.insert(full.clone(), 0);
    labels.push(PowerState::Subset(full));

    let mut at = 0;
    while at < labels.len() {
        let row: Vec<usize> = match labels[at].clone() {
            PowerState::Sink => vec![at; k],
            PowerState::Subset(set) => {
                let mut row = Vec::with_capacity(k);
                for l in 0..k {
                    let img = d.image(&set, l);
                    let id = if img.is_singleton() {
                        *sink.get_or_insert_with(|| {
                            labels.push(PowerState::Sink);
                            labels.len() - 1
                        })
                    } else {
                        match index.get(&img) {
                            Some(&id) => id,
                            None => {
                                let id = labels.len();
                                index.insert(img.clone(), id);
                                labels.push(PowerState::Subset(img));
                                id
                            }
                        }
                    };
                    row.push(id);
                }
                row
            }
        };
        if labels.len() > cap {
            return Err(Error::SubsetCapExceeded { cap });
        }
        rows.push(row);
        at += 1;
    }

    let states: Vec<String> = labels
        .iter()
        .map(|label| match label {
            PowerState::Sink => SINK_NAME.to_string(),
            PowerState::Subset(set) => d.subset_name(set),
        })
        .collect();
    let finals: Vec<bool> = labels
        .iter()
        .map(|label| matches!(label, PowerState::Sink))
        .collect();
    let table: Vec<usize> = rows.into_iter().flatten().collect();
    let acceptor = Dfa::from_index_table(states, d.alphabet().clone(), table, Some(0), finals)?;
    Ok(PowerAutomaton {
        acceptor,
        source: d.clone(),
        labels,
        sink,
    })
}

/// Breadth-first search for the canonical shortest reset word.
///
/// Subsets are explored from the full state set with letters in alphabet
/// order, so the returned word is the shortest reset word and the
/// lexicographically least among those.
pub fn shortest_reset_word(d: &Dfa, cap: usize) -> Result<SyncReport> {
    let n = d.state_count();
    let k = d.letter_count();
    if n == 1 {
        return Ok(SyncReport {
            synchronizing: true,
            shortest_reset: Some(Word::empty()),
            shortest_length: Some(0),
        });
    }

    // arena of (subset, backpointer)
    let mut nodes: Vec<(StateSet, Option<(usize, usize)>)> = Vec::new();
    let mut seen: HashMap<StateSet, ()> = HashMap::new();
    let full = StateSet::full(n);
    seen.insert(full.clone(), ());
    nodes.push((full, None));

    let word_to = |nodes: &Vec<(StateSet, Option<(usize, usize)>)>, last: usize, mut at: usize| {
        let mut letters = vec![last];
        loop {
            let (_, parent) = &nodes[at];
            match parent {
                Some((p, l)) => {
                    letters.push(*l);
                    at = *p;
                }
                None => break,
            }
        }
        letters.reverse();
        Word::from_indices(d.alphabet(), &letters)
    };

    let mut at = 0;
    while at < nodes.len() {
        let set = nodes[at].0.clone();
        for l in 0..k {
            let img = d.image(&set, l);
            if img.is_singleton() {
                let word = word_to(&nodes, l, at);
                let len = word.len();
                return Ok(SyncReport {
                    synchronizing: true,
                    shortest_reset: Some(word),
                    shortest_length: Some(len),
                });
            }
            if !seen.contains_key(&img) {
                if nodes.len() + 1 > cap {
                    return Err(Error::SubsetCapExceeded { cap });
                }
                seen.insert(img.clone(), ());
                nodes.push((img, Some((at, l))));
            }
        }
        at += 1;
    }
    Ok(SyncReport {
        synchronizing: false,
        shortest_reset: None,
        shortest_length: None,
    })
}

/// Minimal acceptor for the reset-word language of `d`.
pub fn syn_language_dfa(d: &Dfa, cap: usize) -> Result<Dfa> {
    power_automaton(d, cap)?.acceptor().minimize()
}

/// State complexity: size of the minimal acceptor of the reset-word language.
pub fn state_complexity(d: &Dfa, cap: usize) -> Result<usize> {
    Ok(syn_language_dfa(d, cap)?.state_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::build_gadget_b;
    use crate::Alphabet;

    fn gadget_b() -> Dfa {
        build_gadget_b(&Alphabet::new(["a", "b"]).unwrap()).unwrap()
    }

    fn cerny4() -> Dfa {
        Dfa::new(
            &["0", "1", "2", "3"],
            &["a", "b"],
            &[
                ("0", "a", "1"),
                ("1", "a", "2"),
                ("2", "a", "3"),
                ("3", "a", "0"),
                ("0", "b", "1"),
                ("1", "b", "1"),
                ("2", "b", "2"),
                ("3", "b", "3"),
            ],
            None,
            &[],
        )
        .unwrap()
    }

    fn swap_permutation() -> Dfa {
        Dfa::new(
            &["0", "1"],
            &["a", "b"],
            &[
                ("0", "a", "1"),
                ("1", "a", "0"),
                ("0", "b", "0"),
                ("1", "b", "1"),
            ],
            None,
            &[],
        )
        .unwrap()
    }

    #[test]
    fn y_resets_gadget_b() {
        let b = gadget_b();
        assert!(is_reset_word(&b, &Word::new(["y"])).unwrap());
        assert!(!is_reset_word(&b, &Word::new(["z"])).unwrap());
    }

    #[test]
    fn empty_word_resets_single_state() {
        let d = Dfa::new(&["q"], &["a"], &[("q", "a", "q")], None, &[]).unwrap();
        assert!(is_reset_word(&d, &Word::empty()).unwrap());
    }

    #[test]
    fn minimal_reset_words_of_gadget_b() {
        let b = gadget_b();
        assert!(is_minimal_reset_word(&b, &Word::new(["y"])).unwrap());
        // suffix y is already reset
        assert!(!is_minimal_reset_word(&b, &Word::new(["a", "y"])).unwrap());
        // z and a are each non-reset, za is reset
        assert!(is_minimal_reset_word(&b, &Word::new(["z", "a"])).unwrap());
    }

    #[test]
    fn synchronization_checks() {
        assert!(is_synchronizing(&gadget_b()));
        assert!(is_synchronizing(&cerny4()));
        assert!(!is_synchronizing(&swap_permutation()));
    }

    #[test]
    fn power_automaton_of_gadget_b() {
        let b = gadget_b();
        let p = power_automaton(&b, 1 << 10).unwrap();
        // Reachable: {p1,p2,s}, {p1,s}, {p2,s} and the sink.
        assert_eq!(p.acceptor().state_count(), 4);
        assert!(p.sink_index().is_some());
        let names: Vec<&str> = p.acceptor().states().iter().map(|s| s.as_str()).collect();
        assert!(names.contains(&"SINK"));
        assert!(names.contains(&"{p1,p2,s}"));
        assert!(names.contains(&"{p1,s}"));
        assert!(names.contains(&"{p2,s}"));
    }

    #[test]
    fn power_automaton_of_single_state() {
        let d = Dfa::new(&["q"], &["a"], &[("q", "a", "q")], None, &[]).unwrap();
        let p = power_automaton(&d, 1 << 10).unwrap();
        assert_eq!(p.acceptor().state_count(), 1);
        assert!(p.acceptor().accepts(&Word::empty()).unwrap());
        assert!(p.acceptor().accepts(&Word::new(["a"])).unwrap());
    }

    #[test]
    fn permutation_dfa_has_empty_syn_language() {
        let p = power_automaton(&swap_permutation(), 1 << 10).unwrap();
        assert_eq!(p.sink_index(), None);
        let min = syn_language_dfa(&swap_permutation(), 1 << 10).unwrap();
        assert_eq!(min.state_count(), 1);
        assert_eq!(min.final_count(), 0);
    }

    #[test]
    fn shortest_reset_of_gadget_b_is_y() {
        let rep = shortest_reset_word(&gadget_b(), 1 << 10).unwrap();
        assert!(rep.synchronizing);
        assert_eq!(rep.shortest_reset, Some(Word::new(["y"])));
        assert_eq!(rep.shortest_length, Some(1));
    }

    #[test]
    fn cerny_4_shortest_reset_has_length_9() {
        let rep = shortest_reset_word(&cerny4(), 1 << 10).unwrap();
        assert_eq!(rep.shortest_length, Some(9));
        let w = rep.shortest_reset.unwrap();
        assert!(is_minimal_reset_word(&cerny4(), &w).unwrap());
    }

    #[test]
    fn non_synchronizing_report() {
        let rep = shortest_reset_word(&swap_permutation(), 1 << 10).unwrap();
        assert!(!rep.synchronizing);
        assert_eq!(rep.shortest_reset, None);
    }

    #[test]
    fn sink_reachability_agrees_with_pair_test() {
        for d in [gadget_b(), cerny4(), swap_permutation()] {
            let p = power_automaton(&d, 1 << 12).unwrap();
            assert_eq!(is_synchronizing(&d), p.sink_index().is_some());
        }
    }

    #[test]
    fn state_complexity_of_gadget_b_is_3() {
        assert_eq!(state_complexity(&gadget_b(), 1 << 10).unwrap(), 3);
    }
}
