//! Decision procedures on reset-word languages: inclusion, equality and
//! strict inclusion with counterexample extraction, the ideal-language test,
//! and nonemptiness of acceptor intersections.
//!
//! Inclusion is decided by a deterministic breadth-first search over pairs
//! of image sets, simulating the letter-by-letter nondeterministic guesser.
//! Searching breadth-first (letters in alphabet order) makes every witness
//! canonical: shortest, then lexicographically least.

use std::collections::HashMap;

use crate::dfa::{Alphabet, Dfa, StateSet, Word};
use crate::error::{Error, Result};
use crate::gadgets::{product_sync, ReductionInstance};
use crate::ops::shortest_accepted;
use crate::sync::is_reset_word;

/// Which input a witness separates: the word is reset for that side only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Verdict of a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

/// Outcome of a reset-language decision, with an optional separating word.
///
/// For inclusion and equality a witness is present exactly when the verdict
/// is `Fails`. Strict inclusion also attaches a witness to a `Holds`
/// verdict: the shortest word exhibiting the proper gap. Any witness is
/// reset for exactly one of the two inputs, named by `direction`; this is
/// re-checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    pub witness: Option<Word>,
    pub direction: Option<Side>,
}

impl DecisionOutcome {
    fn plain(verdict: Verdict) -> Self {
        DecisionOutcome {
            verdict,
            witness: None,
            direction: None,
        }
    }

    fn with_witness(
        verdict: Verdict,
        witness: Word,
        direction: Side,
        left: &Dfa,
        right: &Dfa,
    ) -> Result<Self> {
        let on_left = is_reset_word(left, &witness)?;
        let on_right = is_reset_word(right, &witness)?;
        let expect_left = direction == Side::Left;
        assert!(
            on_left == expect_left && on_right == !expect_left,
            "separating word `{witness}` is not reset for exactly the {direction:?} input"
        );
        Ok(DecisionOutcome {
            verdict,
            witness: Some(witness),
            direction: Some(direction),
        })
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Node counts of a pair search, for reporting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
}

/// Breadth-first frontier over pairs of image sets, with backpointers for
/// witness reconstruction. Node 0 is the root pair (Q₁, Q₂).
#[derive(Debug)]
pub struct SubsetPairFrontier {
    nodes: Vec<PairNode>,
}

#[derive(Debug)]
struct PairNode {
    left: StateSet,
    right: StateSet,
    parent: Option<(usize, usize)>, // (node index, letter index)
}

impl SubsetPairFrontier {
    fn new(left: StateSet, right: StateSet) -> Self {
        SubsetPairFrontier {
            nodes: vec![PairNode {
                left,
                right,
                parent: None,
            }],
        }
    }

    fn push(&mut self, left: StateSet, right: StateSet, parent: (usize, usize)) -> usize {
        self.nodes.push(PairNode {
            left,
            right,
            parent: Some(parent),
        });
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, at: usize) -> (&StateSet, &StateSet) {
        (&self.nodes[at].left, &self.nodes[at].right)
    }

    /// Spells the word leading from the root to `at` by following
    /// backpointers.
    pub fn word_to(&self, at: usize, alphabet: &Alphabet) -> Word {
        let mut letters = Vec::new();
        let mut cur = at;
        while let Some((parent, l)) = self.nodes[cur].parent {
            letters.push(l);
            cur = parent;
        }
        letters.reverse();
        Word::from_indices(alphabet, &letters)
    }
}

/// Raw pair search: finds the canonical word reset for `a` but not for `b`.
fn separating_word(a: &Dfa, b: &Dfa, pair_cap: usize) -> Result<(Option<Word>, SearchStats)> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = a.letter_count();
    let na = a.state_count();
    let nb = b.state_count();

    let root = (StateSet::full(na), StateSet::full(nb));
    let fails = |l: &StateSet, r: &StateSet| l.is_singleton() && !r.is_singleton();
    let mut frontier = SubsetPairFrontier::new(root.0.clone(), root.1.clone());
    if fails(&root.0, &root.1) {
        return Ok((
            Some(Word::empty()),
            SearchStats { nodes_expanded: 1 },
        ));
    }
    let mut seen: HashMap<(StateSet, StateSet), ()> = HashMap::new();
    seen.insert(root, ());

    let mut at = 0;
    while at < frontier.len() {
        let (left, right) = frontier.node(at);
        let (left, right) = (left.clone(), right.clone());
        // Once both images are singletons every extension stays that way,
        // so nothing below this node can fail the inclusion.
        if left.is_singleton() && right.is_singleton() {
            at += 1;
            continue;
        }
        for l in 0..k {
            let img_l = a.image(&left, l);
            let img_r = b.image(&right, l);
            let key = (img_l, img_r);
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key.clone(), ());
            if frontier.len() + 1 > pair_cap {
                return Err(Error::PairCapExceeded { cap: pair_cap });
            }
            let id = frontier.push(key.0, key.1, (at, l));
            let (nl, nr) = frontier.node(id);
            if fails(nl, nr) {
                let word = frontier.word_to(id, a.alphabet());
                let stats = SearchStats {
                    nodes_expanded: frontier.len() as u64,
                };
                return Ok((Some(word), stats));
            }
        }
        at += 1;
    }
    Ok((
        None,
        SearchStats {
            nodes_expanded: frontier.len() as u64,
        },
    ))
}

/// Decides Syn(a) ⊆ Syn(b), reporting node counts.
pub fn syn_inclusion_with_stats(
    a: &Dfa,
    b: &Dfa,
    pair_cap: usize,
) -> Result<(DecisionOutcome, SearchStats)> {
    let (word, stats) = separating_word(a, b, pair_cap)?;
    let outcome = match word {
        None => DecisionOutcome::plain(Verdict::Holds),
        Some(w) => DecisionOutcome::with_witness(Verdict::Fails, w, Side::Left, a, b)?,
    };
    Ok((outcome, stats))
}

/// Decides Syn(a) ⊆ Syn(b). On failure the witness is the canonical word
/// in Syn(a) \ Syn(b).
pub fn syn_inclusion(a: &Dfa, b: &Dfa, pair_cap: usize) -> Result<DecisionOutcome> {
    Ok(syn_inclusion_with_stats(a, b, pair_cap)?.0)
}

/// Decides Syn(a) = Syn(b), checking a ⊆ b first so the failing direction
/// is deterministic.
pub fn syn_equality_with_stats(
    a: &Dfa,
    b: &Dfa,
    pair_cap: usize,
) -> Result<(DecisionOutcome, SearchStats)> {
    let (forward, mut stats) = separating_word(a, b, pair_cap)?;
    if let Some(w) = forward {
        let outcome = DecisionOutcome::with_witness(Verdict::Fails, w, Side::Left, a, b)?;
        return Ok((outcome, stats));
    }
    let (backward, back_stats) = separating_word(b, a, pair_cap)?;
    stats.nodes_expanded += back_stats.nodes_expanded;
    let outcome = match backward {
        None => DecisionOutcome::plain(Verdict::Holds),
        Some(w) => DecisionOutcome::with_witness(Verdict::Fails, w, Side::Right, a, b)?,
    };
    Ok((outcome, stats))
}

/// Decides Syn(a) = Syn(b).
pub fn syn_equality(a: &Dfa, b: &Dfa, pair_cap: usize) -> Result<DecisionOutcome> {
    Ok(syn_equality_with_stats(a, b, pair_cap)?.0)
}

/// Decides Syn(a) ⊊ Syn(b) through the synchronizing product:
/// the inclusion holds exactly when Syn(a) = Syn(a×b), and strictness
/// additionally needs Syn(a) ≠ Syn(b).
///
/// When strict inclusion holds the outcome carries the canonical witness
/// from Syn(b) \ Syn(a); when it fails because the inclusion itself fails,
/// the witness separates in the other direction.
pub fn syn_strict_inclusion_with_stats(
    a: &Dfa,
    b: &Dfa,
    pair_cap: usize,
) -> Result<(DecisionOutcome, SearchStats)> {
    let product = product_sync(a, b)?;
    let (included, mut stats) = syn_equality_with_stats(a, &product, pair_cap)?;
    if !included.holds() {
        // Syn(a) ⊄ Syn(b): the witness is in Syn(a) \ Syn(a)∩Syn(b), hence
        // in Syn(a) \ Syn(b).
        let w = included.witness.expect("failing equality carries a witness");
        let outcome = DecisionOutcome::with_witness(Verdict::Fails, w, Side::Left, a, b)?;
        return Ok((outcome, stats));
    }
    let (equal, eq_stats) = syn_equality_with_stats(a, b, pair_cap)?;
    stats.nodes_expanded += eq_stats.nodes_expanded;
    let outcome = match equal.verdict {
        // Equal languages: inclusion is not strict, and no separating word exists.
        Verdict::Holds => DecisionOutcome::plain(Verdict::Fails),
        Verdict::Fails => {
            let w = equal.witness.expect("failing equality carries a witness");
            DecisionOutcome::with_witness(Verdict::Holds, w, Side::Right, a, b)?
        }
    };
    Ok((outcome, stats))
}

/// Decides Syn(a) ⊊ Syn(b).
pub fn syn_strict_inclusion(a: &Dfa, b: &Dfa, pair_cap: usize) -> Result<DecisionOutcome> {
    Ok(syn_strict_inclusion_with_stats(a, b, pair_cap)?.0)
}

/// Whether the language of an acceptor is a two-sided ideal, i.e. equal to
/// Σ*·L·Σ*.
///
/// The closure acceptor is built by subset construction over the input
/// extended with self-loops on the initial and on every final state, then
/// compared for language equality.
pub fn is_ideal(acc: &Dfa, subset_cap: usize) -> Result<bool> {
    let initial = acc.initial().ok_or(Error::MissingInitial)?.to_string();
    let mut extra: Vec<(String, String, String)> = Vec::new();
    for l in acc.alphabet().letters() {
        extra.push((initial.clone(), l.clone(), initial.clone()));
        for f in acc.final_indices() {
            let name = acc.state_name(f).to_string();
            extra.push((name.clone(), l.clone(), name));
        }
    }
    let extra_refs: Vec<(&str, &str, &str)> = extra
        .iter()
        .map(|(s, l, t)| (s.as_str(), l.as_str(), t.as_str()))
        .collect();
    let closure = acc.determinize_subset(&extra_refs, subset_cap)?;
    acc.equivalent(&closure)
}

/// Searches for the canonical word in the intersection of all component
/// languages, exploring the product automaton on the fly.
pub fn intersection_nonempty_with_stats(
    inst: &ReductionInstance,
    cap: usize,
) -> Result<(Option<Word>, SearchStats)> {
    let components = inst.components();
    let k = inst.alphabet().len();
    let mut initials = Vec::with_capacity(components.len());
    for d in components {
        initials.push(d.initial_index().ok_or(Error::MissingInitial)?);
    }
    let accepting = |tuple: &[usize]| {
        components
            .iter()
            .zip(tuple)
            .all(|(d, &s)| d.is_final(s))
    };

    // arena of (state tuple, backpointer)
    let mut nodes: Vec<(Vec<usize>, Option<(usize, usize)>)> = Vec::new();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let word_to = |nodes: &Vec<(Vec<usize>, Option<(usize, usize)>)>, mut at: usize| {
        let mut letters = Vec::new();
        while let Some((p, l)) = nodes[at].1 {
            letters.push(l);
            at = p;
        }
        letters.reverse();
        Word::from_indices(inst.alphabet(), &letters)
    };

    if accepting(&initials) {
        return Ok((Some(Word::empty()), SearchStats { nodes_expanded: 1 }));
    }
    seen.insert(initials.clone(), ());
    nodes.push((initials, None));
    let mut at = 0;
    while at < nodes.len() {
        let tuple = nodes[at].0.clone();
        for l in 0..k {
            let next: Vec<usize> = components
                .iter()
                .zip(&tuple)
                .map(|(d, &s)| d.step(s, l))
                .collect();
            if seen.contains_key(&next) {
                continue;
            }
            if nodes.len() + 1 > cap {
                return Err(Error::SubsetCapExceeded { cap });
            }
            seen.insert(next.clone(), ());
            nodes.push((next.clone(), Some((at, l))));
            if accepting(&next) {
                let word = word_to(&nodes, nodes.len() - 1);
                let stats = SearchStats {
                    nodes_expanded: nodes.len() as u64,
                };
                return Ok((Some(word), stats));
            }
        }
        at += 1;
    }
    Ok((
        None,
        SearchStats {
            nodes_expanded: nodes.len() as u64,
        },
    ))
}

/// Shortest, lexicographically least word in ⋂ᵢ L[Mᵢ], or `None`.
pub fn intersection_nonempty(inst: &ReductionInstance, cap: usize) -> Result<Option<Word>> {
    Ok(intersection_nonempty_with_stats(inst, cap)?.0)
}

/// Independent oracle for intersection emptiness: materializes the reachable
/// product acceptor and searches it for a shortest accepted word.
pub fn intersection_via_product(inst: &ReductionInstance) -> Result<Option<Word>> {
    let product = crate::ops::product_acceptors(inst.components())?;
    shortest_accepted(&product)
}
