//! Constructions that tie intersection emptiness to reset-word languages:
//! instance normalization, the gadget automata over Σ ∪ {x,y,z}, the witness
//! ideal acceptor, the synchronizing product, and the binary-alphabet lift
//! with its morphisms.

use std::collections::HashSet;

use crate::dfa::{check_token, Alphabet, Dfa, Word};
use crate::error::{Error, Result};

/// First letter of the binary lift alphabet.
pub const MU: &str = "mu";
/// Second letter of the binary lift alphabet; the only letter entering the
/// lifted sink.
pub const LAMBDA: &str = "lambda";
/// Name of the lifted sink state.
pub const ZETA: &str = "zeta";

/// The letters added to a base alphabet by the gadget constructions.
pub const GADGET_LETTERS: [&str; 3] = ["x", "y", "z"];

fn rename_states(d: &Dfa, rename: impl Fn(&str) -> String) -> Result<Dfa> {
    let states: Vec<String> = d.states().iter().map(|s| rename(s)).collect();
    let n = d.state_count();
    let k = d.letter_count();
    let mut table = Vec::with_capacity(n * k);
    for s in 0..n {
        for l in 0..k {
            table.push(d.step(s, l));
        }
    }
    let finals: Vec<bool> = (0..n).map(|s| d.is_final(s)).collect();
    Dfa::from_index_table(states, d.alphabet().clone(), table, d.initial_index(), finals)
}

/// An ordered instance of the acceptor-intersection problem.
///
/// Component state names are made pairwise disjoint by prefixing each with
/// its 1-based component index (`1.q0`, `2.q0`, ...).
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    components: Vec<Dfa>,
}

impl ReductionInstance {
    pub fn new(components: Vec<Dfa>) -> Result<Self> {
        let first = components.first().ok_or(Error::NoComponents)?;
        let alphabet = first.alphabet().clone();
        for d in &components {
            if d.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if d.initial_index().is_none() {
                return Err(Error::MissingInitial);
            }
        }
        let components = components
            .iter()
            .enumerate()
            .map(|(i, d)| rename_states(d, |s| format!("{}.{}", i + 1, s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReductionInstance { components })
    }

    pub fn components(&self) -> &[Dfa] {
        &self.components
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.components[0].alphabet()
    }
}

/// A reduction instance in which every component's initial state has no
/// incoming edges and is not final, so no component accepts ε.
#[derive(Debug, Clone)]
pub struct NormalizedInstance {
    components: Vec<Dfa>,
}

impl NormalizedInstance {
    pub fn components(&self) -> &[Dfa] {
        &self.components
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.components[0].alphabet()
    }
}

/// Rewires each component so its initial state has no incoming edges, by
/// adding a fresh initial that copies the old initial's outgoing row.
///
/// Components accepting the empty word are rejected with their index; the
/// construction has no language-preserving way to detach such an initial.
pub fn normalize_instance(inst: &ReductionInstance) -> Result<NormalizedInstance> {
    let mut components = Vec::with_capacity(inst.components.len());
    for (i, d) in inst.components.iter().enumerate() {
        let init = d.initial_index().expect("instance components carry initials");
        if d.is_final(init) {
            return Err(Error::EpsilonAccepted { component: i + 1 });
        }
        let n = d.state_count();
        let k = d.letter_count();
        let has_incoming = (0..n).any(|s| (0..k).any(|l| d.step(s, l) == init));
        if !has_incoming {
            components.push(d.clone());
            continue;
        }
        let mut fresh = format!("{}'", d.state_name(init));
        while d.state_index(&fresh).is_some() {
            fresh.push('\'');
        }
        let mut states: Vec<String> = d.states().to_vec();
        states.push(fresh);
        let mut table = Vec::with_capacity((n + 1) * k);
        for s in 0..n {
            for l in 0..k {
                table.push(d.step(s, l));
            }
        }
        for l in 0..k {
            table.push(d.step(init, l));
        }
        let mut finals: Vec<bool> = (0..n).map(|s| d.is_final(s)).collect();
        finals.push(false);
        let normalized =
            Dfa::from_index_table(states, d.alphabet().clone(), table, Some(n), finals)?;
        debug_assert!(
            d.equivalent(&normalized).unwrap_or(false),
            "normalization must preserve the accepted language"
        );
        components.push(normalized);
    }
    Ok(NormalizedInstance { components })
}

/// Alphabet Σ ∪ {x,y,z} in the fixed order y, z, Σ…, x.
fn gadget_alphabet(sigma: &Alphabet) -> Result<Alphabet> {
    for l in GADGET_LETTERS {
        if sigma.contains(l) {
            return Err(Error::LetterClash(l.to_string()));
        }
    }
    let mut letters: Vec<String> = vec!["y".to_string(), "z".to_string()];
    letters.extend(sigma.letters().iter().cloned());
    letters.push("x".to_string());
    Alphabet::new(letters)
}

/// Builds the instance gadget: a DFA over Δ = Σ ∪ {x,y,z} whose reset-word
/// language equals the witness ideal exactly when the instance intersection
/// is empty.
///
/// Per component, Σ acts as in the component, `x` restarts it to its initial
/// state, `y` sends everything to the sink `s`, and `z` sends final states
/// to `s` and non-final states to the auxiliary `h`, which falls into `s`
/// on any letter.
pub fn build_gadget_a(inst: &NormalizedInstance) -> Result<Dfa> {
    let sigma = inst.alphabet();
    let delta = gadget_alphabet(sigma)?;
    let sigma_size = sigma.len();
    let k = delta.len();

    let mut states: Vec<String> = Vec::new();
    let mut offsets = Vec::with_capacity(inst.components.len());
    for d in &inst.components {
        offsets.push(states.len());
        states.extend(d.states().iter().cloned());
    }
    let s_idx = states.len();
    states.push("s".to_string());
    let h_idx = states.len();
    states.push("h".to_string());

    let n = states.len();
    let mut table = vec![0usize; n * k];
    for (ci, d) in inst.components.iter().enumerate() {
        let off = offsets[ci];
        let init = off + d.initial_index().expect("normalized components carry initials");
        for q in 0..d.state_count() {
            let g = off + q;
            table[g * k] = s_idx; // y
            table[g * k + 1] = if d.is_final(q) { s_idx } else { h_idx }; // z
            for a in 0..sigma_size {
                table[g * k + 2 + a] = off + d.step(q, a);
            }
            table[g * k + (k - 1)] = init; // x
        }
    }
    for l in 0..k {
        table[s_idx * k + l] = s_idx;
        table[h_idx * k + l] = s_idx;
    }
    Dfa::from_index_table(states, delta, table, None, vec![false; n])
}

/// Builds the fixed 3-state automaton whose reset-word language is the
/// witness ideal: `p1` is held by Σ ∪ {x}, `y` resets, `z` detours through
/// `p2`, and `s` is the sink.
pub fn build_gadget_b(sigma: &Alphabet) -> Result<Dfa> {
    let delta = gadget_alphabet(sigma)?;
    let k = delta.len();
    let (p1, p2, s) = (0usize, 1usize, 2usize);
    let mut table = vec![s; 3 * k];
    table[p1 * k] = s; // y
    table[p1 * k + 1] = p2; // z
    for a in 2..k {
        table[p1 * k + a] = p1; // Σ and x hold p1
    }
    // p2 and s rows are all s already
    Dfa::from_index_table(
        vec!["p1".into(), "p2".into(), "s".into()],
        delta,
        table,
        None,
        vec![false; 3],
    )
}

/// Acceptor for the witness ideal (Σ∪{x})*yΔ* ∪ (Σ∪{x})*zΔ⁺ over Δ.
pub fn build_witness_i(sigma: &Alphabet) -> Result<Dfa> {
    let delta = gadget_alphabet(sigma)?;
    let k = delta.len();
    let (a0, a1, acc) = (0usize, 1usize, 2usize);
    let mut table = vec![acc; 3 * k];
    table[a0 * k] = acc; // y
    table[a0 * k + 1] = a1; // z needs one more letter
    for a in 2..k {
        table[a0 * k + a] = a0;
    }
    // a1 and acc rows are all acc already
    Dfa::from_index_table(
        vec!["A0".into(), "A1".into(), "ACC".into()],
        delta,
        table,
        Some(0),
        vec![false, false, true],
    )
}

/// Full synchronous product on Q₁ × Q₂ (not reachability-pruned); its
/// reset-word language is the intersection of the inputs'.
pub fn product_sync(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = a.letter_count();
    let (na, nb) = (a.state_count(), b.state_count());
    let mut used = HashSet::new();
    let mut states = Vec::with_capacity(na * nb);
    for qa in 0..na {
        for qb in 0..nb {
            let base = format!("({},{})", a.state_name(qa), b.state_name(qb));
            let name = if used.insert(base.clone()) {
                base
            } else {
                let mut i = 2usize;
                loop {
                    let candidate = format!("{base}~{i}");
                    if used.insert(candidate.clone()) {
                        break candidate;
                    }
                    i += 1;
                }
            };
            states.push(name);
        }
    }
    let mut table = Vec::with_capacity(na * nb * k);
    for qa in 0..na {
        for qb in 0..nb {
            for l in 0..k {
                table.push(a.step(qa, l) * nb + b.step(qb, l));
            }
        }
    }
    Dfa::from_index_table(states, a.alphabet().clone(), table, None, vec![false; na * nb])
}

/// An ordering d₁…d_k of an alphabet's letters, used by the binary lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterOrder {
    letters: Vec<String>,
}

impl LetterOrder {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &letters {
            check_token(l)?;
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(LetterOrder { letters })
    }

    /// The declaration order of an alphabet.
    pub fn for_alphabet(alphabet: &Alphabet) -> Self {
        LetterOrder {
            letters: alphabet.letters().to_vec(),
        }
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn position(&self, letter: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    fn validate_against(&self, alphabet: &Alphabet) -> Result<()> {
        if self.letters.len() != alphabet.len()
            || self.letters.iter().any(|l| !alphabet.contains(l))
        {
            return Err(Error::OrderMismatch);
        }
        Ok(())
    }
}

/// Encodes a word over Δ into the binary alphabet: the letter at position k
/// of the order (1-based) becomes mu^(k-1) lambda.
pub fn morphism_hbar(w: &Word, order: &LetterOrder) -> Result<Word> {
    let mut out = Vec::new();
    for letter in w.letters() {
        let pos = order
            .position(letter)
            .ok_or_else(|| Error::UnknownLetter(letter.clone()))?;
        for _ in 0..pos {
            out.push(MU.to_string());
        }
        out.push(LAMBDA.to_string());
    }
    Ok(Word::new(out))
}

/// Decodes a binary word by its unique factorization into mu^k lambda
/// blocks; blocks with k beyond the order map to the order's last letter.
///
/// A nonempty input must end with lambda.
pub fn morphism_h(v: &Word, order: &LetterOrder) -> Result<Word> {
    match v.letters().last() {
        None => return Ok(Word::empty()),
        Some(last) if last == LAMBDA => {}
        Some(_) => return Err(Error::NotLambdaTerminated),
    }
    let mut out = Vec::new();
    let mut run = 0usize;
    for letter in v.letters() {
        match letter.as_str() {
            MU => run += 1,
            LAMBDA => {
                let pos = run.min(order.len() - 1);
                out.push(order.letters()[pos].clone());
                run = 0;
            }
            other => return Err(Error::UnknownLetter(other.to_string())),
        }
    }
    Ok(Word::new(out))
}

/// Lifts a unique-sink DFA over a k-letter alphabet to a DFA over
/// {mu, lambda}.
///
/// Every non-sink state becomes a k-row column; mu shifts down a column
/// (fixing the last row) and lambda performs row r's letter, entering
/// either the lifted sink or the first row of the target column.
///
/// Encodings relate the two reset-word languages one-sidedly: whenever
/// [`morphism_hbar`]`(u)` resets the lift, `u` resets the source. The
/// converse holds for words starting with the order's last letter (its
/// leading mu-block pushes every row to the bottom), but not in general:
/// the lift's full state set contains mid-block states, so a leading
/// mu^i lambda block acts like all letters d_(i+1..k) at once.
pub fn binarize(d: &Dfa, order: &LetterOrder) -> Result<Dfa> {
    order.validate_against(d.alphabet())?;
    let k = d.letter_count();
    if k < 2 {
        return Err(Error::AlphabetTooSmall { needed: 2 });
    }
    let n = d.state_count();
    let sinks: Vec<usize> = (0..n)
        .filter(|&s| (0..k).all(|l| d.step(s, l) == s))
        .collect();
    if sinks.len() != 1 {
        return Err(Error::NoUniqueSink { found: sinks.len() });
    }
    let sink = sinks[0];

    let columns: Vec<usize> = (0..n).filter(|&s| s != sink).collect();
    let col_of = |s: usize| columns.iter().position(|&c| c == s).expect("non-sink state");
    let zeta = columns.len() * k;

    let mut used = HashSet::new();
    let mut states = Vec::with_capacity(zeta + 1);
    for &src in &columns {
        for r in 1..=k {
            let base = format!("{},{}", d.state_name(src), r);
            let name = if used.insert(base.clone()) {
                base
            } else {
                let mut i = 2usize;
                loop {
                    let candidate = format!("{base}~{i}");
                    if used.insert(candidate.clone()) {
                        break candidate;
                    }
                    i += 1;
                }
            };
            states.push(name);
        }
    }
    let mut zeta_name = ZETA.to_string();
    while !used.insert(zeta_name.clone()) {
        zeta_name.push('\'');
    }
    states.push(zeta_name);

    let binary = Alphabet::new([MU, LAMBDA])?;
    let mut table = vec![0usize; (zeta + 1) * 2];
    for (ci, &src) in columns.iter().enumerate() {
        for r in 1..=k {
            let idx = ci * k + (r - 1);
            // mu shifts within the column, fixing the bottom row
            table[idx * 2] = if r < k { idx + 1 } else { idx };
            // lambda performs the r-th letter of the order
            let l = d
                .alphabet()
                .index_of(&order.letters()[r - 1])
                .expect("order was validated");
            let target = d.step(src, l);
            table[idx * 2 + 1] = if target == sink { zeta } else { col_of(target) * k };
        }
    }
    table[zeta * 2] = zeta;
    table[zeta * 2 + 1] = zeta;
    Dfa::from_index_table(states, binary, table, None, vec![false; zeta + 1])
}
