//! Shared fixtures and seeded generators for the integration suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use synckit::sync::is_synchronizing;
use synckit::{Alphabet, Dfa, Word};

pub const LETTER_POOL: [&str; 3] = ["a", "b", "c"];

pub fn sigma_ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// Acceptor for Σ*·letter over {a,b}.
pub fn ends_with(letter: &str) -> Dfa {
    let other = if letter == "a" { "b" } else { "a" };
    Dfa::new(
        &["e0", "e1"],
        &["a", "b"],
        &[
            ("e0", letter, "e1"),
            ("e0", other, "e0"),
            ("e1", letter, "e1"),
            ("e1", other, "e0"),
        ],
        Some("e0"),
        &["e1"],
    )
    .unwrap()
}

/// Acceptor for Σ*aΣ* over {a,b}.
pub fn contains_a() -> Dfa {
    Dfa::new(
        &["c0", "c1"],
        &["a", "b"],
        &[
            ("c0", "a", "c1"),
            ("c0", "b", "c0"),
            ("c1", "a", "c1"),
            ("c1", "b", "c1"),
        ],
        Some("c0"),
        &["c1"],
    )
    .unwrap()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random complete DFA without initial or final states.
pub fn random_bare_dfa(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dfa {
    let states: Vec<String> = (0..n).map(|s| format!("q{s}")).collect();
    let table: Vec<usize> = (0..n * k).map(|_| rng.random_range(0..n)).collect();
    let alphabet = Alphabet::new(LETTER_POOL[..k].iter().copied()).unwrap();
    Dfa::from_index_table(states, alphabet, table, None, vec![false; n]).unwrap()
}

/// Resamples until the automaton synchronizes.
pub fn random_sync_dfa(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dfa {
    loop {
        let d = random_bare_dfa(rng, n, k);
        if is_synchronizing(&d) {
            return d;
        }
    }
}

/// Membership oracle for the witness ideal over Δ = {y,z,a,b,x}, straight
/// from its definition: (Σ∪{x})*yΔ* ∪ (Σ∪{x})*zΔ⁺.
pub fn in_witness_ideal(w: &Word) -> bool {
    let letters = w.letters();
    let boundary = letters
        .iter()
        .position(|l| l == "y" || l == "z")
        .unwrap_or(letters.len());
    if boundary == letters.len() {
        return false; // stayed inside (Σ ∪ {x})*
    }
    if letters[boundary] == "y" {
        true
    } else {
        letters.len() > boundary + 1 // z needs at least one more letter
    }
}

/// All letter-index words up to `max_len` in (length, lex) order, ε first.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = vec![Vec::new()];
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for l in 0..k {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}
