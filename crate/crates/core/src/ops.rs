//! Language operations on acceptors: synchronous products, minimization,
//! equivalence with counterexample extraction, and subset construction.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::dfa::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

/// Picks a fresh name, appending `~2`, `~3`, ... on collision.
fn uniquify(base: String, used: &mut HashSet<String>) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    let mut i = 2usize;
    loop {
        let candidate = format!("{base}~{i}");
        if used.insert(candidate.clone()) {
            return candidate;
        }
        i += 1;
    }
}

fn tuple_name(components: &[Dfa], states: &[usize]) -> String {
    let names: Vec<&str> = components
        .iter()
        .zip(states)
        .map(|(d, &s)| d.state_name(s))
        .collect();
    format!("({})", names.join(","))
}

/// Reachable synchronous product of acceptors over a shared alphabet.
///
/// The product accepts the intersection of the component languages. States
/// are named by tuples of component state names and discovered breadth-first
/// with letters in alphabet order, so the result is identical across runs.
pub fn product_acceptors(components: &[Dfa]) -> Result<Dfa> {
    let first = components.first().ok_or(Error::NoComponents)?;
    let alphabet = first.alphabet().clone();
    for d in components {
        if d.alphabet() != &alphabet {
            return Err(Error::AlphabetMismatch);
        }
    }
    let mut initials = Vec::with_capacity(components.len());
    for d in components {
        initials.push(d.initial_index().ok_or(Error::MissingInitial)?);
    }
    let k = alphabet.len();

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut used = HashSet::new();
    let mut table: Vec<usize> = Vec::new();

    index.insert(initials.clone(), 0);
    names.push(uniquify(tuple_name(components, &initials), &mut used));
    nodes.push(initials);

    let mut at = 0;
    while at < nodes.len() {
        let current = nodes[at].clone();
        for l in 0..k {
            let next: Vec<usize> = components
                .iter()
                .zip(&current)
                .map(|(d, &s)| d.step(s, l))
                .collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = nodes.len();
                    index.insert(next.clone(), id);
                    names.push(uniquify(tuple_name(components, &next), &mut used));
                    nodes.push(next);
                    id
                }
            };
            table.push(id);
        }
        at += 1;
    }

    let finals: Vec<bool> = nodes
        .iter()
        .map(|tuple| {
            components
                .iter()
                .zip(tuple)
                .all(|(d, &s)| d.is_final(s))
        })
        .collect();
    Dfa::from_index_table(names, alphabet, table, Some(0), finals)
}

impl Dfa {
    /// Minimal language-equivalent acceptor.
    ///
    /// Unreachable states are dropped, equivalent states merged. Output
    /// states follow breadth-first discovery order (letters in alphabet
    /// order) and keep the name of each class's first-discovered member,
    /// so minimization is deterministic and a minimal input is a fixed
    /// point.
    pub fn minimize(&self) -> Result<Dfa> {
        let init = self.initial_index().ok_or(Error::MissingInitial)?;
        let n = self.state_count();
        let k = self.letter_count();

        // Reachable restriction in BFS discovery order.
        let mut order: Vec<usize> = vec![init];
        let mut pos: Vec<Option<usize>> = vec![None; n];
        pos[init] = Some(0);
        let mut at = 0;
        while at < order.len() {
            let s = order[at];
            for l in 0..k {
                let t = self.step(s, l);
                if pos[t].is_none() {
                    pos[t] = Some(order.len());
                    order.push(t);
                }
            }
            at += 1;
        }
        let m = order.len();
        // step over reindexed states
        let step = |s: usize, l: usize| pos[self.step(order[s], l)].unwrap();

        // Moore refinement; class ids are assigned by first occurrence in
        // discovery order, which keeps the numbering deterministic.
        let mut class: Vec<usize> = Vec::with_capacity(m);
        {
            let mut ids: HashMap<bool, usize> = HashMap::new();
            for &s in &order {
                let next = ids.len();
                class.push(*ids.entry(self.is_final(s)).or_insert(next));
            }
        }
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = Vec::with_capacity(m);
            for s in 0..m {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                for l in 0..k {
                    sig.push(class[step(s, l)]);
                }
                let next = ids.len();
                next_class.push(*ids.entry(sig).or_insert(next));
            }
            let stable = ids.len() == class.iter().max().map_or(0, |&c| c + 1);
            class = next_class;
            if stable {
                break;
            }
        }

        let class_count = class.iter().max().unwrap() + 1;
        let mut rep: Vec<usize> = vec![usize::MAX; class_count];
        for s in 0..m {
            if rep[class[s]] == usize::MAX {
                rep[class[s]] = s;
            }
        }
        let states: Vec<String> = rep
            .iter()
            .map(|&s| self.state_name(order[s]).to_string())
            .collect();
        let mut table = Vec::with_capacity(class_count * k);
        for &r in &rep {
            for l in 0..k {
                table.push(class[step(r, l)]);
            }
        }
        let finals: Vec<bool> = rep.iter().map(|&s| self.is_final(order[s])).collect();
        Dfa::from_index_table(states, self.alphabet().clone(), table, Some(class[0]), finals)
    }

    /// Shortest distinguishing word between two acceptors, or `None` when
    /// they recognize the same language.
    ///
    /// Among shortest distinguishing words the lexicographically least one
    /// (by alphabet order) is returned.
    pub fn distinguish(&self, other: &Dfa) -> Result<Option<Word>> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let ia = self.initial_index().ok_or(Error::MissingInitial)?;
        let ib = other.initial_index().ok_or(Error::MissingInitial)?;
        let k = self.letter_count();
        let nb = other.state_count();

        // nodes: (state in self, state in other, parent backpointer)
        let mut nodes: Vec<(usize, usize, Option<(usize, usize)>)> = Vec::new();
        let mut seen = vec![false; self.state_count() * nb];
        let word_to = |nodes: &Vec<(usize, usize, Option<(usize, usize)>)>, mut at: usize| {
            let mut letters = Vec::new();
            while let Some((parent, l)) = nodes[at].2 {
                letters.push(l);
                at = parent;
            }
            letters.reverse();
            Word::from_indices(self.alphabet(), &letters)
        };

        if self.is_final(ia) != other.is_final(ib) {
            return Ok(Some(Word::empty()));
        }
        seen[ia * nb + ib] = true;
        nodes.push((ia, ib, None));
        let mut at = 0;
        while at < nodes.len() {
            let (sa, sb, _) = nodes[at];
            for l in 0..k {
                let ta = self.step(sa, l);
                let tb = other.step(sb, l);
                if seen[ta * nb + tb] {
                    continue;
                }
                seen[ta * nb + tb] = true;
                nodes.push((ta, tb, Some((at, l))));
                if self.is_final(ta) != other.is_final(tb) {
                    return Ok(Some(word_to(&nodes, nodes.len() - 1)));
                }
            }
            at += 1;
        }
        Ok(None)
    }

    /// Whether two acceptors recognize the same language.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguish(other)?.is_none())
    }

    /// Subset construction over this acceptor extended with extra
    /// (nondeterministic) edges, given as `(state, letter, state)` names.
    ///
    /// Explores subsets breadth-first with letters in alphabet order and
    /// fails with a cap error once more than `cap` subset states have been
    /// discovered.
    pub fn determinize_subset(&self, extra: &[(&str, &str, &str)], cap: usize) -> Result<Dfa> {
        let init = self.initial_index().ok_or(Error::MissingInitial)?;
        let n = self.state_count();
        let k = self.letter_count();

        // relation[s][l] = base transition plus any extra edges
        let mut relation: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; n];
        for s in 0..n {
            for l in 0..k {
                relation[s][l].push(self.step(s, l));
            }
        }
        for &(src, letter, dst) in extra {
            let s = self.require_state(src)?;
            let l = self.alphabet().require(letter)?;
            let t = self.require_state(dst)?;
            if !relation[s][l].contains(&t) {
                relation[s][l].push(t);
            }
        }

        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut nodes: Vec<StateSet> = Vec::new();
        let mut table: Vec<usize> = Vec::new();
        let root = StateSet::singleton(n, init);
        index.insert(root.clone(), 0);
        nodes.push(root);

        let mut at = 0;
        while at < nodes.len() {
            let current = nodes[at].clone();
            for l in 0..k {
                let mut next = StateSet::empty(n);
                for s in current.iter() {
                    for &t in &relation[s][l] {
                        next.insert(t);
                    }
                }
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = nodes.len();
                        if id + 1 > cap {
                            return Err(Error::SubsetCapExceeded { cap });
                        }
                        index.insert(next.clone(), id);
                        nodes.push(next);
                        id
                    }
                };
                table.push(id);
            }
            at += 1;
        }

        let mut used = HashSet::new();
        let names: Vec<String> = nodes
            .iter()
            .map(|set| uniquify(self.subset_name(set), &mut used))
            .collect();
        let finals: Vec<bool> = nodes
            .iter()
            .map(|set| self.final_indices().any(|f| set.contains(f)))
            .collect();
        Dfa::from_index_table(names, self.alphabet().clone(), table, Some(0), finals)
    }
}

/// Breadth-first search for the shortest (then lexicographically least)
/// accepted word of an acceptor, if any.
pub(crate) fn shortest_accepted(d: &Dfa) -> Result<Option<Word>> {
    let init = d.initial_index().ok_or(Error::MissingInitial)?;
    let k = d.letter_count();
    if d.is_final(init) {
        return Ok(Some(Word::empty()));
    }
    let mut seen = vec![false; d.state_count()];
    seen[init] = true;
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new(); // (state, node idx)
    let mut nodes: Vec<(Option<(usize, usize)>,)> = vec![(None,)];
    queue.push_back((init, 0));
    while let Some((s, at)) = queue.pop_front() {
        for l in 0..k {
            let t = d.step(s, l);
            if seen[t] {
                continue;
            }
            seen[t] = true;
            nodes.push((Some((at, l)),));
            let id = nodes.len() - 1;
            if d.is_final(t) {
                let mut letters = Vec::new();
                let mut cur = id;
                while let Some((p, l)) = nodes[cur].0 {
                    letters.push(l);
                    cur = p;
                }
                letters.reverse();
                return Ok(Some(Word::from_indices(d.alphabet(), &letters)));
            }
            queue.push_back((t, id));
        }
    }
    Ok(None)
}
