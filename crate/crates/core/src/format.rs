//! Line-oriented text format for automata.
//!
//! ```text
//! # comments run to end of line; blank lines are ignored
//! alphabet: a b
//! states: q0 q1
//! initial: q0          # optional
//! final: q1            # optional, may be omitted when empty
//! q0 a q1
//! q0 b q0
//! q1 a q1
//! q1 b q0
//! ```
//!
//! The header lines come in the order shown; after them exactly
//! |states|·|letters| transition lines follow. Tokens are whitespace
//! delimited and may not contain `:` or `#`.

use std::collections::HashMap;

use crate::dfa::Dfa;
use crate::error::{ParseError, Result};

fn valid_token(tok: &str) -> bool {
    !tok.is_empty() && !tok.chars().any(|c| c.is_whitespace() || c == ':' || c == '#')
}

struct Lines<'a> {
    // (1-based line number, whitespace-split tokens)
    rows: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut rows = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let uncommented = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = uncommented.split_whitespace().collect();
            if !toks.is_empty() {
                rows.push((i + 1, toks));
            }
        }
        Lines {
            rows,
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.rows.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let row = self.rows.get(self.pos).cloned();
        if row.is_some() {
            self.pos += 1;
        }
        row
    }

    /// Line number to report for end-of-input errors.
    fn eof_line(&self) -> usize {
        self.last_line.max(1)
    }
}

/// Takes the next row if its first token is `keyword`.
fn take_header<'a>(lines: &mut Lines<'a>, keyword: &str) -> Option<(usize, Vec<&'a str>)> {
    match lines.peek() {
        Some((_, toks)) if toks[0] == keyword => lines.next(),
        _ => None,
    }
}

impl Dfa {
    /// Parses an automaton from its text form.
    pub fn parse(text: &str) -> Result<Dfa> {
        let mut lines = Lines::new(text);

        let (aline, atoks) = take_header(&mut lines, "alphabet:").ok_or(ParseError::ExpectedHeader {
            line: lines.peek().map(|r| r.0).unwrap_or_else(|| lines.eof_line()),
            expected: "alphabet:",
        })?;
        let letters = &atoks[1..];
        if letters.is_empty() {
            return Err(ParseError::EmptyAlphabet { line: aline }.into());
        }
        let mut letter_index: HashMap<&str, usize> = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            if !valid_token(l) {
                return Err(ParseError::BadToken {
                    line: aline,
                    token: l.to_string(),
                }
                .into());
            }
            if letter_index.insert(l, i).is_some() {
                return Err(ParseError::DuplicateLetter {
                    line: aline,
                    letter: l.to_string(),
                }
                .into());
            }
        }

        let (sline, stoks) = take_header(&mut lines, "states:").ok_or(ParseError::ExpectedHeader {
            line: lines.peek().map(|r| r.0).unwrap_or_else(|| lines.eof_line()),
            expected: "states:",
        })?;
        let states = &stoks[1..];
        let mut state_index: HashMap<&str, usize> = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if !valid_token(s) {
                return Err(ParseError::BadToken {
                    line: sline,
                    token: s.to_string(),
                }
                .into());
            }
            if state_index.insert(s, i).is_some() {
                return Err(ParseError::DuplicateState {
                    line: sline,
                    state: s.to_string(),
                }
                .into());
            }
        }
        if states.is_empty() {
            return Err(ParseError::ExpectedHeader {
                line: sline,
                expected: "states:",
            }
            .into());
        }

        let mut initial: Option<&str> = None;
        if let Some((iline, itoks)) = take_header(&mut lines, "initial:") {
            if itoks.len() != 2 {
                return Err(ParseError::InitialArity { line: iline }.into());
            }
            if !state_index.contains_key(itoks[1]) {
                return Err(ParseError::UnknownState {
                    line: iline,
                    token: itoks[1].to_string(),
                }
                .into());
            }
            initial = Some(itoks[1]);
        }

        let mut finals: Vec<&str> = Vec::new();
        if let Some((fline, ftoks)) = take_header(&mut lines, "final:") {
            for f in &ftoks[1..] {
                if !state_index.contains_key(f) {
                    return Err(ParseError::UnknownState {
                        line: fline,
                        token: f.to_string(),
                    }
                    .into());
                }
                finals.push(f);
            }
        }

        let n = states.len();
        let k = letters.len();
        let mut table = vec![usize::MAX; n * k];
        let mut transitions: Vec<(&str, &str, &str)> = Vec::with_capacity(n * k);
        while let Some((tline, toks)) = lines.next() {
            if toks.len() != 3 {
                return Err(ParseError::BadTransition { line: tline }.into());
            }
            let (src, letter, dst) = (toks[0], toks[1], toks[2]);
            let s = *state_index.get(src).ok_or(ParseError::UnknownState {
                line: tline,
                token: src.to_string(),
            })?;
            let l = *letter_index.get(letter).ok_or(ParseError::UnknownLetter {
                line: tline,
                token: letter.to_string(),
            })?;
            if !state_index.contains_key(dst) {
                return Err(ParseError::UnknownState {
                    line: tline,
                    token: dst.to_string(),
                }
                .into());
            }
            if table[s * k + l] != usize::MAX {
                return Err(ParseError::DuplicateTransition {
                    line: tline,
                    state: src.to_string(),
                    letter: letter.to_string(),
                }
                .into());
            }
            table[s * k + l] = 0;
            transitions.push((src, letter, dst));
        }
        for s in 0..n {
            for l in 0..k {
                if table[s * k + l] == usize::MAX {
                    return Err(ParseError::MissingTransition {
                        line: lines.eof_line(),
                        state: states[s].to_string(),
                        letter: letters[l].to_string(),
                    }
                    .into());
                }
            }
        }

        Dfa::new(states, letters, &transitions, initial, &finals)
    }

    /// Serializes the automaton; the output parses back to an equal value.
    ///
    /// Transitions are emitted in state order, letters in alphabet order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet:");
        for l in self.alphabet().letters() {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        out.push_str("states:");
        for s in self.states() {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        if let Some(init) = self.initial() {
            out.push_str("initial: ");
            out.push_str(init);
            out.push('\n');
        }
        if self.final_count() > 0 {
            out.push_str("final:");
            for i in self.final_indices() {
                out.push(' ');
                out.push_str(self.state_name(i));
            }
            out.push('\n');
        }
        for s in 0..self.state_count() {
            for l in 0..self.letter_count() {
                out.push_str(self.state_name(s));
                out.push(' ');
                out.push_str(self.alphabet().letter(l));
                out.push(' ');
                out.push_str(self.state_name(self.step(s, l)));
                out.push('\n');
            }
        }
        out
    }
}

/// Parses an automaton file; alias for [`Dfa::parse`].
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    Dfa::parse(text)
}

/// Serializes an automaton; alias for [`Dfa::serialize`].
pub fn serialize_dfa(d: &Dfa) -> String {
    d.serialize()
}
