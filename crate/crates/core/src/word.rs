//! Operator words over `f` (algebraic closure), `g` (complement) and
//! `h` (algebraic interior). Words are written left to right and act right to
//! left: `fg` applied to `A` is `f(g(A))`.

use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    F,
    G,
    H,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::F => 'f',
            Letter::G => 'g',
            Letter::H => 'h',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'f' => Some(Letter::F),
            'g' => Some(Letter::G),
            'h' => Some(Letter::H),
            _ => None,
        }
    }

    /// Letters that map convex sets to convex sets.
    pub fn preserves_convexity(self) -> bool {
        matches!(self, Letter::F | Letter::H)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpWord(Vec<Letter>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid letter `{letter}` at position {position}: words use only f, g, h")]
pub struct ParseWordError {
    pub letter: char,
    pub position: usize,
}

impl OpWord {
    pub fn empty() -> OpWord {
        OpWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> OpWord {
        OpWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `letter · self`: apply `self` first, then `letter`.
    pub fn prepend(&self, letter: Letter) -> OpWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        OpWord(v)
    }

    /// `self · other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &OpWord) -> OpWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OpWord(v)
    }

    /// Removes `gg` and collapses `ff` until neither occurs.
    pub fn canonical(&self) -> OpWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match (out.last(), l) {
                (Some(Letter::G), Letter::G) => {
                    out.pop();
                }
                (Some(Letter::F), Letter::F) => {}
                _ => out.push(l),
            }
        }
        OpWord(out)
    }

    /// All words over `{f, g}` of length at most `max_len`, shortest first,
    /// `f` before `g`.
    pub fn all_fg(max_len: usize) -> Vec<OpWord> {
        let mut out = vec![OpWord::empty()];
        let mut layer = vec![OpWord::empty()];
        for _ in 0..max_len {
            let next: Vec<OpWord> = layer
                .iter()
                .flat_map(|w| {
                    [Letter::F, Letter::G].map(|l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        OpWord(v)
                    })
                })
                .collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for OpWord {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<OpWord, ParseWordError> {
        if s == "ε" || s == "e" {
            return Ok(OpWord::empty());
        }
        s.chars()
            .enumerate()
            .map(|(position, letter)| Letter::from_char(letter).ok_or(ParseWordError { letter, position }))
            .collect::<Result<Vec<_>, _>>()
            .map(OpWord)
    }
}

impl Serialize for OpWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn word(s: &str) -> OpWord {
    s.parse().expect("valid word literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display() {
        assert_eq!(word("fgh").to_string(), "fgh");
        assert_eq!(word("").to_string(), "ε");
        assert_eq!(word("ε"), OpWord::empty());
        let err = "fgx".parse::<OpWord>().unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn canonical_form_has_no_doubles() {
        assert_eq!(word("fgg").canonical(), word("f"));
        assert_eq!(word("gffg").canonical(), word("gfg"));
        assert_eq!(word("ggffgg").canonical(), word("f"));
    }

    #[test]
    fn all_fg_counts() {
        assert_eq!(OpWord::all_fg(3).len(), 15);
        assert_eq!(OpWord::all_fg(0), vec![OpWord::empty()]);
    }
}
