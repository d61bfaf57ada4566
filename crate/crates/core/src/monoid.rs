//! Rewriting of operator words to canonical forms.
//!
//! `general` mode models an idempotent closure with complement on arbitrary
//! sets and yields the 14 classical operators. `convex` mode adds identities
//! that only hold when the operators act on a convex seed with nonempty
//! algebraic interior. Those rules are anchored at the right end of the word:
//! they may fire only if every letter to the right of the match keeps the
//! argument convex (`f` and `h` do, `g` does not).

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::word::{word, Letter, OpWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RewriteMode {
    General,
    Convex,
}

impl FromStr for RewriteMode {
    type Err = String;

    fn from_str(s: &str) -> Result<RewriteMode, String> {
        match s {
            "general" => Ok(RewriteMode::General),
            "convex" => Ok(RewriteMode::Convex),
            other => Err(format!("unknown mode `{other}` (expected general or convex)")),
        }
    }
}

impl fmt::Display for RewriteMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RewriteMode::General => "general",
            RewriteMode::Convex => "convex",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    Anywhere,
    Suffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    None,
    ConvexSeed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub lhs: OpWord,
    pub rhs: OpWord,
    pub anchor: Anchor,
    pub requirement: Requirement,
}

impl Rule {
    fn new(lhs: &str, rhs: &str, anchor: Anchor, requirement: Requirement) -> Rule {
        Rule {
            lhs: word(lhs),
            rhs: word(rhs),
            anchor,
            requirement,
        }
    }

    /// `h → gfg` trades the interior letter for its dual expression; every
    /// other rule shortens the word.
    pub fn is_expansion(&self) -> bool {
        self.rhs.len() >= self.lhs.len()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Active rules in priority order.
pub fn rules(mode: RewriteMode) -> Vec<Rule> {
    use Anchor::*;
    use Requirement as R;
    let free = [
        Rule::new("gg", "", Anywhere, R::None),
        Rule::new("ff", "f", Anywhere, R::None),
        Rule::new("fgfgfgf", "fgf", Anywhere, R::None),
    ];
    match mode {
        RewriteMode::General => {
            let mut v = vec![Rule::new("h", "gfg", Anywhere, R::None)];
            v.extend(free);
            v
        }
        RewriteMode::Convex => {
            let mut v = vec![
                Rule::new("hh", "h", Suffix, R::ConvexSeed),
                Rule::new("fh", "f", Suffix, R::ConvexSeed),
                Rule::new("hf", "h", Suffix, R::ConvexSeed),
                Rule::new("h", "gfg", Suffix, R::ConvexSeed),
            ];
            v.extend(free);
            v.push(Rule::new("fgfgf", "f", Suffix, R::ConvexSeed));
            v.push(Rule::new("fgfg", "f", Suffix, R::ConvexSeed));
            v
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("interior letter `h` at position {position} acts on a non-convex argument (a `g` occurs to its right)")]
    UnsafeInterior { position: usize },
    #[error("max_len must be at least 7, got {0}")]
    MaxLenTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub position: usize,
    pub before: OpWord,
    pub after: OpWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub input: OpWord,
    pub result: OpWord,
    pub trace: Vec<TraceStep>,
}

impl Reduction {
    pub fn used_convex_rule(&self) -> bool {
        self.trace
            .iter()
            .any(|s| s.rule.requirement == Requirement::ConvexSeed)
    }
}

fn convex_safe(suffix: &[Letter]) -> bool {
    suffix.iter().all(|l| l.preserves_convexity())
}

fn find_match(letters: &[Letter], rule: &Rule) -> Option<usize> {
    let pat = rule.lhs.letters();
    if pat.len() > letters.len() {
        return None;
    }
    (0..=letters.len() - pat.len()).find(|&p| {
        letters[p..p + pat.len()] == *pat
            && (rule.anchor == Anchor::Anywhere || convex_safe(&letters[p + pat.len()..]))
    })
}

pub fn reduce_traced(w: &OpWord, mode: RewriteMode) -> Result<Reduction, RewriteError> {
    if mode == RewriteMode::Convex {
        let letters = w.letters();
        if let Some(position) =
            (0..letters.len()).find(|&i| letters[i] == Letter::H && !convex_safe(&letters[i + 1..]))
        {
            return Err(RewriteError::UnsafeInterior { position });
        }
    }
    let rules = rules(mode);
    let mut current: Vec<Letter> = w.letters().to_vec();
    let mut trace = Vec::new();
    'outer: loop {
        for rule in &rules {
            if let Some(p) = find_match(&current, rule) {
                let before = OpWord::new(current.clone());
                current.splice(p..p + rule.lhs.len(), rule.rhs.letters().iter().copied());
                trace.push(TraceStep {
                    rule: rule.clone(),
                    position: p,
                    before,
                    after: OpWord::new(current.clone()),
                });
                continue 'outer;
            }
        }
        break;
    }
    Ok(Reduction {
        input: w.clone(),
        result: OpWord::new(current),
        trace,
    })
}

pub fn reduce(w: &OpWord, mode: RewriteMode) -> Result<OpWord, RewriteError> {
    reduce_traced(w, mode).map(|r| r.result)
}

/// Distinct reduced forms of all `{f, g}` words up to `max_len`, shortest
/// first with `f < g`.
pub fn enumerate_canonical(mode: RewriteMode, max_len: usize) -> Result<Vec<OpWord>, RewriteError> {
    if max_len < 7 {
        return Err(RewriteError::MaxLenTooSmall(max_len));
    }
    let mut out: Vec<OpWord> = OpWord::all_fg(max_len)
        .iter()
        .map(|w| reduce(w, mode))
        .collect::<Result<_, _>>()?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}

/// Composition table of the canonical words: `entries[u][v]` is the index of
/// `reduce(u·v)`, i.e. `v` applied first.
#[derive(Debug, Clone, Serialize)]
pub struct MonoidTable {
    pub mode: RewriteMode,
    pub words: Vec<OpWord>,
    pub entries: Vec<Vec<usize>>,
    /// Whether the entry's reduction needed a convex-seed rule.
    pub convex_rule_used: Vec<Vec<bool>>,
}

pub fn monoid_table(mode: RewriteMode) -> MonoidTable {
    let words = enumerate_canonical(mode, 9).expect("max_len 9 is valid");
    let n = words.len();
    let mut entries = vec![vec![0; n]; n];
    let mut convex_rule_used = vec![vec![false; n]; n];
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            let r = reduce_traced(&u.compose(v), mode).expect("f/g words are always safe");
            entries[i][j] = words
                .iter()
                .position(|w| *w == r.result)
                .expect("canonical set is closed under composition");
            convex_rule_used[i][j] = r.used_convex_rule();
        }
    }
    MonoidTable {
        mode,
        words,
        entries,
        convex_rule_used,
    }
}

impl MonoidTable {
    pub fn get(&self, u: &OpWord, v: &OpWord) -> Option<&OpWord> {
        let i = self.words.iter().position(|w| w == u)?;
        let j = self.words.iter().position(|w| w == v)?;
        Some(&self.words[self.entries[i][j]])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&k| self.words[k].to_string()).collect())
            .collect();
        serde_json::json!({
            "mode": self.mode,
            "words": self.words,
            "table": table,
            "convex_rule_used": self.convex_rule_used,
        })
    }
}

impl fmt::Display for MonoidTable {
    /// Aligned grid; row `u`, column `v` holds `u∘v`. Entries that needed a
    /// convex-seed rule carry a trailing `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(1) + 1;
        let pad = |s: &str| format!("{s}{}", " ".repeat(width - s.chars().count()));
        write!(f, "{}", pad("∘"))?;
        for n in &names {
            write!(f, " {}", pad(n))?;
        }
        writeln!(f)?;
        for (i, row) in self.entries.iter().enumerate() {
            write!(f, "{}", pad(&names[i]))?;
            for (j, &k) in row.iter().enumerate() {
                let mut cell = names[k].clone();
                if self.convex_rule_used[i][j] {
                    cell.push('*');
                }
                write!(f, " {}", pad(&cell))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
