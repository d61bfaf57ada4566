//! Closure–complement orbits `{wA : w a word over f, g}`.

use crate::error::EngineError;
use crate::operators::{cor, is_convex, lin, OperatorReport};
use crate::set::FlaggedSet;
use crate::word::{word, Letter, OpWord};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::VecDeque;
use std::fmt::Write as _;

/// The eight words that exhaust the orbit of a convex seed.
pub const CONVEX_WORDS: [&str; 8] = ["", "g", "f", "gf", "fg", "gfg", "fgf", "gfgf"];

/// `A → fA → gfA → fgfA → gfgfA → fgfgfA`
pub const CLOSURE_CHAIN: [&str; 6] = ["", "f", "gf", "fgf", "gfgf", "fgfgf"];
/// `A → gA → fgA → gfgA → fgfgA`
pub const COMPLEMENT_CHAIN: [&str; 5] = ["", "g", "fg", "gfg", "fgfg"];

pub fn apply_letter(letter: Letter, a: &FlaggedSet) -> FlaggedSet {
    match letter {
        Letter::F => lin(a),
        Letter::G => a.complement(),
        Letter::H => cor(a),
    }
}

/// Applies the letters of `w` from right to left.
pub fn apply_word(w: &OpWord, a: &FlaggedSet) -> FlaggedSet {
    w.letters()
        .iter()
        .rev()
        .fold(a.clone(), |acc, &l| apply_letter(l, &acc))
}

#[derive(Debug, Clone)]
pub struct Orbit {
    seed: FlaggedSet,
    members: Vec<FlaggedSet>,
    witness: Vec<OpWord>,
    /// `edges[i] = [index of f(member i), index of g(member i)]`
    edges: Vec<[usize; 2]>,
}

impl Orbit {
    /// Breadth-first closure of `{a}` under `f` and `g`, comparing sets by
    /// semantic equality. Every operator keeps the arrangement fixed, so the
    /// orbit is a subset of the finitely many flaggings and the search ends.
    pub fn enumerate(a: &FlaggedSet) -> Orbit {
        let mut members = vec![a.clone()];
        let mut witness = vec![OpWord::empty()];
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut out = [0usize; 2];
            for (slot, letter) in [Letter::F, Letter::G].into_iter().enumerate() {
                let next = apply_letter(letter, &members[i]);
                out[slot] = match members.iter().position(|m| m.flags() == next.flags()) {
                    Some(j) => j,
                    None => {
                        members.push(next);
                        witness.push(witness[i].prepend(letter));
                        queue.push_back(members.len() - 1);
                        members.len() - 1
                    }
                };
            }
            if edges.len() <= i {
                edges.resize(i + 1, [0, 0]);
            }
            edges[i] = out;
        }
        Orbit {
            seed: a.clone(),
            members,
            witness,
            edges,
        }
    }

    pub fn seed(&self) -> &FlaggedSet {
        &self.seed
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[FlaggedSet] {
        &self.members
    }

    pub fn witness(&self, i: usize) -> &OpWord {
        &self.witness[i]
    }

    pub fn witnesses(&self) -> &[OpWord] {
        &self.witness
    }

    pub fn transition(&self, i: usize, letter: Letter) -> usize {
        match letter {
            Letter::F => self.edges[i][0],
            Letter::G => self.edges[i][1],
            Letter::H => panic!("orbits are closed under f and g only"),
        }
    }

    /// Member reached from the seed by `w` (over `f`, `g`) along transitions.
    pub fn follow(&self, w: &OpWord) -> Option<usize> {
        w.letters().iter().rev().try_fold(0usize, |i, &l| match l {
            Letter::H => None,
            _ => Some(self.transition(i, l)),
        })
    }

    pub fn index_of(&self, s: &FlaggedSet) -> Result<Option<usize>, EngineError> {
        for (i, m) in self.members.iter().enumerate() {
            if m.equal(s)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Words `letter·witness(i)` that land on an already-known member, with
    /// the member they collapse onto.
    pub fn collapses(&self) -> Vec<(OpWord, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for letter in [Letter::F, Letter::G] {
                let target = self.transition(i, letter);
                let w = self.witness[i].prepend(letter);
                if self.witness[target] != w {
                    out.push((w, target));
                }
            }
        }
        out
    }

    pub fn chains(&self) -> Vec<Chain> {
        [&CLOSURE_CHAIN[..], &COMPLEMENT_CHAIN[..]]
            .iter()
            .map(|words| Chain::evaluate(self, words))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let collapses = self.collapses();
        let members: Vec<Value> = (0..self.len())
            .map(|i| {
                let also: Vec<String> = collapses
                    .iter()
                    .filter(|(_, t)| *t == i)
                    .map(|(w, _)| w.to_string())
                    .collect();
                json!({
                    "index": i,
                    "witness": self.witness[i],
                    "set": self.members[i],
                    "f": self.edges[i][0],
                    "g": self.edges[i][1],
                    "also": also,
                })
            })
            .collect();
        json!({
            "seed": self.seed,
            "size": self.len(),
            "members": members,
            "chains": self.chains(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let collapses = self.collapses();
        let _ = writeln!(out, "orbit of {}: {} members", self.seed.describe(), self.len());
        let width = self.witness.iter().map(|w| w.to_string().chars().count()).max().unwrap_or(1);
        for i in 0..self.len() {
            let w = self.witness[i].to_string();
            let pad = width - w.chars().count();
            let _ = write!(
                out,
                "[{i}] {w}{}  f->[{}] g->[{}]  {}",
                " ".repeat(pad),
                self.edges[i][0],
                self.edges[i][1],
                self.members[i].describe()
            );
            let also: Vec<String> = collapses
                .iter()
                .filter(|(_, t)| *t == i)
                .map(|(w, _)| w.to_string())
                .collect();
            if !also.is_empty() {
                let _ = write!(out, "  (also {})", also.join(", "));
            }
            out.push('\n');
        }
        for chain in self.chains() {
            let _ = writeln!(out, "{chain}");
        }
        out
    }
}

/// One of the operator chains from the convex bound argument, evaluated on an
/// orbit.
#[derive(Debug, Clone, Serialize)]
pub struct Chain {
    pub words: Vec<OpWord>,
    pub members: Vec<usize>,
    /// Pairs `(later, earlier)` of chain words that produced the same set.
    pub equalities: Vec<(OpWord, OpWord)>,
    /// The chain's closing identity `last = f` and whether it held.
    pub closes_at_f: (OpWord, OpWord, bool),
}

impl Chain {
    fn evaluate(orbit: &Orbit, words: &[&str]) -> Chain {
        let words: Vec<OpWord> = words.iter().map(|w| word(w)).collect();
        let members: Vec<usize> = words
            .iter()
            .map(|w| orbit.follow(w).expect("f/g word"))
            .collect();
        let mut equalities = Vec::new();
        for j in 0..words.len() {
            if let Some(k) = (0..j).find(|&k| members[k] == members[j]) {
                equalities.push((words[j].clone(), words[k].clone()));
            }
        }
        let last = words.last().expect("nonempty chain").clone();
        let holds = orbit.follow(&word("f")) == members.last().copied();
        Chain {
            words,
            members,
            equalities,
            closes_at_f: (last, word("f"), holds),
        }
    }
}

impl std::fmt::Display for Chain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("chain")?;
        for (w, m) in self.words.iter().zip(&self.members) {
            write!(f, " {w}A[{m}]")?;
        }
        for (a, b) in &self.equalities {
            write!(f, "  {a}A = {b}A")?;
        }
        let (last, target, holds) = &self.closes_at_f;
        let rel = if *holds { "=" } else { "≠" };
        write!(f, "  [{last}A {rel} {target}A]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteriorRegime {
    NonemptyInterior,
    EmptyInterior,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexBoundReport {
    pub seed: FlaggedSet,
    pub regime: InteriorRegime,
    pub orbit_size: usize,
    pub bound_holds: bool,
    /// One entry per orbit member: the member against `wA` for the first
    /// matching word of the eight-word list.
    pub matches: Vec<OperatorReport>,
    pub unmatched: Vec<OpWord>,
    pub chains: Vec<Chain>,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("precondition `{gate}` violated: the seed is not convex")]
    NotConvex { gate: &'static str },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Checks the convex-seed bound on `a`: at most eight orbit members, each
/// equal to `wA` for a word of [`CONVEX_WORDS`].
pub fn verify_convex_bound(a: &FlaggedSet) -> Result<ConvexBoundReport, OrbitError> {
    if !is_convex(a) {
        return Err(OrbitError::NotConvex { gate: "is_convex" });
    }
    let orbit = Orbit::enumerate(a);
    let images: Vec<(OpWord, FlaggedSet)> = CONVEX_WORDS
        .iter()
        .map(|w| {
            let w = word(w);
            let img = apply_word(&w, a);
            (w, img)
        })
        .collect();
    let mut matches = Vec::new();
    let mut unmatched = Vec::new();
    for (i, m) in orbit.members().iter().enumerate() {
        let mut found = None;
        for (w, img) in &images {
            if m.equal(img)? {
                found = Some((w, img));
                break;
            }
        }
        match found {
            Some((w, img)) => matches.push(OperatorReport::check(
                format!("{}A = {}A", orbit.witness(i), w),
                a,
                m.clone(),
                img.clone(),
            )?),
            None => unmatched.push(orbit.witness(i).clone()),
        }
    }
    let bound_holds = orbit.len() <= CONVEX_WORDS.len();
    let regime = if cor(a).is_empty() {
        InteriorRegime::EmptyInterior
    } else {
        InteriorRegime::NonemptyInterior
    };
    Ok(ConvexBoundReport {
        seed: a.clone(),
        regime,
        orbit_size: orbit.len(),
        bound_holds,
        verdict: bound_holds && unmatched.is_empty() && matches.iter().all(|r| r.verdict),
        matches,
        unmatched,
        chains: orbit.chains(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Space;
    use crate::rational::{int, int_point};
    use crate::set::shapes::*;

    fn seed_ten() -> FlaggedSet {
        interval(&int(0), &int(1), false, false)
            .union(&interval(&int(1), &int(2), false, false))
            .unwrap()
            .union(&point(&[int(3)]))
            .unwrap()
    }

    #[test]
    fn apply_word_examples() {
        let a = interval(&int(0), &int(1), true, false);
        assert!(apply_word(&OpWord::empty(), &a).equal(&a).unwrap());
        assert!(apply_word(&word("gg"), &a).equal(&a).unwrap());
        let closed = interval(&int(0), &int(1), true, true);
        let open = interval(&int(0), &int(1), false, false);
        assert!(apply_word(&word("gfg"), &closed).equal(&open).unwrap());
        assert!(apply_word(&word("h"), &closed).equal(&open).unwrap());
    }

    #[test]
    fn orbit_of_empty_set() {
        let o = Orbit::enumerate(&FlaggedSet::empty(Space::LINE));
        assert_eq!(o.len(), 2);
        assert!(o.members()[1].is_full());
    }

    #[test]
    fn orbit_of_half_open_interval() {
        let a = interval(&int(0), &int(1), true, false);
        let o = Orbit::enumerate(&a);
        assert_eq!(o.len(), 6);
        let names: Vec<String> = o.witnesses().iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["ε", "f", "g", "gf", "fg", "gfg"]);
        // fgfA collapses onto fgA
        assert_eq!(o.follow(&word("fgf")), o.follow(&word("fg")));
    }

    #[test]
    fn orbit_of_ten_set_seed() {
        let o = Orbit::enumerate(&seed_ten());
        assert_eq!(o.len(), 10);
        let fgfg = o.follow(&word("fgfg")).unwrap();
        assert_eq!(o.members()[fgfg].describe(), "[0, 2]");
        let gfgfg = o.follow(&word("gfgfg")).unwrap();
        assert_eq!(o.members()[gfgfg].describe(), "(-∞, 0) ∪ (2, ∞)");
        assert!(CONVEX_WORDS.iter().all(|w| o.follow(&word(w)) != Some(fgfg)));
    }

    #[test]
    fn transitions_reproduce_apply_word() {
        let a = seed_ten();
        let o = Orbit::enumerate(&a);
        for w in OpWord::all_fg(9) {
            let i = o.follow(&w).unwrap();
            assert!(o.members()[i].equal(&apply_word(&w, &a)).unwrap(), "{w}");
        }
    }

    #[test]
    fn witnesses_are_shortest() {
        let a = seed_ten();
        let o = Orbit::enumerate(&a);
        for w in OpWord::all_fg(8) {
            let i = o.follow(&w).unwrap();
            assert!(o.witness(i).len() <= w.len());
        }
    }

    #[test]
    fn convex_bound_closed_square() {
        let r = verify_convex_bound(&unit_square(true)).unwrap();
        assert!(r.verdict);
        assert!(r.orbit_size <= 8);
        assert_eq!(r.regime, InteriorRegime::NonemptyInterior);
    }

    #[test]
    fn convex_bound_segment_with_empty_interior() {
        let seg = segment(&int_point(&[0, 0]), &int_point(&[1, 0]), true, true);
        let r = verify_convex_bound(&seg).unwrap();
        assert!(r.verdict);
        assert_eq!(r.regime, InteriorRegime::EmptyInterior);
        assert_eq!(r.orbit_size, 4);
    }

    #[test]
    fn convex_bound_rejects_nonconvex() {
        assert_eq!(
            verify_convex_bound(&seed_ten()).unwrap_err(),
            OrbitError::NotConvex { gate: "is_convex" }
        );
    }

    #[test]
    fn chains_mark_collapses() {
        let o = Orbit::enumerate(&interval(&int(0), &int(1), true, false));
        let chains = o.chains();
        assert!(chains[0].equalities.contains(&(word("fgfgf"), word("f"))));
        assert!(chains[0].closes_at_f.2 && chains[1].closes_at_f.2);
        assert_eq!(chains[1].closes_at_f.0, word("fgfg"));
        let text = o.to_text();
        assert!(text.contains("fgfgfA = fA"));
        let json = o.to_json();
        assert_eq!(json["size"], o.len());
    }
}
