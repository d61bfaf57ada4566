//! The invariant suite on seeded random inputs.

use serde::Serialize;
use std::fmt::Write as _;

use crate::gen::{random_convex_hrep, random_convex_seed, random_dim, random_point, random_semilinear, rng};
use crate::operators::{cor, cor_pointwise, lin, topo_closure, topo_interior, GermTable};
use crate::orbit::{apply_word, verify_convex_bound, Orbit};
use crate::separation::{cor_membership_certificate, hrep_to_flagged, Membership};
use crate::set::FlaggedSet;
use crate::word::word;

#[derive(Debug, Clone, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestSummary {
    pub seeds: usize,
    pub rng: u64,
    pub checks: Vec<CheckTally>,
    pub verdict: &'static str,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed == c.total)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed == c.total { "ok" } else { "FAIL" };
            let _ = writeln!(out, "{:width$}  {:>5}/{:<5} {mark}", c.name, c.passed, c.total);
        }
        let _ = writeln!(out, "selftest: {} ({} seeds, rng {})", self.verdict, self.seeds, self.rng);
        out
    }
}

struct Tally(Vec<CheckTally>);

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool) {
        let entry = match self.0.iter_mut().find(|c| c.name == name) {
            Some(e) => e,
            None => {
                self.0.push(CheckTally { name, passed: 0, total: 0 });
                self.0.last_mut().expect("just pushed")
            }
        };
        entry.total += 1;
        entry.passed += ok as usize;
    }
}

fn eq(a: &FlaggedSet, b: &FlaggedSet) -> bool {
    a.equal(b).unwrap_or(false)
}

fn sub(a: &FlaggedSet, b: &FlaggedSet) -> bool {
    a.is_subset(b).unwrap_or(false)
}

pub fn run_selftest(seeds: usize, seed: u64) -> SelftestSummary {
    let mut r = rng(seed);
    let mut t = Tally(Vec::new());
    for _ in 0..seeds {
        let dim = random_dim(&mut r);
        let s = random_semilinear(&mut r, dim);
        let other = random_semilinear(&mut r, dim);

        t.record("lin = topological closure", lin(&s).flags() == topo_closure(&s).flags());
        t.record("cor = topological interior", cor(&s).flags() == topo_interior(&s).flags());
        let germs = GermTable::new(s.arrangement());
        t.record("engine agrees with germ oracle", germs.lin(&s).flags() == lin(&s).flags() && germs.cor(&s).flags() == cor(&s).flags());
        t.record("complement of cor = lin of complement", eq(&cor(&s).complement(), &lin(&s.complement())));
        t.record(
            "cor S <= S <= lin S",
            sub(&cor(&s), &s) && sub(&s, &lin(&s)),
        );
        t.record("lin and cor idempotent", eq(&lin(&lin(&s)), &lin(&s)) && eq(&cor(&cor(&s)), &cor(&s)));
        let de_morgan = match (s.union(&other), s.complement().intersect(&other.complement())) {
            (Ok(u), Ok(i)) => eq(&u.complement(), &i),
            _ => false,
        };
        t.record("de morgan", de_morgan);
        t.record("orbit has at most 14 members", Orbit::enumerate(&s).len() <= 14);

        let c = random_convex_seed(&mut r, dim);
        t.record(
            "convex orbit within eight words",
            verify_convex_bound(&c).map(|rep| rep.verdict).unwrap_or(false),
        );
        if !cor(&c).is_empty() {
            let fa = apply_word(&word("f"), &c);
            t.record(
                "fgfgA = fA and fgfgfA = fA",
                eq(&apply_word(&word("fgfg"), &c), &fa) && eq(&apply_word(&word("fgfgf"), &c), &fa),
            );
        }

        let h = random_convex_hrep(&mut r, dim);
        let x = random_point(&mut r, dim);
        if !h.is_empty() {
            let flagged = hrep_to_flagged(&h).expect("small system");
            let ok = match cor_membership_certificate(&h, &x) {
                Ok(Membership::InCor) => cor_pointwise(&flagged, &x),
                Ok(Membership::Outside(cert)) => cert.checked && !cor_pointwise(&flagged, &x),
                Err(_) => false,
            };
            t.record("cor certificate agrees with germ oracle", ok);
        }
    }
    let mut summary = SelftestSummary {
        seeds,
        rng: seed,
        checks: t.0,
        verdict: "PASS",
    };
    if !summary.passed() {
        summary.verdict = "FAIL";
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_repeats() {
        let a = run_selftest(20, 3);
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_text(), run_selftest(20, 3).to_text());
    }
}
