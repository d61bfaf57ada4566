//! Seeded generators for random test inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::arrangement::Arrangement;
use crate::geometry::{Hyperplane, Space};
use crate::rational::{dot, int, ratio, Point, Rational};
use crate::separation::{hrep_to_flagged, ConvexHRep, HalfSpace};
use crate::set::FlaggedSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p/q| ≤ bound` and `q ∈ {1, 2}`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let q = rng.gen_range(1..=2);
    ratio(rng.gen_range(-bound * q..=bound * q), q)
}

pub fn random_point<R: Rng>(rng: &mut R, dim: usize) -> Point {
    (0..dim).map(|_| small_rational(rng, 3)).collect()
}

fn random_normal<R: Rng>(rng: &mut R, dim: usize, range: i64) -> Vec<Rational> {
    loop {
        let a: Vec<Rational> = (0..dim).map(|_| int(rng.gen_range(-range..=range))).collect();
        if a.iter().any(|v| *v != int(0)) {
            return a;
        }
    }
}

pub fn random_line<R: Rng>(rng: &mut R, dim: usize) -> Hyperplane {
    let a = random_normal(rng, dim, 2);
    Hyperplane::new(&a, &small_rational(rng, 2)).expect("nonzero normal")
}

/// Union of random faces of an arrangement of 1 to 5 random lines.
pub fn random_semilinear<R: Rng>(rng: &mut R, dim: usize) -> FlaggedSet {
    let space = Space::new(dim).expect("dimension 1 or 2");
    let n = rng.gen_range(1..=5);
    let lines: Vec<Hyperplane> = (0..n).map(|_| random_line(rng, dim)).collect();
    let arr = Arc::new(Arrangement::build(lines, space).expect("few lines"));
    let flags = (0..arr.len()).map(|_| rng.gen_bool(0.5)).collect();
    FlaggedSet::from_flags(arr, flags)
}

/// Random convex constraint system. In dimension 1: intervals with mixed
/// ends, points, rays, the empty set and the whole line. In dimension 2: up to
/// six half-planes with mixed strictness around a random center, sometimes
/// cut down to a segment, ray, line or point by equalities.
pub fn random_convex_hrep<R: Rng>(rng: &mut R, dim: usize) -> ConvexHRep {
    let space = Space::new(dim).expect("dimension 1 or 2");
    let le = |a: i64, b: Rational, strict: bool| HalfSpace { a: vec![int(a)], b, strict };
    if dim == 1 {
        let lo = small_rational(rng, 3);
        let hi = &lo + ratio(rng.gen_range(1..=8), 2);
        let cons = match rng.gen_range(0..10) {
            0 => vec![le(1, lo.clone(), false), le(-1, -lo, false)],
            1 => vec![le(1, lo, rng.gen_bool(0.5))],
            2 => vec![le(-1, -lo, rng.gen_bool(0.5))],
            3 => return ConvexHRep::canonical_empty(space),
            4 => return ConvexHRep::whole(space),
            _ => vec![le(-1, -lo, rng.gen_bool(0.5)), le(1, hi, rng.gen_bool(0.5))],
        };
        return ConvexHRep::new(space, cons).expect("valid");
    }
    let center = random_point(rng, 2);
    let slacks = [ratio(0, 1), ratio(1, 2), int(1), int(2)];
    let n = rng.gen_range(0..=6);
    let mut cons = Vec::new();
    for _ in 0..n {
        let a = random_normal(rng, 2, 3);
        let b = dot(&a, &center) + slacks.choose(rng).expect("nonempty").clone();
        cons.push(HalfSpace { a, b, strict: rng.gen_bool(0.4) });
    }
    let eqs = match rng.gen_range(0..20) {
        0..=2 => 1,
        3 => 2,
        _ => 0,
    };
    for _ in 0..eqs.min(6 - cons.len().min(5)) {
        let a = random_normal(rng, 2, 3);
        let b = dot(&a, &center);
        cons.push(HalfSpace { a: a.iter().map(|v| -v).collect(), b: -b.clone(), strict: false });
        cons.push(HalfSpace { a, b, strict: false });
    }
    ConvexHRep::new(space, cons).expect("valid")
}

pub fn random_convex_seed<R: Rng>(rng: &mut R, dim: usize) -> FlaggedSet {
    hrep_to_flagged(&random_convex_hrep(rng, dim)).expect("small system")
}

/// Dimension 1 or 2 with equal probability.
pub fn random_dim<R: Rng>(rng: &mut R) -> usize {
    rng.gen_range(1..=2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::is_convex;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_semilinear(&mut rng(7), 2);
        let b = random_semilinear(&mut rng(7), 2);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn convex_seeds_are_convex() {
        let mut r = rng(1);
        for _ in 0..200 {
            let d = random_dim(&mut r);
            assert!(is_convex(&random_convex_seed(&mut r, d)));
        }
    }
}
