use proptest::prelude::*;

use kura::gen::{random_convex_hrep, random_line, random_point, random_semilinear, rng};
use kura::operators::{cor, cor_pointwise, is_convex, lin, lin_pointwise, midpoint_violation, topo_closure, topo_interior};
use kura::separation::{
    cor_hrep, cor_membership_certificate, hrep_from_flagged, hrep_to_flagged, lin_hrep, separate,
    verify_separator, ConvexHRep, LinearFunctional, Membership, Separation, SeparationCertificate,
    CertificateKind,
};
use kura::{FlaggedSet, Hyperplane};

fn sets(seed: u64, dim: usize) -> (FlaggedSet, FlaggedSet) {
    let mut r = rng(seed);
    (random_semilinear(&mut r, dim), random_semilinear(&mut r, dim))
}

fn eq(a: &FlaggedSet, b: &FlaggedSet) -> bool {
    a.equal(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn refinement_preserves_sets_and_operators(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, _) = sets(seed, dim);
        let mut r = rng(seed ^ 0x5eed);
        let extra: Vec<Hyperplane> = (0..3).map(|_| random_line(&mut r, dim)).collect();
        let fine = s.refine_with(&extra).unwrap();
        prop_assert!(eq(&fine, &s));
        prop_assert!(eq(&lin(&fine), &lin(&s)));
        prop_assert!(eq(&cor(&fine), &cor(&s)));
        for _ in 0..20 {
            let x = random_point(&mut r, dim);
            prop_assert_eq!(fine.member(&x), s.member(&x));
        }
    }

    #[test]
    fn boolean_laws(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, t) = sets(seed, dim);
        let u = s.union(&t).unwrap();
        let i = s.intersect(&t).unwrap();
        prop_assert!(eq(&u.complement(), &s.complement().intersect(&t.complement()).unwrap()));
        prop_assert!(eq(&i.complement(), &s.complement().union(&t.complement()).unwrap()));
        prop_assert!(eq(&s.difference(&t).unwrap(), &s.intersect(&t.complement()).unwrap()));
        prop_assert!(eq(&s.complement().complement(), &s));
        let mut r = rng(seed);
        for _ in 0..20 {
            let x = random_point(&mut r, dim);
            prop_assert_eq!(u.member(&x), s.member(&x) || t.member(&x));
            prop_assert_eq!(i.member(&x), s.member(&x) && t.member(&x));
        }
    }

    #[test]
    fn representatives_locate_their_faces(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, _) = sets(seed, dim);
        let arr = s.arrangement();
        for (id, face) in arr.faces().iter().enumerate() {
            prop_assert_eq!(arr.locate(&face.rep), id);
            prop_assert_eq!(s.member(&face.rep), s.flag(id));
        }
        prop_assert_eq!(arr.vertex_count() + arr.edge_count() + arr.cell_count(), arr.len());
    }

    #[test]
    fn operators_are_extensive_monotone_idempotent(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, t) = sets(seed, dim);
        let u = s.union(&t).unwrap();
        prop_assert!(cor(&s).is_subset(&s).unwrap());
        prop_assert!(s.is_subset(&lin(&s)).unwrap());
        prop_assert!(lin(&s).is_subset(&lin(&u)).unwrap());
        prop_assert!(cor(&s).is_subset(&cor(&u)).unwrap());
        prop_assert!(eq(&lin(&lin(&s)), &lin(&s)));
        prop_assert!(eq(&cor(&cor(&s)), &cor(&s)));
    }

    #[test]
    fn engine_matches_pointwise_oracle(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, _) = sets(seed, dim);
        let (l, c) = (lin(&s), cor(&s));
        let arr = s.arrangement();
        for face in arr.faces() {
            prop_assert_eq!(l.member(&face.rep), lin_pointwise(&s, &face.rep));
            prop_assert_eq!(c.member(&face.rep), cor_pointwise(&s, &face.rep));
        }
        let mut r = rng(seed.wrapping_add(1));
        for _ in 0..20 {
            let x = random_point(&mut r, dim);
            prop_assert_eq!(l.member(&x), lin_pointwise(&s, &x));
            prop_assert_eq!(c.member(&x), cor_pointwise(&s, &x));
        }
    }

    #[test]
    fn algebraic_and_topological_operators_coincide(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, _) = sets(seed, dim);
        let (l, tc) = (lin(&s), topo_closure(&s));
        let (c, ti) = (cor(&s), topo_interior(&s));
        prop_assert_eq!(l.flags(), tc.flags());
        prop_assert_eq!(c.flags(), ti.flags());
        prop_assert!(eq(&cor(&s).complement(), &lin(&s.complement())));
    }

    #[test]
    fn convexity_agrees_with_midpoint_sampling(seed in any::<u64>(), dim in 1usize..=2) {
        let (s, _) = sets(seed, dim);
        let mut r = rng(seed);
        if let Some((p, q)) = midpoint_violation(&s, &mut r, 20) {
            prop_assert!(!is_convex(&s), "midpoint of {:?} and {:?} escapes", p, q);
        }
        let c = hrep_to_flagged(&random_convex_hrep(&mut r, dim)).unwrap();
        prop_assert!(is_convex(&c));
        prop_assert!(midpoint_violation(&c, &mut r, 20).is_none());
    }

    #[test]
    fn hrep_operators_commute_with_conversion(seed in any::<u64>(), dim in 1usize..=2) {
        let h = random_convex_hrep(&mut rng(seed), dim);
        let f = hrep_to_flagged(&h).unwrap();
        prop_assert!(eq(&hrep_to_flagged(&cor_hrep(&h)).unwrap(), &cor(&f)));
        prop_assert!(eq(&hrep_to_flagged(&lin_hrep(&h)).unwrap(), &lin(&f)));
        prop_assert_eq!(h.is_empty(), f.is_empty());
        let mut r = rng(seed);
        for _ in 0..20 {
            let x = random_point(&mut r, dim);
            prop_assert_eq!(h.contains(&x), f.member(&x));
        }
        let back = hrep_from_flagged(&f).unwrap();
        prop_assert!(eq(&hrep_to_flagged(&back).unwrap(), &f));
    }

    #[test]
    fn separation_biconditional(seed in any::<u64>(), dim in 1usize..=2) {
        let mut r = rng(seed);
        let s = random_convex_hrep(&mut r, dim);
        let t = random_convex_hrep(&mut r, dim);
        prop_assume!(!s.is_empty() && !t.is_empty() && !cor_hrep(&s).is_empty());
        let meets = !cor(&hrep_to_flagged(&s).unwrap())
            .intersect(&hrep_to_flagged(&t).unwrap())
            .unwrap()
            .is_empty();
        match separate(&s, &t).unwrap() {
            Separation::Intersects(p) => {
                prop_assert!(meets);
                prop_assert!(cor_hrep(&s).contains(&p) && t.contains(&p));
            }
            Separation::Separated(cert) => {
                prop_assert!(!meets);
                prop_assert!(cert.checked);
                prop_assert!(verify_separator(&s, &t, &cert).unwrap());
            }
        }
    }

    #[test]
    fn membership_biconditional(seed in any::<u64>(), dim in 1usize..=2) {
        let mut r = rng(seed);
        let s = random_convex_hrep(&mut r, dim);
        prop_assume!(!s.is_empty());
        let x = random_point(&mut r, dim);
        let in_cor = cor_pointwise(&hrep_to_flagged(&s).unwrap(), &x);
        let t = ConvexHRep::point(&x).unwrap();
        match cor_membership_certificate(&s, &x).unwrap() {
            Membership::InCor => {
                prop_assert!(in_cor);
                // No constraint-derived functional may certify a point of the interior.
                for c in s.constraints() {
                    for alpha in [c.b.clone(), kura::rational::dot(&c.a, &x)] {
                        let cert = SeparationCertificate {
                            functional: LinearFunctional { l: c.a.clone(), alpha },
                            kind: CertificateKind::CorPoint,
                            checked: false,
                        };
                        prop_assert!(!verify_separator(&s, &t, &cert).unwrap());
                    }
                }
            }
            Membership::Outside(cert) => {
                prop_assert!(!in_cor);
                prop_assert!(verify_separator(&s, &t, &cert).unwrap());
            }
        }
    }
}
