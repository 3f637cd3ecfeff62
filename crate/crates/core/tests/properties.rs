//! Randomized invariants over generated structures.

mod common;

use std::sync::OnceLock;

use parcat_core::equivalence::{
    chain_certificate, local_to_restriction, restriction_to_local, roundtrip_local,
    roundtrip_restriction,
};
use parcat_core::generators::{
    apply_flip, gen_finset, gen_inverse_monoid, gen_par, gen_parset, gen_trivial, random_flips,
    random_group_category,
};
use parcat_core::inclusion::{inclusion_from_partial, validate_inclusion};
use parcat_core::partial::{canonical_monic, contraction_is_pullback, PartialStructure};
use parcat_core::restriction::{
    compatible, join_of_family, leq, split_completion, validate_restriction, RestrictionStructure,
};
use parcat_core::{FinCategory, Flavor, MorId, ObjId, Structured};
use proptest::prelude::*;

fn restrictions() -> &'static [RestrictionStructure] {
    static CORPUS: OnceLock<Vec<RestrictionStructure>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let par = gen_par(&[2, 1]).unwrap();
        vec![
            par.clone(),
            gen_par(&[1, 1, 0]).unwrap(),
            gen_inverse_monoid(2).unwrap(),
            split_completion(&par).unwrap().structure,
            local_to_restriction(&gen_parset(&[2]).unwrap().local)
                .unwrap()
                .restriction,
            RestrictionStructure::trivial(random_group_category(7).unwrap()),
        ]
    })
}

fn partials() -> &'static [PartialStructure] {
    static CORPUS: OnceLock<Vec<PartialStructure>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        vec![
            gen_parset(&[2]).unwrap().partial,
            gen_parset(&[1, 1]).unwrap().partial,
            gen_finset(&[vec![], vec![0], vec![1], vec![0, 1]])
                .unwrap()
                .partial,
            gen_finset(&[vec![0], vec![0, 1], vec![0, 2]])
                .unwrap()
                .partial,
        ]
    })
}

fn categories() -> Vec<&'static FinCategory> {
    restrictions()
        .iter()
        .map(|r| &r.base)
        .chain(partials().iter().map(|p| &p.base))
        .collect()
}

fn pick<T: Copy>(items: &[T], k: usize) -> Option<T> {
    (!items.is_empty()).then(|| items[k % items.len()])
}

fn mor(c: &FinCategory, k: usize) -> MorId {
    MorId(k % c.morphism_count())
}

fn obj(c: &FinCategory, k: usize) -> ObjId {
    ObjId(k % c.object_count())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monics_compose(i in 0usize..10, a in any::<usize>(), b in any::<usize>()) {
        let cats = categories();
        let c = cats[i % cats.len()];
        let f = mor(c, a);
        if let Some(g) = pick(c.outgoing(c.cod(f)), b) {
            if c.is_monic(f) && c.is_monic(g) {
                prop_assert!(c.is_monic(c.compose(f, g).unwrap()));
            }
        }
    }

    #[test]
    fn pullbacks_are_universal(i in 0usize..10, a in any::<usize>(), b in any::<usize>()) {
        let cats = categories();
        let c = cats[i % cats.len()];
        let f = mor(c, a);
        let m = pick(c.incoming(c.cod(f)), b).unwrap();
        if let Some(w) = c.find_pullback(f, m).unwrap() {
            for cone in c.commuting_cones(f, m) {
                let mediating = c
                    .hom(cone.apex, w.apex)
                    .iter()
                    .filter(|&&u| {
                        c.compose(u, w.proj_left) == Some(cone.proj_left)
                            && c.compose(u, w.proj_right) == Some(cone.proj_right)
                    })
                    .count();
                prop_assert_eq!(mediating, 1);
            }
        }
    }

    #[test]
    fn isomorphism_is_transitive(i in 0usize..10, a in any::<usize>(), b in any::<usize>(), d in any::<usize>()) {
        let cats = categories();
        let c = cats[i % cats.len()];
        let (x, y, z) = (obj(c, a), obj(c, b), obj(c, d));
        if !c.find_isomorphisms(x, y).is_empty() && !c.find_isomorphisms(y, z).is_empty() {
            prop_assert!(!c.find_isomorphisms(x, z).is_empty());
        }
    }

    #[test]
    fn bar_laws(i in 0usize..6, a in any::<usize>(), b in any::<usize>()) {
        let r = &restrictions()[i % restrictions().len()];
        let c = &r.base;
        let f = mor(c, a);
        let bf = r.bar(f);
        prop_assert_eq!(r.bar(bf), bf);
        prop_assert_eq!(c.compose(bf, bf), Some(bf));
        prop_assert_eq!(c.compose(bf, f), Some(f));
        if c.is_monic(f) {
            prop_assert_eq!(bf, c.identity(c.dom(f)));
        }
        if let Some(g) = pick(c.outgoing(c.cod(f)), b) {
            let fg = c.compose(f, g).unwrap();
            prop_assert_eq!(r.bar(fg), r.bar(c.compose(f, r.bar(g)).unwrap()));
        }
    }

    #[test]
    fn compatibility_and_order(i in 0usize..6, a in any::<usize>(), b in any::<usize>(), d in any::<usize>()) {
        let r = &restrictions()[i % restrictions().len()];
        let c = &r.base;
        let f = mor(c, a);
        let hom = c.hom(c.dom(f), c.cod(f));
        let (g, h) = (pick(hom, b).unwrap(), pick(hom, d).unwrap());
        prop_assert!(compatible(r, f, f).unwrap());
        prop_assert_eq!(compatible(r, f, g).unwrap(), compatible(r, g, f).unwrap());
        prop_assert!(leq(r, f, f).unwrap());
        if leq(r, f, g).unwrap() && leq(r, g, f).unwrap() {
            prop_assert_eq!(f, g);
        }
        if leq(r, f, g).unwrap() && leq(r, g, h).unwrap() {
            prop_assert!(leq(r, f, h).unwrap());
        }
    }

    #[test]
    fn joins_are_least_upper_bounds(i in 0usize..3, a in any::<usize>(), mask in any::<u16>()) {
        let r = &restrictions()[i];
        let c = &r.base;
        let f = mor(c, a);
        let (x, y) = (c.dom(f), c.cod(f));
        let hom = c.hom(x, y);
        let family: Vec<MorId> = hom
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << (k % 16)) != 0)
            .map(|(_, &g)| g)
            .collect();
        let pairwise = family.iter().all(|&p| family.iter().all(|&q| compatible(r, p, q).unwrap()));
        prop_assume!(pairwise);
        let upper: Vec<MorId> = hom
            .iter()
            .copied()
            .filter(|&h| family.iter().all(|&p| leq(r, p, h).unwrap()))
            .collect();
        let least = upper
            .iter()
            .copied()
            .find(|&j| upper.iter().all(|&h| leq(r, j, h).unwrap()));
        let join = join_of_family(r, (x, y), &family).unwrap();
        prop_assert_eq!(join, least);
        // Par has every join; the inverse monoid lacks non-injective unions.
        if i < 2 {
            prop_assert!(join.is_some());
        }
    }

    #[test]
    fn restriction_is_composition_with_canonical_monic(i in 0usize..4, a in any::<usize>(), b in any::<usize>()) {
        let p = &partials()[i];
        let c = &p.base;
        let f = mor(c, a);
        let x = c.dom(f);
        prop_assert_eq!(p.restrict_to(c.identity(x), x), Some(c.identity(x)));
        if let Some(u) = pick(&p.below(x), b) {
            let m = canonical_monic(p, u, x).unwrap();
            prop_assert_eq!(p.restrict_to(f, u), c.compose(m, f));
        }
        for v in p.below(c.cod(f)) {
            if p.contract_to(f, v).is_some() {
                prop_assert!(contraction_is_pullback(p, f, v).unwrap());
            }
        }
    }

    #[test]
    fn random_par_round_trips(sizes in prop::collection::vec(0usize..=2, 1..=2)) {
        let r = gen_par(&sizes).unwrap();
        prop_assert!(validate_restriction(&r).is_valid());
        let lx = restriction_to_local(&r).unwrap();
        prop_assert!(parcat_core::local::validate_local(&lx.local).is_valid());
        let cert = roundtrip_restriction(&r).unwrap();
        prop_assert_eq!(cert.object_map.len(), sizes.len());
        roundtrip_local(&lx.local).unwrap();
    }

    #[test]
    fn random_parsets_are_consistent(universes in prop::collection::vec(0usize..=2, 1..=2)) {
        let ps = gen_parset(&universes).unwrap();
        for s in [
            Structured::Local(ps.local.clone()),
            Structured::Inclusion(ps.inclusion.clone()),
            Structured::Partial(ps.partial.clone()),
        ] {
            prop_assert!(s.validate().is_valid());
        }
        prop_assert!(validate_inclusion(&inclusion_from_partial(&ps.partial).unwrap()).is_valid());
        prop_assert!(chain_certificate(&Structured::Local(ps.local)).all_certified());
    }

    #[test]
    fn mutations_of_trivial_structures_are_caught(seed in 0u64..1000, flavor in 0usize..4) {
        let c = random_group_category(seed).unwrap();
        let s = gen_trivial(c, Flavor::ALL[flavor]).unwrap();
        prop_assert!(s.validate().is_valid());
        let flips = random_flips(&s, 5, seed);
        prop_assert_eq!(&flips, &random_flips(&s, 5, seed));
        let prefix = s.flavor().axiom_prefix();
        for flip in flips {
            let report = apply_flip(&s, &flip).validate();
            prop_assert!(
                report.violations.iter().any(|v| v.flavor() == prefix),
                "{} not caught", flip.description
            );
        }
    }
}
