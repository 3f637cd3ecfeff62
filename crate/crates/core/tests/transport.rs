//! Properties carried across the L and R constructions, checked exhaustively
//! on small instances.

mod common;

use parcat_core::equivalence::{
    certify_isomorphism, local_to_restriction, restriction_to_local, LConstruction,
};
use parcat_core::fincat::validate_category;
use parcat_core::generators::{gen_inverse_monoid, gen_par, gen_parset};
use parcat_core::inclusion::{inclusion_from_local, maximal_subgroupoid, validate_inclusion};
use parcat_core::local::{
    is_local_isomorphism, non_split_objects, object_leq, LocalOrder, LocalStructure,
};
use parcat_core::restriction::{
    compatible, is_restriction_idempotent, is_restriction_monic, is_split, join_of_family,
    partial_inverse, restriction_idempotents, split_completion, validate_restriction,
    RestrictionStructure,
};
use parcat_core::{MorId, ObjId};

fn restriction_examples() -> Vec<RestrictionStructure> {
    let par = gen_par(&[2, 1]).unwrap();
    vec![
        par.clone(),
        gen_par(&[1, 1]).unwrap(),
        gen_inverse_monoid(2).unwrap(),
        split_completion(&par).unwrap().structure,
        local_to_restriction(&gen_parset(&[2]).unwrap().local)
            .unwrap()
            .restriction,
    ]
}

fn local_examples() -> Vec<LocalStructure> {
    vec![
        gen_parset(&[2]).unwrap().local,
        gen_parset(&[1, 1]).unwrap().local,
        restriction_to_local(&gen_par(&[2, 1]).unwrap())
            .unwrap()
            .local,
        restriction_to_local(&gen_inverse_monoid(2).unwrap())
            .unwrap()
            .local,
    ]
}

/// The L-morphism `(A, bar f) -> (B, id)` carrying `f`.
fn lift(r: &RestrictionStructure, lx: &LConstruction, f: MorId) -> MorId {
    let c = &r.base;
    let (a, b) = (c.dom(f), c.cod(f));
    let dom = lx.object_of(a, r.bar(f)).unwrap();
    let cod = lx.object_of(b, c.identity(b)).unwrap();
    lx.morphism_of(dom, cod, f).unwrap()
}

#[test]
fn compatibility_is_not_transitive_in_par() {
    let r = gen_par(&[2, 1]).unwrap();
    let c = &r.base;
    let hom = c.hom(ObjId(0), ObjId(0));
    let witness = hom.iter().find_map(|&f| {
        hom.iter().find_map(|&g| {
            hom.iter()
                .find(|&&h| {
                    compatible(&r, f, g).unwrap()
                        && compatible(&r, g, h).unwrap()
                        && !compatible(&r, f, h).unwrap()
                })
                .map(|&h| (f, g, h))
        })
    });
    let (f, g, h) = witness.expect("a non-transitive triple");
    let (mf, mg, mh) = (
        common::map_of(c, f),
        common::map_of(c, g),
        common::map_of(c, h),
    );
    assert!(common::agree(&mf, &mg) && common::agree(&mg, &mh) && !common::agree(&mf, &mh));
}

#[test]
fn constructions_validate() {
    for r in restriction_examples() {
        let lx = restriction_to_local(&r).unwrap();
        assert!(parcat_core::local::validate_local(&lx.local).is_valid());
        let sc = split_completion(&r).unwrap().structure;
        assert!(validate_restriction(&sc).is_valid());
        assert!(is_split(&sc).is_split());
    }
    for lc in local_examples() {
        let rc = local_to_restriction(&lc).unwrap();
        // Associativity and units of span composition.
        assert!(validate_category(&rc.restriction.base).is_valid());
        assert!(validate_restriction(&rc.restriction).is_valid());
    }
}

#[test]
fn monics_transport() {
    for r in restriction_examples() {
        let lx = restriction_to_local(&r).unwrap();
        let c = &lx.local.base;
        for f in c.morphisms() {
            assert_eq!(
                c.is_monic(f),
                is_restriction_monic(&r, lx.morphisms[f.index()]),
                "{}",
                c.label(f)
            );
        }
    }
    for lc in local_examples() {
        let rc = local_to_restriction(&lc).unwrap();
        let c = &lc.base;
        for f in c.morphisms() {
            let span = c.compose(f, lc.eta(c.cod(f))).unwrap();
            let class = rc.class_of(&lc, c.dom(f), span).unwrap();
            assert_eq!(c.is_monic(f), is_restriction_monic(&rc.restriction, class));
        }
    }
}

#[test]
fn splitting_transports() {
    for r in restriction_examples() {
        let lx = restriction_to_local(&r).unwrap();
        let unsplit = is_split(&r).unsplit;
        let stuck = non_split_objects(&lx.local);
        for a in r.base.objects() {
            for e in restriction_idempotents(&r, a) {
                let object = lx.object_of(a, e).unwrap();
                assert_eq!(unsplit.contains(&e), stuck.contains(&object));
            }
        }
    }
    for lc in local_examples() {
        let rc = local_to_restriction(&lc).unwrap();
        let unsplit = is_split(&rc.restriction).unsplit;
        let stuck = non_split_objects(&lc);
        for u in lc.base.objects() {
            let class = rc.class_of(&lc, u, lc.eta(u)).unwrap();
            assert!(is_restriction_idempotent(&rc.restriction, class));
            assert_eq!(stuck.contains(&u), unsplit.contains(&class));
        }
    }
}

#[test]
fn isomorphisms_transport() {
    for r in restriction_examples() {
        let lx = restriction_to_local(&r).unwrap();
        for f in lx.local.base.morphisms() {
            let base = lx.morphisms[f.index()];
            assert_eq!(
                is_local_isomorphism(&lx.local, f).unwrap(),
                partial_inverse(&r, base).unwrap().is_some()
            );
        }
    }
    for lc in local_examples() {
        let rc = local_to_restriction(&lc).unwrap();
        let c = &lc.base;
        for f in c.morphisms() {
            let span = c.compose(f, lc.eta(c.cod(f))).unwrap();
            let class = rc.class_of(&lc, c.dom(f), span).unwrap();
            assert_eq!(
                is_local_isomorphism(&lc, f).unwrap(),
                partial_inverse(&rc.restriction, class).unwrap().is_some()
            );
        }
    }
}

#[test]
fn joins_transport() {
    for r in restriction_examples().into_iter().take(3) {
        let lx = restriction_to_local(&r).unwrap();
        let order = LocalOrder::new(&lx.local).unwrap();
        let c = &r.base;
        for a in c.objects() {
            for b in c.objects() {
                let e = lx.object_of(a, c.identity(a)).unwrap();
                let n = lx.object_of(b, c.identity(b)).unwrap();
                for family in common::subsets(c.hom(a, b)) {
                    if !family
                        .iter()
                        .all(|&f| family.iter().all(|&g| compatible(&r, f, g).unwrap()))
                    {
                        continue;
                    }
                    let lifted: Vec<MorId> = family.iter().map(|&f| lift(&r, &lx, f)).collect();
                    let here = join_of_family(&r, (a, b), &family).unwrap();
                    let there = order.join(e, n, &lifted).unwrap();
                    assert_eq!(here.map(|j| lift(&r, &lx, j)), there);
                }
            }
        }
    }
}

#[test]
fn object_order_is_antisymmetric_up_to_iso() {
    for lc in local_examples() {
        let c = &lc.base;
        for m in c.objects() {
            assert!(object_leq(&lc, m, m).unwrap().is_some());
            for n in c.objects() {
                if object_leq(&lc, m, n).unwrap().is_some()
                    && object_leq(&lc, n, m).unwrap().is_some()
                {
                    assert!(!c.find_isomorphisms(m, n).is_empty());
                }
            }
        }
    }
}

#[test]
fn inclusion_order_and_groupoids() {
    for lc in local_examples() {
        let n = inclusion_from_local(&lc);
        assert!(validate_inclusion(&n).is_valid());
        let c = &n.base;
        let le = |u: ObjId, a: ObjId| n.member_between(u, a).is_some();
        for u in c.objects() {
            assert!(le(u, u));
            for a in c.objects() {
                if le(u, a) && le(a, u) {
                    assert_eq!(u, a);
                }
                for b in c.objects() {
                    assert!(!(le(u, a) && le(a, b)) || le(u, b));
                }
            }
        }
        let g = maximal_subgroupoid(&n).unwrap().category;
        assert!(validate_category(&g).is_valid());
        assert!(g.morphisms().all(|f| g.is_iso(f)));
    }
}

#[test]
fn r_of_parset_is_par() {
    // Morphisms of R[parset] are spans whose right leg is a map of the
    // universe defined exactly on the apex subset.
    for universes in [&[2][..], &[1, 2]] {
        let rc = local_to_restriction(&gen_parset(universes).unwrap().local).unwrap();
        let par = gen_par(universes).unwrap();
        let (src, dst) = (&rc.restriction.base, &par.base);
        let omap: Vec<ObjId> = src.objects().map(|o| ObjId(o.index())).collect();
        let mmap: Vec<MorId> = src
            .morphisms()
            .map(|f| {
                let label = src.label(f);
                let map = common::parse_map(&label[label.rfind('[').unwrap()..]);
                dst.hom(omap[src.dom(f).index()], omap[src.cod(f).index()])
                    .iter()
                    .copied()
                    .find(|&g| common::map_of(dst, g) == map)
                    .unwrap()
            })
            .collect();
        let cert = certify_isomorphism(src, dst, omap, mmap.clone()).unwrap();
        assert_eq!(cert.morphism_map, mmap);
        for f in src.morphisms() {
            assert_eq!(
                mmap[rc.restriction.bar(f).index()],
                par.bar(mmap[f.index()])
            );
        }
    }
}

#[test]
fn inverse_monoids_transport() {
    for k in 0..=3 {
        let lx = restriction_to_local(&gen_inverse_monoid(k).unwrap()).unwrap();
        assert!(parcat_core::local::is_inverse_local(&lx.local).unwrap());
        let n = inclusion_from_local(&lx.local);
        assert!(parcat_core::inclusion::is_inverse_inclusion(&n));
    }
}
