//! Counting and table checks against brute-force oracles over partial maps.

mod common;

use common::{agree, binomial, domain, factorial, is_injective, map_of, then, Map};
use parcat_core::equivalence::restriction_to_local;
use parcat_core::generators::{
    gen_finset, gen_inverse_monoid, gen_par, gen_parset, preimage_closure,
};
use parcat_core::restriction::{
    compatible, is_restriction_monic, leq, partial_inverse, total_subcategory,
};

fn all_maps(n: usize, m: usize) -> Vec<Map> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                std::iter::once(None).chain((0..m).map(Some)).map(move |x| {
                    let mut f = prefix.clone();
                    f.push(x);
                    f
                })
            })
            .collect()
    })
}

#[test]
fn par_tables_match_partial_map_semantics() {
    for sizes in [&[2, 1][..], &[2, 2], &[3], &[0, 1, 2]] {
        let r = gen_par(sizes).unwrap();
        let c = &r.base;
        for (i, &n) in sizes.iter().enumerate() {
            for (j, &m) in sizes.iter().enumerate() {
                let hom = c.hom(parcat_core::ObjId(i), parcat_core::ObjId(j));
                assert_eq!(hom.len(), (m + 1).pow(n as u32));
            }
        }
        for f in c.morphisms() {
            assert_eq!(map_of(c, r.bar(f)), domain(&map_of(c, f)));
            for &g in c.outgoing(c.cod(f)) {
                let fg = c.compose(f, g).unwrap();
                assert_eq!(map_of(c, fg), then(&map_of(c, f), &map_of(c, g)));
            }
        }
    }
}

#[test]
fn inverse_monoid_sizes() {
    for n in 0..=3u64 {
        let r = gen_inverse_monoid(n as usize).unwrap();
        let expected: u64 = (0..=n).map(|k| binomial(n, k).pow(2) * factorial(k)).sum();
        assert_eq!(r.base.morphism_count() as u64, expected);
        for f in r.base.morphisms() {
            assert!(is_injective(&map_of(&r.base, f)));
        }
    }
}

#[test]
fn l_of_par_counts() {
    let sizes = [2usize, 1];
    let r = gen_par(&sizes).unwrap();
    let lx = restriction_to_local(&r).unwrap();
    // Objects are (A, subset of A); morphisms (A,a) -> (B,b) are maps
    // defined exactly on a with image inside b.
    let subsets: Vec<(usize, Vec<bool>)> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| {
            (0..1u32 << n).map(move |mask| (i, (0..n).map(|k| mask & (1 << k) != 0).collect()))
        })
        .collect();
    let mut morphisms = 0;
    for (a, da) in &subsets {
        for (b, db) in &subsets {
            morphisms += all_maps(sizes[*a], sizes[*b])
                .iter()
                .filter(|f| {
                    f.iter().zip(da).all(|(x, &d)| x.is_some() == d)
                        && f.iter().flatten().all(|&y| db[y])
                })
                .count();
        }
    }
    assert_eq!(lx.local.base.object_count(), subsets.len());
    assert_eq!(lx.local.base.morphism_count(), morphisms);
    assert_eq!((subsets.len(), morphisms), (6, 34));
}

#[test]
fn total_maps_and_monics() {
    let r = gen_par(&[2, 2]).unwrap();
    let c = &r.base;
    let tot = total_subcategory(&r).unwrap();
    let total_count = c
        .morphisms()
        .filter(|&f| map_of(c, f).iter().all(Option::is_some))
        .count();
    assert_eq!(tot.category.morphism_count(), total_count);
    for f in c.morphisms() {
        let m = map_of(c, f);
        let total = m.iter().all(Option::is_some);
        assert_eq!(c.is_monic(f), total && is_injective(&m), "{}", c.label(f));
        assert_eq!(
            is_restriction_monic(&r, f),
            is_injective(&m),
            "{}",
            c.label(f)
        );
    }
}

#[test]
fn compatibility_order_and_inverses() {
    let r = gen_par(&[2, 1]).unwrap();
    let c = &r.base;
    for f in c.morphisms() {
        let mf = map_of(c, f);
        for &g in c.hom(c.dom(f), c.cod(f)) {
            let mg = map_of(c, g);
            assert_eq!(compatible(&r, f, g).unwrap(), agree(&mf, &mg));
            let below = mf.iter().zip(&mg).all(|(x, y)| x.is_none() || x == y);
            assert_eq!(leq(&r, f, g).unwrap(), below);
        }
        let inv = partial_inverse(&r, f).unwrap();
        assert_eq!(inv.is_some(), is_injective(&mf));
        if let Some(g) = inv {
            let mg = map_of(c, g);
            assert_eq!(then(&mf, &mg), domain(&mf));
        }
    }
}

#[test]
fn finset_and_parset_sizes() {
    let family = vec![vec![0], vec![0, 1], vec![0, 2]];
    let closed = preimage_closure(&family);
    assert_eq!(
        closed,
        vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2]]
    );
    let fs = gen_finset(&family).unwrap();
    let functions: usize = closed
        .iter()
        .flat_map(|a| closed.iter().map(move |b| b.len().pow(a.len() as u32)))
        .sum();
    assert_eq!(fs.inclusion.base.morphism_count(), functions);
    assert_eq!(fs.inclusion.inclusions.len(), {
        let sub = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.contains(x));
        closed
            .iter()
            .flat_map(|a| closed.iter().filter(move |b| sub(a, b)))
            .count()
    });
    let ps = gen_parset(&[2]).unwrap();
    let masks = [0usize, 1, 1, 2];
    let functions: usize = masks
        .iter()
        .flat_map(|&u| masks.iter().map(move |&v| v.pow(u as u32)))
        .sum();
    assert_eq!(ps.local.base.morphism_count(), functions);
}
