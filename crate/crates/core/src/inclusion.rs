//! Inclusion systems: distinguished monics closed under composition and
//! stable under pullback, and their translations to partial and local
//! structures.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCategory, MorId, ObjId, PullbackWitness, Subcategory};
use crate::local::LocalStructure;
use crate::partial::{canonical_monic, Boundedness, PartialStructure};
use crate::report::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionSystem {
    pub base: FinCategory,
    pub inclusions: BTreeSet<MorId>,
}

impl InclusionSystem {
    pub fn new(base: FinCategory, inclusions: BTreeSet<MorId>) -> Result<Self> {
        let dangling: Vec<Violation> = inclusions
            .iter()
            .filter(|m| !base.contains_morphism(**m))
            .map(|m| Violation::new("I.structure", format!("member {m} is a missing morphism")))
            .collect();
        if !dangling.is_empty() {
            return Err(Error::Structural(dangling));
        }
        Ok(InclusionSystem { base, inclusions })
    }

    /// Identities only.
    pub fn trivial(base: FinCategory) -> Self {
        let inclusions = base.objects().map(|a| base.identity(a)).collect();
        InclusionSystem { base, inclusions }
    }

    pub fn is_member(&self, m: MorId) -> bool {
        self.inclusions.contains(&m)
    }

    /// The first member `u -> a`, if any.
    pub fn member_between(&self, u: ObjId, a: ObjId) -> Option<MorId> {
        self.base
            .hom(u, a)
            .iter()
            .copied()
            .find(|&m| self.is_member(m))
    }

    fn member_pullbacks(&self, f: MorId, m: MorId) -> Result<Vec<PullbackWitness>> {
        Ok(self
            .base
            .pullbacks(f, m)?
            .into_iter()
            .filter(|w| self.is_member(w.proj_left))
            .collect())
    }
}

pub fn validate_inclusion(n: &InclusionSystem) -> ValidationReport {
    let c = &n.base;
    let mut report = validate_category(c);
    if !report.is_valid() {
        return report;
    }
    for a in c.objects() {
        let id = c.identity(a);
        if !n.is_member(id) {
            report.push(
                Violation::new(
                    "I.1",
                    format!("identity of {} is not a member", c.object_label(a)),
                )
                .with_objects([a])
                .with_morphisms([id]),
            );
        }
    }
    let members: Vec<MorId> = n.inclusions.iter().copied().collect();
    for (i, &m) in members.iter().enumerate() {
        if !c.is_monic(m) {
            report.push(
                Violation::new("I.2", format!("member {} is not monic", c.label(m)))
                    .with_morphisms([m]),
            );
        }
        for &m2 in &members[i + 1..] {
            if c.parallel(m, m2) {
                report.push(
                    Violation::new(
                        "I.3",
                        format!(
                            "distinct parallel members {} and {}",
                            c.label(m),
                            c.label(m2)
                        ),
                    )
                    .with_morphisms([m, m2]),
                );
            }
        }
        for &m2 in c.outgoing(c.cod(m)).iter().filter(|&&x| n.is_member(x)) {
            match c.compose(m, m2) {
                Some(h) if n.is_member(h) => {}
                h => report.push(
                    Violation::new(
                        "I.4",
                        format!(
                            "composite of members {} ; {} is not a member",
                            c.label(m),
                            c.label(m2)
                        ),
                    )
                    .with_morphisms([m, m2])
                    .with_morphisms(h),
                ),
            }
        }
    }
    for &m in &members {
        for &f in c.incoming(c.cod(m)) {
            let all = match c.pullbacks(f, m) {
                Ok(all) => all,
                Err(e) => {
                    report.push(Violation::new("I.5", e.to_string()).with_morphisms([m, f]));
                    continue;
                }
            };
            if !all.iter().any(|w| n.is_member(w.proj_left)) {
                report.push(
                    Violation::new(
                        "I.5",
                        format!(
                            "no pullback of {} along {} has a member as its leg",
                            c.label(m),
                            c.label(f)
                        ),
                    )
                    .with_objects(all.iter().map(|w| w.apex))
                    .with_morphisms([m, f])
                    .with_morphisms(all.iter().map(|w| w.proj_left)),
                );
            }
        }
    }
    report
}

/// Among member-leg pullbacks of `m` along `f`, prefer an identity leg,
/// then an identity top, then the least witness.
fn chosen_contraction(n: &InclusionSystem, f: MorId, m: MorId) -> Result<PullbackWitness> {
    let c = &n.base;
    let found = n.member_pullbacks(f, m)?;
    found
        .iter()
        .find(|w| c.is_identity(w.proj_left))
        .or_else(|| found.iter().find(|w| c.is_identity(w.proj_right)))
        .or_else(|| found.first())
        .copied()
        .ok_or_else(|| {
            Error::Precondition(format!(
                "no member-leg pullback of {} along {}",
                c.label(m),
                c.label(f)
            ))
        })
}

/// `U ≤ A` iff a member `U -> A` exists; restriction precomposes with it;
/// contraction pulls it back.
pub fn partial_from_inclusion(n: &InclusionSystem) -> Result<PartialStructure> {
    let c = &n.base;
    let leq: BTreeSet<(ObjId, ObjId)> =
        n.inclusions.iter().map(|&m| (c.dom(m), c.cod(m))).collect();
    let mut restrict = BTreeMap::new();
    let mut contract = BTreeMap::new();
    for f in c.morphisms() {
        for &m in c.incoming(c.dom(f)).iter().filter(|&&m| n.is_member(m)) {
            let r = c
                .compose(m, f)
                .ok_or_else(|| Error::Precondition("composition table is incomplete".into()))?;
            restrict.insert((f, c.dom(m)), r);
        }
        for &m in c.incoming(c.cod(f)).iter().filter(|&&m| n.is_member(m)) {
            let w = chosen_contraction(n, f, m)?;
            contract.insert((f, c.dom(m)), (w.apex, w.proj_right));
        }
    }
    PartialStructure::new(c.clone(), leq, restrict, contract)
}

/// Members are the canonical monics `id_A↓U`.
pub fn inclusion_from_partial(p: &PartialStructure) -> Result<InclusionSystem> {
    let inclusions = p
        .leq
        .iter()
        .map(|&(u, a)| canonical_monic(p, u, a))
        .collect::<Result<BTreeSet<_>>>()?;
    InclusionSystem::new(p.base.clone(), inclusions)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedInclusion {
    pub boundedness: Boundedness<MorId>,
    /// Non-identity endo-members out of a maximal object; I.1 with I.3 rule these out.
    pub flagged: Vec<MorId>,
}

/// For each `A`, the unique member `η_A: A -> L A` such that every member
/// out of `L A` ends at `L A`.
pub fn is_bounded_inclusion(n: &InclusionSystem) -> BoundedInclusion {
    let c = &n.base;
    let mut flagged = Vec::new();
    let maximal: Vec<bool> = c
        .objects()
        .map(|t| {
            c.outgoing(t)
                .iter()
                .filter(|&&x| n.is_member(x))
                .all(|&x| c.cod(x) == t)
        })
        .collect();
    for t in c.objects().filter(|t| maximal[t.0]) {
        for &x in c.hom(t, t) {
            if n.is_member(x) && !c.is_identity(x) {
                flagged.push(x);
            }
        }
    }
    let mut map = Vec::new();
    for a in c.objects() {
        let candidates: Vec<MorId> = c
            .outgoing(a)
            .iter()
            .copied()
            .filter(|&x| n.is_member(x) && maximal[c.cod(x).0])
            .collect();
        match candidates.as_slice() {
            [x] => map.push(*x),
            _ => {
                return BoundedInclusion {
                    boundedness: Boundedness::Unbounded {
                        object: a,
                        maximal: candidates.iter().map(|&x| c.cod(x)).collect(),
                    },
                    flagged,
                }
            }
        }
    }
    BoundedInclusion {
        boundedness: Boundedness::Bounded { map },
        flagged,
    }
}

/// Enlargements and etas from the maximal inclusions of a bounded system.
pub fn local_from_bounded_inclusion(n: &InclusionSystem) -> Result<LocalStructure> {
    let c = &n.base;
    match is_bounded_inclusion(n).boundedness {
        Boundedness::Bounded { map } => {
            let enlargement = map.iter().map(|&e| c.cod(e)).collect();
            LocalStructure::new(c.clone(), enlargement, map)
        }
        Boundedness::Unbounded { object, .. } => Err(Error::Precondition(format!(
            "inclusion system is not bounded at {}",
            c.object_label(object)
        ))),
    }
}

/// Members are the morphisms `m` with `m ; η_{cod m} = η_{dom m}`.
pub fn inclusion_from_local(lc: &LocalStructure) -> InclusionSystem {
    let c = &lc.base;
    let inclusions = c
        .morphisms()
        .filter(|&m| c.compose(m, lc.eta(c.cod(m))) == Some(lc.eta(c.dom(m))))
        .collect();
    InclusionSystem {
        base: c.clone(),
        inclusions,
    }
}

/// Does every morphism factor as an isomorphism followed by a member?
pub fn is_inverse_inclusion(n: &InclusionSystem) -> bool {
    let c = &n.base;
    c.morphisms().all(|f| {
        let (a, b) = (c.dom(f), c.cod(f));
        c.incoming(b).iter().filter(|&&m| n.is_member(m)).any(|&m| {
            c.find_isomorphisms(a, c.dom(m))
                .iter()
                .any(|&u| c.compose(u, m) == Some(f))
        })
    })
}

/// The wide subcategory of all isomorphisms.
pub fn maximal_subgroupoid(n: &InclusionSystem) -> Result<Subcategory> {
    n.base.wide_subcategory(|f| n.base.is_iso(f))
}

/// The groupoid of isomorphisms together with the order induced by members.
#[derive(Clone, Debug)]
pub struct EsnGroupoid {
    pub groupoid: Subcategory,
    pub order: BTreeSet<(ObjId, ObjId)>,
}

pub fn esn_groupoid(n: &InclusionSystem) -> Result<EsnGroupoid> {
    let c = &n.base;
    Ok(EsnGroupoid {
        groupoid: maximal_subgroupoid(n)?,
        order: n.inclusions.iter().map(|&m| (c.dom(m), c.cod(m))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::restriction_to_local;
    use crate::generators::{gen_finset, gen_inverse_monoid, gen_par, gen_parset};
    use crate::local::validate_local;
    use crate::partial::validate_partial;

    #[test]
    fn standard_systems_validate() {
        let ps = gen_parset(&[2]).unwrap();
        assert!(validate_inclusion(&ps.inclusion).is_valid());
        assert!(validate_inclusion(&InclusionSystem::trivial(ps.local.base.clone())).is_valid());
    }

    #[test]
    fn parallel_members_break_i3() {
        let par = gen_par(&[2, 1]).unwrap();
        let mut n = InclusionSystem::trivial(par.base.clone());
        n.inclusions
            .insert(par.base.find_morphism("A->A[1,0]").unwrap());
        assert!(validate_inclusion(&n).has_axiom("I.3"));
    }

    #[test]
    fn partial_inclusion_round_trips() {
        let fs = gen_finset(&[vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
        let p = partial_from_inclusion(&fs.inclusion).unwrap();
        assert!(validate_partial(&p).is_valid());
        assert_eq!(inclusion_from_partial(&p).unwrap(), fs.inclusion);
        let trivial = InclusionSystem::trivial(fs.inclusion.base.clone());
        assert_eq!(
            partial_from_inclusion(&trivial).unwrap(),
            PartialStructure::trivial(fs.inclusion.base.clone())
        );
    }

    #[test]
    fn bounded_systems_and_local_structures() {
        let ps = gen_parset(&[2]).unwrap();
        let b = is_bounded_inclusion(&ps.inclusion);
        assert_eq!(b.boundedness.map().unwrap(), ps.local.eta.as_slice());
        assert!(b.flagged.is_empty());
        assert_eq!(
            local_from_bounded_inclusion(&ps.inclusion).unwrap(),
            ps.local
        );
        let lx = restriction_to_local(&gen_par(&[2, 1]).unwrap()).unwrap();
        let n = inclusion_from_local(&lx.local);
        let back = local_from_bounded_inclusion(&n).unwrap();
        assert!(validate_local(&back).is_valid());
        assert_eq!(back, lx.local);
    }

    #[test]
    fn unbounded_finset_family() {
        let fs = gen_finset(&[vec![0], vec![0, 1], vec![0, 2]]).unwrap();
        assert!(validate_inclusion(&fs.inclusion).is_valid());
        assert!(!is_bounded_inclusion(&fs.inclusion).boundedness.is_bounded());
        assert!(local_from_bounded_inclusion(&fs.inclusion).is_err());
    }

    #[test]
    fn inverse_inclusion_and_groupoid() {
        let inv = restriction_to_local(&gen_inverse_monoid(2).unwrap()).unwrap();
        let n = inclusion_from_local(&inv.local);
        assert!(is_inverse_inclusion(&n));
        let g = maximal_subgroupoid(&n).unwrap().category;
        assert_eq!((g.object_count(), g.morphism_count()), (4, 7));
        let par = restriction_to_local(&gen_par(&[2, 1]).unwrap()).unwrap();
        assert!(!is_inverse_inclusion(&inclusion_from_local(&par.local)));
    }
}
