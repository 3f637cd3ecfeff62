//! Partial structures: an order on objects with tabulated restriction
//! `f↓U` and contraction `(A↑_f V, f↑V)` operators.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCategory, MorId, ObjId, PullbackWitness};
use crate::report::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialStructure {
    pub base: FinCategory,
    /// Pairs `(U, A)` with `U ≤ A`.
    pub leq: BTreeSet<(ObjId, ObjId)>,
    /// `(f, U) ↦ f↓U`, defined when `U ≤ dom f`.
    pub restrict: BTreeMap<(MorId, ObjId), MorId>,
    /// `(f, V) ↦ (A↑_f V, f↑V)`, defined when `V ≤ cod f`.
    pub contract: BTreeMap<(MorId, ObjId), (ObjId, MorId)>,
}

impl PartialStructure {
    pub fn new(
        base: FinCategory,
        leq: BTreeSet<(ObjId, ObjId)>,
        restrict: BTreeMap<(MorId, ObjId), MorId>,
        contract: BTreeMap<(MorId, ObjId), (ObjId, MorId)>,
    ) -> Result<Self> {
        let obj = |a: ObjId| base.contains_object(a);
        let mor = |f: MorId| base.contains_morphism(f);
        let mut problems = Vec::new();
        for &(u, a) in &leq {
            if !obj(u) || !obj(a) {
                problems.push(Violation::new(
                    "P.structure",
                    format!("order pair ({u}, {a}) refers to a missing object"),
                ));
            }
        }
        for (&(f, u), &r) in &restrict {
            if !mor(f) || !obj(u) || !mor(r) {
                problems.push(Violation::new(
                    "P.structure",
                    format!("restriction entry ({f}, {u}) refers to a missing identifier"),
                ));
            }
        }
        for (&(f, v), &(p, g)) in &contract {
            if !mor(f) || !obj(v) || !obj(p) || !mor(g) {
                problems.push(Violation::new(
                    "P.structure",
                    format!("contraction entry ({f}, {v}) refers to a missing identifier"),
                ));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Structural(problems));
        }
        Ok(PartialStructure {
            base,
            leq,
            restrict,
            contract,
        })
    }

    /// Discrete order, both operators trivial.
    pub fn trivial(base: FinCategory) -> Self {
        let leq = base.objects().map(|a| (a, a)).collect();
        let restrict = base.morphisms().map(|f| ((f, base.dom(f)), f)).collect();
        let contract = base
            .morphisms()
            .map(|f| ((f, base.cod(f)), (base.dom(f), f)))
            .collect();
        PartialStructure {
            base,
            leq,
            restrict,
            contract,
        }
    }

    pub fn le(&self, u: ObjId, a: ObjId) -> bool {
        self.leq.contains(&(u, a))
    }

    /// Objects `U` with `U ≤ a`.
    pub fn below(&self, a: ObjId) -> Vec<ObjId> {
        self.base.objects().filter(|&u| self.le(u, a)).collect()
    }

    pub fn restrict_to(&self, f: MorId, u: ObjId) -> Option<MorId> {
        self.restrict.get(&(f, u)).copied()
    }

    pub fn contract_to(&self, f: MorId, v: ObjId) -> Option<(ObjId, MorId)> {
        self.contract.get(&(f, v)).copied()
    }
}

pub fn validate_partial(p: &PartialStructure) -> ValidationReport {
    let c = &p.base;
    let mut report = validate_category(c);
    if !report.is_valid() {
        return report;
    }
    check_order(p, &mut report);
    check_tables(p, &mut report);
    check_axioms(p, &mut report);
    report
}

fn check_order(p: &PartialStructure, report: &mut ValidationReport) {
    let c = &p.base;
    for a in c.objects() {
        if !p.le(a, a) {
            report.push(
                Violation::new(
                    "P.order",
                    format!("{} ≤ itself is missing", c.object_label(a)),
                )
                .with_objects([a]),
            );
        }
    }
    for &(u, a) in &p.leq {
        if u != a && p.le(a, u) {
            report.push(
                Violation::new(
                    "P.order",
                    format!(
                        "{} and {} are below each other",
                        c.object_label(u),
                        c.object_label(a)
                    ),
                )
                .with_objects([u, a]),
            );
        }
        for &(a2, b) in p.leq.range((a, ObjId(0))..=(a, ObjId(usize::MAX))) {
            debug_assert_eq!(a2, a);
            if !p.le(u, b) {
                report.push(
                    Violation::new(
                        "P.order",
                        format!(
                            "order is not transitive at {} ≤ {} ≤ {}",
                            c.object_label(u),
                            c.object_label(a),
                            c.object_label(b)
                        ),
                    )
                    .with_objects([u, a, b]),
                );
            }
        }
    }
}

fn check_tables(p: &PartialStructure, report: &mut ValidationReport) {
    let c = &p.base;
    for f in c.morphisms() {
        for u in c.objects() {
            let wanted = p.le(u, c.dom(f));
            match (wanted, p.restrict_to(f, u)) {
                (true, None) => report.push(
                    Violation::new(
                        "P.table",
                        format!(
                            "restriction of {} to {} is missing",
                            c.label(f),
                            c.object_label(u)
                        ),
                    )
                    .with_objects([u, c.dom(f)])
                    .with_morphisms([f]),
                ),
                (false, Some(_)) => report.push(
                    Violation::new(
                        "P.table",
                        format!(
                            "restriction of {} to {} is given although {} is not below its domain",
                            c.label(f),
                            c.object_label(u),
                            c.object_label(u)
                        ),
                    )
                    .with_objects([u, c.dom(f)])
                    .with_morphisms([f]),
                ),
                (true, Some(r)) if c.dom(r) != u || c.cod(r) != c.cod(f) => report.push(
                    Violation::new(
                        "P.type",
                        format!(
                            "restriction of {} to {} has the wrong type",
                            c.label(f),
                            c.object_label(u)
                        ),
                    )
                    .with_objects([u])
                    .with_morphisms([f, r]),
                ),
                _ => {}
            }
            let wanted = p.le(u, c.cod(f));
            match (wanted, p.contract_to(f, u)) {
                (true, None) => report.push(
                    Violation::new(
                        "P.table",
                        format!("contraction of {} to {} is missing", c.label(f), c.object_label(u)),
                    )
                    .with_objects([u, c.cod(f)])
                    .with_morphisms([f]),
                ),
                (false, Some(_)) => report.push(
                    Violation::new(
                        "P.table",
                        format!(
                            "contraction of {} to {} is given although {} is not below its codomain",
                            c.label(f),
                            c.object_label(u),
                            c.object_label(u)
                        ),
                    )
                    .with_objects([u, c.cod(f)])
                    .with_morphisms([f]),
                ),
                (true, Some((q, g))) if !p.le(q, c.dom(f)) || c.dom(g) != q || c.cod(g) != u => {
                    report.push(
                        Violation::new(
                            "P.type",
                            format!(
                                "contraction of {} to {} has the wrong type",
                                c.label(f),
                                c.object_label(u)
                            ),
                        )
                        .with_objects([u, q])
                        .with_morphisms([f, g]),
                    )
                }
                _ => {}
            }
        }
    }
}

fn check_axioms(p: &PartialStructure, report: &mut ValidationReport) {
    let c = &p.base;
    let fail = |axiom: &str, msg: String, objects: &[ObjId], morphisms: &[MorId]| {
        Violation::new(axiom, msg)
            .with_objects(objects.iter().copied())
            .with_morphisms(morphisms.iter().copied())
    };
    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        if p.restrict_to(f, a) != Some(f) {
            report.push(fail("P.1", format!("{}↓A != f", c.label(f)), &[a], &[f]));
        }
        if p.contract_to(f, b) != Some((a, f)) {
            report.push(fail(
                "P.4",
                format!(
                    "contraction of {} to its codomain is not itself",
                    c.label(f)
                ),
                &[b],
                &[f],
            ));
        }
        for u in p.below(a) {
            let Some(fu) = p.restrict_to(f, u) else {
                continue;
            };
            for v in p.below(u) {
                if p.restrict_to(fu, v) != p.restrict_to(f, v) {
                    report.push(fail(
                        "P.2",
                        format!("(f↓U)↓V != f↓V at f = {}", c.label(f)),
                        &[u, v],
                        &[f, fu],
                    ));
                }
            }
            for &g in c.outgoing(b) {
                let Some(fg) = c.compose(f, g) else { continue };
                if c.compose(fu, g) != p.restrict_to(fg, u) {
                    report.push(fail(
                        "P.3",
                        format!("(f↓U)g != (fg)↓U at f = {}, g = {}", c.label(f), c.label(g)),
                        &[u],
                        &[f, g, fg, fu],
                    ));
                }
            }
        }
        for v in p.below(b) {
            let Some((q, fv)) = p.contract_to(f, v) else {
                continue;
            };
            for w in p.below(v) {
                if p.contract_to(fv, w) != p.contract_to(f, w) {
                    report.push(fail(
                        "P.5",
                        format!(
                            "contracting twice differs from contracting once at f = {}",
                            c.label(f)
                        ),
                        &[v, w, q],
                        &[f, fv],
                    ));
                }
            }
            let restricted = p.restrict_to(f, q);
            let ok = restricted.is_some_and(|fr| p.contract_to(fr, v) == Some((q, fv)));
            if !ok {
                report.push(
                    fail(
                        "P.7",
                        format!(
                            "contracting f↓(A↑V) does not give f↑V at f = {}",
                            c.label(f)
                        ),
                        &[v, q],
                        &[f, fv],
                    )
                    .with_morphisms(restricted),
                );
            }
            for &g in c.outgoing(b) {
                let Some(fg) = c.compose(f, g) else { continue };
                let lhs = p.restrict_to(fg, q);
                let gv = p.restrict_to(g, v);
                let rhs = gv.and_then(|gv| c.compose(fv, gv));
                if lhs.is_none() || lhs != rhs {
                    report.push(
                        fail(
                            "P.8",
                            format!(
                                "(fg)↓(A↑V) != (f↑V)(g↓V) at f = {}, g = {}",
                                c.label(f),
                                c.label(g)
                            ),
                            &[v, q],
                            &[f, g, fg, fv],
                        )
                        .with_morphisms(gv),
                    );
                }
            }
        }
        for &g in c.outgoing(b) {
            let Some(fg) = c.compose(f, g) else { continue };
            for w in p.below(c.cod(g)) {
                let Some((bw, gw)) = p.contract_to(g, w) else {
                    continue;
                };
                let inner = p.contract_to(f, bw);
                let lhs = inner.and_then(|(q, fbw)| c.compose(fbw, gw).map(|h| (q, h)));
                if lhs.is_none() || lhs != p.contract_to(fg, w) {
                    let mut morphisms = vec![f, g, fg, gw];
                    morphisms.extend(inner.map(|x| x.1));
                    report.push(fail(
                        "P.6",
                        format!("contraction of fg differs from the composite of contractions at f = {}, g = {}", c.label(f), c.label(g)),
                        &[w, bw],
                        &morphisms,
                    ));
                }
            }
        }
    }
    for a in c.objects() {
        let id = c.identity(a);
        for u in p.below(a) {
            if p.contract_to(id, u) != Some((u, c.identity(u))) {
                report.push(fail(
                    "P.4'",
                    format!(
                        "contraction of the identity of {} to {} is not the identity",
                        c.object_label(a),
                        c.object_label(u)
                    ),
                    &[a, u],
                    &[id],
                ));
            }
        }
    }
}

/// `id_A↓U`, checked to be monic, to induce restriction by precomposition,
/// and to contract to the identity of `U`.
pub fn canonical_monic(p: &PartialStructure, u: ObjId, a: ObjId) -> Result<MorId> {
    let c = &p.base;
    if !p.le(u, a) {
        return Err(Error::Precondition(format!(
            "{} is not below {}",
            c.object_label(u),
            c.object_label(a)
        )));
    }
    let m = p
        .restrict_to(c.identity(a), u)
        .ok_or_else(|| Error::Precondition("restriction table is incomplete".into()))?;
    if !c.is_monic(m) {
        return Err(Error::Internal(format!("{} is not monic", c.label(m))));
    }
    for &f in c.outgoing(a) {
        if p.restrict_to(f, u) != c.compose(m, f) {
            return Err(Error::Internal(format!(
                "restriction of {} is not precomposition with {}",
                c.label(f),
                c.label(m)
            )));
        }
    }
    if p.contract_to(m, u) != Some((u, c.identity(u))) {
        return Err(Error::Internal(format!(
            "{} does not contract to the identity",
            c.label(m)
        )));
    }
    Ok(m)
}

/// Is the contraction square of `f` at `V` a pullback of the canonical monic?
pub fn contraction_is_pullback(p: &PartialStructure, f: MorId, v: ObjId) -> Result<bool> {
    let c = &p.base;
    let (q, g) = p.contract_to(f, v).ok_or_else(|| {
        Error::Precondition(format!(
            "{} is not below the codomain of {}",
            c.object_label(v),
            c.label(f)
        ))
    })?;
    let m = canonical_monic(p, v, c.cod(f))?;
    let m_dom = canonical_monic(p, q, c.dom(f))?;
    Ok(c.is_pullback(
        f,
        m,
        &PullbackWitness {
            apex: q,
            proj_left: m_dom,
            proj_right: g,
        },
    ))
}

/// Outcome of a boundedness check shared by partial and inclusion structures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Boundedness<T> {
    Bounded { map: Vec<T> },
    Unbounded { object: ObjId, maximal: Vec<ObjId> },
}

impl<T> Boundedness<T> {
    pub fn is_bounded(&self) -> bool {
        matches!(self, Boundedness::Bounded { .. })
    }

    pub fn map(&self) -> Option<&[T]> {
        match self {
            Boundedness::Bounded { map } => Some(map),
            Boundedness::Unbounded { .. } => None,
        }
    }
}

/// For each `A`, the unique maximal object above it.
pub fn is_bounded_partial(p: &PartialStructure) -> Boundedness<ObjId> {
    let c = &p.base;
    let mut map = Vec::new();
    for a in c.objects() {
        let maximal: Vec<ObjId> = c
            .objects()
            .filter(|&t| p.le(a, t) && c.objects().all(|b| !p.le(t, b) || b == t))
            .collect();
        match maximal.as_slice() {
            [t] => map.push(*t),
            _ => return Boundedness::Unbounded { object: a, maximal },
        }
    }
    Boundedness::Bounded { map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_finset, gen_parset};

    #[test]
    fn standard_structures_validate() {
        let fs = gen_finset(&[vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
        assert!(validate_partial(&fs.partial).is_valid());
        assert!(validate_partial(&PartialStructure::trivial(fs.partial.base.clone())).is_valid());
        assert!(validate_partial(&gen_parset(&[2]).unwrap().partial).is_valid());
    }

    #[test]
    fn finset_contraction_is_preimage() {
        let fs = gen_finset(&[vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
        let c = &fs.partial.base;
        let f = c.find_morphism("{0,1}->{0,1}{1,1}").unwrap();
        let v = c.find_object("{0}").unwrap();
        let (apex, g) = fs.partial.contract_to(f, v).unwrap();
        assert_eq!(c.object_label(apex), "{}");
        assert_eq!(c.dom(g), apex);
        let swap = c.find_morphism("{0,1}->{0,1}{1,0}").unwrap();
        let (apex, _) = fs.partial.contract_to(swap, v).unwrap();
        assert_eq!(c.object_label(apex), "{1}");
    }

    #[test]
    fn canonical_monics_are_subset_injections() {
        let fs = gen_finset(&[vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
        let p = &fs.partial;
        let c = &p.base;
        let (u, a) = (
            c.find_object("{1}").unwrap(),
            c.find_object("{0,1}").unwrap(),
        );
        let m = canonical_monic(p, u, a).unwrap();
        assert_eq!(c.label(m), "{1}->{0,1}{1}");
        assert_eq!(canonical_monic(p, a, a).unwrap(), c.identity(a));
        assert!(canonical_monic(p, a, u).is_err());
    }

    #[test]
    fn every_contraction_is_a_pullback() {
        let p = gen_parset(&[2]).unwrap().partial;
        for &(f, v) in p.contract.keys() {
            assert!(contraction_is_pullback(&p, f, v).unwrap());
        }
    }

    #[test]
    fn boundedness() {
        let ps = gen_parset(&[2]).unwrap();
        let top = ObjId(3);
        assert_eq!(ps.objects[3], (0, 0b11));
        assert_eq!(
            is_bounded_partial(&ps.partial),
            Boundedness::Bounded { map: vec![top; 4] }
        );
        let fs = gen_finset(&[vec![0], vec![0, 1], vec![0, 2]]).unwrap();
        assert!(!is_bounded_partial(&fs.partial).is_bounded());
        let trivial = PartialStructure::trivial(fs.partial.base.clone());
        let ids: Vec<ObjId> = trivial.base.objects().collect();
        assert_eq!(
            is_bounded_partial(&trivial),
            Boundedness::Bounded { map: ids }
        );
    }

    #[test]
    fn removing_a_restriction_entry_is_a_table_error() {
        let mut p = gen_parset(&[1]).unwrap().partial;
        let key = *p.restrict.keys().next().unwrap();
        p.restrict.remove(&key);
        let report = validate_partial(&p);
        assert!(report.violations.iter().any(|v| v.flavor() == "P"));
    }
}
