//! The constructions `L[X] = Tot[Split_R[X]]` and `R[C]`, round-trip
//! isomorphism certificates, the translation chain across all four flavors,
//! and checks for structured functors and transformations.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CategoryParts, FinCategory, MorId, Morphism, ObjId, PullbackWitness};
use crate::inclusion::{
    inclusion_from_local, inclusion_from_partial, is_bounded_inclusion,
    local_from_bounded_inclusion, partial_from_inclusion, validate_inclusion, InclusionSystem,
};
use crate::local::{local_pullback, total_objects, validate_local, LocalStructure};
use crate::partial::{validate_partial, PartialStructure};
use crate::report::{ValidationReport, Violation};
use crate::restriction::{
    is_total, split_completion, total_subcategory, validate_restriction, RestrictionStructure,
};
use crate::structured::{Flavor, Structured};

/// `L[X]` together with its indexing by pairs `(A, a)` and base morphisms.
#[derive(Clone, Debug)]
pub struct LConstruction {
    pub local: LocalStructure,
    /// `(A, a)` for every object, in identifier order.
    pub objects: Vec<(ObjId, MorId)>,
    /// The base morphism underlying every morphism.
    pub morphisms: Vec<MorId>,
    lookup: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl LConstruction {
    pub fn object_of(&self, a: ObjId, e: MorId) -> Option<ObjId> {
        self.objects.binary_search(&(a, e)).ok().map(ObjId)
    }

    pub fn morphism_of(&self, dom: ObjId, cod: ObjId, base: MorId) -> Option<MorId> {
        self.lookup.get(&(dom, cod, base)).copied()
    }
}

fn missing(what: impl Into<String>) -> Error {
    Error::Internal(what.into())
}

/// Total morphisms of the split completion, with `L(A, a) = (A, id)` and `η_(A,a) = a`.
pub fn restriction_to_local(r: &RestrictionStructure) -> Result<LConstruction> {
    let split = split_completion(r)?;
    let tot = total_subcategory(&split.structure)?;
    let morphisms: Vec<MorId> = tot
        .category
        .morphisms()
        .map(|i| split.morphisms[tot.to_source(i).0])
        .collect();
    let c = tot.category;
    let lookup = c
        .morphisms()
        .map(|i| ((c.dom(i), c.cod(i), morphisms[i.0]), i))
        .collect::<HashMap<_, _>>();
    let mut enlargement = Vec::new();
    let mut eta = Vec::new();
    for (i, &(a, e)) in split.objects.iter().enumerate() {
        let top = split
            .object_of(a, r.base.identity(a))
            .ok_or_else(|| missing("split completion lacks an identity object"))?;
        let m = lookup
            .get(&(ObjId(i), top, e))
            .copied()
            .ok_or_else(|| missing("maximal inclusion is not total"))?;
        enlargement.push(top);
        eta.push(m);
    }
    Ok(LConstruction {
        local: LocalStructure::new(c, enlargement, eta)?,
        objects: split.objects,
        morphisms,
        lookup,
    })
}

/// The class of a span `(η_U, f)`, keyed by the least member of its orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanClass {
    pub left_object: ObjId,
    pub anchor: ObjId,
    pub right: MorId,
    pub canonical_key: (ObjId, MorId),
}

/// Least `(V, φ⁻¹ ; f)` over isomorphisms `φ: U -> V` with `φ ; η_V = η_U`.
pub fn canonical_key(lc: &LocalStructure, u: ObjId, f: MorId) -> (ObjId, MorId) {
    let c = &lc.base;
    let mut best = (u, f);
    for v in c
        .objects()
        .filter(|&v| lc.enlargement(v) == lc.enlargement(u))
    {
        for phi in c.find_isomorphisms(u, v) {
            if c.compose(phi, lc.eta(v)) != Some(lc.eta(u)) {
                continue;
            }
            let g = c
                .inverse(phi)
                .and_then(|psi| c.compose(psi, f))
                .expect("isomorphisms have inverses");
            best = best.min((v, g));
        }
    }
    best
}

/// `R[C]`: total objects, span classes, composition by local pullback.
#[derive(Clone, Debug)]
pub struct RConstruction {
    pub restriction: RestrictionStructure,
    /// The total object of `C` behind every object.
    pub objects: Vec<ObjId>,
    pub spans: Vec<SpanClass>,
    keys: HashMap<(ObjId, MorId), MorId>,
}

impl RConstruction {
    pub fn object_of(&self, m: ObjId) -> Option<ObjId> {
        self.objects.binary_search(&m).ok().map(ObjId)
    }

    /// The morphism of `R[C]` holding the span `(η_U, f)`.
    pub fn class_of(&self, lc: &LocalStructure, u: ObjId, f: MorId) -> Option<MorId> {
        self.keys.get(&canonical_key(lc, u, f)).copied()
    }
}

pub fn local_to_restriction(lc: &LocalStructure) -> Result<RConstruction> {
    let c = &lc.base;
    let objects = total_objects(lc);
    let is_total = |m: ObjId| objects.binary_search(&m).is_ok();
    let mut keys = BTreeSet::new();
    for u in c.objects() {
        for &f in c.outgoing(u).iter().filter(|&&f| is_total(c.cod(f))) {
            keys.insert(canonical_key(lc, u, f));
        }
    }
    if keys.len() > c.limit() {
        return Err(Error::TooLarge {
            morphisms: keys.len(),
            limit: c.limit(),
        });
    }
    let position = |m: ObjId| ObjId(objects.binary_search(&m).expect("total object"));
    let spans: Vec<SpanClass> = keys
        .iter()
        .map(|&(u, f)| SpanClass {
            left_object: u,
            anchor: lc.enlargement(u),
            right: f,
            canonical_key: (u, f),
        })
        .collect();
    let index: HashMap<(ObjId, MorId), MorId> = keys
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, MorId(i)))
        .collect();
    let class = |u: ObjId, f: MorId| -> Result<MorId> {
        index.get(&canonical_key(lc, u, f)).copied().ok_or_else(|| {
            missing(format!(
                "span ({}, {}) has no class",
                c.object_label(u),
                c.label(f)
            ))
        })
    };
    let morphisms = spans
        .iter()
        .map(|s| Morphism {
            dom: position(s.anchor),
            cod: position(c.cod(s.right)),
            label: format!("[{}|{}]", c.object_label(s.left_object), c.label(s.right)),
        })
        .collect();
    let identities = objects
        .iter()
        .map(|&m| class(m, c.identity(m)))
        .collect::<Result<Vec<_>>>()?;
    let mut composition = Vec::new();
    for (p, s) in spans.iter().enumerate() {
        let n = c.cod(s.right);
        for (q, t) in spans.iter().enumerate().filter(|(_, t)| t.anchor == n) {
            let w = local_pullback(lc, s.right, t.left_object)?.ok_or_else(|| {
                missing(format!(
                    "no local pullback of eta of {} along {}",
                    c.object_label(t.left_object),
                    c.label(s.right)
                ))
            })?;
            let g = c
                .compose(w.proj_right, t.right)
                .ok_or_else(|| Error::Precondition("composition table is incomplete".into()))?;
            composition.push((MorId(p), MorId(q), class(w.apex, g)?));
        }
    }
    let bar = spans
        .iter()
        .map(|s| class(s.left_object, lc.eta(s.left_object)))
        .collect::<Result<Vec<_>>>()?;
    let base = FinCategory::with_limit(
        CategoryParts {
            objects: objects
                .iter()
                .map(|&m| c.object_label(m).to_string())
                .collect(),
            morphisms,
            identities,
            composition,
        },
        c.limit(),
    )?;
    Ok(RConstruction {
        restriction: RestrictionStructure::new(base, bar)?,
        objects,
        spans,
        keys: index,
    })
}

/// Number of morphisms between a pair of objects, before and after.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCount {
    pub source: (ObjId, ObjId),
    pub target: (ObjId, ObjId),
    pub count: usize,
}

/// A functor shown to be bijective on objects and on every hom-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
    pub inverse_object_map: Vec<ObjId>,
    pub inverse_morphism_map: Vec<MorId>,
    pub hom_counts: Vec<HomCount>,
}

fn fail(msg: String) -> Error {
    Error::Certificate(msg)
}

/// Check that the maps form a functor that is bijective on objects and morphisms.
pub fn certify_isomorphism(
    src: &FinCategory,
    dst: &FinCategory,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
) -> Result<IsoCertificate> {
    if object_map.len() != src.object_count() || morphism_map.len() != src.morphism_count() {
        return Err(fail("maps do not cover the source".into()));
    }
    if dst.object_count() != src.object_count() || dst.morphism_count() != src.morphism_count() {
        return Err(fail(format!(
            "sizes differ: {} objects/{} morphisms against {}/{}",
            src.object_count(),
            src.morphism_count(),
            dst.object_count(),
            dst.morphism_count()
        )));
    }
    let mut inverse_object_map = vec![None; dst.object_count()];
    for a in src.objects() {
        let b = object_map[a.0];
        match inverse_object_map.get_mut(b.0) {
            Some(slot @ None) => *slot = Some(a),
            _ => {
                return Err(fail(format!(
                    "object {} does not land on a fresh target",
                    src.object_label(a)
                )))
            }
        }
    }
    let mut inverse_morphism_map = vec![None; dst.morphism_count()];
    for f in src.morphisms() {
        let g = morphism_map[f.0];
        if !dst.contains_morphism(g)
            || dst.dom(g) != object_map[src.dom(f).0]
            || dst.cod(g) != object_map[src.cod(f).0]
        {
            return Err(fail(format!(
                "image of {} has the wrong type",
                src.label(f)
            )));
        }
        match inverse_morphism_map.get_mut(g.0) {
            Some(slot @ None) => *slot = Some(f),
            _ => {
                return Err(fail(format!(
                    "{} collides with another morphism",
                    src.label(f)
                )))
            }
        }
    }
    for a in src.objects() {
        if morphism_map[src.identity(a).0] != dst.identity(object_map[a.0]) {
            return Err(fail(format!(
                "identity of {} is not preserved",
                src.object_label(a)
            )));
        }
    }
    for f in src.morphisms() {
        for &g in src.outgoing(src.cod(f)) {
            let h = src.compose(f, g).expect("composable");
            if dst.compose(morphism_map[f.0], morphism_map[g.0]) != Some(morphism_map[h.0]) {
                return Err(fail(format!(
                    "composite {} ; {} is not preserved",
                    src.label(f),
                    src.label(g)
                )));
            }
        }
    }
    let mut hom_counts = Vec::new();
    for a in src.objects() {
        for b in src.objects() {
            let target = (object_map[a.0], object_map[b.0]);
            let count = src.hom(a, b).len();
            if dst.hom(target.0, target.1).len() != count {
                return Err(fail(format!(
                    "hom-set {} -> {} changes size",
                    src.object_label(a),
                    src.object_label(b)
                )));
            }
            hom_counts.push(HomCount {
                source: (a, b),
                target,
                count,
            });
        }
    }
    Ok(IsoCertificate {
        object_map,
        morphism_map,
        inverse_object_map: inverse_object_map.into_iter().flatten().collect(),
        inverse_morphism_map: inverse_morphism_map.into_iter().flatten().collect(),
        hom_counts,
    })
}

/// The unit `N: X -> R[L[X]]`, `A ↦ (A, id)`, `f ↦ [(A, bar f) | f]`.
pub fn restriction_unit(
    r: &RestrictionStructure,
) -> Result<(StructuredFunctor, LConstruction, RConstruction)> {
    let c = &r.base;
    let lx = restriction_to_local(r)?;
    let rc = local_to_restriction(&lx.local)?;
    let top = |a: ObjId| {
        lx.object_of(a, c.identity(a))
            .ok_or_else(|| missing("no (A, id) object"))
    };
    let object_map = c
        .objects()
        .map(|a| {
            rc.object_of(top(a)?)
                .ok_or_else(|| missing("(A, id) is not total"))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism_map = c
        .morphisms()
        .map(|f| {
            let u = lx
                .object_of(c.dom(f), r.bar(f))
                .ok_or_else(|| missing("no (A, bar f) object"))?;
            let g = lx
                .morphism_of(u, top(c.cod(f))?, f)
                .ok_or_else(|| missing(format!("{} has no total lift", c.label(f))))?;
            rc.class_of(&lx.local, u, g)
                .ok_or_else(|| missing(format!("{} has no span class", c.label(f))))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = StructuredFunctor {
        object_map,
        morphism_map,
        flavor: Flavor::Restriction,
    };
    Ok((n, lx, rc))
}

/// Certify `X ≅ R[L[X]]` as restriction categories.
pub fn roundtrip_restriction(r: &RestrictionStructure) -> Result<IsoCertificate> {
    let (n, _, rc) = restriction_unit(r)?;
    let target = &rc.restriction;
    let cert = certify_isomorphism(&r.base, &target.base, n.object_map, n.morphism_map)?;
    for f in r.base.morphisms() {
        if cert.morphism_map[r.bar(f).0] != target.bar(cert.morphism_map[f.0]) {
            return Err(fail(format!(
                "restriction of {} is not preserved",
                r.base.label(f)
            )));
        }
    }
    Ok(cert)
}

/// The comparison `C -> L[R[C]]`, `M ↦ (L M, [M | η_M])`, `f ↦ [M | f ; η_N]`.
pub fn local_unit(
    lc: &LocalStructure,
) -> Result<(StructuredFunctor, RConstruction, LConstruction)> {
    let c = &lc.base;
    let rc = local_to_restriction(lc)?;
    let lrc = restriction_to_local(&rc.restriction)?;
    let object_map = c
        .objects()
        .map(|m| {
            let a = rc
                .object_of(lc.enlargement(m))
                .ok_or_else(|| missing("enlargement is not total"))?;
            let e = rc
                .class_of(lc, m, lc.eta(m))
                .ok_or_else(|| missing("eta has no span class"))?;
            lrc.object_of(a, e)
                .ok_or_else(|| missing(format!("{} has no image object", c.object_label(m))))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism_map = c
        .morphisms()
        .map(|f| {
            let (m, n) = (c.dom(f), c.cod(f));
            let g = c
                .compose(f, lc.eta(n))
                .ok_or_else(|| Error::Precondition("composition table is incomplete".into()))?;
            let k = rc
                .class_of(lc, m, g)
                .ok_or_else(|| missing(format!("{} has no span class", c.label(f))))?;
            lrc.morphism_of(object_map[m.0], object_map[n.0], k)
                .ok_or_else(|| missing(format!("{} has no image", c.label(f))))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = StructuredFunctor {
        object_map,
        morphism_map,
        flavor: Flavor::Local,
    };
    Ok((f, rc, lrc))
}

/// Certify `C ≅ L[R[C]]` as local categories.
///
/// The inverse is built independently by lifting: `(A, [U | η_U]) ↦ U` and a
/// morphism over `[U | f]` goes to the `f̃` with `f̃ ; η = f`.
pub fn roundtrip_local(lc: &LocalStructure) -> Result<IsoCertificate> {
    let c = &lc.base;
    let (f, rc, lrc) = local_unit(lc)?;
    let target = &lrc.local;
    let cert = certify_isomorphism(c, &target.base, f.object_map, f.morphism_map)?;
    for m in c.objects() {
        let fm = cert.object_map[m.0];
        if cert.object_map[lc.enlargement(m).0] != target.enlargement(fm)
            || cert.morphism_map[lc.eta(m).0] != target.eta(fm)
        {
            return Err(fail(format!(
                "local structure at {} is not preserved",
                c.object_label(m)
            )));
        }
    }
    let lifted_objects: Vec<ObjId> = lrc
        .objects
        .iter()
        .map(|&(_, e)| rc.spans[e.0].left_object)
        .collect();
    let d = &target.base;
    let mut lifted_morphisms = Vec::new();
    for psi in d.morphisms() {
        let span = rc.spans[lrc.morphisms[psi.0].0];
        let (u, v) = (lifted_objects[d.dom(psi).0], lifted_objects[d.cod(psi).0]);
        if span.left_object != u {
            return Err(fail(format!(
                "span of {} starts at the wrong object",
                d.label(psi)
            )));
        }
        let lifts: Vec<MorId> = c
            .hom(u, v)
            .iter()
            .copied()
            .filter(|&g| c.compose(g, lc.eta(v)) == Some(span.right))
            .collect();
        match lifts.as_slice() {
            [g] => lifted_morphisms.push(*g),
            [] => return Err(fail(format!("{} has no lift", d.label(psi)))),
            _ => {
                return Err(Error::Internal(format!(
                    "{} has {} lifts through a maximal inclusion",
                    d.label(psi),
                    lifts.len()
                )))
            }
        }
    }
    if lifted_objects != cert.inverse_object_map || lifted_morphisms != cert.inverse_morphism_map {
        return Err(fail(
            "lifting functor is not inverse to the comparison".into(),
        ));
    }
    Ok(cert)
}

/// `L[F]`: `(A, a) ↦ (F A, F a)`, and a morphism over `g` goes to the one over `F g`.
pub fn lift_restriction_functor(
    f: &StructuredFunctor,
    src: &LConstruction,
    dst: &LConstruction,
) -> Result<StructuredFunctor> {
    let object_map = src
        .objects
        .iter()
        .map(|&(a, e)| {
            dst.object_of(f.object_map[a.0], f.morphism_map[e.0])
                .ok_or_else(|| missing("image pair is not an object"))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = &src.local.base;
    let morphism_map = c
        .morphisms()
        .map(|psi| {
            dst.morphism_of(
                object_map[c.dom(psi).0],
                object_map[c.cod(psi).0],
                f.morphism_map[src.morphisms[psi.0].0],
            )
            .ok_or_else(|| missing(format!("image of {} is not a morphism", c.label(psi))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StructuredFunctor {
        object_map,
        morphism_map,
        flavor: Flavor::Local,
    })
}

/// `L[φ]_(A,a) = F a ; φ_A`.
pub fn lift_transformation(
    phi: &[MorId],
    f: &StructuredFunctor,
    g: &StructuredFunctor,
    src: &LConstruction,
    dst: &LConstruction,
    target: &RestrictionStructure,
) -> Result<Vec<MorId>> {
    let lf = lift_restriction_functor(f, src, dst)?;
    let lg = lift_restriction_functor(g, src, dst)?;
    src.objects
        .iter()
        .enumerate()
        .map(|(i, &(a, e))| {
            let base = target
                .base
                .compose(f.morphism_map[e.0], phi[a.0])
                .ok_or_else(|| missing("component does not compose"))?;
            dst.morphism_of(lf.object_map[i], lg.object_map[i], base)
                .ok_or_else(|| missing("lifted component is not a morphism"))
        })
        .collect()
}

/// First triangle identity: `L[N_X]` equals the comparison `L[X] -> L[R[L[X]]]`.
pub fn triangle_identity_restriction(r: &RestrictionStructure) -> Result<()> {
    let (n, lx, rc) = restriction_unit(r)?;
    let lrlx = restriction_to_local(&rc.restriction)?;
    let ln = lift_restriction_functor(&n, &lx, &lrlx)?;
    let (e_inv, _, _) = local_unit(&lx.local)?;
    if ln.object_map != e_inv.object_map || ln.morphism_map != e_inv.morphism_map {
        return Err(fail("L[N] differs from the inverse of the counit".into()));
    }
    Ok(())
}

/// Second triangle identity: `N_{R[C]}` equals `R` applied to the comparison `C -> L[R[C]]`.
pub fn triangle_identity_local(lc: &LocalStructure) -> Result<()> {
    let (f, rc, lrc) = local_unit(lc)?;
    let (n, _, rlrc) = restriction_unit(&rc.restriction)?;
    let object_map = rc
        .objects
        .iter()
        .map(|&m| {
            rlrc.object_of(f.object_map[m.0])
                .ok_or_else(|| missing("image of a total object is not total"))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism_map = rc
        .spans
        .iter()
        .map(|s| {
            rlrc.class_of(
                &lrc.local,
                f.object_map[s.left_object.0],
                f.morphism_map[s.right.0],
            )
            .ok_or_else(|| missing("image span has no class"))
        })
        .collect::<Result<Vec<_>>>()?;
    if object_map != n.object_map || morphism_map != n.morphism_map {
        return Err(fail("R of the comparison differs from the unit".into()));
    }
    Ok(())
}

/// Object and morphism maps of a functor between structured categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredFunctor {
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
    pub flavor: Flavor,
}

impl StructuredFunctor {
    pub fn identity(c: &FinCategory, flavor: Flavor) -> Self {
        StructuredFunctor {
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
            flavor,
        }
    }

    fn ob(&self, a: ObjId) -> ObjId {
        self.object_map[a.0]
    }

    fn mor(&self, f: MorId) -> MorId {
        self.morphism_map[f.0]
    }

    fn cone(&self, w: &PullbackWitness) -> PullbackWitness {
        PullbackWitness {
            apex: self.ob(w.apex),
            proj_left: self.mor(w.proj_left),
            proj_right: self.mor(w.proj_right),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lax,
    Total,
}

fn check_maps(f: &StructuredFunctor, src: &FinCategory, dst: &FinCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    if f.object_map.len() != src.object_count() || f.morphism_map.len() != src.morphism_count() {
        report.push(Violation::new("F.map", "maps do not cover the source"));
    }
    if f.object_map.iter().any(|&a| !dst.contains_object(a))
        || f.morphism_map.iter().any(|&g| !dst.contains_morphism(g))
    {
        report.push(Violation::new("F.map", "maps leave the target"));
    }
    report
}

/// Functoriality plus the preservation laws of the functor's flavor.
pub fn check_functor(
    f: &StructuredFunctor,
    src: &Structured,
    dst: &Structured,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if src.flavor() != f.flavor || dst.flavor() != f.flavor {
        report.push(Violation::new(
            "F.flavor",
            format!(
                "{} functor between {} and {} structures",
                f.flavor,
                src.flavor(),
                dst.flavor()
            ),
        ));
        return report;
    }
    let (c, d) = (src.base(), dst.base());
    report.extend(check_maps(f, c, d));
    if !report.is_valid() {
        return report;
    }
    for g in c.morphisms() {
        if d.dom(f.mor(g)) != f.ob(c.dom(g)) || d.cod(f.mor(g)) != f.ob(c.cod(g)) {
            report.push(
                Violation::new(
                    "F.functor",
                    format!("image of {} has the wrong type", c.label(g)),
                )
                .with_morphisms([g]),
            );
        }
    }
    for a in c.objects() {
        if f.mor(c.identity(a)) != d.identity(f.ob(a)) {
            report.push(
                Violation::new(
                    "F.functor",
                    format!("identity of {} is not preserved", c.object_label(a)),
                )
                .with_objects([a]),
            );
        }
    }
    for g in c.morphisms() {
        for &h in c.outgoing(c.cod(g)) {
            let gh = c.compose(g, h).expect("composable");
            if d.compose(f.mor(g), f.mor(h)) != Some(f.mor(gh)) {
                report.push(
                    Violation::new(
                        "F.functor",
                        format!("composite {} ; {} is not preserved", c.label(g), c.label(h)),
                    )
                    .with_morphisms([g, h]),
                );
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    match (src, dst) {
        (Structured::Restriction(r), Structured::Restriction(s)) => {
            for g in c.morphisms() {
                if f.mor(r.bar(g)) != s.bar(f.mor(g)) {
                    report.push(
                        Violation::new(
                            "F.restriction",
                            format!("F(bar {}) != bar F({})", c.label(g), c.label(g)),
                        )
                        .with_morphisms([g]),
                    );
                }
            }
        }
        (Structured::Local(l), Structured::Local(k)) => {
            for m in c.objects() {
                if f.ob(l.enlargement(m)) != k.enlargement(f.ob(m))
                    || f.mor(l.eta(m)) != k.eta(f.ob(m))
                {
                    report.push(
                        Violation::new(
                            "F.local",
                            format!(
                                "enlargement or eta at {} is not preserved",
                                c.object_label(m)
                            ),
                        )
                        .with_objects([m]),
                    );
                }
                for &g in c.incoming(l.enlargement(m)) {
                    match local_pullback(l, g, m) {
                        Ok(Some(w)) => {
                            if !d.is_pullback(f.mor(g), k.eta(f.ob(m)), &f.cone(&w)) {
                                report.push(
                                    Violation::new(
                                        "F.local",
                                        format!(
                                            "pullback of eta of {} along {} is not preserved",
                                            c.object_label(m),
                                            c.label(g)
                                        ),
                                    )
                                    .with_objects([m, w.apex])
                                    .with_morphisms([g]),
                                );
                            }
                        }
                        _ => report.mark_inconclusive(format!(
                            "source lacks a pullback of eta of {} along {}",
                            c.object_label(m),
                            c.label(g)
                        )),
                    }
                }
            }
        }
        (Structured::Partial(p), Structured::Partial(q)) => {
            for &(u, a) in &p.leq {
                if !q.le(f.ob(u), f.ob(a)) {
                    report.push(
                        Violation::new(
                            "F.partial",
                            format!(
                                "order {} <= {} is not preserved",
                                c.object_label(u),
                                c.object_label(a)
                            ),
                        )
                        .with_objects([u, a]),
                    );
                }
            }
            for (&(g, u), &h) in &p.restrict {
                if q.restrict_to(f.mor(g), f.ob(u)) != Some(f.mor(h)) {
                    report.push(
                        Violation::new(
                            "F.partial",
                            format!(
                                "restriction of {} to {} is not preserved",
                                c.label(g),
                                c.object_label(u)
                            ),
                        )
                        .with_objects([u])
                        .with_morphisms([g]),
                    );
                }
            }
            for (&(g, v), &(a, h)) in &p.contract {
                if q.contract_to(f.mor(g), f.ob(v)) != Some((f.ob(a), f.mor(h))) {
                    report.push(
                        Violation::new(
                            "F.partial",
                            format!(
                                "contraction of {} to {} is not preserved",
                                c.label(g),
                                c.object_label(v)
                            ),
                        )
                        .with_objects([v])
                        .with_morphisms([g]),
                    );
                }
            }
        }
        (Structured::Inclusion(n), Structured::Inclusion(k)) => {
            for &m in &n.inclusions {
                if !k.is_member(f.mor(m)) {
                    report.push(
                        Violation::new(
                            "F.inclusion",
                            format!("{} is not sent to a member", c.label(m)),
                        )
                        .with_morphisms([m]),
                    );
                }
                for &g in c.incoming(c.cod(m)) {
                    let cones = c.pullbacks(g, m).unwrap_or_default();
                    for w in cones.iter().filter(|w| n.is_member(w.proj_left)) {
                        if !d.is_pullback(f.mor(g), f.mor(m), &f.cone(w)) {
                            report.push(
                                Violation::new(
                                    "F.inclusion",
                                    format!(
                                        "pullback of {} along {} is not preserved",
                                        c.label(m),
                                        c.label(g)
                                    ),
                                )
                                .with_objects([w.apex])
                                .with_morphisms([m, g]),
                            );
                        }
                    }
                }
            }
        }
        _ => unreachable!("flavors were matched above"),
    }
    report
}

/// Naturality of `φ: F => G` plus the totality conditions of the flavor.
///
/// In lax mode a restriction transformation needs total components and
/// `F(bar f) ; φ_A ; G f = F f ; φ_B`; other flavors need plain naturality.
/// Total mode adds plain naturality with total components (restriction),
/// pullback squares over every `η_M` (local) or member (inclusion), and the
/// contraction equations (partial).
pub fn check_transformation(
    phi: &[MorId],
    f: &StructuredFunctor,
    g: &StructuredFunctor,
    src: &Structured,
    dst: &Structured,
    mode: Mode,
) -> ValidationReport {
    let mut report = check_functor(f, src, dst);
    report.extend(check_functor(g, src, dst));
    if !report.is_valid() {
        return report;
    }
    let (c, d) = (src.base(), dst.base());
    if phi.len() != c.object_count() {
        report.push(Violation::new(
            "T.map",
            "components do not cover the source objects",
        ));
        return report;
    }
    for a in c.objects() {
        let p = phi[a.0];
        if !d.contains_morphism(p) || d.dom(p) != f.ob(a) || d.cod(p) != g.ob(a) {
            report.push(
                Violation::new(
                    "T.map",
                    format!("component at {} is not F A -> G A", c.object_label(a)),
                )
                .with_objects([a]),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    let restriction_lax = matches!((src, mode), (Structured::Restriction(_), Mode::Lax));
    for h in c.morphisms() {
        let (a, b) = (c.dom(h), c.cod(h));
        let rhs = d.compose(f.mor(h), phi[b.0]);
        let lhs = match src {
            Structured::Restriction(r) if restriction_lax => {
                d.compose_path(&[f.mor(r.bar(h)), phi[a.0], g.mor(h)])
            }
            _ => d.compose(phi[a.0], g.mor(h)),
        };
        if lhs != rhs {
            report.push(
                Violation::new(
                    "T.natural",
                    format!("naturality square of {} does not commute", c.label(h)),
                )
                .with_morphisms([h]),
            );
        }
    }
    let square = |report: &mut ValidationReport, axiom: &str, m: MorId, what: String| {
        let (u, a) = (c.dom(m), c.cod(m));
        let w = PullbackWitness {
            apex: f.ob(u),
            proj_left: f.mor(m),
            proj_right: phi[u.0],
        };
        if !d.is_pullback(phi[a.0], g.mor(m), &w) {
            report.push(
                Violation::new(
                    axiom,
                    format!("naturality square of {what} is not a pullback"),
                )
                .with_objects([u, a])
                .with_morphisms([m]),
            );
        }
    };
    match dst {
        Structured::Restriction(s) if matches!(src, Structured::Restriction(_)) => {
            for a in c.objects() {
                if !is_total(s, phi[a.0]) {
                    report.push(
                        Violation::new(
                            "T.restriction",
                            format!("component at {} is not total", c.object_label(a)),
                        )
                        .with_objects([a]),
                    );
                }
            }
        }
        _ if mode == Mode::Lax => {}
        Structured::Local(_) => {
            if let Structured::Local(l) = src {
                for m in c.objects() {
                    square(
                        &mut report,
                        "T.local",
                        l.eta(m),
                        format!("eta of {}", c.object_label(m)),
                    );
                }
            }
        }
        Structured::Inclusion(_) => {
            if let Structured::Inclusion(n) = src {
                for &m in &n.inclusions {
                    square(&mut report, "T.inclusion", m, c.label(m).to_string());
                }
            }
        }
        Structured::Partial(q) => {
            if let Structured::Partial(p) = src {
                for &(u, a) in &p.leq {
                    if q.contract_to(phi[a.0], g.ob(u)) != Some((f.ob(u), phi[u.0])) {
                        report.push(
                            Violation::new(
                                "T.partial",
                                format!(
                                    "contraction of the component at {} to G {} is not (F {}, component)",
                                    c.object_label(a),
                                    c.object_label(u),
                                    c.object_label(u)
                                ),
                            )
                            .with_objects([u, a]),
                        );
                    }
                }
            }
        }
        Structured::Restriction(_) => {}
    }
    report
}

/// One step of the translation chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub from: Flavor,
    pub to: Flavor,
    pub certified: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub input: Flavor,
    pub hops: Vec<Hop>,
    pub obstruction: Option<String>,
}

impl ChainReport {
    pub fn all_certified(&self) -> bool {
        self.obstruction.is_none() && self.hops.iter().all(|h| h.certified)
    }

    /// Was the hop between these flavors (in either direction) certified?
    pub fn certified(&self, a: Flavor, b: Flavor) -> bool {
        self.hops
            .iter()
            .any(|h| h.certified && ((h.from, h.to) == (a, b) || (h.from, h.to) == (b, a)))
    }
}

fn require_valid(report: ValidationReport, what: &str) -> Result<()> {
    if report.is_valid() {
        Ok(())
    } else {
        Err(fail(format!("{what} fails {}", report.axioms().join(", "))))
    }
}

fn hop<T>(
    from: Flavor,
    to: Flavor,
    step: impl FnOnce() -> Result<(T, String)>,
) -> (Hop, Option<T>) {
    match step() {
        Ok((out, detail)) => (
            Hop {
                from,
                to,
                certified: true,
                detail,
            },
            Some(out),
        ),
        Err(e) => (
            Hop {
                from,
                to,
                certified: false,
                detail: e.to_string(),
            },
            None,
        ),
    }
}

fn restriction_to_local_hop(r: &RestrictionStructure) -> (Hop, Option<LocalStructure>) {
    hop(Flavor::Restriction, Flavor::Local, || {
        let lx = restriction_to_local(r)?;
        require_valid(validate_local(&lx.local), "L[X]")?;
        let cert = roundtrip_restriction(r)?;
        roundtrip_local(&lx.local)?;
        let detail = format!(
            "X ≅ R[L[X]] on {} objects and {} morphisms",
            cert.object_map.len(),
            cert.morphism_map.len()
        );
        Ok((lx.local, detail))
    })
}

fn local_to_restriction_hop(lc: &LocalStructure) -> (Hop, Option<RestrictionStructure>) {
    hop(Flavor::Local, Flavor::Restriction, || {
        let rc = local_to_restriction(lc)?;
        require_valid(validate_restriction(&rc.restriction), "R[C]")?;
        let cert = roundtrip_local(lc)?;
        roundtrip_restriction(&rc.restriction)?;
        let detail = format!(
            "C ≅ L[R[C]] on {} objects and {} morphisms",
            cert.object_map.len(),
            cert.morphism_map.len()
        );
        Ok((rc.restriction, detail))
    })
}

fn local_to_inclusion_hop(lc: &LocalStructure) -> (Hop, Option<InclusionSystem>) {
    hop(Flavor::Local, Flavor::Inclusion, || {
        let n = inclusion_from_local(lc);
        require_valid(validate_inclusion(&n), "inclusion system")?;
        if local_from_bounded_inclusion(&n)? != *lc {
            return Err(fail(
                "maximal inclusions do not recover the local structure".into(),
            ));
        }
        let detail = format!(
            "{} members, bounded, identical round trip",
            n.inclusions.len()
        );
        Ok((n, detail))
    })
}

fn inclusion_to_local_hop(n: &InclusionSystem) -> (Hop, Option<LocalStructure>) {
    hop(Flavor::Inclusion, Flavor::Local, || {
        let lc = local_from_bounded_inclusion(n)?;
        require_valid(validate_local(&lc), "local structure")?;
        if inclusion_from_local(&lc) != *n {
            return Err(fail(
                "members are not recovered from the maximal inclusions".into(),
            ));
        }
        Ok((lc, "identical round trip".to_string()))
    })
}

fn inclusion_to_partial_hop(n: &InclusionSystem) -> (Hop, Option<PartialStructure>) {
    hop(Flavor::Inclusion, Flavor::Partial, || {
        let p = partial_from_inclusion(n)?;
        require_valid(validate_partial(&p), "partial structure")?;
        if inclusion_from_partial(&p)? != *n {
            return Err(fail("canonical monics do not recover the members".into()));
        }
        Ok((p, "identical round trip".to_string()))
    })
}

fn partial_to_inclusion_hop(p: &PartialStructure) -> (Hop, Option<InclusionSystem>) {
    hop(Flavor::Partial, Flavor::Inclusion, || {
        let n = inclusion_from_partial(p)?;
        require_valid(validate_inclusion(&n), "inclusion system")?;
        if partial_from_inclusion(&n)? != *p {
            return Err(fail(
                "pullbacks of canonical monics do not recover the tables".into(),
            ));
        }
        Ok((n, "identical round trip".to_string()))
    })
}

/// Why `n` has no local counterpart, if it is unbounded.
pub fn unbounded_note(n: &InclusionSystem) -> Option<String> {
    match is_bounded_inclusion(n).boundedness {
        crate::partial::Boundedness::Bounded { .. } => None,
        crate::partial::Boundedness::Unbounded { object, maximal } => {
            let c = &n.base;
            let names: Vec<&str> = maximal.iter().map(|&t| c.object_label(t)).collect();
            Some(format!(
                "unbounded: {} lies below {} maximal objects [{}]",
                c.object_label(object),
                maximal.len(),
                names.join(", ")
            ))
        }
    }
}

/// Walk restriction ↔ local ↔ inclusion ↔ partial from the input's flavor,
/// certifying each hop's round trip; unbounded inputs stop after
/// partial ↔ inclusion.
pub fn chain_certificate(input: &Structured) -> ChainReport {
    let mut report = ChainReport {
        input: input.flavor(),
        hops: Vec::new(),
        obstruction: None,
    };
    let validation = input.validate();
    if !validation.is_valid() {
        report.obstruction = Some(format!(
            "input is not a valid {} structure: {}",
            input.flavor(),
            validation.axioms().join(", ")
        ));
        return report;
    }
    match input {
        Structured::Restriction(r) => {
            let (h, lc) = restriction_to_local_hop(r);
            report.hops.push(h);
            if let Some(lc) = lc {
                let (h, n) = local_to_inclusion_hop(&lc);
                report.hops.push(h);
                if let Some(n) = n {
                    report.hops.push(inclusion_to_partial_hop(&n).0);
                }
            }
        }
        Structured::Local(lc) => {
            report.hops.push(local_to_restriction_hop(lc).0);
            let (h, n) = local_to_inclusion_hop(lc);
            report.hops.push(h);
            if let Some(n) = n {
                report.hops.push(inclusion_to_partial_hop(&n).0);
            }
        }
        Structured::Inclusion(n) => {
            report.hops.push(inclusion_to_partial_hop(n).0);
            if let Some(note) = unbounded_note(n) {
                report.obstruction = Some(note);
                return report;
            }
            let (h, lc) = inclusion_to_local_hop(n);
            report.hops.push(h);
            if let Some(lc) = lc {
                report.hops.push(local_to_restriction_hop(&lc).0);
            }
        }
        Structured::Partial(p) => {
            let (h, n) = partial_to_inclusion_hop(p);
            report.hops.push(h);
            let Some(n) = n else { return report };
            if let Some(note) = unbounded_note(&n) {
                report.obstruction = Some(note);
                return report;
            }
            let (h, lc) = inclusion_to_local_hop(&n);
            report.hops.push(h);
            if let Some(lc) = lc {
                report.hops.push(local_to_restriction_hop(&lc).0);
            }
        }
    }
    report
}
