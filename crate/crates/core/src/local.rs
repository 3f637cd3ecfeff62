//! Local structures: an enlargement `L M` and a maximal inclusion
//! `η_M: M -> L M` for every object.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    validate_category, FinCategory, MorId, ObjId, ProductWitness, PullbackWitness,
};
use crate::report::{ValidationReport, Violation};
use crate::restriction::{compatible_subsets, JoinOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalStructure {
    pub base: FinCategory,
    pub enlargement: Vec<ObjId>,
    pub eta: Vec<MorId>,
}

impl LocalStructure {
    pub fn new(base: FinCategory, enlargement: Vec<ObjId>, eta: Vec<MorId>) -> Result<Self> {
        let n = base.object_count();
        let mut problems = Vec::new();
        if enlargement.len() != n || eta.len() != n {
            problems.push(Violation::new(
                "L.structure",
                format!(
                    "enlargement/eta tables have {}/{} entries for {} objects",
                    enlargement.len(),
                    eta.len(),
                    n
                ),
            ));
        }
        for (m, l) in enlargement.iter().enumerate() {
            if !base.contains_object(*l) {
                problems.push(
                    Violation::new("L.structure", format!("enlargement of {m} is missing"))
                        .with_objects([ObjId(m)]),
                );
            }
        }
        for (m, e) in eta.iter().enumerate() {
            if !base.contains_morphism(*e) {
                problems.push(
                    Violation::new("L.structure", format!("eta of {m} is missing"))
                        .with_objects([ObjId(m)]),
                );
            }
        }
        if !problems.is_empty() {
            return Err(Error::Structural(problems));
        }
        Ok(LocalStructure {
            base,
            enlargement,
            eta,
        })
    }

    /// Every object total.
    pub fn trivial(base: FinCategory) -> Self {
        let enlargement = base.objects().collect();
        let eta = base.objects().map(|a| base.identity(a)).collect();
        LocalStructure {
            base,
            enlargement,
            eta,
        }
    }

    pub fn enlargement(&self, m: ObjId) -> ObjId {
        self.enlargement[m.0]
    }

    pub fn eta(&self, m: ObjId) -> MorId {
        self.eta[m.0]
    }
}

pub fn validate_local(lc: &LocalStructure) -> ValidationReport {
    let c = &lc.base;
    let mut report = validate_category(c);
    if !report.is_valid() {
        return report;
    }
    let typed: Vec<bool> = c
        .objects()
        .map(|m| {
            let e = lc.eta(m);
            c.dom(e) == m && c.cod(e) == lc.enlargement(m)
        })
        .collect();
    for m in c.objects() {
        let (l, e) = (lc.enlargement(m), lc.eta(m));
        if !typed[m.0] {
            report.push(
                Violation::new(
                    "L.type",
                    format!(
                        "eta of {} is {}, not a morphism into its enlargement {}",
                        c.object_label(m),
                        c.label(e),
                        c.object_label(l)
                    ),
                )
                .with_objects([m, l])
                .with_morphisms([e]),
            );
        }
        if lc.enlargement(l) != l {
            report.push(
                Violation::new("L.1", format!("L L M != L M at {}", c.object_label(m)))
                    .with_objects([m, l, lc.enlargement(l)]),
            );
        }
        if lc.eta(l) != c.identity(l) {
            report.push(
                Violation::new(
                    "L.1",
                    format!("eta of L M is not the identity at {}", c.object_label(m)),
                )
                .with_objects([m, l])
                .with_morphisms([lc.eta(l)]),
            );
        }
        if !c.is_monic(e) {
            report.push(
                Violation::new("L.2", format!("eta of {} is not monic", c.object_label(m)))
                    .with_objects([m])
                    .with_morphisms([e]),
            );
        }
    }
    for m in c.objects().filter(|m| typed[m.0]) {
        let l = lc.enlargement(m);
        for &f in c.incoming(l) {
            let n = c.dom(f);
            if !typed[n.0] {
                continue;
            }
            let candidates = match c.pullbacks(f, lc.eta(m)) {
                Ok(p) => p,
                Err(e) => {
                    report.push(
                        Violation::new("L.3", e.to_string())
                            .with_objects([m, n])
                            .with_morphisms([f]),
                    );
                    continue;
                }
            };
            if !candidates
                .iter()
                .any(|w| satisfies_local_equations(lc, n, w))
            {
                report.push(
                    Violation::new(
                        "L.3",
                        format!(
                            "no pullback of eta of {} along {} meets the enlargement equations",
                            c.object_label(m),
                            c.label(f)
                        ),
                    )
                    .with_objects([m, n, l])
                    .with_objects(candidates.iter().map(|w| w.apex))
                    .with_morphisms([f, lc.eta(m), lc.eta(n)])
                    .with_morphisms(candidates.iter().map(|w| w.proj_left)),
                );
            }
        }
    }
    report
}

/// `L P = L N` and `proj_left ; η_N = η_P` for a cone with left leg into `N`.
fn satisfies_local_equations(lc: &LocalStructure, n: ObjId, w: &PullbackWitness) -> bool {
    lc.enlargement(w.apex) == lc.enlargement(n)
        && lc.base.compose(w.proj_left, lc.eta(n)) == Some(lc.eta(w.apex))
}

/// The least pullback of `η_M` along `f: N -> L M` meeting the enlargement equations.
///
/// This is the representative used by every construction that needs a
/// pullback of a maximal inclusion.
pub fn local_pullback(lc: &LocalStructure, f: MorId, m: ObjId) -> Result<Option<PullbackWitness>> {
    let n = lc.base.dom(f);
    Ok(lc
        .base
        .pullbacks(f, lc.eta(m))?
        .into_iter()
        .find(|w| satisfies_local_equations(lc, n, w)))
}

pub fn is_total_object(lc: &LocalStructure, m: ObjId) -> bool {
    lc.enlargement(m) == m && lc.eta(m) == lc.base.identity(m)
}

pub fn total_objects(lc: &LocalStructure) -> Vec<ObjId> {
    lc.base
        .objects()
        .filter(|&m| is_total_object(lc, m))
        .collect()
}

pub fn object_compatible(lc: &LocalStructure, m: ObjId, n: ObjId) -> bool {
    lc.enlargement(m) == lc.enlargement(n)
}

/// The unique `m: M -> N` with `m ; η_N = η_M`, when `M ≤ N`.
pub fn object_leq(lc: &LocalStructure, m: ObjId, n: ObjId) -> Result<Option<MorId>> {
    let c = &lc.base;
    if !object_compatible(lc, m, n) {
        return Ok(None);
    }
    let found: Vec<MorId> = c
        .hom(m, n)
        .iter()
        .copied()
        .filter(|&x| c.compose(x, lc.eta(n)) == Some(lc.eta(m)))
        .collect();
    match found.as_slice() {
        [] => Ok(None),
        [x] if c.is_monic(*x) => Ok(Some(*x)),
        [x] => Err(Error::Internal(format!(
            "bounding morphism {} is not monic",
            c.label(*x)
        ))),
        _ => Err(Error::Internal(format!(
            "{} bounding morphisms from {} to {}",
            found.len(),
            c.object_label(m),
            c.object_label(n)
        ))),
    }
}

/// The wedge `A ∧ B`: the canonical pullback of `η_A` along `η_B`,
/// with `proj_left` into `A` and `proj_right` into `B`.
pub fn wedge(lc: &LocalStructure, a: ObjId, b: ObjId) -> Result<Option<PullbackWitness>> {
    if !object_compatible(lc, a, b) {
        return Ok(None);
    }
    lc.base.find_pullback(lc.eta(a), lc.eta(b))
}

fn require_common_codomain(c: &FinCategory, f: MorId, g: MorId) -> Result<()> {
    if c.cod(f) == c.cod(g) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} and {} have different codomains",
            c.label(f),
            c.label(g)
        )))
    }
}

pub fn morphism_compatible(lc: &LocalStructure, f: MorId, g: MorId) -> Result<bool> {
    let c = &lc.base;
    require_common_codomain(c, f, g)?;
    let (a, b) = (c.dom(f), c.dom(g));
    if !object_compatible(lc, a, b) {
        return Ok(false);
    }
    let w = wedge(lc, a, b)?.ok_or_else(|| {
        Error::Precondition(format!(
            "no wedge of {} and {}",
            c.object_label(a),
            c.object_label(b)
        ))
    })?;
    Ok(c.compose(w.proj_left, f) == c.compose(w.proj_right, g))
}

/// `f ≤ g` iff `dom f ≤ dom g` via `m` and `m ; g = f`.
pub fn morphism_leq(lc: &LocalStructure, f: MorId, g: MorId) -> Result<bool> {
    let c = &lc.base;
    require_common_codomain(c, f, g)?;
    Ok(object_leq(lc, c.dom(f), c.dom(g))?.is_some_and(|m| c.compose(m, g) == Some(f)))
}

/// Memoized order data for repeated compatibility, order and join queries.
#[derive(Clone, Debug)]
pub struct LocalOrder<'a> {
    lc: &'a LocalStructure,
    obj_leq: Vec<Option<MorId>>,
    wedges: HashMap<(ObjId, ObjId), Option<PullbackWitness>>,
}

impl<'a> LocalOrder<'a> {
    pub fn new(lc: &'a LocalStructure) -> Result<Self> {
        let c = &lc.base;
        let n = c.object_count();
        let mut obj_leq = vec![None; n * n];
        let mut wedges = HashMap::new();
        for a in c.objects() {
            for b in c.objects() {
                obj_leq[a.0 * n + b.0] = object_leq(lc, a, b)?;
                if a <= b && object_compatible(lc, a, b) {
                    wedges.insert((a, b), wedge(lc, a, b)?);
                }
            }
        }
        Ok(LocalOrder {
            lc,
            obj_leq,
            wedges,
        })
    }

    pub fn object_leq(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.obj_leq[a.0 * self.lc.base.object_count() + b.0]
    }

    /// The wedge of an unordered pair, oriented as `(a, b)`.
    pub fn wedge(&self, a: ObjId, b: ObjId) -> Option<PullbackWitness> {
        if a <= b {
            self.wedges.get(&(a, b)).copied().flatten()
        } else {
            self.wedges
                .get(&(b, a))
                .copied()
                .flatten()
                .map(|w| PullbackWitness {
                    apex: w.apex,
                    proj_left: w.proj_right,
                    proj_right: w.proj_left,
                })
        }
    }

    pub fn compatible(&self, f: MorId, g: MorId) -> bool {
        let c = &self.lc.base;
        c.cod(f) == c.cod(g)
            && self
                .wedge(c.dom(f), c.dom(g))
                .is_some_and(|w| c.compose(w.proj_left, f) == c.compose(w.proj_right, g))
    }

    pub fn leq(&self, f: MorId, g: MorId) -> bool {
        let c = &self.lc.base;
        c.cod(f) == c.cod(g)
            && self
                .object_leq(c.dom(f), c.dom(g))
                .is_some_and(|m| c.compose(m, g) == Some(f))
    }

    /// Morphisms into `n` whose domain has enlargement `e`.
    pub fn typed_into(&self, e: ObjId, n: ObjId) -> Vec<MorId> {
        let c = &self.lc.base;
        c.incoming(n)
            .iter()
            .copied()
            .filter(|&f| self.lc.enlargement(c.dom(f)) == e)
            .collect()
    }

    /// The join of a compatible family into `n` whose domains have enlargement `e`.
    ///
    /// The enlargement fixes the type of the empty family.
    pub fn join(&self, e: ObjId, n: ObjId, family: &[MorId]) -> Result<Option<MorId>> {
        let c = &self.lc.base;
        let candidates = self.typed_into(e, n);
        for &f in family {
            if !candidates.contains(&f) {
                return Err(Error::Precondition(format!(
                    "{} does not have the family's type",
                    c.label(f)
                )));
            }
        }
        let upper: Vec<MorId> = candidates
            .iter()
            .copied()
            .filter(|&h| family.iter().all(|&f| self.leq(f, h)))
            .collect();
        let least: Vec<MorId> = upper
            .iter()
            .copied()
            .filter(|&j| upper.iter().all(|&h| self.leq(j, h)))
            .collect();
        if least.len() > 1 {
            return Err(Error::Internal(format!(
                "{} distinct joins into {}",
                least.len(),
                c.object_label(n)
            )));
        }
        Ok(least.first().copied())
    }
}

/// An extension `f̃: L M -> L N` whose square with `f` and the etas is a pullback.
pub fn is_extendible(lc: &LocalStructure, f: MorId) -> Option<MorId> {
    let c = &lc.base;
    let (m, n) = (c.dom(f), c.cod(f));
    let (lm, ln) = (lc.enlargement(m), lc.enlargement(n));
    let square = PullbackWitness {
        apex: m,
        proj_left: lc.eta(m),
        proj_right: f,
    };
    c.hom(lm, ln).iter().copied().find(|&ext| {
        c.compose(f, lc.eta(n)) == c.compose(lc.eta(m), ext)
            && c.is_pullback(ext, lc.eta(n), &square)
    })
}

/// Does `f` factor as an isomorphism followed by a bounding monic into `cod f`?
pub fn is_local_isomorphism(lc: &LocalStructure, f: MorId) -> Result<bool> {
    let c = &lc.base;
    let (a, b) = (c.dom(f), c.cod(f));
    for v in c.objects() {
        let Some(m) = object_leq(lc, v, b)? else {
            continue;
        };
        if c.find_isomorphisms(a, v)
            .iter()
            .any(|&u| c.compose(u, m) == Some(f))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn is_inverse_local(lc: &LocalStructure) -> Result<bool> {
    for f in lc.base.morphisms() {
        if !is_local_isomorphism(lc, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Objects not isomorphic to any total object.
pub fn non_split_objects(lc: &LocalStructure) -> Vec<ObjId> {
    let totals = total_objects(lc);
    lc.base
        .objects()
        .filter(|&m| {
            !totals
                .iter()
                .any(|&t| !lc.base.find_isomorphisms(m, t).is_empty())
        })
        .collect()
}

/// Every object is isomorphic to a total one; objects need not be total themselves.
pub fn is_split_local(lc: &LocalStructure) -> bool {
    non_split_objects(lc).is_empty()
}

/// The first total object that is terminal.
pub fn local_terminal(lc: &LocalStructure) -> Option<ObjId> {
    total_objects(lc)
        .into_iter()
        .find(|&t| lc.base.is_terminal(t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LocalProduct {
    Absent,
    /// A product exists but no choice makes `L(M×N) = L M × L N` hold on the nose.
    ProductOnly {
        product: ProductWitness,
    },
    Local {
        product: ProductWitness,
        enlarged: ProductWitness,
    },
}

/// Products of `M` and `N` whose enlargement is, strictly, a product of
/// `L M` and `L N` paired with the etas.
pub fn local_product(lc: &LocalStructure, m: ObjId, n: ObjId) -> LocalProduct {
    let c = &lc.base;
    let products = c.products(m, n);
    let (lm, ln) = (lc.enlargement(m), lc.enlargement(n));
    let enlarged_products = c.products(lm, ln);
    for w in &products {
        let lp = lc.enlargement(w.apex);
        let ep = lc.eta(w.apex);
        let found = enlarged_products.iter().find(|w2| {
            w2.apex == lp
                && c.compose(ep, w2.proj_a) == c.compose(w.proj_a, lc.eta(m))
                && c.compose(ep, w2.proj_b) == c.compose(w.proj_b, lc.eta(n))
        });
        if let Some(w2) = found {
            return LocalProduct::Local {
                product: *w,
                enlarged: *w2,
            };
        }
    }
    match products.first() {
        Some(w) => LocalProduct::ProductOnly { product: *w },
        None => LocalProduct::Absent,
    }
}

fn dedup_sorted(mut v: Vec<MorId>) -> Vec<MorId> {
    v.sort();
    v.dedup();
    v
}

struct JoinChecker<'a> {
    lc: &'a LocalStructure,
    order: LocalOrder<'a>,
    pullbacks: HashMap<(MorId, ObjId), Option<PullbackWitness>>,
}

impl<'a> JoinChecker<'a> {
    fn pullback(&mut self, f: MorId, m: ObjId) -> Result<Option<PullbackWitness>> {
        if let Some(w) = self.pullbacks.get(&(f, m)) {
            return Ok(*w);
        }
        let w = local_pullback(self.lc, f, m)?;
        self.pullbacks.insert((f, m), w);
        Ok(w)
    }

    /// Join of a family into `n`, typed by the enlargement `e`; returns
    /// `(join object, join morphism)`.
    fn join(&self, e: ObjId, n: ObjId, family: &[MorId]) -> Result<Option<(ObjId, MorId)>> {
        Ok(self
            .order
            .join(e, n, family)?
            .map(|j| (self.lc.base.dom(j), j)))
    }
}

/// Joins of compatible families, the pullback condition on them, the
/// post-composition lemma and the pullback form of post-composition.
pub fn validate_join_local(lc: &LocalStructure, opts: JoinOptions) -> ValidationReport {
    let base_report = validate_local(lc);
    if !base_report.is_valid() {
        return base_report;
    }
    let c = &lc.base;
    let mut report = ValidationReport::new();
    let order = match LocalOrder::new(lc) {
        Ok(o) => o,
        Err(e) => {
            report.push(Violation::new("JL.1", e.to_string()));
            return report;
        }
    };
    let mut checker = JoinChecker {
        lc,
        order,
        pullbacks: HashMap::new(),
    };
    let mut classes: Vec<ObjId> = c.objects().map(|m| lc.enlargement(m)).collect();
    classes.sort();
    classes.dedup();

    let mut joins: HashMap<(ObjId, ObjId), Vec<(Vec<MorId>, ObjId, MorId)>> = HashMap::new();
    for &e in &classes {
        for n in c.objects() {
            let candidates = checker.order.typed_into(e, n);
            let Some(families) = compatible_subsets(
                &candidates,
                |f, g| checker.order.compatible(f, g),
                opts.max_families,
            ) else {
                report.mark_inconclusive(format!(
                    "compatible families into {} exceed the cap",
                    c.object_label(n)
                ));
                continue;
            };
            for family in families {
                match checker.join(e, n, &family) {
                    Ok(Some((jo, j))) => joins.entry((e, n)).or_default().push((family, jo, j)),
                    Ok(None) => report.push(
                        Violation::new(
                            "JL.1",
                            format!(
                                "a compatible family of {} morphisms into {} has no join",
                                family.len(),
                                c.object_label(n)
                            ),
                        )
                        .with_objects([e, n])
                        .with_morphisms(family),
                    ),
                    Err(err) => report.push(
                        Violation::new("JL.1", err.to_string())
                            .with_objects([e, n])
                            .with_morphisms(family),
                    ),
                }
            }
        }
    }

    let mut keys: Vec<(ObjId, ObjId)> = joins.keys().copied().collect();
    keys.sort();
    for &(e, n) in &keys {
        for (family, jo, j) in &joins[&(e, n)] {
            let (family, jo, j) = (family.as_slice(), *jo, *j);
            if let Err(v) = check_pullback_condition(&mut checker, e, family, jo) {
                report.push(v.with_morphisms(family.iter().copied()));
            }
            for &h in c.outgoing(n) {
                let post = dedup_sorted(family.iter().filter_map(|&f| c.compose(f, h)).collect());
                let ok = match checker.join(e, c.cod(h), &post) {
                    Ok(Some((jo2, j2))) => jo2 == jo && Some(j2) == c.compose(j, h),
                    _ => false,
                };
                if !ok {
                    report.push(
                        Violation::new(
                            "JL.post",
                            format!(
                                "post-composition with {} does not preserve a join into {}",
                                c.label(h),
                                c.object_label(n)
                            ),
                        )
                        .with_morphisms(std::iter::once(h).chain(family.iter().copied())),
                    );
                }
            }
            for target in c.objects().filter(|&t| lc.enlargement(t) == n) {
                if let Err(v) = check_corollary_square(&mut checker, e, family, jo, j, target) {
                    report.push(v.with_morphisms(family.iter().copied()));
                }
            }
        }
    }
    report
}

/// For every `g: P -> L J`, the square built from the family's pullbacks
/// along `g` must be a pullback of `η_J` along `g`.
fn check_pullback_condition(
    checker: &mut JoinChecker<'_>,
    e: ObjId,
    family: &[MorId],
    jo: ObjId,
) -> std::result::Result<(), Violation> {
    let lc = checker.lc;
    let c = &lc.base;
    for &g in c.incoming(e) {
        let p = c.dom(g);
        let fail = |msg: String| {
            Violation::new("JL.2", msg)
                .with_objects([p, jo])
                .with_morphisms([g])
        };
        let mut left = Vec::new();
        let mut top = Vec::new();
        for &f in family {
            let mf = c.dom(f);
            let w = checker.pullback(g, mf).ok().flatten().ok_or_else(|| {
                fail(format!(
                    "no pullback of eta of {} along {}",
                    c.object_label(mf),
                    c.label(g)
                ))
            })?;
            let bound = checker.order.object_leq(mf, jo).ok_or_else(|| {
                fail(format!(
                    "{} is not below the join object",
                    c.object_label(mf)
                ))
            })?;
            left.push(w.proj_left);
            top.push(
                c.compose(w.proj_right, bound)
                    .ok_or_else(|| fail("ill-typed composite".into()))?,
            );
        }
        let ep = lc.enlargement(p);
        let left = checker
            .join(ep, p, &dedup_sorted(left))
            .ok()
            .flatten()
            .ok_or_else(|| fail(format!("projections along {} have no join", c.label(g))))?;
        let top = checker
            .join(ep, jo, &dedup_sorted(top))
            .ok()
            .flatten()
            .ok_or_else(|| fail(format!("restricted legs along {} have no join", c.label(g))))?;
        if left.0 != top.0 {
            return Err(fail(format!(
                "joined legs along {} have different domains",
                c.label(g)
            )));
        }
        let square = PullbackWitness {
            apex: left.0,
            proj_left: left.1,
            proj_right: top.1,
        };
        if !c.is_pullback(g, lc.eta(jo), &square) {
            return Err(fail(format!(
                "the joined square along {} is not a pullback",
                c.label(g)
            )));
        }
    }
    Ok(())
}

/// For a family into `L N`, joining the pullbacks of `η_N` along its members
/// yields the pullback of `η_N` along the join.
fn check_corollary_square(
    checker: &mut JoinChecker<'_>,
    e: ObjId,
    family: &[MorId],
    jo: ObjId,
    j: MorId,
    target: ObjId,
) -> std::result::Result<(), Violation> {
    let lc = checker.lc;
    let c = &lc.base;
    let fail = |msg: String| {
        Violation::new("JL.cor", msg)
            .with_objects([target, jo])
            .with_morphisms([j])
    };
    let mut to_target = Vec::new();
    let mut to_join = Vec::new();
    for &f in family {
        let mf = c.dom(f);
        let w = checker.pullback(f, target).ok().flatten().ok_or_else(|| {
            fail(format!(
                "no pullback of eta of {} along {}",
                c.object_label(target),
                c.label(f)
            ))
        })?;
        let bound = checker.order.object_leq(mf, jo).ok_or_else(|| {
            fail(format!(
                "{} is not below the join object",
                c.object_label(mf)
            ))
        })?;
        to_target.push(w.proj_right);
        to_join.push(
            c.compose(w.proj_left, bound)
                .ok_or_else(|| fail("ill-typed composite".into()))?,
        );
    }
    let top = checker
        .join(e, target, &dedup_sorted(to_target))
        .ok()
        .flatten()
        .ok_or_else(|| fail("pulled-back legs have no join".into()))?;
    let left = checker
        .join(e, jo, &dedup_sorted(to_join))
        .ok()
        .flatten()
        .ok_or_else(|| fail("projections have no join".into()))?;
    if left.0 != top.0 {
        return Err(fail("joined legs have different domains".into()));
    }
    let square = PullbackWitness {
        apex: left.0,
        proj_left: left.1,
        proj_right: top.1,
    };
    if !c.is_pullback(j, lc.eta(target), &square) {
        return Err(fail(format!(
            "pullback of eta of {} along the join is not the joined square",
            c.object_label(target)
        )));
    }
    Ok(())
}
