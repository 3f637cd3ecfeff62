//! Finite categories presented by composition tables.
//!
//! Composition is diagrammatic everywhere: `compose(f, g)` is "first `f`,
//! then `g`" and is defined exactly when `cod f = dom g`. All searches
//! (monics, isomorphisms, pullbacks, products) are exhaustive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};

/// Default cap on the number of morphisms in any category.
pub const DEFAULT_MAX_MORPHISMS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorId(pub usize);

impl ObjId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub dom: ObjId,
    pub cod: ObjId,
    pub label: String,
}

/// Raw tables from which a [`FinCategory`] is built.
///
/// Object `i` is labelled `objects[i]`; `identities[i]` is its identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryParts {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<MorId>,
    pub composition: Vec<(MorId, MorId, MorId)>,
}

impl CategoryParts {
    /// Fill the composition table by evaluating `compose` on every composable pair.
    pub fn tabulate(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Self {
        let mut composition = Vec::new();
        for (i, f) in morphisms.iter().enumerate() {
            for (j, g) in morphisms.iter().enumerate() {
                if f.cod == g.dom {
                    let h = compose(MorId(i), MorId(j));
                    composition.push((MorId(i), MorId(j), h));
                }
            }
        }
        CategoryParts {
            objects,
            morphisms,
            identities,
            composition,
        }
    }
}

/// A commuting square `proj_left ; f = proj_right ; m` over the cospan `(f, m)`.
///
/// Field order gives the lexicographic order used to pick canonical witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PullbackWitness {
    pub apex: ObjId,
    pub proj_left: MorId,
    pub proj_right: MorId,
}

/// A product cone `(apex, proj_a, proj_b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProductWitness {
    pub apex: ObjId,
    pub proj_a: MorId,
    pub proj_b: MorId,
}

#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    compose: Vec<Option<MorId>>,
    homs: Vec<Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    limit: usize,
}

/// Equality is identifier equality: labels and the size cap are ignored.
impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects.len() == other.objects.len()
            && self.morphisms.len() == other.morphisms.len()
            && self
                .morphisms
                .iter()
                .zip(&other.morphisms)
                .all(|(a, b)| a.dom == b.dom && a.cod == b.cod)
            && self.identity == other.identity
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    pub fn new(parts: CategoryParts) -> Result<Self> {
        Self::with_limit(parts, DEFAULT_MAX_MORPHISMS)
    }

    /// Build a category, rejecting dangling identifiers and oversize tables.
    ///
    /// The category laws themselves are not checked here; see [`validate_category`].
    pub fn with_limit(parts: CategoryParts, limit: usize) -> Result<Self> {
        let n_obj = parts.objects.len();
        let n_mor = parts.morphisms.len();
        if n_mor > limit {
            return Err(Error::TooLarge {
                morphisms: n_mor,
                limit,
            });
        }
        let mut problems = Vec::new();
        for (i, m) in parts.morphisms.iter().enumerate() {
            if m.dom.0 >= n_obj || m.cod.0 >= n_obj {
                problems.push(
                    Violation::new(
                        "C.structure",
                        format!("morphism {i} refers to a missing object"),
                    )
                    .with_morphisms([MorId(i)]),
                );
            }
        }
        if parts.identities.len() != n_obj {
            problems.push(Violation::new(
                "C.structure",
                format!(
                    "{} identities given for {} objects",
                    parts.identities.len(),
                    n_obj
                ),
            ));
        }
        for (a, id) in parts.identities.iter().enumerate() {
            if id.0 >= n_mor {
                problems.push(
                    Violation::new(
                        "C.structure",
                        format!("identity of object {a} is a missing morphism {id}"),
                    )
                    .with_objects([ObjId(a)]),
                );
            }
        }
        let mut compose = vec![None; n_mor * n_mor];
        for &(f, g, h) in &parts.composition {
            if f.0 >= n_mor || g.0 >= n_mor || h.0 >= n_mor {
                problems.push(Violation::new(
                    "C.structure",
                    format!("composition triple [{f}, {g}, {h}] refers to a missing morphism"),
                ));
                continue;
            }
            let slot = &mut compose[f.0 * n_mor + g.0];
            match *slot {
                Some(prev) if prev != h => problems.push(
                    Violation::new(
                        "C.structure",
                        format!("conflicting composition entries for [{f}, {g}]"),
                    )
                    .with_morphisms([f, g]),
                ),
                _ => *slot = Some(h),
            }
        }
        if !problems.is_empty() {
            return Err(Error::Structural(problems));
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut incoming = vec![Vec::new(); n_obj];
        for (i, m) in parts.morphisms.iter().enumerate() {
            homs[m.dom.0 * n_obj + m.cod.0].push(MorId(i));
            outgoing[m.dom.0].push(MorId(i));
            incoming[m.cod.0].push(MorId(i));
        }
        Ok(FinCategory {
            objects: parts.objects,
            morphisms: parts.morphisms,
            identity: parts.identities,
            compose,
            homs,
            outgoing,
            incoming,
            limit,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn to_parts(&self) -> CategoryParts {
        let n = self.morphisms.len();
        let mut composition = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(h) = self.compose[f * n + g] {
                    composition.push((MorId(f), MorId(g), h));
                }
            }
        }
        CategoryParts {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identity.clone(),
            composition,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_label(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn label(&self, f: MorId) -> &str {
        &self.morphisms[f.0].label
    }

    /// The first object with this label.
    pub fn find_object(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|l| l == label).map(ObjId)
    }

    /// The first morphism with this label.
    pub fn find_morphism(&self, label: &str) -> Option<MorId> {
        self.morphisms
            .iter()
            .position(|m| m.label == label)
            .map(MorId)
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.0]
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].cod
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        let m = &self.morphisms[f.0];
        m.dom == m.cod && self.identity[m.dom.0] == f
    }

    pub fn is_endo(&self, f: MorId) -> bool {
        self.dom(f) == self.cod(f)
    }

    pub fn parallel(&self, f: MorId, g: MorId) -> bool {
        self.dom(f) == self.dom(g) && self.cod(f) == self.cod(g)
    }

    pub fn contains_object(&self, a: ObjId) -> bool {
        a.0 < self.objects.len()
    }

    pub fn contains_morphism(&self, f: MorId) -> bool {
        f.0 < self.morphisms.len()
    }

    /// The table entry for `(f, g)`, i.e. "first `f`, then `g`".
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.compose[f.0 * self.morphisms.len() + g.0]
    }

    /// Compose a non-empty path of morphisms left to right.
    pub fn compose_path(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(acc, g))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a.0]
    }

    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.incoming[b.0]
    }

    pub fn is_monic(&self, m: MorId) -> bool {
        let a = self.dom(m);
        self.objects().all(|x| {
            let hom = self.hom(x, a);
            hom.iter().enumerate().all(|(i, &g)| {
                hom[i + 1..]
                    .iter()
                    .all(|&h| self.compose(g, m) != self.compose(h, m))
            })
        })
    }

    /// The two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose(f, g) == Some(self.identity(a))
                && self.compose(g, f) == Some(self.identity(b))
        })
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn find_isomorphisms(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.hom(a, b)
            .iter()
            .copied()
            .filter(|&f| self.is_iso(f))
            .collect()
    }

    pub fn is_terminal(&self, t: ObjId) -> bool {
        self.objects().all(|x| self.hom(x, t).len() == 1)
    }

    /// Every commuting square over the cospan `(f, m)`, in lexicographic order.
    pub fn commuting_cones(&self, f: MorId, m: MorId) -> Vec<PullbackWitness> {
        let (x, y) = (self.dom(f), self.dom(m));
        let mut cones = Vec::new();
        for p in self.objects() {
            for &l in self.hom(p, x) {
                let lf = self.compose(l, f);
                for &r in self.hom(p, y) {
                    if lf.is_some() && lf == self.compose(r, m) {
                        cones.push(PullbackWitness {
                            apex: p,
                            proj_left: l,
                            proj_right: r,
                        });
                    }
                }
            }
        }
        cones
    }

    /// Number of `u: q.apex -> w.apex` with `u;w.proj_left = q.proj_left`
    /// and `u;w.proj_right = q.proj_right`.
    fn factorizations(&self, q: &PullbackWitness, w: &PullbackWitness) -> usize {
        self.hom(q.apex, w.apex)
            .iter()
            .filter(|&&u| {
                self.compose(u, w.proj_left) == Some(q.proj_left)
                    && self.compose(u, w.proj_right) == Some(q.proj_right)
            })
            .count()
    }

    fn is_limit_among(&self, w: &PullbackWitness, cones: &[PullbackWitness]) -> bool {
        cones.iter().all(|q| self.factorizations(q, w) == 1)
    }

    /// Does `w` commute over `(f, m)` and satisfy the universal property?
    pub fn is_pullback(&self, f: MorId, m: MorId, w: &PullbackWitness) -> bool {
        if self.cod(f) != self.cod(m)
            || self.dom(w.proj_left) != w.apex
            || self.dom(w.proj_right) != w.apex
            || self.cod(w.proj_left) != self.dom(f)
            || self.cod(w.proj_right) != self.dom(m)
        {
            return false;
        }
        let lf = self.compose(w.proj_left, f);
        if lf.is_none() || lf != self.compose(w.proj_right, m) {
            return false;
        }
        let cones = self.commuting_cones(f, m);
        self.is_limit_among(w, &cones)
    }

    /// All pullback squares over `(f, m)`, in lexicographic order.
    pub fn pullbacks(&self, f: MorId, m: MorId) -> Result<Vec<PullbackWitness>> {
        if self.cod(f) != self.cod(m) {
            return Err(Error::Precondition(format!(
                "{} and {} do not form a cospan",
                self.label(f),
                self.label(m)
            )));
        }
        let cones = self.commuting_cones(f, m);
        let found: Vec<PullbackWitness> = cones
            .iter()
            .filter(|w| self.is_limit_among(w, &cones))
            .copied()
            .collect();
        if let Some(first) = found.first() {
            for w in &found[1..] {
                let comparison = self.hom(w.apex, first.apex).iter().copied().find(|&u| {
                    self.compose(u, first.proj_left) == Some(w.proj_left)
                        && self.compose(u, first.proj_right) == Some(w.proj_right)
                });
                if !comparison.is_some_and(|u| self.is_iso(u)) {
                    return Err(Error::Internal(format!(
                        "non-isomorphic pullbacks over ({}, {})",
                        self.label(f),
                        self.label(m)
                    )));
                }
            }
        }
        Ok(found)
    }

    /// The lexicographically least pullback of `m` along `f`.
    pub fn find_pullback(&self, f: MorId, m: MorId) -> Result<Option<PullbackWitness>> {
        Ok(self.pullbacks(f, m)?.into_iter().next())
    }

    /// All product cones over `(a, b)`, in lexicographic order.
    pub fn products(&self, a: ObjId, b: ObjId) -> Vec<ProductWitness> {
        let mut cones = Vec::new();
        for p in self.objects() {
            for &x in self.hom(p, a) {
                for &y in self.hom(p, b) {
                    cones.push(ProductWitness {
                        apex: p,
                        proj_a: x,
                        proj_b: y,
                    });
                }
            }
        }
        cones
            .iter()
            .filter(|w| {
                cones.iter().all(|q| {
                    self.hom(q.apex, w.apex)
                        .iter()
                        .filter(|&&u| {
                            self.compose(u, w.proj_a) == Some(q.proj_a)
                                && self.compose(u, w.proj_b) == Some(q.proj_b)
                        })
                        .count()
                        == 1
                })
            })
            .copied()
            .collect()
    }

    pub fn opposite(&self) -> FinCategory {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                dom: m.cod,
                cod: m.dom,
                label: m.label.clone(),
            })
            .collect();
        let mut compose = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                compose[f * n + g] = self.compose[g * n + f];
            }
        }
        let n_obj = self.objects.len();
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for a in 0..n_obj {
            for b in 0..n_obj {
                homs[a * n_obj + b] = self.homs[b * n_obj + a].clone();
            }
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
            homs,
            outgoing: self.incoming.clone(),
            incoming: self.outgoing.clone(),
            limit: self.limit,
        }
    }

    /// The wide subcategory on the morphisms selected by `keep`.
    ///
    /// Fails if the selection misses an identity or is not closed under composition.
    pub fn wide_subcategory(&self, keep: impl Fn(MorId) -> bool) -> Result<Subcategory> {
        let source: Vec<MorId> = self.morphisms().filter(|&f| keep(f)).collect();
        let mut index = vec![None; self.morphisms.len()];
        for (i, &f) in source.iter().enumerate() {
            index[f.0] = Some(MorId(i));
        }
        let identities = self
            .objects()
            .map(|a| {
                index[self.identity(a).0].ok_or_else(|| {
                    Error::Internal(format!(
                        "subcategory misses the identity of {}",
                        self.object_label(a)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let morphisms = source.iter().map(|&f| self.morphism(f).clone()).collect();
        let mut composition = Vec::new();
        for &f in &source {
            for &g in self.outgoing(self.cod(f)) {
                let Some(g_new) = index[g.0] else { continue };
                let h = self.compose(f, g).and_then(|h| index[h.0]).ok_or_else(|| {
                    Error::Internal(format!(
                        "subcategory not closed under {} ; {}",
                        self.label(f),
                        self.label(g)
                    ))
                })?;
                composition.push((index[f.0].unwrap(), g_new, h));
            }
        }
        let category = FinCategory::with_limit(
            CategoryParts {
                objects: self.objects.clone(),
                morphisms,
                identities,
                composition,
            },
            self.limit,
        )?;
        Ok(Subcategory {
            category,
            source,
            index,
        })
    }
}

/// A wide subcategory together with its inclusion into the ambient category.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub category: FinCategory,
    source: Vec<MorId>,
    index: Vec<Option<MorId>>,
}

impl Subcategory {
    /// The ambient morphism that `f` stands for.
    pub fn to_source(&self, f: MorId) -> MorId {
        self.source[f.0]
    }

    /// The subcategory morphism standing for the ambient `f`, if selected.
    pub fn from_source(&self, f: MorId) -> Option<MorId> {
        self.index.get(f.0).copied().flatten()
    }
}

/// Check identity typing, composability, unit and associativity laws.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    for a in c.objects() {
        let id = c.identity(a);
        if c.dom(id) != a || c.cod(id) != a {
            report.push(
                Violation::new(
                    "C.identity",
                    format!(
                        "identity {} of {} is not an endomorphism of it",
                        c.label(id),
                        c.object_label(a)
                    ),
                )
                .with_objects([a])
                .with_morphisms([id]),
            );
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            let composable = c.cod(f) == c.dom(g);
            match (composable, c.compose(f, g)) {
                (true, None) => report.push(
                    Violation::new(
                        "C.composable",
                        format!("missing composite of {} ; {}", c.label(f), c.label(g)),
                    )
                    .with_morphisms([f, g]),
                ),
                (false, Some(_)) => report.push(
                    Violation::new(
                        "C.composable",
                        format!(
                            "composite given for non-composable {} ; {}",
                            c.label(f),
                            c.label(g)
                        ),
                    )
                    .with_morphisms([f, g]),
                ),
                (true, Some(h)) if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) => report.push(
                    Violation::new(
                        "C.composable",
                        format!(
                            "composite {} of {} ; {} has the wrong type",
                            c.label(h),
                            c.label(f),
                            c.label(g)
                        ),
                    )
                    .with_morphisms([f, g, h]),
                ),
                _ => {}
            }
        }
    }
    for f in c.morphisms() {
        let left = c.identity(c.dom(f));
        if c.compose(left, f) != Some(f) {
            report.push(
                Violation::new("C.unit", format!("left unit at {}", c.label(f)))
                    .with_morphisms([f, left]),
            );
        }
        let right = c.identity(c.cod(f));
        if c.compose(f, right) != Some(f) {
            report.push(
                Violation::new("C.unit", format!("right unit at {}", c.label(f)))
                    .with_morphisms([f, right]),
            );
        }
    }
    for f in c.morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            for &h in c.outgoing(c.cod(g)) {
                let lhs = c.compose(f, g).and_then(|fg| c.compose(fg, h));
                let rhs = c.compose(g, h).and_then(|gh| c.compose(f, gh));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        report.push(
                            Violation::new(
                                "C.assoc",
                                format!(
                                    "associativity fails at ({}, {}, {})",
                                    c.label(f),
                                    c.label(g),
                                    c.label(h)
                                ),
                            )
                            .with_morphisms([f, g, h]),
                        );
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mor(dom: usize, cod: usize, label: &str) -> Morphism {
        Morphism {
            dom: ObjId(dom),
            cod: ObjId(cod),
            label: label.to_string(),
        }
    }

    /// The cyclic group of order `n` as a one-object category.
    fn cyclic(n: usize) -> FinCategory {
        let morphisms = (0..n).map(|i| mor(0, 0, &format!("g{i}"))).collect();
        FinCategory::new(CategoryParts::tabulate(
            vec!["*".into()],
            morphisms,
            vec![MorId(0)],
            |f, g| MorId((f.0 + g.0) % n),
        ))
        .unwrap()
    }

    /// Objects 0, 1, 2 with two arrows 0 -> 2 and 1 -> 2 and nothing else.
    fn bare_cospan() -> FinCategory {
        let morphisms = vec![
            mor(0, 0, "id0"),
            mor(1, 1, "id1"),
            mor(2, 2, "id2"),
            mor(0, 2, "f"),
            mor(1, 2, "m"),
        ];
        FinCategory::new(CategoryParts::tabulate(
            vec!["X".into(), "Y".into(), "Z".into()],
            morphisms,
            vec![MorId(0), MorId(1), MorId(2)],
            |f, g| if f.0 <= 2 { g } else { f },
        ))
        .unwrap()
    }

    #[test]
    fn terminal_category_is_valid() {
        let c = cyclic(1);
        assert!(validate_category(&c).is_valid());
        assert!(c.is_terminal(ObjId(0)));
        assert_eq!(c.opposite(), c);
    }

    #[test]
    fn broken_left_unit_is_named() {
        let mut parts = cyclic(2).to_parts();
        for t in parts.composition.iter_mut() {
            if t.0 == MorId(0) && t.1 == MorId(1) {
                t.2 = MorId(0);
            }
        }
        let c = FinCategory::new(parts).unwrap();
        let report = validate_category(&c);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "C.unit" && v.message == "left unit at g1"));
    }

    #[test]
    fn dangling_references_are_structural() {
        let mut parts = cyclic(2).to_parts();
        parts.composition.push((MorId(0), MorId(7), MorId(1)));
        match FinCategory::new(parts) {
            Err(Error::Structural(v)) => assert_eq!(v.len(), 1),
            other => panic!("expected structural error, got {other:?}"),
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let parts = cyclic(5).to_parts();
        assert!(matches!(
            FinCategory::with_limit(parts, 4),
            Err(Error::TooLarge {
                morphisms: 5,
                limit: 4
            })
        ));
    }

    #[test]
    fn group_elements_are_isomorphisms() {
        let c = cyclic(2);
        assert_eq!(
            c.find_isomorphisms(ObjId(0), ObjId(0)),
            vec![MorId(0), MorId(1)]
        );
        assert!(c.is_monic(MorId(1)));
    }

    #[test]
    fn missing_pullback_is_absent() {
        let c = bare_cospan();
        assert!(validate_category(&c).is_valid());
        assert_eq!(c.find_pullback(MorId(3), MorId(4)).unwrap(), None);
        assert!(c.find_pullback(MorId(3), MorId(3)).unwrap().is_some());
        assert!(matches!(
            c.find_pullback(MorId(3), MorId(1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pullback_of_monic_along_itself_is_trivial() {
        let c = bare_cospan();
        let w = c.find_pullback(MorId(3), MorId(3)).unwrap().unwrap();
        assert_eq!(
            w,
            PullbackWitness {
                apex: ObjId(0),
                proj_left: MorId(0),
                proj_right: MorId(0)
            }
        );
    }

    #[test]
    fn wide_subcategory_of_identities() {
        let c = cyclic(3);
        let sub = c.wide_subcategory(|f| c.is_identity(f)).unwrap();
        assert_eq!(sub.category.morphism_count(), 1);
        assert_eq!(sub.to_source(MorId(0)), MorId(0));
        assert_eq!(sub.from_source(MorId(2)), None);
        assert!(c.wide_subcategory(|f| f == MorId(1)).is_err());
    }
}
