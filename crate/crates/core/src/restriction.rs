//! Restriction structures `f ↦ f̄` and everything derived from them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    validate_category, CategoryParts, FinCategory, MorId, Morphism, ObjId, ProductWitness,
    Subcategory,
};
use crate::report::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionStructure {
    pub base: FinCategory,
    /// `bar[f]` is the restriction idempotent of `f`.
    pub bar: Vec<MorId>,
}

impl RestrictionStructure {
    pub fn new(base: FinCategory, bar: Vec<MorId>) -> Result<Self> {
        if bar.len() != base.morphism_count() {
            return Err(Error::Structural(vec![Violation::new(
                "R.structure",
                format!(
                    "bar table has {} entries for {} morphisms",
                    bar.len(),
                    base.morphism_count()
                ),
            )]));
        }
        let dangling: Vec<Violation> = bar
            .iter()
            .enumerate()
            .filter(|(_, b)| !base.contains_morphism(**b))
            .map(|(f, b)| {
                Violation::new(
                    "R.structure",
                    format!("bar of {f} is a missing morphism {b}"),
                )
                .with_morphisms([MorId(f)])
            })
            .collect();
        if !dangling.is_empty() {
            return Err(Error::Structural(dangling));
        }
        Ok(RestrictionStructure { base, bar })
    }

    /// Every morphism total.
    pub fn trivial(base: FinCategory) -> Self {
        let bar = base
            .morphisms()
            .map(|f| base.identity(base.dom(f)))
            .collect();
        RestrictionStructure { base, bar }
    }

    pub fn bar(&self, f: MorId) -> MorId {
        self.bar[f.0]
    }
}

/// A splitting `section ; retraction = id_E`, `retraction ; section = idempotent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub idempotent: MorId,
    pub section: MorId,
    pub retraction: MorId,
    pub splitting_object: ObjId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub witnesses: Vec<SplitWitness>,
    /// Restriction idempotents with no splitting.
    pub unsplit: Vec<MorId>,
}

impl SplitReport {
    pub fn is_split(&self) -> bool {
        self.unsplit.is_empty()
    }
}

pub fn validate_restriction(r: &RestrictionStructure) -> ValidationReport {
    let c = &r.base;
    let mut report = validate_category(c);
    if !report.is_valid() {
        return report;
    }
    let typed: Vec<bool> = c
        .morphisms()
        .map(|f| {
            let b = r.bar(f);
            c.dom(b) == c.dom(f) && c.cod(b) == c.dom(f)
        })
        .collect();
    for f in c.morphisms() {
        if !typed[f.0] {
            report.push(
                Violation::new(
                    "R.type",
                    format!(
                        "bar of {} is {}, not an endomorphism of its domain",
                        c.label(f),
                        c.label(r.bar(f))
                    ),
                )
                .with_morphisms([f, r.bar(f)]),
            );
        }
    }
    let all_typed = |ms: &[MorId]| ms.iter().all(|m| typed[m.0]);

    for f in c.morphisms() {
        let bf = r.bar(f);
        if typed[f.0] && c.compose(bf, f) != Some(f) {
            report.push(
                Violation::new("R.1", format!("bar f ; f != f at {}", c.label(f)))
                    .with_morphisms([f, bf]),
            );
        }
    }
    for a in c.objects() {
        let out = c.outgoing(a);
        for (i, &f) in out.iter().enumerate() {
            for &g in &out[i + 1..] {
                if !all_typed(&[f, g]) {
                    continue;
                }
                let (bf, bg) = (r.bar(f), r.bar(g));
                if c.compose(bf, bg) != c.compose(bg, bf) {
                    report.push(
                        Violation::new(
                            "R.2",
                            format!(
                                "restriction idempotents of {} and {} do not commute",
                                c.label(f),
                                c.label(g)
                            ),
                        )
                        .with_morphisms([f, g, bf, bg]),
                    );
                }
            }
        }
        for &f in out {
            for &g in out {
                if !all_typed(&[f, g]) {
                    continue;
                }
                let (bf, bg) = (r.bar(f), r.bar(g));
                let Some(bg_f) = c.compose(bg, f) else {
                    continue;
                };
                if !typed[bg_f.0] {
                    continue;
                }
                if c.compose(bg, bf) != Some(r.bar(bg_f)) {
                    report.push(
                        Violation::new(
                            "R.3",
                            format!(
                                "bar g ; bar f != bar(bar g ; f) at f = {}, g = {}",
                                c.label(f),
                                c.label(g)
                            ),
                        )
                        .with_morphisms([f, g, bf, bg, bg_f]),
                    );
                }
            }
        }
    }
    for f in c.morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            let Some(fg) = c.compose(f, g) else { continue };
            if !all_typed(&[f, g, fg]) {
                continue;
            }
            let lhs = c.compose(f, r.bar(g));
            let rhs = c.compose(r.bar(fg), f);
            if lhs != rhs {
                report.push(
                    Violation::new(
                        "R.4",
                        format!(
                            "f ; bar g != bar(f ; g) ; f at f = {}, g = {}",
                            c.label(f),
                            c.label(g)
                        ),
                    )
                    .with_morphisms([f, g, r.bar(g), fg, r.bar(fg)]),
                );
            }
        }
    }
    report.extend(derived_laws(r, &typed));
    report
}

/// Consequences of R.1 to R.4 that every restriction structure satisfies.
fn derived_laws(r: &RestrictionStructure, typed: &[bool]) -> ValidationReport {
    let c = &r.base;
    let mut report = ValidationReport::new();
    for f in c.morphisms() {
        if !typed[f.0] {
            continue;
        }
        let bf = r.bar(f);
        if c.compose(bf, bf) != Some(bf) {
            report.push(
                Violation::new(
                    "R.derived",
                    format!("bar of {} is not idempotent", c.label(f)),
                )
                .with_morphisms([f, bf]),
            );
        }
        if r.bar(bf) != bf {
            report.push(
                Violation::new(
                    "R.derived",
                    format!("bar(bar f) != bar f at {}", c.label(f)),
                )
                .with_morphisms([f, bf, r.bar(bf)]),
            );
        }
        if c.is_monic(f) && !is_total(r, f) {
            report.push(
                Violation::new("R.derived", format!("monic {} is not total", c.label(f)))
                    .with_morphisms([f, bf]),
            );
        }
        for &g in c.outgoing(c.cod(f)) {
            let (Some(fg), Some(f_bg)) = (c.compose(f, g), c.compose(f, r.bar(g))) else {
                continue;
            };
            if typed[g.0] && r.bar(fg) != r.bar(f_bg) {
                report.push(
                    Violation::new(
                        "R.derived",
                        format!(
                            "bar(f ; g) != bar(f ; bar g) at f = {}, g = {}",
                            c.label(f),
                            c.label(g)
                        ),
                    )
                    .with_morphisms([f, g, fg, f_bg, r.bar(g)]),
                );
            }
        }
    }
    report
}

pub fn is_total(r: &RestrictionStructure, f: MorId) -> bool {
    r.bar(f) == r.base.identity(r.base.dom(f))
}

pub fn is_restriction_idempotent(r: &RestrictionStructure, e: MorId) -> bool {
    r.bar(e) == e
}

/// Restriction idempotents on `a`, in identifier order.
pub fn restriction_idempotents(r: &RestrictionStructure, a: ObjId) -> Vec<MorId> {
    r.base
        .hom(a, a)
        .iter()
        .copied()
        .filter(|&e| is_restriction_idempotent(r, e))
        .collect()
}

/// The wide subcategory of total morphisms.
pub fn total_subcategory(r: &RestrictionStructure) -> Result<Subcategory> {
    r.base.wide_subcategory(|f| is_total(r, f))
}

fn require_parallel(r: &RestrictionStructure, f: MorId, g: MorId) -> Result<()> {
    if r.base.parallel(f, g) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} and {} are not parallel",
            r.base.label(f),
            r.base.label(g)
        )))
    }
}

/// `bar f ; g = bar g ; f`.
pub fn compatible(r: &RestrictionStructure, f: MorId, g: MorId) -> Result<bool> {
    require_parallel(r, f, g)?;
    Ok(compatible_unchecked(r, f, g))
}

fn compatible_unchecked(r: &RestrictionStructure, f: MorId, g: MorId) -> bool {
    r.base.compose(r.bar(f), g) == r.base.compose(r.bar(g), f)
}

/// `f ≤ g` iff `bar f ; g = f`.
pub fn leq(r: &RestrictionStructure, f: MorId, g: MorId) -> Result<bool> {
    require_parallel(r, f, g)?;
    Ok(leq_unchecked(r, f, g))
}

fn leq_unchecked(r: &RestrictionStructure, f: MorId, g: MorId) -> bool {
    r.base.compose(r.bar(f), g) == Some(f)
}

/// Cancellation against pairs that factor through `bar f`.
pub fn is_restriction_monic(r: &RestrictionStructure, f: MorId) -> bool {
    let c = &r.base;
    let a = c.dom(f);
    let bf = r.bar(f);
    c.objects().all(|x| {
        let guarded: Vec<MorId> = c
            .hom(x, a)
            .iter()
            .copied()
            .filter(|&g| c.compose(g, bf) == Some(g))
            .collect();
        guarded.iter().enumerate().all(|(i, &g)| {
            guarded[i + 1..]
                .iter()
                .all(|&h| c.compose(g, f) != c.compose(h, f))
        })
    })
}

/// Splittings of every restriction idempotent, searched exhaustively.
pub fn is_split(r: &RestrictionStructure) -> SplitReport {
    let c = &r.base;
    let mut report = SplitReport::default();
    for e in c.morphisms().filter(|&e| is_restriction_idempotent(r, e)) {
        let a = c.dom(e);
        let found = c.objects().find_map(|x| {
            c.hom(x, a).iter().find_map(|&s| {
                c.hom(a, x).iter().find_map(|&t| {
                    (c.compose(s, t) == Some(c.identity(x)) && c.compose(t, s) == Some(e))
                        .then_some(SplitWitness {
                            idempotent: e,
                            section: s,
                            retraction: t,
                            splitting_object: x,
                        })
                })
            })
        });
        match found {
            Some(w) => report.witnesses.push(w),
            None => report.unsplit.push(e),
        }
    }
    report
}

/// The split completion together with its indexing by base data.
#[derive(Clone, Debug)]
pub struct SplitCompletion {
    pub structure: RestrictionStructure,
    /// `(A, a)` for every object, in identifier order.
    pub objects: Vec<(ObjId, MorId)>,
    /// The base morphism underlying every morphism.
    pub morphisms: Vec<MorId>,
    lookup: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl SplitCompletion {
    pub fn object_of(&self, a: ObjId, e: MorId) -> Option<ObjId> {
        self.objects.binary_search(&(a, e)).ok().map(ObjId)
    }

    pub fn morphism_of(&self, dom: ObjId, cod: ObjId, base: MorId) -> Option<MorId> {
        self.lookup.get(&(dom, cod, base)).copied()
    }
}

/// Objects are pairs `(A, a)` with `a` a restriction idempotent on `A`;
/// a morphism `(A, a) -> (B, b)` is a base `f` with `a ; f ; b = f`.
pub fn split_completion(r: &RestrictionStructure) -> Result<SplitCompletion> {
    let c = &r.base;
    let mut objects = Vec::new();
    for a in c.objects() {
        for e in restriction_idempotents(r, a) {
            objects.push((a, e));
        }
    }
    let object_labels = objects
        .iter()
        .map(|&(a, e)| format!("({},{})", c.object_label(a), c.label(e)))
        .collect::<Vec<_>>();
    let mut morphisms = Vec::new();
    let mut records = Vec::new();
    let mut lookup = HashMap::new();
    for (i, &(a, ea)) in objects.iter().enumerate() {
        for (j, &(b, eb)) in objects.iter().enumerate() {
            for &f in c.hom(a, b) {
                if c.compose_path(&[ea, f, eb]) == Some(f) {
                    lookup.insert((ObjId(i), ObjId(j), f), MorId(morphisms.len()));
                    morphisms.push(f);
                    records.push(Morphism {
                        dom: ObjId(i),
                        cod: ObjId(j),
                        label: format!("{}:{}->{}", c.label(f), object_labels[i], object_labels[j]),
                    });
                }
            }
        }
    }
    if morphisms.len() > c.limit() {
        return Err(Error::TooLarge {
            morphisms: morphisms.len(),
            limit: c.limit(),
        });
    }
    let find = |dom: ObjId, cod: ObjId, base: MorId| -> Result<MorId> {
        lookup
            .get(&(dom, cod, base))
            .copied()
            .ok_or_else(|| Error::Internal(format!("split completion misses {}", c.label(base))))
    };
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, &(_, e))| find(ObjId(i), ObjId(i), e))
        .collect::<Result<Vec<_>>>()?;
    let mut composition = Vec::new();
    for (p, rp) in records.iter().enumerate() {
        for (q, rq) in records.iter().enumerate() {
            if rp.cod != rq.dom {
                continue;
            }
            let base = c.compose(morphisms[p], morphisms[q]).ok_or_else(|| {
                Error::Precondition("base composition table is incomplete".into())
            })?;
            composition.push((MorId(p), MorId(q), find(rp.dom, rq.cod, base)?));
        }
    }
    let bar = records
        .iter()
        .zip(&morphisms)
        .map(|(rec, &f)| find(rec.dom, rec.dom, r.bar(f)))
        .collect::<Result<Vec<_>>>()?;
    let base = FinCategory::with_limit(
        CategoryParts {
            objects: object_labels,
            morphisms: records,
            identities,
            composition,
        },
        c.limit(),
    )?;
    Ok(SplitCompletion {
        structure: RestrictionStructure { base, bar },
        objects,
        morphisms,
        lookup,
    })
}

/// The unique `g` with `f ; g = bar f` and `g ; f = bar g`, if any.
pub fn partial_inverse(r: &RestrictionStructure, f: MorId) -> Result<Option<MorId>> {
    let c = &r.base;
    let found: Vec<MorId> = c
        .hom(c.cod(f), c.dom(f))
        .iter()
        .copied()
        .filter(|&g| c.compose(f, g) == Some(r.bar(f)) && c.compose(g, f) == Some(r.bar(g)))
        .collect();
    if found.len() > 1 {
        return Err(Error::Internal(format!(
            "{} has {} partial inverses",
            c.label(f),
            found.len()
        )));
    }
    Ok(found.first().copied())
}

pub fn is_inverse_category(r: &RestrictionStructure) -> Result<bool> {
    for f in r.base.morphisms() {
        if partial_inverse(r, f)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least upper bound of a compatible family in `hom(a, b)`.
pub fn join_of_family(
    r: &RestrictionStructure,
    hom: (ObjId, ObjId),
    family: &[MorId],
) -> Result<Option<MorId>> {
    let c = &r.base;
    let (a, b) = hom;
    for &f in family {
        if c.dom(f) != a || c.cod(f) != b {
            return Err(Error::Precondition(format!(
                "{} is not in hom({}, {})",
                c.label(f),
                c.object_label(a),
                c.object_label(b)
            )));
        }
    }
    for (i, &f) in family.iter().enumerate() {
        for &g in &family[i + 1..] {
            if !compatible_unchecked(r, f, g) {
                return Err(Error::Precondition(format!(
                    "{} and {} are not compatible",
                    c.label(f),
                    c.label(g)
                )));
            }
        }
    }
    let upper: Vec<MorId> = c
        .hom(a, b)
        .iter()
        .copied()
        .filter(|&h| family.iter().all(|&f| leq_unchecked(r, f, h)))
        .collect();
    let least: Vec<MorId> = upper
        .iter()
        .copied()
        .filter(|&j| upper.iter().all(|&h| leq_unchecked(r, j, h)))
        .collect();
    if least.len() > 1 {
        return Err(Error::Internal(format!(
            "several joins in hom({}, {})",
            c.object_label(a),
            c.object_label(b)
        )));
    }
    Ok(least.first().copied())
}

/// Enumeration limits for join validation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JoinOptions {
    /// Maximum number of families enumerated per hom-set; `None` means all.
    pub max_families: Option<usize>,
}

/// Pairwise compatible subsets of `candidates` (including the empty one),
/// or `None` once more than `cap` have been found.
pub(crate) fn compatible_subsets(
    candidates: &[MorId],
    compatible: impl Fn(MorId, MorId) -> bool,
    cap: Option<usize>,
) -> Option<Vec<Vec<MorId>>> {
    fn go(
        start: usize,
        current: &mut Vec<MorId>,
        candidates: &[MorId],
        compatible: &dyn Fn(MorId, MorId) -> bool,
        cap: Option<usize>,
        out: &mut Vec<Vec<MorId>>,
    ) -> bool {
        out.push(current.clone());
        if cap.is_some_and(|c| out.len() > c) {
            return false;
        }
        for i in start..candidates.len() {
            let f = candidates[i];
            if current.iter().all(|&g| compatible(f, g)) {
                current.push(f);
                let ok = go(i + 1, current, candidates, compatible, cap, out);
                current.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    go(0, &mut Vec::new(), candidates, &compatible, cap, &mut out).then_some(out)
}

fn image_family(family: &[MorId], map: impl Fn(MorId) -> Option<MorId>) -> Option<Vec<MorId>> {
    let mut out: Vec<MorId> = family.iter().map(|&f| map(f)).collect::<Option<_>>()?;
    out.sort();
    out.dedup();
    Some(out)
}

/// Existence of joins of compatible families, and their stability under
/// pre- and post-composition.
pub fn validate_join_restriction(r: &RestrictionStructure, opts: JoinOptions) -> ValidationReport {
    let c = &r.base;
    let mut report = ValidationReport::new();
    let join_in = |hom: (ObjId, ObjId), fam: &[MorId]| join_of_family(r, hom, fam);
    for a in c.objects() {
        for b in c.objects() {
            let Some(families) = compatible_subsets(
                c.hom(a, b),
                |f, g| compatible_unchecked(r, f, g),
                opts.max_families,
            ) else {
                report.mark_inconclusive(format!(
                    "compatible families in hom({}, {}) exceed the cap",
                    c.object_label(a),
                    c.object_label(b)
                ));
                continue;
            };
            for family in &families {
                let join = match join_in((a, b), family) {
                    Ok(Some(j)) => j,
                    Ok(None) => {
                        report.push(
                            Violation::new(
                                "JR.1",
                                format!(
                                    "a compatible family of {} morphisms in hom({}, {}) has no join",
                                    family.len(),
                                    c.object_label(a),
                                    c.object_label(b)
                                ),
                            )
                            .with_objects([a, b])
                            .with_morphisms(family.iter().copied()),
                        );
                        continue;
                    }
                    Err(e) => {
                        report.push(
                            Violation::new("JR.1", e.to_string())
                                .with_objects([a, b])
                                .with_morphisms(family.iter().copied()),
                        );
                        continue;
                    }
                };
                for &g in c.incoming(a) {
                    let pre = image_family(family, |f| c.compose(g, f));
                    let expected = pre.and_then(|p| join_in((c.dom(g), b), &p).ok().flatten());
                    if expected.is_none() || c.compose(g, join) != expected {
                        report.push(
                            Violation::new(
                                "JR.2",
                                format!(
                                    "pre-composition with {} does not preserve a join in hom({}, {})",
                                    c.label(g),
                                    c.object_label(a),
                                    c.object_label(b)
                                ),
                            )
                            .with_morphisms(std::iter::once(g).chain(family.iter().copied())),
                        );
                    }
                }
                for &h in c.outgoing(b) {
                    let post = image_family(family, |f| c.compose(f, h));
                    let expected = post.and_then(|p| join_in((a, c.cod(h)), &p).ok().flatten());
                    if expected.is_none() || c.compose(join, h) != expected {
                        report.push(
                            Violation::new(
                                "JR.3",
                                format!(
                                    "post-composition with {} does not preserve a join in hom({}, {})",
                                    c.label(h),
                                    c.object_label(a),
                                    c.object_label(b)
                                ),
                            )
                            .with_morphisms(std::iter::once(h).chain(family.iter().copied())),
                        );
                    }
                }
            }
        }
    }
    report
}

/// The total morphism `a -> t`, when there is exactly one.
fn unique_total(r: &RestrictionStructure, a: ObjId, t: ObjId) -> Option<MorId> {
    let mut totals = r.base.hom(a, t).iter().copied().filter(|&f| is_total(r, f));
    let first = totals.next()?;
    totals.next().is_none().then_some(first)
}

/// The first object `t` with a unique total `!_A: A -> t` for every `A`
/// such that `f ; !_B = bar f ; !_A` for every `f: A -> B`.
pub fn restriction_terminal(r: &RestrictionStructure) -> Option<ObjId> {
    let c = &r.base;
    c.objects().find(|&t| {
        let bangs: Option<Vec<MorId>> = c.objects().map(|a| unique_total(r, a, t)).collect();
        let Some(bangs) = bangs else { return false };
        c.morphisms()
            .all(|f| c.compose(f, bangs[c.cod(f).0]) == c.compose(r.bar(f), bangs[c.dom(f).0]))
    })
}

/// The first cone with total projections such that every pair `f: C -> a`,
/// `g: C -> b` has exactly one `h` with `h ; π_a = bar g ; f`,
/// `h ; π_b = bar f ; g` and `bar h = bar f ; bar g`.
pub fn restriction_product(r: &RestrictionStructure, a: ObjId, b: ObjId) -> Option<ProductWitness> {
    let c = &r.base;
    for p in c.objects() {
        for &pa in c.hom(p, a).iter().filter(|&&f| is_total(r, f)) {
            for &pb in c.hom(p, b).iter().filter(|&&f| is_total(r, f)) {
                let universal = c.objects().all(|x| {
                    c.hom(x, a).iter().all(|&f| {
                        c.hom(x, b).iter().all(|&g| {
                            let want_a = c.compose(r.bar(g), f);
                            let want_b = c.compose(r.bar(f), g);
                            let want_bar = c.compose(r.bar(f), r.bar(g));
                            c.hom(x, p)
                                .iter()
                                .filter(|&&h| {
                                    c.compose(h, pa) == want_a
                                        && c.compose(h, pb) == want_b
                                        && Some(r.bar(h)) == want_bar
                                })
                                .count()
                                == 1
                        })
                    })
                });
                if universal {
                    return Some(ProductWitness {
                        apex: p,
                        proj_a: pa,
                        proj_b: pb,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_inverse_monoid, gen_par};

    fn m(r: &RestrictionStructure, label: &str) -> MorId {
        r.base.find_morphism(label).expect(label)
    }

    #[test]
    fn par_and_trivial_structures_validate() {
        let par = gen_par(&[2, 1]).unwrap();
        assert!(validate_restriction(&par).is_valid());
        let trivial = RestrictionStructure::trivial(par.base.clone());
        assert!(validate_restriction(&trivial).is_valid());
    }

    #[test]
    fn identity_bar_on_par_is_the_trivial_structure() {
        let par = gen_par(&[2, 1]).unwrap();
        let trivial = RestrictionStructure::trivial(par.base.clone());
        assert!(validate_restriction(&trivial).is_valid());
    }

    #[test]
    fn empty_domain_bar_breaks_r1() {
        let par = gen_par(&[2, 1]).unwrap();
        let mut wrong = par.clone();
        let f = m(&par, "A->B[0,-]");
        wrong.bar[f.0] = m(&par, "A->A[-,-]");
        let report = validate_restriction(&wrong);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "R.1" && v.morphisms.contains(&f)));
    }

    #[test]
    fn total_subcategory_keeps_total_functions() {
        let par = gen_par(&[2, 1]).unwrap();
        let tot = total_subcategory(&par).unwrap().category;
        let (a, b) = (ObjId(0), ObjId(1));
        assert_eq!(tot.hom(a, a).len(), 4);
        assert_eq!(tot.hom(a, b).len(), 1);
        assert_eq!(tot.hom(b, a).len(), 2);
        assert_eq!(tot.hom(b, b).len(), 1);
    }

    #[test]
    fn compatibility_and_order() {
        let par = gen_par(&[2, 1]).unwrap();
        let (f, g, h) = (
            m(&par, "A->A[0,-]"),
            m(&par, "A->A[-,1]"),
            m(&par, "A->A[0,1]"),
        );
        assert!(compatible(&par, f, f).unwrap());
        assert!(leq(&par, f, f).unwrap());
        assert!(compatible(&par, f, g).unwrap());
        assert!(leq(&par, f, h).unwrap());
        assert!(!leq(&par, h, f).unwrap());
        assert!(!compatible(&par, m(&par, "A->A[1,-]"), f).unwrap());
        assert!(compatible(&par, f, m(&par, "A->B[0,0]")).is_err());
    }

    #[test]
    fn constant_map_is_not_restriction_monic() {
        let par = gen_par(&[2, 1]).unwrap();
        assert!(!is_restriction_monic(&par, m(&par, "A->A[0,0]")));
        assert!(is_restriction_monic(&par, m(&par, "A->A[1,0]")));
        assert!(is_restriction_monic(&par, m(&par, "A->A[-,0]")));
    }

    #[test]
    fn split_completion_of_par() {
        let par = gen_par(&[2, 1]).unwrap();
        let report = is_split(&par);
        assert_eq!(
            report.unsplit,
            vec![m(&par, "A->A[-,-]"), m(&par, "B->B[-]")]
        );
        let split = split_completion(&par).unwrap();
        assert_eq!(split.objects.len(), 6);
        assert!(validate_restriction(&split.structure).is_valid());
        assert!(is_split(&split.structure).is_split());
    }

    #[test]
    fn partial_inverses() {
        let par = gen_par(&[2, 1]).unwrap();
        let id = m(&par, "A->A[0,1]");
        assert_eq!(partial_inverse(&par, id).unwrap(), Some(id));
        assert_eq!(partial_inverse(&par, m(&par, "A->B[0,0]")).unwrap(), None);
        assert!(!is_inverse_category(&par).unwrap());
        assert!(is_inverse_category(&gen_inverse_monoid(2).unwrap()).unwrap());
    }

    #[test]
    fn joins_in_par() {
        let par = gen_par(&[2, 1]).unwrap();
        let (a, b) = (ObjId(0), ObjId(1));
        let f = m(&par, "A->B[0,-]");
        assert_eq!(join_of_family(&par, (a, b), &[f]).unwrap(), Some(f));
        assert_eq!(
            join_of_family(&par, (a, b), &[]).unwrap(),
            Some(m(&par, "A->B[-,-]"))
        );
        let (g, h) = (m(&par, "A->A[1,-]"), m(&par, "A->A[-,0]"));
        assert_eq!(
            join_of_family(&par, (a, a), &[g, h]).unwrap(),
            Some(m(&par, "A->A[1,0]"))
        );
        assert!(join_of_family(&par, (a, a), &[g, m(&par, "A->A[0,-]")]).is_err());
        assert!(validate_join_restriction(&par, JoinOptions::default()).is_valid());
    }

    #[test]
    fn join_cap_is_inconclusive() {
        let par = gen_par(&[2, 1]).unwrap();
        let report = validate_join_restriction(
            &par,
            JoinOptions {
                max_families: Some(1),
            },
        );
        assert!(!report.inconclusive.is_empty());
        assert_ne!(report.verdict(), crate::report::Verdict::Valid);
    }

    #[test]
    fn cartesian_structure_of_par() {
        let par = gen_par(&[2, 1]).unwrap();
        assert_eq!(restriction_terminal(&par), Some(ObjId(1)));
        let w = restriction_product(&par, ObjId(1), ObjId(1)).unwrap();
        assert!(is_total(&par, w.proj_a) && is_total(&par, w.proj_b));
        let discrete = FinCategory::new(crate::fincat::CategoryParts::tabulate(
            vec!["X".into(), "Y".into()],
            vec![
                crate::fincat::Morphism {
                    dom: ObjId(0),
                    cod: ObjId(0),
                    label: "x".into(),
                },
                crate::fincat::Morphism {
                    dom: ObjId(1),
                    cod: ObjId(1),
                    label: "y".into(),
                },
            ],
            vec![MorId(0), MorId(1)],
            |f, _| f,
        ))
        .unwrap();
        assert_eq!(
            restriction_terminal(&RestrictionStructure::trivial(discrete)),
            None
        );
    }
}
