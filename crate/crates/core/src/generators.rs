//! Builders for the standard finite examples, random small categories and
//! single-entry mutations for negative tests.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    validate_category, CategoryParts, FinCategory, MorId, Morphism, ObjId, DEFAULT_MAX_MORPHISMS,
};
use crate::inclusion::{inclusion_from_local, partial_from_inclusion, InclusionSystem};
use crate::local::LocalStructure;
use crate::partial::PartialStructure;
use crate::restriction::RestrictionStructure;
use crate::structured::{Flavor, Structured};

/// A partial function on `0..n`, `None` where undefined.
pub type PartialMap = Vec<Option<usize>>;

/// Object label for the `i`-th generated object: `A`, `B`, ...
pub fn letter(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("X{i}")
    }
}

fn show_map(v: &[Option<usize>]) -> String {
    let cells: Vec<String> = v
        .iter()
        .map(|x| x.map_or_else(|| "-".to_string(), |y| y.to_string()))
        .collect();
    format!("[{}]", cells.join(","))
}

fn show_set(s: &[usize]) -> String {
    let cells: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", cells.join(","))
}

/// Every partial function from `0..n` into `0..m`, lexicographic with `None` first.
pub fn partial_maps(n: usize, m: usize) -> Vec<PartialMap> {
    let values: Vec<Option<usize>> = std::iter::once(None).chain((0..m).map(Some)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect();
    }
    out
}

fn compose_maps(f: &[Option<usize>], g: &[Option<usize>]) -> PartialMap {
    f.iter().map(|x| x.and_then(|y| g[y])).collect()
}

fn domain_of(f: &[Option<usize>]) -> PartialMap {
    f.iter().enumerate().map(|(i, x)| x.map(|_| i)).collect()
}

/// A concretely represented category: morphisms carry data `K` and compose by a function on it.
struct Concrete<K> {
    objects: Vec<String>,
    arrows: Vec<(usize, usize, K, String)>,
}

impl<K: Ord + Clone> Concrete<K> {
    fn build(
        self,
        limit: usize,
        identity: impl Fn(usize) -> K,
        compose: impl Fn(&K, &K) -> K,
    ) -> Result<(FinCategory, BTreeMap<(usize, usize, K), MorId>)> {
        if self.arrows.len() > limit {
            return Err(Error::TooLarge {
                morphisms: self.arrows.len(),
                limit,
            });
        }
        let index: BTreeMap<(usize, usize, K), MorId> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, (a, b, k, _))| ((*a, *b, k.clone()), MorId(i)))
            .collect();
        let find = |a: usize, b: usize, k: K| -> Result<MorId> {
            index
                .get(&(a, b, k))
                .copied()
                .ok_or_else(|| Error::Internal("generated table is not closed".into()))
        };
        let identities = (0..self.objects.len())
            .map(|a| find(a, a, identity(a)))
            .collect::<Result<Vec<_>>>()?;
        let mut composition = Vec::new();
        for (i, (a, b, f, _)) in self.arrows.iter().enumerate() {
            for (j, (b2, c, g, _)) in self.arrows.iter().enumerate() {
                if b == b2 {
                    composition.push((MorId(i), MorId(j), find(*a, *c, compose(f, g))?));
                }
            }
        }
        let morphisms = self
            .arrows
            .into_iter()
            .map(|(a, b, _, label)| Morphism {
                dom: ObjId(a),
                cod: ObjId(b),
                label,
            })
            .collect();
        let c = FinCategory::with_limit(
            CategoryParts {
                objects: self.objects,
                morphisms,
                identities,
                composition,
            },
            limit,
        )?;
        Ok((c, index))
    }
}

fn check_count(count: u128, limit: usize) -> Result<()> {
    if count > limit as u128 {
        return Err(Error::TooLarge {
            morphisms: usize::try_from(count).unwrap_or(usize::MAX),
            limit,
        });
    }
    Ok(())
}

/// Finite sets of the given sizes and all partial functions between them.
pub fn gen_par(sizes: &[usize]) -> Result<RestrictionStructure> {
    gen_par_with_limit(sizes, DEFAULT_MAX_MORPHISMS)
}

pub fn gen_par_with_limit(sizes: &[usize], limit: usize) -> Result<RestrictionStructure> {
    let count: u128 = sizes
        .iter()
        .flat_map(|&a| {
            sizes
                .iter()
                .map(move |&b| (b as u128 + 1).saturating_pow(a as u32))
        })
        .sum();
    check_count(count, limit)?;
    let mut arrows = Vec::new();
    for (i, &a) in sizes.iter().enumerate() {
        for (j, &b) in sizes.iter().enumerate() {
            for f in partial_maps(a, b) {
                let label = format!("{}->{}{}", letter(i), letter(j), show_map(&f));
                arrows.push((i, j, f, label));
            }
        }
    }
    let concrete = Concrete {
        objects: (0..sizes.len()).map(letter).collect(),
        arrows,
    };
    let data: Vec<(usize, PartialMap)> = concrete
        .arrows
        .iter()
        .map(|(a, _, f, _)| (*a, f.clone()))
        .collect();
    let (c, index) = concrete.build(
        limit,
        |a| (0..sizes[a]).map(Some).collect(),
        |f, g| compose_maps(f, g),
    )?;
    let bar = data
        .into_iter()
        .map(|(a, f)| index[&(a, a, domain_of(&f))])
        .collect();
    RestrictionStructure::new(c, bar)
}

/// The partial map underlying each morphism of `gen_par(sizes)`, in identifier order.
pub fn par_maps(sizes: &[usize]) -> Vec<(usize, usize, PartialMap)> {
    let mut out = Vec::new();
    for (i, &a) in sizes.iter().enumerate() {
        for (j, &b) in sizes.iter().enumerate() {
            for f in partial_maps(a, b) {
                out.push((i, j, f));
            }
        }
    }
    out
}

/// The three presentations of a category of pairs `(A, U)` with `U ⊆ A`.
#[derive(Clone, Debug)]
pub struct ParSet {
    pub local: LocalStructure,
    pub inclusion: InclusionSystem,
    pub partial: PartialStructure,
    /// `(universe, subset mask)` for every object.
    pub objects: Vec<(usize, u32)>,
}

fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Objects `(A, U)` over the given universes; morphisms are total functions
/// between the `U` parts, stored as partial maps on the universe of `A`.
pub fn gen_parset(universes: &[usize]) -> Result<ParSet> {
    gen_parset_with_limit(universes, DEFAULT_MAX_MORPHISMS)
}

pub fn gen_parset_with_limit(universes: &[usize], limit: usize) -> Result<ParSet> {
    if universes.iter().any(|&n| n > 8) {
        return Err(Error::InvalidParameters(
            "universes are capped at 8 points".into(),
        ));
    }
    let objects: Vec<(usize, u32)> = universes
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| (0..1u32 << n).map(move |mask| (i, mask)))
        .collect();
    let count: u128 = objects
        .iter()
        .flat_map(|&(_, u)| {
            objects
                .iter()
                .map(move |&(_, v)| (v.count_ones() as u128).saturating_pow(u.count_ones()))
        })
        .sum();
    check_count(count, limit)?;
    let labels: Vec<String> = objects
        .iter()
        .map(|&(i, mask)| format!("({},{})", letter(i), show_set(&mask_elements(mask))))
        .collect();
    let mut arrows = Vec::new();
    for (p, &(i, u)) in objects.iter().enumerate() {
        for (q, &(j, v)) in objects.iter().enumerate() {
            let targets = mask_elements(v);
            for f in partial_maps(universes[i], universes[j]) {
                let ok = f.iter().enumerate().all(|(x, y)| match y {
                    None => u & (1 << x) == 0,
                    Some(y) => u & (1 << x) != 0 && targets.contains(y),
                });
                if ok {
                    let label = format!("{}->{}{}", labels[p], labels[q], show_map(&f));
                    arrows.push((p, q, f, label));
                }
            }
        }
    }
    let (c, index) = Concrete {
        objects: labels,
        arrows,
    }
    .build(
        limit,
        |p| {
            let (i, u) = objects[p];
            (0..universes[i])
                .map(|x| (u & (1 << x) != 0).then_some(x))
                .collect()
        },
        |f, g| compose_maps(f, g),
    )?;
    let position = |i: usize, mask: u32| objects.binary_search(&(i, mask)).expect("object listed");
    let mut enlargement = Vec::new();
    let mut eta = Vec::new();
    for (p, &(i, u)) in objects.iter().enumerate() {
        let top = position(i, (1u32 << universes[i]) - 1);
        let incl: PartialMap = (0..universes[i])
            .map(|x| (u & (1 << x) != 0).then_some(x))
            .collect();
        enlargement.push(ObjId(top));
        eta.push(index[&(p, top, incl)]);
    }
    let local = LocalStructure::new(c, enlargement, eta)?;
    let inclusion = inclusion_from_local(&local);
    let partial = partial_from_inclusion(&inclusion)?;
    Ok(ParSet {
        local,
        inclusion,
        partial,
        objects,
    })
}

/// Inclusion and partial presentations of sets and total functions.
#[derive(Clone, Debug)]
pub struct FinSet {
    pub inclusion: InclusionSystem,
    pub partial: PartialStructure,
    /// The object subsets, after closing the given family under preimages.
    pub objects: Vec<Vec<usize>>,
}

/// Close a family of finite sets under preimages of members along total
/// functions between members, so that every inclusion has a pullback.
pub fn preimage_closure(subsets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut family: BTreeSet<Vec<usize>> = subsets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    loop {
        let current: Vec<Vec<usize>> = family.iter().cloned().collect();
        let mut added = false;
        for u in &current {
            for w in &current {
                for v in current.iter().filter(|v| v.iter().all(|x| w.contains(x))) {
                    for f in total_maps(u.len(), w.len()) {
                        let pre: Vec<usize> = u
                            .iter()
                            .zip(&f)
                            .filter(|(_, &y)| v.contains(&w[y]))
                            .map(|(&x, _)| x)
                            .collect();
                        added |= family.insert(pre);
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = family.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn total_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..m).map(move |y| {
                    let mut p = prefix.clone();
                    p.push(y);
                    p
                })
            })
            .collect();
    }
    out
}

/// Finite sets drawn from the given family (closed under preimages) with all
/// total functions; members are subset inclusions.
pub fn gen_finset(subsets: &[Vec<usize>]) -> Result<FinSet> {
    gen_finset_with_limit(subsets, DEFAULT_MAX_MORPHISMS)
}

pub fn gen_finset_with_limit(subsets: &[Vec<usize>], limit: usize) -> Result<FinSet> {
    if subsets.iter().any(|s| s.len() > 8) {
        return Err(Error::InvalidParameters(
            "subsets are capped at 8 points".into(),
        ));
    }
    let objects = preimage_closure(subsets);
    let count: u128 = objects
        .iter()
        .flat_map(|u| {
            objects
                .iter()
                .map(move |v| (v.len() as u128).saturating_pow(u.len() as u32))
        })
        .sum();
    check_count(count, limit)?;
    let labels: Vec<String> = objects.iter().map(|s| show_set(s)).collect();
    // A morphism is stored as positions into its codomain's element list.
    let mut arrows = Vec::new();
    for (p, u) in objects.iter().enumerate() {
        for (q, v) in objects.iter().enumerate() {
            for f in total_maps(u.len(), v.len()) {
                let image: Vec<usize> = f.iter().map(|&y| v[y]).collect();
                let label = format!("{}->{}{}", labels[p], labels[q], show_set(&image));
                arrows.push((p, q, f, label));
            }
        }
    }
    let sizes: Vec<usize> = objects.iter().map(Vec::len).collect();
    let (c, index) = Concrete {
        objects: labels,
        arrows,
    }
    .build(
        limit,
        |p| (0..sizes[p]).collect(),
        |f: &Vec<usize>, g: &Vec<usize>| f.iter().map(|&y| g[y]).collect(),
    )?;
    let mut inclusions = BTreeSet::new();
    for (p, u) in objects.iter().enumerate() {
        for (q, v) in objects.iter().enumerate() {
            if u.iter().all(|x| v.contains(x)) {
                let positions: Vec<usize> = u
                    .iter()
                    .map(|x| v.iter().position(|y| y == x).expect("subset"))
                    .collect();
                let m = index[&(p, q, positions)];
                inclusions.insert(m);
            }
        }
    }
    let inclusion = InclusionSystem::new(c, inclusions)?;
    let partial = partial_from_inclusion(&inclusion)?;
    Ok(FinSet {
        inclusion,
        partial,
        objects,
    })
}

/// A one-object restriction category from a multiplication table and a bar table.
///
/// `mult[x][y]` is the diagrammatic product `x ; y`.
pub fn gen_restriction_monoid(mult: &[Vec<usize>], bar: &[usize]) -> Result<RestrictionStructure> {
    let n = mult.len();
    let bad = |msg: String| Err(Error::InvalidParameters(msg));
    if n == 0 {
        return bad("empty multiplication table".into());
    }
    if mult
        .iter()
        .any(|row| row.len() != n || row.iter().any(|&z| z >= n))
    {
        return bad(format!(
            "multiplication table is not a {n}x{n} table over 0..{n}"
        ));
    }
    if bar.len() != n || bar.iter().any(|&z| z >= n) {
        return bad(format!("bar table must list {n} elements of 0..{n}"));
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
        .ok_or_else(|| Error::InvalidParameters("table has no two-sided unit".into()))?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if mult[mult[x][y]][z] != mult[x][mult[y][z]] {
                    return bad(format!("table is not associative at ({x}, {y}, {z})"));
                }
            }
        }
    }
    let morphisms = (0..n)
        .map(|x| Morphism {
            dom: ObjId(0),
            cod: ObjId(0),
            label: if x == unit {
                "1".to_string()
            } else {
                format!("m{x}")
            },
        })
        .collect();
    let c = FinCategory::new(CategoryParts::tabulate(
        vec!["*".to_string()],
        morphisms,
        vec![MorId(unit)],
        |f, g| MorId(mult[f.0][g.0]),
    ))?;
    RestrictionStructure::new(c, bar.iter().map(|&b| MorId(b)).collect())
}

/// The symmetric inverse monoid on `n ≤ 3` points: partial injections with
/// `bar x` the partial identity on the domain of `x`.
pub fn gen_inverse_monoid(n: usize) -> Result<RestrictionStructure> {
    if n > 3 {
        return Err(Error::InvalidParameters(format!(
            "inverse monoid size {n} is above the cap of 3"
        )));
    }
    let arrows: Vec<(usize, usize, PartialMap, String)> = partial_maps(n, n)
        .into_iter()
        .filter(|f| {
            let image: Vec<usize> = f.iter().flatten().copied().collect();
            image.iter().collect::<BTreeSet<_>>().len() == image.len()
        })
        .map(|f| {
            let label = show_map(&f);
            (0, 0, f, label)
        })
        .collect();
    let data: Vec<PartialMap> = arrows.iter().map(|a| a.2.clone()).collect();
    let (c, index) = Concrete {
        objects: vec!["*".to_string()],
        arrows,
    }
    .build(
        DEFAULT_MAX_MORPHISMS,
        |_| (0..n).map(Some).collect(),
        |f, g| compose_maps(f, g),
    )?;
    let bar = data.iter().map(|f| index[&(0, 0, domain_of(f))]).collect();
    RestrictionStructure::new(c, bar)
}

/// The trivial structure of the requested flavor on a valid category.
pub fn gen_trivial(c: FinCategory, flavor: Flavor) -> Result<Structured> {
    let report = validate_category(&c);
    if !report.is_valid() {
        return Err(Error::Structural(report.violations));
    }
    Ok(Structured::trivial(c, flavor))
}

/// A disjoint union of four or five small abelian groups, one object each.
///
/// Each group is `Z_a x Z_b` with `a` in 2..=3 and `b` in 3..=4.
pub fn random_group_category(seed: u64) -> Result<FinCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let components = rng.gen_range(4..=5);
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    for k in 0..components {
        let factors = vec![rng.gen_range(2..=3), rng.gen_range(3..=4)];
        objects.push(format!("G{k}"));
        let mut elements = vec![Vec::new()];
        for &q in &factors {
            elements = elements
                .into_iter()
                .flat_map(|e: Vec<usize>| {
                    (0..q).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        for e in elements {
            let cells: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            let label = format!("G{k}:({})", cells.join(","));
            arrows.push((k, k, (factors.clone(), e), label));
        }
    }
    let zero: Vec<(Vec<usize>, Vec<usize>)> = arrows
        .iter()
        .map(|(_, _, (f, _), _)| (f.clone(), vec![0; f.len()]))
        .collect();
    let firsts: Vec<usize> = (0..components)
        .map(|k| arrows.iter().position(|a| a.0 == k).expect("component"))
        .collect();
    let (c, _) = Concrete { objects, arrows }.build(
        DEFAULT_MAX_MORPHISMS,
        |k| zero[firsts[k]].clone(),
        |(q, x), (_, y)| {
            let sum = x
                .iter()
                .zip(y)
                .zip(q)
                .map(|((a, b), m)| (a + b) % m)
                .collect();
            (q.clone(), sum)
        },
    )?;
    Ok(c)
}

/// One changed entry in a structure table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "table", rename_all = "snake_case")]
pub enum FlipEntry {
    Bar {
        morphism: MorId,
        to: MorId,
    },
    Enlargement {
        object: ObjId,
        to: ObjId,
    },
    Eta {
        object: ObjId,
        to: MorId,
    },
    Order {
        below: ObjId,
        above: ObjId,
        present: bool,
    },
    Restrict {
        morphism: MorId,
        object: ObjId,
        to: Option<MorId>,
    },
    Contract {
        morphism: MorId,
        object: ObjId,
        to: Option<(ObjId, MorId)>,
    },
    Member {
        morphism: MorId,
        present: bool,
    },
}

/// A recorded single-entry mutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flip {
    pub entry: FlipEntry,
    pub description: String,
}

impl Flip {
    fn new(entry: FlipEntry, c: &FinCategory) -> Self {
        let description = match &entry {
            FlipEntry::Bar { morphism, to } => {
                format!("bar of {} set to {}", c.label(*morphism), c.label(*to))
            }
            FlipEntry::Enlargement { object, to } => format!(
                "enlargement of {} set to {}",
                c.object_label(*object),
                c.object_label(*to)
            ),
            FlipEntry::Eta { object, to } => {
                format!("eta of {} set to {}", c.object_label(*object), c.label(*to))
            }
            FlipEntry::Order {
                below,
                above,
                present,
            } => format!(
                "order pair {} <= {} {}",
                c.object_label(*below),
                c.object_label(*above),
                if *present { "added" } else { "removed" }
            ),
            FlipEntry::Restrict {
                morphism,
                object,
                to,
            } => format!(
                "restriction of {} to {} set to {}",
                c.label(*morphism),
                c.object_label(*object),
                to.map_or("nothing", |g| c.label(g))
            ),
            FlipEntry::Contract {
                morphism,
                object,
                to,
            } => format!(
                "contraction of {} to {} set to {}",
                c.label(*morphism),
                c.object_label(*object),
                to.map_or("nothing", |(_, g)| c.label(g))
            ),
            FlipEntry::Member { morphism, present } => format!(
                "{} {} the inclusion system",
                c.label(*morphism),
                if *present { "added to" } else { "removed from" }
            ),
        };
        Flip { entry, description }
    }

    /// Name of the table the flip touches.
    pub fn table(&self) -> &'static str {
        match self.entry {
            FlipEntry::Bar { .. } => "bar",
            FlipEntry::Enlargement { .. } => "enlargement",
            FlipEntry::Eta { .. } => "eta",
            FlipEntry::Order { .. } => "order",
            FlipEntry::Restrict { .. } => "restrict",
            FlipEntry::Contract { .. } => "contract",
            FlipEntry::Member { .. } => "inclusions",
        }
    }

    /// Objects keying the flipped entry.
    pub fn objects(&self) -> Vec<ObjId> {
        match self.entry {
            FlipEntry::Enlargement { object, .. } | FlipEntry::Eta { object, .. } => vec![object],
            FlipEntry::Order { below, above, .. } => vec![below, above],
            FlipEntry::Restrict { object, .. } | FlipEntry::Contract { object, .. } => {
                vec![object]
            }
            FlipEntry::Bar { .. } | FlipEntry::Member { .. } => Vec::new(),
        }
    }

    /// Morphisms keying the flipped entry.
    pub fn morphisms(&self) -> Vec<MorId> {
        match self.entry {
            FlipEntry::Bar { morphism, .. }
            | FlipEntry::Restrict { morphism, .. }
            | FlipEntry::Contract { morphism, .. }
            | FlipEntry::Member { morphism, .. } => vec![morphism],
            FlipEntry::Enlargement { .. } | FlipEntry::Eta { .. } | FlipEntry::Order { .. } => {
                Vec::new()
            }
        }
    }
}

/// Every single-entry flip of a structure, grouped by table.
pub fn candidate_flips(s: &Structured) -> Vec<Vec<Flip>> {
    let c = s.base();
    let flip = |e| Flip::new(e, c);
    match s {
        Structured::Restriction(r) => vec![c
            .morphisms()
            .flat_map(|f| {
                let a = c.dom(f);
                c.hom(a, a)
                    .iter()
                    .filter(move |&&g| g != r.bar(f))
                    .map(move |&to| flip(FlipEntry::Bar { morphism: f, to }))
            })
            .collect()],
        Structured::Local(lc) => vec![
            c.objects()
                .flat_map(|m| {
                    c.objects()
                        .filter(move |&t| t != lc.enlargement(m))
                        .map(move |to| flip(FlipEntry::Enlargement { object: m, to }))
                })
                .collect(),
            c.objects()
                .flat_map(|m| {
                    c.outgoing(m)
                        .iter()
                        .filter(move |&&g| g != lc.eta(m))
                        .map(move |&to| flip(FlipEntry::Eta { object: m, to }))
                })
                .collect(),
        ],
        Structured::Partial(p) => {
            let order = c
                .objects()
                .flat_map(|u| {
                    c.objects().map(move |a| {
                        flip(FlipEntry::Order {
                            below: u,
                            above: a,
                            present: !p.le(u, a),
                        })
                    })
                })
                .collect();
            let restrict = p
                .restrict
                .iter()
                .flat_map(|(&(f, u), &g)| {
                    std::iter::once(None)
                        .chain(
                            c.outgoing(u)
                                .iter()
                                .filter(move |&&h| h != g)
                                .map(|&h| Some(h)),
                        )
                        .map(move |to| {
                            flip(FlipEntry::Restrict {
                                morphism: f,
                                object: u,
                                to,
                            })
                        })
                })
                .collect();
            let contract = p
                .contract
                .iter()
                .flat_map(|(&(f, v), &(q, g))| {
                    std::iter::once(None)
                        .chain(
                            c.incoming(v)
                                .iter()
                                .filter(move |&&h| h != g)
                                .map(|&h| Some((c.dom(h), h))),
                        )
                        .chain(
                            c.objects()
                                .filter(move |&t| t != q)
                                .map(move |t| Some((t, g))),
                        )
                        .map(move |to| {
                            flip(FlipEntry::Contract {
                                morphism: f,
                                object: v,
                                to,
                            })
                        })
                })
                .collect();
            vec![order, restrict, contract]
        }
        Structured::Inclusion(n) => vec![c
            .morphisms()
            .map(|m| {
                flip(FlipEntry::Member {
                    morphism: m,
                    present: !n.is_member(m),
                })
            })
            .collect()],
    }
}

/// Apply a flip produced for this structure.
pub fn apply_flip(s: &Structured, flip: &Flip) -> Structured {
    let mut out = s.clone();
    match (&mut out, &flip.entry) {
        (Structured::Restriction(r), FlipEntry::Bar { morphism, to }) => r.bar[morphism.0] = *to,
        (Structured::Local(lc), FlipEntry::Enlargement { object, to }) => {
            lc.enlargement[object.0] = *to
        }
        (Structured::Local(lc), FlipEntry::Eta { object, to }) => lc.eta[object.0] = *to,
        (
            Structured::Partial(p),
            FlipEntry::Order {
                below,
                above,
                present,
            },
        ) => {
            if *present {
                p.leq.insert((*below, *above));
            } else {
                p.leq.remove(&(*below, *above));
            }
        }
        (
            Structured::Partial(p),
            FlipEntry::Restrict {
                morphism,
                object,
                to,
            },
        ) => match to {
            Some(g) => {
                p.restrict.insert((*morphism, *object), *g);
            }
            None => {
                p.restrict.remove(&(*morphism, *object));
            }
        },
        (
            Structured::Partial(p),
            FlipEntry::Contract {
                morphism,
                object,
                to,
            },
        ) => match to {
            Some(v) => {
                p.contract.insert((*morphism, *object), *v);
            }
            None => {
                p.contract.remove(&(*morphism, *object));
            }
        },
        (Structured::Inclusion(n), FlipEntry::Member { morphism, present }) => {
            if *present {
                n.inclusions.insert(*morphism);
            } else {
                n.inclusions.remove(morphism);
            }
        }
        _ => {}
    }
    out
}

/// Up to `count` distinct flips: a table is drawn uniformly, then an entry in it.
pub fn random_flips(s: &Structured, count: usize, seed: u64) -> Vec<Flip> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tables: Vec<Vec<Flip>> = candidate_flips(s)
        .into_iter()
        .filter(|t| !t.is_empty())
        .collect();
    for t in &mut tables {
        t.shuffle(&mut rng);
    }
    let mut out = Vec::new();
    while out.len() < count && !tables.is_empty() {
        let i = rng.gen_range(0..tables.len());
        if let Some(f) = tables[i].pop() {
            out.push(f);
        }
        if tables[i].is_empty() {
            tables.remove(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::validate_restriction;

    #[test]
    fn labels_and_maps() {
        assert_eq!(
            (letter(0), letter(25), letter(26)),
            ("A".into(), "Z".into(), "X26".into())
        );
        let maps = partial_maps(2, 1);
        assert_eq!(
            maps,
            vec![
                vec![None, None],
                vec![None, Some(0)],
                vec![Some(0), None],
                vec![Some(0), Some(0)]
            ]
        );
        assert_eq!(partial_maps(0, 3), vec![Vec::<Option<usize>>::new()]);
        assert_eq!(par_maps(&[2, 1]).len(), 18);
    }

    #[test]
    fn restriction_monoids() {
        // {1, e} with e idempotent and bar e = e.
        let r = gen_restriction_monoid(&[vec![0, 1], vec![1, 1]], &[0, 1]).unwrap();
        assert!(validate_restriction(&r).is_valid());
        assert_eq!(r.base.label(MorId(1)), "m1");
        let trivial = gen_restriction_monoid(&[vec![0, 1], vec![1, 1]], &[0, 0]).unwrap();
        assert!(validate_restriction(&trivial).is_valid());
        assert!(gen_restriction_monoid(&[vec![1, 1], vec![1, 1]], &[0, 0]).is_err());
        assert!(gen_restriction_monoid(&[vec![0, 1]], &[0]).is_err());
        assert!(gen_restriction_monoid(&[], &[]).is_err());
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            gen_inverse_monoid(4),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            gen_par_with_limit(&[2, 1], 10),
            Err(Error::TooLarge { morphisms: 18, .. })
        ));
        assert!(gen_parset(&[9]).is_err());
    }

    #[test]
    fn group_categories_are_seeded() {
        let c = random_group_category(5).unwrap();
        assert_eq!(c, random_group_category(5).unwrap());
        assert!((4..=5).contains(&c.object_count()));
        assert!(c.morphisms().all(|f| c.is_iso(f)));
    }

    #[test]
    fn flips_change_one_entry() {
        let par = Structured::Restriction(gen_par(&[2, 1]).unwrap());
        let tables = candidate_flips(&par);
        assert_eq!(tables.len(), 1);
        // Each morphism's bar can move to any other endomorphism of its domain.
        assert_eq!(tables[0].len(), 13 * 8 + 5);
        let flip = &tables[0][0];
        let Structured::Restriction(mutated) = apply_flip(&par, flip) else {
            panic!()
        };
        let Structured::Restriction(original) = &par else {
            panic!()
        };
        let changed: Vec<MorId> = original
            .base
            .morphisms()
            .filter(|&f| original.bar(f) != mutated.bar(f))
            .collect();
        assert_eq!(changed, flip.morphisms());
    }
}
