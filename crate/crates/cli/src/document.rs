//! The on-disk category document and its conversion to core structures.

use std::collections::{BTreeMap, BTreeSet};

use parcat_core::fincat::{validate_category, CategoryParts, Morphism};
use parcat_core::inclusion::InclusionSystem;
use parcat_core::local::LocalStructure;
use parcat_core::partial::PartialStructure;
use parcat_core::restriction::RestrictionStructure;
use parcat_core::{Error as CoreError, FinCategory, Flavor, MorId, ObjId, Structured, Violation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub format_version: u32,
    pub category: CategoryBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<RestrictionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial: Option<PartialBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<InclusionBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub id: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: usize,
    pub dom: usize,
    pub cod: usize,
    pub label: String,
}

/// `identities` holds `[object, morphism]` pairs; `composition` holds
/// `[f, g, f;g]` triples in diagrammatic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryBlock {
    pub objects: Vec<ObjectEntry>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: Vec<[usize; 2]>,
    pub composition: Vec<[usize; 3]>,
}

/// `[f, bar f]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionBlock {
    pub bar: Vec<[usize; 2]>,
}

/// `[M, L M]` and `[M, eta_M]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalBlock {
    pub enlargement: Vec<[usize; 2]>,
    pub eta: Vec<[usize; 2]>,
}

/// `[U, A]` order pairs, `[f, U, f↓U]` triples and `[f, V, apex, f↑V]` quadruples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialBlock {
    pub leq: Vec<[usize; 2]>,
    pub restrict: Vec<[usize; 3]>,
    pub contract: Vec<[usize; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InclusionBlock {
    pub members: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot parse document: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),

    #[error("malformed document: {}", .0.first().map(|v| v.message.as_str()).unwrap_or(""))]
    Malformed(Vec<Violation>),

    #[error("document has no {0} block")]
    MissingStructure(Flavor),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl DocError {
    pub fn violations(&self) -> Vec<Violation> {
        match self {
            DocError::Malformed(v) | DocError::Core(CoreError::Structural(v)) => v.clone(),
            other => vec![Violation::new("D.parse", other.to_string())],
        }
    }
}

fn malformed(axiom: &str, message: impl Into<String>) -> DocError {
    DocError::Malformed(vec![Violation::new(axiom, message)])
}

/// Read a table keyed by identifiers `0..n`, each exactly once.
fn keyed<T: Copy>(
    name: &str,
    n: usize,
    entries: impl Iterator<Item = (usize, T)>,
) -> Result<Vec<T>, DocError> {
    let mut out: Vec<Option<T>> = vec![None; n];
    for (k, v) in entries {
        match out.get_mut(k) {
            None => {
                return Err(malformed(
                    "D.reference",
                    format!("{name} entry for missing identifier {k}"),
                ))
            }
            Some(Some(_)) => {
                return Err(malformed(
                    "D.reference",
                    format!("duplicate {name} entry for {k}"),
                ))
            }
            Some(slot) => *slot = Some(v),
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| malformed("D.reference", format!("no {name} entry for {k}"))))
        .collect()
}

impl CategoryDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let doc: CategoryDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocError::Version(doc.format_version));
        }
        Ok(doc)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_category(c: &FinCategory) -> Self {
        let parts = c.to_parts();
        let category = CategoryBlock {
            objects: parts
                .objects
                .into_iter()
                .enumerate()
                .map(|(id, label)| ObjectEntry { id, label })
                .collect(),
            morphisms: parts
                .morphisms
                .into_iter()
                .enumerate()
                .map(|(id, m)| MorphismEntry {
                    id,
                    dom: m.dom.0,
                    cod: m.cod.0,
                    label: m.label,
                })
                .collect(),
            identities: parts
                .identities
                .iter()
                .enumerate()
                .map(|(a, f)| [a, f.0])
                .collect(),
            composition: parts
                .composition
                .iter()
                .map(|&(f, g, h)| [f.0, g.0, h.0])
                .collect(),
        };
        CategoryDocument {
            format_version: FORMAT_VERSION,
            category,
            restriction: None,
            local: None,
            partial: None,
            inclusion: None,
        }
    }

    /// Document for `s.base()` carrying the structure block of `s`.
    pub fn from_structured(s: &Structured) -> Self {
        let mut doc = Self::from_category(s.base());
        doc.set_structure(s);
        doc
    }

    /// Add or replace the block of `s`'s flavor. `s` must live on this document's category.
    pub fn set_structure(&mut self, s: &Structured) {
        match s {
            Structured::Restriction(r) => {
                self.restriction = Some(RestrictionBlock {
                    bar: r.bar.iter().enumerate().map(|(f, b)| [f, b.0]).collect(),
                })
            }
            Structured::Local(lc) => {
                self.local = Some(LocalBlock {
                    enlargement: lc
                        .enlargement
                        .iter()
                        .enumerate()
                        .map(|(m, l)| [m, l.0])
                        .collect(),
                    eta: lc.eta.iter().enumerate().map(|(m, e)| [m, e.0]).collect(),
                })
            }
            Structured::Partial(p) => {
                self.partial = Some(PartialBlock {
                    leq: p.leq.iter().map(|&(u, a)| [u.0, a.0]).collect(),
                    restrict: p
                        .restrict
                        .iter()
                        .map(|(&(f, u), &g)| [f.0, u.0, g.0])
                        .collect(),
                    contract: p
                        .contract
                        .iter()
                        .map(|(&(f, v), &(w, g))| [f.0, v.0, w.0, g.0])
                        .collect(),
                })
            }
            Structured::Inclusion(n) => {
                self.inclusion = Some(InclusionBlock {
                    members: n.inclusions.iter().map(|m| m.0).collect(),
                })
            }
        }
    }

    pub fn flavors(&self) -> Vec<Flavor> {
        Flavor::ALL
            .into_iter()
            .filter(|f| match f {
                Flavor::Restriction => self.restriction.is_some(),
                Flavor::Local => self.local.is_some(),
                Flavor::Partial => self.partial.is_some(),
                Flavor::Inclusion => self.inclusion.is_some(),
            })
            .collect()
    }

    /// Build the category, checking referential integrity and that the
    /// composition triples cover exactly the composable pairs with the right types.
    ///
    /// Unit and associativity laws are left to [`validate_category`].
    pub fn category(&self, limit: usize) -> Result<FinCategory, DocError> {
        let block = &self.category;
        for (i, o) in block.objects.iter().enumerate() {
            if o.id != i {
                return Err(malformed(
                    "D.reference",
                    format!("object at position {i} has id {}", o.id),
                ));
            }
        }
        for (i, m) in block.morphisms.iter().enumerate() {
            if m.id != i {
                return Err(malformed(
                    "D.reference",
                    format!("morphism at position {i} has id {}", m.id),
                ));
            }
        }
        let n_obj = block.objects.len();
        let identities = keyed(
            "identity",
            n_obj,
            block.identities.iter().map(|&[a, f]| (a, MorId(f))),
        )?;
        let parts = CategoryParts {
            objects: block.objects.iter().map(|o| o.label.clone()).collect(),
            morphisms: block
                .morphisms
                .iter()
                .map(|m| Morphism {
                    dom: ObjId(m.dom),
                    cod: ObjId(m.cod),
                    label: m.label.clone(),
                })
                .collect(),
            identities,
            composition: block
                .composition
                .iter()
                .map(|&[f, g, h]| (MorId(f), MorId(g), MorId(h)))
                .collect(),
        };
        let c = FinCategory::with_limit(parts, limit)?;
        let typing: Vec<Violation> = validate_category(&c)
            .violations
            .into_iter()
            .filter(|v| v.axiom == "C.composable" || v.axiom == "C.identity")
            .collect();
        if !typing.is_empty() {
            return Err(DocError::Malformed(typing));
        }
        Ok(c)
    }

    /// The structure of the requested flavor on this document's category.
    pub fn structure(&self, flavor: Flavor, limit: usize) -> Result<Structured, DocError> {
        let c = self.category(limit)?;
        let (n_obj, n_mor) = (c.object_count(), c.morphism_count());
        let missing = || DocError::MissingStructure(flavor);
        let s = match flavor {
            Flavor::Restriction => {
                let block = self.restriction.as_ref().ok_or_else(missing)?;
                let bar = keyed("bar", n_mor, block.bar.iter().map(|&[f, b]| (f, MorId(b))))?;
                Structured::Restriction(RestrictionStructure::new(c, bar)?)
            }
            Flavor::Local => {
                let block = self.local.as_ref().ok_or_else(missing)?;
                let enlargement = keyed(
                    "enlargement",
                    n_obj,
                    block.enlargement.iter().map(|&[m, l]| (m, ObjId(l))),
                )?;
                let eta = keyed("eta", n_obj, block.eta.iter().map(|&[m, e]| (m, MorId(e))))?;
                Structured::Local(LocalStructure::new(c, enlargement, eta)?)
            }
            Flavor::Partial => {
                let block = self.partial.as_ref().ok_or_else(missing)?;
                let leq: BTreeSet<(ObjId, ObjId)> = block
                    .leq
                    .iter()
                    .map(|&[u, a]| (ObjId(u), ObjId(a)))
                    .collect();
                let mut restrict = BTreeMap::new();
                for &[f, u, g] in &block.restrict {
                    if restrict.insert((MorId(f), ObjId(u)), MorId(g)).is_some() {
                        return Err(malformed(
                            "D.reference",
                            format!("duplicate restrict entry [{f}, {u}]"),
                        ));
                    }
                }
                let mut contract = BTreeMap::new();
                for &[f, v, w, g] in &block.contract {
                    if contract
                        .insert((MorId(f), ObjId(v)), (ObjId(w), MorId(g)))
                        .is_some()
                    {
                        return Err(malformed(
                            "D.reference",
                            format!("duplicate contract entry [{f}, {v}]"),
                        ));
                    }
                }
                Structured::Partial(PartialStructure::new(c, leq, restrict, contract)?)
            }
            Flavor::Inclusion => {
                let block = self.inclusion.as_ref().ok_or_else(missing)?;
                let members = block.members.iter().map(|&m| MorId(m)).collect();
                Structured::Inclusion(InclusionSystem::new(c, members)?)
            }
        };
        Ok(s)
    }
}
