//! The five subcommands, as pure functions from inputs to an [`Outcome`].

use std::collections::BTreeMap;

use parcat_core::equivalence::{
    certify_isomorphism, local_to_restriction, restriction_to_local, roundtrip_local,
    roundtrip_restriction, unbounded_note, IsoCertificate,
};
use parcat_core::fincat::validate_category;
use parcat_core::generators::{
    gen_finset_with_limit, gen_inverse_monoid, gen_par_with_limit, gen_parset_with_limit,
    gen_restriction_monoid, gen_trivial, random_group_category,
};
use parcat_core::inclusion::{
    inclusion_from_local, inclusion_from_partial, is_bounded_inclusion, is_inverse_inclusion,
    local_from_bounded_inclusion, partial_from_inclusion,
};
use parcat_core::local::{is_inverse_local, is_split_local, total_objects};
use parcat_core::partial::is_bounded_partial;
use parcat_core::restriction::{
    is_inverse_category, is_restriction_idempotent, is_restriction_monic, is_split, is_total,
};
use parcat_core::{Error as CoreError, FinCategory, Flavor, Structured, Violation};
use serde::Serialize;
use serde_json::Value;

use crate::document::{CategoryDocument, DocError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Invalid = 1,
    Malformed = 2,
    Unbounded = 3,
}

/// Machine-readable report, shared by every command.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub flags: BTreeMap<String, String>,
    pub violations: Vec<Violation>,
    pub statistics: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Report,
    /// Human-readable lines.
    pub summary: Vec<String>,
    /// A document or certificate to write out.
    pub artifact: Option<String>,
}

impl Outcome {
    fn new(command: &str, input: &str, flags: BTreeMap<String, String>) -> Self {
        Outcome {
            exit: Exit::Ok,
            report: Report {
                command: command.to_string(),
                input: input.to_string(),
                flags,
                ..Report::default()
            },
            summary: Vec::new(),
            artifact: None,
        }
    }

    fn fail(mut self, exit: Exit, violations: Vec<Violation>, c: Option<&FinCategory>) -> Self {
        self.exit = exit;
        for v in &violations {
            self.summary.push(describe(v, c));
        }
        self.report.violations.extend(violations);
        self
    }

    fn doc_error(self, e: DocError) -> Self {
        let exit = match e {
            DocError::Core(CoreError::Certificate(_) | CoreError::Internal(_)) => Exit::Invalid,
            _ => Exit::Malformed,
        };
        self.fail(exit, e.violations(), None)
    }

    fn stat(&mut self, key: &str, value: impl Into<Value>) {
        self.report.statistics.insert(key.to_string(), value.into());
    }
}

/// The input file could not be read.
pub fn io_error(command: &str, input: &str, message: String) -> Outcome {
    Outcome::new(command, input, BTreeMap::new()).fail(
        Exit::Malformed,
        vec![Violation::new("D.io", message)],
        None,
    )
}

/// `R.1: message [objects: A; morphisms: f, g]`, with labels when known.
pub fn describe(v: &Violation, c: Option<&FinCategory>) -> String {
    let mut parts = Vec::new();
    if !v.objects.is_empty() {
        let names: Vec<String> = v
            .objects
            .iter()
            .map(|&a| match c {
                Some(c) if c.contains_object(a) => c.object_label(a).to_string(),
                _ => a.to_string(),
            })
            .collect();
        parts.push(format!("objects: {}", names.join(", ")));
    }
    if !v.morphisms.is_empty() {
        let names: Vec<String> = v
            .morphisms
            .iter()
            .map(|&f| match c {
                Some(c) if c.contains_morphism(f) => c.label(f).to_string(),
                _ => f.to_string(),
            })
            .collect();
        parts.push(format!("morphisms: {}", names.join(", ")));
    }
    if parts.is_empty() {
        format!("{}: {}", v.axiom, v.message)
    } else {
        format!("{}: {} [{}]", v.axiom, v.message, parts.join("; "))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load(text: &str, flavor: Flavor, limit: usize) -> Result<Structured, DocError> {
    CategoryDocument::parse(text)?.structure(flavor, limit)
}

/// Validate the category and the requested structure, or every structure
/// block present when none is requested.
pub fn validate(text: &str, input: &str, flavor: Option<Flavor>, limit: usize) -> Outcome {
    let mut flags = BTreeMap::new();
    if let Some(f) = flavor {
        flags.insert("structure".into(), f.to_string());
    }
    let out = Outcome::new("validate", input, flags);
    let (doc, c) =
        match CategoryDocument::parse(text).and_then(|d| d.category(limit).map(|c| (d, c))) {
            Ok(x) => x,
            Err(e) => return out.doc_error(e),
        };
    let mut out = out;
    out.stat("objects", c.object_count());
    out.stat("morphisms", c.morphism_count());
    let category = validate_category(&c);
    if !category.is_valid() {
        out.summary.push("category: invalid".into());
        return out.fail(Exit::Invalid, category.violations, Some(&c));
    }
    out.summary.push(format!(
        "category: valid ({} objects, {} morphisms)",
        c.object_count(),
        c.morphism_count()
    ));
    let flavors = flavor.map_or_else(|| doc.flavors(), |f| vec![f]);
    let mut checked = Vec::new();
    for f in flavors {
        let s = match doc.structure(f, limit) {
            Ok(s) => s,
            Err(e) => return out.doc_error(e),
        };
        let report = s.validate();
        checked.push(Value::from(f.name()));
        if report.is_valid() {
            out.summary.push(format!("{f}: valid"));
        } else {
            let verdict = if report.violations.is_empty() {
                "inconclusive"
            } else {
                "invalid"
            };
            out.summary.push(format!("{f}: {verdict}"));
            out.summary
                .extend(report.inconclusive.iter().map(|n| format!("skipped: {n}")));
            out = out.fail(Exit::Invalid, report.violations, Some(&c));
        }
    }
    out.stat("structures", checked);
    out
}

const CHAIN: [Flavor; 4] = [
    Flavor::Restriction,
    Flavor::Local,
    Flavor::Inclusion,
    Flavor::Partial,
];

fn position(f: Flavor) -> usize {
    CHAIN
        .iter()
        .position(|&g| g == f)
        .expect("every flavor is on the chain")
}

enum HopError {
    Unbounded(String),
    Core(CoreError),
}

fn hop(s: Structured, to: Flavor) -> Result<Structured, HopError> {
    let core = HopError::Core;
    Ok(match (s, to) {
        (Structured::Restriction(r), Flavor::Local) => {
            Structured::Local(restriction_to_local(&r).map_err(core)?.local)
        }
        (Structured::Local(lc), Flavor::Restriction) => {
            Structured::Restriction(local_to_restriction(&lc).map_err(core)?.restriction)
        }
        (Structured::Local(lc), Flavor::Inclusion) => {
            Structured::Inclusion(inclusion_from_local(&lc))
        }
        (Structured::Inclusion(n), Flavor::Local) => {
            if let Some(note) = unbounded_note(&n) {
                return Err(HopError::Unbounded(note));
            }
            Structured::Local(local_from_bounded_inclusion(&n).map_err(core)?)
        }
        (Structured::Inclusion(n), Flavor::Partial) => {
            Structured::Partial(partial_from_inclusion(&n).map_err(core)?)
        }
        (Structured::Partial(p), Flavor::Inclusion) => {
            Structured::Inclusion(inclusion_from_partial(&p).map_err(core)?)
        }
        (s, to) => unreachable!("no direct hop from {} to {to}", s.flavor()),
    })
}

/// Translate along restriction ↔ local ↔ inclusion ↔ partial, one hop at a time.
pub fn translate(text: &str, input: &str, from: Flavor, to: Flavor, limit: usize) -> Outcome {
    let flags = BTreeMap::from([
        ("from".into(), from.to_string()),
        ("to".into(), to.to_string()),
    ]);
    let mut out = Outcome::new("translate", input, flags);
    let mut s = match load(text, from, limit) {
        Ok(s) => s,
        Err(e) => return out.doc_error(e),
    };
    let report = s.validate();
    if !report.is_valid() {
        let c = s.base().clone();
        out.summary.push(format!("{from}: invalid input"));
        return out.fail(Exit::Invalid, report.violations, Some(&c));
    }
    let (i, j) = (position(from), position(to));
    let route: Vec<Flavor> = if i <= j {
        CHAIN[i + 1..=j].to_vec()
    } else {
        CHAIN[j..i].iter().rev().copied().collect()
    };
    let mut hops = Vec::new();
    for next in route {
        let here = s.flavor();
        s = match hop(s, next) {
            Ok(t) => t,
            Err(HopError::Unbounded(note)) => {
                out.summary
                    .push(format!("cannot translate {here} -> {next}"));
                let v = Violation::new("chain.bounded", note);
                return out.fail(Exit::Unbounded, vec![v], None);
            }
            Err(HopError::Core(e)) => return out.doc_error(DocError::Core(e)),
        };
        hops.push(Value::from(format!("{here}->{next}")));
    }
    let c = s.base();
    out.summary.push(format!(
        "{from} -> {to}: {} objects, {} morphisms",
        c.object_count(),
        c.morphism_count()
    ));
    out.stat("hops", hops);
    out.stat("objects", c.object_count());
    out.stat("morphisms", c.morphism_count());
    out.artifact = Some(CategoryDocument::from_structured(&s).to_json());
    out
}

fn identity_certificate(c: &FinCategory) -> Result<IsoCertificate, CoreError> {
    certify_isomorphism(c, c, c.objects().collect(), c.morphisms().collect())
}

/// Certify that the round trip through the adjacent construction is an isomorphism.
///
/// Restriction and local structures go through `L`/`R`; inclusion and
/// partial structures through each other, where the round trip is the identity.
pub fn roundtrip(text: &str, input: &str, flavor: Flavor, limit: usize) -> Outcome {
    let flags = BTreeMap::from([("structure".into(), flavor.to_string())]);
    let mut out = Outcome::new("roundtrip", input, flags);
    let s = match load(text, flavor, limit) {
        Ok(s) => s,
        Err(e) => return out.doc_error(e),
    };
    let report = s.validate();
    if !report.is_valid() {
        let c = s.base().clone();
        return out.fail(Exit::Invalid, report.violations, Some(&c));
    }
    let cert = match &s {
        Structured::Restriction(r) => roundtrip_restriction(r),
        Structured::Local(lc) => roundtrip_local(lc),
        Structured::Inclusion(n) => partial_from_inclusion(n)
            .and_then(|p| inclusion_from_partial(&p))
            .and_then(|back| {
                if back == *n {
                    identity_certificate(&n.base)
                } else {
                    Err(CoreError::Certificate(
                        "inclusion round trip changed the system".into(),
                    ))
                }
            }),
        Structured::Partial(p) => inclusion_from_partial(p)
            .and_then(|n| partial_from_inclusion(&n))
            .and_then(|back| {
                if back == *p {
                    identity_certificate(&p.base)
                } else {
                    Err(CoreError::Certificate(
                        "partial round trip changed the structure".into(),
                    ))
                }
            }),
    };
    let cert = match cert {
        Ok(cert) => cert,
        Err(e) => return out.doc_error(DocError::Core(e)),
    };
    out.summary.push(format!(
        "{flavor} round trip: isomorphism on {} objects and {} morphisms",
        cert.object_map.len(),
        cert.morphism_map.len()
    ));
    out.stat("objects", cert.object_map.len());
    out.stat("morphisms", cert.morphism_map.len());
    let value = serde_json::to_value(&cert).expect("certificates serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    out.report.certificate = Some(value);
    out.artifact = Some(text);
    out
}

fn numbers(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| format!("`{x}` is not a number"))
        })
        .collect()
}

/// `;`-separated rows of `,`-separated numbers; an empty row is allowed.
fn rows(s: &str) -> Result<Vec<Vec<usize>>, String> {
    s.split(';').map(numbers).collect()
}

fn param<'a>(params: &'a BTreeMap<String, String>, key: &str, default: &'a str) -> &'a str {
    params.get(key).map_or(default, String::as_str)
}

/// Generator kinds and their `key=value` parameters.
pub const KINDS: &str = "par sizes=2,1 | parset universes=2 | finset subsets=';0;1;0,1' | \
inverse_monoid n=2 | restriction_monoid mult='0,1;1,1' bar=0,1 | groups (uses --seed, --structure)";

fn generated(
    kind: &str,
    params: &BTreeMap<String, String>,
    seed: u64,
    flavor: Option<Flavor>,
    limit: usize,
) -> Result<Vec<Structured>, String> {
    let core = |e: CoreError| e.to_string();
    Ok(match kind {
        "par" => {
            let sizes = numbers(param(params, "sizes", "2,1"))?;
            vec![Structured::Restriction(
                gen_par_with_limit(&sizes, limit).map_err(core)?,
            )]
        }
        "parset" => {
            let u = numbers(param(params, "universes", "2"))?;
            let ps = gen_parset_with_limit(&u, limit).map_err(core)?;
            vec![
                Structured::Local(ps.local),
                Structured::Partial(ps.partial),
                Structured::Inclusion(ps.inclusion),
            ]
        }
        "finset" => {
            let subsets = rows(param(params, "subsets", ";0;1;0,1"))?;
            let fs = gen_finset_with_limit(&subsets, limit).map_err(core)?;
            vec![
                Structured::Partial(fs.partial),
                Structured::Inclusion(fs.inclusion),
            ]
        }
        "inverse_monoid" => {
            let n = param(params, "n", "2")
                .parse()
                .map_err(|_| "n must be a number".to_string())?;
            vec![Structured::Restriction(
                gen_inverse_monoid(n).map_err(core)?,
            )]
        }
        "restriction_monoid" => {
            let mult = rows(param(params, "mult", "0"))?;
            let bar = numbers(param(params, "bar", "0"))?;
            vec![Structured::Restriction(
                gen_restriction_monoid(&mult, &bar).map_err(core)?,
            )]
        }
        "groups" => {
            let c = random_group_category(seed).map_err(core)?;
            vec![gen_trivial(c, flavor.unwrap_or(Flavor::Restriction)).map_err(core)?]
        }
        other => {
            return Err(format!(
                "unknown generator `{other}`; expected one of: {KINDS}"
            ))
        }
    })
}

/// Run a generator; `params` are `key=value` strings.
pub fn generate(
    kind: &str,
    params: &[String],
    seed: u64,
    flavor: Option<Flavor>,
    limit: usize,
) -> Outcome {
    let mut flags = BTreeMap::from([("seed".into(), seed.to_string())]);
    if let Some(f) = flavor {
        flags.insert("structure".into(), f.to_string());
    }
    let mut out = Outcome::new("generate", kind, flags);
    let malformed = |out: Outcome, msg: String| {
        out.fail(
            Exit::Malformed,
            vec![Violation::new("D.parameters", msg)],
            None,
        )
    };
    let mut map = BTreeMap::new();
    for p in params {
        match p.split_once('=') {
            Some((k, v)) => {
                map.insert(k.to_string(), v.to_string());
            }
            None => return malformed(out, format!("parameter `{p}` is not key=value")),
        }
    }
    let structures = match generated(kind, &map, seed, flavor, limit) {
        Ok(s) => s,
        Err(msg) => return malformed(out, msg),
    };
    let chosen: Vec<&Structured> = structures
        .iter()
        .filter(|s| flavor.is_none_or(|f| s.flavor() == f))
        .collect();
    let Some(first) = chosen.first() else {
        let msg = format!(
            "generator `{kind}` has no {} structure",
            flavor.expect("filter was set")
        );
        return malformed(out, msg);
    };
    let mut doc = CategoryDocument::from_structured(first);
    for s in &chosen[1..] {
        doc.set_structure(s);
    }
    let c = first.base();
    let names: Vec<&str> = chosen.iter().map(|s| s.flavor().name()).collect();
    out.summary.push(format!(
        "{kind}: {} objects, {} morphisms ({})",
        c.object_count(),
        c.morphism_count(),
        names.join(", ")
    ));
    out.stat("objects", c.object_count());
    out.stat("morphisms", c.morphism_count());
    out.stat("structures", names);
    out.artifact = Some(doc.to_json());
    out
}

fn category_statistics(out: &mut Outcome, c: &FinCategory) {
    out.stat("objects", c.object_count());
    out.stat("morphisms", c.morphism_count());
    let count = |p: &dyn Fn(parcat_core::MorId) -> bool| c.morphisms().filter(|&f| p(f)).count();
    let idempotents = count(&|f| c.is_endo(f) && c.compose(f, f) == Some(f));
    let monics = count(&|f| c.is_monic(f));
    let isos = count(&|f| c.is_iso(f));
    out.stat("idempotents", idempotents);
    out.stat("monics", monics);
    out.stat("isomorphisms", isos);
    out.summary.push(format!(
        "category: {} objects, {} morphisms, {idempotents} idempotents, {monics} monics, {isos} isomorphisms",
        c.object_count(),
        c.morphism_count()
    ));
}

fn structure_statistics(out: &mut Outcome, s: &Structured) -> Result<(), CoreError> {
    let c = s.base();
    let line = match s {
        Structured::Restriction(r) => {
            let total = c.morphisms().filter(|&f| is_total(r, f)).count();
            let idempotents = c
                .morphisms()
                .filter(|&f| is_restriction_idempotent(r, f))
                .count();
            let monics = c
                .morphisms()
                .filter(|&f| is_restriction_monic(r, f))
                .count();
            let inverse = is_inverse_category(r)?;
            let split = is_split(r).is_split();
            out.stat("restriction.total", total);
            out.stat("restriction.idempotents", idempotents);
            out.stat("restriction.monics", monics);
            out.stat("restriction.inverse", inverse);
            out.stat("restriction.split", split);
            format!(
                "restriction: {total} total, {idempotents} restriction idempotents, {monics} restriction monics; inverse: {}; split: {}",
                yes_no(inverse),
                yes_no(split)
            )
        }
        Structured::Local(lc) => {
            let totals = total_objects(lc).len();
            let inverse = is_inverse_local(lc)?;
            let split = is_split_local(lc);
            let bounded = is_bounded_inclusion(&inclusion_from_local(lc))
                .boundedness
                .is_bounded();
            out.stat("local.total_objects", totals);
            out.stat("local.inverse", inverse);
            out.stat("local.split", split);
            out.stat("local.bounded", bounded);
            format!(
                "local: {totals} total objects; inverse local: {}; split: {}; bounded: {}",
                yes_no(inverse),
                yes_no(split),
                yes_no(bounded)
            )
        }
        Structured::Inclusion(n) => {
            let bounded = is_bounded_inclusion(n).boundedness.is_bounded();
            let inverse = is_inverse_inclusion(n);
            out.stat("inclusion.members", n.inclusions.len());
            out.stat("inclusion.bounded", bounded);
            out.stat("inclusion.inverse", inverse);
            format!(
                "inclusion: {} members; inverse inclusion: {}; bounded: {}",
                n.inclusions.len(),
                yes_no(inverse),
                yes_no(bounded)
            )
        }
        Structured::Partial(p) => {
            let bounded = is_bounded_partial(p).is_bounded();
            out.stat("partial.order_pairs", p.leq.len());
            out.stat("partial.bounded", bounded);
            format!(
                "partial: {} order pairs; bounded: {}",
                p.leq.len(),
                yes_no(bounded)
            )
        }
    };
    out.summary.push(line);
    Ok(())
}

/// Statistics for the category and every valid structure block.
pub fn report(text: &str, input: &str, limit: usize) -> Outcome {
    let mut out = Outcome::new("report", input, BTreeMap::new());
    let (doc, c) =
        match CategoryDocument::parse(text).and_then(|d| d.category(limit).map(|c| (d, c))) {
            Ok(x) => x,
            Err(e) => return out.doc_error(e),
        };
    let category = validate_category(&c);
    if !category.is_valid() {
        return out.fail(Exit::Invalid, category.violations, Some(&c));
    }
    category_statistics(&mut out, &c);
    for f in doc.flavors() {
        let s = match doc.structure(f, limit) {
            Ok(s) => s,
            Err(e) => return out.doc_error(e),
        };
        let v = s.validate();
        if !v.is_valid() {
            out.summary.push(format!("{f}: invalid, no statistics"));
            out = out.fail(Exit::Invalid, v.violations, Some(&c));
            continue;
        }
        if let Err(e) = structure_statistics(&mut out, &s) {
            return out.doc_error(DocError::Core(e));
        }
    }
    out
}
