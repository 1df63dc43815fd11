//! JSON workbench files: named rings, modules, submodules, multiplicative
//! sets, homomorphisms and amalgamations, resolved into live structures.
//!
//! ```json
//! {
//!   "rings": { "R": { "zn": 36 } },
//!   "modules": { "M": { "regular": "R" } },
//!   "submodules": { "N": { "module": "M", "gens": [6] } },
//!   "multsets": { "S": { "ring": "R", "gens": [3] } }
//! }
//! ```
//!
//! Elements are written as labels (strings) or indices (numbers).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::construct::{Amalgamation, Idealization};
use crate::error::{Error, Result};
use crate::harness::CorpusParams;
use crate::hom::ModuleHom;
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Provenance, RingHom};
use crate::set::ElemSet;
use crate::Caps;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Index(usize),
    Label(String),
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Elem::Index(i) => write!(f, "{i}"),
            Elem::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RingRecipe {
    Zn(usize),
    Product(Vec<String>),
    Quotient { ring: String, ideal: Vec<Elem> },
    /// `R ⋉ M` for the named module.
    Idealization(String),
    Tables(RingTables),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingTables {
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    #[serde(default)]
    zero: usize,
    #[serde(default = "one")]
    one: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum ModuleRecipe {
    Regular(String),
    Reduction { ring: String, modulus: usize },
    DirectSum(Vec<String>),
    Product(Vec<String>),
    Quotient { module: String, submodule: String },
    Tables(ModuleTables),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleTables {
    ring: String,
    add: Vec<Vec<u32>>,
    act: Vec<Vec<u32>>,
    #[serde(default)]
    zero: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubmoduleSpec {
    module: String,
    gens: Vec<Elem>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultSetSpec {
    ring: String,
    gens: Vec<Elem>,
    /// When false the generators must already be multiplicatively closed.
    #[serde(default = "yes")]
    closure: bool,
}

fn yes() -> bool {
    true
}

/// A map given by a named recipe or an explicit table.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MapSpec {
    Recipe(String),
    Table(Vec<Elem>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomSpec {
    source: String,
    target: String,
    map: MapSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmalgSpec {
    /// Duplication `M ⋈ J` of this module; excludes the fields below.
    #[serde(default)]
    module: Option<String>,
    #[serde(default)]
    module1: Option<String>,
    #[serde(default)]
    module2: Option<String>,
    #[serde(default)]
    f: Option<MapSpec>,
    #[serde(default)]
    phi: Option<MapSpec>,
    /// Generators of `J`, an ideal of the target ring.
    ideal: Vec<Elem>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawConfig {
    caps: Caps,
    corpus: Option<CorpusParams>,
    rings: BTreeMap<String, RingRecipe>,
    modules: BTreeMap<String, ModuleRecipe>,
    submodules: BTreeMap<String, SubmoduleSpec>,
    multsets: BTreeMap<String, MultSetSpec>,
    homs: BTreeMap<String, HomSpec>,
    amalgamations: BTreeMap<String, AmalgSpec>,
}

#[derive(Clone, Debug)]
pub struct NamedSubmodule {
    pub module: String,
    pub submodule: Submodule,
}

#[derive(Clone, Debug)]
pub struct NamedMultSet {
    pub ring: String,
    pub set: MultClosedSet,
}

/// A resolved configuration. Amalgamations also register their ring and
/// module under the amalgamation's name.
#[derive(Default)]
pub struct Workbench {
    pub caps: Caps,
    pub corpus: Option<CorpusParams>,
    pub rings: BTreeMap<String, Arc<FiniteRing>>,
    pub modules: BTreeMap<String, Arc<FiniteModule>>,
    pub submodules: BTreeMap<String, NamedSubmodule>,
    pub multsets: BTreeMap<String, NamedMultSet>,
    pub homs: BTreeMap<String, ModuleHom>,
    pub amalgamations: BTreeMap<String, Amalgamation>,
    /// Hex SHA-256 of the source text.
    pub fingerprint: String,
}

impl Workbench {
    pub fn load(path: impl AsRef<Path>) -> Result<Workbench> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Workbench::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Workbench> {
        let raw: RawConfig = serde_json::from_str(text)
            .map_err(|e| Error::ParseError { line: e.line(), column: e.column(), msg: strip_position(&e.to_string()) })?;
        raw.caps.validate()?;
        let mut r = Resolver { raw: &raw, wb: Workbench::default(), active: BTreeSet::new() };
        r.wb.caps = raw.caps;
        r.wb.corpus = raw.corpus.clone();
        r.wb.fingerprint = hex::encode(Sha256::digest(text.as_bytes()));
        for name in raw.rings.keys() {
            r.ring(name)?;
        }
        for name in raw.modules.keys() {
            r.module(name)?;
        }
        for name in raw.amalgamations.keys() {
            r.amalgamation(name)?;
        }
        for name in raw.submodules.keys() {
            r.submodule(name)?;
        }
        for (name, spec) in &raw.multsets {
            let ring = r.ring(&spec.ring)?;
            let gens = ring_elems(&ring, &spec.gens)?;
            let set = if spec.closure {
                MultClosedSet::closure(&ring, &gens)?
            } else {
                let mut set = ElemSet::empty(ring.order());
                for g in gens {
                    set.insert(g);
                }
                MultClosedSet::from_set(&ring, set)
                    .map_err(|e| Error::AuditFailure(format!("multset '{name}': {e}")))?
            };
            r.wb.multsets.insert(name.clone(), NamedMultSet { ring: spec.ring.clone(), set });
        }
        for (name, spec) in &raw.homs {
            let source = r.module(&spec.source)?;
            let target = r.module(&spec.target)?;
            let h = module_map(&source, &target, &spec.map, None)
                .map_err(|e| audit(format!("hom '{name}'"), e))?;
            r.wb.homs.insert(name.clone(), h);
        }
        Ok(r.wb)
    }

    pub fn ring(&self, name: &str) -> Result<&Arc<FiniteRing>> {
        self.rings.get(name).ok_or_else(|| unresolved("ring", name))
    }

    pub fn module(&self, name: &str) -> Result<&Arc<FiniteModule>> {
        self.modules.get(name).ok_or_else(|| unresolved("module", name))
    }

    pub fn submodule(&self, name: &str) -> Result<&NamedSubmodule> {
        self.submodules.get(name).ok_or_else(|| unresolved("submodule", name))
    }

    pub fn multset(&self, name: &str) -> Result<&NamedMultSet> {
        self.multsets.get(name).ok_or_else(|| unresolved("multset", name))
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn unresolved(kind: &'static str, name: &str) -> Error {
    Error::UnresolvedReference { kind, name: name.to_string() }
}

/// Structural failures in user tables are audit failures; reference and
/// cap errors pass through.
fn audit(what: String, e: Error) -> Error {
    match e {
        Error::UnresolvedReference { .. } | Error::CapExceeded { .. } | Error::AuditFailure(_) => e,
        other => Error::AuditFailure(format!("{what}: {other}")),
    }
}

fn ring_elems(ring: &FiniteRing, elems: &[Elem]) -> Result<Vec<usize>> {
    elems.iter().map(|e| elem(e, ring.order(), |s| ring.parse_element(s), ring.id())).collect()
}

fn module_elems(m: &FiniteModule, elems: &[Elem]) -> Result<Vec<usize>> {
    elems.iter().map(|e| elem(e, m.order(), |s| m.parse_element(s), m.id())).collect()
}

fn elem(e: &Elem, order: usize, parse: impl Fn(&str) -> Option<usize>, owner: &str) -> Result<usize> {
    match e {
        Elem::Index(i) if *i < order => Ok(*i),
        Elem::Label(s) => parse(s).ok_or_else(|| Error::InvalidSpec(format!("no element '{s}' in {owner}"))),
        _ => Err(Error::InvalidSpec(format!("no element {e} in {owner}"))),
    }
}

fn flatten(rows: &[Vec<u32>], what: &str) -> Result<Vec<u32>> {
    let width = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::AuditFailure(format!("{what} table is ragged")));
    }
    Ok(rows.concat())
}

/// Ring hom from a recipe (`identity`, `reduction`) or table.
fn ring_map(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>, spec: &MapSpec) -> Result<RingHom> {
    match spec {
        MapSpec::Recipe(r) if r == "identity" => {
            if !source.same_as(target) {
                return Err(Error::InvalidSpec("identity needs equal rings".into()));
            }
            Ok(RingHom::identity(source.clone()))
        }
        MapSpec::Recipe(r) if r == "reduction" => RingHom::reduction(source.clone(), target.clone()),
        MapSpec::Recipe(r) => Err(Error::InvalidSpec(format!("unknown ring map recipe '{r}'"))),
        MapSpec::Table(t) => RingHom::new(source.clone(), target.clone(), ring_elems(target, t)?),
    }
}

/// Module hom from a recipe (`identity`, `reduction`, `zero`) or table.
/// `reduction` sends index `x` to `x mod |target|`, which is the natural
/// map between cyclic modules `Z_a -> Z_b`.
fn module_map(
    source: &Arc<FiniteModule>,
    target: &Arc<FiniteModule>,
    spec: &MapSpec,
    bridge: Option<RingHom>,
) -> Result<ModuleHom> {
    let table: Vec<usize> = match spec {
        MapSpec::Recipe(r) if r == "identity" => source.elements().collect(),
        MapSpec::Recipe(r) if r == "reduction" => source.elements().map(|x| x % target.order()).collect(),
        MapSpec::Recipe(r) if r == "zero" => vec![target.zero(); source.order()],
        MapSpec::Recipe(r) => return Err(Error::InvalidSpec(format!("unknown module map recipe '{r}'"))),
        MapSpec::Table(t) => module_elems(target, t)?,
    };
    ModuleHom::new(source.clone(), target.clone(), table, bridge)
}

struct Resolver<'a> {
    raw: &'a RawConfig,
    wb: Workbench,
    active: BTreeSet<String>,
}

impl Resolver<'_> {
    fn enter(&mut self, key: String) -> Result<()> {
        if !self.active.insert(key.clone()) {
            return Err(Error::InvalidSpec(format!("cyclic reference through {key}")));
        }
        Ok(())
    }

    fn ring(&mut self, name: &str) -> Result<Arc<FiniteRing>> {
        if let Some(r) = self.wb.rings.get(name) {
            return Ok(r.clone());
        }
        let raw = self.raw;
        let Some(recipe) = raw.rings.get(name) else {
            if raw.amalgamations.contains_key(name) {
                self.amalgamation(name)?;
                return Ok(self.wb.rings[name].clone());
            }
            return Err(unresolved("ring", name));
        };
        self.enter(format!("ring {name}"))?;
        let caps = self.wb.caps;
        let ring = match recipe {
            RingRecipe::Zn(n) => {
                caps.check_ring(*n, "ring")?;
                Arc::new(FiniteRing::zn(*n)?)
            }
            RingRecipe::Product(parts) => {
                let factors = parts.iter().map(|p| self.ring(p)).collect::<Result<Vec<_>>>()?;
                Arc::new(FiniteRing::product(&factors, &caps)?)
            }
            RingRecipe::Quotient { ring, ideal } => {
                let base = self.ring(ring)?;
                let i = Ideal::span(&base, &ring_elems(&base, ideal)?);
                base.quotient(&i)?.0
            }
            RingRecipe::Idealization(module) => {
                let m = self.module(module)?;
                Idealization::new(m, &caps)?.ring().clone()
            }
            RingRecipe::Tables(t) => {
                let order = t.add.len();
                caps.check_ring(order, "ring")?;
                let add = flatten(&t.add, "add")?;
                let mul = flatten(&t.mul, "mul")?;
                let r = FiniteRing::from_tables(name, add, mul, t.zero, t.one, t.labels.clone(), Provenance::Tables)
                    .map_err(|e| audit(format!("ring '{name}'"), e))?;
                Arc::new(r)
            }
        };
        self.active.remove(&format!("ring {name}"));
        self.wb.rings.insert(name.to_string(), ring.clone());
        Ok(ring)
    }

    fn module(&mut self, name: &str) -> Result<Arc<FiniteModule>> {
        if let Some(m) = self.wb.modules.get(name) {
            return Ok(m.clone());
        }
        let raw = self.raw;
        let Some(recipe) = raw.modules.get(name) else {
            if raw.amalgamations.contains_key(name) {
                self.amalgamation(name)?;
                return Ok(self.wb.modules[name].clone());
            }
            return Err(unresolved("module", name));
        };
        self.enter(format!("module {name}"))?;
        let caps = self.wb.caps;
        let own = |m: FiniteModule| Arc::new(m.with_lattice_cap(caps.lattice_size));
        let module = match recipe {
            ModuleRecipe::Regular(ring) => {
                let r = self.ring(ring)?;
                caps.check_module(r.order(), "module")?;
                own(FiniteModule::regular(r))
            }
            ModuleRecipe::Reduction { ring, modulus } => own(FiniteModule::reduction(self.ring(ring)?, *modulus)?),
            ModuleRecipe::DirectSum(parts) => {
                let ms = parts.iter().map(|p| self.module(p)).collect::<Result<Vec<_>>>()?;
                own(FiniteModule::direct_sum(&ms, &caps)?)
            }
            ModuleRecipe::Product(parts) => {
                let ms = parts.iter().map(|p| self.module(p)).collect::<Result<Vec<_>>>()?;
                own(FiniteModule::product(&ms, &caps)?)
            }
            ModuleRecipe::Quotient { module, submodule } => {
                let base = self.module(module)?;
                let k = self.submodule(submodule)?;
                if self.wb.submodules[submodule].module != *module {
                    return Err(Error::InvalidSpec(format!("submodule '{submodule}' is not in module '{module}'")));
                }
                base.quotient(&k)?.0
            }
            ModuleRecipe::Tables(t) => {
                let r = self.ring(&t.ring)?;
                caps.check_module(t.add.len(), "module")?;
                let add = flatten(&t.add, "add")?;
                let act = flatten(&t.act, "act")?;
                own(FiniteModule::from_tables(name, r, add, act, t.zero, t.labels.clone(), Provenance::Tables)
                    .map_err(|e| audit(format!("module '{name}'"), e))?)
            }
        };
        caps.check_module(module.order(), "module")?;
        self.active.remove(&format!("module {name}"));
        self.wb.modules.insert(name.to_string(), module.clone());
        Ok(module)
    }

    fn submodule(&mut self, name: &str) -> Result<Submodule> {
        if let Some(n) = self.wb.submodules.get(name) {
            return Ok(n.submodule.clone());
        }
        let spec = self.raw.submodules.get(name).ok_or_else(|| unresolved("submodule", name))?;
        self.enter(format!("submodule {name}"))?;
        let m = self.module(&spec.module)?;
        let n = m.span(&module_elems(&m, &spec.gens)?);
        self.active.remove(&format!("submodule {name}"));
        self.wb
            .submodules
            .insert(name.to_string(), NamedSubmodule { module: spec.module.clone(), submodule: n.clone() });
        Ok(n)
    }

    fn amalgamation(&mut self, name: &str) -> Result<()> {
        if self.wb.amalgamations.contains_key(name) {
            return Ok(());
        }
        if self.raw.rings.contains_key(name) || self.raw.modules.contains_key(name) {
            return Err(Error::InvalidSpec(format!("amalgamation '{name}' reuses a ring or module name")));
        }
        let spec = self.raw.amalgamations.get(name).ok_or_else(|| unresolved("amalgamation", name))?;
        self.enter(format!("amalgamation {name}"))?;
        let caps = self.wb.caps;
        let a = match (&spec.module, &spec.module1, &spec.module2) {
            (Some(m), None, None) => {
                let m = self.module(m)?;
                let j = Ideal::span(m.ring(), &ring_elems(m.ring(), &spec.ideal)?);
                Amalgamation::duplication(m, j, &caps)?
            }
            (None, Some(m1), Some(m2)) => {
                let m1 = self.module(m1)?;
                let m2 = self.module(m2)?;
                let (r1, r2) = (m1.ring().clone(), m2.ring().clone());
                let f = ring_map(&r1, &r2, spec.f.as_ref().unwrap_or(&MapSpec::Recipe("identity".into())))
                    .map_err(|e| audit(format!("amalgamation '{name}' f"), e))?;
                let phi = module_map(&m1, &m2, spec.phi.as_ref().unwrap_or(&MapSpec::Recipe("identity".into())), Some(f.clone()))
                    .map_err(|e| audit(format!("amalgamation '{name}' phi"), e))?;
                let j = Ideal::span(&r2, &ring_elems(&r2, &spec.ideal)?);
                Amalgamation::new(f, j, &phi, &caps)?
            }
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "amalgamation '{name}' needs either module or both module1 and module2"
                )))
            }
        };
        self.active.remove(&format!("amalgamation {name}"));
        self.wb.rings.insert(name.to_string(), a.ring().clone());
        self.wb.modules.insert(name.to_string(), a.module().clone());
        self.wb.amalgamations.insert(name.to_string(), a);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multset_closure_from_generators() {
        let wb = Workbench::parse(r#"{"rings":{"R":{"zn":36}},"multsets":{"S":{"ring":"R","gens":[3]}}}"#).unwrap();
        let s: Vec<usize> = wb.multset("S").unwrap().set.iter().collect();
        assert_eq!(s, vec![3, 9, 27]);
    }

    #[test]
    fn empty_config_is_valid() {
        let wb = Workbench::parse("{}").unwrap();
        assert!(wb.rings.is_empty() && wb.modules.is_empty());
    }

    #[test]
    fn unknown_ring_is_unresolved() {
        let e = Workbench::parse(r#"{"modules":{"M":{"regular":"Q"}}}"#).err().unwrap();
        assert_eq!(e, Error::UnresolvedReference { kind: "ring", name: "Q".into() });
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = Workbench::parse("{\n  \"rings\": {\n    \"R\": {\"zn\": }\n}").err().unwrap();
        assert!(matches!(e, Error::ParseError { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn unclosed_generators_fail_audit() {
        let e = Workbench::parse(r#"{"rings":{"R":{"zn":12}},"multsets":{"S":{"ring":"R","gens":[2],"closure":false}}}"#)
            .err()
            .unwrap();
        assert!(matches!(e, Error::AuditFailure(_)), "{e:?}");
    }

    #[test]
    fn cyclic_references_are_rejected() {
        let text = r#"{"modules":{"A":{"direct_sum":["B"]},"B":{"direct_sum":["A"]}}}"#;
        assert!(matches!(Workbench::parse(text), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn duplication_registers_ring_and_module() {
        let text = r#"{"rings":{"R":{"zn":4}},"modules":{"M":{"regular":"R"}},
            "amalgamations":{"D":{"module":"M","ideal":[2]}},
            "submodules":{"Z":{"module":"D","gens":[]}}}"#;
        let wb = Workbench::parse(text).unwrap();
        assert_eq!(wb.ring("D").unwrap().order(), 8);
        assert_eq!(wb.module("D").unwrap().order(), 8);
        assert!(wb.submodule("Z").unwrap().submodule.is_zero());
    }
}
