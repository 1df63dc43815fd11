//! Finite unital modules over finite rings, their submodules, and the
//! module-level calculus.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::ModuleHom;
use crate::ideal::{additive_sum, join_closure, Ideal};
use crate::ring::{cosets, mixed_radix, pair_label, FiniteRing, Provenance, RingHom};
use crate::set::ElemSet;
use crate::{Caps, DEFAULT_LATTICE_CAP};

/// A submodule, stored as its member set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Submodule(ElemSet);

impl Submodule {
    pub(crate) fn from_set_unchecked(set: ElemSet) -> Submodule {
        Submodule(set)
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn contains(&self, m: usize) -> bool {
        self.0.contains(m)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Submodule(self.0.intersection(&other.0))
    }
}

/// Which route `m_radical` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Intersection of the prime submodules containing N (M if there are none).
    Definition,
    /// `sqrt((N : M)) M`, valid on multiplication modules.
    MultFormula,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleProperties {
    pub faithful: bool,
    pub multiplication: bool,
    pub zero_divisors: Vec<usize>,
}

pub struct FiniteModule {
    id: String,
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    act: Vec<u32>,
    zero: usize,
    labels: Vec<String>,
    provenance: Provenance,
    lattice_cap: usize,
    lattice: OnceLock<Result<Vec<Submodule>>>,
    primes: OnceLock<Result<Vec<Submodule>>>,
    multiplication: OnceLock<Result<bool>>,
}

impl FiniteModule {
    /// Builds a module from tables and audits the module axioms.
    /// `act[r * order + m]` is `r·m`.
    pub fn from_tables(
        id: impl Into<String>,
        ring: Arc<FiniteRing>,
        add: Vec<u32>,
        act: Vec<u32>,
        zero: usize,
        labels: Option<Vec<String>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let m = Self::assemble(id.into(), ring, add, act, zero, labels, provenance)?;
        m.audit()?;
        Ok(m)
    }

    pub(crate) fn assemble(
        id: String,
        ring: Arc<FiniteRing>,
        add: Vec<u32>,
        act: Vec<u32>,
        zero: usize,
        labels: Option<Vec<String>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let order = (add.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != add.len() || act.len() != ring.order() * order {
            return Err(Error::InvalidSpec("module tables have the wrong shape".into()));
        }
        if zero >= order || add.iter().chain(act.iter()).any(|&x| x as usize >= order) {
            return Err(Error::InvalidSpec("module table entry out of range".into()));
        }
        let mut neg = vec![u32::MAX; order];
        for a in 0..order {
            if let Some(b) = (0..order).find(|&b| add[a * order + b] as usize == zero) {
                neg[a] = b as u32;
            }
        }
        if neg.contains(&u32::MAX) {
            return Err(Error::InvalidSpec("module addition has no inverses".into()));
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(_) => return Err(Error::InvalidSpec("label count does not match order".into())),
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteModule {
            id,
            ring,
            order,
            add,
            neg,
            act,
            zero,
            labels,
            provenance,
            lattice_cap: DEFAULT_LATTICE_CAP,
            lattice: OnceLock::new(),
            primes: OnceLock::new(),
            multiplication: OnceLock::new(),
        })
    }

    /// The ring acting on itself.
    pub fn regular(ring: Arc<FiniteRing>) -> Self {
        let labels = ring.labels().to_vec();
        let id = ring.id().to_string();
        Self::assemble(
            id.clone(),
            ring.clone(),
            ring.add_table().to_vec(),
            ring.mul_table().to_vec(),
            ring.zero(),
            Some(labels),
            Provenance::Regular(id),
        )
        .expect("regular module tables are well formed")
    }

    /// `Z_m` as a module over `Z_n` (the given ring) for `m | n`.
    pub fn reduction(ring: Arc<FiniteRing>, m: usize) -> Result<Self> {
        let n = ring.order();
        if ring.provenance() != &Provenance::Base {
            return Err(Error::InvalidSpec("reduction modules need a base ring Z_n".into()));
        }
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::ActionUndefined { n, m });
        }
        let mut add = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                add.push(((a + b) % m) as u32);
            }
        }
        let mut act = Vec::with_capacity(n * m);
        for r in 0..n {
            for x in 0..m {
                act.push(((r * x) % m) as u32);
            }
        }
        Self::assemble(format!("Z{m}@Z{n}"), ring, add, act, 0, None, Provenance::Reduction { n, m })
    }

    /// External direct sum of modules over one ring.
    pub fn direct_sum(parts: &[Arc<FiniteModule>], caps: &Caps) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidSpec("empty direct sum".into()))?;
        let ring = first.ring.clone();
        if parts.iter().any(|p| !p.ring.same_as(&ring)) {
            return Err(Error::InvalidSpec("direct sum summands must share a ring".into()));
        }
        let order: usize = parts.iter().map(|p| p.order).product();
        caps.check_module(order, "direct sum")?;
        let tuples: Vec<Vec<usize>> = (0..order).map(|i| mixed_radix(i, parts.iter().map(|p| p.order))).collect();
        let encode = |t: &mut dyn Iterator<Item = usize>| t.zip(parts).fold(0, |acc, (x, p)| acc * p.order + x);
        let mut add = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                add[a * order + b] =
                    encode(&mut parts.iter().enumerate().map(|(k, p)| p.add(tuples[a][k], tuples[b][k]))) as u32;
            }
        }
        let mut act = vec![0u32; ring.order() * order];
        for r in ring.elements() {
            for a in 0..order {
                act[r * order + a] =
                    encode(&mut parts.iter().enumerate().map(|(k, p)| p.act(r, tuples[a][k]))) as u32;
            }
        }
        let labels = tuples
            .iter()
            .map(|t| pair_label(t.iter().zip(parts).map(|(&x, p)| p.label(x))))
            .collect();
        let zero = encode(&mut parts.iter().map(|p| p.zero));
        let id = parts.iter().map(|p| p.id.as_str()).collect::<Vec<_>>().join("+");
        Self::assemble(
            format!("({id})"),
            ring,
            add,
            act,
            zero,
            Some(labels),
            Provenance::DirectSum(parts.iter().map(|p| p.id.clone()).collect()),
        )
    }

    /// `M_1 x ... x M_k` as a module over `R_1 x ... x R_k`, acting
    /// componentwise. The product ring is built here.
    pub fn product(parts: &[Arc<FiniteModule>], caps: &Caps) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSpec("empty product".into()));
        }
        let rings: Vec<Arc<FiniteRing>> = parts.iter().map(|p| p.ring.clone()).collect();
        let ring = Arc::new(FiniteRing::product(&rings, caps)?);
        Self::product_over(parts, ring, caps)
    }

    /// Same as `product`, reusing an already built product ring.
    pub fn product_over(parts: &[Arc<FiniteModule>], ring: Arc<FiniteRing>, caps: &Caps) -> Result<Self> {
        let ring_order: usize = parts.iter().map(|p| p.ring.order()).product();
        if ring.order() != ring_order {
            return Err(Error::InvalidSpec("product ring does not match the factors".into()));
        }
        let order: usize = parts.iter().map(|p| p.order).product();
        caps.check_module(order, "product module")?;
        let tuples: Vec<Vec<usize>> = (0..order).map(|i| mixed_radix(i, parts.iter().map(|p| p.order))).collect();
        let rtuples: Vec<Vec<usize>> =
            (0..ring.order()).map(|i| mixed_radix(i, parts.iter().map(|p| p.ring.order()))).collect();
        let encode = |t: &mut dyn Iterator<Item = usize>| t.zip(parts).fold(0, |acc, (x, p)| acc * p.order + x);
        let mut add = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                add[a * order + b] =
                    encode(&mut parts.iter().enumerate().map(|(k, p)| p.add(tuples[a][k], tuples[b][k]))) as u32;
            }
        }
        let mut act = vec![0u32; ring.order() * order];
        for r in ring.elements() {
            for a in 0..order {
                act[r * order + a] =
                    encode(&mut parts.iter().enumerate().map(|(k, p)| p.act(rtuples[r][k], tuples[a][k]))) as u32;
            }
        }
        let labels = tuples
            .iter()
            .map(|t| pair_label(t.iter().zip(parts).map(|(&x, p)| p.label(x))))
            .collect();
        let zero = encode(&mut parts.iter().map(|p| p.zero));
        let id = parts.iter().map(|p| p.id.as_str()).collect::<Vec<_>>().join("x");
        Self::assemble(
            id,
            ring,
            add,
            act,
            zero,
            Some(labels),
            Provenance::Product(parts.iter().map(|p| p.id.clone()).collect()),
        )
    }

    /// `M/K` with the canonical projection. Cosets use their least index.
    pub fn quotient(self: &Arc<Self>, k: &Submodule) -> Result<(Arc<FiniteModule>, ModuleHom)> {
        if !self.is_submodule(k.members()) {
            return Err(Error::NotASubmodule(format!("{:?} in {}", k.members(), self.id)));
        }
        let (reps, class_of) = cosets(self.order, k.members(), |a, b| self.add(a, b));
        let q = reps.len();
        let mut add = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * q + j] = class_of[self.add(a, b)] as u32;
            }
        }
        let mut act = vec![0u32; self.ring.order() * q];
        for r in self.ring.elements() {
            for (i, &a) in reps.iter().enumerate() {
                act[r * q + i] = class_of[self.act(r, a)] as u32;
            }
        }
        let labels = reps.iter().map(|&r| format!("{}+K", self.label(r))).collect();
        let module = Arc::new(Self::assemble(
            format!("{}/{}", self.id, self.set_label(k.members())),
            self.ring.clone(),
            add,
            act,
            class_of[self.zero],
            Some(labels),
            Provenance::Quotient { base: self.id.clone(), by: k.members().to_vec() },
        )?);
        let proj = ModuleHom::new(self.clone(), module.clone(), class_of, None)?;
        Ok((module, proj))
    }

    /// The submodule `N` as a module in its own right, with its inclusion.
    pub fn submodule_as_module(self: &Arc<Self>, n: &Submodule) -> Result<(Arc<FiniteModule>, ModuleHom)> {
        if !self.is_submodule(n.members()) {
            return Err(Error::NotASubmodule(format!("{:?} in {}", n.members(), self.id)));
        }
        let members = n.members().to_vec();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            index[x] = i;
        }
        let k = members.len();
        let mut add = vec![0u32; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                add[i * k + j] = index[self.add(a, b)] as u32;
            }
        }
        let mut act = vec![0u32; self.ring.order() * k];
        for r in self.ring.elements() {
            for (i, &a) in members.iter().enumerate() {
                act[r * k + i] = index[self.act(r, a)] as u32;
            }
        }
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        let module = Arc::new(Self::assemble(
            format!("{}<{}", self.set_label(n.members()), self.id),
            self.ring.clone(),
            add,
            act,
            index[self.zero],
            Some(labels),
            Provenance::Submodule { module: self.id.clone(), members: members.clone() },
        )?);
        let incl = ModuleHom::new(module.clone(), self.clone(), members, None)?;
        Ok((module, incl))
    }

    /// Restriction of scalars along `f: R1 -> R`, making this module an
    /// `R1`-module via `r·m = f(r)m`.
    pub fn restrict(self: &Arc<Self>, f: &RingHom) -> Result<FiniteModule> {
        if !f.target().same_as(&self.ring) {
            return Err(Error::InvalidSpec("ring hom target is not the scalar ring".into()));
        }
        let r1 = f.source().clone();
        let mut act = vec![0u32; r1.order() * self.order];
        for r in r1.elements() {
            for m in 0..self.order {
                act[r * self.order + m] = self.act(f.apply(r), m) as u32;
            }
        }
        Self::assemble(
            format!("{}|{}", self.id, r1.id()),
            r1.clone(),
            self.add.clone(),
            act,
            self.zero,
            Some(self.labels.clone()),
            Provenance::Restriction { module: self.id.clone(), along: r1.id().to_string() },
        )
    }

    pub fn with_lattice_cap(mut self, cap: usize) -> Self {
        self.lattice_cap = cap;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parse_element(&self, s: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == s)
            .or_else(|| s.parse::<usize>().ok().filter(|&i| i < self.order))
    }

    pub fn set_label(&self, set: &ElemSet) -> String {
        format!("{{{}}}", set.iter().map(|x| self.label(x)).collect::<Vec<_>>().join(","))
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Scalar action `r·m`.
    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.act[r * self.order + m] as usize
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn action_table(&self) -> &[u32] {
        &self.act
    }

    /// Exhaustive audit: abelian group, unital, biadditive, associative action.
    pub fn audit(&self) -> Result<()> {
        let n = self.order;
        let ring = &self.ring;
        let fail = |what: &str| Err(Error::AuditFailure(format!("{}: {what}", self.id)));
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity");
            }
            if self.act(ring.one(), a) != a {
                return fail("action is not unital");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("addition is not commutative");
                }
                let ab = self.add(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return fail("addition is not associative");
                    }
                }
                for r in ring.elements() {
                    if self.act(r, ab) != self.add(self.act(r, a), self.act(r, b)) {
                        return fail("action is not additive in the module argument");
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                let rs = ring.mul(r, s);
                let rps = ring.add(r, s);
                for m in 0..n {
                    if self.act(r, self.act(s, m)) != self.act(rs, m) {
                        return fail("action is not associative");
                    }
                    if self.act(rps, m) != self.add(self.act(r, m), self.act(s, m)) {
                        return fail("action is not additive in the scalar argument");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_submodule(&self, set: &ElemSet) -> bool {
        if set.universe() != self.order || !set.contains(self.zero) {
            return false;
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(self.add(a, b)) {
                    return false;
                }
            }
            for r in self.ring.elements() {
                if !set.contains(self.act(r, a)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn submodule(&self, set: ElemSet) -> Result<Submodule> {
        if self.is_submodule(&set) {
            Ok(Submodule(set))
        } else {
            Err(Error::NotASubmodule(format!("{:?} in {}", set, self.id)))
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule(ElemSet::singleton(self.order, self.zero))
    }

    pub fn whole(&self) -> Submodule {
        Submodule(ElemSet::full(self.order))
    }

    /// `Rm`.
    pub fn cyclic(&self, m: usize) -> Submodule {
        // Rm is already an additive subgroup: rm + r'm = (r + r')m.
        Submodule(ElemSet::from_iter(self.order, self.ring.elements().map(|r| self.act(r, m))))
    }

    /// Least submodule containing `gens`.
    pub fn span(&self, gens: &[usize]) -> Submodule {
        gens.iter()
            .map(|&g| self.cyclic(g))
            .fold(self.zero_submodule(), |acc, c| self.sum(&acc, &c))
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule(additive_sum(self.order, &a.0, &b.0, |x, y| self.add(x, y)))
    }

    /// All submodules in canonical order, as the join-closure of the cyclic
    /// submodules. Cached.
    pub fn submodules(&self) -> Result<&[Submodule]> {
        self.lattice
            .get_or_init(|| self.enumerate_submodules(self.lattice_cap))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn enumerate_submodules(&self, cap: usize) -> Result<Vec<Submodule>> {
        let mut cyclic: Vec<ElemSet> = self.elements().map(|m| self.cyclic(m).0).collect();
        cyclic.sort();
        cyclic.dedup();
        let sets = join_closure(self.order, self.zero_submodule().0, &cyclic, |a, b| self.add(a, b), cap)?;
        Ok(sets.into_iter().map(Submodule).collect())
    }

    /// `(N :_R M) = {r : rM ⊆ N}`.
    pub fn residual(&self, n: &Submodule) -> Ideal {
        Ideal::from_set_unchecked(ElemSet::from_iter(
            self.ring.order(),
            self.ring.elements().filter(|&r| self.elements().all(|m| n.contains(self.act(r, m)))),
        ))
    }

    /// `(N :_R K) = {r : rK ⊆ N}`.
    pub fn residual_by(&self, n: &Submodule, k: &Submodule) -> Ideal {
        Ideal::from_set_unchecked(ElemSet::from_iter(
            self.ring.order(),
            self.ring.elements().filter(|&r| k.iter().all(|m| n.contains(self.act(r, m)))),
        ))
    }

    /// `(0 :_R M)`.
    pub fn annihilator(&self) -> Ideal {
        self.residual(&self.zero_submodule())
    }

    /// `(0 :_R K)`.
    pub fn annihilator_of(&self, k: &Submodule) -> Ideal {
        self.residual_by(&self.zero_submodule(), k)
    }

    /// `(N :_M A) = {m : Am ⊆ N}`.
    pub fn residual_in_module(&self, n: &Submodule, by: &[usize]) -> Submodule {
        Submodule(ElemSet::from_iter(
            self.order,
            self.elements().filter(|&m| by.iter().all(|&a| n.contains(self.act(a, m)))),
        ))
    }

    /// `Z(M) = {r : rm = 0 for some m != 0}`.
    pub fn zero_divisors(&self) -> ElemSet {
        ElemSet::from_iter(
            self.ring.order(),
            self.ring
                .elements()
                .filter(|&r| self.elements().any(|m| m != self.zero && self.act(r, m) == self.zero)),
        )
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().is_zero()
    }

    /// Every submodule N equals `(N : M) M`. Cached.
    pub fn is_multiplication(&self) -> Result<bool> {
        self.multiplication
            .get_or_init(|| {
                let lattice = self.submodules()?;
                Ok(lattice.iter().all(|n| &self.ideal_action(&self.residual(n)) == n))
            })
            .clone()
    }

    pub fn properties(&self) -> Result<ModuleProperties> {
        Ok(ModuleProperties {
            faithful: self.is_faithful(),
            multiplication: self.is_multiplication()?,
            zero_divisors: self.zero_divisors().to_vec(),
        })
    }

    /// `IM`, the span of all `a·m` with `a in I`.
    pub fn ideal_action(&self, i: &Ideal) -> Submodule {
        self.ideal_times(i, &self.whole())
    }

    /// `IK`, the span of all `a·k` with `a in I`, `k in K`.
    pub fn ideal_times(&self, i: &Ideal, k: &Submodule) -> Submodule {
        let gens: BTreeSet<usize> = i.iter().flat_map(|a| k.iter().map(move |m| self.act(a, m))).collect();
        let gens: Vec<usize> = gens.into_iter().collect();
        // The products already form a set closed under the action; only
        // additive closure remains.
        let mut set = ElemSet::from_iter(self.order, gens.iter().copied());
        set.insert(self.zero);
        let mut frontier = gens;
        while let Some(x) = frontier.pop() {
            for y in set.to_vec() {
                let z = self.add(x, y);
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
        Submodule(set)
    }

    /// `sK = {s·k : k in K}` as a plain set.
    pub fn scaled(&self, s: usize, k: &Submodule) -> ElemSet {
        ElemSet::from_iter(self.order, k.iter().map(|m| self.act(s, m)))
    }

    /// `NK = ((N:M)(K:M))M` on a multiplication module.
    pub fn submodule_product(&self, n: &Submodule, k: &Submodule) -> Result<Submodule> {
        if !self.is_multiplication()? {
            return Err(Error::NotMultiplicationModule);
        }
        let i = self.residual(n);
        let j = self.residual(k);
        Ok(self.ideal_action(&i.product(&self.ring, &j)))
    }

    /// Plain primeness test used by the M-radical definition.
    pub fn is_prime_submodule(&self, n: &Submodule) -> bool {
        if n.len() == self.order {
            return false;
        }
        let res = self.residual(n);
        self.ring
            .elements()
            .filter(|&r| !res.contains(r))
            .all(|r| self.elements().all(|m| !n.contains(self.act(r, m)) || n.contains(m)))
    }

    /// Prime submodules, cached.
    pub fn prime_submodules(&self) -> Result<&[Submodule]> {
        self.primes
            .get_or_init(|| Ok(self.submodules()?.iter().filter(|n| self.is_prime_submodule(n)).cloned().collect()))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn m_radical(&self, n: &Submodule, method: RadicalMethod) -> Result<Submodule> {
        match method {
            RadicalMethod::Definition => {
                let mut acc = self.whole();
                for p in self.prime_submodules()? {
                    if n.is_subset(p) {
                        acc = acc.intersection(p);
                    }
                }
                Ok(acc)
            }
            RadicalMethod::MultFormula => {
                if !self.is_multiplication()? {
                    return Err(Error::MethodInapplicable("M is not a multiplication module".into()));
                }
                Ok(self.ideal_action(&self.residual(n).radical(&self.ring)))
            }
            RadicalMethod::Auto => {
                if self.is_multiplication()? {
                    self.m_radical(n, RadicalMethod::MultFormula)
                } else {
                    self.m_radical(n, RadicalMethod::Definition)
                }
            }
        }
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("id", &self.id)
            .field("ring", &self.ring.id())
            .field("order", &self.order)
            .finish()
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n).unwrap())
    }

    fn regular(n: usize) -> Arc<FiniteModule> {
        Arc::new(FiniteModule::regular(zn(n)))
    }

    #[test]
    fn regular_module_audits() {
        let m = regular(12);
        m.audit().unwrap();
        assert_eq!(m.order(), 12);
    }

    #[test]
    fn product_of_regular_z4_z9() {
        let m = FiniteModule::product(&[regular(4), regular(9)], &Caps::default()).unwrap();
        assert_eq!(m.order(), 36);
        assert_eq!(m.ring().order(), 36);
        m.audit().unwrap();
    }

    #[test]
    fn quotient_of_z12_by_4() {
        let m = regular(12);
        let k = m.span(&[4]);
        let (q, proj) = m.quotient(&k).unwrap();
        assert_eq!(q.order(), 4);
        q.audit().unwrap();
        assert_eq!(proj.kernel(), k);
        assert!(proj.is_surjective());
    }

    #[test]
    fn spans() {
        let m = regular(36);
        assert_eq!(m.span(&[6]).len(), 6);
        let v = FiniteModule::direct_sum(&[regular(2), regular(2)], &Caps::default()).unwrap();
        let x = v.parse_element("(1|0)").unwrap();
        assert_eq!(v.span(&[x]).len(), 2);
        let m12 = regular(12);
        assert_eq!(m12.span(&[4, 6]).members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(regular(12).submodules().unwrap().len(), 6);
        let v = FiniteModule::direct_sum(&[regular(2), regular(2)], &Caps::default()).unwrap();
        assert_eq!(v.submodules().unwrap().len(), 5);
        let zero = FiniteModule::reduction(zn(2), 1).unwrap();
        assert_eq!(zero.submodules().unwrap().len(), 1);
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let v = FiniteModule::direct_sum(&[regular(2), regular(2), regular(2)], &Caps::default()).unwrap();
        assert!(matches!(v.enumerate_submodules(4), Err(Error::LatticeTooLarge { cap: 4, .. })));
    }

    #[test]
    fn residual_examples() {
        let m = regular(12);
        let n = m.span(&[4]);
        assert_eq!(m.residual(&n).members().to_vec(), vec![0, 4, 8]);
        assert!(!m.residual(&m.whole()).is_proper(m.ring()));

        let r90 = zn(90);
        let z10 = Arc::new(FiniteModule::reduction(r90.clone(), 10).unwrap());
        let m = FiniteModule::direct_sum(&[z10.clone(), z10], &Caps::default()).unwrap();
        let expected: Vec<usize> = (0..90).step_by(10).collect();
        assert_eq!(m.residual(&m.zero_submodule()).members().to_vec(), expected);
        assert!(!m.is_faithful());
    }

    #[test]
    fn residual_in_module_ex11_analogue() {
        let r = zn(12);
        let z4 = Arc::new(FiniteModule::reduction(r.clone(), 4).unwrap());
        let z6 = Arc::new(FiniteModule::reduction(r.clone(), 6).unwrap());
        let m = FiniteModule::direct_sum(&[z4, z6], &Caps::default()).unwrap();
        let n = m.zero_submodule();
        let got = m.residual_in_module(&n, &[2]);
        let expected: Vec<usize> = ["(0|0)", "(0|3)", "(2|0)", "(2|3)"]
            .iter()
            .map(|l| m.parse_element(l).unwrap())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(got.members().to_vec(), expected);
        assert_eq!(m.residual_in_module(&n, &[1]), n);
        assert_eq!(m.residual_in_module(&n, &[0]), m.whole());
    }

    #[test]
    fn properties_of_small_modules() {
        let m = regular(12);
        let p = m.properties().unwrap();
        assert!(p.faithful && p.multiplication);
        assert_eq!(p.zero_divisors, vec![0, 2, 3, 4, 6, 8, 9, 10]);
        let zero = FiniteModule::reduction(zn(2), 1).unwrap();
        let p = zero.properties().unwrap();
        assert!(!p.faithful && p.multiplication);
        // Z2 + Z2 over Z2 is not cyclic, so not a multiplication module.
        let v = FiniteModule::direct_sum(&[regular(2), regular(2)], &Caps::default()).unwrap();
        assert!(!v.is_multiplication().unwrap());
    }

    #[test]
    fn ideal_action_and_products() {
        let m = regular(36);
        let i = Ideal::span(m.ring(), &[6]);
        assert_eq!(m.ideal_action(&i), m.span(&[6]));
        assert!(m.ideal_action(&Ideal::zero(m.ring())).is_zero());
        let n = m.span(&[6]);
        assert!(m.submodule_product(&n, &n).unwrap().is_zero());
        assert_eq!(m.submodule_product(&n, &m.whole()).unwrap(), n);
        let m72 = regular(72);
        let p = m72.submodule_product(&m72.span(&[4]), &m72.span(&[9])).unwrap();
        assert_eq!(p, m72.span(&[36]));
        let v = FiniteModule::direct_sum(&[regular(2), regular(2)], &Caps::default()).unwrap();
        assert_eq!(v.submodule_product(&v.whole(), &v.whole()), Err(Error::NotMultiplicationModule));
    }

    #[test]
    fn ideal_action_on_quotient() {
        let m = regular(12);
        let (q, proj) = m.quotient(&m.span(&[6])).unwrap();
        let i = Ideal::span(m.ring(), &[2]);
        let image: BTreeSet<usize> = (0..12).step_by(2).map(|x| proj.apply(x)).collect();
        assert_eq!(q.ideal_action(&i).members().to_vec(), image.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn m_radical_methods_agree() {
        let m = regular(12);
        let n = m.span(&[4]);
        let d = m.m_radical(&n, RadicalMethod::Definition).unwrap();
        let f = m.m_radical(&n, RadicalMethod::MultFormula).unwrap();
        assert_eq!(d, f);
        assert_eq!(d, m.span(&[2]));
        assert_eq!(m.m_radical(&m.whole(), RadicalMethod::Definition).unwrap(), m.whole());
        let m36 = regular(36);
        let n = m36.span(&[6]);
        let rad = m36.residual(&n).radical(m36.ring());
        assert_eq!(m36.m_radical(&n, RadicalMethod::Auto).unwrap(), m36.ideal_action(&rad));
        let v = FiniteModule::direct_sum(&[regular(2), regular(2)], &Caps::default()).unwrap();
        assert!(matches!(
            v.m_radical(&v.zero_submodule(), RadicalMethod::MultFormula),
            Err(Error::MethodInapplicable(_))
        ));
    }

    #[test]
    fn reduction_requires_divisor() {
        assert_eq!(FiniteModule::reduction(zn(12), 5).unwrap_err(), Error::ActionUndefined { n: 12, m: 5 });
    }
}
