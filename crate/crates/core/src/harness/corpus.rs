//! The bounded family of structures every claim is checked on, with the
//! predicate verdicts of each (module, submodule, multiplicative set)
//! precomputed once.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::construct::{Amalgamation, Idealization};
use crate::error::Result;
use crate::hom::ModuleHom;
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::{FiniteModule, Submodule};
use crate::predicate::{PredicateKind, View};
use crate::ring::{FiniteRing, RingHom};
use crate::set::ElemSet;
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusParams {
    /// `Z_n` rings that also get reduction and direct-sum modules.
    pub ring_orders: Vec<usize>,
    /// Larger `Z_n` rings, regular module plus named fixture modules only.
    pub fixture_rings: Vec<usize>,
    /// Every ring in the corpus (and every fixture) is at most this large.
    pub max_ring_order: usize,
    pub max_direct_sum_order: usize,
    /// Rings up to this order also get closures of element pairs.
    pub pair_closures_up_to: usize,
    pub char_ring_order: usize,
    pub cart_factor_order: usize,
    pub cart3_factor_order: usize,
    pub idealization_order: usize,
    pub amalgamation_order: usize,
    pub caps: Caps,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            ring_orders: (2..=12).collect(),
            fixture_rings: vec![16, 24, 36, 72, 90],
            max_ring_order: 96,
            max_direct_sum_order: 36,
            pair_closures_up_to: 12,
            char_ring_order: 36,
            cart_factor_order: 8,
            cart3_factor_order: 4,
            idealization_order: 72,
            amalgamation_order: 96,
            caps: Caps::default(),
        }
    }
}

impl CorpusParams {
    /// Hex SHA-256 of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("params serialize");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// The four kinds that take a multiplicative set, in table order.
pub const S_KINDS: [PredicateKind; 4] = [
    PredicateKind::SPrime,
    PredicateKind::WeaklySPrime,
    PredicateKind::SPrimary,
    PredicateKind::WeaklySPrimary,
];
pub const PLAIN_KINDS: [PredicateKind; 3] =
    [PredicateKind::Prime, PredicateKind::Primary, PredicateKind::WeaklyPrimary];

pub struct RingEntry {
    pub ring: Arc<FiniteRing>,
    /// Index of the regular module in `Corpus::modules`.
    pub regular: usize,
    pub mult_sets: Vec<MultClosedSet>,
    /// Positions in `mult_sets` of closures of single elements.
    pub singletons: Vec<usize>,
}

/// Predicate tables for one module, indexed by lattice position and then by
/// position in the ring's `mult_sets`.
pub struct ModuleEval {
    pub lattice: Vec<Submodule>,
    pub residual: Vec<Ideal>,
    pub radical: Vec<Ideal>,
    pub plain: Vec<[bool; 3]>,
    pub s_kinds: Vec<Vec<[Option<usize>; 4]>>,
    pub faithful: bool,
    pub multiplication: bool,
    pub zero_divisors: ElemSet,
}

impl ModuleEval {
    fn build(module: &FiniteModule, sets: &[MultClosedSet]) -> Result<ModuleEval> {
        let lattice = module.submodules()?.to_vec();
        let rows: Vec<_> = lattice
            .par_iter()
            .map(|n| {
                let v = View::new(module, n);
                let plain = PLAIN_KINDS.map(|k| v.holds(k, None));
                let cols: Vec<Vec<Option<usize>>> = S_KINDS.iter().map(|&k| v.witness_many(k, sets)).collect();
                let row: Vec<[Option<usize>; 4]> =
                    (0..sets.len()).map(|i| [cols[0][i], cols[1][i], cols[2][i], cols[3][i]]).collect();
                (v.residual, v.radical, plain, row)
            })
            .collect();
        let mut eval = ModuleEval {
            lattice,
            residual: Vec::new(),
            radical: Vec::new(),
            plain: Vec::new(),
            s_kinds: Vec::new(),
            faithful: module.is_faithful(),
            multiplication: module.is_multiplication()?,
            zero_divisors: module.zero_divisors(),
        };
        for (res, rad, plain, row) in rows {
            eval.residual.push(res);
            eval.radical.push(rad);
            eval.plain.push(plain);
            eval.s_kinds.push(row);
        }
        Ok(eval)
    }

    pub fn index_of(&self, n: &Submodule) -> usize {
        self.lattice.binary_search(n).expect("submodule belongs to the lattice")
    }

    pub fn position(&self, set: &ElemSet) -> usize {
        self.lattice
            .binary_search_by(|k| k.members().cmp(set))
            .expect("set belongs to the lattice")
    }

    /// Verdict for lattice position `n` and multiplicative-set position `s`
    /// (ignored for the plain kinds).
    pub fn holds(&self, n: usize, kind: PredicateKind, s: usize) -> bool {
        match kind {
            PredicateKind::Prime => self.plain[n][0],
            PredicateKind::Primary => self.plain[n][1],
            PredicateKind::WeaklyPrimary => self.plain[n][2],
            _ => self.witness(n, kind, s).is_some(),
        }
    }

    pub fn witness(&self, n: usize, kind: PredicateKind, s: usize) -> Option<usize> {
        let k = S_KINDS.iter().position(|&x| x == kind).expect("kind takes a multiplicative set");
        self.s_kinds[n][s][k]
    }

    pub fn wsp(&self, n: usize, s: usize) -> bool {
        self.s_kinds[n][s][3].is_some()
    }
}

pub struct ModuleEntry {
    pub module: Arc<FiniteModule>,
    pub ring: usize,
    pub eval: ModuleEval,
}

/// A direct product of corpus modules, as a module over the product ring.
pub struct ProductCase {
    pub factors: Vec<usize>,
    pub module: Arc<FiniteModule>,
}

pub struct AmalgCase {
    pub amalg: Amalgamation,
    pub duplication: bool,
    pub m1_lattice: Vec<Submodule>,
    pub m2_lattice: Vec<Submodule>,
    pub s1: Vec<MultClosedSet>,
    pub s2: Vec<MultClosedSet>,
}

pub struct IdealizationCase {
    pub module: usize,
    pub ideal: Idealization,
    pub regular: Arc<FiniteModule>,
}

pub struct Corpus {
    pub params: CorpusParams,
    pub rings: Vec<RingEntry>,
    pub modules: Vec<ModuleEntry>,
    pub products: Vec<ProductCase>,
    pub triples: Vec<ProductCase>,
    pub idealizations: Vec<IdealizationCase>,
    pub amalgamations: Vec<AmalgCase>,
    pub notes: Vec<String>,
}

fn divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mult_sets_of(ring: &FiniteRing, with_pairs: bool) -> (Vec<MultClosedSet>, Vec<usize>) {
    let mut all: Vec<MultClosedSet> = Vec::new();
    let mut singles: Vec<MultClosedSet> = Vec::new();
    for a in ring.elements() {
        let s = MultClosedSet::closure(ring, &[a]).expect("nonempty generators");
        singles.push(s.clone());
        all.push(s);
    }
    if with_pairs {
        for a in ring.elements() {
            for b in a + 1..ring.order() {
                all.push(MultClosedSet::closure(ring, &[a, b]).expect("nonempty generators"));
            }
        }
    }
    all.push(MultClosedSet::units(ring));
    all.sort();
    all.dedup();
    singles.sort();
    singles.dedup();
    let positions = singles.iter().map(|s| all.binary_search(s).expect("present")).collect();
    (all, positions)
}

impl Corpus {
    pub fn generate(params: &CorpusParams) -> Result<Corpus> {
        params.caps.validate()?;
        let caps = params.caps;
        let fits = |n: usize| n <= params.max_ring_order && n <= caps.ring_order;
        let mut notes = Vec::new();

        // Rings, each with the modules built on it.
        let mut specs: Vec<(Arc<FiniteRing>, Vec<Arc<FiniteModule>>)> = Vec::new();
        let mut zn_orders: Vec<usize> = params.ring_orders.clone();
        zn_orders.extend(params.fixture_rings.iter().copied());
        zn_orders.sort();
        zn_orders.dedup();
        for &n in zn_orders.iter().filter(|&&n| fits(n)) {
            let r = Arc::new(FiniteRing::zn(n)?);
            let mut mods = vec![Arc::new(FiniteModule::regular(r.clone()))];
            if params.ring_orders.contains(&n) {
                let divs = divisors(n);
                for &d in &divs {
                    mods.push(Arc::new(FiniteModule::reduction(r.clone(), d)?));
                }
                let mut summands: Vec<Arc<FiniteModule>> = divs
                    .iter()
                    .map(|&d| FiniteModule::reduction(r.clone(), d))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .map(Arc::new)
                    .collect();
                summands.push(mods[0].clone());
                for i in 0..summands.len() {
                    for j in i..summands.len() {
                        let order = summands[i].order() * summands[j].order();
                        if order <= params.max_direct_sum_order && order <= caps.module_order {
                            mods.push(Arc::new(FiniteModule::direct_sum(&[summands[i].clone(), summands[j].clone()], &caps)?));
                        }
                    }
                }
                if n == 2 {
                    let p = mods[0].clone();
                    mods.push(Arc::new(FiniteModule::direct_sum(&[p.clone(), p.clone(), p], &caps)?));
                }
            }
            let fixture_sum = |a: usize, b: usize| -> Result<Arc<FiniteModule>> {
                let x = Arc::new(FiniteModule::reduction(r.clone(), a)?);
                let y = Arc::new(FiniteModule::reduction(r.clone(), b)?);
                Ok(Arc::new(FiniteModule::direct_sum(&[x, y], &caps)?))
            };
            if n == 90 {
                mods.push(fixture_sum(10, 10)?);
            }
            if n == 24 {
                mods.push(fixture_sum(8, 3)?);
            }
            specs.push((r, mods));
        }
        let small = |n: usize| -> Result<Arc<FiniteRing>> { Ok(Arc::new(FiniteRing::zn(n)?)) };
        for (a, b) in [(2, 2), (2, 4), (3, 3)] {
            if fits(a * b) {
                let r = Arc::new(FiniteRing::product(&[small(a)?, small(b)?], &caps)?);
                specs.push((r.clone(), vec![Arc::new(FiniteModule::regular(r))]));
            }
        }
        for (n, parts) in [(2usize, vec![2usize]), (4, vec![2]), (3, vec![3]), (2, vec![2, 2])] {
            let order = n * parts.iter().product::<usize>();
            if !fits(order) {
                continue;
            }
            let r = small(n)?;
            let summands: Vec<Arc<FiniteModule>> = parts
                .iter()
                .map(|&d| if d == n { Ok(FiniteModule::regular(r.clone())) } else { FiniteModule::reduction(r.clone(), d) })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .map(Arc::new)
                .collect();
            let m = if summands.len() == 1 { summands[0].clone() } else { Arc::new(FiniteModule::direct_sum(&summands, &caps)?) };
            let id = Idealization::new(m, &caps)?;
            let r = id.ring().clone();
            specs.push((r.clone(), vec![Arc::new(FiniteModule::regular(r))]));
        }

        let ring_sets: Vec<(Vec<MultClosedSet>, Vec<usize>)> = specs
            .par_iter()
            .map(|(r, _)| mult_sets_of(r, r.order() <= params.pair_closures_up_to))
            .collect();

        let flat: Vec<(usize, Arc<FiniteModule>)> = specs
            .iter()
            .enumerate()
            .flat_map(|(ri, (_, mods))| mods.iter().map(move |m| (ri, m.clone())))
            .collect();
        let evals: Vec<Result<ModuleEval>> = flat
            .par_iter()
            .map(|(ri, m)| ModuleEval::build(m, &ring_sets[*ri].0))
            .collect();

        let mut rings: Vec<RingEntry> = specs
            .iter()
            .zip(ring_sets)
            .map(|((r, _), (sets, singles))| RingEntry { ring: r.clone(), regular: usize::MAX, mult_sets: sets, singletons: singles })
            .collect();
        let mut modules = Vec::new();
        for ((ri, m), eval) in flat.into_iter().zip(evals) {
            match eval {
                Ok(eval) => {
                    if rings[ri].regular == usize::MAX && matches!(m.provenance(), crate::ring::Provenance::Regular(_)) {
                        rings[ri].regular = modules.len();
                    }
                    modules.push(ModuleEntry { module: m, ring: ri, eval });
                }
                Err(e) => notes.push(format!("dropped module {}: {e}", m.id())),
            }
        }

        let mut corpus = Corpus {
            params: params.clone(),
            rings,
            modules,
            products: Vec::new(),
            triples: Vec::new(),
            idealizations: Vec::new(),
            amalgamations: Vec::new(),
            notes,
        };
        corpus.products = corpus.build_products(2, params.cart_factor_order)?;
        corpus.triples = corpus.build_products(3, params.cart3_factor_order)?;
        corpus.idealizations = corpus.build_idealizations()?;
        corpus.amalgamations = corpus.build_amalgamations()?;
        Ok(corpus)
    }

    /// Every (module, submodule position, multiplicative-set position).
    pub fn base_instances(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (mi, me) in self.modules.iter().enumerate() {
            let sets = self.rings[me.ring].mult_sets.len();
            for n in 0..me.eval.lattice.len() {
                for s in 0..sets {
                    out.push((mi, n, s));
                }
            }
        }
        out
    }

    pub fn mult_set(&self, module: usize, s: usize) -> &MultClosedSet {
        &self.rings[self.modules[module].ring].mult_sets[s]
    }

    pub fn regular_of(&self, module: usize) -> &ModuleEntry {
        &self.modules[self.rings[self.modules[module].ring].regular]
    }

    /// Modules over a base `Z_n` ring usable as product factors.
    fn factor_candidates(&self, max_order: usize) -> Vec<usize> {
        self.modules
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                let r = &self.rings[m.ring].ring;
                r.provenance() == &crate::ring::Provenance::Base
                    && self.params.ring_orders.contains(&r.order())
                    && m.module.order() <= max_order
                    && r.order() <= max_order
            })
            .map(|(i, _)| i)
            .collect()
    }

    fn build_products(&self, arity: usize, max_order: usize) -> Result<Vec<ProductCase>> {
        let cands = self.factor_candidates(max_order);
        let mut combos: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..arity {
            let mut next = Vec::new();
            for c in &combos {
                let start = c.last().map_or(0, |&l| cands.iter().position(|&x| x == l).unwrap());
                for &f in &cands[start..] {
                    let mut d = c.clone();
                    d.push(f);
                    next.push(d);
                }
            }
            combos = next;
        }
        let caps = self.params.caps;
        combos
            .into_par_iter()
            .filter(|c| {
                let ro: usize = c.iter().map(|&i| self.rings[self.modules[i].ring].ring.order()).product();
                let mo: usize = c.iter().map(|&i| self.modules[i].module.order()).product();
                ro <= caps.ring_order && ro <= self.params.max_ring_order && mo <= caps.module_order
            })
            .map(|c| {
                let parts: Vec<Arc<FiniteModule>> = c.iter().map(|&i| self.modules[i].module.clone()).collect();
                Ok(ProductCase { factors: c, module: Arc::new(FiniteModule::product(&parts, &caps)?) })
            })
            .collect()
    }

    fn build_idealizations(&self) -> Result<Vec<IdealizationCase>> {
        let caps = self.params.caps;
        self.modules
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                let r = &self.rings[m.ring].ring;
                r.provenance() == &crate::ring::Provenance::Base
                    && self.params.ring_orders.contains(&r.order())
                    && r.order() * m.module.order() <= self.params.idealization_order.min(self.params.max_ring_order)
            })
            .map(|(i, m)| (i, m.module.clone()))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, m)| {
                let ideal = Idealization::new(m, &caps)?;
                let regular = Arc::new(FiniteModule::regular(ideal.ring().clone()));
                Ok(IdealizationCase { module: i, ideal, regular })
            })
            .collect()
    }

    fn build_amalgamations(&self) -> Result<Vec<AmalgCase>> {
        let caps = self.params.caps;
        let bound = self.params.amalgamation_order.min(self.params.max_ring_order);
        let mut jobs: Vec<(RingHom, Ideal, ModuleHom, bool)> = Vec::new();
        let base: Vec<usize> = self
            .modules
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                let r = &self.rings[m.ring].ring;
                r.provenance() == &crate::ring::Provenance::Base && self.params.ring_orders.contains(&r.order())
            })
            .map(|(i, _)| i)
            .collect();
        for &mi in &base {
            let m = &self.modules[mi].module;
            let r = m.ring();
            let is_regular = matches!(m.provenance(), crate::ring::Provenance::Regular(_));
            // Duplications: regular modules and small direct sums.
            if is_regular || m.order() <= 16 {
                for j in r.ideals()? {
                    let jm = m.ideal_action(j);
                    if r.order() * j.len() <= bound && m.order() * jm.len() <= bound {
                        jobs.push((RingHom::identity(r.clone()), j.clone(), ModuleHom::identity(m.clone()), true));
                    }
                }
            }
            // Reductions Z_n -> Z_d on regular modules, with the reduction map and the zero map.
            if is_regular {
                let n = r.order();
                for d in divisors(n) {
                    let r2 = Arc::new(FiniteRing::zn(d)?);
                    let m2 = Arc::new(FiniteModule::regular(r2.clone()));
                    let f = RingHom::reduction(r.clone(), r2.clone())?;
                    for j in r2.ideals()? {
                        if n * j.len() > bound || n * j.len() > caps.module_order {
                            continue;
                        }
                        let red = ModuleHom::new(m.clone(), m2.clone(), (0..n).map(|x| x % d).collect(), Some(f.clone()))?;
                        jobs.push((f.clone(), j.clone(), red, false));
                        if !j.is_zero() {
                            let zero = ModuleHom::new(m.clone(), m2.clone(), vec![0; n], Some(f.clone()))?;
                            jobs.push((f.clone(), j.clone(), zero, false));
                        }
                    }
                }
            }
        }
        jobs.into_par_iter()
            .map(|(f, j, phi, dup)| {
                let amalg = Amalgamation::new(f, j, &phi, &caps)?;
                let m1_lattice = amalg.module1().submodules()?.to_vec();
                let m2_lattice = amalg.module2().submodules()?.to_vec();
                let s1 = mult_sets_of(amalg.ring1(), false).0;
                let s2 = mult_sets_of(amalg.ring2(), false).0;
                Ok(AmalgCase { amalg, duplication: dup, m1_lattice, m2_lattice, s1, s2 })
            })
            .collect()
    }

    pub fn base_instance_count(&self) -> usize {
        self.modules
            .iter()
            .map(|m| m.eval.lattice.len() * self.rings[m.ring].mult_sets.len())
            .sum()
    }
}
