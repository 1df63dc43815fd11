//! Localization at a multiplicatively closed set, built from fraction classes.
//!
//! `(x, s) ~ (y, t)` iff `u(tx - sy) = 0` for some `u in S`. The elements killed
//! by some member of S form a submodule T, so the relation is `tx - sy in T`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Provenance};
use crate::set::ElemSet;

/// Fraction classes over one carrier: `class_of[x * |S| + j]` is the class of
/// `(x, S[j])`.
#[derive(Clone, Debug)]
struct Fractions {
    denoms: Vec<usize>,
    pos: Vec<usize>,
    class_of: Vec<usize>,
    reps: Vec<(usize, usize)>,
}

impl Fractions {
    fn build(
        order: usize,
        s: &MultClosedSet,
        act: impl Fn(usize, usize) -> usize,
        sub: impl Fn(usize, usize) -> usize,
        zero: usize,
        ring_order: usize,
    ) -> Fractions {
        let denoms = s.iter().collect::<Vec<_>>();
        let mut pos = vec![usize::MAX; ring_order];
        for (j, &d) in denoms.iter().enumerate() {
            pos[d] = j;
        }
        let torsion =
            ElemSet::from_iter(order, (0..order).filter(|&x| denoms.iter().any(|&u| act(u, x) == zero)));
        let k = denoms.len();
        let mut class_of = vec![usize::MAX; order * k];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for x in 0..order {
            for (j, &sx) in denoms.iter().enumerate() {
                let found = reps
                    .iter()
                    .position(|&(y, t)| torsion.contains(sub(act(denoms[t], x), act(sx, y))));
                class_of[x * k + j] = match found {
                    Some(c) => c,
                    None => {
                        reps.push((x, j));
                        reps.len() - 1
                    }
                };
            }
        }
        Fractions { denoms, pos, class_of, reps }
    }

    fn class(&self, x: usize, s: usize) -> usize {
        self.class_of[x * self.denoms.len() + self.pos[s]]
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    /// `x ↦ (x·s0)/s0` with `s0` the least member of S, i.e. `x/1`.
    fn canonical(&self, order: usize, act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let s0 = self.denoms[0];
        (0..order).map(|x| self.class(act(s0, x), s0)).collect()
    }
}

/// `S^{-1}R` together with the fraction-class bookkeeping.
#[derive(Clone, Debug)]
pub struct LocalizedRing {
    base: Arc<FiniteRing>,
    mult_set: MultClosedSet,
    ring: Arc<FiniteRing>,
    fractions: Fractions,
    canonical: Vec<usize>,
}

impl LocalizedRing {
    pub fn new(base: Arc<FiniteRing>, s: &MultClosedSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyMultSet);
        }
        if s.contains_zero(&base) {
            return Err(Error::ZeroInMultSet);
        }
        let r = &base;
        let fr = Fractions::build(r.order(), s, |u, x| r.mul(u, x), |a, b| r.sub(a, b), r.zero(), r.order());
        let q = fr.len();
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for (i, &(a, sj)) in fr.reps.iter().enumerate() {
            let s1 = fr.denoms[sj];
            for (k, &(b, tj)) in fr.reps.iter().enumerate() {
                let t1 = fr.denoms[tj];
                let st = r.mul(s1, t1);
                add[i * q + k] = fr.class(r.add(r.mul(t1, a), r.mul(s1, b)), st) as u32;
                mul[i * q + k] = fr.class(r.mul(a, b), st) as u32;
            }
        }
        // Every pair of fractions must land where its class representatives do.
        let n = r.order();
        for a in 0..n {
            for &s1 in &fr.denoms {
                let i = fr.class(a, s1);
                for b in 0..n {
                    for &t1 in &fr.denoms {
                        let k = fr.class(b, t1);
                        let st = r.mul(s1, t1);
                        if fr.class(r.add(r.mul(t1, a), r.mul(s1, b)), st) != add[i * q + k] as usize
                            || fr.class(r.mul(a, b), st) != mul[i * q + k] as usize
                        {
                            return Err(Error::AuditFailure("localized ring operations depend on representatives".into()));
                        }
                    }
                }
            }
        }
        let canonical = fr.canonical(n, |u, x| r.mul(u, x));
        let s0 = fr.denoms[0];
        let labels = fr
            .reps
            .iter()
            .map(|&(x, j)| format!("{}/{}", r.label(x), r.label(fr.denoms[j])))
            .collect();
        let ring = FiniteRing::from_tables(
            format!("{}[S^-1]", r.id()),
            add,
            mul,
            fr.class(r.zero(), s0),
            fr.class(s0, s0),
            Some(labels),
            Provenance::Localization { base: r.id().to_string(), mult_set: s.members().to_vec() },
        )?;
        Ok(LocalizedRing { base, mult_set: s.clone(), ring: Arc::new(ring), fractions: fr, canonical })
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn mult_set(&self) -> &MultClosedSet {
        &self.mult_set
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// Class of `a/s`.
    pub fn fraction(&self, a: usize, s: usize) -> usize {
        self.fractions.class(a, s)
    }

    pub fn canonical_map(&self) -> &[usize] {
        &self.canonical
    }

    /// `S^{-1}I`: the classes meeting `I x S`.
    pub fn ideal(&self, i: &Ideal) -> Ideal {
        let set = ElemSet::from_iter(
            self.ring.order(),
            i.iter().flat_map(|a| self.fractions.denoms.iter().map(move |&s| (a, s))).map(|(a, s)| self.fraction(a, s)),
        );
        Ideal::from_set_unchecked(set)
    }
}

/// `S^{-1}M` as a module over `S^{-1}R`.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    base: Arc<FiniteModule>,
    ring: LocalizedRing,
    module: Arc<FiniteModule>,
    fractions: Fractions,
    canonical: Vec<usize>,
}

impl LocalizedModule {
    pub fn new(base: Arc<FiniteModule>, s: &MultClosedSet) -> Result<Self> {
        let lr = LocalizedRing::new(base.ring().clone(), s)?;
        let r = base.ring().clone();
        let m = &base;
        let fm = Fractions::build(m.order(), s, |u, x| m.act(u, x), |a, b| m.sub(a, b), m.zero(), r.order());
        let fr = &lr.fractions;
        let q = fm.len();
        let qr = fr.len();
        let mut add = vec![0u32; q * q];
        for (i, &(x, sj)) in fm.reps.iter().enumerate() {
            let s1 = fm.denoms[sj];
            for (k, &(y, tj)) in fm.reps.iter().enumerate() {
                let t1 = fm.denoms[tj];
                add[i * q + k] = fm.class(m.add(m.act(t1, x), m.act(s1, y)), r.mul(s1, t1)) as u32;
            }
        }
        let mut act = vec![0u32; qr * q];
        for (c, &(a, sj)) in fr.reps.iter().enumerate() {
            let s1 = fr.denoms[sj];
            for (k, &(x, tj)) in fm.reps.iter().enumerate() {
                let t1 = fm.denoms[tj];
                act[c * q + k] = fm.class(m.act(a, x), r.mul(s1, t1)) as u32;
            }
        }
        for x in m.elements() {
            for &s1 in &fm.denoms {
                let i = fm.class(x, s1);
                for y in m.elements() {
                    for &t1 in &fm.denoms {
                        let k = fm.class(y, t1);
                        if fm.class(m.add(m.act(t1, x), m.act(s1, y)), r.mul(s1, t1)) != add[i * q + k] as usize {
                            return Err(Error::AuditFailure("localized addition depends on representatives".into()));
                        }
                    }
                }
                for a in r.elements() {
                    for &t1 in &fr.denoms {
                        let c = fr.class(a, t1);
                        if fm.class(m.act(a, x), r.mul(t1, s1)) != act[c * q + i] as usize {
                            return Err(Error::AuditFailure("localized action depends on representatives".into()));
                        }
                    }
                }
            }
        }
        let canonical = fm.canonical(m.order(), |u, x| m.act(u, x));
        let labels = fm
            .reps
            .iter()
            .map(|&(x, j)| format!("{}/{}", m.label(x), r.label(fm.denoms[j])))
            .collect();
        let s0 = fm.denoms[0];
        let module = FiniteModule::from_tables(
            format!("{}[S^-1]", m.id()),
            lr.ring.clone(),
            add,
            act,
            fm.class(m.zero(), s0),
            Some(labels),
            Provenance::Localization { base: m.id().to_string(), mult_set: s.members().to_vec() },
        )?;
        Ok(LocalizedModule { base, ring: lr, module: Arc::new(module), fractions: fm, canonical })
    }

    pub fn base(&self) -> &Arc<FiniteModule> {
        &self.base
    }

    pub fn ring(&self) -> &LocalizedRing {
        &self.ring
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    /// Class of `m/s`.
    pub fn fraction(&self, m: usize, s: usize) -> usize {
        self.fractions.class(m, s)
    }

    pub fn canonical_map(&self) -> &[usize] {
        &self.canonical
    }

    /// `S^{-1}N`: the classes meeting `N x S`.
    pub fn submodule(&self, n: &Submodule) -> Submodule {
        let set = ElemSet::from_iter(
            self.module.order(),
            n.iter().flat_map(|x| self.fractions.denoms.iter().map(move |&s| self.fractions.class(x, s))),
        );
        Submodule::from_set_unchecked(set)
    }
}
