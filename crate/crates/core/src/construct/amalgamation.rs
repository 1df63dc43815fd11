use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::ModuleHom;
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{pair_label, FiniteRing, Provenance, RingHom};
use crate::set::ElemSet;
use crate::Caps;

/// `R1 ⋈^f J = {(r, f(r) + j)}` acting on `M1 ⋈^φ JM2 = {(m1, φ(m1) + m2) : m2 ∈ JM2}`.
/// Elements are pairs ordered lexicographically by their component indices.
#[derive(Clone)]
pub struct Amalgamation {
    f: RingHom,
    j: Ideal,
    phi: ModuleHom,
    jm2: Submodule,
    ring: Arc<FiniteRing>,
    ring_pairs: Vec<(usize, usize)>,
    ring_index: Vec<usize>,
    module: Arc<FiniteModule>,
    module_pairs: Vec<(usize, usize)>,
    module_index: Vec<usize>,
}

/// Outcome of one direction-pair of the residual lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HaPart {
    pub holds: bool,
    /// First `(r1, j)` where the two memberships disagree.
    pub failure: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HaProbe {
    pub part1: Option<HaPart>,
    pub part2: Option<HaPart>,
}

impl Amalgamation {
    /// `phi` must be `R1`-linear for the action of `R1` on `M2` through `f`.
    pub fn new(f: RingHom, j: Ideal, phi: &ModuleHom, caps: &Caps) -> Result<Self> {
        let r1 = f.source().clone();
        let r2 = f.target().clone();
        let m1 = phi.source().clone();
        let m2 = phi.target().clone();
        if !m1.ring().same_as(&r1) || !m2.ring().same_as(&r2) {
            return Err(Error::InvalidSpec("module rings do not match the ring hom".into()));
        }
        if j.universe() != r2.order() || !j.is_ideal_of(&r2) {
            return Err(Error::InvalidSpec("J is not an ideal of the target ring".into()));
        }
        for r in r1.elements() {
            for x in m1.elements() {
                if phi.apply(m1.act(r, x)) != m2.act(f.apply(r), phi.apply(x)) {
                    return Err(Error::NotLinear(r, x));
                }
            }
        }
        let jm2 = m2.ideal_action(&j);

        let mut ring_set = ElemSet::empty(r1.order() * r2.order());
        for r in r1.elements() {
            for a in j.iter() {
                ring_set.insert(r * r2.order() + r2.add(f.apply(r), a));
            }
        }
        let ring_pairs: Vec<(usize, usize)> = ring_set.iter().map(|x| (x / r2.order(), x % r2.order())).collect();
        caps.check_ring(ring_pairs.len(), "amalgamated ring")?;
        let mut ring_index = vec![usize::MAX; r1.order() * r2.order()];
        for (i, &(a, b)) in ring_pairs.iter().enumerate() {
            ring_index[a * r2.order() + b] = i;
        }
        let q = ring_pairs.len();
        let lookup = |idx: &[usize], k: usize| -> Result<u32> {
            match idx[k] {
                usize::MAX => Err(Error::AuditFailure("amalgamated carrier is not closed".into())),
                v => Ok(v as u32),
            }
        };
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for (x, &(a1, b1)) in ring_pairs.iter().enumerate() {
            for (y, &(a2, b2)) in ring_pairs.iter().enumerate() {
                add[x * q + y] = lookup(&ring_index, r1.add(a1, a2) * r2.order() + r2.add(b1, b2))?;
                mul[x * q + y] = lookup(&ring_index, r1.mul(a1, a2) * r2.order() + r2.mul(b1, b2))?;
            }
        }
        let ring_labels = ring_pairs
            .iter()
            .map(|&(a, b)| pair_label([r1.label(a), r2.label(b)].into_iter()))
            .collect();
        let ring = Arc::new(FiniteRing::from_tables(
            format!("{}<f>{}", r1.id(), r2.id()),
            add,
            mul,
            ring_index[r1.zero() * r2.order() + r2.zero()],
            ring_index[r1.one() * r2.order() + r2.one()],
            Some(ring_labels),
            Provenance::Amalgamation {
                ring1: r1.id().to_string(),
                ring2: r2.id().to_string(),
                ideal: j.members().to_vec(),
            },
        )?);

        let mut mod_set = ElemSet::empty(m1.order() * m2.order());
        for x in m1.elements() {
            for y in jm2.iter() {
                mod_set.insert(x * m2.order() + m2.add(phi.apply(x), y));
            }
        }
        let module_pairs: Vec<(usize, usize)> = mod_set.iter().map(|x| (x / m2.order(), x % m2.order())).collect();
        caps.check_module(module_pairs.len(), "amalgamated module")?;
        let mut module_index = vec![usize::MAX; m1.order() * m2.order()];
        for (i, &(a, b)) in module_pairs.iter().enumerate() {
            module_index[a * m2.order() + b] = i;
        }
        let p = module_pairs.len();
        let mut madd = vec![0u32; p * p];
        for (x, &(a1, b1)) in module_pairs.iter().enumerate() {
            for (y, &(a2, b2)) in module_pairs.iter().enumerate() {
                madd[x * p + y] = lookup(&module_index, m1.add(a1, a2) * m2.order() + m2.add(b1, b2))?;
            }
        }
        let mut act = vec![0u32; q * p];
        for (c, &(r, t)) in ring_pairs.iter().enumerate() {
            let jj = r2.sub(t, f.apply(r));
            for (x, &(a, b)) in module_pairs.iter().enumerate() {
                let (ra, tb) = (m1.act(r, a), m2.act(t, b));
                // Componentwise action against the expanded form
                // φ(r m1) + f(r) m2 + j φ(m1) + j m2.
                let mm2 = m2.sub(b, phi.apply(a));
                let expanded = [
                    phi.apply(ra),
                    m2.act(f.apply(r), mm2),
                    m2.act(jj, phi.apply(a)),
                    m2.act(jj, mm2),
                ]
                .into_iter()
                .fold(m2.zero(), |acc, v| m2.add(acc, v));
                if expanded != tb {
                    return Err(Error::AuditFailure("scalar action disagrees with its expansion".into()));
                }
                act[c * p + x] = lookup(&module_index, ra * m2.order() + tb)?;
            }
        }
        let module_labels = module_pairs
            .iter()
            .map(|&(a, b)| pair_label([m1.label(a), m2.label(b)].into_iter()))
            .collect();
        let module = Arc::new(FiniteModule::from_tables(
            format!("{}<phi>{}", m1.id(), m2.id()),
            ring.clone(),
            madd,
            act,
            module_index[m1.zero() * m2.order() + m2.zero()],
            Some(module_labels),
            Provenance::Amalgamation {
                ring1: m1.id().to_string(),
                ring2: m2.id().to_string(),
                ideal: j.members().to_vec(),
            },
        )?);
        Ok(Amalgamation {
            f,
            j,
            phi: phi.clone(),
            jm2,
            ring,
            ring_pairs,
            ring_index,
            module,
            module_pairs,
            module_index,
        })
    }

    /// `M ⋈ J` over `R ⋈ J`: identity ring hom and identity module map.
    pub fn duplication(module: Arc<FiniteModule>, j: Ideal, caps: &Caps) -> Result<Self> {
        let f = RingHom::identity(module.ring().clone());
        let phi = ModuleHom::identity(module);
        Self::new(f, j, &phi, caps)
    }

    pub fn f(&self) -> &RingHom {
        &self.f
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn phi(&self) -> &ModuleHom {
        &self.phi
    }

    pub fn jm2(&self) -> &Submodule {
        &self.jm2
    }

    pub fn ring1(&self) -> &Arc<FiniteRing> {
        self.f.source()
    }

    pub fn ring2(&self) -> &Arc<FiniteRing> {
        self.f.target()
    }

    pub fn module1(&self) -> &Arc<FiniteModule> {
        self.phi.source()
    }

    pub fn module2(&self) -> &Arc<FiniteModule> {
        self.phi.target()
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn ring_pair(&self, x: usize) -> (usize, usize) {
        self.ring_pairs[x]
    }

    pub fn module_pair(&self, x: usize) -> (usize, usize) {
        self.module_pairs[x]
    }

    /// Index of `(r, t)` in the amalgamated ring, if it belongs to it.
    pub fn ring_element(&self, r: usize, t: usize) -> Option<usize> {
        let v = self.ring_index[r * self.ring2().order() + t];
        (v != usize::MAX).then_some(v)
    }

    pub fn module_element(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.module_index[a * self.module2().order() + b];
        (v != usize::MAX).then_some(v)
    }

    /// `N1 ⋈^φ JM2 = {(m1, φ(m1) + m2) : m1 ∈ N1}`.
    pub fn first_submodule(&self, n1: &Submodule) -> Result<Submodule> {
        let set = ElemSet::from_iter(
            self.module.order(),
            (0..self.module.order()).filter(|&x| n1.contains(self.module_pairs[x].0)),
        );
        self.module.submodule(set)
    }

    /// `N̄2 = {(m1, φ(m1) + m2) : φ(m1) + m2 ∈ N2}`.
    pub fn second_submodule(&self, n2: &Submodule) -> Result<Submodule> {
        let set = ElemSet::from_iter(
            self.module.order(),
            (0..self.module.order()).filter(|&x| n2.contains(self.module_pairs[x].1)),
        );
        self.module.submodule(set)
    }

    /// `S1 ⋈^f J = {(s, f(s) + j) : s ∈ S1, j ∈ J}`.
    pub fn first_mult_set(&self, s1: &MultClosedSet) -> Result<MultClosedSet> {
        let set = ElemSet::from_iter(
            self.ring.order(),
            (0..self.ring.order()).filter(|&x| s1.contains(self.ring_pairs[x].0)),
        );
        MultClosedSet::from_set(&self.ring, set)
    }

    /// `S̄2 = {(r, f(r) + j) : f(r) + j ∈ S2}`; empty is an error.
    pub fn second_mult_set(&self, s2: &MultClosedSet) -> Result<MultClosedSet> {
        let set = ElemSet::from_iter(
            self.ring.order(),
            (0..self.ring.order()).filter(|&x| s2.contains(self.ring_pairs[x].1)),
        );
        if set.is_empty() {
            return Err(Error::EmptySet("no f(r) + j lands in S2".into()));
        }
        MultClosedSet::from_set(&self.ring, set)
    }

    /// Exhaustive check of the two residual biconditionals:
    /// `(r1, f(r1)+j) ∈ (N1⋈ : M1⋈)` iff `r1 ∈ (N1 : M1)`, and, for surjective
    /// `f` and `φ`, `(r1, f(r1)+j) ∈ (N̄2 : M1⋈)` iff `f(r1)+j ∈ (N2 : M2)`.
    pub fn lemma_ha_probe(&self, n1: Option<&Submodule>, n2: Option<&Submodule>) -> Result<HaProbe> {
        let part1 = match n1 {
            Some(n1) => {
                let big = self.module.residual(&self.first_submodule(n1)?);
                let small = self.module1().residual(n1);
                Some(self.compare(|x| big.contains(x), |(r, _)| small.contains(r)))
            }
            None => None,
        };
        let part2 = match n2 {
            Some(n2) => {
                if !self.f.is_surjective() || !self.phi.is_surjective() {
                    return Err(Error::EpimorphismRequired);
                }
                let big = self.module.residual(&self.second_submodule(n2)?);
                let small = self.module2().residual(n2);
                Some(self.compare(|x| big.contains(x), |(_, t)| small.contains(t)))
            }
            None => None,
        };
        Ok(HaProbe { part1, part2 })
    }

    fn compare(&self, lhs: impl Fn(usize) -> bool, rhs: impl Fn((usize, usize)) -> bool) -> HaPart {
        let r2 = self.ring2();
        let failure = (0..self.ring.order()).find(|&x| lhs(x) != rhs(self.ring_pairs[x])).map(|x| {
            let (r, t) = self.ring_pairs[x];
            (r, r2.sub(t, self.f.apply(r)))
        });
        HaPart { holds: failure.is_none(), failure }
    }
}

impl std::fmt::Debug for Amalgamation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Amalgamation")
            .field("ring", &self.ring.id())
            .field("module", &self.module.id())
            .field("ring_order", &self.ring.order())
            .field("module_order", &self.module.order())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n).unwrap())
    }

    #[test]
    fn duplication_of_z12_along_two() {
        let r = zn(12);
        let m = Arc::new(FiniteModule::regular(r.clone()));
        let j = Ideal::span(&r, &[2]);
        let d = Amalgamation::duplication(m.clone(), j, &Caps::default()).unwrap();
        assert_eq!(d.module().order(), 72);
        assert_eq!(d.ring().order(), 72);
        for x in d.module().elements() {
            let (a, b) = d.module_pair(x);
            assert_eq!((12 + a - b) % 2, 0);
        }
        let n = m.span(&[6]);
        let nj = d.first_submodule(&n).unwrap();
        let expected: Vec<usize> = d
            .module()
            .elements()
            .filter(|&x| {
                let (a, b) = d.module_pair(x);
                a % 6 == 0 && (12 + a - b) % 2 == 0
            })
            .collect();
        assert_eq!(nj.members().to_vec(), expected);
        assert_eq!(d.first_submodule(&m.whole()).unwrap(), d.module().whole());
        assert_eq!(d.second_submodule(&m.whole()).unwrap(), d.module().whole());
        let probe = d.lemma_ha_probe(Some(&n), Some(&n)).unwrap();
        assert!(probe.part1.unwrap().holds && probe.part2.unwrap().holds);
    }

    #[test]
    fn zero_ideal_gives_first_projection() {
        let r = zn(6);
        let m = Arc::new(FiniteModule::regular(r.clone()));
        let d = Amalgamation::duplication(m, Ideal::zero(&r), &Caps::default()).unwrap();
        assert_eq!(d.module().order(), 6);
        let s = d.first_mult_set(&MultClosedSet::trivial(&r)).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn mixed_ring_context() {
        let r12 = zn(12);
        let r4 = zn(4);
        let m12 = Arc::new(FiniteModule::regular(r12.clone()));
        let m4 = Arc::new(FiniteModule::regular(r4.clone()));
        let f = RingHom::reduction(r12, r4.clone()).unwrap();
        let phi = ModuleHom::new(m12.clone(), m4.clone(), (0..12).map(|x| x % 4).collect(), Some(f.clone())).unwrap();
        let a = Amalgamation::new(f, Ideal::span(&r4, &[2]), &phi, &Caps::default()).unwrap();
        assert_eq!(a.ring().order(), 24);
        assert_eq!(a.module().order(), 24);
        let probe = a.lemma_ha_probe(Some(&m12.span(&[4])), Some(&m4.span(&[2]))).unwrap();
        assert!(probe.part1.unwrap().holds && probe.part2.unwrap().holds);
        let units = MultClosedSet::units(&r4);
        assert!(!a.second_mult_set(&units).unwrap().is_empty());
    }

    #[test]
    fn duplication_mult_sets() {
        let r = zn(12);
        let m = Arc::new(FiniteModule::regular(r.clone()));
        let d = Amalgamation::duplication(m, Ideal::span(&r, &[2]), &Caps::default()).unwrap();
        let s = d.first_mult_set(&MultClosedSet::trivial(&r)).unwrap();
        let seconds: Vec<usize> = s.iter().map(|x| d.ring_pair(x).1).collect();
        assert_eq!(seconds, vec![1, 3, 5, 7, 9, 11]);
        assert!(s.iter().all(|x| d.ring_pair(x).0 == 1));
        // {4} is closed (4·4 = 4) but nothing r + j lands there with r + j odd... it does:
        // (0, 4), (2, 4), ... all have second coordinate 4.
        let four = MultClosedSet::closure(&r, &[4]).unwrap();
        assert_eq!(d.second_mult_set(&four).unwrap().len(), 6);
    }

    #[test]
    fn empty_second_mult_set_is_an_error() {
        // Diagonal Z_2 -> Z_2 x Z_2 with J = 0 never reaches (0|1).
        let r2 = zn(2);
        let prod = Arc::new(FiniteRing::product(&[r2.clone(), r2.clone()], &Caps::default()).unwrap());
        let diag = RingHom::new(r2.clone(), prod.clone(), vec![0, 3]).unwrap();
        let m_r2 = Arc::new(FiniteModule::regular(r2.clone()));
        let m_prod = Arc::new(FiniteModule::regular(prod.clone()));
        let phi = ModuleHom::new(m_r2, m_prod, vec![0, 3], Some(diag.clone())).unwrap();
        let b = Amalgamation::new(diag, Ideal::zero(&prod), &phi, &Caps::default()).unwrap();
        let e = MultClosedSet::closure(&prod, &[1]).unwrap();
        assert!(matches!(b.second_mult_set(&e), Err(Error::EmptySet(_))));
        assert_eq!(
            b.lemma_ha_probe(None, Some(&b.module2().zero_submodule())).unwrap_err(),
            Error::EpimorphismRequired
        );
    }
}
