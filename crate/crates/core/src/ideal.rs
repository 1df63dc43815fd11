//! Ideals, multiplicatively closed sets, and the ideal-level calculus.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::set::ElemSet;

/// An ideal of a finite ring, stored as its member set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ideal(ElemSet);

impl Ideal {
    /// Smallest ideal containing `gens`; empty `gens` gives the zero ideal.
    pub fn span(ring: &FiniteRing, gens: &[usize]) -> Ideal {
        let mut set = ElemSet::singleton(ring.order(), ring.zero());
        // The ideal generated by g is the additive span of Rg; closing under
        // addition and multiplication by R reaches the fixpoint.
        let mut frontier: Vec<usize> = Vec::new();
        for &g in gens {
            for r in ring.elements() {
                let x = ring.mul(r, g);
                if set.insert(x) {
                    frontier.push(x);
                }
            }
        }
        while let Some(x) = frontier.pop() {
            let members = set.to_vec();
            for y in members {
                let z = ring.add(x, y);
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
        Ideal(set)
    }

    pub fn zero(ring: &FiniteRing) -> Ideal {
        Ideal(ElemSet::singleton(ring.order(), ring.zero()))
    }

    pub fn whole(ring: &FiniteRing) -> Ideal {
        Ideal(ElemSet::full(ring.order()))
    }

    /// Wraps a set after checking the ideal axioms.
    pub fn from_set(ring: &FiniteRing, set: ElemSet) -> Result<Ideal> {
        let i = Ideal(set);
        if i.universe() != ring.order() || !i.is_ideal_of(ring) {
            return Err(Error::InvalidSpec("set is not an ideal".into()));
        }
        Ok(i)
    }

    pub(crate) fn from_set_unchecked(set: ElemSet) -> Ideal {
        Ideal(set)
    }

    pub fn is_ideal_of(&self, ring: &FiniteRing) -> bool {
        if !self.contains(ring.zero()) {
            return false;
        }
        for a in self.0.iter() {
            for b in self.0.iter() {
                if !self.contains(ring.add(a, b)) {
                    return false;
                }
            }
            for r in ring.elements() {
                if !self.contains(ring.mul(r, a)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.0.universe()
    }

    pub fn is_proper(&self, ring: &FiniteRing) -> bool {
        !self.contains(ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    /// `{x : x^k in I for some 1 <= k <= |R|}`. The power sequence of any
    /// element enters its cycle within `|R|` steps, so the bound is exact.
    pub fn radical(&self, ring: &FiniteRing) -> Ideal {
        let set = ElemSet::from_iter(
            ring.order(),
            ring.elements().filter(|&x| {
                let mut p = x;
                for _ in 0..ring.order() {
                    if self.contains(p) {
                        return true;
                    }
                    p = ring.mul(p, x);
                }
                false
            }),
        );
        Ideal(set)
    }

    /// `(I : s) = {r : rs in I}`.
    pub fn residual_by_element(&self, ring: &FiniteRing, s: usize) -> Ideal {
        Ideal(ElemSet::from_iter(ring.order(), ring.elements().filter(|&r| self.contains(ring.mul(r, s)))))
    }

    /// `(I : J) = {r : rJ ⊆ I}`.
    pub fn residual_by_ideal(&self, ring: &FiniteRing, by: &Ideal) -> Ideal {
        Ideal(ElemSet::from_iter(
            ring.order(),
            ring.elements().filter(|&r| by.iter().all(|j| self.contains(ring.mul(r, j)))),
        ))
    }

    /// The product ideal, spanned by all `ij`.
    pub fn product(&self, ring: &FiniteRing, other: &Ideal) -> Ideal {
        let gens: BTreeSet<usize> = self.iter().flat_map(|a| other.iter().map(move |b| ring.mul(a, b))).collect();
        Ideal::span(ring, &gens.into_iter().collect::<Vec<_>>())
    }

    pub fn sum(&self, ring: &FiniteRing, other: &Ideal) -> Ideal {
        Ideal(additive_sum(ring.order(), &self.0, &other.0, |a, b| ring.add(a, b)))
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal(self.0.intersection(&other.0))
    }

    /// `sI = {sa : a in I}` as a set (an ideal as well).
    pub fn scaled(&self, ring: &FiniteRing, s: usize) -> ElemSet {
        ElemSet::from_iter(ring.order(), self.iter().map(|a| ring.mul(s, a)))
    }
}

pub(crate) fn additive_sum(order: usize, a: &ElemSet, b: &ElemSet, add: impl Fn(usize, usize) -> usize) -> ElemSet {
    let mut out = ElemSet::empty(order);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(add(x, y));
        }
    }
    out
}

/// Join-closure of a family of "cyclic" subgroups under `+`, starting from
/// `bottom`. Used for both ideal and submodule lattices.
pub(crate) fn join_closure(
    order: usize,
    bottom: ElemSet,
    cyclic: &[ElemSet],
    add: impl Fn(usize, usize) -> usize,
    cap: usize,
) -> Result<Vec<ElemSet>> {
    let mut seen: std::collections::HashSet<ElemSet> = std::collections::HashSet::new();
    let mut out = vec![bottom.clone()];
    seen.insert(bottom);
    for c in cyclic {
        if seen.insert(c.clone()) {
            out.push(c.clone());
        }
    }
    if out.len() > cap {
        return Err(Error::LatticeTooLarge { cap, partial: out.len() });
    }
    let mut next = 0;
    while next < out.len() {
        let x = out[next].clone();
        next += 1;
        for c in cyclic {
            if c.is_subset(&x) {
                continue;
            }
            let s = additive_sum(order, &x, c, &add);
            if seen.insert(s.clone()) {
                out.push(s);
                if out.len() > cap {
                    return Err(Error::LatticeTooLarge { cap, partial: out.len() });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub(crate) fn enumerate_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<Ideal>> {
    let mut principal: Vec<ElemSet> = ring.elements().map(|a| Ideal::span(ring, &[a]).0).collect();
    principal.sort();
    principal.dedup();
    let sets = join_closure(ring.order(), Ideal::zero(ring).0, &principal, |a, b| ring.add(a, b), cap)?;
    Ok(sets.into_iter().map(Ideal).collect())
}

/// A nonempty multiplicatively closed subset (a subsemigroup under
/// multiplication). The identity is not required to belong to it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultClosedSet(ElemSet);

impl MultClosedSet {
    /// Smallest multiplication-closed set containing `gens`.
    pub fn closure(ring: &FiniteRing, gens: &[usize]) -> Result<MultClosedSet> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut set = ElemSet::empty(ring.order());
        let mut frontier = Vec::new();
        for &g in gens {
            if set.insert(g) {
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            for y in set.to_vec() {
                let z = ring.mul(x, y);
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
        Ok(MultClosedSet(set))
    }

    /// Wraps a set after checking it is nonempty and closed.
    pub fn from_set(ring: &FiniteRing, set: ElemSet) -> Result<MultClosedSet> {
        if set.is_empty() {
            return Err(Error::EmptyMultSet);
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(ring.mul(a, b)) {
                    return Err(Error::AuditFailure(format!(
                        "set is not multiplicatively closed: {}*{} escapes",
                        ring.label(a),
                        ring.label(b)
                    )));
                }
            }
        }
        Ok(MultClosedSet(set))
    }

    pub fn trivial(ring: &FiniteRing) -> MultClosedSet {
        MultClosedSet(ElemSet::singleton(ring.order(), ring.one()))
    }

    pub fn units(ring: &FiniteRing) -> MultClosedSet {
        MultClosedSet(ring.units().clone())
    }

    /// `S* = {x : xy in S for some y}`.
    pub fn saturate(&self, ring: &FiniteRing) -> MultClosedSet {
        MultClosedSet(ElemSet::from_iter(
            ring.order(),
            ring.elements().filter(|&x| ring.elements().any(|y| self.contains(ring.mul(x, y)))),
        ))
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least element in canonical order.
    pub fn least(&self) -> usize {
        self.0.first().expect("multiplicatively closed sets are nonempty")
    }

    pub fn contains_zero(&self, ring: &FiniteRing) -> bool {
        self.contains(ring.zero())
    }

    pub fn meets(&self, ideal: &Ideal) -> bool {
        !self.0.is_disjoint(ideal.members())
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.is_subset(other)
    }
}

/// Which special subset of a ring to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialSubset {
    Units,
    /// `Z_I(R) = {r : rs in I for some s not in I}`.
    ZeroDivisorsModIdeal,
}

pub fn special_subset(ring: &FiniteRing, kind: SpecialSubset, ideal: Option<&Ideal>) -> Result<ElemSet> {
    match kind {
        SpecialSubset::Units => Ok(ring.units().clone()),
        SpecialSubset::ZeroDivisorsModIdeal => {
            let i = ideal.ok_or(Error::MissingIdeal)?;
            if !i.is_proper(ring) {
                return Err(Error::ImproperIdeal);
            }
            Ok(zero_divisors_mod(ring, i))
        }
    }
}

pub(crate) fn zero_divisors_mod(ring: &FiniteRing, i: &Ideal) -> ElemSet {
    ElemSet::from_iter(
        ring.order(),
        ring.elements().filter(|&r| ring.elements().any(|s| !i.contains(s) && i.contains(ring.mul(r, s)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zn(n).unwrap()
    }

    #[test]
    fn spans() {
        let r = z(12);
        assert_eq!(Ideal::span(&r, &[4]).members().to_vec(), vec![0, 4, 8]);
        assert_eq!(Ideal::span(&r, &[4, 6]).members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(Ideal::span(&z(36), &[6]).members().to_vec(), vec![0, 6, 12, 18, 24, 30]);
        assert!(Ideal::span(&r, &[]).is_zero());
    }

    #[test]
    fn radicals() {
        let r = z(12);
        assert_eq!(Ideal::span(&r, &[4]).radical(&r).members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(Ideal::whole(&r).radical(&r), Ideal::whole(&r));
        let r72 = z(72);
        let rad = Ideal::span(&r72, &[36]).radical(&r72);
        assert_eq!(rad.members().to_vec(), (0..72).step_by(6).collect::<Vec<_>>());
    }

    #[test]
    fn residuals() {
        let r = z(12);
        let i = Ideal::span(&r, &[6]);
        assert_eq!(i.residual_by_element(&r, 2).members().to_vec(), vec![0, 3, 6, 9]);
        assert_eq!(i.residual_by_element(&r, 1), i);
        let zero = Ideal::zero(&r);
        assert_eq!(zero.residual_by_ideal(&r, &i).members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn mult_closures() {
        assert_eq!(MultClosedSet::closure(&z(36), &[3]).unwrap().members().to_vec(), vec![3, 9, 27]);
        assert_eq!(MultClosedSet::closure(&z(6), &[1]).unwrap().members().to_vec(), vec![1]);
        assert_eq!(MultClosedSet::closure(&z(72), &[3]).unwrap().members().to_vec(), vec![3, 9, 27]);
        assert_eq!(MultClosedSet::closure(&z(6), &[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn saturation() {
        let r6 = z(6);
        let s = MultClosedSet::trivial(&r6).saturate(&r6);
        assert_eq!(s.members().to_vec(), vec![1, 5]);
        let r36 = z(36);
        let s = MultClosedSet::closure(&r36, &[3]).unwrap();
        let sat = s.saturate(&r36);
        // Oracle: double scan.
        let expected: Vec<usize> = (0..36).filter(|&x| (0..36).any(|y| [3, 9, 27].contains(&((x * y) % 36)))).collect();
        assert_eq!(sat.members().to_vec(), expected);
        assert!(s.members().is_subset(sat.members()));
    }

    #[test]
    fn special_subsets() {
        let r6 = z(6);
        assert_eq!(special_subset(&r6, SpecialSubset::Units, None).unwrap().to_vec(), vec![1, 5]);
        let r = z(12);
        let zd = special_subset(&r, SpecialSubset::ZeroDivisorsModIdeal, Some(&Ideal::zero(&r))).unwrap();
        assert_eq!(zd.to_vec(), vec![0, 2, 3, 4, 6, 8, 9, 10]);
        let i4 = Ideal::span(&r, &[4]);
        let expected: Vec<usize> =
            (0..12).filter(|&x| (0..12).any(|s| s % 4 != 0 && (x * s) % 12 % 4 == 0)).collect();
        assert_eq!(special_subset(&r, SpecialSubset::ZeroDivisorsModIdeal, Some(&i4)).unwrap().to_vec(), expected);
        assert_eq!(special_subset(&r, SpecialSubset::ZeroDivisorsModIdeal, None), Err(Error::MissingIdeal));
        assert_eq!(
            special_subset(&r, SpecialSubset::ZeroDivisorsModIdeal, Some(&Ideal::whole(&r))),
            Err(Error::ImproperIdeal)
        );
    }

    #[test]
    fn ideal_lattice_of_z12() {
        assert_eq!(z(12).ideals().unwrap().len(), 6);
    }
}
