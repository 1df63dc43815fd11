//! The prime/primary predicate family on submodules, with witnesses and
//! counterexamples, and the equivalent characterizations of the weakly
//! S-primary condition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::{FiniteModule, RadicalMethod, Submodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateKind {
    Prime,
    Primary,
    WeaklyPrimary,
    SPrime,
    WeaklySPrime,
    SPrimary,
    WeaklySPrimary,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 7] = [
        PredicateKind::Prime,
        PredicateKind::Primary,
        PredicateKind::WeaklyPrimary,
        PredicateKind::SPrime,
        PredicateKind::WeaklySPrime,
        PredicateKind::SPrimary,
        PredicateKind::WeaklySPrimary,
    ];

    pub fn uses_mult_set(self) -> bool {
        matches!(self, Self::SPrime | Self::WeaklySPrime | Self::SPrimary | Self::WeaklySPrimary)
    }

    /// Weak kinds only constrain pairs with `am != 0`.
    pub fn is_weak(self) -> bool {
        matches!(self, Self::WeaklyPrimary | Self::WeaklySPrime | Self::WeaklySPrimary)
    }

    /// Primary kinds conclude into the radical of the residual.
    pub fn is_primary(self) -> bool {
        matches!(self, Self::Primary | Self::WeaklyPrimary | Self::SPrimary | Self::WeaklySPrimary)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Prime => "prime",
            Self::Primary => "primary",
            Self::WeaklyPrimary => "weakly-primary",
            Self::SPrime => "s-prime",
            Self::WeaklySPrime => "weakly-s-prime",
            Self::SPrimary => "s-primary",
            Self::WeaklySPrimary => "weakly-s-primary",
        }
    }
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredicateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let norm = match norm.as_str() {
            "w-primary" => "weakly-primary".to_string(),
            "w-s-prime" => "weakly-s-prime".to_string(),
            "w-s-primary" => "weakly-s-primary".to_string(),
            _ => norm,
        };
        PredicateKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown predicate kind '{s}'")))
    }
}

/// The least pair `(a, m)` defeating a particular candidate `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defeat {
    pub s: usize,
    pub a: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub a: usize,
    pub m: usize,
    /// Number of candidates `s` this pair defeats.
    pub defeats: usize,
    pub per_s: Vec<Defeat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateVerdict {
    pub kind: PredicateKind,
    pub holds: bool,
    pub witness: Option<usize>,
    pub counterexample: Option<Counterexample>,
    pub disjointness_checked: bool,
}

/// A submodule together with its residual and the radical of that residual.
pub struct View<'a> {
    pub module: &'a FiniteModule,
    pub n: &'a Submodule,
    pub residual: Ideal,
    pub radical: Ideal,
}

impl<'a> View<'a> {
    pub fn new(module: &'a FiniteModule, n: &'a Submodule) -> Self {
        let residual = module.residual(n);
        let radical = residual.radical(module.ring());
        View { module, n, residual, radical }
    }

    fn candidates(&self, kind: PredicateKind, s: Option<&MultClosedSet>) -> Result<Vec<usize>> {
        if kind.uses_mult_set() {
            let s = s.ok_or(Error::MissingMultSet)?;
            if s.meets(&self.residual) {
                return Err(Error::NotDisjoint);
            }
            Ok(s.iter().collect())
        } else {
            if self.n.len() == self.module.order() {
                return Err(Error::NotProper);
            }
            Ok(vec![self.module.ring().one()])
        }
    }

    /// Pairs `(a, m)` meeting the kind's hypothesis that could defeat some
    /// candidate. Pairs with `a` in the conclusion ideal or `m in N` satisfy
    /// every candidate and are skipped.
    fn hard_pairs(&self, kind: PredicateKind) -> Vec<(usize, usize)> {
        let m = self.module;
        let target = if kind.is_primary() { &self.radical } else { &self.residual };
        let mut out = Vec::new();
        for a in m.ring().elements() {
            if target.contains(a) {
                continue;
            }
            for x in m.elements() {
                if self.n.contains(x) {
                    continue;
                }
                let ax = m.act(a, x);
                if self.n.contains(ax) && !(kind.is_weak() && ax == m.zero()) {
                    out.push((a, x));
                }
            }
        }
        out
    }

    fn defeats(&self, kind: PredicateKind, s: usize, a: usize, x: usize) -> bool {
        let target = if kind.is_primary() { &self.radical } else { &self.residual };
        !target.contains(self.module.ring().mul(s, a)) && !self.n.contains(self.module.act(s, x))
    }

    pub fn check(&self, kind: PredicateKind, s: Option<&MultClosedSet>) -> Result<PredicateVerdict> {
        let cands = self.candidates(kind, s)?;
        let pairs = self.hard_pairs(kind);
        let witness = cands
            .iter()
            .copied()
            .find(|&c| pairs.iter().all(|&(a, x)| !self.defeats(kind, c, a, x)));
        let counterexample = match witness {
            Some(_) => None,
            None => {
                let per_s = cands
                    .iter()
                    .map(|&c| {
                        let &(a, m) = pairs
                            .iter()
                            .find(|&&(a, x)| self.defeats(kind, c, a, x))
                            .expect("no witness means every candidate is defeated");
                        Defeat { s: c, a, m }
                    })
                    .collect();
                let mut best: Option<(usize, usize, usize)> = None;
                for &(a, x) in &pairs {
                    let count = cands.iter().filter(|&&c| self.defeats(kind, c, a, x)).count();
                    if best.is_none_or(|(bc, _, _)| count > bc) {
                        best = Some((count, a, x));
                    }
                }
                let (defeats, a, m) = best.expect("a defeated candidate has a defeating pair");
                Some(Counterexample { a, m, defeats, per_s })
            }
        };
        Ok(PredicateVerdict {
            kind,
            holds: witness.is_some(),
            witness: if kind.uses_mult_set() { witness } else { None },
            counterexample,
            disjointness_checked: kind.uses_mult_set(),
        })
    }

    /// Like `check`, but a failed precondition counts as "does not hold".
    pub fn holds(&self, kind: PredicateKind, s: Option<&MultClosedSet>) -> bool {
        self.witness(kind, s).is_some()
    }

    /// Least witness, or `None` if the predicate fails or its precondition does.
    pub fn witness(&self, kind: PredicateKind, s: Option<&MultClosedSet>) -> Option<usize> {
        let cands = self.candidates(kind, s).ok()?;
        let pairs = self.hard_pairs(kind);
        cands.into_iter().find(|&c| pairs.iter().all(|&(a, x)| !self.defeats(kind, c, a, x)))
    }

    /// `witness` for several multiplicative sets, sharing the pair scan.
    pub fn witness_many(&self, kind: PredicateKind, sets: &[MultClosedSet]) -> Vec<Option<usize>> {
        let pairs = self.hard_pairs(kind);
        sets.iter()
            .map(|s| {
                let cands = self.candidates(kind, Some(s)).ok()?;
                cands.into_iter().find(|&c| pairs.iter().all(|&(a, x)| !self.defeats(kind, c, a, x)))
            })
            .collect()
    }

    pub fn weakly_s_elements(&self, s: &MultClosedSet) -> Result<Vec<usize>> {
        let kind = PredicateKind::WeaklySPrimary;
        let cands = self.candidates(kind, Some(s))?;
        let pairs = self.hard_pairs(kind);
        Ok(cands
            .into_iter()
            .filter(|&c| pairs.iter().all(|&(a, x)| !self.defeats(kind, c, a, x)))
            .collect())
    }
}

pub fn check(
    module: &FiniteModule,
    n: &Submodule,
    kind: PredicateKind,
    s: Option<&MultClosedSet>,
) -> Result<PredicateVerdict> {
    View::new(module, n).check(kind, s)
}

/// Precondition failures read as `false`.
pub fn holds(module: &FiniteModule, n: &Submodule, kind: PredicateKind, s: Option<&MultClosedSet>) -> bool {
    View::new(module, n).holds(kind, s)
}

pub fn weakly_s_elements(module: &FiniteModule, n: &Submodule, s: &MultClosedSet) -> Result<Vec<usize>> {
    View::new(module, n).weakly_s_elements(s)
}

/// One characterization condition: whether some `s` satisfies it, and the least such `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Condition {
    fn from_witness(witness: Option<usize>) -> Self {
        Condition { holds: witness.is_some(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharConditions {
    pub c1: Condition,
    pub c2: Condition,
    pub c3: Condition,
    pub c4: Condition,
    pub c5: Condition,
    /// Present only on faithful multiplication modules.
    pub fm: Option<Condition>,
}

impl CharConditions {
    pub fn all_agree(&self) -> bool {
        let h = self.c1.holds;
        [self.c2, self.c3, self.c4, self.c5].iter().all(|c| c.holds == h) && self.fm.is_none_or(|c| c.holds == h)
    }
}

/// Evaluates the element-, residual-, submodule- and ideal-level forms of the
/// weakly S-primary condition, plus the submodule-product form when `M` is
/// faithful and multiplication.
pub fn char_conditions(module: &FiniteModule, n: &Submodule, s: &MultClosedSet) -> Result<CharConditions> {
    let v = View::new(module, n);
    if s.meets(&v.residual) {
        return Err(Error::NotDisjoint);
    }
    let ring = module.ring();
    let cands: Vec<usize> = s.iter().collect();
    let lattice = module.submodules()?;
    let ideals = ring.ideals()?;
    let zero = module.zero();
    let out_of_rad = |c: usize, a: usize| !v.radical.contains(ring.mul(c, a));

    let c1 = Condition::from_witness(v.witness(PredicateKind::WeaklySPrimary, Some(s)));

    // (N :_M a) ⊆ (0 :_M a) ∪ (N :_M s) for every a outside (√(N:M) : s).
    let c2 = Condition::from_witness(cands.iter().copied().find(|&c| {
        ring.elements().filter(|&a| out_of_rad(c, a)).all(|a| {
            module.elements().all(|m| {
                let am = module.act(a, m);
                !n.contains(am) || am == zero || n.contains(module.act(c, m))
            })
        })
    }));

    // (N :_M a) = (0 :_M a) or (N :_M a) ⊆ (N :_M s).
    let c3 = Condition::from_witness(cands.iter().copied().find(|&c| {
        let ns = module.residual_in_module(n, &[c]);
        ring.elements().filter(|&a| out_of_rad(c, a)).all(|a| {
            let na = module.residual_in_module(n, &[a]);
            let za = module.residual_in_module(&module.zero_submodule(), &[a]);
            na == za || na.is_subset(&ns)
        })
    }));

    let scaled_in = |c: usize, k: &Submodule, target: &Submodule| k.iter().all(|m| target.contains(module.act(c, m)));

    // 0 != aK ⊆ N: sa ∈ √(N:M) or sK ⊆ N.
    let mut triggers4 = Vec::new();
    for a in ring.elements() {
        for (ki, k) in lattice.iter().enumerate() {
            let ak: Vec<usize> = k.iter().map(|m| module.act(a, m)).collect();
            if ak.iter().all(|&x| n.contains(x)) && ak.iter().any(|&x| x != zero) {
                triggers4.push((a, ki));
            }
        }
    }
    let c4 = Condition::from_witness(cands.iter().copied().find(|&c| {
        triggers4
            .iter()
            .all(|&(a, ki)| !out_of_rad(c, a) || scaled_in(c, &lattice[ki], n))
    }));

    // 0 != IK ⊆ N: sI ⊆ √(N:M) or sK ⊆ N.
    let mut triggers5 = Vec::new();
    for (ii, i) in ideals.iter().enumerate() {
        for (ki, k) in lattice.iter().enumerate() {
            let mut inside = true;
            let mut nonzero = false;
            'outer: for a in i.iter() {
                for m in k.iter() {
                    let x = module.act(a, m);
                    if !n.contains(x) {
                        inside = false;
                        break 'outer;
                    }
                    nonzero |= x != zero;
                }
            }
            if inside && nonzero {
                triggers5.push((ii, ki));
            }
        }
    }
    let c5 = Condition::from_witness(cands.iter().copied().find(|&c| {
        triggers5.iter().all(|&(ii, ki)| {
            ideals[ii].iter().all(|a| !out_of_rad(c, a)) || scaled_in(c, &lattice[ki], n)
        })
    }));

    let fm = if module.is_faithful() && module.is_multiplication()? {
        Some(fm_condition_unchecked(module, n, &cands)?)
    } else {
        None
    };
    Ok(CharConditions { c1, c2, c3, c4, c5, fm })
}

/// `(N:M) ∩ S = ∅` and some `s` with: `0 != KL ⊆ N` forces `sK ⊆ M-rad(N)` or `sL ⊆ N`.
pub fn fm_condition(module: &FiniteModule, n: &Submodule, s: &MultClosedSet) -> Result<Condition> {
    if !module.is_faithful() || !module.is_multiplication()? {
        return Err(Error::FmHypothesisUnmet);
    }
    if s.meets(&module.residual(n)) {
        return Ok(Condition { holds: false, witness: None });
    }
    let cands: Vec<usize> = s.iter().collect();
    fm_condition_unchecked(module, n, &cands)
}

fn fm_condition_unchecked(module: &FiniteModule, n: &Submodule, cands: &[usize]) -> Result<Condition> {
    let lattice = module.submodules()?;
    let rad = module.m_radical(n, RadicalMethod::Auto)?;
    let residuals: Vec<Ideal> = lattice.iter().map(|k| module.residual(k)).collect();
    let ring = module.ring();
    let mut triggers = Vec::new();
    for (ki, _) in lattice.iter().enumerate() {
        for (li, _) in lattice.iter().enumerate() {
            let kl = module.ideal_action(&residuals[ki].product(ring, &residuals[li]));
            if !kl.is_zero() && kl.is_subset(n) {
                triggers.push((ki, li));
            }
        }
    }
    let scaled_in = |c: usize, k: &Submodule, target: &Submodule| k.iter().all(|m| target.contains(module.act(c, m)));
    Ok(Condition::from_witness(cands.iter().copied().find(|&c| {
        triggers
            .iter()
            .all(|&(ki, li)| scaled_in(c, &lattice[ki], &rad) || scaled_in(c, &lattice[li], n))
    })))
}

/// True iff N is weakly S-primary and no strictly larger submodule is.
pub fn is_maximal_weakly_s_primary(module: &FiniteModule, n: &Submodule, s: &MultClosedSet) -> Result<bool> {
    if !check(module, n, PredicateKind::WeaklySPrimary, Some(s))?.holds {
        return Err(Error::NotWeaklySPrimary);
    }
    Ok(!module
        .submodules()?
        .iter()
        .filter(|k| n.is_subset(k) && *k != n)
        .any(|k| holds(module, k, PredicateKind::WeaklySPrimary, Some(s))))
}

/// Predicate on an ideal, read through the regular module.
pub fn ideal_holds(regular: &FiniteModule, i: &Ideal, kind: PredicateKind, s: Option<&MultClosedSet>) -> bool {
    let n = Submodule::from_set_unchecked(i.members().clone());
    holds(regular, &n, kind, s)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::FiniteRing;

    fn regular(n: usize) -> FiniteModule {
        FiniteModule::regular(Arc::new(FiniteRing::zn(n).unwrap()))
    }

    #[test]
    fn z36_fixture_has_witness_three() {
        let m = regular(36);
        let s = MultClosedSet::closure(m.ring(), &[3]).unwrap();
        let v = check(&m, &m.span(&[6]), PredicateKind::WeaklySPrimary, Some(&s)).unwrap();
        assert!(v.holds);
        assert_eq!(v.witness, Some(3));
    }

    #[test]
    fn z12_six_is_not_weakly_primary() {
        let m = regular(12);
        let v = check(&m, &m.span(&[6]), PredicateKind::WeaklyPrimary, None).unwrap();
        assert!(!v.holds);
        let ce = v.counterexample.unwrap();
        assert_eq!((ce.a, ce.m), (2, 3));
        assert!(weakly_s_elements(&m, &m.span(&[6]), &MultClosedSet::trivial(m.ring())).unwrap().is_empty());
    }

    #[test]
    fn z72_thirty_six_needs_witness_nine() {
        let m = regular(72);
        let s = MultClosedSet::closure(m.ring(), &[3]).unwrap();
        let n = m.span(&[36]);
        let v = check(&m, &n, PredicateKind::WeaklySPrimary, Some(&s)).unwrap();
        assert_eq!(v.witness, Some(9));
        let elems = weakly_s_elements(&m, &n, &s).unwrap();
        assert!(elems.contains(&9) && !elems.contains(&3));
        let w = check(&m, &n, PredicateKind::WeaklyPrimary, None).unwrap();
        assert!(!w.holds);
    }

    #[test]
    fn zero_submodule_is_weakly_s_primary() {
        let m = regular(12);
        let s = MultClosedSet::closure(m.ring(), &[5]).unwrap();
        let v = check(&m, &m.zero_submodule(), PredicateKind::WeaklySPrimary, Some(&s)).unwrap();
        assert!(v.holds);
        assert_eq!(weakly_s_elements(&m, &m.zero_submodule(), &s).unwrap(), vec![1, 5]);
    }

    #[test]
    fn preconditions() {
        let m = regular(12);
        let s = MultClosedSet::closure(m.ring(), &[4]).unwrap();
        assert_eq!(check(&m, &m.span(&[2]), PredicateKind::WeaklySPrimary, Some(&s)), Err(Error::NotDisjoint));
        assert_eq!(check(&m, &m.whole(), PredicateKind::Prime, None), Err(Error::NotProper));
        assert_eq!(check(&m, &m.span(&[2]), PredicateKind::SPrime, None), Err(Error::MissingMultSet));
    }

    #[test]
    fn counterexample_tracks_every_candidate() {
        let m = regular(12);
        let s = MultClosedSet::closure(m.ring(), &[5]).unwrap();
        let v = check(&m, &m.span(&[6]), PredicateKind::WeaklySPrimary, Some(&s)).unwrap();
        let ce = v.counterexample.unwrap();
        assert_eq!(ce.per_s.iter().map(|d| d.s).collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(ce.defeats, 2);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in PredicateKind::ALL {
            assert_eq!(k.name().parse::<PredicateKind>().unwrap(), k);
        }
        assert_eq!("W_S_PRIMARY".parse::<PredicateKind>().unwrap(), PredicateKind::WeaklySPrimary);
    }

    #[test]
    fn char_conditions_on_z36() {
        let m = regular(36);
        let s = MultClosedSet::closure(m.ring(), &[3]).unwrap();
        let c = char_conditions(&m, &m.span(&[6]), &s).unwrap();
        assert!(c.all_agree() && c.c1.holds);
        assert!(c.fm.unwrap().holds);
        let z = char_conditions(&m, &m.zero_submodule(), &s).unwrap();
        assert!(z.all_agree() && z.c5.holds);
    }

    #[test]
    fn maximality_on_z36() {
        let m = regular(36);
        let s = MultClosedSet::closure(m.ring(), &[3]).unwrap();
        // (2) is weakly S-primary; (1) is not allowed (meets S? no: (N:M)=R meets S).
        assert!(is_maximal_weakly_s_primary(&m, &m.span(&[2]), &s).unwrap());
        assert!(!is_maximal_weakly_s_primary(&m, &m.span(&[4]), &s).unwrap());
        assert!(matches!(
            is_maximal_weakly_s_primary(&m, &m.span(&[3]), &s),
            Err(Error::NotDisjoint) | Err(Error::NotWeaklySPrimary)
        ));
    }
}
