//! Cache-free reference implementations written straight from the
//! definitions. They read only the raw operation tables.

#![allow(dead_code)]

use sprimary::{FiniteModule, PredicateKind};

pub struct Naive {
    pub n: usize,
    pub r: usize,
    add: Vec<u32>,
    act: Vec<u32>,
    rmul: Vec<u32>,
    zero: usize,
}

impl Naive {
    pub fn new(m: &FiniteModule) -> Naive {
        Naive {
            n: m.order(),
            r: m.ring().order(),
            add: m.add_table().to_vec(),
            act: m.action_table().to_vec(),
            rmul: m.ring().mul_table().to_vec(),
            zero: m.zero(),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.n + x] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.rmul[a * self.r + b] as usize
    }

    /// Contains zero, closed under addition and the action (finite, so
    /// negatives come for free).
    pub fn is_submodule(&self, set: &[bool]) -> bool {
        if !set[self.zero] {
            return false;
        }
        for a in 0..self.n {
            if !set[a] {
                continue;
            }
            for b in 0..self.n {
                if set[b] && !set[self.add(a, b)] {
                    return false;
                }
            }
            for r in 0..self.r {
                if !set[self.act(r, a)] {
                    return false;
                }
            }
        }
        true
    }

    /// Every submodule, found by testing every subset. Only for tiny modules.
    pub fn all_submodules(&self) -> Vec<Vec<usize>> {
        assert!(self.n <= 16, "subset scan is exponential");
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << self.n) {
            let set: Vec<bool> = (0..self.n).map(|i| mask >> i & 1 == 1).collect();
            if self.is_submodule(&set) {
                out.push((0..self.n).filter(|&i| set[i]).collect());
            }
        }
        out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    pub fn residual(&self, sub: &[bool]) -> Vec<bool> {
        (0..self.r).map(|r| (0..self.n).all(|x| sub[self.act(r, x)])).collect()
    }

    pub fn radical(&self, ideal: &[bool]) -> Vec<bool> {
        (0..self.r)
            .map(|r| {
                let mut p = r;
                for _ in 0..=self.r {
                    if ideal[p] {
                        return true;
                    }
                    p = self.mul(p, r);
                }
                false
            })
            .collect()
    }

    /// Verdict and least witness (for kinds using `S`) by the textbook
    /// definitions. `s` is ignored for the plain kinds.
    pub fn decide(&self, sub: &[bool], kind: PredicateKind, s: &[usize]) -> (bool, Option<usize>) {
        let res = self.residual(sub);
        let rad = self.radical(&res);
        let weak = matches!(kind, PredicateKind::WeaklyPrimary | PredicateKind::WeaklySPrime | PredicateKind::WeaklySPrimary);
        let primary = matches!(
            kind,
            PredicateKind::Primary | PredicateKind::WeaklyPrimary | PredicateKind::SPrimary | PredicateKind::WeaklySPrimary
        );
        let concl = if primary { &rad } else { &res };
        let uses_s = matches!(
            kind,
            PredicateKind::SPrime | PredicateKind::WeaklySPrime | PredicateKind::SPrimary | PredicateKind::WeaklySPrimary
        );
        let good = |t: usize| {
            for a in 0..self.r {
                for x in 0..self.n {
                    let ax = self.act(a, x);
                    if !sub[ax] || (weak && ax == self.zero) {
                        continue;
                    }
                    if !concl[self.mul(t, a)] && !sub[self.act(t, x)] {
                        return false;
                    }
                }
            }
            true
        };
        if uses_s {
            if s.iter().any(|&t| res[t]) {
                return (false, None);
            }
            let w = s.iter().copied().find(|&t| good(t));
            (w.is_some(), w)
        } else {
            let proper = sub.iter().any(|&b| !b);
            // The ring's identity acts as the identity map.
            let one = (0..self.r).find(|&e| (0..self.n).all(|x| self.act(e, x) == x)).expect("unital action");
            (proper && good(one), None)
        }
    }

    /// Whether `(a, x)` violates the plain kind's implication.
    pub fn violates(&self, sub: &[bool], kind: PredicateKind, a: usize, x: usize) -> bool {
        let res = self.residual(sub);
        let rad = self.radical(&res);
        let primary = matches!(kind, PredicateKind::Primary | PredicateKind::WeaklyPrimary);
        let weak = kind == PredicateKind::WeaklyPrimary;
        let ax = self.act(a, x);
        sub[ax] && !(weak && ax == self.zero) && !(if primary { rad[a] } else { res[a] }) && !sub[x]
    }
}

pub fn mask(n: usize, members: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut v = vec![false; n];
    for x in members {
        v[x] = true;
    }
    v
}

/// Smallest multiplicatively closed set containing `gens`.
pub fn closure(mul: impl Fn(usize, usize) -> usize, gens: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = gens.to_vec();
    set.sort_unstable();
    set.dedup();
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &b in &set {
                next.push(mul(a, b));
            }
        }
        next.sort_unstable();
        next.dedup();
        if next == set {
            return set;
        }
        set = next;
    }
}
