use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{pair_label, FiniteRing, Provenance};
use crate::set::ElemSet;
use crate::Caps;

/// The ring `R ⋉ M` on pairs, with `(r,m)(s,n) = (rs, rn + sm)`. The pair
/// `(r, m)` has index `r * |M| + m`.
#[derive(Clone, Debug)]
pub struct Idealization {
    module: Arc<FiniteModule>,
    ring: Arc<FiniteRing>,
}

impl Idealization {
    pub fn new(module: Arc<FiniteModule>, caps: &Caps) -> Result<Self> {
        let r = module.ring().clone();
        let k = module.order();
        let order = r.order() * k;
        caps.check_ring(order, "idealization")?;
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let (r1, m1) = (a / k, a % k);
            for b in 0..order {
                let (r2, m2) = (b / k, b % k);
                add[a * order + b] = (r.add(r1, r2) * k + module.add(m1, m2)) as u32;
                mul[a * order + b] =
                    (r.mul(r1, r2) * k + module.add(module.act(r1, m2), module.act(r2, m1))) as u32;
            }
        }
        let labels = (0..order)
            .map(|i| pair_label([r.label(i / k), module.label(i % k)].into_iter()))
            .collect();
        let ring = FiniteRing::from_tables(
            format!("{}x|{}", r.id(), module.id()),
            add,
            mul,
            r.zero() * k + module.zero(),
            r.one() * k + module.zero(),
            Some(labels),
            Provenance::Idealization { ring: r.id().to_string(), module: module.id().to_string() },
        )?;
        Ok(Idealization { module, ring: Arc::new(ring) })
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        self.module.ring()
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn pair(&self, r: usize, m: usize) -> usize {
        r * self.module.order() + m
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.module.order(), x % self.module.order())
    }

    /// `I ⋉ N`, defined when `IM ⊆ N`.
    pub fn homogeneous_ideal(&self, i: &Ideal, n: &Submodule) -> Result<Ideal> {
        if !self.module.ideal_action(i).is_subset(n) {
            return Err(Error::NotHomogeneous);
        }
        let set = ElemSet::from_iter(self.ring.order(), i.iter().flat_map(|a| n.iter().map(move |m| (a, m))).map(|(a, m)| self.pair(a, m)));
        Ideal::from_set(&self.ring, set)
    }

    /// `√I ⋉ M`, the expected radical of a homogeneous `I ⋉ N`.
    pub fn radical_product_form(&self, i: &Ideal) -> Ideal {
        let rad = i.radical(self.base());
        let set = ElemSet::from_iter(
            self.ring.order(),
            rad.iter().flat_map(|a| self.module.elements().map(move |m| (a, m))).map(|(a, m)| self.pair(a, m)),
        );
        Ideal::from_set_unchecked(set)
    }

    /// Checks `√(I ⋉ N) = √I ⋉ M` by computing both sides.
    pub fn radical_identity_holds(&self, i: &Ideal, n: &Submodule) -> Result<bool> {
        let h = self.homogeneous_ideal(i, n)?;
        Ok(h.radical(&self.ring) == self.radical_product_form(i))
    }

    /// `S ⋉ K = {(s, k)}`, audited for multiplicative closure.
    pub fn mult_set(&self, s: &MultClosedSet, k: &Submodule) -> Result<MultClosedSet> {
        let set = ElemSet::from_iter(
            self.ring.order(),
            s.iter().flat_map(|a| k.iter().map(move |m| (a, m))).map(|(a, m)| self.pair(a, m)),
        );
        MultClosedSet::from_set(&self.ring, set)
    }
}
