//! Finite commutative rings with identity, stored as dense operation tables.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::set::ElemSet;
use crate::Caps;

/// How a ring (or module) was built. Carried for reports only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Base,
    Tables,
    Product(Vec<String>),
    Quotient { base: String, by: Vec<usize> },
    Idealization { ring: String, module: String },
    Duplication { ring: String, ideal: Vec<usize> },
    Amalgamation { ring1: String, ring2: String, ideal: Vec<usize> },
    Localization { base: String, mult_set: Vec<usize> },
    Regular(String),
    Reduction { n: usize, m: usize },
    DirectSum(Vec<String>),
    Submodule { module: String, members: Vec<usize> },
    Restriction { module: String, along: String },
}

pub struct FiniteRing {
    id: String,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
    provenance: Provenance,
    ideals: OnceLock<Result<Vec<Ideal>>>,
    units: OnceLock<ElemSet>,
}

impl FiniteRing {
    /// Builds a ring from explicit tables and audits every ring axiom.
    pub fn from_tables(
        id: impl Into<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let ring = Self::assemble(id.into(), add, mul, zero, one, labels, provenance)?;
        ring.audit()?;
        Ok(ring)
    }

    /// Like `from_tables` but only checks shapes; used by constructions whose
    /// axioms follow from the inputs and are audited separately in tests.
    pub(crate) fn from_tables_trusted(
        id: String,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
        provenance: Provenance,
    ) -> Result<Self> {
        Self::assemble(id, add, mul, zero, one, labels, provenance)
    }

    fn assemble(
        id: String,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let order = (add.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != add.len() || mul.len() != add.len() {
            return Err(Error::InvalidSpec("operation tables must be square and equal in size".into()));
        }
        if zero >= order || one >= order {
            return Err(Error::InvalidSpec("identity index out of range".into()));
        }
        if zero == one {
            return Err(Error::InvalidSpec("ring must have a nonzero identity".into()));
        }
        if add.iter().chain(mul.iter()).any(|&x| x as usize >= order) {
            return Err(Error::InvalidSpec("table entry out of range".into()));
        }
        let mut neg = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] as usize == zero {
                    neg[a] = b as u32;
                    break;
                }
            }
        }
        if neg.contains(&u32::MAX) {
            return Err(Error::InvalidSpec("addition has no inverses".into()));
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(_) => return Err(Error::InvalidSpec("label count does not match order".into())),
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteRing {
            id,
            order,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
            provenance,
            ideals: OnceLock::new(),
            units: OnceLock::new(),
        })
    }

    /// The ring of integers modulo `n`.
    pub fn zn(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("Z_n requires n >= 2, got {n}")));
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(((a + b) % n) as u32);
                mul.push(((a * b) % n) as u32);
            }
        }
        Self::from_tables_trusted(format!("Z{n}"), add, mul, 0, 1, None, Provenance::Base)
    }

    /// Direct product of rings with componentwise operations. Elements are
    /// indexed in mixed radix with the first factor most significant.
    pub fn product(factors: &[Arc<FiniteRing>], caps: &Caps) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("product of zero rings".into()));
        }
        let order: usize = factors.iter().map(|r| r.order).product();
        caps.check_ring(order, "product ring")?;
        let tuples: Vec<Vec<usize>> = (0..order).map(|i| mixed_radix(i, factors.iter().map(|r| r.order))).collect();
        let encode = |t: &[usize]| t.iter().zip(factors).fold(0, |acc, (&x, r)| acc * r.order + x);
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        let mut buf_a = vec![0; factors.len()];
        let mut buf_m = vec![0; factors.len()];
        for a in 0..order {
            for b in 0..order {
                for (k, r) in factors.iter().enumerate() {
                    buf_a[k] = r.add(tuples[a][k], tuples[b][k]);
                    buf_m[k] = r.mul(tuples[a][k], tuples[b][k]);
                }
                add[a * order + b] = encode(&buf_a) as u32;
                mul[a * order + b] = encode(&buf_m) as u32;
            }
        }
        let zero = encode(&factors.iter().map(|r| r.zero).collect::<Vec<_>>());
        let one = encode(&factors.iter().map(|r| r.one).collect::<Vec<_>>());
        let labels = tuples
            .iter()
            .map(|t| pair_label(t.iter().zip(factors).map(|(&x, r)| r.label(x))))
            .collect();
        let id = factors.iter().map(|r| r.id.as_str()).collect::<Vec<_>>().join("x");
        Self::from_tables_trusted(
            id,
            add,
            mul,
            zero,
            one,
            Some(labels),
            Provenance::Product(factors.iter().map(|r| r.id.clone()).collect()),
        )
    }

    /// Quotient by a proper ideal, with the canonical projection.
    /// Cosets are represented by their least index.
    pub fn quotient(self: &Arc<Self>, ideal: &Ideal) -> Result<(Arc<FiniteRing>, RingHom)> {
        if ideal.universe() != self.order {
            return Err(Error::InvalidSpec("ideal belongs to another ring".into()));
        }
        if !ideal.is_ideal_of(self) {
            return Err(Error::InvalidSpec("generator set is not an ideal".into()));
        }
        if ideal.contains(self.one) {
            return Err(Error::InvalidSpec("quotient by a non-proper ideal".into()));
        }
        let (reps, class_of) = cosets(self.order, ideal.members(), |a, b| self.add(a, b));
        let q = reps.len();
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * q + j] = class_of[self.add(a, b)] as u32;
                mul[i * q + j] = class_of[self.mul(a, b)] as u32;
            }
        }
        let labels = reps.iter().map(|&r| format!("{}+I", self.label(r))).collect();
        let id = format!("{}/{}", self.id, set_label(self, ideal.members()));
        let ring = Arc::new(Self::from_tables_trusted(
            id,
            add,
            mul,
            class_of[self.zero],
            class_of[self.one],
            Some(labels),
            Provenance::Quotient { base: self.id.clone(), by: ideal.members().to_vec() },
        )?);
        let proj = RingHom::new(self.clone(), ring.clone(), class_of)?;
        Ok((ring, proj))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Resolves a label (or a plain decimal index) to an element.
    pub fn parse_element(&self, s: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == s)
            .or_else(|| s.parse::<usize>().ok().filter(|&i| i < self.order))
    }

    /// Same carrier and tables (structural equality).
    pub fn same_as(&self, other: &FiniteRing) -> bool {
        std::ptr::eq(self, other)
            || (self.order == other.order && self.add == other.add && self.mul == other.mul)
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units().contains(a)
    }

    pub fn units(&self) -> &ElemSet {
        self.units.get_or_init(|| {
            ElemSet::from_iter(self.order, (0..self.order).filter(|&a| (0..self.order).any(|b| self.mul(a, b) == self.one)))
        })
    }

    /// True when the only nilpotent element is zero.
    pub fn is_reduced(&self) -> bool {
        (0..self.order).all(|a| a == self.zero || self.pow(a, self.order) != self.zero)
    }

    /// Every ideal of the ring, in canonical order.
    pub fn ideals(&self) -> Result<&[Ideal]> {
        self.ideals
            .get_or_init(|| crate::ideal::enumerate_ideals(self, crate::DEFAULT_LATTICE_CAP))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Exhaustive axiom audit.
    pub fn audit(&self) -> Result<()> {
        let n = self.order;
        let fail = |what: &str, a: usize, b: usize, c: usize| {
            Err(Error::AuditFailure(format!("{}: {what} fails at ({a}, {b}, {c})", self.id)))
        };
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity", a, 0, 0);
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", a, 0, 0);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", a, b, 0);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", a, b, 0);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.add(a, b);
                let mab = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", a, b, c);
                    }
                    if self.mul(mab, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", a, b, c);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(mab, self.mul(a, c)) {
                        return fail("distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing").field("id", &self.id).field("order", &self.order).finish()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

/// A unital ring homomorphism between finite rings.
#[derive(Clone)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    map: Vec<usize>,
}

impl RingHom {
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::NotRingHom("map table has the wrong shape".into()));
        }
        if map[source.one()] != target.one() {
            return Err(Error::NotRingHom("identity is not preserved".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(Error::NotRingHom(format!("not additive at ({a}, {b})")));
                }
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotRingHom(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(RingHom { source, target, map })
    }

    pub fn identity(ring: Arc<FiniteRing>) -> Self {
        let map = ring.elements().collect();
        RingHom { source: ring.clone(), target: ring, map }
    }

    /// Reduction Z_n -> Z_m for m | n.
    pub fn reduction(source: Arc<FiniteRing>, target: Arc<FiniteRing>) -> Result<Self> {
        let (n, m) = (source.order(), target.order());
        if n % m != 0 {
            return Err(Error::ActionUndefined { n, m });
        }
        Self::new(source, target, (0..n).map(|r| r % m).collect())
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

pub(crate) fn mixed_radix(mut i: usize, radices: impl DoubleEndedIterator<Item = usize>) -> Vec<usize> {
    let mut digits: Vec<usize> = radices
        .rev()
        .map(|r| {
            let d = i % r;
            i /= r;
            d
        })
        .collect();
    digits.reverse();
    digits
}

pub(crate) fn pair_label<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    format!("({})", parts.collect::<Vec<_>>().join("|"))
}

pub(crate) fn set_label(ring: &FiniteRing, members: &ElemSet) -> String {
    format!("{{{}}}", members.iter().map(|x| ring.label(x)).collect::<Vec<_>>().join(","))
}

/// Partitions `0..order` into cosets of `sub` under `add`. Returns the least
/// representative of each coset and the class index of every element.
pub(crate) fn cosets(order: usize, sub: &ElemSet, add: impl Fn(usize, usize) -> usize) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for k in sub.iter() {
            class_of[add(x, k)] = c;
        }
    }
    (reps, class_of)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_basics() {
        let r = FiniteRing::zn(6).unwrap();
        assert_eq!((r.order(), r.zero(), r.one()), (6, 0, 1));
        assert_eq!(r.mul(4, 5), 2);
        assert_eq!(r.neg(2), 4);
        r.audit().unwrap();
        assert_eq!(r.units().to_vec(), vec![1, 5]);
    }

    #[test]
    fn zn_rejects_small_n() {
        assert!(matches!(FiniteRing::zn(1), Err(Error::InvalidSpec(_))));
        assert!(matches!(FiniteRing::zn(0), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn product_z2_z3_is_z6_via_crt() {
        let caps = Caps::default();
        let p = FiniteRing::product(&[Arc::new(FiniteRing::zn(2).unwrap()), Arc::new(FiniteRing::zn(3).unwrap())], &caps)
            .unwrap();
        p.audit().unwrap();
        let z6 = FiniteRing::zn(6).unwrap();
        // CRT bijection x -> (x mod 2, x mod 3) in the product's mixed radix.
        let phi = |x: usize| (x % 2) * 3 + (x % 3);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(phi(z6.add(a, b)), p.add(phi(a), phi(b)));
                assert_eq!(phi(z6.mul(a, b)), p.mul(phi(a), phi(b)));
            }
        }
        assert_eq!(p.label(phi(5)), "(1|2)");
    }

    #[test]
    fn quotient_z12_by_6() {
        let r = Arc::new(FiniteRing::zn(12).unwrap());
        let i = Ideal::span(&r, &[6]);
        let (q, proj) = r.quotient(&i).unwrap();
        assert_eq!(q.order(), 6);
        q.audit().unwrap();
        assert_eq!(proj.apply(7), proj.apply(1));
        assert_eq!(q.label(proj.apply(7)), "1+I");
        assert!(proj.is_surjective());
    }

    #[test]
    fn quotient_rejects_whole_ring() {
        let r = Arc::new(FiniteRing::zn(12).unwrap());
        let i = Ideal::span(&r, &[5]);
        assert!(matches!(r.quotient(&i), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn from_tables_rejects_noncommutative_or_zero_ring() {
        let z = FiniteRing::zn(3).unwrap();
        let mut mul = z.mul_table().to_vec();
        mul[3 + 2] = 0;
        let err = FiniteRing::from_tables("bad", z.add_table().to_vec(), mul, 0, 1, None, Provenance::Tables);
        assert!(matches!(err, Err(Error::AuditFailure(_))));
        let err = FiniteRing::from_tables("zero", vec![0], vec![0], 0, 0, None, Provenance::Tables);
        assert!(matches!(err, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn reduction_hom_z12_z4() {
        let a = Arc::new(FiniteRing::zn(12).unwrap());
        let b = Arc::new(FiniteRing::zn(4).unwrap());
        let f = RingHom::reduction(a.clone(), b.clone()).unwrap();
        assert!(f.is_surjective());
        assert!(RingHom::reduction(a, Arc::new(FiniteRing::zn(5).unwrap())).is_err());
    }
}
