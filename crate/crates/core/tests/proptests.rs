mod common;

use std::sync::Arc;

use common::{mask, Naive};
use proptest::prelude::*;
use sprimary::predicate::{char_conditions, weakly_s_elements};
use sprimary::{check, Caps, Error, FiniteModule, FiniteRing, MultClosedSet, PredicateKind as K};

/// A `Z_n`-module `Z_a ⊕ Z_b` (or `Z_a` alone) with `a, b | n`.
fn module_strategy() -> impl Strategy<Value = FiniteModule> {
    (2usize..=24, 0usize..16, 0usize..16, any::<bool>()).prop_map(|(n, i, j, two)| {
        let divs: Vec<usize> = (2..=n).filter(|d| n % d == 0).collect();
        let r = Arc::new(FiniteRing::zn(n).unwrap());
        let part = |d: usize| {
            Arc::new(if d == n { FiniteModule::regular(r.clone()) } else { FiniteModule::reduction(r.clone(), d).unwrap() })
        };
        let a = divs[i % divs.len()];
        let b = divs[j % divs.len()];
        if two && a * b <= 64 {
            FiniteModule::direct_sum(&[part(a), part(b)], &Caps::default()).unwrap()
        } else {
            Arc::try_unwrap(part(a)).expect("fresh module")
        }
    })
}

fn instance() -> impl Strategy<Value = (FiniteModule, usize, Vec<usize>)> {
    (module_strategy(), any::<usize>(), proptest::collection::vec(any::<usize>(), 1..3))
}

fn pick(m: &FiniteModule, k: usize) -> sprimary::Submodule {
    let lattice = m.submodules().unwrap();
    lattice[k % lattice.len()].clone()
}

fn set_from(m: &FiniteModule, gens: &[usize]) -> MultClosedSet {
    let r = m.ring();
    let gens: Vec<usize> = gens.iter().map(|g| g % r.order()).collect();
    MultClosedSet::closure(r, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn predicates_agree_with_oracle((m, k, gens) in instance()) {
        let n = pick(&m, k);
        let s = set_from(&m, &gens);
        let naive = Naive::new(&m);
        let sub = mask(m.order(), n.iter());
        let members: Vec<usize> = s.iter().collect();
        for kind in K::ALL {
            let (want, w) = naive.decide(&sub, kind, &members);
            match check(&m, &n, kind, Some(&s)) {
                Ok(v) => {
                    prop_assert_eq!(v.holds, want, "{}", kind);
                    prop_assert_eq!(v.witness, w);
                }
                Err(Error::NotDisjoint) => prop_assert!(kind.uses_mult_set() && !want),
                Err(Error::NotProper) => prop_assert!(!want && n.len() == m.order()),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }

    #[test]
    fn hierarchy_of_predicates((m, k, gens) in instance()) {
        let n = pick(&m, k);
        let s = set_from(&m, &gens);
        let h = |kind| sprimary::predicate::holds(&m, &n, kind, Some(&s));
        prop_assert!(!h(K::Prime) || h(K::Primary));
        prop_assert!(!h(K::Primary) || h(K::WeaklyPrimary));
        prop_assert!(!h(K::SPrime) || h(K::SPrimary));
        prop_assert!(!h(K::SPrimary) || h(K::WeaklySPrimary));
        prop_assert!(!h(K::SPrime) || h(K::WeaklySPrime));
        prop_assert!(!h(K::WeaklySPrime) || h(K::WeaklySPrimary));
        let disjoint = !s.meets(&m.residual(&n));
        if disjoint {
            prop_assert!(!h(K::WeaklyPrimary) || h(K::WeaklySPrimary));
            prop_assert!(!h(K::Primary) || h(K::SPrimary));
        }
    }

    #[test]
    fn saturation_preserves_verdicts((m, k, gens) in instance()) {
        let n = pick(&m, k);
        let s = set_from(&m, &gens);
        let sat = s.saturate(m.ring());
        for kind in [K::WeaklySPrimary, K::SPrimary] {
            prop_assert_eq!(
                sprimary::predicate::holds(&m, &n, kind, Some(&s)),
                sprimary::predicate::holds(&m, &n, kind, Some(&sat))
            );
        }
    }

    #[test]
    fn weakly_s_elements_are_exactly_the_working_candidates((m, k, gens) in instance()) {
        let n = pick(&m, k);
        let s = set_from(&m, &gens);
        let naive = Naive::new(&m);
        let sub = mask(m.order(), n.iter());
        match weakly_s_elements(&m, &n, &s) {
            Ok(ws) => {
                for t in s.iter() {
                    prop_assert_eq!(ws.contains(&t), naive.decide(&sub, K::WeaklySPrimary, &[t]).0);
                }
            }
            Err(e) => prop_assert_eq!(e, Error::NotDisjoint),
        }
    }

    #[test]
    fn characterizations_agree_when_disjoint((m, k, gens) in instance()) {
        let n = pick(&m, k);
        let s = set_from(&m, &gens);
        if !s.meets(&m.residual(&n)) {
            let c = char_conditions(&m, &n, &s).unwrap();
            prop_assert!(c.all_agree());
        }
    }

    #[test]
    fn span_is_the_least_submodule_containing_generators(
        m in module_strategy(),
        gens in proptest::collection::vec(any::<usize>(), 0..3),
    ) {
        let gens: Vec<usize> = gens.iter().map(|g| g % m.order()).collect();
        let span = m.span(&gens);
        prop_assert!(m.is_submodule(span.members()));
        for &g in &gens {
            prop_assert!(span.contains(g));
        }
        for k in m.submodules().unwrap() {
            if gens.iter().all(|&g| k.contains(g)) {
                prop_assert!(span.is_subset(k));
            }
        }
    }

    #[test]
    fn residual_is_the_largest_annihilating_ideal((m, k, _gens) in instance()) {
        let n = pick(&m, k);
        let res = m.residual(&n);
        for r in m.ring().elements() {
            let kills = m.elements().all(|x| n.contains(m.act(r, x)));
            prop_assert_eq!(res.contains(r), kills);
        }
    }
}
