//! Claims about products, idealizations and amalgamations.

use crate::construct::Amalgamation;
use crate::harness::corpus::{AmalgCase, Corpus, ModuleEntry, ProductCase};
use crate::harness::{tally, Case, Outcome};
use crate::ideal::{Ideal, MultClosedSet};
use crate::module::Submodule;
use crate::predicate::{PredicateKind as K, View};
use crate::ring::set_label;
use crate::set::ElemSet;

fn encode(parts: &[usize], radices: &[usize]) -> usize {
    parts.iter().zip(radices).fold(0, |acc, (&x, &r)| acc * r + x)
}

/// Cartesian product of the given member lists, encoded in mixed radix.
fn product_set(lists: &[Vec<usize>], radices: &[usize]) -> ElemSet {
    let total: usize = radices.iter().product();
    let mut out = ElemSet::empty(total);
    let mut idx = vec![0usize; lists.len()];
    if lists.iter().any(|l| l.is_empty()) {
        return out;
    }
    loop {
        let parts: Vec<usize> = idx.iter().zip(lists).map(|(&i, l)| l[i]).collect();
        out.insert(encode(&parts, radices));
        let mut k = lists.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

fn product_claim(c: &Corpus, cases: &[ProductCase]) -> Outcome {
    // Per case: factor entries, the nonzero lattice positions of each factor,
    // and every product S_1 x ... x S_k of single-element closures.
    struct Prep<'a> {
        factors: Vec<&'a ModuleEntry>,
        sets: Vec<(Vec<usize>, MultClosedSet)>,
    }
    let preps: Vec<Prep> = cases
        .iter()
        .map(|pc| {
            let factors: Vec<&ModuleEntry> = pc.factors.iter().map(|&i| &c.modules[i]).collect();
            let single: Vec<&Vec<usize>> = factors.iter().map(|f| &c.rings[f.ring].singletons).collect();
            let radices: Vec<usize> = factors.iter().map(|f| f.module.ring().order()).collect();
            let sets = tuples(&single.iter().map(|s| s.len()).collect::<Vec<_>>())
                .into_iter()
                .map(|t| {
                    let pos: Vec<usize> = t.iter().zip(&single).map(|(&i, s)| s[i]).collect();
                    let lists: Vec<Vec<usize>> = pos
                        .iter()
                        .zip(&factors)
                        .map(|(&p, f)| c.rings[f.ring].mult_sets[p].iter().collect())
                        .collect();
                    let set = MultClosedSet::from_set(pc.module.ring(), product_set(&lists, &radices))
                        .expect("products of closed sets are closed");
                    (pos, set)
                })
                .collect();
            Prep { factors, sets }
        })
        .collect();
    let mut rows = Vec::new();
    for (ci, p) in preps.iter().enumerate() {
        let nonzero: Vec<Vec<usize>> = p
            .factors
            .iter()
            .map(|f| (0..f.eval.lattice.len()).filter(|&n| !f.eval.lattice[n].is_zero()).collect())
            .collect();
        for t in tuples(&nonzero.iter().map(|v| v.len()).collect::<Vec<_>>()) {
            rows.push((ci, t.iter().zip(&nonzero).map(|(&i, v)| v[i]).collect::<Vec<usize>>()));
        }
    }
    tally(&rows, |(ci, ns)| {
        let pc = &cases[*ci];
        let prep = &preps[*ci];
        let radices: Vec<usize> = prep.factors.iter().map(|f| f.module.order()).collect();
        let lists: Vec<Vec<usize>> =
            prep.factors.iter().zip(ns).map(|(f, &n)| f.eval.lattice[n].iter().collect()).collect();
        let nsub = match pc.module.submodule(product_set(&lists, &radices)) {
            Ok(x) => x,
            Err(e) => return vec![Case::Fail(format!("M={}: {e}", pc.module.id()))],
        };
        let v = View::new(&pc.module, &nsub);
        let sets: Vec<MultClosedSet> = prep.sets.iter().map(|(_, s)| s.clone()).collect();
        let weak = v.witness_many(K::WeaklySPrimary, &sets);
        let strong = v.witness_many(K::SPrimary, &sets);
        prep.sets
            .iter()
            .enumerate()
            .map(|(k, (pos, set))| {
                let one = weak[k].is_some();
                let three = strong[k].is_some();
                let meets: Vec<bool> = prep
                    .factors
                    .iter()
                    .zip(ns)
                    .zip(pos)
                    .map(|((f, &n), &p)| c.rings[f.ring].mult_sets[p].meets(&f.eval.residual[n]))
                    .collect();
                let two = (0..ns.len()).any(|i| {
                    prep.factors[i].eval.holds(ns[i], K::SPrimary, pos[i])
                        && (0..ns.len()).all(|j| j == i || meets[j])
                });
                Case::expect(one == two && two == three, || {
                    format!(
                        "M={} N={} S={}: weakly {one}, componentwise {two}, S-primary {three}",
                        pc.module.id(),
                        pc.module.set_label(nsub.members()),
                        set_label(pc.module.ring(), set.members())
                    )
                })
            })
            .collect()
    })
}

pub(super) fn cart(c: &Corpus) -> Outcome {
    product_claim(c, &c.products)
}

pub(super) fn cart3(c: &Corpus) -> Outcome {
    product_claim(c, &c.triples)
}

/// Homogeneous pairs `(I, N)`: (case, ideal position in the base regular
/// lattice, submodule position).
fn homogeneous_rows(c: &Corpus) -> Vec<(usize, usize, usize)> {
    let mut rows = Vec::new();
    for (ci, case) in c.idealizations.iter().enumerate() {
        let me = &c.modules[case.module];
        let reg = c.regular_of(case.module);
        for (ip, i) in reg.eval.lattice.iter().enumerate() {
            let ideal = Ideal::from_set_unchecked(i.members().clone());
            let im = me.module.ideal_action(&ideal);
            for (n, nsub) in me.eval.lattice.iter().enumerate() {
                if im.is_subset(nsub) {
                    rows.push((ci, ip, n));
                }
            }
        }
    }
    rows
}

pub(super) fn ideal(c: &Corpus) -> Outcome {
    tally(&homogeneous_rows(c), |&(ci, ip, n)| {
        let case = &c.idealizations[ci];
        let me = &c.modules[case.module];
        let reg = c.regular_of(case.module);
        let ring_entry = &c.rings[me.ring];
        let (r, m) = (me.module.ring(), &me.module);
        let i = Ideal::from_set_unchecked(reg.eval.lattice[ip].members().clone());
        let nsub = &me.eval.lattice[n];
        let h = match case.ideal.homogeneous_ideal(&i, nsub) {
            Ok(h) => h,
            Err(e) => return vec![Case::Fail(format!("{}: {e}", case.ideal.ring().id()))],
        };
        let hsub = match case.regular.submodule(h.members().clone()) {
            Ok(x) => x,
            Err(e) => return vec![Case::Fail(format!("{}: {e}", case.ideal.ring().id()))],
        };
        let v = View::new(&case.regular, &hsub);
        let mut combos: Vec<(usize, usize, MultClosedSet)> = Vec::new();
        for (k, ksub) in me.eval.lattice.iter().enumerate() {
            if !ksub.is_subset(nsub) {
                continue;
            }
            for &s in &ring_entry.singletons {
                match case.ideal.mult_set(&ring_entry.mult_sets[s], ksub) {
                    Ok(t) => combos.push((k, s, t)),
                    Err(e) => return vec![Case::Fail(format!("{}: {e}", case.ideal.ring().id()))],
                }
            }
        }
        let sets: Vec<MultClosedSet> = combos.iter().map(|(_, _, t)| t.clone()).collect();
        let verdicts = v.witness_many(K::WeaklySPrimary, &sets);
        let rad_i = i.radical(r);
        let ann_n = m.annihilator_of(nsub);
        let ann_i: ElemSet = ElemSet::from_iter(r.order(), r.elements().filter(|&x| i.iter().all(|a| r.mul(x, a) == r.zero())));
        let zero_i: ElemSet =
            ElemSet::from_iter(m.order(), m.elements().filter(|&x| i.iter().all(|a| m.act(a, x) == m.zero())));
        let res = &me.eval.residual[n];
        let rad_n = &me.eval.radical[n];
        let tail = |x: usize| {
            let first = r.elements().all(|a| {
                r.elements().all(|b| {
                    r.mul(a, b) != r.zero()
                        || rad_i.contains(r.mul(x, a))
                        || i.contains(r.mul(x, b))
                        || (ann_n.contains(a) && ann_n.contains(b))
                })
            });
            first
                && r.elements().all(|cc| {
                    m.elements().all(|y| {
                        m.act(cc, y) != m.zero()
                            || rad_n.contains(r.mul(x, cc))
                            || nsub.contains(m.act(x, y))
                            || (ann_i.contains(cc) && zero_i.contains(y))
                    })
                })
        };
        combos
            .iter()
            .zip(&verdicts)
            .map(|((k, s, _), w)| {
                let set = &ring_entry.mult_sets[*s];
                Case::check(w.is_some(), || {
                    let label = || {
                        format!(
                            "R={} I={} N={} K={} S={}",
                            r.id(),
                            set_label(r, i.members()),
                            m.set_label(nsub.members()),
                            m.set_label(me.eval.lattice[*k].members()),
                            set_label(r, set.members())
                        )
                    };
                    if !reg.eval.wsp(ip, *s) {
                        return Err(format!("{}: I is not weakly S-primary", label()));
                    }
                    if !set.meets(res) && !me.eval.wsp(n, *s) {
                        return Err(format!("{}: N is not weakly S-primary", label()));
                    }
                    if !set.iter().any(tail) {
                        return Err(format!("{}: no s satisfies the annihilator conditions", label()));
                    }
                    Ok(())
                })
            })
            .collect()
    })
}

pub(super) fn ideal_radical(c: &Corpus) -> Outcome {
    tally(&homogeneous_rows(c), |&(ci, ip, n)| {
        let case = &c.idealizations[ci];
        let me = &c.modules[case.module];
        let reg = c.regular_of(case.module);
        let i = Ideal::from_set_unchecked(reg.eval.lattice[ip].members().clone());
        vec![match case.ideal.radical_identity_holds(&i, &me.eval.lattice[n]) {
            Ok(true) => Case::Pass,
            Ok(false) => Case::Fail(format!(
                "{}: I={} N={}",
                case.ideal.ring().id(),
                set_label(me.module.ring(), i.members()),
                me.module.set_label(me.eval.lattice[n].members())
            )),
            Err(e) => Case::Fail(format!("{}: {e}", case.ideal.ring().id())),
        }]
    })
}

fn epi(a: &Amalgamation) -> bool {
    a.f().is_surjective() && a.phi().is_surjective()
}

fn ctx(a: &Amalgamation) -> String {
    format!("{} along {} via {:?}", a.module().id(), set_label(a.ring2(), a.j().members()), a.phi().table())
}

/// Rows over first-factor submodules (`second == false`) or second-factor
/// submodules of every (selected) amalgamation.
fn amalg_rows(c: &Corpus, second: bool, dup_only: bool) -> Vec<(usize, usize)> {
    c.amalgamations
        .iter()
        .enumerate()
        .filter(|(_, a)| !dup_only || a.duplication)
        .flat_map(|(ci, a)| {
            let n = if second { a.m2_lattice.len() } else { a.m1_lattice.len() };
            (0..n).map(move |k| (ci, k))
        })
        .collect()
}

pub(super) fn ha(c: &Corpus) -> Outcome {
    let mut rows: Vec<(usize, usize, bool)> = amalg_rows(c, false, false).into_iter().map(|(a, b)| (a, b, false)).collect();
    rows.extend(amalg_rows(c, true, false).into_iter().map(|(a, b)| (a, b, true)));
    tally(&rows, |&(ci, k, second)| {
        let case = &c.amalgamations[ci];
        let a = &case.amalg;
        if second && !epi(a) {
            return vec![Case::Skip];
        }
        let probe = if second {
            a.lemma_ha_probe(None, Some(&case.m2_lattice[k]))
        } else {
            a.lemma_ha_probe(Some(&case.m1_lattice[k]), None)
        };
        let part = probe.map(|p| if second { p.part2 } else { p.part1 });
        vec![match part {
            Ok(Some(p)) if p.holds => Case::Pass,
            Ok(Some(p)) => Case::Fail(format!("{} submodule #{k}: residual mismatch at {:?}", ctx(a), p.failure)),
            Ok(None) => Case::Fail(format!("{}: probe returned nothing", ctx(a))),
            Err(e) => Case::Fail(format!("{}: {e}", ctx(a))),
        }]
    })
}

struct FirstSide {
    big: Submodule,
    big_sets: Vec<MultClosedSet>,
}

fn first_side(case: &AmalgCase, k: usize) -> crate::Result<FirstSide> {
    let a = &case.amalg;
    let big = a.first_submodule(&case.m1_lattice[k])?;
    let big_sets = case.s1.iter().map(|s| a.first_mult_set(s)).collect::<crate::Result<Vec<_>>>()?;
    Ok(FirstSide { big, big_sets })
}

/// For `r1 m1 = 0` with `s r1 ∉ √(N1:M1)` and `s m1 ∉ N1` for all `s ∈ S`:
/// `f(r1) m2 + j φ(m1) + j m2 = 0` for every `j ∈ J`, `m2 ∈ JM2`.
fn first_tail(a: &Amalgamation, n1: &Submodule, rad: &Ideal, set: &MultClosedSet, drop_cross_term: bool) -> bool {
    let (r1, m1, m2) = (a.ring1(), a.module1(), a.module2());
    let (f, phi) = (a.f(), a.phi());
    r1.elements().all(|r| {
        m1.elements().all(|m| {
            if m1.act(r, m) != m1.zero() || set.iter().any(|s| rad.contains(r1.mul(s, r)) || n1.contains(m1.act(s, m))) {
                return true;
            }
            a.j().iter().all(|j| {
                a.jm2().iter().all(|x| {
                    let mut v = m2.add(m2.act(f.apply(r), x), m2.act(j, x));
                    if !drop_cross_term {
                        v = m2.add(v, m2.act(j, phi.apply(m)));
                    }
                    v == m2.zero()
                })
            })
        })
    })
}

fn first_factor_claim(
    c: &Corpus,
    dup_only: bool,
    body: impl Fn(&AmalgCase, usize, &View, &View, &FirstSide) -> Vec<Case> + Sync,
) -> Outcome {
    tally(&amalg_rows(c, false, dup_only), |&(ci, k)| {
        let case = &c.amalgamations[ci];
        let side = match first_side(case, k) {
            Ok(s) => s,
            Err(e) => return vec![Case::Fail(format!("{}: {e}", ctx(&case.amalg)))],
        };
        let small = View::new(case.amalg.module1(), &case.m1_lattice[k]);
        let big = View::new(case.amalg.module(), &side.big);
        body(case, k, &small, &big, &side)
    })
}

fn n_label(case: &AmalgCase, k: usize, second: bool) -> String {
    let a = &case.amalg;
    if second {
        format!("{}: N2={}", ctx(a), a.module2().set_label(case.m2_lattice[k].members()))
    } else {
        format!("{}: N1={}", ctx(a), a.module1().set_label(case.m1_lattice[k].members()))
    }
}

pub(super) fn amalg1(c: &Corpus) -> Outcome {
    first_factor_claim(c, false, |case, k, small, big, side| {
        let lhs = big.witness_many(K::SPrimary, &side.big_sets);
        let rhs = small.witness_many(K::SPrimary, &case.s1);
        lhs.iter()
            .zip(&rhs)
            .zip(&case.s1)
            .map(|((l, r), s)| {
                Case::expect(l.is_some() == r.is_some(), || {
                    format!("{} S={}: amalgamated {} vs factor {}", n_label(case, k, false), set_label(case.amalg.ring1(), s.members()), l.is_some(), r.is_some())
                })
            })
            .collect()
    })
}

pub(super) fn amalg2(c: &Corpus) -> Outcome {
    first_factor_claim(c, false, |case, k, small, big, side| {
        let lhs = big.witness_many(K::WeaklySPrimary, &side.big_sets);
        let rhs = small.witness_many(K::WeaklySPrimary, &case.s1);
        lhs.iter()
            .zip(&rhs)
            .zip(&case.s1)
            .map(|((l, r), s)| {
                let tail = first_tail(&case.amalg, &case.m1_lattice[k], &small.radical, s, false);
                let right = r.is_some() && tail;
                Case::expect(l.is_some() == right, || {
                    format!(
                        "{} S={}: amalgamated {}, factor {}, extra condition {tail}",
                        n_label(case, k, false),
                        set_label(case.amalg.ring1(), s.members()),
                        l.is_some(),
                        r.is_some()
                    )
                })
            })
            .collect()
    })
}

pub(super) fn ca1_1(c: &Corpus) -> Outcome {
    first_factor_claim(c, false, |case, k, small, big, _| {
        let (l, r) = (big.holds(K::Primary, None), small.holds(K::Primary, None));
        vec![Case::expect(l == r, || format!("{}: amalgamated primary {l}, factor primary {r}", n_label(case, k, false)))]
    })
}

pub(super) fn ca1_2(c: &Corpus) -> Outcome {
    first_factor_claim(c, false, |case, k, small, big, _| {
        let one = MultClosedSet::trivial(case.amalg.ring1());
        let l = big.holds(K::WeaklyPrimary, None);
        let r = small.holds(K::WeaklyPrimary, None);
        let tail = first_tail(&case.amalg, &case.m1_lattice[k], &small.radical, &one, false);
        vec![Case::expect(l == (r && tail), || {
            format!("{}: amalgamated weakly primary {l}, factor {r}, extra condition {tail}", n_label(case, k, false))
        })]
    })
}

struct SecondSide {
    big: Submodule,
    big_sets: Vec<MultClosedSet>,
}

fn second_side(case: &AmalgCase, k: usize) -> crate::Result<SecondSide> {
    let a = &case.amalg;
    let big = a.second_submodule(&case.m2_lattice[k])?;
    let big_sets = case.s2.iter().map(|s| a.second_mult_set(s)).collect::<crate::Result<Vec<_>>>()?;
    Ok(SecondSide { big, big_sets })
}

/// For `(f(r1)+j)(φ(m1)+m2) = 0` with `s(f(r1)+j) ∉ T` and `s(φ(m1)+m2) ∉ N2`
/// for all `s ∈ S`: `r1 m1 = 0`. `T` is the residual or its radical.
fn second_tail(a: &Amalgamation, n2: &Submodule, target: &Ideal, set: &MultClosedSet) -> bool {
    let (r2, m1, m2) = (a.ring2(), a.module1(), a.module2());
    a.ring().elements().all(|x| {
        let (r, t) = a.ring_pair(x);
        a.module().elements().all(|y| {
            let (m, u) = a.module_pair(y);
            m2.act(t, u) != m2.zero()
                || set.iter().any(|s| target.contains(r2.mul(s, t)) || n2.contains(m2.act(s, u)))
                || m1.act(r, m) == m1.zero()
        })
    })
}

fn second_factor_claim(
    c: &Corpus,
    dup_only: bool,
    body: impl Fn(&AmalgCase, usize, &View, &View, &SecondSide) -> Vec<Case> + Sync,
) -> Outcome {
    tally(&amalg_rows(c, true, dup_only), |&(ci, k)| {
        let case = &c.amalgamations[ci];
        if !epi(&case.amalg) {
            return vec![Case::Skip];
        }
        let side = match second_side(case, k) {
            Ok(s) => s,
            Err(e) => return vec![Case::Fail(format!("{}: {e}", ctx(&case.amalg)))],
        };
        let small = View::new(case.amalg.module2(), &case.m2_lattice[k]);
        let big = View::new(case.amalg.module(), &side.big);
        body(case, k, &small, &big, &side)
    })
}

pub(super) fn amalg2_1(c: &Corpus) -> Outcome {
    second_factor_claim(c, false, |case, k, small, big, side| {
        let lhs = big.witness_many(K::SPrimary, &side.big_sets);
        let rhs = small.witness_many(K::SPrimary, &case.s2);
        lhs.iter()
            .zip(&rhs)
            .zip(&case.s2)
            .map(|((l, r), s)| {
                Case::expect(l.is_some() == r.is_some(), || {
                    format!("{} S={}: amalgamated {} vs factor {}", n_label(case, k, true), set_label(case.amalg.ring2(), s.members()), l.is_some(), r.is_some())
                })
            })
            .collect()
    })
}

pub(super) fn amalg2_2(c: &Corpus) -> Outcome {
    second_factor_claim(c, false, |case, k, small, big, side| {
        let lhs = big.witness_many(K::WeaklySPrimary, &side.big_sets);
        let rhs = small.witness_many(K::WeaklySPrimary, &case.s2);
        lhs.iter()
            .zip(&rhs)
            .zip(&case.s2)
            .map(|((l, r), s)| {
                let tail = second_tail(&case.amalg, &case.m2_lattice[k], &small.radical, s);
                Case::expect(l.is_some() == (r.is_some() && tail), || {
                    format!(
                        "{} S={}: amalgamated {}, factor {}, extra condition {tail}",
                        n_label(case, k, true),
                        set_label(case.amalg.ring2(), s.members()),
                        l.is_some(),
                        r.is_some()
                    )
                })
            })
            .collect()
    })
}

pub(super) fn ca2_1(c: &Corpus) -> Outcome {
    second_factor_claim(c, false, |case, k, small, big, _| {
        let (l, r) = (big.holds(K::Primary, None), small.holds(K::Primary, None));
        vec![Case::expect(l == r, || format!("{}: amalgamated primary {l}, factor primary {r}", n_label(case, k, true)))]
    })
}

pub(super) fn ca2_2(c: &Corpus) -> Outcome {
    second_factor_claim(c, false, |case, k, small, big, _| {
        let one = MultClosedSet::trivial(case.amalg.ring2());
        let l = big.holds(K::WeaklyPrimary, None);
        let r = small.holds(K::WeaklyPrimary, None);
        let tail = second_tail(&case.amalg, &case.m2_lattice[k], &small.radical, &one);
        vec![Case::expect(l == (r && tail), || {
            format!("{}: amalgamated weakly primary {l}, factor {r}, extra condition {tail}", n_label(case, k, true))
        })]
    })
}

/// Duplications: first side, second side and the factor, per multiplicative set.
fn dup_claim(c: &Corpus, body: impl Fn(&AmalgCase, usize, &View, &View, &View, &[MultClosedSet], &[MultClosedSet]) -> Vec<Case> + Sync) -> Outcome {
    tally(&amalg_rows(c, false, true), |&(ci, k)| {
        let case = &c.amalgamations[ci];
        let sides = first_side(case, k).and_then(|f| second_side(case, k).map(|s| (f, s)));
        let (first, second) = match sides {
            Ok(x) => x,
            Err(e) => return vec![Case::Fail(format!("{}: {e}", ctx(&case.amalg)))],
        };
        let small = View::new(case.amalg.module1(), &case.m1_lattice[k]);
        let b1 = View::new(case.amalg.module(), &first.big);
        let b2 = View::new(case.amalg.module(), &second.big);
        body(case, k, &small, &b1, &b2, &first.big_sets, &second.big_sets)
    })
}

pub(super) fn dup(c: &Corpus) -> Outcome {
    dup_claim(c, |case, k, small, b1, b2, s1, s2| {
        let x = small.witness_many(K::SPrimary, &case.s1);
        let y = b1.witness_many(K::SPrimary, s1);
        let z = b2.witness_many(K::SPrimary, s2);
        (0..case.s1.len())
            .map(|i| {
                let (a, b, d) = (x[i].is_some(), y[i].is_some(), z[i].is_some());
                Case::expect(a == b && b == d, || {
                    format!("{} S={}: N {a}, N⋈J {b}, N̄ {d}", n_label(case, k, false), set_label(case.amalg.ring1(), case.s1[i].members()))
                })
            })
            .collect()
    })
}

pub(super) fn dup1(c: &Corpus) -> Outcome {
    dup_claim(c, |case, k, small, b1, _, s1, _| {
        let x = small.witness_many(K::WeaklySPrimary, &case.s1);
        let y = b1.witness_many(K::WeaklySPrimary, s1);
        (0..case.s1.len())
            .map(|i| {
                let tail = first_tail(&case.amalg, &case.m1_lattice[k], &small.radical, &case.s1[i], true);
                let (l, r) = (y[i].is_some(), x[i].is_some());
                Case::expect(l == (r && tail), || {
                    format!(
                        "{} S={}: N⋈J {l}, N {r}, extra condition {tail}",
                        n_label(case, k, false),
                        set_label(case.amalg.ring1(), case.s1[i].members())
                    )
                })
            })
            .collect()
    })
}

fn dup2_variant(c: &Corpus, primary: bool) -> Outcome {
    let kind = if primary { K::WeaklySPrimary } else { K::WeaklySPrime };
    dup_claim(c, move |case, k, small, _, b2, _, s2| {
        let x = small.witness_many(kind, &case.s1);
        let z = b2.witness_many(kind, s2);
        let target = if primary { &small.radical } else { &small.residual };
        (0..case.s1.len())
            .map(|i| {
                let tail = second_tail(&case.amalg, &case.m1_lattice[k], target, &case.s1[i]);
                let (l, r) = (z[i].is_some(), x[i].is_some());
                Case::expect(l == (r && tail), || {
                    format!(
                        "{} S={}: N̄ {kind} {l}, N {r}, extra condition {tail}",
                        n_label(case, k, false),
                        set_label(case.amalg.ring1(), case.s1[i].members())
                    )
                })
            })
            .collect()
    })
}

pub(super) fn dup2(c: &Corpus) -> Outcome {
    dup2_variant(c, false)
}

pub(super) fn dup2_primary(c: &Corpus) -> Outcome {
    dup2_variant(c, true)
}
