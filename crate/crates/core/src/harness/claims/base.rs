//! Claims about a single module, checked on every corpus instance.

use std::sync::Arc;

use crate::harness::corpus::{Corpus, ModuleEntry};
use crate::harness::{tally, Case, Outcome};
use crate::ideal::{zero_divisors_mod, Ideal, MultClosedSet};
use crate::localize::LocalizedModule;
use crate::module::{FiniteModule, RadicalMethod, Submodule};
use crate::predicate::{char_conditions, fm_condition, PredicateKind as K, View};
use crate::ring::set_label;
use crate::set::ElemSet;

fn rows(c: &Corpus) -> Vec<(usize, usize)> {
    c.modules
        .iter()
        .enumerate()
        .flat_map(|(mi, m)| (0..m.eval.lattice.len()).map(move |n| (mi, n)))
        .collect()
}

fn sub_label(me: &ModuleEntry, n: usize) -> String {
    me.module.set_label(me.eval.lattice[n].members())
}

pub(super) fn inst(c: &Corpus, mi: usize, n: usize, s: usize) -> String {
    let me = &c.modules[mi];
    format!(
        "M={} N={} S={}",
        me.module.id(),
        sub_label(me, n),
        set_label(me.module.ring(), c.mult_set(mi, s).members())
    )
}

fn sets(c: &Corpus, mi: usize) -> &[MultClosedSet] {
    &c.rings[c.modules[mi].ring].mult_sets
}

fn disjoint(me: &ModuleEntry, n: usize, s: &MultClosedSet) -> bool {
    !s.meets(&me.eval.residual[n])
}

pub(super) fn char_eq(c: &Corpus) -> Outcome {
    let inst_list = c.base_instances();
    tally(&inst_list, |&(mi, n, s)| {
        let me = &c.modules[mi];
        let set = c.mult_set(mi, s);
        if me.module.ring().order() > c.params.char_ring_order || !disjoint(me, n, set) {
            return vec![Case::Skip];
        }
        let case = match char_conditions(&me.module, &me.eval.lattice[n], set) {
            Ok(cc) => {
                let h = [cc.c1.holds, cc.c2.holds, cc.c3.holds, cc.c4.holds, cc.c5.holds];
                Case::expect(h.iter().all(|&x| x == h[0]), || format!("{}: conditions {:?}", inst(c, mi, n, s), h))
            }
            Err(e) => Case::Fail(format!("{}: {e}", inst(c, mi, n, s))),
        };
        vec![case]
    })
}

pub(super) fn fm(c: &Corpus) -> Outcome {
    let inst_list = c.base_instances();
    tally(&inst_list, |&(mi, n, s)| {
        let me = &c.modules[mi];
        if !(me.eval.faithful && me.eval.multiplication) {
            return vec![Case::Skip];
        }
        let lhs = me.eval.wsp(n, s);
        let case = match fm_condition(&me.module, &me.eval.lattice[n], c.mult_set(mi, s)) {
            Ok(cond) => Case::expect(cond.holds == lhs, || {
                format!("{}: weakly S-primary {lhs}, product form {}", inst(c, mi, n, s), cond.holds)
            }),
            Err(e) => Case::Fail(format!("{}: {e}", inst(c, mi, n, s))),
        };
        vec![case]
    })
}

pub(super) fn nm1(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let reg = c.regular_of(mi);
        let m = &me.module;
        let ks: Vec<(Ideal, usize)> = me
            .eval
            .lattice
            .iter()
            .filter(|k| m.annihilator_of(k).is_zero())
            .map(|k| {
                let res = m.residual_by(&me.eval.lattice[n], k);
                let pos = reg.eval.position(res.members());
                (res, pos)
            })
            .collect();
        let faithless = me.eval.lattice.len() - ks.len();
        let mut out = Vec::new();
        for (s, set) in sets(c, mi).iter().enumerate() {
            let hyp = me.eval.wsp(n, s);
            out.extend(std::iter::repeat_with(|| Case::Skip).take(faithless));
            for (res, pos) in &ks {
                out.push(Case::check(hyp && !set.meets(res), || {
                    if reg.eval.wsp(*pos, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: (N:K)={} is not weakly S-primary", inst(c, mi, n, s), set_label(m.ring(), res.members())))
                    }
                }));
            }
        }
        out
    })
}

pub(super) fn nm2(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let reg = c.regular_of(mi);
        let pos = reg.eval.position(me.eval.residual[n].members());
        (0..sets(c, mi).len())
            .map(|s| {
                Case::check(me.eval.multiplication && reg.eval.wsp(pos, s), || {
                    if me.eval.wsp(n, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: (N:M) weakly S-primary but N is not", inst(c, mi, n, s)))
                    }
                })
            })
            .collect()
    })
}

/// (ideal position in the regular lattice, position of IM).
fn ideal_images(c: &Corpus, mi: usize) -> Vec<(usize, usize)> {
    let me = &c.modules[mi];
    let reg = c.regular_of(mi);
    reg.eval
        .lattice
        .iter()
        .enumerate()
        .map(|(p, i)| {
            let ideal = Ideal::from_set_unchecked(i.members().clone());
            (p, me.eval.index_of(&me.module.ideal_action(&ideal)))
        })
        .collect()
}

pub(super) fn nm3(c: &Corpus) -> Outcome {
    let mods: Vec<usize> = (0..c.modules.len()).collect();
    tally(&mods, |&mi| {
        let me = &c.modules[mi];
        let reg = c.regular_of(mi);
        let count = reg.eval.lattice.len() * sets(c, mi).len();
        if !(me.eval.faithful && me.eval.multiplication) {
            return std::iter::repeat_with(|| Case::Skip).take(count).collect();
        }
        let mut out = Vec::new();
        for (p, im) in ideal_images(c, mi) {
            for s in 0..sets(c, mi).len() {
                let (a, b) = (reg.eval.wsp(p, s), me.eval.wsp(im, s));
                out.push(Case::expect(a == b, || {
                    format!(
                        "{}: I={} weakly S-primary {a}, IM={} weakly S-primary {b}",
                        inst(c, mi, im, s),
                        sub_label(reg, p),
                        sub_label(me, im)
                    )
                }));
            }
        }
        out
    })
}

pub(super) fn nm4(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let m = &me.module;
        let r = m.ring();
        let nsub = &me.eval.lattice[n];
        let mut ts: Vec<Vec<usize>> = r.elements().map(|t| vec![t]).collect();
        if r.order() <= c.params.pair_closures_up_to {
            for a in r.elements() {
                for b in a + 1..r.order() {
                    ts.push(vec![a, b]);
                }
            }
        }
        let zd = if me.eval.residual[n].is_proper(r) {
            zero_divisors_mod(r, &me.eval.residual[n])
        } else {
            ElemSet::full(r.order())
        };
        let zero = m.zero_submodule();
        let mut out = Vec::new();
        for t in &ts {
            let t_ok = m.residual_in_module(&zero, t).is_zero() && t.iter().all(|&x| !zd.contains(x));
            let pos = me.eval.index_of(&m.residual_in_module(nsub, t));
            for s in 0..sets(c, mi).len() {
                out.push(Case::check(t_ok && me.eval.wsp(n, s), || {
                    if me.eval.wsp(pos, s) {
                        Ok(())
                    } else {
                        let labels: Vec<&str> = t.iter().map(|&x| r.label(x)).collect();
                        Err(format!("{}: T={{{}}} gives (N:T)={} not weakly S-primary", inst(c, mi, n, s), labels.join(","), sub_label(me, pos)))
                    }
                }));
            }
        }
        out
    })
}

pub(super) fn im(c: &Corpus) -> Outcome {
    let mods: Vec<usize> = (0..c.modules.len()).collect();
    tally(&mods, |&mi| {
        let me = &c.modules[mi];
        let reg = c.regular_of(mi);
        let nsets = sets(c, mi).len();
        if !(me.eval.faithful && me.eval.multiplication) {
            return std::iter::repeat_with(|| Case::Skip).take(me.eval.lattice.len() * nsets).collect();
        }
        let images = ideal_images(c, mi);
        let mut out = Vec::new();
        for n in 0..me.eval.lattice.len() {
            let res = reg.eval.position(me.eval.residual[n].members());
            for s in 0..nsets {
                let a = me.eval.wsp(n, s);
                let b = reg.eval.wsp(res, s);
                let d = images.iter().any(|&(p, im)| im == n && reg.eval.wsp(p, s));
                out.push(Case::expect(a == b && b == d, || {
                    format!("{}: N {a}, (N:M) {b}, some weakly S-primary I with IM=N {d}", inst(c, mi, n, s))
                }));
            }
        }
        out
    })
}

pub(super) fn maximal(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let r = me.module.ring();
        let res = &me.eval.residual[n];
        let rad = &me.eval.radical[n];
        let zd_ok = res.is_proper(r)
            && zero_divisors_mod(r, res).is_subset(rad.members())
            && me.eval.zero_divisors.is_subset(rad.members());
        let bigger: Vec<usize> = (0..me.eval.lattice.len())
            .filter(|&k| k != n && me.eval.lattice[n].is_subset(&me.eval.lattice[k]))
            .collect();
        (0..sets(c, mi).len())
            .map(|s| {
                let hyp = zd_ok && me.eval.wsp(n, s) && bigger.iter().all(|&k| !me.eval.wsp(k, s));
                Case::check(hyp, || {
                    if me.eval.holds(n, K::SPrimary, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: maximal weakly S-primary but not S-primary", inst(c, mi, n, s)))
                    }
                })
            })
            .collect()
    })
}

/// Lattice position of `(N :_M x)` for every ring element `x`.
fn colons(me: &ModuleEntry, n: usize) -> Vec<usize> {
    me.module
        .ring()
        .elements()
        .map(|x| me.eval.index_of(&me.module.residual_in_module(&me.eval.lattice[n], &[x])))
        .collect()
}

pub(super) fn is1(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let col = colons(me, n);
        sets(c, mi)
            .iter()
            .enumerate()
            .map(|(s, set)| {
                let hyp = disjoint(me, n, set) && set.iter().any(|x| me.eval.plain[col[x]][2]);
                Case::check(hyp, || {
                    if me.eval.wsp(n, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: some (N:s) weakly primary but N not weakly S-primary", inst(c, mi, n, s)))
                    }
                })
            })
            .collect()
    })
}

pub(super) fn is2(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let col = colons(me, n);
        let nonzero = !me.eval.lattice[n].is_zero();
        sets(c, mi)
            .iter()
            .enumerate()
            .map(|(s, set)| {
                let hyp = nonzero && me.eval.wsp(n, s) && set.members().is_disjoint(&me.eval.zero_divisors);
                Case::check(hyp, || {
                    if set.iter().any(|x| me.eval.plain[col[x]][2]) {
                        Ok(())
                    } else {
                        Err(format!("{}: no (N:s) is weakly primary", inst(c, mi, n, s)))
                    }
                })
            })
            .collect()
    })
}

pub(super) fn p1_1(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let reg = c.regular_of(mi);
        let nsets = sets(c, mi).len();
        if !(me.eval.faithful && me.eval.multiplication) {
            return std::iter::repeat_with(|| Case::Skip).take(nsets).collect();
        }
        let rad = me
            .module
            .m_radical(&me.eval.lattice[n], RadicalMethod::Auto)
            .map(|x| me.eval.index_of(&x));
        let zero = reg.eval.position(&ElemSet::singleton(reg.module.order(), reg.module.zero()));
        (0..nsets)
            .map(|s| {
                Case::check(me.eval.wsp(n, s) && reg.eval.holds(zero, K::SPrimary, s), || match &rad {
                    Ok(p) if me.eval.holds(*p, K::SPrime, s) => Ok(()),
                    Ok(p) => Err(format!("{}: M-rad(N)={} is not S-prime", inst(c, mi, n, s), sub_label(me, *p))),
                    Err(e) => Err(format!("{}: {e}", inst(c, mi, n, s))),
                })
            })
            .collect()
    })
}

pub(super) fn p1_2(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let nsets = sets(c, mi).len();
        if !(me.eval.faithful && me.eval.multiplication) {
            return std::iter::repeat_with(|| Case::Skip).take(2 * nsets).collect();
        }
        let m = &me.module;
        let nsub = &me.eval.lattice[n];
        let facts = (|| -> crate::Result<(bool, bool)> {
            let sq = m.submodule_product(nsub, nsub)?.is_zero();
            let same = m.m_radical(nsub, RadicalMethod::Auto)? == m.m_radical(&m.zero_submodule(), RadicalMethod::Auto)?;
            Ok((sq, same))
        })();
        let reduced_nonzero = m.ring().is_reduced() && !nsub.is_zero();
        let mut out = Vec::new();
        for s in 0..nsets {
            let wsp = me.eval.wsp(n, s);
            let sp = me.eval.holds(n, K::SPrimary, s);
            out.push(Case::check(wsp && !sp, || match facts {
                Ok((true, true)) => Ok(()),
                Ok((sq, same)) => Err(format!("{}: N^2=0 {sq}, M-rad(N)=M-rad(0) {same}", inst(c, mi, n, s))),
                Err(ref e) => Err(format!("{}: {e}", inst(c, mi, n, s))),
            }));
            out.push(Case::check(reduced_nonzero, || {
                if wsp == sp {
                    Ok(())
                } else {
                    Err(format!("{}: reduced ring, nonzero N, weakly {wsp} vs S-primary {sp}", inst(c, mi, n, s)))
                }
            }));
        }
        out
    })
}

/// `∃ s ∈ S ∀ t ∈ S: (N :_M t) ⊆ (N :_M s)`.
fn colon_dominated(me: &ModuleEntry, col: &[usize], set: &MultClosedSet) -> bool {
    set.iter().any(|s| set.iter().all(|t| me.eval.lattice[col[t]].is_subset(&me.eval.lattice[col[s]])))
}

fn loc_cases(c: &Corpus, converse: bool) -> Outcome {
    let pairs: Vec<(usize, usize)> = c
        .modules
        .iter()
        .enumerate()
        .flat_map(|(mi, m)| (0..c.rings[m.ring].mult_sets.len()).map(move |s| (mi, s)))
        .collect();
    tally(&pairs, |&(mi, s)| {
        let me = &c.modules[mi];
        let set = c.mult_set(mi, s);
        let count = me.eval.lattice.len();
        if set.contains_zero(me.module.ring()) {
            return std::iter::repeat_with(|| Case::Skip).take(count).collect();
        }
        let loc = match LocalizedModule::new(me.module.clone(), set) {
            Ok(l) => l,
            Err(e) => {
                return (0..count).map(|n| Case::Fail(format!("{}: localization failed: {e}", inst(c, mi, n, s)))).collect()
            }
        };
        let no_zd = set.members().is_disjoint(&me.eval.zero_divisors);
        (0..count)
            .map(|n| {
                let local = loc.submodule(&me.eval.lattice[n]);
                let local_wp = View::new(loc.module(), &local).holds(K::WeaklyPrimary, None);
                let col = colons(me, n);
                let wsp = me.eval.wsp(n, s);
                if converse {
                    let hyp = no_zd && local_wp && colon_dominated(me, &col, set);
                    Case::check(hyp, || {
                        if wsp {
                            Ok(())
                        } else {
                            Err(format!("{}: S^-1 N weakly primary but N not weakly S-primary", inst(c, mi, n, s)))
                        }
                    })
                } else {
                    Case::check(wsp, || {
                        if !local_wp {
                            Err(format!("{}: S^-1 N={} is not weakly primary", inst(c, mi, n, s), loc.module().set_label(local.members())))
                        } else if no_zd && !colon_dominated(me, &col, set) {
                            Err(format!("{}: no s with (N:t) ⊆ (N:s) for all t", inst(c, mi, n, s)))
                        } else {
                            Ok(())
                        }
                    })
                }
            })
            .collect()
    })
}

pub(super) fn loc1(c: &Corpus) -> Outcome {
    loc_cases(c, false)
}

pub(super) fn loc2(c: &Corpus) -> Outcome {
    loc_cases(c, true)
}

pub(super) fn sat(c: &Corpus) -> Outcome {
    let saturated: Vec<Vec<MultClosedSet>> =
        c.rings.iter().map(|r| r.mult_sets.iter().map(|s| s.saturate(&r.ring)).collect()).collect();
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let v = View::new(&me.module, &me.eval.lattice[n]);
        let star = v.witness_many(K::WeaklySPrimary, &saturated[me.ring]);
        star.iter()
            .enumerate()
            .map(|(s, w)| {
                let a = me.eval.wsp(n, s);
                Case::expect(a == w.is_some(), || format!("{}: S gives {a}, saturation gives {}", inst(c, mi, n, s), w.is_some()))
            })
            .collect()
    })
}

/// Every (module, K) with the quotient map `M -> M/K`.
fn quotient_rows(c: &Corpus) -> Vec<(usize, usize)> {
    rows(c)
}

/// Lattice index of `N`, then witnesses for `N` and for `N/K`, one per set.
type QuotientRow = (usize, Vec<Option<usize>>, Vec<Option<usize>>);

/// For each `N ⊇ K`: verdicts of `N` and of `N/K` in `M/K`, per multiplicative set.
fn quotient_table(c: &Corpus, mi: usize, k: usize) -> crate::Result<Vec<QuotientRow>> {
    let me = &c.modules[mi];
    let ksub = &me.eval.lattice[k];
    let (q, proj) = me.module.quotient(ksub)?;
    let mut out = Vec::new();
    for (n, nsub) in me.eval.lattice.iter().enumerate() {
        if !ksub.is_subset(nsub) {
            continue;
        }
        let image = proj.image(nsub)?;
        let v = View::new(&q, &image);
        out.push((n, v.witness_many(K::WeaklySPrimary, sets(c, mi)), v.witness_many(K::SPrimary, sets(c, mi))));
    }
    Ok(out)
}

fn quotient_claim(c: &Corpus, body: impl Fn(usize, usize, usize, usize, bool) -> Vec<Case> + Sync) -> Outcome {
    tally(&quotient_rows(c), |&(mi, k)| match quotient_table(c, mi, k) {
        Ok(table) => {
            let mut out = Vec::new();
            for (n, wsp_q, _) in table {
                for (s, w) in wsp_q.iter().enumerate() {
                    out.extend(body(mi, k, n, s, w.is_some()));
                }
            }
            out
        }
        Err(e) => vec![Case::Fail(format!("M={} K={}: {e}", c.modules[mi].module.id(), sub_label(&c.modules[mi], k)))],
    })
}

pub(super) fn f1(c: &Corpus) -> Outcome {
    quotient_claim(c, |mi, k, n, s, image_wsp| {
        let me = &c.modules[mi];
        vec![Case::check(me.eval.wsp(n, s), || {
            if image_wsp {
                Ok(())
            } else {
                Err(format!("{}: image under M -> M/{} is not weakly S-primary", inst(c, mi, n, s), sub_label(me, k)))
            }
        })]
    })
}

pub(super) fn quot1(c: &Corpus) -> Outcome {
    quotient_claim(c, |mi, k, n, s, image_wsp| {
        let me = &c.modules[mi];
        vec![Case::check(me.eval.wsp(n, s), || {
            if image_wsp {
                Ok(())
            } else {
                Err(format!("{}: N/K with K={} is not weakly S-primary", inst(c, mi, n, s), sub_label(me, k)))
            }
        })]
    })
}

pub(super) fn quot3(c: &Corpus) -> Outcome {
    tally(&quotient_rows(c), |&(mi, k)| {
        let me = &c.modules[mi];
        let table = match quotient_table(c, mi, k) {
            Ok(t) => t,
            Err(e) => return vec![Case::Fail(format!("M={}: {e}", me.module.id()))],
        };
        let mut out = Vec::new();
        for (n, wsp_q, _) in table {
            for (s, w) in wsp_q.iter().enumerate() {
                let q = w.is_some();
                out.push(Case::check(q && me.eval.wsp(k, s), || {
                    if me.eval.wsp(n, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: K={} and N/K weakly S-primary, N is not", inst(c, mi, n, s), sub_label(me, k)))
                    }
                }));
                out.push(Case::check(q && me.eval.holds(k, K::SPrimary, s), || {
                    if me.eval.holds(n, K::SPrimary, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: K={} S-primary and N/K weakly S-primary, N not S-primary", inst(c, mi, n, s), sub_label(me, k)))
                    }
                }));
            }
        }
        out
    })
}

/// Pulls every submodule of `M` back along the inclusion of the submodule
/// at position `k`, and compares verdicts. `require_disjoint` adds the
/// hypothesis that the pulled-back residual misses `S`.
fn pullback(c: &Corpus, require_disjoint: bool, what: &'static str) -> Outcome {
    tally(&rows(c), |&(mi, k)| {
        let me = &c.modules[mi];
        let ksub = &me.eval.lattice[k];
        let (sub, incl): (Arc<FiniteModule>, _) = match me.module.submodule_as_module(ksub) {
            Ok(x) => x,
            Err(e) => return vec![Case::Fail(format!("M={}: {e}", me.module.id()))],
        };
        let mut out = Vec::new();
        for (n, nsub) in me.eval.lattice.iter().enumerate() {
            let pre: Submodule = incl.preimage(nsub);
            let v = View::new(&sub, &pre);
            let verdicts = v.witness_many(K::WeaklySPrimary, sets(c, mi));
            for (s, w) in verdicts.iter().enumerate() {
                let set = c.mult_set(mi, s);
                let hyp = me.eval.wsp(n, s) && (!require_disjoint || !set.meets(&v.residual));
                out.push(Case::check(hyp, || {
                    if w.is_some() {
                        Ok(())
                    } else {
                        Err(format!(
                            "{}: {what} {} gives {} in {}, not weakly S-primary",
                            inst(c, mi, n, s),
                            sub_label(me, k),
                            sub.set_label(pre.members()),
                            sub.id()
                        ))
                    }
                }));
            }
        }
        out
    })
}

pub(super) fn f2(c: &Corpus) -> Outcome {
    pullback(c, false, "pullback along the inclusion of")
}

pub(super) fn f2_disjoint(c: &Corpus) -> Outcome {
    pullback(c, true, "pullback along the inclusion of")
}

pub(super) fn quot2(c: &Corpus) -> Outcome {
    pullback(c, false, "intersection with")
}

pub(super) fn quot2_disjoint(c: &Corpus) -> Outcome {
    pullback(c, true, "intersection with")
}

pub(super) fn int1(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let m = &me.module;
        let mut out = Vec::new();
        for (k, ksub) in me.eval.lattice.iter().enumerate() {
            let res = &me.eval.residual[k];
            let stable = &m.ideal_action(res) == ksub;
            let pos = me.eval.index_of(&me.eval.lattice[n].intersection(ksub));
            for (s, set) in sets(c, mi).iter().enumerate() {
                out.push(Case::check(stable && set.meets(res) && me.eval.wsp(n, s), || {
                    if me.eval.wsp(pos, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: K={} gives N∩K={} not weakly S-primary", inst(c, mi, n, s), sub_label(me, k), sub_label(me, pos)))
                    }
                }));
            }
        }
        out
    })
}

pub(super) fn int2(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let m = &me.module;
        let mut out = Vec::new();
        for k in 0..me.eval.lattice.len() {
            let pos = me.eval.index_of(&m.sum(&me.eval.lattice[n], &me.eval.lattice[k]));
            for (s, set) in sets(c, mi).iter().enumerate() {
                let hyp = me.eval.wsp(n, s) && me.eval.wsp(k, s) && !set.meets(&me.eval.residual[pos]);
                out.push(Case::check(hyp, || {
                    if me.eval.wsp(pos, s) {
                        Ok(())
                    } else {
                        Err(format!("{}: K={} gives N+K={} not weakly S-primary", inst(c, mi, n, s), sub_label(me, k), sub_label(me, pos)))
                    }
                }));
            }
        }
        out
    })
}

pub(super) fn hierarchy(c: &Corpus) -> Outcome {
    let inst_list = c.base_instances();
    tally(&inst_list, |&(mi, n, s)| {
        let me = &c.modules[mi];
        let e = &me.eval;
        let set = c.mult_set(mi, s);
        let h = |k: K| e.holds(n, k, s);
        let units = me.module.ring().units();
        let mut broken = Vec::new();
        let imp = [
            (K::Prime, K::Primary),
            (K::Primary, K::WeaklyPrimary),
            (K::SPrime, K::SPrimary),
            (K::SPrimary, K::WeaklySPrimary),
            (K::SPrime, K::WeaklySPrime),
            (K::WeaklySPrime, K::WeaklySPrimary),
        ];
        for (a, b) in imp {
            if h(a) && !h(b) {
                broken.push(format!("{a} but not {b}"));
            }
        }
        if disjoint(me, n, set) {
            for (a, b) in [(K::Prime, K::SPrime), (K::Primary, K::SPrimary), (K::WeaklyPrimary, K::WeaklySPrimary)] {
                if h(a) && !h(b) {
                    broken.push(format!("{a} with S disjoint but not {b}"));
                }
            }
        }
        if set.is_subset(units) {
            for (a, b) in [(K::Prime, K::SPrime), (K::Primary, K::SPrimary), (K::WeaklyPrimary, K::WeaklySPrimary)] {
                if h(a) != h(b) {
                    broken.push(format!("S of units: {a} {} vs {b} {}", h(a), h(b)));
                }
            }
        }
        vec![Case::expect(broken.is_empty(), || format!("{}: {}", inst(c, mi, n, s), broken.join("; ")))]
    })
}

pub(super) fn mrad(c: &Corpus) -> Outcome {
    tally(&rows(c), |&(mi, n)| {
        let me = &c.modules[mi];
        let m = &me.module;
        let nsub = &me.eval.lattice[n];
        if !me.eval.multiplication {
            return vec![Case::Skip];
        }
        let r = (|| -> crate::Result<Case> {
            let def = m.m_radical(nsub, RadicalMethod::Definition)?;
            let formula = m.m_radical(nsub, RadicalMethod::MultFormula)?;
            let res = m.residual(&def);
            Ok(Case::expect(def == formula && res == me.eval.radical[n], || {
                format!(
                    "M={} N={}: definition {} formula {}",
                    m.id(),
                    sub_label(me, n),
                    m.set_label(def.members()),
                    m.set_label(formula.members())
                )
            }))
        })();
        vec![r.unwrap_or_else(|e| Case::Fail(format!("M={}: {e}", m.id())))]
    })
}

pub(super) fn zero_submodule(c: &Corpus) -> Outcome {
    let pairs: Vec<(usize, usize)> = c
        .modules
        .iter()
        .enumerate()
        .flat_map(|(mi, m)| (0..c.rings[m.ring].mult_sets.len()).map(move |s| (mi, s)))
        .collect();
    tally(&pairs, |&(mi, s)| {
        let me = &c.modules[mi];
        let z = me.eval.index_of(&me.module.zero_submodule());
        vec![Case::check(disjoint(me, z, c.mult_set(mi, s)), || {
            if me.eval.wsp(z, s) {
                Ok(())
            } else {
                Err(format!("{}: zero submodule not weakly S-primary", inst(c, mi, z, s)))
            }
        })]
    })
}
