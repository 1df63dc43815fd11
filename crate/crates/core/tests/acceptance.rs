//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. All comparisons are exact.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{mask, Naive};
use sprimary::harness::{verify, ClaimReport, Corpus, CorpusParams, Report, Status};
use sprimary::{check, Error, FiniteModule, FiniteRing, MultClosedSet, PredicateKind};

use std::sync::Arc;

struct Ctx {
    corpus: Corpus,
    report: Report,
}

impl Ctx {
    fn claim(&self, id: &str) -> &ClaimReport {
        self.report.claims.iter().find(|c| c.claim_id == id).unwrap_or_else(|| panic!("claim {id} missing"))
    }

    /// Ids whose status is FAIL, with their first counterexample.
    fn failing(&self, ids: &[&str]) -> Vec<String> {
        ids.iter()
            .map(|id| self.claim(id))
            .filter(|c| c.status == Status::Fail)
            .map(|c| format!("{} ({} failures, e.g. {})", c.claim_id, c.failures, c.counterexamples.first().map_or("", |s| s)))
            .collect()
    }

    fn vacuous<'a>(&self, ids: &[&'a str]) -> Vec<&'a str> {
        ids.iter().copied().filter(|id| self.claim(id).status == Status::Vacuous).collect()
    }
}

type Verdict = Result<String, String>;

fn zn(n: usize) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::zn(n).unwrap())
}

fn all_pass(ctx: &Ctx, ids: &[&str]) -> Verdict {
    let bad = ctx.failing(ids);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let checked: usize = ids.iter().map(|id| ctx.claim(id).instances_checked).sum();
    let vac = ctx.vacuous(ids);
    Ok(if vac.is_empty() {
        format!("{checked} instances, 0 counterexamples")
    } else {
        format!("{checked} instances, 0 counterexamples, VACUOUS: {}", vac.join(","))
    })
}

fn within(elapsed: Duration, limit: Duration, v: Verdict) -> Verdict {
    match v {
        Ok(s) if elapsed > limit => Err(format!("{s}; took {elapsed:?}, limit {limit:?}")),
        other => other,
    }
}

/// Library `check` against the naive oracle on every small corpus module.
fn oracle_equivalence(ctx: &Ctx) -> Verdict {
    let mut compared = 0usize;
    for entry in ctx.corpus.modules.iter().filter(|m| m.module.order() <= 16) {
        let m = &entry.module;
        let naive = Naive::new(m);
        let mut lib: Vec<Vec<usize>> = m.submodules().unwrap().iter().map(|n| n.iter().collect()).collect();
        lib.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        if lib != naive.all_submodules() {
            return Err(format!("{}: submodule lattice differs from subset scan", m.id()));
        }
        let sets = &ctx.corpus.rings[entry.ring].mult_sets;
        for (ni, n) in entry.eval.lattice.iter().enumerate() {
            let sub = mask(m.order(), n.iter());
            for (si, s) in sets.iter().enumerate() {
                let members: Vec<usize> = s.iter().collect();
                for kind in PredicateKind::ALL {
                    let (want, want_w) = naive.decide(&sub, kind, &members);
                    let got = check(m, n, kind, Some(s));
                    let ok = match &got {
                        Ok(v) => {
                            v.holds == want
                                && v.witness == want_w
                                && v.counterexample
                                    .as_ref()
                                    .is_none_or(|c| kind.uses_mult_set() || naive.violates(&sub, kind, c.a, c.m))
                        }
                        Err(Error::NotDisjoint) => kind.uses_mult_set() && !want,
                        Err(Error::NotProper) => !kind.uses_mult_set() && n.len() == m.order(),
                        Err(_) => false,
                    };
                    let cached = entry.eval.holds(ni, kind, si) == want;
                    if !ok || !cached {
                        return Err(format!(
                            "{} N={} S={:?} {kind}: oracle {want} {want_w:?}, library {got:?}, cached {}",
                            m.id(),
                            m.set_label(n.members()),
                            members,
                            entry.eval.holds(ni, kind, si)
                        ));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} (module, submodule, set, kind) verdicts agree"))
}

fn s_of(r: &FiniteRing, g: usize) -> MultClosedSet {
    MultClosedSet::closure(r, &[g]).unwrap()
}

/// Oracle confirmation of the separating fixtures, plus the harness claims.
fn fixtures(ctx: &Ctx) -> Verdict {
    let mut notes = Vec::new();
    // (a) Z_36, N = (6), S = {3, 9, 27}.
    let r = zn(36);
    let m = FiniteModule::regular(r.clone());
    let n = m.span(&[6]);
    let s: Vec<usize> = s_of(&r, 3).iter().collect();
    if s != [3, 9, 27] {
        return Err(format!("closure of 3 in Z_36 is {s:?}"));
    }
    let (h, w) = Naive::new(&m).decide(&mask(36, n.iter()), PredicateKind::WeaklySPrimary, &s);
    if !h {
        return Err("(a) Z_36 (6) not weakly S-primary".into());
    }
    notes.push(format!("(a) witness {}", w.unwrap()));
    // (b) Z_72, (4) ∩ (9) = (36).
    let r = zn(72);
    let m = FiniteModule::regular(r.clone());
    let meet = m.span(&[4]).intersection(&m.span(&[9]));
    let naive = Naive::new(&m);
    let sub = mask(72, meet.iter());
    let s: Vec<usize> = s_of(&r, 3).iter().collect();
    let (wsp, w) = naive.decide(&sub, PredicateKind::WeaklySPrimary, &s);
    let (wp, _) = naive.decide(&sub, PredicateKind::WeaklyPrimary, &[]);
    if meet.iter().collect::<Vec<_>>() != [0, 36] || !wsp || wp || w != Some(9) {
        return Err(format!("(b) Z_72: weakly S-primary {wsp} witness {w:?}, weakly primary {wp}"));
    }
    notes.push("(b) witness 9, not weakly primary".into());
    // (c) Z_k ⊕ Z_6 with S generated by 2, in the documented candidate order.
    let mut chosen = None;
    let mut rejected = Vec::new();
    for (k, n) in [(4usize, 12usize), (5, 30), (7, 42)] {
        let r = zn(n);
        let parts = [Arc::new(FiniteModule::reduction(r.clone(), k).unwrap()), Arc::new(FiniteModule::reduction(r.clone(), 6).unwrap())];
        let m = FiniteModule::direct_sum(&parts, &Default::default()).unwrap();
        let naive = Naive::new(&m);
        let s: Vec<usize> = s_of(&r, 2).iter().collect();
        let zero = mask(m.order(), [m.zero()]);
        let (wsp, _) = naive.decide(&zero, PredicateKind::WeaklySPrimary, &s);
        let good: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&t| {
                let col = mask(m.order(), m.elements().filter(|&x| m.act(t, x) == m.zero()));
                naive.decide(&col, PredicateKind::WeaklyPrimary, &[]).0
            })
            .collect();
        if wsp && good.is_empty() {
            chosen = Some(format!("Z{k}+Z6 over Z{n}"));
            break;
        }
        rejected.push(format!("Z{k}+Z6 over Z{n} (weakly primary (0:s) for s in {good:?})"));
    }
    let Some(chosen) = chosen else { return Err("(c) no candidate separates".into()) };
    let ex11 = ctx.claim("EX11");
    if !ex11.notes.iter().any(|n| n.contains(&chosen)) {
        return Err(format!("(c) oracle picks {chosen}, harness notes {:?}", ex11.notes));
    }
    if !rejected.is_empty() && !ex11.notes.iter().any(|n| n.starts_with("substituted for:")) {
        return Err("(c) substitution not recorded".into());
    }
    notes.push(format!("(c) {chosen}, substituted for {}", rejected.join(", ")));
    // (d) Z_10 ⊕ Z_10 over Z_90, S generated by 3: (0 : M) = (10).
    let r = zn(90);
    let ten = Arc::new(FiniteModule::reduction(r.clone(), 10).unwrap());
    let m = FiniteModule::direct_sum(&[ten.clone(), ten], &Default::default()).unwrap();
    let s: Vec<usize> = s_of(&r, 3).iter().collect();
    let (wsp, _) = Naive::new(&m).decide(&mask(m.order(), [m.zero()]), PredicateKind::WeaklySPrimary, &s);
    let reg = FiniteModule::regular(r.clone());
    let ann = Naive::new(&m).residual(&mask(m.order(), [m.zero()]));
    let ideal_wsp = Naive::new(&reg).decide(&ann, PredicateKind::WeaklySPrimary, &s).0;
    if !wsp || ideal_wsp {
        return Err(format!("(d) zero weakly S-primary {wsp}, (0:M) weakly S-primary {ideal_wsp}"));
    }
    notes.push("(d) 0 weakly S-primary, (10) not".into());
    all_pass(ctx, &["E1-4", "INT-CE-Z72", "EX11", "NM-CE"])?;
    Ok(notes.join("; "))
}

fn determinism(first: &Report) -> Verdict {
    let params = CorpusParams::default();
    let again = verify(&Corpus::generate(&params).map_err(|e| e.to_string())?, &[]).map_err(|e| e.to_string())?;
    let a = serde_json::to_string(&first.without_timing()).unwrap();
    let b = serde_json::to_string(&again.without_timing()).unwrap();
    if a != b {
        return Err("reports differ outside timing fields".into());
    }
    if first.params_fingerprint != params.fingerprint() {
        return Err("fingerprint does not match params".into());
    }
    Ok(format!("identical reports, fingerprint {}", &first.params_fingerprint[..16]))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = Corpus::generate(&CorpusParams::default()).expect("default corpus");
    let report = verify(&corpus, &[]).expect("all claims run");
    let ctx = Ctx { corpus, report };
    let ms = |id: &str| Duration::from_millis(ctx.claim(id).elapsed_ms);

    let mut results: Vec<(&str, Verdict)> = Vec::new();
    let t = Instant::now();
    let v = oracle_equivalence(&ctx);
    results.push(("oracle equivalence, module order <= 16", within(t.elapsed(), Duration::from_secs(120), v)));
    results.push((
        "CHAR-EQ",
        within(ms("CHAR-EQ"), Duration::from_secs(600), all_pass(&ctx, &["CHAR-EQ"])).and_then(|s| {
            if ctx.corpus.params.char_ring_order >= 36 {
                Ok(format!("{s}, rings up to order {}", ctx.corpus.params.char_ring_order))
            } else {
                Err("corpus stops below order 36".into())
            }
        }),
    ));
    results.push(("FM", all_pass(&ctx, &["FM"])));
    results.push(("IM", all_pass(&ctx, &["IM"])));
    results.push(("separating fixtures", fixtures(&ctx)));
    results.push(("SAT", all_pass(&ctx, &["SAT"])));
    let cart_time = ms("CART") + ms("CART3");
    let cart = all_pass(&ctx, &["CART", "CART3"]).and_then(|s| {
        let n = ctx.claim("CART3").instances_checked;
        if n >= 100 {
            Ok(format!("{s}; {n} three-factor instances"))
        } else {
            Err(format!("only {n} three-factor instances"))
        }
    });
    results.push(("CART / CART3", within(cart_time, Duration::from_secs(600), cart)));
    let family = [
        "IDEAL", "IDEAL-RAD", "HA", "AMALG-1", "AMALG-2", "AMALG2-1", "AMALG2-2", "CA1-1", "CA1-2", "CA2-1", "CA2-2", "DUP",
        "DUP1",
    ];
    let family_time: Duration = family.iter().chain(["DUP2", "DUP2-PRIMARY"].iter()).map(|id| ms(id)).sum();
    let fam = all_pass(&ctx, &family).and_then(|s| {
        let d2 = ctx.claim("DUP2");
        let d2p = ctx.claim("DUP2-PRIMARY");
        if d2.instances_checked == 0 || d2p.instances_checked == 0 {
            return Err("duplication tail variants were not evaluated".into());
        }
        let big = ctx.corpus.amalgamations.iter().map(|a| a.amalg.module().order()).max().unwrap_or(0);
        Ok(format!("{s}; DUP2 as printed {:?}, primary reading {:?}; largest amalgamated module {big}", d2.status, d2p.status))
    });
    results.push(("IDEAL / HA / AMALG / DUP family", within(family_time, Duration::from_secs(900), fam)));
    results.push((
        "hierarchy and transfer",
        all_pass(
            &ctx,
            &[
                "HIERARCHY", "NM-1", "NM-2", "NM-3", "NM-4", "IS-1", "IS-2", "P1-1", "P1-2", "LOC-1", "LOC-2", "F-1", "F-2",
                "QUOT-1", "QUOT-2", "QUOT-3", "INT-1", "INT-2",
            ],
        ),
    ));
    results.push(("determinism", determinism(&ctx.report)));

    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        match v {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass ({:.1?})", results.len() - failed, results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
