use std::ffi::{CStr, CString};
use std::ptr;

use sprimary_ffi::*;

struct Fixture {
    ring: *mut SpRing,
    module: *mut SpModule,
    sub: *mut SpSubmodule,
    set: *mut SpMultSet,
}

impl Fixture {
    /// `Z_n` regular, `N = (g)`, `S` generated by `s`.
    fn new(n: usize, g: usize, s: usize) -> Fixture {
        let mut f = Fixture { ring: ptr::null_mut(), module: ptr::null_mut(), sub: ptr::null_mut(), set: ptr::null_mut() };
        unsafe {
            assert_eq!(sp_ring_zn(n, &mut f.ring), SpStatus::Ok);
            assert_eq!(sp_module_regular(f.ring, &mut f.module), SpStatus::Ok);
            assert_eq!(sp_submodule_span(f.module, &g, 1, &mut f.sub), SpStatus::Ok);
            assert_eq!(sp_multset_closure(f.ring, &s, 1, &mut f.set), SpStatus::Ok);
        }
        f
    }

    fn check(&self, kind: SpPredicateKind, with_set: bool) -> (SpStatus, SpVerdict) {
        let mut v = SpVerdict::default();
        let set = if with_set { self.set as *const _ } else { ptr::null() };
        let st = unsafe { sp_check(self.module, self.sub, kind, set, &mut v) };
        (st, v)
    }
}

impl Drop for Fixture {
    fn drop(&mut self) {
        unsafe {
            sp_multset_free(self.set);
            sp_submodule_free(self.sub);
            sp_module_free(self.module);
            sp_ring_free(self.ring);
        }
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sp_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn weakly_s_primary_fixture_reports_witness() {
    let f = Fixture::new(36, 6, 3);
    unsafe {
        assert_eq!(sp_ring_order(f.ring), 36);
        assert_eq!(sp_submodule_size(f.sub), 6);
        assert_eq!(sp_multset_size(f.set), 3);
    }
    let (st, v) = f.check(SpPredicateKind::WeaklySPrimary, true);
    assert_eq!(st, SpStatus::Ok);
    assert!(v.holds && v.has_witness && !v.has_counterexample);
    assert_eq!(v.witness, 3);
}

#[test]
fn failing_predicate_reports_counterexample() {
    let f = Fixture::new(12, 6, 5);
    let (st, v) = f.check(SpPredicateKind::WeaklyPrimary, false);
    assert_eq!(st, SpStatus::Ok);
    assert!(!v.holds && v.has_counterexample && !v.has_witness);
    assert_eq!((v.a, v.m), (2, 3));
}

#[test]
fn precondition_failures_map_to_status_codes() {
    // S generated by 2 meets ((4) : Z_12) = (4).
    let f = Fixture::new(12, 4, 2);
    let (st, _) = f.check(SpPredicateKind::WeaklySPrimary, true);
    assert_eq!(st, SpStatus::NotDisjoint);
    assert!(!last_error().is_empty());

    let g = Fixture::new(12, 1, 5);
    let (st, _) = g.check(SpPredicateKind::Primary, false);
    assert_eq!(st, SpStatus::NotProper);

    let (st, _) = f.check(SpPredicateKind::SPrimary, false);
    assert_eq!(st, SpStatus::InvalidArgument);
}

#[test]
fn null_and_out_of_range_arguments_are_rejected() {
    unsafe {
        assert_eq!(sp_ring_zn(4, ptr::null_mut()), SpStatus::NullArgument);
        let mut r = ptr::null_mut();
        assert_eq!(sp_ring_zn(1, &mut r), SpStatus::InvalidArgument);
        assert_eq!(sp_ring_zn(1000, &mut r), SpStatus::CapExceeded);
        assert!(last_error().contains("exceeding cap"));
        assert_eq!(sp_ring_zn(6, &mut r), SpStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(sp_module_reduction(r, 4, &mut m), SpStatus::InvalidArgument);
        assert_eq!(sp_module_reduction(r, 3, &mut m), SpStatus::Ok);
        let mut s = ptr::null_mut();
        let bad = 7usize;
        assert_eq!(sp_submodule_span(m, &bad, 1, &mut s), SpStatus::InvalidArgument);
        assert_eq!(sp_submodule_span(m, ptr::null(), 0, &mut s), SpStatus::Ok);
        assert_eq!(sp_submodule_size(s), 1);
        assert_eq!(sp_ring_order(ptr::null()), 0);
        sp_submodule_free(s);
        sp_module_free(m);
        sp_ring_free(r);
        sp_ring_free(ptr::null_mut());
    }
}

#[test]
fn mismatched_handles_are_rejected() {
    let a = Fixture::new(12, 6, 5);
    let b = Fixture::new(12, 6, 5);
    let mut v = SpVerdict::default();
    let st = unsafe { sp_check(a.module, b.sub, SpPredicateKind::Prime, ptr::null(), &mut v) };
    assert_eq!(st, SpStatus::InvalidArgument);
    let c = Fixture::new(10, 5, 3);
    let st = unsafe { sp_check(a.module, a.sub, SpPredicateKind::WeaklySPrimary, c.set, &mut v) };
    assert_eq!(st, SpStatus::InvalidArgument);
}

#[test]
fn direct_sum_and_enumeration() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(sp_ring_zn(4, &mut r), SpStatus::Ok);
        let (mut a, mut b, mut sum) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(sp_module_regular(r, &mut a), SpStatus::Ok);
        assert_eq!(sp_module_reduction(r, 2, &mut b), SpStatus::Ok);
        let parts = [a as *const SpModule, b as *const SpModule];
        assert_eq!(sp_module_direct_sum(parts.as_ptr(), 2, &mut sum), SpStatus::Ok);
        assert_eq!(sp_module_order(sum), 8);
        let mut count = 0usize;
        assert_eq!(sp_module_enumerate(a, &mut count), SpStatus::Ok);
        assert_eq!(count, 3);
        // Z_4 ⊕ Z_2: 0, Z_2 in either slot, the diagonal <(2,1)>, <(1,0)>,
        // <(1,1)>, <(2,0),(0,1)> and the whole module.
        assert_eq!(sp_module_enumerate(sum, &mut count), SpStatus::Ok);
        assert_eq!(count, 8);
        sp_module_free(sum);
        sp_module_free(b);
        sp_module_free(a);
        sp_ring_free(r);
    }
}

#[test]
fn verify_returns_json_report() {
    let ids = CString::new("E1-4,INT-CE-Z72").unwrap();
    let mut json = ptr::null_mut();
    let mut pass = false;
    let st = unsafe { sp_verify(ids.as_ptr(), 0, &mut json, &mut pass) };
    assert_eq!(st, SpStatus::Ok);
    assert!(pass);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { sp_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["version", "params_fingerprint", "results", "claims"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 2);
    assert!(claims.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn verify_rejects_unknown_claims() {
    let ids = CString::new("NOPE").unwrap();
    let mut json = ptr::null_mut();
    let mut pass = false;
    let st = unsafe { sp_verify(ids.as_ptr(), 0, &mut json, &mut pass) };
    assert_eq!(st, SpStatus::UnknownClaim);
    assert!(json.is_null());
    assert!(last_error().contains("NOPE"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sprimary.h")).unwrap();
    for name in [
        "sp_ring_zn",
        "sp_module_regular",
        "sp_module_reduction",
        "sp_module_direct_sum",
        "sp_module_enumerate",
        "sp_submodule_span",
        "sp_multset_closure",
        "sp_check",
        "sp_verify",
        "sp_string_free",
        "sp_last_error_message",
        "typedef struct SpVerdict",
        "SP_STATUS_NOT_DISJOINT",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
