//! C ABI over the sprimary engine.
//!
//! Every structure is an opaque handle created by a `sp_*` constructor and
//! released with the matching `sp_*_free`. Functions return an [`SpStatus`];
//! on failure `sp_last_error_message` describes the error for the calling
//! thread. Elements are passed as indices into the structure's carrier.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use sprimary::harness::{self, Corpus, CorpusParams};
use sprimary::{Caps, Error, FiniteModule, FiniteRing, MultClosedSet, PredicateKind, Submodule};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    /// `(N : M)` meets `S`.
    NotDisjoint = 4,
    NotProper = 5,
    UnknownClaim = 6,
    LatticeTooLarge = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpPredicateKind {
    Prime = 0,
    Primary = 1,
    WeaklyPrimary = 2,
    SPrime = 3,
    WeaklySPrime = 4,
    SPrimary = 5,
    WeaklySPrimary = 6,
}

impl From<SpPredicateKind> for PredicateKind {
    fn from(k: SpPredicateKind) -> Self {
        match k {
            SpPredicateKind::Prime => PredicateKind::Prime,
            SpPredicateKind::Primary => PredicateKind::Primary,
            SpPredicateKind::WeaklyPrimary => PredicateKind::WeaklyPrimary,
            SpPredicateKind::SPrime => PredicateKind::SPrime,
            SpPredicateKind::WeaklySPrime => PredicateKind::WeaklySPrime,
            SpPredicateKind::SPrimary => PredicateKind::SPrimary,
            SpPredicateKind::WeaklySPrimary => PredicateKind::WeaklySPrimary,
        }
    }
}

/// Outcome of `sp_check`. `witness` is meaningful when `has_witness`, and
/// the pair `(a, m)` when `has_counterexample`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpVerdict {
    pub holds: bool,
    pub has_witness: bool,
    pub witness: usize,
    pub has_counterexample: bool,
    pub a: usize,
    pub m: usize,
}

pub struct SpRing(Arc<FiniteRing>);

pub struct SpModule(Arc<FiniteModule>);

pub struct SpSubmodule {
    module: Arc<FiniteModule>,
    sub: Submodule,
}

pub struct SpMultSet {
    ring: Arc<FiniteRing>,
    set: MultClosedSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::CapExceeded { .. } => SpStatus::CapExceeded,
        Error::NotDisjoint => SpStatus::NotDisjoint,
        Error::NotProper => SpStatus::NotProper,
        Error::UnknownClaim(_) => SpStatus::UnknownClaim,
        Error::LatticeTooLarge { .. } => SpStatus::LatticeTooLarge,
        _ => SpStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (SpStatus, String)>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SpStatus::Internal
        }
    }
}

fn fail(e: Error) -> (SpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (SpStatus, String) {
    (SpStatus::NullArgument, "null argument".to_string())
}

unsafe fn slice<'a>(p: *const usize, len: usize) -> Result<&'a [usize], (SpStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed<T>(out: *mut *mut T, value: T) {
    // SAFETY: callers check `out` for null before building the value.
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn sp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `Z_n` for `2 <= n <= 96`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_ring_zn(n: usize, out: *mut *mut SpRing) -> SpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        Caps::default().check_ring(n, "ring").map_err(fail)?;
        let r = FiniteRing::zn(n).map_err(fail)?;
        boxed(out, SpRing(Arc::new(r)));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from `sp_ring_zn` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sp_ring_free(ring: *mut SpRing) {
    free(ring)
}

/// # Safety
/// `ring` must be a live handle or null (giving 0).
#[no_mangle]
pub unsafe extern "C" fn sp_ring_order(ring: *const SpRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.order())
}

/// The ring as a module over itself.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_module_regular(ring: *const SpRing, out: *mut *mut SpModule) -> SpStatus {
    guard(|| {
        let (Some(r), false) = (ring.as_ref(), out.is_null()) else { return Err(null()) };
        boxed(out, SpModule(Arc::new(FiniteModule::regular(r.0.clone()))));
        Ok(())
    })
}

/// `Z_m` over the ring `Z_n`, for `m` dividing `n`.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_module_reduction(ring: *const SpRing, m: usize, out: *mut *mut SpModule) -> SpStatus {
    guard(|| {
        let (Some(r), false) = (ring.as_ref(), out.is_null()) else { return Err(null()) };
        let module = FiniteModule::reduction(r.0.clone(), m).map_err(fail)?;
        boxed(out, SpModule(Arc::new(module)));
        Ok(())
    })
}

/// Direct sum of `len` modules over one ring.
///
/// # Safety
/// `parts` must point to `len` live module handles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_module_direct_sum(
    parts: *const *const SpModule,
    len: usize,
    out: *mut *mut SpModule,
) -> SpStatus {
    guard(|| {
        if parts.is_null() || out.is_null() {
            return Err(null());
        }
        let mut ms = Vec::with_capacity(len);
        for &p in std::slice::from_raw_parts(parts, len) {
            ms.push(p.as_ref().ok_or_else(null)?.0.clone());
        }
        let m = FiniteModule::direct_sum(&ms, &Caps::default()).map_err(fail)?;
        boxed(out, SpModule(Arc::new(m)));
        Ok(())
    })
}

/// # Safety
/// `module` must come from a module constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sp_module_free(module: *mut SpModule) {
    free(module)
}

/// # Safety
/// `module` must be a live handle or null (giving 0).
#[no_mangle]
pub unsafe extern "C" fn sp_module_order(module: *const SpModule) -> usize {
    module.as_ref().map_or(0, |m| m.0.order())
}

/// Number of submodules of `module`.
///
/// # Safety
/// `module` must be a live handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_module_enumerate(module: *const SpModule, count: *mut usize) -> SpStatus {
    guard(|| {
        let (Some(m), false) = (module.as_ref(), count.is_null()) else { return Err(null()) };
        *count = m.0.submodules().map_err(fail)?.len();
        Ok(())
    })
}

/// Submodule generated by the `len` element indices in `gens`.
///
/// # Safety
/// `module` must be a live handle, `gens` must hold `len` indices (it may
/// be null when `len` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_submodule_span(
    module: *const SpModule,
    gens: *const usize,
    len: usize,
    out: *mut *mut SpSubmodule,
) -> SpStatus {
    guard(|| {
        let (Some(m), false) = (module.as_ref(), out.is_null()) else { return Err(null()) };
        let gens = slice(gens, len)?;
        if let Some(&g) = gens.iter().find(|&&g| g >= m.0.order()) {
            return Err((SpStatus::InvalidArgument, format!("element {g} out of range")));
        }
        boxed(out, SpSubmodule { module: m.0.clone(), sub: m.0.span(gens) });
        Ok(())
    })
}

/// # Safety
/// `sub` must come from `sp_submodule_span` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sp_submodule_free(sub: *mut SpSubmodule) {
    free(sub)
}

/// # Safety
/// `sub` must be a live handle or null (giving 0).
#[no_mangle]
pub unsafe extern "C" fn sp_submodule_size(sub: *const SpSubmodule) -> usize {
    sub.as_ref().map_or(0, |s| s.sub.len())
}

/// Multiplicative closure of the `len` ring elements in `gens`.
///
/// # Safety
/// `ring` must be a live handle, `gens` must hold `len` indices and `out`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_multset_closure(
    ring: *const SpRing,
    gens: *const usize,
    len: usize,
    out: *mut *mut SpMultSet,
) -> SpStatus {
    guard(|| {
        let (Some(r), false) = (ring.as_ref(), out.is_null()) else { return Err(null()) };
        let gens = slice(gens, len)?;
        if let Some(&g) = gens.iter().find(|&&g| g >= r.0.order()) {
            return Err((SpStatus::InvalidArgument, format!("element {g} out of range")));
        }
        let set = MultClosedSet::closure(&r.0, gens).map_err(fail)?;
        boxed(out, SpMultSet { ring: r.0.clone(), set });
        Ok(())
    })
}

/// # Safety
/// `set` must come from `sp_multset_closure` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sp_multset_free(set: *mut SpMultSet) {
    free(set)
}

/// # Safety
/// `set` must be a live handle or null (giving 0).
#[no_mangle]
pub unsafe extern "C" fn sp_multset_size(set: *const SpMultSet) -> usize {
    set.as_ref().map_or(0, |s| s.set.len())
}

/// Decides `kind` for `sub` in `module`. `set` may be null for kinds that
/// do not use a multiplicative set. Returns `NotDisjoint` or `NotProper`
/// when the kind's precondition fails.
///
/// # Safety
/// Handles must be live (or `set` null) and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sp_check(
    module: *const SpModule,
    sub: *const SpSubmodule,
    kind: SpPredicateKind,
    set: *const SpMultSet,
    out: *mut SpVerdict,
) -> SpStatus {
    guard(|| {
        let (Some(m), Some(n), false) = (module.as_ref(), sub.as_ref(), out.is_null()) else { return Err(null()) };
        if !Arc::ptr_eq(&m.0, &n.module) {
            return Err((SpStatus::InvalidArgument, "submodule belongs to another module".into()));
        }
        let s = match set.as_ref() {
            Some(s) if !s.ring.same_as(m.0.ring()) => {
                return Err((SpStatus::InvalidArgument, "multiplicative set lives in another ring".into()))
            }
            Some(s) => Some(&s.set),
            None => None,
        };
        let v = sprimary::check(&m.0, &n.sub, kind.into(), s).map_err(fail)?;
        *out = SpVerdict {
            holds: v.holds,
            has_witness: v.witness.is_some(),
            witness: v.witness.unwrap_or(0),
            has_counterexample: v.counterexample.is_some(),
            a: v.counterexample.as_ref().map_or(0, |c| c.a),
            m: v.counterexample.as_ref().map_or(0, |c| c.m),
        };
        Ok(())
    })
}

/// Runs the claim harness on the default corpus and returns the JSON
/// report in `json_out` (free it with `sp_string_free`). `claims` is a
/// comma-separated id list, or null or "all" for every claim.
/// `max_ring_order` of 0 keeps the default bound. `all_pass` receives
/// whether no claim failed.
///
/// # Safety
/// `claims` must be null or a NUL-terminated string; the out pointers must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_verify(
    claims: *const c_char,
    max_ring_order: usize,
    json_out: *mut *mut c_char,
    all_pass: *mut bool,
) -> SpStatus {
    guard(|| {
        if json_out.is_null() || all_pass.is_null() {
            return Err(null());
        }
        let spec = if claims.is_null() {
            "all".to_string()
        } else {
            CStr::from_ptr(claims)
                .to_str()
                .map_err(|_| (SpStatus::InvalidArgument, "claims is not UTF-8".to_string()))?
                .to_string()
        };
        let ids: Vec<String> = if spec.trim().eq_ignore_ascii_case("all") {
            Vec::new()
        } else {
            spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
        };
        let mut params = CorpusParams::default();
        if max_ring_order > 0 {
            params.max_ring_order = max_ring_order;
        }
        let corpus = Corpus::generate(&params).map_err(fail)?;
        let report = harness::verify(&corpus, &ids).map_err(fail)?;
        let text = serde_json::to_string(&report).map_err(|e| (SpStatus::Internal, e.to_string()))?;
        *all_pass = report.all_pass();
        *json_out = CString::new(text).map_err(|e| (SpStatus::Internal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library (e.g. `sp_verify`) or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
