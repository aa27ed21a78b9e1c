//! C interface to the `opposition` library.
//!
//! Every function returns an [`OppStatus`]; on failure a message is kept in
//! thread-local storage and can be copied out with [`opp_last_error`].
//! Handles are opaque and must be released with their `_free` function.
//! Strings are NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use opposition::coxeter::{parse_coxeter_graph, GraphAutomorphism, RootSystem};
use opposition::diagrams::{class_representative, displacement, enumerate_admissible, Admissibility, PiClass};
use opposition::engine::BuildingView;
use opposition::geometry::{
    parse_automorphism_file, random_automorphism, AutomorphismKind, FlagGeometry, GeometryAutomorphism, GeometrySpec,
};
use opposition::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OppStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Capacity = 5,
    NotStable = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// Kind of automorphism requested from [`opp_automorphism_random`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OppKind {
    Collineation = 0,
    Duality = 1,
}

/// A built flag geometry.
pub struct OppGeometry {
    geom: FlagGeometry,
}

/// A collineation or duality of a specific geometry.
pub struct OppAutomorphism {
    spec: GeometrySpec,
    theta: GeometryAutomorphism,
}

/// Summary of one analysis. Type sets are bit masks over node indices
/// (bit `i` is node label `i + 1`).
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OppAnalysis {
    pub opposition_type: u64,
    pub capped: bool,
    pub domestic: bool,
    pub admissible: bool,
    pub duality: bool,
    pub order: u64,
    pub measured_displacement: u32,
    pub formula_displacement: u32,
    pub invariant_violations: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> OppStatus {
    match e {
        Error::Parse(_) => OppStatus::Parse,
        Error::Capacity(_) => OppStatus::Capacity,
        Error::NotStable(_) => OppStatus::NotStable,
        _ => OppStatus::InvalidInput,
    }
}

fn fail(status: OppStatus, msg: impl Into<String>) -> OppStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), OppStatus>) -> OppStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OppStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(OppStatus::Internal, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, OppStatus>;
}

impl<T> OrStatus<T> for opposition::Result<T> {
    fn or_status(self) -> Result<T, OppStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, OppStatus> {
    if p.is_null() {
        return Err(fail(OppStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(OppStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, OppStatus> {
    p.as_mut().ok_or_else(|| fail(OppStatus::NullPointer, "null output pointer"))
}

unsafe fn in_ref<'a, T>(p: *const T) -> Result<&'a T, OppStatus> {
    p.as_ref().ok_or_else(|| fail(OppStatus::NullPointer, "null handle"))
}

unsafe fn labels<'a>(p: *const u32, len: usize) -> Result<&'a [u32], OppStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(OppStatus::NullPointer, "null label array"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn automorphism_of(graph: &opposition::coxeter::CoxeterGraph, pi: &str) -> Result<GraphAutomorphism, OppStatus> {
    match pi.trim() {
        "" => Ok(GraphAutomorphism::identity(graph.rank(), graph.all())),
        s => match s.parse::<PiClass>() {
            Ok(c) => class_representative(graph, c).or_status(),
            Err(_) => GraphAutomorphism::parse_cycles(graph, s).or_status(),
        },
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to fit) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn opp_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// `ℓ(w₀) − ℓ(w_{S∖J})` for a type string such as `E7` and circled labels.
///
/// # Safety
/// `type_name` must be a valid C string and `circled` must point to `len` labels.
#[no_mangle]
pub unsafe extern "C" fn opp_displacement(
    type_name: *const c_char,
    circled: *const u32,
    len: usize,
    out: *mut u32,
) -> OppStatus {
    guard(|| {
        let graph = parse_coxeter_graph(text(type_name)?).or_status()?;
        let rs = RootSystem::new(&graph).or_status()?;
        let j = graph.node_set(labels(circled, len)?).or_status()?;
        *out_ref(out)? = displacement(&rs, j) as u32;
        Ok(())
    })
}

/// Admissibility of a diagram. `pi` is empty, a class (`id`, `op2`,
/// `tri3`) or explicit cycles such as `(1,6)(3,5)`.
///
/// # Safety
/// Strings must be valid C strings and `circled` must point to `len` labels.
#[no_mangle]
pub unsafe extern "C" fn opp_is_admissible(
    type_name: *const c_char,
    circled: *const u32,
    len: usize,
    pi: *const c_char,
    out: *mut bool,
) -> OppStatus {
    guard(|| {
        let graph = parse_coxeter_graph(text(type_name)?).or_status()?;
        let rs = RootSystem::new(&graph).or_status()?;
        let j = graph.node_set(labels(circled, len)?).or_status()?;
        let pi = automorphism_of(&graph, text(pi)?)?;
        *out_ref(out)? = Admissibility::new(&rs).check(j, &pi);
        Ok(())
    })
}

/// Number of admissible diagrams for a type and automorphism.
///
/// # Safety
/// Strings must be valid C strings.
#[no_mangle]
pub unsafe extern "C" fn opp_count_admissible(type_name: *const c_char, pi: *const c_char, out: *mut usize) -> OppStatus {
    guard(|| {
        let graph = parse_coxeter_graph(text(type_name)?).or_status()?;
        let rs = RootSystem::new(&graph).or_status()?;
        let pi = automorphism_of(&graph, text(pi)?)?;
        *out_ref(out)? = enumerate_admissible(&rs, &pi).len();
        Ok(())
    })
}

/// Builds a geometry from a spec such as `A3@2` or `B3@2`.
///
/// # Safety
/// `spec` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_geometry_build(spec: *const c_char, out: *mut *mut OppGeometry) -> OppStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let spec: GeometrySpec = text(spec)?.parse().or_status()?;
        let geom = FlagGeometry::build(spec).or_status()?;
        *slot = Box::into_raw(Box::new(OppGeometry { geom }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`opp_geometry_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opp_geometry_free(g: *mut OppGeometry) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Rank, vertex count and chamber count.
///
/// # Safety
/// `g` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_geometry_counts(
    g: *const OppGeometry,
    rank: *mut usize,
    vertices: *mut usize,
    chambers: *mut usize,
) -> OppStatus {
    guard(|| {
        let g = &in_ref(g)?.geom;
        *out_ref(rank)? = g.rank();
        *out_ref(vertices)? = g.vertex_count();
        *out_ref(chambers)? = g.chamber_count();
        Ok(())
    })
}

fn wrap(spec: GeometrySpec, theta: GeometryAutomorphism, out: &mut *mut OppAutomorphism) {
    *out = Box::into_raw(Box::new(OppAutomorphism { spec, theta }));
}

/// Parses the automorphism file format.
///
/// # Safety
/// `contents` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_automorphism_parse(contents: *const c_char, out: *mut *mut OppAutomorphism) -> OppStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let (spec, theta) = parse_automorphism_file(text(contents)?).or_status()?;
        wrap(spec, theta, slot);
        Ok(())
    })
}

/// A seeded random automorphism of the given kind.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_automorphism_random(
    g: *const OppGeometry,
    seed: u64,
    kind: OppKind,
    out: *mut *mut OppAutomorphism,
) -> OppStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let g = &in_ref(g)?.geom;
        let kind = match kind {
            OppKind::Collineation => AutomorphismKind::Collineation,
            OppKind::Duality => AutomorphismKind::Duality,
        };
        wrap(g.spec(), random_automorphism(g, seed, kind).or_status()?, slot);
        Ok(())
    })
}

/// The symplectic polarity of a projective space of even dimension.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_automorphism_symplectic_polarity(
    g: *const OppGeometry,
    out: *mut *mut OppAutomorphism,
) -> OppStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let g = &in_ref(g)?.geom;
        wrap(g.spec(), g.symplectic_polarity().or_status()?, slot);
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a live automorphism handle.
#[no_mangle]
pub unsafe extern "C" fn opp_automorphism_free(a: *mut OppAutomorphism) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Full analysis, including the invariant suite.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_analyze(
    g: *const OppGeometry,
    a: *const OppAutomorphism,
    out: *mut OppAnalysis,
) -> OppStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let g = &in_ref(g)?.geom;
        let a = in_ref(a)?;
        if a.spec != g.spec() {
            return Err(fail(OppStatus::InvalidInput, format!("automorphism of {}, geometry {}", a.spec, g.spec())));
        }
        let view = BuildingView::new(g).or_status()?;
        let p = view.prepare(&a.theta).or_status()?;
        let report = view.analyze("ffi", &p);
        *slot = OppAnalysis {
            opposition_type: view.opposition_type(&p).0,
            capped: report.capped,
            domestic: report.domestic,
            admissible: report.admissible,
            duality: p.action.duality,
            order: report.order,
            measured_displacement: report.measured_displacement as u32,
            formula_displacement: report.formula_displacement as u32,
            invariant_violations: view.check_invariants(&p).len() as u32,
        };
        Ok(())
    })
}

/// Writes the one-line `key=value` analysis record into `buf`. `needed`
/// receives the record length including the terminating NUL; when `len` is
/// too small nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// Handles must be live; `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn opp_analysis_record(
    g: *const OppGeometry,
    a: *const OppAutomorphism,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> OppStatus {
    guard(|| {
        let g = &in_ref(g)?.geom;
        let a = in_ref(a)?;
        let view = BuildingView::new(g).or_status()?;
        let p = view.prepare(&a.theta).or_status()?;
        let record = view.analyze("ffi", &p).to_kv();
        *out_ref(needed)? = record.len() + 1;
        if buf.is_null() || len < record.len() + 1 {
            return Err(fail(OppStatus::BufferTooSmall, format!("{} bytes needed", record.len() + 1)));
        }
        std::ptr::copy_nonoverlapping(record.as_ptr(), buf.cast::<u8>(), record.len());
        *buf.add(record.len()) = 0;
        Ok(())
    })
}

/// Whether the automorphism maps no simplex of type `mask` to an opposite.
/// `mask` must be stable under the twisted opposition, else `NotStable`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opp_is_j_domestic(
    g: *const OppGeometry,
    a: *const OppAutomorphism,
    mask: u64,
    out: *mut bool,
) -> OppStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let g = &in_ref(g)?.geom;
        let a = in_ref(a)?;
        let view = BuildingView::new(g).or_status()?;
        let p = view.prepare(&a.theta).or_status()?;
        let j = opposition::coxeter::NodeSet(mask);
        if !j.is_subset(g.graph().all()) {
            return Err(fail(OppStatus::InvalidInput, "mask exceeds rank"));
        }
        *slot = view.is_j_domestic(&p, j).or_status()?;
        Ok(())
    })
}
