//! C ABI for the gtomo library.
//!
//! Handles are opaque pointers created and freed by this library. Every
//! fallible call returns a [`GtStatus`]; on failure a thread-local message
//! is available through [`gt_last_error_message`]. Complex data crosses the
//! boundary as interleaved doubles `re0, im0, re1, im1, …` in row-major
//! matrix order.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use gtomo::finite_group::FiniteGroup;
use gtomo::inverse::{decide, StochasticFamily};
use gtomo::irrep::IrrepRegistry;
use gtomo::linalg::CMat;
use gtomo::naimark::certify_positive;
use gtomo::tomography::{reconstruct_function, tomogram, DensityState};
use num_complex::Complex64;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NumericalError = 5,
}

/// Opaque finite group handle.
pub struct GtGroup {
    inner: Arc<FiniteGroup>,
}

/// Opaque registry handle: one group with its irreducible representations.
pub struct GtRegistry {
    inner: IrrepRegistry,
}

/// Inverse-problem verdict, mirrored as plain C data.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GtVerdict {
    pub compatible: i32,
    pub hermitian: i32,
    pub positive: i32,
    pub accepted: i32,
    pub compatibility_residual: f64,
    pub hermiticity_residual: f64,
    pub min_naimark_eigenvalue: f64,
    pub tomogram_residual: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: GtStatus, message: &str) -> GtStatus {
    set_error(message);
    status
}

/// Message describing the most recent failure on this thread. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn guard<F: FnOnce() -> GtStatus>(f: F) -> GtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(GtStatus::NumericalError, "internal panic"),
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, GtStatus> {
    if ptr.is_null() {
        return Err(GtStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| GtStatus::InvalidUtf8)
}

fn complex_slice(values: *const f64, len: usize) -> Vec<Complex64> {
    let raw = unsafe { std::slice::from_raw_parts(values, 2 * len) };
    raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

fn write_complex_matrix(out: *mut f64, m: &CMat) {
    let mut offset = 0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            unsafe {
                *out.add(offset) = z.re;
                *out.add(offset + 1) = z.im;
            }
            offset += 2;
        }
    }
}

// ---------------------------------------------------------------------
// Groups.
// ---------------------------------------------------------------------

/// Build a validated group from its JSON document
/// `{"name": …, "order": K, "mul_table": [[…]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gt_group_from_json(
    json: *const c_char,
    out: *mut *mut GtGroup,
) -> GtStatus {
    guard(|| {
        if out.is_null() {
            return fail(GtStatus::NullArgument, "out pointer is null");
        }
        let text = match cstr(json) {
            Ok(t) => t,
            Err(s) => return fail(s, "group JSON pointer invalid"),
        };
        let doc: gtomo::io::GroupJson = match serde_json::from_str(text) {
            Ok(d) => d,
            Err(e) => return fail(GtStatus::ParseError, &format!("group JSON: {e}")),
        };
        match gtomo::io::group_from_json(&doc) {
            Ok(group) => {
                *out = Box::into_raw(Box::new(GtGroup { inner: group }));
                GtStatus::Ok
            }
            Err(e) => fail(GtStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Order of the group.
///
/// # Safety
/// `group` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gt_group_order(group: *const GtGroup) -> u32 {
    if group.is_null() {
        return 0;
    }
    (*group).inner.order() as u32
}

/// Free a group handle; a null pointer is ignored.
///
/// # Safety
/// `group` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gt_group_free(group: *mut GtGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

// ---------------------------------------------------------------------
// Registries.
// ---------------------------------------------------------------------

/// Load one of the built-in registries: "S3" or "Z2".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gt_registry_builtin(
    name: *const c_char,
    out: *mut *mut GtRegistry,
) -> GtStatus {
    guard(|| {
        if out.is_null() {
            return fail(GtStatus::NullArgument, "out pointer is null");
        }
        let name = match cstr(name) {
            Ok(t) => t,
            Err(s) => return fail(s, "name pointer invalid"),
        };
        let registry = match name {
            "S3" => gtomo::fixtures::s3_registry(),
            "Z2" => gtomo::fixtures::z2_registry(),
            other => {
                return fail(
                    GtStatus::InvalidInput,
                    &format!("unknown builtin registry {other:?}"),
                )
            }
        };
        *out = Box::into_raw(Box::new(GtRegistry { inner: registry }));
        GtStatus::Ok
    })
}

/// Load a registry from its JSON document `{"group": …, "irreps": […]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gt_registry_from_json(
    json: *const c_char,
    out: *mut *mut GtRegistry,
) -> GtStatus {
    guard(|| {
        if out.is_null() {
            return fail(GtStatus::NullArgument, "out pointer is null");
        }
        let text = match cstr(json) {
            Ok(t) => t,
            Err(s) => return fail(s, "registry JSON pointer invalid"),
        };
        let doc: gtomo::io::RegistryJson = match serde_json::from_str(text) {
            Ok(d) => d,
            Err(e) => return fail(GtStatus::ParseError, &format!("registry JSON: {e}")),
        };
        match gtomo::io::registry_from_json(&doc) {
            Ok(registry) => {
                *out = Box::into_raw(Box::new(GtRegistry { inner: registry }));
                GtStatus::Ok
            }
            Err(e) => fail(GtStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Group order of the registry's group.
///
/// # Safety
/// `registry` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gt_registry_group_order(registry: *const GtRegistry) -> u32 {
    if registry.is_null() {
        return 0;
    }
    (*registry).inner.group().order() as u32
}

/// Dimension of a labelled irrep, or 0 when the label is unknown.
///
/// # Safety
/// `registry` must be a live handle, `label` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gt_registry_irrep_dim(
    registry: *const GtRegistry,
    label: *const c_char,
) -> u32 {
    if registry.is_null() {
        return 0;
    }
    let label = match cstr(label) {
        Ok(t) => t,
        Err(_) => return 0,
    };
    (*registry)
        .inner
        .find(label)
        .map(|d| d.dim() as u32)
        .unwrap_or(0)
}

/// Free a registry handle; a null pointer is ignored.
///
/// # Safety
/// `registry` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gt_registry_free(registry: *mut GtRegistry) {
    if !registry.is_null() {
        drop(Box::from_raw(registry));
    }
}

// ---------------------------------------------------------------------
// Naimark positivity.
// ---------------------------------------------------------------------

/// Certify positivity of a group function given as K interleaved complex
/// values. Writes the K ascending Naimark eigenvalues to `out_eigenvalues`
/// and 1/0 to `out_positive`.
///
/// # Safety
/// `values` must hold 2K doubles, `out_eigenvalues` K doubles.
#[no_mangle]
pub unsafe extern "C" fn gt_naimark_certify(
    group: *const GtGroup,
    values: *const f64,
    out_eigenvalues: *mut f64,
    out_positive: *mut i32,
) -> GtStatus {
    guard(|| {
        if group.is_null() || values.is_null() || out_eigenvalues.is_null() || out_positive.is_null()
        {
            return fail(GtStatus::NullArgument, "null argument");
        }
        let g = (*group).inner.clone();
        let k = g.order();
        let vec = complex_slice(values, k);
        let f = match gtomo::group_algebra::GroupFunction::new(g, vec) {
            Ok(f) => f,
            Err(e) => return fail(GtStatus::InvalidInput, &e.to_string()),
        };
        let cert = certify_positive(&f);
        for (i, v) in cert.eigenvalues.iter().enumerate() {
            *out_eigenvalues.add(i) = *v;
        }
        *out_positive = cert.is_positive() as i32;
        GtStatus::Ok
    })
}

// ---------------------------------------------------------------------
// Tomograms and reconstruction.
// ---------------------------------------------------------------------

/// Tomogram of a density state: writes K·n doubles (element-major) to
/// `out_vectors`. The state is an n×n interleaved complex matrix.
///
/// # Safety
/// `state` must hold 2n² doubles; `out_vectors` K·n doubles.
#[no_mangle]
pub unsafe extern "C" fn gt_tomogram(
    registry: *const GtRegistry,
    irrep_label: *const c_char,
    state: *const f64,
    out_vectors: *mut f64,
) -> GtStatus {
    guard(|| {
        if registry.is_null() || state.is_null() || out_vectors.is_null() {
            return fail(GtStatus::NullArgument, "null argument");
        }
        let label = match cstr(irrep_label) {
            Ok(t) => t,
            Err(s) => return fail(s, "irrep label invalid"),
        };
        let reg = &(*registry).inner;
        let d = match reg.find(label) {
            Some(d) => d,
            None => return fail(GtStatus::InvalidInput, &format!("unknown irrep {label:?}")),
        };
        let n = d.dim();
        let entries = complex_slice(state, n * n);
        let matrix = CMat::from_fn(n, n, |i, j| entries[i * n + j]);
        let rho = match DensityState::new(matrix, 1e-9) {
            Ok(r) => r,
            Err(e) => return fail(GtStatus::InvalidInput, &e.to_string()),
        };
        match tomogram(&rho, d) {
            Ok(tom) => {
                let mut offset = 0;
                for v in &tom.vectors {
                    for &w in v {
                        *out_vectors.add(offset) = w;
                        offset += 1;
                    }
                }
                GtStatus::Ok
            }
            Err(e) => fail(GtStatus::NumericalError, &e.to_string()),
        }
    })
}

/// Reconstruct ρ = (n/K) Σ φ(g)* D(g) from K interleaved complex values of
/// a group function. Writes the n×n interleaved matrix and the minimum
/// eigenvalue of its Hermitian part.
///
/// # Safety
/// `phi` must hold 2K doubles and `out_matrix` 2n² doubles.
#[no_mangle]
pub unsafe extern "C" fn gt_reconstruct(
    registry: *const GtRegistry,
    irrep_label: *const c_char,
    phi: *const f64,
    out_matrix: *mut f64,
    out_min_eigenvalue: *mut f64,
) -> GtStatus {
    guard(|| {
        if registry.is_null() || phi.is_null() || out_matrix.is_null() {
            return fail(GtStatus::NullArgument, "null argument");
        }
        let label = match cstr(irrep_label) {
            Ok(t) => t,
            Err(s) => return fail(s, "irrep label invalid"),
        };
        let reg = &(*registry).inner;
        let d = match reg.find(label) {
            Some(d) => d,
            None => return fail(GtStatus::InvalidInput, &format!("unknown irrep {label:?}")),
        };
        let k = reg.group().order();
        let values = complex_slice(phi, k);
        let f = match gtomo::group_algebra::GroupFunction::new(reg.group().clone(), values) {
            Ok(f) => f,
            Err(e) => return fail(GtStatus::InvalidInput, &e.to_string()),
        };
        let (rho, diagnostics) = reconstruct_function(&f, d);
        write_complex_matrix(out_matrix, &rho);
        if !out_min_eigenvalue.is_null() {
            *out_min_eigenvalue = diagnostics.min_eigenvalue;
        }
        GtStatus::Ok
    })
}

/// Decide whether K stochastic n-vectors (element-major doubles) form the
/// tomogram of a density state. Fills `out_verdict`; when accepted and
/// `out_state` is non-null, also writes the recovered n×n matrix.
///
/// # Safety
/// `tau` must hold K·n doubles, `out_state` (when non-null) 2n² doubles.
#[no_mangle]
pub unsafe extern "C" fn gt_decide(
    registry: *const GtRegistry,
    irrep_label: *const c_char,
    tau: *const f64,
    out_verdict: *mut GtVerdict,
    out_state: *mut f64,
) -> GtStatus {
    guard(|| {
        if registry.is_null() || tau.is_null() || out_verdict.is_null() {
            return fail(GtStatus::NullArgument, "null argument");
        }
        let label = match cstr(irrep_label) {
            Ok(t) => t,
            Err(s) => return fail(s, "irrep label invalid"),
        };
        let reg = &(*registry).inner;
        let d = match reg.find(label) {
            Some(d) => d,
            None => return fail(GtStatus::InvalidInput, &format!("unknown irrep {label:?}")),
        };
        let k = reg.group().order();
        let n = d.dim();
        let raw = std::slice::from_raw_parts(tau, k * n);
        let vectors: Vec<Vec<f64>> = raw.chunks_exact(n).map(|c| c.to_vec()).collect();
        let family = match StochasticFamily::new(reg.group().clone(), label, vectors) {
            Ok(f) => f,
            Err(e) => return fail(GtStatus::InvalidInput, &e.to_string()),
        };
        let verdict = match decide(&family, d, Some(reg)) {
            Ok(v) => v,
            Err(e) => return fail(GtStatus::NumericalError, &e.to_string()),
        };
        *out_verdict = GtVerdict {
            compatible: verdict.compatible as i32,
            hermitian: verdict.hermitian as i32,
            positive: verdict.positive as i32,
            accepted: verdict.accepted() as i32,
            compatibility_residual: verdict.compatibility_residual,
            hermiticity_residual: verdict.hermiticity_residual,
            min_naimark_eigenvalue: verdict.certificate.min_eigenvalue,
            tomogram_residual: verdict.tomogram_residual.unwrap_or(f64::NAN),
        };
        if let (Some(state), false) = (&verdict.recovered_state, out_state.is_null()) {
            write_complex_matrix(out_state, state.matrix());
        }
        GtStatus::Ok
    })
}
