//! C interface to the backlund library.
//!
//! Pairs live behind opaque `BkPair` handles; every function returns a
//! `BkStatus` and the failure message is kept per thread, readable with
//! [`bk_last_error_length`] / [`bk_last_error_message`]. The header is
//! generated into `include/backlund.h` at build time.

use backlund::conductor::{make_conjugate_conductor, solve_dispersion, AttenuatedWaveSpec};
use backlund::medium::Medium;
use backlund::residual::{
    centered_grid, maxwell_residual, wave_residual, EquationLabel, PairMember, ResidualReport,
};
use backlund::vacuum::{make_conjugate_vacuum, project_transverse, PlaneWaveSpec};
use backlund::vec3::{ComplexVec3, RealVec3};
use backlund::{fields::EMFieldPair, Complex64, Error};
use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Outcome of an interface call. Anything but `Ok` leaves a message
/// readable through `bk_last_error_message`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer,
    /// A scalar or vector argument is outside its admissible range.
    InvalidArgument,
    /// The amplitude has a component along the propagation direction.
    NotTransverse,
    /// Stored wavenumber/attenuation values disagree with the medium.
    DispersionMismatch,
    /// The requested grid cannot support the stencils.
    Grid,
    Internal,
}

/// Which member of a pair to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkField {
    Electric = 0,
    Magnetic,
}

/// Solved attenuation triple for a medium at one frequency.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BkDispersion {
    pub k: f64,
    pub s: f64,
    pub phi: f64,
}

/// Max and RMS interior residual of each governing equation, from one
/// run of the finite-difference checks.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BkResidualSummary {
    pub div_e_max: f64,
    pub div_e_rms: f64,
    pub div_b_max: f64,
    pub div_b_rms: f64,
    pub curl_e_max: f64,
    pub curl_e_rms: f64,
    pub curl_b_max: f64,
    pub curl_b_rms: f64,
    pub wave_e_max: f64,
    pub wave_e_rms: f64,
    pub wave_b_max: f64,
    pub wave_b_rms: f64,
}

/// Opaque handle: a conjugate field pair plus the medium and frequency
/// it was built for.
pub struct BkPair {
    pair: EMFieldPair,
    medium: Medium,
    omega: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn fail(status: BkStatus, message: impl Into<Vec<u8>>) -> BkStatus {
    let text = CString::new(message).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn fail_with(err: Error) -> BkStatus {
    let status = match &err {
        Error::NonTransverse { .. } => BkStatus::NotTransverse,
        Error::DispersionMismatch { .. } => BkStatus::DispersionMismatch,
        Error::InvalidGrid(_)
        | Error::BoundaryNode { .. }
        | Error::GridTooSmall { .. }
        | Error::NodeEvaluation { .. }
        | Error::InvalidSpacingSequence(_) => BkStatus::Grid,
        Error::Io(_) | Error::Json(_) => BkStatus::Internal,
        _ => BkStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

fn guarded(f: impl FnOnce() -> BkStatus) -> BkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(BkStatus::Internal, "internal panic"),
    }
}

/// Reads a `[3]` array argument; null is reported as such.
unsafe fn read3(ptr: *const f64) -> Option<[f64; 3]> {
    if ptr.is_null() {
        None
    } else {
        Some([*ptr, *ptr.add(1), *ptr.add(2)])
    }
}

unsafe fn write3(ptr: *mut f64, v: [f64; 3]) {
    for (i, value) in v.into_iter().enumerate() {
        *ptr.add(i) = value;
    }
}

unsafe fn complex_amplitude(re: *const f64, im: *const f64) -> Option<ComplexVec3> {
    let re = read3(re)?;
    let im = read3(im)?;
    Some(ComplexVec3 {
        x: Complex64::new(re[0], im[0]),
        y: Complex64::new(re[1], im[1]),
        z: Complex64::new(re[2], im[2]),
    })
}

fn unit_direction(v: [f64; 3]) -> Result<RealVec3, BkStatus> {
    RealVec3::new(v[0], v[1], v[2])
        .normalized()
        .ok_or_else(|| fail(BkStatus::InvalidArgument, "direction must be a nonzero vector"))
}

/// Number of bytes in the current thread's last error message, without
/// the trailing nul. Zero when the previous call succeeded.
#[no_mangle]
pub extern "C" fn bk_last_error_length() -> usize {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(0, |m| m.as_bytes().len()))
}

/// Copies the last error message (nul-terminated, truncated to fit) into
/// `buffer` and returns the number of bytes written without the nul.
/// Returns 0 when there is no pending message or the buffer is unusable.
#[no_mangle]
pub unsafe extern "C" fn bk_last_error_message(buffer: *mut c_char, length: usize) -> usize {
    if buffer.is_null() || length == 0 {
        return 0;
    }
    LAST_ERROR.with(|slot| {
        let borrow = slot.borrow();
        let Some(message) = borrow.as_ref() else {
            return 0;
        };
        let bytes = message.as_bytes();
        let copied = bytes.len().min(length - 1);
        std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer.cast::<u8>(), copied);
        *buffer.add(copied) = 0;
        copied
    })
}

/// Solves the attenuation/wavenumber system for the medium at `omega`.
#[no_mangle]
pub unsafe extern "C" fn bk_dispersion_solve(
    omega: f64,
    epsilon: f64,
    mu: f64,
    sigma: f64,
    out: *mut BkDispersion,
) -> BkStatus {
    guarded(|| {
        if out.is_null() {
            return fail(BkStatus::NullPointer, "out is null");
        }
        let medium = match Medium::new(epsilon, mu, sigma) {
            Ok(m) => m,
            Err(e) => return fail_with(e),
        };
        match solve_dispersion(omega, &medium) {
            Ok(d) => {
                *out = BkDispersion { k: d.k(), s: d.s(), phi: d.phi() };
                BkStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Removes the component of `e0` along `khat`, writing the transverse
/// remainder to `out_re`/`out_im`.
#[no_mangle]
pub unsafe extern "C" fn bk_project_transverse(
    e0_re: *const f64,
    e0_im: *const f64,
    khat: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BkStatus {
    guarded(|| {
        let (Some(e0), Some(axis)) = (complex_amplitude(e0_re, e0_im), read3(khat)) else {
            return fail(BkStatus::NullPointer, "vector argument is null");
        };
        if out_re.is_null() || out_im.is_null() {
            return fail(BkStatus::NullPointer, "out is null");
        }
        let khat = match unit_direction(axis) {
            Ok(u) => u,
            Err(status) => return status,
        };
        let projected = project_transverse(e0, khat);
        write3(out_re, [projected.x.re, projected.y.re, projected.z.re]);
        write3(out_im, [projected.x.im, projected.y.im, projected.z.im]);
        BkStatus::Ok
    })
}

unsafe fn new_pair(
    e0_re: *const f64,
    e0_im: *const f64,
    khat: *const f64,
    omega: f64,
    medium: Result<Medium, Error>,
    out: *mut *mut BkPair,
) -> BkStatus {
    let (Some(e0), Some(axis)) = (complex_amplitude(e0_re, e0_im), read3(khat)) else {
        return fail(BkStatus::NullPointer, "vector argument is null");
    };
    if out.is_null() {
        return fail(BkStatus::NullPointer, "out is null");
    }
    let medium = match medium {
        Ok(m) => m,
        Err(e) => return fail_with(e),
    };
    let khat = match unit_direction(axis) {
        Ok(u) => u,
        Err(status) => return status,
    };
    let built = if medium.sigma() == 0.0 {
        PlaneWaveSpec::new(e0, khat, omega)
            .and_then(|spec| make_conjugate_vacuum(&spec, &medium))
    } else {
        solve_dispersion(omega, &medium)
            .and_then(|d| AttenuatedWaveSpec::new(e0, khat, omega, d))
            .and_then(|spec| make_conjugate_conductor(&spec, &medium))
    };
    match built {
        Ok(pair) => {
            *out = Box::into_raw(Box::new(BkPair { pair, medium, omega }));
            BkStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Builds a conjugate plane-wave pair in a lossless medium. `e0` must
/// be transverse to `khat` (see `bk_project_transverse`); `khat` is
/// normalized here. The handle must be released with `bk_pair_free`.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_new_vacuum(
    e0_re: *const f64,
    e0_im: *const f64,
    khat: *const f64,
    omega: f64,
    epsilon: f64,
    mu: f64,
    out: *mut *mut BkPair,
) -> BkStatus {
    guarded(|| new_pair(e0_re, e0_im, khat, omega, Medium::lossless(epsilon, mu), out))
}

/// Builds a conjugate attenuated pair in a conducting medium, solving
/// the dispersion system internally. Conventions as for
/// `bk_pair_new_vacuum`.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_new_conductor(
    e0_re: *const f64,
    e0_im: *const f64,
    khat: *const f64,
    omega: f64,
    epsilon: f64,
    mu: f64,
    sigma: f64,
    out: *mut *mut BkPair,
) -> BkStatus {
    guarded(|| new_pair(e0_re, e0_im, khat, omega, Medium::new(epsilon, mu, sigma), out))
}

/// New handle with the magnetic member scaled by `factor`: a
/// deliberately broken pair for exercising the residual checks.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_scale_b(
    pair: *const BkPair,
    factor: f64,
    out: *mut *mut BkPair,
) -> BkStatus {
    guarded(|| {
        if pair.is_null() || out.is_null() {
            return fail(BkStatus::NullPointer, "pair or out is null");
        }
        if !factor.is_finite() {
            return fail(BkStatus::InvalidArgument, "scale factor must be finite");
        }
        let source = &*pair;
        *out = Box::into_raw(Box::new(BkPair {
            pair: source.pair.scale_b(factor),
            medium: source.medium,
            omega: source.omega,
        }));
        BkStatus::Ok
    })
}

/// Evaluates one member at a space-time point; writes three real and
/// three imaginary components.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_field_at(
    pair: *const BkPair,
    which: BkField,
    x: f64,
    y: f64,
    z: f64,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BkStatus {
    guarded(|| {
        if pair.is_null() || out_re.is_null() || out_im.is_null() {
            return fail(BkStatus::NullPointer, "pair or out is null");
        }
        let handle = &*pair;
        let r = RealVec3::new(x, y, z);
        let value = match which {
            BkField::Electric => handle.pair.e_at(r, t),
            BkField::Magnetic => handle.pair.b_at(r, t),
        };
        write3(out_re, [value.x.re, value.y.re, value.z.re]);
        write3(out_im, [value.x.im, value.y.im, value.z.im]);
        BkStatus::Ok
    })
}

fn pick(report: &ResidualReport, label: EquationLabel) -> (f64, f64) {
    report.entry(label).map_or((f64::NAN, f64::NAN), |e| (e.max, e.rms))
}

/// Runs the first-order and wave-equation finite-difference checks on a
/// cubical grid of `points`^3 x `time_points` nodes with uniform spacing
/// `h`, centered on (cx, cy, cz, ct). Needs `points >= 3` for the
/// first-order residuals and `>= 5` for the wave residuals.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_residual_summary(
    pair: *const BkPair,
    cx: f64,
    cy: f64,
    cz: f64,
    ct: f64,
    h: f64,
    points: usize,
    time_points: usize,
    out: *mut BkResidualSummary,
) -> BkStatus {
    guarded(|| {
        if pair.is_null() || out.is_null() {
            return fail(BkStatus::NullPointer, "pair or out is null");
        }
        let handle = &*pair;
        let center = RealVec3::new(cx, cy, cz);
        let grid = match centered_grid(center, ct, h, points, time_points) {
            Ok(g) => g,
            Err(e) => return fail_with(e),
        };
        let maxwell = match maxwell_residual(&handle.pair, &handle.medium, &grid) {
            Ok(r) => r,
            Err(e) => return fail_with(e),
        };
        let wave_e = match wave_residual(&handle.pair, PairMember::Electric, &handle.medium, &grid)
        {
            Ok(r) => r,
            Err(e) => return fail_with(e),
        };
        let wave_b = match wave_residual(&handle.pair, PairMember::Magnetic, &handle.medium, &grid)
        {
            Ok(r) => r,
            Err(e) => return fail_with(e),
        };

        let mut summary = BkResidualSummary::default();
        (summary.div_e_max, summary.div_e_rms) = pick(&maxwell, EquationLabel::DivE);
        (summary.div_b_max, summary.div_b_rms) = pick(&maxwell, EquationLabel::DivB);
        (summary.curl_e_max, summary.curl_e_rms) = pick(&maxwell, EquationLabel::CurlE);
        (summary.curl_b_max, summary.curl_b_rms) = pick(&maxwell, EquationLabel::CurlB);
        (summary.wave_e_max, summary.wave_e_rms) = pick(&wave_e, EquationLabel::WaveE);
        (summary.wave_b_max, summary.wave_b_rms) = pick(&wave_b, EquationLabel::WaveB);
        *out = summary;
        BkStatus::Ok
    })
}

/// Frequency the pair was built for.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_omega(pair: *const BkPair, out: *mut f64) -> BkStatus {
    guarded(|| {
        if pair.is_null() || out.is_null() {
            return fail(BkStatus::NullPointer, "pair or out is null");
        }
        *out = (*pair).omega;
        BkStatus::Ok
    })
}

/// Releases a handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn bk_pair_free(pair: *mut BkPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}
