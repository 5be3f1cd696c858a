//! Monochromatic plane-wave pairs in a non-conducting medium.
//!
//! A single complex amplitude and direction generate both fields; the
//! magnetic field is coupled to the electric one through the cross product
//! with the propagation direction, so a constructed pair satisfies the full
//! first-order system by design and the residual machinery can confirm it
//! numerically.

use crate::error::{Error, Result};
use crate::fields::{linear_polarization, EMFieldPair, FieldForm, Provenance};
use crate::medium::Medium;
use crate::vec3::{ComplexVec3, RealVec3};
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

pub const UNIT_TOL: f64 = 1e-12;
pub const TRANSVERSALITY_REL_TOL: f64 = 1e-12;

/// How a complex amplitude decomposes for the real-valued field form.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Polarization {
    /// E0 = e0r * e^{i alpha} with e0r real.
    Linear { e0r: RealVec3, alpha: f64 },
    /// Real and imaginary parts of E0 are not parallel; no real cosine
    /// form with a single phase exists.
    Elliptical,
}

/// Amplitude, direction, and frequency of a plane wave in a lossless
/// medium.
#[derive(Debug, Clone, Serialize)]
pub struct PlaneWaveSpec {
    e0: ComplexVec3,
    khat: RealVec3,
    omega: f64,
    polarization: Polarization,
}

fn validate_direction(khat: RealVec3) -> Result<()> {
    if !khat.is_unit(UNIT_TOL) {
        return Err(Error::NotUnit { norm: khat.norm(), tolerance: UNIT_TOL });
    }
    Ok(())
}

fn validate_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "angular frequency must be positive and finite",
        });
    }
    Ok(())
}

fn validate_transversality(e0: ComplexVec3, khat: RealVec3) -> Result<()> {
    let dot_abs = ComplexVec3::from(khat).dot(e0).norm();
    let tolerance = TRANSVERSALITY_REL_TOL * e0.norm();
    if dot_abs > tolerance {
        return Err(Error::NonTransverse { dot_abs, tolerance });
    }
    Ok(())
}

impl PlaneWaveSpec {
    /// Validating constructor: unit direction, positive frequency, and
    /// transverse amplitude. The amplitude is classified for the real-form
    /// routines but elliptical polarization is accepted here.
    pub fn new(e0: ComplexVec3, khat: RealVec3, omega: f64) -> Result<Self> {
        validate_direction(khat)?;
        validate_omega(omega)?;
        validate_transversality(e0, khat)?;
        let polarization = match linear_polarization(e0) {
            Ok((e0r, alpha)) => Polarization::Linear { e0r, alpha },
            Err(_) => Polarization::Elliptical,
        };
        Ok(Self { e0, khat, omega, polarization })
    }

    /// Construct from a real amplitude vector and a phase offset.
    pub fn linearly_polarized(
        e0r: RealVec3,
        khat: RealVec3,
        omega: f64,
        alpha: f64,
    ) -> Result<Self> {
        validate_direction(khat)?;
        validate_omega(omega)?;
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "phase offset must be finite",
            });
        }
        let e0 = ComplexVec3::from(e0r).scale(Complex64::from_polar(1.0, alpha));
        validate_transversality(e0, khat)?;
        Ok(Self { e0, khat, omega, polarization: Polarization::Linear { e0r, alpha } })
    }

    pub fn e0(&self) -> ComplexVec3 {
        self.e0
    }

    pub fn khat(&self) -> RealVec3 {
        self.khat
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    /// Phase offset of the real form; None for elliptical amplitudes.
    pub fn alpha(&self) -> Option<f64> {
        match self.polarization {
            Polarization::Linear { alpha, .. } => Some(alpha),
            Polarization::Elliptical => None,
        }
    }
}

/// Wavenumber in a lossless medium: k = omega sqrt(epsilon mu).
pub fn vacuum_wavenumber(omega: f64, medium: &Medium) -> Result<f64> {
    validate_omega(omega)?;
    medium.require_lossless()?;
    Ok(omega * (medium.epsilon() * medium.mu()).sqrt())
}

/// Build the coupled pair E = E0 e^{i(k.r - omega t)}, B = (1/c) khat x E
/// with an explicitly supplied wavenumber and no consistency validation.
///
/// The honest path is [`make_conjugate_vacuum`], which derives k from the
/// medium; passing any other k here produces a pair whose fields are
/// individually plausible but jointly inconsistent - exactly what the
/// detection tests need.
pub fn vacuum_pair_from_parts(spec: &PlaneWaveSpec, medium: &Medium, k: f64) -> EMFieldPair {
    let e0 = spec.e0;
    let khat = spec.khat;
    let omega = spec.omega;
    let inv_c = (medium.epsilon() * medium.mu()).sqrt();
    let b0 = ComplexVec3::from(khat).cross(e0) * inv_c;
    let phase = move |r: RealVec3, t: f64| {
        Complex64::from_polar(1.0, k * khat.dot(r) - omega * t)
    };
    let e = Arc::new(move |r, t| e0.scale(phase(r, t)));
    let b = Arc::new(move |r, t| b0.scale(phase(r, t)));
    EMFieldPair::new(
        e,
        b,
        Provenance::Vacuum { spec: spec.clone(), medium: *medium, form: FieldForm::Complex },
    )
}

/// The coupled plane-wave pair for a lossless medium.
pub fn make_conjugate_vacuum(spec: &PlaneWaveSpec, medium: &Medium) -> Result<EMFieldPair> {
    let k = vacuum_wavenumber(spec.omega, medium)?;
    Ok(vacuum_pair_from_parts(spec, medium, k))
}

/// Remove the longitudinal component: E0 - khat (khat . E0).
pub fn project_transverse(e0: ComplexVec3, khat: RealVec3) -> ComplexVec3 {
    let k = ComplexVec3::from(khat);
    e0 - k.scale(k.dot(e0))
}

/// Real-valued pair for a linearly polarized amplitude, evaluated directly
/// as cosines rather than by taking real parts of the complex form.
pub fn real_fields_vacuum(spec: &PlaneWaveSpec, medium: &Medium) -> Result<EMFieldPair> {
    let (e0r, alpha) = match spec.polarization {
        Polarization::Linear { e0r, alpha } => (e0r, alpha),
        Polarization::Elliptical => return Err(Error::EllipticalPolarization),
    };
    let k = vacuum_wavenumber(spec.omega, medium)?;
    let khat = spec.khat;
    let omega = spec.omega;
    let inv_c = (medium.epsilon() * medium.mu()).sqrt();
    let b0r = khat.cross(e0r) * inv_c;
    let e = Arc::new(move |r: RealVec3, t: f64| {
        ComplexVec3::from(e0r * (k * khat.dot(r) - omega * t + alpha).cos())
    });
    let b = Arc::new(move |r: RealVec3, t: f64| {
        ComplexVec3::from(b0r * (k * khat.dot(r) - omega * t + alpha).cos())
    });
    Ok(EMFieldPair::new(
        e,
        b,
        Provenance::Vacuum { spec: spec.clone(), medium: *medium, form: FieldForm::Real },
    ))
}

/// Residual magnitudes of the four amplitude relations for a candidate
/// (E0, B0) pair against wavevector kvec and frequency omega:
/// kvec . E0 = 0, kvec . B0 = 0, kvec x E0 = omega B0,
/// kvec x B0 = -(omega/c^2) E0.
#[derive(Debug, Clone, Serialize)]
pub struct AmplitudeReport {
    pub div_e: f64,
    pub div_b: f64,
    pub faraday: f64,
    pub ampere: f64,
    /// The fourth residual recomputed with B0 rebuilt from the third
    /// relation; vanishes whenever |kvec| matches the medium dispersion
    /// and E0 is transverse, demonstrating the fourth relation carries no
    /// independent information.
    pub ampere_from_faraday: f64,
    pub redundant: bool,
    pub scale: f64,
}

pub const AMPLITUDE_REL_TOL: f64 = 1e-12;

impl AmplitudeReport {
    pub fn max_residual(&self) -> f64 {
        self.div_e.max(self.div_b).max(self.faraday).max(self.ampere)
    }

    pub fn passes(&self) -> bool {
        self.max_residual() <= AMPLITUDE_REL_TOL * self.scale
    }
}

pub fn amplitude_relations_check(
    e0: ComplexVec3,
    b0: ComplexVec3,
    kvec: RealVec3,
    omega: f64,
    medium: &Medium,
) -> AmplitudeReport {
    let k = ComplexVec3::from(kvec);
    let omega_over_c2 = omega * medium.epsilon() * medium.mu();

    let div_e = k.dot(e0).norm();
    let div_b = k.dot(b0).norm();
    let faraday = (k.cross(e0) - b0 * omega).norm();
    let ampere = (k.cross(b0) + e0 * omega_over_c2).norm();

    let b0_implied = k.cross(e0) * (1.0 / omega);
    let ampere_from_faraday = (k.cross(b0_implied) + e0 * omega_over_c2).norm();

    let scale = (kvec.norm() * e0.norm())
        .max(omega * b0.norm())
        .max(kvec.norm() * b0.norm())
        .max(omega_over_c2 * e0.norm());

    let redundant = ampere_from_faraday <= AMPLITUDE_REL_TOL * scale;

    AmplitudeReport { div_e, div_b, faraday, ampere, ampere_from_faraday, redundant, scale }
}
