//! Attenuated plane-wave pairs in an Ohmic conducting medium.
//!
//! Conduction couples the wavenumber k and the attenuation coefficient s
//! through an algebraic system with a closed-form positive root; the wave
//! decays along the propagation direction and the magnetic field lags the
//! electric one by a phase angle phi = arctan(s/k), at most an eighth of a
//! cycle.

use crate::error::{Error, Result};
use crate::fields::{linear_polarization, EMFieldPair, FieldForm, Provenance};
use crate::medium::Medium;
use crate::vacuum::{Polarization, UNIT_TOL};
use crate::vec3::{ComplexVec3, RealVec3};
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

pub const DISPERSION_REL_TOL: f64 = 1e-12;

/// Joint solution (k, s, phi) of
///   s^2 - k^2 + epsilon mu omega^2 = 0,
///   mu sigma omega - 2 s k = 0,
/// together with the generating parameters.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConductorDispersion {
    k: f64,
    s: f64,
    phi: f64,
    omega: f64,
    epsilon: f64,
    mu: f64,
    sigma: f64,
}

impl ConductorDispersion {
    /// Assemble without validation. The honest path is
    /// [`solve_dispersion`]; this exists so tests can build deliberately
    /// inconsistent values and watch the checks reject them.
    pub fn from_parts(
        k: f64,
        s: f64,
        phi: f64,
        omega: f64,
        epsilon: f64,
        mu: f64,
        sigma: f64,
    ) -> Self {
        Self { k, s, phi, omega, epsilon, mu, sigma }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// k + is as a complex number.
    pub fn complex_wavenumber(&self) -> Complex64 {
        Complex64::new(self.k, self.s)
    }

    /// Both system residuals evaluated against an external frequency and
    /// medium, normalized by the largest term magnitude.
    pub fn relative_residuals(&self, omega: f64, medium: &Medium) -> (f64, f64) {
        let (em, ms) = (medium.epsilon() * medium.mu(), medium.mu() * medium.sigma());
        let r1 = self.s * self.s - self.k * self.k + em * omega * omega;
        let r2 = ms * omega - 2.0 * self.s * self.k;
        let scale = (self.s * self.s)
            .max(self.k * self.k)
            .max(em * omega * omega)
            .max((ms * omega).abs())
            .max((2.0 * self.s * self.k).abs());
        if scale == 0.0 {
            (0.0, 0.0)
        } else {
            (r1.abs() / scale, r2.abs() / scale)
        }
    }

    /// Errors unless both residuals against (omega, medium) are within the
    /// dispersion tolerance.
    pub fn verify(&self, omega: f64, medium: &Medium) -> Result<()> {
        let (r1, r2) = self.relative_residuals(omega, medium);
        if r1 > DISPERSION_REL_TOL || r2 > DISPERSION_REL_TOL {
            return Err(Error::DispersionMismatch { r1, r2, tolerance: DISPERSION_REL_TOL });
        }
        Ok(())
    }
}

/// Closed-form positive root of the dispersion system: eliminating s gives
/// k^4 - epsilon mu omega^2 k^2 - (mu sigma omega)^2 / 4 = 0, whose unique
/// positive solution is
/// k = omega sqrt(epsilon mu / 2) sqrt(1 + sqrt(1 + (sigma/(epsilon omega))^2)),
/// then s = mu sigma omega / (2k) and tan phi = s/k.
pub fn solve_dispersion(omega: f64, medium: &Medium) -> Result<ConductorDispersion> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "angular frequency must be positive and finite",
        });
    }
    let (epsilon, mu, sigma) = (medium.epsilon(), medium.mu(), medium.sigma());
    let loss_ratio = sigma / (epsilon * omega);
    let k = omega
        * (epsilon * mu / 2.0).sqrt()
        * (1.0 + (1.0 + loss_ratio * loss_ratio).sqrt()).sqrt();
    let s = mu * sigma * omega / (2.0 * k);
    let phi = (s / k).atan();
    Ok(ConductorDispersion { k, s, phi, omega, epsilon, mu, sigma })
}

/// Amplitude, direction, frequency, and dispersion data of an attenuated
/// plane wave.
#[derive(Debug, Clone, Serialize)]
pub struct AttenuatedWaveSpec {
    e0: ComplexVec3,
    tau: RealVec3,
    omega: f64,
    polarization: Polarization,
    dispersion: ConductorDispersion,
}

impl AttenuatedWaveSpec {
    /// Validates direction, frequency, and transversality. Whether the
    /// dispersion matches a particular medium is checked at construction
    /// of the field pair, where the medium is in hand.
    pub fn new(
        e0: ComplexVec3,
        tau: RealVec3,
        omega: f64,
        dispersion: ConductorDispersion,
    ) -> Result<Self> {
        if !tau.is_unit(UNIT_TOL) {
            return Err(Error::NotUnit { norm: tau.norm(), tolerance: UNIT_TOL });
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega,
                reason: "angular frequency must be positive and finite",
            });
        }
        let dot_abs = ComplexVec3::from(tau).dot(e0).norm();
        let tolerance = 1e-12 * e0.norm();
        if dot_abs > tolerance {
            return Err(Error::NonTransverse { dot_abs, tolerance });
        }
        let polarization = match linear_polarization(e0) {
            Ok((e0r, alpha)) => Polarization::Linear { e0r, alpha },
            Err(_) => Polarization::Elliptical,
        };
        Ok(Self { e0, tau, omega, polarization, dispersion })
    }

    pub fn linearly_polarized(
        e0r: RealVec3,
        tau: RealVec3,
        omega: f64,
        alpha: f64,
        dispersion: ConductorDispersion,
    ) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "phase offset must be finite",
            });
        }
        let e0 = ComplexVec3::from(e0r).scale(Complex64::from_polar(1.0, alpha));
        let mut spec = Self::new(e0, tau, omega, dispersion)?;
        spec.polarization = Polarization::Linear { e0r, alpha };
        Ok(spec)
    }

    pub fn e0(&self) -> ComplexVec3 {
        self.e0
    }

    pub fn tau(&self) -> RealVec3 {
        self.tau
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn alpha(&self) -> Option<f64> {
        match self.polarization {
            Polarization::Linear { alpha, .. } => Some(alpha),
            Polarization::Elliptical => None,
        }
    }

    pub fn dispersion(&self) -> &ConductorDispersion {
        &self.dispersion
    }
}

/// Build the attenuated pair
///   E = E0 e^{-s tau.r} e^{i(k tau.r - omega t)},
///   B = ((k+is)/omega) (tau x E),
/// from whatever dispersion values the spec carries, with no consistency
/// validation. The honest path is [`make_conjugate_conductor`].
pub fn conductor_pair_from_parts(spec: &AttenuatedWaveSpec, medium: &Medium) -> EMFieldPair {
    let e0 = spec.e0;
    let tau = spec.tau;
    let omega = spec.omega;
    let (k, s) = (spec.dispersion.k, spec.dispersion.s);
    let b0 = ComplexVec3::from(tau)
        .cross(e0)
        .scale(Complex64::new(k, s) / omega);
    let envelope = move |r: RealVec3, t: f64| {
        Complex64::from_polar((-s * tau.dot(r)).exp(), k * tau.dot(r) - omega * t)
    };
    let e = Arc::new(move |r, t| e0.scale(envelope(r, t)));
    let b = Arc::new(move |r, t| b0.scale(envelope(r, t)));
    EMFieldPair::new(
        e,
        b,
        Provenance::Conductor { spec: spec.clone(), medium: *medium, form: FieldForm::Complex },
    )
}

/// The coupled attenuated-wave pair for a conducting medium; rejects a
/// spec whose dispersion does not satisfy the system for this frequency
/// and medium.
pub fn make_conjugate_conductor(spec: &AttenuatedWaveSpec, medium: &Medium) -> Result<EMFieldPair> {
    spec.dispersion.verify(spec.omega, medium)?;
    Ok(conductor_pair_from_parts(spec, medium))
}

/// Real-valued pair for a linearly polarized amplitude:
///   E = E0R e^{-s tau.r} cos(k tau.r - omega t + alpha),
///   B = (sqrt(k^2+s^2)/omega) (tau x E0R) e^{-s tau.r}
///         cos(k tau.r - omega t + alpha + phi).
pub fn real_fields_conductor(spec: &AttenuatedWaveSpec, medium: &Medium) -> Result<EMFieldPair> {
    let (e0r, alpha) = match spec.polarization {
        Polarization::Linear { e0r, alpha } => (e0r, alpha),
        Polarization::Elliptical => return Err(Error::EllipticalPolarization),
    };
    spec.dispersion.verify(spec.omega, medium)?;
    let tau = spec.tau;
    let omega = spec.omega;
    let (k, s, phi) = (spec.dispersion.k, spec.dispersion.s, spec.dispersion.phi);
    let b_magnitude = (k * k + s * s).sqrt() / omega;
    let b0r = tau.cross(e0r) * b_magnitude;
    let e = Arc::new(move |r: RealVec3, t: f64| {
        let decay = (-s * tau.dot(r)).exp();
        ComplexVec3::from(e0r * (decay * (k * tau.dot(r) - omega * t + alpha).cos()))
    });
    let b = Arc::new(move |r: RealVec3, t: f64| {
        let decay = (-s * tau.dot(r)).exp();
        ComplexVec3::from(b0r * (decay * (k * tau.dot(r) - omega * t + alpha + phi).cos()))
    });
    Ok(EMFieldPair::new(
        e,
        b,
        Provenance::Conductor { spec: spec.clone(), medium: *medium, form: FieldForm::Real },
    ))
}

/// Residual magnitudes of the amplitude relations for a candidate
/// (E0, B0) against direction tau, dispersion (k, s), and medium:
///   (k tau) . E0 = 0,   (k tau) . B0 = 0,
///   (k+is) tau x E0 = omega B0,
///   (k+is) tau x B0 = -(epsilon mu omega + i mu sigma) E0.
#[derive(Debug, Clone, Serialize)]
pub struct ConductorAmplitudeReport {
    pub div_e: f64,
    pub div_b: f64,
    pub faraday: f64,
    pub ampere: f64,
    /// Fourth residual recomputed with B0 rebuilt from the third relation;
    /// its vanishing is equivalent to the scalar identity
    /// (k+is)^2 = epsilon mu omega^2 + i mu sigma omega.
    pub ampere_from_faraday: f64,
    /// |(k+is)^2 - (epsilon mu omega^2 + i mu sigma omega)|, the scalar
    /// identity underlying the redundancy.
    pub identity_gap: f64,
    pub redundant: bool,
    pub scale: f64,
}

pub const CONDUCTOR_AMPLITUDE_REL_TOL: f64 = 1e-12;

impl ConductorAmplitudeReport {
    pub fn max_residual(&self) -> f64 {
        self.div_e.max(self.div_b).max(self.faraday).max(self.ampere)
    }

    pub fn passes(&self) -> bool {
        self.max_residual() <= CONDUCTOR_AMPLITUDE_REL_TOL * self.scale
    }
}

pub fn conductor_amplitude_check(
    e0: ComplexVec3,
    b0: ComplexVec3,
    tau: RealVec3,
    dispersion: &ConductorDispersion,
    omega: f64,
    medium: &Medium,
) -> ConductorAmplitudeReport {
    let kc = dispersion.complex_wavenumber();
    let kvec = ComplexVec3::from(tau * dispersion.k);
    let tau_c = ComplexVec3::from(tau);
    let coupling = Complex64::new(
        medium.epsilon() * medium.mu() * omega,
        medium.mu() * medium.sigma(),
    );

    let div_e = kvec.dot(e0).norm();
    let div_b = kvec.dot(b0).norm();
    let faraday = (tau_c.cross(e0).scale(kc) - b0 * omega).norm();
    let ampere = (tau_c.cross(b0).scale(kc) + e0.scale(coupling)).norm();

    let b0_implied = tau_c.cross(e0).scale(kc / omega);
    let ampere_from_faraday = (tau_c.cross(b0_implied).scale(kc) + e0.scale(coupling)).norm();

    let identity_gap = (kc * kc - coupling * omega).norm();

    let scale = (dispersion.k * e0.norm())
        .max(kc.norm() * e0.norm())
        .max(omega * b0.norm())
        .max(kc.norm() * b0.norm())
        .max(coupling.norm() * e0.norm());

    let redundant = ampere_from_faraday <= CONDUCTOR_AMPLITUDE_REL_TOL * scale;

    ConductorAmplitudeReport {
        div_e,
        div_b,
        faraday,
        ampere,
        ampere_from_faraday,
        identity_gap,
        redundant,
        scale,
    }
}

/// Times of upward zero crossings of a sampled signal, located by linear
/// interpolation between adjacent samples.
pub fn upward_zero_crossings(samples: &[(f64, f64)]) -> Vec<f64> {
    let mut out = Vec::new();
    for pair in samples.windows(2) {
        let ((t0, v0), (t1, v1)) = (pair[0], pair[1]);
        if v0 < 0.0 && v1 >= 0.0 && v1 > v0 {
            out.push(t0 + (t1 - t0) * (-v0) / (v1 - v0));
        }
    }
    out
}

/// Time lag of the second field behind the first, measured by comparing
/// upward zero crossings of the projected components at a fixed position.
/// Samples three periods; returns None if either component never crosses.
pub fn zero_crossing_lag(
    pair: &EMFieldPair,
    r: RealVec3,
    e_dir: RealVec3,
    b_dir: RealVec3,
    omega: f64,
) -> Option<f64> {
    let period = 2.0 * std::f64::consts::PI / omega;
    let n = 4001;
    let span = 3.0 * period;
    let sample = |dir: RealVec3, field: &dyn Fn(f64) -> RealVec3| -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let t = span * i as f64 / (n - 1) as f64;
                (t, field(t).dot(dir))
            })
            .collect()
    };
    let e_series = sample(e_dir, &|t| pair.e_at(r, t).real_part());
    let b_series = sample(b_dir, &|t| pair.b_at(r, t).real_part());
    let e_crossings = upward_zero_crossings(&e_series);
    let b_crossings = upward_zero_crossings(&b_series);
    let e_mid = *e_crossings.get(e_crossings.len() / 2)?;
    let nearest = b_crossings
        .iter()
        .copied()
        .min_by(|a, b| (a - e_mid).abs().total_cmp(&(b - e_mid).abs()))?;
    Some(nearest - e_mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vacuum::{make_conjugate_vacuum, PlaneWaveSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn golden_medium() -> Medium {
        Medium::new(1.0, 1.0, 2.0).unwrap()
    }

    fn golden_dispersion() -> ConductorDispersion {
        solve_dispersion(1.0, &golden_medium()).unwrap()
    }

    fn z_hat() -> RealVec3 {
        RealVec3::new(0.0, 0.0, 1.0)
    }

    fn x_amp() -> ComplexVec3 {
        ComplexVec3::splat_re(1.0, 0.0, 0.0)
    }

    /// Newton iteration on the raw system, as an independent oracle for
    /// the closed-form root.
    fn newton_dispersion(omega: f64, medium: &Medium) -> (f64, f64) {
        let (em, ms) = (
            medium.epsilon() * medium.mu(),
            medium.mu() * medium.sigma(),
        );
        let mut k = omega * em.sqrt() * (1.0 + ms / (em * omega)).sqrt();
        let mut s = ms * omega / (2.0 * k);
        for _ in 0..100 {
            let r1 = s * s - k * k + em * omega * omega;
            let r2 = ms * omega - 2.0 * s * k;
            // Jacobian [[-2k, 2s], [-2s, -2k]], determinant 4(k^2 + s^2).
            let det = 4.0 * (k * k + s * s);
            let dk = (-2.0 * k * r1 - 2.0 * s * r2) / det;
            let ds = (2.0 * s * r1 - 2.0 * k * r2) / det;
            k -= dk;
            s -= ds;
            if dk.abs() < 1e-15 * k.abs() && ds.abs() < 1e-15 * k.abs() {
                break;
            }
        }
        (k, s)
    }

    #[test]
    fn lossless_medium_degenerates_to_plain_wavenumber() {
        let m = Medium::lossless(2.5, 0.3).unwrap();
        let d = solve_dispersion(1.7, &m).unwrap();
        assert_eq!(d.s(), 0.0);
        assert_eq!(d.phi(), 0.0);
        assert_relative_eq!(d.k(), 1.7 * (2.5f64 * 0.3).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn golden_case_closed_form() {
        let d = golden_dispersion();
        let k_exact = ((1.0 + 5.0f64.sqrt()) / 2.0).sqrt();
        assert_relative_eq!(d.k(), k_exact, max_relative = 1e-14);
        assert_relative_eq!(d.s(), 1.0 / k_exact, max_relative = 1e-14);
        assert_relative_eq!(d.phi(), (1.0 / (k_exact * k_exact)).atan(), max_relative = 1e-14);
        // Decimal values frozen from the closed form.
        assert_abs_diff_eq!(d.k(), 1.272_019_6, epsilon = 1e-6);
        assert_abs_diff_eq!(d.s(), 0.786_151_4, epsilon = 1e-6);
        assert_abs_diff_eq!(d.phi(), 0.553_574_4, epsilon = 1e-6);
        // Direct substitution into the system.
        assert_abs_diff_eq!(d.s() * d.s() - d.k() * d.k() + 1.0, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(2.0 * d.s() * d.k(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn golden_case_matches_newton_oracle() {
        let (k, s) = newton_dispersion(1.0, &golden_medium());
        let d = golden_dispersion();
        assert_relative_eq!(d.k(), k, max_relative = 1e-12);
        assert_relative_eq!(d.s(), s, max_relative = 1e-12);
    }

    #[test]
    fn random_media_match_newton_oracle() {
        let mut rng = StdRng::seed_from_u64(0xd15b);
        for _ in 0..50 {
            let m = Medium::new(
                10f64.powf(rng.gen_range(-2.0..2.0)),
                10f64.powf(rng.gen_range(-2.0..2.0)),
                10f64.powf(rng.gen_range(-2.0..2.0)),
            )
            .unwrap();
            let omega = 10f64.powf(rng.gen_range(-2.0..2.0));
            let d = solve_dispersion(omega, &m).unwrap();
            let (k, s) = newton_dispersion(omega, &m);
            assert_relative_eq!(d.k(), k, max_relative = 1e-11);
            assert_relative_eq!(d.s(), s, max_relative = 1e-11);
        }
    }

    #[test]
    fn good_conductor_limit_approaches_the_diagonal() {
        let m = Medium::new(1.0, 1.0, 1.0e6).unwrap();
        let d = solve_dispersion(1.0, &m).unwrap();
        assert_abs_diff_eq!(d.s() / d.k(), 1.0, epsilon = 1e-5);
        assert_abs_diff_eq!(d.phi(), FRAC_PI_4, epsilon = 1e-5);
        assert!(d.phi() < FRAC_PI_4);
    }

    #[test]
    fn attenuation_grows_with_conductivity() {
        let mut last = -1.0;
        for i in 0..40 {
            let sigma = 0.05 * (i + 1) as f64;
            let m = Medium::new(1.3, 0.8, sigma).unwrap();
            let d = solve_dispersion(2.0, &m).unwrap();
            assert!(d.s() > last, "s not increasing at sigma = {sigma}");
            last = d.s();
        }
    }

    #[test]
    fn weak_conduction_joins_continuously_to_the_lossless_case() {
        let m0 = Medium::lossless(1.9, 0.7).unwrap();
        let k_vac = 1.3 * (1.9f64 * 0.7).sqrt();
        for sigma in [1e-12, 1e-9, 1e-6] {
            let m = Medium::new(1.9, 0.7, sigma).unwrap();
            let d = solve_dispersion(1.3, &m).unwrap();
            assert!((d.k() - k_vac).abs() <= sigma * k_vac);
            assert!(d.s() <= sigma);
            assert!(d.phi() <= sigma);
            assert!(d.s() > 0.0 && d.phi() > 0.0);
        }
        assert_eq!(solve_dispersion(1.3, &m0).unwrap().s(), 0.0);
    }

    #[test]
    fn dispersion_verify_accepts_solution_and_rejects_doctored_values() {
        let d = golden_dispersion();
        d.verify(1.0, &golden_medium()).unwrap();
        let bad = ConductorDispersion::from_parts(
            d.k() * 1.1,
            d.s(),
            d.phi(),
            1.0,
            1.0,
            1.0,
            2.0,
        );
        match bad.verify(1.0, &golden_medium()).unwrap_err() {
            Error::DispersionMismatch { r1, r2, .. } => {
                assert!(r1 > 1e-3 && r2 > 1e-3, "r1 = {r1}, r2 = {r2}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn zeroed_attenuation_with_conduction_present_is_rejected() {
        let d = golden_dispersion();
        let bad = ConductorDispersion::from_parts(d.k(), 0.0, 0.0, 1.0, 1.0, 1.0, 2.0);
        assert!(bad.verify(1.0, &golden_medium()).is_err());
    }

    #[test]
    fn golden_pair_magnitude_at_the_origin() {
        let spec = AttenuatedWaveSpec::new(x_amp(), z_hat(), 1.0, golden_dispersion()).unwrap();
        let pair = make_conjugate_conductor(&spec, &golden_medium()).unwrap();
        let b = pair.b_at(RealVec3::zero(), 0.0);
        assert_relative_eq!(b.norm(), 5.0f64.powf(0.25), max_relative = 1e-12);
        assert_abs_diff_eq!(b.norm(), 1.495_348_8, epsilon = 1e-6);
    }

    #[test]
    fn lossless_dispersion_reproduces_the_vacuum_pair() {
        let m = Medium::lossless(1.4, 0.9).unwrap();
        let d = solve_dispersion(1.1, &m).unwrap();
        let e0 = ComplexVec3::splat_re(0.0, 2.0, 0.0);
        let spec_c = AttenuatedWaveSpec::new(e0, RealVec3::new(1.0, 0.0, 0.0), 1.1, d).unwrap();
        let spec_v = PlaneWaveSpec::new(e0, RealVec3::new(1.0, 0.0, 0.0), 1.1).unwrap();
        let conductor = make_conjugate_conductor(&spec_c, &m).unwrap();
        let vacuum = make_conjugate_vacuum(&spec_v, &m).unwrap();
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..25 {
            let r = RealVec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let t = rng.gen_range(-1.0..1.0);
            assert!((conductor.e_at(r, t) - vacuum.e_at(r, t)).norm() <= 1e-13);
            assert!((conductor.b_at(r, t) - vacuum.b_at(r, t)).norm() <= 1e-13);
        }
    }

    #[test]
    fn amplitude_decays_exponentially_along_the_direction() {
        let spec = AttenuatedWaveSpec::new(x_amp(), z_hat(), 1.0, golden_dispersion()).unwrap();
        let pair = make_conjugate_conductor(&spec, &golden_medium()).unwrap();
        let s = golden_dispersion().s();
        let mut rng = StdRng::seed_from_u64(40);
        for _ in 0..20 {
            let r = RealVec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let t = rng.gen_range(-1.0..1.0);
            let d = rng.gen_range(0.1..2.0);
            let here = pair.e_at(r, t).norm();
            let there = pair.e_at(r + z_hat() * d, t).norm();
            assert_relative_eq!(there / here, (-s * d).exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn longitudinal_amplitude_is_rejected() {
        let err = AttenuatedWaveSpec::new(
            ComplexVec3::splat_re(0.0, 0.0, 1.0),
            z_hat(),
            1.0,
            golden_dispersion(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonTransverse { .. }));
    }

    #[test]
    fn mismatched_dispersion_is_rejected_with_residuals() {
        let d = golden_dispersion();
        let doctored =
            ConductorDispersion::from_parts(d.k() * 1.1, d.s(), d.phi(), 1.0, 1.0, 1.0, 2.0);
        let spec = AttenuatedWaveSpec::new(x_amp(), z_hat(), 1.0, doctored).unwrap();
        assert!(matches!(
            make_conjugate_conductor(&spec, &golden_medium()),
            Err(Error::DispersionMismatch { .. })
        ));
    }

    #[test]
    fn golden_identity_for_the_complex_wavenumber() {
        let d = golden_dispersion();
        let sq = d.complex_wavenumber() * d.complex_wavenumber();
        assert_relative_eq!(sq.re, 1.0, max_relative = 1e-13);
        assert_relative_eq!(sq.im, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn constructed_pair_passes_the_amplitude_check() {
        let medium = golden_medium();
        let spec = AttenuatedWaveSpec::new(x_amp(), z_hat(), 1.0, golden_dispersion()).unwrap();
        let pair = make_conjugate_conductor(&spec, &medium).unwrap();
        let e0 = pair.e_at(RealVec3::zero(), 0.0);
        let b0 = pair.b_at(RealVec3::zero(), 0.0);
        let report = conductor_amplitude_check(
            e0,
            b0,
            spec.tau(),
            spec.dispersion(),
            spec.omega(),
            &medium,
        );
        assert!(report.passes(), "{report:?}");
        assert!(report.redundant);
        assert!(report.identity_gap <= 1e-12 * report.scale.max(1.0));
    }

    #[test]
    fn zero_amplitudes_pass_trivially() {
        let report = conductor_amplitude_check(
            ComplexVec3::zero(),
            ComplexVec3::zero(),
            z_hat(),
            &golden_dispersion(),
            1.0,
            &golden_medium(),
        );
        assert!(report.passes());
        assert_eq!(report.max_residual(), 0.0);
    }

    #[test]
    fn scaled_b_fails_the_amplitude_check() {
        let medium = golden_medium();
        let spec = AttenuatedWaveSpec::new(x_amp(), z_hat(), 1.0, golden_dispersion()).unwrap();
        let pair = make_conjugate_conductor(&spec, &medium).unwrap().scale_b(2.0);
        let report = conductor_amplitude_check(
            pair.e_at(RealVec3::zero(), 0.0),
            pair.b_at(RealVec3::zero(), 0.0),
            spec.tau(),
            spec.dispersion(),
            spec.omega(),
            &medium,
        );
        assert!(!report.passes());
        assert!(report.faraday > 0.1 * report.scale);
    }

    #[test]
    fn real_form_matches_real_part_of_complex_form() {
        let medium = golden_medium();
        let spec = AttenuatedWaveSpec::linearly_polarized(
            RealVec3::new(1.5, -0.5, 0.0),
            z_hat(),
            1.0,
            0.4,
            golden_dispersion(),
        )
        .unwrap();
        let complex_pair = make_conjugate_conductor(&spec, &medium).unwrap();
        let real_pair = real_fields_conductor(&spec, &medium).unwrap();
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..100 {
            let r = RealVec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let t = rng.gen_range(-2.0..2.0);
            let scale = complex_pair.e_at(r, t).norm().max(complex_pair.b_at(r, t).norm());
            let de = real_pair.e_at(r, t).real_part() - complex_pair.e_at(r, t).real_part();
            let db = real_pair.b_at(r, t).real_part() - complex_pair.b_at(r, t).real_part();
            assert!(de.norm() <= 1e-12 * scale, "E mismatch {}", de.norm());
            assert!(db.norm() <= 1e-12 * scale, "B mismatch {}", db.norm());
        }
    }

    #[test]
    fn vacuum_limit_of_real_form_is_in_phase() {
        let m = Medium::lossless(1.0, 1.0).unwrap();
        let d = solve_dispersion(1.0, &m).unwrap();
        assert_eq!(d.phi(), 0.0);
        let spec = AttenuatedWaveSpec::linearly_polarized(
            x_amp().real_part(),
            z_hat(),
            1.0,
            0.0,
            d,
        )
        .unwrap();
        let pair = real_fields_conductor(&spec, &m).unwrap();
        let lag = zero_crossing_lag(
            &pair,
            RealVec3::new(0.1, 0.0, 0.3),
            RealVec3::new(1.0, 0.0, 0.0),
            RealVec3::new(0.0, 1.0, 0.0),
            1.0,
        )
        .unwrap();
        assert_abs_diff_eq!(lag, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn magnetic_field_lags_by_phi_over_omega() {
        let medium = golden_medium();
        let d = golden_dispersion();
        let spec = AttenuatedWaveSpec::linearly_polarized(
            RealVec3::new(2.0, 0.0, 0.0),
            z_hat(),
            1.0,
            0.3,
            d,
        )
        .unwrap();
        let pair = real_fields_conductor(&spec, &medium).unwrap();
        let lag = zero_crossing_lag(
            &pair,
            RealVec3::new(0.0, 0.0, 0.2),
            RealVec3::new(1.0, 0.0, 0.0),
            RealVec3::new(0.0, 1.0, 0.0),
            1.0,
        )
        .unwrap();
        assert_relative_eq!(lag, d.phi() / 1.0, max_relative = 1e-6);
    }

    proptest! {
        #[test]
        fn dispersion_closure_over_four_decades(
            le in -2.0f64..2.0,
            lm in -2.0f64..2.0,
            ls in -2.0f64..2.0,
            lw in -2.0f64..2.0,
        ) {
            let m = Medium::new(10f64.powf(le), 10f64.powf(lm), 10f64.powf(ls)).unwrap();
            let d = solve_dispersion(10f64.powf(lw), &m).unwrap();
            let (r1, r2) = d.relative_residuals(d.omega(), &m);
            prop_assert!(r1 < 1e-12, "first residual {r1}");
            prop_assert!(r2 < 1e-12, "second residual {r2}");
            prop_assert!(d.k() > 0.0 && d.s() >= 0.0);
            prop_assert!((0.0..=FRAC_PI_4).contains(&d.phi()));
        }

        #[test]
        fn redundancy_of_the_second_curl_relation(
            ex in -2.0f64..2.0,
            ey in -2.0f64..2.0,
            phase in -3.0f64..3.0,
            ls in -1.5f64..1.5,
            lw in -1.0f64..1.0,
        ) {
            let m = Medium::new(1.2, 0.9, 10f64.powf(ls)).unwrap();
            let omega = 10f64.powf(lw);
            let d = solve_dispersion(omega, &m).unwrap();
            let e0 = ComplexVec3::from(RealVec3::new(ex, ey, 0.0))
                .scale(Complex64::from_polar(1.0, phase));
            let b0 = ComplexVec3::from(z_hat())
                .cross(e0)
                .scale(d.complex_wavenumber() / omega);
            let report = conductor_amplitude_check(e0, b0, z_hat(), &d, omega, &m);
            prop_assert!(report.redundant, "{report:?}");
            prop_assert!(report.passes(), "{report:?}");
        }
    }

    #[test]
    fn interpolated_crossings_land_on_cosine_roots() {
        // cos(t) crosses upward at 3 pi / 2 within the first two periods.
        let samples: Vec<(f64, f64)> = (0..2000)
            .map(|i| {
                let t = 4.0 * PI * i as f64 / 1999.0;
                (t, t.cos())
            })
            .collect();
        let crossings = upward_zero_crossings(&samples);
        assert_eq!(crossings.len(), 2);
        assert_abs_diff_eq!(crossings[0], 1.5 * PI, epsilon = 1e-5);
        assert_abs_diff_eq!(crossings[1], 3.5 * PI, epsilon = 1e-5);
    }
}
