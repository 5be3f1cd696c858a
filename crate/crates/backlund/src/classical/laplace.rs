//! Parametric quadratic families of harmonic conjugates.

use crate::classical::poly::HarmonicPoly;
use crate::classical::{ScalarField2D, DEFAULT_MIXED_STEP};
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// Parameters of the pair u = alpha (x^2 - t^2) + beta x + gamma t and
/// v = kappa x t + lambda x + mu t. Both members are harmonic for every
/// parameter choice; whether they are conjugate depends on the couplings
/// between the two parameter triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceQuadParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub kappa: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl LaplaceQuadParams {
    pub fn u_field(&self) -> HarmonicPoly {
        HarmonicPoly::new(&[
            (2, 0, self.alpha),
            (0, 2, -self.alpha),
            (1, 0, self.beta),
            (0, 1, self.gamma),
        ])
        .expect("quadratic family is harmonic for all parameters")
    }

    pub fn v_field(&self) -> HarmonicPoly {
        HarmonicPoly::new(&[
            (1, 1, self.kappa),
            (1, 0, self.lambda),
            (0, 1, self.mu),
        ])
        .expect("bilinear family is harmonic for all parameters")
    }
}

/// Solve for the v-parameters that make the pair conjugate: matching the
/// first partials term by term forces kappa = 2 alpha, lambda = -gamma,
/// mu = beta, and nothing else.
pub fn laplace_conjugate_params(alpha: f64, beta: f64, gamma: f64) -> LaplaceQuadParams {
    LaplaceQuadParams {
        alpha,
        beta,
        gamma,
        kappa: 2.0 * alpha,
        lambda: -gamma,
        mu: beta,
    }
}

/// u_xx + u_tt with both second partials formed by central-differencing
/// the analytic first partials.
pub fn laplace_residual<U: ScalarField2D>(u: &U, x: f64, t: f64) -> Result<f64> {
    laplace_residual_with_step(u, x, t, DEFAULT_MIXED_STEP)
}

pub fn laplace_residual_with_step<U: ScalarField2D>(
    u: &U,
    x: f64,
    t: f64,
    h: f64,
) -> Result<f64> {
    let u_xx = (u.d_x(x + h, t)? - u.d_x(x - h, t)?) / (2.0 * h);
    let u_tt = (u.d_t(x, t + h)? - u.d_t(x, t - h)?) / (2.0 * h);
    Ok(u_xx + u_tt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::cauchy_riemann_residual;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn pure_quadratic_couples_with_doubled_bilinear() {
        let p = laplace_conjugate_params(1.0, 0.0, 0.0);
        assert_eq!((p.kappa, p.lambda, p.mu), (2.0, 0.0, 0.0));
    }

    #[test]
    fn zero_parameters_stay_zero() {
        let p = laplace_conjugate_params(0.0, 0.0, 0.0);
        assert_eq!((p.kappa, p.lambda, p.mu), (0.0, 0.0, 0.0));
    }

    #[test]
    fn mixed_parameters_couple_and_zero_the_residual() {
        let p = laplace_conjugate_params(3.0, -1.0, 2.0);
        assert_eq!((p.kappa, p.lambda, p.mu), (6.0, -2.0, -1.0));
        let (u, v) = (p.u_field(), p.v_field());
        let mut rng = StdRng::seed_from_u64(0x517a);
        for _ in 0..20 {
            let x = rng.gen_range(-5.0..5.0);
            let t = rng.gen_range(-5.0..5.0);
            let (r1, r2) = cauchy_riemann_residual(&u, &v, x, t).unwrap();
            assert_abs_diff_eq!(r1, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r2, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn equal_bilinear_pair_cannot_be_conjugate() {
        // u = x t and v = x t: the residual at (1, 1) is (1-1, 1+1), with
        // magnitude 2 - no parameter tweak makes both components vanish
        // identically except the zero pair.
        let u = HarmonicPoly::new(&[(1, 1, 1.0)]).unwrap();
        let v = HarmonicPoly::new(&[(1, 1, 1.0)]).unwrap();
        let (r1, r2) = cauchy_riemann_residual(&u, &v, 1.0, 1.0).unwrap();
        let magnitude = (r1 * r1 + r2 * r2).sqrt();
        assert!(magnitude > 0.1, "residual magnitude {magnitude}");
    }

    #[test]
    fn quadratic_family_laplacian_is_rounding_noise() {
        // The first partials of the quadratic family are linear, so the
        // central differences are exact and only rounding remains.
        let p = laplace_conjugate_params(3.0, -1.0, 2.0);
        for &(x, t) in &[(0.0, 0.0), (1.0, 2.0), (-0.7, 0.4)] {
            assert!(laplace_residual(&p.u_field(), x, t).unwrap().abs() < 1e-9);
            assert!(laplace_residual(&p.v_field(), x, t).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn quartic_harmonic_laplacian_converges_at_second_order() {
        // x^4 - 6 x^2 t^2 + t^4 is harmonic with cubic first partials, so
        // the differenced laplacian carries a genuine truncation term
        // (h^2/6)(u_xxxx + u_tttt) = 8 h^2.
        let u = HarmonicPoly::new(&[(4, 0, 1.0), (2, 2, -6.0), (0, 4, 1.0)]).unwrap();
        let (x, t) = (0.7, 0.9);
        let mut errors = Vec::new();
        for k in 0..3 {
            let h = 1e-2 / f64::powi(2.0, k);
            errors.push(laplace_residual_with_step(&u, x, t, h).unwrap().abs());
        }
        assert_abs_diff_eq!(errors[0], 8.0 * 1e-4, epsilon = 1e-8);
        for w in errors.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio} not near 4");
        }
    }

    #[test]
    fn non_harmonic_field_is_flagged_by_the_laplacian() {
        let u = HarmonicPoly::from_parts(&[(2, 0, 1.0)]).unwrap();
        let r = laplace_residual(&u, 0.3, -0.2).unwrap();
        assert_abs_diff_eq!(r, 2.0, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn conjugate_params_zero_the_residual_for_all_inputs(
            alpha in -10.0f64..10.0,
            beta in -10.0f64..10.0,
            gamma in -10.0f64..10.0,
            x in -3.0f64..3.0,
            t in -3.0f64..3.0,
        ) {
            let p = laplace_conjugate_params(alpha, beta, gamma);
            let (r1, r2) = cauchy_riemann_residual(&p.u_field(), &p.v_field(), x, t).unwrap();
            let scale = alpha.abs().max(beta.abs()).max(gamma.abs()).max(1.0);
            prop_assert!(r1.abs() < 1e-12 * scale);
            prop_assert!(r2.abs() < 1e-12 * scale);
        }

        #[test]
        fn bilinear_equal_pair_residual_vanishes_only_at_zero(
            scale in prop::sample::select(vec![-2.0f64, -1.0, 0.5, 1.0, 3.0]),
        ) {
            let u = HarmonicPoly::new(&[(1, 1, scale)]).unwrap();
            let v = HarmonicPoly::new(&[(1, 1, scale)]).unwrap();
            let (r1, r2) = cauchy_riemann_residual(&u, &v, 1.0, 1.0).unwrap();
            let magnitude = (r1 * r1 + r2 * r2).sqrt();
            prop_assert!(magnitude > 0.1 * scale.abs());
        }
    }
}
