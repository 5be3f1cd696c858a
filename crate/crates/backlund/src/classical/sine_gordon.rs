//! The sine-Gordon equation u_xt = sin u, its single-kink solution family,
//! and the parametric first-order system coupling pairs of solutions.

use crate::classical::{mixed_partial_xt, ScalarField2D, DEFAULT_MIXED_STEP};
use crate::error::{Error, Result};

/// u(x, t) = 4 arctan(C exp(a x + t/a)). Smooth everywhere; interpolates
/// between 0 and 2 pi along the characteristic direction.
#[derive(Debug, Clone, Copy)]
pub struct SineGordonKink {
    pub c: f64,
    pub a: f64,
}

pub fn sine_gordon_kink(c: f64, a: f64) -> Result<SineGordonKink> {
    if a == 0.0 {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "must be nonzero",
        });
    }
    Ok(SineGordonKink { c, a })
}

impl SineGordonKink {
    fn envelope(&self, x: f64, t: f64) -> f64 {
        (self.a * x + t / self.a).exp()
    }
}

impl ScalarField2D for SineGordonKink {
    fn eval(&self, x: f64, t: f64) -> Result<f64> {
        Ok(4.0 * (self.c * self.envelope(x, t)).atan())
    }
    fn d_x(&self, x: f64, t: f64) -> Result<f64> {
        let e = self.envelope(x, t);
        let ce = self.c * e;
        Ok(4.0 * self.a * ce / (1.0 + ce * ce))
    }
    fn d_t(&self, x: f64, t: f64) -> Result<f64> {
        let e = self.envelope(x, t);
        let ce = self.c * e;
        Ok(4.0 * ce / (self.a * (1.0 + ce * ce)))
    }
}

/// Residuals of the parametric coupling system
///   (u + v)_x / 2 = a sin((u - v)/2),
///   (u - v)_t / 2 = (1/a) sin((u + v)/2),
/// as (left - right) of each equation in order.
pub fn sine_gordon_bt_residual<U, V>(u: &U, v: &V, a: f64, x: f64, t: f64) -> Result<(f64, f64)>
where
    U: ScalarField2D,
    V: ScalarField2D,
{
    if a == 0.0 {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "must be nonzero",
        });
    }
    let (uv, vv) = (u.eval(x, t)?, v.eval(x, t)?);
    let r1 = (u.d_x(x, t)? + v.d_x(x, t)?) / 2.0 - a * ((uv - vv) / 2.0).sin();
    let r2 = (u.d_t(x, t)? - v.d_t(x, t)?) / 2.0 - ((uv + vv) / 2.0).sin() / a;
    Ok((r1, r2))
}

/// u_xt - sin u with the mixed partial formed from the analytic t-partial.
pub fn sine_gordon_pde_residual<U: ScalarField2D>(u: &U, x: f64, t: f64) -> Result<f64> {
    sine_gordon_pde_residual_with_step(u, x, t, DEFAULT_MIXED_STEP)
}

pub fn sine_gordon_pde_residual_with_step<U: ScalarField2D>(
    u: &U,
    x: f64,
    t: f64,
    h: f64,
) -> Result<f64> {
    Ok(mixed_partial_xt(u, x, t, h)? - u.eval(x, t)?.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ConstantField;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn zero_front_factor_gives_the_zero_solution() {
        let u = sine_gordon_kink(0.0, 1.0).unwrap();
        for &(x, t) in &[(0.0, 0.0), (3.0, -2.0), (-1.0, 5.0)] {
            assert_eq!(u.eval(x, t).unwrap(), 0.0);
            assert_eq!(u.d_x(x, t).unwrap(), 0.0);
            assert_eq!(u.d_t(x, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn zero_steepness_is_rejected() {
        let err = sine_gordon_kink(1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "a", .. }));
        let z = ConstantField(0.0);
        assert!(sine_gordon_bt_residual(&z, &z, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn center_value_is_pi() {
        let u = sine_gordon_kink(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(u.eval(0.0, 0.0).unwrap(), PI, epsilon = 1e-15);
    }

    #[test]
    fn kink_solves_the_equation_at_random_points() {
        // Truncation of the differenced mixed partial peaks near the kink
        // core at (h^2/6) * 2 a^2 * max|sech'''| ~ 2.04e-8 for a = 2 and
        // h = 1e-4; 2.5e-8 bounds it with margin across the whole box.
        let u = sine_gordon_kink(1.0, 2.0).unwrap();
        let mut rng = StdRng::seed_from_u64(0x5106);
        for _ in 0..50 {
            let x = rng.gen_range(-2.0..2.0);
            let t = rng.gen_range(-2.0..2.0);
            let r = sine_gordon_pde_residual(&u, x, t).unwrap();
            assert_abs_diff_eq!(r, 0.0, epsilon = 2.5e-8);
        }
    }

    #[test]
    fn kink_with_unit_parameters_solves_the_equation() {
        let u = sine_gordon_kink(1.0, 1.0).unwrap();
        for &(x, t) in &[(0.0, 0.0), (1.0, -0.5), (-2.0, 0.7)] {
            assert_abs_diff_eq!(sine_gordon_pde_residual(&u, x, t).unwrap(), 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn pde_residual_of_zero_field_vanishes() {
        assert_eq!(sine_gordon_pde_residual(&ConstantField(0.0), 1.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn pde_residual_of_constant_half_pi_is_minus_one() {
        let r = sine_gordon_pde_residual(&ConstantField(PI / 2.0), 0.3, -0.8).unwrap();
        assert_eq!(r, -1.0);
    }

    #[test]
    fn coupling_with_zero_partner_vanishes_for_matching_parameter() {
        let v = ConstantField(0.0);
        for (c, a) in [(1.0, 1.0), (1.0, 2.0), (-0.5, 0.7), (3.0, -1.2)] {
            let u = sine_gordon_kink(c, a).unwrap();
            for &(x, t) in &[(0.0, 0.0), (0.5, -0.25), (-1.0, 1.0)] {
                let (r1, r2) = sine_gordon_bt_residual(&u, &v, a, x, t).unwrap();
                assert_abs_diff_eq!(r1, 0.0, epsilon = 1e-12);
                assert_abs_diff_eq!(r2, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_pair_couples_trivially() {
        let z = ConstantField(0.0);
        let (r1, r2) = sine_gordon_bt_residual(&z, &z, 1.5, 0.2, 0.9).unwrap();
        assert_eq!((r1, r2), (0.0, 0.0));
    }

    #[test]
    fn mismatched_parameter_breaks_the_coupling() {
        // The kink built with a = 2 does not satisfy the a = 1 system.
        let u = sine_gordon_kink(1.0, 2.0).unwrap();
        let v = ConstantField(0.0);
        let (x, t) = (0.3, 0.1);
        let (r1, r2) = sine_gordon_bt_residual(&u, &v, 1.0, x, t).unwrap();
        // Direct evaluation of both sides with the mismatched parameter.
        let e = (2.0 * x + t / 2.0).exp();
        let expect_r1 = 4.0 * 2.0 * e / (1.0 + e * e) / 2.0 - (2.0 * (e.atan())).sin();
        let expect_r2 = 4.0 * e / 2.0 / (1.0 + e * e) / 2.0 - (2.0 * (e.atan())).sin();
        assert_abs_diff_eq!(r1, expect_r1, epsilon = 1e-14);
        assert_abs_diff_eq!(r2, expect_r2, epsilon = 1e-14);
        assert!(r1.abs() > 1e-2);
    }

    proptest! {
        #[test]
        fn kink_family_solves_equation_and_coupling(
            c in -3.0f64..3.0,
            a in prop::sample::select(vec![-2.0f64, -0.5, 0.5, 1.0, 2.5]),
            x in -1.0f64..1.0,
            t in -1.0f64..1.0,
        ) {
            let u = sine_gordon_kink(c, a).unwrap();
            let r = sine_gordon_pde_residual(&u, x, t).unwrap();
            prop_assert!(r.abs() < 1e-6, "equation residual {r}");
            let (r1, r2) = sine_gordon_bt_residual(&u, &ConstantField(0.0), a, x, t).unwrap();
            prop_assert!(r1.abs() < 1e-10 && r2.abs() < 1e-10, "coupling ({r1}, {r2})");
        }
    }
}
