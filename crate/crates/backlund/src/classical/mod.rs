//! Classical second-order systems in two variables and the first-order
//! systems that couple their solutions in conjugate pairs.
//!
//! Every solution family here is closed-form and carries exact first
//! partials. Mixed second partials are never hand-derived: they come from
//! central-differencing the analytic t-partial in x, which keeps residual
//! evaluation second-order accurate without a symbolic layer.

pub mod laplace;
pub mod liouville;
pub mod poly;
pub mod sine_gordon;

pub use laplace::{
    laplace_conjugate_params, laplace_residual, laplace_residual_with_step, LaplaceQuadParams,
};
pub use liouville::{
    liouville_bt_residual, liouville_pde_residual, liouville_pde_residual_with_step,
    liouville_solution, LiouvilleSolution,
};
pub use poly::{integrate_cauchy_riemann, HarmonicPoly};
pub use sine_gordon::{
    sine_gordon_bt_residual, sine_gordon_kink, sine_gordon_pde_residual,
    sine_gordon_pde_residual_with_step, SineGordonKink,
};

use crate::error::Result;

/// Step used when a mixed partial has to be formed numerically.
pub const DEFAULT_MIXED_STEP: f64 = 1e-4;

/// A real scalar field of two variables with exact first partials.
///
/// The second variable is called `t` throughout; for the static families
/// (harmonic polynomials) it is simply the second Cartesian coordinate.
pub trait ScalarField2D {
    fn eval(&self, x: f64, t: f64) -> Result<f64>;
    fn d_x(&self, x: f64, t: f64) -> Result<f64>;
    fn d_t(&self, x: f64, t: f64) -> Result<f64>;
}

impl<T: ScalarField2D + ?Sized> ScalarField2D for &T {
    fn eval(&self, x: f64, t: f64) -> Result<f64> {
        (**self).eval(x, t)
    }
    fn d_x(&self, x: f64, t: f64) -> Result<f64> {
        (**self).d_x(x, t)
    }
    fn d_t(&self, x: f64, t: f64) -> Result<f64> {
        (**self).d_t(x, t)
    }
}

/// Constant field; both partials vanish.
#[derive(Debug, Clone, Copy)]
pub struct ConstantField(pub f64);

impl ScalarField2D for ConstantField {
    fn eval(&self, _x: f64, _t: f64) -> Result<f64> {
        Ok(self.0)
    }
    fn d_x(&self, _x: f64, _t: f64) -> Result<f64> {
        Ok(0.0)
    }
    fn d_t(&self, _x: f64, _t: f64) -> Result<f64> {
        Ok(0.0)
    }
}

/// Field assembled from closures for the value and its first partials.
/// The caller is responsible for the partials actually being derivatives
/// of the value.
#[derive(Clone)]
pub struct AnalyticField<F, Fx, Ft> {
    pub value: F,
    pub partial_x: Fx,
    pub partial_t: Ft,
}

impl<F, Fx, Ft> ScalarField2D for AnalyticField<F, Fx, Ft>
where
    F: Fn(f64, f64) -> f64,
    Fx: Fn(f64, f64) -> f64,
    Ft: Fn(f64, f64) -> f64,
{
    fn eval(&self, x: f64, t: f64) -> Result<f64> {
        Ok((self.value)(x, t))
    }
    fn d_x(&self, x: f64, t: f64) -> Result<f64> {
        Ok((self.partial_x)(x, t))
    }
    fn d_t(&self, x: f64, t: f64) -> Result<f64> {
        Ok((self.partial_t)(x, t))
    }
}

/// Mixed partial u_xt by central-differencing the analytic t-partial in x.
pub fn mixed_partial_xt<U: ScalarField2D>(u: &U, x: f64, t: f64, h: f64) -> Result<f64> {
    Ok((u.d_t(x + h, t)? - u.d_t(x - h, t)?) / (2.0 * h))
}

/// Residuals of the conjugate-pair system u_x = v_t, u_t = -v_x
/// (the Cauchy-Riemann relations, with t as the second coordinate).
///
/// Returns (u_x - v_t, u_t + v_x) from the analytic partials.
pub fn cauchy_riemann_residual<U, V>(u: &U, v: &V, x: f64, t: f64) -> Result<(f64, f64)>
where
    U: ScalarField2D,
    V: ScalarField2D,
{
    let r1 = u.d_x(x, t)? - v.d_t(x, t)?;
    let r2 = u.d_t(x, t)? + v.d_x(x, t)?;
    Ok((r1, r2))
}
