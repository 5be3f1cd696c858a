//! The Liouville equation u_xt = e^u: a closed-form solution family and
//! the first-order system that couples it to solutions of v_xt = 0.

use crate::classical::{mixed_partial_xt, ScalarField2D, DEFAULT_MIXED_STEP};
use crate::error::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// u(x, t) = -2 ln(C - (x + t)/sqrt2), defined where the argument of the
/// logarithm is positive. Blows up on the line x + t = sqrt2 C.
#[derive(Debug, Clone, Copy)]
pub struct LiouvilleSolution {
    pub c: f64,
}

pub fn liouville_solution(c: f64) -> LiouvilleSolution {
    LiouvilleSolution { c }
}

impl LiouvilleSolution {
    /// C - (x + t)/sqrt2, the argument of the logarithm.
    fn arg(&self, x: f64, t: f64) -> Result<f64> {
        let arg = self.c - (x + t) / SQRT_2;
        if arg > 0.0 {
            Ok(arg)
        } else {
            Err(Error::OutsideDomain {
                x,
                t,
                reason: format!(
                    "logarithm argument {} is not positive (singular line x + t = {})",
                    arg,
                    SQRT_2 * self.c
                ),
            })
        }
    }
}

impl ScalarField2D for LiouvilleSolution {
    fn eval(&self, x: f64, t: f64) -> Result<f64> {
        Ok(-2.0 * self.arg(x, t)?.ln())
    }
    fn d_x(&self, x: f64, t: f64) -> Result<f64> {
        Ok(SQRT_2 / self.arg(x, t)?)
    }
    fn d_t(&self, x: f64, t: f64) -> Result<f64> {
        Ok(SQRT_2 / self.arg(x, t)?)
    }
}

/// Residuals of the coupling system
///   u_x + v_x = sqrt2 e^{(u-v)/2},
///   u_t - v_t = sqrt2 e^{(u+v)/2},
/// as (left - right) of each equation in order.
pub fn liouville_bt_residual<U, V>(u: &U, v: &V, x: f64, t: f64) -> Result<(f64, f64)>
where
    U: ScalarField2D,
    V: ScalarField2D,
{
    let (uv, vv) = (u.eval(x, t)?, v.eval(x, t)?);
    let r1 = u.d_x(x, t)? + v.d_x(x, t)? - SQRT_2 * ((uv - vv) / 2.0).exp();
    let r2 = u.d_t(x, t)? - v.d_t(x, t)? - SQRT_2 * ((uv + vv) / 2.0).exp();
    Ok((r1, r2))
}

/// u_xt - e^u with the mixed partial formed from the analytic t-partial.
pub fn liouville_pde_residual<U: ScalarField2D>(u: &U, x: f64, t: f64) -> Result<f64> {
    liouville_pde_residual_with_step(u, x, t, DEFAULT_MIXED_STEP)
}

pub fn liouville_pde_residual_with_step<U: ScalarField2D>(
    u: &U,
    x: f64,
    t: f64,
    h: f64,
) -> Result<f64> {
    Ok(mixed_partial_xt(u, x, t, h)? - u.eval(x, t)?.exp())
}
