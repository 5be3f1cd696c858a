//! Harmonic bivariate polynomials and coefficient-level conjugate
//! integration.

use crate::classical::ScalarField2D;
use crate::error::{Error, Result};

/// Default cap on total degree. Generous for the families this crate
/// constructs; integration stays exact in double arithmetic at this size.
pub const MAX_TOTAL_DEGREE: usize = 8;

const HARMONIC_REL_TOL: f64 = 1e-10;

/// Dense coefficient table c[i][j] for x^i t^j terms, plus elementary
/// calculus on it. Rows index the x-power.
type Coeffs = Vec<Vec<f64>>;

fn zero_coeffs(cap: usize) -> Coeffs {
    vec![vec![0.0; cap + 1]; cap + 1]
}

fn eval_raw(c: &Coeffs, x: f64, t: f64) -> f64 {
    // Horner in x over Horner-in-t rows.
    let mut acc = 0.0;
    for row in c.iter().rev() {
        let mut row_val = 0.0;
        for &cij in row.iter().rev() {
            row_val = row_val * t + cij;
        }
        acc = acc * x + row_val;
    }
    acc
}

fn d_x_raw(c: &Coeffs) -> Coeffs {
    let mut out = zero_coeffs(c.len() - 1);
    for i in 1..c.len() {
        for j in 0..c[i].len() {
            out[i - 1][j] = i as f64 * c[i][j];
        }
    }
    out
}

fn d_t_raw(c: &Coeffs) -> Coeffs {
    let mut out = zero_coeffs(c.len() - 1);
    for (i, row) in c.iter().enumerate() {
        for j in 1..row.len() {
            out[i][j - 1] = j as f64 * row[j];
        }
    }
    out
}

fn int_x_raw(c: &Coeffs, cap: usize) -> Result<Coeffs> {
    let mut out = zero_coeffs(cap);
    for (i, row) in c.iter().enumerate() {
        for (j, &cij) in row.iter().enumerate() {
            if cij == 0.0 {
                continue;
            }
            if i + 1 + j > cap {
                return Err(Error::InvalidParameter {
                    name: "degree",
                    value: (i + 1 + j) as f64,
                    reason: "antiderivative exceeds the degree cap",
                });
            }
            out[i + 1][j] = cij / (i + 1) as f64;
        }
    }
    Ok(out)
}

fn int_t_raw(c: &Coeffs, cap: usize) -> Result<Coeffs> {
    let mut out = zero_coeffs(cap);
    for (i, row) in c.iter().enumerate() {
        for (j, &cij) in row.iter().enumerate() {
            if cij == 0.0 {
                continue;
            }
            if i + j + 1 > cap {
                return Err(Error::InvalidParameter {
                    name: "degree",
                    value: (i + j + 1) as f64,
                    reason: "antiderivative exceeds the degree cap",
                });
            }
            out[i][j + 1] = cij / (j + 1) as f64;
        }
    }
    Ok(out)
}

fn magnitude_scale(c: &Coeffs) -> f64 {
    c.iter()
        .flatten()
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1.0)
}

/// First nonzero coefficient of the Laplacian, scanned by increasing total
/// degree, or None when the polynomial is harmonic to within rounding.
fn laplacian_defect(c: &Coeffs, tol: f64) -> Option<(usize, usize, f64)> {
    let cap = c.len() - 1;
    let coeff = |i: usize, j: usize| -> f64 {
        if i <= cap && j <= cap {
            c[i][j]
        } else {
            0.0
        }
    };
    let mut worst: Option<(usize, usize, f64)> = None;
    for total in 0..=cap.saturating_sub(2) {
        for p in 0..=total {
            let q = total - p;
            let lap = (p + 2) as f64 * (p + 1) as f64 * coeff(p + 2, q)
                + (q + 2) as f64 * (q + 1) as f64 * coeff(p, q + 2);
            if lap.abs() > tol && worst.is_none() {
                worst = Some((p, q, lap));
            }
        }
    }
    worst
}

/// Bivariate polynomial with identically vanishing Laplacian.
///
/// Coefficients are stored densely up to the degree cap; construction
/// through [`HarmonicPoly::new`] verifies harmonicity term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPoly {
    coeffs: Coeffs,
}

impl HarmonicPoly {
    /// Build from sparse (x-power, t-power, coefficient) terms and verify
    /// the Laplacian vanishes coefficient by coefficient.
    pub fn new(terms: &[(usize, usize, f64)]) -> Result<Self> {
        let poly = Self::from_parts(terms)?;
        let tol = HARMONIC_REL_TOL * magnitude_scale(&poly.coeffs);
        if let Some((p, q, lap)) = laplacian_defect(&poly.coeffs, tol) {
            return Err(Error::NonHarmonic {
                degree_x: p,
                degree_y: q,
                coefficient: lap,
            });
        }
        Ok(poly)
    }

    /// Build without the harmonicity check. Downstream consumers that
    /// require harmonicity re-check and report the defect themselves.
    pub fn from_parts(terms: &[(usize, usize, f64)]) -> Result<Self> {
        let mut coeffs = zero_coeffs(MAX_TOTAL_DEGREE);
        for &(i, j, c) in terms {
            if i + j > MAX_TOTAL_DEGREE {
                return Err(Error::InvalidParameter {
                    name: "degree",
                    value: (i + j) as f64,
                    reason: "term exceeds the total-degree cap",
                });
            }
            if !c.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "coefficient",
                    value: c,
                    reason: "must be finite",
                });
            }
            coeffs[i][j] += c;
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: zero_coeffs(MAX_TOTAL_DEGREE) }
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i < self.coeffs.len() && j < self.coeffs[i].len() {
            self.coeffs[i][j]
        } else {
            0.0
        }
    }

    /// Sparse view of the nonzero terms.
    pub fn terms(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0.0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0.0)
    }
}

impl ScalarField2D for HarmonicPoly {
    fn eval(&self, x: f64, t: f64) -> Result<f64> {
        Ok(eval_raw(&self.coeffs, x, t))
    }
    fn d_x(&self, x: f64, t: f64) -> Result<f64> {
        Ok(eval_raw(&d_x_raw(&self.coeffs), x, t))
    }
    fn d_t(&self, x: f64, t: f64) -> Result<f64> {
        Ok(eval_raw(&d_t_raw(&self.coeffs), x, t))
    }
}

/// Conjugate of a harmonic polynomial: the u with u_x = v_t and u_t = -v_x,
/// computed exactly at the coefficient level. The free additive constant is
/// normalized to zero.
///
/// The construction integrates v_t in x, then fixes the remaining function
/// of t alone from the second relation; harmonicity of v is exactly the
/// condition that makes the leftover x-dependence cancel, so it is verified
/// first and a defect is reported as the offending Laplacian coefficient.
pub fn integrate_cauchy_riemann(v: &HarmonicPoly) -> Result<HarmonicPoly> {
    let tol = HARMONIC_REL_TOL * magnitude_scale(&v.coeffs);
    if let Some((p, q, lap)) = laplacian_defect(&v.coeffs, tol) {
        return Err(Error::NonHarmonic {
            degree_x: p,
            degree_y: q,
            coefficient: lap,
        });
    }

    let cap = MAX_TOTAL_DEGREE;
    let v_t = d_t_raw(&v.coeffs);
    let v_x = d_x_raw(&v.coeffs);
    // u = int v_t dx + g(t); then g'(t) = -v_x - d/dt(int v_t dx).
    let u_main = int_x_raw(&v_t, cap)?;
    let u_main_t = d_t_raw(&u_main);

    let mut g_prime = vec![0.0; cap + 1];
    for i in 0..=cap {
        for j in 0..=cap {
            let residual = -v_x.get(i).map_or(0.0, |r| r.get(j).copied().unwrap_or(0.0))
                - u_main_t.get(i).map_or(0.0, |r| r.get(j).copied().unwrap_or(0.0));
            if i == 0 {
                g_prime[j] = residual;
            } else {
                debug_assert!(
                    residual.abs() <= tol,
                    "x-dependent leftover c[{i}][{j}] = {residual} for harmonic input"
                );
            }
        }
    }
    let mut g_prime_coeffs = zero_coeffs(cap);
    g_prime_coeffs[0] = g_prime;
    let g = int_t_raw(&g_prime_coeffs, cap)?;

    let mut coeffs = zero_coeffs(cap);
    for i in 0..=cap {
        for j in 0..=cap {
            coeffs[i][j] = u_main[i][j] + g[i][j];
        }
    }
    coeffs[0][0] = 0.0;
    Ok(HarmonicPoly { coeffs })
}
