//! Real and complex 3-vectors with the bilinear products used by the
//! plane-wave amplitude conditions.
//!
//! The dot product on complex vectors is deliberately unconjugated: every
//! contraction appearing in the amplitude conditions has a real left factor
//! (the wave vector or the propagation direction), so `k . E0 = 0` reads
//! literally as a bilinear product.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Real 3-vector: positions, wave vectors, propagation directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Complex 3-vector: field amplitudes and field values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl RealVec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn dot(self, other: RealVec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: RealVec3) -> RealVec3 {
        RealVec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit-length check at the stated relative tolerance.
    pub fn is_unit(self, tolerance: f64) -> bool {
        (self.norm() - 1.0).abs() <= tolerance
    }

    pub fn normalized(self) -> Option<RealVec3> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn component(self, axis: SpatialAxis) -> f64 {
        match axis {
            SpatialAxis::X => self.x,
            SpatialAxis::Y => self.y,
            SpatialAxis::Z => self.z,
        }
    }
}

impl ComplexVec3 {
    pub const fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::splat_re(0.0, 0.0, 0.0)
    }

    /// Build from real components.
    pub fn splat_re(x: f64, y: f64, z: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0), Complex64::new(z, 0.0))
    }

    /// Unconjugated bilinear dot product `a.x b.x + a.y b.y + a.z b.z`.
    pub fn dot(self, other: ComplexVec3) -> Complex64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Component-wise complex cross product.
    pub fn cross(self, other: ComplexVec3) -> ComplexVec3 {
        ComplexVec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Hermitian norm: sqrt(|x|^2 + |y|^2 + |z|^2).
    pub fn norm(self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()).sqrt()
    }

    pub fn scale(self, factor: Complex64) -> ComplexVec3 {
        ComplexVec3::new(self.x * factor, self.y * factor, self.z * factor)
    }

    pub fn real_part(self) -> RealVec3 {
        RealVec3::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn imag_part(self) -> RealVec3 {
        RealVec3::new(self.x.im, self.y.im, self.z.im)
    }

    pub fn component(self, axis: SpatialAxis) -> Complex64 {
        match axis {
            SpatialAxis::X => self.x,
            SpatialAxis::Y => self.y,
            SpatialAxis::Z => self.z,
        }
    }
}

/// Spatial axis selector shared by vector components and grid axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpatialAxis {
    X,
    Y,
    Z,
}

impl SpatialAxis {
    pub const ALL: [SpatialAxis; 3] = [SpatialAxis::X, SpatialAxis::Y, SpatialAxis::Z];
}

impl From<RealVec3> for ComplexVec3 {
    fn from(v: RealVec3) -> Self {
        ComplexVec3::splat_re(v.x, v.y, v.z)
    }
}

impl Add for RealVec3 {
    type Output = RealVec3;
    fn add(self, rhs: RealVec3) -> RealVec3 {
        RealVec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for RealVec3 {
    type Output = RealVec3;
    fn sub(self, rhs: RealVec3) -> RealVec3 {
        RealVec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for RealVec3 {
    type Output = RealVec3;
    fn mul(self, rhs: f64) -> RealVec3 {
        RealVec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl Neg for RealVec3 {
    type Output = RealVec3;
    fn neg(self) -> RealVec3 {
        self * -1.0
    }
}

impl Add for ComplexVec3 {
    type Output = ComplexVec3;
    fn add(self, rhs: ComplexVec3) -> ComplexVec3 {
        ComplexVec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for ComplexVec3 {
    type Output = ComplexVec3;
    fn sub(self, rhs: ComplexVec3) -> ComplexVec3 {
        ComplexVec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for ComplexVec3 {
    type Output = ComplexVec3;
    fn mul(self, rhs: f64) -> ComplexVec3 {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Neg for ComplexVec3 {
    type Output = ComplexVec3;
    fn neg(self) -> ComplexVec3 {
        self * -1.0
    }
}
