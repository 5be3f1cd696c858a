//! Uniform space-time sampling grids and central-difference stencils.
//!
//! Grids are dense and desk-scale: three spatial axes plus one temporal axis,
//! row-major with the time index varying fastest. Derivatives are evaluated
//! only at interior nodes so every stencil stays second-order; callers exclude
//! boundary shells rather than falling back to one-sided differences.

use crate::error::{Error, Result};
use crate::vec3::{ComplexVec3, RealVec3, SpatialAxis};
use serde::{Deserialize, Serialize};

/// Grid axis: three spatial directions plus time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
    T,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::X, Axis::Y, Axis::Z, Axis::T];

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
            Axis::T => "t",
        }
    }

    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
            Axis::T => 3,
        }
    }
}

impl From<SpatialAxis> for Axis {
    fn from(axis: SpatialAxis) -> Axis {
        match axis {
            SpatialAxis::X => Axis::X,
            SpatialAxis::Y => Axis::Y,
            SpatialAxis::Z => Axis::Z,
        }
    }
}

/// Uniform sampling grid over a space-time box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub origin: RealVec3,
    /// Edge lengths of the spatial box.
    pub extent: RealVec3,
    /// Nodes per spatial axis (x, y, z).
    pub points: [usize; 3],
    pub time_origin: f64,
    pub time_extent: f64,
    pub time_points: usize,
}

/// Central differences of second order need five points per axis before any
/// node qualifies as interior for a second derivative.
pub const MIN_POINTS_PER_AXIS: usize = 5;

impl GridSpec {
    pub fn new(
        origin: RealVec3,
        extent: RealVec3,
        points: [usize; 3],
        time_origin: f64,
        time_extent: f64,
        time_points: usize,
    ) -> Result<Self> {
        let spec = Self { origin, extent, points, time_origin, time_extent, time_points };
        for axis in Axis::ALL {
            let n = spec.points_on(axis);
            if n < MIN_POINTS_PER_AXIS {
                return Err(Error::InvalidGrid(format!(
                    "axis {} has {} points, need at least {}",
                    axis.name(),
                    n,
                    MIN_POINTS_PER_AXIS
                )));
            }
            let h = spec.extent_on(axis) / (n - 1) as f64;
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "axis {} spacing must be positive and finite, got {}",
                    axis.name(),
                    h
                )));
            }
        }
        Ok(spec)
    }

    pub fn points_on(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.points[0],
            Axis::Y => self.points[1],
            Axis::Z => self.points[2],
            Axis::T => self.time_points,
        }
    }

    pub fn extent_on(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.extent.x,
            Axis::Y => self.extent.y,
            Axis::Z => self.extent.z,
            Axis::T => self.time_extent,
        }
    }

    /// Node spacing along one axis.
    pub fn spacing(&self, axis: Axis) -> f64 {
        self.extent_on(axis) / (self.points_on(axis) - 1) as f64
    }

    pub fn spacings(&self) -> [f64; 4] {
        [
            self.spacing(Axis::X),
            self.spacing(Axis::Y),
            self.spacing(Axis::Z),
            self.spacing(Axis::T),
        ]
    }

    pub fn node_count(&self) -> usize {
        self.points[0] * self.points[1] * self.points[2] * self.time_points
    }

    /// Flat index of a node, row-major in axis order x, y, z, t
    /// (time varies fastest).
    pub fn flat_index(&self, node: [usize; 4]) -> usize {
        let [nx, ny, nz] = [self.points[0], self.points[1], self.points[2]];
        let nt = self.time_points;
        debug_assert!(node[0] < nx && node[1] < ny && node[2] < nz && node[3] < nt);
        ((node[0] * ny + node[1]) * nz + node[2]) * nt + node[3]
    }

    /// Spatial position and time of a node.
    pub fn coords(&self, node: [usize; 4]) -> (RealVec3, f64) {
        let r = RealVec3::new(
            self.origin.x + node[0] as f64 * self.spacing(Axis::X),
            self.origin.y + node[1] as f64 * self.spacing(Axis::Y),
            self.origin.z + node[2] as f64 * self.spacing(Axis::Z),
        );
        let t = self.time_origin + node[3] as f64 * self.spacing(Axis::T);
        (r, t)
    }

    /// Iterate all nodes in storage order.
    pub fn nodes(&self) -> impl Iterator<Item = [usize; 4]> {
        let [nx, ny, nz] = [self.points[0], self.points[1], self.points[2]];
        let nt = self.time_points;
        (0..nx).flat_map(move |ix| {
            (0..ny).flat_map(move |iy| {
                (0..nz).flat_map(move |iz| (0..nt).map(move |it| [ix, iy, iz, it]))
            })
        })
    }

    /// Iterate nodes at least `margin` points away from every boundary.
    pub fn interior_nodes(&self, margin: usize) -> impl Iterator<Item = [usize; 4]> {
        let ranges: Vec<std::ops::Range<usize>> = Axis::ALL
            .iter()
            .map(|&axis| {
                let n = self.points_on(axis);
                if n > 2 * margin { margin..n - margin } else { 0..0 }
            })
            .collect();
        let [rx, ry, rz, rt] =
            [ranges[0].clone(), ranges[1].clone(), ranges[2].clone(), ranges[3].clone()];
        rx.flat_map(move |ix| {
            let (ry, rz, rt) = (ry.clone(), rz.clone(), rt.clone());
            ry.flat_map(move |iy| {
                let (rz, rt) = (rz.clone(), rt.clone());
                rz.flat_map(move |iz| rt.clone().map(move |it| [ix, iy, iz, it]))
            })
        })
    }

    pub fn interior_count(&self, margin: usize) -> usize {
        Axis::ALL
            .iter()
            .map(|&axis| self.points_on(axis).saturating_sub(2 * margin))
            .product()
    }
}

/// A vector field evaluated at every node of a grid.
#[derive(Debug, Clone)]
pub struct SampledField {
    grid: GridSpec,
    values: Vec<ComplexVec3>,
}

impl SampledField {
    /// Evaluate a fallible field at every node. Evaluation failures are
    /// reported with the offending node index.
    pub fn sample<F>(field: F, grid: &GridSpec) -> Result<Self>
    where
        F: Fn(RealVec3, f64) -> Result<ComplexVec3>,
    {
        let mut values = Vec::with_capacity(grid.node_count());
        for node in grid.nodes() {
            let (r, t) = grid.coords(node);
            let value = field(r, t)
                .map_err(|source| Error::NodeEvaluation { node, source: Box::new(source) })?;
            values.push(value);
        }
        Ok(Self { grid: grid.clone(), values })
    }

    /// Evaluate an infallible field at every node.
    pub fn sample_exact<F>(field: F, grid: &GridSpec) -> Self
    where
        F: Fn(RealVec3, f64) -> ComplexVec3,
    {
        Self::sample(|r, t| Ok(field(r, t)), grid).expect("infallible field evaluation")
    }

    /// Construct from pre-computed values in storage order.
    pub fn from_values(grid: GridSpec, values: Vec<ComplexVec3>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match grid node count {}",
                values.len(),
                grid.node_count()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn value(&self, node: [usize; 4]) -> ComplexVec3 {
        self.values[self.grid.flat_index(node)]
    }

    pub fn values(&self) -> &[ComplexVec3] {
        &self.values
    }

    /// Second-order central difference along one axis at a node.
    ///
    /// Order 1: (f+ - f-) / 2h. Order 2: (f+ - 2 f0 + f-) / h^2. The node
    /// must sit at least `order` points from each boundary of the axis.
    pub fn central_diff(&self, axis: Axis, order: DiffOrder, node: [usize; 4]) -> Result<ComplexVec3> {
        let n = self.grid.points_on(axis);
        let margin = order.margin();
        if n < 2 * margin + 1 {
            return Err(Error::GridTooSmall {
                axis: axis.name(),
                points: n,
                required: 2 * margin + 1,
            });
        }
        let i = node[axis.index()];
        if i < margin || i + margin >= n {
            return Err(Error::BoundaryNode {
                axis: axis.name(),
                index: i,
                margin,
                points: n,
            });
        }
        let h = self.grid.spacing(axis);
        let shift = |node: [usize; 4], delta: isize| {
            let mut out = node;
            out[axis.index()] = (i as isize + delta) as usize;
            out
        };
        let plus = self.value(shift(node, 1));
        let minus = self.value(shift(node, -1));
        Ok(match order {
            DiffOrder::First => (plus - minus) * (0.5 / h),
            DiffOrder::Second => {
                let center = self.value(node);
                (plus - center * 2.0 + minus) * (1.0 / (h * h))
            }
        })
    }
}

/// Derivative order supported by the central stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    First,
    Second,
}

impl DiffOrder {
    /// Interior margin required on the differenced axis.
    pub fn margin(self) -> usize {
        match self {
            DiffOrder::First => 1,
            DiffOrder::Second => 2,
        }
    }
}
