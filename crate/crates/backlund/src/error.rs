//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, evaluation, and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter {name}: {reason} (got {value})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A grid description violates its construction invariants.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A derivative stencil was requested at a node too close to the boundary.
    #[error("node index {index} on axis {axis} is not interior (need {margin} points from each end of {points})")]
    BoundaryNode {
        axis: &'static str,
        index: usize,
        margin: usize,
        points: usize,
    },

    /// The grid has too few points for the requested derivative order.
    #[error("grid too small on axis {axis}: {points} points, need at least {required}")]
    GridTooSmall {
        axis: &'static str,
        points: usize,
        required: usize,
    },

    /// A field evaluation failed at a specific grid node.
    #[error("field evaluation failed at node {node:?}: {source}")]
    NodeEvaluation {
        node: [usize; 4],
        #[source]
        source: Box<Error>,
    },

    /// Evaluation outside a field's domain of definition.
    #[error("point (x={x}, t={t}) is outside the field's domain: {reason}")]
    OutsideDomain { x: f64, t: f64, reason: String },

    /// A polynomial that must be harmonic is not.
    #[error("polynomial is not harmonic: Laplacian coefficient c[{degree_x}][{degree_y}] = {coefficient}")]
    NonHarmonic {
        degree_x: usize,
        degree_y: usize,
        coefficient: f64,
    },

    /// The amplitude has a component along the propagation direction.
    #[error("amplitude is not transverse to the propagation direction: |khat . E0| = {dot_abs:e} exceeds {tolerance:e} (transversality requires khat . E0 = 0)")]
    NonTransverse { dot_abs: f64, tolerance: f64 },

    /// A direction vector is not unit length.
    #[error("direction vector is not unit length: |v| = {norm} (must equal 1 within {tolerance:e})")]
    NotUnit { norm: f64, tolerance: f64 },

    /// A conducting medium was passed to a vacuum-only routine.
    #[error("medium has conductivity {sigma}; use the conducting-medium routines for sigma != 0")]
    ConductingMedium { sigma: f64 },

    /// The amplitude is elliptically polarized where linear polarization is required.
    #[error("amplitude is elliptically polarized (real and imaginary parts are not parallel); real-field construction requires linear polarization")]
    EllipticalPolarization,

    /// Stored attenuation/wavenumber values disagree with the medium and frequency.
    #[error("dispersion values are inconsistent with the medium: residuals ({r1:e}, {r2:e}) exceed {tolerance:e} relative")]
    DispersionMismatch { r1: f64, r2: f64, tolerance: f64 },

    /// A convergence study was requested with an unusable spacing sequence.
    #[error("invalid spacing sequence: {0}")]
    InvalidSpacingSequence(String),

    /// Configuration or command-line input error.
    #[error("config error: {0}")]
    Config(String),

    /// Malformed CSV field data.
    #[error("csv error: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by bad user input rather than failed checks.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}
