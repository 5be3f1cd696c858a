//! Electromagnetic field pairs as evaluable closures plus a provenance
//! record of what built them.
//!
//! The residual machinery consumes only point evaluations, never the
//! construction parameters, so a pair doctored by a fault helper is
//! indistinguishable from an honest one until its residuals are measured.
//! That separation is what makes the detection tests meaningful.

use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::vec3::{ComplexVec3, RealVec3};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

pub type FieldFn = Arc<dyn Fn(RealVec3, f64) -> ComplexVec3 + Send + Sync>;

/// Whether a pair evaluates the complex exponential form or its real part
/// written directly as cosines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldForm {
    Complex,
    Real,
}

/// What built a field pair.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Vacuum {
        spec: crate::vacuum::PlaneWaveSpec,
        medium: Medium,
        form: FieldForm,
    },
    Conductor {
        spec: crate::conductor::AttenuatedWaveSpec,
        medium: Medium,
        form: FieldForm,
    },
    Synthetic {
        label: String,
    },
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::Vacuum { form, .. } => format!("vacuum plane wave ({form:?})"),
            Provenance::Conductor { form, .. } => format!("attenuated plane wave ({form:?})"),
            Provenance::Synthetic { label } => label.clone(),
        }
    }
}

/// An electric/magnetic field pair, evaluable anywhere in space-time.
#[derive(Clone)]
pub struct EMFieldPair {
    e: FieldFn,
    b: FieldFn,
    provenance: Provenance,
    faults: Vec<String>,
}

impl EMFieldPair {
    pub fn new(e: FieldFn, b: FieldFn, provenance: Provenance) -> Self {
        Self { e, b, provenance, faults: Vec::new() }
    }

    pub fn synthetic<E, B>(label: impl Into<String>, e: E, b: B) -> Self
    where
        E: Fn(RealVec3, f64) -> ComplexVec3 + Send + Sync + 'static,
        B: Fn(RealVec3, f64) -> ComplexVec3 + Send + Sync + 'static,
    {
        Self::new(
            Arc::new(e),
            Arc::new(b),
            Provenance::Synthetic { label: label.into() },
        )
    }

    pub fn e_at(&self, r: RealVec3, t: f64) -> ComplexVec3 {
        (self.e)(r, t)
    }

    pub fn b_at(&self, r: RealVec3, t: f64) -> ComplexVec3 {
        (self.b)(r, t)
    }

    pub fn e_fn(&self) -> FieldFn {
        self.e.clone()
    }

    pub fn b_fn(&self) -> FieldFn {
        self.b.clone()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Fault labels applied to this pair, in application order.
    pub fn faults(&self) -> &[String] {
        &self.faults
    }

    pub fn is_faulted(&self) -> bool {
        !self.faults.is_empty()
    }

    /// Copy of the pair with the magnetic field multiplied by a constant.
    /// Deliberately breaks the coupling between the two fields; used to
    /// confirm the residual checks catch an inconsistent pair.
    pub fn scale_b(&self, factor: f64) -> Self {
        let b = self.b.clone();
        let mut faults = self.faults.clone();
        faults.push(format!("scale-b:{factor}"));
        Self {
            e: self.e.clone(),
            b: Arc::new(move |r, t| b(r, t) * factor),
            provenance: self.provenance.clone(),
            faults,
        }
    }

    /// Record a fault applied during construction (for builders that bake
    /// the fault into the closures themselves).
    pub fn with_fault(mut self, label: impl Into<String>) -> Self {
        self.faults.push(label.into());
        self
    }
}

impl fmt::Debug for EMFieldPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EMFieldPair")
            .field("provenance", &self.provenance.label())
            .field("faults", &self.faults)
            .finish_non_exhaustive()
    }
}

const LINEAR_POLARIZATION_REL_TOL: f64 = 1e-12;

/// Split a complex amplitude into a real vector and a phase, E0 = E0R e^{i
/// alpha}. Possible exactly when the real and imaginary parts of E0 are
/// parallel; otherwise the polarization is elliptical and there is no such
/// decomposition.
pub fn linear_polarization(e0: ComplexVec3) -> Result<(RealVec3, f64)> {
    let norm = e0.norm();
    if norm == 0.0 {
        return Ok((RealVec3::zero(), 0.0));
    }
    let lead = [e0.x, e0.y, e0.z]
        .into_iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let alpha = lead.arg();
    let rotated = e0.scale(Complex64::from_polar(1.0, -alpha));
    if rotated.imag_part().norm() > LINEAR_POLARIZATION_REL_TOL * norm {
        return Err(Error::EllipticalPolarization);
    }
    Ok((rotated.real_part(), alpha))
}
