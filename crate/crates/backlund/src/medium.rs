//! Material parameters of the propagation medium.
//!
//! Units are the caller's choice: pass normalized values or SI values, and
//! every derived quantity (wave speed, wavenumber, attenuation) comes out
//! in the matching unit system. The library embeds no physical constants.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Permittivity, permeability, and conductivity of a homogeneous medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMedium")]
pub struct Medium {
    epsilon: f64,
    mu: f64,
    sigma: f64,
}

#[derive(Deserialize)]
struct RawMedium {
    epsilon: f64,
    mu: f64,
    sigma: f64,
}

impl TryFrom<RawMedium> for Medium {
    type Error = Error;
    fn try_from(raw: RawMedium) -> Result<Self> {
        Medium::new(raw.epsilon, raw.mu, raw.sigma)
    }
}

impl Medium {
    pub fn new(epsilon: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon,
                reason: "permittivity must be positive and finite",
            });
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "permeability must be positive and finite",
            });
        }
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
                reason: "conductivity must be nonnegative and finite",
            });
        }
        Ok(Self { epsilon, mu, sigma })
    }

    /// Non-conducting medium.
    pub fn lossless(epsilon: f64, mu: f64) -> Result<Self> {
        Self::new(epsilon, mu, 0.0)
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

    /// Propagation speed 1/sqrt(epsilon mu).
    pub fn speed(&self) -> f64 {
        1.0 / (self.epsilon * self.mu).sqrt()
    }

    pub fn is_conducting(&self) -> bool {
        self.sigma != 0.0
    }

    /// Errors unless sigma = 0; routines for non-conducting media call this
    /// to direct misuse toward the conducting-medium API.
    pub fn require_lossless(&self) -> Result<()> {
        if self.is_conducting() {
            Err(Error::ConductingMedium { sigma: self.sigma })
        } else {
            Ok(())
        }
    }
}
