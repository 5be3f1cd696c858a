//! Run configuration: scenario selection, physical parameters, sampling
//! controls, and output destinations. Values come from an optional
//! `key=value` config file overlaid by command-line flags; unknown keys are
//! rejected rather than ignored.

use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::vec3::RealVec3;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Vacuum,
    Conductor,
    CauchyRiemann,
    Liouville,
    SineGordon,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "vacuum" => Ok(Scenario::Vacuum),
            "conductor" => Ok(Scenario::Conductor),
            "cauchy-riemann" => Ok(Scenario::CauchyRiemann),
            "liouville" => Ok(Scenario::Liouville),
            "sine-gordon" => Ok(Scenario::SineGordon),
            other => Err(Error::Config(format!(
                "unknown scenario {other:?}; expected vacuum, conductor, cauchy-riemann, \
                 liouville, or sine-gordon"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Vacuum => "vacuum",
            Scenario::Conductor => "conductor",
            Scenario::CauchyRiemann => "cauchy-riemann",
            Scenario::Liouville => "liouville",
            Scenario::SineGordon => "sine-gordon",
        }
    }

    pub fn is_electromagnetic(self) -> bool {
        matches!(self, Scenario::Vacuum | Scenario::Conductor)
    }
}

/// Deliberate defect injected into a constructed pair so the checkers have
/// something to catch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaultSpec {
    /// Multiply the magnetic field by a factor.
    ScaleB(f64),
    /// Multiply the wavenumber by a factor, leaving amplitudes alone.
    PerturbK(f64),
    /// Zero the attenuation coefficient while keeping the conductivity.
    ZeroS,
}

impl FaultSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, arg) = match text.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (text, None),
        };
        let factor = |name: &str| -> Result<f64> {
            let raw = arg.ok_or_else(|| {
                Error::Config(format!("fault {name} needs a factor, e.g. {name}:2"))
            })?;
            let value: f64 = raw
                .parse()
                .map_err(|_| Error::Config(format!("bad fault factor {raw:?}")))?;
            if !value.is_finite() {
                return Err(Error::Config(format!("fault factor {value} is not finite")));
            }
            Ok(value)
        };
        match kind {
            "scale-B" => Ok(FaultSpec::ScaleB(factor("scale-B")?)),
            "perturb-k" => Ok(FaultSpec::PerturbK(factor("perturb-k")?)),
            "zero-s" => {
                if arg.is_some() {
                    return Err(Error::Config("fault zero-s takes no argument".into()));
                }
                Ok(FaultSpec::ZeroS)
            }
            other => Err(Error::Config(format!(
                "unknown fault {other:?}; expected scale-B:<factor>, perturb-k:<factor>, \
                 or zero-s"
            ))),
        }
    }

    pub fn label(self) -> String {
        match self {
            FaultSpec::ScaleB(f) => format!("scale-B:{f}"),
            FaultSpec::PerturbK(f) => format!("perturb-k:{f}"),
            FaultSpec::ZeroS => "zero-s".into(),
        }
    }
}

impl Serialize for FaultSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label())
    }
}

pub fn parse_f64(key: &str, text: &str) -> Result<f64> {
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: expected a number, got {text:?}")))?;
    if !value.is_finite() {
        return Err(Error::Config(format!("{key}: value must be finite")));
    }
    Ok(value)
}

pub fn parse_usize(key: &str, text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: expected a nonnegative integer, got {text:?}")))
}

pub fn parse_u64(key: &str, text: &str) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: expected a nonnegative integer, got {text:?}")))
}

pub fn parse_bool(key: &str, text: &str) -> Result<bool> {
    match text.trim() {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => Err(Error::Config(format!("{key}: expected true or false, got {other:?}"))),
    }
}

pub fn parse_triple(key: &str, text: &str) -> Result<RealVec3> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "{key}: expected three comma-separated numbers, got {text:?}"
        )));
    }
    Ok(RealVec3::new(
        parse_f64(key, parts[0])?,
        parse_f64(key, parts[1])?,
        parse_f64(key, parts[2])?,
    ))
}

pub fn parse_box(key: &str, text: &str) -> Result<[f64; 4]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Config(format!(
            "{key}: expected x0,t0,x1,t1 (four comma-separated numbers), got {text:?}"
        )));
    }
    let mut out = [0.0; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = parse_f64(key, part)?;
    }
    if out[2] <= out[0] || out[3] <= out[1] {
        return Err(Error::Config(format!(
            "{key}: box must satisfy x0 < x1 and t0 < t1, got {out:?}"
        )));
    }
    Ok(out)
}

/// Partially specified configuration; `None` means "use the default".
/// Overlaying drafts lets flags override file values which override
/// defaults.
#[derive(Debug, Clone, Default)]
pub struct ConfigDraft {
    pub scenario: Option<Scenario>,
    pub eps: Option<f64>,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub omega: Option<f64>,
    pub e0: Option<RealVec3>,
    pub khat: Option<RealVec3>,
    pub phase: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub sample_box: Option<[f64; 4]>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub grid_points: Option<usize>,
    pub time_points: Option<usize>,
    pub center: Option<RealVec3>,
    pub t_center: Option<f64>,
    pub h0: Option<f64>,
    pub halvings: Option<usize>,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub quiet: Option<bool>,
    pub fault: Option<FaultSpec>,
    pub project: Option<bool>,
}

impl ConfigDraft {
    /// Parse a flat `key=value` file. Blank lines and `#` comment lines are
    /// skipped; unknown and duplicate keys are errors.
    pub fn from_file_text(text: &str) -> Result<Self> {
        let mut draft = ConfigDraft::default();
        let mut seen: Vec<String> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value, got {line:?}", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(Error::Config(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
            seen.push(key.to_string());
            draft.set(key, value)?;
        }
        Ok(draft)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "scenario" => self.scenario = Some(Scenario::parse(value)?),
            "eps" => self.eps = Some(parse_f64(key, value)?),
            "mu" => self.mu = Some(parse_f64(key, value)?),
            "sigma" => self.sigma = Some(parse_f64(key, value)?),
            "omega" => self.omega = Some(parse_f64(key, value)?),
            "e0" => self.e0 = Some(parse_triple(key, value)?),
            "khat" => self.khat = Some(parse_triple(key, value)?),
            "phase" => self.phase = Some(parse_f64(key, value)?),
            "alpha" => self.alpha = Some(parse_f64(key, value)?),
            "beta" => self.beta = Some(parse_f64(key, value)?),
            "gamma" => self.gamma = Some(parse_f64(key, value)?),
            "C" => self.c = Some(parse_f64(key, value)?),
            "a" => self.a = Some(parse_f64(key, value)?),
            "box" => self.sample_box = Some(parse_box(key, value)?),
            "samples" => self.samples = Some(parse_usize(key, value)?),
            "seed" => self.seed = Some(parse_u64(key, value)?),
            "grid-points" => self.grid_points = Some(parse_usize(key, value)?),
            "time-points" => self.time_points = Some(parse_usize(key, value)?),
            "center" => self.center = Some(parse_triple(key, value)?),
            "t-center" => self.t_center = Some(parse_f64(key, value)?),
            "h0" => self.h0 = Some(parse_f64(key, value)?),
            "halvings" => self.halvings = Some(parse_usize(key, value)?),
            "json" => self.json = Some(PathBuf::from(value)),
            "csv" => self.csv = Some(PathBuf::from(value)),
            "quiet" => self.quiet = Some(parse_bool(key, value)?),
            "break-pair" => self.fault = Some(FaultSpec::parse(value)?),
            "project" => self.project = Some(parse_bool(key, value)?),
            other => {
                return Err(Error::Config(format!("unknown config key {other:?}")));
            }
        }
        Ok(())
    }

    /// Overlay `other` on top of `self`: fields set in `other` win.
    pub fn overlay(mut self, other: ConfigDraft) -> ConfigDraft {
        macro_rules! take {
            ($($field:ident),* $(,)?) => {
                $(if other.$field.is_some() { self.$field = other.$field; })*
            };
        }
        take!(
            scenario, eps, mu, sigma, omega, e0, khat, phase, alpha, beta, gamma, c, a,
            sample_box, samples, seed, grid_points, time_points, center, t_center, h0,
            halvings, json, csv, quiet, fault, project,
        );
        self
    }

    pub fn resolve(self) -> Result<RunConfig> {
        let scenario = self
            .scenario
            .ok_or_else(|| Error::Config("scenario is required".into()))?;

        let sigma = match scenario {
            Scenario::Conductor => self.sigma.ok_or_else(|| {
                Error::Config("conductor scenario requires sigma".into())
            })?,
            Scenario::Vacuum => {
                let sigma = self.sigma.unwrap_or(0.0);
                if sigma != 0.0 {
                    return Err(Error::Config(
                        "vacuum scenario requires sigma = 0; use the conductor scenario".into(),
                    ));
                }
                sigma
            }
            _ => self.sigma.unwrap_or(0.0),
        };
        let medium = Medium::new(self.eps.unwrap_or(1.0), self.mu.unwrap_or(1.0), sigma)
            .map_err(|e| Error::Config(e.to_string()))?;

        let omega = self.omega.unwrap_or(1.0);
        if !(omega > 0.0) {
            return Err(Error::Config(format!("omega must be positive, got {omega}")));
        }

        let (c_default, box_default) = match scenario {
            Scenario::Liouville => (2.0, [0.0, 0.0, 0.5, 0.5]),
            Scenario::SineGordon => (1.0, [-1.0, -1.0, 1.0, 1.0]),
            _ => (1.0, [-1.0, -1.0, 1.0, 1.0]),
        };

        let samples = self.samples.unwrap_or(100);
        if samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        let grid_points = self.grid_points.unwrap_or(9);
        let time_points = self.time_points.unwrap_or(9);
        if grid_points < 5 || time_points < 5 {
            return Err(Error::Config(
                "grid-points and time-points must be at least 5".into(),
            ));
        }
        let halvings = self.halvings.unwrap_or(3);
        if halvings < 2 {
            return Err(Error::Config(
                "halvings must be at least 2 to fit a convergence order".into(),
            ));
        }
        if let Some(h0) = self.h0 {
            if !(h0 > 0.0) {
                return Err(Error::Config(format!("h0 must be positive, got {h0}")));
            }
        }

        Ok(RunConfig {
            scenario,
            medium,
            omega,
            e0: self.e0.unwrap_or(RealVec3::new(2.0, -1.0, 0.0)),
            khat: self.khat.unwrap_or(RealVec3::new(1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0)),
            phase: self.phase.unwrap_or(0.0),
            alpha: self.alpha.unwrap_or(0.5),
            beta: self.beta.unwrap_or(0.0),
            gamma: self.gamma.unwrap_or(0.0),
            c: self.c.unwrap_or(c_default),
            a: self.a.unwrap_or(2.0),
            sample_box: self.sample_box.unwrap_or(box_default),
            samples,
            seed: self.seed.unwrap_or(7),
            grid_points,
            time_points,
            center: self.center,
            t_center: self.t_center,
            h0: self.h0,
            halvings,
            json: self.json,
            csv: self.csv,
            quiet: self.quiet.unwrap_or(false),
            fault: self.fault,
            project: self.project.unwrap_or(false),
        })
    }
}

/// Fully resolved run configuration with scenario defaults applied.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub medium: Medium,
    pub omega: f64,
    pub e0: RealVec3,
    pub khat: RealVec3,
    pub phase: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c: f64,
    pub a: f64,
    pub sample_box: [f64; 4],
    pub samples: usize,
    pub seed: u64,
    pub grid_points: usize,
    pub time_points: usize,
    /// Grid center; commands pick their own default when absent.
    pub center: Option<RealVec3>,
    pub t_center: Option<f64>,
    /// Base spacing; defaults to wavelength/20 at run time.
    pub h0: Option<f64>,
    pub halvings: usize,
    #[serde(skip)]
    pub json: Option<PathBuf>,
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    #[serde(skip)]
    pub quiet: bool,
    pub fault: Option<FaultSpec>,
    pub project: bool,
}
