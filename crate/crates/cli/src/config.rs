//! Run parameters: built-in defaults, a flat `key=value` config file, and
//! command-line flags, merged in that order of increasing precedence.

use std::path::Path;
use std::str::FromStr;

use qdfe::{Method, QubitPair, Reservoir, SystemConfig, XStateParams};

use crate::error::CliError;

/// Every optional run parameter. `None` means "not given at this level".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub eta_a: Option<f64>,
    pub eta_b: Option<f64>,
    pub omega_c_a: Option<f64>,
    pub omega_c_b: Option<f64>,
    pub beta_a: Option<f64>,
    pub beta_b: Option<f64>,
    pub kappa: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub omega_a: Option<f64>,
    pub omega_b: Option<f64>,
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub method: Option<Method>,
}

/// Fully resolved experiment: a validated system plus the sampling settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub config: SystemConfig,
    /// β_b = κ β_a when set; re-applied whenever β_a is swept.
    pub kappa: Option<f64>,
    pub t_max: f64,
    pub points: usize,
    pub method: Method,
}

pub fn parse_method(s: &str) -> Result<Method, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "closed" => Ok(Method::Closed),
        "bruteforce" | "brute-force" => Ok(Method::BruteForce),
        "quadrature" => Ok(Method::Quadrature),
        other => Err(CliError::Config(format!(
            "unknown method '{other}' (expected closed, bruteforce or quadrature)"
        ))),
    }
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Closed => "closed",
        Method::BruteForce => "bruteforce",
        Method::Quadrature => "quadrature",
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("cannot parse {key} = '{value}'")))
}

impl Params {
    /// Defaults: two identical baths (η = 0.6, ω_c = 1, β = 5), c = (1, 0.4, −0.4).
    pub fn defaults() -> Self {
        Self {
            eta_a: Some(0.6),
            eta_b: Some(0.6),
            omega_c_a: Some(1.0),
            omega_c_b: Some(1.0),
            beta_a: Some(5.0),
            beta_b: Some(5.0),
            kappa: None,
            c1: Some(1.0),
            c2: Some(0.4),
            c3: Some(-0.4),
            omega_a: Some(0.0),
            omega_b: Some(0.0),
            t_max: Some(30.0),
            points: Some(300),
            method: Some(Method::Closed),
        }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key.trim() {
            "eta_a" => self.eta_a = Some(parse_num(key, value)?),
            "eta_b" => self.eta_b = Some(parse_num(key, value)?),
            "omega_c_a" => self.omega_c_a = Some(parse_num(key, value)?),
            "omega_c_b" => self.omega_c_b = Some(parse_num(key, value)?),
            "beta_a" => self.beta_a = Some(parse_num(key, value)?),
            "beta_b" => self.beta_b = Some(parse_num(key, value)?),
            "kappa" => self.kappa = Some(parse_num(key, value)?),
            "c1" => self.c1 = Some(parse_num(key, value)?),
            "c2" => self.c2 = Some(parse_num(key, value)?),
            "c3" => self.c3 = Some(parse_num(key, value)?),
            "omega_A" => self.omega_a = Some(parse_num(key, value)?),
            "omega_B" => self.omega_b = Some(parse_num(key, value)?),
            "t_max" => self.t_max = Some(parse_num(key, value)?),
            "points" => self.points = Some(parse_num(key, value)?),
            "method" => self.method = Some(parse_method(value)?),
            other => return Err(CliError::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Parses the flat `key=value` format; `#` starts a comment.
    pub fn parse_file_contents(text: &str) -> Result<Self, CliError> {
        let mut p = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1))
            })?;
            p.set(key, value)?;
        }
        p.check_exclusive("config file")?;
        Ok(p)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_file_contents(&text)
    }

    pub fn check_exclusive(&self, level: &str) -> Result<(), CliError> {
        if self.beta_b.is_some() && self.kappa.is_some() {
            return Err(CliError::Config(format!(
                "{level}: give either beta_b or kappa, not both"
            )));
        }
        Ok(())
    }

    /// Values in `over` win. A κ at a higher level replaces a lower-level β_b
    /// and vice versa.
    pub fn merged(mut self, over: &Params) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(eta_a, eta_b, omega_c_a, omega_c_b, beta_a, c1, c2, c3, omega_a, omega_b, t_max, points, method);
        if over.kappa.is_some() {
            self.kappa = over.kappa;
            self.beta_b = None;
        } else if over.beta_b.is_some() {
            self.beta_b = over.beta_b;
            self.kappa = None;
        }
        self
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        self.check_exclusive("parameters")?;
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| CliError::Config(format!("missing parameter {name}")))
        };
        let beta_a = need(self.beta_a, "beta_a")?;
        let beta_b = match (self.kappa, self.beta_b) {
            (Some(k), _) => {
                if !(k.is_finite() && k > 0.0) {
                    return Err(CliError::Config(format!("kappa must be positive, got {k}")));
                }
                k * beta_a
            }
            (None, b) => need(b, "beta_b")?,
        };
        let bath_a = Reservoir::new(need(self.eta_a, "eta_a")?, need(self.omega_c_a, "omega_c_a")?, beta_a)?;
        let bath_b = Reservoir::new(need(self.eta_b, "eta_b")?, need(self.omega_c_b, "omega_c_b")?, beta_b)?;
        let state = XStateParams::new(need(self.c1, "c1")?, need(self.c2, "c2")?, need(self.c3, "c3")?)?;
        let qubits = QubitPair::new(need(self.omega_a, "omega_A")?, need(self.omega_b, "omega_B")?)?;
        let config = SystemConfig::new(qubits, bath_a, bath_b, state)?;

        let t_max = need(self.t_max, "t_max")?;
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(CliError::Config(format!("t_max must be positive, got {t_max}")));
        }
        let points = self
            .points
            .ok_or_else(|| CliError::Config("missing parameter points".into()))?;
        if points < 2 {
            return Err(CliError::Config(format!("points must be at least 2, got {points}")));
        }
        Ok(Resolved {
            config,
            kappa: self.kappa,
            t_max,
            points,
            method: self.method.unwrap_or_default(),
        })
    }
}

/// Parameters that a surface or critical-time sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    /// β of both baths (κ, if set, is ignored for this sweep).
    Beta,
    BetaA,
    BetaB,
    Eta,
    EtaA,
    EtaB,
    Kappa,
    /// c3 of the c1 = 1, c2 = −c3 family.
    C3,
}

impl FromStr for SweepParam {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "beta" => Self::Beta,
            "beta_a" => Self::BetaA,
            "beta_b" => Self::BetaB,
            "eta" => Self::Eta,
            "eta_a" => Self::EtaA,
            "eta_b" => Self::EtaB,
            "kappa" => Self::Kappa,
            "c3" => Self::C3,
            other => {
                return Err(CliError::Config(format!(
                    "cannot sweep '{other}' (beta, beta_a, beta_b, eta, eta_a, eta_b, kappa, c3)"
                )))
            }
        })
    }
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            Self::Beta => "beta",
            Self::BetaA => "beta_a",
            Self::BetaB => "beta_b",
            Self::Eta => "eta",
            Self::EtaA => "eta_a",
            Self::EtaB => "eta_b",
            Self::Kappa => "kappa",
            Self::C3 => "c3",
        }
    }

    /// The system with this parameter replaced by `value`.
    pub fn apply(self, base: &Resolved, value: f64) -> Result<SystemConfig, CliError> {
        let mut c = base.config;
        match self {
            Self::Beta => {
                c.bath_a.beta = value;
                c.bath_b.beta = value;
            }
            Self::BetaA => {
                c.bath_a.beta = value;
                if let Some(k) = base.kappa {
                    c.bath_b.beta = k * value;
                }
            }
            Self::BetaB => c.bath_b.beta = value,
            Self::Eta => {
                c.bath_a.eta = value;
                c.bath_b.eta = value;
            }
            Self::EtaA => c.bath_a.eta = value,
            Self::EtaB => c.bath_b.eta = value,
            Self::Kappa => c.bath_b.beta = value * c.bath_a.beta,
            Self::C3 => c.state = XStateParams::plateau_family(value)?,
        }
        c.validate()?;
        Ok(c)
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|k| {
                if k + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Accepts `a,b,c` or `lo:hi:n`.
pub fn parse_values(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let values = if parts.len() == 3 {
        let n: usize = parse_num("sweep count", parts[2])?;
        linspace(parse_num("sweep start", parts[0])?, parse_num("sweep end", parts[1])?, n)
    } else {
        s.split(',')
            .map(|v| parse_num("sweep value", v))
            .collect::<Result<Vec<f64>, _>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(format!(
            "sweep values must be finite and non-empty: '{s}'"
        )));
    }
    Ok(values)
}
