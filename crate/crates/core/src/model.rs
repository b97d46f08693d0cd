//! Target lattice models, their benchmark couplings and the induced 1-norm.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Relative extensive error target, ΔE = 0.0051·L².
pub const EXTENSIVE_ERROR_DENSITY: f64 = 0.0051;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[serde(rename = "fh")]
    FermiHubbard,
    Cuprate,
    Pnictide,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::FermiHubbard, ModelKind::Cuprate, ModelKind::Pnictide];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::FermiHubbard => "fh",
            ModelKind::Cuprate => "cuprate",
            ModelKind::Pnictide => "pnictide",
        }
    }

    /// Spin-orbitals per lattice site.
    pub fn modes_per_site(self) -> u64 {
        match self {
            ModelKind::Pnictide => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fh" | "hubbard" | "fermi-hubbard" | "fermihubbard" => Ok(ModelKind::FermiHubbard),
            "cu" | "cuprate" => Ok(ModelKind::Cuprate),
            "pn" | "pnictide" => Ok(ModelKind::Pnictide),
            other => Err(Error::Config(format!("unknown model '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Couplings {
    #[serde(rename = "fh")]
    FermiHubbard { t: f64, u: f64 },
    Cuprate { t: f64, t_prime: f64, t_dprime: f64, u: f64 },
    Pnictide { t1: f64, t2: f64, t3: f64, t4: f64, u: f64, v: f64 },
}

impl Couplings {
    pub fn kind(&self) -> ModelKind {
        match self {
            Couplings::FermiHubbard { .. } => ModelKind::FermiHubbard,
            Couplings::Cuprate { .. } => ModelKind::Cuprate,
            Couplings::Pnictide { .. } => ModelKind::Pnictide,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match *self {
            Couplings::FermiHubbard { t, u } => vec![t, u],
            Couplings::Cuprate { t, t_prime, t_dprime, u } => vec![t, t_prime, t_dprime, u],
            Couplings::Pnictide { t1, t2, t3, t4, u, v } => vec![t1, t2, t3, t4, u, v],
        }
    }

    /// Multiplies every coupling by `s`.
    pub fn scaled(&self, s: f64) -> Couplings {
        match *self {
            Couplings::FermiHubbard { t, u } => Couplings::FermiHubbard { t: s * t, u: s * u },
            Couplings::Cuprate { t, t_prime, t_dprime, u } => Couplings::Cuprate {
                t: s * t,
                t_prime: s * t_prime,
                t_dprime: s * t_dprime,
                u: s * u,
            },
            Couplings::Pnictide { t1, t2, t3, t4, u, v } => Couplings::Pnictide {
                t1: s * t1,
                t2: s * t2,
                t3: s * t3,
                t4: s * t4,
                u: s * u,
                v: s * v,
            },
        }
    }

    fn primary_hopping(&self) -> f64 {
        match *self {
            Couplings::FermiHubbard { t, .. } | Couplings::Cuprate { t, .. } => t,
            Couplings::Pnictide { t1, .. } => t1,
        }
    }
}

/// Benchmark couplings of each model. Pnictide `v` is not stated in the
/// source tables and is fixed to 8.
pub fn default_params(kind: ModelKind) -> Couplings {
    match kind {
        ModelKind::FermiHubbard => Couplings::FermiHubbard { t: 1.0, u: 8.0 },
        ModelKind::Cuprate => Couplings::Cuprate { t: 1.0, t_prime: 0.3, t_dprime: 0.2, u: 8.0 },
        ModelKind::Pnictide => Couplings::Pnictide {
            t1: 1.0,
            t2: 1.3,
            t3: 0.85,
            t4: 0.85,
            u: 8.0,
            v: 8.0,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub l: u32,
    pub couplings: Couplings,
}

impl ModelSpec {
    pub fn new(l: u32, couplings: Couplings) -> Result<Self> {
        let spec = ModelSpec { l, couplings };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_defaults(kind: ModelKind, l: u32) -> Result<Self> {
        Self::new(l, default_params(kind))
    }

    pub fn kind(&self) -> ModelKind {
        self.couplings.kind()
    }

    pub fn validate(&self) -> Result<()> {
        let kind = self.kind();
        let bad = |reason| Err(Error::InvalidLattice { model: kind.name(), l: self.l, reason });
        if self.l < 2 {
            return bad("L must be at least 2");
        }
        if self.l % 2 != 0 {
            return bad("L must be even");
        }
        if kind == ModelKind::Pnictide && self.l < 4 {
            return bad("pnictide needs L >= 4");
        }
        if kind == ModelKind::Cuprate && self.l < 4 {
            return bad("cuprate needs L >= 4");
        }
        if self.couplings.values().iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidCoupling("couplings must be finite".into()));
        }
        if self.couplings.primary_hopping() == 0.0 {
            return Err(Error::InvalidCoupling("leading hopping must be nonzero".into()));
        }
        Ok(())
    }

    /// Number of lattice sites, L².
    pub fn sites(&self) -> u64 {
        u64::from(self.l) * u64::from(self.l)
    }

    /// System register size in qubits.
    pub fn system_qubits(&self) -> u64 {
        self.kind().modes_per_site() * self.sites()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorTarget {
    pub delta_e: f64,
}

impl ErrorTarget {
    pub fn new(delta_e: f64) -> Result<Self> {
        if !(delta_e > 0.0 && delta_e.is_finite()) {
            return Err(Error::Domain(format!("delta_E must be positive, got {delta_e}")));
        }
        Ok(ErrorTarget { delta_e })
    }
}

pub fn extensive_error(l: u32) -> Result<ErrorTarget> {
    if l < 2 {
        return Err(Error::Domain(format!("extensive error needs L >= 2, got {l}")));
    }
    let l = f64::from(l);
    ErrorTarget::new(EXTENSIVE_ERROR_DENSITY * l * l)
}

/// Induced 1-norm of the shifted, JW-mapped Hamiltonian.
pub fn lambda(spec: &ModelSpec) -> f64 {
    let n = spec.sites() as f64;
    match spec.couplings {
        Couplings::FermiHubbard { t, u } => 4.0 * n * t.abs() + u.abs() * n / 4.0,
        Couplings::Cuprate { t, t_prime, t_dprime, u } => {
            4.0 * n * (t.abs() + t_prime.abs() + t_dprime.abs()) + u.abs() * n / 4.0
        }
        Couplings::Pnictide { t1, t2, t3, t4, u, v } => {
            n * (4.0 * (t1.abs() + t2.abs()) + 8.0 * (t3.abs() + t4.abs()) + u.abs() / 2.0 + v.abs())
        }
    }
}
