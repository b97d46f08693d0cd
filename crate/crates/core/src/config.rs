//! Plain-text `key = value` run configuration.
//!
//! ```text
//! # cuprate at L=8 with a weaker next-nearest hopping
//! model = cuprate
//! L = 8
//! t_prime = 0.25
//! delta_E_override = 0.4
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{default_params, Couplings, ModelKind};

const COUPLING_KEYS: [&str; 10] = ["t", "t_prime", "t_dprime", "t1", "t2", "t3", "t4", "u", "v", "U"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunFile {
    pub model: Option<ModelKind>,
    pub l: Option<u32>,
    pub delta_e_override: Option<f64>,
    /// Coupling overrides keyed by name (`u` and `U` are the same key).
    pub couplings: BTreeMap<String, f64>,
}

impl RunFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = RunFile::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("line {}: '{value}' is not a number", no + 1)))
            };
            match key {
                "model" => out.model = Some(value.parse()?),
                "L" | "l" => {
                    out.l = Some(value.parse().map_err(|_| Error::Config(format!("line {}: bad L '{value}'", no + 1)))?)
                }
                "delta_E_override" | "delta_e_override" => out.delta_e_override = Some(num()?),
                k if COUPLING_KEYS.contains(&k) => {
                    let k = if k == "U" { "u" } else { k };
                    out.couplings.insert(k.to_string(), num()?);
                }
                other => return Err(Error::Config(format!("line {}: unknown key '{other}'", no + 1))),
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Layers `other` over `self`; keys set in `other` win.
    pub fn merged(mut self, other: &RunFile) -> RunFile {
        if other.model.is_some() {
            self.model = other.model;
        }
        if other.l.is_some() {
            self.l = other.l;
        }
        if other.delta_e_override.is_some() {
            self.delta_e_override = other.delta_e_override;
        }
        self.couplings.extend(other.couplings.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }
}

/// Default couplings of `kind` with `overrides` applied. Keys that belong to
/// another model are rejected.
pub fn couplings_with(kind: ModelKind, overrides: &BTreeMap<String, f64>) -> Result<Couplings> {
    let mut c = default_params(kind);
    for (k, &val) in overrides {
        let slot = match (&mut c, k.as_str()) {
            (Couplings::FermiHubbard { t, .. }, "t") => t,
            (Couplings::FermiHubbard { u, .. }, "u") => u,
            (Couplings::Cuprate { t, .. }, "t") => t,
            (Couplings::Cuprate { t_prime, .. }, "t_prime") => t_prime,
            (Couplings::Cuprate { t_dprime, .. }, "t_dprime") => t_dprime,
            (Couplings::Cuprate { u, .. }, "u") => u,
            (Couplings::Pnictide { t1, .. }, "t1") => t1,
            (Couplings::Pnictide { t2, .. }, "t2") => t2,
            (Couplings::Pnictide { t3, .. }, "t3") => t3,
            (Couplings::Pnictide { t4, .. }, "t4") => t4,
            (Couplings::Pnictide { u, .. }, "u") => u,
            (Couplings::Pnictide { v, .. }, "v") => v,
            _ => return Err(Error::Config(format!("coupling '{k}' does not apply to the {kind} model"))),
        };
        *slot = val;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let f = RunFile::parse("# c\nmodel = cuprate\nL = 8\nt_prime = 0.25  # inline\n\ndelta_E_override: 0.4\n").unwrap();
        assert_eq!(f.model, Some(ModelKind::Cuprate));
        assert_eq!(f.l, Some(8));
        assert_eq!(f.delta_e_override, Some(0.4));
        let c = couplings_with(ModelKind::Cuprate, &f.couplings).unwrap();
        assert_eq!(c, Couplings::Cuprate { t: 1.0, t_prime: 0.25, t_dprime: 0.2, u: 8.0 });
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunFile::parse("model fh").is_err());
        assert!(RunFile::parse("colour = red").is_err());
        assert!(RunFile::parse("u = lots").is_err());
        assert!(RunFile::parse("model = graphene").is_err());
        let f = RunFile::parse("t_prime = 0.1").unwrap();
        assert!(couplings_with(ModelKind::FermiHubbard, &f.couplings).is_err());
    }

    #[test]
    fn merge_prefers_right() {
        let a = RunFile::parse("model = fh\nL = 4\nu = 4").unwrap();
        let b = RunFile::parse("L = 6\nU = 6").unwrap();
        let m = a.merged(&b);
        assert_eq!((m.model, m.l, m.couplings["u"]), (Some(ModelKind::FermiHubbard), Some(6), 6.0));
    }
}
