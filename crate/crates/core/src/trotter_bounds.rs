//! Second-order Trotter commutator bounds W and the induced step count.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Couplings;

/// ||H_nn,1 + H_nn,2||/|t| and ||[[H_nn,1, H_nn,2], H_nn,1]||/|t|³ for the
/// periodic L×L Hubbard lattice, L = 4, 6, …, 32.
const FH_NORMS: &str = "\
# L norm_hh norm_comm
4 24 0
6 56 110
8 100 190
10 160 300
12 230 440
14 320 630
16 410 810
18 520 1000
20 650 1300
22 780 1600
24 930 1800
26 1100 2200
28 1300 2500
30 1500 2900
32 1700 3300
";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FhNormTable {
    rows: Vec<(u32, f64, f64)>,
}

impl FhNormTable {
    pub fn embedded() -> Self {
        Self::parse(FH_NORMS).expect("embedded norm table parses")
    }

    /// Parses `L norm_hh norm_comm` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Config(format!("norm table line {}: expected 'L norm_hh norm_comm'", no + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let l: u32 = fields[0].parse().map_err(|_| bad())?;
            let hh: f64 = fields[1].parse().map_err(|_| bad())?;
            let comm: f64 = fields[2].parse().map_err(|_| bad())?;
            if !(hh >= 0.0 && comm >= 0.0) {
                return Err(bad());
            }
            rows.push((l, hh, comm));
        }
        if rows.is_empty() {
            return Err(Error::Config("norm table is empty".into()));
        }
        rows.sort_by_key(|r| r.0);
        Ok(FhNormTable { rows })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, l: u32) -> Result<(f64, f64)> {
        self.rows
            .iter()
            .find(|r| r.0 == l)
            .map(|r| (r.1, r.2))
            .ok_or(Error::NormsUnavailable(l))
    }

    pub fn lattice_sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r.0)
    }
}

impl Default for FhNormTable {
    fn default() -> Self {
        Self::embedded()
    }
}

pub fn fh_w_with(table: &FhNormTable, l: u32, t: f64, u: f64) -> Result<f64> {
    let (hh, comm) = table.get(l)?;
    let l2 = f64::from(l) * f64::from(l);
    let t = t.abs();
    let u = u.abs();
    Ok(u * t * t * l2 / 6.0 * (5f64.sqrt() + 8.0) + u * u * t / 24.0 * hh * t + 3.0 / 24.0 * comm * t.powi(3))
}

pub fn fh_w(l: u32, t: f64, u: f64) -> Result<f64> {
    fh_w_with(&FhNormTable::embedded(), l, t, u)
}

/// Monomial coefficient with exponents over the coupling vector.
type Term<const N: usize> = (f64, [u8; N]);

// variables: t, t', t'', u
const CUPRATE_W: [Term<4>; 19] = [
    (0.5562, [3, 0, 0, 0]),
    (3.5166, [2, 1, 0, 0]),
    (1.0147, [2, 0, 1, 0]),
    (1.2652, [2, 0, 0, 1]),
    (5.9063, [1, 2, 0, 0]),
    (6.6727, [1, 1, 1, 0]),
    (2.7246, [1, 1, 0, 1]),
    (1.4832, [1, 0, 2, 0]),
    (2.4294, [1, 0, 1, 1]),
    (0.2018, [1, 0, 0, 2]),
    (4.2510, [0, 3, 0, 0]),
    (5.7898, [0, 2, 1, 0]),
    (2.2182, [0, 2, 0, 1]),
    (4.2787, [0, 1, 2, 0]),
    (2.8980, [0, 1, 1, 1]),
    (0.3333, [0, 1, 0, 2]),
    (0.7688, [0, 0, 3, 0]),
    (1.3761, [0, 0, 2, 1]),
    (0.2369, [0, 0, 1, 2]),
];

// variables: t1, t2, t3, t4, u, v
const PNICTIDE_W: [Term<6>; 50] = [
    (0.25, [3, 0, 0, 0, 0, 0]),
    (1.3333, [2, 0, 1, 0, 0, 0]),
    (1.4524, [2, 0, 0, 1, 0, 0]),
    (0.3333, [2, 0, 0, 0, 1, 0]),
    (0.7233, [2, 0, 0, 0, 0, 1]),
    (0.6667, [1, 1, 1, 0, 0, 0]),
    (1.9374, [1, 1, 0, 1, 0, 0]),
    (0.3398, [1, 1, 0, 0, 1, 0]),
    (1.037, [1, 1, 0, 0, 0, 1]),
    (2.6667, [1, 0, 2, 0, 0, 0]),
    (5.6918, [1, 0, 1, 1, 0, 0]),
    (1.015, [1, 0, 1, 0, 1, 0]),
    (2.6200, [1, 0, 1, 0, 0, 1]),
    (4.2562, [1, 0, 0, 2, 0, 0]),
    (1.1301, [1, 0, 0, 1, 1, 0]),
    (2.8315, [1, 0, 0, 1, 0, 1]),
    (0.0833, [1, 0, 0, 0, 2, 0]),
    (0.2506, [1, 0, 0, 0, 1, 1]),
    (3.8354, [1, 0, 0, 0, 0, 2]),
    (0.25, [0, 3, 0, 0, 0, 0]),
    (1.3333, [0, 2, 1, 0, 0, 0]),
    (1.4524, [0, 2, 0, 1, 0, 0]),
    (0.3333, [0, 2, 0, 0, 1, 0]),
    (0.7363, [0, 2, 0, 0, 0, 1]),
    (2.6667, [0, 1, 2, 0, 0, 0]),
    (5.6918, [0, 1, 1, 1, 0, 0]),
    (1.0151, [0, 1, 1, 0, 1, 0]),
    (2.5783, [0, 1, 1, 0, 0, 1]),
    (4.2562, [0, 1, 0, 2, 0, 0]),
    (1.1279, [0, 1, 0, 1, 1, 0]),
    (2.7618, [0, 1, 0, 1, 0, 1]),
    (0.0833, [0, 1, 0, 0, 2, 0]),
    (0.2506, [0, 1, 0, 0, 1, 1]),
    (0.2397, [0, 1, 0, 0, 0, 2]),
    (2.8333, [0, 0, 3, 0, 0, 0]),
    (8.0, [0, 0, 2, 1, 0, 0]),
    (1.3333, [0, 0, 2, 0, 1, 0]),
    (2.7211, [0, 0, 2, 0, 0, 1]),
    (8.0, [0, 0, 1, 2, 0, 0]),
    (2.3333, [0, 0, 1, 1, 1, 0]),
    (4.3035, [0, 0, 1, 1, 0, 1]),
    (0.1667, [0, 0, 1, 0, 2, 0]),
    (0.4714, [0, 0, 1, 0, 1, 1]),
    (0.4714, [0, 0, 1, 0, 0, 2]),
    (2.8333, [0, 0, 0, 3, 0, 0]),
    (1.3333, [0, 0, 0, 2, 1, 0]),
    (2.7135, [0, 0, 0, 2, 0, 1]),
    (0.1667, [0, 0, 0, 1, 2, 0]),
    (0.4714, [0, 0, 0, 1, 1, 1]),
    (0.4714, [0, 0, 0, 1, 0, 2]),
];

fn poly<const N: usize>(terms: &[Term<N>], vars: [f64; N]) -> f64 {
    terms
        .iter()
        .map(|(c, e)| c * vars.iter().zip(e).map(|(v, &k)| v.abs().powi(i32::from(k))).product::<f64>())
        .sum()
}

pub fn cuprate_w(l: u32, t: f64, t_prime: f64, t_dprime: f64, u: f64) -> f64 {
    let l2 = f64::from(l) * f64::from(l);
    l2 * poly(&CUPRATE_W, [t, t_prime, t_dprime, u])
}

pub fn pnictide_w(l: u32, t1: f64, t2: f64, t3: f64, t4: f64, u: f64, v: f64) -> f64 {
    let l2 = f64::from(l) * f64::from(l);
    l2 * poly(&PNICTIDE_W, [t1, t2, t3, t4, u, v])
}

/// W for any model, with FH norms from `table`.
pub fn model_w(l: u32, couplings: &Couplings, table: &FhNormTable) -> Result<f64> {
    Ok(match *couplings {
        Couplings::FermiHubbard { t, u } => fh_w_with(table, l, t, u)?,
        Couplings::Cuprate { t, t_prime, t_dprime, u } => cuprate_w(l, t, t_prime, t_dprime, u),
        Couplings::Pnictide { t1, t2, t3, t4, u, v } => pnictide_w(l, t1, t2, t3, t4, u, v),
    })
}

/// Error split for a Trotter run: ΔE_PE = yΔE, ΔE_T = (1−x−z)(1−y)ΔE,
/// and rotation budgets x(1−y)ΔE and z(1−y)ΔE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterBudget {
    pub delta_e: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub tau: f64,
}

impl TrotterBudget {
    pub fn s(&self) -> f64 {
        self.x + self.z
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.delta_e > 0.0
            && self.y > 0.0
            && self.y < 1.0
            && self.x > 0.0
            && self.z >= 0.0
            && self.s() < 1.0
            && self.tau > 0.0
            && self.tau.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("degenerate Trotter budget {self:?}")))
        }
    }

    /// ΔE_T.
    pub fn trotter_error(&self) -> f64 {
        (1.0 - self.s()) * (1.0 - self.y) * self.delta_e
    }
}

/// Smallest integer r with τ³W/r² ≤ ΔE_T·τ, at least 1.
pub fn trotter_steps(w: f64, tau: f64, budget: &TrotterBudget) -> Result<u64> {
    if !(tau > 0.0) || !(w >= 0.0) {
        return Err(Error::Domain(format!("need tau > 0 and W >= 0 (tau={tau}, W={w})")));
    }
    let det = budget.trotter_error();
    if !(det > 0.0) {
        return Err(Error::Domain("Trotter error budget (1-s)(1-y)ΔE must be positive".into()));
    }
    let r = (tau * (w / det).sqrt()).ceil();
    Ok((r as u64).max(1))
}

pub fn tau_max(w: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(Error::Domain(format!("tau_max needs W > 0, got {w}")));
    }
    Ok((2f64.sqrt() / w).cbrt())
}
