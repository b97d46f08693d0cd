//! Non-Clifford cost calculus for the gadgets used by both algorithms.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Mean T count of a repeat-until-success Z rotation: 0.53·log2(1/δ) + 4.86.
pub const RUS_SLOPE: f64 = 0.53;
pub const RUS_OFFSET: f64 = 4.86;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CostVector {
    pub toffoli: f64,
    pub t_gates: f64,
    pub rz: u64,
    pub ry: u64,
    pub ancilla: u64,
}

impl CostVector {
    pub const ZERO: CostVector = CostVector { toffoli: 0.0, t_gates: 0.0, rz: 0, ry: 0, ancilla: 0 };

    pub fn toffoli(n: f64) -> Self {
        CostVector { toffoli: n, ..Self::ZERO }
    }

    pub fn rotations(&self) -> u64 {
        self.rz + self.ry
    }
}

impl Add for CostVector {
    type Output = CostVector;

    fn add(self, o: CostVector) -> CostVector {
        CostVector {
            toffoli: self.toffoli + o.toffoli,
            t_gates: self.t_gates + o.t_gates,
            rz: self.rz + o.rz,
            ry: self.ry + o.ry,
            ancilla: self.ancilla + o.ancilla,
        }
    }
}

impl AddAssign for CostVector {
    fn add_assign(&mut self, o: CostVector) {
        *self = *self + o;
    }
}

/// Repeats a gadget `k` times. Ancilla are reused, so they do not scale.
impl Mul<u64> for CostVector {
    type Output = CostVector;

    fn mul(self, k: u64) -> CostVector {
        CostVector {
            toffoli: self.toffoli * k as f64,
            t_gates: self.t_gates * k as f64,
            rz: self.rz * k,
            ry: self.ry * k,
            ancilla: if k == 0 { 0 } else { self.ancilla },
        }
    }
}

impl Sum for CostVector {
    fn sum<I: Iterator<Item = CostVector>>(iter: I) -> CostVector {
        iter.fold(CostVector::ZERO, Add::add)
    }
}

pub fn rus_t_count(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Domain(format!("rotation error must lie in (0,1], got {delta}")));
    }
    Ok(RUS_SLOPE * (1.0 / delta).log2() + RUS_OFFSET)
}

/// RUS T count without the δ ≤ 1 guard, for budgets that are split over
/// many rotations inside an optimizer.
pub(crate) fn rus_t_count_unchecked(delta: f64) -> f64 {
    RUS_SLOPE * (1.0 / delta).log2() + RUS_OFFSET
}

/// Toffoli-equivalent count under 2 T = 1 Toffoli.
pub fn toffoli_equivalent(cv: &CostVector, synthesized_rotation_t: f64) -> f64 {
    cv.toffoli + (cv.t_gates + synthesized_rotation_t) / 2.0
}

pub fn popcount(m: u64) -> Result<u32> {
    if m == 0 {
        return Err(Error::Domain("popcount needs M >= 1".into()));
    }
    Ok(m.count_ones())
}

/// Number of half/full adders needed for the Hamming weight of M bits.
pub fn hamming_adders(m: u64) -> Result<u64> {
    Ok(m - u64::from(popcount(m)?))
}

pub fn floor_log2(n: u64) -> u32 {
    assert!(n > 0, "floor_log2(0)");
    63 - n.leading_zeros()
}

pub fn ceil_log2(n: u64) -> u32 {
    assert!(n > 0, "ceil_log2(0)");
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Odd part of `n`, the smallest m with n = 2^k·m.
pub fn odd_part(n: u64) -> u64 {
    assert!(n > 0, "odd_part(0)");
    n >> n.trailing_zeros()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HwpStrategy {
    Baseline,
    Catalyzed,
}

impl HwpStrategy {
    pub fn name(self) -> &'static str {
        match self {
            HwpStrategy::Baseline => "baseline",
            HwpStrategy::Catalyzed => "catalyzed",
        }
    }
}

impl fmt::Display for HwpStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HwpStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" => Ok(HwpStrategy::Baseline),
            "catalyzed" => Ok(HwpStrategy::Catalyzed),
            other => Err(Error::Config(format!("unknown HWP strategy '{other}'"))),
        }
    }
}

/// Ancilla held by one HWP application on M targets: the Hamming-weight
/// workspace, plus the adder carries when catalyzed. The catalyst register
/// itself is charged by the caller.
fn hwp_ancilla(m: u64, strategy: HwpStrategy) -> u64 {
    let work = m - u64::from(m.count_ones());
    match strategy {
        HwpStrategy::Baseline => work,
        HwpStrategy::Catalyzed => work + u64::from(floor_log2(m)) + 1,
    }
}

/// One layer of M same-angle Z rotations via Hamming-weight phasing.
pub fn hwp_cost(m: u64, strategy: HwpStrategy) -> Result<CostVector> {
    let adders = hamming_adders(m)?;
    let bits = u64::from(floor_log2(m)) + 1;
    let (toffoli, rz) = match strategy {
        HwpStrategy::Baseline => (adders, bits),
        HwpStrategy::Catalyzed => (adders + bits, 1),
    };
    Ok(CostVector { toffoli: toffoli as f64, rz, ancilla: hwp_ancilla(m, strategy), ..CostVector::ZERO })
}

/// Sizes of the batches used to rotate N targets at most B at a time.
pub fn batch_sizes(n: u64, b: u64) -> Vec<u64> {
    let mut sizes = vec![b; (n / b) as usize];
    if n % b != 0 {
        sizes.push(n % b);
    }
    sizes
}

/// HWP on N targets split into batches of at most B.
pub fn hwp_batched_cost(n: u64, b: u64, strategy: HwpStrategy) -> Result<CostVector> {
    if n == 0 || b == 0 {
        return Err(Error::Domain(format!("batched HWP needs N, B >= 1 (N={n}, B={b})")));
    }
    let mut total = CostVector::ZERO;
    for size in batch_sizes(n, b) {
        let c = hwp_cost(size, strategy)?;
        total.toffoli += c.toffoli;
        total.rz += c.rz;
    }
    total.ancilla = hwp_ancilla(n.min(b), strategy);
    Ok(total)
}

/// Uniform superposition over L basis states.
pub fn usp_cost(l: u64) -> Result<CostVector> {
    if l < 2 {
        return Err(Error::Domain(format!("USP needs L >= 2, got {l}")));
    }
    let m = odd_part(l);
    if m == 1 {
        return Ok(CostVector::ZERO);
    }
    let c = u64::from(ceil_log2(m));
    Ok(CostVector { toffoli: (2 * c - 2) as f64, rz: 2, ancilla: c, ..CostVector::ZERO })
}

/// QROM over N items. The controlled form costs N−1 Toffoli; dropping the
/// control saves one.
pub fn qrom_cost(n: u64, controlled: bool) -> Result<CostVector> {
    if n == 0 {
        return Err(Error::Domain("QROM needs N >= 1".into()));
    }
    let toffoli = if controlled { n - 1 } else { n.saturating_sub(2) };
    Ok(CostVector { toffoli: toffoli as f64, ancilla: u64::from(ceil_log2(n)), ..CostVector::ZERO })
}

pub fn multi_controlled_x(n: u32) -> Result<CostVector> {
    if n < 2 {
        return Err(Error::Domain(format!("C^nX needs n >= 2, got {n}")));
    }
    Ok(CostVector { toffoli: f64::from(n - 1), ancilla: u64::from(n - 2), ..CostVector::ZERO })
}

/// n-bit ripple-carry addition into a quantum register, with measurement-based
/// uncomputation of the carries.
pub fn adder_cost(n: u32) -> Result<CostVector> {
    if n == 0 {
        return Err(Error::Domain("adder needs n >= 1".into()));
    }
    Ok(CostVector { toffoli: f64::from(n - 1), ancilla: u64::from(n - 1), ..CostVector::ZERO })
}

/// Controlled increment of an n-bit register via CNOT-loaded classical addend.
pub fn controlled_increment_cost(n: u32) -> Result<CostVector> {
    if n < 2 {
        return Err(Error::Domain(format!("controlled increment needs n >= 2, got {n}")));
    }
    Ok(CostVector { toffoli: f64::from(n - 2), ancilla: u64::from(n), ..CostVector::ZERO })
}
