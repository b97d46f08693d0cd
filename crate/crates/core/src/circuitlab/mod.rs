//! Small-scale circuit kernel used to check the gadget identities behind the
//! cost model.

mod fermion;
mod gadgets;
mod state;
pub mod verify;

pub use fermion::{FermionOracle, Matrix};
pub use gadgets::{
    build_fswap, build_hamming_weight, build_hwp, build_long_fswap, build_plaquette_evolution, build_two_site_fourier,
    HammingCircuit, HwpCircuit,
};
pub use state::StateVector;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Widest register a `Circuit` may address. Statevector simulation is
/// limited to `StateVector::MAX_QUBITS`; wider circuits made only of
/// classical reversible gates can still be run on basis states.
pub const MAX_CIRCUIT_QUBITS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Gate {
    X(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Swap(usize, usize),
    Toffoli { c0: usize, c1: usize, target: usize },
    Rz { q: usize, theta: f64 },
    CRz { control: usize, target: usize, theta: f64 },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) | Gate::Rz { q, .. } => vec![q],
            Gate::Cnot { control, target } | Gate::CRz { control, target, .. } => vec![control, target],
            Gate::Cz(a, b) | Gate::Swap(a, b) => vec![a, b],
            Gate::Toffoli { c0, c1, target } => vec![c0, c1, target],
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            Gate::Rz { q, theta } => Gate::Rz { q, theta: -theta },
            Gate::CRz { control, target, theta } => Gate::CRz { control, target, theta: -theta },
            g => g,
        }
    }

    /// True for gates that permute computational basis states.
    pub fn is_classical(&self) -> bool {
        matches!(self, Gate::X(_) | Gate::Cnot { .. } | Gate::Swap(..) | Gate::Toffoli { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Op {
    pub gate: Gate,
    /// Part of an uncomputation; Toffolis marked this way are not charged.
    pub uncompute: bool,
}

/// Non-Clifford content of a circuit as the cost model counts it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub toffoli: u64,
    pub t: u64,
    pub rz: u64,
    pub uncompute_toffoli: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<Op>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_CIRCUIT_QUBITS {
            return Err(Error::Domain(format!("circuit width {n_qubits} outside 1..={MAX_CIRCUIT_QUBITS}")));
        }
        Ok(Circuit { n_qubits, ops: Vec::new() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn check(&self, g: &Gate) -> Result<()> {
        let qs = g.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= self.n_qubits {
                return Err(Error::Domain(format!("qubit {q} out of range for {} qubits", self.n_qubits)));
            }
            if qs[..i].contains(&q) {
                return Err(Error::Domain(format!("gate {g:?} repeats qubit {q}")));
            }
        }
        Ok(())
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.ops.push(Op { gate, uncompute: false });
        Ok(())
    }

    pub fn push_uncompute(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.ops.push(Op { gate, uncompute: true });
        Ok(())
    }

    /// Appends `other`, whose qubit i lands on `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.n_qubits {
            return Err(Error::Domain("qubit map length differs from circuit width".into()));
        }
        for op in &other.ops {
            let g = remap(&op.gate, map);
            self.check(&g)?;
            self.ops.push(Op { gate: g, uncompute: op.uncompute });
        }
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        let map: Vec<usize> = (0..other.n_qubits).collect();
        if other.n_qubits > self.n_qubits {
            return Err(Error::Domain("appended circuit is wider".into()));
        }
        self.append_mapped(other, &map)
    }

    /// Adjoint circuit. With `as_uncompute` every op is flagged as uncomputation.
    pub fn inverse(&self, as_uncompute: bool) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            ops: self
                .ops
                .iter()
                .rev()
                .map(|op| Op { gate: op.gate.inverse(), uncompute: op.uncompute || as_uncompute })
                .collect(),
        }
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for op in &self.ops {
            match op.gate {
                Gate::Toffoli { .. } if op.uncompute => t.uncompute_toffoli += 1,
                Gate::Toffoli { .. } => t.toffoli += 1,
                Gate::T(_) | Gate::Tdg(_) => t.t += 1,
                Gate::Rz { .. } | Gate::CRz { .. } => t.rz += 1,
                _ => {}
            }
        }
        t
    }

    pub fn is_classical(&self) -> bool {
        self.ops.iter().all(|op| op.gate.is_classical())
    }

    /// Runs a classical reversible circuit on one basis state.
    pub fn apply_basis(&self, mut x: u64) -> Result<u64> {
        for op in &self.ops {
            let bit = |x: u64, q: usize| (x >> q) & 1 == 1;
            x = match op.gate {
                Gate::X(q) => x ^ (1 << q),
                Gate::Cnot { control, target } => x ^ (u64::from(bit(x, control)) << target),
                Gate::Swap(a, b) if bit(x, a) != bit(x, b) => x ^ (1 << a) ^ (1 << b),
                Gate::Swap(..) => x,
                Gate::Toffoli { c0, c1, target } => x ^ (u64::from(bit(x, c0) && bit(x, c1)) << target),
                g => return Err(Error::Domain(format!("{g:?} is not a basis permutation"))),
            };
        }
        Ok(x)
    }

    /// Dense unitary, column k = image of basis state k.
    pub fn unitary(&self) -> Result<Matrix> {
        let dim = 1usize << self.n_qubits;
        if self.n_qubits > 10 {
            return Err(Error::Domain(format!("dense unitary of {} qubits is too large", self.n_qubits)));
        }
        let mut u = Matrix::zeros(dim, dim);
        for k in 0..dim {
            let mut psi = StateVector::basis(self.n_qubits, k)?;
            psi.run(self)?;
            for (r, a) in psi.amplitudes().iter().enumerate() {
                u[(r, k)] = *a;
            }
        }
        Ok(u)
    }
}

fn remap(g: &Gate, m: &[usize]) -> Gate {
    match *g {
        Gate::X(q) => Gate::X(m[q]),
        Gate::H(q) => Gate::H(m[q]),
        Gate::S(q) => Gate::S(m[q]),
        Gate::Sdg(q) => Gate::Sdg(m[q]),
        Gate::T(q) => Gate::T(m[q]),
        Gate::Tdg(q) => Gate::Tdg(m[q]),
        Gate::Cnot { control, target } => Gate::Cnot { control: m[control], target: m[target] },
        Gate::Cz(a, b) => Gate::Cz(m[a], m[b]),
        Gate::Swap(a, b) => Gate::Swap(m[a], m[b]),
        Gate::Toffoli { c0, c1, target } => Gate::Toffoli { c0: m[c0], c1: m[c1], target: m[target] },
        Gate::Rz { q, theta } => Gate::Rz { q: m[q], theta },
        Gate::CRz { control, target, theta } => Gate::CRz { control: m[control], target: m[target], theta },
    }
}

/// Max entrywise |a − e^{iφ} b| with φ chosen from the largest overlap.
pub fn deviation_up_to_phase(a: &Matrix, b: &Matrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let overlap: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| y.conj() * x).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    a.iter().zip(b.iter()).map(|(x, y)| (x - phase * y).norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_indices() {
        let mut c = Circuit::new(3).unwrap();
        assert!(c.push(Gate::X(3)).is_err());
        assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
        assert!(c.push(Gate::Toffoli { c0: 0, c1: 2, target: 0 }).is_err());
        assert!(Circuit::new(0).is_err());
        assert!(Circuit::new(MAX_CIRCUIT_QUBITS + 1).is_err());
    }

    #[test]
    fn inverse_undoes() {
        let mut c = Circuit::new(3).unwrap();
        for g in [
            Gate::H(0),
            Gate::T(1),
            Gate::Cnot { control: 0, target: 2 },
            Gate::S(2),
            Gate::Rz { q: 1, theta: 0.3 },
            Gate::CRz { control: 2, target: 0, theta: -1.1 },
            Gate::Toffoli { c0: 0, c1: 1, target: 2 },
        ] {
            c.push(g).unwrap();
        }
        let mut both = c.clone();
        both.append(&c.inverse(false)).unwrap();
        let u = both.unitary().unwrap();
        assert!(max_abs_diff(&u, &Matrix::identity(8, 8)) < 1e-12);
    }

    #[test]
    fn tally_skips_uncompute_toffolis() {
        let mut c = Circuit::new(3).unwrap();
        c.push(Gate::Toffoli { c0: 0, c1: 1, target: 2 }).unwrap();
        c.push(Gate::Tdg(0)).unwrap();
        c.push(Gate::Rz { q: 0, theta: 1.0 }).unwrap();
        let inv = c.inverse(true);
        c.append(&inv).unwrap();
        let t = c.tally();
        assert_eq!((t.toffoli, t.uncompute_toffoli, t.t, t.rz), (1, 1, 2, 2));
    }

    #[test]
    fn basis_run_matches_statevector() {
        let mut c = Circuit::new(4).unwrap();
        c.push(Gate::X(0)).unwrap();
        c.push(Gate::Toffoli { c0: 0, c1: 1, target: 3 }).unwrap();
        c.push(Gate::Swap(1, 2)).unwrap();
        c.push(Gate::Cnot { control: 2, target: 0 }).unwrap();
        for x in 0..16u64 {
            let y = c.apply_basis(x).unwrap();
            let mut psi = StateVector::basis(4, x as usize).unwrap();
            psi.run(&c).unwrap();
            assert!((psi.amplitudes()[y as usize].re - 1.0).abs() < 1e-15);
        }
    }
}
