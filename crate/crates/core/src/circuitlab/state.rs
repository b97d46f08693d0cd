use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Dense statevector; qubit q is bit q of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub const MAX_QUBITS: usize = 14;

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Self::check_width(n)?;
        if index >= 1 << n {
            return Err(Error::Domain(format!("basis index {index} out of range for {n} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n {
            return Err(Error::Domain("amplitude count is not a power of two".into()));
        }
        Self::check_width(n)?;
        let s = StateVector { n, amps };
        if (s.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!("state not normalized: {}", s.norm_sqr())));
        }
        Ok(s)
    }

    fn check_width(n: usize) -> Result<()> {
        if n == 0 || n > Self::MAX_QUBITS {
            return Err(Error::Domain(format!("statevector width {n} outside 1..={}", Self::MAX_QUBITS)));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    fn single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[i | bit] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    fn phase_where(&mut self, mask: usize, phase: Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
    }

    /// Applies a basis permutation that is its own inverse.
    fn permute(&mut self, f: impl Fn(usize) -> usize) {
        for i in 0..self.amps.len() {
            let j = f(i);
            if j > i {
                self.amps.swap(i, j);
            }
        }
    }

    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        if let Some(&q) = g.qubits().iter().find(|&&q| q >= self.n) {
            return Err(Error::Domain(format!("qubit {q} out of range for {} qubits", self.n)));
        }
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        let h = c(FRAC_1_SQRT_2, 0.0);
        match *g {
            Gate::X(q) => self.permute(|i| i ^ (1 << q)),
            Gate::H(q) => self.single(q, [[h, h], [h, -h]]),
            Gate::S(q) => self.phase_where(1 << q, c(0.0, 1.0)),
            Gate::Sdg(q) => self.phase_where(1 << q, c(0.0, -1.0)),
            Gate::T(q) => self.phase_where(1 << q, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
            Gate::Tdg(q) => self.phase_where(1 << q, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)),
            Gate::Cnot { control, target } => {
                self.permute(|i| if i >> control & 1 == 1 { i ^ (1 << target) } else { i })
            }
            Gate::Cz(a, b) => self.phase_where(1 << a | 1 << b, -o),
            Gate::Swap(a, b) => self.permute(|i| if (i >> a & 1) != (i >> b & 1) { i ^ (1 << a) ^ (1 << b) } else { i }),
            Gate::Toffoli { c0, c1, target } => {
                self.permute(|i| if i >> c0 & 1 == 1 && i >> c1 & 1 == 1 { i ^ (1 << target) } else { i })
            }
            Gate::Rz { q, theta } => {
                let (m, p) = (Complex64::from_polar(1.0, -theta / 2.0), Complex64::from_polar(1.0, theta / 2.0));
                self.single(q, [[m, z], [z, p]]);
            }
            Gate::CRz { control, target, theta } => {
                let (m, p) = (Complex64::from_polar(1.0, -theta / 2.0), Complex64::from_polar(1.0, theta / 2.0));
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i >> control & 1 == 1 {
                        *a *= if i >> target & 1 == 1 { p } else { m };
                    }
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, c: &Circuit) -> Result<()> {
        if c.n_qubits() != self.n {
            return Err(Error::Domain(format!("circuit has {} qubits, state has {}", c.n_qubits(), self.n)));
        }
        for op in c.ops() {
            self.apply(&op.gate)?;
            let nrm = self.norm_sqr();
            if (nrm - 1.0).abs() > NORM_TOL {
                return Err(Error::Domain(format!("norm drifted to {nrm} after {:?}", op.gate)));
            }
        }
        Ok(())
    }
}
