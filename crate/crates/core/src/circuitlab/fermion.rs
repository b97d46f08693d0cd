use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<Complex64>;

/// Jordan–Wigner annihilation operators on n ≤ 7 modes. Mode j is qubit j,
/// occupied = |1⟩, and the parity string runs over modes 0..j.
#[derive(Debug, Clone)]
pub struct FermionOracle {
    n: usize,
    a: Vec<Matrix>,
    car_dev: f64,
}

impl FermionOracle {
    pub const MAX_MODES: usize = 7;
    pub const CAR_TOL: f64 = 1e-12;

    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_MODES {
            return Err(Error::Domain(format!("mode count {n} outside 1..={}", Self::MAX_MODES)));
        }
        let dim = 1usize << n;
        let a = (0..n)
            .map(|j| {
                let mut m = Matrix::zeros(dim, dim);
                for x in 0..dim {
                    if x >> j & 1 == 1 {
                        let sign = if (x & ((1 << j) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                        m[(x ^ (1 << j), x)] = Complex64::new(sign, 0.0);
                    }
                }
                m
            })
            .collect();
        let mut o = FermionOracle { n, a, car_dev: 0.0 };
        let dev = o.measure_car();
        o.car_dev = dev;
        if dev > Self::CAR_TOL {
            return Err(Error::Domain(format!("anticommutation violated by {dev}")));
        }
        Ok(o)
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn a(&self, j: usize) -> &Matrix {
        &self.a[j]
    }

    pub fn adag(&self, j: usize) -> Matrix {
        self.a[j].adjoint()
    }

    pub fn number(&self, j: usize) -> Matrix {
        self.adag(j) * &self.a[j]
    }

    /// a†_i a_j + a†_j a_i.
    pub fn hopping(&self, i: usize, j: usize) -> Matrix {
        self.adag(i) * &self.a[j] + self.adag(j) * &self.a[i]
    }

    /// Largest deviation from {a_i, a†_j} = δ_ij and {a_i, a_j} = 0,
    /// measured at construction.
    pub fn car_deviation(&self) -> f64 {
        self.car_dev
    }

    fn measure_car(&self) -> f64 {
        let id = Matrix::identity(self.dim(), self.dim());
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                let ai = &self.a[i];
                let adj = self.a[j].adjoint();
                let mut ac = ai * &adj + &adj * ai;
                if i == j {
                    ac -= &id;
                }
                let aa = ai * &self.a[j] + &self.a[j] * ai;
                worst = worst.max(super::max_abs_diff(&ac, &Matrix::zeros(self.dim(), self.dim())));
                worst = worst.max(super::max_abs_diff(&aa, &Matrix::zeros(self.dim(), self.dim())));
            }
        }
        worst
    }

    /// U X U† for a unitary on the same register.
    pub fn conjugate(u: &Matrix, x: &Matrix) -> Matrix {
        u * x * u.adjoint()
    }
}
