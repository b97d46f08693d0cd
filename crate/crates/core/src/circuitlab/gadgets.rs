use std::collections::VecDeque;

use super::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::primitives::{floor_log2, HwpStrategy};

/// Hamming-weight circuit: inputs on wires 0..M, one fresh wire per adder.
#[derive(Debug, Clone)]
pub struct HammingCircuit {
    pub circuit: Circuit,
    pub inputs: Vec<usize>,
    /// Binary weight, least significant bit first.
    pub outputs: Vec<usize>,
    pub adders: u64,
}

fn full_adder(c: &mut Circuit, x1: usize, x2: usize, x3: usize, carry: usize) -> Result<()> {
    c.push(Gate::Cnot { control: x1, target: x2 })?;
    c.push(Gate::Cnot { control: x1, target: x3 })?;
    c.push(Gate::Toffoli { c0: x2, c1: x3, target: carry })?;
    c.push(Gate::Cnot { control: x1, target: carry })?;
    c.push(Gate::Cnot { control: x2, target: x3 })?;
    c.push(Gate::Cnot { control: x1, target: x2 })?;
    c.push(Gate::Cnot { control: x1, target: x3 })
}

fn half_adder(c: &mut Circuit, x1: usize, x2: usize, carry: usize) -> Result<()> {
    c.push(Gate::Toffoli { c0: x1, c1: x2, target: carry })?;
    c.push(Gate::Cnot { control: x1, target: x2 })
}

/// Greedy adder tree: full adders while three bits of a weight remain, a
/// half adder for the last pair. Sums stay in place, carries move up.
pub fn build_hamming_weight(m: usize) -> Result<HammingCircuit> {
    if !(1..=8).contains(&m) {
        return Err(Error::Domain(format!("Hamming-weight circuit needs 1 <= M <= 8, got {m}")));
    }
    let inputs: Vec<usize> = (0..m).collect();
    let mut circuit = Circuit::new(m + m - m.count_ones() as usize)?;
    let (outputs, adders) = append_hamming_weight(&mut circuit, &inputs, m)?;
    Ok(HammingCircuit { circuit, inputs, outputs, adders })
}

/// Appends the adder tree on `inputs`, drawing fresh wires from `next`.
fn append_hamming_weight(c: &mut Circuit, inputs: &[usize], mut next: usize) -> Result<(Vec<usize>, u64)> {
    let mut levels: Vec<VecDeque<usize>> = vec![inputs.iter().copied().collect()];
    let mut adders = 0u64;
    let mut k = 0;
    while k < levels.len() {
        while levels[k].len() >= 2 {
            let carry = next;
            next += 1;
            adders += 1;
            let x1 = levels[k].pop_front().unwrap_or_default();
            let x2 = levels[k].pop_front().unwrap_or_default();
            if let Some(x3) = levels[k].pop_front() {
                full_adder(c, x1, x2, x3, carry)?;
                levels[k].push_back(x3);
            } else {
                half_adder(c, x1, x2, carry)?;
                levels[k].push_back(x2);
            }
            if levels.len() == k + 1 {
                levels.push(VecDeque::new());
            }
            levels[k + 1].push_back(carry);
        }
        k += 1;
    }
    Ok((levels.iter().map(|l| l[0]).collect(), adders))
}

/// HWP gadget on M target wires (0..M).
#[derive(Debug, Clone)]
pub struct HwpCircuit {
    pub strategy: HwpStrategy,
    pub theta: f64,
    pub targets: Vec<usize>,
    /// Catalyst register, least significant first; empty for Baseline.
    pub catalyst: Vec<usize>,
    /// Catalyst preparation, run once before `body`.
    pub prologue: Option<Circuit>,
    pub body: Circuit,
}

/// ⊗ Rz(θ) on M targets via the Hamming weight. Baseline rotates each weight
/// bit by 2^i θ; Catalyzed adds the weight into a phase-gradient catalyst and
/// rotates only the overflow carry.
pub fn build_hwp(m: usize, theta: f64, strategy: HwpStrategy) -> Result<HwpCircuit> {
    if !(1..=5).contains(&m) {
        return Err(Error::Domain(format!("HWP circuit needs 1 <= M <= 5, got {m}")));
    }
    if !theta.is_finite() {
        return Err(Error::Domain("theta must be finite".into()));
    }
    let adders = m - m.count_ones() as usize;
    let n = floor_log2(m as u64) as usize + 1;
    let width = match strategy {
        HwpStrategy::Baseline => m + adders,
        HwpStrategy::Catalyzed => m + adders + 2 * n,
    };
    let targets: Vec<usize> = (0..m).collect();
    let mut hw = Circuit::new(width)?;
    let (weight, _) = append_hamming_weight(&mut hw, &targets, m)?;
    let mut body = hw.clone();
    let mut catalyst = Vec::new();
    let mut prologue = None;
    match strategy {
        HwpStrategy::Baseline => {
            for (i, &w) in weight.iter().enumerate() {
                body.push(Gate::Rz { q: w, theta: theta * f64::from(1u32 << i) })?;
            }
        }
        HwpStrategy::Catalyzed => {
            catalyst = (m + adders..m + adders + n).collect();
            let carries: Vec<usize> = (m + adders + n..width).collect();
            let mut prep = Circuit::new(width)?;
            for (i, &q) in catalyst.iter().enumerate() {
                prep.push(Gate::H(q))?;
                prep.push(Gate::Rz { q, theta: -theta * f64::from(1u32 << i) })?;
            }
            prologue = Some(prep);
            let a = |i: usize| weight.get(i).copied();
            // forward carry ripple
            for i in 0..n {
                let (bi, cout) = (catalyst[i], carries[i]);
                let cin = if i == 0 { None } else { Some(carries[i - 1]) };
                match (a(i), cin) {
                    (Some(ai), Some(ci)) => {
                        body.push(Gate::Cnot { control: ci, target: ai })?;
                        body.push(Gate::Cnot { control: ci, target: bi })?;
                        body.push(Gate::Toffoli { c0: ai, c1: bi, target: cout })?;
                        body.push(Gate::Cnot { control: ci, target: cout })?;
                    }
                    (Some(ai), None) => body.push(Gate::Toffoli { c0: ai, c1: bi, target: cout })?,
                    (None, _) => return Err(Error::Domain("weight register shorter than catalyst".into())),
                }
            }
            body.push(Gate::Rz { q: carries[n - 1], theta: theta * f64::from(1u32 << n) })?;
            // reverse ripple: clear carries, leave the sum in the catalyst
            for i in (0..n).rev() {
                let (bi, cout) = (catalyst[i], carries[i]);
                let ai = weight[i];
                if i > 0 {
                    let ci = carries[i - 1];
                    body.push(Gate::Cnot { control: ci, target: cout })?;
                    body.push_uncompute(Gate::Toffoli { c0: ai, c1: bi, target: cout })?;
                    body.push(Gate::Cnot { control: ci, target: ai })?;
                } else {
                    body.push_uncompute(Gate::Toffoli { c0: ai, c1: bi, target: cout })?;
                }
                body.push(Gate::Cnot { control: ai, target: bi })?;
            }
        }
    }
    body.append(&hw.inverse(true))?;
    Ok(HwpCircuit { strategy, theta, targets, catalyst, prologue, body })
}

/// Nearest-neighbour fermionic swap: SWAP then CZ.
pub fn build_fswap(i: usize, j: usize, n: usize) -> Result<Circuit> {
    if i.abs_diff(j) != 1 {
        return Err(Error::Domain(format!("fswap needs adjacent modes, got {i} and {j}")));
    }
    let mut c = Circuit::new(n)?;
    push_fswap(&mut c, i, j)?;
    Ok(c)
}

fn push_fswap(c: &mut Circuit, i: usize, j: usize) -> Result<()> {
    c.push(Gate::Swap(i, j))?;
    c.push(Gate::Cz(i, j))
}

/// Swaps modes i and i+k with 2k−1 nearest-neighbour swaps: shift i up to
/// i+k, then shift the displaced i+k−1 down to i.
pub fn build_long_fswap(i: usize, k: usize, n: usize) -> Result<Circuit> {
    if k == 0 || i + k >= n {
        return Err(Error::Domain(format!("long-range fswap {i} -> {} needs k >= 1 inside {n} modes", i + k)));
    }
    let mut c = Circuit::new(n)?;
    for s in i..i + k {
        push_fswap(&mut c, s, s + 1)?;
    }
    for s in (i..i + k - 1).rev() {
        push_fswap(&mut c, s, s + 1)?;
    }
    Ok(c)
}

/// Ry(±π/4) on `q` as S H T^(†) H S†.
fn push_ry_quarter(c: &mut Circuit, q: usize, positive: bool) -> Result<()> {
    c.push(Gate::Sdg(q))?;
    c.push(Gate::H(q))?;
    c.push(if positive { Gate::T(q) } else { Gate::Tdg(q) })?;
    c.push(Gate::H(q))?;
    c.push(Gate::S(q))
}

/// F on adjacent modes j < k: CZ · CNOT(k→j) · CH(j→k) · CNOT(k→j).
fn push_fourier(c: &mut Circuit, j: usize, k: usize) -> Result<()> {
    c.push(Gate::Cnot { control: k, target: j })?;
    push_ry_quarter(c, k, false)?;
    c.push(Gate::Cz(j, k))?;
    push_ry_quarter(c, k, true)?;
    c.push(Gate::Cnot { control: k, target: j })?;
    c.push(Gate::Cz(j, k))
}

/// Two-site fermionic Fourier transform on modes 0 and 1, with F|00⟩ = |00⟩.
pub fn build_two_site_fourier() -> Result<Circuit> {
    let mut c = Circuit::new(2)?;
    push_fourier(&mut c, 0, 1)?;
    Ok(c)
}

fn fourier_on(j: usize, k: usize, n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    push_fourier(&mut c, j, k)?;
    Ok(c)
}

/// exp(iθK) on one plaquette (modes 1..4 on qubits 0..3), as V D V† with
/// V = f23 F12 F34 f12 F23 and the inner F23† D F23 reduced to two Rz(−2θ)
/// between Cliffords.
pub fn build_plaquette_evolution(theta: f64) -> Result<Circuit> {
    let mut c = Circuit::new(4)?;
    let f12 = fourier_on(0, 1, 4)?;
    let f34 = fourier_on(2, 3, 4)?;
    push_fswap(&mut c, 1, 2)?;
    c.append(&f12.inverse(false))?;
    c.append(&f34.inverse(false))?;
    push_fswap(&mut c, 0, 1)?;
    let (a, b) = (1, 2);
    let mut u = Circuit::new(4)?;
    u.push(Gate::Cnot { control: a, target: b })?;
    u.push(Gate::H(a))?;
    u.push(Gate::Cnot { control: a, target: b })?;
    u.push(Gate::X(b))?;
    c.append(&u)?;
    c.push(Gate::Rz { q: a, theta: -2.0 * theta })?;
    c.push(Gate::Rz { q: b, theta: -2.0 * theta })?;
    c.append(&u.inverse(false))?;
    push_fswap(&mut c, 0, 1)?;
    c.append(&f34)?;
    c.append(&f12)?;
    push_fswap(&mut c, 1, 2)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_bit_weight() {
        let h = build_hamming_weight(8).unwrap();
        assert_eq!(h.adders, 7);
        assert_eq!(h.circuit.tally().toffoli, 7);
        assert_eq!(h.outputs.len(), 4);
        let y = h.circuit.apply_basis(0xff).unwrap();
        let w: u64 = h.outputs.iter().enumerate().map(|(i, &q)| (y >> q & 1) << i).sum();
        assert_eq!(w, 8);
    }

    #[test]
    fn one_bit_weight_is_identity() {
        let h = build_hamming_weight(1).unwrap();
        assert!(h.circuit.is_empty());
        assert_eq!(h.outputs, vec![0]);
        assert!(build_hamming_weight(0).is_err());
        assert!(build_hamming_weight(9).is_err());
    }

    #[test]
    fn hwp_widths() {
        assert_eq!(build_hwp(5, 0.1, HwpStrategy::Catalyzed).unwrap().body.n_qubits(), 14);
        assert_eq!(build_hwp(2, 0.1, HwpStrategy::Baseline).unwrap().body.n_qubits(), 3);
        assert!(build_hwp(6, 0.1, HwpStrategy::Baseline).is_err());
        assert!(build_hwp(2, f64::NAN, HwpStrategy::Baseline).is_err());
    }

    #[test]
    fn long_swap_counts() {
        for k in 1..=3 {
            let c = build_long_fswap(0, k, 4).unwrap();
            let swaps = c.ops().iter().filter(|o| matches!(o.gate, Gate::Swap(..))).count();
            assert_eq!(swaps, 2 * k - 1);
        }
        assert!(build_fswap(0, 2, 4).is_err());
        assert!(build_long_fswap(2, 2, 4).is_err());
    }

    #[test]
    fn plaquette_tally() {
        let t = build_plaquette_evolution(0.37).unwrap().tally();
        assert_eq!((t.t, t.rz, t.toffoli), (8, 2, 0));
    }
}
