//! The gadget verification suite behind `verify`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{
    build_fswap, build_hamming_weight, build_hwp, build_long_fswap, build_plaquette_evolution, build_two_site_fourier,
    deviation_up_to_phase, max_abs_diff, Circuit, FermionOracle, HwpCircuit, Matrix, StateVector,
};
use crate::error::Result;
use crate::primitives::{hwp_cost, HwpStrategy};

pub const UNITARY_TOL: f64 = 1e-9;
pub const RELATION_TOL: f64 = 1e-12;
pub const FIDELITY_TOL: f64 = 1e-12;
pub const SUITE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub max_deviation: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, dev: f64, tol: f64) -> Check {
        Check { check: name.into(), max_deviation: dev, pass: dev.is_finite() && dev <= tol }
    }

    fn exact(name: impl Into<String>, mismatches: u64) -> Check {
        Check { check: name.into(), max_deviation: mismatches as f64, pass: mismatches == 0 }
    }
}

pub fn angles(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-PI..PI)).collect()
}

/// Wrong-output count over all 2^M inputs.
pub fn hamming_weight_mismatches(m: usize) -> Result<u64> {
    let h = build_hamming_weight(m)?;
    let mut bad = 0;
    for x in 0..1u64 << m {
        let y = h.circuit.apply_basis(x)?;
        let w: u64 = h.outputs.iter().enumerate().map(|(i, &q)| (y >> q & 1) << i).sum();
        if w != u64::from(x.count_ones()) {
            bad += 1;
        }
    }
    Ok(bad)
}

fn prepared(h: &HwpCircuit, index: usize, plus_targets: bool) -> Result<StateVector> {
    let mut s = StateVector::basis(h.body.n_qubits(), index)?;
    if plus_targets {
        let mut c = Circuit::new(h.body.n_qubits())?;
        for &q in &h.targets {
            c.push(super::Gate::H(q))?;
        }
        s.run(&c)?;
    }
    if let Some(p) = &h.prologue {
        s.run(p)?;
    }
    Ok(s)
}

fn rz_product(m: usize, theta: f64) -> Matrix {
    let dim = 1 << m;
    Matrix::from_fn(dim, dim, |r, c| {
        if r != c {
            return Complex64::new(0.0, 0.0);
        }
        let ones = f64::from(r.count_ones());
        Complex64::from_polar(1.0, theta * (ones - m as f64 / 2.0))
    })
}

/// Induced map on the targets with ancillas in their prepared state, and
/// its deviation from ⊗Rz(θ) up to global phase.
pub fn hwp_deviation(h: &HwpCircuit) -> Result<f64> {
    let m = h.targets.len();
    let dim = 1usize << m;
    let refs = (0..dim).map(|x| prepared(h, x, false)).collect::<Result<Vec<_>>>()?;
    let mut u = Matrix::zeros(dim, dim);
    for (x, r) in refs.iter().enumerate() {
        let mut out = r.clone();
        out.run(&h.body)?;
        for (y, ry) in refs.iter().enumerate() {
            u[(y, x)] = ry.inner(&out);
        }
    }
    Ok(deviation_up_to_phase(&u, &rz_product(m, h.theta)))
}

/// 1 − ⟨ψ|ρ_cat|ψ⟩ after the body runs on |+⟩^M targets.
pub fn catalyst_infidelity(h: &HwpCircuit) -> Result<f64> {
    if h.catalyst.is_empty() {
        return Ok(0.0);
    }
    let mut s = prepared(h, 0, true)?;
    s.run(&h.body)?;
    let n = h.catalyst.len();
    let psi: Vec<Complex64> = (0..1usize << n)
        .map(|c| {
            (0..n)
                .map(|i| {
                    let phi = -h.theta * f64::from(1u32 << i);
                    let sign = if c >> i & 1 == 1 { 0.5 } else { -0.5 };
                    Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, sign * phi)
                })
                .product()
        })
        .collect();
    let cat_mask: usize = h.catalyst.iter().map(|&q| 1 << q).sum();
    let mut fid = 0.0;
    for rest in 0..1usize << s.n_qubits() {
        if rest & cat_mask != 0 {
            continue;
        }
        let amp: Complex64 = (0..1usize << n)
            .map(|c| {
                let idx = h.catalyst.iter().enumerate().fold(rest, |acc, (i, &q)| acc | (c >> i & 1) << q);
                psi[c].conj() * s.amplitudes()[idx]
            })
            .sum();
        fid += amp.norm_sqr();
    }
    Ok((1.0 - fid).abs())
}

/// Largest deviation of U a_from U† from `expected`.
fn conj_dev(u: &Matrix, o: &FermionOracle, from: usize, expected: &Matrix) -> f64 {
    max_abs_diff(&FermionOracle::conjugate(u, o.a(from)), expected)
}

fn unitarity_dev(u: &Matrix) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &Matrix::identity(u.nrows(), u.ncols()))
}

fn fswap_checks(out: &mut Vec<Check>) -> Result<()> {
    let n = 4;
    let o = FermionOracle::new(n)?;
    let (mut rel, mut inv, mut unit) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..n - 1 {
        let u = build_fswap(i, i + 1, n)?.unitary()?;
        rel = rel.max(conj_dev(&u, &o, i + 1, o.a(i))).max(conj_dev(&u, &o, i, o.a(i + 1)));
        inv = inv.max(max_abs_diff(&(&u * &u), &Matrix::identity(1 << n, 1 << n)));
        unit = unit.max(unitarity_dev(&u));
    }
    out.push(Check::new("fswap_relations", rel, RELATION_TOL));
    out.push(Check::new("fswap_involution", inv, RELATION_TOL));
    let mut long = 0.0f64;
    let mut count_bad = 0;
    for k in 1..n {
        let c = build_long_fswap(0, k, n)?;
        let swaps = c.ops().iter().filter(|op| matches!(op.gate, super::Gate::Swap(..))).count();
        if swaps != 2 * k - 1 {
            count_bad += 1;
        }
        let u = c.unitary()?;
        long = long.max(conj_dev(&u, &o, k, o.a(0))).max(conj_dev(&u, &o, 0, o.a(k)));
        unit = unit.max(unitarity_dev(&u));
    }
    out.push(Check::new("long_fswap_relations", long, RELATION_TOL));
    out.push(Check::exact("long_fswap_uses_2k_minus_1_swaps", count_bad));
    out.push(Check::new("fswap_unitary", unit, UNITARY_TOL));
    Ok(())
}

fn fourier_checks(out: &mut Vec<Check>) -> Result<()> {
    let o = FermionOracle::new(2)?;
    let u = build_two_site_fourier()?.unitary()?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = (o.a(0) + o.a(1)) * Complex64::new(s, 0.0);
    let minus = (o.a(0) - o.a(1)) * Complex64::new(s, 0.0);
    let dev = conj_dev(&u, &o, 0, &plus).max(conj_dev(&u, &o, 1, &minus));
    let vac = (u[(0, 0)] - Complex64::new(1.0, 0.0)).norm();
    out.push(Check::new("fourier_relations", dev, RELATION_TOL));
    out.push(Check::new("fourier_vacuum_fixed", vac, RELATION_TOL));
    let t = build_two_site_fourier()?.tally();
    out.push(Check::exact("fourier_t_count_2", u64::from(t.t != 2)));
    Ok(())
}

/// exp(iθK) with K = 2(b†b − c†c), b = (a1+a2+a3+a4)/2, c = (a1−a2+a3−a4)/2.
pub fn plaquette_reference(o: &FermionOracle, theta: f64) -> Matrix {
    let h = Complex64::new(0.5, 0.0);
    let b = (o.a(0) + o.a(1) + o.a(2) + o.a(3)) * h;
    let c = (o.a(0) - o.a(1) + o.a(2) - o.a(3)) * h;
    let k = (b.adjoint() * &b - c.adjoint() * &c) * Complex64::new(2.0, 0.0);
    (k * Complex64::new(0.0, theta)).exp()
}

fn plaquette_checks(out: &mut Vec<Check>, angles: &[f64]) -> Result<()> {
    let o = FermionOracle::new(4)?;
    let (mut dev, mut unit, mut tally_bad) = (0.0f64, 0.0f64, 0);
    for &th in angles.iter().chain([0.0, 0.37].iter()) {
        let c = build_plaquette_evolution(th)?;
        let u = c.unitary()?;
        dev = dev.max(deviation_up_to_phase(&u, &plaquette_reference(&o, th)));
        unit = unit.max(unitarity_dev(&u));
        let t = c.tally();
        if (t.t, t.rz, t.toffoli) != (8, 2, 0) {
            tally_bad += 1;
        }
    }
    out.push(Check::new("plaquette_vs_exp_itheta_k", dev, UNITARY_TOL));
    out.push(Check::new("plaquette_unitary", unit, UNITARY_TOL));
    out.push(Check::exact("plaquette_tally_8T_2Rz", tally_bad));
    Ok(())
}

fn hwp_checks(out: &mut Vec<Check>, angles: &[f64]) -> Result<()> {
    let jobs: Vec<(HwpStrategy, usize, f64)> = [HwpStrategy::Baseline, HwpStrategy::Catalyzed]
        .into_iter()
        .flat_map(|s| (2..=5).flat_map(move |m| angles.iter().map(move |&th| (s, m, th))))
        .collect();
    let run = |&(s, m, th): &(HwpStrategy, usize, f64)| -> Result<(HwpStrategy, f64, f64)> {
        let h = build_hwp(m, th, s)?;
        Ok((s, hwp_deviation(&h)?, catalyst_infidelity(&h)?))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = jobs.iter().map(run).collect::<Result<_>>()?;
    for strategy in [HwpStrategy::Baseline, HwpStrategy::Catalyzed] {
        let mine = results.iter().filter(|r| r.0 == strategy);
        let dev = mine.clone().map(|r| r.1).fold(0.0, f64::max);
        out.push(Check::new(format!("hwp_{}_unitary", strategy.name()), dev, UNITARY_TOL));
        if strategy == HwpStrategy::Catalyzed {
            out.push(Check::new("catalyst_infidelity", mine.map(|r| r.2).fold(0.0, f64::max), FIDELITY_TOL));
        }
    }
    let mut bad = 0;
    for m in 1..=5 {
        for strategy in [HwpStrategy::Baseline, HwpStrategy::Catalyzed] {
            let t = build_hwp(m, 0.3, strategy)?.body.tally();
            let model = hwp_cost(m as u64, strategy)?;
            if t.toffoli as f64 != model.toffoli || t.rz != model.rz || t.t as f64 != model.t_gates {
                bad += 1;
            }
        }
    }
    out.push(Check::exact("hwp_tally_matches_cost_model", bad));
    let mut id = 0.0f64;
    for strategy in [HwpStrategy::Baseline, HwpStrategy::Catalyzed] {
        id = id.max(hwp_deviation(&build_hwp(4, 0.0, strategy)?)?);
    }
    out.push(Check::new("hwp_zero_angle_identity", id, UNITARY_TOL));
    Ok(())
}

fn hamming_checks(out: &mut Vec<Check>) -> Result<()> {
    let mut bad = 0;
    let mut count_bad = 0;
    for m in 1..=8 {
        bad += hamming_weight_mismatches(m)?;
        let h = build_hamming_weight(m)?;
        let expect = (m - m.count_ones() as usize) as u64;
        if h.adders != expect || h.circuit.tally().toffoli != expect {
            count_bad += 1;
        }
    }
    out.push(Check::exact("hamming_weight_exhaustive_m1_to_8", bad));
    out.push(Check::exact("hamming_weight_adder_count", count_bad));
    Ok(())
}

/// Runs every check. Angles come from a fixed-seed generator.
pub fn run_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let o = FermionOracle::new(FermionOracle::MAX_MODES)?;
    out.push(Check::new("oracle_anticommutation", o.car_deviation(), RELATION_TOL));
    hamming_checks(&mut out)?;
    hwp_checks(&mut out, &angles(10, SUITE_SEED))?;
    fswap_checks(&mut out)?;
    fourier_checks(&mut out)?;
    plaquette_checks(&mut out, &angles(5, SUITE_SEED + 1))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn baseline_m2_matches_rz_pair() {
        let h = build_hwp(2, PI / 7.0, HwpStrategy::Baseline).unwrap();
        assert!(hwp_deviation(&h).unwrap() < 1e-12);
    }

    #[test]
    fn catalyst_survives_m3() {
        let h = build_hwp(3, 1.234, HwpStrategy::Catalyzed).unwrap();
        assert!(catalyst_infidelity(&h).unwrap() <= FIDELITY_TOL);
        assert!(hwp_deviation(&h).unwrap() < 1e-10);
    }

    #[test]
    fn wrong_angle_is_caught() {
        let mut h = build_hwp(3, 0.5, HwpStrategy::Catalyzed).unwrap();
        h.theta = 0.6;
        assert!(hwp_deviation(&h).unwrap() > 1e-3);
    }

    #[test]
    fn plaquette_sign_matters() {
        let o = FermionOracle::new(4).unwrap();
        let u = build_plaquette_evolution(0.37).unwrap().unitary().unwrap();
        assert!(deviation_up_to_phase(&u, &plaquette_reference(&o, 0.37)) < 1e-10);
        assert!(deviation_up_to_phase(&u, &plaquette_reference(&o, -0.37)) > 1e-3);
    }

    #[test]
    fn suite_passes() {
        let checks = run_suite().unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(checks.len() > 15);
    }

    #[test]
    fn angles_are_deterministic() {
        assert_eq!(angles(10, 3), angles(10, 3));
        assert_ne!(angles(10, 3), angles(10, 4));
    }
}
