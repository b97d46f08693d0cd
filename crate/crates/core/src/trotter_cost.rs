//! Second-order Trotter step costs under the four HWP strategies, and the
//! error-budget optimization of the full QPE run.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{extensive_error, ModelKind, ModelSpec};
use crate::optimize::{minimize, Config, Dim, SearchSpace};
use crate::primitives::{batch_sizes, floor_log2, hwp_cost, rus_t_count_unchecked, CostVector, HwpStrategy};
use crate::trotter_bounds::{model_w, tau_max, trotter_steps, FhNormTable, TrotterBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Catalyzed,
    Baseline,
    BatchedCatalyzed,
    BatchedBaseline,
}

impl Strategy {
    pub const ALL: [Strategy; 4] =
        [Strategy::Catalyzed, Strategy::Baseline, Strategy::BatchedCatalyzed, Strategy::BatchedBaseline];

    pub fn hwp(self) -> HwpStrategy {
        match self {
            Strategy::Catalyzed | Strategy::BatchedCatalyzed => HwpStrategy::Catalyzed,
            Strategy::Baseline | Strategy::BatchedBaseline => HwpStrategy::Baseline,
        }
    }

    pub fn batched(self) -> bool {
        matches!(self, Strategy::BatchedCatalyzed | Strategy::BatchedBaseline)
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Catalyzed => "catalyzed",
            Strategy::Baseline => "baseline",
            Strategy::BatchedCatalyzed => "batched-catalyzed",
            Strategy::BatchedBaseline => "batched-baseline",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "catalyzed" | "cat" => Ok(Strategy::Catalyzed),
            "baseline" | "base" => Ok(Strategy::Baseline),
            "batched-catalyzed" | "bcat" => Ok(Strategy::BatchedCatalyzed),
            "batched-baseline" | "bbase" => Ok(Strategy::BatchedBaseline),
            other => Err(Error::Config(format!("unknown strategy '{other}'"))),
        }
    }
}

/// Number of 2L²-sized layers per pnictide Trotter step.
///
/// `Symmetric` counts the 14-term symmetric product formula: 16r nnn layers,
/// 2r for H_c,1 and 2r for the two-batch H_c,2. `AsPrinted` uses the 11r of
/// the closed-form step count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PnictideLayers {
    #[default]
    Symmetric,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TrotterOptions {
    pub pnictide_layers: PnictideLayers,
    /// Charge catalyst synthesis once instead of once per query.
    pub amortize_catalyst: bool,
    /// Overrides the extensive error target.
    pub delta_e: Option<f64>,
}

/// One HWP layer kind inside a Trotter step: `count` applications on `m` targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layer {
    pub m: u64,
    pub count: u64,
}

/// A catalyst register of ⌊log2 m⌋ + 1 + extra qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Catalyst {
    m: u64,
    extra: u32,
}

impl Catalyst {
    fn size(self, cap: Option<u64>) -> u64 {
        let m = cap.map_or(self.m, |b| self.m.min(b));
        u64::from(floor_log2(m)) + 1 + u64::from(self.extra)
    }
}

fn check_step_args(spec: &ModelSpec, r: u64) -> Result<()> {
    spec.validate()?;
    if r == 0 {
        return Err(Error::Domain("Trotter step count r must be at least 1".into()));
    }
    if spec.kind() == ModelKind::Cuprate && spec.l % 4 != 0 {
        return Err(Error::InvalidLattice {
            model: "cuprate",
            l: spec.l,
            reason: "the Trotter scheme needs L divisible by 4",
        });
    }
    Ok(())
}

pub fn layers(spec: &ModelSpec, r: u64, opts: &TrotterOptions) -> Vec<Layer> {
    let n = spec.sites();
    match spec.kind() {
        ModelKind::FermiHubbard => vec![Layer { m: n, count: 4 * r + 1 }],
        ModelKind::Cuprate => vec![Layer { m: n, count: 8 * r + 1 }, Layer { m: 2 * n, count: 8 * r }],
        ModelKind::Pnictide => {
            let k = match opts.pnictide_layers {
                PnictideLayers::Symmetric => 20,
                PnictideLayers::AsPrinted => 11,
            };
            vec![Layer { m: 4 * n, count: 7 * r + 1 }, Layer { m: 2 * n, count: k * r }]
        }
    }
}

/// Directly applied T gates per step (two-site Fourier transforms).
pub fn direct_t(spec: &ModelSpec, r: u64) -> f64 {
    let n = spec.sites() as f64;
    let r = r as f64;
    match spec.kind() {
        ModelKind::FermiHubbard => 12.0 * r * n,
        ModelKind::Cuprate => 4.0 * n * (7.0 * r + 1.0),
        ModelKind::Pnictide => 0.0,
    }
}

fn catalysts(spec: &ModelSpec) -> Vec<Catalyst> {
    let n = spec.sites();
    let c = |m, extra| Catalyst { m, extra };
    match spec.kind() {
        ModelKind::FermiHubbard => vec![c(n, 1), c(n, 1)],
        ModelKind::Cuprate => vec![c(n, 0), c(n, 1), c(2 * n, 0), c(n, 0)],
        ModelKind::Pnictide => vec![c(2 * n, 0), c(2 * n, 0), c(4 * n, 1), c(4 * n, 0), c(2 * n, 0), c(2 * n, 0)],
    }
}

/// Batch size limit for the batched strategies, L²/2.
pub fn batch_size(spec: &ModelSpec) -> u64 {
    (spec.sites() / 2).max(1)
}

fn cap(spec: &ModelSpec, strategy: Strategy) -> Option<u64> {
    strategy.batched().then(|| batch_size(spec))
}

/// Non-Clifford cost of one U(τ, r), catalyst synthesis excluded.
pub fn step_cost(spec: &ModelSpec, r: u64, strategy: Strategy, opts: &TrotterOptions) -> Result<CostVector> {
    check_step_args(spec, r)?;
    let mut total = CostVector::ZERO;
    for layer in layers(spec, r, opts) {
        let sizes = match cap(spec, strategy) {
            Some(b) => batch_sizes(layer.m, b),
            None => vec![layer.m],
        };
        for size in sizes {
            let c = hwp_cost(size, strategy.hwp())?;
            total.toffoli += c.toffoli * layer.count as f64;
            total.rz += c.rz * layer.count;
        }
    }
    total.t_gates = direct_t(spec, r);
    total.ancilla = total_qubits(spec, strategy) - spec.system_qubits();
    Ok(total)
}

pub fn fh_step_cost(spec: &ModelSpec, r: u64, strategy: Strategy) -> Result<CostVector> {
    expect_kind(spec, ModelKind::FermiHubbard)?;
    step_cost(spec, r, strategy, &TrotterOptions::default())
}

pub fn cuprate_step_cost(spec: &ModelSpec, r: u64, strategy: Strategy) -> Result<CostVector> {
    expect_kind(spec, ModelKind::Cuprate)?;
    step_cost(spec, r, strategy, &TrotterOptions::default())
}

pub fn pnictide_step_cost(spec: &ModelSpec, r: u64, strategy: Strategy, layers: PnictideLayers) -> Result<CostVector> {
    expect_kind(spec, ModelKind::Pnictide)?;
    step_cost(spec, r, strategy, &TrotterOptions { pnictide_layers: layers, ..TrotterOptions::default() })
}

fn expect_kind(spec: &ModelSpec, kind: ModelKind) -> Result<()> {
    if spec.kind() != kind {
        return Err(Error::Domain(format!("expected a {kind} model, got {}", spec.kind())));
    }
    Ok(())
}

/// Catalyst rotations synthesized (numerator of the per-rotation budget) and
/// the multiplier applied to the RUS cost. They differ by one for the
/// unbatched Hubbard model, as in the closed-form count.
pub fn catalyst_rotations(spec: &ModelSpec, strategy: Strategy) -> (u64, u64) {
    if strategy.hwp() == HwpStrategy::Baseline {
        return (0, 0);
    }
    let count: u64 = catalysts(spec).iter().map(|c| c.size(cap(spec, strategy))).sum();
    let mult = if spec.kind() == ModelKind::FermiHubbard && !strategy.batched() { count - 1 } else { count };
    (count, mult)
}

/// (N_T1, N_T2): T gates for catalyst preparation and for the step rotations.
pub fn synthesis_t_counts(spec: &ModelSpec, r: u64, strategy: Strategy, budget: &TrotterBudget, opts: &TrotterOptions) -> Result<(f64, f64)> {
    budget.validate()?;
    let step = step_cost(spec, r, strategy, opts)?;
    Ok(synthesis_from_counts(spec, step.rz, strategy, budget))
}

fn synthesis_from_counts(spec: &ModelSpec, nrz: u64, strategy: Strategy, b: &TrotterBudget) -> (f64, f64) {
    let scale = (1.0 - b.y) * b.delta_e * b.tau;
    let (count, mult) = catalyst_rotations(spec, strategy);
    let n_t1 = if count == 0 { 0.0 } else { mult as f64 * rus_t_count_unchecked(b.z * scale / count as f64) };
    let nrz = nrz as f64;
    let n_t2 = nrz * rus_t_count_unchecked(b.x * scale / nrz);
    (n_t1, n_t2)
}

/// Logical qubits: system, HW workspace, one QPE control, one RUS ancilla,
/// and for catalyzed strategies the catalyst registers and adder carries.
pub fn total_qubits(spec: &ModelSpec, strategy: Strategy) -> u64 {
    let m_max = layers(spec, 1, &TrotterOptions::default()).iter().map(|l| l.m).max().unwrap_or(1);
    let m = cap(spec, strategy).map_or(m_max, |b| m_max.min(b));
    let mut q = spec.system_qubits() + 2 + m - u64::from(m.count_ones());
    if strategy.hwp() == HwpStrategy::Catalyzed {
        q += catalysts(spec).iter().map(|c| c.size(cap(spec, strategy))).sum::<u64>();
        q += u64::from(floor_log2(m)) + 1;
    }
    q
}

/// QPE queries N_q = 0.76π/(yτΔE).
pub fn queries(y: f64, tau: f64, delta_e: f64) -> Result<f64> {
    if !(y > 0.0 && y < 1.0 && tau > 0.0 && delta_e > 0.0) {
        return Err(Error::Domain(format!("queries needs y in (0,1), tau > 0, delta_E > 0 (y={y}, tau={tau})")));
    }
    Ok(0.76 * PI / (y * tau * delta_e))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterEstimate {
    pub model: ModelKind,
    pub l: u32,
    pub strategy: Strategy,
    pub w: f64,
    pub r: u64,
    pub n_queries: f64,
    pub n_toffoli_per_u: f64,
    pub n_t1: f64,
    pub n_t2: f64,
    pub n_t_direct: f64,
    pub total_toffoli: f64,
    pub total_qubits: u64,
    pub budget: TrotterBudget,
}

/// Evaluates the full cost at fixed budget parameters.
pub fn evaluate(spec: &ModelSpec, w: f64, strategy: Strategy, budget: &TrotterBudget, opts: &TrotterOptions) -> Result<TrotterEstimate> {
    budget.validate()?;
    let tmax = tau_max(w)?;
    if budget.tau >= tmax {
        return Err(Error::Domain(format!("tau={} violates tau < tau_max={tmax}", budget.tau)));
    }
    let r = trotter_steps(w, budget.tau, budget)?;
    let step = step_cost(spec, r, strategy, opts)?;
    let (n_t1, n_t2) = synthesis_from_counts(spec, step.rz, strategy, budget);
    let nq = queries(budget.y, budget.tau, budget.delta_e)?;
    let per_query = if opts.amortize_catalyst { step.t_gates + n_t2 } else { step.t_gates + n_t1 + n_t2 };
    let mut total = nq * (step.toffoli + per_query / 2.0);
    if opts.amortize_catalyst {
        total += n_t1 / 2.0;
    }
    Ok(TrotterEstimate {
        model: spec.kind(),
        l: spec.l,
        strategy,
        w,
        r,
        n_queries: nq,
        n_toffoli_per_u: step.toffoli,
        n_t1,
        n_t2,
        n_t_direct: step.t_gates,
        total_toffoli: total,
        total_qubits: total_qubits(spec, strategy),
        budget: *budget,
    })
}

/// Largest r the search considers: the trajectory where ΔE_T falls to 5% of ΔE.
fn max_steps(w: f64, tmax: f64, delta_e: f64) -> u64 {
    (tmax * (w / (0.05 * delta_e)).sqrt()).ceil() as u64 + 1
}

/// Minimizes total Toffoli over (x, y, z, τ).
///
/// For a fixed r the cost falls monotonically in τ, so τ sits on the larger
/// of the step-count boundary and τ_max. The search loops over r and runs the
/// grid/Nelder–Mead minimizer over (x, y, z) for each.
pub fn optimize_trotter_with(
    spec: &ModelSpec,
    strategy: Strategy,
    opts: &TrotterOptions,
    norms: &FhNormTable,
    config: &Config,
) -> Result<TrotterEstimate> {
    check_step_args(spec, 1)?;
    let delta_e = match opts.delta_e {
        Some(d) if d > 0.0 => d,
        Some(d) => return Err(Error::Domain(format!("delta_E override must be positive, got {d}"))),
        None => extensive_error(spec.l)?.delta_e,
    };
    let w = model_w(spec.l, &spec.couplings, norms)?;
    if !(w > 0.0) {
        return Err(Error::Infeasible("W = 0: no Trotter error to budget".into()));
    }
    let tmax = tau_max(w)?;
    let catalyzed = strategy.hwp() == HwpStrategy::Catalyzed;

    let mut dims = vec![Dim::log(1e-5, 0.5), Dim::linear(0.05, 0.95)];
    if catalyzed {
        dims.push(Dim::log(1e-8, 0.5));
    }

    let mut best: Option<(f64, TrotterBudget)> = None;
    for r in 1..=max_steps(w, tmax, delta_e) {
        let step = step_cost(spec, r, strategy, opts)?;
        let budget_at = |p: &[f64]| {
            let (x, y) = (p[0], p[1]);
            let z = if catalyzed { p[2] } else { 0.0 };
            let det = (1.0 - x - z) * (1.0 - y) * delta_e;
            let tau = (r as f64 * (det / w).sqrt()).min(tmax) * (1.0 - 1e-12);
            TrotterBudget { delta_e, x, y, z, tau }
        };
        let objective = |p: &[f64]| {
            let b = budget_at(p);
            if b.validate().is_err() {
                return f64::INFINITY;
            }
            let r_actual = match trotter_steps(w, b.tau, &b) {
                Ok(v) => v,
                Err(_) => return f64::INFINITY,
            };
            if r_actual != r {
                return f64::INFINITY;
            }
            let (n_t1, n_t2) = synthesis_from_counts(spec, step.rz, strategy, &b);
            let nq = 0.76 * PI / (b.y * b.tau * delta_e);
            if opts.amortize_catalyst {
                nq * (step.toffoli + (step.t_gates + n_t2) / 2.0) + n_t1 / 2.0
            } else {
                nq * (step.toffoli + (step.t_gates + n_t1 + n_t2) / 2.0)
            }
        };
        let space = SearchSpace::new(dims.clone())?.with_constraint(|p| {
            let z = if catalyzed { p[2] } else { 0.0 };
            p[0] + z < 0.999
        });
        let m = match minimize(objective, &space, config) {
            Ok(m) => m,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        };
        if best.map_or(true, |(v, _)| m.value < v) {
            best = Some((m.value, budget_at(&m.point)));
        }
    }
    let (_, budget) = best.ok_or_else(|| Error::Infeasible(format!("no feasible Trotter parameters for {} L={}", spec.kind(), spec.l)))?;
    evaluate(spec, w, strategy, &budget, opts)
}

pub fn optimize_trotter(spec: &ModelSpec, strategy: Strategy) -> Result<TrotterEstimate> {
    optimize_trotter_with(spec, strategy, &TrotterOptions::default(), &FhNormTable::embedded(), &default_config())
}

/// Optimizer settings used for every Trotter estimate.
pub fn default_config() -> Config {
    Config { grid: 6, starts: 2, max_evals: 1500, xtol: 1e-9, ftol: 1e-12, seed: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: ModelKind, l: u32) -> ModelSpec {
        ModelSpec::with_defaults(kind, l).unwrap()
    }

    #[test]
    fn fh_step_examples() {
        let s = spec(ModelKind::FermiHubbard, 8);
        let c = fh_step_cost(&s, 1, Strategy::Catalyzed).unwrap();
        assert_eq!(c.toffoli, 350.0);
        assert_eq!(c.rz, 5);
        assert_eq!(c.t_gates, 12.0 * 64.0);
        let b = fh_step_cost(&s, 1, Strategy::Baseline).unwrap();
        assert_eq!((b.toffoli, b.rz), (315.0, 35));
        assert!(fh_step_cost(&s, 0, Strategy::Catalyzed).is_err());
    }

    #[test]
    fn cuprate_step_examples() {
        let s = spec(ModelKind::Cuprate, 8);
        assert_eq!(cuprate_step_cost(&s, 1, Strategy::Catalyzed).unwrap().toffoli, 1710.0);
        let s4 = spec(ModelKind::Cuprate, 4);
        assert_eq!(cuprate_step_cost(&s4, 1, Strategy::Catalyzed).unwrap().t_gates, 512.0);
        let one = cuprate_step_cost(&s, 1, Strategy::Catalyzed).unwrap();
        let two = cuprate_step_cost(&s, 2, Strategy::Catalyzed).unwrap();
        let zero_r = 70.0;
        assert_eq!(two.toffoli - zero_r, 2.0 * (one.toffoli - zero_r));
        assert_eq!(one.rz, 17);
        assert!(cuprate_step_cost(&spec(ModelKind::Cuprate, 6), 1, Strategy::Catalyzed).is_err());
    }

    #[test]
    fn pnictide_step_examples() {
        let s = spec(ModelKind::Pnictide, 4);
        let printed = pnictide_step_cost(&s, 1, Strategy::Catalyzed, PnictideLayers::AsPrinted).unwrap();
        assert_eq!(printed.toffoli, 967.0);
        assert_eq!(printed.rz, 19);
        assert_eq!(printed.t_gates, 0.0);
        let sym = pnictide_step_cost(&s, 1, Strategy::Catalyzed, PnictideLayers::Symmetric).unwrap();
        assert_eq!(sym.toffoli, 560.0 + 20.0 * 37.0);
        assert_eq!(sym.rz, 28);
        assert!(pnictide_step_cost(&s, 0, Strategy::Catalyzed, PnictideLayers::Symmetric).is_err());
    }

    #[test]
    fn catalyst_multipliers() {
        let s = spec(ModelKind::FermiHubbard, 8);
        assert_eq!(catalyst_rotations(&s, Strategy::Catalyzed), (16, 15));
        assert_eq!(catalyst_rotations(&s, Strategy::Baseline), (0, 0));
        let c = spec(ModelKind::Cuprate, 8);
        assert_eq!(catalyst_rotations(&c, Strategy::Catalyzed).1, 3 * 6 + 7 + 5);
        let p = spec(ModelKind::Pnictide, 8);
        assert_eq!(catalyst_rotations(&p, Strategy::Catalyzed).1, 2 * 8 + 4 * 7 + 7);
    }

    #[test]
    fn nt2_log_argument_one() {
        let s = spec(ModelKind::FermiHubbard, 8);
        let b = TrotterBudget { delta_e: 1.0, x: 0.5, y: 0.5, z: 0.01, tau: 20.0 };
        let (_, n_t2) = synthesis_t_counts(&s, 1, Strategy::Catalyzed, &b, &TrotterOptions::default()).unwrap();
        assert!((n_t2 - 24.3).abs() < 1e-9);
    }

    #[test]
    fn doubling_z_saves_one_log_unit() {
        let s = spec(ModelKind::FermiHubbard, 8);
        let o = TrotterOptions::default();
        let b = TrotterBudget { delta_e: 0.3264, x: 0.01, y: 0.6, z: 0.001, tau: 0.05 };
        let (a, _) = synthesis_t_counts(&s, 3, Strategy::Catalyzed, &b, &o).unwrap();
        let (c, _) = synthesis_t_counts(&s, 3, Strategy::Catalyzed, &TrotterBudget { z: 0.002, ..b }, &o).unwrap();
        assert!((a - c - 0.53 * 15.0).abs() < 1e-9);
    }

    #[test]
    fn qubit_itemization() {
        let fh = spec(ModelKind::FermiHubbard, 8);
        assert_eq!(total_qubits(&fh, Strategy::BatchedBaseline), 161);
        assert_eq!(total_qubits(&fh, Strategy::Baseline), 193);
        assert_eq!(total_qubits(&fh, Strategy::Catalyzed), 216);
        assert_eq!(total_qubits(&fh, Strategy::BatchedCatalyzed), 181);
        assert_eq!(total_qubits(&spec(ModelKind::Pnictide, 4), Strategy::Catalyzed), 175);
        assert_eq!(total_qubits(&spec(ModelKind::Cuprate, 4), Strategy::Catalyzed), 93);
        assert_eq!(total_qubits(&spec(ModelKind::Cuprate, 4), Strategy::BatchedCatalyzed), 62);
    }

    #[test]
    fn queries_examples() {
        let q = queries(0.6, 0.02, 0.3264).unwrap();
        assert!((q - 0.76 * PI / (0.6 * 0.02 * 0.3264)).abs() < 1e-9);
        assert!((queries(0.5, 2.0, 0.76 * PI).unwrap() - 1.0).abs() < 1e-15);
        assert!((queries(0.5, 0.04, 1.0).unwrap() * 2.0 - queries(0.5, 0.02, 1.0).unwrap()).abs() < 1e-9);
        assert!(queries(0.0, 0.02, 1.0).is_err());
    }

    #[test]
    fn fh_l8_catalyzed_near_reported_regime() {
        let e = optimize_trotter(&spec(ModelKind::FermiHubbard, 8), Strategy::Catalyzed).unwrap();
        assert!(e.budget.tau < tau_max(e.w).unwrap());
        assert!((0.5..0.8).contains(&e.budget.y), "{:?}", e.budget);
        assert!(e.budget.x < 0.05 && e.budget.z < 0.01, "{:?}", e.budget);
        let check = evaluate(&spec(ModelKind::FermiHubbard, 8), e.w, e.strategy, &e.budget, &TrotterOptions::default()).unwrap();
        assert_eq!(check.total_toffoli, e.total_toffoli);
    }

    #[test]
    fn amortized_catalyst_is_cheaper() {
        let s = spec(ModelKind::FermiHubbard, 8);
        let plain = optimize_trotter(&s, Strategy::Catalyzed).unwrap();
        let o = TrotterOptions { amortize_catalyst: true, ..TrotterOptions::default() };
        let am = optimize_trotter_with(&s, Strategy::Catalyzed, &o, &FhNormTable::embedded(), &default_config()).unwrap();
        assert!(am.total_toffoli < plain.total_toffoli);
    }
}
