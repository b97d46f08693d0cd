//! Browser bindings: qubitization cost vs error split, single Trotter
//! estimates, and the HWP space-time trade-off.

use lattice_qre::model::extensive_error;
use lattice_qre::primitives::{hwp_batched_cost, hwp_cost, HwpStrategy};
use lattice_qre::qubitization::{estimate, optimize_qubitization_with, NonBinaryBranch, X_HI, X_LO};
use lattice_qre::report::{self, Method, Settings};
use lattice_qre::{ModelKind, ModelSpec, Strategy};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, JsValue> {
    serde_json::to_string(v).map_err(js_err)
}

#[derive(Serialize)]
struct CurvePoint {
    x: f64,
    toffoli: f64,
}

#[derive(Serialize)]
struct Curve {
    points: Vec<CurvePoint>,
    x_opt: f64,
    toffoli_opt: f64,
    qubits: u64,
}

/// Total Toffoli against the error split x, plus the optimum.
#[wasm_bindgen]
pub fn qubitization_curve(model: &str, l: u32, samples: u32) -> Result<String, JsValue> {
    let spec = ModelSpec::with_defaults(model.parse::<ModelKind>().map_err(js_err)?, l).map_err(js_err)?;
    let de = extensive_error(l).map_err(js_err)?.delta_e;
    let n = samples.clamp(2, 400);
    let points = (0..n)
        .map(|i| {
            let x = X_LO + (X_HI - X_LO) * f64::from(i) / f64::from(n - 1);
            estimate(&spec, de, x, NonBinaryBranch::default()).map(|e| CurvePoint { x, toffoli: e.total_toffoli })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(js_err)?;
    let best = optimize_qubitization_with(&spec, de, NonBinaryBranch::default()).map_err(js_err)?;
    to_json(&Curve { points, x_opt: best.x_opt, toffoli_opt: best.total_toffoli, qubits: best.total_qubits })
}

/// One optimized estimate as a result row.
#[wasm_bindgen]
pub fn trotter_estimate(model: &str, l: u32, strategy: &str, amortize_catalyst: bool) -> Result<String, JsValue> {
    let spec = ModelSpec::with_defaults(model.parse::<ModelKind>().map_err(js_err)?, l).map_err(js_err)?;
    let mut s = Settings { method: Method::Trotter, strategy: strategy.parse::<Strategy>().map_err(js_err)?, ..Settings::default() };
    s.trotter.amortize_catalyst = amortize_catalyst;
    to_json(&report::estimate(&spec, &s).map_err(js_err)?)
}

#[derive(Serialize)]
struct Tradeoff {
    batch: u64,
    baseline_toffoli: f64,
    baseline_rz: u64,
    catalyzed_toffoli: f64,
    catalyzed_rz: u64,
    workspace: u64,
}

/// HWP cost of an M-rotation layer for every power-of-two batch size up to M.
#[wasm_bindgen]
pub fn hwp_tradeoff(m: u32) -> Result<String, JsValue> {
    let m = u64::from(m);
    let mut rows = Vec::new();
    let mut b = 1u64;
    loop {
        let b_eff = b.min(m);
        let base = hwp_batched_cost(m, b_eff, HwpStrategy::Baseline).map_err(js_err)?;
        let cat = hwp_batched_cost(m, b_eff, HwpStrategy::Catalyzed).map_err(js_err)?;
        let ws = hwp_cost(b_eff, HwpStrategy::Baseline).map_err(js_err)?.ancilla;
        rows.push(Tradeoff {
            batch: b_eff,
            baseline_toffoli: base.toffoli,
            baseline_rz: base.rz,
            catalyzed_toffoli: cat.toffoli,
            catalyzed_rz: cat.rz,
            workspace: ws,
        });
        if b_eff == m {
            break;
        }
        b *= 2;
    }
    to_json(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_has_optimum_below_samples() {
        let v: serde_json::Value = serde_json::from_str(&qubitization_curve("fh", 4, 50).unwrap()).unwrap();
        let opt = v["toffoli_opt"].as_f64().unwrap();
        assert!(v["points"].as_array().unwrap().iter().all(|p| p["toffoli"].as_f64().unwrap() >= opt * (1.0 - 1e-9)));
        assert_eq!(v["qubits"], 58);
    }

    #[test]
    fn tradeoff_ends_at_full_layer() {
        let v: serde_json::Value = serde_json::from_str(&hwp_tradeoff(64).unwrap()).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.last().unwrap()["batch"], 64);
        assert_eq!(rows[0]["baseline_toffoli"], 0.0);
    }

    #[test]
    fn trotter_row_round_trips() {
        let v: serde_json::Value = serde_json::from_str(&trotter_estimate("fh", 4, "catalyzed", false).unwrap()).unwrap();
        assert_eq!(v["qubits"], 66);
    }
}
