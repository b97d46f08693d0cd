//! Result rows, table reproduction, and CSV/JSON/text emitters.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelSpec};
use crate::optimize::Config;
use crate::qubitization::{optimize_qubitization_with, NonBinaryBranch};
use crate::reference::{qubitization_ref, qubitization_table, trotter_ref, trotter_table, Table};
use crate::trotter_bounds::FhNormTable;
use crate::trotter_cost::{default_config, optimize_trotter_with, Strategy, TrotterOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Qubitization,
    Trotter,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Qubitization => "qubitization",
            Method::Trotter => "trotter",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qubitization" | "qb" => Ok(Method::Qubitization),
            "trotter" => Ok(Method::Trotter),
            other => Err(Error::Config(format!("unknown method '{other}'"))),
        }
    }
}

/// One output row. Fields a method does not produce are left empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub model: ModelKind,
    pub method: Method,
    pub strategy: Option<Strategy>,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "W")]
    pub w: Option<f64>,
    pub r: Option<u64>,
    pub x: f64,
    pub y: Option<f64>,
    pub z: Option<f64>,
    pub tau: Option<f64>,
    pub toffoli: f64,
    pub qubits: u64,
    pub ref_toffoli: Option<f64>,
    pub ref_qubits: Option<u64>,
    pub rel_dev: Option<f64>,
}

pub const CSV_HEADER: &str = "model,method,strategy,L,W,r,x,y,z,tau,toffoli,qubits,ref_toffoli,ref_qubits,rel_dev";

impl Row {
    fn with_reference(mut self, toffoli: f64, qubits: u64) -> Self {
        self.ref_toffoli = Some(toffoli);
        self.ref_qubits = Some(qubits);
        self.rel_dev = Some(self.toffoli / toffoli - 1.0);
        self
    }
}

/// Everything needed to produce one row besides the lattice.
#[derive(Debug, Clone)]
pub struct Settings {
    pub method: Method,
    pub strategy: Strategy,
    pub trotter: TrotterOptions,
    pub branch: NonBinaryBranch,
    pub norms: FhNormTable,
    pub config: Config,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            method: Method::Qubitization,
            strategy: Strategy::Catalyzed,
            trotter: TrotterOptions::default(),
            branch: NonBinaryBranch::default(),
            norms: FhNormTable::embedded(),
            config: default_config(),
        }
    }
}

impl Settings {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.config.seed = seed;
        self
    }
}

pub fn estimate(spec: &ModelSpec, settings: &Settings) -> Result<Row> {
    let default_couplings = spec.couplings == crate::model::default_params(spec.kind());
    let benchmark = default_couplings && settings.trotter.delta_e.is_none();
    match settings.method {
        Method::Qubitization => {
            let de = match settings.trotter.delta_e {
                Some(d) => d,
                None => crate::model::extensive_error(spec.l)?.delta_e,
            };
            let e = optimize_qubitization_with(spec, de, settings.branch)?;
            let row = Row {
                model: spec.kind(),
                method: Method::Qubitization,
                strategy: None,
                l: spec.l,
                w: None,
                r: None,
                x: e.x_opt,
                y: None,
                z: None,
                tau: None,
                toffoli: e.total_toffoli,
                qubits: e.total_qubits,
                ref_toffoli: None,
                ref_qubits: None,
                rel_dev: None,
            };
            Ok(match qubitization_ref(spec.kind(), spec.l).filter(|_| benchmark) {
                Some(rf) => row.with_reference(rf.toffoli, rf.qubits),
                None => row,
            })
        }
        Method::Trotter => {
            let e = optimize_trotter_with(spec, settings.strategy, &settings.trotter, &settings.norms, &settings.config)?;
            let row = Row {
                model: spec.kind(),
                method: Method::Trotter,
                strategy: Some(settings.strategy),
                l: spec.l,
                w: Some(e.w),
                r: Some(e.r),
                x: e.budget.x,
                y: Some(e.budget.y),
                z: Some(e.budget.z),
                tau: Some(e.budget.tau),
                toffoli: e.total_toffoli,
                qubits: e.total_qubits,
                ref_toffoli: None,
                ref_qubits: None,
                rel_dev: None,
            };
            let reference = trotter_ref(spec.kind(), spec.l)
                .filter(|_| benchmark && !settings.trotter.amortize_catalyst)
                .map(|rf| rf.get(settings.strategy));
            Ok(match reference {
                Some((t, q)) => row.with_reference(t, q),
                None => row,
            })
        }
    }
}

fn map_rows<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Row> + Sync + Send) -> Result<Vec<Row>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// One row per L, in the order given.
pub fn sweep(specs: &[ModelSpec], settings: &Settings) -> Result<Vec<Row>> {
    map_rows(specs, |s| estimate(s, settings))
}

/// Recomputes a supplementary table with the benchmark couplings. Trotter
/// tables produce one row per (L, strategy), L-major.
pub fn reproduce(table: Table, strategies: &[Strategy], settings: &Settings) -> Result<Vec<Row>> {
    match table {
        Table::Qubitization(kind) => {
            let specs = qubitization_table(kind)
                .iter()
                .map(|r| ModelSpec::with_defaults(kind, r.l))
                .collect::<Result<Vec<_>>>()?;
            let s = Settings { method: Method::Qubitization, ..settings.clone() };
            sweep(&specs, &s)
        }
        Table::Trotter(kind) => {
            let mut jobs = Vec::new();
            for row in trotter_table(kind) {
                for &st in strategies {
                    jobs.push((ModelSpec::with_defaults(kind, row.l)?, st));
                }
            }
            map_rows(&jobs, |(spec, st)| {
                let s = Settings { method: Method::Trotter, strategy: *st, ..settings.clone() };
                estimate(spec, &s)
            })
        }
    }
}

/// Largest |rel_dev| over rows that carry a reference.
pub fn max_rel_dev(rows: &[Row]) -> Option<f64> {
    rows.iter().filter_map(|r| r.rel_dev).map(f64::abs).reduce(f64::max)
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Row>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header '{}'", header.join(","))));
    }
    rd.deserialize().map(|r| r.map_err(csv_err)).collect()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_json<W: Write>(rows: &[Row], out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, rows).map_err(|e| Error::Io(e.to_string()))
}

/// Formats to 3 significant figures in `1.23e4` style.
pub fn sig3(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.2e}");
    match s.split_once('e') {
        Some((m, e)) => format!("{m}e{}", e.parse::<i32>().unwrap_or(0)),
        None => s,
    }
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map_or_else(|| "-".to_string(), f)
}

/// Aligned text table at 3 significant figures.
pub fn write_table<W: Write>(rows: &[Row], mut out: W) -> Result<()> {
    let header = ["model", "method", "strategy", "L", "W", "r", "toffoli", "qubits", "ref_toffoli", "ref_qubits", "rel_dev"];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.model.to_string(),
                r.method.to_string(),
                opt(r.strategy, |s| s.to_string()),
                r.l.to_string(),
                opt(r.w, sig3),
                opt(r.r, |v| v.to_string()),
                sig3(r.toffoli),
                r.qubits.to_string(),
                opt(r.ref_toffoli, sig3),
                opt(r.ref_qubits, |v| v.to_string()),
                opt(r.rel_dev, |d| format!("{:+.1}%", 100.0 * d)),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|b| b[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for b in &body {
        writeln!(out, "{}", line(b.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fh(l: u32) -> ModelSpec {
        ModelSpec::with_defaults(ModelKind::FermiHubbard, l).unwrap()
    }

    #[test]
    fn sig3_matches_table_style() {
        assert_eq!(sig3(433_012.0), "4.33e5");
        assert_eq!(sig3(0.001234), "1.23e-3");
        assert_eq!(sig3(282.4), "2.82e2");
    }

    #[test]
    fn qubitization_row_has_reference() {
        let r = estimate(&fh(8), &Settings::default()).unwrap();
        assert_eq!(r.qubits, 160);
        assert_eq!(r.ref_qubits, Some(160));
        assert!(r.rel_dev.unwrap().abs() < 0.02);
        assert!(r.strategy.is_none() && r.w.is_none());
    }

    #[test]
    fn overrides_drop_reference() {
        let mut s = Settings::default();
        s.trotter.delta_e = Some(0.5);
        assert!(estimate(&fh(8), &s).unwrap().ref_toffoli.is_none());
    }

    #[test]
    fn csv_round_trip_and_header() {
        let rows = sweep(&[fh(4), fh(6)], &Settings::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn table_output_lists_every_row() {
        let rows = sweep(&[fh(4), fh(6)], &Settings::default()).unwrap();
        let mut buf = Vec::new();
        write_table(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("4.33e5"));
    }
}
