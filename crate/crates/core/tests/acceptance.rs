//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! the report; the test fails if any line does.

use std::time::{Duration, Instant};

use lattice_qre::circuitlab::verify::{run_suite, Check};
use lattice_qre::model::{lambda, Couplings};
use lattice_qre::primitives::{floor_log2, hwp_cost, HwpStrategy};
use lattice_qre::reference::{qubitization_ref, trotter_ref, Table};
use lattice_qre::report::{reproduce, sig3, write_csv, Row};
use lattice_qre::trotter_bounds::{model_w, FhNormTable};
use lattice_qre::{ModelKind, ModelSpec, Settings, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

struct Report {
    lines: Vec<(String, bool, String)>,
}

impl Report {
    fn add(&mut self, name: &str, pass: bool, detail: String) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push((name.to_string(), pass, detail));
    }
}

fn settings() -> Settings {
    Settings::default().with_seed(SEED)
}

fn run_tables(tables: &[u32]) -> (Vec<Row>, Duration) {
    let start = Instant::now();
    let mut rows = Vec::new();
    for &n in tables {
        rows.extend(reproduce(Table::from_number(n).unwrap(), &Strategy::ALL, &settings()).unwrap());
    }
    (rows, start.elapsed())
}

fn csv(rows: &[Row]) -> Vec<u8> {
    let mut out = Vec::new();
    write_csv(rows, &mut out).unwrap();
    out
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn criterion_1_2(r: &mut Report, rows: &[Row], took: Duration) {
    let worst = rows.iter().map(|row| row.rel_dev.unwrap().abs()).fold(0.0, f64::max);
    let within = rows.iter().filter(|row| row.rel_dev.unwrap().abs() <= 0.02).count();
    let fast = took < Duration::from_secs(1);
    r.add(
        "1 qubitization Toffoli within 2%",
        rows.len() == 45 && within == 45 && fast,
        format!("{within}/{} rows, max |dev| {:.2}%, {:.3}s", rows.len(), 100.0 * worst, took.as_secs_f64()),
    );
    let exact = rows.iter().filter(|row| Some(row.qubits) == row.ref_qubits).count();
    r.add("2 qubitization qubits exact", exact == 45, format!("{exact}/45 rows"));
}

fn criterion_3(r: &mut Report, rows: &[Row]) {
    let mut detail = Vec::new();
    let mut pass = true;
    for kind in ModelKind::ALL {
        let mine: Vec<&Row> = rows.iter().filter(|row| row.model == kind && row.strategy == Some(Strategy::Catalyzed)).collect();
        let (ok, worst) = mine.iter().fold((0, 0.0f64), |(ok, worst), row| {
            let paper = trotter_ref(kind, row.l).unwrap().w;
            let w = row.w.unwrap();
            let good = match kind {
                ModelKind::FermiHubbard => sig3(w) == sig3(paper),
                _ => rel(w, paper) <= 0.005,
            };
            (ok + usize::from(good), worst.max(rel(w, paper)))
        });
        pass &= ok == mine.len();
        detail.push(format!("{kind} {ok}/{} (max {:.2}%)", mine.len(), 100.0 * worst));
    }
    r.add("3 Trotter W", pass, detail.join(", "));
}

fn criterion_4(r: &mut Report, rows: &[Row], took: Duration) {
    let mut detail = Vec::new();
    let mut pass = took < Duration::from_secs(60);
    for s in Strategy::ALL {
        let tol = if s.batched() { 0.15 } else { 0.05 };
        let mine: Vec<&Row> = rows.iter().filter(|row| row.strategy == Some(s)).collect();
        let ok = mine.iter().filter(|row| row.rel_dev.unwrap().abs() <= tol).count();
        let worst = mine.iter().map(|row| row.rel_dev.unwrap().abs()).fold(0.0, f64::max);
        pass &= ok == mine.len();
        detail.push(format!("{s} {ok}/{} (max {:.1}%)", mine.len(), 100.0 * worst));
    }
    detail.push(format!("{:.2}s", took.as_secs_f64()));
    r.add("4 Trotter Toffoli", pass, detail.join(", "));
}

fn criterion_5(r: &mut Report, rows: &[Row]) {
    let mut detail = Vec::new();
    let mut pass = true;
    for s in Strategy::ALL {
        let mine: Vec<&Row> = rows.iter().filter(|row| row.strategy == Some(s)).collect();
        let ok = mine
            .iter()
            .filter(|row| {
                let (q, p) = (row.qubits as f64, row.ref_qubits.unwrap() as f64);
                if s == Strategy::BatchedBaseline {
                    (q - p).abs() <= 2.0
                } else {
                    rel(q, p) <= 0.05
                }
            })
            .count();
        pass &= ok == mine.len();
        detail.push(format!("{s} {ok}/{}", mine.len()));
    }
    r.add("5 Trotter qubits", pass, detail.join(", "));
}

fn criterion_6(r: &mut Report) -> Vec<Check> {
    let start = Instant::now();
    let checks = run_suite().unwrap();
    let took = start.elapsed();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
    r.add(
        "6 circuitlab oracle suite",
        failed.is_empty() && took < Duration::from_secs(10),
        format!("{}/{} checks, {:.2}s{}", checks.len() - failed.len(), checks.len(), took.as_secs_f64(),
            if failed.is_empty() { String::new() } else { format!(", failed: {}", failed.join(" ")) }),
    );
    checks
}

fn random_couplings(kind: ModelKind, rng: &mut ChaCha8Rng) -> Couplings {
    let mut c = || rng.gen_range(0.1..3.0);
    match kind {
        ModelKind::FermiHubbard => Couplings::FermiHubbard { t: c(), u: 3.0 * c() },
        ModelKind::Cuprate => Couplings::Cuprate { t: c(), t_prime: c(), t_dprime: c(), u: 3.0 * c() },
        ModelKind::Pnictide => Couplings::Pnictide { t1: c(), t2: c(), t3: c(), t4: c(), u: 3.0 * c(), v: 3.0 * c() },
    }
}

fn criterion_7(r: &mut Report, suite: &[Check]) {
    let table = FhNormTable::embedded();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut w_worst = Vec::new();
    let mut lambda_worst = 0.0f64;
    for kind in ModelKind::ALL {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let c = random_couplings(kind, &mut rng);
            let s = rng.gen_range(0.01..10.0);
            let l = 8;
            let w = model_w(l, &c, &table).unwrap();
            let ws = model_w(l, &c.scaled(s), &table).unwrap();
            worst = worst.max(rel(ws, s.powi(3) * w));
            let la = lambda(&ModelSpec { l, couplings: c });
            let lb = lambda(&ModelSpec { l, couplings: c.scaled(s) });
            lambda_worst = lambda_worst.max(rel(lb, s * la));
        }
        w_worst.push((kind, worst));
    }
    let gap_bad = (1..=4096u64)
        .filter(|&m| {
            let b = hwp_cost(m, HwpStrategy::Baseline).unwrap().toffoli;
            let c = hwp_cost(m, HwpStrategy::Catalyzed).unwrap().toffoli;
            c - b != f64::from(floor_log2(m) + 1)
        })
        .count();
    let tally_checks = ["hwp_tally_matches_cost_model", "hamming_weight_adder_count", "fourier_t_count_2", "plaquette_tally_8T_2Rz", "long_fswap_uses_2k_minus_1_swaps"];
    let tally_ok = tally_checks.iter().all(|name| suite.iter().any(|c| c.check == *name && c.pass));
    let w_ok = w_worst.iter().all(|(_, w)| *w <= 1e-12);
    r.add(
        "7 property suites",
        w_ok && lambda_worst <= 1e-12 && gap_bad == 0 && tally_ok,
        format!(
            "W homogeneity {}; lambda max rel {:.1e}; HWP gap mismatches {gap_bad}/4096; gadget tallies {}",
            w_worst.iter().map(|(k, w)| format!("{k} {w:.1e}")).collect::<Vec<_>>().join(" "),
            lambda_worst,
            if tally_ok { "agree" } else { "disagree" },
        ),
    );
}

fn crossover(r: &mut Report, qb: &[Row], trotter: &[Row]) {
    let mut detail = Vec::new();
    let mut pass = true;
    for kind in ModelKind::ALL {
        let mut ls: Vec<u32> = trotter.iter().filter(|row| row.model == kind).map(|row| row.l).collect();
        ls.dedup();
        let first = ls.into_iter().find(|&l| {
            let q = qb.iter().find(|row| row.model == kind && row.l == l).unwrap().toffoli;
            trotter.iter().filter(|row| row.model == kind && row.l == l).all(|row| row.toffoli < q)
        });
        let want = lattice_qre::reference::published_crossover(kind);
        pass &= first == Some(want);
        detail.push(format!("{kind} {} (paper {want})", first.map_or("none".to_string(), |l| l.to_string())));
        assert!(qubitization_ref(kind, want).is_some());
    }
    r.add("crossover", pass, detail.join(", "));
}

#[test]
fn acceptance() {
    let mut r = Report { lines: Vec::new() };
    let (qb, qb_time) = run_tables(&[1, 2, 3]);
    let (trotter, trotter_time) = run_tables(&[4, 5, 6]);
    criterion_1_2(&mut r, &qb, qb_time);
    criterion_3(&mut r, &trotter);
    criterion_4(&mut r, &trotter, trotter_time);
    criterion_5(&mut r, &trotter);
    let suite = criterion_6(&mut r);
    criterion_7(&mut r, &suite);
    let first = csv(&[qb.clone(), trotter.clone()].concat());
    let (again, _) = run_tables(&[1, 2, 3, 4, 5, 6]);
    let second = csv(&again);
    r.add("8 determinism", first == second, format!("{} bytes, identical: {}", first.len(), first == second));
    crossover(&mut r, &qb, &trotter);

    let failed: Vec<&str> = r.lines.iter().filter(|l| !l.1).map(|l| l.0.as_str()).collect();
    println!("{}/{} criteria pass", r.lines.len() - failed.len(), r.lines.len());
    assert!(failed.is_empty(), "failing criteria: {}", failed.join("; "));
}
