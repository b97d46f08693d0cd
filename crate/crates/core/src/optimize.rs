//! Deterministic bounded derivative-free minimization: a coarse grid
//! followed by Nelder–Mead from the best grid cells.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dim {
    pub lo: f64,
    pub hi: f64,
    pub scale: Scale,
}

impl Dim {
    pub fn linear(lo: f64, hi: f64) -> Self {
        Dim { lo, hi, scale: Scale::Linear }
    }

    pub fn log(lo: f64, hi: f64) -> Self {
        Dim { lo, hi, scale: Scale::Log }
    }

    fn from_unit(&self, u: f64) -> f64 {
        match self.scale {
            Scale::Linear => self.lo + u * (self.hi - self.lo),
            Scale::Log => (self.lo.ln() + u * (self.hi.ln() - self.lo.ln())).exp(),
        }
    }
}

type Constraint<'a> = Box<dyn Fn(&[f64]) -> bool + Send + Sync + 'a>;

pub struct SearchSpace<'a> {
    pub dims: Vec<Dim>,
    constraint: Option<Constraint<'a>>,
}

impl<'a> SearchSpace<'a> {
    pub fn new(dims: Vec<Dim>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Domain("search space needs at least one dimension".into()));
        }
        for d in &dims {
            if !(d.lo < d.hi) || (d.scale == Scale::Log && d.lo <= 0.0) {
                return Err(Error::Domain(format!("bad bounds [{}, {}]", d.lo, d.hi)));
            }
        }
        Ok(SearchSpace { dims, constraint: None })
    }

    pub fn with_constraint(mut self, c: impl Fn(&[f64]) -> bool + Send + Sync + 'a) -> Self {
        self.constraint = Some(Box::new(c));
        self
    }

    fn point(&self, u: &[f64]) -> Vec<f64> {
        self.dims.iter().zip(u).map(|(d, &ui)| d.from_unit(ui)).collect()
    }

    fn feasible(&self, p: &[f64]) -> bool {
        self.constraint.as_ref().map_or(true, |c| c(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    /// Grid points per dimension.
    pub grid: usize,
    /// Number of best grid cells refined by Nelder–Mead.
    pub starts: usize,
    pub max_evals: usize,
    pub xtol: f64,
    pub ftol: f64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { grid: 8, starts: 3, max_evals: 2000, xtol: 1e-9, ftol: 1e-12, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

struct Counted<'f, F> {
    f: &'f mut F,
    evals: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<'_, F> {
    fn eval(&mut self, space: &SearchSpace, u: &[f64]) -> f64 {
        if u.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return f64::INFINITY;
        }
        let p = space.point(u);
        if !space.feasible(&p) {
            return f64::INFINITY;
        }
        self.evals += 1;
        let v = (self.f)(&p);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, space: &SearchSpace, config: &Config) -> Result<Minimum> {
    let n = space.dims.len();
    let g = config.grid.max(1);
    let mut f = Counted { f: &mut f, evals: 0 };

    let total = g.checked_pow(n as u32).ok_or_else(|| Error::Domain("grid too large".into()))?;
    let mut cells: Vec<(f64, Vec<f64>)> = Vec::new();
    for idx in 0..total {
        let mut k = idx;
        let u: Vec<f64> = (0..n)
            .map(|_| {
                let i = k % g;
                k /= g;
                (i as f64 + 0.5) / g as f64
            })
            .collect();
        let v = f.eval(space, &u);
        if v.is_finite() {
            cells.push((v, u));
        }
    }
    if cells.is_empty() {
        return Err(Error::Infeasible("no feasible grid point".into()));
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let step = 0.5 / g as f64;
    let mut best = cells[0].clone();
    for (v0, u0) in cells.iter().take(config.starts.max(1)) {
        let steps: Vec<f64> = (0..n)
            .map(|_| if config.seed == 0 { step } else { step * rng.gen_range(0.8..1.2) })
            .collect();
        let (v, u) = nelder_mead(&mut f, space, u0, *v0, &steps, config);
        if v < best.0 {
            best = (v, u);
        }
    }
    Ok(Minimum { point: space.point(&best.1), value: best.0, evaluations: f.evals })
}

fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    f: &mut Counted<'_, F>,
    space: &SearchSpace,
    start: &[f64],
    f_start: f64,
    steps: &[f64],
    config: &Config,
) -> (f64, Vec<f64>) {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;
    let n = start.len();
    let budget = f.evals + config.max_evals;

    let mut simplex: Vec<(f64, Vec<f64>)> = vec![(f_start, start.to_vec())];
    for i in 0..n {
        let mut u = start.to_vec();
        // step inward when the start sits near the upper edge
        u[i] = if u[i] + steps[i] <= 1.0 { u[i] + steps[i] } else { u[i] - steps[i] };
        simplex.push((f.eval(space, &u), u));
    }

    while f.evals < budget {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        let f_best = simplex[0].0;
        let f_worst = simplex[n].0;
        let size = simplex[1..]
            .iter()
            .flat_map(|(_, u)| u.iter().zip(&simplex[0].1).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_worst.is_finite() && (f_worst - f_best).abs() <= config.ftol * f_best.abs().max(1e-300) && size <= config.xtol
        {
            break;
        }
        if size <= config.xtol * 1e-3 {
            break;
        }

        let centroid: Vec<f64> =
            (0..n).map(|j| simplex[..n].iter().map(|(_, u)| u[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n].1).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(ALPHA);
        let fr = f.eval(space, &xr);
        if fr < simplex[0].0 {
            let xe = along(GAMMA);
            let fe = f.eval(space, &xe);
            simplex[n] = if fe < fr { (fe, xe) } else { (fr, xr) };
            continue;
        }
        if fr < simplex[n - 1].0 {
            simplex[n] = (fr, xr);
            continue;
        }
        let (xc, fc) = if fr < simplex[n].0 {
            let xc = along(RHO);
            let fc = f.eval(space, &xc);
            (xc, fc)
        } else {
            let xc = along(-RHO);
            let fc = f.eval(space, &xc);
            (xc, fc)
        };
        if fc < simplex[n].0.min(fr) {
            simplex[n] = (fc, xc);
            continue;
        }
        let best = simplex[0].1.clone();
        for (v, u) in simplex.iter_mut().skip(1) {
            for (uj, bj) in u.iter_mut().zip(&best) {
                *uj = bj + SIGMA * (*uj - bj);
            }
            *v = f.eval(space, u);
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (v, u) = simplex.swap_remove(0);
    (v, u)
}

/// Golden-section search on [lo, hi] for a unimodal `f`.
pub fn golden_section(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Coarse grid on [lo, hi] then golden-section refinement around the best cell.
pub fn minimize_scalar(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, grid: usize, tol: f64) -> Result<(f64, f64)> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("bad interval [{lo}, {hi}]")));
    }
    let g = grid.max(3);
    let h = (hi - lo) / g as f64;
    let mut best: Option<(usize, f64)> = None;
    for i in 0..=g {
        let x = (lo + i as f64 * h).clamp(lo, hi);
        let v = f(x);
        if v.is_finite() && best.map_or(true, |(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    let (i, v_grid) = best.ok_or_else(|| Error::Infeasible("objective not finite on grid".into()))?;
    let a = lo + (i.saturating_sub(1)) as f64 * h;
    let b = (lo + (i + 1) as f64 * h).min(hi);
    let (x, v) = golden_section(&mut f, a, b, tol);
    if v <= v_grid {
        Ok((x, v))
    } else {
        Ok((lo + i as f64 * h, v_grid))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_1d() {
        let space = SearchSpace::new(vec![Dim::linear(0.0, 1.0)]).unwrap();
        let m = minimize(|p| (p[0] - 0.3).powi(2), &space, &Config::default()).unwrap();
        assert!((m.point[0] - 0.3).abs() < 1e-6, "{:?}", m);
    }

    #[test]
    fn constrained_disk() {
        let space = SearchSpace::new(vec![Dim::linear(-1.0, 1.0), Dim::linear(-1.0, 1.0)])
            .unwrap()
            .with_constraint(|p| p[0] + p[1] > 1.0);
        let m = minimize(|p| p[0] * p[0] + p[1] * p[1], &space, &Config { grid: 12, ..Config::default() }).unwrap();
        assert!(m.value <= 0.5 + 1e-6, "{:?}", m);
        assert!(m.point[0] + m.point[1] > 1.0);
    }

    #[test]
    fn empty_feasible_set() {
        let space = SearchSpace::new(vec![Dim::linear(0.0, 1.0)]).unwrap().with_constraint(|_| false);
        assert!(matches!(minimize(|p| p[0], &space, &Config::default()), Err(Error::Infeasible(_))));
    }

    #[test]
    fn never_worse_than_grid_and_deterministic() {
        let f = |p: &[f64]| (p[0] - 0.01).powi(2) * 1e4 + (p[1].ln() + 3.0).abs();
        let space = SearchSpace::new(vec![Dim::linear(0.0, 1.0), Dim::log(1e-4, 1.0)]).unwrap();
        let cfg = Config { seed: 7, ..Config::default() };
        let a = minimize(f, &space, &cfg).unwrap();
        let b = minimize(f, &space, &cfg).unwrap();
        assert_eq!(a, b);
        let g = cfg.grid;
        let mut grid_best = f64::INFINITY;
        for i in 0..g {
            for j in 0..g {
                let u = [(i as f64 + 0.5) / g as f64, (j as f64 + 0.5) / g as f64];
                grid_best = grid_best.min(f(&space.point(&u)));
            }
        }
        assert!(a.value <= grid_best);
    }

    #[test]
    fn log_scale_bounds() {
        let space = SearchSpace::new(vec![Dim::log(1e-6, 1.0)]).unwrap();
        let m = minimize(|p| (p[0].log10() + 4.0).powi(2), &space, &Config::default()).unwrap();
        assert!((m.point[0] / 1e-4 - 1.0).abs() < 1e-4);
        assert!(SearchSpace::new(vec![Dim::log(0.0, 1.0)]).is_err());
        assert!(SearchSpace::new(vec![Dim::linear(1.0, 1.0)]).is_err());
    }

    #[test]
    fn scalar() {
        let (x, v) = minimize_scalar(|x| (x - 0.97).powi(2), 0.5, 0.9999, 50, 1e-10).unwrap();
        assert!((x - 0.97).abs() < 1e-6);
        assert!(v < 1e-10);
        let (x, _) = golden_section(|x| (x - 2.0).abs(), 0.0, 5.0, 1e-9);
        assert!((x - 2.0).abs() < 1e-8);
    }
}
