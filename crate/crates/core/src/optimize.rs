//! Deterministic maximization of spectral objectives over parameter boxes.
//!
//! The search is a dense coarse grid (evaluated in parallel, reduced with an
//! order-independent tie-break) followed by Nelder-Mead refinement of the
//! best seeds. Phase parameters spanning a full turn are treated as
//! periodic; everything else is clamped to its box. Results are bitwise
//! reproducible for a fixed spec regardless of thread count.

use crate::config::{PhenomConfig, PI};
use crate::error::{CoreError, Result};
use crate::rates::phenom_to_rateset;
use crate::scattering::{amplitudes, AmplitudeSet, Direction, Regime};

/// What to maximize, always for lower-channel incidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Forward conversion probability Tc.
    ConversionProbability,
    /// Signed directional conversion contrast I2 = Tc - Tc~.
    SignedContrast,
    /// |I2|; use when either sign of extreme contrast is acceptable.
    ContrastMagnitude,
}

impl Objective {
    pub fn value(&self, forward: &AmplitudeSet, backward: &AmplitudeSet) -> f64 {
        let i2 = forward.conversion() - backward.conversion();
        match self {
            Objective::ConversionProbability => forward.conversion(),
            Objective::SignedContrast => i2,
            Objective::ContrastMagnitude => i2.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamName {
    PhiPlus,
    PhiMinus,
    PhiJ,
    Theta,
    TauGamma,
    Delta,
}

impl ParamName {
    fn angle(self) -> bool {
        matches!(self, ParamName::PhiPlus | ParamName::PhiMinus | ParamName::PhiJ)
    }
}

/// One free search dimension.
#[derive(Debug, Clone, Copy)]
pub struct Dim {
    pub param: ParamName,
    pub lo: f64,
    pub hi: f64,
}

impl Dim {
    /// Full-turn phase boxes wrap; everything else clamps.
    fn periodic(&self) -> bool {
        self.param.angle() && self.hi - self.lo >= 2.0 * PI - 1e-9
    }
    fn constrain(&self, x: f64) -> f64 {
        if self.periodic() {
            self.lo + (x - self.lo).rem_euclid(2.0 * PI)
        } else {
            x.clamp(self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeSpec {
    /// Values for every parameter not listed in `dims`.
    pub base: PhenomConfig,
    pub regime: Regime,
    pub objective: Objective,
    pub dims: Vec<Dim>,
    /// Detuning used when `Delta` is not a free dimension.
    pub fixed_delta: f64,
    /// Coarse-grid resolution per dimension.
    pub grid_per_dim: usize,
    /// How many grid seeds get Nelder-Mead refinement.
    pub refine_seeds: usize,
}

impl OptimizeSpec {
    pub fn new(base: PhenomConfig, regime: Regime, objective: Objective, dims: Vec<Dim>) -> Self {
        OptimizeSpec {
            base,
            regime,
            objective,
            dims,
            fixed_delta: 0.0,
            grid_per_dim: 64,
            refine_seeds: 16,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Optimum {
    /// Resolved parameter set at the maximum.
    pub config: PhenomConfig,
    pub delta: f64,
    pub value: f64,
    /// Objective evaluations spent (grid + refinement).
    pub evaluations: usize,
    /// Full width of the objective's detuning profile at half its maximum,
    /// when the detuning was free and both flanks lie within reach.
    pub bandwidth: Option<f64>,
    /// Constrained coordinates of the maximum, one per free dimension.
    pub coords: Vec<f64>,
}

fn resolve(spec: &OptimizeSpec, x: &[f64]) -> (PhenomConfig, f64) {
    let mut cfg = spec.base.clone();
    let mut delta = spec.fixed_delta;
    for (dim, &raw) in spec.dims.iter().zip(x) {
        let v = dim.constrain(raw);
        match dim.param {
            ParamName::PhiPlus => cfg.phi_plus = v,
            ParamName::PhiMinus => cfg.phi_minus = v,
            ParamName::PhiJ => cfg.phi_j = v,
            ParamName::Theta => cfg.theta = v,
            ParamName::TauGamma => cfg.tau_gamma = v,
            ParamName::Delta => delta = v,
        }
    }
    (cfg, delta)
}

fn evaluate(spec: &OptimizeSpec, x: &[f64]) -> f64 {
    let (cfg, delta) = resolve(spec, x);
    let (frame, rps) = phenom_to_rateset(&cfg);
    let f = amplitudes(&rps, &frame, spec.regime, Direction::Forward, delta);
    let b = amplitudes(&rps, &frame, spec.regime, Direction::Backward, delta);
    spec.objective.value(&f, &b)
}

struct Candidate {
    value: f64,
    coords: Vec<f64>,
    abs_delta: f64,
    phi_plus: f64,
    evaluations: usize,
}

/// Prefer larger values; within `tie_tol`, prefer the smallest |Delta|,
/// then the smallest upper-channel phase, then lexicographic coordinates.
fn better(a: &Candidate, b: &Candidate, tie_tol: f64) -> bool {
    if (a.value - b.value).abs() > tie_tol {
        return a.value > b.value;
    }
    if (a.abs_delta - b.abs_delta).abs() > 1e-12 {
        return a.abs_delta < b.abs_delta;
    }
    if (a.phi_plus - b.phi_plus).abs() > 1e-12 {
        return a.phi_plus < b.phi_plus;
    }
    for (x, y) in a.coords.iter().zip(&b.coords) {
        if (x - y).abs() > 1e-12 {
            return x < y;
        }
    }
    false
}

fn nelder_mead(
    spec: &OptimizeSpec,
    seed: &[f64],
    steps: &[f64],
) -> (Vec<f64>, f64, usize) {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;
    let d = seed.len();
    let mut evals = 0usize;
    let eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        evaluate(spec, x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let f0 = eval(seed, &mut evals);
    simplex.push((seed.to_vec(), f0));
    for i in 0..d {
        let mut v = seed.to_vec();
        v[i] += steps[i];
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    for _ in 0..400 * d.max(1) {
        // best first (maximization)
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(v, _)| {
                v.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < 1e-10 {
            break;
        }

        let worst = simplex.len() - 1;
        let centroid: Vec<f64> = (0..d)
            .map(|i| simplex[..worst].iter().map(|(v, _)| v[i]).sum::<f64>() / worst as f64)
            .collect();
        let shifted = |coef: f64| -> Vec<f64> {
            (0..d)
                .map(|i| centroid[i] + coef * (centroid[i] - simplex[worst].0[i]))
                .collect()
        };

        let xr = shifted(ALPHA);
        let fr = eval(&xr, &mut evals);
        if fr > simplex[0].1 {
            let xe = shifted(GAMMA);
            let fe = eval(&xe, &mut evals);
            simplex[worst] = if fe > fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr > simplex[worst - 1].1 {
            simplex[worst] = (xr, fr);
            continue;
        }
        let xc = if fr > simplex[worst].1 { shifted(RHO) } else { shifted(-RHO) };
        let fc = eval(&xc, &mut evals);
        if fc > simplex[worst].1.max(fr) {
            simplex[worst] = (xc, fc);
            continue;
        }
        for i in 1..simplex.len() {
            let v: Vec<f64> = simplex[i]
                .0
                .iter()
                .zip(&simplex[0].0)
                .map(|(x, b)| b + SIGMA * (x - b))
                .collect();
            let fv = eval(&v, &mut evals);
            simplex[i] = (v, fv);
        }
    }

    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (x, f) = simplex.swap_remove(0);
    (x, f, evals)
}

fn bandwidth(spec: &OptimizeSpec, optimum: &[f64], delta_dim: usize, peak: f64) -> Option<f64> {
    if peak <= 0.0 {
        return None;
    }
    let level = 0.5 * peak;
    let gamma = spec.base.gamma;
    let step = gamma / 200.0;
    let profile = |delta: f64| {
        let mut x = optimum.to_vec();
        x[delta_dim] = delta;
        evaluate(spec, &x)
    };
    let d0 = optimum[delta_dim];
    let flank = |sign: f64| -> Option<f64> {
        let mut prev = d0;
        let mut prev_v = peak;
        for i in 1..=4000 {
            let d = d0 + sign * step * i as f64;
            let v = profile(d);
            if v <= level {
                let f = (prev_v - level) / (prev_v - v);
                return Some(prev + f * (d - prev));
            }
            prev = d;
            prev_v = v;
        }
        None
    };
    match (flank(-1.0), flank(1.0)) {
        (Some(l), Some(r)) => Some(r - l),
        _ => None,
    }
}

/// Run the coarse-grid + Nelder-Mead search described in the module docs.
pub fn optimize(spec: &OptimizeSpec) -> Result<Optimum> {
    if spec.dims.is_empty() {
        return Err(CoreError::EmptyBox("no free dimensions to search".into()));
    }
    for dim in &spec.dims {
        if !(dim.lo.is_finite() && dim.hi.is_finite()) || dim.lo >= dim.hi {
            return Err(CoreError::EmptyBox(format!(
                "degenerate box [{}, {}] for {:?}",
                dim.lo, dim.hi, dim.param
            )));
        }
    }
    let d = spec.dims.len();
    // keep the coarse pass below ~2M evaluations regardless of dimension
    let budget_per_dim = (2_000_000f64).powf(1.0 / d as f64).floor() as usize;
    let g = spec.grid_per_dim.clamp(2, budget_per_dim.max(4));
    let total = g.pow(d as u32);

    let coord_of = |dim: &Dim, i: usize| -> f64 {
        if dim.periodic() {
            dim.lo + (i as f64 + 0.5) * (dim.hi - dim.lo) / g as f64
        } else {
            dim.lo + i as f64 * (dim.hi - dim.lo) / (g - 1) as f64
        }
    };
    let decode = |mut flat: usize| -> Vec<f64> {
        let mut x = vec![0.0; d];
        for (j, dim) in spec.dims.iter().enumerate() {
            x[j] = coord_of(dim, flat % g);
            flat /= g;
        }
        x
    };

    let seeds = crate::parallel::top_k_by_value(total, spec.refine_seeds.max(1), |flat| {
        evaluate(spec, &decode(flat))
    });

    let steps: Vec<f64> = spec.dims.iter().map(|dim| 0.5 * (dim.hi - dim.lo) / g as f64).collect();
    let refined = crate::parallel::map_collect(&seeds, |&(flat, grid_value)| {
        let seed = decode(flat);
        let (x, f, evals) = nelder_mead(spec, &seed, &steps);
        // refinement never loses the seed value
        let (x, f) = if f >= grid_value { (x, f) } else { (seed, grid_value) };
        let coords: Vec<f64> =
            spec.dims.iter().zip(&x).map(|(dim, &v)| dim.constrain(v)).collect();
        let (cfg, delta) = resolve(spec, &x);
        Candidate {
            value: f,
            coords,
            abs_delta: delta.abs(),
            phi_plus: cfg.phi_plus,
            evaluations: evals,
        }
    });

    let mut evaluations = total;
    let mut best: Option<Candidate> = None;
    for cand in refined {
        evaluations += cand.evaluations;
        best = match best {
            None => Some(cand),
            Some(cur) => {
                if better(&cand, &cur, 1e-9) {
                    Some(cand)
                } else {
                    Some(cur)
                }
            }
        };
    }
    let best = best.expect("at least one seed was refined");

    let (config, delta) = resolve(spec, &best.coords);
    let delta_dim = spec.dims.iter().position(|dim| dim.param == ParamName::Delta);
    let bw = delta_dim.and_then(|j| bandwidth(spec, &best.coords, j, best.value));
    Ok(Optimum {
        config,
        delta,
        value: best.value,
        evaluations,
        bandwidth: bw,
        coords: best.coords,
    })
}
