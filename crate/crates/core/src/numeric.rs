//! Numerical norm estimates: multistart projected coordinate ascent on the nonnegative
//! part of the `ℓ^p` unit sphere, and the `K_2` root.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{weak_quasinorm_raw, NormKind, NormResult, OperatorNorm, Witness};
use crate::function::{lp_norm, FloatFunction};
use crate::graph::Graph;
use crate::maximal::eval_into;
use crate::number::{Exponent, Number};

/// Settings for [`strong_norm_estimate`] and [`weak_norm_estimate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Random starting points, in addition to the structured starts.
    pub restarts: usize,
    /// Sweeps over all coordinates per start.
    pub max_iters: usize,
    pub initial_step: f64,
    pub step_decay: f64,
    /// A sweep gaining less than this shrinks the step; a start has converged once
    /// the step itself falls below it.
    pub tolerance: f64,
    pub seed: u64,
}

impl OptimizerConfig {
    pub fn for_size(n: usize) -> Self {
        OptimizerConfig { restarts: 16 + n, max_iters: 5000, initial_step: 0.25, step_decay: 0.25, tolerance: 1e-10, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Error::InvalidArgument(format!("optimizer config: {what}"));
        if self.restarts == 0 {
            return Err(bad("restarts must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(bad("tolerance must be positive"));
        }
        if !(self.initial_step > 0.0) || !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(bad("step schedule must start positive and decay by a factor in (0, 1)"));
        }
        Ok(())
    }
}

/// What the optimizer did, reported alongside an estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizerMeta {
    pub restarts: usize,
    pub starts: usize,
    pub iterations: usize,
    pub seed: u64,
    /// False if some start hit `max_iters` before its step fell below the tolerance.
    pub converged: bool,
}

#[derive(Clone, Copy)]
enum Objective {
    Strong,
    Weak,
}

struct Evaluator<'a> {
    g: &'a Graph,
    p: f64,
    objective: Objective,
    buf: Vec<f64>,
}

impl Evaluator<'_> {
    /// Ratio `‖M_G f‖ / ‖f‖_p`; `f` need not be normalized.
    fn ratio(&mut self, f: &[f64]) -> f64 {
        let norm = lp_norm(f, self.p);
        if norm == 0.0 {
            return 0.0;
        }
        eval_into(self.g, f, &mut self.buf);
        let top = match self.objective {
            Objective::Strong => lp_norm(&self.buf, self.p),
            Objective::Weak => weak_quasinorm_raw(&self.buf, self.p),
        };
        top / norm
    }
}

struct Run {
    value: f64,
    witness: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn normalize(f: &mut [f64], p: f64) {
    let norm = lp_norm(f, p);
    if norm > 0.0 {
        f.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Moves tried each sweep: one coordinate up or down, then mass moved from one
/// coordinate to another. The transfers follow ridges where two averages tie.
fn moves(n: usize) -> Vec<(usize, Option<usize>, f64)> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push((i, None, 1.0));
        out.push((i, None, -1.0));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push((i, Some(j), 1.0));
            }
        }
    }
    out
}

fn ascend(ev: &mut Evaluator<'_>, start: Vec<f64>, cfg: &OptimizerConfig) -> Run {
    let mut f = start;
    normalize(&mut f, ev.p);
    let mut value = ev.ratio(&f);
    let mut step = cfg.initial_step;
    let mut iterations = 0;
    let mut trial = f.clone();
    let mut base = f.clone();
    let moves = moves(f.len());
    while step >= cfg.tolerance && iterations < cfg.max_iters {
        iterations += 1;
        let before = value;
        base.copy_from_slice(&f);
        for &(i, j, sign) in &moves {
            trial.copy_from_slice(&f);
            trial[i] = (trial[i] + sign * step).max(0.0);
            if let Some(j) = j {
                trial[j] = (trial[j] - step).max(0.0);
            }
            if trial == f {
                continue;
            }
            // the ratio is scale invariant, so only accepted points are renormalized
            if ev.ratio(&trial) > value {
                f.copy_from_slice(&trial);
                normalize(&mut f, ev.p);
                value = ev.ratio(&f);
            }
        }
        if value > before {
            // pattern move along the sweep's displacement, doubling while it pays
            let mut scale = 1.0;
            loop {
                for ((t, &x), &b) in trial.iter_mut().zip(&f).zip(&base) {
                    *t = (x + scale * (x - b)).max(0.0);
                }
                if ev.ratio(&trial) <= value {
                    break;
                }
                f.copy_from_slice(&trial);
                normalize(&mut f, ev.p);
                value = ev.ratio(&f);
                scale *= 2.0;
            }
        }
        if value - before < cfg.tolerance {
            step *= cfg.step_decay;
        } else {
            step = (step / cfg.step_decay).min(cfg.initial_step);
        }
    }
    let converged = step < cfg.tolerance;
    Run { value: ev.ratio(&f), witness: f, iterations, converged }
}

/// Every `δ_k`, every `χ_A` with `|A| = 2`, the constant function, then `restarts`
/// random points. Random start `i` depends only on `(seed, i)`.
fn starts(n: usize, cfg: &OptimizerConfig) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for k in 0..n {
        out.push(FloatFunction::delta(n, k).into_values());
    }
    for a in 0..n {
        for b in a + 1..n {
            out.push(FloatFunction::indicator(n, [a, b]).into_values());
        }
    }
    out.push(vec![1.0; n]);
    for i in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        out.push((0..n).map(|_| rng.gen::<f64>()).collect());
    }
    out
}

fn estimate(g: &Graph, p: &Exponent, cfg: &OptimizerConfig, objective: Objective, norm: OperatorNorm) -> Result<NormResult> {
    cfg.validate()?;
    let n = g.n();
    let pv = p.value();
    let runs: Vec<Run> = starts(n, cfg)
        .into_par_iter()
        .map(|start| {
            let mut ev = Evaluator { g, p: pv, objective, buf: vec![0.0; n] };
            ascend(&mut ev, start, cfg)
        })
        .collect();
    let iterations = runs.iter().map(|r| r.iterations).sum();
    let converged = runs.iter().all(|r| r.converged);
    let starts = runs.len();
    let best = runs
        .into_iter()
        .reduce(|best, cur| if cur.value > best.value { cur } else { best })
        .expect("at least one start");
    let mut result = NormResult::new(Number::Float(best.value), NormKind::Estimate, norm, p);
    result.witness = Some(Witness::Float(FloatFunction::new(best.witness)));
    result.optimizer = Some(OptimizerMeta { restarts: cfg.restarts, starts, iterations, seed: cfg.seed, converged });
    if !converged {
        result.notes.push("some starts stopped at max_iters; value is the best found".to_string());
    }
    Ok(result)
}

/// Lower estimate of `‖M_G‖_p` for `p > 1`, attained by the returned witness.
pub fn strong_norm_estimate(g: &Graph, p: &Exponent, cfg: &OptimizerConfig) -> Result<NormResult> {
    p.require_above_one()?;
    estimate(g, p, cfg, Objective::Strong, OperatorNorm::Strong)
}

/// Lower estimate of `‖M_G‖_{ℓ^p → ℓ^{p,∞}}`, attained by the returned witness.
pub fn weak_norm_estimate(g: &Graph, p: &Exponent, cfg: &OptimizerConfig) -> Result<NormResult> {
    p.require_finite()?;
    estimate(g, p, cfg, Objective::Weak, OperatorNorm::Weak)
}

/// Recomputes the ratio a witness attains, without trusting the optimizer.
pub fn objective(g: &Graph, f: &FloatFunction, p: &Exponent, norm: OperatorNorm) -> Result<f64> {
    p.require_finite()?;
    let objective = match norm {
        OperatorNorm::Strong => Objective::Strong,
        OperatorNorm::Weak => Objective::Weak,
        _ => return Err(Error::UnsupportedCombination(format!("objective for the {norm} norm"))),
    };
    if f.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: f.len() });
    }
    let mut ev = Evaluator { g, p: p.value(), objective, buf: vec![0.0; g.n()] };
    Ok(ev.ratio(f.values()))
}

/// The root `α ∈ (0, 1)` of `(1+α)^{p-1} = 2^p α^{p-1} / (1 - α^{p-1})`.
///
/// Bisects in `t = α^{p-1}` so the search stays well conditioned as `p → 1`; there `α`
/// underflows to 0, which is harmless for [`k2_norm`].
pub fn k2_alpha_root(p: &Exponent) -> Result<f64> {
    p.require_above_one()?;
    let pv = p.value();
    let e = pv - 1.0;
    let two_p = 2f64.powf(pv);
    // decreasing in t: positive near 0, negative at 1
    let h = |t: f64| (1.0 + t.powf(1.0 / e)).powf(e) * (1.0 - t) - two_p * t;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).powf(1.0 / e))
}

/// `‖M_{K_2}‖_p = ½ (((1+α)^p + 2^p) / (1+α^p))^{1/p}` for `p > 1`.
pub fn k2_norm(p: &Exponent) -> Result<f64> {
    let a = k2_alpha_root(p)?;
    let pv = p.value();
    Ok(0.5 * (((1.0 + a).powf(pv) + 2f64.powf(pv)) / (1.0 + a.powf(pv))).powf(1.0 / pv))
}
