//! Gaussian-perturbation hill climbing with multiplicative step adaptation
//! and random restarts on stall.

use rand_distr::{Distribution, Normal};

use super::{draw_in_bounds, ranges, rng_for, uniform_point};
use crate::error::Result;
use crate::objective::{Evaluator, Objective, OptResult};

#[derive(Debug, Clone)]
pub struct HcConfig {
    /// Initial step as a fraction of each dimension's range.
    pub init_sigma_frac: f64,
    /// Step multiplier on improvement.
    pub grow: f64,
    /// Step multiplier on failure.
    pub shrink: f64,
    /// Random restart after this many consecutive non-improving evaluations.
    pub restart_after_stalls: usize,
    /// Step floor as a range fraction. The asymmetric grow/shrink multipliers
    /// drive sigma downward on any smooth objective, so this floor sets the
    /// resolution the climber keeps descending at.
    pub sigma_floor_frac: f64,
    /// Resample attempts before projecting onto the bounds.
    pub resample_tries: usize,
    /// Optional fixed start point (defaults to a seeded uniform draw).
    pub start: Option<Vec<f64>>,
}

impl Default for HcConfig {
    fn default() -> Self {
        Self {
            init_sigma_frac: 0.1,
            grow: 1.2,
            shrink: 0.5,
            restart_after_stalls: 200,
            sigma_floor_frac: 1e-3,
            resample_tries: 100,
            start: None,
        }
    }
}

pub(crate) fn run(
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &HcConfig,
) -> Result<OptResult> {
    let bounds = obj.bounds();
    let range = ranges(bounds);
    let mut rng = rng_for(seed);
    let mut ev = Evaluator::new(obj);
    let mut history = Vec::new();

    let mut current = match &cfg.start {
        Some(theta) => theta.clone(),
        None => uniform_point(&mut rng, bounds),
    };
    let mut current_cost = ev.eval(&current)?;
    history.push(ev.best_cost);

    let init_sigma: Vec<f64> = range.iter().map(|r| cfg.init_sigma_frac * r).collect();
    let mut sigma = init_sigma.clone();
    let mut stalls = 0usize;
    let unit = Normal::new(0.0, 1.0).expect("unit normal");

    while ev.evals < budget {
        let candidate = draw_in_bounds(&mut rng, bounds, cfg.resample_tries, |rng| {
            current
                .iter()
                .zip(sigma.iter())
                .map(|(x, s)| x + s * unit.sample(rng))
                .collect()
        });
        let cost = ev.eval(&candidate)?;
        if cost < current_cost {
            current = candidate;
            current_cost = cost;
            stalls = 0;
            for (s, r) in sigma.iter_mut().zip(range.iter()) {
                *s = (*s * cfg.grow).min(*r);
            }
        } else {
            stalls += 1;
            for (s, r) in sigma.iter_mut().zip(range.iter()) {
                *s = (*s * cfg.shrink).max(cfg.sigma_floor_frac * r);
            }
        }
        history.push(ev.best_cost);

        if stalls >= cfg.restart_after_stalls && ev.evals < budget {
            current = uniform_point(&mut rng, bounds);
            current_cost = ev.eval(&current)?;
            sigma = init_sigma.clone();
            stalls = 0;
            history.push(ev.best_cost);
        }
    }

    Ok(ev.finish(history, seed))
}
