//! Global-best particle swarm with the constriction-style coefficients and a
//! per-dimension velocity clamp.

use rand::RngExt;

use super::{ranges, rng_for, uniform_point};
use crate::error::Result;
use crate::objective::{Evaluator, Objective, OptResult};

#[derive(Debug, Clone)]
pub struct PsoConfig {
    pub swarm: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity clamp as a fraction of each dimension's range.
    pub velocity_clamp_frac: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm: 40,
            inertia: 0.72,
            cognitive: 1.49,
            social: 1.49,
            velocity_clamp_frac: 0.5,
        }
    }
}

pub(crate) fn run(
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &PsoConfig,
) -> Result<OptResult> {
    let bounds = obj.bounds();
    let dim = obj.dim();
    let range = ranges(bounds);
    let vmax: Vec<f64> = range.iter().map(|r| cfg.velocity_clamp_frac * r).collect();
    let mut rng = rng_for(seed);
    let mut ev = Evaluator::new(obj);
    let mut history = Vec::new();

    let mut pos: Vec<Vec<f64>> = (0..cfg.swarm)
        .map(|_| uniform_point(&mut rng, bounds))
        .collect();
    let mut vel: Vec<Vec<f64>> = vec![vec![0.0; dim]; cfg.swarm];
    let mut pbest = pos.clone();
    let mut pbest_cost = Vec::with_capacity(cfg.swarm);
    for p in &pos {
        pbest_cost.push(ev.eval(p)?);
    }
    let mut gbest_idx = (0..cfg.swarm)
        .min_by(|a, b| pbest_cost[*a].partial_cmp(&pbest_cost[*b]).expect("finite"))
        .expect("non-empty swarm");
    let mut gbest = pbest[gbest_idx].clone();
    let mut gbest_cost = pbest_cost[gbest_idx];
    history.push(ev.best_cost);

    while ev.evals + cfg.swarm <= budget {
        for i in 0..cfg.swarm {
            for d in 0..dim {
                let r1: f64 = rng.random_range(0.0..1.0);
                let r2: f64 = rng.random_range(0.0..1.0);
                let v = cfg.inertia * vel[i][d]
                    + cfg.cognitive * r1 * (pbest[i][d] - pos[i][d])
                    + cfg.social * r2 * (gbest[d] - pos[i][d]);
                vel[i][d] = v.clamp(-vmax[d], vmax[d]);
                pos[i][d] = (pos[i][d] + vel[i][d]).clamp(bounds[d].0, bounds[d].1);
            }
            let cost = ev.eval(&pos[i])?;
            if cost < pbest_cost[i] {
                pbest_cost[i] = cost;
                pbest[i] = pos[i].clone();
                if cost < gbest_cost {
                    gbest_cost = cost;
                    gbest_idx = i;
                    gbest = pos[i].clone();
                }
            }
        }
        let _ = gbest_idx;
        history.push(ev.best_cost);
    }

    Ok(ev.finish(history, seed))
}
