//! Real-coded genetic algorithm: tournament selection, blend crossover,
//! Gaussian mutation scaled to the population spread, one elite.

use rand::RngExt;
use rand_distr::{Distribution, Normal};

use super::{draw_in_bounds, rng_for, uniform_point};
use crate::error::Result;
use crate::objective::{Evaluator, Objective, OptResult};

#[derive(Debug, Clone)]
pub struct GaConfig {
    pub population: usize,
    pub tournament: usize,
    /// Blend crossover expansion factor (BLX-alpha).
    pub blend_alpha: f64,
    /// Per-gene mutation probability is `1/dim`; the mutation sigma is this
    /// fraction of the current population spread per dimension.
    pub mutation_sigma_frac: f64,
    pub elitism: usize,
    pub resample_tries: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 50,
            tournament: 3,
            blend_alpha: 0.5,
            mutation_sigma_frac: 0.1,
            elitism: 1,
            resample_tries: 100,
        }
    }
}

pub(crate) fn run(
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &GaConfig,
) -> Result<OptResult> {
    let bounds = obj.bounds();
    let dim = obj.dim();
    let mut rng = rng_for(seed);
    let mut ev = Evaluator::new(obj);
    let mut history = Vec::new();
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let mutation_prob = 1.0 / dim as f64;

    let mut pop: Vec<Vec<f64>> = (0..cfg.population)
        .map(|_| uniform_point(&mut rng, bounds))
        .collect();
    let mut costs = Vec::with_capacity(cfg.population);
    for ind in &pop {
        costs.push(ev.eval(ind)?);
    }
    history.push(ev.best_cost);

    let children_per_gen = cfg.population - cfg.elitism;
    while ev.evals + children_per_gen <= budget {
        // Spread per dimension steers the mutation scale as the population
        // converges.
        let spread: Vec<f64> = (0..dim)
            .map(|d| {
                let mean: f64 = pop.iter().map(|p| p[d]).sum::<f64>() / pop.len() as f64;
                let var: f64 =
                    pop.iter().map(|p| (p[d] - mean).powi(2)).sum::<f64>() / pop.len() as f64;
                var.sqrt().max(1e-12)
            })
            .collect();

        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|a, b| costs[*a].partial_cmp(&costs[*b]).expect("finite costs"));

        let mut next: Vec<Vec<f64>> = order
            .iter()
            .take(cfg.elitism)
            .map(|&i| pop[i].clone())
            .collect();
        let mut next_costs: Vec<f64> = order.iter().take(cfg.elitism).map(|&i| costs[i]).collect();

        let mut tournament = |rng: &mut rand_chacha::ChaCha12Rng| -> usize {
            let mut best = rng.random_range(0..pop.len());
            for _ in 1..cfg.tournament {
                let other = rng.random_range(0..pop.len());
                if costs[other] < costs[best] {
                    best = other;
                }
            }
            best
        };

        while next.len() < cfg.population {
            let a = tournament(&mut rng);
            let b = tournament(&mut rng);
            let (pa, pb) = (&pop[a], &pop[b]);
            let child = draw_in_bounds(&mut rng, bounds, cfg.resample_tries, |rng| {
                (0..dim)
                    .map(|d| {
                        let (lo, hi) = (pa[d].min(pb[d]), pa[d].max(pb[d]));
                        let spread_d = hi - lo;
                        let blend_lo = lo - cfg.blend_alpha * spread_d;
                        let blend_hi = hi + cfg.blend_alpha * spread_d;
                        let mut gene = if blend_hi > blend_lo {
                            rng.random_range(blend_lo..blend_hi)
                        } else {
                            blend_lo
                        };
                        if rng.random_range(0.0..1.0) < mutation_prob {
                            gene += cfg.mutation_sigma_frac * spread[d] * unit.sample(rng);
                        }
                        gene
                    })
                    .collect()
            });
            next_costs.push(ev.eval(&child)?);
            next.push(child);
        }

        pop = next;
        costs = next_costs;
        history.push(ev.best_cost);
    }

    Ok(ev.finish(history, seed))
}
