//! Continuous tabu search: an archive of recently accepted points excludes
//! their neighborhoods; the best non-tabu neighbor is accepted even when it
//! is worse, which drives the search out of visited basins.

use std::collections::VecDeque;

use rand_distr::{Distribution, Normal};

use super::{draw_in_bounds, ranges, rng_for, uniform_point};
use crate::error::Result;
use crate::objective::{Evaluator, Objective, OptResult};

#[derive(Debug, Clone)]
pub struct TabuConfig {
    /// Accepted points remembered.
    pub archive_len: usize,
    /// Candidates sampled per iteration.
    pub candidates: usize,
    /// Exclusion radius as an RMS per-dimension fraction of the range.
    pub exclusion_radius_frac: f64,
    /// Neighborhood size anneals geometrically between these range fractions.
    pub sigma_start_frac: f64,
    pub sigma_end_frac: f64,
    pub resample_tries: usize,
}

impl Default for TabuConfig {
    fn default() -> Self {
        Self {
            archive_len: 50,
            candidates: 20,
            exclusion_radius_frac: 0.05,
            sigma_start_frac: 0.25,
            sigma_end_frac: 1e-5,
            resample_tries: 100,
        }
    }
}

fn normalized_distance(a: &[f64], b: &[f64], range: &[f64]) -> f64 {
    let sum: f64 = a
        .iter()
        .zip(b.iter())
        .zip(range.iter())
        .map(|((x, y), r)| ((x - y) / r).powi(2))
        .sum();
    (sum / a.len() as f64).sqrt()
}

pub(crate) fn run(
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &TabuConfig,
) -> Result<OptResult> {
    let bounds = obj.bounds();
    let range = ranges(bounds);
    let mut rng = rng_for(seed);
    let mut ev = Evaluator::new(obj);
    let mut history = Vec::new();
    let unit = Normal::new(0.0, 1.0).expect("unit normal");

    let mut current = uniform_point(&mut rng, bounds);
    ev.eval(&current)?;
    history.push(ev.best_cost);

    let mut archive: VecDeque<Vec<f64>> = VecDeque::with_capacity(cfg.archive_len);
    archive.push_back(current.clone());

    let iters = (budget - 1) / cfg.candidates;
    for it in 0..iters {
        let frac = if iters > 1 {
            it as f64 / (iters - 1) as f64
        } else {
            0.0
        };
        let sigma_frac =
            cfg.sigma_start_frac * (cfg.sigma_end_frac / cfg.sigma_start_frac).powf(frac);

        let mut best_any: Option<(usize, f64)> = None;
        let mut best_non_tabu: Option<(usize, f64)> = None;
        let mut pool = Vec::with_capacity(cfg.candidates);
        for c in 0..cfg.candidates {
            let cand = draw_in_bounds(&mut rng, bounds, cfg.resample_tries, |rng| {
                current
                    .iter()
                    .zip(range.iter())
                    .map(|(x, r)| x + sigma_frac * r * unit.sample(rng))
                    .collect()
            });
            let cost = ev.eval(&cand)?;
            let tabu = archive
                .iter()
                .any(|a| normalized_distance(&cand, a, &range) < cfg.exclusion_radius_frac);
            // Aspiration: a new global best is never tabu.
            let effective_tabu = tabu && cost > ev.best_cost;
            if best_any.map_or(true, |(_, bc)| cost < bc) {
                best_any = Some((c, cost));
            }
            if !effective_tabu && best_non_tabu.map_or(true, |(_, bc)| cost < bc) {
                best_non_tabu = Some((c, cost));
            }
            pool.push(cand);
        }

        // Move to the best admissible neighbor even if worse; when the whole
        // neighborhood is tabu fall back to the best candidate outright.
        let (idx, _) = best_non_tabu.or(best_any).expect("candidates > 0");
        current = pool.swap_remove(idx);
        if archive.len() == cfg.archive_len {
            archive.pop_front();
        }
        archive.push_back(current.clone());
        history.push(ev.best_cost);
    }

    Ok(ev.finish(history, seed))
}
