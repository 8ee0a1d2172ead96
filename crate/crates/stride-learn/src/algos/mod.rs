//! The optimizer suite: hill climbing, tabu search, a real-coded GA,
//! particle swarm, and CMA-ES behind one entry point. Every algorithm is a
//! pure function of (objective, budget, seed): reruns are bit-identical.

mod cmaes;
mod ga;
mod hc;
mod pso;
mod tabu;

pub use cmaes::{CmaesConfig, CmaesRun};
pub use ga::GaConfig;
pub use hc::HcConfig;
pub use pso::PsoConfig;
pub use tabu::TabuConfig;

use rand::RngExt;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::objective::{check_bounds, Objective, OptResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Algorithm {
    HillClimbing,
    TabuSearch,
    Genetic,
    ParticleSwarm,
    CmaEs,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hc" | "hill-climbing" => Ok(Algorithm::HillClimbing),
            "ts" | "tabu" | "tabu-search" => Ok(Algorithm::TabuSearch),
            "ga" | "genetic" => Ok(Algorithm::Genetic),
            "pso" | "particle-swarm" => Ok(Algorithm::ParticleSwarm),
            "cmaes" | "cma-es" => Ok(Algorithm::CmaEs),
            other => Err(Error::Parse {
                message: format!("unknown algorithm `{other}` (expected hc|ts|ga|pso|cmaes)"),
            }),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Algorithm::HillClimbing => "hc",
            Algorithm::TabuSearch => "ts",
            Algorithm::Genetic => "ga",
            Algorithm::ParticleSwarm => "pso",
            Algorithm::CmaEs => "cmaes",
        };
        write!(f, "{name}")
    }
}

/// Per-algorithm hyperparameters; the defaults are the suite's contract and
/// every field can be overridden.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub hc: HcConfig,
    pub tabu: TabuConfig,
    pub ga: GaConfig,
    pub pso: PsoConfig,
    pub cmaes: CmaesConfig,
}

/// Smallest budget the algorithm can do anything with (its population).
pub fn min_budget(algo: Algorithm, dim: usize, cfg: &SuiteConfig) -> usize {
    match algo {
        Algorithm::HillClimbing => 1,
        Algorithm::TabuSearch => 1 + cfg.tabu.candidates,
        Algorithm::Genetic => cfg.ga.population,
        Algorithm::ParticleSwarm => cfg.pso.swarm,
        Algorithm::CmaEs => cfg.cmaes.lambda(dim),
    }
}

/// Minimize `obj` with the chosen algorithm under an evaluation budget.
pub fn optimize(
    algo: Algorithm,
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
) -> Result<OptResult> {
    optimize_with(algo, obj, budget, seed, &SuiteConfig::default())
}

pub fn optimize_with(
    algo: Algorithm,
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &SuiteConfig,
) -> Result<OptResult> {
    check_bounds(obj)?;
    let required = min_budget(algo, obj.dim(), cfg);
    if budget < required {
        return Err(Error::BudgetTooSmall { budget, required });
    }
    match algo {
        Algorithm::HillClimbing => hc::run(obj, budget, seed, &cfg.hc),
        Algorithm::TabuSearch => tabu::run(obj, budget, seed, &cfg.tabu),
        Algorithm::Genetic => ga::run(obj, budget, seed, &cfg.ga),
        Algorithm::ParticleSwarm => pso::run(obj, budget, seed, &cfg.pso),
        Algorithm::CmaEs => cmaes::run(obj, budget, seed, &cfg.cmaes).map(|r| r.result),
    }
}

/// CMA-ES with per-generation covariance diagnostics exposed.
pub fn cmaes_optimize_diagnostic(
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &CmaesConfig,
) -> Result<CmaesRun> {
    check_bounds(obj)?;
    let required = cfg.lambda(obj.dim());
    if budget < required {
        return Err(Error::BudgetTooSmall { budget, required });
    }
    cmaes::run(obj, budget, seed, cfg)
}

pub(crate) fn rng_for(seed: u64) -> ChaCha12Rng {
    use rand::SeedableRng;
    ChaCha12Rng::seed_from_u64(seed)
}

pub(crate) fn ranges(bounds: &[(f64, f64)]) -> Vec<f64> {
    bounds.iter().map(|(lo, hi)| hi - lo).collect()
}

pub(crate) fn uniform_point(rng: &mut ChaCha12Rng, bounds: &[(f64, f64)]) -> Vec<f64> {
    bounds
        .iter()
        .map(|&(lo, hi)| rng.random_range(lo..hi))
        .collect()
}

pub(crate) fn in_bounds(theta: &[f64], bounds: &[(f64, f64)]) -> bool {
    theta
        .iter()
        .zip(bounds.iter())
        .all(|(x, (lo, hi))| *x >= *lo && *x <= *hi)
}

pub(crate) fn project(theta: &mut [f64], bounds: &[(f64, f64)]) {
    for (x, (lo, hi)) in theta.iter_mut().zip(bounds.iter()) {
        *x = x.clamp(*lo, *hi);
    }
}

/// Resample up to `tries` times, then project: the uniform box-constraint
/// policy of the suite.
pub(crate) fn draw_in_bounds(
    rng: &mut ChaCha12Rng,
    bounds: &[(f64, f64)],
    tries: usize,
    mut sampler: impl FnMut(&mut ChaCha12Rng) -> Vec<f64>,
) -> Vec<f64> {
    let mut last = sampler(rng);
    if in_bounds(&last, bounds) {
        return last;
    }
    for _ in 1..tries {
        last = sampler(rng);
        if in_bounds(&last, bounds) {
            return last;
        }
    }
    project(&mut last, bounds);
    last
}
