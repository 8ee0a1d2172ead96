//! The objective interface every optimizer speaks, plus benchmark functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box-bounded minimization problem. `evaluate` must be deterministic for
/// a given `theta` (tasks with internal noise own their seed) and finite for
/// every in-bounds point.
pub trait Objective: Sync {
    fn dim(&self) -> usize;
    fn bounds(&self) -> &[(f64, f64)];
    fn evaluate(&self, theta: &[f64]) -> f64;
}

/// An objective from a closure.
pub struct FnObjective<F> {
    bounds: Vec<(f64, f64)>,
    f: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> FnObjective<F> {
    pub fn new(bounds: Vec<(f64, f64)>, f: F) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidBounds {
                message: "empty bounds".into(),
            });
        }
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidBounds {
                    message: format!("dimension {i}: [{lo}, {hi}]"),
                });
            }
        }
        Ok(Self { bounds, f })
    }

    pub fn uniform(dim: usize, lo: f64, hi: f64, f: F) -> Result<Self> {
        Self::new(vec![(lo, hi); dim], f)
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> Objective for FnObjective<F> {
    fn dim(&self) -> usize {
        self.bounds.len()
    }
    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }
    fn evaluate(&self, theta: &[f64]) -> f64 {
        (self.f)(theta)
    }
}

/// `f = sum theta_i^2` on `[-5, 5]^dim`; optimum 0 at the origin.
pub fn sphere(dim: usize) -> FnObjective<impl Fn(&[f64]) -> f64 + Sync> {
    FnObjective::uniform(dim, -5.0, 5.0, |theta: &[f64]| {
        theta.iter().map(|x| x * x).sum()
    })
    .expect("static bounds")
}

/// Rosenbrock on `[-5, 10]^dim`; optimum 0 at (1, .., 1).
pub fn rosenbrock(dim: usize) -> FnObjective<impl Fn(&[f64]) -> f64 + Sync> {
    FnObjective::uniform(dim, -5.0, 10.0, |theta: &[f64]| {
        theta
            .windows(2)
            .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
            .sum()
    })
    .expect("static bounds")
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub best_theta: Vec<f64>,
    pub best_cost: f64,
    /// Best-so-far cost after each iteration (non-increasing).
    pub history: Vec<f64>,
    pub evals_used: usize,
    pub seed: u64,
}

impl OptResult {
    pub fn history_is_monotone(&self) -> bool {
        self.history.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Budget-tracking evaluation wrapper shared by all algorithms; rejects
/// non-finite objective values and keeps the incumbent.
pub(crate) struct Evaluator<'a> {
    obj: &'a dyn Objective,
    pub evals: usize,
    pub best_cost: f64,
    pub best_theta: Vec<f64>,
}

impl<'a> Evaluator<'a> {
    pub fn new(obj: &'a dyn Objective) -> Self {
        Self {
            obj,
            evals: 0,
            best_cost: f64::INFINITY,
            best_theta: vec![f64::NAN; obj.dim()],
        }
    }

    pub fn eval(&mut self, theta: &[f64]) -> Result<f64> {
        let v = self.obj.evaluate(theta);
        if !v.is_finite() {
            return Err(Error::NonFiniteObjective {
                theta: theta.to_vec(),
                value: v,
            });
        }
        self.evals += 1;
        if v < self.best_cost {
            self.best_cost = v;
            self.best_theta = theta.to_vec();
        }
        Ok(v)
    }

    pub fn finish(self, history: Vec<f64>, seed: u64) -> OptResult {
        OptResult {
            best_theta: self.best_theta,
            best_cost: self.best_cost,
            history,
            evals_used: self.evals,
            seed,
        }
    }
}

pub(crate) fn check_bounds(obj: &dyn Objective) -> Result<()> {
    if obj.dim() == 0 || obj.bounds().len() != obj.dim() {
        return Err(Error::InvalidBounds {
            message: format!(
                "dim {} vs bounds len {}",
                obj.dim(),
                obj.bounds().len()
            ),
        });
    }
    for (i, (lo, hi)) in obj.bounds().iter().enumerate() {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidBounds {
                message: format!("dimension {i}: [{lo}, {hi}]"),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_zero_at_origin() {
        let s = sphere(5);
        assert_eq!(s.evaluate(&[0.0; 5]), 0.0);
        assert_eq!(s.evaluate(&[1.0, 0.0, 0.0, 0.0, 0.0]), 1.0);
    }

    #[test]
    fn rosenbrock_zero_at_ones() {
        let r = rosenbrock(4);
        assert_eq!(r.evaluate(&[1.0; 4]), 0.0);
        assert!(r.evaluate(&[0.0; 4]) > 0.0);
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(FnObjective::uniform(3, 2.0, 1.0, |_: &[f64]| 0.0).is_err());
        assert!(FnObjective::new(vec![], |_: &[f64]| 0.0).is_err());
    }

    #[test]
    fn evaluator_rejects_non_finite() {
        let bad = FnObjective::uniform(1, -1.0, 1.0, |_: &[f64]| f64::NAN).unwrap();
        let mut ev = Evaluator::new(&bad);
        match ev.eval(&[0.5]) {
            Err(Error::NonFiniteObjective { theta, .. }) => assert_eq!(theta, vec![0.5]),
            other => panic!("expected NonFiniteObjective, got {other:?}"),
        }
    }
}
