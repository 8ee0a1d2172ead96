//! CMA-ES: rank-one and rank-mu covariance adaptation with cumulative
//! step-size control, the standard strategy parameters, and box constraints
//! by resampling then projection. The covariance is symmetrized and its
//! eigenvalues floored every generation, which keeps sampling well-posed.

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};

use super::{in_bounds, project, rng_for};
use crate::error::Result;
use crate::objective::{Evaluator, Objective, OptResult};

#[derive(Debug, Clone)]
pub struct CmaesConfig {
    /// Population size; defaults to `4 + floor(3 ln dim)`.
    pub lambda: Option<usize>,
    /// Initial step size as a fraction of the mean bound range.
    pub initial_sigma_frac: f64,
    /// Optional start mean (defaults to the box center).
    pub start: Option<Vec<f64>>,
    pub resample_tries: usize,
    /// Eigenvalue floor applied by the per-generation repair.
    pub eigen_floor: f64,
}

impl Default for CmaesConfig {
    fn default() -> Self {
        Self {
            lambda: None,
            initial_sigma_frac: 0.3,
            start: None,
            resample_tries: 100,
            eigen_floor: 1e-14,
        }
    }
}

impl CmaesConfig {
    pub fn lambda(&self, dim: usize) -> usize {
        self.lambda
            .unwrap_or(4 + (3.0 * (dim as f64).ln()).floor() as usize)
    }
}

/// Optimization result plus per-generation covariance diagnostics.
#[derive(Debug, Clone)]
pub struct CmaesRun {
    pub result: OptResult,
    /// Smallest covariance eigenvalue after each generation's repair.
    pub min_eigenvalue_per_generation: Vec<f64>,
    pub final_sigma: f64,
}

struct Eigen {
    vectors: DMatrix<f64>,
    sqrt_values: DVector<f64>,
}

fn repair(c: &mut DMatrix<f64>, floor: f64) -> Result<(Eigen, f64)> {
    let n = c.nrows();
    let sym = DMatrix::from_fn(n, n, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]));
    let eig = nalgebra::linalg::SymmetricEigen::new(sym);
    let mut values = eig.eigenvalues.clone();
    for v in values.iter_mut() {
        if !v.is_finite() {
            return Err(crate::error::Error::CovarianceRepair {
                message: format!("non-finite eigenvalue {v}"),
            });
        }
        *v = v.max(floor);
    }
    let min_eig = values.min();
    let vectors = eig.eigenvectors;
    *c = &vectors * DMatrix::from_diagonal(&values) * vectors.transpose();
    Ok((
        Eigen {
            vectors,
            sqrt_values: values.map(|v| v.sqrt()),
        },
        min_eig,
    ))
}

pub(crate) fn run(
    obj: &dyn Objective,
    budget: usize,
    seed: u64,
    cfg: &CmaesConfig,
) -> Result<CmaesRun> {
    let n = obj.dim();
    let bounds = obj.bounds();
    let lambda = cfg.lambda(n);
    let mu = lambda / 2;

    // Log-rank recombination weights.
    let raw: Vec<f64> = (0..mu)
        .map(|i| ((mu as f64) + 0.5).ln() - ((i + 1) as f64).ln())
        .collect();
    let wsum: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / wsum).collect();
    let mu_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();

    let nf = n as f64;
    let cc = (4.0 + mu_eff / nf) / (nf + 4.0 + 2.0 * mu_eff / nf);
    let cs = (mu_eff + 2.0) / (nf + mu_eff + 5.0);
    let c1 = 2.0 / ((nf + 1.3).powi(2) + mu_eff);
    let cmu = (1.0 - c1).min(2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nf + 2.0).powi(2) + mu_eff));
    let damps = 1.0 + 2.0 * (0.0f64).max(((mu_eff - 1.0) / (nf + 1.0)).sqrt() - 1.0) + cs;
    let chi_n = nf.sqrt() * (1.0 - 1.0 / (4.0 * nf) + 1.0 / (21.0 * nf * nf));

    let mut rng = rng_for(seed);
    let mut ev = Evaluator::new(obj);
    let mut history = Vec::new();
    let mut min_eigs = Vec::new();

    let mean_range: f64 = bounds.iter().map(|(lo, hi)| hi - lo).sum::<f64>() / nf;
    let mut sigma = cfg.initial_sigma_frac * mean_range;
    let mut mean = DVector::from_vec(match &cfg.start {
        Some(theta) => theta.clone(),
        None => bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect(),
    });

    let mut c = DMatrix::<f64>::identity(n, n);
    let mut p_sigma = DVector::<f64>::zeros(n);
    let mut p_c = DVector::<f64>::zeros(n);
    let (mut eigen, min0) = repair(&mut c, cfg.eigen_floor)?;
    let _ = min0;

    let mut gen_index = 0usize;
    while ev.evals + lambda <= budget {
        // Sample the population; out-of-bounds draws are retried, then
        // projected (with the step re-derived so updates stay consistent).
        let mut xs: Vec<DVector<f64>> = Vec::with_capacity(lambda);
        let mut ys: Vec<DVector<f64>> = Vec::with_capacity(lambda);
        for _ in 0..lambda {
            let mut accepted: Option<(DVector<f64>, DVector<f64>)> = None;
            let mut last: Option<DVector<f64>> = None;
            for _ in 0..cfg.resample_tries.max(1) {
                let z = DVector::from_fn(n, |_, _| {
                    let v: f64 = StandardNormal.sample(&mut rng);
                    v
                });
                let y = &eigen.vectors * z.component_mul(&eigen.sqrt_values);
                let x = &mean + sigma * &y;
                if in_bounds(x.as_slice(), bounds) {
                    accepted = Some((x, y));
                    break;
                }
                last = Some(x);
            }
            let (x, y) = match accepted {
                Some(pair) => pair,
                None => {
                    let mut x = last.expect("at least one draw");
                    project(x.as_mut_slice(), bounds);
                    let y = (&x - &mean) / sigma;
                    (x, y)
                }
            };
            xs.push(x);
            ys.push(y);
        }

        let mut costs = Vec::with_capacity(lambda);
        for x in &xs {
            costs.push(ev.eval(x.as_slice())?);
        }
        let mut order: Vec<usize> = (0..lambda).collect();
        order.sort_by(|a, b| costs[*a].partial_cmp(&costs[*b]).expect("finite costs"));

        let mut mean_new = DVector::<f64>::zeros(n);
        for (w, &idx) in weights.iter().zip(order.iter()) {
            mean_new += *w * &xs[idx];
        }
        let y_w = (&mean_new - &mean) / sigma;

        // Cumulative step-size adaptation.
        let c_inv_sqrt_yw = &eigen.vectors
            * (eigen.vectors.transpose() * &y_w).component_div(&eigen.sqrt_values);
        p_sigma = (1.0 - cs) * &p_sigma + (cs * (2.0 - cs) * mu_eff).sqrt() * c_inv_sqrt_yw;
        let ps_norm = p_sigma.norm();
        let denom = (1.0 - (1.0 - cs).powi(2 * (gen_index as i32 + 1))).sqrt();
        let h_sigma = if ps_norm / denom / chi_n < 1.4 + 2.0 / (nf + 1.0) {
            1.0
        } else {
            0.0
        };
        p_c = (1.0 - cc) * &p_c + h_sigma * (cc * (2.0 - cc) * mu_eff).sqrt() * &y_w;

        // Rank-one plus rank-mu covariance update.
        let mut rank_mu = DMatrix::<f64>::zeros(n, n);
        for (w, &idx) in weights.iter().zip(order.iter()) {
            rank_mu += *w * (&ys[idx] * ys[idx].transpose());
        }
        c = (1.0 - c1 - cmu) * &c
            + c1 * ((&p_c * p_c.transpose()) + (1.0 - h_sigma) * cc * (2.0 - cc) * &c)
            + cmu * rank_mu;

        let exponent = ((cs / damps) * (ps_norm / chi_n - 1.0)).clamp(-1.0, 1.0);
        sigma *= exponent.exp();

        let (new_eigen, min_eig) = repair(&mut c, cfg.eigen_floor)?;
        eigen = new_eigen;
        min_eigs.push(min_eig);

        mean = mean_new;
        history.push(ev.best_cost);
        gen_index += 1;
    }

    Ok(CmaesRun {
        result: ev.finish(history, seed),
        min_eigenvalue_per_generation: min_eigs,
        final_sigma: sigma,
    })
}
