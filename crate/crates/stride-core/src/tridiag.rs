//! Thomas-algorithm tridiagonal solvers, plus the cyclic variant used by the
//! periodic-boundary pendulum solve.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-300;

/// Solve a tridiagonal system `A x = d` in place of allocation-light scratch.
///
/// * `sub[i]`   = A[i+1][i], length n-1
/// * `diag[i]`  = A[i][i], length n
/// * `sup[i]`   = A[i][i+1], length n-1
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    assert_eq!(rhs.len(), n, "rhs length mismatch");
    if n > 1 {
        assert_eq!(sub.len(), n - 1, "sub length mismatch");
        assert_eq!(sup.len(), n - 1, "sup length mismatch");
    }

    let mut c_prime = vec![0.0; n.saturating_sub(1)];
    let mut d_prime = vec![0.0; n];

    let mut denom = diag[0];
    if !denom.is_finite() || denom.abs() < PIVOT_EPS {
        return Err(Error::SolverFailed { pivot: 0 });
    }
    if n > 1 {
        c_prime[0] = sup[0] / denom;
    }
    d_prime[0] = rhs[0] / denom;

    for i in 1..n {
        denom = diag[i] - sub[i - 1] * c_prime.get(i - 1).copied().unwrap_or(0.0);
        if !denom.is_finite() || denom.abs() < PIVOT_EPS {
            return Err(Error::SolverFailed { pivot: i });
        }
        if i < n - 1 {
            c_prime[i] = sup[i] / denom;
        }
        d_prime[i] = (rhs[i] - sub[i - 1] * d_prime[i - 1]) / denom;
    }

    let mut x = vec![0.0; n];
    x[n - 1] = d_prime[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d_prime[i] - c_prime[i] * x[i + 1];
    }
    Ok(x)
}

/// Solve a cyclic tridiagonal system where additionally `A[0][n-1] = corner_top`
/// and `A[n-1][0] = corner_bottom`, via the Sherman-Morrison correction.
pub fn solve_cyclic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    corner_top: f64,
    corner_bottom: f64,
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }

    // A = A' + u v^T with u = (gamma, 0, .., beta), v = (1, 0, .., alpha/gamma)
    let alpha = corner_top;
    let beta = corner_bottom;
    let gamma = -diag[0];

    let mut diag_mod = diag.to_vec();
    diag_mod[0] -= gamma;
    diag_mod[n - 1] -= alpha * beta / gamma;

    let x1 = solve_tridiagonal(sub, &diag_mod, sup, rhs)?;

    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = beta;
    let z = solve_tridiagonal(sub, &diag_mod, sup, &u)?;

    let v_dot_x1 = x1[0] + alpha / gamma * x1[n - 1];
    let v_dot_z = z[0] + alpha / gamma * z[n - 1];
    let denom = 1.0 + v_dot_z;
    if !denom.is_finite() || denom.abs() < PIVOT_EPS {
        return Err(Error::SolverFailed { pivot: n - 1 });
    }
    let factor = v_dot_x1 / denom;

    Ok(x1
        .iter()
        .zip(z.iter())
        .map(|(x, zi)| x - factor * zi)
        .collect())
}
