//! CoM/ZMP dynamics: the moment balance and ZMP equations forward, plus two
//! inverse solvers (ZMP reference in, CoM trajectory out).
//!
//! * Cart-table, analytic: the reference is treated as one period of a
//!   periodic signal, fitted as a truncated Fourier series; each harmonic is
//!   scaled by the periodic steady-state gain `w0^2 / (w0^2 + (k w)^2)` with
//!   `w0^2 = g/h` at constant height.
//! * Variable-height pendulum, numeric: the ZMP equation is discretized with
//!   second central differences, giving a tridiagonal boundary-value system
//!   solved per axis (Dirichlet ends, or cyclic for the periodic option).

use crate::error::{Error, Result};
use crate::model::{Axis, ComSample, ComTrajectory, RobotParams, ZmpReference, SINGULARITY_EPS};
use crate::planner::HeightProfile;
use crate::tridiag::{solve_cyclic_tridiagonal, solve_tridiagonal};

/// Moment around the ground point `p_coord` produced by one CoM sample along
/// the given axis: `T_p = M (g + az) (x - P) - M a x z`.
pub fn compute_moment(
    sample: &ComSample,
    axis: Axis,
    p_coord: f64,
    params: &RobotParams,
) -> Result<f64> {
    let denom = params.gravity_g + sample.az;
    if denom <= SINGULARITY_EPS {
        return Err(Error::SingularityGuard {
            index: None,
            value: denom,
            eps: SINGULARITY_EPS,
        });
    }
    let (pos, acc) = match axis {
        Axis::X => (sample.x, sample.ax),
        Axis::Y => (sample.y, sample.ay),
    };
    Ok(params.mass_m * denom * (pos - p_coord) - params.mass_m * acc * sample.z)
}

/// Per-sample ZMP of a CoM trajectory: `p = pos - z * acc / (g + az)`.
pub fn compute_zmp(traj: &ComTrajectory, params: &RobotParams) -> Result<ZmpReference> {
    let mut samples = Vec::with_capacity(traj.len());
    for (i, s) in traj.samples.iter().enumerate() {
        let denom = params.gravity_g + s.az;
        if denom <= SINGULARITY_EPS {
            return Err(Error::SingularityGuard {
                index: Some(i),
                value: denom,
                eps: SINGULARITY_EPS,
            });
        }
        let factor = s.z / denom;
        samples.push([s.x - factor * s.ax, s.y - factor * s.ay]);
    }
    Ok(ZmpReference {
        dt: traj.dt,
        samples,
    })
}

/// Truncated Fourier representation of one ZMP axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierZmp {
    pub fundamental_omega: f64,
    pub a0: f64,
    pub cos_coeffs: Vec<f64>,
    pub sin_coeffs: Vec<f64>,
}

impl FourierZmp {
    pub fn harmonics(&self) -> usize {
        self.cos_coeffs.len()
    }

    pub fn reconstruct(&self, t: f64) -> f64 {
        let mut v = self.a0;
        for k in 1..=self.harmonics() {
            let arg = k as f64 * self.fundamental_omega * t;
            v += self.cos_coeffs[k - 1] * arg.cos() + self.sin_coeffs[k - 1] * arg.sin();
        }
        v
    }

    /// RMS mismatch between the series and the samples it was fitted to.
    pub fn fit_rms(&self, samples: &[f64], dt: f64) -> f64 {
        let n = samples.len() as f64;
        let sum: f64 = samples
            .iter()
            .enumerate()
            .map(|(i, s)| (s - self.reconstruct(i as f64 * dt)).powi(2))
            .sum();
        (sum / n).sqrt()
    }
}

/// DFT fit of `harmonics` terms over uniform samples treated as one period.
pub fn fit_fourier(samples: &[f64], dt: f64, harmonics: usize) -> Result<FourierZmp> {
    let n = samples.len();
    if harmonics < 1 {
        return Err(Error::InvalidParam {
            field: "harmonics",
            message: "need at least one harmonic".into(),
        });
    }
    if n < 2 * harmonics + 1 {
        return Err(Error::TooFewSamples {
            needed: 2 * harmonics + 1,
            got: n,
        });
    }
    let period = n as f64 * dt;
    let omega = 2.0 * std::f64::consts::PI / period;
    let a0 = samples.iter().sum::<f64>() / n as f64;
    let mut cos_coeffs = Vec::with_capacity(harmonics);
    let mut sin_coeffs = Vec::with_capacity(harmonics);
    for k in 1..=harmonics {
        let mut ac = 0.0;
        let mut as_ = 0.0;
        for (i, s) in samples.iter().enumerate() {
            let arg = 2.0 * std::f64::consts::PI * (k * i) as f64 / n as f64;
            ac += s * arg.cos();
            as_ += s * arg.sin();
        }
        cos_coeffs.push(2.0 * ac / n as f64);
        sin_coeffs.push(2.0 * as_ / n as f64);
    }
    Ok(FourierZmp {
        fundamental_omega: omega,
        a0,
        cos_coeffs,
        sin_coeffs,
    })
}

/// Periodic steady-state gain of harmonic `k`: `w0^2 / (w0^2 + (k w)^2)`.
pub fn harmonic_gain(k: usize, fundamental_omega: f64, omega0_sq: f64) -> f64 {
    let wk = k as f64 * fundamental_omega;
    omega0_sq / (omega0_sq + wk * wk)
}

/// Analytic cart-table solution at constant height `h`: the DC term passes
/// through, harmonic `k` is attenuated by [`harmonic_gain`]; accelerations
/// come from the twice-differentiated series.
pub fn solve_com_cart_table_fourier(
    zmp: &ZmpReference,
    params: &RobotParams,
    harmonics: usize,
) -> Result<ComTrajectory> {
    let n = zmp.len();
    let h = params.nominal_com_height_h;
    let omega0_sq = params.gravity_g / h;

    let fits = [
        fit_fourier(&zmp.axis(Axis::X), zmp.dt, harmonics)?,
        fit_fourier(&zmp.axis(Axis::Y), zmp.dt, harmonics)?,
    ];
    let omega = fits[0].fundamental_omega;

    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 * zmp.dt;
        let mut pos = [fits[0].a0, fits[1].a0];
        let mut acc = [0.0, 0.0];
        for k in 1..=harmonics {
            let gain = harmonic_gain(k, omega, omega0_sq);
            let wk = k as f64 * omega;
            let arg = wk * t;
            let (s, c) = arg.sin_cos();
            for (axis, fit) in fits.iter().enumerate() {
                let term = fit.cos_coeffs[k - 1] * c + fit.sin_coeffs[k - 1] * s;
                pos[axis] += gain * term;
                acc[axis] += -gain * wk * wk * term;
            }
        }
        samples.push(ComSample {
            x: pos[0],
            y: pos[1],
            z: h,
            ax: acc[0],
            ay: acc[1],
            az: 0.0,
        });
    }
    Ok(ComTrajectory {
        dt: zmp.dt,
        samples,
    })
}

/// Boundary handling for the numeric pendulum solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PendulumBoundary {
    /// First and last CoM positions fixed per axis: `x: (first, last)`.
    Dirichlet { x: (f64, f64), y: (f64, f64) },
    /// Wrap-around stencil; the solution is one period of a cyclic gait.
    Periodic,
}

/// Numeric variable-height inverted-pendulum solve. Discretizes
/// `p[i] = x[i] - c[i] (x[i-1] - 2 x[i] + x[i+1]) / dt^2` with
/// `c[i] = z[i] / (g + az[i])` and solves the resulting tridiagonal system
/// per axis. Output accelerations use the same stencil, so feeding the result
/// back through [`compute_zmp`] reproduces the reference on interior samples.
pub fn solve_com_pendulum_numeric(
    zmp: &ZmpReference,
    height: &HeightProfile,
    bc: PendulumBoundary,
    params: &RobotParams,
) -> Result<ComTrajectory> {
    let n = zmp.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    if height.len() != n {
        return Err(Error::InvalidParam {
            field: "z_samples",
            message: format!("height profile has {} samples, zmp has {n}", height.len()),
        });
    }

    let dt = zmp.dt;
    let mut coeff = Vec::with_capacity(n);
    for i in 0..n {
        let denom = params.gravity_g + height.az_samples[i];
        if denom <= SINGULARITY_EPS {
            return Err(Error::SingularityGuard {
                index: Some(i),
                value: denom,
                eps: SINGULARITY_EPS,
            });
        }
        if !(height.z_samples[i] > 0.0) {
            return Err(Error::InvalidParam {
                field: "z_samples",
                message: format!("height must be positive at sample {i}"),
            });
        }
        coeff.push(height.z_samples[i] / denom);
    }

    let px = zmp.axis(Axis::X);
    let py = zmp.axis(Axis::Y);
    let (x, y) = match bc {
        PendulumBoundary::Dirichlet { x: bx, y: by } => (
            solve_axis_dirichlet(&px, &coeff, dt, bx)?,
            solve_axis_dirichlet(&py, &coeff, dt, by)?,
        ),
        PendulumBoundary::Periodic => (
            solve_axis_periodic(&px, &coeff, dt)?,
            solve_axis_periodic(&py, &coeff, dt)?,
        ),
    };

    let periodic = matches!(bc, PendulumBoundary::Periodic);
    let ax = stencil_acceleration(&x, dt, periodic);
    let ay = stencil_acceleration(&y, dt, periodic);

    let samples = (0..n)
        .map(|i| ComSample {
            x: x[i],
            y: y[i],
            z: height.z_samples[i],
            ax: ax[i],
            ay: ay[i],
            az: height.az_samples[i],
        })
        .collect();
    Ok(ComTrajectory { dt, samples })
}

fn solve_axis_dirichlet(p: &[f64], coeff: &[f64], dt: f64, bc: (f64, f64)) -> Result<Vec<f64>> {
    let n = p.len();
    let m = n - 2; // interior unknowns
    if m == 0 {
        return Ok(vec![bc.0, bc.1]);
    }
    let inv_dt2 = 1.0 / (dt * dt);
    let mut sub = vec![0.0; m - 1];
    let mut diag = vec![0.0; m];
    let mut sup = vec![0.0; m - 1];
    let mut rhs = vec![0.0; m];
    for j in 0..m {
        let i = j + 1;
        let a = coeff[i] * inv_dt2;
        diag[j] = 1.0 + 2.0 * a;
        if j > 0 {
            sub[j - 1] = -a;
        }
        if j + 1 < m {
            sup[j] = -a;
        }
        rhs[j] = p[i];
    }
    rhs[0] += coeff[1] * inv_dt2 * bc.0;
    rhs[m - 1] += coeff[n - 2] * inv_dt2 * bc.1;

    let interior = solve_tridiagonal(&sub, &diag, &sup, &rhs)?;
    let mut x = Vec::with_capacity(n);
    x.push(bc.0);
    x.extend(interior);
    x.push(bc.1);
    Ok(x)
}

fn solve_axis_periodic(p: &[f64], coeff: &[f64], dt: f64) -> Result<Vec<f64>> {
    let n = p.len();
    let inv_dt2 = 1.0 / (dt * dt);
    let mut sub = vec![0.0; n - 1];
    let mut diag = vec![0.0; n];
    let mut sup = vec![0.0; n - 1];
    for i in 0..n {
        let a = coeff[i] * inv_dt2;
        diag[i] = 1.0 + 2.0 * a;
        if i > 0 {
            sub[i - 1] = -a;
        }
        if i + 1 < n {
            sup[i] = -a;
        }
    }
    let corner_top = -coeff[0] * inv_dt2;
    let corner_bottom = -coeff[n - 1] * inv_dt2;
    solve_cyclic_tridiagonal(&sub, &diag, &sup, corner_top, corner_bottom, p)
}

fn stencil_acceleration(x: &[f64], dt: f64, periodic: bool) -> Vec<f64> {
    let n = x.len();
    let inv_dt2 = 1.0 / (dt * dt);
    let mut acc = vec![0.0; n];
    for i in 1..n - 1 {
        acc[i] = (x[i - 1] - 2.0 * x[i] + x[i + 1]) * inv_dt2;
    }
    if periodic {
        acc[0] = (x[n - 1] - 2.0 * x[0] + x[1]) * inv_dt2;
        acc[n - 1] = (x[n - 2] - 2.0 * x[n - 1] + x[0]) * inv_dt2;
    } else {
        acc[0] = (x[0] - 2.0 * x[1] + x[2]) * inv_dt2;
        acc[n - 1] = (x[n - 3] - 2.0 * x[n - 2] + x[n - 1]) * inv_dt2;
    }
    acc
}
