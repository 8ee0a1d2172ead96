//! End-to-end gait pipeline and the point-mass verification simulator.
//!
//! The plant is a planar point mass on the inverted-pendulum height profile.
//! It follows the solved CoM trajectory through a PD tracking law integrated
//! with the same central-difference stencil the solver uses, so an
//! undisturbed run reproduces the planned motion exactly. The instantaneous
//! ZMP is evaluated from the commanded acceleration, checked against the
//! active support polygon, and the trunk tilt fed to the balance controller
//! is synthesized from the CoM tracking error (the harness has no IMU).

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::com::{
    compute_zmp, solve_com_cart_table_fourier, solve_com_pendulum_numeric, PendulumBoundary,
};
use crate::error::{Error, Result};
use crate::kinematics::{lower_body_ik, LegJoints};
use crate::model::{BalanceState, ComTrajectory, FrameTransform, GaitCommand, RobotParams, Side, ZmpReference};
use crate::planner::{
    compute_height_profile, default_stance, generate_zmp_reference, plan_footsteps, FootstepPlan,
    HeightProfile, PlannerOptions, SupportPhase,
};
use crate::polygon::{zmp_margin, SupportPolygon};
use crate::swing::{active_balance, compute_feet_frames, swing_pose, SwingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverKind {
    CartTable,
    Pendulum,
}

impl std::str::FromStr for SolverKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cart-table" => Ok(SolverKind::CartTable),
            "pendulum" => Ok(SolverKind::Pendulum),
            other => Err(Error::Parse {
                message: format!("unknown solver `{other}` (expected cart-table|pendulum)"),
            }),
        }
    }
}

/// Velocity impulse applied to the CoM at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disturbance {
    pub t: f64,
    pub dvx: f64,
    pub dvy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOptions {
    /// Swing apex height (m).
    pub step_height: f64,
    /// CoM tracking PD gains.
    pub track_kp: f64,
    pub track_kd: f64,
    /// Trunk-tilt proxy: rad of tilt per meter of CoM tracking error.
    pub tilt_gain: f64,
    /// Balance controller gains (trunk PD).
    pub balance_kp: f64,
    pub balance_kd: f64,
    /// Restoring CoM acceleration per radian of balance correction.
    pub balance_accel_gain: f64,
    /// Std-dev of the tilt measurement noise (rad), drawn from the run seed.
    pub proxy_noise_std: f64,
    /// ZMP may leave the polygon by this much (m) before a sample counts as
    /// unstable.
    pub fall_tolerance: f64,
    /// Consecutive unstable samples before the run is marked fallen.
    pub fall_debounce: usize,
    /// Harmonics for the cart-table solve.
    pub cart_table_harmonics: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            step_height: 0.02,
            track_kp: 40.0,
            track_kd: 12.0,
            tilt_gain: 1.0,
            balance_kp: 0.5,
            balance_kd: 0.02,
            balance_accel_gain: 20.0,
            proxy_noise_std: 5e-4,
            fall_tolerance: 0.01,
            fall_debounce: 3,
            cart_table_harmonics: 30,
        }
    }
}

/// Everything the pipeline produces for one walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkPlan {
    pub plan: FootstepPlan,
    pub zmp_ref: ZmpReference,
    pub height: HeightProfile,
    pub com: ComTrajectory,
}

/// Run the planning pipeline: footsteps, ZMP reference, height profile and
/// the CoM solve with the chosen model.
pub fn build_walk(
    cmd: &GaitCommand,
    p: &RobotParams,
    solver: SolverKind,
    n_steps: usize,
    opts: &SimOptions,
) -> Result<WalkPlan> {
    let plan = plan_footsteps(cmd, p, n_steps, default_stance(p), &PlannerOptions::default())
        .map_err(Error::at_stage("plan"))?;
    let zmp_ref = generate_zmp_reference(&plan, p).map_err(Error::at_stage("zmp_reference"))?;
    let n = zmp_ref.len();

    let bc = PendulumBoundary::Dirichlet {
        x: (zmp_ref.samples[0][0], zmp_ref.samples[n - 1][0]),
        y: (zmp_ref.samples[0][1], zmp_ref.samples[n - 1][1]),
    };

    let (height, com) = match solver {
        SolverKind::CartTable => {
            let harmonics = opts.cart_table_harmonics.min((n - 1) / 2);
            let com = solve_com_cart_table_fourier(&zmp_ref, p, harmonics)
                .map_err(Error::at_stage("com_solve"))?;
            (
                HeightProfile::constant(p.nominal_com_height_h, n, p.dt),
                com,
            )
        }
        SolverKind::Pendulum => {
            // Provisional constant-height solve feeds the height profile,
            // which the final variable-height solve then honors.
            let flat = HeightProfile::constant(p.nominal_com_height_h, n, p.dt);
            let provisional = solve_com_pendulum_numeric(&zmp_ref, &flat, bc, p)
                .map_err(Error::at_stage("com_provisional"))?;
            let com_xy: Vec<[f64; 2]> =
                provisional.samples.iter().map(|s| [s.x, s.y]).collect();
            let height = compute_height_profile(&plan, &com_xy, p)
                .map_err(Error::at_stage("height_profile"))?;
            let com = solve_com_pendulum_numeric(&zmp_ref, &height, bc, p)
                .map_err(Error::at_stage("com_solve"))?;
            (height, com)
        }
    };

    Ok(WalkPlan {
        plan,
        zmp_ref,
        height,
        com,
    })
}

/// Active support polygon at time `t` plus a stable id (`2k` for the
/// double-support window around exchange `k`, `2k+1` for step `k`'s single
/// support).
pub fn support_polygon_at(
    plan: &FootstepPlan,
    t: f64,
    p: &RobotParams,
) -> Result<(SupportPolygon, usize)> {
    match plan.phase_at(t, p)? {
        SupportPhase::Single { step, .. } => Ok((
            SupportPolygon::foot_rect(&plan.support_frame(step, p), p),
            2 * step + 1,
        )),
        SupportPhase::Double { incoming } => {
            let left = plan.standing_frame(Side::Left, t, p);
            let right = plan.standing_frame(Side::Right, t, p);
            Ok((SupportPolygon::hull_of_feet(&[left, right], p)?, 2 * incoming))
        }
    }
}

/// Both feet frames in the CoM frame at time `t`, with the swing foot on its
/// cycloid.
pub fn feet_frames_at(
    plan: &FootstepPlan,
    com_position: &nalgebra::Vector3<f64>,
    t: f64,
    p: &RobotParams,
    step_height: f64,
) -> Result<(FrameTransform, FrameTransform)> {
    let swing_world = match plan.phase_at(t, p)? {
        SupportPhase::Single { step, swing_phase } => {
            let (from, to) = plan.swing_endpoints(step);
            let spec = SwingSpec {
                from,
                to,
                step_height_h: step_height,
                duration: p.step_duration_t * (1.0 - p.double_support_ratio),
            };
            swing_pose(&spec, swing_phase)?
        }
        SupportPhase::Double { .. } => FrameTransform::identity(),
    };
    compute_feet_frames(
        com_position,
        plan.body_yaw_at(t, p),
        plan,
        &swing_world,
        t,
        p,
    )
}

/// Joint trajectories for a planned walk (no plant, no balance): feet frames
/// through the leg IK at every sample.
pub fn joint_trajectory(
    walk: &WalkPlan,
    p: &RobotParams,
    step_height: f64,
) -> Result<Vec<(f64, LegJoints, LegJoints)>> {
    let mut rows = Vec::with_capacity(walk.com.len());
    for (i, s) in walk.com.samples.iter().enumerate() {
        let t = i as f64 * walk.com.dt;
        let com = nalgebra::Vector3::new(s.x, s.y, s.z);
        let (left, right) = feet_frames_at(&walk.plan, &com, t, p, step_height)
            .map_err(Error::at_stage("feet_frames"))?;
        let (lj, rj) = lower_body_ik(&left, &right, p).map_err(Error::at_stage("ik"))?;
        rows.push((t, lj, rj));
    }
    Ok(rows)
}

/// One simulated sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimRecord {
    pub t: f64,
    pub com: [f64; 3],
    pub zmp: [f64; 2],
    pub polygon_id: usize,
    pub margin: f64,
    pub trunk_pitch_proxy: f64,
    pub trunk_roll_proxy: f64,
    pub balance_pitch: f64,
    pub balance_roll: f64,
    pub fallen: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimLog {
    pub dt: f64,
    pub records: Vec<SimRecord>,
    pub fallen: bool,
    pub min_margin: f64,
}

/// Forward-simulate a commanded walk for `duration` seconds.
#[allow(clippy::too_many_arguments)]
pub fn simulate_walk(
    cmd: &GaitCommand,
    p: &RobotParams,
    solver: SolverKind,
    disturbances: &[Disturbance],
    balance_on: bool,
    duration: f64,
    seed: u64,
    opts: &SimOptions,
) -> Result<SimLog> {
    p.validate()?;
    if !(duration > 0.0) {
        return Err(Error::InvalidParam {
            field: "duration",
            message: format!("duration must be positive (got {duration})"),
        });
    }
    let n_steps = ((duration / p.step_duration_t).ceil() as usize).max(2);
    let walk = build_walk(cmd, p, solver, n_steps, opts)?;
    let n_sim = walk.com.len().min((duration / p.dt).round() as usize);
    if n_sim < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: n_sim,
        });
    }

    let dt = p.dt;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, opts.proxy_noise_std.max(1e-300)).expect("valid noise std");
    let mut balance = BalanceState::new(opts.balance_kp, opts.balance_kd);

    // Impulses bucketed to their nearest sample.
    let mut impulse_at = vec![[0.0f64; 2]; n_sim];
    for d in disturbances {
        let idx = (d.t / dt).round() as usize;
        if idx < n_sim {
            impulse_at[idx][0] += d.dvx;
            impulse_at[idx][1] += d.dvy;
        }
    }

    let plan_pos = |i: usize| [walk.com.samples[i].x, walk.com.samples[i].y];
    let plan_acc = |i: usize| [walk.com.samples[i].ax, walk.com.samples[i].ay];

    let mut records: Vec<SimRecord> = Vec::with_capacity(n_sim);
    let mut x_prev = plan_pos(0);
    let mut x_curr = plan_pos(1);
    let mut unstable_streak = 0usize;
    let mut fallen = false;
    let mut min_margin = f64::INFINITY;

    // Sample 0: exactly on plan.
    {
        let zmp0 = [walk.zmp_ref.samples[0][0], walk.zmp_ref.samples[0][1]];
        let (poly, pid) = support_polygon_at(&walk.plan, 0.0, p)?;
        let margin = zmp_margin(zmp0, &poly)?;
        min_margin = min_margin.min(margin);
        records.push(SimRecord {
            t: 0.0,
            com: [x_prev[0], x_prev[1], walk.com.samples[0].z],
            zmp: zmp0,
            polygon_id: pid,
            margin,
            trunk_pitch_proxy: 0.0,
            trunk_roll_proxy: 0.0,
            balance_pitch: 0.0,
            balance_roll: 0.0,
            fallen: false,
        });
    }

    for i in 1..n_sim {
        let t = i as f64 * dt;
        let pp = plan_pos(i);
        let pa = plan_acc(i);
        let s = &walk.com.samples[i];

        let err = [x_curr[0] - pp[0], x_curr[1] - pp[1]];
        let v = [(x_curr[0] - x_prev[0]) / dt, (x_curr[1] - x_prev[1]) / dt];
        let pv_prev = plan_pos(i - 1);
        let pv = [(pp[0] - pv_prev[0]) / dt, (pp[1] - pv_prev[1]) / dt];

        let pitch_proxy = opts.tilt_gain * err[0] + noise.sample(&mut rng);
        let roll_proxy = opts.tilt_gain * err[1] + noise.sample(&mut rng);

        let (mut bal_pitch, mut bal_roll) = (0.0, 0.0);
        let mut a_bal = [0.0, 0.0];
        if balance_on {
            balance.trunk_pitch_meas = pitch_proxy;
            balance.trunk_roll_meas = roll_proxy;
            let com_vec = nalgebra::Vector3::new(x_curr[0], x_curr[1], s.z);
            let (left, right) = feet_frames_at(&walk.plan, &com_vec, t, p, opts.step_height)?;
            let corr = active_balance(&left, &right, &mut balance, dt)?;
            bal_pitch = corr.pitch_ang;
            bal_roll = corr.roll_ang;
            a_bal = [
                -opts.balance_accel_gain * bal_pitch,
                -opts.balance_accel_gain * bal_roll,
            ];
        }

        let a_cmd = [
            pa[0] + opts.track_kp * (pp[0] - x_curr[0]) + opts.track_kd * (pv[0] - v[0]) + a_bal[0],
            pa[1] + opts.track_kp * (pp[1] - x_curr[1]) + opts.track_kd * (pv[1] - v[1]) + a_bal[1],
        ];

        // Instantaneous ZMP of the commanded motion.
        let c = s.z / (p.gravity_g + s.az);
        let zmp = [x_curr[0] - c * a_cmd[0], x_curr[1] - c * a_cmd[1]];
        let (poly, pid) = support_polygon_at(&walk.plan, t.min(walk.plan.duration()), p)?;
        let margin = zmp_margin(zmp, &poly)?;
        min_margin = min_margin.min(margin);

        if margin < -opts.fall_tolerance {
            unstable_streak += 1;
            if unstable_streak >= opts.fall_debounce {
                fallen = true;
            }
        } else {
            unstable_streak = 0;
        }

        records.push(SimRecord {
            t,
            com: [x_curr[0], x_curr[1], s.z],
            zmp,
            polygon_id: pid,
            margin,
            trunk_pitch_proxy: pitch_proxy,
            trunk_roll_proxy: roll_proxy,
            balance_pitch: bal_pitch,
            balance_roll: bal_roll,
            fallen,
        });

        if i + 1 < n_sim {
            let dv = impulse_at[i];
            let x_next = [
                2.0 * x_curr[0] - x_prev[0] + a_cmd[0] * dt * dt + dv[0] * dt,
                2.0 * x_curr[1] - x_prev[1] + a_cmd[1] * dt * dt + dv[1] * dt,
            ];
            x_prev = x_curr;
            x_curr = x_next;
        }
    }

    Ok(SimLog {
        dt,
        records,
        fallen,
        min_margin,
    })
}

/// Mean absolute trunk-proxy magnitude after `t_from`.
pub fn mean_proxy_error_after(log: &SimLog, t_from: f64) -> f64 {
    let vals: Vec<f64> = log
        .records
        .iter()
        .filter(|r| r.t > t_from)
        .map(|r| r.trunk_pitch_proxy.hypot(r.trunk_roll_proxy))
        .collect();
    if vals.is_empty() {
        0.0
    } else {
        vals.iter().sum::<f64>() / vals.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> RobotParams {
        RobotParams::default()
    }

    #[test]
    fn undisturbed_walk_keeps_margin() {
        let log = simulate_walk(
            &GaitCommand::new(0.1, 0.0, 0.0),
            &p(),
            SolverKind::Pendulum,
            &[],
            false,
            4.0,
            1,
            &SimOptions::default(),
        )
        .unwrap();
        assert!(!log.fallen);
        assert!(
            log.min_margin >= 0.005,
            "min margin {} below 5 mm",
            log.min_margin
        );
        assert_eq!(log.records.len(), 400);
    }

    #[test]
    fn deterministic_under_seed() {
        let run = || {
            simulate_walk(
                &GaitCommand::new(0.05, 0.01, 0.1),
                &p(),
                SolverKind::Pendulum,
                &[Disturbance {
                    t: 1.0,
                    dvx: 0.05,
                    dvy: 0.03,
                }],
                true,
                3.0,
                42,
                &SimOptions::default(),
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
    }

    #[test]
    fn big_impulse_falls_and_monotone_in_magnitude() {
        let run = |mag: f64| {
            simulate_walk(
                &GaitCommand::new(0.1, 0.0, 0.0),
                &p(),
                SolverKind::Pendulum,
                &[Disturbance {
                    t: 2.0,
                    dvx: 0.0,
                    dvy: mag,
                }],
                false,
                4.0,
                7,
                &SimOptions::default(),
            )
            .unwrap()
            .fallen
        };
        let magnitudes = [0.1, 0.2, 0.4, 0.6, 0.9, 1.3];
        let fell: Vec<bool> = magnitudes.iter().map(|m| run(*m)).collect();
        assert!(fell.last().copied().unwrap(), "largest impulse must fall");
        assert!(!fell[0], "smallest impulse should recover");
        let first_fall = fell.iter().position(|f| *f).unwrap();
        for (i, f) in fell.iter().enumerate().skip(first_fall) {
            assert!(*f, "fall not monotone: magnitude {} recovered", magnitudes[i]);
        }
    }

    #[test]
    fn balance_reduces_post_impulse_proxy_error() {
        let run = |on: bool, seed: u64| {
            let log = simulate_walk(
                &GaitCommand::new(0.1, 0.0, 0.0),
                &p(),
                SolverKind::Pendulum,
                &[Disturbance {
                    t: 3.0,
                    dvx: 0.15,
                    dvy: 0.10,
                }],
                on,
                6.0,
                seed,
                &SimOptions::default(),
            )
            .unwrap();
            assert!(!log.fallen);
            mean_proxy_error_after(&log, 3.0)
        };
        let mut wins = 0;
        for seed in 1..=5 {
            if run(true, seed) < run(false, seed) {
                wins += 1;
            }
        }
        assert!(wins >= 4, "balance helped in only {wins}/5 seeds");
    }

    #[test]
    fn cart_table_walk_also_stable() {
        let log = simulate_walk(
            &GaitCommand::new(0.05, 0.0, 0.0),
            &p(),
            SolverKind::CartTable,
            &[],
            false,
            3.0,
            1,
            &SimOptions::default(),
        )
        .unwrap();
        assert!(!log.fallen);
        assert!(log.min_margin > 0.0, "min margin {}", log.min_margin);
    }

    #[test]
    fn pipeline_round_trip_on_built_walk() {
        let walk = build_walk(
            &GaitCommand::new(0.1, 0.0, 0.0),
            &p(),
            SolverKind::Pendulum,
            8,
            &SimOptions::default(),
        )
        .unwrap();
        let back = compute_zmp(&walk.com, &p()).unwrap();
        let n = back.len();
        let mut rms = 0.0;
        for i in 1..n - 1 {
            let dx = back.samples[i][0] - walk.zmp_ref.samples[i][0];
            let dy = back.samples[i][1] - walk.zmp_ref.samples[i][1];
            rms += dx * dx + dy * dy;
        }
        let rms = (rms / (n - 2) as f64).sqrt();
        assert!(rms <= 1e-6, "pipeline round trip RMS {rms}");
    }

    #[test]
    fn joint_trajectory_within_limits_and_continuous() {
        let params = p();
        let walk = build_walk(
            &GaitCommand::new(0.1, 0.0, 0.0),
            &params,
            SolverKind::Pendulum,
            6,
            &SimOptions::default(),
        )
        .unwrap();
        let rows = joint_trajectory(&walk, &params, 0.02).unwrap();
        let limits = crate::kinematics::JointLimits::default();
        let mut max_step = 0.0f64;
        for w in rows.windows(2) {
            limits.check(&w[1].1).unwrap();
            limits.check(&w[1].2).unwrap();
            for (a, b) in w[0].1.as_array().iter().zip(w[1].1.as_array().iter()) {
                max_step = max_step.max((a - b).abs());
            }
            for (a, b) in w[0].2.as_array().iter().zip(w[1].2.as_array().iter()) {
                max_step = max_step.max((a - b).abs());
            }
        }
        assert!(
            max_step <= 0.1,
            "joint trajectory jumps by {max_step} rad between samples"
        );
    }

    #[test]
    fn time_axis_strictly_increasing() {
        let log = simulate_walk(
            &GaitCommand::new(0.0, 0.0, 0.0),
            &p(),
            SolverKind::Pendulum,
            &[],
            false,
            2.0,
            3,
            &SimOptions::default(),
        )
        .unwrap();
        for w in log.records.windows(2) {
            assert!(w[1].t > w[0].t);
            assert!((w[1].t - w[0].t - log.dt).abs() < 1e-12);
        }
    }
}
