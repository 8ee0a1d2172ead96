//! Cycloid swing-foot trajectories, feet frames relative to the CoM, and the
//! trunk-attitude active-balance correction.

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{wrap_angle, BalanceState, FrameTransform, RobotParams};
use crate::planner::{FootstepPlan, SupportPhase};

/// One swing: lift off `from`, land on `to`, peak height `step_height_h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwingSpec {
    pub from: FrameTransform,
    pub to: FrameTransform,
    pub step_height_h: f64,
    pub duration: f64,
}

impl SwingSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0) {
            return Err(Error::InvalidParam {
                field: "duration",
                message: format!("swing duration must be positive (got {})", self.duration),
            });
        }
        if self.step_height_h < 0.0 {
            return Err(Error::InvalidParam {
                field: "step_height_H",
                message: format!("step height must be non-negative (got {})", self.step_height_h),
            });
        }
        if (self.from.z - self.to.z).abs() > 1e-9 {
            return Err(Error::InvalidParam {
                field: "to.z",
                message: format!(
                    "swing endpoints must share the ground level ({} vs {})",
                    self.from.z, self.to.z
                ),
            });
        }
        Ok(())
    }
}

/// Cycloid pose at normalized phase `t` in [0, 1]: with `theta = 2 pi t`,
/// horizontal components (x, y, yaw) advance by `(theta - sin theta) / 2 pi`
/// of their total displacement and the foot lifts by `H (1 - cos theta) / 2`.
/// Both velocity components vanish at the endpoints.
pub fn swing_pose(spec: &SwingSpec, t: f64) -> Result<FrameTransform> {
    spec.validate()?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::PhaseOutOfRange { value: t });
    }
    let theta = 2.0 * std::f64::consts::PI * t;
    let f = (theta - theta.sin()) / (2.0 * std::f64::consts::PI);
    let lift = 0.5 * spec.step_height_h * (1.0 - theta.cos());
    let dyaw = wrap_angle(spec.to.yaw - spec.from.yaw);
    Ok(FrameTransform::new(
        spec.from.x + f * (spec.to.x - spec.from.x),
        spec.from.y + f * (spec.to.y - spec.from.y),
        spec.from.z + lift,
        spec.from.roll,
        spec.from.pitch,
        spec.from.yaw + f * dyaw,
    ))
}

/// World frames of both feet at time `t`, expressed in the CoM frame (CoM
/// position plus body yaw). During double support both feet stand on their
/// planned frames; in single support the swing side follows `swing_world`.
pub fn compute_feet_frames(
    com_position: &Vector3<f64>,
    com_yaw: f64,
    plan: &FootstepPlan,
    swing_world: &FrameTransform,
    t: f64,
    p: &RobotParams,
) -> Result<(FrameTransform, FrameTransform)> {
    let phase = plan.phase_at(t, p)?;
    let com_frame = FrameTransform::new(
        com_position.x,
        com_position.y,
        com_position.z,
        0.0,
        0.0,
        com_yaw,
    );
    let inv = com_frame.isometry().inverse();

    let left_world;
    let right_world;
    match phase {
        SupportPhase::Double { .. } => {
            left_world = plan.standing_frame(crate::model::Side::Left, t, p);
            right_world = plan.standing_frame(crate::model::Side::Right, t, p);
        }
        SupportPhase::Single { step, .. } => {
            let swing_side = plan.steps[step].side;
            let support = plan.support_frame(step, p);
            match swing_side {
                crate::model::Side::Left => {
                    left_world = *swing_world;
                    right_world = support;
                }
                crate::model::Side::Right => {
                    left_world = support;
                    right_world = *swing_world;
                }
            }
        }
    }

    Ok((
        FrameTransform::from_isometry(&(inv * left_world.isometry())),
        FrameTransform::from_isometry(&(inv * right_world.isometry())),
    ))
}

/// Result of one active-balance update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceCorrection {
    pub left: FrameTransform,
    pub right: FrameTransform,
    /// Applied rotation about the CoM y axis (rad).
    pub pitch_ang: f64,
    /// Applied rotation about the CoM x axis (rad).
    pub roll_ang: f64,
}

/// Trunk-attitude correction: a PD (optionally PI D) controller turns the
/// trunk-angle error into small rotation angles, and both foot frames are
/// premultiplied by that rotation about the CoM origin (pitch about y, then
/// roll about x). Foot orientations are left untouched so the soles stay
/// parallel to the ground.
pub fn active_balance(
    left: &FrameTransform,
    right: &FrameTransform,
    state: &mut BalanceState,
    dt: f64,
) -> Result<BalanceCorrection> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParam {
            field: "dt",
            message: format!("dt must be positive (got {dt})"),
        });
    }

    let pitch_err = state.trunk_pitch_meas - state.trunk_pitch_des;
    let roll_err = state.trunk_roll_meas - state.trunk_roll_des;
    state.integral_pitch_err += pitch_err * dt;
    state.integral_roll_err += roll_err * dt;

    let clamp = state.max_correction;
    let pitch_ang = (state.kp * pitch_err
        + state.ki * state.integral_pitch_err
        + state.kd * (pitch_err - state.prev_pitch_err) / dt)
        .clamp(-clamp, clamp);
    let roll_ang = (state.kp * roll_err
        + state.ki * state.integral_roll_err
        + state.kd * (roll_err - state.prev_roll_err) / dt)
        .clamp(-clamp, clamp);

    state.prev_pitch_err = pitch_err;
    state.prev_roll_err = roll_err;

    let rot = Rotation3::from_axis_angle(&Vector3::x_axis(), roll_ang)
        * Rotation3::from_axis_angle(&Vector3::y_axis(), pitch_ang);

    let correct = |f: &FrameTransform| {
        let t = rot * f.translation();
        FrameTransform::new(t.x, t.y, t.z, f.roll, f.pitch, f.yaw)
    };

    Ok(BalanceCorrection {
        left: correct(left),
        right: correct(right),
        pitch_ang,
        roll_ang,
    })
}
