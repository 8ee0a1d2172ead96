//! Forward and inverse kinematics of a 6-DoF anthropomorphic leg.
//!
//! Chain, hip to sole: yaw (z) - roll (x) - pitch (y) at the hip, thigh,
//! knee pitch, shank, pitch - roll at the ankle, sole offset. The closed-form
//! IK takes the knee angle from the law of cosines on the hip-ankle distance,
//! the ankle angles from that vector expressed in the foot frame, and the hip
//! angles from a Z-X-Y decomposition of the orientation residual. The
//! knee-forward branch (knee_pitch >= 0) is always selected.

use nalgebra::{Isometry3, Rotation3, Translation3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{wrap_angle, FrameTransform, RobotParams, Side};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegJoints {
    pub hip_yaw: f64,
    pub hip_roll: f64,
    pub hip_pitch: f64,
    pub knee_pitch: f64,
    pub ankle_pitch: f64,
    pub ankle_roll: f64,
}

impl LegJoints {
    pub fn zeros() -> Self {
        Self {
            hip_yaw: 0.0,
            hip_roll: 0.0,
            hip_pitch: 0.0,
            knee_pitch: 0.0,
            ankle_pitch: 0.0,
            ankle_roll: 0.0,
        }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.hip_yaw,
            self.hip_roll,
            self.hip_pitch,
            self.knee_pitch,
            self.ankle_pitch,
            self.ankle_roll,
        ]
    }

    /// Joint vector for the target mirrored about the sagittal plane:
    /// sign flips on the yaw/roll joints only.
    pub fn mirrored(&self) -> Self {
        Self {
            hip_yaw: -self.hip_yaw,
            hip_roll: -self.hip_roll,
            hip_pitch: self.hip_pitch,
            knee_pitch: self.knee_pitch,
            ankle_pitch: self.ankle_pitch,
            ankle_roll: -self.ankle_roll,
        }
    }
}

/// Per-joint angle limits, NAO-like defaults. The knee lower bound of zero
/// rules out hyperextension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointLimits {
    pub hip_yaw: (f64, f64),
    pub hip_roll: (f64, f64),
    pub hip_pitch: (f64, f64),
    pub knee_pitch: (f64, f64),
    pub ankle_pitch: (f64, f64),
    pub ankle_roll: (f64, f64),
}

impl Default for JointLimits {
    fn default() -> Self {
        Self {
            hip_yaw: (-1.15, 1.15),
            hip_roll: (-0.79, 0.79),
            hip_pitch: (-1.77, 0.48),
            knee_pitch: (0.0, 2.11),
            ankle_pitch: (-1.19, 0.92),
            ankle_roll: (-0.77, 0.77),
        }
    }
}

impl JointLimits {
    pub fn check(&self, j: &LegJoints) -> Result<()> {
        let pairs: [(&'static str, f64, (f64, f64)); 6] = [
            ("hip_yaw", j.hip_yaw, self.hip_yaw),
            ("hip_roll", j.hip_roll, self.hip_roll),
            ("hip_pitch", j.hip_pitch, self.hip_pitch),
            ("knee_pitch", j.knee_pitch, self.knee_pitch),
            ("ankle_pitch", j.ankle_pitch, self.ankle_pitch),
            ("ankle_roll", j.ankle_roll, self.ankle_roll),
        ];
        for (joint, value, (lo, hi)) in pairs {
            if value < lo - 1e-12 || value > hi + 1e-12 {
                return Err(Error::JointLimit {
                    joint,
                    value,
                    lo,
                    hi,
                });
            }
        }
        Ok(())
    }
}

fn rot_iso(r: Rotation3<f64>) -> Isometry3<f64> {
    Isometry3::from_parts(
        Translation3::identity(),
        UnitQuaternion::from_rotation_matrix(&r),
    )
}

fn trans_z(z: f64) -> Isometry3<f64> {
    Isometry3::translation(0.0, 0.0, z)
}

/// Sole frame in the hip frame by serial-chain composition. Joint limits are
/// enforced up front.
pub fn leg_fk(j: &LegJoints, side: Side, p: &RobotParams) -> Result<FrameTransform> {
    let _ = side; // both legs share the chain; side matters only for hip placement
    JointLimits::default().check(j)?;
    let iso = rot_iso(Rotation3::from_axis_angle(&Vector3::z_axis(), j.hip_yaw))
        * rot_iso(Rotation3::from_axis_angle(&Vector3::x_axis(), j.hip_roll))
        * rot_iso(Rotation3::from_axis_angle(&Vector3::y_axis(), j.hip_pitch))
        * trans_z(-p.thigh_len)
        * rot_iso(Rotation3::from_axis_angle(&Vector3::y_axis(), j.knee_pitch))
        * trans_z(-p.shank_len)
        * rot_iso(Rotation3::from_axis_angle(&Vector3::y_axis(), j.ankle_pitch))
        * rot_iso(Rotation3::from_axis_angle(&Vector3::x_axis(), j.ankle_roll))
        * trans_z(-p.ankle_height);
    Ok(FrameTransform::from_isometry(&iso))
}

/// Closed-form leg IK for a sole target in the hip frame.
pub fn leg_ik(target: &FrameTransform, side: Side, p: &RobotParams) -> Result<LegJoints> {
    let _ = side;
    let lt = p.thigh_len;
    let ls = p.shank_len;

    let rot = target.rotation();
    let ankle = target.translation() + rot * Vector3::new(0.0, 0.0, p.ankle_height);
    let d = ankle.norm();
    let max_reach = lt + ls;
    let min_reach = (lt - ls).abs();
    if d > max_reach + 1e-12 || d < min_reach - 1e-12 {
        return Err(Error::Unreachable {
            required: d,
            min_reach,
            max_reach,
        });
    }

    // Knee from the law of cosines; interior angle pi means a straight leg.
    let cos_gamma = ((lt * lt + ls * ls - d * d) / (2.0 * lt * ls)).clamp(-1.0, 1.0);
    let knee_pitch = std::f64::consts::PI - cos_gamma.acos();

    // Ankle-to-hip vector in the foot frame fixes the ankle angles. Of the
    // two roll solutions (pi apart) keep the one inside (-pi/2, pi/2]; the
    // signed residual rho then selects the matching pitch branch.
    let u = rot.inverse() * (-ankle);
    let mut ankle_roll = f64::atan2(u.y, u.z);
    if ankle_roll > std::f64::consts::FRAC_PI_2 {
        ankle_roll -= std::f64::consts::PI;
    } else if ankle_roll <= -std::f64::consts::FRAC_PI_2 {
        ankle_roll += std::f64::consts::PI;
    }
    let rho = u.y * ankle_roll.sin() + u.z * ankle_roll.cos();
    let wx = -lt * knee_pitch.sin();
    let wz = ls + lt * knee_pitch.cos();
    let ankle_pitch = wrap_angle(f64::atan2(wx, wz) - f64::atan2(u.x, rho));

    // Remaining orientation residual is the hip's Z-X-Y rotation.
    let m = rot
        * Rotation3::from_axis_angle(&Vector3::x_axis(), -ankle_roll)
        * Rotation3::from_axis_angle(&Vector3::y_axis(), -(knee_pitch + ankle_pitch));
    let hip_roll = m[(2, 1)].clamp(-1.0, 1.0).asin();
    let hip_yaw = f64::atan2(-m[(0, 1)], m[(1, 1)]);
    let hip_pitch = f64::atan2(-m[(2, 0)], m[(2, 2)]);

    Ok(LegJoints {
        hip_yaw,
        hip_roll,
        hip_pitch,
        knee_pitch,
        ankle_pitch,
        ankle_roll,
    })
}

/// Solve both legs for feet targets expressed in the CoM frame. Each hip sits
/// at `(0, +-hip_offset_y, 0)` in that frame.
pub fn lower_body_ik(
    left: &FrameTransform,
    right: &FrameTransform,
    p: &RobotParams,
) -> Result<(LegJoints, LegJoints)> {
    let to_hip = |f: &FrameTransform, side: Side| {
        FrameTransform::new(
            f.x,
            f.y - side.lateral_sign() * p.hip_offset_y,
            f.z,
            f.roll,
            f.pitch,
            f.yaw,
        )
    };
    let lj = leg_ik(&to_hip(left, Side::Left), Side::Left, p)
        .map_err(Error::at_stage("left_leg_ik"))?;
    let rj = leg_ik(&to_hip(right, Side::Right), Side::Right, p)
        .map_err(Error::at_stage("right_leg_ik"))?;
    Ok((lj, rj))
}
