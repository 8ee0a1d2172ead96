//! Shared domain types: robot parameters, gait commands, frames and
//! trajectories. All quantities are SI (m, s, kg, rad).

use std::f64::consts::PI;
use std::path::Path;

use nalgebra::{Isometry3, Rotation3, Translation3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard on the `g + z_acc` denominator of the ZMP equations; inputs closer
/// to free fall than this are rejected rather than amplified.
pub const SINGULARITY_EPS: f64 = 1e-3;

/// Wrap an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = a % two_pi;
    if r <= -PI {
        r += two_pi;
    } else if r > PI {
        r -= two_pi;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Sign of the lateral (y) offset of this side's hip and foot: +1 left, -1 right.
    pub fn lateral_sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Rigid transform as translation plus fixed-axis X-Y-Z (roll, pitch, yaw)
/// rotation. Angles are wrapped to `(-pi, pi]` on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameTransform {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

impl FrameTransform {
    pub fn new(x: f64, y: f64, z: f64, roll: f64, pitch: f64, yaw: f64) -> Self {
        Self {
            x,
            y,
            z,
            roll: wrap_angle(roll),
            pitch: wrap_angle(pitch),
            yaw: wrap_angle(yaw),
        }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn from_xyz_yaw(x: f64, y: f64, z: f64, yaw: f64) -> Self {
        Self::new(x, y, z, 0.0, 0.0, yaw)
    }

    pub fn translation(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn rotation(&self) -> Rotation3<f64> {
        Rotation3::from_euler_angles(self.roll, self.pitch, self.yaw)
    }

    pub fn isometry(&self) -> Isometry3<f64> {
        Isometry3::from_parts(
            Translation3::new(self.x, self.y, self.z),
            UnitQuaternion::from_rotation_matrix(&self.rotation()),
        )
    }

    pub fn from_isometry(iso: &Isometry3<f64>) -> Self {
        let (roll, pitch, yaw) = iso.rotation.euler_angles();
        Self::new(
            iso.translation.x,
            iso.translation.y,
            iso.translation.z,
            roll,
            pitch,
            yaw,
        )
    }

    /// `self` applied after `other`: the frame of `other` expressed through `self`.
    pub fn compose(&self, other: &FrameTransform) -> FrameTransform {
        Self::from_isometry(&(self.isometry() * other.isometry()))
    }

    pub fn inverse(&self) -> FrameTransform {
        Self::from_isometry(&self.isometry().inverse())
    }

    pub fn transform_point(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation() * p + self.translation()
    }
}

/// Physical constants and gait limits of the robot.
///
/// JSON config keys match the field names below exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotParams {
    #[serde(rename = "mass_M")]
    pub mass_m: f64,
    #[serde(rename = "gravity_g")]
    pub gravity_g: f64,
    pub thigh_len: f64,
    pub shank_len: f64,
    /// Lateral hip-to-hip half-distance.
    pub hip_offset_y: f64,
    pub ankle_height: f64,
    pub nominal_com_height_h: f64,
    pub foot_length: f64,
    pub foot_width: f64,
    pub max_step_len: f64,
    pub max_step_width: f64,
    pub max_step_yaw: f64,
    #[serde(rename = "step_duration_T")]
    pub step_duration_t: f64,
    pub double_support_ratio: f64,
    pub dt: f64,
}

impl Default for RobotParams {
    /// NAO-like geometry walking at a 0.30 m CoM height.
    fn default() -> Self {
        Self {
            mass_m: 4.5,
            gravity_g: 9.81,
            thigh_len: 0.15,
            shank_len: 0.13,
            hip_offset_y: 0.05,
            ankle_height: 0.05,
            nominal_com_height_h: 0.30,
            foot_length: 0.16,
            foot_width: 0.09,
            max_step_len: 0.10,
            max_step_width: 0.06,
            max_step_yaw: 0.5,
            step_duration_t: 0.5,
            double_support_ratio: 0.2,
            dt: 0.01,
        }
    }
}

impl RobotParams {
    /// Maximum hip-to-sole extension of a straight leg.
    pub fn max_leg_extension(&self) -> f64 {
        self.thigh_len + self.shank_len + self.ankle_height
    }

    /// Half-width of the double-support window around each step exchange.
    pub fn double_support_half(&self) -> f64 {
        0.5 * self.double_support_ratio * self.step_duration_t
    }

    pub fn validate(&self) -> Result<&Self> {
        let positive: [(&'static str, f64); 13] = [
            ("mass_M", self.mass_m),
            ("gravity_g", self.gravity_g),
            ("thigh_len", self.thigh_len),
            ("shank_len", self.shank_len),
            ("hip_offset_y", self.hip_offset_y),
            ("ankle_height", self.ankle_height),
            ("nominal_com_height_h", self.nominal_com_height_h),
            ("foot_length", self.foot_length),
            ("foot_width", self.foot_width),
            ("max_step_len", self.max_step_len),
            ("max_step_width", self.max_step_width),
            ("step_duration_T", self.step_duration_t),
            ("dt", self.dt),
        ];
        for (field, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParam {
                    field,
                    message: format!("{field} must be positive (got {value})"),
                });
            }
        }
        if !(self.max_step_yaw >= 0.0) || !self.max_step_yaw.is_finite() {
            return Err(Error::InvalidParam {
                field: "max_step_yaw",
                message: format!("max_step_yaw must be non-negative (got {})", self.max_step_yaw),
            });
        }
        if self.nominal_com_height_h >= self.max_leg_extension() {
            return Err(Error::InvalidParam {
                field: "nominal_com_height_h",
                message: format!(
                    "com height unreachable: {} >= thigh + shank + ankle = {}",
                    self.nominal_com_height_h,
                    self.max_leg_extension()
                ),
            });
        }
        if !(0.0..=0.5).contains(&self.double_support_ratio) {
            return Err(Error::InvalidParam {
                field: "double_support_ratio",
                message: format!(
                    "double_support_ratio must lie in [0, 0.5] (got {})",
                    self.double_support_ratio
                ),
            });
        }
        Ok(self)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let p: RobotParams = serde_json::from_str(s).map_err(|e| Error::Parse {
            message: format!("robot config: {e}"),
        })?;
        p.validate()?;
        Ok(p)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }
}

/// Returns the parameters unchanged if every invariant holds.
pub fn validate_params(p: RobotParams) -> Result<RobotParams> {
    p.validate()?;
    Ok(p)
}

/// Desired planar walk velocity: sagittal, lateral and turn rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaitCommand {
    pub vx: f64,
    pub vy: f64,
    pub omega: f64,
}

impl GaitCommand {
    pub fn new(vx: f64, vy: f64, omega: f64) -> Self {
        Self { vx, vy, omega }
    }

    /// Velocity limits implied by the per-step displacement limits.
    pub fn limits(p: &RobotParams) -> (f64, f64, f64) {
        (
            p.max_step_len / p.step_duration_t,
            p.max_step_width / p.step_duration_t,
            p.max_step_yaw / p.step_duration_t,
        )
    }

    pub fn check_within_limits(&self, p: &RobotParams, tolerance: f64) -> Result<()> {
        let (vx_max, vy_max, om_max) = Self::limits(p);
        if self.vx.abs() > vx_max + tolerance {
            return Err(Error::CommandLimit {
                axis: "vx",
                value: self.vx,
                limit: vx_max,
            });
        }
        if self.vy.abs() > vy_max + tolerance {
            return Err(Error::CommandLimit {
                axis: "vy",
                value: self.vy,
                limit: vy_max,
            });
        }
        if self.omega.abs() > om_max + tolerance {
            return Err(Error::CommandLimit {
                axis: "omega",
                value: self.omega,
                limit: om_max,
            });
        }
        Ok(())
    }

    /// The command with lateral velocity and turn rate negated.
    pub fn mirrored(&self) -> GaitCommand {
        GaitCommand::new(self.vx, -self.vy, -self.omega)
    }
}

/// One planned foot placement with its step interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Footstep {
    pub pos_x: f64,
    pub pos_y: f64,
    pub yaw: f64,
    pub side: Side,
    pub t_start: f64,
    pub t_end: f64,
}

impl Footstep {
    pub fn frame(&self) -> FrameTransform {
        FrameTransform::from_xyz_yaw(self.pos_x, self.pos_y, 0.0, self.yaw)
    }
}

/// Uniformly sampled planar ZMP reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZmpReference {
    pub dt: f64,
    /// `(px, py)` pairs.
    pub samples: Vec<[f64; 2]>,
}

impl ZmpReference {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn validate(&self, p: &RobotParams) -> Result<()> {
        if self.samples.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        if (self.dt - p.dt).abs() > 1e-12 {
            return Err(Error::InvalidParam {
                field: "dt",
                message: format!("reference dt {} != robot dt {}", self.dt, p.dt),
            });
        }
        Ok(())
    }

    pub fn axis(&self, axis: Axis) -> Vec<f64> {
        let i = match axis {
            Axis::X => 0,
            Axis::Y => 1,
        };
        self.samples.iter().map(|s| s[i]).collect()
    }
}

/// One CoM sample: position and acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComSample {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub ax: f64,
    pub ay: f64,
    pub az: f64,
}

/// Uniformly sampled 3-D CoM trajectory with accelerations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComTrajectory {
    pub dt: f64,
    pub samples: Vec<ComSample>,
}

impl ComTrajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn validate(&self, p: &RobotParams) -> Result<()> {
        for (i, s) in self.samples.iter().enumerate() {
            if !(s.z > 0.0) {
                return Err(Error::InvalidParam {
                    field: "z",
                    message: format!("z must be positive at sample {i} (got {})", s.z),
                });
            }
            let denom = p.gravity_g + s.az;
            if denom <= SINGULARITY_EPS {
                return Err(Error::SingularityGuard {
                    index: Some(i),
                    value: denom,
                    eps: SINGULARITY_EPS,
                });
            }
        }
        Ok(())
    }
}

/// Trunk-attitude PD state for the active balance correction.
///
/// Carries controller memory; one instance owns one walk session. An
/// integral gain is reserved but defaults to zero, making the controller PD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceState {
    pub trunk_pitch_meas: f64,
    pub trunk_roll_meas: f64,
    pub trunk_pitch_des: f64,
    pub trunk_roll_des: f64,
    pub kp: f64,
    pub kd: f64,
    pub ki: f64,
    /// Correction angles are clamped to this magnitude (rad).
    pub max_correction: f64,
    pub prev_pitch_err: f64,
    pub prev_roll_err: f64,
    pub integral_pitch_err: f64,
    pub integral_roll_err: f64,
}

impl BalanceState {
    pub fn new(kp: f64, kd: f64) -> Self {
        Self {
            trunk_pitch_meas: 0.0,
            trunk_roll_meas: 0.0,
            trunk_pitch_des: 0.0,
            trunk_roll_des: 0.0,
            kp,
            kd,
            ki: 0.0,
            max_correction: 0.35,
            prev_pitch_err: 0.0,
            prev_roll_err: 0.0,
            integral_pitch_err: 0.0,
            integral_roll_err: 0.0,
        }
    }
}

impl Default for BalanceState {
    fn default() -> Self {
        Self::new(0.3, 0.05)
    }
}
