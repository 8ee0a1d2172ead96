//! Biped gait generation on the ZMP / inverted-pendulum model: footstep
//! planning, CoM trajectory solving, swing and balance control, leg
//! kinematics, and a point-mass verification simulator.

pub mod com;
pub mod error;
pub mod export;
pub mod kinematics;
pub mod model;
pub mod planner;
pub mod polygon;
pub mod sim;
pub mod swing;
pub mod tridiag;

pub use error::{Error, ErrorKind, Result};
pub use model::{
    validate_params, Axis, BalanceState, ComSample, ComTrajectory, Footstep, FrameTransform,
    GaitCommand, RobotParams, Side, ZmpReference,
};
