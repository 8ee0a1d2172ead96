//! CSV/JSON export and import. Floats are written with Rust's shortest
//! round-trip formatting, so re-importing reproduces values bit-exactly.

use std::path::Path;

use crate::error::{Error, Result};
use crate::kinematics::LegJoints;
use crate::model::{ComSample, ComTrajectory, RobotParams};
use crate::planner::{FootstepPlan, SupportPhase};
use crate::sim::SimLog;

pub const COM_CSV_HEADER: &str = "t,x,y,z,ax,ay,az";
pub const SOLVE_CSV_HEADER: &str = "t,x,y,z,ax,ay,az,px_check,py_check";
pub const PLAN_CSV_HEADER: &str = "t,px,py,support_side,step_index";
pub const SIM_CSV_HEADER: &str =
    "t,com_x,com_y,com_z,zmp_x,zmp_y,polygon_id,margin,trunk_pitch_proxy,trunk_roll_proxy,balance_pitch,balance_roll,fallen";
pub const JOINTS_CSV_HEADER: &str = "t,l_hip_yaw,l_hip_roll,l_hip_pitch,l_knee_pitch,l_ankle_pitch,l_ankle_roll,r_hip_yaw,r_hip_roll,r_hip_pitch,r_knee_pitch,r_ankle_pitch,r_ankle_roll";

pub fn com_trajectory_to_csv(traj: &ComTrajectory) -> String {
    let mut out = String::from(COM_CSV_HEADER);
    out.push('\n');
    for (i, s) in traj.samples.iter().enumerate() {
        let t = i as f64 * traj.dt;
        out.push_str(&format!(
            "{t},{},{},{},{},{},{}\n",
            s.x, s.y, s.z, s.ax, s.ay, s.az
        ));
    }
    out
}

pub fn com_trajectory_from_csv(text: &str) -> Result<ComTrajectory> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        message: "empty csv".into(),
    })?;
    if header.trim() != COM_CSV_HEADER {
        return Err(Error::Parse {
            message: format!("unexpected header `{header}`"),
        });
    }
    let mut samples = Vec::new();
    let mut times = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Parse {
                message: format!("line {}: expected 7 fields, got {}", lineno + 2, fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim().parse().map_err(|e| Error::Parse {
                message: format!("line {}: bad float `{s}`: {e}", lineno + 2),
            })
        };
        times.push(parse(fields[0])?);
        samples.push(ComSample {
            x: parse(fields[1])?,
            y: parse(fields[2])?,
            z: parse(fields[3])?,
            ax: parse(fields[4])?,
            ay: parse(fields[5])?,
            az: parse(fields[6])?,
        });
    }
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let dt = times[1] - times[0];
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 {
            return Err(Error::Parse {
                message: "non-uniform time axis".into(),
            });
        }
    }
    Ok(ComTrajectory { dt, samples })
}

/// A solved trajectory plus its ZMP check columns.
pub fn solve_to_csv(traj: &ComTrajectory, zmp_check: &[[f64; 2]]) -> String {
    let mut out = String::from(SOLVE_CSV_HEADER);
    out.push('\n');
    for (i, s) in traj.samples.iter().enumerate() {
        let t = i as f64 * traj.dt;
        out.push_str(&format!(
            "{t},{},{},{},{},{},{},{},{}\n",
            s.x, s.y, s.z, s.ax, s.ay, s.az, zmp_check[i][0], zmp_check[i][1]
        ));
    }
    out
}

/// Plan + ZMP reference rows: `t,px,py,support_side,step_index`.
pub fn plan_to_csv(
    plan: &FootstepPlan,
    zmp: &crate::model::ZmpReference,
    p: &RobotParams,
) -> Result<String> {
    let mut out = String::from(PLAN_CSV_HEADER);
    out.push('\n');
    for (i, s) in zmp.samples.iter().enumerate() {
        let t = i as f64 * zmp.dt;
        let (side, step_index) = match plan.phase_at(t, p)? {
            SupportPhase::Single { step, .. } => {
                (plan.steps[step].side.opposite().to_string(), step)
            }
            SupportPhase::Double { incoming } => {
                ("double".to_string(), incoming.min(plan.n_steps() - 1))
            }
        };
        out.push_str(&format!("{t},{},{},{side},{step_index}\n", s[0], s[1]));
    }
    Ok(out)
}

pub fn joints_to_csv(rows: &[(f64, LegJoints, LegJoints)]) -> String {
    let mut out = String::from(JOINTS_CSV_HEADER);
    out.push('\n');
    for (t, l, r) in rows {
        out.push_str(&t.to_string());
        for v in l.as_array().iter().chain(r.as_array().iter()) {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn sim_log_to_csv(log: &SimLog) -> String {
    let mut out = String::from(SIM_CSV_HEADER);
    out.push('\n');
    for r in &log.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.t,
            r.com[0],
            r.com[1],
            r.com[2],
            r.zmp[0],
            r.zmp[1],
            r.polygon_id,
            r.margin,
            r.trunk_pitch_proxy,
            r.trunk_roll_proxy,
            r.balance_pitch,
            r.balance_roll,
            r.fallen
        ));
    }
    out
}

pub fn write_text(path: impl AsRef<Path>, content: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_json<T: serde::Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse {
        message: format!("json serialize: {e}"),
    })?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
