//! Footstep planning, ZMP reference generation and the CoM height profile.
//!
//! The walk timeline: step `k` occupies `[k*T, (k+1)*T)`. A double-support
//! window of width `double_support_ratio * T` is centered on every step
//! exchange instant `k*T`; the swing foot is airborne only between the two
//! windows bracketing its step and touches down exactly when the closing
//! window opens.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Footstep, FrameTransform, GaitCommand, RobotParams, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitMode {
    /// Clamp per-step displacements to the limits (default; planners inside
    /// optimization loops must not abort on boundary candidates).
    Clamp,
    /// Reject commands exceeding the limits.
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannerOptions {
    pub first_swing: Side,
    pub limit_mode: LimitMode,
}

impl Default for PlannerOptions {
    fn default() -> Self {
        Self {
            first_swing: Side::Right,
            limit_mode: LimitMode::Clamp,
        }
    }
}

/// Nominal feet-apart stance centered on the origin.
pub fn default_stance(p: &RobotParams) -> (FrameTransform, FrameTransform) {
    (
        FrameTransform::from_xyz_yaw(0.0, p.hip_offset_y, 0.0, 0.0),
        FrameTransform::from_xyz_yaw(0.0, -p.hip_offset_y, 0.0, 0.0),
    )
}

/// Timed, sided footstep sequence driving the ZMP reference and swing targets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FootstepPlan {
    pub steps: Vec<Footstep>,
    /// (left, right) world frames the walk starts from.
    pub initial_stance: (FrameTransform, FrameTransform),
}

/// Support phase at a given instant of the plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupportPhase {
    /// Inside the double-support window centered on exchange `incoming * T`.
    Double { incoming: usize },
    /// Single support during step `step`; `swing_phase` runs 0..1 over the
    /// airborne window.
    Single { step: usize, swing_phase: f64 },
}

impl FootstepPlan {
    pub fn duration(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.t_end)
    }

    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    fn stance_frame(&self, side: Side) -> FrameTransform {
        match side {
            Side::Left => self.initial_stance.0,
            Side::Right => self.initial_stance.1,
        }
    }

    /// Instant step `k`'s swing foot touches the ground.
    pub fn touchdown_time(&self, k: usize, p: &RobotParams) -> f64 {
        self.steps[k].t_end - p.double_support_half()
    }

    /// World frame the given foot is standing on at time `t` (its most recent
    /// touchdown, or the initial stance).
    pub fn standing_frame(&self, side: Side, t: f64, p: &RobotParams) -> FrameTransform {
        let mut frame = self.stance_frame(side);
        for (k, s) in self.steps.iter().enumerate() {
            if s.side == side && self.touchdown_time(k, p) <= t {
                frame = s.frame();
            }
        }
        frame
    }

    /// The foot supporting step `k` (opposite of the stepping foot), at its
    /// standing location.
    pub fn support_frame(&self, k: usize, p: &RobotParams) -> FrameTransform {
        let _ = p;
        let side = self.steps[k].side.opposite();
        if k == 0 {
            self.stance_frame(side)
        } else {
            self.steps[k - 1].frame()
        }
    }

    pub fn support_center(&self, k: usize, p: &RobotParams) -> [f64; 2] {
        let f = self.support_frame(k, p);
        [f.x, f.y]
    }

    pub fn phase_at(&self, t: f64, p: &RobotParams) -> Result<SupportPhase> {
        let duration = self.duration();
        if !(0.0..=duration + 1e-12).contains(&t) {
            return Err(Error::TimeOutOfRange { t, duration });
        }
        let big_t = p.step_duration_t;
        let dsh = p.double_support_half();
        let n = self.steps.len();
        let k = ((t / big_t).floor() as usize).min(n - 1);
        let local = t - k as f64 * big_t;
        if local < dsh {
            Ok(SupportPhase::Double { incoming: k })
        } else if local >= big_t - dsh {
            Ok(SupportPhase::Double { incoming: k + 1 })
        } else {
            let swing_len = big_t - 2.0 * dsh;
            Ok(SupportPhase::Single {
                step: k,
                swing_phase: ((local - dsh) / swing_len).clamp(0.0, 1.0),
            })
        }
    }

    /// Start and landing frames of step `k`'s swing foot.
    pub fn swing_endpoints(&self, k: usize) -> (FrameTransform, FrameTransform) {
        let side = self.steps[k].side;
        let mut from = self.stance_frame(side);
        for s in self.steps.iter().take(k) {
            if s.side == side {
                from = s.frame();
            }
        }
        (from, self.steps[k].frame())
    }

    /// Body-path yaw at time `t`, linear between step boundaries.
    pub fn body_yaw_at(&self, t: f64, p: &RobotParams) -> f64 {
        let big_t = p.step_duration_t;
        let n = self.steps.len();
        let k = ((t / big_t).floor() as usize).min(n - 1);
        let yaw_start = if k == 0 {
            let (l, r) = self.initial_stance;
            crate::model::wrap_angle(0.5 * (l.yaw + r.yaw))
        } else {
            self.steps[k - 1].yaw
        };
        let yaw_end = self.steps[k].yaw;
        let frac = ((t - k as f64 * big_t) / big_t).clamp(0.0, 1.0);
        let delta = crate::model::wrap_angle(yaw_end - yaw_start);
        crate::model::wrap_angle(yaw_start + frac * delta)
    }

    pub fn validate(&self, p: &RobotParams) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        for (i, s) in self.steps.iter().enumerate() {
            if s.t_end <= s.t_start {
                return Err(Error::InvalidParam {
                    field: "t_end",
                    message: format!("step {i}: t_end {} <= t_start {}", s.t_end, s.t_start),
                });
            }
            if i > 0 {
                let prev = &self.steps[i - 1];
                if (s.t_start - prev.t_end).abs() > 1e-9 {
                    return Err(Error::InvalidParam {
                        field: "t_start",
                        message: format!("step {i} not contiguous with step {}", i - 1),
                    });
                }
                if s.side == prev.side {
                    return Err(Error::InvalidParam {
                        field: "side",
                        message: format!("steps {} and {i} do not alternate sides", i - 1),
                    });
                }
                // Per-step body displacement, reconstructed by removing the
                // lateral hip offsets, must respect the step limits.
                let rot = nalgebra::Rotation2::new(s.yaw);
                let body = nalgebra::Vector2::new(s.pos_x, s.pos_y)
                    - rot * nalgebra::Vector2::new(0.0, s.side.lateral_sign() * p.hip_offset_y);
                let prev_rot = nalgebra::Rotation2::new(prev.yaw);
                let prev_body = nalgebra::Vector2::new(prev.pos_x, prev.pos_y)
                    - prev_rot
                        * nalgebra::Vector2::new(0.0, prev.side.lateral_sign() * p.hip_offset_y);
                let disp = rot.inverse() * (body - prev_body);
                if disp.x.abs() > p.max_step_len + 1e-6 {
                    return Err(Error::InvalidParam {
                        field: "pos_x",
                        message: format!("step {i} sagittal displacement {} over limit", disp.x),
                    });
                }
                if disp.y.abs() > p.max_step_width + 1e-6 {
                    return Err(Error::InvalidParam {
                        field: "pos_y",
                        message: format!("step {i} lateral displacement {} over limit", disp.y),
                    });
                }
                let dyaw = crate::model::wrap_angle(s.yaw - prev.yaw);
                if dyaw.abs() > p.max_step_yaw + 1e-6 {
                    return Err(Error::InvalidParam {
                        field: "yaw",
                        message: format!("step {i} yaw change {dyaw} over limit"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Convert a velocity command into a timed footstep sequence.
///
/// Each step advances the body path by `(vx*T, vy*T)` rotated by the
/// accumulated yaw; the foot lands at the body path offset laterally by
/// `hip_offset_y` toward its side. Displacements are clamped (or the command
/// rejected) per `opts.limit_mode`.
pub fn plan_footsteps(
    cmd: &GaitCommand,
    p: &RobotParams,
    n_steps: usize,
    stance: (FrameTransform, FrameTransform),
    opts: &PlannerOptions,
) -> Result<FootstepPlan> {
    p.validate()?;
    if n_steps < 2 {
        return Err(Error::InvalidParam {
            field: "n_steps",
            message: format!("need at least 2 steps, got {n_steps}"),
        });
    }
    if opts.limit_mode == LimitMode::Reject {
        cmd.check_within_limits(p, 1e-9)?;
    }

    let big_t = p.step_duration_t;
    let dx = (cmd.vx * big_t).clamp(-p.max_step_len, p.max_step_len);
    let dy = (cmd.vy * big_t).clamp(-p.max_step_width, p.max_step_width);
    let dyaw = (cmd.omega * big_t).clamp(-p.max_step_yaw, p.max_step_yaw);

    let (left0, right0) = stance;
    let mut bx = 0.5 * (left0.x + right0.x);
    let mut by = 0.5 * (left0.y + right0.y);
    let mut byaw = crate::model::wrap_angle(0.5 * (left0.yaw + right0.yaw));

    let mut steps = Vec::with_capacity(n_steps);
    let mut side = opts.first_swing;
    for k in 0..n_steps {
        byaw = crate::model::wrap_angle(byaw + dyaw);
        let (s, c) = byaw.sin_cos();
        bx += c * dx - s * dy;
        by += s * dx + c * dy;
        let off = side.lateral_sign() * p.hip_offset_y;
        steps.push(Footstep {
            pos_x: bx - s * off,
            pos_y: by + c * off,
            yaw: byaw,
            side,
            t_start: k as f64 * big_t,
            t_end: (k + 1) as f64 * big_t,
        });
        side = side.opposite();
    }

    let plan = FootstepPlan {
        steps,
        initial_stance: stance,
    };
    plan.validate(p)?;
    Ok(plan)
}

/// Sample the plan's ZMP reference: constant at the support-foot center in
/// single support, linear between the outgoing and incoming support centers
/// across each interior double-support window.
pub fn generate_zmp_reference(plan: &FootstepPlan, p: &RobotParams) -> Result<crate::model::ZmpReference> {
    plan.validate(p)?;
    let duration = plan.duration();
    let n_samples = (duration / p.dt).round() as usize;
    let big_t = p.step_duration_t;
    let dsh = p.double_support_half();
    let n = plan.steps.len();

    let mut samples = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let t = i as f64 * p.dt;
        let zmp = match plan.phase_at(t, p)? {
            SupportPhase::Single { step, .. } => plan.support_center(step, p),
            SupportPhase::Double { incoming } => {
                if incoming == 0 {
                    plan.support_center(0, p)
                } else if incoming >= n {
                    plan.support_center(n - 1, p)
                } else {
                    let from = plan.support_center(incoming - 1, p);
                    let to = plan.support_center(incoming, p);
                    let t_ex = incoming as f64 * big_t;
                    let alpha = if dsh > 0.0 {
                        ((t - (t_ex - dsh)) / (2.0 * dsh)).clamp(0.0, 1.0)
                    } else {
                        1.0
                    };
                    [
                        from[0] + alpha * (to[0] - from[0]),
                        from[1] + alpha * (to[1] - from[1]),
                    ]
                }
            }
        };
        samples.push(zmp);
    }

    Ok(crate::model::ZmpReference { dt: p.dt, samples })
}

/// CoM height profile with accelerations from second central differences
/// (one-sided at the ends).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightProfile {
    pub dt: f64,
    pub z_samples: Vec<f64>,
    pub az_samples: Vec<f64>,
}

impl HeightProfile {
    pub fn len(&self) -> usize {
        self.z_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z_samples.is_empty()
    }

    pub fn constant(h: f64, n: usize, dt: f64) -> Self {
        Self {
            dt,
            z_samples: vec![h; n],
            az_samples: vec![0.0; n],
        }
    }

    /// Differentiate a height signal twice with the central stencil.
    pub fn from_z(z: Vec<f64>, dt: f64) -> Result<Self> {
        let n = z.len();
        if n < 3 {
            return Err(Error::TooFewSamples { needed: 3, got: n });
        }
        let inv = 1.0 / (dt * dt);
        let mut az = vec![0.0; n];
        for i in 1..n - 1 {
            az[i] = (z[i - 1] - 2.0 * z[i] + z[i + 1]) * inv;
        }
        az[0] = (z[0] - 2.0 * z[1] + z[2]) * inv;
        az[n - 1] = (z[n - 3] - 2.0 * z[n - 2] + z[n - 1]) * inv;
        Ok(Self {
            dt,
            z_samples: z,
            az_samples: az,
        })
    }
}

pub const DEFAULT_LEG_MARGIN: f64 = 0.01;

/// Cap the CoM height so the support leg can always reach its foot:
/// `z = min(h, sqrt(L_max^2 - d^2) - margin)` where `d` is the horizontal
/// distance from the grounded foot to the CoM ground projection (the tightest
/// grounded foot during double support).
pub fn compute_height_profile(
    plan: &FootstepPlan,
    com_xy: &[[f64; 2]],
    p: &RobotParams,
) -> Result<HeightProfile> {
    compute_height_profile_with(plan, com_xy, p, DEFAULT_LEG_MARGIN)
}

pub fn compute_height_profile_with(
    plan: &FootstepPlan,
    com_xy: &[[f64; 2]],
    p: &RobotParams,
    margin: f64,
) -> Result<HeightProfile> {
    let l_max = p.max_leg_extension();
    let n = com_xy.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }

    let mut z = Vec::with_capacity(n);
    for (i, com) in com_xy.iter().enumerate() {
        let t = (i as f64 * p.dt).min(plan.duration());
        let grounded: Vec<FrameTransform> = match plan.phase_at(t, p)? {
            SupportPhase::Single { step, .. } => vec![plan.support_frame(step, p)],
            SupportPhase::Double { .. } => vec![
                plan.standing_frame(Side::Left, t, p),
                plan.standing_frame(Side::Right, t, p),
            ],
        };
        let mut zi = p.nominal_com_height_h;
        for foot in grounded {
            let d = ((com[0] - foot.x).powi(2) + (com[1] - foot.y).powi(2)).sqrt();
            if d >= l_max {
                return Err(Error::LegOverextended {
                    index: i,
                    distance: d,
                    max_reach: l_max,
                });
            }
            zi = zi.min((l_max * l_max - d * d).sqrt() - margin);
        }
        z.push(zi);
    }

    HeightProfile::from_z(z, p.dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ZmpReference;
    use approx::assert_relative_eq;

    fn default_plan(cmd: GaitCommand, n: usize) -> (FootstepPlan, RobotParams) {
        let p = RobotParams::default();
        let plan = plan_footsteps(
            &cmd,
            &p,
            n,
            default_stance(&p),
            &PlannerOptions::default(),
        )
        .unwrap();
        (plan, p)
    }

    #[test]
    fn zero_command_steps_in_place() {
        let (plan, p) = default_plan(GaitCommand::new(0.0, 0.0, 0.0), 4);
        assert_eq!(plan.steps.len(), 4);
        for (i, s) in plan.steps.iter().enumerate() {
            let expect_side = if i % 2 == 0 { Side::Right } else { Side::Left };
            assert_eq!(s.side, expect_side);
            assert_relative_eq!(s.pos_x, 0.0, epsilon = 1e-12);
            assert_relative_eq!(
                s.pos_y,
                s.side.lateral_sign() * p.hip_offset_y,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn forward_walk_same_side_spacing() {
        // vx=0.2, T=0.5: consecutive same-side steps advance 0.2 * 2T = 0.2 m.
        let (plan, _) = default_plan(GaitCommand::new(0.2, 0.0, 0.0), 4);
        assert_relative_eq!(
            plan.steps[2].pos_x - plan.steps[0].pos_x,
            0.2,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            plan.steps[3].pos_x - plan.steps[1].pos_x,
            0.2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn yaw_over_limit_rejected_or_clamped() {
        let p = RobotParams::default();
        let cmd = GaitCommand::new(0.0, 0.0, 2.0); // omega*T = 1.0 > 0.5
        let reject = plan_footsteps(
            &cmd,
            &p,
            4,
            default_stance(&p),
            &PlannerOptions {
                limit_mode: LimitMode::Reject,
                ..Default::default()
            },
        );
        match reject {
            Err(Error::CommandLimit { axis, .. }) => assert_eq!(axis, "omega"),
            other => panic!("expected CommandLimit, got {other:?}"),
        }

        let clamped = plan_footsteps(&cmd, &p, 4, default_stance(&p), &PlannerOptions::default())
            .unwrap();
        assert_relative_eq!(clamped.steps[0].yaw, p.max_step_yaw, epsilon = 1e-12);
    }

    #[test]
    fn total_duration_exact() {
        let (plan, p) = default_plan(GaitCommand::new(0.1, 0.02, 0.1), 7);
        assert_eq!(plan.duration(), 7.0 * p.step_duration_t);
    }

    #[test]
    fn mirror_commands_give_mirror_plans() {
        let p = RobotParams::default();
        let cmd = GaitCommand::new(0.12, 0.04, 0.25);
        let plan = plan_footsteps(
            &cmd,
            &p,
            6,
            default_stance(&p),
            &PlannerOptions {
                first_swing: Side::Left,
                ..Default::default()
            },
        )
        .unwrap();
        let mirror = plan_footsteps(
            &cmd.mirrored(),
            &p,
            6,
            default_stance(&p),
            &PlannerOptions {
                first_swing: Side::Right,
                ..Default::default()
            },
        )
        .unwrap();
        for (a, b) in plan.steps.iter().zip(mirror.steps.iter()) {
            assert_eq!(a.side, b.side.opposite());
            assert_relative_eq!(a.pos_x, b.pos_x, epsilon = 1e-12);
            assert_relative_eq!(a.pos_y, -b.pos_y, epsilon = 1e-12);
            assert_relative_eq!(a.yaw, -b.yaw, epsilon = 1e-12);
        }
    }

    #[test]
    fn in_place_zmp_alternates_between_feet() {
        let (plan, p) = default_plan(GaitCommand::new(0.0, 0.0, 0.0), 4);
        let zmp = generate_zmp_reference(&plan, &p).unwrap();
        assert_eq!(zmp.len(), 200);
        // Mid single-support of step 0 (right swings, left supports).
        let mid0 = zmp.samples[25];
        assert_relative_eq!(mid0[1], p.hip_offset_y, epsilon = 1e-12);
        // Mid single-support of step 1 (left swings, right supports).
        let mid1 = zmp.samples[75];
        assert_relative_eq!(mid1[1], -p.hip_offset_y, epsilon = 1e-12);
    }

    #[test]
    fn zero_double_support_is_pure_step_function() {
        let p = RobotParams {
            double_support_ratio: 0.0,
            ..Default::default()
        };
        let plan = plan_footsteps(
            &GaitCommand::new(0.0, 0.0, 0.0),
            &p,
            4,
            default_stance(&p),
            &PlannerOptions::default(),
        )
        .unwrap();
        let zmp = generate_zmp_reference(&plan, &p).unwrap();
        let distinct: std::collections::BTreeSet<i64> = zmp
            .samples
            .iter()
            .map(|s| (s[1] * 1e9).round() as i64)
            .collect();
        assert_eq!(distinct.len(), 2, "expected two plateau levels");
    }

    #[test]
    fn forward_zmp_inside_active_support_polygon() {
        // Brute-force point-in(convex)-polygon oracle over every sample.
        let (plan, p) = default_plan(GaitCommand::new(0.1, 0.0, 0.0), 4);
        let zmp = generate_zmp_reference(&plan, &p).unwrap();
        assert_eq!(zmp.len(), 200);
        for (i, s) in zmp.samples.iter().enumerate() {
            let t = i as f64 * p.dt;
            let feet: Vec<FrameTransform> = match plan.phase_at(t, &p).unwrap() {
                SupportPhase::Single { step, .. } => vec![plan.support_frame(step, &p)],
                SupportPhase::Double { .. } => vec![
                    plan.standing_frame(Side::Left, t, &p),
                    plan.standing_frame(Side::Right, t, &p),
                ],
            };
            let mut corners = Vec::new();
            for f in &feet {
                let (sy, cy) = f.yaw.sin_cos();
                for (dx, dy) in [
                    (0.5 * p.foot_length, 0.5 * p.foot_width),
                    (-0.5 * p.foot_length, 0.5 * p.foot_width),
                    (-0.5 * p.foot_length, -0.5 * p.foot_width),
                    (0.5 * p.foot_length, -0.5 * p.foot_width),
                ] {
                    corners.push([f.x + cy * dx - sy * dy, f.y + sy * dx + cy * dy]);
                }
            }
            assert!(
                point_in_convex_hull(*s, &corners),
                "sample {i} at {s:?} outside hull of {corners:?}"
            );
        }
    }

    fn point_in_convex_hull(pt: [f64; 2], cloud: &[[f64; 2]]) -> bool {
        // The point is in the hull iff no half-plane through two cloud points
        // has all cloud points on one side and pt strictly on the other.
        for (i, a) in cloud.iter().enumerate() {
            for b in cloud.iter().skip(i + 1) {
                let cross = |p: [f64; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                let all_le = cloud.iter().all(|c| cross(*c) <= 1e-12);
                let all_ge = cloud.iter().all(|c| cross(*c) >= -1e-12);
                if all_le && cross(pt) > 1e-9 {
                    return false;
                }
                if all_ge && cross(pt) < -1e-9 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn height_profile_clamps_at_nominal() {
        let (plan, p) = default_plan(GaitCommand::new(0.0, 0.0, 0.0), 4);
        let n = 200;
        // CoM pinned over the left foot: d=0 for the closest grounded foot.
        let com: Vec<[f64; 2]> = (0..n).map(|_| [0.0, p.hip_offset_y]).collect();
        let hp = compute_height_profile(&plan, &com, &p).unwrap();
        for (i, z) in hp.z_samples.iter().enumerate() {
            assert!(
                *z <= p.nominal_com_height_h + 1e-12,
                "z[{i}] = {z} above nominal"
            );
        }
        // At samples where the left foot supports, d = 0 and the clamp wins.
        let idx = 25; // mid single-support of step 0, left foot supporting
        assert_relative_eq!(hp.z_samples[idx], p.nominal_com_height_h, epsilon = 1e-12);
    }

    #[test]
    fn height_profile_formula_value() {
        // L_max = 0.35, d = 0.21, margin 0.01 -> z = sqrt(0.1225 - 0.0441) - 0.01 = 0.27.
        let p = RobotParams {
            thigh_len: 0.16,
            shank_len: 0.14,
            ankle_height: 0.05,
            nominal_com_height_h: 0.33,
            ..Default::default()
        };
        assert_relative_eq!(p.max_leg_extension(), 0.35, epsilon = 1e-12);
        let plan = plan_footsteps(
            &GaitCommand::new(0.0, 0.0, 0.0),
            &p,
            4,
            default_stance(&p),
            &PlannerOptions::default(),
        )
        .unwrap();
        // Keep the CoM 0.21 m from both feet so either grounded set gives the
        // same d: feet sit at y = +-0.05, so x = sqrt(0.21^2 - 0.05^2).
        let x = (0.21f64.powi(2) - p.hip_offset_y.powi(2)).sqrt();
        let com: Vec<[f64; 2]> = (0..200).map(|_| [x, 0.0]).collect();
        let hp = compute_height_profile(&plan, &com, &p).unwrap();
        assert_relative_eq!(hp.z_samples[25], 0.27, epsilon = 1e-12);
    }

    #[test]
    fn constant_height_has_zero_acceleration() {
        let hp = HeightProfile::from_z(vec![0.3; 50], 0.01).unwrap();
        for az in hp.az_samples {
            assert!(az.abs() < 1e-9);
        }
    }

    #[test]
    fn leg_overextension_reports_sample() {
        let (plan, p) = default_plan(GaitCommand::new(0.0, 0.0, 0.0), 4);
        let mut com: Vec<[f64; 2]> = (0..200).map(|_| [0.0, 0.0]).collect();
        com[37] = [10.0, 0.0];
        match compute_height_profile(&plan, &com, &p) {
            Err(Error::LegOverextended { index, .. }) => assert_eq!(index, 37),
            other => panic!("expected LegOverextended, got {other:?}"),
        }
    }

    #[test]
    fn zmp_reference_dt_must_match() {
        let p = RobotParams::default();
        let r = ZmpReference {
            dt: 0.02,
            samples: vec![[0.0, 0.0]],
        };
        assert!(r.validate(&p).is_err());
    }
}
