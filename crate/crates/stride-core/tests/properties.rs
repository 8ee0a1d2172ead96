//! Property tests for the cross-cutting invariants.

use proptest::prelude::*;
use stride_core::com::compute_zmp;
use stride_core::model::{
    wrap_angle, ComSample, ComTrajectory, FrameTransform, GaitCommand, RobotParams, Side,
};
use stride_core::planner::{
    default_stance, generate_zmp_reference, plan_footsteps, PlannerOptions,
};
use stride_core::polygon::{zmp_margin, SupportPolygon};

fn frame_strategy() -> impl Strategy<Value = FrameTransform> {
    (
        -1.0f64..1.0,
        -1.0f64..1.0,
        -1.0f64..1.0,
        -1.2f64..1.2,
        -1.2f64..1.2,
        -3.0f64..3.0,
    )
        .prop_map(|(x, y, z, r, p, yw)| FrameTransform::new(x, y, z, r, p, yw))
}

proptest! {
    #[test]
    fn wrap_angle_stays_in_range(a in -50.0f64..50.0) {
        let w = wrap_angle(a);
        prop_assert!(w > -std::f64::consts::PI && w <= std::f64::consts::PI);
        // Same angle modulo 2 pi.
        let diff = (a - w) / (2.0 * std::f64::consts::PI);
        prop_assert!((diff - diff.round()).abs() < 1e-9);
    }

    #[test]
    fn frame_compose_identity(t in frame_strategy()) {
        let id = FrameTransform::identity();
        let right = t.compose(&id);
        let left = id.compose(&t);
        for (a, b) in [(right, t), (left, t)] {
            prop_assert!((a.x - b.x).abs() < 1e-12);
            prop_assert!((a.y - b.y).abs() < 1e-12);
            prop_assert!((a.z - b.z).abs() < 1e-12);
            prop_assert!(wrap_angle(a.roll - b.roll).abs() < 1e-12);
            prop_assert!(wrap_angle(a.pitch - b.pitch).abs() < 1e-12);
            prop_assert!(wrap_angle(a.yaw - b.yaw).abs() < 1e-12);
        }
    }

    #[test]
    fn frame_compose_associative(a in frame_strategy(), b in frame_strategy(), c in frame_strategy()) {
        let lhs = a.compose(&b).compose(&c);
        let rhs = a.compose(&b.compose(&c));
        prop_assert!((lhs.x - rhs.x).abs() < 1e-12);
        prop_assert!((lhs.y - rhs.y).abs() < 1e-12);
        prop_assert!((lhs.z - rhs.z).abs() < 1e-12);
        prop_assert!(wrap_angle(lhs.roll - rhs.roll).abs() < 1e-12);
        prop_assert!(wrap_angle(lhs.pitch - rhs.pitch).abs() < 1e-12);
        prop_assert!(wrap_angle(lhs.yaw - rhs.yaw).abs() < 1e-12);
    }

    #[test]
    fn frame_inverse_cancels(t in frame_strategy()) {
        let round = t.compose(&t.inverse());
        prop_assert!((round.x).abs() < 1e-12);
        prop_assert!((round.y).abs() < 1e-12);
        prop_assert!((round.z).abs() < 1e-12);
        prop_assert!(wrap_angle(round.roll).abs() < 1e-12);
        prop_assert!(wrap_angle(round.pitch).abs() < 1e-12);
        prop_assert!(wrap_angle(round.yaw).abs() < 1e-12);
    }

    #[test]
    fn zmp_linear_in_position_and_acceleration(
        x1 in -0.5f64..0.5, ax1 in -4.0f64..4.0,
        x2 in -0.5f64..0.5, ax2 in -4.0f64..4.0,
        alpha in -2.0f64..2.0, beta in -2.0f64..2.0,
        z in 0.1f64..0.5, az in -5.0f64..5.0,
    ) {
        let p = RobotParams::default();
        let make = |x: f64, ax: f64| ComTrajectory {
            dt: p.dt,
            samples: vec![ComSample { x, y: 0.0, z, ax, ay: 0.0, az }],
        };
        let lhs = compute_zmp(&make(alpha * x1 + beta * x2, alpha * ax1 + beta * ax2), &p)
            .unwrap()
            .samples[0][0];
        let p1 = compute_zmp(&make(x1, ax1), &p).unwrap().samples[0][0];
        let p2 = compute_zmp(&make(x2, ax2), &p).unwrap().samples[0][0];
        prop_assert!((lhs - (alpha * p1 + beta * p2)).abs() < 1e-12);
    }

    #[test]
    fn footstep_plans_mirror(
        vx in -0.15f64..0.15,
        vy in -0.05f64..0.05,
        omega in -0.4f64..0.4,
        n in 2usize..8,
    ) {
        let p = RobotParams::default();
        let cmd = GaitCommand::new(vx, vy, omega);
        let plan = plan_footsteps(&cmd, &p, n, default_stance(&p), &PlannerOptions {
            first_swing: Side::Left,
            ..Default::default()
        }).unwrap();
        let mirror = plan_footsteps(&cmd.mirrored(), &p, n, default_stance(&p), &PlannerOptions {
            first_swing: Side::Right,
            ..Default::default()
        }).unwrap();
        for (a, b) in plan.steps.iter().zip(mirror.steps.iter()) {
            prop_assert!(a.side == b.side.opposite());
            prop_assert!((a.pos_x - b.pos_x).abs() < 1e-12);
            prop_assert!((a.pos_y + b.pos_y).abs() < 1e-12);
            prop_assert!(wrap_angle(a.yaw + b.yaw).abs() < 1e-12);
        }
        // Total duration is exact.
        prop_assert_eq!(plan.duration(), n as f64 * p.step_duration_t);
    }

    #[test]
    fn zmp_reference_inside_support_polygon(
        vx in -0.15f64..0.15,
        vy in -0.05f64..0.05,
        omega in -0.4f64..0.4,
    ) {
        let p = RobotParams::default();
        let cmd = GaitCommand::new(vx, vy, omega);
        let plan = plan_footsteps(&cmd, &p, 4, default_stance(&p), &PlannerOptions::default()).unwrap();
        let zmp = generate_zmp_reference(&plan, &p).unwrap();
        for (i, s) in zmp.samples.iter().enumerate() {
            let t = i as f64 * p.dt;
            let (poly, _) = stride_core::sim::support_polygon_at(&plan, t, &p).unwrap();
            let margin = zmp_margin(*s, &poly).unwrap();
            prop_assert!(margin >= 0.0, "sample {} margin {}", i, margin);
        }
    }

    #[test]
    fn convex_hull_contains_all_inputs(
        pts in proptest::collection::vec(
            (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(x, y)| [x, y]),
            3..12,
        )
    ) {
        if let Ok(hull) = SupportPolygon::convex_hull(&pts) {
            for pt in &pts {
                let m = zmp_margin(*pt, &hull).unwrap();
                prop_assert!(m >= -1e-9, "input point {:?} outside hull by {}", pt, m);
            }
        }
    }
}
