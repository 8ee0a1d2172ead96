//! Support polygons and the signed ZMP stability margin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FrameTransform, RobotParams};

/// Planar convex polygon, counterclockwise, used as the support region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPolygon {
    pub vertices: Vec<[f64; 2]>,
}

impl SupportPolygon {
    pub fn from_vertices(vertices: Vec<[f64; 2]>) -> Result<Self> {
        let poly = Self { vertices };
        poly.validate()?;
        Ok(poly)
    }

    /// Footprint rectangle of one foot at its ground pose.
    pub fn foot_rect(frame: &FrameTransform, p: &RobotParams) -> Self {
        let (s, c) = frame.yaw.sin_cos();
        let hl = 0.5 * p.foot_length;
        let hw = 0.5 * p.foot_width;
        let vertices = [(hl, -hw), (hl, hw), (-hl, hw), (-hl, -hw)]
            .iter()
            .map(|(dx, dy)| [frame.x + c * dx - s * dy, frame.y + s * dx + c * dy])
            .collect();
        Self { vertices }
    }

    /// Convex hull (Andrew's monotone chain) of the given points.
    pub fn convex_hull(points: &[[f64; 2]]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegeneratePolygon {
                message: format!("need at least 3 points, got {}", points.len()),
            });
        }
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
        pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);

        let cross =
            |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);

        let mut lower: Vec<[f64; 2]> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<[f64; 2]> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::from_vertices(lower)
    }

    /// Hull of all foot rectangles (the double-support polygon).
    pub fn hull_of_feet(frames: &[FrameTransform], p: &RobotParams) -> Result<Self> {
        let mut corners = Vec::with_capacity(4 * frames.len());
        for f in frames {
            corners.extend(Self::foot_rect(f, p).vertices);
        }
        Self::convex_hull(&corners)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon {
                message: format!("{n} vertices"),
            });
        }
        let mut area2 = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            area2 += a[0] * b[1] - b[0] * a[1];
        }
        if area2 <= 1e-12 {
            return Err(Error::DegeneratePolygon {
                message: format!("area {} not positive (or clockwise winding)", 0.5 * area2),
            });
        }
        for i in 0..n {
            let o = self.vertices[i];
            let a = self.vertices[(i + 1) % n];
            let b = self.vertices[(i + 2) % n];
            let cross = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
            if cross < -1e-12 {
                return Err(Error::DegeneratePolygon {
                    message: format!("non-convex corner at vertex {}", (i + 1) % n),
                });
            }
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let mut area2 = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            area2 += a[0] * b[1] - b[0] * a[1];
        }
        0.5 * area2
    }

    pub fn contains(&self, pt: [f64; 2]) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let cross = (b[0] - a[0]) * (pt[1] - a[1]) - (b[1] - a[1]) * (pt[0] - a[0]);
            if cross < 0.0 {
                return false;
            }
        }
        true
    }
}

fn point_segment_distance(pt: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [pt[0] - a[0], pt[1] - a[1]];
    let len_sq = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len_sq > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len_sq).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let closest = [a[0] + t * ab[0], a[1] + t * ab[1]];
    ((pt[0] - closest[0]).powi(2) + (pt[1] - closest[1]).powi(2)).sqrt()
}

/// Signed Euclidean distance from a point to the polygon boundary, positive
/// inside.
pub fn zmp_margin(pt: [f64; 2], poly: &SupportPolygon) -> Result<f64> {
    poly.validate()?;
    let n = poly.vertices.len();
    let mut dist = f64::INFINITY;
    for i in 0..n {
        let a = poly.vertices[i];
        let b = poly.vertices[(i + 1) % n];
        dist = dist.min(point_segment_distance(pt, a, b));
    }
    Ok(if poly.contains(pt) { dist } else { -dist })
}
