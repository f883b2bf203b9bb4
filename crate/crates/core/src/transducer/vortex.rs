//! Circulation of the superfluid velocity field around a quantized vortex.
//!
//! The field is the bare point-vortex profile v = hbar / (m_He rho) along the
//! azimuthal direction, with no core regularization. Coordinates are metres
//! in the plane perpendicular to the vortex line.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature;
use crate::error::{Error, Result};
use crate::units::{constants, Dimension, Quantity};

pub type Point = [f64; 2];

/// Minimum allowed loop-to-center distance, as a fraction of the loop scale.
pub const DEFAULT_MIN_DISTANCE_FRACTION: f64 = 1e-9;

const QUADRATURE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum LoopPath {
    /// Closed polyline; the first vertex is repeated as the last.
    Polyline {
        vertices: Vec<Point>,
    },
    Circle {
        center: Point,
        radius: f64,
    },
    Ellipse {
        center: Point,
        semi_major: f64,
        semi_minor: f64,
        /// Orientation of the major axis, radians.
        rotation: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VortexLoop {
    pub vortex_center: Point,
    pub path: LoopPath,
}

impl VortexLoop {
    pub fn new(vortex_center: Point, path: LoopPath) -> Result<Self> {
        let l = VortexLoop { vortex_center, path };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<()> {
        match &self.path {
            LoopPath::Polyline { vertices } => {
                if vertices.len() < 4 {
                    return Err(Error::domain("polyline loop needs at least three distinct vertices"));
                }
                if vertices.iter().flatten().any(|c| !c.is_finite()) {
                    return Err(Error::domain("polyline vertex is not finite"));
                }
                if vertices.first() != vertices.last() {
                    return Err(Error::domain("polyline loop is not closed (first vertex != last)"));
                }
                if self_intersects(vertices) {
                    return Err(Error::domain("polyline loop intersects itself"));
                }
            }
            LoopPath::Circle { center, radius } => {
                if !(radius.is_finite() && *radius > 0.0) || center.iter().any(|c| !c.is_finite()) {
                    return Err(Error::domain("circle loop needs a finite center and positive radius"));
                }
            }
            LoopPath::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => {
                let ok = semi_major.is_finite()
                    && semi_minor.is_finite()
                    && *semi_major > 0.0
                    && *semi_minor > 0.0
                    && rotation.is_finite()
                    && center.iter().all(|c| c.is_finite());
                if !ok {
                    return Err(Error::domain(
                        "ellipse loop needs finite center, rotation and positive axes",
                    ));
                }
            }
        }
        Ok(())
    }

    /// Characteristic size used to scale the minimum center distance.
    pub fn scale(&self) -> f64 {
        match &self.path {
            LoopPath::Circle { radius, .. } => *radius,
            LoopPath::Ellipse {
                semi_major, semi_minor, ..
            } => semi_major.max(*semi_minor),
            LoopPath::Polyline { vertices } => {
                let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (hi[0] - lo[0]).hypot(hi[1] - lo[1])
            }
        }
    }

    /// Smallest distance from the vortex center to the loop.
    pub fn distance_to_center(&self) -> f64 {
        let c = self.vortex_center;
        match &self.path {
            LoopPath::Circle { center, radius } => ((center[0] - c[0]).hypot(center[1] - c[1]) - radius).abs(),
            LoopPath::Polyline { vertices } => vertices
                .windows(2)
                .map(|w| point_segment_distance(c, w[0], w[1]))
                .fold(f64::INFINITY, f64::min),
            LoopPath::Ellipse { .. } => {
                let n = 4096;
                let dist = |t: f64| {
                    let p = self.ellipse_point(t);
                    (p[0] - c[0]).hypot(p[1] - c[1])
                };
                let step = 2.0 * PI / n as f64;
                let best = (0..n)
                    .map(|i| i as f64 * step)
                    .min_by(|a, b| dist(*a).total_cmp(&dist(*b)))
                    .unwrap_or(0.0);
                // golden-section refinement within the bracketing samples
                let (mut lo, mut hi) = (best - step, best + step);
                let g = 0.5 * (5f64.sqrt() - 1.0);
                for _ in 0..80 {
                    let x1 = hi - g * (hi - lo);
                    let x2 = lo + g * (hi - lo);
                    if dist(x1) < dist(x2) {
                        hi = x2;
                    } else {
                        lo = x1;
                    }
                }
                dist(0.5 * (lo + hi)).min(dist(best))
            }
        }
    }

    fn ellipse_point(&self, t: f64) -> Point {
        match &self.path {
            LoopPath::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => {
                let (s, c) = rotation.sin_cos();
                let (x, y) = (semi_major * t.cos(), semi_minor * t.sin());
                [center[0] + c * x - s * y, center[1] + s * x + c * y]
            }
            _ => unreachable!("ellipse_point on non-ellipse path"),
        }
    }
}

/// Circulation around the loop, with the default minimum center distance.
pub fn circulation(vortex_loop: &VortexLoop) -> Result<Quantity> {
    circulation_with_min_distance(vortex_loop, DEFAULT_MIN_DISTANCE_FRACTION)
}

pub fn circulation_with_min_distance(vortex_loop: &VortexLoop, min_fraction: f64) -> Result<Quantity> {
    vortex_loop.validate()?;
    let min_distance = min_fraction * vortex_loop.scale();
    let distance = vortex_loop.distance_to_center();
    if distance <= min_distance {
        return Err(Error::Singularity { distance, min_distance });
    }

    // Integrate v . dl in units of hbar/m_He; the integrand is d(theta).
    let turns = winding_integral(vortex_loop)?;
    let k = constants();
    (k.hbar / k.m_he4 * turns).ensure(Dimension::CIRCULATION, "circulation")
}

/// The circulation quantum 2 pi hbar / m_He.
pub fn circulation_quantum() -> Quantity {
    let k = constants();
    2.0 * PI * k.hbar / k.m_he4
}

fn azimuthal(center: Point, p: Point, dp: Point) -> f64 {
    let (dx, dy) = (p[0] - center[0], p[1] - center[1]);
    (dx * dp[1] - dy * dp[0]) / (dx * dx + dy * dy)
}

fn winding_integral(l: &VortexLoop) -> Result<f64> {
    let c = l.vortex_center;
    match &l.path {
        LoopPath::Circle { center, radius } => {
            let f = |t: f64| {
                let (s, co) = t.sin_cos();
                let p = [center[0] + radius * co, center[1] + radius * s];
                azimuthal(c, p, [-radius * s, radius * co])
            };
            integrate_closed(f)
        }
        LoopPath::Ellipse {
            semi_major,
            semi_minor,
            rotation,
            ..
        } => {
            let (rs, rc) = rotation.sin_cos();
            let f = |t: f64| {
                let p = l.ellipse_point(t);
                let (dx, dy) = (-semi_major * t.sin(), semi_minor * t.cos());
                azimuthal(c, p, [rc * dx - rs * dy, rs * dx + rc * dy])
            };
            integrate_closed(f)
        }
        LoopPath::Polyline { vertices } => vertices.windows(2).try_fold(0.0, |acc, w| {
            let (a, b) = (w[0], w[1]);
            let d = [b[0] - a[0], b[1] - a[1]];
            let f = |s: f64| azimuthal(c, [a[0] + s * d[0], a[1] + s * d[1]], d);
            let tol = QUADRATURE_TOL / (vertices.len() - 1) as f64;
            Ok(acc + quadrature::integrate(f, 0.0, 1.0, tol)?)
        }),
    }
}

// Split the period into quarters so a sharp peak is bracketed early.
fn integrate_closed<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    (0..4).try_fold(0.0, |acc, i| {
        let a = i as f64 * PI / 2.0;
        Ok(acc + quadrature::integrate(&f, a, a + PI / 2.0, QUADRATURE_TOL / 4.0)?)
    })
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    };
    (a[0] + t * d[0] - p[0]).hypot(a[1] + t * d[1] - p[1])
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Point, b: Point, p: Point, d: f64| {
        d == 0.0 && p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

fn self_intersects(vertices: &[Point]) -> bool {
    let n = vertices.len() - 1;
    for i in 0..n {
        for j in (i + 1)..n {
            // adjacent segments share an endpoint; so do the first and last
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_cross(vertices[i], vertices[i + 1], vertices[j], vertices[j + 1]) {
                return true;
            }
        }
    }
    false
}
