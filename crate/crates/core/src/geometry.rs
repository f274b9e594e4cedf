//! Cone partitions, bisector projections, canonical triangles, and the
//! general-position check.
//!
//! Azimuths are measured clockwise from the upward vertical, so cone 0's
//! bisector points straight up and indices grow clockwise. All predicates
//! reject inputs inside a 1e-9 rad band around a degenerate direction
//! instead of snapping them.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Angular tolerance (radians) for boundary and general-position degeneracy.
pub const ANGULAR_TOL: f64 = 1e-9;

/// Pairs closer than this are treated as duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Azimuth of a direction vector: radians clockwise from the upward
/// vertical, in (-pi, pi].
pub fn azimuth(d: Point) -> f64 {
    d.x.atan2(d.y)
}

/// Unit vector at the given azimuth.
pub fn unit(az: f64) -> Point {
    Point::new(az.sin(), az.cos())
}

/// The cone partition: `m` cones of aperture `theta = 2*pi/m` around every
/// vertex, cone 0 bisected by the upward vertical.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSystem {
    m: u32,
    theta: f64,
}

impl ConeSystem {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidConeCount(m));
        }
        Ok(Self {
            m,
            theta: TAU / m as f64,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Azimuth of cone `i`'s bisector.
    pub fn bisector_azimuth(&self, i: u32) -> f64 {
        i as f64 * self.theta
    }

    pub fn bisector(&self, i: u32) -> Point {
        unit(self.bisector_azimuth(i))
    }

    /// Index of the cone of `apex` containing `target`, rejecting targets
    /// within [`ANGULAR_TOL`] of a boundary ray.
    pub fn cone_index(&self, apex: Point, target: Point) -> Result<u32> {
        let d = target.sub(apex);
        if d.x == 0.0 && d.y == 0.0 {
            return Err(Error::DuplicatePoint);
        }
        let shifted = (azimuth(d) + self.theta / 2.0).rem_euclid(TAU);
        let i = (shifted / self.theta).floor() as i64;
        let within = shifted - i as f64 * self.theta;
        if within.min(self.theta - within) < ANGULAR_TOL {
            return Err(Error::BoundaryDegeneracy {
                tolerance: ANGULAR_TOL,
            });
        }
        Ok((i.rem_euclid(self.m as i64)) as u32)
    }

    /// Length of the projection of `apex -> target` onto the bisector of the
    /// containing cone: `|apex target| * cos(gamma)`.
    pub fn bisector_distance(&self, apex: Point, target: Point) -> Result<f64> {
        let i = self.cone_index(apex, target)?;
        Ok(target.sub(apex).dot(self.bisector(i)))
    }

    /// The canonical triangle of `(apex, target)`: bounded by the containing
    /// cone's rays and the line through `target` perpendicular to its
    /// bisector.
    pub fn canonical_triangle(&self, apex: Point, target: Point) -> Result<CanonicalTriangle> {
        let i = self.cone_index(apex, target)?;
        let bis = self.bisector(i);
        let d = target.sub(apex);
        let bd = d.dot(bis);
        let half = self.theta / 2.0;
        let reach = bd / half.cos();
        let corner_left = apex.add(unit(self.bisector_azimuth(i) - half).scale(reach));
        let corner_right = apex.add(unit(self.bisector_azimuth(i) + half).scale(reach));
        let cross = d.x * bis.y - d.y * bis.x;
        let alpha = cross.abs().atan2(bd);
        Ok(CanonicalTriangle {
            apex,
            target,
            cone_index: i,
            corner_left,
            corner_right,
            midpoint: apex.add(bis.scale(bd)),
            alpha,
        })
    }

    /// Test every pair against boundary-parallel, bisector-perpendicular,
    /// and duplicate degeneracies. Violations are data, not errors.
    pub fn check_general_position(&self, points: &[Point]) -> GeneralPositionReport {
        let mut violations = Vec::new();
        for a in 0..points.len() {
            for b in (a + 1)..points.len() {
                let d = points[b].sub(points[a]);
                if d.norm() <= DUPLICATE_TOL {
                    violations.push(Violation {
                        a,
                        b,
                        kind: ViolationKind::Duplicate,
                    });
                    continue;
                }
                let line_az = azimuth(d).rem_euclid(PI);
                if self.near_any_direction(line_az, self.theta / 2.0) {
                    violations.push(Violation {
                        a,
                        b,
                        kind: ViolationKind::BoundaryParallel,
                    });
                }
                if self.near_any_direction(line_az, FRAC_PI_2) {
                    violations.push(Violation {
                        a,
                        b,
                        kind: ViolationKind::BisectorPerpendicular,
                    });
                }
            }
        }
        GeneralPositionReport { violations }
    }

    /// True when `line_az` (mod pi) is within tolerance of `offset + i*theta`
    /// (mod pi) for some cone index i.
    fn near_any_direction(&self, line_az: f64, offset: f64) -> bool {
        (0..self.m).any(|i| {
            let dir = (offset + i as f64 * self.theta).rem_euclid(PI);
            let diff = (line_az - dir).rem_euclid(PI);
            diff.min(PI - diff) < ANGULAR_TOL
        })
    }
}

/// Canonical triangle of an ordered vertex pair. `corner_left` is the corner
/// counterclockwise of the bisector as seen from the apex; `alpha` is the
/// unsigned angle between `apex -> target` and `apex -> midpoint`.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalTriangle {
    pub apex: Point,
    pub target: Point,
    pub cone_index: u32,
    pub corner_left: Point,
    pub corner_right: Point,
    pub midpoint: Point,
    pub alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    BoundaryParallel,
    BisectorPerpendicular,
    Duplicate,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub a: usize,
    pub b: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GeneralPositionReport {
    pub violations: Vec<Violation>,
}

impl GeneralPositionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
