//! Scalar and vector primitives shared by the 2D and 3D hull builders.
//!
//! Everything here is a pure function on `f64` coordinates. Points double as
//! free vectors; [`Direction3`] is the only type that carries a unit-length
//! guarantee.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub};

use crate::error::{HullError, Result};

/// A point (or free vector) in model space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ZERO: Point3 = Point3::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }
}

impl Add for Point3 {
    type Output = Point3;
    #[inline]
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    #[inline]
    fn add_assign(&mut self, o: Point3) {
        self.x += o.x;
        self.y += o.y;
        self.z += o.z;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    #[inline]
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    #[inline]
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Index<usize> for Point3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Point3 index {i} out of range"),
        }
    }
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is CCW of `self`.
    #[inline]
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lifts into the z = 0 plane.
    pub fn lift(self) -> Point3 {
        Point3::new(self.x, self.y, 0.0)
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// A unit vector: a support direction or a face normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction3(Point3);

impl Direction3 {
    /// Accepts `v` only if it is already unit length within 1e-9.
    pub fn try_new(v: Point3) -> Option<Self> {
        let n = v.norm();
        ((n - 1.0).abs() <= 1e-9).then_some(Direction3(v))
    }

    /// Scales `v` to unit length. `None` for zero or non-finite input.
    pub fn normalize(v: Point3) -> Option<Self> {
        let n = v.norm();
        (n > 0.0 && n.is_finite()).then(|| Direction3(v / n))
    }

    pub const X: Direction3 = Direction3(Point3::new(1.0, 0.0, 0.0));
    pub const Y: Direction3 = Direction3(Point3::new(0.0, 1.0, 0.0));
    pub const Z: Direction3 = Direction3(Point3::new(0.0, 0.0, 1.0));

    #[inline]
    pub fn vector(self) -> Point3 {
        self.0
    }

    #[inline]
    pub fn dot(self, p: Point3) -> f64 {
        self.0.dot(p)
    }
}

impl Neg for Direction3 {
    type Output = Direction3;
    fn neg(self) -> Direction3 {
        Direction3(-self.0)
    }
}

/// Tolerances for deduplication, plane-side tests, degeneracy and expansion.
///
/// All distances are in model units. `expansion_eps` is the visibility
/// threshold used while growing a hull: points closer than this to a face
/// plane are absorbed instead of creating new faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub dedup_eps: f64,
    pub plane_eps: f64,
    pub degeneracy_eps: f64,
    pub expansion_eps: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            dedup_eps: 1e-8,
            plane_eps: 1e-9,
            degeneracy_eps: 1e-12,
            expansion_eps: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("dedup_eps", self.dedup_eps),
            ("plane_eps", self.plane_eps),
            ("degeneracy_eps", self.degeneracy_eps),
            ("expansion_eps", self.expansion_eps),
        ];
        for (name, v) in all {
            if !(v > 0.0 && v.is_finite()) {
                return Err(HullError::InvalidTolerance(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.expansion_eps < self.plane_eps {
            return Err(HullError::InvalidTolerance(format!(
                "expansion_eps ({}) must be >= plane_eps ({})",
                self.expansion_eps, self.plane_eps
            )));
        }
        Ok(())
    }

    /// Tolerance that containment and convexity checks on a built hull
    /// should use: points absorbed during expansion may sit this far outside.
    pub fn containment_eps(&self) -> f64 {
        self.plane_eps.max(self.expansion_eps)
    }
}

/// An ordered, finite point list. Hull output refers to it by index only.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    points: Vec<Point3>,
}

impl PointCloud {
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(HullError::NonFinite { index });
        }
        Ok(PointCloud { points })
    }

    pub fn from_arrays(coords: &[[f64; 3]]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point3::from_array).collect())
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<Point3> {
        self.points.get(index).copied()
    }

    /// Appends a point and returns its index.
    pub fn push(&mut self, p: Point3) -> Result<usize> {
        if !p.is_finite() {
            return Err(HullError::NonFinite {
                index: self.points.len(),
            });
        }
        self.points.push(p);
        Ok(self.points.len() - 1)
    }
}

impl std::ops::Index<usize> for PointCloud {
    type Output = Point3;
    fn index(&self, i: usize) -> &Point3 {
        &self.points[i]
    }
}

/// Planar counterpart of [`PointCloud`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud2 {
    points: Vec<Point2>,
}

impl PointCloud2 {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(HullError::NonFinite { index });
        }
        Ok(PointCloud2 { points })
    }

    pub fn from_arrays(coords: &[[f64; 2]]) -> Result<Self> {
        Self::new(coords.iter().map(|c| Point2::new(c[0], c[1])).collect())
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl std::ops::Index<usize> for PointCloud2 {
    type Output = Point2;
    fn index(&self, i: usize) -> &Point2 {
        &self.points[i]
    }
}

/// Arithmetic mean of the points, clamped into their bounding box so that
/// rounding in the sum can never push it outside.
pub fn centroid(points: &[Point3]) -> Result<Point3> {
    centroid_of(points.iter().copied())
}

pub(crate) fn centroid_of(points: impl Iterator<Item = Point3>) -> Result<Point3> {
    let mut sum = Point3::ZERO;
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    let mut n = 0usize;
    for p in points {
        sum += p;
        lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        n += 1;
    }
    if n == 0 {
        return Err(HullError::EmptyInput);
    }
    let c = sum / n as f64;
    Ok(Point3::new(
        c.x.clamp(lo.x, hi.x),
        c.y.clamp(lo.y, hi.y),
        c.z.clamp(lo.z, hi.z),
    ))
}

/// Index of the point with the largest `d · p`; ties go to the lowest index.
pub fn support_point(points: &[Point3], d: Direction3) -> Result<usize> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let v = d.vector();
    let mut best = 0;
    let mut best_dot = v.dot(points[0]);
    for (i, p) in points.iter().enumerate().skip(1) {
        let dot = v.dot(*p);
        if dot > best_dot {
            best = i;
            best_dot = dot;
        }
    }
    Ok(best)
}

/// Moves `p` along the ray from `center` to unit distance.
pub fn project_to_sphere(p: Point3, center: Point3, degeneracy_eps: f64) -> Result<Point3> {
    let ray = p - center;
    let len = ray.norm();
    if len <= degeneracy_eps {
        return Err(HullError::DegeneratePoint);
    }
    Ok(center + ray / len)
}

/// Unit normal of `(b - a) × (c - a)`.
pub fn triangle_normal(a: Point3, b: Point3, c: Point3, degeneracy_eps: f64) -> Result<Direction3> {
    let n = (b - a).cross(c - a);
    if n.norm() <= degeneracy_eps {
        return Err(HullError::DegenerateTriangle);
    }
    Direction3::normalize(n).ok_or(HullError::DegenerateTriangle)
}

/// Signed distance of `p` from the plane through `v` with normal `n`;
/// positive in front of the plane.
#[inline]
pub fn plane_side(n: Direction3, v: Point3, p: Point3) -> f64 {
    n.vector().dot(p - v)
}

/// Six times the signed volume of the tetrahedron `(a, b, c, d)`; positive
/// when `d` is behind the CCW triangle `(a, b, c)`.
#[inline]
pub(crate) fn orient3d(a: Point3, b: Point3, c: Point3, d: Point3) -> f64 {
    (b - a).cross(c - a).dot(a - d)
}

/// Twice the signed area of `(a, b, c)`; positive for a left turn.
#[inline]
pub(crate) fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}
