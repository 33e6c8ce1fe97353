//! Planar hulls by the same recipe as in 3D: centroid, radial support
//! culling, projection onto the unit circle, and incremental edge
//! expansion. On the circle every surface point is in convex position, and
//! around an interior centre the circle order is the hull order, so the
//! polygon found there carries over to the original coordinates.

use crate::error::{HullError, Result};
use crate::geometry::{centroid_of, orient2d, Point2, Point3, PointCloud2, ToleranceConfig};
use crate::hull3d::{cull_subset, dedup_subset};

/// Convex polygon as counter-clockwise indices into a [`PointCloud2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<usize>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self, cloud: &PointCloud2) -> f64 {
        crate::validation::polygon_area(cloud.points(), &self.vertices)
    }

    /// True iff `p` is left of or within `eps` of every edge.
    pub fn contains(&self, cloud: &PointCloud2, p: Point2, eps: f64) -> bool {
        let m = self.vertices.len();
        (0..m).all(|k| {
            let (a, b) = (cloud[self.vertices[k]], cloud[self.vertices[(k + 1) % m]]);
            edge_distance(a, b, p) >= -eps
        })
    }

    /// Every turn is a strict left turn beyond `eps`.
    pub fn is_strictly_convex(&self, cloud: &PointCloud2, eps: f64) -> bool {
        let m = self.vertices.len();
        m >= 3
            && (0..m).all(|k| {
                let [a, b, c] = [k + m - 1, k, k + 1].map(|j| cloud[self.vertices[j % m]]);
                turn(a, b, c) > eps
            })
    }
}

/// Signed distance of `p` from the line `a -> b`; positive on the left.
fn edge_distance(a: Point2, b: Point2, p: Point2) -> f64 {
    orient2d(a, b, p) / (b - a).norm()
}

/// Left-turn measure at `b`, scaled to a distance.
fn turn(a: Point2, b: Point2, c: Point2) -> f64 {
    let len = (b - a).norm().max((c - b).norm());
    orient2d(a, b, c) / len.max(f64::MIN_POSITIVE)
}

/// Inserts `p` into the CCW ring over `geo`. Returns false when `p` sees no
/// edge by more than `eps`.
fn insert(ring: &mut Vec<usize>, geo: &[Point2], p: usize, eps: f64) -> Result<bool> {
    let m = ring.len();
    let q = geo[p];
    let sees: Vec<bool> = (0..m)
        .map(|k| edge_distance(geo[ring[k]], geo[ring[(k + 1) % m]], q) < -eps)
        .collect();
    let count = sees.iter().filter(|&&s| s).count();
    if count == 0 {
        return Ok(false);
    }
    if count == m {
        return Err(HullError::BrokenHorizon { point: p });
    }
    // First visible edge after a hidden one; the run must be contiguous.
    let first = (0..m).find(|&k| sees[k] && !sees[(k + m - 1) % m]).unwrap();
    if (0..count).any(|j| !sees[(first + j) % m]) {
        return Err(HullError::BrokenHorizon { point: p });
    }
    // Edges first..first+count-1 are replaced by two edges through p; the
    // vertices strictly inside that run disappear.
    let keep_from = (first + count) % m;
    let mut next = Vec::with_capacity(m - count + 2);
    for j in 0..=(m - count) {
        next.push(ring[(keep_from + j) % m]);
    }
    next.push(p);
    *ring = next;
    Ok(true)
}

fn seed_triangle(candidates: &[usize], spaces: &[&[Point2]], eps: f64) -> Option<[usize; 3]> {
    let &a = candidates.first()?;
    let b = candidates
        .iter()
        .copied()
        .find(|&b| spaces.iter().all(|s| (s[b] - s[a]).norm() > eps))?;
    let c = candidates.iter().copied().find(|&c| {
        spaces
            .iter()
            .all(|s| edge_distance(s[a], s[b], s[c]).abs() > eps)
    })?;
    Some([a, b, c])
}

fn grow(geo: &[Point2], seed: [usize; 3], order: &[usize], eps: f64) -> Result<Vec<usize>> {
    let [a, b, c] = seed;
    let mut ring = if orient2d(geo[a], geo[b], geo[c]) > 0.0 {
        vec![a, b, c]
    } else {
        vec![a, c, b]
    };
    for &p in order {
        if !seed.contains(&p) {
            insert(&mut ring, geo, p, eps)?;
        }
    }
    Ok(ring)
}

/// Counter-clockwise, strictly convex hull polygon of `cloud`.
pub fn build_hull2d(cloud: &PointCloud2, config: &ToleranceConfig) -> Result<Polygon> {
    config.validate()?;
    let eps = config.containment_eps();
    let pts = cloud.points();
    let lifted: Vec<Point3> = pts.iter().map(|p| p.lift()).collect();
    let all: Vec<usize> = (0..pts.len()).collect();

    let kept = dedup_subset(&lifted, &all, config.dedup_eps);
    if kept.len() < 3 {
        return Err(HullError::InsufficientPoints {
            needed: 3,
            found: kept.len(),
        });
    }
    let center = centroid_of(kept.iter().map(|&i| lifted[i]))?;
    let center = Point2::new(center.x, center.y);
    let surface = cull_subset(&lifted, &kept, center.lift(), config.degeneracy_eps)?;

    let mut circle = pts.to_vec();
    for &i in &surface {
        let r = pts[i] - center;
        circle[i] = center + r * (1.0 / r.norm());
    }

    let mut ring = match seed_triangle(&surface, &[&circle, pts], eps) {
        Some(seed) => {
            let ring = grow(&circle, seed, &surface, eps)?;
            let poly = Polygon { vertices: ring };
            if poly.vertices.len() >= 3
                && (0..poly.len()).all(|k| {
                    let m = poly.len();
                    let [a, b, c] = [k + m - 1, k, k + 1].map(|j| pts[poly.vertices[j % m]]);
                    turn(a, b, c) >= -eps
                })
            {
                poly.vertices
            } else {
                // The centroid fell outside the culled polygon, so circle
                // order is not hull order. Redo the expansion directly.
                let seed = seed_triangle(&poly.vertices, &[pts], eps)
                    .or_else(|| seed_triangle(&kept, &[pts], eps))
                    .ok_or_else(collinear)?;
                grow(pts, seed, &surface, eps)?
            }
        }
        None => {
            let seed = seed_triangle(&kept, &[pts], eps).ok_or_else(collinear)?;
            grow(pts, seed, &surface, eps)?
        }
    };

    // Containment: insert anything the culling missed.
    for &i in &kept {
        if !ring.contains(&i) {
            insert(&mut ring, pts, i, eps)?;
        }
    }

    // Drop vertices that are collinear with their neighbours.
    loop {
        let m = ring.len();
        if m < 3 {
            return Err(collinear());
        }
        let flat = (0..m).find(|&k| {
            let [a, b, c] = [k + m - 1, k, k + 1].map(|j| pts[ring[j % m]]);
            turn(a, b, c) <= eps
        });
        match flat {
            Some(k) => {
                ring.remove(k);
            }
            None => break,
        }
    }
    Ok(Polygon { vertices: ring })
}

fn collinear() -> HullError {
    HullError::DegenerateCloud("points are collinear".into())
}
