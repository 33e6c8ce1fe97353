//! Mesh checks and independent reference hulls.
//!
//! The brute-force hull and the Graham scan share no code with the
//! incremental builders, so they can serve as ground truth in tests.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{HullError, Result};
use crate::geometry::{orient2d, plane_side, Point2, Point3, PointCloud, ToleranceConfig};
use crate::hull3d::{dedup_points, edge_multiplicities, HullMesh};

/// True iff `p` is behind or within `eps` of every face plane.
pub fn contains_point(hull: &HullMesh, p: Point3, eps: f64) -> bool {
    hull.faces()
        .iter()
        .all(|f| plane_side(f.normal, hull.cloud()[f.vertices[0]], p) <= eps)
}

/// True iff every hull vertex is behind or within `eps` of every face plane.
pub fn is_convex(hull: &HullMesh, eps: f64) -> bool {
    let cloud = hull.cloud();
    hull.faces().iter().all(|f| {
        let v = cloud[f.vertices[0]];
        hull.vertices()
            .iter()
            .all(|&w| plane_side(f.normal, v, cloud[w]) <= eps)
    })
}

/// True iff every face normal points away from the hull centroid.
pub fn is_outward(hull: &HullMesh) -> bool {
    let c = hull.centroid();
    hull.faces()
        .iter()
        .all(|f| plane_side(f.normal, hull.cloud()[f.vertices[0]], c) < 0.0)
}

/// `V - E + F` of a triangle list.
pub fn euler_characteristic(triangles: &[[usize; 3]]) -> i64 {
    let vertices: HashSet<usize> = triangles.iter().flatten().copied().collect();
    let edges = edge_multiplicities(triangles).len();
    vertices.len() as i64 - edges as i64 + triangles.len() as i64
}

/// Closed, consistently oriented, genus-0 triangle surface.
pub fn is_closed_manifold_triangles(triangles: &[[usize; 3]]) -> bool {
    if triangles.is_empty() {
        return false;
    }
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    for t in triangles {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return false;
        }
        for k in 0..3 {
            *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
        }
    }
    // Each directed edge once and its reverse once: every undirected edge
    // has multiplicity two and the windings agree across it.
    let consistent = directed
        .iter()
        .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1));
    consistent && euler_characteristic(triangles) == 2
}

pub fn is_closed_manifold(hull: &HullMesh) -> bool {
    is_closed_manifold_triangles(&hull.triangles())
}

/// Enclosed volume: signed tetrahedra from the centroid to each face.
pub fn volume(hull: &HullMesh) -> f64 {
    let c = hull.centroid();
    let cloud = hull.cloud();
    hull.faces()
        .iter()
        .map(|f| {
            let [a, b, d] = f.vertices.map(|i| cloud[i] - c);
            a.dot(b.cross(d)) / 6.0
        })
        .sum()
}

/// Signed volume enclosed by an arbitrary closed, outward-wound triangle
/// mesh (not necessarily convex).
pub fn mesh_volume(points: &[Point3], triangles: &[[usize; 3]]) -> f64 {
    let Some(&o) = points.first() else {
        return 0.0;
    };
    triangles
        .iter()
        .map(|t| {
            let [a, b, c] = t.map(|i| points[i] - o);
            a.dot(b.cross(c)) / 6.0
        })
        .sum()
}

pub fn surface_area(hull: &HullMesh) -> f64 {
    let cloud = hull.cloud();
    hull.faces()
        .iter()
        .map(|f| {
            let [a, b, c] = f.vertices.map(|i| cloud[i]);
            (b - a).cross(c - a).norm() / 2.0
        })
        .sum()
}

/// Outcome of the full check battery on one hull.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub manifold: bool,
    pub outward: bool,
    pub convex: bool,
    pub contains_all: bool,
    pub euler: i64,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.manifold && self.outward && self.convex && self.contains_all && self.euler == 2
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.manifold {
            out.push("manifold");
        }
        if self.euler != 2 {
            out.push("euler");
        }
        if !self.outward {
            out.push("orientation");
        }
        if !self.convex {
            out.push("convexity");
        }
        if !self.contains_all {
            out.push("containment");
        }
        out
    }
}

/// Runs every check; containment covers all active points of the cloud.
pub fn validate(hull: &HullMesh, eps: f64) -> ValidationReport {
    let cloud = hull.cloud();
    let contains_all = (0..cloud.len())
        .filter(|i| !hull.removed().contains(i))
        .all(|i| contains_point(hull, cloud[i], eps));
    ValidationReport {
        manifold: is_closed_manifold(hull),
        outward: is_outward(hull),
        convex: is_convex(hull, eps),
        contains_all,
        euler: euler_characteristic(&hull.triangles()),
    }
}

/// Checks on a raw triangle mesh, for files that may not be hulls at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshReport {
    /// Closed, consistently wound, Euler characteristic 2.
    pub manifold: bool,
    /// Every face normal points away from the vertex centroid.
    pub orientation: bool,
    /// Every vertex is behind or within `eps` of every face plane.
    pub convexity: bool,
}

impl MeshReport {
    pub fn is_ok(&self) -> bool {
        self.manifold && self.orientation && self.convexity
    }
}

/// Validates `triangles` over `points`. Zero-area faces fail orientation
/// and convexity since they have no plane.
pub fn validate_mesh(points: &[Point3], triangles: &[[usize; 3]], eps: f64) -> MeshReport {
    let mut used: Vec<usize> = triangles.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    if triangles.is_empty() || used.last().is_some_and(|&i| i >= points.len()) {
        return MeshReport {
            manifold: false,
            orientation: false,
            convexity: false,
        };
    }
    let c = used.iter().fold(Point3::ZERO, |acc, &i| acc + points[i]) * (1.0 / used.len() as f64);
    let mut orientation = true;
    let mut convexity = true;
    for t in triangles {
        let [a, b, d] = t.map(|i| points[i]);
        let n = (b - a).cross(d - a);
        let len = n.norm();
        if len == 0.0 || !len.is_finite() {
            orientation = false;
            convexity = false;
            continue;
        }
        let n = n * (1.0 / len);
        orientation &= n.dot(a - c) > 0.0;
        convexity &= used.iter().all(|&w| n.dot(points[w] - a) <= eps);
    }
    MeshReport {
        manifold: is_closed_manifold_triangles(triangles),
        orientation,
        convexity,
    }
}

/// Reference hull by exhaustive search over point triples.
///
/// A triple spans a facet when every other point lies on one side of its
/// plane (within `plane_eps`). All points on that plane form the facet; its
/// boundary comes from a Graham scan in the plane and is fanned from its
/// lowest-index vertex. Cost is O(n⁴): meant for clouds of a few dozen
/// points.
pub fn brute_force_hull(
    cloud: impl Into<Arc<PointCloud>>,
    config: &ToleranceConfig,
) -> Result<HullMesh> {
    let cloud = cloud.into();
    let eps = config.containment_eps();
    let idx = dedup_points(&cloud, config.dedup_eps);
    let n = idx.len();
    if n < 4 {
        return Err(HullError::InsufficientPoints {
            needed: 4,
            found: n,
        });
    }
    let pts: Vec<Point3> = idx.iter().map(|&i| cloud[i]).collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut triangles = Vec::new();
    let mut flat = true;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let raw = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
                let len = raw.norm();
                if len <= config.degeneracy_eps {
                    continue;
                }
                let normal = raw / len;
                let (mut above, mut below) = (false, false);
                let mut members = Vec::new();
                for (m, q) in pts.iter().enumerate() {
                    let s = normal.dot(*q - pts[i]);
                    if s > eps {
                        above = true;
                    } else if s < -eps {
                        below = true;
                    } else {
                        members.push(m);
                    }
                    if above && below {
                        break;
                    }
                }
                if above || below {
                    flat = false;
                }
                if (above && below) || (!above && !below) {
                    continue;
                }
                if !seen.insert(members.clone()) {
                    continue;
                }
                let outward = if above { -normal } else { normal };
                triangles.extend(
                    facet_fan(&pts, &members, outward, eps)
                        .into_iter()
                        .map(|t| t.map(|m| idx[m])),
                );
            }
        }
    }
    if flat || triangles.is_empty() {
        return Err(HullError::DegenerateCloud("points are coplanar".into()));
    }
    HullMesh::from_triangles(cloud, &triangles, *config)
}

/// Triangulates one planar facet: boundary polygon CCW as seen from the
/// `outward` side, fanned from its lowest-index vertex. The facet is
/// flattened by dropping the dominant axis of its normal, so in-plane
/// coordinates are copies of the input coordinates.
fn facet_fan(pts: &[Point3], members: &[usize], outward: Point3, eps: f64) -> Vec<[usize; 3]> {
    let k = (0..3)
        .max_by(|&a, &b| outward[a].abs().total_cmp(&outward[b].abs()))
        .unwrap();
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let flat: Vec<Point2> = members
        .iter()
        .map(|&m| Point2::new(pts[m][i], pts[m][j]))
        .collect();
    let mut ring: Vec<usize> = graham_scan(&flat, eps)
        .into_iter()
        .map(|q| members[q])
        .collect();
    if ring.len() < 3 {
        return Vec::new();
    }
    // (i, j) is counter-clockwise seen from +k.
    if outward[k] < 0.0 {
        ring.reverse();
    }
    let start = (0..ring.len()).min_by_key(|&q| ring[q]).unwrap();
    ring.rotate_left(start);
    (1..ring.len() - 1)
        .map(|q| [ring[0], ring[q], ring[q + 1]])
        .collect()
}

/// Graham scan: indices of the strictly convex hull polygon, CCW.
///
/// Vertices within `eps` of the line through their neighbours are dropped.
/// Fewer than three distinct, non-collinear points give fewer than three
/// indices.
pub fn graham_scan(points: &[Point2], eps: f64) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    let pivot = (0..points.len())
        .min_by(|&a, &b| {
            let (p, q) = (points[a], points[b]);
            p.y.total_cmp(&q.y)
                .then(p.x.total_cmp(&q.x))
                .then(a.cmp(&b))
        })
        .unwrap();
    let o = points[pivot];
    let mut rest: Vec<usize> = (0..points.len())
        .filter(|&i| i != pivot && points[i] != o)
        .collect();
    rest.sort_by(|&a, &b| {
        let (pa, pb) = (points[a] - o, points[b] - o);
        let c = pa.cross(pb);
        if c > 0.0 {
            std::cmp::Ordering::Less
        } else if c < 0.0 {
            std::cmp::Ordering::Greater
        } else {
            pa.norm().total_cmp(&pb.norm()).then(a.cmp(&b))
        }
    });
    // On a shared ray (within `eps`) only the farthest point can be a vertex.
    let mut filtered: Vec<usize> = Vec::with_capacity(rest.len());
    for &i in &rest {
        if let Some(&last) = filtered.last() {
            let (a, b) = (points[last] - o, points[i] - o);
            let off_ray = a.cross(b).abs() / a.norm().max(b.norm());
            if off_ray <= eps && a.dot(b) > 0.0 {
                if b.norm() > a.norm() {
                    filtered.pop();
                } else {
                    continue;
                }
            }
        }
        filtered.push(i);
    }

    let turn = |a: usize, b: usize, c: usize| {
        let len = (points[b] - points[a])
            .norm()
            .max((points[c] - points[b]).norm());
        orient2d(points[a], points[b], points[c]) / len.max(f64::MIN_POSITIVE)
    };
    let mut stack = vec![pivot];
    for i in filtered {
        while stack.len() >= 2 && turn(stack[stack.len() - 2], stack[stack.len() - 1], i) <= eps {
            stack.pop();
        }
        stack.push(i);
    }
    // Clean up the seam between the last and first vertices.
    loop {
        let m = stack.len();
        if m < 3 {
            break;
        }
        let bad =
            (0..m).find(|&k| turn(stack[(k + m - 1) % m], stack[k], stack[(k + 1) % m]) <= eps);
        match bad {
            Some(k) => {
                stack.remove(k);
            }
            None => break,
        }
    }
    stack
}

/// Signed shoelace area of the polygon `ring` over `points`.
pub fn polygon_area(points: &[Point2], ring: &[usize]) -> f64 {
    let m = ring.len();
    (0..m)
        .map(|k| points[ring[k]].cross(points[ring[(k + 1) % m]]))
        .sum::<f64>()
        / 2.0
}
