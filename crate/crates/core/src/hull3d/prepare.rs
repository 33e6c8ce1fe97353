//! Preliminary stage: deduplication, radial support culling, and the
//! pivot scan that picks the seed tetrahedron.

use std::collections::HashMap;

use crate::error::{HullError, Result};
use crate::geometry::{Direction3, Point3};
use crate::support::SupportIndex;

/// Greedy first-occurrence dedup of `points[subset]` on a hash grid with
/// cell size `eps`. A point is dropped when an already-kept point lies
/// within `eps` (Euclidean).
pub(crate) fn dedup_subset(points: &[Point3], subset: &[usize], eps: f64) -> Vec<usize> {
    let cell = |p: Point3| {
        [
            (p.x / eps).floor() as i64,
            (p.y / eps).floor() as i64,
            (p.z / eps).floor() as i64,
        ]
    };
    let mut grid: HashMap<[i64; 3], Vec<usize>> = HashMap::with_capacity(subset.len());
    let mut kept = Vec::with_capacity(subset.len());
    for &i in subset {
        let p = points[i];
        let c = cell(p);
        let mut clash = false;
        'scan: for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let key = [
                        c[0].saturating_add(dx),
                        c[1].saturating_add(dy),
                        c[2].saturating_add(dz),
                    ];
                    if let Some(bucket) = grid.get(&key) {
                        if bucket.iter().any(|&j| points[j].distance(p) <= eps) {
                            clash = true;
                            break 'scan;
                        }
                    }
                }
            }
        }
        if !clash {
            grid.entry(c).or_default().push(i);
            kept.push(i);
        }
    }
    kept
}

/// Support points for the ray from `center` through every point of
/// `subset`, returned in subset order without repeats.
pub(crate) fn cull_subset(
    points: &[Point3],
    subset: &[usize],
    center: Point3,
    degeneracy_eps: f64,
) -> Result<Vec<usize>> {
    let index = SupportIndex::new(points, subset);
    let mut hit = vec![false; points.len()];
    let mut any = false;
    let mut hint = None;
    for &i in index.tree_order() {
        let ray = points[i] - center;
        if ray.norm() <= degeneracy_eps {
            continue;
        }
        let Some(d) = Direction3::normalize(ray) else {
            continue;
        };
        any = true;
        let s = index.query_from(d, hint).expect("index is non-empty");
        hit[s] = true;
        hint = Some((s, points[s]));
    }
    if !any {
        return Err(HullError::DegenerateCloud(
            "all points coincide with the centroid".into(),
        ));
    }
    Ok(subset.iter().copied().filter(|&i| hit[i]).collect())
}

/// How far a pivot scan got before running out of candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SeedFailure {
    Coincident,
    Collinear,
    Coplanar,
}

impl SeedFailure {
    pub fn into_error(self) -> HullError {
        HullError::DegenerateCloud(
            match self {
                SeedFailure::Coincident => "all points coincide",
                SeedFailure::Collinear => "points are collinear; no 2D or 3D hull exists",
                SeedFailure::Coplanar => {
                    "points are coplanar; use the 2D hull (`hull 2d`) for planar input"
                }
            }
            .into(),
        )
    }
}

/// First affinely independent quadruple in `candidates` order. Every
/// coordinate set in `spaces` must separate the points by more than `eps`:
/// distinct points, third point off the line, fourth point off the plane.
pub(crate) fn find_seed(
    candidates: &[usize],
    spaces: &[&[Point3]],
    eps: f64,
) -> std::result::Result<[usize; 4], SeedFailure> {
    let Some(&a) = candidates.first() else {
        return Err(SeedFailure::Coincident);
    };
    let separated = |test: &dyn Fn(&[Point3]) -> bool| spaces.iter().all(|s| test(s));

    let b = candidates
        .iter()
        .copied()
        .find(|&b| separated(&|s| s[a].distance(s[b]) > eps))
        .ok_or(SeedFailure::Coincident)?;
    let c = candidates
        .iter()
        .copied()
        .find(|&c| {
            separated(&|s| {
                let ab = s[b] - s[a];
                ab.cross(s[c] - s[a]).norm() / ab.norm() > eps
            })
        })
        .ok_or(SeedFailure::Collinear)?;
    let d = candidates
        .iter()
        .copied()
        .find(|&d| {
            separated(&|s| {
                let n = (s[b] - s[a]).cross(s[c] - s[a]);
                (n.dot(s[d] - s[a]) / n.norm()).abs() > eps
            })
        })
        .ok_or(SeedFailure::Coplanar)?;
    Ok([a, b, c, d])
}
