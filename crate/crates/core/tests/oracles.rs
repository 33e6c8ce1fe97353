//! Each stage of the pipeline against a naive reimplementation.

use std::collections::BTreeSet;
use std::sync::Arc;

use spherehull::bench::{random_cloud, Distribution};
use spherehull::geometry::{centroid, support_point};
use spherehull::hull3d::{
    cull_interior, dedup_points, edge_multiplicities, horizon_edges, is_single_cycle, visible_faces,
};
use spherehull::validation::{brute_force_hull, validate, volume};
use spherehull::{
    build_hull, Direction3, ExpansionSpace, HullBuilder, HullMesh, Point3, PointCloud,
    ToleranceConfig,
};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn vertex_set(h: &HullMesh) -> BTreeSet<usize> {
    h.vertices().iter().copied().collect()
}

#[test]
fn dedup_matches_quadratic_scan() {
    let mut pts = random_cloud(300, 4, Distribution::Cube).points().to_vec();
    // Near and exact repeats of earlier points.
    for k in 0..100 {
        let p = pts[k * 2];
        pts.push(p + Point3::new(3e-9 * (k % 3) as f64, 0.0, 0.0));
    }
    let cloud = PointCloud::new(pts).unwrap();
    let eps = 1e-8;
    let mut naive = Vec::new();
    for i in 0..cloud.len() {
        if naive
            .iter()
            .all(|&j: &usize| cloud[j].distance(cloud[i]) > eps)
        {
            naive.push(i);
        }
    }
    assert_eq!(dedup_points(&cloud, eps), naive);
    assert_eq!(naive.len(), 300);
}

#[test]
fn support_point_is_argmax() {
    let cloud = random_cloud(500, 9, Distribution::Ball);
    let dirs = random_cloud(100, 10, Distribution::SphereShell);
    for &d in dirs.points() {
        let d = Direction3::normalize(d).unwrap();
        let got = support_point(cloud.points(), d).unwrap();
        let best = cloud
            .points()
            .iter()
            .map(|&p| d.dot(p))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(d.dot(cloud[got]), best);
    }
}

#[test]
fn culled_points_are_extreme_and_cover_the_hull() {
    for seed in 0..20 {
        let cloud = Arc::new(random_cloud(40, seed, Distribution::Ball));
        let all: Vec<usize> = (0..cloud.len()).collect();
        let c = centroid(cloud.points()).unwrap();
        let culled: BTreeSet<usize> = cull_interior(&cloud, &all, c, &cfg())
            .unwrap()
            .into_iter()
            .collect();
        let oracle = vertex_set(&brute_force_hull(Arc::clone(&cloud), &cfg()).unwrap());
        assert!(
            culled.is_subset(&oracle),
            "seed {seed}: culled a non-extreme point"
        );
        assert!(culled.len() >= 4);
    }
}

#[test]
fn visible_faces_match_plane_tests() {
    let cloud = Arc::new(random_cloud(60, 3, Distribution::Ball));
    let (hull, _) = build_hull(Arc::clone(&cloud), &cfg()).unwrap();
    let probes = random_cloud(50, 8, Distribution::SphereShell);
    for &q in probes.points() {
        let q = q * 1.5;
        let got = visible_faces(&hull, q, 1e-9);
        let want: Vec<usize> = hull
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                let [a, b, c] = f.vertices.map(|i| cloud[i]);
                // Unnormalized orientation, independent of stored normals.
                (b - a).cross(c - a).dot(q - a) > 0.0
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(got, want);
        assert!(!got.is_empty());

        // The visible region of a convex hull is a disc: its boundary is
        // one closed loop.
        let tris: Vec<[usize; 3]> = got.iter().map(|&f| hull.faces()[f].vertices).collect();
        let horizon = horizon_edges(&tris);
        assert!(is_single_cycle(&horizon));
        let boundary = edge_multiplicities(&tris)
            .iter()
            .filter(|e| e.multiplicity == 1)
            .count();
        assert_eq!(horizon.len(), boundary);
    }
}

#[test]
fn build_matches_oracle_on_fixed_shapes() {
    let octa = [
        [1., 0., 0.],
        [-1., 0., 0.],
        [0., 1., 0.],
        [0., -1., 0.],
        [0., 0., 1.],
        [0., 0., -1.],
        [0.1, 0.2, 0.3],
        [0.5, 0.0, 0.5],
    ];
    let cloud = Arc::new(PointCloud::from_arrays(&octa).unwrap());
    let (h, _) = build_hull(Arc::clone(&cloud), &cfg()).unwrap();
    let o = brute_force_hull(Arc::clone(&cloud), &cfg()).unwrap();
    assert_eq!(vertex_set(&h), (0..6).collect());
    assert_eq!(vertex_set(&h), vertex_set(&o));
    assert!((volume(&h) - 4.0 / 3.0).abs() < 1e-12);
    assert!((volume(&o) - 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn result_is_invariant_under_permutation() {
    let base = random_cloud(80, 21, Distribution::Ball);
    let (h, _) = build_hull(base.clone(), &cfg()).unwrap();
    let n = base.len();
    for shift in [1, 17, 40] {
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + shift) % n).collect();
        let shuffled = PointCloud::new(perm.iter().map(|&i| base[i]).collect()).unwrap();
        let (g, _) = build_hull(shuffled, &cfg()).unwrap();
        let mapped: BTreeSet<usize> = g.vertices().iter().map(|&k| perm[k]).collect();
        assert_eq!(mapped, vertex_set(&h));
        assert!((volume(&g) - volume(&h)).abs() < 1e-12);
    }
}

#[test]
fn repair_restores_containment_of_a_truncated_hull() {
    let cloud = Arc::new(random_cloud(100, 5, Distribution::SphereShell));
    let (full, _) = build_hull(Arc::clone(&cloud), &cfg()).unwrap();
    // Hull of the first 20 points only, then repaired over the whole cloud.
    let first = PointCloud::new(cloud.points()[..20].to_vec()).unwrap();
    let (partial, _) = build_hull(first, &cfg()).unwrap();
    let over_all =
        HullMesh::from_triangles(Arc::clone(&cloud), &partial.triangles(), cfg()).unwrap();
    assert!(!validate(&over_all, 1e-9).contains_all);
    let repaired = over_all.repair_containment().unwrap();
    assert!(validate(&repaired, 1e-9).is_ok());
    assert_eq!(vertex_set(&repaired), vertex_set(&full));
}

/// Growing the hull with visibility measured on the unit-sphere
/// projections gives a surface that is convex on the sphere but not
/// necessarily in the original coordinates.
fn sphere_space_counterexample() -> (Arc<PointCloud>, HullMesh) {
    let cloud = Arc::new(random_cloud(8, 3, Distribution::Ball));
    let (h, _) = HullBuilder::new(cfg())
        .space(ExpansionSpace::Sphere)
        .build(Arc::clone(&cloud))
        .unwrap();
    (cloud, h)
}

#[test]
fn sphere_space_expansion_can_lose_convexity() {
    let (cloud, sphere) = sphere_space_counterexample();
    let report = validate(&sphere, 1e-9);
    assert!(report.manifold && report.outward);
    assert!(!report.convex);
    let (model, _) = build_hull(cloud, &cfg()).unwrap();
    assert!(validate(&model, 1e-9).is_ok());
    assert!(volume(&model) > volume(&sphere));
}
