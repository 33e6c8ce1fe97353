//! File round trips through the OBJ and CSV readers and writers.

use std::fs;
use std::sync::Arc;

use spherehull::bench::{random_cloud, Distribution};
use spherehull::meshio::{
    load_obj, load_points2_csv, load_points_csv, save_obj, save_points2_csv, save_points_csv,
    save_triangles_obj, MeshIoError,
};
use spherehull::validation::{mesh_volume, validate_mesh, volume};
use spherehull::{build_hull, Point2, Point3, PointCloud, ToleranceConfig};

fn unit_cube_with_center() -> PointCloud {
    let mut pts = Vec::new();
    for x in [0.0, 1.0] {
        for y in [0.0, 1.0] {
            for z in [0.0, 1.0] {
                pts.push([x, y, z]);
            }
        }
    }
    pts.push([0.5, 0.5, 0.5]);
    PointCloud::from_arrays(&pts).unwrap()
}

fn count_prefix(text: &str, prefix: &str) -> usize {
    text.lines().filter(|l| l.starts_with(prefix)).count()
}

#[test]
fn cube_hull_writes_eight_vertices_and_twelve_faces() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.obj");
    let (hull, _) = build_hull(unit_cube_with_center(), &ToleranceConfig::default()).unwrap();
    save_obj(&path, &hull, false).unwrap();

    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(count_prefix(&text, "v "), 8);
    assert_eq!(count_prefix(&text, "f "), 12);
    assert_eq!(count_prefix(&text, "vn "), 0);

    // The interior point is dropped and the rest renumbered densely.
    let (cloud, faces) = load_obj(&path).unwrap();
    let faces = faces.unwrap();
    assert_eq!(cloud.len(), 8);
    assert!(faces.iter().flatten().all(|&i| i < 8));
    assert!(validate_mesh(cloud.points(), &faces, 1e-9).is_ok());
    assert!((mesh_volume(cloud.points(), &faces) - 1.0).abs() < 1e-12);
}

#[test]
fn tetrahedron_normals_are_unit_and_outward() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tet.obj");
    let cloud = PointCloud::from_arrays(&[
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ])
    .unwrap();
    let (hull, _) = build_hull(cloud, &ToleranceConfig::default()).unwrap();
    save_obj(&path, &hull, true).unwrap();

    let text = fs::read_to_string(&path).unwrap();
    let normals: Vec<Point3> = text
        .lines()
        .filter_map(|l| l.strip_prefix("vn "))
        .map(|rest| {
            let c: Vec<f64> = rest
                .split_whitespace()
                .map(|t| t.parse().unwrap())
                .collect();
            Point3::new(c[0], c[1], c[2])
        })
        .collect();
    assert_eq!(normals.len(), 4);
    for n in &normals {
        assert!((n.norm() - 1.0).abs() < 1e-12);
    }
    // Each face line names its own normal.
    for (k, line) in text.lines().filter(|l| l.starts_with("f ")).enumerate() {
        let want = format!("//{}", k + 1);
        assert_eq!(line.matches(&want).count(), 3, "{line}");
    }
    let centre = Point3::new(0.25, 0.25, 0.25);
    let (pts, faces) = load_obj(&path).unwrap();
    for (f, n) in faces.unwrap().iter().zip(&normals) {
        assert!(n.dot(pts[f[0]] - centre) > 0.0);
    }
}

#[test]
fn csv_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.csv");
    let cloud = random_cloud(1000, 77, Distribution::Ball);
    save_points_csv(&path, &cloud).unwrap();
    let back = load_points_csv(&path).unwrap();
    assert_eq!(back.len(), 1000);
    for (a, b) in cloud.points().iter().zip(back.points()) {
        assert_eq!(
            a.to_array().map(f64::to_bits),
            b.to_array().map(f64::to_bits)
        );
    }
}

#[test]
fn planar_csv_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.csv");
    let pts: Vec<Point2> = (0..50)
        .map(|k| {
            let t = k as f64 * 0.1257;
            Point2::new(t.cos() / 3.0, t.sin() * 1e-7)
        })
        .collect();
    save_points2_csv(&path, &pts).unwrap();
    let back = load_points2_csv(&path).unwrap();
    assert_eq!(back.points(), &pts[..]);
}

#[test]
fn obj_round_trip_preserves_the_hull() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.obj");
    let cloud = Arc::new(random_cloud(400, 12, Distribution::Ball));
    let (hull, _) = build_hull(Arc::clone(&cloud), &ToleranceConfig::default()).unwrap();
    save_obj(&path, &hull, true).unwrap();
    let (pts, faces) = load_obj(&path).unwrap();
    let faces = faces.unwrap();
    assert_eq!(pts.len(), hull.vertex_count());
    assert_eq!(faces.len(), hull.face_count());
    let v = mesh_volume(pts.points(), &faces);
    assert!((v - volume(&hull)).abs() <= 1e-12 * v);

    // Building again from the saved vertices gives the same shape.
    let (again, _) = build_hull(pts, &ToleranceConfig::default()).unwrap();
    assert_eq!(again.vertex_count(), hull.vertex_count());
    assert!((volume(&again) - v).abs() <= 1e-12 * v);
}

#[test]
fn open_triangle_list_is_written_as_given() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("open.obj");
    let cloud = unit_cube_with_center();
    let tris = [[0, 1, 3], [0, 3, 2]];
    save_triangles_obj(&path, &cloud, &tris).unwrap();
    let (pts, faces) = load_obj(&path).unwrap();
    assert_eq!(pts.len(), 4);
    assert_eq!(faces.unwrap(), vec![[0, 1, 3], [0, 3, 2]]);
}

#[test]
fn read_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("bad.obj");
    fs::write(&obj, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 7\n").unwrap();
    match load_obj(&obj) {
        Err(MeshIoError::IndexOutOfRange { line, index }) => {
            assert_eq!(line, 4);
            assert_eq!(index, 7);
        }
        other => panic!("unexpected {other:?}"),
    }

    let csv = dir.path().join("bad.csv");
    fs::write(&csv, "x,y,z\n1,2,3\n4,five,6\n").unwrap();
    match load_points_csv(&csv) {
        Err(MeshIoError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }

    match load_points_csv(dir.path().join("missing.csv")) {
        Err(MeshIoError::Io(_)) => {}
        other => panic!("unexpected {other:?}"),
    }
}
