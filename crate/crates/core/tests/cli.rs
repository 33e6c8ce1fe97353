//! The `hull` binary, driven both in-process and as a subprocess.

use std::fs;
use std::path::Path;
use std::process::Command;

use spherehull::bench::{random_cloud, Distribution};
use spherehull::cli::{run, EXIT_DEGENERATE, EXIT_IO, EXIT_OK, EXIT_VALIDATION};
use spherehull::meshio::{load_obj, save_obj, save_points_csv, save_triangles_obj};
use spherehull::validation::{graham_scan, polygon_area};
use spherehull::{ExpansionSpace, HullBuilder, Point2, PointCloud, ToleranceConfig};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hull(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hull").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cube_cloud() -> PointCloud {
    let mut pts = Vec::new();
    for x in [0.0, 1.0] {
        for y in [0.0, 1.0] {
            for z in [0.0, 1.0] {
                pts.push([x, y, z]);
            }
        }
    }
    pts.push([0.5, 0.5, 0.5]);
    pts.push([0.25, 0.75, 0.5]);
    PointCloud::from_arrays(&pts).unwrap()
}

fn count_prefix(text: &str, prefix: &str) -> usize {
    text.lines().filter(|l| l.starts_with(prefix)).count()
}

#[test]
fn build_writes_the_cube_hull() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cube.csv");
    let output = dir.path().join("hull.obj");
    save_points_csv(&input, &cube_cloud()).unwrap();

    let r = hull(&["build", s(&input), "-o", s(&output)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let text = fs::read_to_string(&output).unwrap();
    assert_eq!(count_prefix(&text, "v "), 8);
    assert_eq!(count_prefix(&text, "f "), 12);
}

#[test]
fn build_stats_line_has_every_counter() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cube.csv");
    let output = dir.path().join("hull.obj");
    save_points_csv(&input, &cube_cloud()).unwrap();

    let r = hull(&["build", s(&input), "-o", s(&output), "--stats", "--normals"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let line = r.stdout.trim();
    let fields: Vec<(&str, &str)> = line
        .split(' ')
        .map(|kv| kv.split_once('=').unwrap())
        .collect();
    let keys: Vec<&str> = fields.iter().map(|f| f.0).collect();
    assert_eq!(
        keys,
        [
            "input",
            "dedup",
            "surface",
            "hull_v",
            "hull_f",
            "elapsed_ms"
        ]
    );
    assert_eq!(fields[0].1, "10");
    assert_eq!(fields[1].1, "10");
    assert_eq!(fields[3].1, "8");
    assert_eq!(fields[4].1, "12");
    let ms: f64 = fields[5].1.parse().unwrap();
    assert!(ms >= 0.0);
    assert_eq!(
        count_prefix(&fs::read_to_string(&output).unwrap(), "vn "),
        12
    );
}

#[test]
fn build_can_write_hull_vertices_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cube.csv");
    let output = dir.path().join("corners.csv");
    save_points_csv(&input, &cube_cloud()).unwrap();
    let r = hull(&["build", s(&input), "-o", s(&output)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let corners = spherehull::meshio::load_points_csv(&output).unwrap();
    assert_eq!(corners.len(), 8);
}

#[test]
fn flat_input_is_degenerate_and_points_to_2d() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("flat.csv");
    let flat = PointCloud::from_arrays(&[
        [0.0, 0.0, 2.0],
        [1.0, 0.0, 2.0],
        [0.0, 1.0, 2.0],
        [1.0, 1.0, 2.0],
        [0.3, 0.6, 2.0],
    ])
    .unwrap();
    save_points_csv(&input, &flat).unwrap();
    let r = hull(&["build", s(&input), "-o", s(&dir.path().join("x.obj"))]);
    assert_eq!(r.code, EXIT_DEGENERATE);
    assert!(
        r.stderr.contains("2D") || r.stderr.contains("2d"),
        "{}",
        r.stderr
    );
}

#[test]
fn missing_or_unreadable_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.obj");
    let r = hull(&["build", s(&dir.path().join("nope.csv")), "-o", s(&out)]);
    assert_eq!(r.code, EXIT_IO);
    assert!(r.stderr.starts_with("error:"));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "x,y,z\n1,2\n").unwrap();
    let r = hull(&["build", s(&bad), "-o", s(&out)]);
    assert_eq!(r.code, EXIT_IO);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    let r = hull(&["build"]);
    assert_eq!(r.code, EXIT_IO);
}

#[test]
fn help_goes_to_stdout() {
    let r = hull(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    for sub in ["build", "validate", "minkowski", "bench", "2d"] {
        assert!(r.stdout.contains(sub), "{sub}");
    }
}

#[test]
fn validate_accepts_a_built_hull() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ball.csv");
    let output = dir.path().join("ball.obj");
    save_points_csv(&input, &random_cloud(300, 4, Distribution::Ball)).unwrap();
    assert_eq!(hull(&["build", s(&input), "-o", s(&output)]).code, EXIT_OK);

    let r = hull(&["validate", s(&output)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(
        r.stdout,
        "manifold: PASS\norientation: PASS\nconvexity: PASS\n"
    );
}

#[test]
fn validate_rejects_a_concave_surface() {
    // Visibility taken on the sphere projections loses convexity here.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dented.obj");
    let (mesh, _) = HullBuilder::new(ToleranceConfig::default())
        .space(ExpansionSpace::Sphere)
        .build(random_cloud(8, 3, Distribution::Ball))
        .unwrap();
    save_obj(&path, &mesh, false).unwrap();

    let r = hull(&["validate", s(&path)]);
    assert_eq!(r.code, EXIT_VALIDATION);
    assert!(r.stdout.contains("manifold: PASS"));
    assert!(r.stdout.contains("convexity: FAIL"));
}

#[test]
fn sphere_space_build_writes_the_same_concave_surface() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("eight.csv");
    let output = dir.path().join("eight.obj");
    save_points_csv(&input, &random_cloud(8, 3, Distribution::Ball)).unwrap();
    let r = hull(&["build", s(&input), "-o", s(&output), "--space", "sphere"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let v = hull(&["validate", s(&output)]);
    assert_eq!(v.code, EXIT_VALIDATION);
    assert!(v.stdout.contains("convexity: FAIL"));
}

#[test]
fn validate_rejects_an_open_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("open.obj");
    // A cube hull with one face missing.
    let (mesh, _) = spherehull::build_hull(cube_cloud(), &ToleranceConfig::default()).unwrap();
    let mut tris = mesh.triangles();
    tris.pop();
    save_triangles_obj(&path, mesh.cloud(), &tris).unwrap();

    let r = hull(&["validate", s(&path)]);
    assert_eq!(r.code, EXIT_VALIDATION);
    assert!(r.stdout.contains("manifold: FAIL"));
}

#[test]
fn minkowski_of_two_cubes() {
    let dir = tempfile::tempdir().unwrap();
    let cube = dir.path().join("cube.obj");
    let out = dir.path().join("sum.obj");
    let (mesh, _) = spherehull::build_hull(cube_cloud(), &ToleranceConfig::default()).unwrap();
    save_obj(&cube, &mesh, false).unwrap();

    let r = hull(&[
        "minkowski",
        s(&cube),
        s(&cube),
        "--rotate-z",
        "45",
        "-o",
        s(&out),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (pts, faces) = load_obj(&out).unwrap();
    let faces = faces.unwrap();
    // Square plus rotated square is an octagon; extruded it gives 16 corners.
    assert_eq!(pts.len(), 16);
    assert!(spherehull::validation::validate_mesh(pts.points(), &faces, 1e-9).is_ok());
    let v = spherehull::validation::mesh_volume(pts.points(), &faces);
    let octagon = 1.0 + 1.0 + 4.0 * std::f64::consts::FRAC_1_SQRT_2 * 1.0;
    assert!((v - 2.0 * octagon).abs() < 1e-9, "{v}");

    let r = hull(&[
        "minkowski",
        s(&cube),
        s(&cube),
        "--rotate-z",
        "-30",
        "-o",
        s(&out),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
}

#[test]
fn bench_writes_one_row_per_size_and_repeat() {
    let r = hull(&["bench", "--sizes", "500:10000:500", "--repeats", "5"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "n,repeat,seed,elapsed_ns,hull_vertices,hull_faces"
    );
    assert_eq!(lines.len(), 101);
}

#[test]
fn bench_output_is_reproducible_apart_from_timings() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let r = hull(&[
            "bench",
            "--sizes",
            "100,200,300",
            "--repeats",
            "2",
            "--seed",
            "9",
            "--csv",
            s(path),
        ]);
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
        assert!(r.stdout.starts_with("records=6 slope="), "{}", r.stdout);
    }
    let strip = |p: &Path| -> Vec<Vec<String>> {
        fs::read_to_string(p)
            .unwrap()
            .lines()
            .map(|l| {
                let mut cols: Vec<String> = l.split(',').map(str::to_owned).collect();
                cols.remove(3);
                cols
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));

    let r = hull(&["bench", "--sizes", "10:5:1"]);
    assert_eq!(r.code, EXIT_IO);
}

#[test]
fn planar_hull_of_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.csv");
    let output = dir.path().join("ring.csv");
    fs::write(&input, "x,y\n0,0\n2,0\n2,2\n0,2\n1,1\n1,0\n0.5,1.5\n").unwrap();
    let r = hull(&["2d", s(&input), "-o", s(&output)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let ring = spherehull::meshio::load_points2_csv(&output).unwrap();
    assert_eq!(ring.len(), 4);
    let all: Vec<usize> = (0..4).collect();
    assert!((polygon_area(ring.points(), &all) - 4.0).abs() < 1e-12);
    assert_eq!(graham_scan(ring.points(), 1e-9).len(), 4);
    for corner in [Point2::new(0.0, 0.0), Point2::new(2.0, 2.0)] {
        assert!(ring.points().contains(&corner));
    }

    let line = dir.path().join("line.csv");
    fs::write(&line, "x,y\n0,0\n1,1\n2,2\n").unwrap();
    assert_eq!(
        hull(&["2d", s(&line), "-o", s(&output)]).code,
        EXIT_DEGENERATE
    );
}

#[test]
fn binary_exit_codes_match_the_library() {
    let exe = env!("CARGO_BIN_EXE_hull");
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cube.csv");
    let output = dir.path().join("cube.obj");
    save_points_csv(&input, &cube_cloud()).unwrap();

    let ok = Command::new(exe)
        .args(["build", s(&input), "-o", s(&output), "--stats"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("input=10 dedup=10 "));

    let missing = Command::new(exe)
        .args(["validate", s(&dir.path().join("none.obj"))])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_IO));
    assert!(!missing.stderr.is_empty());

    let usage = Command::new(exe).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_IO));
}
