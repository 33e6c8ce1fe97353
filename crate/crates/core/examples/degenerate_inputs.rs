//! The regression corpus of awkward clouds, plus inputs that have no 3D hull.

use spherehull::bench::degenerate_suite;
use spherehull::validation::{validate, volume};
use spherehull::{build_hull, PointCloud, ToleranceConfig};

fn main() {
    let config = ToleranceConfig::default();
    for case in degenerate_suite() {
        let (hull, _) = build_hull(case.cloud.clone(), &config).expect("corpus clouds are solid");
        let ok = validate(&hull, config.containment_eps()).is_ok();
        println!(
            "{:<18} {:>4} points -> {:>3} vertices, volume {:.6e} (expected {:.6e}), valid {ok}",
            case.name,
            case.cloud.len(),
            hull.vertex_count(),
            volume(&hull),
            case.volume,
        );
    }

    let flat = PointCloud::from_arrays(&[
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 1.0],
        [0.0, 1.0, 1.0],
        [1.0, 1.0, 1.0],
    ])
    .unwrap();
    let line =
        PointCloud::from_arrays(&[[0.0; 3], [1.0; 3], [2.0; 3], [3.0; 3], [4.0; 3]]).unwrap();
    let same = PointCloud::from_arrays(&[[0.5; 3]; 6]).unwrap();
    for (name, cloud) in [
        ("coplanar", flat),
        ("collinear", line),
        ("coincident", same),
    ] {
        match build_hull(cloud, &config) {
            Ok(_) => println!("{name:<18} unexpectedly built"),
            Err(e) => println!("{name:<18} {e}"),
        }
    }
}
