//! Hull of the Minkowski sum of a unit cube with rotated copies of itself.

use spherehull::minkowski::{minkowski_cloud, Rotation3};
use spherehull::validation::{validate, volume};
use spherehull::{build_hull, PointCloud, ToleranceConfig};

fn main() {
    let mut corners = Vec::new();
    for x in [0.0, 1.0] {
        for y in [0.0, 1.0] {
            for z in [0.0, 1.0] {
                corners.push([x, y, z]);
            }
        }
    }
    let cube = PointCloud::from_arrays(&corners).unwrap();
    let config = ToleranceConfig::default();

    for degrees in [0.0, 15.0, 30.0, 45.0] {
        let sum = minkowski_cloud(&cube, &cube, &Rotation3::about_z(degrees)).unwrap();
        let (hull, _) = build_hull(sum.clone(), &config).unwrap();
        // Base area of the sum of two unit squares at angle t, times height 2.
        let t = degrees.to_radians();
        let octagon = 2.0 + 2.0 * (t.cos() + t.sin());
        let ok = validate(&hull, config.containment_eps()).is_ok();
        println!(
            "{degrees:>4} deg: {} summed points -> {:>2} vertices, {:>2} faces, volume {:.9} (prism {:.9}), valid {ok}",
            sum.len(),
            hull.vertex_count(),
            hull.face_count(),
            volume(&hull),
            2.0 * octagon,
        );
    }
}
