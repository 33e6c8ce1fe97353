//! Growing and shrinking a hull one point at a time.

use spherehull::bench::{random_cloud, Distribution};
use spherehull::validation::{validate, volume};
use spherehull::{build_hull, Point3, ToleranceConfig};

fn main() {
    let config = ToleranceConfig::default();
    let (mut hull, _) = build_hull(random_cloud(100, 2, Distribution::Ball), &config).unwrap();
    println!(
        "start:            {:>3} vertices, volume {:.5}",
        hull.vertex_count(),
        volume(&hull)
    );

    hull = hull.insert_point(Point3::new(0.1, 0.0, -0.2)).unwrap();
    println!(
        "interior insert:  {:>3} vertices, volume {:.5}",
        hull.vertex_count(),
        volume(&hull)
    );

    hull = hull.insert_point(Point3::new(0.0, 0.0, 2.5)).unwrap();
    let tip = hull.cloud().len() - 1;
    println!(
        "outside insert:   {:>3} vertices, volume {:.5}, new point is a vertex: {}",
        hull.vertex_count(),
        volume(&hull),
        hull.is_vertex(tip)
    );

    hull = hull.remove_point(tip).unwrap();
    println!(
        "remove it again:  {:>3} vertices, volume {:.5}",
        hull.vertex_count(),
        volume(&hull)
    );

    let v = hull.vertices()[0];
    hull = hull.remove_point(v).unwrap();
    println!(
        "remove vertex {v:>2}: {:>3} vertices, volume {:.5}, valid {}",
        hull.vertex_count(),
        volume(&hull),
        validate(&hull, config.containment_eps()).is_ok()
    );

    match hull.remove_point(v) {
        Ok(_) => println!("second removal unexpectedly succeeded"),
        Err(e) => println!("remove {v} twice:  {e}"),
    }
}
