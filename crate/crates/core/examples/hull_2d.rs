//! Planar hulls, checked against a Graham scan.

use spherehull::bench::{random_cloud_2d, Distribution};
use spherehull::validation::{graham_scan, polygon_area};
use spherehull::{build_hull2d, ToleranceConfig};

fn main() {
    let config = ToleranceConfig::default();
    for dist in Distribution::ALL {
        let cloud = random_cloud_2d(500, 11, dist);
        let poly = build_hull2d(&cloud, &config).unwrap();
        let reference = graham_scan(cloud.points(), config.plane_eps);
        println!(
            "{:<13} {} points -> {:>3} vertices, area {:.6} (Graham: {} vertices, area {:.6})",
            dist.name(),
            cloud.len(),
            poly.len(),
            poly.area(&cloud),
            reference.len(),
            polygon_area(cloud.points(), &reference),
        );
    }
}
