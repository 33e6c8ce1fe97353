//! Hull of a random ball cloud, with the build counters.
//!
//! cargo run --example build_hull -- 5000

use std::sync::Arc;

use spherehull::bench::{random_cloud, Distribution};
use spherehull::validation::{surface_area, validate, volume};
use spherehull::{build_hull, ToleranceConfig};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2000);
    let config = ToleranceConfig::default();
    let cloud = Arc::new(random_cloud(n, 7, Distribution::Ball));
    let (hull, stats) = build_hull(Arc::clone(&cloud), &config).expect("ball clouds span a volume");

    println!("points          {}", stats.input_count);
    println!("after dedup     {}", stats.dedup_count);
    println!("surface points  {}", stats.surface_count);
    println!("hull vertices   {}", stats.hull_vertex_count);
    println!("hull faces      {}", stats.hull_face_count);
    println!(
        "build time      {:.3} ms",
        stats.elapsed.as_secs_f64() * 1e3
    );
    println!("volume          {:.6}", volume(&hull));
    println!("area            {:.6}", surface_area(&hull));
    let report = validate(&hull, config.containment_eps());
    println!("valid           {}", report.is_ok());
}
