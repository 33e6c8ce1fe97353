//! Convex hull of a bumpy closed mesh: the hull keeps only the outer
//! vertices and always encloses the mesh.

use std::sync::Arc;

use spherehull::bench::bumpy_sphere;
use spherehull::validation::{mesh_volume, validate, volume};
use spherehull::{build_hull, ToleranceConfig};

fn main() {
    let config = ToleranceConfig::default();
    for (subdiv, amplitude) in [(3, 0.1), (4, 0.15), (5, 0.2)] {
        let (cloud, faces) = bumpy_sphere(subdiv, amplitude, 6.0);
        let cloud = Arc::new(cloud);
        let (hull, stats) = build_hull(Arc::clone(&cloud), &config).unwrap();
        println!(
            "subdivision {subdiv}, amplitude {amplitude}: {} mesh vertices -> {} hull vertices ({:.1}%), \
             mesh volume {:.4}, hull volume {:.4}, valid {}, {:.2} ms",
            cloud.len(),
            hull.vertex_count(),
            100.0 * hull.vertex_count() as f64 / cloud.len() as f64,
            mesh_volume(cloud.points(), &faces),
            volume(&hull),
            validate(&hull, config.containment_eps()).is_ok(),
            stats.elapsed.as_secs_f64() * 1e3,
        );
    }
}
