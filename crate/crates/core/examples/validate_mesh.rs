//! Checking meshes: a built hull, the brute-force reference, a concave
//! surface and an open one.

use std::sync::Arc;

use spherehull::bench::{random_cloud, Distribution};
use spherehull::validation::{brute_force_hull, validate, validate_mesh, volume};
use spherehull::{build_hull, ExpansionSpace, HullBuilder, ToleranceConfig};

fn main() {
    let config = ToleranceConfig::default();
    let eps = config.containment_eps();
    let cloud = Arc::new(random_cloud(60, 5, Distribution::Cube));

    let (hull, _) = build_hull(Arc::clone(&cloud), &config).unwrap();
    let reference = brute_force_hull(Arc::clone(&cloud), &config).unwrap();
    println!("built:      {:?}", validate(&hull, eps));
    println!("reference:  {:?}", validate(&reference, eps));
    println!(
        "volumes:    {:.12} vs {:.12}, same vertices: {}",
        volume(&hull),
        volume(&reference),
        hull.vertices() == reference.vertices()
    );

    // Expansion judged on the sphere projections can dent the surface.
    let (dented, _) = HullBuilder::new(config)
        .space(ExpansionSpace::Sphere)
        .build(random_cloud(8, 3, Distribution::Ball))
        .unwrap();
    println!("dented:     {:?}", validate(&dented, eps).failures());

    let mut open = hull.triangles();
    open.truncate(open.len() - 2);
    println!(
        "open:       {:?}",
        validate_mesh(cloud.points(), &open, eps)
    );
}
