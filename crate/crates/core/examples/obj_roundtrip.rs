//! Save a hull as OBJ, read it back and rebuild from the saved vertices.

use std::sync::Arc;

use spherehull::bench::{random_cloud, Distribution};
use spherehull::meshio::{load_obj, save_obj};
use spherehull::validation::{mesh_volume, volume};
use spherehull::{build_hull, ToleranceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ToleranceConfig::default();
    let cloud = Arc::new(random_cloud(1000, 21, Distribution::SphereShell));
    let (hull, _) = build_hull(cloud, &config)?;

    let dir = std::env::temp_dir().join("spherehull-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("shell.obj");
    save_obj(&path, &hull, true)?;
    println!(
        "wrote {} ({} vertices, {} faces)",
        path.display(),
        hull.vertex_count(),
        hull.face_count()
    );

    let (points, faces) = load_obj(&path)?;
    let faces = faces.ok_or("no faces in the file")?;
    println!("read back {} vertices, {} faces", points.len(), faces.len());
    println!("volume before {:.15}", volume(&hull));
    println!("volume after  {:.15}", mesh_volume(points.points(), &faces));

    let (again, _) = build_hull(points, &config)?;
    println!("rebuilt from the file: {} vertices", again.vertex_count());
    Ok(())
}
