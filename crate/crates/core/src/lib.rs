//! Robust 2D and 3D convex hulls.
//!
//! Hulls are built incrementally after two preliminary steps: every point
//! that is not the support point of some direction from the centroid is
//! culled, and the survivors are projected onto the unit sphere around the
//! centroid. On the sphere no four candidates are coplanar, which keeps the
//! seed tetrahedron and the degeneracy checks well conditioned.
//!
//! ```
//! use spherehull::{build_hull, PointCloud, ToleranceConfig};
//! use spherehull::validation::{validate, volume};
//!
//! let mut pts = Vec::new();
//! for x in [0.0, 1.0] {
//!     for y in [0.0, 1.0] {
//!         for z in [0.0, 1.0] {
//!             pts.push([x, y, z]);
//!         }
//!     }
//! }
//! pts.push([0.5, 0.5, 0.5]);
//! let cloud = PointCloud::from_arrays(&pts).unwrap();
//! let config = ToleranceConfig::default();
//! let (hull, stats) = build_hull(cloud, &config).unwrap();
//! assert_eq!(hull.vertex_count(), 8);
//! assert_eq!(stats.input_count, 9);
//! assert!((volume(&hull) - 1.0).abs() < 1e-12);
//! assert!(validate(&hull, config.containment_eps()).is_ok());
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod hull2d;
pub mod hull3d;
pub mod meshio;
pub mod minkowski;
pub mod support;
pub mod validation;

pub use error::{HullError, Result};
pub use geometry::{Direction3, Point2, Point3, PointCloud, PointCloud2, ToleranceConfig};
pub use hull2d::{build_hull2d, Polygon};
pub use hull3d::{build_hull, BuildStats, ExpansionSpace, HullBuilder, HullFace, HullMesh};
pub use minkowski::{minkowski_cloud, Rotation3};
