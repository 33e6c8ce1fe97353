//! Minkowski-sum point clouds. The full pairwise product is kept, duplicates
//! and coplanar runs included, which makes the result a handy stress input.

use crate::error::{HullError, Result};
use crate::geometry::{Point3, PointCloud};

/// A 3×3 rotation matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    rows: [[f64; 3]; 3],
}

impl Rotation3 {
    pub const IDENTITY: Rotation3 = Rotation3 {
        rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Counter-clockwise rotation about +z by `degrees`.
    pub fn about_z(degrees: f64) -> Self {
        let (s, c) = degrees.to_radians().sin_cos();
        Rotation3 {
            rows: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Accepts `rows` if `RᵀR = I` entrywise within 1e-9.
    pub fn try_from_matrix(rows: [[f64; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| rows[k][i] * rows[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if !dot.is_finite() || (dot - want).abs() > 1e-9 {
                    return Err(HullError::NotOrthonormal(format!(
                        "column {i} · column {j} = {dot}"
                    )));
                }
            }
        }
        Ok(Rotation3 { rows })
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.rows
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let r = &self.rows;
        Point3::new(
            r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z,
            r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z,
            r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z,
        )
    }
}

impl Default for Rotation3 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// All sums `a[i] + R·b[j]`, ordered by `i` then `j`.
pub fn minkowski_cloud(a: &PointCloud, b: &PointCloud, rotation: &Rotation3) -> Result<PointCloud> {
    if a.is_empty() || b.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let rb: Vec<Point3> = b.points().iter().map(|&p| rotation.apply(p)).collect();
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &p in a.points() {
        out.extend(rb.iter().map(|&q| p + q));
    }
    PointCloud::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_cube() -> PointCloud {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push([x, y, z]);
                }
            }
        }
        PointCloud::from_arrays(&v).unwrap()
    }

    #[test]
    fn pairwise_order() {
        let a = PointCloud::from_arrays(&[[0., 0., 0.], [10., 0., 0.]]).unwrap();
        let b = PointCloud::from_arrays(&[[1., 0., 0.], [2., 0., 0.]]).unwrap();
        let s = minkowski_cloud(&a, &b, &Rotation3::IDENTITY).unwrap();
        let xs: Vec<f64> = s.points().iter().map(|p| p.x).collect();
        assert_eq!(xs, vec![1., 2., 11., 12.]);
    }

    #[test]
    fn cube_plus_point_translates() {
        let t = PointCloud::from_arrays(&[[3., -1., 2.]]).unwrap();
        let cube = unit_cube();
        let s = minkowski_cloud(&cube, &t, &Rotation3::IDENTITY).unwrap();
        for (p, q) in s.points().iter().zip(cube.points()) {
            assert_eq!(*p, *q + t[0]);
        }
        assert_eq!(
            minkowski_cloud(&unit_cube(), &unit_cube(), &Rotation3::IDENTITY)
                .unwrap()
                .len(),
            64
        );
    }

    #[test]
    fn rotation_checks() {
        let r = Rotation3::about_z(90.0);
        let p = r.apply(Point3::new(1., 0., 0.));
        assert!((p - Point3::new(0., 1., 0.)).norm() < 1e-15);
        assert!(Rotation3::try_from_matrix(r.rows()).is_ok());
        assert!(Rotation3::try_from_matrix([[2., 0., 0.], [0., 1., 0.], [0., 0., 1.]]).is_err());
        let empty = PointCloud::new(vec![]).unwrap();
        assert_eq!(
            minkowski_cloud(&empty, &unit_cube(), &r).unwrap_err(),
            HullError::EmptyInput
        );
    }
}
