//! Wavefront OBJ (the `v`/`vn`/`f` subset) and plain CSV point files.
//!
//! Coordinates are written with Rust's shortest round-trip formatting, so
//! loading a saved file reproduces every `f64` bit for bit.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::error::HullError;
use crate::geometry::{Point2, Point3, PointCloud, PointCloud2};
use crate::hull3d::HullMesh;

#[derive(Debug, Error)]
pub enum MeshIoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: face index {index} out of range")]
    IndexOutOfRange { line: usize, index: i64 },
    #[error(transparent)]
    Hull(#[from] HullError),
}

pub type Result<T> = std::result::Result<T, MeshIoError>;

fn parse_err(line: usize, message: impl Into<String>) -> MeshIoError {
    MeshIoError::Parse {
        line,
        message: message.into(),
    }
}

/// Vertices and (if the file has any `f` lines) fan-triangulated faces as
/// 0-based indices.
pub type ObjData = (PointCloud, Option<Vec<[usize; 3]>>);

pub fn load_obj(path: impl AsRef<Path>) -> Result<ObjData> {
    parse_obj(BufReader::new(File::open(path)?))
}

pub fn parse_obj(reader: impl BufRead) -> Result<ObjData> {
    let mut verts = Vec::new();
    let mut pending: Vec<(usize, [i64; 3])> = Vec::new();
    let mut saw_face = false;
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("v") => {
                let mut c = [0.0; 3];
                for slot in &mut c {
                    let t = tok
                        .next()
                        .ok_or_else(|| parse_err(line_no, "vertex needs 3 coordinates"))?;
                    *slot = t
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad coordinate `{t}`")))?;
                }
                let p = Point3::from_array(c);
                if !p.is_finite() {
                    return Err(parse_err(line_no, "non-finite coordinate"));
                }
                verts.push(p);
            }
            Some("f") => {
                saw_face = true;
                let mut idx = Vec::new();
                for t in tok {
                    let head = t.split('/').next().unwrap_or("");
                    let i: i64 = head
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad face index `{t}`")))?;
                    // Negative indices count back from the latest vertex.
                    let resolved = if i < 0 { verts.len() as i64 + i } else { i - 1 };
                    if i == 0 || resolved < 0 {
                        return Err(MeshIoError::IndexOutOfRange {
                            line: line_no,
                            index: i,
                        });
                    }
                    idx.push(resolved);
                }
                if idx.len() < 3 {
                    return Err(parse_err(line_no, "face needs at least 3 vertices"));
                }
                for k in 1..idx.len() - 1 {
                    pending.push((line_no, [idx[0], idx[k], idx[k + 1]]));
                }
            }
            _ => {}
        }
    }
    let n = verts.len() as i64;
    let mut faces = Vec::with_capacity(pending.len());
    for (line, t) in pending {
        if let Some(&bad) = t.iter().find(|&&i| i >= n) {
            return Err(MeshIoError::IndexOutOfRange {
                line,
                index: bad + 1,
            });
        }
        faces.push(t.map(|i| i as usize));
    }
    let cloud = PointCloud::new(verts)?;
    Ok((cloud, saw_face.then_some(faces)))
}

/// Writes the hull as a standalone OBJ: only hull vertices, densely
/// re-indexed in ascending source order, and optionally one `vn` per face.
pub fn save_obj(path: impl AsRef<Path>, hull: &HullMesh, emit_normals: bool) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_obj(&mut w, hull, emit_normals)?;
    w.flush()?;
    Ok(())
}

pub fn write_obj(w: &mut impl Write, hull: &HullMesh, emit_normals: bool) -> io::Result<()> {
    let normals: Option<Vec<Point3>> =
        emit_normals.then(|| hull.faces().iter().map(|f| f.normal.vector()).collect());
    write_triangles(w, hull.cloud(), &hull.triangles(), normals.as_deref())
}

/// Writes any triangle mesh over `cloud`, keeping only referenced vertices.
pub fn save_triangles_obj(
    path: impl AsRef<Path>,
    cloud: &PointCloud,
    triangles: &[[usize; 3]],
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_triangles(&mut w, cloud, triangles, None)?;
    w.flush()?;
    Ok(())
}

fn write_triangles(
    w: &mut impl Write,
    cloud: &PointCloud,
    triangles: &[[usize; 3]],
    normals: Option<&[Point3]>,
) -> io::Result<()> {
    let mut used: Vec<usize> = triangles.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let mut dense = vec![usize::MAX; cloud.len()];
    for (k, &i) in used.iter().enumerate() {
        dense[i] = k + 1;
    }
    writeln!(w, "# {} vertices, {} faces", used.len(), triangles.len())?;
    for &i in &used {
        let p = cloud[i];
        writeln!(w, "v {:?} {:?} {:?}", p.x, p.y, p.z)?;
    }
    if let Some(ns) = normals {
        for n in ns {
            writeln!(w, "vn {:?} {:?} {:?}", n.x, n.y, n.z)?;
        }
    }
    for (k, t) in triangles.iter().enumerate() {
        let [a, b, c] = t.map(|i| dense[i]);
        match normals {
            Some(_) => writeln!(w, "f {a}//{n} {b}//{n} {c}//{n}", n = k + 1)?,
            None => writeln!(w, "f {a} {b} {c}")?,
        }
    }
    Ok(())
}

/// Parses numeric CSV rows of exactly `dim` columns. A first line that
/// names the columns (`x,y,z` / `x,y`) is skipped; blank lines are ignored.
fn parse_rows(reader: impl BufRead, dim: usize) -> Result<Vec<Vec<f64>>> {
    let header: &[&str] = &["x", "y", "z"][..dim];
    let mut rows = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if rows.is_empty()
            && fields.len() == dim
            && fields
                .iter()
                .zip(header)
                .all(|(f, h)| f.eq_ignore_ascii_case(h))
        {
            continue;
        }
        if fields.len() != dim {
            return Err(parse_err(
                line_no,
                format!("expected {dim} columns, found {}", fields.len()),
            ));
        }
        let row = fields
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| parse_err(line_no, format!("bad number `{f}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_points_csv(reader: impl BufRead) -> Result<PointCloud> {
    let rows = parse_rows(reader, 3)?;
    Ok(PointCloud::new(
        rows.into_iter()
            .map(|r| Point3::new(r[0], r[1], r[2]))
            .collect(),
    )?)
}

pub fn parse_points2_csv(reader: impl BufRead) -> Result<PointCloud2> {
    let rows = parse_rows(reader, 2)?;
    Ok(PointCloud2::new(
        rows.into_iter().map(|r| Point2::new(r[0], r[1])).collect(),
    )?)
}

pub fn load_points_csv(path: impl AsRef<Path>) -> Result<PointCloud> {
    parse_points_csv(BufReader::new(File::open(path)?))
}

pub fn load_points2_csv(path: impl AsRef<Path>) -> Result<PointCloud2> {
    parse_points2_csv(BufReader::new(File::open(path)?))
}

pub fn write_points_csv(w: &mut impl Write, points: &[Point3]) -> io::Result<()> {
    writeln!(w, "x,y,z")?;
    for p in points {
        writeln!(w, "{:?},{:?},{:?}", p.x, p.y, p.z)?;
    }
    Ok(())
}

pub fn write_points2_csv(w: &mut impl Write, points: &[Point2]) -> io::Result<()> {
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{:?},{:?}", p.x, p.y)?;
    }
    Ok(())
}

pub fn save_points_csv(path: impl AsRef<Path>, cloud: &PointCloud) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_points_csv(&mut w, cloud.points())?;
    w.flush()?;
    Ok(())
}

pub fn save_points2_csv(path: impl AsRef<Path>, points: &[Point2]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_points2_csv(&mut w, points)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obj_triangle() {
        let (cloud, faces) = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n".as_bytes()).unwrap();
        assert_eq!(cloud.len(), 3);
        assert_eq!(faces.unwrap(), vec![[0, 1, 2]]);
    }

    #[test]
    fn obj_quad_fans() {
        let src = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
        let (_, faces) = parse_obj(src.as_bytes()).unwrap();
        assert_eq!(faces.unwrap(), vec![[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn obj_bad_index_reports_line() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 9 1 2\n";
        match parse_obj(src.as_bytes()) {
            Err(MeshIoError::IndexOutOfRange { line, index }) => {
                assert_eq!((line, index), (4, 9));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn obj_ignores_extras_and_handles_slashes() {
        let src = "# comment\r\nmtllib x.mtl\r\nv 0 0 0\r\nv 1 0 0\r\nv 0 1 0\r\nvt 0 0\r\nvn 0 0 1\r\nusemtl a\r\nf 1/1/1 2//1 -1\r\n";
        let (cloud, faces) = parse_obj(src.as_bytes()).unwrap();
        assert_eq!(cloud.len(), 3);
        assert_eq!(faces.unwrap(), vec![[0, 1, 2]]);
        let (_, none) = parse_obj("v 1 2 3\n".as_bytes()).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn obj_parse_error_line() {
        match parse_obj("v 0 0 0\nv 1 zz 0\n".as_bytes()) {
            Err(MeshIoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_examples() {
        let c = parse_points_csv("0,0,0\n1,2,3".as_bytes()).unwrap();
        assert_eq!(c.len(), 2);
        let c = parse_points_csv("x,y,z\r\n0,0,0\r\n\r\n1,2,3\r\n".as_bytes()).unwrap();
        assert_eq!(c[1], Point3::new(1., 2., 3.));
        match parse_points_csv("a,b,c".as_bytes()) {
            Err(MeshIoError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        let c2 = parse_points2_csv("x,y\n0.5,-1\n".as_bytes()).unwrap();
        assert_eq!(c2[0], Point2::new(0.5, -1.0));
        assert!(parse_points_csv("1,2\n".as_bytes()).is_err());
    }
}
