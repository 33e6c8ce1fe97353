//! Mutable triangle mesh used while a hull grows.
//!
//! Faces live in an arena and are tombstoned when removed. Each face stores
//! its three neighbours: `nbr[k]` shares the directed edge
//! `v[k] -> v[(k + 1) % 3]` in reverse. Points still waiting to be inserted
//! sit in the outside list of exactly one face they can see.

use std::collections::HashMap;

use robust::{orient3d, Coord3D};

use crate::error::{HullError, Result};
use crate::geometry::{triangle_normal, Point3};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Face {
    v: [usize; 3],
    nbr: [usize; 3],
    normal: Point3,
    alive: bool,
    mark: u32,
    outside: Vec<usize>,
}

pub(crate) struct Workspace<'a> {
    geo: &'a [Point3],
    eps: f64,
    degeneracy_eps: f64,
    faces: Vec<Face>,
    alive: usize,
    epoch: u32,
    // Face whose outside list holds the point, or NONE.
    owner: Vec<usize>,
    last_alive: usize,
}

/// Result of inserting one point.
/// Visible faces, horizon edges `(u, v, outside face)`, the order of those
/// edges around the loop, and the normals of the fan over them.
type Region = (
    Vec<usize>,
    Vec<(usize, usize, usize)>,
    Vec<usize>,
    Vec<Point3>,
);

pub(crate) struct Inserted {
    pub new_faces: Vec<usize>,
    pub orphans: Vec<usize>,
}

impl<'a> Workspace<'a> {
    fn empty(geo: &'a [Point3], eps: f64, degeneracy_eps: f64) -> Self {
        Workspace {
            geo,
            eps,
            degeneracy_eps,
            faces: Vec::new(),
            alive: 0,
            epoch: 0,
            owner: vec![NONE; geo.len()],
            last_alive: 0,
        }
    }

    /// Tetrahedron over four affinely independent points, wound outward.
    pub fn tetrahedron(
        geo: &'a [Point3],
        seed: [usize; 4],
        eps: f64,
        degeneracy_eps: f64,
    ) -> Result<Self> {
        let [a, mut b, mut c, d] = seed;
        if crate::geometry::orient3d(geo[a], geo[b], geo[c], geo[d]) < 0.0 {
            std::mem::swap(&mut b, &mut c);
        }
        let tris = [[a, b, c], [a, d, b], [b, d, c], [c, d, a]];
        Self::from_triangles(geo, &tris, eps, degeneracy_eps)
    }

    /// Rebuilds adjacency for a closed, consistently wound triangle set.
    pub fn from_triangles(
        geo: &'a [Point3],
        tris: &[[usize; 3]],
        eps: f64,
        degeneracy_eps: f64,
    ) -> Result<Self> {
        let mut ws = Workspace::empty(geo, eps, degeneracy_eps);
        let mut edges: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for &t in tris {
            let f = ws.push_face(t)?;
            for k in 0..3 {
                edges.insert((t[k], t[(k + 1) % 3]), (f, k));
            }
        }
        for f in 0..ws.faces.len() {
            let v = ws.faces[f].v;
            for k in 0..3 {
                let (g, _) = *edges
                    .get(&(v[(k + 1) % 3], v[k]))
                    .ok_or_else(|| HullError::DegenerateCloud("mesh is not closed".into()))?;
                ws.faces[f].nbr[k] = g;
            }
        }
        Ok(ws)
    }

    fn push_face(&mut self, v: [usize; 3]) -> Result<usize> {
        let normal = triangle_normal(
            self.geo[v[0]],
            self.geo[v[1]],
            self.geo[v[2]],
            self.degeneracy_eps,
        )?
        .vector();
        self.faces.push(Face {
            v,
            nbr: [NONE; 3],
            normal,
            alive: true,
            mark: 0,
            outside: Vec::new(),
        });
        self.alive += 1;
        self.last_alive = self.faces.len() - 1;
        Ok(self.faces.len() - 1)
    }

    #[inline]
    pub fn distance(&self, f: usize, p: Point3) -> f64 {
        let face = &self.faces[f];
        face.normal.dot(p - self.geo[face.v[0]])
    }

    /// Exact sign of `p` against the plane through face `f`: positive in
    /// front, negative behind, zero on the plane.
    fn side(&self, f: usize, p: Point3) -> f64 {
        let [a, b, d] = self.faces[f].v.map(|i| coord(self.geo[i]));
        -orient3d(a, b, d, coord(p))
    }

    pub fn alive_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].alive)
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        self.alive_faces().map(|f| self.faces[f].v).collect()
    }

    #[cfg(test)]
    pub fn face_count(&self) -> usize {
        self.alive
    }

    /// Files `p` under the first of `candidates` it sees beyond `eps`.
    /// Returns false (and files nothing) when it sees none of them.
    pub fn assign(&mut self, p: usize, candidates: &[usize]) -> bool {
        let q = self.geo[p];
        for &f in candidates {
            if self.faces[f].alive && self.distance(f, q) > self.eps {
                self.faces[f].outside.push(p);
                self.owner[p] = f;
                return true;
            }
        }
        self.owner[p] = NONE;
        false
    }

    pub fn owner(&self, p: usize) -> Option<usize> {
        let f = self.owner[p];
        (f != NONE && self.faces[f].alive).then_some(f)
    }

    /// Any face `p` sees beyond `eps`, preferring the farthest.
    pub fn find_visible(&self, p: Point3) -> Option<usize> {
        let mut best = None;
        let mut best_d = self.eps;
        for f in self.alive_faces() {
            let d = self.distance(f, p);
            if d > best_d {
                best_d = d;
                best = Some(f);
            }
        }
        best
    }

    /// Among the faces connected to `start` that `q` is strictly in front
    /// of, the farthest one and its distance. `None` if `q` is not in front
    /// of `start`. A point just above one face can still be far outside a
    /// steep neighbour.
    fn farthest_in_front(&mut self, q: Point3, start: usize) -> Option<(usize, f64)> {
        if self.side(start, q) <= 0.0 {
            return None;
        }
        self.epoch = self.epoch.wrapping_add(1).max(1);
        let epoch = self.epoch;
        self.faces[start].mark = epoch;
        let mut stack = vec![start];
        let mut best = (start, f64::NEG_INFINITY);
        while let Some(f) = stack.pop() {
            let d = self.distance(f, q);
            if d > best.1 {
                best = (f, d);
            }
            for k in 0..3 {
                let g = self.faces[f].nbr[k];
                if self.faces[g].mark != epoch && self.side(g, q) > 0.0 {
                    self.faces[g].mark = epoch;
                    stack.push(g);
                }
            }
        }
        Some(best)
    }

    /// Connected faces around `start` that `p` sees by more than
    /// `threshold` (a zero threshold is decided exactly), their boundary as
    /// one ordered loop, and the normals of the fan that would replace them.
    /// Fails with `BrokenHorizon` if the boundary is not a simple loop and
    /// with `DegenerateTriangle` if a fan triangle has zero area. Only face
    /// marks are touched.
    fn region(&mut self, p: usize, start: usize, threshold: f64) -> Result<Region> {
        let q = self.geo[p];
        let broken = HullError::BrokenHorizon { point: p };
        self.epoch = self.epoch.wrapping_add(1).max(1);
        let epoch = self.epoch;
        let mut visible = vec![start];
        self.faces[start].mark = epoch;
        let mut i = 0;
        while i < visible.len() {
            let f = visible[i];
            i += 1;
            for k in 0..3 {
                let g = self.faces[f].nbr[k];
                if self.faces[g].mark == epoch {
                    continue;
                }
                let ahead = if threshold == 0.0 {
                    self.side(g, q) > 0.0
                } else {
                    self.distance(g, q) > threshold
                };
                if ahead {
                    self.faces[g].mark = epoch;
                    visible.push(g);
                }
            }
        }

        // Boundary edges (u, v, outside face), in the winding of the
        // visible face that owned them.
        let mut horizon: Vec<(usize, usize, usize)> = Vec::new();
        for &f in &visible {
            let face = &self.faces[f];
            for k in 0..3 {
                let g = face.nbr[k];
                if self.faces[g].mark != epoch {
                    horizon.push((face.v[k], face.v[(k + 1) % 3], g));
                }
            }
        }
        let ring = order_cycle(&horizon).ok_or(broken.clone())?;

        let mut normals = Vec::with_capacity(ring.len());
        for &h in &ring {
            let (u, v, _) = horizon[h];
            if u == p || v == p {
                return Err(broken);
            }
            let n = triangle_normal(self.geo[u], self.geo[v], q, 0.0)?;
            normals.push(n.vector());
        }
        Ok((visible, horizon, ring, normals))
    }

    /// Grows the mesh to include point `p`, starting from a face it sees.
    ///
    /// The visible region is collected by flooding across neighbours, its
    /// boundary must be one closed loop, and each boundary edge is joined to
    /// `p`. Nothing is modified when an error is returned.
    pub fn insert(&mut self, p: usize, start: usize) -> Result<Inserted> {
        debug_assert!(self.faces[start].alive);
        // Replace every face `p` is in front of, falling back to the faces
        // it sees beyond `eps` when rounding makes that region ragged.
        let (visible, horizon, ring, normals) = match self.region(p, start, 0.0) {
            Ok(r) => r,
            Err(_) => self.region(p, start, self.eps)?,
        };

        let mut orphans = Vec::new();
        for &f in &visible {
            let face = &mut self.faces[f];
            face.alive = false;
            orphans.append(&mut face.outside);
        }
        self.alive -= visible.len();

        let base = self.faces.len();
        let m = ring.len();
        let mut new_faces = Vec::with_capacity(m);
        for (j, &h) in ring.iter().enumerate() {
            let (u, v, g) = horizon[h];
            let id = base + j;
            self.faces.push(Face {
                v: [u, v, p],
                nbr: [g, base + (j + 1) % m, base + (j + m - 1) % m],
                normal: normals[j],
                alive: true,
                mark: 0,
                outside: Vec::new(),
            });
            let gv = self.faces[g].v;
            let slot = (0..3)
                .find(|&s| gv[s] == v && gv[(s + 1) % 3] == u)
                .expect("horizon edge has a twin");
            self.faces[g].nbr[slot] = id;
            new_faces.push(id);
        }
        self.alive += m;
        self.last_alive = base;
        self.owner[p] = NONE;
        Ok(Inserted { new_faces, orphans })
    }

    /// Face hit by the ray from `origin` through `p`, found by walking
    /// across neighbours. `origin` must be strictly inside the mesh.
    pub fn locate(&self, origin: Point3, p: Point3, start: usize) -> Option<usize> {
        let mut f = if self.faces[start].alive {
            start
        } else {
            self.last_alive
        };
        let limit = 4 * self.alive + 16;
        for _ in 0..limit {
            let face = &self.faces[f];
            let o = coord(origin);
            let r = face.v.map(|i| coord(self.geo[i]));
            let mut worst = 0.0;
            let mut step = NONE;
            for k in 0..3 {
                let s = -orient3d(o, r[k], r[(k + 1) % 3], coord(p));
                if s < worst {
                    worst = s;
                    step = k;
                }
            }
            if step == NONE {
                return Some(f);
            }
            f = face.nbr[step];
        }
        None
    }

    /// Makes the mesh contain every point of `points` within `eps`, inserting
    /// the ones that lie outside. Returns how many were inserted.
    ///
    /// A point left just outside can end up beyond `eps` of a face created
    /// after it was checked, so those points are checked again until a pass
    /// inserts nothing. Points inside the mesh stay inside as it grows.
    pub fn repair(&mut self, points: &[usize]) -> Result<usize> {
        let mut todo = points.to_vec();
        let mut inserted = 0;
        loop {
            let (added, near) = self.repair_pass(&todo)?;
            inserted += added;
            if added == 0 {
                return Ok(inserted);
            }
            todo = near;
        }
    }

    /// One pass of [`repair`](Self::repair): the number inserted and the
    /// points left outside by at most `eps`.
    fn repair_pass(&mut self, points: &[usize]) -> Result<(usize, Vec<usize>)> {
        let verts: Vec<usize> = {
            let mut v: Vec<usize> = self.triangles().into_iter().flatten().collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let origin = crate::geometry::centroid_of(verts.iter().map(|&i| self.geo[i]))?;
        let mut is_vertex = vec![false; self.geo.len()];
        for &v in &verts {
            is_vertex[v] = true;
        }
        let order = sweep_order(self.geo, points, origin);
        let mut inserted = 0;
        let mut near = Vec::new();
        let mut hint = self.last_alive;
        for i in order {
            if is_vertex[i] {
                continue;
            }
            let q = self.geo[i];
            let hit = match self.locate(origin, q, hint) {
                Some(f) => {
                    hint = f;
                    self.farthest_in_front(q, f)
                }
                None => self.find_visible(q).map(|f| (f, self.distance(f, q))),
            };
            match hit {
                Some((f, d)) if d > self.eps => {
                    let out = self.insert(i, f)?;
                    hint = out.new_faces[0];
                    is_vertex[i] = true;
                    inserted += 1;
                }
                Some(_) => near.push(i),
                None => {}
            }
        }
        Ok((inserted, near))
    }
}

/// `points` sorted by their direction from `origin`, in latitude bands
/// swept alternately east and west, so consecutive ray walks start close to
/// their target.
fn sweep_order(geo: &[Point3], points: &[usize], origin: Point3) -> Vec<usize> {
    let bands = ((points.len() as f64).sqrt() / 2.0).ceil().max(1.0);
    let mut keyed: Vec<(i64, f64, usize)> = points
        .iter()
        .map(|&i| {
            let d = geo[i] - origin;
            let r = d.norm();
            let z = if r > 0.0 { d.z / r } else { 0.0 };
            let band = (((z + 1.0) / 2.0 * bands) as i64).min(bands as i64 - 1);
            let lon = d.y.atan2(d.x);
            (band, if band % 2 == 0 { lon } else { -lon }, i)
        })
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
    keyed.into_iter().map(|(_, _, i)| i).collect()
}

fn coord(p: Point3) -> Coord3D<f64> {
    Coord3D {
        x: p.x,
        y: p.y,
        z: p.z,
    }
}

/// Orders horizon edges into one closed loop. `None` if they form anything
/// else (several loops, a vertex visited twice, an open chain).
fn order_cycle(edges: &[(usize, usize, usize)]) -> Option<Vec<usize>> {
    if edges.len() < 3 {
        return None;
    }
    let mut by_start: HashMap<usize, usize> = HashMap::with_capacity(edges.len());
    for (i, &(u, _, _)) in edges.iter().enumerate() {
        if by_start.insert(u, i).is_some() {
            return None;
        }
    }
    let mut ring = Vec::with_capacity(edges.len());
    let mut cur = 0;
    for _ in 0..edges.len() {
        ring.push(cur);
        cur = *by_start.get(&edges[cur].1)?;
        if cur == 0 {
            break;
        }
    }
    (cur == 0 && ring.len() == edges.len()).then_some(ring)
}
