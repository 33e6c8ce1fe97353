//! Three-dimensional hull construction.
//!
//! The pipeline is: deduplicate, take the centroid, cull to the support
//! points of the radial directions, project those onto the unit sphere
//! around the centroid, seed a tetrahedron, and grow it one surface point at
//! a time in input order. A final pass inserts any cloud point the culling
//! missed, so the result always contains the whole cloud.
//!
//! Output faces index the caller's [`PointCloud`]; no coordinates are ever
//! synthesized.

mod prepare;
mod workspace;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{HullError, Result};
use crate::geometry::{
    centroid_of, plane_side, project_to_sphere, triangle_normal, Direction3, Point3, PointCloud,
    ToleranceConfig,
};
pub(crate) use prepare::{cull_subset, dedup_subset};
use workspace::Workspace;

/// An outward-wound triangle of a hull, by index into the source cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullFace {
    pub vertices: [usize; 3],
    pub normal: Direction3,
}

/// Undirected edge `u < v` with the number of faces that use it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub multiplicity: usize,
}

/// Counters gathered by [`build_hull`].
///
/// `surface_count` is the number of points that entered the expansion
/// stage: the culled surface points plus any the containment pass had to
/// insert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildStats {
    pub input_count: usize,
    pub dedup_count: usize,
    pub surface_count: usize,
    pub hull_vertex_count: usize,
    pub hull_face_count: usize,
    pub elapsed: Duration,
}

/// Coordinates used for the visibility tests while the hull grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionSpace {
    /// Original coordinates. Seeds are still chosen on the sphere.
    #[default]
    Model,
    /// The unit-sphere projections. Every surface point is then in convex
    /// position, but the triangulation found there is not guaranteed to be
    /// convex once mapped back to the original coordinates, and the
    /// containment pass is skipped.
    Sphere,
}

/// A closed triangulated convex surface over points of a shared cloud.
#[derive(Debug, Clone)]
pub struct HullMesh {
    cloud: Arc<PointCloud>,
    faces: Vec<HullFace>,
    vertices: Vec<usize>,
    centroid: Point3,
    config: ToleranceConfig,
    removed: BTreeSet<usize>,
}

impl HullMesh {
    /// Wraps an arbitrary triangle list. Checks indices and computes
    /// normals but not closure or convexity (see [`crate::validation`]).
    pub fn from_triangles(
        cloud: Arc<PointCloud>,
        triangles: &[[usize; 3]],
        config: ToleranceConfig,
    ) -> Result<Self> {
        let n = cloud.len();
        let mut faces = Vec::with_capacity(triangles.len());
        for &t in triangles {
            if let Some(&bad) = t.iter().find(|&&i| i >= n) {
                return Err(HullError::UnknownIndex(bad));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(HullError::DegenerateTriangle);
            }
            let normal =
                triangle_normal(cloud[t[0]], cloud[t[1]], cloud[t[2]], config.degeneracy_eps)?;
            faces.push(HullFace {
                vertices: t,
                normal,
            });
        }
        let mut vertices: Vec<usize> = triangles.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let centroid = centroid_of(vertices.iter().map(|&i| cloud[i])).unwrap_or_default();
        Ok(HullMesh {
            cloud,
            faces,
            vertices,
            centroid,
            config,
            removed: BTreeSet::new(),
        })
    }

    pub fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    pub fn shared_cloud(&self) -> &Arc<PointCloud> {
        &self.cloud
    }

    pub fn faces(&self) -> &[HullFace] {
        &self.faces
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        self.faces.iter().map(|f| f.vertices).collect()
    }

    /// Sorted indices of the points used by at least one face.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Mean of the hull vertices; strictly inside any non-flat hull.
    pub fn centroid(&self) -> Point3 {
        self.centroid
    }

    pub fn config(&self) -> &ToleranceConfig {
        &self.config
    }

    pub fn is_vertex(&self, index: usize) -> bool {
        self.vertices.binary_search(&index).is_ok()
    }

    /// Cloud indices deleted with [`remove_point`](Self::remove_point).
    pub fn removed(&self) -> &BTreeSet<usize> {
        &self.removed
    }

    /// Cloud indices that are not removed.
    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.cloud.len())
            .filter(|i| !self.removed.contains(i))
            .collect()
    }

    fn face_points(&self, f: &HullFace) -> [Point3; 3] {
        f.vertices.map(|i| self.cloud[i])
    }

    /// Largest signed distance of `p` in front of any face plane.
    pub fn max_plane_distance(&self, p: Point3) -> f64 {
        self.faces
            .iter()
            .map(|f| plane_side(f.normal, self.face_points(f)[0], p))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn with_triangles(&self, cloud: Arc<PointCloud>, triangles: &[[usize; 3]]) -> Result<Self> {
        let mut mesh = HullMesh::from_triangles(cloud, triangles, self.config)?;
        mesh.removed = self.removed.clone();
        Ok(mesh)
    }

    fn workspace<'a>(&self, geo: &'a [Point3], eps: f64) -> Result<Workspace<'a>> {
        Workspace::from_triangles(geo, &self.triangles(), eps, self.config.degeneracy_eps)
    }

    /// Grows the hull to include cloud point `index`: faces that see it by
    /// more than `eps` are replaced by a fan from the horizon to the point.
    /// A point that sees no face is absorbed and the hull is unchanged.
    pub fn expand(&self, index: usize, eps: f64) -> Result<HullMesh> {
        if index >= self.cloud.len() || self.removed.contains(&index) {
            return Err(HullError::UnknownIndex(index));
        }
        if self.is_vertex(index) {
            return Ok(self.clone());
        }
        let mut ws = self.workspace(self.cloud.points(), eps)?;
        match ws.find_visible(self.cloud[index]) {
            None => Ok(self.clone()),
            Some(f) => {
                ws.insert(index, f)?;
                self.with_triangles(self.cloud.clone(), &ws.triangles())
            }
        }
    }

    /// Appends `p` to the cloud and expands the hull over it when it lies
    /// outside. The new point gets index `cloud().len() - 1`.
    pub fn insert_point(&self, p: Point3) -> Result<HullMesh> {
        let mut cloud = (*self.cloud).clone();
        cloud.push(p)?;
        let mesh = self.with_triangles(Arc::new(cloud), &self.triangles())?;
        mesh.expand(mesh.cloud.len() - 1, self.config.containment_eps())
    }

    /// Deletes cloud point `index`. Interior points leave the hull
    /// untouched; removing a hull vertex rebuilds from the remaining points.
    pub fn remove_point(&self, index: usize) -> Result<HullMesh> {
        if index >= self.cloud.len() || self.removed.contains(&index) {
            return Err(HullError::UnknownIndex(index));
        }
        let mut removed = self.removed.clone();
        removed.insert(index);
        if !self.is_vertex(index) {
            let mut mesh = self.clone();
            mesh.removed = removed;
            return Ok(mesh);
        }
        let active: Vec<usize> = (0..self.cloud.len())
            .filter(|i| !removed.contains(i))
            .collect();
        let (mut mesh, _) = build_subset(
            self.cloud.clone(),
            &active,
            &self.config,
            ExpansionSpace::Model,
        )?;
        mesh.removed = removed;
        Ok(mesh)
    }

    /// Inserts every active cloud point lying outside the hull by more than
    /// the containment tolerance.
    pub fn repair_containment(&self) -> Result<HullMesh> {
        let mut ws = self.workspace(self.cloud.points(), self.config.containment_eps())?;
        if ws.repair(&self.active_indices())? == 0 {
            return Ok(self.clone());
        }
        self.with_triangles(self.cloud.clone(), &ws.triangles())
    }
}

/// Indices of a maximal subset whose points are pairwise more than
/// `dedup_eps` apart. The first occurrence wins; input order is preserved.
pub fn dedup_points(cloud: &PointCloud, dedup_eps: f64) -> Vec<usize> {
    let all: Vec<usize> = (0..cloud.len()).collect();
    prepare::dedup_subset(cloud.points(), &all, dedup_eps)
}

/// For each point of `subset`, the support point of `subset` in the
/// direction from `centroid` to it. Every returned index lies on the hull
/// surface. Points coinciding with the centroid contribute nothing.
pub fn cull_interior(
    cloud: &PointCloud,
    subset: &[usize],
    centroid: Point3,
    config: &ToleranceConfig,
) -> Result<Vec<usize>> {
    prepare::cull_subset(cloud.points(), subset, centroid, config.degeneracy_eps)
}

/// Seed tetrahedron from projected surface points. `sphere_points[k]` is
/// the projection of cloud point `original_indices[k]`; the first affinely
/// independent quadruple in that order is used.
pub fn initial_tetrahedron(
    cloud: Arc<PointCloud>,
    sphere_points: &[Point3],
    original_indices: &[usize],
    config: &ToleranceConfig,
) -> Result<HullMesh> {
    assert_eq!(sphere_points.len(), original_indices.len());
    let order: Vec<usize> = (0..sphere_points.len()).collect();
    let [a, b, c, d] = prepare::find_seed(&order, &[sphere_points], config.expansion_eps)
        .map_err(prepare::SeedFailure::into_error)?;
    let seed = [a, b, c, d].map(|k| original_indices[k]);
    let ws = Workspace::tetrahedron(
        cloud.points(),
        seed,
        config.expansion_eps,
        config.degeneracy_eps,
    )?;
    HullMesh::from_triangles(Arc::clone(&cloud), &ws.triangles(), *config)
}

/// Faces of `hull` whose plane has `p` strictly in front by more than `eps`,
/// found by scanning every face.
pub fn visible_faces(hull: &HullMesh, p: Point3, eps: f64) -> Vec<usize> {
    hull.faces
        .iter()
        .enumerate()
        .filter(|(_, f)| plane_side(f.normal, hull.cloud[f.vertices[0]], p) > eps)
        .map(|(i, _)| i)
        .collect()
}

/// Per-edge face counts of a triangle list, sorted by `(u, v)`.
pub fn edge_multiplicities(triangles: &[[usize; 3]]) -> Vec<Edge> {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            *counts.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut edges: Vec<Edge> = counts
        .into_iter()
        .map(|((u, v), multiplicity)| Edge { u, v, multiplicity })
        .collect();
    edges.sort_unstable_by_key(|e| (e.u, e.v));
    edges
}

/// Edges used by exactly one of `triangles`, directed as in that triangle.
pub fn horizon_edges(triangles: &[[usize; 3]]) -> Vec<(usize, usize)> {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            *counts.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut out = Vec::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            if counts[&(a.min(b), a.max(b))] == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

/// True when directed `edges` chain into exactly one closed loop.
pub fn is_single_cycle(edges: &[(usize, usize)]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in edges {
        if next.insert(a, b).is_some() {
            return false;
        }
    }
    let start = edges[0].0;
    let mut cur = start;
    for step in 1..=edges.len() {
        match next.get(&cur) {
            Some(&n) => cur = n,
            None => return false,
        }
        if cur == start {
            return step == edges.len();
        }
    }
    false
}

/// Convex hull of `cloud` with default expansion in model coordinates.
pub fn build_hull(
    cloud: impl Into<Arc<PointCloud>>,
    config: &ToleranceConfig,
) -> Result<(HullMesh, BuildStats)> {
    HullBuilder::new(*config).build(cloud)
}

/// Configurable entry point for [`build_hull`].
#[derive(Debug, Clone, Copy, Default)]
pub struct HullBuilder {
    pub config: ToleranceConfig,
    pub space: ExpansionSpace,
}

impl HullBuilder {
    pub fn new(config: ToleranceConfig) -> Self {
        HullBuilder {
            config,
            space: ExpansionSpace::Model,
        }
    }

    pub fn space(mut self, space: ExpansionSpace) -> Self {
        self.space = space;
        self
    }

    pub fn build(&self, cloud: impl Into<Arc<PointCloud>>) -> Result<(HullMesh, BuildStats)> {
        let cloud = cloud.into();
        let all: Vec<usize> = (0..cloud.len()).collect();
        build_subset(cloud, &all, &self.config, self.space)
    }
}

/// Points that are distinct but closer than the tolerances allow can call
/// for a hull facet too small to carry a normal.
fn thin_facet(e: HullError) -> HullError {
    match e {
        HullError::DegenerateTriangle => {
            HullError::DegenerateCloud("a hull facet would be smaller than degeneracy_eps".into())
        }
        e => e,
    }
}

pub(crate) fn build_subset(
    cloud: Arc<PointCloud>,
    subset: &[usize],
    config: &ToleranceConfig,
    space: ExpansionSpace,
) -> Result<(HullMesh, BuildStats)> {
    config.validate()?;
    let start = Instant::now();
    let points = cloud.points();
    let eps = config.containment_eps();

    let kept = prepare::dedup_subset(points, subset, config.dedup_eps);
    if kept.len() < 4 {
        return Err(HullError::InsufficientPoints {
            needed: 4,
            found: kept.len(),
        });
    }
    let center = centroid_of(kept.iter().map(|&i| points[i]))?;
    let surface = prepare::cull_subset(points, &kept, center, config.degeneracy_eps)?;

    let mut sphere = points.to_vec();
    for &i in &surface {
        sphere[i] = project_to_sphere(points[i], center, config.degeneracy_eps)
            .map_err(|_| HullError::DegenerateCloud("surface point at the centroid".into()))?;
    }
    let geo: &[Point3] = match space {
        ExpansionSpace::Model => points,
        ExpansionSpace::Sphere => &sphere,
    };

    let seed = match prepare::find_seed(&surface, &[&sphere, points], eps) {
        Ok(seed) => seed,
        // The culled set can in principle miss the off-plane points; fall
        // back to the whole deduplicated cloud before giving up.
        Err(_) => prepare::find_seed(&kept, &[points], eps).map_err(|e| e.into_error())?,
    };
    let mut ws = Workspace::tetrahedron(geo, seed, eps, config.degeneracy_eps)?;
    let initial: Vec<usize> = ws.alive_faces().collect();

    let mut entered = 4;
    let pending: Vec<usize> = surface
        .iter()
        .copied()
        .filter(|i| !seed.contains(i))
        .collect();
    for &p in &pending {
        ws.assign(p, &initial);
    }
    for &p in &pending {
        let Some(f) = ws.owner(p) else {
            continue;
        };
        let out = ws.insert(p, f).map_err(thin_facet)?;
        entered += 1;
        for q in out.orphans {
            if q != p {
                ws.assign(q, &out.new_faces);
            }
        }
    }

    if space == ExpansionSpace::Model {
        // Merged duplicates are checked too: one can sit up to `dedup_eps`
        // outside the hull of the points that were kept.
        entered += ws.repair(subset).map_err(thin_facet)?;
    }

    let mesh = HullMesh::from_triangles(Arc::clone(&cloud), &ws.triangles(), *config)
        .map_err(thin_facet)?;
    let stats = BuildStats {
        input_count: subset.len(),
        dedup_count: kept.len(),
        surface_count: entered.max(mesh.vertex_count()),
        hull_vertex_count: mesh.vertex_count(),
        hull_face_count: mesh.face_count(),
        elapsed: start.elapsed(),
    };
    Ok((mesh, stats))
}
