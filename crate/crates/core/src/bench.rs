//! Seeded point-cloud generators, the degenerate regression corpus, and the
//! timing harness.
//!
//! Random numbers come from a counter-based SplitMix64: draw `k` of stream
//! `seed` is `mix(seed + (k + 1) * 0x9E3779B97F4A7C15)`, where `mix` is the
//! SplitMix64 finalizer. Floats take the top 53 bits, giving `[0, 1)`. The
//! scheme is a few lines in any language, so clouds can be regenerated
//! elsewhere from `(n, seed, distribution)` alone.

use std::f64::consts::TAU;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::error::HullError;
use crate::geometry::{Point2, Point3, PointCloud, PointCloud2, ToleranceConfig};
use crate::hull3d::build_hull;
use crate::validation::validate;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix {
    seed: u64,
    counter: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { seed, counter: 0 }
    }

    /// Draw number `k` of stream `seed`, independent of any state.
    pub fn value(seed: u64, k: u64) -> u64 {
        mix(seed.wrapping_add(k.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = Self::value(self.seed, self.counter);
        self.counter += 1;
        v
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `0..n` (`n > 0`), by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Uniform in the unit ball (unit disk in 2D).
    Ball,
    /// Uniform on the unit sphere (unit circle in 2D): every point extreme.
    SphereShell,
    /// Uniform in `[0, 1)^3` (`[0, 1)^2`).
    Cube,
    /// Distinct integer lattice points of the smallest cube holding `n`.
    Grid,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::Ball,
        Distribution::SphereShell,
        Distribution::Cube,
        Distribution::Grid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Ball => "ball",
            Distribution::SphereShell => "sphere_shell",
            Distribution::Cube => "cube",
            Distribution::Grid => "grid",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown distribution `{s}` (ball, sphere_shell, cube, grid)"))
    }
}

/// `n` lattice points drawn without replacement from `{0..k-1}^dim`, where
/// `k` is the smallest side with `k^dim >= n`.
fn lattice(n: usize, dim: u32, rng: &mut SplitMix) -> Vec<Vec<f64>> {
    let mut k = 1usize;
    while k.pow(dim) < n {
        k += 1;
    }
    let total = k.pow(dim);
    let mut cells: Vec<usize> = (0..total).collect();
    // Partial Fisher-Yates: the first n slots become the sample.
    for i in 0..n {
        let j = i + rng.below((total - i) as u64) as usize;
        cells.swap(i, j);
    }
    cells[..n]
        .iter()
        .map(|&c| {
            let mut c = c;
            (0..dim)
                .map(|_| {
                    let v = (c % k) as f64;
                    c /= k;
                    v
                })
                .collect()
        })
        .collect()
}

/// Deterministic cloud of `n` points.
pub fn random_cloud(n: usize, seed: u64, distribution: Distribution) -> PointCloud {
    let mut rng = SplitMix::new(seed);
    let points: Vec<Point3> = match distribution {
        Distribution::Ball => (0..n)
            .map(|_| loop {
                let p = Point3::new(rng.range(-1., 1.), rng.range(-1., 1.), rng.range(-1., 1.));
                if p.norm_squared() <= 1.0 {
                    break p;
                }
            })
            .collect(),
        Distribution::SphereShell => (0..n)
            .map(|_| {
                let z = rng.range(-1., 1.);
                let phi = TAU * rng.next_f64();
                let r = (1.0 - z * z).max(0.0).sqrt();
                Point3::new(r * phi.cos(), r * phi.sin(), z)
            })
            .collect(),
        Distribution::Cube => (0..n)
            .map(|_| Point3::new(rng.next_f64(), rng.next_f64(), rng.next_f64()))
            .collect(),
        Distribution::Grid => lattice(n, 3, &mut rng)
            .into_iter()
            .map(|c| Point3::new(c[0], c[1], c[2]))
            .collect(),
    };
    PointCloud::new(points).expect("generated points are finite")
}

/// Planar analogue of [`random_cloud`].
pub fn random_cloud_2d(n: usize, seed: u64, distribution: Distribution) -> PointCloud2 {
    let mut rng = SplitMix::new(seed);
    let points: Vec<Point2> = match distribution {
        Distribution::Ball => (0..n)
            .map(|_| loop {
                let p = Point2::new(rng.range(-1., 1.), rng.range(-1., 1.));
                if p.dot(p) <= 1.0 {
                    break p;
                }
            })
            .collect(),
        Distribution::SphereShell => (0..n)
            .map(|_| {
                let phi = TAU * rng.next_f64();
                Point2::new(phi.cos(), phi.sin())
            })
            .collect(),
        Distribution::Cube => (0..n)
            .map(|_| Point2::new(rng.next_f64(), rng.next_f64()))
            .collect(),
        Distribution::Grid => lattice(n, 2, &mut rng)
            .into_iter()
            .map(|c| Point2::new(c[0], c[1]))
            .collect(),
    };
    PointCloud2::new(points).expect("generated points are finite")
}

/// A fixed cloud from the regression corpus and the hull it must produce.
#[derive(Debug, Clone)]
pub struct DegenerateCase {
    pub name: &'static str,
    pub cloud: PointCloud,
    pub volume: f64,
    /// Expected hull vertex indices, sorted, where they are known exactly.
    pub vertices: Option<Vec<usize>>,
}

fn cube_corners() -> Vec<Point3> {
    let mut v = Vec::with_capacity(8);
    for x in [0.0, 1.0] {
        for y in [0.0, 1.0] {
            for z in [0.0, 1.0] {
                v.push(Point3::new(x, y, z));
            }
        }
    }
    v
}

/// Shoelace area of a simple polygon.
fn shoelace(ring: &[Point2]) -> f64 {
    let m = ring.len();
    (0..m)
        .map(|k| ring[k].cross(ring[(k + 1) % m]))
        .sum::<f64>()
        / 2.0
}

pub fn degenerate_suite() -> Vec<DegenerateCase> {
    let mut out = Vec::new();

    // Each unit-cube corner repeated five times.
    let corners = cube_corners();
    let dup: Vec<Point3> = (0..5).flat_map(|_| corners.iter().copied()).collect();
    out.push(DegenerateCase {
        name: "duplicate_heavy",
        cloud: PointCloud::new(dup).unwrap(),
        volume: 1.0,
        vertices: Some((0..8).collect()),
    });

    // Unit-cube surface sampled on an 11×11 lattice per face.
    let mut lat = Vec::new();
    let mut corner_ids = Vec::new();
    for i in 0..=10 {
        for j in 0..=10 {
            for k in 0..=10 {
                let on_surface = [i, j, k].iter().any(|&c| c == 0 || c == 10);
                if on_surface {
                    if [i, j, k].iter().all(|&c| c == 0 || c == 10) {
                        corner_ids.push(lat.len());
                    }
                    lat.push(Point3::new(
                        i as f64 / 10.0,
                        j as f64 / 10.0,
                        k as f64 / 10.0,
                    ));
                }
            }
        }
    }
    out.push(DegenerateCase {
        name: "cube_face_lattice",
        cloud: PointCloud::new(lat).unwrap(),
        volume: 1.0,
        vertices: Some(corner_ids),
    });

    // 100 points on a unit segment plus four close off-axis points: a
    // bipyramid over a diamond with diagonals 2h.
    let h = 0.01;
    let mut needle: Vec<Point3> = (0..100)
        .map(|i| Point3::new(i as f64 / 99.0, 0.0, 0.0))
        .collect();
    needle.extend([
        Point3::new(0.5, h, 0.0),
        Point3::new(0.5, -h, 0.0),
        Point3::new(0.5, 0.0, h),
        Point3::new(0.5, 0.0, -h),
    ]);
    out.push(DegenerateCase {
        name: "needle",
        cloud: PointCloud::new(needle).unwrap(),
        volume: 2.0 / 3.0 * h * h,
        vertices: Some(vec![0, 99, 100, 101, 102, 103]),
    });

    // Cone from the origin over a barely-curved base, so every side face is
    // a long thin sliver.
    let (len, s) = (10.0, 1e-3);
    let ts: Vec<f64> = (0..25).map(|i| -1.0 + i as f64 / 12.0).collect();
    let mut fan = vec![Point3::ZERO];
    fan.extend(ts.iter().map(|&t| Point3::new(len, t, s * t * t)));
    let base: Vec<Point2> = ts.iter().map(|&t| Point2::new(t, s * t * t)).collect();
    out.push(DegenerateCase {
        name: "sliver_fan",
        cloud: PointCloud::new(fan).unwrap(),
        volume: len * shoelace(&base).abs() / 3.0,
        vertices: Some((0..26).collect()),
    });

    // 32 cocircular points with an apex above and below.
    let m = 32;
    let mut ring: Vec<Point3> = (0..m)
        .map(|k| {
            let a = TAU * k as f64 / m as f64;
            Point3::new(a.cos(), a.sin(), 0.0)
        })
        .collect();
    ring.extend([Point3::new(0., 0., 1.), Point3::new(0., 0., -1.)]);
    out.push(DegenerateCase {
        name: "cocircular_ring",
        cloud: PointCloud::new(ring).unwrap(),
        volume: 2.0 / 3.0 * (m as f64 / 2.0) * (TAU / m as f64).sin(),
        vertices: Some((0..m + 2).collect()),
    });

    out
}

/// Watertight, outward-wound icosphere with radial bumps and dents.
///
/// `subdivisions` rounds of 4-to-1 splitting give `10 * 4^s + 2` vertices.
/// Each vertex sits at radius `1 + amplitude * sin(f x) sin(f y) sin(f z)`.
pub fn bumpy_sphere(
    subdivisions: u32,
    amplitude: f64,
    frequency: f64,
) -> (PointCloud, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Point3> = [
        [-1., t, 0.],
        [1., t, 0.],
        [-1., -t, 0.],
        [1., -t, 0.],
        [0., -1., t],
        [0., 1., t],
        [0., -1., -t],
        [0., 1., -t],
        [t, 0., -1.],
        [t, 0., 1.],
        [-t, 0., -1.],
        [-t, 0., 1.],
    ]
    .iter()
    .map(|&a| {
        let p = Point3::from_array(a);
        p * (1.0 / p.norm())
    })
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut mid = std::collections::HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Point3>| -> usize {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let m = (verts[a] + verts[b]) * 0.5;
                verts.push(m * (1.0 / m.norm()));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let f = frequency;
    let bumped = verts
        .into_iter()
        .map(|p| p * (1.0 + amplitude * (f * p.x).sin() * (f * p.y).sin() * (f * p.z).sin()))
        .collect();
    (PointCloud::new(bumped).unwrap(), faces)
}

/// One timed build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimingRecord {
    pub n: usize,
    pub repeat: usize,
    pub seed: u64,
    pub elapsed_ns: u64,
    pub hull_vertices: usize,
    pub hull_faces: usize,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("hull for n={size} seed={seed} failed validation: {checks}")]
    ValidationFailure {
        seed: u64,
        size: usize,
        checks: String,
    },
    #[error("hull build for n={size} seed={seed} failed: {source}")]
    Build {
        seed: u64,
        size: usize,
        #[source]
        source: HullError,
    },
    #[error("invalid benchmark arguments: {0}")]
    InvalidArgs(String),
}

/// Seed of the cloud built for `(n, repeat)` under run seed `seed`.
pub fn cell_seed(seed: u64, n: usize, repeat: usize) -> u64 {
    SplitMix::value(seed, ((n as u64) << 20) | repeat as u64)
}

/// Times `build_hull` on uniform-ball clouds.
pub fn run_bench(
    sizes: &[usize],
    repeats: usize,
    seed: u64,
) -> Result<Vec<TimingRecord>, BenchError> {
    run_bench_with(sizes, repeats, seed, Distribution::Ball)
}

/// Times `build_hull` for every `(size, repeat)` cell in order. Each hull
/// must pass the full validation battery; the clock covers only the build.
pub fn run_bench_with(
    sizes: &[usize],
    repeats: usize,
    seed: u64,
    distribution: Distribution,
) -> Result<Vec<TimingRecord>, BenchError> {
    if sizes.is_empty() || repeats == 0 {
        return Err(BenchError::InvalidArgs(
            "need at least one size and one repeat".into(),
        ));
    }
    let config = ToleranceConfig::default();
    // Untimed warm-up build.
    let _ = build_hull(
        random_cloud(sizes[0], cell_seed(seed, sizes[0], 0), distribution),
        &config,
    );
    let mut out = Vec::with_capacity(sizes.len() * repeats);
    for &n in sizes {
        for repeat in 0..repeats {
            let s = cell_seed(seed, n, repeat);
            let cloud = Arc::new(random_cloud(n, s, distribution));
            let start = Instant::now();
            let built = build_hull(Arc::clone(&cloud), &config);
            let elapsed = start.elapsed();
            let (hull, _) = built.map_err(|source| BenchError::Build {
                seed: s,
                size: n,
                source,
            })?;
            let report = validate(&hull, config.containment_eps());
            if !report.is_ok() {
                return Err(BenchError::ValidationFailure {
                    seed: s,
                    size: n,
                    checks: report.failures().join(", "),
                });
            }
            out.push(TimingRecord {
                n,
                repeat,
                seed: s,
                elapsed_ns: (elapsed.as_nanos() as u64).max(1),
                hull_vertices: hull.vertex_count(),
                hull_faces: hull.face_count(),
            });
        }
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "n,repeat,seed,elapsed_ns,hull_vertices,hull_faces";

pub fn write_csv(w: &mut (impl Write + ?Sized), records: &[TimingRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.n, r.repeat, r.seed, r.elapsed_ns, r.hull_vertices, r.hull_faces
        )?;
    }
    Ok(())
}

/// Mean elapsed nanoseconds per distinct `n`, in ascending `n`.
pub fn mean_times(records: &[TimingRecord]) -> Vec<(usize, f64)> {
    let mut acc: std::collections::BTreeMap<usize, (f64, usize)> = Default::default();
    for r in records {
        let e = acc.entry(r.n).or_default();
        e.0 += r.elapsed_ns as f64;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(n, (t, c))| (n, t / c as f64))
        .collect()
}

/// Least-squares slope of `ln(mean time)` against `ln(n)`. `None` with
/// fewer than two distinct sizes.
pub fn loglog_slope(records: &[TimingRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = mean_times(records)
        .into_iter()
        .map(|(n, t)| ((n as f64).ln(), t.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Parses `start:end:step` (inclusive) or a comma list such as `500,1000`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, BenchError> {
    let bad = || BenchError::InvalidArgs(format!("bad size list `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let sizes: Vec<usize> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(bad());
        };
        let (start, end, step) = (num(a)?, num(b)?, num(c)?);
        if step == 0 || start > end {
            return Err(bad());
        }
        (start..=end).step_by(step).collect()
    } else {
        text.split(',').map(num).collect::<Result<_, _>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(bad());
    }
    Ok(sizes)
}
