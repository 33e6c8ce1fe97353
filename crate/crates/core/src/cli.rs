//! The `hull` command-line tool.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 degenerate input,
//! 3 validation failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    loglog_slope, parse_sizes, run_bench_with, write_csv, BenchError, Distribution,
};
use crate::error::HullError;
use crate::geometry::{PointCloud, ToleranceConfig};
use crate::hull2d::build_hull2d;
use crate::hull3d::{ExpansionSpace, HullBuilder};
use crate::meshio::{self, MeshIoError};
use crate::minkowski::{minkowski_cloud, Rotation3};
use crate::validation::validate_mesh;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hull",
    version,
    about = "Convex hulls of point clouds and meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the 3D convex hull of an OBJ or CSV point file.
    Build(BuildArgs),
    /// Check that an OBJ mesh is a closed, outward, convex surface.
    Validate(ValidateArgs),
    /// Hull of the Minkowski sum of two point sets.
    Minkowski(MinkowskiArgs),
    /// Time hull builds on random clouds and write a CSV.
    Bench(BenchArgs),
    /// Build the 2D convex hull of a CSV of `x,y` points.
    #[command(name = "2d")]
    TwoD(TwoDArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Obj,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Model,
    Sphere,
}

#[derive(Debug, Args)]
struct BuildArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Plane-side tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Expansion tolerance; defaults to the plane tolerance.
    #[arg(long)]
    expansion: Option<f64>,
    /// Print build counters to stdout.
    #[arg(long)]
    stats: bool,
    /// Write one `vn` normal per face.
    #[arg(long)]
    normals: bool,
    /// Input format, overriding the file extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Coordinates used for visibility tests during expansion.
    #[arg(long, value_enum, default_value = "model")]
    space: Space,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    mesh: PathBuf,
    /// Plane-side tolerance for the convexity check.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Debug, Args)]
struct MinkowskiArgs {
    a: PathBuf,
    b: PathBuf,
    /// Rotate the second set about +z by this many degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    rotate_z: f64,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    normals: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// `start:end:step` (inclusive) or a comma list.
    #[arg(long, default_value = "500:10000:500")]
    sizes: String,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value = "ball", value_parser = parse_distribution)]
    distribution: Distribution,
}

#[derive(Debug, Args)]
struct TwoDArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    tolerance: Option<f64>,
}

fn parse_distribution(s: &str) -> Result<Distribution, String> {
    s.parse()
}

/// A failure carried to the top level as an exit code and one stderr line.
struct Failure {
    code: i32,
    message: String,
}

impl From<MeshIoError> for Failure {
    fn from(e: MeshIoError) -> Self {
        match e {
            MeshIoError::Hull(h) => h.into(),
            other => Failure {
                code: EXIT_IO,
                message: other.to_string(),
            },
        }
    }
}

impl From<HullError> for Failure {
    fn from(e: HullError) -> Self {
        let code = match &e {
            e if e.is_degenerate_input() => EXIT_DEGENERATE,
            HullError::BrokenHorizon { .. } => EXIT_VALIDATION,
            _ => EXIT_IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        let code = match &e {
            BenchError::ValidationFailure { .. } => EXIT_VALIDATION,
            BenchError::Build { source, .. } if source.is_degenerate_input() => EXIT_DEGENERATE,
            BenchError::Build { .. } => EXIT_VALIDATION,
            BenchError::InvalidArgs(_) => EXIT_IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        MeshIoError::Io(e).into()
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_IO
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Validate(a) => cmd_validate(a, out),
        Command::Minkowski(a) => cmd_minkowski(a),
        Command::Bench(a) => cmd_bench(a, out),
        Command::TwoD(a) => cmd_2d(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn format_of(path: &Path, explicit: Option<Format>) -> Result<Format, Failure> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("obj") => Ok(Format::Obj),
        Some("csv") => Ok(Format::Csv),
        _ => Err(Failure {
            code: EXIT_IO,
            message: format!(
                "cannot tell the format of {} from its extension; pass --format",
                path.display()
            ),
        }),
    }
}

fn load_cloud(path: &Path, format: Option<Format>) -> Result<PointCloud, Failure> {
    Ok(match format_of(path, format)? {
        Format::Obj => meshio::load_obj(path)?.0,
        Format::Csv => meshio::load_points_csv(path)?,
    })
}

fn tolerances(plane: Option<f64>, expansion: Option<f64>) -> ToleranceConfig {
    let mut cfg = ToleranceConfig::default();
    if let Some(p) = plane {
        cfg.plane_eps = p;
        cfg.expansion_eps = p;
    }
    if let Some(e) = expansion {
        cfg.expansion_eps = e;
    }
    cfg
}

fn cmd_build(a: BuildArgs, out: &mut dyn Write) -> CmdResult {
    let cloud = load_cloud(&a.input, a.format)?;
    let config = tolerances(a.tolerance, a.expansion);
    let space = match a.space {
        Space::Model => ExpansionSpace::Model,
        Space::Sphere => ExpansionSpace::Sphere,
    };
    let (hull, stats) = HullBuilder::new(config).space(space).build(cloud)?;
    match format_of(&a.output, None).unwrap_or(Format::Obj) {
        Format::Obj => meshio::save_obj(&a.output, &hull, a.normals)?,
        Format::Csv => {
            let pts: Vec<_> = hull.vertices().iter().map(|&i| hull.cloud()[i]).collect();
            let mut w = BufWriter::new(File::create(&a.output)?);
            meshio::write_points_csv(&mut w, &pts)?;
            w.flush()?;
        }
    }
    if a.stats {
        writeln!(
            out,
            "input={} dedup={} surface={} hull_v={} hull_f={} elapsed_ms={:.3}",
            stats.input_count,
            stats.dedup_count,
            stats.surface_count,
            stats.hull_vertex_count,
            stats.hull_face_count,
            stats.elapsed.as_secs_f64() * 1e3
        )?;
    }
    Ok(())
}

fn cmd_validate(a: ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let (cloud, faces) = meshio::load_obj(&a.mesh)?;
    let faces = faces.ok_or_else(|| Failure {
        code: EXIT_IO,
        message: format!("{} has no faces", a.mesh.display()),
    })?;
    let report = validate_mesh(cloud.points(), &faces, a.tolerance);
    let word = |ok: bool| if ok { "PASS" } else { "FAIL" };
    writeln!(out, "manifold: {}", word(report.manifold))?;
    writeln!(out, "orientation: {}", word(report.orientation))?;
    writeln!(out, "convexity: {}", word(report.convexity))?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VALIDATION,
            message: format!("{} is not a valid convex hull", a.mesh.display()),
        })
    }
}

fn cmd_minkowski(a: MinkowskiArgs) -> CmdResult {
    let ca = load_cloud(&a.a, None)?;
    let cb = load_cloud(&a.b, None)?;
    let sum = minkowski_cloud(&ca, &cb, &Rotation3::about_z(a.rotate_z))?;
    let (hull, _) = HullBuilder::new(ToleranceConfig::default()).build(Arc::new(sum))?;
    meshio::save_obj(&a.output, &hull, a.normals)?;
    Ok(())
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let sizes = parse_sizes(&a.sizes)?;
    let start = Instant::now();
    let records = run_bench_with(&sizes, a.repeats, a.seed, a.distribution)?;
    let total = start.elapsed();
    match &a.csv {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&mut w, &records)?;
            w.flush()?;
            let slope = loglog_slope(&records)
                .map(|s| format!("{s:.3}"))
                .unwrap_or_else(|| "n/a".into());
            writeln!(
                out,
                "records={} slope={} total_s={:.2}",
                records.len(),
                slope,
                total.as_secs_f64()
            )?;
        }
        None => write_csv(&mut *out, &records)?,
    }
    Ok(())
}

fn cmd_2d(a: TwoDArgs) -> CmdResult {
    let cloud = meshio::load_points2_csv(&a.input)?;
    let poly = build_hull2d(&cloud, &tolerances(a.tolerance, None))?;
    let ring: Vec<_> = poly.vertices.iter().map(|&i| cloud[i]).collect();
    meshio::save_points2_csv(&a.output, &ring)?;
    Ok(())
}
