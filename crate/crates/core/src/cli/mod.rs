//! The `jnr` command-line front end: argument parsing, job dispatch and
//! report assembly. Reports are JSON (schema 1), CSV or SVG.

mod input;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::essential::{closedness_consistency, closedness_probe, closure_hull, essential_range};
use crate::geometry::convexity_probe;
use crate::linalg::C64;
use crate::model::{point_push, real_form, AffineMap, HermitianTuple, MatrixTuple, OperatorSpec, RangePoint};
use crate::polyhedral::{conical_points, detect_polyhedral};
use crate::range::{boundary_face, complex_point, directions, sample_inner, support_function, GAP_TOL};
use crate::structure::{certify_commuting_normal_with, CommuteOptions};

pub use input::{parse_tuple_file, parse_tuple_str, TupleInput};
pub use report::{Plot, Table};

pub const SCHEMA_VERSION: u32 = 1;

/// Failure of a job, carrying its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Parse(_) => 2,
            Self::Validation(_) => 3,
            Self::Numerical(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence(_) => Self::Numerical(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Support,
    Boundary,
    Inner,
    Polycheck,
    Convexcheck,
    Commutecheck,
    Essrange,
    Closure,
    Probe,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::Support => "support",
            Self::Boundary => "boundary",
            Self::Inner => "inner",
            Self::Polycheck => "polycheck",
            Self::Convexcheck => "convexcheck",
            Self::Commutecheck => "commutecheck",
            Self::Essrange => "essrange",
            Self::Closure => "closure",
            Self::Probe => "probe",
        }
    }

    fn needs_spec(self) -> bool {
        matches!(self, Self::Essrange | Self::Closure | Self::Probe)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Polyhedrality threshold relative to scale.
    pub poly: f64,
    /// Commutator and normality defect threshold relative to `scale²`.
    pub commute: f64,
    /// Spectral gap below which a support direction exposes a face, relative to scale.
    pub gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { poly: crate::polyhedral::POLY_TOL, commute: 1e-9, gap: GAP_TOL }
    }
}

/// One fully specified job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: Command,
    pub input: PathBuf,
    pub k: usize,
    pub dirs: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Real coordinates kept for planar plots.
    pub projection: Option<(usize, usize)>,
    pub format: Format,
    /// Truncation size used when a spec feeds a tuple command.
    pub truncation: usize,
    pub schedule: Vec<usize>,
    pub full_sweep: bool,
    pub output: Option<PathBuf>,
}

impl JobConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            k: 1,
            dirs: 360,
            samples: 2000,
            seed: 0,
            tolerances: Tolerances::default(),
            projection: None,
            format: Format::Json,
            truncation: 64,
            schedule: vec![100, 200, 400],
            full_sweep: false,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.k == 0 {
            return Err(CliError::Usage("--k must be at least 1".into()));
        }
        if self.dirs < 4 {
            return Err(CliError::Usage("--dirs must be at least 4".into()));
        }
        if self.schedule.is_empty() || self.schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage("--schedule must be a non-empty increasing list".into()));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "jnr", version, about = "Joint k-numerical ranges of operator tuples")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Support function h_k(u) over a direction sweep.
    Support(JobArgs),
    /// Boundary points exposed by a direction sweep.
    Boundary(JobArgs),
    /// Points of W_k from random isometries.
    Inner(JobArgs),
    /// Polyhedrality of conv W_k with vertices and conical points.
    Polycheck(JobArgs),
    /// Convexity of W_k: certificate or nonconvexity witness.
    Convexcheck(JobArgs),
    /// Commuting-normal certification, algebraic against geometric.
    Commutecheck(JobArgs),
    /// Essential range of an operator spec.
    Essrange(JobArgs),
    /// Closure of conv W_k for an operator spec.
    Closure(JobArgs),
    /// Attainment flags for the closure hull over a truncation schedule.
    Probe(JobArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    /// Tuple or spec file (JSON).
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 360)]
    dirs: usize,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the command's main tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Real coordinates i,j for planar plots (0-based).
    #[arg(long, value_parser = parse_pair)]
    project: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Truncation size for operator specs.
    #[arg(long = "N", default_value_t = 64)]
    n: usize,
    /// Increasing truncation sizes for `probe`.
    #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
    schedule: Vec<usize>,
    /// Test every k = 1..n−1 in `commutecheck`.
    #[arg(long)]
    full_sweep: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected i,j")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

impl From<CliCommand> for JobConfig {
    fn from(c: CliCommand) -> Self {
        let (command, a) = match c {
            CliCommand::Support(a) => (Command::Support, a),
            CliCommand::Boundary(a) => (Command::Boundary, a),
            CliCommand::Inner(a) => (Command::Inner, a),
            CliCommand::Polycheck(a) => (Command::Polycheck, a),
            CliCommand::Convexcheck(a) => (Command::Convexcheck, a),
            CliCommand::Commutecheck(a) => (Command::Commutecheck, a),
            CliCommand::Essrange(a) => (Command::Essrange, a),
            CliCommand::Closure(a) => (Command::Closure, a),
            CliCommand::Probe(a) => (Command::Probe, a),
        };
        let mut tolerances = Tolerances::default();
        if let Some(t) = a.tol {
            match command {
                Command::Commutecheck => tolerances.commute = t,
                Command::Support | Command::Boundary => tolerances.gap = t,
                _ => tolerances.poly = t,
            }
        }
        Self {
            command,
            input: a.input,
            k: a.k,
            dirs: a.dirs,
            samples: a.samples,
            seed: a.seed,
            tolerances,
            projection: a.project,
            format: a.format,
            truncation: a.n,
            schedule: a.schedule,
            full_sweep: a.full_sweep,
            output: a.out,
        }
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = std::env::var("JNR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cfg = JobConfig::from(cli.command);
    let result = dispatch(&cfg).and_then(|text| match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("jnr: {e}");
            e.exit_code()
        }
    }
}

/// What a command produced, before formatting.
struct Outcome {
    result: Value,
    table: Table,
    plot: Option<Plot>,
}

/// Runs one job and renders the report in the requested format.
pub fn dispatch(cfg: &JobConfig) -> Result<String, CliError> {
    cfg.validate()?;
    let bytes = std::fs::read(&cfg.input).map_err(|e| CliError::Parse(format!("{}: {e}", cfg.input.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Parse(format!("{}: {e}", cfg.input.display())))?;
    let input = parse_tuple_str(&text)?;
    let outcome = match (&input, cfg.command.needs_spec()) {
        (TupleInput::Spec(spec), true) => spec_job(cfg, spec)?,
        (TupleInput::Tuple(_), true) => {
            return Err(CliError::Validation(format!("{} needs an operator spec (a file with a \"head\" field)", cfg.command.name())))
        }
        (TupleInput::Tuple(t), false) => tuple_job(cfg, t)?,
        (TupleInput::Spec(spec), false) => tuple_job(cfg, &spec.truncate(cfg.truncation))?,
    };
    match cfg.format {
        Format::Json => {
            let report = json!({
                "schema": SCHEMA_VERSION,
                "command": cfg.command.name(),
                "provenance": provenance(cfg, &bytes),
                "result": outcome.result,
            });
            Ok(serde_json::to_string_pretty(&report).expect("reports serialize") + "\n")
        }
        Format::Csv => Ok(outcome.table.to_csv()),
        Format::Svg => outcome
            .plot
            .map(|p| p.to_svg())
            .ok_or_else(|| CliError::Usage(format!("{} has no planar plot; use --project i,j or another format", cfg.command.name()))),
    }
}

fn provenance(cfg: &JobConfig, bytes: &[u8]) -> Value {
    let digest = Sha256::digest(bytes);
    let hash: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    json!({
        "tool": "jnr",
        "version": env!("CARGO_PKG_VERSION"),
        "input_sha256": hash,
        "input": cfg.input.display().to_string(),
        "k": cfg.k,
        "dirs": cfg.dirs,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "truncation": cfg.truncation,
        "tolerances": {
            "poly": cfg.tolerances.poly,
            "commute": cfg.tolerances.commute,
            "gap": cfg.tolerances.gap,
        },
        "timestamp": timestamp,
    })
}

fn cj(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn cvec(zs: &[C64]) -> Vec<[f64; 2]> {
    zs.iter().map(|&z| cj(z)).collect()
}

fn coord_labels(t: &MatrixTuple, h: &HermitianTuple) -> Vec<String> {
    h.parts()
        .iter()
        .map(|p| {
            let name = t.labels().map(|l| l[p.source].clone()).unwrap_or_else(|| format!("A{}", p.source + 1));
            format!("{} {name}", if p.imaginary { "Im" } else { "Re" })
        })
        .collect()
}

fn indexed(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

fn nums(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|&x| report::num(x)).collect()
}

/// Planar view of a d-dimensional body: the identity for d = 2, otherwise
/// the requested coordinate pair.
fn view(cfg: &JobConfig, d: usize) -> Result<Option<(usize, usize, AffineMap)>, CliError> {
    if cfg.format != Format::Svg {
        return Ok(None);
    }
    let (i, j) = match (cfg.projection, d) {
        (Some(p), _) => p,
        (None, 2) => (0, 1),
        (None, _) => return Err(CliError::Usage(format!("the range has {d} real coordinates; pass --project i,j for svg"))),
    };
    Ok(Some((i, j, AffineMap::coordinate_projection(d, i, j)?)))
}

fn project(p: &RangePoint, map: &AffineMap, k: usize) -> Result<[f64; 2], CliError> {
    let q = point_push(p, map, k)?;
    Ok([q.coords[0], q.coords[1]])
}

fn body_plot(cfg: &JobConfig, h: &HermitianTuple, title: String) -> Result<Option<Plot>, CliError> {
    let Some((i, j, map)) = view(cfg, h.len())? else { return Ok(None) };
    let cloud = sample_inner(h, cfg.k, cfg.samples, cfg.seed)?;
    let plane = directions(2, cfg.dirs, cfg.seed);
    let lifted: Vec<Vec<f64>> = plane
        .iter()
        .map(|v| {
            let mut u = vec![0.0; h.len()];
            u[i] += v[0];
            u[j] += v[1];
            u
        })
        .collect();
    let values = support_function(h, cfg.k, &lifted)?;
    Ok(Some(Plot {
        title,
        cloud: cloud.points.iter().map(|p| project(p, &map, cfg.k)).collect::<Result<_, _>>()?,
        envelope: plane.iter().zip(values).map(|(v, h)| ([v[0], v[1]], h)).collect(),
        vertices: Vec::new(),
    }))
}

fn tuple_job(cfg: &JobConfig, t: &MatrixTuple) -> Result<Outcome, CliError> {
    let h = real_form(t, true)?;
    let d = h.len();
    let k = cfg.k;
    if k > h.dim() {
        return Err(Error::KOutOfRange { k, max: h.dim() }.into());
    }
    let labels = coord_labels(t, &h);
    let title = format!("W_{k} {}", cfg.input.display());
    let scale = h.scale();
    let outcome = match cfg.command {
        Command::Support => {
            let dirs = directions(d, cfg.dirs, cfg.seed);
            let values = support_function(&h, k, &dirs)?;
            let mut table = Table::new([indexed("u", d), vec!["h".into()]].concat());
            let rows: Vec<Value> = dirs
                .iter()
                .zip(&values)
                .map(|(u, v)| {
                    table.push([nums(u), vec![report::num(*v)]].concat());
                    json!({"u": u, "h": v})
                })
                .collect();
            Outcome { result: json!({"k": k, "coordinates": labels, "rows": rows}), table, plot: body_plot(cfg, &h, title)? }
        }
        Command::Boundary => {
            let dirs = directions(d, cfg.dirs, cfg.seed);
            let gap_tol = cfg.tolerances.gap * scale;
            let faces: Vec<_> = dirs.par_iter().map(|u| boundary_face(&h, k, u, gap_tol)).collect::<Result<_, _>>()?;
            let mut table = Table::new([indexed("u", d), vec!["h".into(), "gap".into(), "face_dim".into()], indexed("x", d)].concat());
            let rows: Vec<Value> = faces
                .iter()
                .map(|s| {
                    let x = s.point.as_ref().map(|p| p.coords.clone()).unwrap_or_default();
                    table.push([nums(&s.u), nums(&[s.value, s.gap]), vec![s.face_dim.to_string()], nums(&x)].concat());
                    json!({"u": s.u, "h": s.value, "gap": s.gap, "face_dim": s.face_dim, "point": x})
                })
                .collect();
            Outcome { result: json!({"k": k, "coordinates": labels, "rows": rows}), table, plot: body_plot(cfg, &h, title)? }
        }
        Command::Inner => {
            let cloud = sample_inner(&h, k, cfg.samples, cfg.seed)?;
            let mut table = Table::new([indexed("x", d), vec!["provenance".into()]].concat());
            for p in &cloud.points {
                table.push([nums(&p.coords), vec![serde_json::to_value(p.provenance).unwrap().as_str().unwrap().to_string()]].concat());
            }
            let plot = body_plot(cfg, &h, title)?;
            Outcome { result: json!({"k": k, "coordinates": labels, "points": cloud.points}), table, plot }
        }
        Command::Polycheck => {
            let cert = detect_polyhedral(&h, k, cfg.dirs, cfg.tolerances.poly, cfg.seed)?;
            let conical = conical_points(&cert, d);
            let mut table = Table::new([indexed("x", d), vec!["supporting_directions".into(), "conical".into()]].concat());
            let vertices: Vec<Value> = cert
                .vertices
                .iter()
                .zip(&cert.normals_per_vertex)
                .enumerate()
                .map(|(i, (v, normals))| {
                    let is_conical = conical.contains(&i);
                    table.push([nums(&v.coords), vec![normals.len().to_string(), is_conical.to_string()]].concat());
                    json!({
                        "coords": v.coords,
                        "complex": cvec(&complex_point(&h, v)),
                        "supporting_directions": normals.len(),
                        "conical": is_conical,
                    })
                })
                .collect();
            let mut plot = body_plot(cfg, &h, title)?;
            if let (Some(p), Some((_, _, map))) = (plot.as_mut(), view(cfg, d)?) {
                p.vertices = cert.vertices.iter().map(|v| project(v, &map, k)).collect::<Result<_, _>>()?;
            }
            Outcome {
                result: json!({
                    "k": k,
                    "coordinates": labels,
                    "is_polyhedral": cert.is_polyhedral,
                    "support_gap": cert.support_gap,
                    "tol": cert.tol,
                    "cluster_radius": cert.cluster_radius,
                    "rounds": cert.rounds,
                    "fresh_points": cert.fresh_points,
                    "vertices": vertices,
                    "conical": conical,
                }),
                table,
                plot,
            }
        }
        Command::Convexcheck => {
            let v = convexity_probe(&h, k, cfg.samples, cfg.seed)?;
            let mut table = Table::new(vec!["status".into(), "affine_dim".into(), "pairs_tested".into(), "margin".into()]);
            let status = serde_json::to_value(v.status).unwrap();
            table.push(vec![
                status.as_str().unwrap().to_string(),
                v.affine_dim.to_string(),
                v.pairs_tested.to_string(),
                v.witness.as_ref().map(|w| report::num(w.margin)).unwrap_or_default(),
            ]);
            let mut plot = body_plot(cfg, &h, title)?;
            if let (Some(p), Some(w), Some((_, _, map))) = (plot.as_mut(), v.witness.as_ref(), view(cfg, d)?) {
                let mid = RangePoint::new(w.midpoint.clone(), crate::model::Provenance::Formula);
                p.vertices = vec![project(&mid, &map, k)?];
            }
            Outcome { result: json!({"k": k, "coordinates": labels, "verdict": v}), table, plot }
        }
        Command::Commutecheck => {
            let opts = CommuteOptions { tol: cfg.tolerances.commute, dirs: cfg.dirs, seed: cfg.seed, full_sweep: cfg.full_sweep };
            let v = certify_commuting_normal_with(t, opts)?;
            let mut table = Table::new(vec!["algebraic".into(), "geometric".into(), "agree".into(), "max_defect".into()]);
            table.push(vec![v.algebraic.to_string(), v.geometric.to_string(), v.agree.to_string(), report::num(v.defects.max_defect())]);
            let certificates: Vec<Value> = v
                .certificates
                .iter()
                .map(|c| json!({"k": c.k, "is_polyhedral": c.is_polyhedral, "support_gap": c.support_gap, "vertices": c.vertices.len()}))
                .collect();
            let spectrum = v.joint_spectrum.as_ref().map(|js| {
                json!({
                    "vectors": js.vectors.iter().map(|p| cvec(p)).collect::<Vec<_>>(),
                    "multiplicities": js.multiplicities,
                })
            });
            Outcome {
                result: json!({
                    "algebraic": v.algebraic,
                    "geometric": v.geometric,
                    "agree": v.agree,
                    "max_defect": v.defects.max_defect(),
                    "commutators": v.defects.commutators,
                    "normality": v.defects.normality,
                    "certificates": certificates,
                    "joint_spectrum": spectrum,
                }),
                table,
                plot: None,
            }
        }
        Command::Essrange | Command::Closure | Command::Probe => unreachable!("spec commands are routed elsewhere"),
    };
    Ok(outcome)
}

fn spec_job(cfg: &JobConfig, spec: &OperatorSpec) -> Result<Outcome, CliError> {
    let k = cfg.k;
    match cfg.command {
        Command::Essrange => {
            let e = essential_range(spec)?;
            let m = spec.len();
            let mut table = Table::new((1..=m).flat_map(|j| [format!("re{j}"), format!("im{j}")]).collect());
            for p in &e.points {
                table.push(p.iter().flat_map(|z| [report::num(z.re), report::num(z.im)]).collect());
            }
            let points: Vec<Vec<[f64; 2]>> = e.points.iter().map(|p| cvec(p)).collect();
            Ok(Outcome { result: json!({"points": points, "is_singleton": e.is_singleton}), table, plot: None })
        }
        Command::Closure => {
            let r = closure_hull(spec, k, cfg.truncation, cfg.dirs)?;
            let d = r.hull.dim;
            let mut table = Table::new([indexed("u", d), vec!["h".into()]].concat());
            for h in &r.hull.outer {
                table.push([nums(&h.u), vec![report::num(h.h)]].concat());
            }
            let plot = match view(cfg, d)? {
                None => None,
                Some((_, _, map)) => Some(Plot {
                    title: format!("closure of conv W_{k}"),
                    cloud: r.hull.inner.iter().map(|p| project(p, &map, k)).collect::<Result<_, _>>()?,
                    envelope: if d == 2 { r.hull.outer.iter().map(|h| ([h.u[0], h.u[1]], h.h)).collect() } else { Vec::new() },
                    vertices: Vec::new(),
                }),
            };
            Ok(Outcome {
                result: json!({
                    "k": k,
                    "truncation_sizes": r.truncation_sizes,
                    "interval": r.interval(),
                    "halfspaces": r.hull.outer,
                    "boundary_points": r.hull.inner,
                    "cross_check_error": r.cross_check_error,
                    "consistent": r.consistent,
                }),
                table,
                plot,
            })
        }
        Command::Probe => {
            let r = closedness_probe(spec, k, &cfg.schedule, cfg.dirs)?;
            let c = closedness_consistency(spec, k, &cfg.schedule, cfg.dirs)?;
            let d = r.hull.dim;
            let mut table = Table::new([indexed("u", d), vec!["attainment".into(), "closure_value".into(), "deficit".into(), "far_mass".into()]].concat());
            for f in &r.flags {
                let a = serde_json::to_value(f.attainment).unwrap();
                table.push(
                    [
                        nums(&f.u),
                        vec![
                            a.as_str().unwrap().to_string(),
                            report::num(f.closure_value),
                            report::num(*f.deficits.last().unwrap()),
                            report::num(*f.far_mass.last().unwrap()),
                        ],
                    ]
                    .concat(),
                );
            }
            Ok(Outcome {
                result: json!({
                    "k": k,
                    "truncation_sizes": r.truncation_sizes,
                    "interval": r.interval(),
                    "flags": r.flags,
                    "cross_check_error": r.cross_check_error,
                    "consistent": r.consistent,
                    "consistency": c,
                }),
                table,
                plot: None,
            })
        }
        _ => unreachable!("tuple commands are routed elsewhere"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(CliError::from(Error::EmptyTuple).exit_code(), 3);
        assert_eq!(CliError::from(Error::NoConvergence(60)).exit_code(), 4);
    }

    #[test]
    fn config_invariants() {
        let mut cfg = JobConfig::new(Command::Support, "x.json");
        assert!(cfg.validate().is_ok());
        cfg.dirs = 3;
        assert!(matches!(cfg.validate(), Err(CliError::Usage(_))));
        cfg.dirs = 4;
        cfg.k = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn argument_parsing() {
        let cli = Cli::try_parse_from(["jnr", "polycheck", "--k", "2", "ex77.json", "--N", "16", "--project", "0,1"]).unwrap();
        let cfg = JobConfig::from(cli.command);
        assert_eq!(cfg.command, Command::Polycheck);
        assert_eq!((cfg.k, cfg.truncation, cfg.projection), (2, 16, Some((0, 1))));
        assert_eq!(cfg.seed, 0);
        let cli = Cli::try_parse_from(["jnr", "probe", "s.json", "--schedule", "10,20"]).unwrap();
        assert_eq!(JobConfig::from(cli.command).schedule, vec![10, 20]);
    }
}
