//! Command-line front end. [`run`] is pure: it returns what should be
//! printed and which files should be written, leaving IO to the binary.

use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::arc::{max_arc_search, ArcSearchOptions};
use crate::conic::{five_proper_conics, is_proper, pairwise_intersections, Conic, ConicAnalysis};
use crate::correspondence::certify;
use crate::export;
use crate::mub::{build_mub_set_with_tolerance, DEFAULT_TOLERANCE};
use crate::plane::{ElementKind, PlaneModel};
use crate::ring::{make_ring, Ring, RingKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Environment variable naming the artifact output directory.
pub const OUT_DIR_ENV: &str = "HJELMSLEV_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "hjelmslev",
    version,
    about = "Galois rings, Hjelmslev planes, conics, arcs and MUBs"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for artifact files; stdout only when unset.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a ring and its Teichmüller set.
    Ring(RingArgs),
    /// Enumerate PH(2, R): JSON, CSV incidence matrix, or DOT neighbour graph.
    Plane(RingArgs),
    /// Analyse a conic (the canonical one unless --coeffs is given).
    Conic(ConicArgs),
    /// Exhaustive k-arc search.
    Arc(ArcArgs),
    /// Build and verify a complete set of mutually unbiased bases.
    Mub(MubArgs),
    /// Full pipeline: ring, plane, canonical conic, MUBs, certificate.
    Correspond(MubArgs),
    /// Write every artifact for one ring into the output directory.
    Export(RingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Galois,
    Dual,
    Field,
}

impl From<KindArg> for RingKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Galois => RingKind::GaloisRing,
            KindArg::Dual => RingKind::DualNumbers,
            KindArg::Field => RingKind::Field,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = KindArg::Galois)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ConicArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// c11,c22,c33,c12,c13,c23 as integers mapped into the ring.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ArcArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long)]
    pub time_budget_ms: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct MubArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// A failure tagged with the module operation that produced it.
#[derive(Debug, Error)]
#[error("{module}::{operation}: {message}")]
pub struct CliError {
    pub module: &'static str,
    pub operation: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    fn domain(module: &'static str, operation: &'static str, e: impl std::fmt::Display) -> Self {
        CliError {
            module,
            operation,
            message: e.to_string(),
            exit_code: EXIT_DOMAIN,
        }
    }

    fn config(operation: &'static str, message: impl Into<String>) -> Self {
        CliError {
            module: "cli",
            operation,
            message: message.into(),
            exit_code: EXIT_CONFIG,
        }
    }

    pub fn report(&self) -> String {
        export::to_pretty(&json!({
            "schema": "hjelmslev.error",
            "version": export::SCHEMA_VERSION,
            "module": self.module,
            "operation": self.operation,
            "message": self.message,
        }))
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    /// Human-readable summary lines for stderr.
    pub notes: Vec<String>,
    /// (file name, contents) pairs for the output directory.
    pub artifacts: Vec<(String, String)>,
}

fn build_ring(args: &RingArgs) -> Result<Arc<Ring>, CliError> {
    make_ring(args.p, args.r, args.kind.into(), None).map_err(|e| CliError::domain("galois-rings", "make_ring", e))
}

fn build_plane(ring: Arc<Ring>) -> Result<PlaneModel, CliError> {
    PlaneModel::enumerate(ring).map_err(|e| CliError::domain("ring-plane", "enumerate_plane", e))
}

fn stem(args: &RingArgs) -> String {
    let kind = match args.kind {
        KindArg::Galois => "gr",
        KindArg::Dual => "dual",
        KindArg::Field => "gf",
    };
    format!("{kind}_p{}_r{}", args.p, args.r)
}

fn plane_rendering(model: &PlaneModel, format: Format) -> (String, &'static str) {
    match format {
        Format::Json => (export::to_pretty(&export::plane_json(model)), "json"),
        Format::Csv => (export::incidence_csv(model), "csv"),
        Format::Dot => (export::neighbour_dot(model), "dot"),
    }
}

fn conic_report(model: &PlaneModel, conic: Conic) -> Result<String, CliError> {
    let analysis = ConicAnalysis::new(conic, model).map_err(|e| CliError::domain("conics", "conic_points", e))?;
    let verdict = is_proper(&analysis.conic, model).map_err(|e| CliError::domain("conics", "is_proper", e))?;
    Ok(export::to_pretty(&export::conic_json(&analysis, model, verdict)))
}

fn conic_intersection_table(model: &PlaneModel) -> Result<String, CliError> {
    let conics = five_proper_conics(model.ring());
    let plain: Vec<Conic> = conics.iter().map(|(_, c)| c.clone()).collect();
    let entries = pairwise_intersections(&plain, model)
        .map_err(|e| CliError::domain("conics", "conic_pairwise_intersections", e))?;
    Ok(export::to_pretty(&export::intersections_json(&conics, &entries, model)))
}

pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let mut out = RunOutput::default();
    match &config.command {
        Command::Ring(args) => {
            let ring = build_ring(args)?;
            out.stdout = export::to_pretty(&export::ring_json(&ring));
            out.artifacts
                .push((format!("ring_{}.json", stem(args)), out.stdout.clone()));
        }
        Command::Plane(args) => {
            let model = build_plane(build_ring(args)?)?;
            let classes = model.neighbour_classes(ElementKind::Points);
            out.notes.push(format!(
                "{} points, {} lines, {} neighbour classes of {}",
                model.points().len(),
                model.lines().len(),
                classes.len(),
                classes[0].members.len()
            ));
            let (text, ext) = plane_rendering(&model, args.format);
            out.artifacts
                .push((format!("plane_{}.{ext}", stem(args)), text.clone()));
            out.stdout = text;
        }
        Command::Conic(args) => {
            let model = build_plane(build_ring(&args.ring)?)?;
            let ring = Arc::clone(model.ring());
            let conic = match &args.coeffs {
                Some(c) => {
                    let c: [i64; 6] = c
                        .as_slice()
                        .try_into()
                        .map_err(|_| CliError::config("parse", "--coeffs needs six integers"))?;
                    Conic::from_ints(ring, c).map_err(|e| CliError::domain("conics", "conic_points", e))?
                }
                None => Conic::canonical(ring),
            };
            out.stdout = conic_report(&model, conic)?;
            out.artifacts
                .push((format!("conic_{}.json", stem(&args.ring)), out.stdout.clone()));
        }
        Command::Arc(args) => {
            let model = build_plane(build_ring(&args.ring)?)?;
            let options = ArcSearchOptions {
                target: args.target,
                time_budget: args.time_budget_ms.map(Duration::from_millis),
            };
            let result = max_arc_search(&model, options);
            let summary = match args.target {
                Some(t) if result.max_size >= t => format!("found a {t}-arc"),
                Some(t) if result.exhausted => format!("no {t}-arc, exhausted"),
                Some(t) => format!("no {t}-arc found before the time budget ran out"),
                None if result.exhausted => format!("maximum arc size {}, exhausted", result.max_size),
                None => format!("largest arc found has size {}, not exhausted", result.max_size),
            };
            out.notes.push(summary);
            out.stdout = export::to_pretty(&export::arc_json(&result, &model));
            out.artifacts
                .push((format!("arc_{}.json", stem(&args.ring)), out.stdout.clone()));
        }
        Command::Mub(args) => {
            let set = build_mub_set_with_tolerance(args.p, args.r, args.tol)
                .map_err(|e| CliError::domain("mub", "build_mub_set", e))?;
            let matrix = export::deviation_csv(&set);
            out.stdout = match args.format {
                Format::Csv => matrix.clone(),
                Format::Json => {
                    out.notes.extend(matrix.lines().map(str::to_owned));
                    export::to_pretty(&export::mub_json(&set))
                }
                Format::Dot => return Err(CliError::config("parse", "mub output is json or csv")),
            };
            let ext = if args.format == Format::Csv { "csv" } else { "json" };
            out.artifacts
                .push((format!("mub_p{}_r{}.{ext}", args.p, args.r), out.stdout.clone()));
            if !set.is_complete() {
                return Err(CliError::domain(
                    "mub",
                    "verify_unbiased",
                    "constructed set failed verification",
                ));
            }
        }
        Command::Correspond(args) => {
            let ring = make_ring(args.p, args.r, RingKind::GaloisRing, None)
                .map_err(|e| CliError::domain("galois-rings", "make_ring", e))?;
            let model = build_plane(Arc::clone(&ring))?;
            let analysis = ConicAnalysis::new(Conic::canonical(ring), &model)
                .map_err(|e| CliError::domain("conics", "canonical_conic", e))?;
            let set = build_mub_set_with_tolerance(args.p, args.r, args.tol)
                .map_err(|e| CliError::domain("mub", "build_mub_set", e))?;
            let cert = certify(&set, &analysis, &model, args.tol)
                .map_err(|e| CliError::domain("correspondence", "certify", e))?;
            out.notes.push(format!(
                "q={}: {} bases <-> {} classes, all {} checks pass",
                cert.q,
                cert.basis_to_class.len(),
                analysis.classes.len(),
                cert.checks.len()
            ));
            out.stdout = export::to_pretty(&export::certificate_json(&cert));
            out.artifacts
                .push((format!("certificate_p{}_r{}.json", args.p, args.r), out.stdout.clone()));
        }
        Command::Export(args) => {
            if config.out_dir.is_none() {
                return Err(CliError::config(
                    "export",
                    format!("export needs --out-dir or {OUT_DIR_ENV}"),
                ));
            }
            let ring = build_ring(args)?;
            let model = build_plane(Arc::clone(&ring))?;
            let s = stem(args);
            out.artifacts
                .push((format!("ring_{s}.json"), export::to_pretty(&export::ring_json(&ring))));
            for format in [Format::Json, Format::Csv, Format::Dot] {
                let (text, ext) = plane_rendering(&model, format);
                out.artifacts.push((format!("plane_{s}.{ext}"), text));
            }
            out.artifacts
                .push((format!("conic_{s}.json"), conic_report(&model, Conic::canonical(ring))?));
            if model.ring().len() == 4 {
                out.artifacts.push((
                    format!("conic_intersections_{s}.json"),
                    conic_intersection_table(&model)?,
                ));
            }
            out.notes.push(format!("{} artifacts", out.artifacts.len()));
        }
    }
    Ok(out)
}

/// Parses arguments, mapping clap failures to exit code 2. Help and version
/// requests come back as `Ok(Err(text))`.
pub fn parse_args<I, T>(args: I) -> Result<Result<RunConfig, String>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(c) => Ok(Ok(c)),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Ok(Err(e.to_string())),
            _ => Err(CliError::config("parse", e.to_string())),
        },
    }
}
