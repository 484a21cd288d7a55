//! The `curvkit` command line: argument parsing, JSON and text output, and
//! the reproduce harness.

pub mod report;
pub mod reproduce;

use crate::designs::{self, DesignError};
use crate::diameter::{self, DiameterError};
use crate::immersions::{self, ImmersionError, Sampler};
use crate::numkit::DEFAULT_RESTARTS;
use crate::scalarbounds::{self, BoundsError, BoundsKind, BoundsQuery};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "curvkit", version, about = "Normal curvature, spherical designs and diameter bounds")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kolmogorov-type L4/L2 diameters.
    #[command(subcommand)]
    Diameter(DiameterCmd),
    /// Spherical designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Catalog immersions and their curvature.
    #[command(subcommand)]
    Immersion(ImmersionCmd),
    /// Closed-form scalar-curvature values and curvature lower bounds.
    Bounds(BoundsArgs),
    /// Runs every claim check and prints the report.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum DiameterCmd {
    /// Searches the Grassmannian for a subspace with small sup ratio.
    Estimate {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// `D(m,p)`, the large-N limit.
    ClosedForm {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        p: u32,
    },
    /// Joint search over subspaces and coordinate weights.
    Lozenge {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Monte Carlo estimate of the sphere moment behind `D(m,p)`.
    Moment {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        p: u32,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DesignCmd {
    /// The regular n-gon on the circle.
    GenCircle {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the moment conditions of a design file.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: u8,
    },
    /// Least-squares search for an `n`-point degree-4 design on `S^{m-1}`.
    Search {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ImmersionSelect {
    #[arg(long)]
    pub name: String,
    /// Catalog parameter as `key=value`; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
}

#[derive(Debug, Subcommand)]
pub enum ImmersionCmd {
    /// Lists the catalog.
    List,
    /// Curvature invariants at a point, or the sampled supremum.
    Curvature {
        #[command(flatten)]
        select: ImmersionSelect,
        /// Comma-separated domain point; defaults to the domain center.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<f64>,
        #[arg(long)]
        global: bool,
        /// Random sample size for `--global`; the default adds a grid.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
    },
    /// Smallest singular value of the differential over a sample.
    Expansion {
        #[command(flatten)]
        select: ImmersionSelect,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: BoundsKind,
    #[arg(short)]
    pub m: Option<usize>,
    #[arg(short)]
    pub k: Option<usize>,
    #[arg(short)]
    pub n: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub sc: Option<f64>,
    #[arg(short)]
    pub r: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub sides: Vec<f64>,
    /// Band widths; `inf` is accepted.
    #[arg(long, value_delimiter = ',')]
    pub d: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Restricts the run to these claim ids.
    #[arg(long)]
    pub only: Vec<String>,
    /// Also verifies this design file as a claim.
    #[arg(long)]
    pub design_file: Option<PathBuf>,
    /// Prints the claim ids and exits.
    #[arg(long)]
    pub list: bool,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_kind(s: &str) -> Result<BoundsKind, String> {
    s.parse().map_err(|e: BoundsError| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Diameter(#[from] DiameterError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Immersion(#[from] ImmersionError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0} claim(s) failed")]
    ClaimsFailed(usize),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Diameter(_) => "diameter",
            CliError::Design(_) => "design",
            CliError::Immersion(_) => "immersion",
            CliError::Bounds(_) => "bounds",
            CliError::Io { .. } => "io",
            CliError::ClaimsFailed(_) => "claims_failed",
            CliError::UnknownClaim(_) => "unknown_claim",
        }
    }
}

/// What a command produced: a JSON body, plus an error when the exit code
/// must be nonzero even though output was written.
struct Output {
    body: Value,
    text: Option<String>,
    failure: Option<CliError>,
}

impl From<Value> for Output {
    fn from(body: Value) -> Self {
        Self { body, text: None, failure: None }
    }
}

fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn design_json(d: &designs::SphericalDesign) -> Value {
    json!({ "m": d.m(), "n": d.len(), "degree_claimed": d.degree_claimed(), "points": d.points() })
}

fn check_json(c: &designs::DesignCheck) -> Value {
    json!({ "pass": c.pass, "residual2": c.residual2, "residual3": c.residual3, "residual4": c.residual4 })
}

fn write_or_embed(d: &designs::SphericalDesign, out: &Option<PathBuf>) -> Result<Value, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, designs::write_design(d)).map_err(io_err(path))?;
            Ok(json!({ "written": path.display().to_string(), "m": d.m(), "n": d.len() }))
        }
        None => Ok(design_json(d)),
    }
}

fn run_diameter(cmd: DiameterCmd, seed: u64) -> Result<Output, CliError> {
    Ok(match cmd {
        DiameterCmd::Estimate { m, n, restarts } => {
            let e = diameter::estimate_d(m, n, restarts, seed)?;
            json!({
                "m": e.m, "n": e.n, "value": e.value, "closed_form_limit": e.closed_form_limit,
                "empirical_constant": e.empirical_constant(), "restarts": e.restarts_used,
                "witness": e.witness.rows(),
            })
        }
        DiameterCmd::ClosedForm { m, p } => json!({ "m": m, "p": p, "value": diameter::closed_form_d(m, p)? }),
        DiameterCmd::Lozenge { m, n, restarts } => {
            let e = diameter::estimate_lozenge(m, n, restarts, seed)?;
            json!({
                "m": m, "n": n, "value": e.quartic_value, "norm_ratio": e.norm_ratio(),
                "weights": e.weights.as_slice(), "witness": e.witness.rows(),
            })
        }
        DiameterCmd::Moment { m, p, samples } => {
            let e = diameter::mc_sphere_moment(m, p, samples, seed)?;
            json!({
                "m": m, "p": p, "samples": samples, "moment": e.estimate, "moment_stderr": e.stderr,
                "value": e.diameter(), "stderr": e.diameter_stderr(), "closed_form": diameter::closed_form_d(m, p)?,
            })
        }
    }
    .into())
}

fn run_design(cmd: DesignCmd, seed: u64) -> Result<Output, CliError> {
    Ok(match cmd {
        DesignCmd::GenCircle { n, out } => write_or_embed(&designs::circle_design(n)?, &out)?,
        DesignCmd::Verify { file, degree } => {
            let text = std::fs::read_to_string(&file).map_err(io_err(&file))?;
            let d = designs::read_design(&text)?;
            let mut v = check_json(&designs::verify_design(&d, degree)?);
            v["degree"] = json!(degree);
            v["m"] = json!(d.m());
            v["n"] = json!(d.len());
            v
        }
        DesignCmd::Search { m, n, max_iters, out } => {
            let s = designs::search_design(m, n, seed, max_iters)?;
            json!({
                "converged": s.converged, "iterations": s.iterations, "objective": s.objective,
                "residual": s.residual(), "check": check_json(&s.check), "design": write_or_embed(&s.design, &out)?,
            })
        }
    }
    .into())
}

fn select(s: &ImmersionSelect) -> Result<immersions::ImmersionSpec, CliError> {
    let params: BTreeMap<String, f64> = s.params.iter().cloned().collect();
    Ok(immersions::by_name(&s.name, &params)?)
}

fn run_immersion(cmd: ImmersionCmd, seed: u64) -> Result<Output, CliError> {
    Ok(match cmd {
        ImmersionCmd::List => {
            let entries: Vec<Value> = immersions::CATALOG
                .iter()
                .map(|(name, params, about)| {
                    json!({ "name": name, "params": params.split_whitespace().collect::<Vec<_>>(), "description": about })
                })
                .collect();
            json!({ "immersions": entries })
        }
        ImmersionCmd::Curvature { select: sel, point, global, samples, restarts } => {
            let spec = select(&sel)?;
            if global {
                let sampler = samples.map_or_else(|| Sampler::default_for(spec.m(), seed), |k| Sampler::light(k, seed));
                let g = immersions::curv_perp_global(&spec, &sampler, restarts, seed)?;
                json!({
                    "name": spec.name(), "m": spec.m(), "n": spec.n(), "curv_perp": g.sup,
                    "point": g.point, "direction": g.direction, "samples": g.samples,
                    "focal_radius": immersions::focal_radius(g.sup).ok(),
                })
            } else {
                let x = if point.is_empty() {
                    let d = spec.domain();
                    d.lower.iter().zip(&d.upper).map(|(a, b)| 0.5 * (a + b)).collect()
                } else {
                    point
                };
                let rep = immersions::curvature_report(&spec, &x, restarts, seed)?;
                let mut v = serde_json::to_value(&rep).expect("report serializes");
                v["name"] = json!(spec.name());
                v["m"] = json!(spec.m());
                v["n"] = json!(spec.n());
                v["pi_residual"] = json!(rep.pi_residual());
                v["spherical_curv"] = json!(immersions::spherical_curv(rep.curv_perp).ok());
                v
            }
        }
        ImmersionCmd::Expansion { select: sel, samples } => {
            let spec = select(&sel)?;
            let e = immersions::expansion_min(&spec, &Sampler::light(samples, seed))?;
            json!({ "name": spec.name(), "value": e.min_singular, "point": e.point, "samples": e.samples })
        }
    }
    .into())
}

fn run_bounds(a: BoundsArgs) -> Result<Output, CliError> {
    let q = BoundsQuery { m: a.m, k: a.k, n: a.n, sigma: a.sigma, sc: a.sc, r: a.r, sides: a.sides, d: a.d };
    let value = scalarbounds::evaluate(a.kind, &q)?;
    Ok(json!({ "kind": a.kind, "value": value }).into())
}

fn run_reproduce(a: ReproduceArgs, seed: u64) -> Result<Output, CliError> {
    let ctx = reproduce::Ctx { seed, design_file: a.design_file };
    if a.list {
        return Ok(json!({ "claims": reproduce::claim_ids(&ctx) }).into());
    }
    let known = reproduce::claim_ids(&ctx);
    if let Some(bad) = a.only.iter().find(|id| !known.contains(id)) {
        return Err(CliError::UnknownClaim(bad.clone()));
    }
    let mut only = a.only;
    if ctx.design_file.is_some() && !only.is_empty() {
        only.push("design-file".into());
    }
    let report = reproduce::reproduce(&ctx, &only);
    let failed = report.count(report::Status::Fail);
    Ok(Output {
        body: serde_json::to_value(&report).expect("report serializes"),
        text: Some(report.render_text()),
        failure: (failed > 0).then_some(CliError::ClaimsFailed(failed)),
    })
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn execute(cli: Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Diameter(c) => run_diameter(c, seed),
        Command::Design(c) => run_design(c, seed),
        Command::Immersion(c) => run_immersion(c, seed),
        Command::Bounds(a) => run_bounds(a),
        Command::Reproduce(a) => run_reproduce(a, seed),
    }
}

fn emit(out: &mut dyn Write, format: Format, body: &Value, text: Option<String>) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(body).expect("json")),
        Format::Text => {
            let text = text.unwrap_or_else(|| {
                let mut s = String::new();
                render_text(body, "", &mut s);
                s
            });
            write!(out, "{text}")
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// output. Returns the process exit code: 0 on success, 1 on numerical or
/// claim failure, 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                eprint!("{rendered}");
            }
            return code;
        }
    };
    let format = cli.format;
    let result = execute(cli);
    let written = match &result {
        Ok(o) => emit(out, format, &o.body, o.text.clone()),
        Err(e) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            emit(out, format, &body, None)
        }
    };
    if written.is_err() {
        return 1;
    }
    match result {
        Ok(Output { failure: None, .. }) => 0,
        _ => 1,
    }
}
