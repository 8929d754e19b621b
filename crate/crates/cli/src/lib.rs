//! The `polysing` command line: `analyze`, `pencil` and `verify-paper`.
//!
//! [`run`] takes the argument list and returns the exit code and both
//! output streams, so the binary is a thin wrapper and tests need no
//! subprocess.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use polysing_core::edge_pencil::{mu_of_pencil, solve_spectrum, DihedronPencil, MuValue, SpectralSettings, Spectrum, Window};
use polysing_core::exec::Execution;
use polysing_core::fixtures::{default_fixtures, verify, Fixture, FixtureOutcome};
use polysing_core::geometry::{solids, BoundaryAssignment, BoundaryCondition, Domain, DomainFile, DEFAULT_TOLERANCE};
use polysing_core::regularity::{
    evaluate, profile, scan, Assumptions, ConfigMode, Configuration, ProblemKind, RegularityQuery, RegularityReport, Target,
    Verdict,
};
use polysing_core::scalar::{EpsNum, Num};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FIXTURE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "polysing", version, about = "Edge and vertex exponents and regularity checks for Stokes flows in polyhedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regularity report for a domain file, a built-in solid or a class profile.
    Analyze(AnalyzeArgs),
    /// Eigenvalues of the edge pencil of a wedge.
    Pencil(PencilArgs),
    /// Recompute the reference table and compare.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    #[default]
    NavierStokes,
    StokesLinear,
}

impl From<Problem> for ProblemKind {
    fn from(p: Problem) -> ProblemKind {
        match p {
            Problem::NavierStokes => ProblemKind::NavierStokes,
            Problem::StokesLinear => ProblemKind::StokesLinear,
        }
    }
}

#[derive(Args, Debug)]
pub struct Shared {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Collocation degree of the edge pencil.
    #[arg(long, default_value_t = 24)]
    pub n: usize,
    /// Run without the thread pool.
    #[arg(long)]
    pub sequential: bool,
}

impl Shared {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "solid", "profile"])))]
pub struct AnalyzeArgs {
    /// Domain file (JSON).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Built-in solid: tetrahedron, cube, octahedron, dodecahedron, icosahedron, step-prism.
    #[arg(long)]
    pub solid: Option<String>,
    /// Use the exterior of the built-in solid.
    #[arg(long, requires = "solid")]
    pub complement: bool,
    /// Condition on every face of the built-in solid (tag or index).
    #[arg(long, requires = "solid", default_value = "dirichlet")]
    pub bc: String,
    /// Class profile from the catalogue.
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long, value_enum, default_value_t = Problem::NavierStokes)]
    pub problem: Problem,
    /// w1, w2, c1, c2 or exist; default scans w1, w2 and (when admissible) exist.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    /// Vertex weights, comma separated; one value is broadcast.
    #[arg(long)]
    pub beta: Option<String>,
    /// Edge weights, comma separated; one value is broadcast.
    #[arg(long)]
    pub delta: Option<String>,
    /// Geometric tolerance for planarity and convexity tests.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Assert that the vertex cones at Neumann vertices are Lipschitz graphs.
    #[arg(long)]
    pub lipschitz: bool,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Args, Debug)]
pub struct PencilArgs {
    /// Opening angle: radians, `pi`, `a*pi` or `a*pi/b`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    /// Boundary indices on the two faces, `d_plus,d_minus`.
    #[arg(long, default_value = "0,0")]
    pub bc: String,
    /// Real-part window `lo,hi`.
    #[arg(long, default_value = "0,2", allow_hyphen_values = true)]
    pub window: String,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Replace every row tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Outcome {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Structured output of `analyze`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub domain: String,
    pub mode: ConfigMode,
    pub reports: Vec<RegularityReport>,
    pub warnings: Vec<String>,
}

/// Structured output of `pencil`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PencilOutput {
    pub theta: f64,
    pub bc: (u8, u8),
    pub spectrum: Spectrum,
    pub mu: Option<MuValue>,
}

/// Structured output of `verify-paper`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub rows: Vec<FixtureOutcome>,
    pub passed: usize,
    pub failed: usize,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match cli.command {
        Command::Analyze(a) => analyze(&a),
        Command::Pencil(p) => pencil(&p),
        Command::VerifyPaper(v) => verify_paper(&v, default_fixtures()),
    }
}

fn settings(shared: &Shared) -> Result<SpectralSettings, String> {
    if shared.n < 4 {
        return Err(format!("collocation degree {} is below 4", shared.n));
    }
    Ok(SpectralSettings { n: shared.n, ..SpectralSettings::default() })
}

/// Parses `1.5`, `pi`, `1.5*pi`, `3*pi/2` or `pi/4`.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim().replace(' ', "");
    let bad = || format!("cannot read the angle '{text}'");
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&t[..at], &t[at + 2..]);
    let factor = match head.strip_suffix('*') {
        Some(a) => a.parse::<f64>().map_err(|_| bad())?,
        None if head.is_empty() => 1.0,
        None => return Err(bad()),
    };
    let divisor = match tail.strip_prefix('/') {
        Some(b) => b.parse::<f64>().map_err(|_| bad())?,
        None if tail.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(factor * PI / divisor)
}

fn parse_pair(text: &str, what: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|_| format!("{what}: cannot read '{a}'"))?,
            b.parse().map_err(|_| format!("{what}: cannot read '{b}'"))?,
        )),
        _ => Err(format!("{what} expects two comma-separated values, got '{text}'")),
    }
}

fn parse_weights(text: &Option<String>) -> Result<Vec<EpsNum>, String> {
    match text {
        None => Ok(vec![]),
        Some(t) => t.split(',').map(|x| x.trim().parse::<EpsNum>().map_err(|e| e.to_string())).collect(),
    }
}

fn parse_num(text: &Option<String>) -> Result<Option<Num>, String> {
    text.as_ref().map(|t| t.trim().parse::<Num>().map_err(|e| e.to_string())).transpose()
}

fn boundary_tag(tag: &str) -> Result<BoundaryCondition, String> {
    if let Ok(d) = tag.parse::<u8>() {
        return BoundaryCondition::from_index(d).map_err(|e| e.to_string());
    }
    ["dirichlet", "tangential-velocity", "slip", "neumann"]
        .iter()
        .enumerate()
        .find(|(_, t)| **t == tag)
        .map(|(i, _)| BoundaryCondition::from_index(i as u8).expect("index in range"))
        .ok_or_else(|| format!("unknown boundary tag '{tag}'"))
}

fn configuration(a: &AnalyzeArgs, spectral: &SpectralSettings) -> Result<Configuration, String> {
    let problem = ProblemKind::from(a.problem);
    if let Some(name) = &a.profile {
        let mut assumptions = Assumptions::default();
        assumptions.lipschitz_graph |= a.lipschitz;
        let p = profile(name).map_err(|e| e.to_string())?;
        return Configuration::from_profile(&p, problem, assumptions).map_err(|e| e.to_string());
    }
    let tol = a.tol.unwrap_or(DEFAULT_TOLERANCE);
    if !(tol > 0.0) {
        return Err(format!("tolerance {tol} must be positive"));
    }
    let mut domain = if let Some(path) = &a.input {
        let source = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let file = DomainFile::parse(&source).map_err(|e| format!("{}: {e}", path.display()))?;
        file.into_domain(tol).map_err(|e| format!("{}: {e}", path.display()))?
    } else {
        let name = a.solid.as_deref().unwrap_or_default();
        let poly = solids::by_name(name, a.complement).ok_or_else(|| format!("unknown solid '{name}'"))?;
        let bc = boundary_tag(&a.bc)?;
        let n = poly.faces.len();
        Domain::new(poly, BoundaryAssignment::uniform(n, bc)).map_err(|e| e.to_string())?
    };
    domain.assumptions.lipschitz_graph |= a.lipschitz;
    Configuration::from_domain(&domain, problem, spectral, a.shared.execution()).map_err(|e| e.to_string())
}

fn reports(a: &AnalyzeArgs, config: &Configuration) -> Result<Vec<RegularityReport>, String> {
    let beta = parse_weights(&a.beta)?;
    let delta = parse_weights(&a.delta)?;
    let s = parse_num(&a.s)?;
    let sigma = parse_num(&a.sigma)?;
    let err = |e: polysing_core::Error| e.to_string();
    let Some(target) = &a.target else {
        if s.is_some() || sigma.is_some() || !beta.is_empty() || !delta.is_empty() {
            return Err("--s, --sigma, --beta and --delta need --target".into());
        }
        let mut out = vec![scan(config, Target::W1).map_err(err)?, scan(config, Target::W2).map_err(err)?];
        if config.edges.iter().all(|e| e.dirichlet_adjacent()) {
            out.push(scan(config, Target::Exist).map_err(err)?);
        }
        return Ok(out);
    };
    let target: Target = target.parse().map_err(err)?;
    let query = RegularityQuery { target, s, sigma, beta, delta };
    if !target.is_holder() && s.is_none() && sigma.is_none() && query.beta.is_empty() && query.delta.is_empty() {
        return Ok(vec![scan(config, target).map_err(err)?]);
    }
    Ok(vec![evaluate(config, &query).map_err(err)?])
}

fn warnings(reports: &[RegularityReport]) -> Vec<String> {
    let mut out = Vec::new();
    for r in reports {
        if r.verdict == Verdict::Unknown {
            out.push(format!("{}: verdict unknown ({})", r.target, r.notes.join("; ")));
        }
        if let Some(i) = &r.s_interval {
            if i.conditional {
                out.push(format!("{}: s-interval is conditional on {}", r.target, i.pending.join(", ")));
            }
        }
    }
    out
}

fn analyze(a: &AnalyzeArgs) -> Outcome {
    let spectral = match settings(&a.shared) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    let config = match configuration(a, &spectral) {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(e),
    };
    let reports = match reports(a, &config) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let analysis = Analysis { domain: config.name.clone(), mode: config.mode, warnings: warnings(&reports), reports };
    let mut stderr = String::new();
    for w in &analysis.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let stdout = match a.shared.format {
        Format::Json => serde_json::to_string_pretty(&analysis).expect("analysis serializes") + "\n",
        Format::Text => analysis.reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
    };
    Outcome { code: EXIT_OK, stdout, stderr }
}

fn pencil(p: &PencilArgs) -> Outcome {
    let run = || -> Result<PencilOutput, String> {
        let spectral = settings(&p.shared)?;
        let theta = parse_angle(&p.theta)?;
        let (a, b) = parse_pair(&p.bc, "--bc")?;
        let index = |x: f64| -> Result<BoundaryCondition, String> {
            if x.fract() != 0.0 || !(0.0..=3.0).contains(&x) {
                return Err(format!("boundary index {x} is not one of 0, 1, 2, 3"));
            }
            BoundaryCondition::from_index(x as u8).map_err(|e| e.to_string())
        };
        let (lo, hi) = parse_pair(&p.window, "--window")?;
        let pencil = DihedronPencil::new(theta, index(a)?, index(b)?).map_err(|e| e.to_string())?;
        let window = Window::new(lo, hi).map_err(|e| e.to_string())?;
        let spectrum = solve_spectrum(&pencil, &window, spectral.n).map_err(|e| e.to_string())?;
        let mu = mu_of_pencil(&pencil, &spectral).ok();
        Ok(PencilOutput { theta, bc: (a as u8, b as u8), spectrum, mu })
    };
    let out = match run() {
        Ok(o) => o,
        Err(e) => return Outcome::input_error(e),
    };
    let stdout = match p.shared.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("spectrum serializes") + "\n",
        Format::Text => pencil_text(&out),
    };
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

fn pencil_text(o: &PencilOutput) -> String {
    let mut s = String::new();
    let w = &o.spectrum.window;
    let _ = writeln!(
        s,
        "theta = {:.10} ({:.6}π), bc = {},{}, window {} < Re λ <= {}, |Im λ| <= {}, n = {}",
        o.theta,
        o.theta / PI,
        o.bc.0,
        o.bc.1,
        w.re_lo,
        w.re_hi,
        w.im_max,
        o.spectrum.n
    );
    let _ = writeln!(s, "{:>16} {:>16} {:>5} {:>10}", "Re λ", "Im λ", "mult", "residual");
    for e in &o.spectrum.eigenvalues {
        let _ = writeln!(s, "{:>16.10} {:>16.10} {:>5} {:>10.2e}", e.re, e.im, e.multiplicity, e.residual);
    }
    for e in &o.spectrum.unresolved {
        let _ = writeln!(s, "{:>16.10} {:>16.10} {:>5} {:>10.2e}  unresolved", e.re, e.im, e.multiplicity, e.residual);
    }
    match &o.mu {
        Some(m) => {
            let _ = writeln!(s, "mu = {:.10} ({:?}, {:?})", m.value, m.branch, m.provenance);
        }
        None => {
            let _ = writeln!(s, "mu not determined");
        }
    }
    s
}

/// `verify-paper` on an explicit fixture list; the harness perturbs it.
pub fn verify_paper(v: &VerifyArgs, mut fixtures: Vec<Fixture>) -> Outcome {
    let spectral = match settings(&v.shared) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    if let Some(tol) = v.tol {
        if !(tol > 0.0) {
            return Outcome::input_error(format!("tolerance {tol} must be positive"));
        }
        for f in &mut fixtures {
            f.tolerance = tol;
        }
    }
    let rows = verify(&fixtures, &spectral, v.shared.execution());
    let failed = rows.iter().filter(|r| !r.pass).count();
    let result = Verification { passed: rows.len() - failed, failed, rows };
    let stdout = match v.shared.format {
        Format::Json => serde_json::to_string_pretty(&result).expect("rows serialize") + "\n",
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:<42} {:>22} {:>22} {:>8}  {}", "fixture", "value", "expected", "tol", "result");
            for r in &result.rows {
                let _ = writeln!(
                    s,
                    "{:<42} {:>22} {:>22} {:>8.0e}  {}",
                    r.id,
                    r.value,
                    r.expected,
                    r.tolerance,
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            let _ = writeln!(s, "{} passed, {} failed", result.passed, result.failed);
            s
        }
    };
    Outcome { code: if failed == 0 { EXIT_OK } else { EXIT_FIXTURE }, stdout, stderr: String::new() }
}
