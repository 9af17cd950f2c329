//! Command-line front end. Exit codes: 0 success, 1 failed verification or
//! computation, 2 bad arguments or input files.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self as stdio, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::congruence::{analyze_grid, lagrangian_residual, weingarten_test, GraphCongruence, WeingartenOptions, LAGRANGIAN_TOL};
use crate::error::GeometryError;
use crate::geodesic::{closed_form_state, integrate_geodesic, ruled_surface, GeodesicParams, GeodesicState};
use crate::grid::XiGrid;
use crate::io;
use crate::kahler::SpaceKind;
use crate::line_map::from_space;
use crate::minimal::{check_potential, is_flat_point, weierstrass_section, weierstrass_surface};
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "linespace", version, about = "Neutral Kähler geometry of oriented line spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the property suites and print a JSON report.
    Verify(VerifyArgs),
    /// Integrate a geodesic, or sweep its ruled surface.
    Geodesic(GeodesicArgs),
    /// Optical scalars and curvature of a polynomial section over a grid.
    Congruence(CongruenceArgs),
    /// Minimal (maximal) surface generated by a holomorphic potential.
    Weierstrass(WeierstrassArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Euclidean,
    Lorentzian,
    Both,
}

impl SpaceArg {
    fn spaces(self) -> Vec<SpaceKind> {
        match self {
            SpaceArg::Euclidean => vec![SpaceKind::Euclidean],
            SpaceArg::Lorentzian => vec![SpaceKind::Lorentzian],
            SpaceArg::Both => SpaceKind::BOTH.to_vec(),
        }
    }

    fn single(self) -> Result<SpaceKind, String> {
        match self {
            SpaceArg::Euclidean => Ok(SpaceKind::Euclidean),
            SpaceArg::Lorentzian => Ok(SpaceKind::Lorentzian),
            SpaceArg::Both => Err("this command needs a single space".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Obj,
    Json,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "both")]
    space: SpaceArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Run only these suites (repeatable or comma separated).
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    /// Sample count for the pointwise suites.
    #[arg(long)]
    samples: Option<usize>,
    /// Override a tolerance, NAME=VALUE (repeatable).
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct GeodesicArgs {
    #[arg(long, value_enum, default_value = "lorentzian")]
    space: SpaceArg,
    /// Closed-form constants (Lorentzian only); --c2 selects this mode.
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c5: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Fibre geodesic: ξ fixed, η moving linearly.
    #[arg(long)]
    fibre: bool,
    /// Initial data as "re" or "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    xi0: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    eta0: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    dxi: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    deta: Option<Complex64>,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    s1: f64,
    /// Add the deviation from the closed form as a last column.
    #[arg(long)]
    compare_closed_form: bool,
    /// Sweep the lines of the geodesic instead of printing the trajectory.
    #[arg(long)]
    ruled: bool,
    /// Rows (values of s) of the ruled mesh.
    #[arg(long, default_value_t = 41)]
    rows: usize,
    /// Ruling parameter range [-r_max, r_max] and its number of samples.
    #[arg(long, default_value_t = 2.0)]
    r_max: f64,
    #[arg(long, default_value_t = 21)]
    r_samples: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CongruenceArgs {
    /// Section JSON; its "space" field takes precedence over --space.
    #[arg(long)]
    section: PathBuf,
    #[arg(long, value_enum)]
    space: Option<SpaceArg>,
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], default_values_t = [20, 20])]
    grid: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    xi_max: f64,
    /// Support function value at the anchor.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    r0: f64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    anchor: Complex64,
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WeierstrassArgs {
    /// Potential JSON; its "space" field takes precedence over --space.
    #[arg(long)]
    w: PathBuf,
    #[arg(long, value_enum)]
    space: Option<SpaceArg>,
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], default_values_t = [41, 41])]
    grid: Vec<usize>,
    /// Vertices are taken on the disc |ξ| ≤ xi-max.
    #[arg(long, default_value_t = 0.8)]
    xi_max: f64,
    /// Evaluate |ρ| at every vertex.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value = "obj")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let v: f64 = value.trim().parse().map_err(|e| format!("bad tolerance value '{value}': {e}"))?;
    Ok((name.trim().to_string(), v))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number '{p}': {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected 're' or 're,im', got '{s}'")),
    }
}

/// Outcome of a command: an exit code plus a diagnostic for stderr.
struct Failure {
    code: i32,
    message: String,
}

fn config(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: msg.into(),
    }
}

fn failed(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAILED,
        message: msg.into(),
    }
}

fn geometry(e: GeometryError) -> Failure {
    failed(e.to_string())
}

type CmdResult = Result<i32, Failure>;

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match out {
        Some(p) => fs::File::create(p)
            .map(|f| Box::new(stdio::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| config(format!("cannot create {}: {e}", p.display()))),
        None => Ok(Box::new(stdio::BufWriter::new(stdio::stdout().lock()))),
    }
}

fn finish(mut w: Box<dyn Write>) -> Result<(), Failure> {
    w.flush().map_err(|e| failed(format!("write failed: {e}")))
}

fn read_file(p: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| config(format!("cannot read {}: {e}", p.display())))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LINESPACE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| config(format!("LINESPACE_THREADS must be a positive integer, got '{v}'")))?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let res = configure_threads().and_then(|_| match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Geodesic(a) => cmd_geodesic(a),
        Command::Congruence(a) => cmd_congruence(a),
        Command::Weierstrass(a) => cmd_weierstrass(a),
    });
    match res {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    if a.format != Format::Json {
        return Err(config("verify writes JSON only"));
    }
    let cfg = VerifyConfig {
        spaces: a.space.spaces(),
        seed: a.seed,
        suites: a.suite.into_iter().filter(|s| !s.is_empty()).collect(),
        samples: a.samples,
        tolerances: a.tol.into_iter().collect::<BTreeMap<_, _>>(),
    };
    let report = verify::run(&cfg).map_err(|e| config(e.to_string()))?;
    let mut w = sink(&a.out)?;
    writeln!(w, "{}", report.to_json()).map_err(|e| failed(e.to_string()))?;
    finish(w)?;
    for s in report.suites.iter().filter(|s| !s.passed) {
        eprintln!("FAIL {} ({}): max residual {:e}", s.name, s.space, s.max_residual);
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

/// States at the requested parameters, integrating between consecutive ones.
fn trajectory_at(space: SpaceKind, st0: GeodesicState, s_values: &[f64], step: f64) -> crate::Result<Vec<GeodesicState>> {
    let mut out = Vec::with_capacity(s_values.len());
    let mut st = st0;
    for &s in s_values {
        st = *integrate_geodesic(space, st, s, step)?.last().expect("trajectory is never empty");
        out.push(st);
    }
    Ok(out)
}

fn cmd_geodesic(a: GeodesicArgs) -> CmdResult {
    let space = a.space.single().map_err(config)?;
    if !(a.step > 0.0) || !a.step.is_finite() {
        return Err(config(format!("step must be positive, got {}", a.step)));
    }
    let zero = Complex64::new(0.0, 0.0);
    let params = match a.c2 {
        Some(c2) => {
            if space != SpaceKind::Lorentzian {
                return Err(config("closed-form geodesics exist only for the lorentzian space"));
            }
            if a.fibre {
                return Err(config("--fibre cannot be combined with closed-form constants"));
            }
            if c2 == 0.0 {
                return Err(config("closed form needs C2 != 0"));
            }
            Some(GeodesicParams {
                c1: a.c1.unwrap_or(0.0),
                c2,
                c5: a.c5.unwrap_or(0.0),
                theta: a.theta.unwrap_or(0.0),
            })
        }
        None => {
            if a.c1.is_some() || a.c5.is_some() || a.theta.is_some() {
                return Err(config("closed-form constants need --c2"));
            }
            None
        }
    };
    if a.compare_closed_form && params.is_none() {
        return Err(config("--compare-closed-form needs closed-form constants (--c2)"));
    }
    let st0 = match params {
        Some(gp) => closed_form_state(&gp, 0.0).map_err(|e| config(e.to_string()))?,
        None => {
            let dxi = if a.fibre { zero } else { a.dxi.unwrap_or(zero) };
            if a.fibre && a.dxi.is_some() {
                return Err(config("--fibre fixes the base velocity to zero"));
            }
            GeodesicState {
                xi: a.xi0.unwrap_or(zero),
                eta: a.eta0.unwrap_or(zero),
                dxi,
                deta: a.deta.unwrap_or(if a.fibre { Complex64::new(1.0, 0.0) } else { zero }),
                s: 0.0,
            }
        }
    };
    space.check_domain(st0.xi).map_err(|e| config(e.to_string()))?;

    if a.ruled {
        let format = a.format.unwrap_or(Format::Obj);
        if format == Format::Json {
            return Err(config("ruled surfaces are written as obj or csv"));
        }
        if a.rows < 2 || a.r_samples < 2 || !(a.r_max > 0.0) {
            return Err(config("ruled mesh needs rows >= 2, r-samples >= 2 and r-max > 0"));
        }
        let s_values: Vec<f64> = (0..a.rows).map(|k| a.s1 * k as f64 / (a.rows - 1) as f64).collect();
        let r_values: Vec<f64> = (0..a.r_samples)
            .map(|k| -a.r_max + 2.0 * a.r_max * k as f64 / (a.r_samples - 1) as f64)
            .collect();
        let states = match params {
            Some(gp) => s_values.iter().map(|&s| closed_form_state(&gp, s)).collect::<crate::Result<Vec<_>>>(),
            None => trajectory_at(space, st0, &s_values, a.step),
        }
        .map_err(geometry)?;
        let pts = ruled_surface(space, &states, &r_values).map_err(geometry)?;
        let mut w = sink(&a.out)?;
        match format {
            Format::Obj => {
                let verts: Vec<Option<[f64; 3]>> = pts.iter().flatten().map(|p| Some(p.xyz())).collect();
                let comments = vec![format!("ruled surface, {space}, rows s, columns r")];
                io::write_obj(&mut w, a.rows, a.r_samples, &verts, &comments).map_err(geometry)?;
            }
            _ => io::write_ruled_csv(&mut w, &s_values, &r_values, &pts).map_err(geometry)?,
        }
        finish(w)?;
        return Ok(EXIT_OK);
    }

    if let Some(f) = a.format {
        if f != Format::Csv {
            return Err(config("trajectories are written as csv"));
        }
    }
    let (traj, exit) = match integrate_geodesic(space, st0, a.s1, a.step) {
        Ok(t) => (t, None),
        Err(GeometryError::DomainExit { s, trajectory, .. }) => (trajectory, Some(s)),
        Err(e) => return Err(config(e.to_string())),
    };
    let deviation = match params {
        Some(gp) if a.compare_closed_form => Some(
            traj.iter()
                .map(|st| {
                    let ex = closed_form_state(&gp, st.s)?;
                    Ok((st.xi - ex.xi).norm() + (st.eta - ex.eta).norm())
                })
                .collect::<crate::Result<Vec<f64>>>()
                .map_err(geometry)?,
        ),
        _ => None,
    };
    let mut w = sink(&a.out)?;
    io::write_trajectory_csv(&mut w, &traj, deviation.as_deref()).map_err(geometry)?;
    finish(w)?;
    match exit {
        Some(s) => Err(failed(format!("geodesic left the domain at s = {s}; partial trajectory written"))),
        None => Ok(EXIT_OK),
    }
}

fn resolve_space(file_space: SpaceKind, flag: Option<SpaceArg>) -> Result<SpaceKind, Failure> {
    if let Some(f) = flag {
        let f = f.single().map_err(config)?;
        if f != file_space {
            eprintln!("warning: --space {f} ignored, input file declares {file_space}");
        }
    }
    Ok(file_space)
}

fn grid_from(v: &[usize], xi_max: f64) -> Result<XiGrid, Failure> {
    XiGrid::new(v[0], v[1], xi_max).map_err(|e| config(e.to_string()))
}

fn cmd_congruence(a: CongruenceArgs) -> CmdResult {
    if a.format != Format::Csv {
        return Err(config("congruence analysis is written as csv"));
    }
    let spec = io::parse_section(&read_file(&a.section)?).map_err(|e| config(e.to_string()))?;
    let space = resolve_space(spec.space, a.space)?;
    let grid = grid_from(&a.grid, a.xi_max)?;
    let cells = grid.nodes();
    for &xi in cells.iter().chain(std::iter::once(&a.anchor)) {
        space.check_domain(xi).map_err(|e| config(format!("grid leaves the domain: {e}")))?;
    }
    let mut opts = WeingartenOptions {
        anchor: a.anchor,
        r0: a.r0,
        ..WeingartenOptions::default()
    };
    for (name, v) in &a.tol {
        match name.as_str() {
            "k" => opts.k_tol = *v,
            "wedge" => opts.wedge_tol = *v,
            other => return Err(config(format!("unknown tolerance '{other}' (expected k or wedge)"))),
        }
    }
    let poly = &spec.poly;
    let worst_lag = cells
        .par_iter()
        .map(|&xi| lagrangian_residual(space, &GraphCongruence(poly), xi).map(f64::abs))
        .collect::<crate::Result<Vec<f64>>>()
        .map_err(|e| config(e.to_string()))?
        .into_iter()
        .fold(0.0, f64::max);
    if worst_lag > LAGRANGIAN_TOL {
        return Err(config(format!(
            "section is not Lagrangian on the grid (max residual {worst_lag:e}); no orthogonal surfaces"
        )));
    }
    let rows = analyze_grid(space, poly, &cells, a.anchor, a.r0);
    let umbilic = rows.iter().filter(|r| r.as_ref().map_or(true, |d| d.umbilic)).count();
    let verdict = weingarten_test(space, poly, &grid, &opts);
    let mut w = sink(&a.out)?;
    io::write_analysis_csv(&mut w, &cells, &rows).map_err(geometry)?;
    let summary = match &verdict {
        Ok(rep) => vec![
            format!("weingarten={}", rep.is_weingarten),
            format!("wedge_weingarten={}", rep.wedge_verdict),
            format!("detectors_agree={}", rep.detectors_agree),
            format!("max_abs_k={}", io::fmt_f64(rep.max_abs_k)),
            format!("max_wedge={}", io::fmt_f64(rep.max_wedge)),
        ],
        Err(e) => vec!["weingarten=undetermined".to_string(), format!("reason={e}")],
    };
    writeln!(w, "# space={space}").map_err(|e| failed(e.to_string()))?;
    writeln!(w, "# cells={}", cells.len()).map_err(|e| failed(e.to_string()))?;
    writeln!(w, "# umbilic_cells={umbilic}").map_err(|e| failed(e.to_string()))?;
    for line in summary {
        writeln!(w, "# {line}").map_err(|e| failed(e.to_string()))?;
    }
    finish(w)?;
    Ok(EXIT_OK)
}

fn cmd_weierstrass(a: WeierstrassArgs) -> CmdResult {
    if a.format == Format::Json {
        return Err(config("surfaces are written as obj or csv"));
    }
    let spec = io::parse_potential(&read_file(&a.w)?).map_err(|e| config(e.to_string()))?;
    let space = resolve_space(spec.space, a.space)?;
    check_potential(&spec.w).map_err(|e| config(e.to_string()))?;
    let grid = grid_from(&a.grid, a.xi_max)?;
    let nodes = grid.nodes();
    let inside = |xi: Complex64| xi.norm() <= a.xi_max * (1.0 + 1e-12) && space.check_domain(xi).is_ok();
    let section = weierstrass_section(space, &spec.w);
    // vertex, |ρ| and flat flag per node, None outside the disc
    let per_node: Vec<Option<(crate::line_map::SpacePoint, f64, bool)>> = nodes
        .par_iter()
        .map(|&xi| {
            if !inside(xi) {
                return Ok(None);
            }
            let p = weierstrass_surface(space, &spec.w, xi)?;
            let flat = is_flat_point(&spec.w, xi);
            let rho = if a.check && !flat {
                let lw = from_space(space, xi, p)?;
                crate::congruence::spin_coefficients_parametric(space, &GraphCongruence(&section), xi, lw.r)
                    .map(|(rho, _)| rho.norm())
                    .unwrap_or(f64::NAN)
            } else {
                f64::NAN
            };
            Ok(Some((p, rho, flat)))
        })
        .collect::<crate::Result<Vec<_>>>()
        .map_err(geometry)?;
    let flat = per_node.iter().flatten().filter(|v| v.2).count();
    let max_rho = per_node
        .iter()
        .flatten()
        .map(|v| v.1)
        .filter(|r| !r.is_nan())
        .fold(0.0, f64::max);
    let mut w = sink(&a.out)?;
    match a.format {
        Format::Obj => {
            let verts: Vec<Option<[f64; 3]>> = per_node.iter().map(|v| v.map(|(p, _, _)| p.xyz())).collect();
            let mut comments = vec![format!("surface, {space}, |xi| <= {}", a.xi_max), format!("flat_points={flat}")];
            if a.check {
                comments.push(format!("max_abs_rho={}", io::fmt_f64(max_rho)));
            }
            // rows run along Im ξ, columns along Re ξ
            io::write_obj(&mut w, grid.ny, grid.nx, &verts, &comments).map_err(geometry)?;
        }
        _ => {
            let kept: Vec<usize> = (0..nodes.len()).filter(|&k| per_node[k].is_some()).collect();
            let xis: Vec<Complex64> = kept.iter().map(|&k| nodes[k]).collect();
            let pts: Vec<_> = kept.iter().map(|&k| per_node[k].unwrap().0).collect();
            let rho: Vec<f64> = kept.iter().map(|&k| per_node[k].unwrap().1).collect();
            io::write_surface_csv(&mut w, &xis, &pts, a.check.then_some(rho.as_slice())).map_err(geometry)?;
        }
    }
    finish(w)?;
    if flat > 0 {
        eprintln!("warning: {flat} flat point(s) on the grid; the surface is not immersed there");
    }
    if a.check {
        eprintln!("max |rho| = {max_rho:e}");
    }
    Ok(EXIT_OK)
}
