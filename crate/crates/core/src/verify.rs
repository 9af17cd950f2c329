//! Seeded property suites over both geometries. Each suite evaluates a set of
//! named checks; a check records the worst value seen and compares it with
//! its tolerance, either as an upper bound (residuals) or a lower bound
//! (negative controls).

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{
    cm2_residual, cm2_residual_fd, fixtures, lagrangian_residual, scalar_curvature_fd, scalar_curvature_graph, slopes,
    spin_coefficients_parametric, GraphCongruence,
};
use crate::error::{GeometryError, Result};
use crate::geodesic::{
    closed_form_state, first_integral, helicoid_point, integrate_geodesic, ruled_surface, speed_squared,
    GeodesicParams, GeodesicState,
};
use crate::grid::XiGrid;
use crate::isometry::{killing_basis, killing_residual, KillingField};
use crate::jet::{FdSection, Poly2};
use crate::kahler::{
    apply_complex_structure, conformal_data, metric_value, sigma_squared, symplectic_value, wirtinger_terms,
    LinePoint, SpaceKind, TangentVector,
};
use crate::line_map::{from_space, to_space, LineWithParam};
use crate::minimal::{
    minimal_residual, umbilic_winding, weierstrass_eta, weierstrass_section, weierstrass_surface, HolomorphicPoly,
    SeriesSection,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Passes when the worst value is ≤ the tolerance.
    Max,
    /// Passes when the smallest value is ≥ the tolerance.
    Min,
}

struct CheckDef {
    suite: &'static str,
    name: &'static str,
    tolerance: f64,
    bound: Bound,
}

const fn upper(suite: &'static str, name: &'static str, tolerance: f64) -> CheckDef {
    CheckDef {
        suite,
        name,
        tolerance,
        bound: Bound::Max,
    }
}

const fn lower(suite: &'static str, name: &'static str, tolerance: f64) -> CheckDef {
    CheckDef {
        suite,
        name,
        tolerance,
        bound: Bound::Min,
    }
}

const CHECKS: &[CheckDef] = &[
    upper("wirtinger", "wirtinger", 1e-9),
    upper("wirtinger", "complex_plane", 1e-12),
    upper("compatibility", "compatibility", 1e-12),
    upper("line_map", "round_trip", 1e-12),
    upper("line_map", "eta_invariance", 1e-10),
    upper("killing", "killing", 1e-6),
    lower("killing", "killing_control", 1e-2),
    upper("geodesic", "closed_form", 1e-6),
    upper("geodesic", "first_integral", 1e-8),
    upper("geodesic", "speed_drift", 1e-8),
    upper("geodesic", "null_speed", 1e-8),
    upper("geodesic", "helicoid", 1e-9),
    upper("geodesic", "plane", 1e-12),
    upper("optical", "sphere", 1e-9),
    upper("optical", "slopes", 1e-10),
    upper("cm2", "cm2_analytic", 1e-12),
    upper("cm2", "cm2_fd", 1e-8),
    upper("weingarten", "rotational_k", 1e-6),
    upper("weingarten", "k_fd_agreement", 1e-5),
    lower("weingarten", "perturbed_k", 1e-3),
    upper("weingarten", "minimal_k", 1e-10),
    upper("minimal", "mineq", 1e-10),
    upper("minimal", "series_lagrangian", 1e-10),
    upper("minimal", "supfunc", 1e-8),
    upper("minimal", "weierstrass_rho", 1e-8),
    upper("minimal", "w3_relation", 1e-10),
    upper("minimal", "enneper", 1e-10),
    lower("minimal", "winding", 0.0),
];

/// Suite names in execution order.
pub const SUITES: &[&str] = &[
    "wirtinger",
    "compatibility",
    "line_map",
    "killing",
    "geodesic",
    "optical",
    "cm2",
    "weingarten",
    "minimal",
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.name)
}

pub fn default_tolerance(name: &str) -> Option<f64> {
    CHECKS.iter().find(|c| c.name == name).map(|c| c.tolerance)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub spaces: Vec<SpaceKind>,
    pub seed: u64,
    /// Restrict to these suites; all when empty.
    pub suites: Vec<String>,
    /// Sample count for the pointwise suites (wirtinger, compatibility,
    /// line_map); 10⁴ by default.
    pub samples: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            spaces: SpaceKind::BOTH.to_vec(),
            seed: 42,
            suites: Vec::new(),
            samples: None,
            tolerances: BTreeMap::new(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(GeometryError::Invalid(format!(
                    "unknown suite '{s}' (expected one of {})",
                    SUITES.join(", ")
                )));
            }
        }
        for (name, &tol) in &self.tolerances {
            if default_tolerance(name).is_none() {
                return Err(GeometryError::Invalid(format!("unknown tolerance '{name}'")));
            }
            if !tol.is_finite() || tol < 0.0 {
                return Err(GeometryError::Invalid(format!("tolerance {name} must be finite and non-negative")));
            }
        }
        if self.spaces.is_empty() {
            return Err(GeometryError::Invalid("no space selected".into()));
        }
        if self.samples == Some(0) {
            return Err(GeometryError::Invalid("samples must be positive".into()));
        }
        Ok(())
    }

    fn tolerance(&self, def: &CheckDef) -> f64 {
        self.tolerances.get(def.name).copied().unwrap_or(def.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub bound: Bound,
    /// Worst value seen: the largest residual, or the smallest control value.
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub space: SpaceKind,
    pub max_residual: f64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    /// Set when the suite aborted on an unexpected error.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates the worst value of each check while a suite runs.
struct Acc {
    values: BTreeMap<&'static str, (f64, usize)>,
}

impl Acc {
    fn new() -> Self {
        Acc { values: BTreeMap::new() }
    }

    fn push(&mut self, name: &'static str, v: f64) {
        let def = CHECKS.iter().find(|c| c.name == name).expect("known check");
        let e = self.values.entry(name).or_insert(match def.bound {
            Bound::Max => (0.0, 0),
            Bound::Min => (f64::INFINITY, 0),
        });
        e.0 = match def.bound {
            // NaN must fail, so it sticks
            Bound::Max if v.is_nan() || e.0.is_nan() => f64::NAN,
            Bound::Max => e.0.max(v),
            Bound::Min if v.is_nan() || e.0.is_nan() => f64::NAN,
            Bound::Min => e.0.min(v),
        };
        e.1 += 1;
    }

    fn finish(self, suite: &str, space: SpaceKind, cfg: &VerifyConfig, error: Option<String>) -> SuiteReport {
        let mut checks = Vec::new();
        for def in CHECKS.iter().filter(|c| c.suite == suite) {
            let Some(&(value, samples)) = self.values.get(def.name) else {
                continue;
            };
            let tol = cfg.tolerance(def);
            let passed = samples > 0
                && match def.bound {
                    Bound::Max => value <= tol,
                    Bound::Min => value >= tol,
                };
            checks.push(CheckReport {
                name: def.name.to_string(),
                bound: def.bound,
                max_residual: value,
                tolerance: tol,
                samples,
                passed,
            });
        }
        let max_residual = checks
            .iter()
            .filter(|c| c.bound == Bound::Max)
            .map(|c| c.max_residual)
            .fold(0.0, f64::max);
        SuiteReport {
            name: suite.to_string(),
            space,
            max_residual,
            passed: error.is_none() && !checks.is_empty() && checks.iter().all(|c| c.passed),
            checks,
            error,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rand_c<R: Rng>(rng: &mut R, r: f64) -> Complex64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Uniform in the disc of radius r.
fn rand_disc<R: Rng>(rng: &mut R, r: f64) -> Complex64 {
    let rad = r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rad, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn rand_tangent<R: Rng>(rng: &mut R) -> TangentVector {
    TangentVector::new(rand_c(rng, 1.0), rand_c(rng, 1.0))
}

fn rand_poly<R: Rng>(rng: &mut R, deg: u32) -> Poly2 {
    let mut p = Poly2::zero();
    for m in 0..=deg {
        for n in 0..=deg {
            p.add_term(m, n, rand_c(rng, 1.0));
        }
    }
    p
}

fn rand_point<R: Rng>(rng: &mut R) -> LinePoint {
    LinePoint::new(rand_disc(rng, 0.9), rand_c(rng, 2.0))
}

/// The RNG for one (suite, space) pair depends only on the seed, so a
/// suite gives the same numbers whether it runs alone or with the others.
fn suite_rng(seed: u64, suite: &str, space: SpaceKind) -> ChaCha8Rng {
    let idx = SUITES.iter().position(|s| *s == suite).unwrap_or(SUITES.len()) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * idx + (space == SpaceKind::Lorentzian) as u64);
    rng
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut suites = Vec::new();
    for &suite in SUITES {
        if !cfg.suites.is_empty() && !cfg.suites.iter().any(|s| s == suite) {
            continue;
        }
        for &space in &cfg.spaces {
            suites.push(run_suite(cfg, suite, space));
        }
    }
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

pub fn run_suite(cfg: &VerifyConfig, suite: &str, space: SpaceKind) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, suite, space);
    let mut acc = Acc::new();
    let n = cfg.samples.unwrap_or(10_000);
    let out = match suite {
        "wirtinger" => wirtinger(space, &mut rng, n, &mut acc),
        "compatibility" => compatibility(space, &mut rng, n, &mut acc),
        "line_map" => line_map(space, &mut rng, n, &mut acc),
        "killing" => killing(space, &mut rng, &mut acc),
        "geodesic" => geodesic(space, &mut rng, &mut acc),
        "optical" => optical(space, &mut rng, &mut acc),
        "cm2" => cm2(space, &mut rng, &mut acc),
        "weingarten" => weingarten(space, &mut rng, &mut acc),
        "minimal" => minimal(space, &mut rng, &mut acc),
        other => Err(GeometryError::Invalid(format!("unknown suite '{other}'"))),
    };
    acc.finish(suite, space, cfg, out.err().map(|e| e.to_string()))
}

fn wirtinger(space: SpaceKind, rng: &mut ChaCha8Rng, n: usize, acc: &mut Acc) -> Result<()> {
    for _ in 0..n {
        let p = rand_point(rng);
        let (v, w) = (rand_tangent(rng), rand_tangent(rng));
        let t = wirtinger_terms(space, p, v, w)?;
        acc.push("wirtinger", t.residual().abs() / t.scale().max(f64::MIN_POSITIVE));
        let cd = conformal_data(space, p.xi)?;
        let jv = apply_complex_structure(v);
        let scale = cd.e2u * cd.e2u * v.norm() * v.norm() * jv.norm() * jv.norm();
        acc.push("complex_plane", sigma_squared(space, p, v, jv)? / scale.max(f64::MIN_POSITIVE));
    }
    Ok(())
}

fn compatibility(space: SpaceKind, rng: &mut ChaCha8Rng, n: usize, acc: &mut Acc) -> Result<()> {
    for _ in 0..n {
        let p = rand_point(rng);
        let (v, w) = (rand_tangent(rng), rand_tangent(rng));
        let g = metric_value(space, p, v, w)?;
        let om = symplectic_value(space, p, apply_complex_structure(v), w)?;
        let scale = g.abs() + metric_value(space, p, v, v)?.abs() + metric_value(space, p, w, w)?.abs();
        acc.push("compatibility", (g - om).abs() / scale.max(f64::MIN_POSITIVE));
    }
    Ok(())
}

fn line_map(space: SpaceKind, rng: &mut ChaCha8Rng, n: usize, acc: &mut Acc) -> Result<()> {
    for _ in 0..n {
        let lp = rand_point(rng);
        let r = rng.gen_range(-5.0..5.0);
        let p = to_space(space, LineWithParam { line: lp, r })?;
        let back = from_space(space, lp.xi, p)?;
        let scale = 1.0 + lp.eta.norm() + r.abs();
        acc.push("round_trip", ((back.line.eta - lp.eta).norm() + (back.r - r).abs()) / scale);
        let r2 = rng.gen_range(-5.0..5.0);
        let p2 = to_space(space, LineWithParam { line: lp, r: r2 })?;
        let other = from_space(space, lp.xi, p2)?;
        acc.push("eta_invariance", (other.line.eta - back.line.eta).norm() / scale);
    }
    Ok(())
}

fn killing(space: SpaceKind, rng: &mut ChaCha8Rng, acc: &mut Acc) -> Result<()> {
    let basis = killing_basis(space);
    for _ in 0..100 {
        let p = LinePoint::new(rand_disc(rng, 0.8), rand_c(rng, 2.0));
        for field in &basis {
            acc.push("killing", killing_residual(field, space, p, 1e-5)?);
        }
    }
    // a0 = ξ² is not the base part of any Killing field
    let control = KillingField {
        a0: [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ..KillingField::default()
    };
    for _ in 0..10 {
        let p = LinePoint::new(rand_disc(rng, 0.8) + 0.05, rand_c(rng, 2.0));
        if p.xi.norm() > 0.1 {
            acc.push("killing_control", killing_residual(&control, space, p, 1e-5)?);
        }
    }
    Ok(())
}

fn state_gap(a: &GeodesicState, b: &GeodesicState) -> f64 {
    (a.xi - b.xi).norm() + (a.eta - b.eta).norm()
}

fn rand_params<R: Rng>(rng: &mut R) -> GeodesicParams {
    let c2: f64 = rng.gen_range(0.2..1.5);
    GeodesicParams {
        c1: rng.gen_range(-2.0..2.0),
        c2: if rng.gen::<bool>() { c2 } else { -c2 },
        c5: rng.gen_range(-1.0..1.0),
        theta: rng.gen_range(0.0..std::f64::consts::TAU),
    }
}

fn geodesic(space: SpaceKind, rng: &mut ChaCha8Rng, acc: &mut Acc) -> Result<()> {
    // conservation of G(ċ, ċ) along numerical geodesics, both spaces
    for _ in 0..20 {
        let st0 = GeodesicState {
            xi: rand_disc(rng, 0.5),
            eta: rand_c(rng, 1.0),
            dxi: rand_c(rng, 0.5),
            deta: rand_c(rng, 1.0),
            s: 0.0,
        };
        let traj = integrate_geodesic(space, st0, 1.0, 1e-3)?;
        let g0 = speed_squared(space, &st0)?;
        for st in &traj {
            acc.push("speed_drift", (speed_squared(space, st)? - g0).abs() / (1.0 + g0.abs()));
        }
    }
    if space != SpaceKind::Lorentzian {
        return Ok(());
    }
    for k in 0..50 {
        let mut gp = rand_params(rng);
        if k % 10 == 0 {
            gp.c1 = 0.0;
        }
        let st0 = closed_form_state(&gp, 0.0)?;
        let traj = integrate_geodesic(space, st0, 1.0, 1e-3)?;
        let c1 = first_integral(space, &st0)?;
        for st in &traj {
            let exact = closed_form_state(&gp, st.s)?;
            acc.push("closed_form", state_gap(st, &exact));
            acc.push("first_integral", (first_integral(space, st)? - c1).abs());
        }
        // C₁ = 0 exactly when the geodesic is null
        let g = speed_squared(space, &st0)?;
        acc.push("null_speed", (g - 2.0 * gp.c1).abs());
        if gp.c1 == 0.0 {
            acc.push("null_speed", g.abs());
        }
    }
    let s_values: Vec<f64> = (0..=20).map(|k| -1.0 + 0.1 * k as f64).collect();
    let r_values: Vec<f64> = (0..=8).map(|k| -2.0 + 0.5 * k as f64).collect();
    for _ in 0..5 {
        let gp = GeodesicParams {
            c5: 0.0,
            theta: 0.0,
            ..rand_params(rng)
        };
        let states = s_values.iter().map(|&s| closed_form_state(&gp, s)).collect::<Result<Vec<_>>>()?;
        let pts = ruled_surface(space, &states, &r_values)?;
        for (row, &s) in pts.iter().zip(&s_values) {
            for (p, &r) in row.iter().zip(&r_values) {
                let h = helicoid_point(&gp, s, r);
                acc.push("helicoid", (p.z - h.z).norm() + (p.t - h.t).abs());
            }
        }
        let plane = GeodesicParams {
            c1: 0.0,
            c5: rng.gen_range(-1.0..1.0),
            ..gp
        };
        let states = s_values.iter().map(|&s| closed_form_state(&plane, s)).collect::<Result<Vec<_>>>()?;
        for row in ruled_surface(space, &states, &r_values)? {
            for p in row {
                acc.push("plane", p.xyz()[1].abs());
            }
        }
    }
    Ok(())
}

fn optical(space: SpaceKind, rng: &mut ChaCha8Rng, acc: &mut Acc) -> Result<()> {
    let zero = Poly2::zero();
    for _ in 0..20 {
        let xi = rand_disc(rng, 0.8);
        let radius = rng.gen_range(0.2..10.0);
        let (rho, sigma) = spin_coefficients_parametric(space, &GraphCongruence(&zero), xi, radius)?;
        acc.push("sphere", (rho - 1.0 / radius).norm() + sigma.norm());
    }
    let mut done = 0;
    while done < 20 {
        let f = fixtures::from_support(space, &fixtures::random_support(rng, 3));
        let xi = rand_disc(rng, 0.6);
        let r = rng.gen_range(-5.0..5.0);
        let (s0, r0) = slopes(space, &f, xi)?;
        let a = r + r0.re;
        let den = a * a - s0.norm_sqr();
        // focal lines have no spin coefficients
        let Ok((rho, sigma)) = spin_coefficients_parametric(space, &GraphCongruence(&f), xi, r) else {
            continue;
        };
        let scale = 1.0 + rho.norm() + sigma.norm();
        acc.push("slopes", ((rho - a / den).norm() + (sigma - s0 / den).norm()) / scale);
        done += 1;
    }
    Ok(())
}

fn cm2(space: SpaceKind, rng: &mut ChaCha8Rng, acc: &mut Acc) -> Result<()> {
    for _ in 0..20 {
        let f = rand_poly(rng, 3);
        let xi = rand_disc(rng, 0.6);
        acc.push("cm2_analytic", cm2_residual(space, &f, xi)?.norm());
        let fd = FdSection::new(|z| f.eval(z), 1e-4, xi)?;
        acc.push("cm2_fd", cm2_residual_fd(space, &fd, xi, 2e-3)?.norm());
    }
    Ok(())
}

/// Point where the perturbed section's curvature is sampled.
pub const PERTURBED_POINT: Complex64 = Complex64::new(0.3, -0.2);

fn weingarten(space: SpaceKind, rng: &mut ChaCha8Rng, acc: &mut Acc) -> Result<()> {
    let grid = XiGrid::new(20, 20, 0.5)?;
    let cells = grid.nodes();
    let mut sections = vec![fixtures::rotational(&[0.1, 0.1]), fixtures::rotational(&[0.3, 0.2])];
    // g' keeps one sign on the grid, so the induced metric stays non-degenerate
    let b: f64 = rng.gen_range(0.2..1.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
    sections.push(fixtures::rotational(&[rng.gen_range(-1.0..1.0), b, b.signum() * rng.gen_range(0.0..1.0)]));
    for f in &sections {
        let per_cell: Vec<Result<(f64, f64)>> = cells
            .par_iter()
            .map(|&xi| {
                let k = scalar_curvature_graph(space, f, xi)?;
                let kfd = scalar_curvature_fd(space, f, xi, 1e-3)?;
                Ok((k, kfd))
            })
            .collect();
        for cell in per_cell {
            let (k, kfd) = cell?;
            acc.push("rotational_k", k.abs());
            acc.push("k_fd_agreement", (k - kfd).abs());
        }
    }
    let pert = fixtures::perturbed(space, &[0.1, 0.1], 0.1);
    let k = scalar_curvature_graph(space, &pert, PERTURBED_POINT)?;
    acc.push("perturbed_k", k.abs());
    for xi in [PERTURBED_POINT, c(-0.15, 0.35)] {
        let kfd = scalar_curvature_fd(space, &pert, xi, 1e-3)?;
        let k = scalar_curvature_graph(space, &pert, xi)?;
        acc.push("k_fd_agreement", (k - kfd).abs() / (1.0 + k.abs()));
    }
    for _ in 0..10 {
        let f = SeriesSection::new(space, (0..4).map(|_| rand_c(rng, 1.0)).collect()).build();
        for _ in 0..10 {
            let xi = rand_disc(rng, 0.6);
            match scalar_curvature_graph(space, &f, xi) {
                Ok(k) => acc.push("minimal_k", k.abs()),
                Err(GeometryError::Umbilic(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

fn rand_potential<R: Rng>(rng: &mut R) -> HolomorphicPoly {
    let deg = rng.gen_range(3..=6);
    HolomorphicPoly::new((0..=deg).map(|_| rand_c(rng, 1.0)).collect())
}

fn minimal(space: SpaceKind, rng: &mut ChaCha8Rng, acc: &mut Acc) -> Result<()> {
    let s = space.sign();
    for _ in 0..20 {
        let ss = SeriesSection::new(space, (0..4).map(|_| rand_c(rng, 1.0)).collect());
        let f = ss.build();
        for _ in 0..10 {
            let xi = rand_disc(rng, 0.6);
            acc.push("mineq", minimal_residual(space, &f, xi)?.norm());
            acc.push("series_lagrangian", lagrangian_residual(space, &GraphCongruence(&f), xi)?.abs());
            // ∂̄r = ±2F/(1 ± ξξ̄)², derivatives of the closed form by central differences
            let h = 1e-3;
            let d = |dir: Complex64| -> Result<f64> {
                let at = |k: f64| ss.potential_r(xi + dir * (k * h));
                Ok((8.0 * (at(1.0)? - at(-1.0)?) - (at(2.0)? - at(-2.0)?)) / (12.0 * h))
            };
            let dbar = 0.5 * c(d(c(1.0, 0.0))?, d(c(0.0, 1.0))?);
            let q = space.q(xi);
            let expect = 2.0 * s * f.eval(xi) / (q * q);
            acc.push("supfunc", (dbar - expect).norm() / (1.0 + expect.norm()));
        }
    }
    for _ in 0..20 {
        let w = rand_potential(rng);
        let sec = weierstrass_section(space, &w);
        for _ in 0..10 {
            let xi = rand_disc(rng, 0.6);
            let p = weierstrass_surface(space, &w, xi)?;
            let lw = from_space(space, xi, p)?;
            let eta = weierstrass_eta(space, &w, xi)?;
            let w3 = w.derivative(3).eval(xi);
            let q = space.q(xi);
            acc.push("w3_relation", (sec.jet(xi).f_xb / (q * q) - 0.25 * w3.conj()).norm() + (sec.eval(xi) - eta).norm());
            acc.push("mineq", minimal_residual(space, &sec, xi)?.norm());
            // the spin coefficients degenerate at flat points
            if w3.norm() < 1e-3 {
                continue;
            }
            let (rho, _) = spin_coefficients_parametric(space, &GraphCongruence(&sec), xi, lw.r)?;
            acc.push("weierstrass_rho", rho.norm());
        }
    }
    let w = HolomorphicPoly::monomial(3, c(1.0, 0.0));
    for _ in 0..50 {
        let xi = rand_disc(rng, 0.8);
        let p = weierstrass_surface(space, &w, xi)?;
        let z = 3.0 * xi.conj() - s * xi.powi(3);
        let t = -s * 1.5 * 2.0 * (xi * xi).re;
        acc.push("enneper", (p.z - z).norm() + (p.t - t).abs());
    }
    let mut found = 0;
    let mut attempts = 0;
    while found < 20 && attempts < 200 {
        attempts += 1;
        let f = SeriesSection::new(space, (0..4).map(|_| rand_c(rng, 1.0)).collect()).build();
        let center = rand_disc(rng, 0.2);
        let radius = rng.gen_range(0.1..0.5);
        match umbilic_winding(space, &f, center, radius, 256) {
            Ok(n) => {
                acc.push("winding", n as f64);
                found += 1;
            }
            Err(GeometryError::ContourHitsZero(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_belongs_to_a_suite() {
        for def in CHECKS {
            assert!(SUITES.contains(&def.suite), "{}", def.name);
        }
        let mut names: Vec<_> = check_names().collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn config_validation() {
        let mut cfg = VerifyConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.tolerances.insert("nonsense".into(), 1.0);
        assert!(cfg.validate().is_err());
        let cfg = VerifyConfig {
            suites: vec!["nope".into()],
            ..VerifyConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn tightened_tolerance_fails() {
        let mut cfg = VerifyConfig {
            suites: vec!["wirtinger".into()],
            samples: Some(200),
            spaces: vec![SpaceKind::Euclidean],
            ..VerifyConfig::default()
        };
        assert!(run(&cfg).unwrap().passed);
        cfg.tolerances.insert("wirtinger".into(), 0.0);
        // exact zero residuals are possible but not for 200 random samples
        let rep = run(&cfg).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn suites_pass_and_are_deterministic() {
        let cfg = VerifyConfig {
            samples: Some(500),
            ..VerifyConfig::default()
        };
        let a = run(&cfg).unwrap();
        for s in &a.suites {
            assert!(s.passed, "{s:?}");
        }
        let b = run(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
