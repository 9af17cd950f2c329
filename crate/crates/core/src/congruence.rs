//! Line congruences as surfaces in TN: optical scalars, slopes of graph
//! sections, the Lagrangian and holomorphic conditions, induced metric,
//! support function, scalar curvature and Weingarten detection.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::grid::XiGrid;
use crate::jet::Section;
use crate::kahler::{conformal_data, metric_value, symplectic_value, LinePoint, SpaceKind, TangentVector};
use crate::oracle::{gauss_curvature_fd, Metric2};

/// First-order Wirtinger jet of a parametric congruence ν ↦ (ξ, η).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CongruenceJet {
    pub xi: Complex64,
    pub eta: Complex64,
    pub xi_nu: Complex64,
    pub xi_nubar: Complex64,
    pub eta_nu: Complex64,
    pub eta_nubar: Complex64,
}

impl CongruenceJet {
    pub fn point(&self) -> LinePoint {
        LinePoint::new(self.xi, self.eta)
    }

    /// Images of the coordinate vectors ∂/∂(Re ν) and ∂/∂(Im ν).
    pub fn tangents(&self) -> (TangentVector, TangentVector) {
        let i = Complex64::i();
        (
            TangentVector::new(self.xi_nu + self.xi_nubar, self.eta_nu + self.eta_nubar),
            TangentVector::new(i * (self.xi_nu - self.xi_nubar), i * (self.eta_nu - self.eta_nubar)),
        )
    }
}

pub trait ParametricCongruence: Sync {
    fn jet(&self, nu: Complex64) -> CongruenceJet;
}

/// A graph section viewed as a congruence parameterized by ν = ξ.
pub struct GraphCongruence<'a, S: Section + ?Sized>(pub &'a S);

impl<S: Section + ?Sized> ParametricCongruence for GraphCongruence<'_, S> {
    fn jet(&self, nu: Complex64) -> CongruenceJet {
        let j = self.0.jet(nu);
        CongruenceJet {
            xi: nu,
            eta: j.f,
            xi_nu: Complex64::new(1.0, 0.0),
            xi_nubar: Complex64::new(0.0, 0.0),
            eta_nu: j.f_x,
            eta_nubar: j.f_xb,
        }
    }
}

/// A congruence given by a closure, differentiated by fourth-order central
/// differences.
pub struct FdCongruence<F> {
    f: F,
    h: f64,
}

impl<F> FdCongruence<F>
where
    F: Fn(Complex64) -> LinePoint + Sync,
{
    pub fn new(f: F, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(GeometryError::InvalidStep(h));
        }
        Ok(FdCongruence { f, h })
    }
}

impl<F> ParametricCongruence for FdCongruence<F>
where
    F: Fn(Complex64) -> LinePoint + Sync,
{
    fn jet(&self, nu: Complex64) -> CongruenceJet {
        let h = self.h;
        let diff = |dir: Complex64| {
            let at = |k: f64| (self.f)(nu + dir * (k * h));
            let (p1, m1, p2, m2) = (at(1.0), at(-1.0), at(2.0), at(-2.0));
            let d = |a: Complex64, b: Complex64, c: Complex64, e: Complex64| (8.0 * (a - b) - (c - e)) / (12.0 * h);
            (d(p1.xi, m1.xi, p2.xi, m2.xi), d(p1.eta, m1.eta, p2.eta, m2.eta))
        };
        let (xi_x, eta_x) = diff(Complex64::new(1.0, 0.0));
        let (xi_y, eta_y) = diff(Complex64::i());
        let i = Complex64::i();
        let p = (self.f)(nu);
        CongruenceJet {
            xi: p.xi,
            eta: p.eta,
            xi_nu: 0.5 * (xi_x - i * xi_y),
            xi_nubar: 0.5 * (xi_x + i * xi_y),
            eta_nu: 0.5 * (eta_x - i * eta_y),
            eta_nubar: 0.5 * (eta_x + i * eta_y),
        }
    }
}

/// (∂⁺η, ∂⁻η) at affine parameter r.
pub fn dplus_dminus(space: SpaceKind, jet: &CongruenceJet, r: f64) -> Result<(Complex64, Complex64)> {
    space.check_domain(jet.xi)?;
    let k = space.sign() * 2.0 * jet.xi.conj() * jet.eta / space.q(jet.xi);
    Ok((
        jet.eta_nu + (r - k) * jet.xi_nu,
        jet.eta_nubar + (r - k) * jet.xi_nubar,
    ))
}

const FRAME_TOL: f64 = 1e-12;

/// Divergence ρ and shear σ of the congruence at the point r along the line
/// with parameter ν.
pub fn spin_coefficients_parametric(
    space: SpaceKind,
    cong: &dyn ParametricCongruence,
    nu: Complex64,
    r: f64,
) -> Result<(Complex64, Complex64)> {
    let jet = cong.jet(nu);
    let (dp, dm) = dplus_dminus(space, &jet, r)?;
    let den = dp.norm_sqr() - dm.norm_sqr();
    let scale = dp.norm_sqr() + dm.norm_sqr();
    if !(den.abs() > FRAME_TOL * scale) {
        return Err(GeometryError::DegenerateFrame(den));
    }
    // ∂ξ̄ = conj(∂̄ξ), ∂̄ξ̄ = conj(∂ξ)
    let d_xib = jet.xi_nubar.conj();
    let db_xib = jet.xi_nu.conj();
    let rho = (dp * db_xib - dm * d_xib) / den;
    let sigma = (dp.conj() * d_xib - dm.conj() * db_xib) / den;
    Ok((rho, sigma))
}

/// Slopes (σ₀, ρ₀) of a graph section: σ₀ = −∂F̄, ρ₀ = e^{−2u}∂(e^{2u}F).
pub fn slopes(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<(Complex64, Complex64)> {
    let cd = conformal_data(space, xi)?;
    let j = sec.jet(xi);
    Ok((-j.f_xb.conj(), j.f_x + 2.0 * cd.du * j.f))
}

/// Ω(∂ₓ, ∂ᵧ) on the congruence: zero exactly where it is Lagrangian.
pub fn lagrangian_residual(space: SpaceKind, cong: &dyn ParametricCongruence, nu: Complex64) -> Result<f64> {
    let jet = cong.jet(nu);
    let (vx, vy) = jet.tangents();
    symplectic_value(space, jet.point(), vx, vy)
}

/// `e^{4u}|∂ξ ∂̄η − ∂η ∂̄ξ|²`: zero exactly where the congruence is a complex
/// curve.
pub fn holomorphic_residual(space: SpaceKind, cong: &dyn ParametricCongruence, nu: Complex64) -> Result<f64> {
    let jet = cong.jet(nu);
    let cd = conformal_data(space, jet.xi)?;
    Ok(cd.e2u * cd.e2u * (jet.xi_nu * jet.eta_nubar - jet.eta_nu * jet.xi_nubar).norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    Lorentzian,
    Degenerate,
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedMetric {
    /// Components in the basis (∂/∂ Re ν, ∂/∂ Im ν).
    pub matrix: [[f64; 2]; 2],
    pub signature: Signature,
}

impl InducedMetric {
    pub fn det(&self) -> f64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

const SIGNATURE_TOL: f64 = 1e-10;

pub fn induced_metric(space: SpaceKind, cong: &dyn ParametricCongruence, nu: Complex64) -> Result<InducedMetric> {
    let jet = cong.jet(nu);
    let (vx, vy) = jet.tangents();
    let p = jet.point();
    let gxx = metric_value(space, p, vx, vx)?;
    let gxy = metric_value(space, p, vx, vy)?;
    let gyy = metric_value(space, p, vy, vy)?;
    let matrix = [[gxx, gxy], [gxy, gyy]];
    let det = gxx * gyy - gxy * gxy;
    let scale = gxx.abs().max(gyy.abs()).max(gxy.abs());
    let signature = if det.abs() <= SIGNATURE_TOL * scale * scale {
        Signature::Degenerate
    } else if det < 0.0 {
        Signature::Lorentzian
    } else {
        Signature::Riemannian
    };
    Ok(InducedMetric { matrix, signature })
}

/// Relative tolerance on the Lagrangian condition accepted by
/// [`support_integrate`].
pub const LAGRANGIAN_TOL: f64 = 1e-8;

fn graph_lagrangian_check(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<()> {
    let cd = conformal_data(space, xi)?;
    let (_, rho0) = slopes(space, sec, xi)?;
    let residual = 2.0 * cd.e2u * rho0.im;
    if residual.abs() > LAGRANGIAN_TOL * (1.0 + cd.e2u * rho0.norm()) {
        return Err(GeometryError::NonLagrangian { xi, residual });
    }
    Ok(())
}

/// ∂̄r prescribed by the section: `±2F/(1 ± ξξ̄)²`.
fn support_gradient(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Complex64 {
    let q = space.q(xi);
    2.0 * space.sign() * sec.value(xi) / (q * q)
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    // Newton iteration on P_n from the Chebyshev guesses
    (0..n)
        .map(|k| {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for m in 2..=n {
                    let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

const GL_ORDER: usize = 10;
const GL_PANEL: f64 = 0.05;

/// Integrates the support function along a polyline in ξ starting from the
/// value `r0` at `path[0]`: `dr = 2 Re[(±2F/(1 ± ξξ̄)²) dξ̄]`.
pub fn support_integrate(space: SpaceKind, sec: &dyn Section, path: &[Complex64], r0: f64) -> Result<f64> {
    let Some(&first) = path.first() else {
        return Err(GeometryError::Invalid("empty integration path".into()));
    };
    graph_lagrangian_check(space, sec, first)?;
    let rule = gauss_legendre(GL_ORDER);
    let mut r = r0;
    for seg in path.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let len = (b - a).norm();
        let panels = ((len / GL_PANEL).ceil() as usize).max(1);
        let dxi = (b - a) / panels as f64;
        for k in 0..panels {
            let c = a + dxi * (k as f64 + 0.5);
            graph_lagrangian_check(space, sec, c)?;
            for &(x, w) in &rule {
                let xi = c + dxi * (0.5 * x);
                r += 0.5 * w * 2.0 * (support_gradient(space, sec, xi) * dxi.conj()).re;
            }
        }
        graph_lagrangian_check(space, sec, b)?;
    }
    Ok(r)
}

/// `∂̄ρ₀ + e^{−2u}∂(σ̄₀e^{2u}) + ½Fe^{2u}κ`, which vanishes identically.
pub fn cm2_residual(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<Complex64> {
    let cd = conformal_data(space, xi)?;
    let j = sec.jet(xi);
    let dbar_du = Complex64::new(cd.dbar_du, 0.0);
    let dbar_rho0 = j.f_xxb + 2.0 * dbar_du * j.f + 2.0 * cd.du * j.f_xb;
    // σ̄₀ = −∂̄F
    let d_sigma0_bar = -j.f_xxb - 2.0 * cd.du * j.f_xb;
    Ok(dbar_rho0 + d_sigma0_bar + 0.5 * j.f * cd.e2u * space.kappa())
}

/// The same identity with ∂̄ρ₀ and ∂(σ̄₀e^{2u}) taken by sixth-order
/// central differences of the slope functions, step `h`.
pub fn cm2_residual_fd(space: SpaceKind, sec: &dyn Section, xi: Complex64, h: f64) -> Result<Complex64> {
    if !(h > 0.0) {
        return Err(GeometryError::InvalidStep(h));
    }
    let cd = conformal_data(space, xi)?;
    let rho0 = |z: Complex64| -> Result<Complex64> { Ok(slopes(space, sec, z)?.1) };
    let weighted = |z: Complex64| -> Result<Complex64> {
        let e2u = conformal_data(space, z)?.e2u;
        Ok(slopes(space, sec, z)?.0.conj() * e2u)
    };
    let partial = |g: &dyn Fn(Complex64) -> Result<Complex64>, dir: Complex64| -> Result<Complex64> {
        let at = |k: f64| g(xi + dir * (k * h));
        Ok((45.0 * (at(1.0)? - at(-1.0)?) - 9.0 * (at(2.0)? - at(-2.0)?) + (at(3.0)? - at(-3.0)?)) / (60.0 * h))
    };
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let dbar_rho0 = 0.5 * (partial(&rho0, one)? + i * partial(&rho0, i)?);
    let d_weighted = 0.5 * (partial(&weighted, one)? - i * partial(&weighted, i)?);
    let f = sec.jet(xi).f;
    Ok(dbar_rho0 + d_weighted / cd.e2u + 0.5 * f * cd.e2u * space.kappa())
}

fn umbilic_scale(sec: &dyn Section, xi: Complex64) -> f64 {
    let j = sec.jet(xi);
    1.0 + j.f.norm() + j.f_x.norm() + j.f_xb.norm()
}

/// Relative threshold on |σ₀| below which a point counts as umbilic.
pub const UMBILIC_TOL: f64 = 1e-8;

fn check_umbilic(sec: &dyn Section, xi: Complex64, sigma0: Complex64) -> Result<()> {
    if sigma0.norm() < UMBILIC_TOL * umbilic_scale(sec, xi) {
        Err(GeometryError::Umbilic(xi))
    } else {
        Ok(())
    }
}

/// Scalar curvature of the metric induced on a Lagrangian graph section,
/// in the simplified form that needs no support function.
pub fn scalar_curvature_graph(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<f64> {
    let (sigma0, _) = slopes(space, sec, xi)?;
    check_umbilic(sec, xi, sigma0)?;
    let j = sec.jet(xi);
    let s = space.sign();
    let q = space.q(xi);
    let d_abs_sigma0_sq = j.f_xxb * j.f_xb.conj() + j.f_xb * j.f_xbxb.conj();
    let dbar_r_plus_rho0 = j.f_xxb - 2.0 * s * xi.conj() * j.f_xb / q;
    let n = sigma0.norm_sqr();
    Ok(-q * q / (8.0 * n * n) * (d_abs_sigma0_sq * dbar_r_plus_rho0).im)
}

/// The same curvature before simplification, with ∂̄r taken from the
/// support-function equation.
pub fn scalar_curvature_graph_unsimplified(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<f64> {
    let (sigma0, _) = slopes(space, sec, xi)?;
    check_umbilic(sec, xi, sigma0)?;
    let cd = conformal_data(space, xi)?;
    let j = sec.jet(xi);
    let d_abs_sigma0_sq = j.f_xxb * j.f_xb.conj() + j.f_xb * j.f_xbxb.conj();
    let dbar_rho0 = j.f_xxb + 2.0 * cd.dbar_du * j.f + 2.0 * cd.du * j.f_xb;
    let dbar_r = support_gradient(space, sec, xi);
    let n = sigma0.norm_sqr();
    Ok(-1.0 / (2.0 * cd.e2u * n * n) * (d_abs_sigma0_sq * (dbar_rho0 + dbar_r)).im)
}

/// Induced metric of a graph section in the coordinates (Re ξ, Im ξ).
pub fn graph_metric(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<Metric2> {
    let m = induced_metric(space, &GraphCongruence(sec), xi)?.matrix;
    Ok([m[0][0], m[0][1], m[1][1]])
}

/// Gauss curvature of the induced metric of a graph section computed by
/// finite differences, independent of the closed-form expressions.
pub fn scalar_curvature_fd(space: SpaceKind, sec: &dyn Section, xi: Complex64, h: f64) -> Result<f64> {
    space.check_domain(xi + Complex64::new(2.0 * h, 2.0 * h))?;
    space.check_domain(xi - Complex64::new(2.0 * h, 2.0 * h))?;
    let metric = |x: f64, y: f64| {
        graph_metric(space, sec, Complex64::new(x, y)).unwrap_or([f64::NAN; 3])
    };
    Ok(gauss_curvature_fd(metric, xi.re, xi.im, h))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalCurvatures {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Angle α between the frame and the principal directions; arg σ = 2α.
    pub alpha: f64,
}

/// Relative tolerance for treating ρ as real.
pub const REAL_TOL: f64 = 1e-9;

pub fn principal_curvatures(rho: Complex64, sigma: Complex64) -> Result<PrincipalCurvatures> {
    if rho.im.abs() > REAL_TOL * (1.0 + rho.norm()) {
        return Err(GeometryError::NonRealRho(rho));
    }
    let a = sigma.norm();
    Ok(PrincipalCurvatures {
        lambda1: rho.re + a,
        lambda2: rho.re - a,
        alpha: 0.5 * sigma.arg(),
    })
}

/// Optical and curvature data at one point of a graph congruence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinData {
    pub xi: Complex64,
    pub sigma0: Complex64,
    pub rho0: Complex64,
    pub r: f64,
    pub rho: Complex64,
    pub sigma: Complex64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Scalar curvature; NaN at umbilic points.
    pub k: f64,
    pub umbilic: bool,
}

/// Full analysis of a Lagrangian graph section at ξ with support value r.
pub fn spin_data(space: SpaceKind, sec: &dyn Section, xi: Complex64, r: f64) -> Result<SpinData> {
    let (sigma0, rho0) = slopes(space, sec, xi)?;
    let (rho, sigma) = spin_coefficients_parametric(space, &GraphCongruence(sec), xi, r)?;
    let pc = principal_curvatures(rho, sigma)?;
    let (k, umbilic) = match scalar_curvature_graph(space, sec, xi) {
        Ok(k) => (k, false),
        Err(GeometryError::Umbilic(_)) => (f64::NAN, true),
        Err(e) => return Err(e),
    };
    Ok(SpinData {
        xi,
        sigma0,
        rho0,
        r,
        rho,
        sigma,
        lambda1: pc.lambda1,
        lambda2: pc.lambda2,
        k,
        umbilic,
    })
}

/// Analysis of a grid of cells: the support function is integrated along
/// the segment from `anchor` (where it equals `r0`) to each cell.
pub fn analyze_grid(
    space: SpaceKind,
    sec: &dyn Section,
    cells: &[Complex64],
    anchor: Complex64,
    r0: f64,
) -> Vec<Result<SpinData>> {
    cells
        .par_iter()
        .map(|&xi| {
            let r = support_integrate(space, sec, &[anchor, xi], r0)?;
            spin_data(space, sec, xi, r)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeingartenOptions {
    /// Threshold on max |K|.
    pub k_tol: f64,
    /// Threshold on the normalized wedge |dλ₁∧dλ₂| / (|dλ₁||dλ₂|).
    pub wedge_tol: f64,
    pub anchor: Complex64,
    pub r0: f64,
    /// Step for the finite-difference gradients of λ₁, λ₂.
    pub h: f64,
}

impl Default for WeingartenOptions {
    fn default() -> Self {
        WeingartenOptions {
            k_tol: 1e-6,
            wedge_tol: 1e-4,
            anchor: Complex64::new(0.0, 0.0),
            r0: 1.0,
            h: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeingartenReport {
    pub is_weingarten: bool,
    pub wedge_verdict: bool,
    pub detectors_agree: bool,
    pub max_abs_k: f64,
    pub max_wedge: f64,
    pub cells: usize,
    pub skipped_cells: usize,
    pub wedge_samples: Vec<f64>,
}

fn lambdas_at(space: SpaceKind, sec: &dyn Section, xi: Complex64, opts: &WeingartenOptions) -> Result<(f64, f64)> {
    let r = support_integrate(space, sec, &[opts.anchor, xi], opts.r0)?;
    let (rho, sigma) = spin_coefficients_parametric(space, &GraphCongruence(sec), xi, r)?;
    let pc = principal_curvatures(rho, sigma)?;
    Ok((pc.lambda1, pc.lambda2))
}

fn normalized_wedge(space: SpaceKind, sec: &dyn Section, xi: Complex64, opts: &WeingartenOptions) -> Result<f64> {
    let h = opts.h;
    let grad = |dir: Complex64| -> Result<(f64, f64)> {
        let at = |k: f64| lambdas_at(space, sec, xi + dir * (k * h), opts);
        let (p1, m1, p2, m2) = (at(1.0)?, at(-1.0)?, at(2.0)?, at(-2.0)?);
        let d = |a: f64, b: f64, c: f64, e: f64| (8.0 * (a - b) - (c - e)) / (12.0 * h);
        Ok((d(p1.0, m1.0, p2.0, m2.0), d(p1.1, m1.1, p2.1, m2.1)))
    };
    let (l1x, l2x) = grad(Complex64::new(1.0, 0.0))?;
    let (l1y, l2y) = grad(Complex64::i())?;
    let wedge = l1x * l2y - l1y * l2x;
    let norms = l1x.hypot(l1y) * l2x.hypot(l2y);
    Ok(wedge.abs() / norms.max(1e-8))
}

/// Runs the curvature detector and the independent dλ₁∧dλ₂ detector over
/// the grid. Umbilic or focal cells are skipped and counted.
pub fn weingarten_test(
    space: SpaceKind,
    sec: &dyn Section,
    grid: &XiGrid,
    opts: &WeingartenOptions,
) -> Result<WeingartenReport> {
    let cells = grid.nodes();
    for &xi in &cells {
        space.check_domain(xi)?;
    }
    let per_cell: Vec<Option<(f64, f64)>> = cells
        .par_iter()
        .map(|&xi| {
            let k = scalar_curvature_graph(space, sec, xi).ok()?;
            let w = normalized_wedge(space, sec, xi, opts).ok()?;
            Some((k, w))
        })
        .collect();
    let mut max_abs_k: f64 = 0.0;
    let mut max_wedge: f64 = 0.0;
    let mut skipped = 0;
    let mut wedge_samples = Vec::with_capacity(cells.len());
    for cell in &per_cell {
        match cell {
            Some((k, w)) => {
                max_abs_k = max_abs_k.max(k.abs());
                max_wedge = max_wedge.max(*w);
                wedge_samples.push(*w);
            }
            None => {
                skipped += 1;
                wedge_samples.push(f64::NAN);
            }
        }
    }
    if skipped == cells.len() {
        return Err(GeometryError::Degenerate("every grid cell is umbilic or focal"));
    }
    // a section is Lagrangian where the analysis ran; check the anchor too
    graph_lagrangian_check(space, sec, opts.anchor)?;
    let is_weingarten = max_abs_k <= opts.k_tol;
    let wedge_verdict = max_wedge <= opts.wedge_tol;
    Ok(WeingartenReport {
        is_weingarten,
        wedge_verdict,
        detectors_agree: is_weingarten == wedge_verdict,
        max_abs_k,
        max_wedge,
        cells: cells.len(),
        skipped_cells: skipped,
        wedge_samples,
    })
}

/// Lagrangian sections used as fixtures: `F = ξ g(ξξ̄)` with real g, and its
/// perturbation by `ε(1 ± ξξ̄)²(ξ + ξ̄)/4`.
pub mod fixtures {
    use super::*;
    use crate::jet::Poly2;

    pub fn rotational(g: &[f64]) -> Poly2 {
        Poly2::rotational(g)
    }

    /// The Lagrangian section whose support function is the real polynomial
    /// `r`: `F = ±½(1 ± ξξ̄)² ∂̄r`.
    pub fn from_support(space: SpaceKind, r: &Poly2) -> Poly2 {
        let q = Poly2::q(space.sign());
        let q2 = &q * &q;
        (&q2 * &r.derivative(0, 1)).scale(Complex64::new(0.5 * space.sign(), 0.0))
    }

    /// A random real polynomial of bidegree (deg, deg).
    pub fn random_support<R: rand::Rng>(rng: &mut R, deg: u32) -> Poly2 {
        let mut p = Poly2::zero();
        for m in 0..=deg {
            for n in 0..=m {
                let c = if m == n {
                    Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
                } else {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                };
                p.add_term(m, n, c);
                if m != n {
                    p.add_term(n, m, c.conj());
                }
            }
        }
        p
    }

    pub fn perturbed(space: SpaceKind, g: &[f64], eps: f64) -> Poly2 {
        let q = Poly2::q(space.sign());
        let q2 = &q * &q;
        let lin = &Poly2::xi() + &Poly2::xi_bar();
        let pert = (&q2 * &lin).scale(Complex64::new(eps / 4.0, 0.0));
        &Poly2::rotational(g) + &pert
    }
}
