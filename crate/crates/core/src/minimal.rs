//! Minimal surfaces in Euclidean 3-space and maximal surfaces in Lorentzian
//! 3-space through their normal congruences: the holomorphic condition on a
//! section, power-series sections with their support function, surfaces
//! generated by a holomorphic potential, and umbilic winding numbers.

use num_complex::Complex64;

use crate::congruence::slopes;
use crate::error::{GeometryError, Result};
use crate::jet::{Poly2, Section};
use crate::kahler::SpaceKind;
use crate::line_map::SpacePoint;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A polynomial in ξ alone, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HolomorphicPoly {
    pub coeffs: Vec<Complex64>,
}

impl HolomorphicPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        HolomorphicPoly { coeffs }
    }

    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        HolomorphicPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// k-th derivative.
    pub fn derivative(&self, k: usize) -> HolomorphicPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(n, c)| c * (0..k).map(|i| (n - i) as f64).product::<f64>())
            .collect();
        HolomorphicPoly { coeffs }
    }

    pub fn eval(&self, xi: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * xi + c)
    }

    /// Value and first three derivatives.
    pub fn eval_jet(&self, xi: Complex64) -> [Complex64; 4] {
        std::array::from_fn(|k| self.derivative(k).eval(xi))
    }

    pub fn to_poly2(&self) -> Poly2 {
        Poly2::from_terms(self.coeffs.iter().enumerate().map(|(n, &c)| (n as u32, 0, c)))
    }
}

/// `∂̄(∂F̄/(1 ± ξξ̄)²)`; vanishes exactly for normal congruences of minimal
/// (maximal) surfaces, up to translation along the normals.
pub fn minimal_residual(space: SpaceKind, sec: &dyn Section, xi: Complex64) -> Result<Complex64> {
    space.check_domain(xi)?;
    let j = sec.jet(xi);
    let q = space.q(xi);
    Ok(j.f_xxb.conj() / (q * q) - 2.0 * space.sign() * xi * j.f_xb.conj() / (q * q * q))
}

/// Truncated power-series solution of the minimal condition, determined by
/// complex coefficients λ₀, …, λ_N.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSection {
    pub space: SpaceKind,
    pub lambdas: Vec<Complex64>,
}

impl SeriesSection {
    pub fn new(space: SpaceKind, lambdas: Vec<Complex64>) -> Self {
        SeriesSection { space, lambdas }
    }

    /// The section F as an exact polynomial.
    pub fn build(&self) -> Poly2 {
        let s = self.space.sign();
        let mut f = Poly2::zero();
        for (n, &lam) in self.lambdas.iter().enumerate() {
            let n32 = n as u32;
            let nf = n as f64;
            f.add_term(n32 + 3, 0, 2.0 * lam);
            let lb = lam.conj();
            f.add_term(0, n32 + 1, -lb * (s * (nf + 2.0) * (nf + 3.0)));
            f.add_term(1, n32 + 2, -lb * (2.0 * (nf + 1.0) * (nf + 3.0)));
            f.add_term(2, n32 + 3, -lb * (s * (nf + 1.0) * (nf + 2.0)));
        }
        f
    }

    /// The support function r of the section, normalized with no additive
    /// constant.
    pub fn potential_r(&self, xi: Complex64) -> Result<f64> {
        self.space.check_domain(xi)?;
        let s = self.space.sign();
        let n2 = xi.norm_sqr();
        let mut acc = 0.0;
        let mut pw = xi * xi;
        for (n, &lam) in self.lambdas.iter().enumerate() {
            let nf = n as f64;
            acc += (3.0 + nf + s * (1.0 + nf) * n2) * 2.0 * (lam * pw).re;
            pw *= xi;
        }
        Ok(-2.0 * acc / self.space.q(xi))
    }
}

/// `series_section_build`: exact polynomial jets for the series section.
pub fn series_section_build(ss: &SeriesSection) -> Poly2 {
    ss.build()
}

pub fn series_potential_r(ss: &SeriesSection, xi: Complex64) -> Result<f64> {
    ss.potential_r(xi)
}

/// Point of the minimal (maximal) surface generated by the potential w.
pub fn weierstrass_surface(space: SpaceKind, w: &HolomorphicPoly, xi: Complex64) -> Result<SpacePoint> {
    space.check_domain(xi)?;
    let s = space.sign();
    let [w0, w1, w2, _] = w.eval_jet(xi);
    let z = -s * (0.5 * xi * xi * w2 - xi * w1 + w0) + 0.5 * w2.conj();
    let t = -s * (xi * w2 - w1).re;
    Ok(SpacePoint::new(z, t))
}

/// Fibre coordinate of the normal line through the surface point at ξ.
pub fn weierstrass_eta(space: SpaceKind, w: &HolomorphicPoly, xi: Complex64) -> Result<Complex64> {
    space.check_domain(xi)?;
    let s = space.sign();
    let q = space.q(xi);
    let [w0, w1, w2, _] = w.eval_jet(xi);
    Ok(0.25 * (q * q * w2.conj() - 2.0 * s * xi * q * w1.conj() + 2.0 * xi * xi * w0.conj()) - 0.5 * s * w0)
}

/// The normal congruence of the surface as a polynomial section.
pub fn weierstrass_section(space: SpaceKind, w: &HolomorphicPoly) -> Poly2 {
    let s = space.sign();
    let q = Poly2::q(s);
    let q2 = &q * &q;
    let w0 = w.to_poly2();
    let w1b = w.derivative(1).to_poly2().conj();
    let w2b = w.derivative(2).to_poly2().conj();
    let xi = Poly2::xi();
    let xi2 = &xi * &xi;
    let quarter = Complex64::new(0.25, 0.0);
    let a = &q2 * &w2b;
    let b = (&(&xi * &q) * &w1b).scale(Complex64::new(-2.0 * s, 0.0));
    let c = (&xi2 * &w0.conj()).scale(Complex64::new(2.0, 0.0));
    let sum = &(&a + &b) + &c;
    &sum.scale(quarter) - &w0.scale(Complex64::new(0.5 * s, 0.0))
}

/// Rejects potentials that generate no immersion anywhere (∂³w ≡ 0).
pub fn check_potential(w: &HolomorphicPoly) -> Result<()> {
    if w.derivative(3).is_zero() {
        return Err(GeometryError::Degenerate("potential has vanishing third derivative; no immersion"));
    }
    Ok(())
}

/// Threshold on |∂³w| below which a vertex is flagged as a flat point.
pub const FLAT_TOL: f64 = 1e-12;

pub fn is_flat_point(w: &HolomorphicPoly, xi: Complex64) -> bool {
    w.derivative(3).eval(xi).norm() < FLAT_TOL
}

/// Winding number of σ₀ along the circle `|ξ − center| = radius`, sampled
/// with at least `samples` points and refined until consecutive phase steps
/// stay below π/4.
pub fn umbilic_winding(
    space: SpaceKind,
    sec: &dyn Section,
    center: Complex64,
    radius: f64,
    samples: usize,
) -> Result<i64> {
    if !(radius > 0.0) {
        return Err(GeometryError::Invalid(format!("contour radius must be positive, got {radius}")));
    }
    let mut n = samples.max(8);
    loop {
        let pts: Vec<Complex64> = (0..n)
            .map(|k| center + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64))
            .collect();
        let mut vals = Vec::with_capacity(n);
        for &xi in &pts {
            let (sigma0, _) = slopes(space, sec, xi)?;
            let j = sec.jet(xi);
            let scale = 1.0 + j.f.norm() + j.f_x.norm() + j.f_xb.norm();
            if sigma0.norm() < crate::congruence::UMBILIC_TOL * scale {
                return Err(GeometryError::ContourHitsZero(xi));
            }
            vals.push(sigma0);
        }
        let mut total = 0.0;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let step = (vals[(k + 1) % n] / vals[k]).arg();
            worst = worst.max(step.abs());
            total += step;
        }
        if worst < std::f64::consts::FRAC_PI_4 {
            return Ok((total / std::f64::consts::TAU).round() as i64);
        }
        if n > 1 << 20 {
            return Err(GeometryError::ContourHitsZero(center));
        }
        n *= 2;
    }
}
