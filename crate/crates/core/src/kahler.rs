//! The neutral Kähler structure (G, J, Ω) on TN for the round sphere and the
//! hyperbolic disc, written in the holomorphic coordinates (ξ, η).
//!
//! Conventions: a symmetric product is `dα dβ (v, w) = ½(dα(v)dβ(w) + dβ(v)dα(w))`
//! and a wedge is `dα∧dβ (v, w) = ½(dα(v)dβ(w) − dα(w)dβ(v))`. With these the
//! compatibility `G(·,·) = Ω(J·,·)` holds identically and
//! `Ω² + ε ς² = det G(vᵢ, vⱼ)` holds for every pair of tangent vectors.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Margin kept from the boundary of the hyperbolic disc.
pub const DISC_MARGIN: f64 = 1e-9;

/// Selects the base surface: the round sphere (oriented lines of Euclidean
/// 3-space) or the hyperbolic plane (future-pointing time-like lines of
/// Lorentzian 3-space).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Lorentzian,
}

impl SpaceKind {
    pub const BOTH: [SpaceKind; 2] = [SpaceKind::Euclidean, SpaceKind::Lorentzian];

    /// +1 for Euclidean, −1 for Lorentzian: the upper/lower sign in every
    /// coordinate formula.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            SpaceKind::Euclidean => 1.0,
            SpaceKind::Lorentzian => -1.0,
        }
    }

    /// Signature flag of G. Both instantiated metrics are neutral.
    #[inline]
    pub fn epsilon(self) -> f64 {
        -1.0
    }

    /// Gauss curvature of the base metric.
    #[inline]
    pub fn kappa(self) -> f64 {
        self.sign()
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Lorentzian => "lorentzian",
        }
    }

    /// `1 ± ξξ̄`.
    #[inline]
    pub fn q(self, xi: Complex64) -> f64 {
        1.0 + self.sign() * xi.norm_sqr()
    }

    pub fn check_domain(self, xi: Complex64) -> Result<()> {
        let ok = xi.re.is_finite()
            && xi.im.is_finite()
            && match self {
                SpaceKind::Euclidean => true,
                SpaceKind::Lorentzian => xi.norm() < 1.0 - DISC_MARGIN,
            };
        if ok {
            Ok(())
        } else {
            Err(GeometryError::domain(self, xi))
        }
    }
}

impl std::fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(SpaceKind::Euclidean),
            "lorentzian" => Ok(SpaceKind::Lorentzian),
            other => Err(GeometryError::Invalid(format!("unknown space '{other}'"))),
        }
    }
}

/// A point of TN: base coordinate ξ and fibre coordinate η.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinePoint {
    pub xi: Complex64,
    pub eta: Complex64,
}

impl LinePoint {
    pub fn new(xi: Complex64, eta: Complex64) -> Self {
        LinePoint { xi, eta }
    }
}

/// A real tangent vector, stored by its holomorphic components:
/// `v = dxi ∂ξ + conj(dxi) ∂ξ̄ + deta ∂η + conj(deta) ∂η̄`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TangentVector {
    pub dxi: Complex64,
    pub deta: Complex64,
}

impl TangentVector {
    pub fn new(dxi: Complex64, deta: Complex64) -> Self {
        TangentVector { dxi, deta }
    }

    /// The real coordinate basis (∂x₁, ∂x₂, ∂y₁, ∂y₂) with ξ = x₁ + i x₂, η = y₁ + i y₂.
    pub fn real_basis() -> [TangentVector; 4] {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        let z = Complex64::new(0.0, 0.0);
        [
            TangentVector::new(one, z),
            TangentVector::new(i, z),
            TangentVector::new(z, one),
            TangentVector::new(z, i),
        ]
    }

    pub fn from_real(c: [f64; 4]) -> Self {
        TangentVector::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
    }

    pub fn to_real(self) -> [f64; 4] {
        [self.dxi.re, self.dxi.im, self.deta.re, self.deta.im]
    }

    pub fn norm(self) -> f64 {
        (self.dxi.norm_sqr() + self.deta.norm_sqr()).sqrt()
    }
}

impl Add for TangentVector {
    type Output = TangentVector;
    fn add(self, o: Self) -> Self {
        TangentVector::new(self.dxi + o.dxi, self.deta + o.deta)
    }
}

impl Sub for TangentVector {
    type Output = TangentVector;
    fn sub(self, o: Self) -> Self {
        TangentVector::new(self.dxi - o.dxi, self.deta - o.deta)
    }
}

impl Neg for TangentVector {
    type Output = TangentVector;
    fn neg(self) -> Self {
        TangentVector::new(-self.dxi, -self.deta)
    }
}

impl Mul<f64> for TangentVector {
    type Output = TangentVector;
    fn mul(self, k: f64) -> Self {
        TangentVector::new(self.dxi * k, self.deta * k)
    }
}

/// The conformal factor `e^{2u} = 4(1 ± ξξ̄)^{-2}` and the derivatives of u
/// used throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalData {
    pub e2u: f64,
    /// ∂u
    pub du: Complex64,
    /// ∂∂u
    pub ddu: Complex64,
    /// ∂∂̄u (real)
    pub dbar_du: f64,
}

impl ConformalData {
    /// ∂(e^{2u}) = 2 ∂u e^{2u}
    #[inline]
    pub fn d_e2u(&self) -> Complex64 {
        self.du * (2.0 * self.e2u)
    }
}

pub fn conformal_data(space: SpaceKind, xi: Complex64) -> Result<ConformalData> {
    space.check_domain(xi)?;
    let s = space.sign();
    let q = space.q(xi);
    let xib = xi.conj();
    Ok(ConformalData {
        e2u: 4.0 / (q * q),
        du: -s * xib / q,
        ddu: xib * xib / (q * q),
        dbar_du: -s / (q * q),
    })
}

/// J = j ⊕ j: multiplication of both holomorphic components by i.
#[inline]
pub fn apply_complex_structure(v: TangentVector) -> TangentVector {
    let i = Complex64::i();
    TangentVector::new(i * v.dxi, i * v.deta)
}

fn metric_with(cd: &ConformalData, eta: Complex64, v: TangentVector, w: TangentVector) -> f64 {
    // G = 2 Im(e^{2u} dη̄ dξ − η ∂(e^{2u}) dξ dξ̄)
    let first = cd.e2u * 0.5 * (v.deta.conj() * w.dxi + v.dxi * w.deta.conj());
    let second = eta * cd.d_e2u() * 0.5 * (v.dxi * w.dxi.conj() + v.dxi.conj() * w.dxi);
    2.0 * (first - second).im
}

fn symplectic_with(cd: &ConformalData, eta: Complex64, v: TangentVector, w: TangentVector) -> f64 {
    // Ω = 2 Re(e^{2u} dη∧dξ̄ + η ∂(e^{2u}) dξ∧dξ̄)
    let first = cd.e2u * 0.5 * (v.deta * w.dxi.conj() - w.deta * v.dxi.conj());
    let second = eta * cd.d_e2u() * 0.5 * (v.dxi * w.dxi.conj() - w.dxi * v.dxi.conj());
    2.0 * (first + second).re
}

pub fn metric_value(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector) -> Result<f64> {
    let cd = conformal_data(space, p.xi)?;
    Ok(metric_with(&cd, p.eta, v, w))
}

pub fn symplectic_value(
    space: SpaceKind,
    p: LinePoint,
    v: TangentVector,
    w: TangentVector,
) -> Result<f64> {
    let cd = conformal_data(space, p.xi)?;
    Ok(symplectic_with(&cd, p.eta, v, w))
}

/// `ς²(v, w) = e^{4u} |dξ(v) dη(w) − dη(v) dξ(w)|²`; vanishes exactly when
/// v, w span a complex line (or are dependent).
pub fn sigma_squared(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector) -> Result<f64> {
    let cd = conformal_data(space, p.xi)?;
    Ok(cd.e2u * cd.e2u * (v.dxi * w.deta - v.deta * w.dxi).norm_sqr())
}

/// The three terms of the identity `Ω² + ε ς² = det G`.
#[derive(Debug, Clone, Copy)]
pub struct WirtingerTerms {
    pub omega_sq: f64,
    pub sigma_sq: f64,
    pub gram_det: f64,
    /// `|G(v,v)G(w,w)| + G(v,w)²`, the size of the Gram terms before cancellation.
    pub gram_scale: f64,
    pub epsilon: f64,
}

impl WirtingerTerms {
    pub fn residual(&self) -> f64 {
        self.omega_sq + self.epsilon * self.sigma_sq - self.gram_det
    }

    /// Magnitude used to turn the residual into a relative error.
    pub fn scale(&self) -> f64 {
        self.omega_sq + self.sigma_sq + self.gram_scale
    }
}

pub fn wirtinger_terms(
    space: SpaceKind,
    p: LinePoint,
    v: TangentVector,
    w: TangentVector,
) -> Result<WirtingerTerms> {
    let cd = conformal_data(space, p.xi)?;
    let om = symplectic_with(&cd, p.eta, v, w);
    let gvv = metric_with(&cd, p.eta, v, v);
    let gww = metric_with(&cd, p.eta, w, w);
    let gvw = metric_with(&cd, p.eta, v, w);
    Ok(WirtingerTerms {
        omega_sq: om * om,
        sigma_sq: cd.e2u * cd.e2u * (v.dxi * w.deta - v.deta * w.dxi).norm_sqr(),
        gram_det: gvv * gww - gvw * gvw,
        gram_scale: (gvv * gww).abs() + gvw * gvw,
        epsilon: space.epsilon(),
    })
}

/// `Ω(v,w)² + ε ς²(v,w) − [G(v,v)G(w,w) − G(v,w)²]`.
pub fn wirtinger_residual(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector) -> Result<f64> {
    Ok(wirtinger_terms(space, p, v, w)?.residual())
}

/// Components of G in the real coordinates (x₁, x₂, y₁, y₂).
pub fn metric_matrix(space: SpaceKind, p: LinePoint) -> Result<[[f64; 4]; 4]> {
    let cd = conformal_data(space, p.xi)?;
    let basis = TangentVector::real_basis();
    let mut g = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let val = metric_with(&cd, p.eta, basis[i], basis[j]);
            g[i][j] = val;
            g[j][i] = val;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conformal_data_at_origin() {
        let l = conformal_data(SpaceKind::Lorentzian, c(0.0, 0.0)).unwrap();
        assert_eq!(l.e2u, 4.0);
        assert_eq!(l.du, c(0.0, 0.0));
        assert_eq!(l.dbar_du, 1.0);
        let e = conformal_data(SpaceKind::Euclidean, c(0.0, 0.0)).unwrap();
        assert_eq!(e.e2u, 4.0);
        assert_eq!(e.dbar_du, -1.0);
    }

    #[test]
    fn conformal_data_off_origin() {
        let l = conformal_data(SpaceKind::Lorentzian, c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(l.e2u, 4.0 / (0.75 * 0.75), epsilon = 1e-15);
        assert_abs_diff_eq!(l.du.re, 0.5 / 0.75, epsilon = 1e-15);
        // κ = −4 e^{−2u} ∂∂̄u
        for space in SpaceKind::BOTH {
            let cd = conformal_data(space, c(0.3, -0.4)).unwrap();
            assert_abs_diff_eq!(-4.0 * cd.dbar_du / cd.e2u, space.kappa(), epsilon = 1e-14);
        }
    }

    #[test]
    fn conformal_derivatives_match_finite_differences() {
        // u = ln 2 − ln(1 ± ξξ̄), differentiated numerically
        for space in SpaceKind::BOTH {
            let xi = c(0.31, -0.22);
            let u = |z: Complex64| (2.0f64).ln() - space.q(z).ln();
            let h = 1e-5;
            let dx = |f: &dyn Fn(Complex64) -> f64, z: Complex64| (f(z + h) - f(z - h)) / (2.0 * h);
            let dy = |f: &dyn Fn(Complex64) -> f64, z: Complex64| {
                (f(z + c(0.0, h)) - f(z - c(0.0, h))) / (2.0 * h)
            };
            let du = 0.5 * c(dx(&u, xi), -dy(&u, xi));
            let cd = conformal_data(space, xi).unwrap();
            assert_abs_diff_eq!((du - cd.du).norm(), 0.0, epsilon = 1e-9);
            // ∂∂̄u = ¼ Δu
            let lap = (u(xi + h) + u(xi - h) + u(xi + c(0.0, h)) + u(xi - c(0.0, h)) - 4.0 * u(xi)) / (h * h);
            assert_abs_diff_eq!(lap / 4.0, cd.dbar_du, epsilon = 1e-5);
        }
    }

    #[test]
    fn disc_boundary_is_rejected() {
        assert!(conformal_data(SpaceKind::Lorentzian, c(1.0, 0.0)).is_err());
        assert!(conformal_data(SpaceKind::Lorentzian, c(0.0, -1.0 + 1e-12)).is_err());
        assert!(conformal_data(SpaceKind::Euclidean, c(10.0, 3.0)).is_ok());
    }

    #[test]
    fn hand_values_at_origin() {
        let p = LinePoint::default();
        let v = TangentVector::new(c(1.0, 0.0), c(0.0, 0.0));
        let w = TangentVector::new(c(0.0, 0.0), c(1.0, 0.0));
        let s = SpaceKind::Lorentzian;
        assert_eq!(metric_value(s, p, v, w).unwrap(), 0.0);
        assert_eq!(metric_value(s, p, v, v).unwrap(), 0.0);
        assert_eq!(metric_value(s, p, w, w).unwrap(), 0.0);
        assert_eq!(symplectic_value(s, p, v, w).unwrap(), -4.0);
        assert_eq!(sigma_squared(s, p, v, w).unwrap(), 16.0);
        assert_eq!(wirtinger_residual(s, p, v, w).unwrap(), 0.0);
    }

    #[test]
    fn complex_structure() {
        let v = TangentVector::new(c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(apply_complex_structure(v).dxi, c(0.0, 1.0));
        let w = TangentVector::new(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(apply_complex_structure(w).deta, c(0.0, 1.0));
    }

    #[test]
    fn neutral_signature_at_a_point() {
        for space in SpaceKind::BOTH {
            let p = LinePoint::new(c(0.2, 0.1), c(-0.5, 0.7));
            let g = metric_matrix(space, p).unwrap();
            // v = ∂x₁ + t ∂y₂ has G(v,v) = g00 + 2t g03 + t² g33 with g33 = 0
            let pos = TangentVector::from_real([1.0, 0.0, 0.0, 1.0]);
            let neg = TangentVector::from_real([1.0, 0.0, 0.0, -1.0]);
            let a = metric_value(space, p, pos, pos).unwrap();
            let b = metric_value(space, p, neg, neg).unwrap();
            assert!(a * b < 0.0, "{a} {b} {g:?}");
        }
    }

    fn arb_c(scale: f64) -> impl Strategy<Value = Complex64> {
        (-scale..scale, -scale..scale).prop_map(|(a, b)| Complex64::new(a, b))
    }

    fn arb_vec() -> impl Strategy<Value = TangentVector> {
        (arb_c(2.0), arb_c(2.0)).prop_map(|(a, b)| TangentVector::new(a, b))
    }

    fn arb_space() -> impl Strategy<Value = SpaceKind> {
        prop_oneof![Just(SpaceKind::Euclidean), Just(SpaceKind::Lorentzian)]
    }

    proptest! {
        #[test]
        fn compatibility_and_invariance(space in arb_space(), xi in arb_c(0.6), eta in arb_c(3.0),
                                        v in arb_vec(), w in arb_vec()) {
            let p = LinePoint::new(xi, eta);
            let g = metric_value(space, p, v, w).unwrap();
            let jv = apply_complex_structure(v);
            let jw = apply_complex_structure(w);
            let scale = 1.0 + g.abs() + metric_value(space, p, v, v).unwrap().abs()
                + metric_value(space, p, w, w).unwrap().abs();
            prop_assert!((g - symplectic_value(space, p, jv, w).unwrap()).abs() <= 1e-12 * scale);
            prop_assert!((g - metric_value(space, p, jv, jw).unwrap()).abs() <= 1e-12 * scale);
            prop_assert!((g - metric_value(space, p, w, v).unwrap()).abs() <= 1e-12 * scale);
            let om = symplectic_value(space, p, v, w).unwrap();
            prop_assert!((om + symplectic_value(space, p, w, v).unwrap()).abs() <= 1e-12 * scale);
            prop_assert_eq!(symplectic_value(space, p, v, v).unwrap(), 0.0);
            let jj = apply_complex_structure(jv);
            prop_assert_eq!(jj, -v);
        }

        #[test]
        fn fibre_vectors_are_null(space in arb_space(), xi in arb_c(0.6), eta in arb_c(3.0), d in arb_c(3.0)) {
            let v = TangentVector::new(Complex64::new(0.0, 0.0), d);
            prop_assert_eq!(metric_value(space, LinePoint::new(xi, eta), v, v).unwrap(), 0.0);
        }

        #[test]
        fn wirtinger_identity(space in arb_space(), xi in arb_c(0.6), eta in arb_c(3.0),
                              v in arb_vec(), w in arb_vec(), lam in 0.1f64..5.0) {
            let p = LinePoint::new(xi, eta);
            let t = wirtinger_terms(space, p, v, w).unwrap();
            prop_assert!(t.residual().abs() <= 1e-12 * (1.0 + t.scale()));
            // complex planes have vanishing ς²
            let jv = apply_complex_structure(v);
            prop_assert_eq!(sigma_squared(space, p, v, jv).unwrap(), 0.0);
            // ς² is quadratic in each argument
            let s1 = sigma_squared(space, p, v, w).unwrap();
            let s2 = sigma_squared(space, p, v * lam, w).unwrap();
            prop_assert!((s2 - lam * lam * s1).abs() <= 1e-12 * (1.0 + s2));
            // dependent vectors: all three terms vanish
            let dep = wirtinger_terms(space, p, v, v * lam).unwrap();
            prop_assert!(dep.residual().abs() <= 1e-12 * (1.0 + dep.scale()));
        }
    }
}
