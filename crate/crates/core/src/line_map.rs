//! The map Φ from (line, affine parameter) to points of 3-space and its
//! inverse, plus direction vectors and reconstruction of a line from a point
//! and a direction.

use num_complex::Complex64;

use crate::error::{GeometryError, Result};
use crate::kahler::{LinePoint, SpaceKind};

/// A point of Euclidean or Lorentzian 3-space, `z = x¹ + i x²`, `t = x³`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpacePoint {
    pub z: Complex64,
    pub t: f64,
}

impl SpacePoint {
    pub fn new(z: Complex64, t: f64) -> Self {
        SpacePoint { z, t }
    }

    pub fn from_xyz(x: [f64; 3]) -> Self {
        SpacePoint::new(Complex64::new(x[0], x[1]), x[2])
    }

    pub fn xyz(self) -> [f64; 3] {
        [self.z.re, self.z.im, self.t]
    }

    pub fn add(self, o: SpacePoint) -> SpacePoint {
        SpacePoint::new(self.z + o.z, self.t + o.t)
    }

    pub fn sub(self, o: SpacePoint) -> SpacePoint {
        SpacePoint::new(self.z - o.z, self.t - o.t)
    }

    pub fn scale(self, k: f64) -> SpacePoint {
        SpacePoint::new(self.z * k, self.t * k)
    }

    /// `|z|² ± t²`: the Euclidean or Lorentzian squared norm of the vector.
    pub fn norm_sqr(self, space: SpaceKind) -> f64 {
        self.z.norm_sqr() + space.sign() * self.t * self.t
    }
}

/// A line together with an affine parameter along it.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LineWithParam {
    pub line: LinePoint,
    pub r: f64,
}

/// Φ((ξ, η), r).
pub fn to_space(space: SpaceKind, lw: LineWithParam) -> Result<SpacePoint> {
    let LinePoint { xi, eta } = lw.line;
    space.check_domain(xi)?;
    let s = space.sign();
    let q = space.q(xi);
    let n = xi.norm_sqr();
    let z = (2.0 * (eta - s * eta.conj() * xi * xi) + 2.0 * xi * q * lw.r) / (q * q);
    let t = (-4.0 * s * (eta * xi.conj()).re + (1.0 - n * n) * lw.r) / (q * q);
    Ok(SpacePoint::new(z, t))
}

/// Φ⁻¹ restricted to a line with base coordinate ξ: returns η and r for the
/// point `p`.
pub fn from_space(space: SpaceKind, xi: Complex64, p: SpacePoint) -> Result<LineWithParam> {
    space.check_domain(xi)?;
    let s = space.sign();
    let eta = 0.5 * (p.z - 2.0 * p.t * xi - s * p.z.conj() * xi * xi);
    let r = (s * 2.0 * (xi.conj() * p.z).re + (1.0 - s * xi.norm_sqr()) * p.t) / space.q(xi);
    Ok(LineWithParam {
        line: LinePoint::new(xi, eta),
        r,
    })
}

/// Unit direction of the lines with base coordinate ξ: Euclidean unit vector
/// or future-pointing unit time-like vector.
pub fn direction_vector(space: SpaceKind, xi: Complex64) -> Result<SpacePoint> {
    space.check_domain(xi)?;
    let s = space.sign();
    let q = space.q(xi);
    Ok(SpacePoint::new(2.0 * xi / q, (1.0 - s * xi.norm_sqr()) / q))
}

const NORM_TOL: f64 = 1e-9;

/// Reconstructs (ξ, η) from a point on the line and its unit direction.
pub fn line_from_point_direction(space: SpaceKind, p: SpacePoint, d: SpacePoint) -> Result<LinePoint> {
    let expected = match space {
        SpaceKind::Euclidean => 1.0,
        SpaceKind::Lorentzian => -1.0,
    };
    let norm = d.norm_sqr(space);
    if (norm - expected).abs() > NORM_TOL * d.t.abs().max(1.0).powi(2) {
        return Err(GeometryError::NotNormalized { norm, expected });
    }
    if space == SpaceKind::Lorentzian && d.t <= 0.0 {
        return Err(GeometryError::PastPointing);
    }
    if 1.0 + d.t < NORM_TOL {
        return Err(GeometryError::OutsideChart);
    }
    let xi = d.z / (1.0 + d.t);
    Ok(from_space(space, xi, p)?.line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lw(xi: Complex64, eta: Complex64, r: f64) -> LineWithParam {
        LineWithParam {
            line: LinePoint::new(xi, eta),
            r,
        }
    }

    #[test]
    fn axis_lines() {
        for space in SpaceKind::BOTH {
            let eta0 = c(0.3, -1.2);
            let p = to_space(space, lw(c(0.0, 0.0), eta0, 2.5)).unwrap();
            assert_eq!(p.z, 2.0 * eta0);
            assert_eq!(p.t, 2.5);
            let o = to_space(space, lw(c(0.0, 0.0), c(0.0, 0.0), 0.0)).unwrap();
            assert_eq!(o, SpacePoint::default());
            let back = from_space(space, c(0.0, 0.0), SpacePoint::new(c(1.0, 2.0), 3.0)).unwrap();
            assert_eq!(back.line.eta, c(0.5, 1.0));
            assert_eq!(back.r, 3.0);
        }
    }

    #[test]
    fn lorentzian_hand_value() {
        let p = to_space(SpaceKind::Lorentzian, lw(c(0.5, 0.0), c(0.0, 0.0), 1.0)).unwrap();
        assert_abs_diff_eq!(p.z.re, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.z.im, 0.0);
        assert_abs_diff_eq!(p.t, 5.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn directions() {
        for space in SpaceKind::BOTH {
            let d = direction_vector(space, c(0.0, 0.0)).unwrap();
            assert_eq!(d, SpacePoint::new(c(0.0, 0.0), 1.0));
        }
        let e = direction_vector(SpaceKind::Euclidean, c(1.0, 0.0)).unwrap();
        assert_eq!(e, SpacePoint::new(c(1.0, 0.0), 0.0));
        let l = direction_vector(SpaceKind::Lorentzian, c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(l.z.re, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.t, 5.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.norm_sqr(SpaceKind::Lorentzian), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn reconstruction_from_point_and_direction() {
        for space in SpaceKind::BOTH {
            let up = SpacePoint::new(c(0.0, 0.0), 1.0);
            let l = line_from_point_direction(space, SpacePoint::default(), up).unwrap();
            assert_eq!(l, LinePoint::default());
            let eta0 = c(-0.4, 0.9);
            let l = line_from_point_direction(space, SpacePoint::new(2.0 * eta0, 0.0), up).unwrap();
            assert_eq!(l, LinePoint::new(c(0.0, 0.0), eta0));
        }
    }

    #[test]
    fn reconstruction_errors() {
        let south = SpacePoint::new(c(0.0, 0.0), -1.0);
        assert!(matches!(
            line_from_point_direction(SpaceKind::Euclidean, SpacePoint::default(), south),
            Err(GeometryError::OutsideChart)
        ));
        assert!(matches!(
            line_from_point_direction(SpaceKind::Lorentzian, SpacePoint::default(), south),
            Err(GeometryError::PastPointing)
        ));
        let long = SpacePoint::new(c(0.0, 0.0), 2.0);
        assert!(matches!(
            line_from_point_direction(SpaceKind::Euclidean, SpacePoint::default(), long),
            Err(GeometryError::NotNormalized { .. })
        ));
        assert!(to_space(SpaceKind::Lorentzian, lw(c(1.0, 0.0), c(0.0, 0.0), 0.0)).is_err());
    }

    fn arb_c(scale: f64) -> impl Strategy<Value = Complex64> {
        (-scale..scale, -scale..scale).prop_map(|(a, b)| Complex64::new(a, b))
    }

    fn arb_space() -> impl Strategy<Value = SpaceKind> {
        prop_oneof![Just(SpaceKind::Euclidean), Just(SpaceKind::Lorentzian)]
    }

    proptest! {
        #[test]
        fn round_trip(space in arb_space(), xi in arb_c(0.63), eta in arb_c(2.0), r in -3.0f64..3.0) {
            let p = to_space(space, lw(xi, eta, r)).unwrap();
            let back = from_space(space, xi, p).unwrap();
            prop_assert!((back.line.eta - eta).norm() <= 1e-12 * (1.0 + eta.norm() + r.abs()));
            prop_assert!((back.r - r).abs() <= 1e-12 * (1.0 + eta.norm() + r.abs()));
            let again = to_space(space, back).unwrap();
            prop_assert!((again.z - p.z).norm() <= 1e-12 * (1.0 + p.z.norm()));
        }

        #[test]
        fn direction_normalization(space in arb_space(), xi in arb_c(0.7)) {
            let d = direction_vector(space, xi).unwrap();
            let expected = if space == SpaceKind::Euclidean { 1.0 } else { -1.0 };
            prop_assert!((d.norm_sqr(space) - expected).abs() < 1e-12 * d.t.abs().max(1.0).powi(2));
            if space == SpaceKind::Lorentzian {
                prop_assert!(d.t >= 1.0);
            }
            // consecutive affine parameters differ by exactly the direction
            let a = to_space(space, lw(xi, Complex64::new(0.3, 0.1), 0.0)).unwrap();
            let b = to_space(space, lw(xi, Complex64::new(0.3, 0.1), 1.0)).unwrap();
            prop_assert!((b.sub(a).z - d.z).norm() < 1e-12);
        }

        #[test]
        fn eta_constant_along_line(space in arb_space(), xi in arb_c(0.63), eta in arb_c(2.0), r in -2.0f64..2.0) {
            let p = to_space(space, lw(xi, eta, r)).unwrap();
            let d = direction_vector(space, xi).unwrap();
            let h = 1e-4;
            let plus = from_space(space, xi, p.add(d.scale(h))).unwrap().line.eta;
            let minus = from_space(space, xi, p.add(d.scale(-h))).unwrap().line.eta;
            prop_assert!(((plus - minus) / (2.0 * h)).norm() <= 1e-10);
        }

        #[test]
        fn line_round_trip(space in arb_space(), xi in arb_c(0.63), eta in arb_c(2.0)) {
            let p0 = to_space(space, lw(xi, eta, 0.0)).unwrap();
            let p1 = to_space(space, lw(xi, eta, 1.0)).unwrap();
            let l = line_from_point_direction(space, p0, p1.sub(p0)).unwrap();
            prop_assert!((l.xi - xi).norm() <= 1e-10);
            prop_assert!((l.eta - eta).norm() <= 1e-10);
        }
    }
}
