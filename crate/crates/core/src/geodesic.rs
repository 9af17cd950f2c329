//! Geodesics of the neutral metric: the affinely parameterized geodesic
//! equations, a fixed-step RK4 integrator, the closed-form geodesics of TH²
//! with their first integral, and ruled surfaces swept by geodesic line
//! families.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::kahler::{conformal_data, metric_value, LinePoint, SpaceKind, TangentVector};
use crate::line_map::{to_space, LineWithParam, SpacePoint};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeodesicState {
    pub xi: Complex64,
    pub eta: Complex64,
    pub dxi: Complex64,
    pub deta: Complex64,
    pub s: f64,
}

impl GeodesicState {
    pub fn point(&self) -> LinePoint {
        LinePoint::new(self.xi, self.eta)
    }

    pub fn velocity(&self) -> TangentVector {
        TangentVector::new(self.dxi, self.deta)
    }
}

/// Constants of the closed-form TH² geodesic through the x³-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicParams {
    pub c1: f64,
    pub c2: f64,
    pub c5: f64,
    pub theta: f64,
}

/// (ξ̈, η̈) at the given state.
pub fn geodesic_rhs(space: SpaceKind, st: &GeodesicState) -> Result<(Complex64, Complex64)> {
    let cd = conformal_data(space, st.xi)?;
    let v2 = st.dxi * st.dxi;
    let xi_dd = -2.0 * cd.du * v2;
    let eta_dd = -4.0 * cd.du * st.dxi * st.deta
        - 2.0 * (st.eta * cd.ddu - st.eta.conj() * cd.dbar_du) * v2;
    Ok((xi_dd, eta_dd))
}

#[derive(Clone, Copy)]
struct Deriv {
    xi: Complex64,
    eta: Complex64,
    dxi: Complex64,
    deta: Complex64,
}

fn deriv(space: SpaceKind, st: &GeodesicState) -> Result<Deriv> {
    let (a, b) = geodesic_rhs(space, st)?;
    Ok(Deriv {
        xi: st.dxi,
        eta: st.deta,
        dxi: a,
        deta: b,
    })
}

fn advance(st: &GeodesicState, d: &Deriv, h: f64) -> GeodesicState {
    GeodesicState {
        xi: st.xi + d.xi * h,
        eta: st.eta + d.eta * h,
        dxi: st.dxi + d.dxi * h,
        deta: st.deta + d.deta * h,
        s: st.s + h,
    }
}

fn rk4_step(space: SpaceKind, st: &GeodesicState, h: f64) -> Result<GeodesicState> {
    let k1 = deriv(space, st)?;
    let k2 = deriv(space, &advance(st, &k1, h / 2.0))?;
    let k3 = deriv(space, &advance(st, &k2, h / 2.0))?;
    let k4 = deriv(space, &advance(st, &k3, h))?;
    let comb = |a: Complex64, b: Complex64, c: Complex64, d: Complex64| (a + 2.0 * b + 2.0 * c + d) * (h / 6.0);
    let next = GeodesicState {
        xi: st.xi + comb(k1.xi, k2.xi, k3.xi, k4.xi),
        eta: st.eta + comb(k1.eta, k2.eta, k3.eta, k4.eta),
        dxi: st.dxi + comb(k1.dxi, k2.dxi, k3.dxi, k4.dxi),
        deta: st.deta + comb(k1.deta, k2.deta, k3.deta, k4.deta),
        s: st.s + h,
    };
    space.check_domain(next.xi)?;
    Ok(next)
}

/// Integrates from `st0.s` to `s1` with classical RK4. The step is shrunk
/// slightly, if needed, so that `s1` is hit exactly. The returned trajectory
/// includes the initial state.
pub fn integrate_geodesic(space: SpaceKind, st0: GeodesicState, s1: f64, step: f64) -> Result<Vec<GeodesicState>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(GeometryError::InvalidStep(step));
    }
    space.check_domain(st0.xi)?;
    let span = s1 - st0.s;
    let n = ((span.abs() / step) - 1e-9).ceil().max(0.0) as usize;
    let mut traj = Vec::with_capacity(n + 1);
    traj.push(st0);
    if n == 0 {
        return Ok(traj);
    }
    let h = span / n as f64;
    let mut st = st0;
    for k in 1..=n {
        match rk4_step(space, &st, h) {
            Ok(mut next) => {
                next.s = st0.s + h * k as f64;
                traj.push(next);
                st = next;
            }
            Err(_) => {
                return Err(GeometryError::DomainExit {
                    s: st.s,
                    last: Box::new(st),
                    trajectory: traj,
                })
            }
        }
    }
    Ok(traj)
}

/// G(ċ, ċ).
pub fn speed_squared(space: SpaceKind, st: &GeodesicState) -> Result<f64> {
    let v = st.velocity();
    metric_value(space, st.point(), v, v)
}

/// The conserved quantity C₁ of TH² geodesics. Equals ½G(ċ, ċ), so it
/// vanishes exactly on null geodesics.
pub fn first_integral(space: SpaceKind, st: &GeodesicState) -> Result<f64> {
    if space != SpaceKind::Lorentzian {
        return Err(GeometryError::SpaceMismatch {
            expected: SpaceKind::Lorentzian.name(),
        });
    }
    space.check_domain(st.xi)?;
    let q = 1.0 - st.xi.norm_sqr();
    let i = Complex64::i();
    let bracket = st.deta * st.dxi.conj() - st.deta.conj() * st.dxi
        - 2.0 * (st.xi * st.eta.conj() - st.xi.conj() * st.eta) * st.dxi.norm_sqr() / q;
    Ok((2.0 * i / (q * q) * bracket).re)
}

fn check_params(gp: &GeodesicParams) -> Result<()> {
    if gp.c2 == 0.0 || !gp.c2.is_finite() {
        Err(GeometryError::ZeroBaseSpeed)
    } else {
        Ok(())
    }
}

/// The general TH² geodesic starting on the x³-axis.
pub fn closed_form_th2(gp: &GeodesicParams, s: f64) -> Result<LinePoint> {
    let st = closed_form_state(gp, s)?;
    Ok(st.point())
}

/// Position and velocity of the closed-form geodesic at `s`.
pub fn closed_form_state(gp: &GeodesicParams, s: f64) -> Result<GeodesicState> {
    check_params(gp)?;
    let GeodesicParams { c1, c2, c5, theta } = *gp;
    let i = Complex64::i();
    let rot = Complex64::from_polar(1.0, theta);
    let x = c2 * s;
    let ch = x.cosh();
    let n = c5 * (2.0 * x).sinh() - i * c1 * s;
    let d = 4.0 * c2 * ch * ch;
    let dn = 2.0 * c2 * c5 * (2.0 * x).cosh() - i * c1;
    let dd = 4.0 * c2 * c2 * (2.0 * x).sinh();
    Ok(GeodesicState {
        xi: x.tanh() * rot,
        eta: n / d * rot,
        dxi: c2 / (ch * ch) * rot,
        deta: (dn * d - n * dd) / (d * d) * rot,
        s,
    })
}

/// Initial data of the closed-form geodesic, for feeding the integrator.
pub fn initial_state(gp: &GeodesicParams) -> Result<GeodesicState> {
    closed_form_state(gp, 0.0)
}

/// Grid of points swept by the lines of a trajectory: one row per state, one
/// column per affine parameter in `r_values`.
pub fn ruled_surface(
    space: SpaceKind,
    trajectory: &[GeodesicState],
    r_values: &[f64],
) -> Result<Vec<Vec<SpacePoint>>> {
    trajectory
        .par_iter()
        .map(|st| {
            r_values
                .iter()
                .map(|&r| {
                    to_space(
                        space,
                        LineWithParam {
                            line: st.point(),
                            r,
                        },
                    )
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Standard-position hyperbolic helicoid of the TH² geodesic with θ = 0,
/// C₅ = 0; the ruling parameter is the affine parameter r.
pub fn helicoid_point(gp: &GeodesicParams, s: f64, r: f64) -> SpacePoint {
    let a = 2.0 * gp.c2 * s;
    SpacePoint::new(
        Complex64::new(r * a.sinh(), -gp.c1 * s / (2.0 * gp.c2)),
        r * a.cosh(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fibre_geodesics_are_straight() {
        for space in SpaceKind::BOTH {
            let st = GeodesicState {
                xi: c(0.2, 0.1),
                eta: c(-0.3, 0.5),
                dxi: c(0.0, 0.0),
                deta: c(1.0, 0.25),
                s: 0.0,
            };
            let (a, b) = geodesic_rhs(space, &st).unwrap();
            assert_eq!(a, c(0.0, 0.0));
            assert_eq!(b, c(0.0, 0.0));
            let traj = integrate_geodesic(space, st, 1.0, 0.1).unwrap();
            let last = traj.last().unwrap();
            assert_abs_diff_eq!((last.eta - (st.eta + st.deta)).norm(), 0.0, epsilon = 1e-14);
            assert_eq!(speed_squared(space, &st).unwrap(), 0.0);
        }
    }

    #[test]
    fn acceleration_at_origin() {
        let st = GeodesicState {
            xi: c(0.0, 0.0),
            eta: c(0.3, -0.2),
            dxi: c(0.5, 0.1),
            deta: c(0.0, 0.0),
            s: 0.0,
        };
        let v2 = st.dxi * st.dxi;
        let (a, b) = geodesic_rhs(SpaceKind::Lorentzian, &st).unwrap();
        assert_eq!(a, c(0.0, 0.0));
        assert_abs_diff_eq!((b - 2.0 * st.eta.conj() * v2).norm(), 0.0, epsilon = 1e-15);
        let (_, b) = geodesic_rhs(SpaceKind::Euclidean, &st).unwrap();
        assert_abs_diff_eq!((b + 2.0 * st.eta.conj() * v2).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_hand_value() {
        let gp = GeodesicParams {
            c1: 1.0,
            c2: 1.0,
            c5: 0.0,
            theta: 0.0,
        };
        let p = closed_form_th2(&gp, 1.0).unwrap();
        assert_abs_diff_eq!(p.xi.re, 1.0f64.tanh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.eta.re, 0.0);
        assert_abs_diff_eq!(p.eta.im, -1.0 / (4.0 * 1.0f64.cosh().powi(2)), epsilon = 1e-15);
        assert_abs_diff_eq!(p.eta.im, -0.10499, epsilon = 1e-5);
        let o = closed_form_th2(&gp, 0.0).unwrap();
        assert_eq!(o, LinePoint::default());
        let flat = GeodesicParams { c1: 0.0, ..gp };
        assert_eq!(closed_form_th2(&flat, 0.7).unwrap().eta, c(0.0, 0.0));
        assert!(matches!(
            closed_form_th2(&GeodesicParams { c2: 0.0, ..gp }, 1.0),
            Err(GeometryError::ZeroBaseSpeed)
        ));
    }

    #[test]
    fn closed_form_velocity_matches_difference_quotient() {
        let gp = GeodesicParams {
            c1: 0.7,
            c2: -0.8,
            c5: 0.4,
            theta: 1.1,
        };
        let h = 1e-5;
        for s in [0.0, 0.3, 0.9] {
            let st = closed_form_state(&gp, s).unwrap();
            let p = closed_form_th2(&gp, s + h).unwrap();
            let m = closed_form_th2(&gp, s - h).unwrap();
            assert_abs_diff_eq!(((p.xi - m.xi) / (2.0 * h) - st.dxi).norm(), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(((p.eta - m.eta) / (2.0 * h) - st.deta).norm(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn closed_form_solves_the_equations() {
        let gp = GeodesicParams {
            c1: -1.3,
            c2: 0.6,
            c5: 0.9,
            theta: 2.5,
        };
        let h = 1e-4;
        for s in [0.1, 0.5, 1.0] {
            let st = closed_form_state(&gp, s).unwrap();
            let p = closed_form_state(&gp, s + h).unwrap();
            let m = closed_form_state(&gp, s - h).unwrap();
            let (a, b) = geodesic_rhs(SpaceKind::Lorentzian, &st).unwrap();
            assert!(((p.dxi - m.dxi) / (2.0 * h) - a).norm() < 1e-8);
            assert!(((p.deta - m.deta) / (2.0 * h) - b).norm() < 1e-8);
        }
    }

    #[test]
    fn first_integral_is_half_the_speed() {
        let gp = GeodesicParams {
            c1: 0.45,
            c2: 1.2,
            c5: -0.3,
            theta: 0.4,
        };
        for s in [0.0, 0.2, 0.8] {
            let st = closed_form_state(&gp, s).unwrap();
            let c1 = first_integral(SpaceKind::Lorentzian, &st).unwrap();
            assert_abs_diff_eq!(c1, gp.c1, epsilon = 1e-12);
            let g = speed_squared(SpaceKind::Lorentzian, &st).unwrap();
            assert_abs_diff_eq!(c1, 0.5 * g, epsilon = 1e-12);
        }
        let st = initial_state(&gp).unwrap();
        assert!(matches!(
            first_integral(SpaceKind::Euclidean, &st),
            Err(GeometryError::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn domain_exit_keeps_last_state() {
        let st = GeodesicState {
            xi: c(0.0, 0.0),
            eta: c(0.0, 0.0),
            dxi: c(3.0, 0.0),
            deta: c(0.0, 0.0),
            s: 0.0,
        };
        // ξ = tanh(3s) gets within 1e-9 of the boundary well before s = 10
        match integrate_geodesic(SpaceKind::Lorentzian, st, 10.0, 0.01) {
            Err(GeometryError::DomainExit { s, last, trajectory }) => {
                assert!(s > 1.0 && s < 10.0);
                assert_eq!(*trajectory.last().unwrap(), *last);
                assert!(last.xi.norm() < 1.0);
            }
            other => panic!("expected a domain exit, got {other:?}"),
        }
        assert!(matches!(
            integrate_geodesic(SpaceKind::Lorentzian, st, 1.0, 0.0),
            Err(GeometryError::InvalidStep(_))
        ));
    }

    #[test]
    fn helicoid_hand_value() {
        let gp = GeodesicParams {
            c1: 1.0,
            c2: 0.5,
            c5: 0.0,
            theta: 0.0,
        };
        let p = helicoid_point(&gp, 1.0, 1.0);
        assert_abs_diff_eq!(p.z.re, 1.0f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.z.im, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.t, 1.0f64.cosh(), epsilon = 1e-15);
        let l = closed_form_th2(&gp, 1.0).unwrap();
        let q = to_space(SpaceKind::Lorentzian, LineWithParam { line: l, r: 1.0 }).unwrap();
        assert_abs_diff_eq!(q.sub(p).z.norm() + (q.t - p.t).abs(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ruled_surface_rows_follow_the_trajectory() {
        let gp = GeodesicParams {
            c1: 0.0,
            c2: 0.5,
            c5: 0.0,
            theta: 0.0,
        };
        let traj: Vec<_> = (0..5).map(|k| closed_form_state(&gp, k as f64 * 0.25).unwrap()).collect();
        let grid = ruled_surface(SpaceKind::Lorentzian, &traj, &[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(grid.len(), 5);
        for row in &grid {
            for p in row {
                assert!(p.z.im.abs() <= 1e-12);
            }
        }
        // s = 0 is the x³-axis
        for p in &grid[0] {
            assert!(p.z.norm() <= 1e-15);
        }
    }
}
