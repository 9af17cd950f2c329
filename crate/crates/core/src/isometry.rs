//! Isometries of the neutral metric: Killing fields generated by rotations,
//! boosts and translations, the induced action of rigid motions on lines,
//! and a finite-difference check of the Killing equation.

use num_complex::Complex64;

use crate::error::{GeometryError, Result};
use crate::jet::{JetProvenance, Section, WirtingerJet3, MULTI_INDICES};
use crate::kahler::{conformal_data, metric_matrix, LinePoint, SpaceKind, TangentVector};
use crate::line_map::SpacePoint;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn quad(c: &[Complex64; 3], xi: Complex64) -> Complex64 {
    c[0] + xi * (c[1] + xi * c[2])
}

fn quad_d(c: &[Complex64; 3], xi: Complex64) -> Complex64 {
    c[1] + 2.0 * c[2] * xi
}

/// Killing data on TN. `a0` and `b1` are quadratic polynomials in ξ,
/// stored as ascending coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KillingField {
    pub a0: [Complex64; 3],
    /// Fibre rotation coefficient; zero on curved bases.
    pub a1: f64,
    pub b1: [Complex64; 3],
}

impl KillingField {
    /// Generator of the rotation (boost) with α̇ imaginary.
    pub fn rotation(space: SpaceKind, alpha_dot: f64, beta_dot: Complex64) -> Self {
        let s = space.sign();
        KillingField {
            a0: [beta_dot, Complex64::new(0.0, 2.0 * alpha_dot), s * beta_dot.conj()],
            a1: 0.0,
            b1: [ZERO; 3],
        }
    }

    /// Generator of the translation by (γ̇, δ̇) in (z, t).
    pub fn translation(space: SpaceKind, gamma_dot: Complex64, delta_dot: f64) -> Self {
        let s = space.sign();
        KillingField {
            a0: [ZERO; 3],
            a1: 0.0,
            b1: [
                0.5 * gamma_dot,
                Complex64::new(-delta_dot, 0.0),
                -0.5 * s * gamma_dot.conj(),
            ],
        }
    }

    /// The translation field obtained from a rotation field by `b₁ = i a₀`.
    pub fn dual_translation(&self) -> Self {
        let i = Complex64::i();
        KillingField {
            a0: [ZERO; 3],
            a1: 0.0,
            b1: self.a0.map(|c| i * c),
        }
    }
}

/// Three rotation (boost) generators followed by the translations along
/// x¹, x², x³.
pub fn killing_basis(space: SpaceKind) -> [KillingField; 6] {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let half = 0.5;
    [
        KillingField::rotation(space, half, ZERO),
        KillingField::rotation(space, 0.0, half * one),
        KillingField::rotation(space, 0.0, half * i),
        KillingField::translation(space, one, 0.0),
        KillingField::translation(space, i, 0.0),
        KillingField::translation(space, ZERO, 1.0),
    ]
}

/// The coefficient c with V^η = b₁ − c η.
fn eta_coefficient(field: &KillingField, du: Complex64, xi: Complex64) -> Complex64 {
    let a0 = quad(&field.a0, xi);
    quad_d(&field.a0, xi).conj() + 2.0 * a0 * du + 2.0 * a0.conj() * du.conj()
        - Complex64::new(0.0, field.a1)
}

pub fn killing_eval(field: &KillingField, space: SpaceKind, p: LinePoint) -> Result<TangentVector> {
    let cd = conformal_data(space, p.xi)?;
    let c = eta_coefficient(field, cd.du, p.xi);
    Ok(TangentVector::new(quad(&field.a0, p.xi), quad(&field.b1, p.xi) - c * p.eta))
}

/// Real Jacobian ∂ⱼVⁱ in the coordinates (x₁, x₂, y₁, y₂).
fn killing_jacobian(field: &KillingField, space: SpaceKind, p: LinePoint) -> Result<[[f64; 4]; 4]> {
    let cd = conformal_data(space, p.xi)?;
    let xi = p.xi;
    let a0 = quad(&field.a0, xi);
    let a0p = quad_d(&field.a0, xi);
    let a0pp = 2.0 * field.a0[2];
    let dbar = Complex64::new(cd.dbar_du, 0.0);
    let c = eta_coefficient(field, cd.du, xi);
    let dc = 2.0 * a0p * cd.du + 2.0 * a0 * cd.ddu + 2.0 * a0.conj() * dbar;
    let dbc = a0pp.conj() + 2.0 * a0 * dbar + 2.0 * a0p.conj() * cd.du.conj() + 2.0 * a0.conj() * cd.ddu.conj();
    // (∂, ∂̄, ∂_η, ∂_η̄) of V^ξ and V^η
    let vxi = [a0p, ZERO, ZERO, ZERO];
    let veta = [quad_d(&field.b1, xi) - dc * p.eta, -dbc * p.eta, -c, ZERO];
    let i = Complex64::i();
    let real_dirs = |w: [Complex64; 4]| {
        [w[0] + w[1], i * (w[0] - w[1]), w[2] + w[3], i * (w[2] - w[3])]
    };
    let dx = real_dirs(vxi);
    let de = real_dirs(veta);
    let mut jac = [[0.0; 4]; 4];
    for j in 0..4 {
        jac[0][j] = dx[j].re;
        jac[1][j] = dx[j].im;
        jac[2][j] = de[j].re;
        jac[3][j] = de[j].im;
    }
    Ok(jac)
}

fn shift(p: LinePoint, k: usize, h: f64) -> LinePoint {
    let mut r = [0.0; 4];
    r[k] = h;
    let d = TangentVector::from_real(r);
    LinePoint::new(p.xi + d.dxi, p.eta + d.deta)
}

/// Max-norm of `Vⁱ∂ᵢG_jk + G_ki ∂ⱼVⁱ + G_ji ∂ₖVⁱ` using analytic ∂V and
/// fourth-order central differences of step `h` for ∂G.
pub fn killing_residual(field: &KillingField, space: SpaceKind, p: LinePoint, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(GeometryError::InvalidStep(h));
    }
    let g = metric_matrix(space, p)?;
    let mut dg = [[[0.0; 4]; 4]; 4];
    for (i, dgi) in dg.iter_mut().enumerate() {
        let gp = metric_matrix(space, shift(p, i, h))?;
        let gm = metric_matrix(space, shift(p, i, -h))?;
        let gp2 = metric_matrix(space, shift(p, i, 2.0 * h))?;
        let gm2 = metric_matrix(space, shift(p, i, -2.0 * h))?;
        for j in 0..4 {
            for k in 0..4 {
                dgi[j][k] = (8.0 * (gp[j][k] - gm[j][k]) - (gp2[j][k] - gm2[j][k])) / (12.0 * h);
            }
        }
    }
    let v = killing_eval(field, space, p)?.to_real();
    let jac = killing_jacobian(field, space, p)?;
    let mut worst: f64 = 0.0;
    for j in 0..4 {
        for k in 0..4 {
            let mut t = 0.0;
            for i in 0..4 {
                t += v[i] * dg[i][j][k] + g[k][i] * jac[i][j] + g[j][i] * jac[i][k];
            }
            worst = worst.max(t.abs());
        }
    }
    Ok(worst)
}

/// A rigid motion `x ↦ R x + (γ, δ)`, with the rotation (boost) R given by
/// its spin matrix: `[[α, β], [−β̄, ᾱ]]` in SU(2) for Euclidean space and
/// `[[α, β], [β̄, ᾱ]]` in SU(1,1) for Lorentzian space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: f64,
}

impl Default for RigidMotion {
    fn default() -> Self {
        RigidMotion::identity()
    }
}

const MOTION_TOL: f64 = 1e-9;

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion {
            alpha: Complex64::new(1.0, 0.0),
            beta: ZERO,
            gamma: ZERO,
            delta: 0.0,
        }
    }

    /// Rotation by φ about the x³-axis.
    pub fn rotation_about_axis(phi: f64) -> Self {
        RigidMotion {
            alpha: Complex64::from_polar(1.0, phi / 2.0),
            ..RigidMotion::identity()
        }
    }

    /// Boost of rapidity `a` in the (x¹, x³) plane (Lorentzian only).
    pub fn boost(a: f64) -> Self {
        RigidMotion {
            alpha: Complex64::new((a / 2.0).cosh(), 0.0),
            beta: Complex64::new((a / 2.0).sinh(), 0.0),
            ..RigidMotion::identity()
        }
    }

    pub fn translation(gamma: Complex64, delta: f64) -> Self {
        RigidMotion {
            gamma,
            delta,
            ..RigidMotion::identity()
        }
    }

    pub fn validate(&self, space: SpaceKind) -> Result<()> {
        let s = space.sign();
        let value = self.alpha.norm_sqr() + s * self.beta.norm_sqr();
        if (value - 1.0).abs() > MOTION_TOL || !self.gamma.re.is_finite() || !self.delta.is_finite() {
            return Err(GeometryError::BadMotion {
                op: if s > 0.0 { '+' } else { '-' },
                value,
            });
        }
        Ok(())
    }

    /// The lower-left entry of the spin matrix.
    fn lower_left(&self, space: SpaceKind) -> Complex64 {
        -space.sign() * self.beta.conj()
    }

    fn matrix(&self, space: SpaceKind) -> [[Complex64; 2]; 2] {
        [[self.alpha, self.beta], [self.lower_left(space), self.alpha.conj()]]
    }

    /// The rotation (boost) part alone, inverted.
    pub fn inverse_rotation(&self) -> RigidMotion {
        RigidMotion {
            alpha: self.alpha.conj(),
            beta: -self.beta,
            ..RigidMotion::identity()
        }
    }

    /// Applies the linear part to a vector of 3-space via `H ↦ U H U†`.
    pub fn rotate_vector(&self, space: SpaceKind, x: SpacePoint) -> SpacePoint {
        let s = space.sign();
        let h = [
            [Complex64::new(-s * x.t, 0.0), x.z],
            [x.z.conj(), Complex64::new(x.t, 0.0)],
        ];
        let u = self.matrix(space);
        let mut uh = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                uh[i][j] = u[i][0] * h[0][j] + u[i][1] * h[1][j];
            }
        }
        let z = uh[0][0] * u[1][0].conj() + uh[0][1] * u[1][1].conj();
        let t = uh[1][0] * u[1][0].conj() + uh[1][1] * u[1][1].conj();
        SpacePoint::new(z, t.re)
    }

    pub fn apply_to_point(&self, space: SpaceKind, x: SpacePoint) -> SpacePoint {
        self.rotate_vector(space, x).add(SpacePoint::new(self.gamma, self.delta))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, space: SpaceKind, first: &RigidMotion) -> RigidMotion {
        let a = self.matrix(space);
        let b = first.matrix(space);
        let shift = self.rotate_vector(space, SpacePoint::new(first.gamma, first.delta));
        RigidMotion {
            alpha: a[0][0] * b[0][0] + a[0][1] * b[1][0],
            beta: a[0][0] * b[0][1] + a[0][1] * b[1][1],
            gamma: shift.z + self.gamma,
            delta: shift.t + self.delta,
        }
    }

    /// `ξ ↦ (αξ + β)/(cξ + ᾱ)` and the denominator `cξ + ᾱ`.
    fn mobius(&self, space: SpaceKind, xi: Complex64) -> (Complex64, Complex64) {
        let den = self.lower_left(space) * xi + self.alpha.conj();
        ((self.alpha * xi + self.beta) / den, den)
    }

    /// Fibre shift `½(γ − 2δξ ∓ γ̄ξ²)` produced by the translation part.
    fn translation_shift(&self, space: SpaceKind, xi: Complex64) -> Complex64 {
        0.5 * (self.gamma - 2.0 * self.delta * xi - space.sign() * self.gamma.conj() * xi * xi)
    }

    fn translation_shift_d(&self, space: SpaceKind, xi: Complex64) -> Complex64 {
        -self.delta - space.sign() * self.gamma.conj() * xi
    }
}

/// The image of a line under a rigid motion, via the fractional linear action
/// on ξ and its derivative on η.
pub fn motion_act_on_line(space: SpaceKind, m: &RigidMotion, lp: LinePoint) -> Result<LinePoint> {
    m.validate(space)?;
    space.check_domain(lp.xi)?;
    let (xi, den) = m.mobius(space, lp.xi);
    if !(xi.re.is_finite() && xi.im.is_finite()) || den.norm() < 1e-300 {
        return Err(GeometryError::OutsideChart);
    }
    space.check_domain(xi)?;
    let eta = lp.eta / (den * den) + m.translation_shift(space, xi);
    Ok(LinePoint::new(xi, eta))
}

/// Differential of [`motion_act_on_line`] applied to `v`.
pub fn motion_pushforward(space: SpaceKind, m: &RigidMotion, lp: LinePoint, v: TangentVector) -> Result<TangentVector> {
    let image = motion_act_on_line(space, m, lp)?;
    let (_, den) = m.mobius(space, lp.xi);
    let c = m.lower_left(space);
    let dxi = v.dxi / (den * den);
    let deta = v.deta / (den * den) - 2.0 * c * lp.eta / (den * den * den) * v.dxi
        + m.translation_shift_d(space, image.xi) * dxi;
    Ok(TangentVector::new(dxi, deta))
}

/// A section moved by a rigid motion: the graph of the image congruence.
/// Jets are computed analytically from those of the original section.
pub struct MovedSection<'a, S: Section + ?Sized> {
    inner: &'a S,
    motion: RigidMotion,
    space: SpaceKind,
}

impl<'a, S: Section + ?Sized> MovedSection<'a, S> {
    pub fn new(space: SpaceKind, motion: RigidMotion, inner: &'a S) -> Result<Self> {
        motion.validate(space)?;
        Ok(MovedSection { inner, motion, space })
    }

    /// Base point of the original section corresponding to `xi`.
    pub fn preimage(&self, xi: Complex64) -> Complex64 {
        self.motion.inverse_rotation().mobius(self.space, xi).0
    }
}

fn binom(n: usize, k: usize) -> f64 {
    [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]][n][k]
}

/// `∂^a (h∘φ) = Σ_j B[a][j] (∂^j h)∘φ` for holomorphic φ with derivatives `d`.
fn chain_coeffs(d: [Complex64; 4]) -> [[Complex64; 4]; 4] {
    let one = Complex64::new(1.0, 0.0);
    let mut b = [[ZERO; 4]; 4];
    b[0][0] = one;
    b[1][1] = d[1];
    b[2][1] = d[2];
    b[2][2] = d[1] * d[1];
    b[3][1] = d[3];
    b[3][2] = 3.0 * d[1] * d[2];
    b[3][3] = d[1] * d[1] * d[1];
    b
}

impl<S: Section + ?Sized> Section for MovedSection<'_, S> {
    fn jet(&self, xi: Complex64) -> WirtingerJet3 {
        let inv = self.motion.inverse_rotation();
        let (x0, den_inv) = inv.mobius(self.space, xi);
        let ci = inv.lower_left(self.space);
        let phi = [
            x0,
            1.0 / (den_inv * den_inv),
            -2.0 * ci / den_inv.powi(3),
            6.0 * ci * ci / den_inv.powi(4),
        ];
        // multiplier m = (cξ + ᾱ)^{-2} at the original base point
        let c = self.motion.lower_left(self.space);
        let den = c * x0 + self.motion.alpha.conj();
        let m = [
            1.0 / (den * den),
            -2.0 * c / den.powi(3),
            6.0 * c * c / den.powi(4),
            -24.0 * c * c * c / den.powi(5),
        ];
        let f = self.inner.jet(x0);
        let mut prod = WirtingerJet3::default();
        for (a, b) in MULTI_INDICES {
            let v: Complex64 = (0..=a).map(|i| binom(a, i) * m[i] * f.get(a - i, b)).sum();
            prod.set(a, b, v);
        }
        let bh = chain_coeffs(phi);
        let mut out = WirtingerJet3::default();
        for (a, b) in MULTI_INDICES {
            let mut acc = ZERO;
            for j in 0..=a {
                for k in 0..=b {
                    let w = bh[a][j] * bh[b][k].conj();
                    if w != ZERO {
                        acc += w * prod.get(j, k);
                    }
                }
            }
            out.set(a, b, acc);
        }
        let s = self.space.sign();
        let g = self.motion.gamma;
        out.f += self.motion.translation_shift(self.space, xi);
        out.f_x += self.motion.translation_shift_d(self.space, xi);
        out.f_xx += -s * g.conj();
        out
    }

    fn provenance(&self) -> JetProvenance {
        self.inner.provenance()
    }
}
