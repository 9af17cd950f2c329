//! Wirtinger jets of functions of (ξ, ξ̄) up to third order, and the section
//! types that produce them: exact polynomials in ξ, ξ̄ and finite-difference
//! jets of arbitrary closures.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{GeometryError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value and Wirtinger derivatives ∂ = ∂/∂ξ, ∂̄ = ∂/∂ξ̄ to third order.
/// One value per multi-index; mixed partials are symmetric by construction.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WirtingerJet3 {
    pub f: Complex64,
    pub f_x: Complex64,
    pub f_xb: Complex64,
    pub f_xx: Complex64,
    pub f_xxb: Complex64,
    pub f_xbxb: Complex64,
    pub f_xxx: Complex64,
    pub f_xxxb: Complex64,
    pub f_xxbxb: Complex64,
    pub f_xbxbxb: Complex64,
}

impl WirtingerJet3 {
    /// ∂^a ∂̄^b f for a + b ≤ 3.
    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        match (a, b) {
            (0, 0) => self.f,
            (1, 0) => self.f_x,
            (0, 1) => self.f_xb,
            (2, 0) => self.f_xx,
            (1, 1) => self.f_xxb,
            (0, 2) => self.f_xbxb,
            (3, 0) => self.f_xxx,
            (2, 1) => self.f_xxxb,
            (1, 2) => self.f_xxbxb,
            (0, 3) => self.f_xbxbxb,
            _ => panic!("jet order {a}+{b} exceeds 3"),
        }
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, v: Complex64) {
        let slot = match (a, b) {
            (0, 0) => &mut self.f,
            (1, 0) => &mut self.f_x,
            (0, 1) => &mut self.f_xb,
            (2, 0) => &mut self.f_xx,
            (1, 1) => &mut self.f_xxb,
            (0, 2) => &mut self.f_xbxb,
            (3, 0) => &mut self.f_xxx,
            (2, 1) => &mut self.f_xxxb,
            (1, 2) => &mut self.f_xxbxb,
            (0, 3) => &mut self.f_xbxbxb,
            _ => panic!("jet order {a}+{b} exceeds 3"),
        };
        *slot = v;
    }

    /// Jet of the complex conjugate: ∂^a∂̄^b f̄ = conj(∂^b∂̄^a f).
    pub fn conj(&self) -> WirtingerJet3 {
        let mut out = WirtingerJet3::default();
        for (a, b) in MULTI_INDICES {
            out.set(a, b, self.get(b, a).conj());
        }
        out
    }
}

pub(crate) const MULTI_INDICES: [(usize, usize); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

/// Where a section's jets come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JetProvenance {
    Analytic,
    FiniteDifference { h: f64 },
}

/// A local section ξ ↦ (ξ, η = F(ξ, ξ̄)) of TN → N.
pub trait Section: Sync {
    fn jet(&self, xi: Complex64) -> WirtingerJet3;

    fn value(&self, xi: Complex64) -> Complex64 {
        self.jet(xi).f
    }

    fn provenance(&self) -> JetProvenance;
}

/// A polynomial `Σ c_{mn} ξ^m ξ̄^n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Poly2::monomial(0, 0, c)
    }

    pub fn monomial(m: u32, n: u32, c: Complex64) -> Self {
        let mut p = Poly2::zero();
        p.add_term(m, n, c);
        p
    }

    /// `ξ` and `ξ̄`.
    pub fn xi() -> Self {
        Poly2::monomial(1, 0, Complex64::new(1.0, 0.0))
    }

    pub fn xi_bar() -> Self {
        Poly2::monomial(0, 1, Complex64::new(1.0, 0.0))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Complex64)>>(terms: I) -> Self {
        let mut p = Poly2::zero();
        for (m, n, c) in terms {
            p.add_term(m, n, c);
        }
        p
    }

    /// `1 ± ξξ̄` for the given sign.
    pub fn q(sign: f64) -> Self {
        Poly2::from_terms([
            (0, 0, Complex64::new(1.0, 0.0)),
            (1, 1, Complex64::new(sign, 0.0)),
        ])
    }

    /// Rotationally symmetric section `F = ξ g(ξξ̄)` with `g(s) = Σ g_k s^k` real.
    pub fn rotational(g: &[f64]) -> Self {
        Poly2::from_terms(
            g.iter()
                .enumerate()
                .map(|(k, &gk)| (k as u32 + 1, k as u32, Complex64::new(gk, 0.0))),
        )
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: Complex64) {
        let e = self.terms.entry((m, n)).or_insert(ZERO);
        *e += c;
        if *e == ZERO {
            self.terms.remove(&(m, n));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(m, n), &c)| (m, n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(m, n)| m.max(n)).max().unwrap_or(0)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Poly2::from_terms(self.terms().map(|(m, n, c)| (m, n, c * k)))
    }

    /// The conjugate polynomial: `conj(Σ c ξ^m ξ̄^n) = Σ c̄ ξ^n ξ̄^m`.
    pub fn conj(&self) -> Self {
        Poly2::from_terms(self.terms().map(|(m, n, c)| (n, m, c.conj())))
    }

    /// ∂^a ∂̄^b of the polynomial.
    pub fn derivative(&self, a: u32, b: u32) -> Self {
        Poly2::from_terms(self.terms().filter(|&(m, n, _)| m >= a && n >= b).map(|(m, n, c)| {
            (m - a, n - b, c * (falling(m, a) * falling(n, b)))
        }))
    }

    pub fn eval(&self, xi: Complex64) -> Complex64 {
        let deg = self.degree() as usize;
        let (pw, pwb) = powers(xi, deg);
        self.terms()
            .map(|(m, n, c)| c * pw[m as usize] * pwb[n as usize])
            .sum()
    }

    pub fn jet(&self, xi: Complex64) -> WirtingerJet3 {
        let deg = self.degree() as usize;
        let (pw, pwb) = powers(xi, deg);
        let mut out = WirtingerJet3::default();
        for (a, b) in MULTI_INDICES {
            let mut acc = ZERO;
            for (m, n, c) in self.terms() {
                if m as usize >= a && n as usize >= b {
                    let k = falling(m, a as u32) * falling(n, b as u32);
                    acc += c * k * pw[m as usize - a] * pwb[n as usize - b];
                }
            }
            out.set(a, b, acc);
        }
        out
    }
}

fn falling(m: u32, k: u32) -> f64 {
    (0..k).map(|i| (m - i) as f64).product()
}

fn powers(xi: Complex64, deg: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut pw = Vec::with_capacity(deg + 1);
    let mut pwb = Vec::with_capacity(deg + 1);
    let one = Complex64::new(1.0, 0.0);
    let (mut a, mut b) = (one, one);
    for _ in 0..=deg {
        pw.push(a);
        pwb.push(b);
        a *= xi;
        b *= xi.conj();
    }
    (pw, pwb)
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (m, n, c) in o.terms() {
            p.add_term(m, n, c);
        }
        p
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (m, n, c) in o.terms() {
            p.add_term(m, n, -c);
        }
        p
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        let mut p = Poly2::zero();
        for (m1, n1, c1) in self.terms() {
            for (m2, n2, c2) in o.terms() {
                p.add_term(m1 + m2, n1 + n2, c1 * c2);
            }
        }
        p
    }
}

impl Section for Poly2 {
    fn jet(&self, xi: Complex64) -> WirtingerJet3 {
        Poly2::jet(self, xi)
    }

    fn value(&self, xi: Complex64) -> Complex64 {
        self.eval(xi)
    }

    fn provenance(&self) -> JetProvenance {
        JetProvenance::Analytic
    }
}

/// Default step for finite-difference jets.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Agreement required between second- and fourth-order first-derivative
/// stencils when a finite-difference section is built.
pub const RICHARDSON_GATE: f64 = 1e-6;

/// Jets of an arbitrary closure by central finite differences.
///
/// First derivatives use the step `h`; second and third derivatives use
/// `10h` and `100h` so that roundoff stays below truncation error. All
/// stencils are fourth order.
pub struct FdSection<F> {
    f: F,
    h: f64,
}

impl<F> FdSection<F>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    /// Builds the section and runs the Richardson consistency gate at `probe`.
    pub fn new(f: F, h: f64, probe: Complex64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(GeometryError::InvalidStep(h));
        }
        let sec = FdSection { f, h };
        let gap = sec.richardson_gap(probe);
        if gap > RICHARDSON_GATE {
            return Err(GeometryError::FdInconsistent(gap));
        }
        Ok(sec)
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Relative gap between order-2 and order-4 estimates of ∂ₓf and ∂ᵧf.
    pub fn richardson_gap(&self, xi: Complex64) -> f64 {
        let h = self.h;
        let f = &self.f;
        let i = Complex64::i();
        let mut worst: f64 = 0.0;
        for dir in [Complex64::new(1.0, 0.0), i] {
            let o2 = (f(xi + dir * h) - f(xi - dir * h)) / (2.0 * h);
            let o4 = (-f(xi + dir * (2.0 * h)) + 8.0 * f(xi + dir * h) - 8.0 * f(xi - dir * h)
                + f(xi - dir * (2.0 * h)))
                / (12.0 * h);
            worst = worst.max((o2 - o4).norm() / (1.0 + o4.norm()));
        }
        worst
    }

    /// Mixed real partial ∂ₓʲ∂ᵧᵏ f by tensor-product stencils.
    fn real_partial(&self, xi: Complex64, j: usize, k: usize) -> Complex64 {
        let order = j + k;
        let h = match order {
            0 | 1 => self.h,
            2 => self.h * 10.0,
            _ => self.h * 100.0,
        };
        let sx = stencil(j);
        let sy = stencil(k);
        let mut acc = ZERO;
        for &(ox, wx) in sx {
            for &(oy, wy) in sy {
                let w = wx * wy;
                if w != 0.0 {
                    acc += (self.f)(xi + Complex64::new(ox * h, oy * h)) * w;
                }
            }
        }
        acc / h.powi(order as i32)
    }
}

/// Fourth-order central stencil (offset, weight) for the n-th derivative.
fn stencil(n: usize) -> &'static [(f64, f64)] {
    const D0: [(f64, f64); 1] = [(0.0, 1.0)];
    const D1: [(f64, f64); 4] = [
        (-2.0, 1.0 / 12.0),
        (-1.0, -8.0 / 12.0),
        (1.0, 8.0 / 12.0),
        (2.0, -1.0 / 12.0),
    ];
    const D2: [(f64, f64); 5] = [
        (-2.0, -1.0 / 12.0),
        (-1.0, 16.0 / 12.0),
        (0.0, -30.0 / 12.0),
        (1.0, 16.0 / 12.0),
        (2.0, -1.0 / 12.0),
    ];
    const D3: [(f64, f64); 6] = [
        (-3.0, 1.0 / 8.0),
        (-2.0, -1.0),
        (-1.0, 13.0 / 8.0),
        (1.0, -13.0 / 8.0),
        (2.0, 1.0),
        (3.0, -1.0 / 8.0),
    ];
    match n {
        0 => &D0,
        1 => &D1,
        2 => &D2,
        3 => &D3,
        _ => panic!("stencil order {n} not supported"),
    }
}

/// Coefficients of `2^{-(a+b)} (X − iY)^a (X + iY)^b` as a map from (j, k) to the
/// weight of ∂ₓʲ∂ᵧᵏ.
fn wirtinger_weights(a: usize, b: usize) -> Vec<((usize, usize), Complex64)> {
    let i = Complex64::i();
    let mut poly: Vec<((usize, usize), Complex64)> = vec![((0, 0), Complex64::new(1.0, 0.0))];
    let factors = std::iter::repeat(-i).take(a).chain(std::iter::repeat(i).take(b));
    for y_coeff in factors {
        let mut next: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for &((j, k), c) in &poly {
            *next.entry((j + 1, k)).or_insert(ZERO) += c * 0.5;
            *next.entry((j, k + 1)).or_insert(ZERO) += c * y_coeff * 0.5;
        }
        poly = next.into_iter().collect();
    }
    poly
}

impl<F> Section for FdSection<F>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn jet(&self, xi: Complex64) -> WirtingerJet3 {
        let mut partials = [[ZERO; 4]; 4];
        for j in 0..4 {
            for k in 0..(4 - j) {
                partials[j][k] = self.real_partial(xi, j, k);
            }
        }
        let mut out = WirtingerJet3::default();
        for (a, b) in MULTI_INDICES {
            let v = wirtinger_weights(a, b)
                .into_iter()
                .map(|((j, k), w)| w * partials[j][k])
                .sum();
            out.set(a, b, v);
        }
        out
    }

    fn value(&self, xi: Complex64) -> Complex64 {
        (self.f)(xi)
    }

    fn provenance(&self) -> JetProvenance {
        JetProvenance::FiniteDifference { h: self.h }
    }
}
