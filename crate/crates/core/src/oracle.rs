//! Independent numerical oracles: Gauss curvature of a 2-dimensional metric
//! by finite differences (Brioschi's formula), valid for definite and
//! indefinite signatures alike.

/// Components `(E, F, G)` of a metric `E dx² + 2F dx dy + G dy²`.
pub type Metric2 = [f64; 3];

fn d1(f: &dyn Fn(f64) -> Metric2, h: f64) -> Metric2 {
    let (p1, m1, p2, m2) = (f(h), f(-h), f(2.0 * h), f(-2.0 * h));
    std::array::from_fn(|k| (8.0 * (p1[k] - m1[k]) - (p2[k] - m2[k])) / (12.0 * h))
}

fn d2(f: &dyn Fn(f64) -> Metric2, h: f64) -> Metric2 {
    let (z, p1, m1, p2, m2) = (f(0.0), f(h), f(-h), f(2.0 * h), f(-2.0 * h));
    std::array::from_fn(|k| (16.0 * (p1[k] + m1[k]) - (p2[k] + m2[k]) - 30.0 * z[k]) / (12.0 * h * h))
}

/// Gauss curvature `R₁₂₁₂ / (EG − F²)` of the metric at `(x, y)`, using
/// fourth-order central differences of step `h`.
pub fn gauss_curvature_fd<M>(metric: M, x: f64, y: f64, h: f64) -> f64
where
    M: Fn(f64, f64) -> Metric2,
{
    let [e, f, g] = metric(x, y);
    let along_x = |t: f64| metric(x + t, y);
    let along_y = |t: f64| metric(x, y + t);
    let [e_u, f_u, g_u] = d1(&along_x, h);
    let [e_v, f_v, g_v] = d1(&along_y, h);
    let g_uu = d2(&along_x, h)[2];
    let e_vv = d2(&along_y, h)[0];
    // F_uv from the derivative in x of F_v
    let fv_at = |t: f64| {
        let col = |s: f64| metric(x + t, y + s);
        d1(&col, h)
    };
    let f_uv = d1(&fv_at, h)[1];

    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let a = [
        [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
        [f_v - 0.5 * g_u, e, f],
        [0.5 * g_v, f, g],
    ];
    let b = [[0.0, 0.5 * e_v, 0.5 * g_u], [0.5 * e_v, e, f], [0.5 * g_u, f, g]];
    let det = e * g - f * f;
    (det3(a) - det3(b)) / (det * det)
}
