//! Input files (sections, holomorphic potentials) and output writers (CSV
//! tables, OBJ meshes). Numbers are written with 17 significant digits.

use std::io::Write;

use num_complex::Complex64;
use serde::Deserialize;

use crate::congruence::SpinData;
use crate::error::{GeometryError, Result};
use crate::geodesic::GeodesicState;
use crate::jet::Poly2;
use crate::kahler::SpaceKind;
use crate::line_map::SpacePoint;
use crate::minimal::HolomorphicPoly;

/// Round-trip safe float formatting.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(e: std::io::Error) -> GeometryError {
    GeometryError::Invalid(format!("write failed: {e}"))
}

fn write_row<W: Write>(out: &mut W, cells: &[f64]) -> Result<()> {
    let line: Vec<String> = cells.iter().map(|&x| fmt_f64(x)).collect();
    writeln!(out, "{}", line.join(",")).map_err(io_err)
}

#[derive(Debug, Deserialize)]
struct SectionFile {
    space: SpaceKind,
    kind: String,
    coeffs: Vec<[f64; 4]>,
}

/// A polynomial section `F = Σ c_mn ξ^m ξ̄^n` read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionSpec {
    pub space: SpaceKind,
    pub poly: Poly2,
}

fn exponent(x: f64, what: &str) -> Result<u32> {
    if x >= 0.0 && x.fract() == 0.0 && x <= 64.0 {
        Ok(x as u32)
    } else {
        Err(GeometryError::Invalid(format!("{what} exponent must be an integer in 0..=64, got {x}")))
    }
}

pub fn parse_section(text: &str) -> Result<SectionSpec> {
    let file: SectionFile =
        serde_json::from_str(text).map_err(|e| GeometryError::Invalid(format!("section file: {e}")))?;
    if file.kind != "polynomial" {
        return Err(GeometryError::Invalid(format!("unsupported section kind '{}'", file.kind)));
    }
    let mut poly = Poly2::zero();
    for [m, n, re, im] in file.coeffs {
        if !re.is_finite() || !im.is_finite() {
            return Err(GeometryError::Invalid("non-finite coefficient".into()));
        }
        poly.add_term(exponent(m, "xi")?, exponent(n, "xi-bar")?, Complex64::new(re, im));
    }
    Ok(SectionSpec { space: file.space, poly })
}

#[derive(Debug, Deserialize)]
struct PotentialFile {
    space: SpaceKind,
    w: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub space: SpaceKind,
    pub w: HolomorphicPoly,
}

pub fn parse_potential(text: &str) -> Result<PotentialSpec> {
    let file: PotentialFile =
        serde_json::from_str(text).map_err(|e| GeometryError::Invalid(format!("potential file: {e}")))?;
    if file.w.iter().flatten().any(|x| !x.is_finite()) {
        return Err(GeometryError::Invalid("non-finite coefficient".into()));
    }
    Ok(PotentialSpec {
        space: file.space,
        w: HolomorphicPoly::new(file.w.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()),
    })
}

/// Trajectory table; `deviation`, when given, is appended as a last column.
pub fn write_trajectory_csv<W: Write>(out: &mut W, traj: &[GeodesicState], deviation: Option<&[f64]>) -> Result<()> {
    let header = if deviation.is_some() {
        "s,re_xi,im_xi,re_eta,im_eta,deviation"
    } else {
        "s,re_xi,im_xi,re_eta,im_eta"
    };
    writeln!(out, "{header}").map_err(io_err)?;
    for (k, st) in traj.iter().enumerate() {
        let mut row = vec![st.s, st.xi.re, st.xi.im, st.eta.re, st.eta.im];
        if let Some(d) = deviation {
            row.push(d[k]);
        }
        write_row(out, &row)?;
    }
    Ok(())
}

/// Ruled-surface points, one row per (s, r) pair.
pub fn write_ruled_csv<W: Write>(out: &mut W, s_values: &[f64], r_values: &[f64], pts: &[Vec<SpacePoint>]) -> Result<()> {
    writeln!(out, "s,r,x1,x2,x3").map_err(io_err)?;
    for (row, &s) in pts.iter().zip(s_values) {
        for (p, &r) in row.iter().zip(r_values) {
            let [x1, x2, x3] = p.xyz();
            write_row(out, &[s, r, x1, x2, x3])?;
        }
    }
    Ok(())
}

pub const ANALYSIS_HEADER: &str =
    "re_xi,im_xi,sigma0_re,sigma0_im,rho0,r,rho,sigma_re,sigma_im,lambda1,lambda2,K";

/// One row per cell; cells where the analysis failed are written as NaN.
pub fn write_analysis_csv<W: Write>(out: &mut W, cells: &[Complex64], rows: &[Result<SpinData>]) -> Result<()> {
    writeln!(out, "{ANALYSIS_HEADER}").map_err(io_err)?;
    for (xi, row) in cells.iter().zip(rows) {
        match row {
            Ok(d) => write_row(
                out,
                &[
                    d.xi.re, d.xi.im, d.sigma0.re, d.sigma0.im, d.rho0.re, d.r, d.rho.re, d.sigma.re, d.sigma.im,
                    d.lambda1, d.lambda2, d.k,
                ],
            )?,
            Err(_) => {
                let mut cells = vec![xi.re, xi.im];
                cells.extend([f64::NAN; 10]);
                write_row(out, &cells)?
            }
        }
    }
    Ok(())
}

/// Surface samples; `rho`, when given, adds an `abs_rho` column.
pub fn write_surface_csv<W: Write>(
    out: &mut W,
    xis: &[Complex64],
    pts: &[SpacePoint],
    rho: Option<&[f64]>,
) -> Result<()> {
    let header = if rho.is_some() { "re_xi,im_xi,x1,x2,x3,abs_rho" } else { "re_xi,im_xi,x1,x2,x3" };
    writeln!(out, "{header}").map_err(io_err)?;
    for (k, (xi, p)) in xis.iter().zip(pts).enumerate() {
        let [x1, x2, x3] = p.xyz();
        let mut row = vec![xi.re, xi.im, x1, x2, x3];
        if let Some(r) = rho {
            row.push(r[k]);
        }
        write_row(out, &row)?;
    }
    Ok(())
}

/// Mesh on a `rows × cols` lattice of optional vertices. Missing vertices are
/// dropped along with every quad that touches them; each quad becomes two
/// triangles.
pub fn write_obj<W: Write>(out: &mut W, rows: usize, cols: usize, verts: &[Option<[f64; 3]>], comments: &[String]) -> Result<()> {
    if verts.len() != rows * cols {
        return Err(GeometryError::Invalid("vertex count does not match lattice".into()));
    }
    for c in comments {
        writeln!(out, "# {c}").map_err(io_err)?;
    }
    let mut index = vec![0usize; verts.len()];
    let mut next = 1;
    for (k, v) in verts.iter().enumerate() {
        if let Some([x, y, z]) = v {
            writeln!(out, "v {} {} {}", fmt_f64(*x), fmt_f64(*y), fmt_f64(*z)).map_err(io_err)?;
            index[k] = next;
            next += 1;
        }
    }
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols.saturating_sub(1) {
            let a = index[i * cols + j];
            let b = index[i * cols + j + 1];
            let c = index[(i + 1) * cols + j + 1];
            let d = index[(i + 1) * cols + j];
            if a == 0 || b == 0 || c == 0 || d == 0 {
                continue;
            }
            writeln!(out, "f {a} {b} {c}").map_err(io_err)?;
            writeln!(out, "f {a} {c} {d}").map_err(io_err)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_json() {
        let s = parse_section(r#"{"space":"lorentzian","kind":"polynomial","coeffs":[[1,2,0.5,-1],[0,0,1,0]]}"#).unwrap();
        assert_eq!(s.space, SpaceKind::Lorentzian);
        let xi = Complex64::new(0.2, 0.1);
        let expect = Complex64::new(0.5, -1.0) * xi * xi.conj() * xi.conj() + 1.0;
        assert!((s.poly.eval(xi) - expect).norm() < 1e-15);
        assert!(parse_section(r#"{"space":"euclidean","kind":"polynomial","coeffs":[[1.5,0,1,0]]}"#).is_err());
        assert!(parse_section(r#"{"space":"euclidean","kind":"table","coeffs":[]}"#).is_err());
        assert!(parse_section(r#"{"space":"elliptic","kind":"polynomial","coeffs":[]}"#).is_err());
        assert!(parse_section("{not json").is_err());
    }

    #[test]
    fn potential_json() {
        let p = parse_potential(r#"{"space":"euclidean","w":[[0,0],[0,0],[0,0],[1,0]]}"#).unwrap();
        assert_eq!(p.w.eval(Complex64::new(2.0, 0.0)), Complex64::new(8.0, 0.0));
        assert!(parse_potential(r#"{"space":"euclidean"}"#).is_err());
    }

    #[test]
    fn obj_faces() {
        let verts = vec![
            Some([0.0, 0.0, 0.0]),
            Some([1.0, 0.0, 0.0]),
            None,
            Some([0.0, 1.0, 0.0]),
            Some([1.0, 1.0, 0.0]),
            Some([2.0, 1.0, 0.0]),
        ];
        let mut buf = Vec::new();
        write_obj(&mut buf, 2, 3, &verts, &["test".into()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 5);
        let faces: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces, vec!["f 1 2 4", "f 1 4 3"]);
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
