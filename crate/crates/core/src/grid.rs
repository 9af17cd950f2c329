//! Rectangular sampling grids in the base coordinate ξ.

use num_complex::Complex64;

use crate::error::{GeometryError, Result};

/// `nx × ny` nodes on the square `|Re ξ|, |Im ξ| ≤ xi_max`, rows along Im ξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiGrid {
    pub nx: usize,
    pub ny: usize,
    pub xi_max: f64,
}

impl XiGrid {
    pub fn new(nx: usize, ny: usize, xi_max: f64) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(GeometryError::Invalid(format!("grid needs at least 2x2 nodes, got {nx}x{ny}")));
        }
        if !(xi_max > 0.0) || !xi_max.is_finite() {
            return Err(GeometryError::Invalid(format!("xi-max must be positive, got {xi_max}")));
        }
        Ok(XiGrid { nx, ny, xi_max })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn coord(&self, k: usize, n: usize) -> f64 {
        -self.xi_max + 2.0 * self.xi_max * k as f64 / (n - 1) as f64
    }

    /// Node `(i, j)`: i indexes Re ξ, j indexes Im ξ.
    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.coord(i, self.nx), self.coord(j, self.ny))
    }

    /// Row-major (j outer, i inner) list of nodes.
    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (i, j)))
            .map(|(i, j)| self.node(i, j))
            .collect()
    }

    /// Nodes inside the disc `|ξ| ≤ xi_max` only.
    pub fn disc_nodes(&self) -> Vec<Complex64> {
        self.nodes()
            .into_iter()
            .filter(|z| z.norm() <= self.xi_max * (1.0 + 1e-12))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners_and_order() {
        let g = XiGrid::new(3, 2, 0.5).unwrap();
        let n = g.nodes();
        assert_eq!(n.len(), 6);
        assert_eq!(n[0], Complex64::new(-0.5, -0.5));
        assert_eq!(n[1], Complex64::new(0.0, -0.5));
        assert_eq!(n[5], Complex64::new(0.5, 0.5));
        assert!(XiGrid::new(1, 4, 0.5).is_err());
        assert!(XiGrid::new(4, 4, 0.0).is_err());
    }
}
