//! Polar grids on the model disk, the annulus cutoff and the polynomial
//! quadratic differential.

use crate::error::{LabError, Result};
use crate::su2::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Cell-centred polar grid. Radial nodes sit at
/// `r_k = r_min + (r_max - r_min) ((k + ½)/n_r)^γ`; faces at `(k/n_r)^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub n_r: usize,
    pub n_theta: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub grading: f64,
    pub cover_sheets: usize,
}

impl PolarGrid {
    pub fn new(n_r: usize, n_theta: usize) -> Result<Self> {
        Self::with_options(n_r, n_theta, 0.0, 1.0, 2.0, 1)
    }

    pub fn cover(n_r: usize, n_theta: usize) -> Result<Self> {
        Self::with_options(n_r, n_theta, 0.0, 1.0, 2.0, 2)
    }

    pub fn with_options(
        n_r: usize,
        n_theta: usize,
        r_min: f64,
        r_max: f64,
        grading: f64,
        cover_sheets: usize,
    ) -> Result<Self> {
        if n_r < 4 || n_theta < 2 || n_theta % 2 != 0 {
            return Err(LabError::Config(format!(
                "grid needs n_r >= 4 and an even n_theta >= 2 (got {n_r} x {n_theta})"
            )));
        }
        if !(r_min >= 0.0 && r_max > r_min) || !(grading >= 1.0) {
            return Err(LabError::Config(format!(
                "grid needs 0 <= r_min < r_max and grading >= 1 (got {r_min}, {r_max}, {grading})"
            )));
        }
        if cover_sheets != 1 && cover_sheets != 2 {
            return Err(LabError::Config(format!("cover_sheets must be 1 or 2, got {cover_sheets}")));
        }
        Ok(PolarGrid {
            n_r,
            n_theta,
            r_min,
            r_max,
            grading,
            cover_sheets,
        })
    }

    fn map(&self, s: f64) -> f64 {
        self.r_min + (self.r_max - self.r_min) * s.powf(self.grading)
    }

    fn map_ds(&self, s: f64) -> f64 {
        (self.r_max - self.r_min) * self.grading * s.powf(self.grading - 1.0)
    }

    pub fn r(&self, k: usize) -> f64 {
        self.map((k as f64 + 0.5) / self.n_r as f64)
    }

    /// Face `k` lies between cells `k-1` and `k`; face `n_r` is `r_max`.
    pub fn r_face(&self, k: usize) -> f64 {
        self.map(k as f64 / self.n_r as f64)
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.n_r).map(|k| self.r(k)).collect()
    }

    pub fn period(&self) -> f64 {
        2.0 * PI * self.cover_sheets as f64
    }

    pub fn dtheta(&self) -> f64 {
        self.period() / self.n_theta as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta()
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.n_theta).map(|j| self.theta(j)).collect()
    }

    pub fn nodes(&self) -> usize {
        self.n_r * self.n_theta
    }

    pub fn index(&self, k: usize, j: usize) -> usize {
        k * self.n_theta + j
    }

    /// Cell area `r_k R′(s_k) Δs Δθ` (midpoint rule in the stretched variable).
    pub fn area(&self, k: usize) -> f64 {
        let s = (k as f64 + 0.5) / self.n_r as f64;
        self.r(k) * self.map_ds(s) / self.n_r as f64 * self.dtheta()
    }

    /// Distance from centre `k` to centre `k+1`, or to `r_max` for the last cell.
    pub fn centre_gap(&self, k: usize) -> f64 {
        let next = if k + 1 < self.n_r { self.r(k + 1) } else { self.r_max };
        next - self.r(k)
    }

    /// Radius at which the flux between centre `k` and its outer neighbour is taken.
    pub fn flux_radius(&self, k: usize) -> f64 {
        self.r_face(k + 1)
    }

    /// Same layout on a disk of radius `r_max * factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        PolarGrid {
            r_min: self.r_min * factor,
            r_max: self.r_max * factor,
            ..*self
        }
    }

    pub fn refined(&self) -> Self {
        PolarGrid {
            n_r: 2 * self.n_r,
            n_theta: 2 * self.n_theta,
            ..*self
        }
    }

    pub fn refined_radially(&self) -> Self {
        PolarGrid {
            n_r: 2 * self.n_r,
            ..*self
        }
    }

    pub fn same_layout(&self, other: &PolarGrid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(LabError::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// Smooth radial cutoff: 1 on `[0, inner]`, 0 beyond `outer`, quintic
/// smoothstep in between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub inner: f64,
    pub outer: f64,
}

impl Default for CutoffSpec {
    fn default() -> Self {
        CutoffSpec {
            inner: 0.625,
            outer: 0.875,
        }
    }
}

impl CutoffSpec {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && outer > inner) {
            return Err(LabError::Config(format!("cutoff needs 0 < inner < outer, got {inner}, {outer}")));
        }
        Ok(CutoffSpec { inner, outer })
    }

    fn x(&self, r: f64) -> f64 {
        ((r - self.inner) / (self.outer - self.inner)).clamp(0.0, 1.0)
    }

    pub fn chi(&self, r: f64) -> f64 {
        let x = self.x(r);
        1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x)
    }

    pub fn dchi(&self, r: f64) -> f64 {
        let x = self.x(r);
        -30.0 * x * x * (1.0 - x) * (1.0 - x) / (self.outer - self.inner)
    }

    pub fn d2chi(&self, r: f64) -> f64 {
        let x = self.x(r);
        let w = self.outer - self.inner;
        -60.0 * x * (1.0 - x) * (1.0 - 2.0 * x) / (w * w)
    }

    pub fn in_annulus(&self, r: f64) -> bool {
        r > self.inner && r < self.outer
    }
}

/// `q = f(z) dz²` and a variation `q̇ = ḟ(z) dz²` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadDifferentialModel {
    pub coeffs: Vec<C64>,
    pub dot_coeffs: Vec<C64>,
}

fn poly(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, a| acc * z + a)
}

fn dpoly(c: &[C64], z: C64) -> C64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, (k, a)| acc * z + a * k as f64)
}

impl QuadDifferentialModel {
    pub fn new(coeffs: Vec<C64>, dot_coeffs: Vec<C64>) -> Result<Self> {
        let c0 = coeffs.first().copied().unwrap_or_default();
        let c1 = coeffs.get(1).copied().unwrap_or_default();
        if c0.norm() != 0.0 || c1.norm() == 0.0 {
            return Err(LabError::Config("q must have a simple zero at the origin (c0 = 0, c1 != 0)".into()));
        }
        Ok(QuadDifferentialModel { coeffs, dot_coeffs })
    }

    /// `q = z dz²` with the given variation.
    pub fn model(dot_coeffs: Vec<C64>) -> Self {
        QuadDifferentialModel {
            coeffs: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            dot_coeffs,
        }
    }

    /// `q = z dz²` varied along itself.
    pub fn radial() -> Self {
        Self::model(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
    }

    pub fn monomial(k: usize, c: C64) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); k + 1];
        v[k] = c;
        v
    }

    pub fn f(&self, z: C64) -> C64 {
        poly(&self.coeffs, z)
    }

    pub fn df(&self, z: C64) -> C64 {
        dpoly(&self.coeffs, z)
    }

    pub fn fdot(&self, z: C64) -> C64 {
        poly(&self.dot_coeffs, z)
    }

    pub fn fdot_derivative(&self, z: C64) -> C64 {
        dpoly(&self.dot_coeffs, z)
    }

    pub fn is_model(&self) -> bool {
        self.coeffs.len() >= 2
            && self.coeffs[1] == C64::new(1.0, 0.0)
            && self.coeffs.iter().enumerate().all(|(k, c)| k == 1 || c.norm() == 0.0)
    }

    pub fn scaled(&self, s: f64) -> Self {
        QuadDifferentialModel {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            dot_coeffs: self.dot_coeffs.clone(),
        }
    }

    pub fn with_dot(&self, dot_coeffs: Vec<C64>) -> Self {
        QuadDifferentialModel {
            coeffs: self.coeffs.clone(),
            dot_coeffs,
        }
    }
}

pub fn polar(r: f64, theta: f64) -> C64 {
    C64::from_polar(r, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_increase_and_areas_sum_to_disk() {
        let g = PolarGrid::new(64, 8).unwrap();
        let r = g.radii();
        assert!(r.windows(2).all(|w| w[1] > w[0]));
        let total: f64 = (0..g.n_r).map(|k| g.area(k)).sum::<f64>() * g.n_theta as f64;
        assert!((total - PI).abs() < 1e-3);
    }

    #[test]
    fn cutoff_endpoints() {
        let c = CutoffSpec::default();
        assert_eq!(c.chi(0.5), 1.0);
        assert_eq!(c.chi(0.9), 0.0);
        assert!((c.chi(0.75) - 0.5).abs() < 1e-15);
        let h = 1e-6;
        let fd = (c.chi(0.7 + h) - c.chi(0.7 - h)) / (2.0 * h);
        assert!((fd - c.dchi(0.7)).abs() < 1e-6);
        let fd2 = (c.dchi(0.7 + h) - c.dchi(0.7 - h)) / (2.0 * h);
        assert!((fd2 - c.d2chi(0.7)).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(PolarGrid::new(64, 7).is_err());
        assert!(PolarGrid::with_options(64, 8, 0.0, 1.0, 2.0, 3).is_err());
        assert!(CutoffSpec::new(0.8, 0.7).is_err());
        assert!(QuadDifferentialModel::new(vec![C64::new(1.0, 0.0)], vec![]).is_err());
    }

    #[test]
    fn polynomial_evaluation() {
        let q = QuadDifferentialModel::new(
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.5, 0.0)],
            vec![C64::new(0.0, 1.0)],
        )
        .unwrap();
        let z = C64::new(0.3, -0.2);
        assert!((q.f(z) - (z + z * z * 0.5)).norm() < 1e-15);
        assert!((q.df(z) - (C64::new(1.0, 0.0) + z)).norm() < 1e-15);
        assert!((q.fdot(z) - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(!q.is_model());
        assert!(QuadDifferentialModel::radial().is_model());
    }
}
