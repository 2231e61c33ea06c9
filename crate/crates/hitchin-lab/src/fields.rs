//! Matrix-valued fields on a polar grid and the model Higgs pairs:
//! limiting configuration, fiducial solution and the cut-off approximate
//! solution, together with curvature and the Hitchin residual.

use crate::error::{LabError, Result};
use crate::grid::{polar, CutoffSpec, PolarGrid, QuadDifferentialModel};
use crate::painleve::PainleveTable;
use crate::su2::{self, Mat2, C64, I};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormDegree {
    Zero,
    One,
    OneZero,
    ZeroOne,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Symmetry {
    SkewHermitian,
    Hermitian,
    General,
}

/// Values at cell centres. One-forms keep `dr` and `dθ` coefficients as
/// two components; `(1,0)`-forms keep the `dz` coefficient; two-forms the
/// `dr∧dθ` coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixField {
    pub grid: PolarGrid,
    pub degree: FormDegree,
    pub symmetry: Symmetry,
    pub components: Vec<Vec<Mat2>>,
}

impl MatrixField {
    pub fn sample(
        grid: &PolarGrid,
        degree: FormDegree,
        symmetry: Symmetry,
        f: impl Fn(f64, f64) -> Vec<Mat2>,
    ) -> Self {
        let ncomp = if degree == FormDegree::One { 2 } else { 1 };
        let mut components = vec![Vec::with_capacity(grid.nodes()); ncomp];
        for k in 0..grid.n_r {
            let r = grid.r(k);
            for j in 0..grid.n_theta {
                let v = f(r, grid.theta(j));
                for (c, m) in components.iter_mut().zip(v) {
                    c.push(m);
                }
            }
        }
        MatrixField {
            grid: *grid,
            degree,
            symmetry,
            components,
        }
    }

    pub fn zeros(grid: &PolarGrid, degree: FormDegree, symmetry: Symmetry) -> Self {
        let ncomp = if degree == FormDegree::One { 2 } else { 1 };
        MatrixField {
            grid: *grid,
            degree,
            symmetry,
            components: vec![vec![su2::zero(); grid.nodes()]; ncomp],
        }
    }

    pub fn at(&self, comp: usize, k: usize, j: usize) -> &Mat2 {
        &self.components[comp][self.grid.index(k, j)]
    }

    pub fn max_trace(&self) -> f64 {
        self.components
            .iter()
            .flatten()
            .fold(0.0, |m, x| m.max(su2::trace(x).norm()))
    }

    /// Largest violation of the declared symmetry tag.
    pub fn symmetry_defect(&self) -> f64 {
        let d = |x: &Mat2| match self.symmetry {
            Symmetry::SkewHermitian => (x + x.adjoint()).norm(),
            Symmetry::Hermitian => (x - x.adjoint()).norm(),
            Symmetry::General => 0.0,
        };
        self.components.iter().flatten().fold(0.0, |m, x| m.max(d(x)))
    }

    /// Sup of the pointwise Frobenius norm over nodes selected by `keep(k)`.
    pub fn sup_norm_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        let mut m: f64 = 0.0;
        for comp in &self.components {
            for k in (0..self.grid.n_r).filter(|&k| keep(k)) {
                for j in 0..self.grid.n_theta {
                    m = m.max(su2::norm_sq(&comp[self.grid.index(k, j)]).sqrt());
                }
            }
        }
        m
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm_where(|_| true)
    }

    /// `(∫ Σ_comp |X|² dA)^{1/2}` over the grid (cover integrals halved).
    pub fn l2_norm(&self) -> f64 {
        let g = &self.grid;
        let mut s = 0.0;
        for comp in &self.components {
            for k in 0..g.n_r {
                let w = g.area(k) / g.cover_sheets as f64;
                for j in 0..g.n_theta {
                    s += w * su2::norm_sq(&comp[g.index(k, j)]);
                }
            }
        }
        s.sqrt()
    }

    pub fn sub(&self, other: &MatrixField) -> Result<MatrixField> {
        self.grid.same_layout(&other.grid)?;
        if self.components.len() != other.components.len() {
            return Err(LabError::GridMismatch("component count differs".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(MatrixField {
            components,
            symmetry: Symmetry::General,
            ..self.clone()
        })
    }

    /// CSV dump, one row per node: `r,theta,re(m11),im(m11),...,im(m21)`.
    pub fn to_csv(&self, comp: usize, name: &str) -> String {
        let mut out = format!("# {name}\nr,theta,re(m11),im(m11),re(m12),im(m12),re(m21),im(m21)\n");
        let g = &self.grid;
        for k in 0..g.n_r {
            for j in 0..g.n_theta {
                let m = self.at(comp, k, j);
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    g.r(k),
                    g.theta(j),
                    m[(0, 0)].re,
                    m[(0, 0)].im,
                    m[(0, 1)].re,
                    m[(0, 1)].im,
                    m[(1, 0)].re,
                    m[(1, 0)].im
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairKind {
    Limiting,
    Fiducial,
    Approximate,
    Corrected,
}

/// Rotationally structured data of a pair over `q = z dz²`:
/// `A = -(c/2) e1 dθ`, `φ = offdiag(r^{1/2} e^{-H} e^{iθ}, r^{1/2} e^{H})`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub c: Vec<f64>,
    pub h: Vec<f64>,
}

/// Connection and Higgs field. `a` holds `(A_r, A_θ)` at centres, `a_r_faces`
/// holds `A_r` at the outer face of each cell, `phi` the `dz` coefficient.
#[derive(Debug, Clone)]
pub struct HiggsPair {
    pub grid: PolarGrid,
    pub t: f64,
    pub kind: PairKind,
    pub a: MatrixField,
    pub a_r_faces: Vec<Mat2>,
    pub phi: MatrixField,
    pub radial: Option<RadialProfile>,
}

/// Pointwise values `(A_r, A_θ, φ)`.
pub type PairSampler<'a> = dyn Fn(f64, f64) -> (Mat2, Mat2, Mat2) + 'a;

impl HiggsPair {
    pub fn from_sampler(grid: &PolarGrid, t: f64, kind: PairKind, s: &PairSampler) -> Self {
        let a = MatrixField::sample(grid, FormDegree::One, Symmetry::SkewHermitian, |r, th| {
            let (ar, at, _) = s(r, th);
            vec![ar, at]
        });
        let phi = MatrixField::sample(grid, FormDegree::OneZero, Symmetry::General, |r, th| vec![s(r, th).2]);
        let mut a_r_faces = Vec::with_capacity(grid.nodes());
        for k in 0..grid.n_r {
            let r = grid.flux_radius(k);
            for j in 0..grid.n_theta {
                a_r_faces.push(s(r, grid.theta(j)).0);
            }
        }
        HiggsPair {
            grid: *grid,
            t,
            kind,
            a,
            a_r_faces,
            phi,
            radial: None,
        }
    }

    /// Builds a pair over `q = z dz²` from radial data on the grid's rings.
    pub fn from_radial(grid: &PolarGrid, t: f64, kind: PairKind, prof: RadialProfile) -> Self {
        let e1 = su2::e1();
        let n = grid.n_theta;
        let mut a = MatrixField::zeros(grid, FormDegree::One, Symmetry::SkewHermitian);
        let mut phi = MatrixField::zeros(grid, FormDegree::OneZero, Symmetry::General);
        for k in 0..grid.n_r {
            let r = grid.r(k);
            for j in 0..n {
                let th = grid.theta(j);
                let idx = grid.index(k, j);
                a.components[1][idx] = e1 * C64::from(-prof.c[k] / 2.0);
                phi.components[0][idx] = radial_higgs(r, th, prof.h[k]);
            }
        }
        HiggsPair {
            grid: *grid,
            t,
            kind,
            a,
            a_r_faces: vec![su2::zero(); grid.nodes()],
            phi,
            radial: Some(prof),
        }
    }
}

fn radial_higgs(r: f64, theta: f64, h: f64) -> Mat2 {
    let s = r.sqrt();
    su2::offdiag(C64::from_polar(s * (-h).exp(), theta), C64::from(s * h.exp()))
}

/// Pointwise data of the cut-off pair over a general `q`: connection
/// coefficient `κ` on `Im ∂̄ log|q|` and exponent `H` in the Higgs field.
fn general_sampler<'a>(
    q: &'a QuadDifferentialModel,
    prof: impl Fn(f64) -> (f64, f64) + 'a,
) -> impl Fn(f64, f64) -> (Mat2, Mat2, Mat2) + 'a {
    move |r, th| {
        let z = polar(r, th);
        let f = q.f(z);
        let g = q.df(z) / f;
        let m = f.norm();
        let (kappa, hh) = prof(m);
        let e1 = su2::e1();
        let w = C64::from_polar(1.0, th);
        let ar = e1 * C64::from(-0.5 * kappa * (g * w).im);
        let at = e1 * C64::from(-0.5 * kappa * r * (g * w).re);
        let phi = su2::offdiag(f * (m.powf(-0.5) * (-hh).exp()), C64::from(m.sqrt() * hh.exp()));
        (ar, at, phi)
    }
}

pub fn limiting_configuration(q: &QuadDifferentialModel, grid: &PolarGrid) -> HiggsPair {
    if q.is_model() {
        let prof = RadialProfile {
            c: vec![0.5; grid.n_r],
            h: vec![0.0; grid.n_r],
        };
        return HiggsPair::from_radial(grid, f64::INFINITY, PairKind::Limiting, prof);
    }
    let s = general_sampler(q, |_| (0.5, 0.0));
    HiggsPair::from_sampler(grid, f64::INFINITY, PairKind::Limiting, &s)
}

/// Radial data of the fiducial solution over `q = z dz²`.
pub fn fiducial_profile(table: &PainleveTable, t: f64, grid: &PolarGrid) -> Result<RadialProfile> {
    let mut c = Vec::with_capacity(grid.n_r);
    let mut h = Vec::with_capacity(grid.n_r);
    for k in 0..grid.n_r {
        let p = table.profile_eval(t, grid.r(k))?;
        c.push(4.0 * p.f);
        h.push(p.h);
    }
    Ok(RadialProfile { c, h })
}

pub fn fiducial_solution(table: &PainleveTable, t: f64, grid: &PolarGrid) -> Result<HiggsPair> {
    check_t(t)?;
    let prof = fiducial_profile(table, t, grid)?;
    Ok(HiggsPair::from_radial(grid, t, PairKind::Fiducial, prof))
}

pub fn approximate_profile(
    table: &PainleveTable,
    t: f64,
    chi: &CutoffSpec,
    grid: &PolarGrid,
) -> Result<RadialProfile> {
    let mut c = Vec::with_capacity(grid.n_r);
    let mut h = Vec::with_capacity(grid.n_r);
    for k in 0..grid.n_r {
        let r = grid.r(k);
        let x = chi.chi(r);
        if x == 0.0 {
            c.push(0.5);
            h.push(0.0);
            continue;
        }
        let p = table.profile_eval(t, r)?;
        c.push(0.5 + x * (4.0 * p.f - 0.5));
        h.push(x * p.h);
    }
    Ok(RadialProfile { c, h })
}

pub fn approximate_solution(
    table: &PainleveTable,
    q: &QuadDifferentialModel,
    t: f64,
    chi: &CutoffSpec,
    grid: &PolarGrid,
) -> Result<HiggsPair> {
    check_t(t)?;
    if !(chi.inner > 0.0 && chi.outer > chi.inner) {
        return Err(LabError::Config(format!("malformed cutoff {chi:?}")));
    }
    if q.is_model() {
        let prof = approximate_profile(table, t, chi, grid)?;
        return Ok(HiggsPair::from_radial(grid, t, PairKind::Approximate, prof));
    }
    let s = general_sampler(q, |m| {
        let x = chi.chi(m);
        if x == 0.0 {
            return (0.5, 0.0);
        }
        let p = table.profile_eval(t, m).expect("profile at positive radius");
        (0.5 + x * (4.0 * p.f - 0.5), x * p.h)
    });
    Ok(HiggsPair::from_sampler(grid, t, PairKind::Approximate, &s))
}

fn check_t(t: f64) -> Result<()> {
    if t >= 1.0 && t.is_finite() {
        Ok(())
    } else {
        Err(LabError::Domain(format!("desingularized pairs need t >= 1, got {t}")))
    }
}

/// Second-order derivative along `r` at ring `k` (one-sided at the ends).
fn d_r(vals: &[Mat2], g: &PolarGrid, k: usize, j: usize) -> Mat2 {
    let n = g.n_r;
    let v = |kk: usize| vals[g.index(kk, j)];
    let r = |kk: usize| g.r(kk);
    let (k0, k1, k2) = if k == 0 {
        (0, 1, 2)
    } else if k == n - 1 {
        (n - 3, n - 2, n - 1)
    } else {
        (k - 1, k, k + 1)
    };
    let (x0, x1, x2) = (r(k0), r(k1), r(k2));
    let x = r(k);
    let l0 = (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
    let l1 = (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
    let l2 = (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    v(k0) * C64::from(l0) + v(k1) * C64::from(l1) + v(k2) * C64::from(l2)
}

/// Centred periodic derivative along `θ`.
fn d_theta(vals: &[Mat2], g: &PolarGrid, k: usize, j: usize) -> Mat2 {
    let n = g.n_theta;
    let jp = (j + 1) % n;
    let jm = (j + n - 1) % n;
    (vals[g.index(k, jp)] - vals[g.index(k, jm)]) * C64::from(0.5 / g.dtheta())
}

/// `F = (∂_r A_θ − ∂_θ A_r + [A_r, A_θ]) dr∧dθ` by centred differences.
pub fn curvature(a: &MatrixField) -> Result<MatrixField> {
    if a.degree != FormDegree::One || a.components.len() != 2 {
        return Err(LabError::Config("curvature needs a connection one-form".into()));
    }
    let g = a.grid;
    let mut out = MatrixField::zeros(&g, FormDegree::Two, Symmetry::SkewHermitian);
    for k in 0..g.n_r {
        for j in 0..g.n_theta {
            let ar = a.components[0][g.index(k, j)];
            let at = a.components[1][g.index(k, j)];
            out.components[0][g.index(k, j)] =
                d_r(&a.components[1], &g, k, j) - d_theta(&a.components[0], &g, k, j) + su2::commutator(&ar, &at);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct HitchinResidual {
    /// `F_A + t²[Φ∧Φ*]`, coefficient of `dr∧dθ`.
    pub moment: MatrixField,
    /// `∂̄_A Φ`, coefficient of `dz̄∧dz`.
    pub holomorphic: MatrixField,
}

impl HitchinResidual {
    pub fn sup(&self) -> f64 {
        self.moment.sup_norm().max(self.holomorphic.sup_norm())
    }

    pub fn sup_where(&self, keep: impl Fn(usize) -> bool + Copy) -> f64 {
        self.moment.sup_norm_where(keep).max(self.holomorphic.sup_norm_where(keep))
    }

    pub fn l2(&self) -> f64 {
        self.moment.l2_norm().hypot(self.holomorphic.l2_norm())
    }

    pub fn sub(&self, other: &HitchinResidual) -> Result<HitchinResidual> {
        Ok(HitchinResidual {
            moment: self.moment.sub(&other.moment)?,
            holomorphic: self.holomorphic.sub(&other.holomorphic)?,
        })
    }
}

/// Evaluates `μ_t = (F_A + t²[Φ∧Φ*], ∂̄_A Φ)` pointwise with centred differences.
pub fn hitchin_residual(pair: &HiggsPair, t: f64) -> Result<HitchinResidual> {
    let g = pair.grid;
    let f = curvature(&pair.a)?;
    let t2 = if t.is_finite() { t * t } else { 0.0 };
    let mut moment = MatrixField::zeros(&g, FormDegree::Two, Symmetry::SkewHermitian);
    let mut hol = MatrixField::zeros(&g, FormDegree::Two, Symmetry::General);
    let phi = &pair.phi.components[0];
    for k in 0..g.n_r {
        let r = g.r(k);
        for j in 0..g.n_theta {
            let idx = g.index(k, j);
            let th = g.theta(j);
            let p = phi[idx];
            // Φ∧Φ* + Φ*∧Φ = [φ, φ*] dz∧dz̄ and dz∧dz̄ = −2i r dr∧dθ.
            let bracket = su2::commutator(&p, &p.adjoint()) * (C64::new(0.0, -2.0) * r);
            let scaled = if t.is_finite() {
                bracket * C64::from(t2)
            } else {
                su2::zero()
            };
            moment.components[0][idx] = f.components[0][idx] + scaled;
            let w = C64::from_polar(0.5, th);
            let dbar = (d_r(phi, &g, k, j) + d_theta(phi, &g, k, j) * (I / r)) * w;
            let a_zbar = (pair.a.components[0][idx] + pair.a.components[1][idx] * (I / r)) * w;
            hol.components[0][idx] = dbar + su2::commutator(&a_zbar, &p);
        }
    }
    Ok(HitchinResidual {
        moment,
        holomorphic: hol,
    })
}

/// Largest `|[Φ, Φ*]|` over the grid.
pub fn normality_defect(pair: &HiggsPair) -> f64 {
    pair.phi.components[0]
        .iter()
        .fold(0.0, |m, p| m.max(su2::norm_sq(&su2::commutator(p, &p.adjoint())).sqrt()))
}

/// Checks that fields sampled on the double cover satisfy
/// `X(θ + 2π) = parity · X(θ)` node-wise.
pub fn check_equivariance(field: &MatrixField, parity: f64, tol: f64) -> Result<f64> {
    let g = field.grid;
    if g.cover_sheets != 2 {
        return Err(LabError::Config("equivariance is a property of cover grids".into()));
    }
    let half = g.n_theta / 2;
    let mut worst: f64 = 0.0;
    for comp in &field.components {
        for k in 0..g.n_r {
            for j in 0..half {
                let a = comp[g.index(k, j)];
                let b = comp[g.index(k, j + half)];
                worst = worst.max((b - a * C64::from(parity)).norm());
            }
        }
    }
    if worst > tol {
        return Err(LabError::Domain(format!("equivariance violated by {worst:.3e}")));
    }
    Ok(worst)
}
