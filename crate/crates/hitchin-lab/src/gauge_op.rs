//! The gauge-fixing operator `ℒ_t = (D¹_t)* D¹_t` with
//! `D¹_t ξ = (d_A ξ, t[φ, ξ])`, discretized so that `ℒ_t = M⁻¹ K` with
//! `K = D¹ᵀ W D¹` symmetric positive definite.
//!
//! Radial derivatives are staggered: `ξ` lives at cell centres, `α_r` on
//! the faces between them, with parallel transport along each link and
//! `ξ = 0` imposed at `r_max`; nothing flows through the inner face.
//! Angular derivatives are spectral on each ring. Since every coupling
//! between rings is nearest-neighbour, `K` is block tridiagonal with one
//! `3·n_θ` block per ring and is factored exactly.

use crate::deformations::TangentPair;
use crate::error::{LabError, Result};
use crate::fields::{FormDegree, HiggsPair, MatrixField, PairKind, RadialProfile, Symmetry};
use crate::grid::{CutoffSpec, PolarGrid};
use crate::linalg::{dot, pcg, BlockCholesky, BlockTridiag};
use crate::painleve::{solve_tridiagonal, PainleveTable};
use crate::su2::{self, Mat2, C64};
use nalgebra::DMatrix;
use serde::Serialize;
use std::f64::consts::PI;

/// Overall factor of the L² metric: `g = N ∫ (⟨α,α⟩ + 4⟨φ,φ⟩) dA`.
pub const METRIC_NORMALIZATION: f64 = 0.125;
/// Relative weight of the Higgs component against the connection component.
pub const HIGGS_WEIGHT: f64 = 4.0;
/// Default relative tolerance of gauge solves.
pub const GAUGE_TOL: f64 = 1e-10;
/// Above this many unknowns the direct factorization is skipped.
pub const DIRECT_LIMIT: usize = 200_000;

type M3 = [[f64; 3]; 3];

/// Unknowns per node: the full su(2), or a line spanned by a unit vector
/// field in su(2) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Sector {
    Full,
    Line(Vec<[f64; 3]>),
}

/// Coordinates of a tangent vector: 3 per node for `α_r` and `α_θ`, 6 per
/// node for `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentCoords {
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
}

impl TangentCoords {
    pub fn from_pair(v: &TangentPair) -> Self {
        TangentCoords {
            r: v.alpha_r.iter().flat_map(su2::su_coords).collect(),
            theta: v.alpha_theta.iter().flat_map(su2::su_coords).collect(),
            phi: v.phi.iter().flat_map(su2::sl_coords).collect(),
        }
    }

    pub fn to_pair(&self, grid: &PolarGrid) -> TangentPair {
        TangentPair {
            grid: *grid,
            alpha_r: self.r.chunks(3).map(su2::from_su).collect(),
            alpha_theta: self.theta.chunks(3).map(su2::from_su).collect(),
            phi: self.phi.chunks(6).map(su2::from_sl).collect(),
            gauged: false,
            scale: 1.0,
        }
    }

    pub fn sub(&self, o: &TangentCoords) -> TangentCoords {
        let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - y).collect();
        TangentCoords {
            r: d(&self.r, &o.r),
            theta: d(&self.theta, &o.theta),
            phi: d(&self.phi, &o.phi),
        }
    }
}

/// Quadrature weights of the discrete L² metric, per ring.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricWeights {
    pub grid: PolarGrid,
    pub w_r: Vec<f64>,
    pub w_theta: Vec<f64>,
    pub w_phi: Vec<f64>,
    pub mass: Vec<f64>,
}

impl MetricWeights {
    /// Coordinates carry `Re Tr(XX*) = 2|c|²`; cover integrals are halved.
    pub fn new(grid: &PolarGrid) -> Self {
        let base = 2.0 * METRIC_NORMALIZATION / grid.cover_sheets as f64;
        let dth = grid.dtheta();
        let mut w = MetricWeights {
            grid: *grid,
            w_r: Vec::new(),
            w_theta: Vec::new(),
            w_phi: Vec::new(),
            mass: Vec::new(),
        };
        for k in 0..grid.n_r {
            let r = grid.r(k);
            let a = grid.area(k);
            w.w_r.push(base * grid.flux_radius(k) * dth * grid.centre_gap(k));
            w.w_theta.push(base * a / (r * r));
            w.w_phi.push(base * HIGGS_WEIGHT * a);
            w.mass.push(base * a);
        }
        w
    }

    pub fn inner(&self, v: &TangentCoords, w: &TangentCoords) -> f64 {
        let g = &self.grid;
        let mut s = 0.0;
        for k in 0..g.n_r {
            let (a, b, c) = (self.w_r[k], self.w_theta[k], self.w_phi[k]);
            let lo = g.index(k, 0);
            let hi = g.index(k, g.n_theta - 1) + 1;
            s += a * dot(&v.r[3 * lo..3 * hi], &w.r[3 * lo..3 * hi]);
            s += b * dot(&v.theta[3 * lo..3 * hi], &w.theta[3 * lo..3 * hi]);
            s += c * dot(&v.phi[6 * lo..6 * hi], &w.phi[6 * lo..6 * hi]);
        }
        s
    }

    /// Pointwise-integrand version of [`inner`](Self::inner): per-node
    /// contributions, without summation.
    pub fn pointwise(&self, v: &TangentCoords, w: &TangentCoords) -> Vec<f64> {
        let g = &self.grid;
        let mut out = vec![0.0; g.nodes()];
        for k in 0..g.n_r {
            for j in 0..g.n_theta {
                let i = g.index(k, j);
                out[i] = self.w_r[k] * dot(&v.r[3 * i..3 * i + 3], &w.r[3 * i..3 * i + 3])
                    + self.w_theta[k] * dot(&v.theta[3 * i..3 * i + 3], &w.theta[3 * i..3 * i + 3])
                    + self.w_phi[k] * dot(&v.phi[6 * i..6 * i + 6], &w.phi[6 * i..6 * i + 6]);
            }
        }
        out
    }
}

/// Periodic spectral differentiation matrix on `n` equispaced points of a
/// period `period` (row-major, `n` even).
pub fn spectral_derivative(n: usize, period: f64) -> Vec<f64> {
    let mut d = vec![0.0; n * n];
    let scale = 2.0 * PI / period;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let diff = a as f64 - b as f64;
                let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                d[a * n + b] = scale * 0.5 * sign / (diff * PI / n as f64).tan();
            }
        }
    }
    d
}

#[derive(Debug, Clone)]
pub struct LinearOp {
    pub grid: PolarGrid,
    pub t: f64,
    pub kind: PairKind,
    pub dof: usize,
    pub weights: MetricWeights,
    pub matrix: BlockTridiag,
    basis: Vec<[f64; 3]>,
    transport: Vec<M3>,
    ad_theta: Vec<M3>,
    higgs: Vec<[[f64; 3]; 6]>,
    spec: Vec<f64>,
    factor: Option<BlockCholesky>,
}

#[derive(Debug, Clone)]
pub struct GaugeSolveResult {
    pub xi: MatrixField,
    pub coords: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

fn mat3_vec(m: &M3, v: &[f64]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn mat3t_vec(m: &M3, v: &[f64]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
        m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
        m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
    ]
}

/// Assembles `ℒ_t` at `pair` on the full su(2).
pub fn assemble_lt(pair: &HiggsPair, t: f64) -> Result<LinearOp> {
    LinearOp::assemble(pair, t, Sector::Full)
}

impl LinearOp {
    pub fn assemble(pair: &HiggsPair, t: f64, sector: Sector) -> Result<Self> {
        let g = pair.grid;
        if !(t > 0.0 && t.is_finite()) {
            return Err(LabError::Domain(format!("ℒ_t needs a finite t > 0, got {t}")));
        }
        let n = g.nodes();
        let (dof, basis) = match sector {
            Sector::Full => {
                let mut b = Vec::with_capacity(3 * n);
                for _ in 0..n {
                    b.extend_from_slice(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
                }
                (3, b)
            }
            Sector::Line(v) => {
                if v.len() != n {
                    return Err(LabError::GridMismatch(format!("{} directions for {n} nodes", v.len())));
                }
                (1, v)
            }
        };
        let mut transport = Vec::with_capacity(n);
        let mut ad_theta = Vec::with_capacity(n);
        let mut higgs = Vec::with_capacity(n);
        let su = su2::su_basis();
        for k in 0..g.n_r {
            let gap = g.centre_gap(k);
            for j in 0..g.n_theta {
                let i = g.index(k, j);
                let u = su2::expm_su(&(pair.a_r_faces[i] * C64::from(gap)));
                transport.push(su2::conj_matrix(&u));
                ad_theta.push(su2::ad_matrix(pair.a.at(1, k, j)));
                let p = pair.phi.components[0][i] * C64::from(t);
                let mut h = [[0.0; 3]; 6];
                for (b, eb) in su.iter().enumerate() {
                    let c = su2::sl_coords(&su2::commutator(&p, eb));
                    for a in 0..6 {
                        h[a][b] = c[a];
                    }
                }
                higgs.push(h);
            }
        }
        let mut op = LinearOp {
            grid: g,
            t,
            kind: pair.kind,
            dof,
            weights: MetricWeights::new(&g),
            matrix: BlockTridiag::zeros(0, 0),
            basis,
            transport,
            ad_theta,
            higgs,
            spec: spectral_derivative(g.n_theta, g.period()),
            factor: None,
        };
        op.matrix = op.build_blocks();
        if op.unknowns() <= DIRECT_LIMIT {
            op.factor = Some(BlockCholesky::factor(&op.matrix)?);
        }
        Ok(op)
    }

    pub fn unknowns(&self) -> usize {
        self.grid.nodes() * self.dof
    }

    fn basis_mat(&self, node: usize) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(3, self.dof);
        for c in 0..self.dof {
            let col = self.basis[node * self.dof + c];
            for a in 0..3 {
                b[(a, c)] = col[a];
            }
        }
        b
    }

    fn build_blocks(&self) -> BlockTridiag {
        let g = &self.grid;
        let nt = g.n_theta;
        let m = nt * self.dof;
        let d = self.dof;
        let mut kt = BlockTridiag::zeros(g.n_r, m);
        let m3 = |x: &M3| DMatrix::from_fn(3, 3, |a, b| x[a][b]);
        for k in 0..g.n_r {
            let w = &self.weights;
            let gap = g.centre_gap(k);
            let cr = w.w_r[k] / (gap * gap);
            for j in 0..nt {
                let i = g.index(k, j);
                let b = self.basis_mat(i);
                let btb = b.transpose() * &b * cr;
                add_block(&mut kt.diag[k], j * d, j * d, &btb);
                if k + 1 < g.n_r {
                    let bn = self.basis_mat(g.index(k + 1, j));
                    let tb = m3(&self.transport[i]) * bn;
                    add_block(&mut kt.diag[k + 1], j * d, j * d, &(tb.transpose() * &tb * cr));
                    add_block(&mut kt.upper[k], j * d, j * d, &(b.transpose() * &tb * (-cr)));
                }
                let h = DMatrix::from_fn(6, 3, |a, c| self.higgs[i][a][c]) * &b;
                add_block(&mut kt.diag[k], j * d, j * d, &(h.transpose() * &h * w.w_phi[k]));
            }
            let mut gth = DMatrix::zeros(3 * nt, m);
            for j in 0..nt {
                for l in 0..nt {
                    let bl = self.basis_mat(g.index(k, l));
                    let mut blk = bl.clone() * self.spec[j * nt + l];
                    if j == l {
                        blk += m3(&self.ad_theta[g.index(k, j)]) * &bl;
                    }
                    gth.view_mut((3 * j, l * d), (3, d)).copy_from(&blk);
                }
            }
            kt.diag[k] += gth.transpose() * &gth * w.w_theta[k];
        }
        kt
    }

    fn lift(&self, x: &[f64]) -> Vec<[f64; 3]> {
        (0..self.grid.nodes())
            .map(|i| {
                let mut v = [0.0; 3];
                for c in 0..self.dof {
                    let b = self.basis[i * self.dof + c];
                    for a in 0..3 {
                        v[a] += x[i * self.dof + c] * b[a];
                    }
                }
                v
            })
            .collect()
    }

    fn project(&self, y: &[[f64; 3]]) -> Vec<f64> {
        let mut x = vec![0.0; self.unknowns()];
        for (i, yi) in y.iter().enumerate() {
            for c in 0..self.dof {
                let b = self.basis[i * self.dof + c];
                x[i * self.dof + c] = b[0] * yi[0] + b[1] * yi[1] + b[2] * yi[2];
            }
        }
        x
    }

    /// Lifts sector coordinates to su(2) coordinates (3 per node).
    pub fn lift_coords(&self, x: &[f64]) -> Vec<f64> {
        self.lift(x).into_iter().flatten().collect()
    }

    /// Restricts su(2) coordinates (3 per node) to the sector.
    pub fn project_coords(&self, y: &[f64]) -> Vec<f64> {
        let v: Vec<[f64; 3]> = y.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        self.project(&v)
    }

    /// `D¹_t ξ`.
    pub fn d1(&self, x: &[f64]) -> TangentCoords {
        let g = &self.grid;
        let nt = g.n_theta;
        let xi = self.lift(x);
        let n = g.nodes();
        let mut r = vec![0.0; 3 * n];
        let mut th = vec![0.0; 3 * n];
        let mut p = vec![0.0; 6 * n];
        for k in 0..g.n_r {
            let gap = g.centre_gap(k);
            for j in 0..nt {
                let i = g.index(k, j);
                let next = if k + 1 < g.n_r {
                    mat3_vec(&self.transport[i], &xi[g.index(k + 1, j)])
                } else {
                    [0.0; 3]
                };
                for a in 0..3 {
                    r[3 * i + a] = (next[a] - xi[i][a]) / gap;
                }
                let mut s = mat3_vec(&self.ad_theta[i], &xi[i]);
                for l in 0..nt {
                    let dl = self.spec[j * nt + l];
                    if dl != 0.0 {
                        let xl = &xi[g.index(k, l)];
                        for a in 0..3 {
                            s[a] += dl * xl[a];
                        }
                    }
                }
                th[3 * i..3 * i + 3].copy_from_slice(&s);
                let h = &self.higgs[i];
                for a in 0..6 {
                    p[6 * i + a] = h[a][0] * xi[i][0] + h[a][1] * xi[i][1] + h[a][2] * xi[i][2];
                }
            }
        }
        TangentCoords { r, theta: th, phi: p }
    }

    /// `D¹ᵀ W v`, the weak form of the Coulomb residual.
    pub fn d1_adjoint(&self, v: &TangentCoords) -> Vec<f64> {
        let g = &self.grid;
        let nt = g.n_theta;
        let w = &self.weights;
        let mut y = vec![[0.0; 3]; g.nodes()];
        for k in 0..g.n_r {
            let gap = g.centre_gap(k);
            for j in 0..nt {
                let i = g.index(k, j);
                let vr = &v.r[3 * i..3 * i + 3];
                let c = w.w_r[k] / gap;
                for a in 0..3 {
                    y[i][a] -= c * vr[a];
                }
                if k + 1 < g.n_r {
                    let tv = mat3t_vec(&self.transport[i], vr);
                    let inext = g.index(k + 1, j);
                    for a in 0..3 {
                        y[inext][a] += c * tv[a];
                    }
                }
                let vt: Vec<f64> = v.theta[3 * i..3 * i + 3].iter().map(|x| x * w.w_theta[k]).collect();
                let at = mat3t_vec(&self.ad_theta[i], &vt);
                for a in 0..3 {
                    y[i][a] += at[a];
                }
                for l in 0..nt {
                    let dl = self.spec[j * nt + l];
                    if dl != 0.0 {
                        let il = g.index(k, l);
                        for a in 0..3 {
                            y[il][a] += dl * vt[a];
                        }
                    }
                }
                let h = &self.higgs[i];
                for b in 0..3 {
                    let mut s = 0.0;
                    for a in 0..6 {
                        s += h[a][b] * v.phi[6 * i + a];
                    }
                    y[i][b] += w.w_phi[k] * s;
                }
            }
        }
        self.project(&y)
    }

    pub fn mass_diag(&self) -> Vec<f64> {
        let g = &self.grid;
        (0..g.nodes() * self.dof)
            .map(|idx| self.weights.mass[idx / self.dof / g.n_theta])
            .collect()
    }

    /// `K x = D¹ᵀ W D¹ x`.
    pub fn apply_k(&self, x: &[f64]) -> Vec<f64> {
        self.matrix.apply(x)
    }

    /// `ℒ x = M⁻¹ K x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.apply_k(x).iter().zip(self.mass_diag()).map(|(a, m)| a / m).collect()
    }

    pub fn energy(&self, x: &[f64]) -> f64 {
        let d = self.d1(x);
        self.weights.inner(&d, &d)
    }

    /// Solves `K x = b`.
    pub fn solve_k(&self, b: &[f64], tol: f64) -> Result<(Vec<f64>, usize, f64)> {
        let bn = dot(b, b).sqrt();
        if bn == 0.0 {
            return Ok((vec![0.0; b.len()], 0, 0.0));
        }
        match &self.factor {
            Some(f) => {
                let mut x = f.solve(b);
                let mut iters = 1;
                let mut rel = self.relres(&x, b, bn);
                while rel > tol && iters < 4 {
                    let r: Vec<f64> = b.iter().zip(self.apply_k(&x)).map(|(bi, ki)| bi - ki).collect();
                    let dx = f.solve(&r);
                    x.iter_mut().zip(dx).for_each(|(a, d)| *a += d);
                    rel = self.relres(&x, b, bn);
                    iters += 1;
                }
                if rel > tol {
                    return Err(LabError::NonConvergence {
                        what: "direct gauge solve",
                        iterations: iters,
                        residual: rel,
                    });
                }
                Ok((x, iters, rel))
            }
            None => {
                let out = pcg(|x| self.apply_k(x), &self.matrix.diagonal(), b, tol, 20 * b.len())?;
                Ok((out.x, out.iterations, out.relative_residual))
            }
        }
    }

    /// Conjugate-gradient solve of `K x = b`, bypassing the factorization.
    pub fn solve_k_iterative(&self, b: &[f64], tol: f64, max_iter: usize) -> Result<(Vec<f64>, usize, f64)> {
        let out = pcg(|x| self.apply_k(x), &self.matrix.diagonal(), b, tol, max_iter)?;
        Ok((out.x, out.iterations, out.relative_residual))
    }

    fn relres(&self, x: &[f64], b: &[f64], bn: f64) -> f64 {
        let kx = self.apply_k(x);
        let r: f64 = b.iter().zip(&kx).map(|(a, c)| (a - c) * (a - c)).sum();
        r.sqrt() / bn
    }

    pub fn field_to_coords(&self, f: &MatrixField) -> Vec<f64> {
        let y: Vec<f64> = f.components[0].iter().flat_map(su2::su_coords).collect();
        self.project_coords(&y)
    }

    pub fn coords_to_field(&self, x: &[f64]) -> MatrixField {
        let mut f = MatrixField::zeros(&self.grid, FormDegree::Zero, Symmetry::SkewHermitian);
        for (i, v) in self.lift(x).iter().enumerate() {
            f.components[0][i] = su2::from_su(v);
        }
        f
    }

    /// `‖u‖²` in the mass inner product.
    pub fn mass_norm_sq(&self, x: &[f64]) -> f64 {
        x.iter().zip(self.mass_diag()).map(|(a, m)| a * a * m).sum()
    }

    /// Solves `ℒ_t ξ = rhs` for a 0-form right-hand side.
    pub fn solve(&self, rhs: &MatrixField, tol: f64) -> Result<GaugeSolveResult> {
        self.grid.same_layout(&rhs.grid)?;
        let b: Vec<f64> = self
            .field_to_coords(rhs)
            .iter()
            .zip(self.mass_diag())
            .map(|(a, m)| a * m)
            .collect();
        let (x, iterations, residual_norm) = self.solve_k(&b, tol)?;
        Ok(GaugeSolveResult {
            xi: self.coords_to_field(&x),
            coords: x,
            residual_norm,
            iterations,
        })
    }

    /// Smallest eigenvalue of `ℒ_t` by inverse iteration; its reciprocal is
    /// `‖ℒ_t⁻¹‖` on the mass-weighted L².
    pub fn smallest_eigenvalue(&self, iterations: usize) -> Result<f64> {
        let m = self.mass_diag();
        let n = self.unknowns();
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.37).sin()).collect();
        let mut lambda = 0.0;
        for _ in 0..iterations {
            let b: Vec<f64> = x.iter().zip(&m).map(|(a, mi)| a * mi).collect();
            let (y, _, _) = self.solve_k(&b, 1e-10)?;
            let nrm = self.mass_norm_sq(&y).sqrt();
            x = y.iter().map(|v| v / nrm).collect();
            let kx = self.apply_k(&x);
            let next = dot(&x, &kx);
            if (next - lambda).abs() <= 1e-12 * next.abs() {
                return Ok(next);
            }
            lambda = next;
        }
        Ok(lambda)
    }
}

fn add_block(dst: &mut DMatrix<f64>, r0: usize, c0: usize, src: &DMatrix<f64>) {
    let mut v = dst.view_mut((r0, c0), (src.nrows(), src.ncols()));
    v += src;
}

pub fn solve_lt(op: &LinearOp, rhs: &MatrixField, tol: f64) -> Result<GaugeSolveResult> {
    op.solve(rhs, tol)
}

/// `M⁻¹ D¹ᵀ W v` as a 0-form: the discrete `d_A*α − 2π^{skew}(i*[Φ*∧φ])`.
pub fn coulomb_residual(op: &LinearOp, v: &TangentPair) -> Result<MatrixField> {
    op.grid.same_layout(&v.grid)?;
    let y = op.d1_adjoint(&TangentCoords::from_pair(v));
    let x: Vec<f64> = y.iter().zip(op.mass_diag()).map(|(a, m)| a / m).collect();
    Ok(op.coords_to_field(&x))
}

/// Mass-weighted norm of the Coulomb residual of `v`.
pub fn coulomb_norm(op: &LinearOp, v: &TangentCoords) -> f64 {
    let y = op.d1_adjoint(v);
    y.iter().zip(op.mass_diag()).map(|(a, m)| a * a / m).sum::<f64>().sqrt()
}

#[derive(Debug, Clone)]
pub struct GaugeFixed {
    pub coords: TangentCoords,
    pub result: GaugeSolveResult,
    /// Coulomb residual after the fix relative to before (or to `‖v‖`,
    /// whichever is larger).
    pub relative_coulomb: f64,
}

/// `v − D¹ξ` with `ℒ_t ξ = M⁻¹ D¹ᵀ W v`.
pub fn gauge_fix_coords(op: &LinearOp, v: &TangentCoords, tol: f64) -> Result<GaugeFixed> {
    let b = op.d1_adjoint(v);
    let before = b.iter().zip(op.mass_diag()).map(|(a, m)| a * a / m).sum::<f64>().sqrt();
    let (x, iterations, residual_norm) = op.solve_k(&b, tol)?;
    let fixed = v.sub(&op.d1(&x));
    let after = coulomb_norm(op, &fixed);
    // An input already in Coulomb gauge has nothing to measure against but
    // its own size.
    let scale = before.max(op.weights.inner(v, v).sqrt());
    let relative_coulomb = if scale > 0.0 { after / scale } else { after };
    if relative_coulomb > tol.max(1e-12) * 10.0 {
        return Err(LabError::NonConvergence {
            what: "Coulomb gauge fix",
            iterations,
            residual: relative_coulomb,
        });
    }
    Ok(GaugeFixed {
        coords: fixed,
        result: GaugeSolveResult {
            xi: op.coords_to_field(&x),
            coords: x,
            residual_norm,
            iterations,
        },
        relative_coulomb,
    })
}

pub fn gauge_fix(op: &LinearOp, v: &TangentPair, tol: f64) -> Result<(TangentPair, GaugeSolveResult)> {
    op.grid.same_layout(&v.grid)?;
    let out = gauge_fix_coords(op, &TangentCoords::from_pair(v), tol)?;
    let mut tp = out.coords.to_pair(&v.grid);
    tp.gauged = true;
    tp.scale = v.scale;
    Ok((tp, out.result))
}

/// Right-hand side profile for Green-kernel scaling checks, a function of
/// the scaled radius `ϱ = t^{2/3} r` and the angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PacketSpec {
    /// `e^{-ϱ^{3/2}} (e1 + ½ cos θ e2)`.
    Exponential,
    /// `ϱ e^{-ϱ^{3/2}} (sin θ e1 + e3)`.
    Dipole,
}

impl PacketSpec {
    pub fn eval(&self, varrho: f64, theta: f64) -> Mat2 {
        let env = (-varrho.powf(1.5)).exp();
        match self {
            PacketSpec::Exponential => su2::from_su(&[env, 0.5 * env * theta.cos(), 0.0]),
            PacketSpec::Dipole => su2::from_su(&[varrho * env * theta.sin(), 0.0, varrho * env]),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GreenScalingReport {
    pub t: f64,
    pub t_scaled: f64,
    pub max_relative_deviation: f64,
    pub solution_sup: f64,
}

/// Solves `ℒ_t ξ = packet(t^{2/3} r)` at `t` on `grid` and at
/// `t′ = factor·t` on the disk shrunk by `factor^{-2/3}`, where the two
/// problems share scaled nodes, and compares `t^{4/3} ξ_t` with
/// `t′^{4/3} ξ_{t′}` node by node.
pub fn verify_green_scaling(
    table: &PainleveTable,
    t: f64,
    factor: f64,
    packet: PacketSpec,
    grid: &PolarGrid,
) -> Result<GreenScalingReport> {
    if !(factor >= 1.0) {
        return Err(LabError::Config(format!("scaling factor must be >= 1, got {factor}")));
    }
    let t2 = factor * t;
    let g2 = grid.scaled(factor.powf(-2.0 / 3.0));
    let solve = |tt: f64, g: &PolarGrid| -> Result<Vec<f64>> {
        let pair = crate::fields::fiducial_solution(table, tt, g)?;
        let op = assemble_lt(&pair, tt)?;
        let s = tt.powf(2.0 / 3.0);
        let rhs = MatrixField::sample(g, FormDegree::Zero, Symmetry::SkewHermitian, |r, th| {
            vec![packet.eval(s * r, th)]
        });
        let out = op.solve(&rhs, 1e-12)?;
        Ok(out.coords.iter().map(|v| v * tt.powf(4.0 / 3.0)).collect())
    };
    let a = solve(t, grid)?;
    let b = solve(t2, &g2)?;
    let sup = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let dev = a.iter().zip(&b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    Ok(GreenScalingReport {
        t,
        t_scaled: t2,
        max_relative_deviation: if sup > 0.0 { dev / sup } else { dev },
        solution_sup: sup,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NewtonReport {
    pub residual_history: Vec<f64>,
    pub distance_sup: f64,
    pub holomorphic_defect_sup: f64,
}

/// Newton correction of an approximate pair over `q = z dz²` to an exact
/// solution.
///
/// The approximate pair's holomorphic defect `∂̄_A Φ` is invariant under
/// complex gauge transformations, so the connection is first replaced by the
/// Chern connection of the Higgs field (a change confined to the cutoff
/// annulus); the moment map is then solved for a hermitian gauge
/// `γ = u(r) diag(1,−1)`, which shifts the Higgs exponent by `2u` and the
/// connection coefficient by `2 r u′`. The Jacobian is the diagonal block
/// of `ℒ_t` restricted to rotationally symmetric fields.
pub fn newton_correct(
    table: &PainleveTable,
    pair: &HiggsPair,
    chi: &CutoffSpec,
    tol: f64,
) -> Result<(HiggsPair, NewtonReport)> {
    let prof = pair
        .radial
        .as_ref()
        .ok_or_else(|| LabError::Unsupported("Newton correction needs a pair over q = z dz²".into()))?;
    let g = pair.grid;
    let t = pair.t;
    if !t.is_finite() {
        return Err(LabError::Unsupported("the limiting pair has no Newton correction".into()));
    }
    let n = g.n_r;
    let rs = g.radii();
    let t2 = t * t;
    // Moment residual of the Chern-connection pair divided by r, from the
    // profile; exactly zero where χ is 0 or 1.
    let mut base = vec![0.0; n];
    let mut hh = vec![0.0; n];
    let mut c_chern = vec![0.0; n];
    for k in 0..n {
        let r = rs[k];
        let x = chi.chi(r);
        if x == 0.0 {
            c_chern[k] = 0.5;
            continue;
        }
        let p = table.profile_eval(t, r)?;
        let (dx, ddx) = (chi.dchi(r), chi.d2chi(r));
        let dh = p.r_dh / r;
        hh[k] = x * p.h;
        c_chern[k] = 0.5 + x * p.r_dh + r * dx * p.h;
        base[k] = -((dx + r * ddx) * p.h + 2.0 * r * dx * dh) / (2.0 * r) - 4.0 * x * t2 * r * (2.0 * p.h).sinh()
            + 4.0 * t2 * r * (2.0 * hh[k]).sinh();
    }
    let mut u = vec![0.0; n];
    let mut history = Vec::new();
    let flux: Vec<f64> = (0..n).map(|k| g.flux_radius(k) / g.centre_gap(k)).collect();
    let cell: Vec<f64> = (0..n)
        .map(|k| rs[k] * g.area(k) / (rs[k] * g.dtheta()))
        .collect();
    let residual = |u: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|k| {
                let out = flux[k] * ((if k + 1 < n { u[k + 1] } else { 0.0 }) - u[k]);
                let inn = if k > 0 { flux[k - 1] * (u[k] - u[k - 1]) } else { 0.0 };
                let lap = (out - inn) / cell[k];
                base[k] - lap + 4.0 * t2 * rs[k] * ((2.0 * hh[k] + 4.0 * u[k]).sinh() - (2.0 * hh[k]).sinh())
            })
            .collect()
    };
    let sup = |v: &[f64]| v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut res = residual(&u);
    history.push(sup(&res));
    let mut converged = history[0] <= tol;
    for _ in 0..30 {
        if converged {
            break;
        }
        let mut lo = vec![0.0; n];
        let mut di = vec![0.0; n];
        let mut up = vec![0.0; n];
        for k in 0..n {
            di[k] = (flux[k] + if k > 0 { flux[k - 1] } else { 0.0 }) / cell[k]
                + 16.0 * t2 * rs[k] * (2.0 * hh[k] + 4.0 * u[k]).cosh();
            if k > 0 {
                lo[k] = -flux[k - 1] / cell[k];
            }
            if k + 1 < n {
                up[k] = -flux[k] / cell[k];
            }
        }
        let rhs: Vec<f64> = res.iter().map(|v| -v).collect();
        let du = solve_tridiagonal(&lo, &di, &up, &rhs);
        u.iter_mut().zip(&du).for_each(|(a, d)| *a += d);
        res = residual(&u);
        let r = sup(&res);
        let prev = *history.last().unwrap_or(&f64::INFINITY);
        history.push(r);
        if !r.is_finite() || (r > prev && r > tol) {
            return Err(LabError::NonConvergence {
                what: "Newton correction (increase t)",
                iterations: history.len() - 1,
                residual: r,
            });
        }
        if r <= tol {
            converged = true;
        }
    }
    if !converged {
        return Err(LabError::NonConvergence {
            what: "Newton correction (increase t)",
            iterations: history.len() - 1,
            residual: *history.last().unwrap_or(&f64::NAN),
        });
    }
    let du: Vec<f64> = (0..n)
        .map(|k| {
            // Centred derivative of u matching the flux stencil.
            let up = if k + 1 < n { (u[k + 1] - u[k]) / g.centre_gap(k) } else { -u[k] / g.centre_gap(k) };
            let dn = if k > 0 { (u[k] - u[k - 1]) / g.centre_gap(k - 1) } else { up };
            0.5 * (up + dn)
        })
        .collect();
    let corrected = RadialProfile {
        c: (0..n).map(|k| c_chern[k] + 2.0 * rs[k] * du[k]).collect(),
        h: (0..n).map(|k| prof.h[k] + 2.0 * u[k]).collect(),
    };
    let out = HiggsPair::from_radial(&g, t, PairKind::Corrected, corrected);
    let dist_a = out.a.sub(&pair.a)?.sup_norm();
    let dist_p = out.phi.sub(&pair.phi)?.sup_norm();
    let hol = crate::fields::hitchin_residual(pair, t)?;
    Ok((
        out,
        NewtonReport {
            residual_history: history,
            distance_sup: dist_a.max(dist_p),
            holomorphic_defect_sup: hol.holomorphic.sup_norm(),
        },
    ))
}
