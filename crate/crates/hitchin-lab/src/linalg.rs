//! Block-tridiagonal Cholesky factorization and preconditioned conjugate
//! gradients for the symmetric positive definite systems of the gauge
//! operator.

use crate::error::{LabError, Result};
use nalgebra::{DMatrix, DVector};

/// Symmetric block-tridiagonal matrix: `diag[k]` and `upper[k] = K_{k,k+1}`.
#[derive(Debug, Clone)]
pub struct BlockTridiag {
    pub diag: Vec<DMatrix<f64>>,
    pub upper: Vec<DMatrix<f64>>,
}

impl BlockTridiag {
    pub fn zeros(blocks: usize, size: usize) -> Self {
        BlockTridiag {
            diag: vec![DMatrix::zeros(size, size); blocks],
            upper: vec![DMatrix::zeros(size, size); blocks.saturating_sub(1)],
        }
    }

    pub fn block_size(&self) -> usize {
        self.diag.first().map_or(0, |d| d.nrows())
    }

    pub fn dim(&self) -> usize {
        self.diag.len() * self.block_size()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.block_size();
        let nb = self.diag.len();
        let mut y = vec![0.0; nb * m];
        for k in 0..nb {
            let xk = DVector::from_column_slice(&x[k * m..(k + 1) * m]);
            let mut yk = &self.diag[k] * &xk;
            if k + 1 < nb {
                yk += &self.upper[k] * DVector::from_column_slice(&x[(k + 1) * m..(k + 2) * m]);
            }
            if k > 0 {
                yk += self.upper[k - 1].transpose() * DVector::from_column_slice(&x[(k - 1) * m..k * m]);
            }
            y[k * m..(k + 1) * m].copy_from_slice(yk.as_slice());
        }
        y
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let m = self.block_size();
        let mut out = Vec::new();
        for (k, d) in self.diag.iter().enumerate() {
            push_block(&mut out, d, k * m, k * m);
        }
        for (k, u) in self.upper.iter().enumerate() {
            push_block(&mut out, u, k * m, (k + 1) * m);
            push_block(&mut out, &u.transpose(), (k + 1) * m, k * m);
        }
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.diag.iter().flat_map(|d| d.diagonal().iter().copied().collect::<Vec<_>>()).collect()
    }
}

fn push_block(out: &mut Vec<(usize, usize, f64)>, b: &DMatrix<f64>, r0: usize, c0: usize) {
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            let v = b[(i, j)];
            if v != 0.0 {
                out.push((r0 + i, c0 + j, v));
            }
        }
    }
}

/// `K = L Lᵀ` with lower block-bidiagonal `L`: diagonal factors `l[k]` and
/// sub-diagonal blocks `c[k] = L_{k+1,k}`.
#[derive(Debug, Clone)]
pub struct BlockCholesky {
    l: Vec<DMatrix<f64>>,
    c: Vec<DMatrix<f64>>,
}

fn cholesky_lower(a: DMatrix<f64>, k: usize) -> Result<DMatrix<f64>> {
    nalgebra::Cholesky::new(a).map(|c| c.unpack()).ok_or_else(|| {
        LabError::Domain(format!("operator is not positive definite (block {k} failed to factor)"))
    })
}

impl BlockCholesky {
    pub fn factor(k: &BlockTridiag) -> Result<Self> {
        let nb = k.diag.len();
        let mut l: Vec<DMatrix<f64>> = Vec::with_capacity(nb);
        let mut c: Vec<DMatrix<f64>> = Vec::with_capacity(nb.saturating_sub(1));
        for b in 0..nb {
            let mut s = k.diag[b].clone();
            if b > 0 {
                let prev = &l[b - 1];
                // C = K_{b,b-1} L_{b-1}^{-T}  ⇔  L_{b-1} Cᵀ = K_{b-1,b}
                let ct = prev
                    .solve_lower_triangular(&k.upper[b - 1])
                    .ok_or_else(|| LabError::Domain("singular block factor".into()))?;
                s -= ct.transpose() * &ct;
                c.push(ct.transpose());
            }
            l.push(cholesky_lower(s, b)?);
        }
        Ok(BlockCholesky { l, c })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let nb = self.l.len();
        let m = self.l[0].nrows();
        let mut y: Vec<DVector<f64>> = Vec::with_capacity(nb);
        for k in 0..nb {
            let mut rhs = DVector::from_column_slice(&b[k * m..(k + 1) * m]);
            if k > 0 {
                rhs -= &self.c[k - 1] * &y[k - 1];
            }
            let yk = self.l[k].solve_lower_triangular(&rhs).expect("nonsingular factor");
            y.push(yk);
        }
        let mut x = vec![DVector::zeros(m); nb];
        for k in (0..nb).rev() {
            let mut rhs = y[k].clone();
            if k + 1 < nb {
                rhs -= self.c[k].transpose() * &x[k + 1];
            }
            x[k] = self.l[k].tr_solve_lower_triangular(&rhs).expect("nonsingular factor");
        }
        x.iter().flat_map(|v| v.iter().copied().collect::<Vec<_>>()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub relative_residual: f64,
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Jacobi-preconditioned conjugate gradients.
pub fn pcg(
    apply: impl Fn(&[f64]) -> Vec<f64>,
    diag: &[f64],
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<CgOutcome> {
    let n = b.len();
    let bnorm = dot(b, b).sqrt();
    if bnorm == 0.0 {
        return Ok(CgOutcome {
            x: vec![0.0; n],
            iterations: 0,
            relative_residual: 0.0,
        });
    }
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(ri, di)| ri / di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for it in 1..=max_iter {
        let ap = apply(&p);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rel = dot(&r, &r).sqrt() / bnorm;
        if rel <= tol {
            return Ok(CgOutcome {
                x,
                iterations: it,
                relative_residual: rel,
            });
        }
        z = r.iter().zip(diag).map(|(ri, di)| ri / di).collect();
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(LabError::NonConvergence {
        what: "conjugate gradients",
        iterations: max_iter,
        residual: dot(&r, &r).sqrt() / bnorm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BlockTridiag {
        let mut k = BlockTridiag::zeros(5, 2);
        for b in 0..5 {
            k.diag[b] = DMatrix::from_row_slice(2, 2, &[4.0 + b as f64, 1.0, 1.0, 3.0]);
        }
        for b in 0..4 {
            k.upper[b] = DMatrix::from_row_slice(2, 2, &[-1.0, 0.2, 0.0, -1.0]);
        }
        k
    }

    #[test]
    fn block_cholesky_inverts_apply() {
        let k = sample();
        let x: Vec<f64> = (0..10).map(|i| (i as f64 * 0.7).sin()).collect();
        let b = k.apply(&x);
        let y = BlockCholesky::factor(&k).unwrap().solve(&b);
        for i in 0..10 {
            assert!((x[i] - y[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn pcg_matches_direct() {
        let k = sample();
        let b: Vec<f64> = (0..10).map(|i| 1.0 + i as f64).collect();
        let direct = BlockCholesky::factor(&k).unwrap().solve(&b);
        let cg = pcg(|x| k.apply(x), &k.diagonal(), &b, 1e-13, 100).unwrap();
        for i in 0..10 {
            assert!((direct[i] - cg.x[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn triplets_are_symmetric() {
        let t = sample().triplets();
        for &(i, j, v) in &t {
            assert!(t.iter().any(|&(a, b, w)| a == j && b == i && (w - v).abs() < 1e-15));
        }
    }
}
