//! 2×2 complex matrix helpers and real coordinates on su(2) and sl(2,C).
//!
//! Coordinates are taken against `e1 = diag(i,-i)`, `e2 = [[0,1],[-1,0]]`,
//! `e3 = [[0,i],[i,0]]`; every basis element has `Re Tr(e e*) = 2`.

use nalgebra::Matrix2;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;

pub const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn mat(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
    Matrix2::new(a, b, c, d)
}

pub fn zero() -> Mat2 {
    Mat2::zeros()
}

pub fn offdiag(upper: C64, lower: C64) -> Mat2 {
    mat(ZERO, upper, lower, ZERO)
}

pub fn e1() -> Mat2 {
    mat(I, ZERO, ZERO, -I)
}

pub fn e2() -> Mat2 {
    mat(ZERO, ONE, -ONE, ZERO)
}

pub fn e3() -> Mat2 {
    mat(ZERO, I, I, ZERO)
}

pub fn su_basis() -> [Mat2; 3] {
    [e1(), e2(), e3()]
}

/// Real basis of sl(2,C): the su(2) basis followed by `i` times it.
pub fn sl_basis() -> [Mat2; 6] {
    let [a, b, c] = su_basis();
    [a, b, c, a * I, b * I, c * I]
}

/// `Re Tr(X Y*)`.
pub fn re_inner(x: &Mat2, y: &Mat2) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            s += (x[(i, j)] * y[(i, j)].conj()).re;
        }
    }
    s
}

pub fn norm_sq(x: &Mat2) -> f64 {
    re_inner(x, x)
}

pub fn su_coords(x: &Mat2) -> [f64; 3] {
    let b = su_basis();
    [
        re_inner(x, &b[0]) / 2.0,
        re_inner(x, &b[1]) / 2.0,
        re_inner(x, &b[2]) / 2.0,
    ]
}

pub fn sl_coords(x: &Mat2) -> [f64; 6] {
    let b = sl_basis();
    let mut out = [0.0; 6];
    for (o, e) in out.iter_mut().zip(b.iter()) {
        *o = re_inner(x, e) / 2.0;
    }
    out
}

pub fn from_su(c: &[f64]) -> Mat2 {
    let b = su_basis();
    b[0] * C64::from(c[0]) + b[1] * C64::from(c[1]) + b[2] * C64::from(c[2])
}

pub fn from_sl(c: &[f64]) -> Mat2 {
    let b = sl_basis();
    let mut m = zero();
    for (ci, e) in c.iter().zip(b.iter()) {
        m += e * C64::from(*ci);
    }
    m
}

pub fn commutator(x: &Mat2, y: &Mat2) -> Mat2 {
    x * y - y * x
}

pub fn adjoint(x: &Mat2) -> Mat2 {
    x.adjoint()
}

/// Matrix of `ξ ↦ [X, ξ]` in su(2) coordinates, `m[a][b] = coords([X, e_b])[a]`.
pub fn ad_matrix(x: &Mat2) -> [[f64; 3]; 3] {
    let b = su_basis();
    let mut m = [[0.0; 3]; 3];
    for (col, eb) in b.iter().enumerate() {
        let c = su_coords(&commutator(x, eb));
        for row in 0..3 {
            m[row][col] = c[row];
        }
    }
    m
}

/// Matrix of `ξ ↦ U ξ U⁻¹` in su(2) coordinates.
pub fn conj_matrix(u: &Mat2) -> [[f64; 3]; 3] {
    let b = su_basis();
    let ui = u.try_inverse().expect("invertible transport");
    let mut m = [[0.0; 3]; 3];
    for (col, eb) in b.iter().enumerate() {
        let c = su_coords(&(u * eb * ui));
        for row in 0..3 {
            m[row][col] = c[row];
        }
    }
    m
}

/// Exponential of a skew-hermitian traceless matrix (`X² = -|x|² I`).
pub fn expm_su(x: &Mat2) -> Mat2 {
    let c = su_coords(x);
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    let sinc = if n > 1e-300 { n.sin() / n } else { 1.0 };
    Mat2::identity() * C64::from(n.cos()) + x * C64::from(sinc)
}

pub fn trace(x: &Mat2) -> C64 {
    x[(0, 0)] + x[(1, 1)]
}

pub fn is_skew_hermitian(x: &Mat2, tol: f64) -> bool {
    (x + x.adjoint()).iter().all(|z| z.norm() <= tol)
}

pub fn is_hermitian(x: &Mat2, tol: f64) -> bool {
    (x - x.adjoint()).iter().all(|z| z.norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_round_trip() {
        let x = from_su(&[0.3, -1.2, 2.5]);
        let c = su_coords(&x);
        assert!((c[0] - 0.3).abs() < 1e-15 && (c[1] + 1.2).abs() < 1e-15 && (c[2] - 2.5).abs() < 1e-15);
        let y = from_sl(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let d = sl_coords(&y);
        for (k, v) in d.iter().enumerate() {
            assert!((v - (k as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn exponential_is_unitary() {
        let x = from_su(&[0.7, 0.1, -0.4]);
        let u = expm_su(&x);
        let p = u * u.adjoint();
        assert!((p - Mat2::identity()).norm() < 1e-14);
        let m = conj_matrix(&u);
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn ad_is_antisymmetric() {
        let m = ad_matrix(&from_su(&[0.2, -0.5, 1.1]));
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[i][j] + m[j][i]).abs() < 1e-14);
            }
        }
    }
}
