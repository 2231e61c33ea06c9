//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Temme's series below x = 2 and Steed's continued fraction above, both
//! in the form used for `K_ν` with ν = 0.

use crate::error::{LabError, Result};
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-17;

/// Returns `(K₀(x)e^x, K₁(x)e^x)`.
fn k01_scaled(x: f64) -> (f64, f64) {
    if x < 2.0 {
        let x2 = 0.5 * x;
        let mut ff = -EULER_GAMMA - x2.ln();
        let mut sum = ff;
        let mut p = 0.5;
        let mut q = 0.5;
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi);
            c *= d / fi;
            p /= fi;
            q /= fi;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let e = x.exp();
        (sum * e, sum1 * 2.0 / x * e)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAX_ITER {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        let k0 = (PI / (2.0 * x)).sqrt() / s;
        let k1 = k0 * (x + 0.5 - a1 * h) / x;
        (k0, k1)
    }
}

fn check(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(LabError::Domain(format!("Bessel K needs a finite x > 0, got {x}")))
    }
}

pub fn bessel_k0(x: f64) -> Result<f64> {
    check(x)?;
    Ok(k01_scaled(x).0 * (-x).exp())
}

pub fn bessel_k1(x: f64) -> Result<f64> {
    check(x)?;
    Ok(k01_scaled(x).1 * (-x).exp())
}

/// `e^x K₀(x)`, finite for large arguments.
pub fn bessel_k0e(x: f64) -> Result<f64> {
    check(x)?;
    Ok(k01_scaled(x).0)
}

pub fn bessel_k1e(x: f64) -> Result<f64> {
    check(x)?;
    Ok(k01_scaled(x).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(bessel_k0(0.0).is_err());
        assert!(bessel_k0(-1.0).is_err());
        assert!(bessel_k1(f64::NAN).is_err());
    }

    #[test]
    fn branches_agree_at_switch() {
        let lo = k01_scaled(2.0 - 1e-12);
        let hi = k01_scaled(2.0);
        assert!((lo.0 / hi.0 - 1.0).abs() < 1e-12);
        assert!((lo.1 / hi.1 - 1.0).abs() < 1e-12);
    }
}
