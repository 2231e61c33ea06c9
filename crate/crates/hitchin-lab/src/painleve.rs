//! The decaying Painlevé III profile ψ(ρ) and the desingularizing
//! profiles `h_t`, `f_t` built from it.
//!
//! ψ solves `(ρ∂_ρ)²ψ = ½ρ² sinh 2ψ`, behaves like `-(1/3) log ρ` at the
//! origin and like a multiple of `K₀(ρ)` at infinity. The equation is
//! solved in `s = log ρ` with a Numerov (fourth-order compact) scheme and a
//! damped Newton iteration on the resulting tridiagonal system.

use crate::error::{LabError, Result};
use crate::special::{bessel_k0, bessel_k1};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// Far-field amplitude of the decaying solution with log-slope −1/3 at the
/// origin: ψ ~ A·K₀(ρ) with A = 1/π.
pub const FAR_FIELD_AMPLITUDE: f64 = std::f64::consts::FRAC_1_PI;

pub const DEFAULT_RHO_MIN: f64 = 1e-6;
pub const DEFAULT_RHO_MAX: f64 = 16.0;
pub const DEFAULT_GRID: usize = 8192;
pub const DEFAULT_TOL: f64 = 1e-8;

const CACHE_TAG: &str = "PSITAB v1";
const MAX_NEWTON: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub rho_min: f64,
    pub rho_max: f64,
    pub solver_tol: f64,
    pub grid_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PainleveTable {
    pub rho_grid: Vec<f64>,
    pub psi: Vec<f64>,
    pub rho_dpsi: Vec<f64>,
    pub meta: TableMeta,
    /// Max discrete ODE residual over interior nodes, in units of ψ_ss.
    pub max_residual: f64,
    s_min: f64,
    ds: f64,
}

/// Boundary condition for the radial problem in `s = log ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Prescribed log-slope `ρψ′`.
    Slope(f64),
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileEval {
    pub h: f64,
    pub r_dh: f64,
    pub f: f64,
    pub df: f64,
}

fn source(s: f64, psi: f64) -> (f64, f64) {
    let w = 0.5 * (2.0 * s).exp();
    let (sh, ch) = ((2.0 * psi).sinh(), (2.0 * psi).cosh());
    (w * sh, 2.0 * w * ch)
}

/// Solves `ψ_ss = ½e^{2s} sinh 2ψ` on a uniform grid in `s`.
///
/// Returns node values and the max interior residual.
pub fn solve_radial_bvp(
    s_min: f64,
    s_max: f64,
    n: usize,
    left: Boundary,
    right: Boundary,
    guess: &[f64],
    tol: f64,
) -> Result<(Vec<f64>, f64)> {
    if n < 8 || guess.len() != n || !(s_max > s_min) {
        return Err(LabError::Config(format!(
            "radial BVP needs n >= 8 nodes matching the guess and s_max > s_min (n = {n})"
        )));
    }
    let ds = (s_max - s_min) / (n - 1) as f64;
    let s_at = |i: isize| s_min + i as f64 * ds;
    let mut psi = guess.to_vec();
    if let Boundary::Value(v) = left {
        psi[0] = v;
    }
    if let Boundary::Value(v) = right {
        psi[n - 1] = v;
    }
    let k = ds * ds / 12.0;

    let residual = |psi: &[f64], jac: Option<(&mut [f64], &mut [f64], &mut [f64])>| -> Vec<f64> {
        let mut f = vec![0.0; n];
        let g: Vec<(f64, f64)> = (0..n).map(|i| source(s_at(i as isize), psi[i])).collect();
        let (mut lo, mut di, mut up) = match jac {
            Some((a, b, c)) => (Some(a), Some(b), Some(c)),
            None => (None, None, None),
        };
        for i in 0..n {
            let fixed = (i == 0 && matches!(left, Boundary::Value(_)))
                || (i == n - 1 && matches!(right, Boundary::Value(_)));
            if fixed {
                f[i] = 0.0;
                if let Some(d) = di.as_deref_mut() {
                    d[i] = 1.0;
                }
                continue;
            }
            let (prev, gprev, dprev_dself, dprev_dnext, dgprev) = if i == 0 {
                let Boundary::Slope(sl) = left else { unreachable!() };
                let ghost = psi[1] - 2.0 * ds * sl;
                let (gg, dg) = source(s_at(-1), ghost);
                (ghost, gg, 0.0, 1.0, dg)
            } else {
                (psi[i - 1], g[i - 1].0, 0.0, 0.0, g[i - 1].1)
            };
            let (next, gnext, dgnext) = if i == n - 1 {
                let Boundary::Slope(sl) = right else { unreachable!() };
                let ghost = psi[n - 2] + 2.0 * ds * sl;
                let (gg, dg) = source(s_at(n as isize), ghost);
                (ghost, gg, dg)
            } else {
                (psi[i + 1], g[i + 1].0, g[i + 1].1)
            };
            f[i] = next - 2.0 * psi[i] + prev - k * (gnext + 10.0 * g[i].0 + gprev);
            if let (Some(a), Some(b), Some(c)) = (lo.as_deref_mut(), di.as_deref_mut(), up.as_deref_mut()) {
                b[i] = -2.0 - 10.0 * k * g[i].1 + dprev_dself;
                if i == 0 {
                    c[i] = 1.0 - k * dgnext + dprev_dnext * (1.0 - k * dgprev);
                } else if i == n - 1 {
                    a[i] = 2.0 - k * (dgprev + dgnext);
                } else {
                    a[i] = 1.0 - k * dgprev;
                    c[i] = 1.0 - k * dgnext;
                }
            }
        }
        f
    };
    let inf_norm = |f: &[f64]| f.iter().fold(0.0_f64, |m, v| m.max(v.abs())) / (ds * ds);

    let mut lo = vec![0.0; n];
    let mut di = vec![0.0; n];
    let mut up = vec![0.0; n];
    let mut f = residual(&psi, Some((&mut lo, &mut di, &mut up)));
    let mut res = inf_norm(&f);
    let mut last_update = f64::INFINITY;
    for _ in 0..MAX_NEWTON {
        if res < tol * 1e-2 {
            break;
        }
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let delta = solve_tridiagonal(&lo, &di, &up, &rhs);
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<f64> = psi.iter().zip(&delta).map(|(p, d)| p + step * d).collect();
            let ft = residual(&trial, None);
            let rt = inf_norm(&ft);
            if rt < res || rt < tol * 1e-2 {
                last_update = step * delta.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
                psi = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            last_update = last_update.min(delta.iter().fold(0.0_f64, |m, d| m.max(d.abs())));
            break;
        }
        f = residual(&psi, Some((&mut lo, &mut di, &mut up)));
        res = inf_norm(&f);
    }
    // The residual is measured in units of ψ_ss, so its roundoff floor
    // grows like 1/Δs². A tolerance below that floor is met once Newton
    // stalls with updates at roundoff size.
    let scale = psi.iter().fold(1.0_f64, |m, p| m.max(p.abs()));
    let stalled = last_update <= 1e-10 * scale;
    if !(res <= tol || (res.is_finite() && stalled)) {
        return Err(LabError::NonConvergence {
            what: "Painlevé Newton solve",
            iterations: MAX_NEWTON,
            residual: res,
        });
    }
    Ok((psi, res))
}

/// Thomas algorithm; `lo[0]` and `up[n-1]` are ignored.
pub fn solve_tridiagonal(lo: &[f64], di: &[f64], up: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = di.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = up[0] / di[0];
    d[0] = rhs[0] / di[0];
    for i in 1..n {
        let m = di[i] - lo[i] * c[i - 1];
        c[i] = if i + 1 < n { up[i] / m } else { 0.0 };
        d[i] = (rhs[i] - lo[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

fn initial_guess(s: &[f64]) -> Vec<f64> {
    s.iter()
        .map(|&si| {
            let rho = si.exp();
            let w = 0.5 * (1.0 + (4.0 * si).tanh());
            let near = (-si / 3.0).max(0.0);
            let far = FAR_FIELD_AMPLITUDE * bessel_k0(rho).unwrap_or(0.0);
            (1.0 - w) * near + w * far
        })
        .collect()
}

pub fn solve_psi(rho_min: f64, rho_max: f64, n: usize, tol: f64) -> Result<PainleveTable> {
    if !(rho_min > 0.0 && rho_min < 1.0 && rho_max > 1.0) || n < 512 || !(tol > 0.0) {
        return Err(LabError::Config(format!(
            "solve_psi needs 0 < rho_min < 1 < rho_max, n >= 512 and tol > 0 (got {rho_min}, {rho_max}, {n}, {tol})"
        )));
    }
    let (s_min, s_max) = (rho_min.ln(), rho_max.ln());
    let ds = (s_max - s_min) / (n - 1) as f64;
    let s: Vec<f64> = (0..n).map(|i| s_min + i as f64 * ds).collect();
    let far = FAR_FIELD_AMPLITUDE * bessel_k0(rho_max)?;
    let guess = initial_guess(&s);
    // The Robin slope carries the first correction of the small-ρ
    // expansion, −1/3 + (3/16) e^{2C} ρ^{4/3}, so values below rho_min join
    // continuously. C depends on the solution; two passes settle it.
    let mut slope = -1.0 / 3.0;
    let mut solved = solve_radial_bvp(s_min, s_max, n, Boundary::Slope(slope), Boundary::Value(far), &guess, tol)?;
    for _ in 0..3 {
        let c = solved.0[0] + s_min / 3.0;
        let next = -1.0 / 3.0 + 3.0 / 16.0 * (2.0 * c).exp() * rho_min.powf(4.0 / 3.0);
        if (next - slope).abs() <= 1e-15 {
            break;
        }
        slope = next;
        solved = solve_radial_bvp(s_min, s_max, n, Boundary::Slope(slope), Boundary::Value(far), &solved.0, tol)?;
    }
    let psi = solved.0;
    let rho_dpsi = node_slopes(&s, &psi, slope);
    let mut table = PainleveTable {
        rho_grid: s.iter().map(|v| v.exp()).collect(),
        psi,
        rho_dpsi,
        meta: TableMeta {
            rho_min,
            rho_max,
            solver_tol: tol,
            grid_size: n,
        },
        max_residual: 0.0,
        s_min,
        ds,
    };
    // Same measure a reloaded table gets, so a cache round trip is exact.
    table.max_residual = table.max_discrete_residual();
    Ok(table)
}

/// Fourth-order node derivatives consistent with the Numerov stencil.
fn node_slopes(s: &[f64], psi: &[f64], left_slope: f64) -> Vec<f64> {
    let n = s.len();
    let ds = s[1] - s[0];
    let g: Vec<f64> = s.iter().zip(psi).map(|(&si, &p)| source(si, p).0).collect();
    let mut out = vec![0.0; n];
    out[0] = left_slope;
    for i in 1..n - 1 {
        out[i] = (psi[i + 1] - psi[i - 1]) / (2.0 * ds) - ds / 12.0 * (g[i + 1] - g[i - 1]);
    }
    out[n - 1] = (psi[n - 1] - psi[n - 2]) / ds + ds / 6.0 * (2.0 * g[n - 1] + g[n - 2]);
    out
}

fn hermite(y0: f64, d0: f64, y1: f64, d1: f64, h: f64, u: f64) -> (f64, f64) {
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    let val = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    let dv = ((6.0 * u2 - 6.0 * u) * y0 + (3.0 * u2 - 4.0 * u + 1.0) * h * d0 + (-6.0 * u2 + 6.0 * u) * y1
        + (3.0 * u2 - 2.0 * u) * h * d1)
        / h;
    (val, dv)
}

impl PainleveTable {
    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    /// Limit of ψ + (1/3) log ρ at the origin, read off the first node.
    pub fn small_rho_constant(&self) -> f64 {
        let raw = self.psi[0] + self.s_min / 3.0;
        raw - 9.0 / 64.0 * (2.0 * raw).exp() * self.meta.rho_min.powf(4.0 / 3.0)
    }

    /// Coefficient `a` in ψ ≈ C − (1/3)log ρ + a ρ^{4/3} near the origin.
    fn small_rho_correction(&self) -> f64 {
        0.25 * (2.0 * self.small_rho_constant()).exp() * 9.0 / 16.0
    }

    /// Returns `(ψ, ρψ′, d(ρψ′)/d log ρ)`.
    pub fn eval_full(&self, rho: f64) -> Result<(f64, f64, f64)> {
        if !(rho > 0.0) || rho.is_nan() {
            return Err(LabError::Domain(format!("ψ needs rho > 0, got {rho}")));
        }
        let TableMeta { rho_min, rho_max, .. } = self.meta;
        if rho < rho_min {
            let a = self.small_rho_correction();
            let p = rho.powf(4.0 / 3.0);
            let c = self.small_rho_constant();
            return Ok((c - rho.ln() / 3.0 + a * p, -1.0 / 3.0 + 4.0 / 3.0 * a * p, 16.0 / 9.0 * a * p));
        }
        if rho > rho_max {
            if rho > 700.0 {
                return Ok((0.0, 0.0, 0.0));
            }
            let k0 = bessel_k0(rho)?;
            let k1 = bessel_k1(rho)?;
            let a = FAR_FIELD_AMPLITUDE;
            return Ok((a * k0, -a * rho * k1, a * rho * rho * k0));
        }
        let n = self.len();
        let x = (rho.ln() - self.s_min) / self.ds;
        let i = (x.floor() as usize).min(n - 2);
        let u = (x - i as f64).clamp(0.0, 1.0);
        let g = |j: usize| source(self.s_min + j as f64 * self.ds, self.psi[j]).0;
        let (p, _) = hermite(self.psi[i], self.rho_dpsi[i], self.psi[i + 1], self.rho_dpsi[i + 1], self.ds, u);
        let (d, dd) = hermite(self.rho_dpsi[i], g(i), self.rho_dpsi[i + 1], g(i + 1), self.ds, u);
        Ok((p, d, dd))
    }

    pub fn eval_psi(&self, rho: f64) -> Result<(f64, f64)> {
        let (p, d, _) = self.eval_full(rho)?;
        Ok((p, d))
    }

    /// `h_t(r)`, `r h_t′(r)`, `f_t(r)` and `f_t′(r)` with ρ = (8/3) t r^{3/2}.
    pub fn profile_eval(&self, t: f64, r: f64) -> Result<ProfileEval> {
        if !(t > 0.0) || !(r >= 0.0) {
            return Err(LabError::Domain(format!("profile needs t > 0 and r >= 0, got t={t}, r={r}")));
        }
        if r == 0.0 {
            return Ok(ProfileEval {
                h: f64::INFINITY,
                r_dh: -0.5,
                f: 0.0,
                df: 0.0,
            });
        }
        let rho = 8.0 / 3.0 * t * r.powf(1.5);
        let (psi, rdp, drdp) = self.eval_full(rho)?;
        let r_dh = 1.5 * rdp;
        let f = 0.125 + 0.25 * r_dh;
        let df = 0.25 * 1.5 * drdp * 1.5 / r;
        Ok(ProfileEval { h: psi, r_dh, f, df })
    }

    pub fn to_cache_string(&self) -> String {
        let mut out = String::with_capacity(self.len() * 72);
        let m = &self.meta;
        let _ = writeln!(
            out,
            "{CACHE_TAG} {:.16e} {:.16e} {} {:.16e}",
            m.rho_min, m.rho_max, m.grid_size, m.solver_tol
        );
        for i in 0..self.len() {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", self.rho_grid[i], self.psi[i], self.rho_dpsi[i]);
        }
        out
    }

    pub fn from_cache_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| LabError::Parse("empty table cache".into()))?;
        let rest = header
            .strip_prefix(CACHE_TAG)
            .ok_or_else(|| LabError::Parse(format!("bad cache header: {header}")))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(LabError::Parse(format!("bad cache header: {header}")));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| LabError::Parse(format!("{s}: {e}")));
        let rho_min = num(fields[0])?;
        let rho_max = num(fields[1])?;
        let n: usize = fields[2].parse().map_err(|e| LabError::Parse(format!("{}: {e}", fields[2])))?;
        let tol = num(fields[3])?;
        let mut rho_grid = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        let mut rho_dpsi = Vec::with_capacity(n);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(LabError::Parse(format!("bad cache row: {line}")));
            }
            rho_grid.push(num(cols[0])?);
            psi.push(num(cols[1])?);
            rho_dpsi.push(num(cols[2])?);
        }
        if psi.len() != n || n < 2 {
            return Err(LabError::Parse(format!("cache declares {n} rows, found {}", psi.len())));
        }
        let (s_min, s_max) = (rho_min.ln(), rho_max.ln());
        let ds = (s_max - s_min) / (n - 1) as f64;
        let mut table = PainleveTable {
            rho_grid,
            psi,
            rho_dpsi,
            meta: TableMeta {
                rho_min,
                rho_max,
                solver_tol: tol,
                grid_size: n,
            },
            max_residual: 0.0,
            s_min,
            ds,
        };
        table.max_residual = table.max_discrete_residual();
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
        }
        std::fs::write(path, self.to_cache_string()).map_err(|e| LabError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::from_cache_str(&text)
    }

    pub fn max_discrete_residual(&self) -> f64 {
        self.discrete_residuals().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Numerov residual `(ψ_{i+1} − 2ψ_i + ψ_{i−1})/Δ² − (g_{i+1} + 10g_i + g_{i−1})/12`
    /// at interior nodes.
    pub fn discrete_residuals(&self) -> Vec<f64> {
        let n = self.len();
        let g: Vec<f64> = (0..n).map(|j| source(self.s_min + j as f64 * self.ds, self.psi[j]).0).collect();
        let d2 = self.ds * self.ds;
        (1..n - 1)
            .map(|i| {
                (self.psi[i + 1] - 2.0 * self.psi[i] + self.psi[i - 1]) / d2
                    - (g[i + 1] + 10.0 * g[i] + g[i - 1]) / 12.0
            })
            .collect()
    }

    pub fn log_grid(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.s_min + i as f64 * self.ds)
    }
}

/// File name used for a cached table.
pub fn cache_file_name(rho_min: f64, rho_max: f64, n: usize, tol: f64) -> String {
    format!("psitab_v1_{rho_min:e}_{rho_max:e}_{n}_{tol:e}.csv")
}

/// Loads a cached table if present and matching, otherwise solves and writes it.
pub fn cached_psi(dir: &Path, rho_min: f64, rho_max: f64, n: usize, tol: f64) -> Result<PainleveTable> {
    let path = dir.join(cache_file_name(rho_min, rho_max, n, tol));
    if let Ok(t) = PainleveTable::load(&path) {
        let m = t.meta;
        if m.rho_min == rho_min && m.rho_max == rho_max && m.grid_size == n && m.solver_tol == tol {
            return Ok(t);
        }
    }
    let t = solve_psi(rho_min, rho_max, n, tol)?;
    t.save(&path)?;
    Ok(t)
}

/// Process-wide default table, solved once.
pub fn default_table() -> &'static PainleveTable {
    static TABLE: std::sync::OnceLock<PainleveTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        solve_psi(DEFAULT_RHO_MIN, DEFAULT_RHO_MAX, DEFAULT_GRID, DEFAULT_TOL).expect("default Painlevé table")
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub f_min: f64,
    pub f_max: f64,
    pub monotone_r_violations: usize,
    pub monotone_t_violations: usize,
    pub slope_sup_f_over_r: f64,
    pub slope_sup_f_over_r2: f64,
    pub max_double_zero_ratio: f64,
    pub sup_weighted_higgs: Vec<f64>,
}

/// Sweeps `f_t` over the grids and fits the growth of `sup r^{-1} f_t` and
/// `sup r^{-2} f_t` against `t`.
pub fn verify_ft_properties(table: &PainleveTable, t_grid: &[f64], r_grid: &[f64]) -> Result<PropertyReport> {
    if t_grid.len() < 2 || r_grid.len() < 2 {
        return Err(LabError::Config("property sweep needs at least two t and r values".into()));
    }
    let mut f_min = f64::INFINITY;
    let mut f_max = f64::NEG_INFINITY;
    let mut mono_r = 0;
    let mut mono_t = 0;
    let mut sup1 = Vec::new();
    let mut sup2 = Vec::new();
    let mut weighted = Vec::new();
    let mut ratio: f64 = 0.0;
    let mut prev_row: Option<Vec<f64>> = None;
    for &t in t_grid {
        let mut row = Vec::with_capacity(r_grid.len());
        let (mut s1, mut s2, mut w): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for &r in r_grid {
            let p = table.profile_eval(t, r)?;
            f_min = f_min.min(p.f);
            f_max = f_max.max(p.f);
            if r > 0.0 {
                s1 = s1.max(p.f / r);
                s2 = s2.max(p.f / (r * r));
                w = w.max(r.sqrt() * p.h.abs().exp());
            }
            row.push(p.f);
        }
        mono_r += row.windows(2).filter(|p| p[1] < p[0]).count();
        if let Some(prev) = &prev_row {
            mono_t += prev.iter().zip(&row).filter(|(a, b)| b < a).count();
        }
        let small: Vec<f64> = r_grid.iter().copied().filter(|&r| r > 0.0).take(4).collect();
        for r in small {
            ratio = ratio.max(table.profile_eval(t, r)?.f / (r * r));
        }
        sup1.push((t, s1));
        sup2.push((t, s2));
        weighted.push(w);
        prev_row = Some(row);
    }
    let slope = |pts: &[(f64, f64)]| -> f64 {
        let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
        crate::asymptotics::linear_fit(&xs, &ys).0
    };
    Ok(PropertyReport {
        f_min,
        f_max,
        monotone_r_violations: mono_r,
        monotone_t_violations: mono_t,
        slope_sup_f_over_r: slope(&sup1),
        slope_sup_f_over_r2: slope(&sup2),
        max_double_zero_ratio: ratio,
        sup_weighted_higgs: weighted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_solves_known_system() {
        let lo = [0.0, -1.0, -1.0, -1.0];
        let di = [2.0, 2.0, 2.0, 2.0];
        let up = [-1.0, -1.0, -1.0, 0.0];
        let x = [1.0, 2.0, 3.0, 4.0];
        let b: Vec<f64> = (0..4)
            .map(|i| {
                di[i] * x[i] + if i > 0 { lo[i] * x[i - 1] } else { 0.0 } + if i < 3 { up[i] * x[i + 1] } else { 0.0 }
            })
            .collect();
        let y = solve_tridiagonal(&lo, &di, &up, &b);
        for i in 0..4 {
            assert!((y[i] - x[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_data_gives_zero_solution() {
        let guess = vec![0.3; 64];
        let (psi, res) =
            solve_radial_bvp(-3.0, 2.0, 64, Boundary::Slope(0.0), Boundary::Value(0.0), &guess, 1e-12).unwrap();
        assert!(res < 1e-12);
        assert!(psi.iter().all(|p| p.abs() < 1e-12));
    }

    #[test]
    fn hermite_reproduces_cubics() {
        let f = |x: f64| 1.0 + 2.0 * x - x * x + 0.5 * x * x * x;
        let df = |x: f64| 2.0 - 2.0 * x + 1.5 * x * x;
        let (a, b, h) = (0.3, 0.8, 0.5);
        for k in 0..=10 {
            let u = k as f64 / 10.0;
            let (v, d) = hermite(f(a), df(a), f(b), df(b), h, u);
            assert!((v - f(a + u * h)).abs() < 1e-14);
            assert!((d - df(a + u * h)).abs() < 1e-13);
        }
    }
}
