//! Infinitesimal deformations of the model pairs: horizontal (variations
//! of `q`), radial (`q̇ = q`), vertical (harmonic one-forms on the spectral
//! cover) and the mixed pairing.

use crate::error::{LabError, Result};
use crate::fields::{self, FormDegree, MatrixField, Symmetry};
use crate::gauge_op::{self, MetricWeights, TangentCoords};
use crate::grid::{polar, CutoffSpec, PolarGrid, QuadDifferentialModel};
use crate::painleve::{PainleveTable, ProfileEval};
use crate::su2::{self, Mat2, C64};
use serde::Serialize;

/// Tangent vector `(α, φ)`: `α_r` at the outer face of each cell, `α_θ`
/// (the `dθ` coefficient) and `φ` (the `dz` coefficient) at centres.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPair {
    pub grid: PolarGrid,
    pub alpha_r: Vec<Mat2>,
    pub alpha_theta: Vec<Mat2>,
    pub phi: Vec<Mat2>,
    pub gauged: bool,
    /// Factor already applied to `α` (e.g. `1/t` for horizontal vectors).
    pub scale: f64,
}

impl TangentPair {
    pub fn sample(
        grid: &PolarGrid,
        alpha_r: impl Fn(f64, f64) -> Mat2,
        alpha_theta: impl Fn(f64, f64) -> Mat2,
        phi: impl Fn(f64, f64) -> Mat2,
    ) -> Self {
        let n = grid.nodes();
        let mut ar = Vec::with_capacity(n);
        let mut at = Vec::with_capacity(n);
        let mut ph = Vec::with_capacity(n);
        for k in 0..grid.n_r {
            let (r, rf) = (grid.r(k), grid.flux_radius(k));
            for j in 0..grid.n_theta {
                let th = grid.theta(j);
                ar.push(alpha_r(rf, th));
                at.push(alpha_theta(r, th));
                ph.push(phi(r, th));
            }
        }
        TangentPair {
            grid: *grid,
            alpha_r: ar,
            alpha_theta: at,
            phi: ph,
            gauged: false,
            scale: 1.0,
        }
    }

    pub fn zeros(grid: &PolarGrid) -> Self {
        let z = vec![su2::zero(); grid.nodes()];
        TangentPair {
            grid: *grid,
            alpha_r: z.clone(),
            alpha_theta: z.clone(),
            phi: z,
            gauged: false,
            scale: 1.0,
        }
    }

    fn zip_with(&self, other: &TangentPair, f: impl Fn(&Mat2, &Mat2) -> Mat2) -> Result<TangentPair> {
        self.grid.same_layout(&other.grid)?;
        let z = |a: &[Mat2], b: &[Mat2]| a.iter().zip(b).map(|(x, y)| f(x, y)).collect::<Vec<_>>();
        Ok(TangentPair {
            alpha_r: z(&self.alpha_r, &other.alpha_r),
            alpha_theta: z(&self.alpha_theta, &other.alpha_theta),
            phi: z(&self.phi, &other.phi),
            gauged: false,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &TangentPair) -> Result<TangentPair> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &TangentPair) -> Result<TangentPair> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scaled(&self, s: f64) -> TangentPair {
        let m = |v: &[Mat2]| v.iter().map(|x| x * su2::C64::from(s)).collect::<Vec<_>>();
        TangentPair {
            alpha_r: m(&self.alpha_r),
            alpha_theta: m(&self.alpha_theta),
            phi: m(&self.phi),
            ..self.clone()
        }
    }

    /// Largest deviation of `α` from skew-hermitian.
    pub fn alpha_symmetry_defect(&self) -> f64 {
        self.alpha_r
            .iter()
            .chain(&self.alpha_theta)
            .fold(0.0, |m, x| m.max((x + x.adjoint()).norm()))
    }

    /// Sup over nodes of `|α_r|, |α_θ|/r, |φ|` restricted to rings `keep(k)`.
    pub fn sup_norm_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        let g = &self.grid;
        let mut m: f64 = 0.0;
        for k in (0..g.n_r).filter(|&k| keep(k)) {
            let r = g.r(k);
            for j in 0..g.n_theta {
                let i = g.index(k, j);
                m = m
                    .max(su2::norm_sq(&self.alpha_r[i]).sqrt())
                    .max(su2::norm_sq(&self.alpha_theta[i]).sqrt() / r)
                    .max(su2::norm_sq(&self.phi[i]).sqrt());
            }
        }
        m
    }
}

pub(crate) fn require_model(q: &QuadDifferentialModel, what: &str) -> Result<()> {
    if q.is_model() {
        Ok(())
    } else {
        Err(LabError::Unsupported(format!("{what} is implemented for q = z dz² only")))
    }
}

/// `(0, φ_∞)` with `φ_∞ = offdiag(½|q|^{-1/2} q̇, ½|q|^{1/2} q̇/q)`.
pub fn phi_infinity(q: &QuadDifferentialModel, grid: &PolarGrid) -> MatrixField {
    MatrixField::sample(grid, FormDegree::OneZero, Symmetry::General, |r, th| {
        vec![phi_infinity_at(q, r, th)]
    })
}

fn phi_infinity_at(q: &QuadDifferentialModel, r: f64, th: f64) -> Mat2 {
    let z = polar(r, th);
    let (f, fd) = (q.f(z), q.fdot(z));
    let m = f.norm();
    su2::offdiag(fd * (0.5 / m.sqrt()), fd / f * (0.5 * m.sqrt()))
}

/// The limiting horizontal vector `(0, φ_∞)`.
pub fn limiting_horizontal(q: &QuadDifferentialModel, grid: &PolarGrid) -> TangentPair {
    let mut v = TangentPair::zeros(grid);
    v.phi = phi_infinity(q, grid).components.remove(0);
    v.gauged = true;
    v
}

fn e1_times(x: f64) -> Mat2 {
    su2::e1() * C64::from(x)
}

/// `q̇/q` and its `z`-derivative on the model.
fn ratio(q: &QuadDifferentialModel, z: C64) -> (C64, C64) {
    let (f, fp, fd) = (q.f(z), q.df(z), q.fdot(z));
    let fdp = q.fdot_derivative(z);
    (fd / f, (fdp * f - fd * fp) / (f * f))
}

/// `(Ȧ_t, Φ̇_t)`, the variation of the model pair in direction `q̇`, with the
/// connection part scaled by `1/t`. The profile is the fiducial one; on the
/// cut-off pair this differs by `O(e^{-βt})`.
pub fn horizontal_raw(table: &PainleveTable, q: &QuadDifferentialModel, t: f64, grid: &PolarGrid) -> Result<TangentPair> {
    require_model(q, "the horizontal variation")?;
    check_finite_t(t)?;
    let prof = |r: f64| table.profile_eval(t, r).expect("profile at a positive radius");
    let inv_t = 1.0 / t;
    // dr and dθ parts of (−2 r f′ Re(q̇/q) dθ − 2 f dIm(q̇/q)) e1.
    let a = |r: f64, th: f64| -> (f64, f64) {
        let p = prof(r);
        let z = polar(r, th);
        let (g, dg) = ratio(q, z);
        let w = C64::from_polar(1.0, th);
        let di_dr = (dg * w).im;
        let di_dth = r * (dg * w).re;
        (-2.0 * p.f * di_dr, -2.0 * r * p.df * g.re - 2.0 * p.f * di_dth)
    };
    let mut v = TangentPair::sample(
        grid,
        |r, th| e1_times(inv_t * a(r, th).0),
        |r, th| e1_times(inv_t * a(r, th).1),
        |r, th| {
            let p = prof(r);
            let z = polar(r, th);
            let (f, fd) = (q.f(z), q.fdot(z));
            // Derivative of the profile factors; `Re(q̇/q)` multiplies both terms.
            let qq = (0.5 + p.r_dh) * (fd / f).re;
            su2::offdiag(
                (fd - f * qq) * ((-p.h).exp() / r.sqrt()),
                C64::from(p.h.exp() * r.sqrt() * qq),
            )
        },
    );
    v.scale = inv_t;
    Ok(v)
}

/// `γ_t = −2 f_t Im(q̇/q) e1`, the explicit first gauge correction.
pub fn first_gauge(table: &PainleveTable, q: &QuadDifferentialModel, t: f64, grid: &PolarGrid) -> Result<MatrixField> {
    require_model(q, "the first gauge correction")?;
    check_finite_t(t)?;
    let mut out = MatrixField::zeros(grid, FormDegree::Zero, Symmetry::SkewHermitian);
    for k in 0..grid.n_r {
        let p = table.profile_eval(t, grid.r(k))?;
        for j in 0..grid.n_theta {
            let (g, _) = ratio(q, polar(grid.r(k), grid.theta(j)));
            out.components[0][grid.index(k, j)] = e1_times(-2.0 * p.f * g.im);
        }
    }
    Ok(out)
}

/// `(t⁻¹α_t, φ_t)` in closed form: `α_t = 4 f_t′ Im(q̇/q) dr e1` and
/// `φ_t = offdiag((½ − r h′) e^{-h} r^{-1/2} q̇, (½ + r h′) e^{h} r^{1/2} q̇/q)`.
///
/// The Higgs part is exactly `Φ̇_t − [φ, γ_t]`. The connection part keeps
/// only the `dr` term; the literal `Ȧ_t − dγ_t` is
/// `2 f_t′ (Im(q̇/q) dr − r Re(q̇/q) dθ) e1`, see [`first_correction_literal`].
pub fn first_correction(table: &PainleveTable, q: &QuadDifferentialModel, t: f64, grid: &PolarGrid) -> Result<TangentPair> {
    require_model(q, "the first correction")?;
    check_finite_t(t)?;
    let prof = |r: f64| table.profile_eval(t, r).expect("profile at a positive radius");
    let inv_t = 1.0 / t;
    let mut v = TangentPair::sample(
        grid,
        |r, th| {
            let (g, _) = ratio(q, polar(r, th));
            e1_times(inv_t * 4.0 * prof(r).df * g.im)
        },
        |_, _| su2::zero(),
        |r, th| first_corrected_higgs(q, &prof(r), r, th),
    );
    v.scale = inv_t;
    Ok(v)
}

fn first_corrected_higgs(q: &QuadDifferentialModel, p: &ProfileEval, r: f64, th: f64) -> Mat2 {
    let z = polar(r, th);
    let (f, fd) = (q.f(z), q.fdot(z));
    su2::offdiag(
        fd * ((0.5 - p.r_dh) * (-p.h).exp() / r.sqrt()),
        fd / f * ((0.5 + p.r_dh) * p.h.exp() * r.sqrt()),
    )
}

/// `Ȧ_t − dγ_t` without dropping the `dθ` term.
pub fn first_correction_literal(
    table: &PainleveTable,
    q: &QuadDifferentialModel,
    t: f64,
    grid: &PolarGrid,
) -> Result<TangentPair> {
    let mut v = first_correction(table, q, t, grid)?;
    let inv_t = 1.0 / t;
    for k in 0..grid.n_r {
        let (r, rf) = (grid.r(k), grid.flux_radius(k));
        let (p, pf) = (table.profile_eval(t, r)?, table.profile_eval(t, rf)?);
        for j in 0..grid.n_theta {
            let th = grid.theta(j);
            let i = grid.index(k, j);
            let (gf, _) = ratio(q, polar(rf, th));
            let (g, _) = ratio(q, polar(r, th));
            v.alpha_r[i] = e1_times(inv_t * 2.0 * pf.df * gf.im);
            v.alpha_theta[i] = e1_times(-inv_t * 2.0 * r * p.df * g.re);
        }
    }
    Ok(v)
}

/// The radial direction `q̇ = q`: the first-corrected vector `(0, φ_t)` and
/// its limit `(0, ½Φ_∞)`.
#[derive(Debug, Clone)]
pub struct RadialTangent {
    pub t: f64,
    pub tangent: TangentPair,
    pub limit: TangentPair,
}

pub fn radial_tangent(table: &PainleveTable, t: f64, grid: &PolarGrid) -> Result<RadialTangent> {
    let q = QuadDifferentialModel::radial();
    Ok(RadialTangent {
        t,
        tangent: first_correction(table, &q, t, grid)?,
        limit: limiting_horizontal(&q, grid),
    })
}

/// Data of the vertical deformation built from the odd one-form
/// `η = f dw − f̄ dw̄`, `f = w^{2m}`, on the spectral cover `w² = z`.
#[derive(Debug, Clone)]
pub struct VerticalData {
    pub m_mode: usize,
    /// Harmonic representative `α_∞ = 2 Im-part of η` along the parallel
    /// section `ŝ` of the commutant of `Φ_∞`.
    pub alpha_inf: TangentPair,
    /// Local primitive: `α_∞ = d_{A_∞} ξ_∞` on the disk of radius `5/8`.
    pub xi_inf: MatrixField,
    /// `α_∞ − d_{A_∞} ξ_∞`, supported where the cutoff is below 1.
    pub beta_inf: TangentPair,
}

/// Unit section `offdiag(e^{iθ/2}, e^{-iθ/2})` commuting with `Φ_∞`; it is
/// single valued on the double cover only.
pub fn commutant_section(theta: f64) -> Mat2 {
    su2::offdiag(C64::from_polar(1.0, 0.5 * theta), C64::from_polar(1.0, -0.5 * theta))
}

/// su(2) coordinates of `i ŝ(θ)` normalized to unit length.
pub fn commutant_direction(theta: f64) -> [f64; 3] {
    let c = su2::su_coords(&(commutant_section(theta) * su2::I));
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    [c[0] / n, c[1] / n, c[2] / n]
}

pub fn vertical_data(m_mode: usize, chi: &CutoffSpec, cover: &PolarGrid) -> Result<VerticalData> {
    if cover.cover_sheets != 2 {
        return Err(LabError::Config("vertical deformations live on the double cover (2 sheets)".into()));
    }
    let nu = m_mode as f64 + 0.5;
    let amp = 4.0 / (2.0 * m_mode as f64 + 1.0);
    let i2 = su2::I * C64::from(2.0);
    let ar = move |r: f64, th: f64| commutant_section(th) * i2 * C64::from(r.powf(nu - 1.0) * (nu * th).sin());
    let at = move |r: f64, th: f64| commutant_section(th) * i2 * C64::from(r.powf(nu) * (nu * th).cos());
    let prim = move |r: f64, th: f64| commutant_section(th) * su2::I * C64::from(amp * r.powf(nu) * (nu * th).sin());
    let mut alpha_inf = TangentPair::sample(cover, ar, at, |_, _| su2::zero());
    alpha_inf.gauged = true;
    let xi_inf = MatrixField::sample(cover, FormDegree::Zero, Symmetry::SkewHermitian, |r, th| {
        vec![prim(r, th) * C64::from(chi.chi(r))]
    });
    let beta_inf = TangentPair::sample(
        cover,
        |r, th| ar(r, th) * C64::from(1.0 - chi.chi(r)) - prim(r, th) * C64::from(chi.dchi(r)),
        |r, th| at(r, th) * C64::from(1.0 - chi.chi(r)),
        |_, _| su2::zero(),
    );
    Ok(VerticalData {
        m_mode,
        alpha_inf,
        xi_inf,
        beta_inf,
    })
}

/// A gauged vertical vector at the approximate pair and the discretely
/// harmonic reference it converges to.
#[derive(Debug, Clone)]
pub struct VerticalTangent {
    pub t: f64,
    pub data: VerticalData,
    /// `(β_∞, 0) − D¹ξ_t` in Coulomb gauge at the approximate pair.
    pub gauged: TangentPair,
    /// `ξ_t` of the gauge fix.
    pub xi_t: MatrixField,
    /// The gauge fix of `(β_∞, 0)` at the limiting pair, along `iŝ`.
    pub reference: TangentPair,
    pub relative_coulomb: f64,
}

pub fn vertical_tangent(
    table: &PainleveTable,
    m_mode: usize,
    t: f64,
    chi: &CutoffSpec,
    cover: &PolarGrid,
) -> Result<VerticalTangent> {
    check_finite_t(t)?;
    let data = vertical_data(m_mode, chi, cover)?;
    let q = QuadDifferentialModel::radial();
    let pair = fields::approximate_solution(table, &q, t, chi, cover)?;
    let op = gauge_op::assemble_lt(&pair, t)?;
    let fixed = gauge_op::gauge_fix_coords(&op, &TangentCoords::from_pair(&data.beta_inf), gauge_op::GAUGE_TOL)?;
    let mut gauged = fixed.coords.to_pair(cover);
    gauged.gauged = true;
    let reference = vertical_reference(&data, t, cover)?;
    Ok(VerticalTangent {
        t,
        gauged,
        xi_t: fixed.result.xi,
        reference,
        relative_coulomb: fixed.relative_coulomb,
        data,
    })
}

/// Discretely harmonic version of `α_∞`: `β_∞` gauge-fixed at the limiting
/// pair within the line spanned by `iŝ`, where the Higgs potential vanishes.
pub fn vertical_reference(data: &VerticalData, t: f64, cover: &PolarGrid) -> Result<TangentPair> {
    let lim = fields::limiting_configuration(&QuadDifferentialModel::radial(), cover);
    let dirs = (0..cover.n_r)
        .flat_map(|_| cover.thetas())
        .map(commutant_direction)
        .collect();
    let op = gauge_op::LinearOp::assemble(&lim, t, gauge_op::Sector::Line(dirs))?;
    let fixed = gauge_op::gauge_fix_coords(&op, &TangentCoords::from_pair(&data.beta_inf), gauge_op::GAUGE_TOL)?;
    let mut out = fixed.coords.to_pair(cover);
    out.gauged = true;
    Ok(out)
}

/// Pointwise and integrated pairing of two tangent vectors.
#[derive(Debug, Clone, Serialize)]
pub struct MixedReport {
    /// Largest absolute pointwise integrand.
    pub pointwise_max: f64,
    pub pairing: f64,
    /// `|⟨v,w⟩ − ⟨w,v⟩|`.
    pub asymmetry: f64,
}

pub fn mixed_inner_probe(hor: &TangentPair, vert: &TangentPair) -> Result<MixedReport> {
    hor.grid.same_layout(&vert.grid)?;
    let w = MetricWeights::new(&hor.grid);
    let (a, b) = (TangentCoords::from_pair(hor), TangentCoords::from_pair(vert));
    let pw = w.pointwise(&a, &b);
    let pairing = w.inner(&a, &b);
    Ok(MixedReport {
        pointwise_max: pw.iter().fold(0.0, |m, x| m.max(x.abs())),
        pairing,
        asymmetry: (pairing - w.inner(&b, &a)).abs(),
    })
}

fn check_finite_t(t: f64) -> Result<()> {
    if t >= 1.0 && t.is_finite() {
        Ok(())
    } else {
        Err(LabError::Domain(format!("deformations need t >= 1, got {t}")))
    }
}
