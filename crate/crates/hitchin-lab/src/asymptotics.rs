//! Exponent extraction from `t`-indexed samples, the packet-integral engine
//! and the table of metric differences against the semiflat limit.

use crate::deformations::{self, TangentPair};
use crate::error::{LabError, Result};
use crate::fields;
use crate::gauge_op::{self, MetricWeights, TangentCoords};
use crate::grid::{CutoffSpec, PolarGrid, QuadDifferentialModel};
use crate::painleve::PainleveTable;
use crate::su2::C64;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::f64::consts::PI;

/// Compensated sum in input order (Neumaier's variant, which also keeps
/// small terms added before a large one cancels).
pub fn kahan_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0_f64, 0.0);
    for x in xs {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// Ordinary least squares `y = a x + b`; returns `(a, b, r²)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = kahan_sum(x.iter().copied()) / n;
    let my = kahan_sum(y.iter().copied()) / n;
    let sxy = kahan_sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = kahan_sum(x.iter().map(|a| (a - mx) * (a - mx)));
    let syy = kahan_sum(y.iter().map(|b| (b - my) * (b - my)));
    let a = sxy / sxx;
    let r2 = if syy > 0.0 { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) } else { 1.0 };
    (a, my - a * mx, r2)
}

/// Which samples enter a fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Window {
    All,
    /// Drop the smallest third of the `t` values.
    DiscardSmallestThird,
    /// Samples with `lo ≤ t ≤ hi`.
    Range(f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub coefficient: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    /// Residuals of `log|value|` against the fitted line.
    pub residuals: Vec<f64>,
    /// `r²` of a semi-log (exponential) fit to the same samples.
    pub semilog_r_squared: f64,
    /// Raised when the exponential model fits better.
    pub prefers_exponential: bool,
}

fn sorted(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    s
}

fn select(samples: &[(f64, f64)], window: Window) -> Vec<(f64, f64)> {
    let s = sorted(samples);
    match window {
        Window::All => s,
        Window::DiscardSmallestThird => {
            let drop = s.len() / 3;
            s[drop..].to_vec()
        }
        Window::Range(lo, hi) => s.into_iter().filter(|p| p.0 >= lo && p.0 <= hi).collect(),
    }
}

/// Least squares on `(log t, log|value|)`.
pub fn fit_power_law(samples: &[(f64, f64)], window: Window) -> Result<PowerLawFit> {
    let s = select(samples, window);
    if s.len() < 4 {
        return Err(LabError::Fit(format!("{} samples in the window, need at least 4", s.len())));
    }
    if s.iter().any(|p| !(p.0 > 0.0)) {
        return Err(LabError::Fit("power-law fits need t > 0".into()));
    }
    let pos = s.iter().all(|p| p.1 > 0.0);
    let neg = s.iter().all(|p| p.1 < 0.0);
    if !pos && !neg {
        return Err(LabError::Fit("values change sign or vanish in the window; peel first".into()));
    }
    let lx: Vec<f64> = s.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = s.iter().map(|p| p.1.abs().ln()).collect();
    let tx: Vec<f64> = s.iter().map(|p| p.0).collect();
    let (a, b, r2) = linear_fit(&lx, &ly);
    let (_, _, r2_semi) = linear_fit(&tx, &ly);
    let sign = if pos { 1.0 } else { -1.0 };
    Ok(PowerLawFit {
        exponent: a,
        coefficient: sign * b.exp(),
        r_squared: r2,
        window: (s[0].0, s[s.len() - 1].0),
        residuals: lx.iter().zip(&ly).map(|(x, y)| y - (a * x + b)).collect(),
        semilog_r_squared: r2_semi,
        prefers_exponential: r2_semi > r2,
    })
}

/// Semi-log fit `log|value| = slope·t + c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentialFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn fit_exponential(samples: &[(f64, f64)]) -> Result<ExponentialFit> {
    let s = sorted(samples);
    if s.len() < 3 {
        return Err(LabError::Fit("exponential fits need at least 3 samples".into()));
    }
    if s.iter().any(|p| p.1 == 0.0 || !p.1.is_finite()) {
        return Err(LabError::Fit("exponential fit over zero or non-finite values".into()));
    }
    let x: Vec<f64> = s.iter().map(|p| p.0).collect();
    let y: Vec<f64> = s.iter().map(|p| p.1.abs().ln()).collect();
    let (slope, intercept, r_squared) = linear_fit(&x, &y);
    Ok(ExponentialFit {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionPeel {
    pub ladder: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// Power-law fit of what remains after all terms, if it is above the
    /// noise floor and fittable.
    pub terminal_residual_fit: Option<PowerLawFit>,
    /// Largest remaining `|residual|` relative to the largest `|value|`.
    pub relative_residual: f64,
}

/// Relative level below which a residual counts as noise.
pub const PEEL_NOISE_FLOOR: f64 = 1e-12;

/// Fits `Σ c_k t^{λ_k}` for the leading `k = 1, 2, …` ladder terms, adding
/// one term at a time until the residual falls below the noise floor.
pub fn peel_expansion(samples: &[(f64, f64)], ladder: &[f64]) -> Result<ExpansionPeel> {
    if ladder.is_empty() {
        return Err(LabError::Fit("empty ladder".into()));
    }
    if ladder.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(LabError::Fit("ladder must be strictly decreasing".into()));
    }
    if ladder.windows(2).any(|w| w[0] - w[1] < 1e-3) {
        return Err(LabError::Fit("ladder exponents too close; the peel is ill-conditioned".into()));
    }
    let s = sorted(samples);
    if s.len() < ladder.len() + 1 {
        return Err(LabError::Fit(format!("{} samples for {} ladder terms", s.len(), ladder.len())));
    }
    let scale = s.iter().fold(0.0_f64, |m, p| m.max(p.1.abs()));
    let mut coefficients = Vec::new();
    let mut residual: Vec<f64> = s.iter().map(|p| p.1).collect();
    for k in 1..=ladder.len() {
        // Columns normalized by their value at the largest t for conditioning.
        let t_ref = s[s.len() - 1].0;
        let a = DMatrix::from_fn(s.len(), k, |i, c| (s[i].0 / t_ref).powf(ladder[c]));
        let b = DVector::from_iterator(s.len(), s.iter().map(|p| p.1));
        let svd = a.clone().svd(true, true);
        let x = svd
            .solve(&b, 1e-14)
            .map_err(|e| LabError::Fit(format!("peel least squares failed: {e}")))?;
        coefficients = (0..k).map(|c| x[c] * t_ref.powf(-ladder[c])).collect();
        let fitted = &a * &x;
        residual = (0..s.len()).map(|i| s[i].1 - fitted[i]).collect();
        let rel = residual.iter().fold(0.0_f64, |m, r| m.max(r.abs())) / scale.max(f64::MIN_POSITIVE);
        if rel < PEEL_NOISE_FLOOR {
            break;
        }
    }
    let relative_residual = residual.iter().fold(0.0_f64, |m, r| m.max(r.abs())) / scale.max(f64::MIN_POSITIVE);
    let terminal_residual_fit = if relative_residual >= PEEL_NOISE_FLOOR {
        let pts: Vec<(f64, f64)> = s.iter().zip(&residual).map(|(p, r)| (p.0, *r)).collect();
        fit_power_law(&pts, Window::All).ok()
    } else {
        None
    };
    coefficients.resize(ladder.len(), 0.0);
    Ok(ExpansionPeel {
        ladder: ladder.to_vec(),
        coefficients,
        terminal_residual_fit,
        relative_residual,
    })
}

/// Radial shape of a packet profile `f(w) = g(|w|) e^{i m arg w}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PacketShape {
    /// `e^{-s}`.
    Exponential,
    /// `e^{-s^{3/2}}`, the decay rate of the fiducial profile.
    ThreeHalves,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PacketProfile {
    pub shape: PacketShape,
    pub angular_mode: i32,
}

impl PacketProfile {
    pub fn radial(shape: PacketShape) -> Self {
        PacketProfile { shape, angular_mode: 0 }
    }

    pub fn radial_value(&self, s: f64) -> f64 {
        match self.shape {
            PacketShape::Exponential => (-s).exp(),
            PacketShape::ThreeHalves => (-s.powf(1.5)).exp(),
        }
    }
}

const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Composite 8-point Gauss–Legendre on `[a, b]` with `panels` equal panels.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    kahan_sum((0..panels).flat_map(|p| {
        let mid = a + (p as f64 + 0.5) * h;
        let f = &f;
        GL_NODES.iter().zip(GL_WEIGHTS).map(move |(x, w)| 0.5 * h * w * f(mid + 0.5 * h * x))
    }))
}

/// `∫₀¹ g(t^{2/3} r) r^j dr` on panels refined geometrically towards the
/// packet scale `t^{-2/3}`.
pub fn packet_integral_radial(profile: &PacketProfile, j: i32, t: f64) -> Result<f64> {
    if j < 0 {
        return Err(LabError::Domain(format!("packet integral with r^{j} is not integrable")));
    }
    if !(t > 0.0) {
        return Err(LabError::Domain(format!("packet integral needs t > 0, got {t}")));
    }
    let scale = t.powf(2.0 / 3.0);
    let integrand = |r: f64| profile.radial_value(scale * r) * r.powi(j);
    // Breakpoints at 2^k / scale, from far below the packet scale to r = 1.
    let mut cuts = vec![0.0];
    let mut x = 2f64.powi(-30) / scale;
    while x < 1.0 {
        cuts.push(x);
        x *= 2.0;
    }
    cuts.push(1.0);
    Ok(kahan_sum(cuts.windows(2).map(|w| gauss_legendre(integrand, w[0], w[1], 2))))
}

/// `∫_𝔻 f(t^{2/3} z) z^{j-1} dA` for `f(w) = g(|w|) e^{i m arg w}`: the
/// angular integral leaves `2π` when `m + j − 1 = 0` and zero otherwise.
pub fn packet_integral(profile: &PacketProfile, j: i32, t: f64) -> Result<C64> {
    if j < 0 {
        return Err(LabError::Domain(format!("packet integral with z^{} is not integrable", j - 1)));
    }
    let n_theta = 64;
    let freq = profile.angular_mode + j - 1;
    let angular = kahan_sum((0..n_theta).map(|k| (freq as f64 * 2.0 * PI * k as f64 / n_theta as f64).cos()))
        * 2.0
        * PI
        / n_theta as f64;
    let angular_im = kahan_sum((0..n_theta).map(|k| (freq as f64 * 2.0 * PI * k as f64 / n_theta as f64).sin()))
        * 2.0
        * PI
        / n_theta as f64;
    let radial = packet_integral_radial(profile, j, t)?;
    Ok(C64::new(angular * radial, angular_im * radial))
}

/// `count` points from `lo` to `hi` with a constant ratio.
pub fn geometric(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || count < 2 {
        return Err(LabError::Config(format!(
            "geometric grid needs 0 < lo < hi and at least 2 points (got {lo}, {hi}, {count})"
        )));
    }
    let step = (hi / lo).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|k| if k + 1 == count { hi } else { lo * (step * k as f64).exp() })
        .collect())
}

/// A direction pair of the metric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Direction {
    Rr,
    Hh,
    Vv,
    Rh,
    Rv,
    Hv,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::Rr,
        Direction::Hh,
        Direction::Vv,
        Direction::Rh,
        Direction::Rv,
        Direction::Hv,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Direction::Rr => "rr",
            Direction::Hh => "hh",
            Direction::Vv => "vv",
            Direction::Rh => "rh",
            Direction::Rv => "rv",
            Direction::Hv => "hv",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Direction::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| LabError::Parse(format!("unknown direction {s:?} (expected rr, hh, vv, rh, rv or hv)")))
    }

    /// Leading exponent of the expected ladder.
    pub fn expected_exponent(&self) -> f64 {
        match self {
            Direction::Rr => -5.0 / 3.0,
            Direction::Hh | Direction::Vv | Direction::Hv => -2.0 / 3.0,
            Direction::Rh | Direction::Rv => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableConfig {
    pub n_r: usize,
    pub n_theta: usize,
    /// Coefficients of the horizontal variation `q̇`.
    pub horizontal_dot: Vec<C64>,
    pub vertical_mode: usize,
    pub cutoff: CutoffSpec,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            n_r: 64,
            n_theta: 32,
            horizontal_dot: vec![C64::new(1.0, 0.0)],
            vertical_mode: 0,
            cutoff: CutoffSpec::default(),
        }
    }
}

/// How the samples of a direction behave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decay {
    PowerLaw,
    /// Semi-log fit beats the log-log fit.
    Exponential,
    /// All samples below the resolution floor: no exponent is measurable.
    Vanishing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub direction: Direction,
    pub t_lo: f64,
    pub t_hi: f64,
    pub exponent: Option<f64>,
    pub coefficient: Option<f64>,
    pub r_squared: Option<f64>,
    pub expected: f64,
    pub decay: Decay,
    /// Samples `(t, g_{L²} − g_sf)`.
    pub samples: Vec<(f64, f64)>,
    /// Discretization-error level the samples are compared against.
    pub floor: f64,
}

impl TableRow {
    /// One-sided check: at least as fast as the expected ladder.
    pub fn within_bound(&self, slack: f64) -> bool {
        match self.decay {
            Decay::Vanishing | Decay::Exponential => true,
            Decay::PowerLaw => self.exponent.is_some_and(|e| e <= self.expected + slack),
        }
    }
}

/// Gauged tangent vectors at one `t` on one grid.
struct Sweep<'a> {
    table: &'a PainleveTable,
    cfg: &'a TableConfig,
}

impl Sweep<'_> {
    fn op(&self, t: f64, grid: &PolarGrid) -> Result<gauge_op::LinearOp> {
        let pair = fields::approximate_solution(self.table, &QuadDifferentialModel::radial(), t, &self.cfg.cutoff, grid)?;
        gauge_op::assemble_lt(&pair, t)
    }

    fn gauged(&self, op: &gauge_op::LinearOp, v: &TangentPair) -> Result<TangentCoords> {
        Ok(gauge_op::gauge_fix_coords(op, &TangentCoords::from_pair(v), gauge_op::GAUGE_TOL)?.coords)
    }

    fn horizontal_q(&self) -> QuadDifferentialModel {
        QuadDifferentialModel::model(self.cfg.horizontal_dot.clone())
    }

    /// `(gauged at t, limit)` for the radial or horizontal direction.
    fn horizontal_pair(
        &self,
        op: &gauge_op::LinearOp,
        q: &QuadDifferentialModel,
        t: f64,
        grid: &PolarGrid,
    ) -> Result<(TangentCoords, TangentCoords)> {
        let v = deformations::first_correction(self.table, q, t, grid)?;
        let lim = deformations::limiting_horizontal(q, grid);
        Ok((self.gauged(op, &v)?, TangentCoords::from_pair(&lim)))
    }

    /// `(g_{L²} − g_sf, |g_sf|)` along `dir`.
    fn sample(&self, dir: Direction, t: f64, n_r: usize) -> Result<(f64, f64)> {
        let cfg = self.cfg;
        let cover = matches!(dir, Direction::Vv | Direction::Rv | Direction::Hv);
        let grid = if cover {
            PolarGrid::cover(n_r, 2 * cfg.n_theta)?
        } else {
            PolarGrid::new(n_r, cfg.n_theta)?
        };
        let w = MetricWeights::new(&grid);
        let op = self.op(t, &grid)?;
        let radial = QuadDifferentialModel::radial();
        let hor = self.horizontal_q();
        let diff = |a: &TangentCoords, b: &TangentCoords, a0: &TangentCoords, b0: &TangentCoords| {
            let reference = w.inner(a0, b0);
            (w.inner(a, b) - reference, reference.abs().max(w.inner(a0, a0).sqrt() * w.inner(b0, b0).sqrt()))
        };
        let vertical = || -> Result<(TangentCoords, TangentCoords)> {
            let data = deformations::vertical_data(cfg.vertical_mode, &cfg.cutoff, &grid)?;
            let g = self.gauged(&op, &data.beta_inf)?;
            let r = deformations::vertical_reference(&data, t, &grid)?;
            Ok((g, TangentCoords::from_pair(&r)))
        };
        Ok(match dir {
            Direction::Rr => {
                let (a, a0) = self.horizontal_pair(&op, &radial, t, &grid)?;
                diff(&a, &a, &a0, &a0)
            }
            Direction::Hh => {
                let (a, a0) = self.horizontal_pair(&op, &hor, t, &grid)?;
                diff(&a, &a, &a0, &a0)
            }
            Direction::Rh => {
                let (a, a0) = self.horizontal_pair(&op, &radial, t, &grid)?;
                let (b, b0) = self.horizontal_pair(&op, &hor, t, &grid)?;
                diff(&a, &b, &a0, &b0)
            }
            Direction::Vv => {
                let (a, a0) = vertical()?;
                diff(&a, &a, &a0, &a0)
            }
            Direction::Rv | Direction::Hv => {
                let q = if dir == Direction::Rv { &radial } else { &hor };
                let (a, a0) = self.horizontal_pair(&op, q, t, &grid)?;
                let (b, b0) = vertical()?;
                diff(&a, &b, &a0, &b0)
            }
        })
    }
}

/// Relative size of summation roundoff in a metric sample.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Measures `g_{L²} − g_sf` along each direction over `t_grid`.
///
/// Every sample is computed at `n_r` and `2 n_r`; the Richardson
/// combination is fitted. The gap between the two resolutions, or
/// roundoff relative to the reference metric if larger, is the floor below
/// which samples count as vanishing.
pub fn metric_difference_table(
    table: &PainleveTable,
    t_grid: &[f64],
    directions: &[Direction],
    cfg: &TableConfig,
) -> Result<Vec<TableRow>> {
    if t_grid.len() < 4 {
        return Err(LabError::Config("metric difference fits need at least 4 t values".into()));
    }
    let sweep = Sweep { table, cfg };
    let mut ts = t_grid.to_vec();
    ts.sort_by(f64::total_cmp);
    let mut dirs = directions.to_vec();
    dirs.sort();
    dirs.dedup();
    let mut rows = Vec::new();
    for dir in dirs {
        let mut samples = Vec::with_capacity(ts.len());
        let mut floor: f64 = 0.0;
        for &t in &ts {
            let (coarse, _) = sweep.sample(dir, t, cfg.n_r)?;
            let (fine, scale) = sweep.sample(dir, t, 2 * cfg.n_r)?;
            samples.push((t, (4.0 * fine - coarse) / 3.0));
            floor = floor.max((fine - coarse).abs()).max(ROUNDOFF_FLOOR * scale);
        }
        rows.push(classify(dir, samples, floor));
    }
    Ok(rows)
}

/// Fits one row. Samples all below `floor` (or identically zero) are
/// reported as vanishing.
pub fn classify(dir: Direction, samples: Vec<(f64, f64)>, floor: f64) -> TableRow {
    let t_lo = samples.first().map_or(f64::NAN, |p| p.0);
    let t_hi = samples.last().map_or(f64::NAN, |p| p.0);
    let biggest = samples.iter().fold(0.0_f64, |m, p| m.max(p.1.abs()));
    let mut row = TableRow {
        direction: dir,
        t_lo,
        t_hi,
        exponent: None,
        coefficient: None,
        r_squared: None,
        expected: dir.expected_exponent(),
        decay: Decay::Vanishing,
        samples,
        floor,
    };
    if biggest <= floor || biggest == 0.0 {
        return row;
    }
    // Short sweeps cannot spare their smallest third.
    let n = row.samples.len();
    let window = if n - n / 3 >= 4 { Window::DiscardSmallestThird } else { Window::All };
    match fit_power_law(&row.samples, window) {
        Ok(fit) => {
            row.exponent = Some(fit.exponent);
            row.coefficient = Some(fit.coefficient);
            row.r_squared = Some(fit.r_squared);
            row.decay = if fit.prefers_exponential && fit.r_squared < 0.99 {
                Decay::Exponential
            } else {
                Decay::PowerLaw
            };
        }
        // Sign changes above the floor: nothing fittable, keep it visible.
        Err(_) => row.decay = Decay::PowerLaw,
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_sweeps_still_fit() {
        let s: Vec<(f64, f64)> = (0..4).map(|k| (8.0 * 2f64.powi(k), 2f64.powf(-2.0 * k as f64))).collect();
        let row = classify(Direction::Rr, s, 1e-14);
        assert!((row.exponent.unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn kahan_beats_naive_on_cancellation() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(kahan_sum(xs), 2.0);
    }

    #[test]
    fn window_drops_smallest_third() {
        let s: Vec<(f64, f64)> = (1..=9).map(|k| (k as f64, 1.0 / k as f64)).collect();
        let w = select(&s, Window::DiscardSmallestThird);
        assert_eq!(w.len(), 6);
        assert_eq!(w[0].0, 4.0);
    }

    #[test]
    fn sign_change_is_rejected() {
        let s = [(1.0, 1.0), (2.0, -1.0), (3.0, 1.0), (4.0, 1.0)];
        assert!(fit_power_law(&s, Window::All).is_err());
    }

    #[test]
    fn direction_names_round_trip() {
        for d in Direction::ALL {
            assert_eq!(Direction::parse(d.name()).unwrap(), d);
        }
        assert!(Direction::parse("xx").is_err());
    }
}
