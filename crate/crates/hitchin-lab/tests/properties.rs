//! Invariants that hold for every input, checked on random inputs.

use hitchin_lab::asymptotics::{
    fit_exponential, fit_power_law, packet_integral_radial, peel_expansion, Direction, PacketProfile, PacketShape,
    Window,
};
use hitchin_lab::deformations::{first_correction, first_correction_literal, horizontal_raw, limiting_horizontal};
use hitchin_lab::fields::{approximate_solution, fiducial_solution};
use hitchin_lab::gauge_op::{assemble_lt, coulomb_norm, gauge_fix_coords, LinearOp, MetricWeights, TangentCoords};
use hitchin_lab::metrics::{l2_inner, sk_metric};
use hitchin_lab::painleve::{default_table, solve_psi};
use hitchin_lab::su2::{self, norm_sq, C64};
use hitchin_lab::{CutoffSpec, PolarGrid, QuadDifferentialModel};
use proptest::prelude::*;
use std::sync::OnceLock;

fn grid() -> PolarGrid {
    PolarGrid::new(12, 8).unwrap()
}

fn operator() -> &'static LinearOp {
    static OP: OnceLock<LinearOp> = OnceLock::new();
    OP.get_or_init(|| {
        let t = 6.0;
        assemble_lt(&fiducial_solution(default_table(), t, &grid()).unwrap(), t).unwrap()
    })
}

fn coords() -> impl Strategy<Value = TangentCoords> {
    let n = grid().nodes();
    (
        prop::collection::vec(-1.0..1.0f64, 3 * n),
        prop::collection::vec(-1.0..1.0f64, 3 * n),
        prop::collection::vec(-1.0..1.0f64, 6 * n),
    )
        .prop_map(|(r, theta, phi)| TangentCoords { r, theta, phi })
}

fn combine(a: f64, v: &TangentCoords, b: f64, w: &TangentCoords) -> TangentCoords {
    let lin = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| a * p + b * q).collect();
    TangentCoords {
        r: lin(&v.r, &w.r),
        theta: lin(&v.theta, &w.theta),
        phi: lin(&v.phi, &w.phi),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn metric_is_symmetric_and_bilinear(u in coords(), v in coords(), w in coords(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let m = MetricWeights::new(&grid());
        let scale = m.inner(&u, &u).sqrt() * (m.inner(&v, &v) + m.inner(&w, &w)).sqrt() * (1.0 + a.abs() + b.abs());
        prop_assert!((m.inner(&v, &w) - m.inner(&w, &v)).abs() <= 1e-14 * scale);
        let lhs = m.inner(&combine(a, &v, b, &w), &u);
        let rhs = a * m.inner(&v, &u) + b * m.inner(&w, &u);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
        prop_assert!(m.inner(&u, &u) > 0.0);
    }

    #[test]
    fn energy_identity(x in prop::collection::vec(-1.0..1.0f64, operator().unknowns())) {
        let op = operator();
        let lhs: f64 = x.iter().zip(op.apply_k(&x)).map(|(a, b)| a * b).sum();
        let e = op.energy(&x);
        prop_assert!(e >= 0.0);
        prop_assert!((lhs - e).abs() <= 1e-12 * e.max(1e-300));
    }

    #[test]
    fn gauge_fix_is_idempotent(v in coords()) {
        let op = operator();
        let once = gauge_fix_coords(op, &v, 1e-12).unwrap();
        prop_assert!(coulomb_norm(op, &once.coords) <= 1e-9 * op.weights.inner(&v, &v).sqrt());
        let twice = gauge_fix_coords(op, &once.coords, 1e-12).unwrap();
        let d = twice.coords.sub(&once.coords);
        prop_assert!(op.weights.inner(&d, &d).sqrt() <= 1e-9 * op.weights.inner(&once.coords, &once.coords).sqrt());
    }

    #[test]
    fn power_law_fit_recovers_monomials(c in 0.01..100.0f64, lambda in -3.0..0.5f64, neg in any::<bool>(), t0 in 1.0..20.0f64) {
        let c = if neg { -c } else { c };
        let samples: Vec<(f64, f64)> = (0..8).map(|k| {
            let t = t0 * 1.5f64.powi(k);
            (t, c * t.powf(lambda))
        }).collect();
        let fit = fit_power_law(&samples, Window::All).unwrap();
        prop_assert!((fit.exponent - lambda).abs() < 1e-10);
        prop_assert!((fit.coefficient / c - 1.0).abs() < 1e-10);
        prop_assert!(!fit.prefers_exponential);
    }

    #[test]
    fn exponential_samples_prefer_semilog(c in 0.1..10.0f64, rate in 0.2..2.0f64) {
        let samples: Vec<(f64, f64)> = (0..8).map(|k| {
            let t = 4.0 + 2.0 * k as f64;
            (t, c * (-rate * t).exp())
        }).collect();
        prop_assert!(fit_power_law(&samples, Window::All).unwrap().prefers_exponential);
    }

    #[test]
    fn peel_ignores_sample_order(c0 in -5.0..5.0f64, c1 in -5.0..5.0f64, seed in any::<u64>()) {
        let ladder = [-2.0 / 3.0, -1.0, -4.0 / 3.0];
        let mut samples: Vec<(f64, f64)> = (0..10).map(|k| {
            let t = 8.0 * 1.4f64.powi(k);
            (t, c0 * t.powf(ladder[0]) + c1 * t.powf(ladder[1]))
        }).collect();
        let a = peel_expansion(&samples, &ladder).unwrap();
        // Deterministic shuffle from the seed.
        let mut s = seed | 1;
        for i in (1..samples.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            samples.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let b = peel_expansion(&samples, &ladder).unwrap();
        prop_assert_eq!(a.coefficients, b.coefficients);
        prop_assert_eq!(a.relative_residual.to_bits(), b.relative_residual.to_bits());
    }

    /// Doubling `t` rescales a packet integrated against `r^j` by
    /// `2^{-2(j+1)/3}`, up to the tail cut off at `r = 1`.
    #[test]
    fn packet_doubling_ratio(t in 64.0..4096.0f64, j in 0i32..4, three_halves in any::<bool>()) {
        let shape = if three_halves { PacketShape::ThreeHalves } else { PacketShape::Exponential };
        let p = PacketProfile::radial(shape);
        let ratio = packet_integral_radial(&p, j, 2.0 * t).unwrap() / packet_integral_radial(&p, j, t).unwrap();
        let want = 2f64.powf(-2.0 * (j as f64 + 1.0) / 3.0);
        prop_assert!((ratio / want - 1.0).abs() < 1e-3, "ratio {} vs {}", ratio, want);
    }

    #[test]
    fn direction_names_round_trip(i in 0usize..6) {
        let d = Direction::ALL[i];
        prop_assert_eq!(Direction::parse(d.name()).unwrap(), d);
    }
}

fn dot_coeffs() -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3).prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The horizontal variation is the derivative of the approximate pair
    /// along `q + εq̇` inside the cutoff. `q̇(0) = 0` keeps the zero fixed.
    #[test]
    fn horizontal_variation_is_the_linearization(dot in dot_coeffs()) {
        let mut dot = dot;
        dot[0] = C64::new(0.0, 0.0);
        let (table, t, eps) = (default_table(), 6.0, 1e-4);
        let g = PolarGrid::new(24, 16).unwrap();
        let v = horizontal_raw(table, &QuadDifferentialModel::model(dot.clone()), t, &g).unwrap();
        let pair = |s: f64| {
            let c: Vec<C64> = (0..3).map(|k| C64::new(if k == 1 { 1.0 } else { 0.0 }, 0.0) + dot[k] * s).collect();
            let q = QuadDifferentialModel::new(c, dot.clone()).unwrap();
            approximate_solution(table, &q, t, &CutoffSpec::default(), &g).unwrap()
        };
        let (p, m) = (pair(eps), pair(-eps));
        for k in (0..g.n_r).filter(|&k| g.r(k) < 0.55) {
            for j in 0..g.n_theta {
                let i = g.index(k, j);
                let checks = [
                    (p.phi.components[0][i], m.phi.components[0][i], v.phi[i], 1.0),
                    (p.a_r_faces[i], m.a_r_faces[i], v.alpha_r[i], t),
                    (p.a.components[1][i], m.a.components[1][i], v.alpha_theta[i], t),
                ];
                for (a, b, want, w) in checks {
                    let fd = (a - b).map(|z| z / (2.0 * eps * w));
                    prop_assert!(norm_sq(&(fd - want)).sqrt() < 1e-7, "node {} {}", k, j);
                }
            }
        }
    }

    /// The literal correction is `Ȧ − dγ` with `γ = −2 f_t Im(q̇/q) e1`;
    /// `dγ` here comes from central differences of that formula.
    #[test]
    fn literal_correction_subtracts_the_gauge_differential(dot in dot_coeffs()) {
        let (table, t) = (default_table(), 5.0);
        let q = QuadDifferentialModel::model(dot);
        let g = PolarGrid::new(16, 8).unwrap();
        let raw = horizontal_raw(table, &q, t, &g).unwrap();
        let lit = first_correction_literal(table, &q, t, &g).unwrap();
        let gamma = |r: f64, th: f64| {
            let z = C64::from_polar(r, th);
            -2.0 * table.profile_eval(t, r).unwrap().f * (q.fdot(z) / q.f(z)).im
        };
        let h = 1e-6;
        for k in 0..g.n_r {
            let (r, rf) = (g.r(k), g.flux_radius(k));
            for j in 0..g.n_theta {
                let (th, i) = (g.theta(j), g.index(k, j));
                let d_th = (gamma(r, th + h) - gamma(r, th - h)) / (2.0 * h);
                let want = raw.alpha_theta[i] - su2::e1() * C64::from(d_th / t);
                prop_assert!(norm_sq(&(lit.alpha_theta[i] - want)).sqrt() < 1e-7 * (1.0 + norm_sq(&want).sqrt()));
                if rf < 1.0 - h {
                    let d_r = (gamma(rf + h, th) - gamma(rf - h, th)) / (2.0 * h);
                    let want = raw.alpha_r[i] - su2::e1() * C64::from(d_r / t);
                    prop_assert!(norm_sq(&(lit.alpha_r[i] - want)).sqrt() < 1e-6 * (1.0 + norm_sq(&want).sqrt()));
                }
            }
        }
    }

    #[test]
    fn special_kahler_is_the_limiting_norm(dot in dot_coeffs()) {
        let q = QuadDifferentialModel::model(dot);
        let g = PolarGrid::new(256, 32).unwrap();
        let sk = sk_metric(&q, &g).unwrap();
        let lim = limiting_horizontal(&q, &g);
        let l2 = l2_inner(&lim, &lim).unwrap().value;
        prop_assert!((sk.value - l2).abs() <= 1e-12 * sk.value.max(1e-300) + sk.err_est.unwrap_or(0.0));
    }
}

#[test]
fn metric_quadrature_is_second_order() {
    let qs = [
        QuadDifferentialModel::radial(),
        QuadDifferentialModel::model(vec![C64::new(0.4, 0.1), C64::new(0.2, -0.3), C64::new(0.0, 0.5)]),
    ];
    for q in &qs {
        let v: Vec<f64> = [128, 256, 512, 1024].iter().map(|&n| sk_metric(q, &PolarGrid::new(n, 32).unwrap()).unwrap().value).collect();
        for w in v.windows(3) {
            let ratio = (w[1] - w[0]) / (w[2] - w[1]);
            assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        }
    }
}

#[test]
fn horizontal_correction_decays_exponentially_outside_the_cutoff() {
    let g = PolarGrid::new(128, 16).unwrap();
    let q = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0)]);
    let lim = limiting_horizontal(&q, &g);
    let samples: Vec<(f64, f64)> = [4.0, 6.0, 8.0, 10.0, 12.0]
        .iter()
        .map(|&t| {
            let d = first_correction(default_table(), &q, t, &g).unwrap().sub(&lim).unwrap();
            (t, d.sup_norm_where(|k| g.r(k) > 0.875))
        })
        .collect();
    let fit = fit_exponential(&samples).unwrap();
    assert!(fit.slope < 0.0 && fit.r_squared > 0.99, "{fit:?}");
}

/// Doubling the ψ grid shrinks the change at shared nodes at least
/// quadratically.
#[test]
fn psi_converges_under_refinement() {
    let solve = |n| solve_psi(1e-6, 16.0, n, 1e-8).unwrap().psi;
    let (a, b, c) = (solve(1025), solve(2049), solve(4097));
    let d1 = (0..a.len()).map(|i| (a[i] - b[2 * i]).abs()).fold(0.0, f64::max);
    let d2 = (0..b.len()).map(|i| (b[i] - c[2 * i]).abs()).fold(0.0, f64::max);
    assert!(d1 / d2 >= 3.5, "changes {d1:e} then {d2:e}");
}
