//! Values checked against oracles computed independently here: direct
//! quadrature for the Bessel functions, a shooting integration for ψ, and
//! closed forms for the metric on the base.

use approx::assert_relative_eq;
use hitchin_lab::io::{table_rows, table_samples, ResultTable};
use hitchin_lab::metrics::{chart_crosscheck, kahler_potential, semiflat_vertical, sk_metric, OddOneForm};
use hitchin_lab::painleve::{cached_psi, default_table, solve_psi, PainleveTable};
use hitchin_lab::special::{bessel_k0, bessel_k1};
use hitchin_lab::su2::C64;
use hitchin_lab::{PolarGrid, QuadDifferentialModel};
use std::f64::consts::PI;

/// `∫₀^∞ e^{-x cosh u} cosh(νu) du` by composite Simpson.
fn bessel_k_quadrature(nu: f64, x: f64) -> f64 {
    let upper = (2.0 * (60.0 / x).ln().max(1.0)).acosh().max(8.0);
    let n = 20_000;
    let h = upper / n as f64;
    let f = |u: f64| (-x * u.cosh()).exp() * (nu * u).cosh();
    let mut s = f(0.0) + f(upper);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn bessel_functions_match_quadrature() {
    for x in [0.05, 0.3, 1.0, 2.5, 7.0, 15.0, 30.0] {
        assert_relative_eq!(bessel_k0(x).unwrap(), bessel_k_quadrature(0.0, x), max_relative = 1e-12);
        assert_relative_eq!(bessel_k1(x).unwrap(), bessel_k_quadrature(1.0, x), max_relative = 1e-12);
    }
}

#[test]
fn bessel_frozen_values() {
    assert_relative_eq!(bessel_k0(1.0).unwrap(), 0.42102443824070834, max_relative = 1e-15);
    assert_relative_eq!(bessel_k0(2.0).unwrap(), 0.11389387274953344, max_relative = 1e-15);
    assert_relative_eq!(bessel_k1(1.0).unwrap(), 0.6019072301972346, max_relative = 1e-15);
    assert!(bessel_k0(0.0).is_err());
}

/// RK4 in `s = log ρ` for `ψ_ss = ½e^{2s} sinh 2ψ`, started on the
/// small-ρ expansion `C − s/3 + (9/64)e^{2C}e^{4s/3}`. Returns the samples
/// at `stops` (ascending ρ), or the sign of the blow-up if ψ leaves
/// `(0, ∞)` before the last stop.
fn shoot(c: f64, stops: &[f64]) -> Result<Vec<f64>, f64> {
    let s0 = 1e-6f64.ln();
    let a = 9.0 / 64.0 * (2.0 * c).exp();
    let mut y = [c - s0 / 3.0 + a * (4.0 * s0 / 3.0).exp(), -1.0 / 3.0 + 4.0 / 3.0 * a * (4.0 * s0 / 3.0).exp()];
    let rhs = |s: f64, y: [f64; 2]| [y[1], 0.5 * (2.0 * s).exp() * (2.0 * y[0]).sinh()];
    let h: f64 = 2e-4;
    let mut s = s0;
    let mut out = Vec::new();
    for &stop in stops {
        let target = stop.ln();
        while s < target - 1e-12 {
            let h = h.min(target - s);
            let k1 = rhs(s, y);
            let k2 = rhs(s + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
            let k3 = rhs(s + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
            let k4 = rhs(s + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            for i in 0..2 {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            s += h;
            if y[0] <= 0.0 {
                return Err(-1.0);
            }
            if y[0] > 10.0 && s > 0.0 {
                return Err(1.0);
            }
        }
        out.push(y[0]);
    }
    Ok(out)
}

/// The decaying solution separates the two blow-up families; bisect on C.
fn shooting_constant() -> f64 {
    let far = [9.0];
    let (mut lo, mut hi) = (-1.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        match shoot(mid, &far) {
            Err(sign) if sign < 0.0 => lo = mid,
            _ => hi = mid,
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn psi_matches_shooting_oracle() {
    let table = default_table();
    let c = shooting_constant();
    assert!((c - table.small_rho_constant()).abs() < 1e-6, "shooting C {c} vs table {}", table.small_rho_constant());
    let stops = [1e-4, 0.01, 0.1, 0.5, 1.0, 2.0];
    let shot = shoot(c, &stops).expect("decaying branch stays positive");
    for (rho, want) in stops.iter().zip(shot) {
        let got = table.eval_psi(*rho).unwrap().0;
        assert!((got - want).abs() < 1e-6 * want.max(1.0), "ρ = {rho}: table {got}, shooting {want}");
    }
}

#[test]
fn psi_frozen_small_rho_constant() {
    assert!((default_table().small_rho_constant() - 0.0108768).abs() < 5e-7);
}

/// The far field is `K₀/π`; the amplitude is fixed by the log-slope at 0.
#[test]
fn psi_far_field_amplitude() {
    let table = default_table();
    for rho in [4.0, 6.0, 8.0] {
        let ratio = table.eval_psi(rho).unwrap().0 / bessel_k0(rho).unwrap();
        assert!((ratio * PI - 1.0).abs() < 1e-4, "ρ = {rho}: ψ/K₀ = {ratio}");
    }
}

#[test]
fn psi_cache_round_trips_bit_exactly() {
    let dir = std::env::temp_dir().join(format!("hitchin-lab-oracle-{}", std::process::id()));
    let a = cached_psi(&dir, 1e-4, 12.0, 1024, 1e-8).unwrap();
    let b = cached_psi(&dir, 1e-4, 12.0, 1024, 1e-8).unwrap();
    let fresh = solve_psi(1e-4, 12.0, 1024, 1e-8).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, fresh);
    let text = fresh.to_cache_string();
    assert_eq!(PainleveTable::from_cache_str(&text).unwrap().to_cache_string(), text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn special_kahler_closed_forms() {
    let g = PolarGrid::new(2048, 64).unwrap();
    let dz2 = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0)]);
    let radial = QuadDifferentialModel::radial();
    assert_relative_eq!(sk_metric(&dz2, &g).unwrap().value, PI / 2.0, max_relative = 1e-12);
    assert_relative_eq!(sk_metric(&radial, &g).unwrap().value, PI / 6.0, max_relative = 1e-6);
    assert_relative_eq!(kahler_potential(&radial, &g).value, PI / 3.0, max_relative = 1e-6);
}

#[test]
fn semiflat_vertical_modes() {
    let cover = PolarGrid::cover(1024, 32).unwrap();
    for m in 0..3 {
        let v = semiflat_vertical(&OddOneForm::from_mode(m, &cover).unwrap()).unwrap().value;
        assert_relative_eq!(v, 2.0 * PI / (2 * m + 1) as f64, max_relative = 1e-4);
    }
}

#[test]
fn charts_agree() {
    let q = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
    let cmp = chart_crosscheck(&q, &PolarGrid::cover(2048, 64).unwrap()).unwrap();
    assert!(cmp.relative_mismatch < 1e-6);
}

fn sample_table() -> ResultTable {
    use hitchin_lab::asymptotics::{classify, Direction};
    let rows = vec![
        classify(Direction::Hh, (0..6).map(|k| (8.0 * 2f64.powi(k), 0.3 * 2f64.powf(-2.0 * k as f64 / 3.0))).collect(), 1e-14),
        classify(Direction::Rv, (0..6).map(|k| (8.0 * 2f64.powi(k), 0.0)).collect(), 1e-12),
    ];
    let mut t = table_rows(&rows);
    t.rows.extend(table_samples(&rows).rows.into_iter().map(|r| {
        let mut r = r;
        r.resize(t.columns.len(), hitchin_lab::io::Cell::Missing);
        r
    }));
    t
}

/// The JSON mirror carries the same numbers as the CSV, bit for bit.
#[test]
fn csv_and_json_mirror() {
    let t = sample_table();
    let csv = t.to_csv();
    let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    let rows = json["rows"].as_array().unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), t.columns.len());
    for (line, obj) in lines.zip(rows) {
        for (cell, col) in line.split(',').zip(&header) {
            let v = &obj[*col];
            match cell.parse::<f64>() {
                Ok(x) => assert_eq!(v.as_f64().unwrap().to_bits(), x.to_bits(), "{col}"),
                Err(_) if cell.is_empty() => assert!(v.is_null()),
                Err(_) => assert_eq!(v.as_str().unwrap(), cell),
            }
        }
    }
    assert_eq!(csv, sample_table().to_csv());
    assert_eq!(t.to_json(), sample_table().to_json());
}
