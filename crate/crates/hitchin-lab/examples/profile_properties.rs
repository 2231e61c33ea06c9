//! The profiles `h_t` and `f_t` built from ψ: bounds, monotonicity and the
//! `t^{2/3}`, `t^{4/3}` growth of `sup f_t/r` and `sup f_t/r²`.

use hitchin_lab::painleve::{default_table, verify_ft_properties};

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    println!("{:>8} {:>8} {:>14} {:>14} {:>14}", "t", "r", "h_t", "r h_t'", "f_t");
    for t in [1.0, 8.0, 64.0] {
        for r in [1e-3, 0.01, 0.1, 0.5] {
            let p = table.profile_eval(t, r)?;
            println!("{t:>8} {r:>8} {:>14.6e} {:>14.6e} {:>14.6e}", p.h, p.r_dh, p.f);
        }
    }
    let ts: Vec<f64> = (0..8).map(|k| 2f64.powi(k)).collect();
    let rs: Vec<f64> = (0..=400).map(|k| (k as f64 / 400.0).powi(3)).collect();
    let rep = verify_ft_properties(table, &ts, &rs)?;
    println!("f_t range [{:.3e}, {:.6}]", rep.f_min, rep.f_max);
    println!("monotonicity violations: {} in r, {} in t", rep.monotone_r_violations, rep.monotone_t_violations);
    println!("growth of sup f/r  ~ t^{:.4}", rep.slope_sup_f_over_r);
    println!("growth of sup f/r² ~ t^{:.4}", rep.slope_sup_f_over_r2);
    Ok(())
}
