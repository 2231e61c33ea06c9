//! Limiting, fiducial and approximate pairs over `q = z dz²` and their
//! Hitchin residuals. The fiducial residual is pure discretization error;
//! the approximate pair differs from it only inside the cutoff annulus.

use hitchin_lab::fields::{approximate_solution, fiducial_solution, hitchin_residual, limiting_configuration};
use hitchin_lab::painleve::default_table;
use hitchin_lab::{CutoffSpec, PolarGrid, QuadDifferentialModel};

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let t = 4.0;
    let mut g = PolarGrid::new(16, 16)?;
    println!("fiducial residual at t = {t} under refinement");
    let mut prev = None;
    for _ in 0..4 {
        let res = hitchin_residual(&fiducial_solution(table, t, &g)?, t)?.sup();
        let order = prev.map(|p: f64| (p / res).log2());
        println!("  {:>4} x {:<4} sup {res:.4e}  order {}", g.n_r, g.n_theta, order.map_or("-".into(), |o| format!("{o:.3}")));
        prev = Some(res);
        g = g.refined();
    }

    let q = QuadDifferentialModel::radial();
    let chi = CutoffSpec::default();
    let g = PolarGrid::new(128, 16)?;
    let lim = hitchin_residual(&limiting_configuration(&q, &g), f64::INFINITY)?;
    println!("limiting pair residual away from the origin {:.3e}", lim.sup_where(|k| g.r(k) > 0.1));
    println!("cutoff defect (approximate minus fiducial residual)");
    for t in [4.0, 8.0, 12.0, 16.0, 20.0] {
        let ra = hitchin_residual(&approximate_solution(table, &q, t, &chi, &g)?, t)?;
        let rf = hitchin_residual(&fiducial_solution(table, t, &g)?, t)?;
        println!("  t {t:>4}  sup {:.3e}", ra.sub(&rf)?.sup());
    }
    Ok(())
}
