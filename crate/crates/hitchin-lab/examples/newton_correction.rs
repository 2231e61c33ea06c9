//! Newton correction of the approximate pair to an exact solution: the
//! residual history shows quadratic convergence, and the size of the
//! correction falls off exponentially in `t`.

use hitchin_lab::fields::approximate_solution;
use hitchin_lab::gauge_op::newton_correct;
use hitchin_lab::painleve::default_table;
use hitchin_lab::{CutoffSpec, PolarGrid, QuadDifferentialModel};

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let chi = CutoffSpec::default();
    let g = PolarGrid::new(256, 8)?;
    for t in [4.0, 8.0, 12.0, 16.0, 20.0] {
        let pair = approximate_solution(table, &QuadDifferentialModel::radial(), t, &chi, &g)?;
        let (exact, rep) = newton_correct(table, &pair, &chi, 1e-12)?;
        let hist: Vec<String> = rep.residual_history.iter().map(|r| format!("{r:.2e}")).collect();
        println!(
            "t {t:>4}: residuals [{}], distance {:.3e}, h_t shift at r = 1/2 {:.3e}",
            hist.join(", "),
            rep.distance_sup,
            exact.radial.as_ref().map_or(f64::NAN, |p| p.h[g.n_r / 2]) - pair.radial.as_ref().map_or(f64::NAN, |p| p.h[g.n_r / 2])
        );
    }
    Ok(())
}
