//! A horizontal direction `q̇ = ḟ dz²` with `ḟ(0) ≠ 0`: the first correction
//! against its limit, and the `t^{-2/3}` leading decay of the metric
//! difference.

use hitchin_lab::asymptotics::{geometric, metric_difference_table, Direction, TableConfig};
use hitchin_lab::deformations::{first_correction, limiting_horizontal};
use hitchin_lab::painleve::default_table;
use hitchin_lab::su2::C64;
use hitchin_lab::{PolarGrid, QuadDifferentialModel};

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let q = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0)]);
    let g = PolarGrid::new(256, 16)?;
    let lim = limiting_horizontal(&q, &g);
    for t in [8.0, 16.0, 32.0, 64.0] {
        let d = first_correction(table, &q, t, &g)?.sub(&lim)?;
        println!("t {t:>4}  sup |v_t − v_∞| away from 0: {:.4e}", d.sup_norm_where(|k| g.r(k) > 0.5));
    }
    let cfg = TableConfig {
        horizontal_dot: vec![C64::new(1.0, 0.0)],
        ..TableConfig::default()
    };
    let rows = metric_difference_table(table, &geometric(8.0, 64.0, 8)?, &[Direction::Hh], &cfg)?;
    let r = &rows[0];
    println!("hh: exponent {:?}, R² {:?}, ladder {:.4}", r.exponent, r.r_squared, r.expected);
    Ok(())
}
