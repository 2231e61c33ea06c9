//! The radial direction `q̇ = q`: the first-corrected vector `(0, φ_t)`,
//! its gauge fix, and `‖·‖² − ‖φ_∞‖²` over `t`, fitted against the
//! `t^{-5/3}` ladder.

use hitchin_lab::asymptotics::{geometric, metric_difference_table, Direction, TableConfig};
use hitchin_lab::deformations::radial_tangent;
use hitchin_lab::metrics::l2_inner;
use hitchin_lab::painleve::default_table;
use hitchin_lab::PolarGrid;

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let g = PolarGrid::new(128, 16)?;
    for t in [8.0, 32.0] {
        let v = radial_tangent(table, t, &g)?;
        let a = l2_inner(&v.tangent, &v.tangent)?.value;
        let b = l2_inner(&v.limit, &v.limit)?.value;
        println!("t {t:>4}  |v_t|² {a:.10}  |v_∞|² {b:.10}  (ungauged)");
    }
    let ts = geometric(8.0, 64.0, 8)?;
    let rows = metric_difference_table(table, &ts, &[Direction::Rr], &TableConfig::default())?;
    let row = &rows[0];
    for (t, d) in &row.samples {
        println!("  t {t:>8.3}  difference {d:.6e}");
    }
    println!(
        "{:?}: exponent {:?} (ladder {:.4}), coefficient {:?}",
        row.decay, row.exponent, row.expected, row.coefficient
    );
    Ok(())
}
