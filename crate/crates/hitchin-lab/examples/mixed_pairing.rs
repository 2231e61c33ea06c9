//! Pairings between horizontal and vertical vectors. At `t = ∞` the two
//! take values in orthogonal subspaces pointwise, so the pairing is exactly
//! zero; at finite `t` it is measured after gauge fixing.

use hitchin_lab::asymptotics::{geometric, metric_difference_table, Direction, TableConfig};
use hitchin_lab::deformations::{limiting_horizontal, mixed_inner_probe, vertical_data};
use hitchin_lab::painleve::default_table;
use hitchin_lab::su2::C64;
use hitchin_lab::{CutoffSpec, PolarGrid, QuadDifferentialModel};

fn main() -> hitchin_lab::Result<()> {
    let cover = PolarGrid::cover(64, 64)?;
    let data = vertical_data(0, &CutoffSpec::default(), &cover)?;
    for dot in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
        let hor = limiting_horizontal(&QuadDifferentialModel::model(vec![dot]), &cover);
        let rep = mixed_inner_probe(&hor, &data.alpha_inf)?;
        println!("q̇ = {dot} dz²: pointwise max {:e}, pairing {:e}", rep.pointwise_max, rep.pairing);
    }
    let rows = metric_difference_table(
        default_table(),
        &geometric(8.0, 64.0, 6)?,
        &[Direction::Rv, Direction::Hv],
        &TableConfig::default(),
    )?;
    for r in rows {
        let peak = r.samples.iter().fold(0.0_f64, |m, s| m.max(s.1.abs()));
        println!("{}: {:?}, largest sample {peak:.3e}, floor {:.3e}", r.direction.name(), r.decay, r.floor);
    }
    Ok(())
}
