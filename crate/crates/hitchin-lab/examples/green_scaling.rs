//! Scaling of the Green kernel of `ℒ_t`: solving against a packet at `t`
//! and at `2^{3/2} t` on the correspondingly shrunk disk gives the same
//! `t^{4/3} ξ`. Also prints `‖ℒ_t⁻¹‖` over `t`.

use hitchin_lab::fields::fiducial_solution;
use hitchin_lab::gauge_op::{assemble_lt, verify_green_scaling, PacketSpec};
use hitchin_lab::painleve::default_table;
use hitchin_lab::PolarGrid;

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let g = PolarGrid::new(48, 16)?;
    for packet in [PacketSpec::Exponential, PacketSpec::Dipole] {
        for t in [2.0, 8.0, 32.0] {
            let rep = verify_green_scaling(table, t, 2f64.powf(1.5), packet, &g)?;
            println!(
                "{packet:?} t {t:>4} -> {:>7.3}: max relative deviation {:.2e}",
                rep.t_scaled, rep.max_relative_deviation
            );
        }
    }
    let g = PolarGrid::new(32, 16)?;
    for t in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
        let op = assemble_lt(&fiducial_solution(table, t, &g)?, t)?;
        println!("t {t:>4}  |L_t^-1| = {:.6}", 1.0 / op.smallest_eigenvalue(200)?);
    }
    Ok(())
}
