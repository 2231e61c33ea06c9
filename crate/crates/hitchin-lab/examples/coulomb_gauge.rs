//! Putting a tangent vector into Coulomb gauge at the approximate pair by
//! solving with `ℒ_t`, and the energy identity `⟨ℒξ, ξ⟩ = ‖D¹ξ‖²`.

use hitchin_lab::deformations::{first_correction, TangentPair};
use hitchin_lab::fields::approximate_solution;
use hitchin_lab::gauge_op::{assemble_lt, coulomb_norm, gauge_fix_coords, TangentCoords, GAUGE_TOL};
use hitchin_lab::painleve::default_table;
use hitchin_lab::su2::C64;
use hitchin_lab::{CutoffSpec, PolarGrid, QuadDifferentialModel};

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let t = 8.0;
    let g = PolarGrid::new(48, 16)?;
    let pair = approximate_solution(table, &QuadDifferentialModel::radial(), t, &CutoffSpec::default(), &g)?;
    let op = assemble_lt(&pair, t)?;
    println!("ℒ_t on {} unknowns, smallest eigenvalue {:.6}", op.unknowns(), op.smallest_eigenvalue(100)?);

    // A horizontal vector with its first-order gauge fix removed.
    let q = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0)]);
    let v: TangentPair = first_correction(table, &q, t, &g)?;
    let raw = TangentCoords::from_pair(&v);
    let fixed = gauge_fix_coords(&op, &raw, GAUGE_TOL)?;
    println!("Coulomb residual before {:.3e}, after {:.3e}", coulomb_norm(&op, &raw), coulomb_norm(&op, &fixed.coords));
    println!("relative {:.3e} after {} solve steps", fixed.relative_coulomb, fixed.result.iterations);

    let x = &fixed.result.coords;
    let kx = op.apply_k(x);
    let lhs: f64 = x.iter().zip(&kx).map(|(a, b)| a * b).sum();
    println!("<Lξ,ξ> = {lhs:.12e}\n|D¹ξ|² = {:.12e}", op.energy(x));
    Ok(())
}
