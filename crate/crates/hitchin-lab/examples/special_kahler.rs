//! The special Kähler metric on the base: closed forms, the cone structure
//! under `q ↦ t²q`, and the cross-check against the spectral-cover chart.

use hitchin_lab::metrics::{chart_crosscheck, cone_check, kahler_potential, sk_metric};
use hitchin_lab::su2::C64;
use hitchin_lab::{PolarGrid, QuadDifferentialModel};
use std::f64::consts::PI;

fn main() -> hitchin_lab::Result<()> {
    let g = PolarGrid::new(2048, 64)?;
    let dz2 = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0)]);
    let radial = QuadDifferentialModel::radial();
    let a = sk_metric(&dz2, &g)?;
    let b = sk_metric(&radial, &g)?;
    println!("|dz²|²_sK = {:.12} (π/2 = {:.12}, est. err {:?})", a.value, PI / 2.0, a.err_est);
    println!("|q|²_sK   = {:.12} (π/6 = {:.12})", b.value, PI / 6.0);
    println!("K(q)      = {:.12} (π/3 = {:.12})", kahler_potential(&radial, &g).value, PI / 3.0);

    let q = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0), C64::new(0.3, -0.2)]);
    let rep = cone_check(&q, &[0.5, 2.0, 10.0], &PolarGrid::new(256, 64)?)?;
    for r in &rep.rows {
        println!(
            "scale {:>5}: homogeneity {:.1e}, radial {:.1e}, potential {:.1e}",
            r.scale, r.homogeneity_defect, r.radial_defect, r.potential_defect
        );
    }
    println!("4|q|²_sK with ∫|q| = 1: {:.15}", rep.normalized_radial_speed);

    let q = QuadDifferentialModel::model(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
    let cmp = chart_crosscheck(&q, &PolarGrid::cover(2048, 64)?)?;
    println!("z chart {:.12}, w chart {:.12}, mismatch {:.2e}", cmp.z_chart, cmp.w_chart, cmp.relative_mismatch);
    Ok(())
}
