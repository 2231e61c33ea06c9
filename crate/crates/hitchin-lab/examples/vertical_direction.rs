//! Vertical deformations from odd one-forms on the spectral cover `w² = z`:
//! the semiflat value `2π/(2m+1)`, the gauge fix at the approximate pair
//! and the `t^{-1/3}` weight of the gauge packet.

use hitchin_lab::deformations::vertical_tangent;
use hitchin_lab::metrics::{semiflat_vertical, OddOneForm};
use hitchin_lab::painleve::default_table;
use hitchin_lab::su2::norm_sq;
use hitchin_lab::{CutoffSpec, PolarGrid};
use std::f64::consts::PI;

fn main() -> hitchin_lab::Result<()> {
    let table = default_table();
    let cover = PolarGrid::cover(512, 32)?;
    for m in 0..3 {
        let v = semiflat_vertical(&OddOneForm::from_mode(m, &cover)?)?.value;
        println!("m {m}: semiflat {v:.10}  2π/(2m+1) {:.10}", 2.0 * PI / (2 * m + 1) as f64);
    }
    let cover = PolarGrid::cover(512, 8)?;
    let chi = CutoffSpec::default();
    let mut prev: Option<f64> = None;
    for t in [4.0, 8.0, 16.0, 32.0] {
        let v = vertical_tangent(table, 0, t, &chi, &cover)?;
        let packet = v.xi_t.components[0]
            .iter()
            .zip(&v.data.xi_inf.components[0])
            .map(|(a, b)| norm_sq(&(a + b)).sqrt())
            .fold(0.0, f64::max);
        let ratio = prev.map_or(String::new(), |p| format!("ratio {:.6} (2^-1/3 = {:.6})", packet / p, 2f64.powf(-1.0 / 3.0)));
        println!("t {t:>4}  sup |ξ_t + ξ_∞| {packet:.6e}  {ratio}  Coulomb {:.1e}", v.relative_coulomb);
        prev = Some(packet);
    }
    Ok(())
}
