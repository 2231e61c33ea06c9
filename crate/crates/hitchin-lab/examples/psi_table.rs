//! Solve the Painlevé III profile, print its boundary behaviour and a few
//! sampled values.

use hitchin_lab::painleve::{solve_psi, DEFAULT_GRID, DEFAULT_RHO_MAX, DEFAULT_RHO_MIN, DEFAULT_TOL};
use hitchin_lab::special::bessel_k0;

fn main() -> hitchin_lab::Result<()> {
    let start = std::time::Instant::now();
    let table = solve_psi(DEFAULT_RHO_MIN, DEFAULT_RHO_MAX, DEFAULT_GRID, DEFAULT_TOL)?;
    println!("solved {} nodes in {:.2?}", table.len(), start.elapsed());
    println!("max discrete residual  {:.3e}", table.max_residual);
    println!("psi + log(rho)/3 -> {:.10}", table.small_rho_constant());
    println!("{:>10} {:>22} {:>22} {:>12}", "rho", "psi", "rho psi'", "psi/K0");
    for rho in [1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 12.0, 16.0, 32.0] {
        let (p, d) = table.eval_psi(rho)?;
        println!("{rho:>10.3e} {p:>22.15e} {d:>22.15e} {:>12.8}", p / bessel_k0(rho)?);
    }
    Ok(())
}
