//! Exponential packets `f(t^{2/3} z)` integrated against `z^{j-1}` decay
//! like `t^{-2(j+1)/3}`; fitting and peeling recover the ladder.

use hitchin_lab::asymptotics::{fit_power_law, geometric, packet_integral, peel_expansion, PacketProfile, PacketShape, Window};

fn main() -> hitchin_lab::Result<()> {
    let ts = geometric(8.0, 512.0, 13)?;
    for j in 0..3 {
        let profile = PacketProfile {
            shape: PacketShape::ThreeHalves,
            angular_mode: 1 - j,
        };
        let samples: Vec<(f64, f64)> = ts
            .iter()
            .map(|&t| Ok((t, packet_integral(&profile, j, t)?.norm())))
            .collect::<hitchin_lab::Result<_>>()?;
        let fit = fit_power_law(&samples, Window::All)?;
        println!("j {j}: exponent {:.6} (expected {:.6})", fit.exponent, -2.0 * (j as f64 + 1.0) / 3.0);
    }

    // A synthetic two-term ladder peeled back into its coefficients.
    let samples: Vec<(f64, f64)> = ts.iter().map(|&t| (t, 3.0 * t.powf(-2.0 / 3.0) - 5.0 * t.powf(-1.0))).collect();
    let peel = peel_expansion(&samples, &[-2.0 / 3.0, -1.0])?;
    println!("peeled coefficients {:?}, relative residual {:.1e}", peel.coefficients, peel.relative_residual);
    Ok(())
}
