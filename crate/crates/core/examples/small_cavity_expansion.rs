//! Small-cavity expansion of the centre rate against the exact result.

use lhm_decay::cavity::{rate_center, rate_center_expansion, rate_small_cavity_absorptive, CavityConfig};
use lhm_decay::materials::{ConstantMedium, MaterialParams};
use num_complex::Complex64;

fn main() {
    let host = ConstantMedium::new(Complex64::new(2.0, 0.5), Complex64::new(1.3, 0.1));
    println!("    R       exact        three terms   error");
    for radius in [0.04, 0.02, 0.01, 0.005] {
        let cfg = CavityConfig::centered(radius, host).unwrap();
        let exact = rate_center(1.0, &cfg).unwrap().ratio;
        let t = rate_center_expansion(1.0, &cfg).unwrap();
        println!("  {radius:6.3}  {exact:12.6}  {:12.6}  {:.3e}", t.sum, (t.sum - exact).abs());
    }

    // the local mode of a small dielectric cavity, where 2 eps = -1
    let cfg = CavityConfig::centered(0.05, MaterialParams::reference_dielectric(0.001)).unwrap();
    println!("\n2R = 0.1 lambda, dielectric host");
    for omega in [1.15, 1.19, 1.198, 1.21, 1.25] {
        let exact = rate_center(omega, &cfg).unwrap().ratio;
        let near = rate_small_cavity_absorptive(omega, &cfg).unwrap();
        println!(
            "  omega = {omega:.3}: exact {exact:12.4}, R^-3 term {:12.4} (dominance {:.1})",
            near.rate, near.dominance
        );
    }
}
