//! Decay rate of an atom inside a spherical vacuum cavity, at the centre and
//! off-centre for both dipole orientations.

use lhm_decay::cavity::{rate_center, rate_radial, rate_tangential, CavityConfig, Orientation};
use lhm_decay::materials::MaterialParams;

fn main() {
    let host = MaterialParams::reference(0.001);
    let centre = CavityConfig::centered(10.0, host).unwrap();
    println!("2R = 20 lambda, atom at the centre");
    for omega in [1.0, 1.05, 1.1, 1.2, 1.3] {
        println!("  omega = {omega:.2}: Gamma/Gamma0 = {:.6}", rate_center(omega, &centre).unwrap().ratio);
    }

    println!("\nR = 0.5 lambda, omega = 1.05, moving the atom toward the wall");
    for frac in [0.0, 0.2, 0.4, 0.6, 0.8, 0.9] {
        let cfg = CavityConfig::new(0.5, frac * 0.5, Orientation::Radial, host).unwrap();
        let r = rate_radial(1.05, &cfg, 1e-10).unwrap();
        let t = rate_tangential(1.05, &cfg, 1e-10).unwrap();
        println!(
            "  r/R = {frac:.1}: radial {:.6} ({} terms), tangential {:.6} ({} terms)",
            r.ratio, r.terms_used, t.ratio, t.terms_used
        );
    }
}
