//! Permittivity, permeability and the branch-correct index of the
//! overlapping-gap host, with its band edges and left-handed window.

use lhm_decay::materials::{band_structure, optical_response, uniform_grid, MaterialParams};

fn main() {
    for gamma in [0.001, 0.01, 0.05] {
        let p = MaterialParams::reference(gamma);
        let grid = uniform_grid(0.9, 1.3, 4000);
        let bands = band_structure(&p, &grid).unwrap();
        println!("gamma = {gamma}");
        println!("  omega_Le = {:.4}, omega_Lm = {:.4}", bands.omega_le, bands.omega_lm);
        println!("  double-negative window: {:?}", bands.lh_window);
        println!("  Re n < 0 run:           {:?}", bands.negative_index_run);
    }

    let p = MaterialParams::reference(0.001);
    println!("\n omega      eps                    mu                     n");
    for w in [0.95, 1.02, 1.05, 1.08, 1.15, 1.25, 1.35] {
        let r = optical_response(&p, w).unwrap();
        println!(
            "{w:6.3}  {:>9.4} {:>+9.4}i  {:>9.4} {:>+9.4}i  {:>9.4} {:>+9.4}i",
            r.eps.re, r.eps.im, r.mu.re, r.mu.im, r.n.re, r.n.im
        );
    }
}
