//! Reflection coefficients of the cavity wall for the first few multipoles.

use lhm_decay::cavity::{mie_coefficients, CavityConfig};
use lhm_decay::materials::MaterialParams;

fn main() {
    let cfg = CavityConfig::centered(0.5, MaterialParams::reference(0.01)).unwrap();
    for omega in [0.9, 1.05, 1.2] {
        println!("omega = {omega}, z = {:.3}", cfg.size_parameter(omega));
        for order in 1..=4 {
            let m = mie_coefficients(order, omega, &cfg).unwrap();
            println!(
                "  n = {order}: C^M = {:+.6e} {:+.6e}i   C^N = {:+.6e} {:+.6e}i",
                m.cm.re, m.cm.im, m.cn.re, m.cn.im
            );
        }
    }
}
