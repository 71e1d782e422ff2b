//! Spherical Bessel and Hankel functions at complex argument.

use lhm_decay::specfun::{sph_bessel_j, sph_hankel1, spherical_values_scaled};
use num_complex::Complex64;

fn main() {
    let z = Complex64::new(7.5, 0.2);
    for n in [0, 1, 2, 10, 40] {
        let j = sph_bessel_j(n, z).unwrap();
        let h = sph_hankel1(n, z).unwrap();
        println!("n = {n:2}: j = {:+.6e}{:+.6e}i, h = {:+.6e}{:+.6e}i", j.re, j.im, h.re, h.im);
    }
    // scaled values stay finite far from the real axis
    let far = Complex64::new(30.0, 300.0);
    let v = spherical_values_scaled(20, far).unwrap();
    let want = Complex64::i() / far * Complex64::from_polar((far.im - far.im.abs()).exp(), -far.re);
    println!("\nscaled Wronskian at {far}: {:.3e} relative error", (v.wronskian() - want).norm() / want.norm());
}
