//! Bulk Green tensor of an absorbing magnetodielectric and its approach to
//! the vacuum tensor at high frequency.

use lhm_decay::green::{bulk_green, high_frequency_check, im_green_equal_bulk};
use lhm_decay::materials::{optical_response, MaterialParams};

fn main() {
    let p = MaterialParams::reference(0.01);
    let resp = optical_response(&p, 1.05).unwrap();
    let g = bulk_green(resp.eps, resp.mu, 1.05, [0.0; 3], [0.1, 0.0, 0.3]).unwrap();
    println!("G at omega = 1.05, separation (0.1, 0, 0.3):");
    for row in g.components {
        println!("  {:+.4e}{:+.4e}i  {:+.4e}{:+.4e}i  {:+.4e}{:+.4e}i", row[0].re, row[0].im, row[1].re, row[1].im, row[2].re, row[2].im);
    }

    let lossless = im_green_equal_bulk(4.0.into(), 1.0.into(), 1.0).unwrap();
    let vacuum = im_green_equal_bulk(1.0.into(), 1.0.into(), 1.0).unwrap();
    println!("\nIm G(r, r) in a lossless eps = 4 host relative to vacuum: {}", lossless / vacuum);

    let report = high_frequency_check(&p, [0.0; 3], [0.2, 0.1, -0.3], &[10.0, 100.0, 1000.0]).unwrap();
    println!("\n  omega    |G - G_V| / |G_V|");
    for row in &report.rows {
        println!("  {:6}   {:.3e}", row.omega, row.relative_difference);
    }
}
