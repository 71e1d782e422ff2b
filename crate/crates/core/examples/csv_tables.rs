//! The tables behind the command-line tool, built in-process.

use lhm_decay::cavity::CavityConfig;
use lhm_decay::cli::{cavity_table, index_table};
use lhm_decay::config::parse_material;
use lhm_decay::materials::uniform_grid;

fn main() {
    let p = parse_material(
        "[electric]\nomega_p = 0.75\nomega_t = 1.03\ngamma = 0.01\n\n[magnetic]\nomega_p = 0.43\nomega_t = 1.0\ngamma = 0.01\n",
    )
    .unwrap();
    let grid = uniform_grid(1.0, 1.1, 5);
    print!("{}", index_table(&p, &grid).unwrap().to_csv());
    println!();
    let cfg = CavityConfig::centered(1.0, p).unwrap();
    print!("{}", cavity_table(&cfg, &grid, 1e-10).unwrap().to_csv());
}
