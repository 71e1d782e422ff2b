//! Spectral density of a small cavity, the Markov rate and band-limited
//! shift, and the self-consistent transition frequency.

use lhm_decay::cavity::CavityConfig;
use lhm_decay::dynamics::{markov_rate_and_shift, self_consistent_frequency, spectral_density};
use lhm_decay::materials::MaterialParams;

fn main() {
    let cfg = CavityConfig::centered(0.05, MaterialParams::reference_dielectric(0.001)).unwrap();
    let sd = spectral_density(&cfg, 0.1, 5.0, 4000, 1e-10).unwrap();
    for omega in [0.9, 1.1, 1.19, 1.25, 1.5] {
        let m = markov_rate_and_shift(&sd, omega).unwrap();
        println!("omega = {omega:.2}: Gamma = {:.4e}, delta omega = {:+.4e}", m.gamma, m.delta_omega);
    }
    // coupling = Gamma0(omega_ref)/omega_ref
    for coupling in [1e-6, 1e-4] {
        let sc = self_consistent_frequency(&sd, 1.19, coupling, 0.5, 1e-13, 200).unwrap();
        println!(
            "coupling {coupling:.0e}: shifted frequency {:.8} after {} iterations",
            sc.omega_tilde, sc.iterations
        );
    }
}
