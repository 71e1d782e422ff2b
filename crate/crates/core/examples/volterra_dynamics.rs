//! Upper-state population from the Volterra equation: exponential decay in
//! a broad band, and memory effects near the local mode of a small cavity.

use lhm_decay::cavity::CavityConfig;
use lhm_decay::dynamics::*;
use lhm_decay::materials::MaterialParams;

fn main() {
    // vacuum: gamma_tilde = omega^3
    let sd = SpectralDensity::from_fn(0.1, 5.0, 2000, |w| w * w * w).unwrap();
    let m = markov_rate_and_shift(&sd, 1.0).unwrap();
    let (dt, t_max) = (0.01, 5.0);
    let kernel = MemoryKernel::sample(&sd, 1.0, 1e-6, dt, step_count(t_max, dt).unwrap()).unwrap();
    let traj = volterra_solve(&kernel, m.delta_omega, m.gamma, t_max).unwrap();
    println!("vacuum, Gamma = {:.6}", m.gamma);
    for (t, p) in traj.times.iter().zip(traj.probabilities()).step_by(100) {
        println!("  t = {t:4.1}: |C|^2 = {p:.6}, exp(-Gamma t) = {:.6}", (-m.gamma * t).exp());
    }

    // small dielectric cavity, atom tuned below the local mode
    let cfg = CavityConfig::centered(0.05, MaterialParams::reference_dielectric(0.001)).unwrap();
    let sd = spectral_density(&cfg, 0.9, 1.5, 3000, 1e-10).unwrap();
    let coupling = 1e-4;
    let sc = self_consistent_frequency(&sd, 1.19, coupling, 0.5, 1e-13, 200).unwrap();
    let (dt, t_max) = (1e-4, 0.2);
    let kernel = MemoryKernel::sample(&sd, sc.omega_tilde, coupling, dt, step_count(t_max, dt).unwrap()).unwrap();
    let traj = volterra_solve(&kernel, sc.markov.delta_omega, sc.markov.gamma, t_max).unwrap();
    println!("\nsmall cavity, Markov rate {:.4}", sc.markov.gamma);
    for (t, p) in traj.times.iter().zip(traj.probabilities()).step_by(200) {
        println!("  t = {t:5.3}: |C|^2 = {p:.6}, Markov {:.6}", (-sc.markov.gamma * t).exp());
    }
}
