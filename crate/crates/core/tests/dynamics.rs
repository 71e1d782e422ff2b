use lhm_decay::cavity::{rate_center, CavityConfig};
use lhm_decay::dynamics::*;
use lhm_decay::materials::{ConstantMedium, MaterialParams};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn flat(center: f64, half_width: f64, g: f64, steps: usize) -> SpectralDensity {
    SpectralDensity::from_fn(center - half_width, center + half_width, steps, |_| g).unwrap()
}

/// Largest deviation of `|C|²` from `e^{−Γt}` over the trajectory.
fn markov_deviation(traj: &DecayTrajectory, gamma: f64) -> f64 {
    traj.times
        .iter()
        .zip(traj.probabilities())
        .map(|(&t, p)| (p - (-gamma * t).exp()).abs())
        .fold(0.0, f64::max)
}

#[test]
fn vacuum_density_is_cubic() {
    let cfg = CavityConfig::centered(0.3, MaterialParams::vacuum()).unwrap();
    let sd = spectral_density(&cfg, 0.5, 2.0, 300, 1e-10).unwrap();
    for (w, g) in sd.omega().iter().zip(sd.gamma_tilde()) {
        assert_eq!(*g, w * w * w);
    }
}

#[test]
fn density_peaks_follow_cavity_resonances() {
    let cfg = CavityConfig::centered(10.0, MaterialParams::reference_dielectric(0.001)).unwrap();
    let sd = spectral_density(&cfg, 1.03, 1.274, 20000, 1e-10).unwrap();
    let (w, g) = (sd.omega(), sd.gamma_tilde());
    let ratio = |k: usize| rate_center(w[k], &cfg).unwrap().ratio;
    let peaks: Vec<usize> = (1..w.len() - 1)
        .filter(|&k| g[k] > g[k - 1] && g[k] > g[k + 1] && ratio(k) > 1.0)
        .collect();
    assert!(peaks.len() >= 3);
    for k in peaks {
        // the ω³ factor moves a peak by less than one grid step
        let local = (k - 1..=k + 1).max_by(|&a, &b| ratio(a).total_cmp(&ratio(b))).unwrap();
        assert_eq!(local, k, "ω = {}", w[k]);
    }
}

#[test]
fn constant_density_has_no_shift() {
    let sd = flat(1.0, 0.2, 0.7, 400);
    let m = markov_rate_and_shift(&sd, 1.0).unwrap();
    assert!((m.gamma - 0.7).abs() < 1e-14);
    assert!(m.delta_omega.abs() < 1e-12, "{}", m.delta_omega);
}

#[test]
fn linear_density_shift() {
    let (wa, half, g, g0) = (1.1, 0.3, 2.5, 4.0);
    let sd = SpectralDensity::from_fn(wa - half, wa + half, 60, |w| g * (w - wa) + g0).unwrap();
    let m = markov_rate_and_shift(&sd, wa).unwrap();
    let want = g * 2.0 * half / (2.0 * PI);
    assert!((m.delta_omega - want).abs() < 1e-12, "{} vs {want}", m.delta_omega);
    assert!((m.gamma - g0).abs() < 1e-12);
}

#[test]
fn outside_band_rejected() {
    let sd = flat(1.0, 0.2, 1.0, 10);
    assert!(matches!(
        markov_rate_and_shift(&sd, 1.3),
        Err(DynamicsError::OutsideBand { .. })
    ));
    assert!(markov_rate_and_shift(&sd, 0.8).is_err());
}

#[test]
fn self_consistency_converges_for_small_cavity() {
    let cfg = CavityConfig::centered(0.05, MaterialParams::reference_dielectric(0.001)).unwrap();
    let sd = spectral_density(&cfg, 0.1, 5.0, 4000, 1e-10).unwrap();
    let sc = self_consistent_frequency(&sd, 1.15, 1e-3, 0.5, 1e-12, 50).unwrap();
    assert!(sc.iterations < 50);
    let check = markov_rate_and_shift(&sd, sc.omega_tilde).unwrap();
    assert!((sc.omega_tilde - (1.15 - 1e-3 * check.delta_omega)).abs() < 1e-10);
}

#[test]
fn boxcar_kernel() {
    let (center, half, g) = (1.0, 0.25, 1.3);
    let sd = flat(center, half, g, 8);
    let taus = [0.0, 0.5, 3.0, 40.0, 1000.0];
    let k = memory_kernel(&sd, center, &taus).unwrap();
    let w = 2.0 * half;
    assert!((k[0] - Complex64::new(-g * w / (2.0 * PI), 0.0)).norm() < 1e-14);
    for (&t, kv) in taus.iter().zip(&k).skip(1) {
        let want = -(g / (2.0 * PI)) * 2.0 * (w * t / 2.0).sin() / t;
        assert!((kv.re - want).abs() < 1e-12, "τ = {t}: {kv} vs {want}");
        assert!(kv.im.abs() < 1e-12);
    }
}

#[test]
fn kernel_at_origin_is_negative_total_weight() {
    let sd = SpectralDensity::from_fn(0.5, 2.0, 300, |w| w * w * w * (1.0 + 0.5 * (7.0 * w).sin())).unwrap();
    let k0 = memory_kernel(&sd, 1.2, &[0.0]).unwrap()[0];
    let (w, g) = (sd.omega(), sd.gamma_tilde());
    let trap: f64 = (1..w.len()).map(|i| 0.5 * (w[i] - w[i - 1]) * (g[i] + g[i - 1])).sum();
    assert_eq!(k0.im, 0.0);
    assert!(k0.re < 0.0);
    assert!((k0.re + trap / (2.0 * PI)).abs() < 1e-13);
}

#[test]
fn symmetric_density_gives_real_kernel() {
    let sd = SpectralDensity::from_fn(0.6, 1.4, 200, |w| 1.0 + (w - 1.0) * (w - 1.0) * 3.0).unwrap();
    let taus: Vec<f64> = (0..50).map(|k| k as f64 * 0.7).collect();
    for k in memory_kernel(&sd, 1.0, &taus).unwrap() {
        assert!(k.im.abs() < 1e-13 * (1.0 + k.norm()), "{k}");
    }
}

#[test]
fn zero_kernel_keeps_amplitude() {
    let traj = volterra_solve(&MemoryKernel::zero(0.01, 500), 0.0, 0.0, 5.0).unwrap();
    assert!(traj.cu.iter().all(|c| *c == Complex64::new(1.0, 0.0)));
    assert_eq!(traj.times.len(), 501);
}

#[test]
fn pure_shift_rotates_phase() {
    let dw = 0.8;
    let traj = volterra_solve(&MemoryKernel::zero(1e-3, 3000), dw, 0.0, 3.0).unwrap();
    let last = *traj.cu.last().unwrap();
    let want = Complex64::from_polar(1.0, -dw * 3.0);
    assert!((last - want).norm() < 1e-6);
}

#[test]
fn markov_limit_wide_flat_band() {
    let (omega_tilde, coupling, gamma) = (1.0, 1e-3, 1.0);
    // half-width 100 Γ in units of Γ0
    let half = 100.0 * gamma * coupling;
    let sd = flat(omega_tilde, half, gamma, 4);
    let m = markov_rate_and_shift(&sd, omega_tilde).unwrap();
    assert!(m.delta_omega.abs() < 1e-10);
    let t_max = 5.0 / m.gamma;
    let dt = 2e-3;
    let kernel = MemoryKernel::sample(&sd, omega_tilde, coupling, dt, step_count(t_max, dt).unwrap()).unwrap();
    let traj = volterra_solve(&kernel, m.delta_omega, m.gamma, t_max).unwrap();
    let dev = markov_deviation(&traj, m.gamma);
    assert!(dev < 0.01, "max deviation {dev}");
    assert!(traj.cu.iter().all(|c| c.norm() <= 1.0 + 1e-9));
}

#[test]
fn markov_limit_with_shift() {
    // an asymmetric band: the medium-induced shift cancels in the rotating frame
    let (omega_tilde, coupling) = (1.0, 1e-3);
    let sd = SpectralDensity::from_fn(0.85, 1.25, 400, |w| 1.0 + 0.8 * (w - omega_tilde)).unwrap();
    let m = markov_rate_and_shift(&sd, omega_tilde).unwrap();
    assert!(m.delta_omega.abs() > 0.01);
    let t_max = 5.0 / m.gamma;
    let dt = 2e-3;
    let kernel = MemoryKernel::sample(&sd, omega_tilde, coupling, dt, step_count(t_max, dt).unwrap()).unwrap();
    let traj = volterra_solve(&kernel, m.delta_omega, m.gamma, t_max).unwrap();
    assert!(markov_deviation(&traj, m.gamma) < 0.01);
}

#[test]
fn second_order_in_time_step() {
    let sd = flat(1.0, 0.01, 1.0, 4);
    let run = |dt: f64| {
        let kernel = MemoryKernel::sample(&sd, 1.0, 1e-3, dt, step_count(2.0, dt).unwrap()).unwrap();
        volterra_solve(&kernel, 0.0, 1.0, 2.0).unwrap().cu.last().unwrap().norm()
    };
    let reference = run(0.0025);
    let e1 = (run(0.02) - reference).abs();
    let e2 = (run(0.01) - reference).abs();
    let order = (e1 / e2).log2();
    assert!(order > 1.7 && order < 2.5, "{e1} {e2} order {order}");
}

#[test]
fn unstable_kernel_aborts() {
    let kernel = MemoryKernel::from_values(0.01, vec![Complex64::new(50.0, 0.0); 1001]).unwrap();
    assert!(matches!(
        volterra_solve(&kernel, 0.0, 0.0, 10.0),
        Err(DynamicsError::Unstable { .. })
    ));
}

#[test]
fn integrated_kernel_matches_quadrature_of_kernel() {
    let sd = SpectralDensity::from_fn(0.7, 1.6, 90, |w| w * w * w * (1.0 + 0.4 * (9.0 * w).cos())).unwrap();
    let wt = 1.1;
    let taus: Vec<f64> = (0..=4000).map(|k| k as f64 * 0.005).collect();
    let k = memory_kernel(&sd, wt, &taus).unwrap();
    let f = integrated_kernel(&sd, wt, &taus).unwrap();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..taus.len() {
        // Simpson over pairs of intervals
        if m % 2 == 0 {
            acc += 0.005 / 3.0 * (k[m - 2] + 4.0 * k[m - 1] + k[m]);
            assert!((acc - f[m]).norm() < 1e-9, "τ = {}: {} vs {}", taus[m], acc, f[m]);
        }
    }
}

#[test]
fn antiderivatives_match_quadrature() {
    let sd = SpectralDensity::from_fn(0.7, 1.6, 90, |w| w * w * w * (1.0 + 0.4 * (9.0 * w).cos())).unwrap();
    let wt = 1.1;
    let h = 0.005;
    let taus: Vec<f64> = (0..=4000).map(|k| k as f64 * h).collect();
    let a = kernel_antiderivatives(&sd, wt, &taus).unwrap();
    let (mut p1, mut p2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for m in (2..taus.len()).step_by(2) {
        p1 += h / 3.0 * (a[m - 2][0] + 4.0 * a[m - 1][0] + a[m][0]);
        p2 += h / 3.0 * (a[m - 2][1] + 4.0 * a[m - 1][1] + a[m][1]);
        assert!((p1 - a[m][1]).norm() < 1e-9, "Φ1 at τ = {}: {} vs {}", taus[m], p1, a[m][1]);
        assert!((p2 - a[m][2]).norm() < 1e-9, "Φ2 at τ = {}: {} vs {}", taus[m], p2, a[m][2]);
    }
}

#[test]
fn integrated_kernel_tends_to_markov_values() {
    let sd = SpectralDensity::from_fn(0.5, 3.0, 500, |w| w * w * w).unwrap();
    let wt = 1.0;
    let m = markov_rate_and_shift(&sd, wt).unwrap();
    let f = integrated_kernel(&sd, wt, &[1e5]).unwrap()[0];
    // the remaining oscillation decays like 1/τ
    assert!((f.re + m.gamma / 2.0).abs() < 1e-4, "{f} vs Γ = {}", m.gamma);
    assert!((f.im - m.delta_omega).abs() < 1e-4, "{f} vs δω = {}", m.delta_omega);
}

#[test]
fn markov_limit_unresolved_wide_band() {
    // κ = 1e-3 and a band of width ~5 ω_ref: the kernel decays within ~1e-4/Γ0,
    // far below the time step. The steep cubic density dresses the pole by
    // Z = 1/(1 + κ dδω/dω), so |C|² → Z² e^{−ZΓt}.
    let sd = SpectralDensity::from_fn(0.1, 5.0, 2000, |w| w * w * w).unwrap();
    let m = markov_rate_and_shift(&sd, 1.0).unwrap();
    assert!((m.gamma - 1.0).abs() < 1e-6);
    let kappa = 1e-3;
    let slope = (markov_rate_and_shift(&sd, 1.01).unwrap().delta_omega
        - markov_rate_and_shift(&sd, 0.99).unwrap().delta_omega)
        / 0.02;
    let z = 1.0 / (1.0 + kappa * slope);
    let t_max = 5.0;
    for dt in [0.04, 0.01] {
        let kernel = MemoryKernel::sample(&sd, 1.0, kappa, dt, step_count(t_max, dt).unwrap()).unwrap();
        let traj = volterra_solve(&kernel, m.delta_omega, m.gamma, t_max).unwrap();
        assert!(markov_deviation(&traj, m.gamma) < 0.015);
        for (&t, p) in traj.times.iter().zip(traj.probabilities()).skip(step_count(0.5, dt).unwrap()) {
            let dressed = z * z * (-z * m.gamma * t).exp();
            assert!((p / dressed - 1.0).abs() < 5e-4, "dt {dt} t {t}: {p} vs {dressed}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn absorbing_hosts_give_nonnegative_density(
        er in -5.0f64..5.0, ei in 1e-3f64..2.0, mr in -5.0f64..5.0, mi in 1e-3f64..2.0, radius in 0.05f64..2.0
    ) {
        let host = ConstantMedium::new(Complex64::new(er, ei), Complex64::new(mr, mi));
        let cfg = CavityConfig::centered(radius, host).unwrap();
        let sd = spectral_density(&cfg, 0.5, 1.5, 50, 1e-10).unwrap();
        prop_assert!(sd.gamma_tilde().iter().all(|&g| g >= 0.0));
    }

    #[test]
    fn pv_exact_for_quadratics(
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, w in 0.62f64..1.38, steps in 3usize..200
    ) {
        // offset keeps the table nonnegative
        let f = |x: f64| 20.0 + a + b * x + c * x * x;
        let (lo, hi) = (0.6, 1.4);
        let sd = SpectralDensity::from_fn(lo, hi, steps, f).unwrap();
        let m = markov_rate_and_shift(&sd, w).unwrap();
        // ∫ (f(x) − f(w))/(x − w) = ∫ b + c(x + w)
        let exact = (b + c * w) * (hi - lo) + c * (hi * hi - lo * lo) / 2.0
            + f(w) * ((hi - w) / (w - lo)).ln();
        prop_assert!((m.delta_omega - exact / (2.0 * PI)).abs() < 1e-11, "{} vs {}", m.delta_omega, exact / (2.0 * PI));
    }
}
