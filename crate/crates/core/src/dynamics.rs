//! Atom-field dynamics from a tabulated spectral density.
//!
//! `gamma_tilde(ω)` is the rate function `2ω²/(ħε0c²)·d·Im G·d` in units of
//! `Γ0(ω_ref)`, on a frequency grid in units of `ω_ref`. Times are in units
//! of `1/Γ0(ω_ref)`. The two scales are tied by the dimensionless coupling
//! `κ = Γ0(ω_ref)/ω_ref`, which only enters the memory kernel and the
//! conversion of the shift into a frequency.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::cavity::{decay_ratio, CavityConfig, CavityError};
use crate::specfun::{cosine_integral_entire, sine_integral};

/// The solver gives up once `|C_u|` exceeds this.
pub const INSTABILITY_BOUND: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Cavity(#[from] CavityError),
    #[error("frequency {omega} outside the band ({lo}, {hi})")]
    OutsideBand { omega: f64, lo: f64, hi: f64 },
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("self-consistent frequency did not converge in {iterations} iterations (last {last})")]
    NoConvergence { iterations: usize, last: f64 },
    #[error("amplitude blew up: |C_u| = {modulus} at t = {time}")]
    Unstable { time: f64, modulus: f64 },
}

type Result<T> = std::result::Result<T, DynamicsError>;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    omega: Vec<f64>,
    gamma_tilde: Vec<f64>,
}

impl SpectralDensity {
    pub fn new(omega: Vec<f64>, gamma_tilde: Vec<f64>) -> Result<Self> {
        if omega.len() < 2 || omega.len() != gamma_tilde.len() {
            return Err(DynamicsError::InvalidInput(format!(
                "need at least two (omega, gamma) pairs of equal length, got {} and {}",
                omega.len(),
                gamma_tilde.len()
            )));
        }
        if omega.iter().any(|w| !w.is_finite()) || omega.windows(2).any(|w| w[1] <= w[0]) {
            return Err(DynamicsError::InvalidInput(
                "frequency grid must be finite and strictly increasing".into(),
            ));
        }
        if let Some(g) = gamma_tilde.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
            return Err(DynamicsError::InvalidInput(format!(
                "spectral density must be finite and nonnegative, found {g}"
            )));
        }
        Ok(Self { omega, gamma_tilde })
    }

    /// Tabulates `f` on `steps + 1` uniform points of `[lo, hi]`.
    pub fn from_fn(lo: f64, hi: f64, steps: usize, f: impl Fn(f64) -> f64 + Sync) -> Result<Self> {
        let omega = band_grid(lo, hi, steps)?;
        let gamma = omega.par_iter().map(|&w| f(w)).collect();
        Self::new(omega, gamma)
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn gamma_tilde(&self) -> &[f64] {
        &self.gamma_tilde
    }

    pub fn band(&self) -> (f64, f64) {
        (self.omega[0], self.omega[self.omega.len() - 1])
    }

    pub fn contains(&self, omega: f64) -> bool {
        let (lo, hi) = self.band();
        omega > lo && omega < hi
    }

    fn check_inside(&self, omega: f64) -> Result<()> {
        if self.contains(omega) {
            Ok(())
        } else {
            let (lo, hi) = self.band();
            Err(DynamicsError::OutsideBand { omega, lo, hi })
        }
    }

    /// Three nodes around `omega` for quadratic interpolation.
    fn stencil(&self, omega: f64) -> [usize; 3] {
        let len = self.omega.len();
        let i = self.omega.partition_point(|&w| w <= omega).saturating_sub(1);
        let start = if i == 0 {
            0
        } else if i + 1 >= len - 1 {
            len - 3
        } else if omega - self.omega[i] <= self.omega[i + 1] - omega {
            i - 1
        } else {
            i
        };
        [start, start + 1, start + 2]
    }

    /// Quadratic interpolant through the nearest three nodes: value and
    /// derivative at `omega` (linear for a two-point table).
    pub fn interpolate(&self, omega: f64) -> (f64, f64) {
        if self.omega.len() == 2 {
            let (x0, x1) = (self.omega[0], self.omega[1]);
            let (g0, g1) = (self.gamma_tilde[0], self.gamma_tilde[1]);
            let slope = (g1 - g0) / (x1 - x0);
            return (g0 + slope * (omega - x0), slope);
        }
        let [a, b, c] = self.stencil(omega);
        let (x0, x1, x2) = (self.omega[a], self.omega[b], self.omega[c]);
        let (y0, y1, y2) = (self.gamma_tilde[a], self.gamma_tilde[b], self.gamma_tilde[c]);
        // Newton form
        let d01 = (y1 - y0) / (x1 - x0);
        let d12 = (y2 - y1) / (x2 - x1);
        let d012 = (d12 - d01) / (x2 - x0);
        let value = y0 + (omega - x0) * (d01 + (omega - x1) * d012);
        let slope = d01 + d012 * (2.0 * omega - x0 - x1);
        (value, slope)
    }
}

pub fn band_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || steps < 1 {
        return Err(DynamicsError::InvalidInput(format!(
            "band ({lo}, {hi}) with {steps} steps"
        )));
    }
    let h = (hi - lo) / steps as f64;
    Ok((0..=steps)
        .map(|k| if k == steps { hi } else { lo + h * k as f64 })
        .collect())
}

/// `gamma_tilde(ω) = ω³ Γ(ω)/Γ0(ω)` for an atom in a cavity, on `steps + 1`
/// uniform points of `[lo, hi]`.
pub fn spectral_density(
    cfg: &CavityConfig,
    lo: f64,
    hi: f64,
    steps: usize,
    tol: f64,
) -> Result<SpectralDensity> {
    if steps < 2 {
        return Err(DynamicsError::InvalidInput("need at least 2 steps".into()));
    }
    if lo <= 0.0 {
        return Err(DynamicsError::InvalidInput(format!("band must be positive, got lo = {lo}")));
    }
    let omega = band_grid(lo, hi, steps)?;
    let gamma = omega
        .par_iter()
        .map(|&w| {
            let r = decay_ratio(w, cfg, tol)?;
            Ok(w * w * w * r.ratio.max(0.0))
        })
        .collect::<Result<Vec<f64>>>()?;
    SpectralDensity::new(omega, gamma)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovResult {
    /// `Γ` in units of `Γ0(ω_ref)`.
    pub gamma: f64,
    /// Shift in units of `Γ0(ω_ref)`.
    pub delta_omega: f64,
}

/// Rate and band-limited shift at `omega_tilde`:
/// `δω = (1/2π) PV ∫ gamma_tilde(ω)/(ω − ω̃) dω` over the tabulated band,
/// with the singular part subtracted and integrated analytically.
pub fn markov_rate_and_shift(sd: &SpectralDensity, omega_tilde: f64) -> Result<MarkovResult> {
    sd.check_inside(omega_tilde)?;
    let (g0, slope) = sd.interpolate(omega_tilde);
    let (lo, hi) = sd.band();
    let scale = hi - lo;
    let f = |k: usize| {
        let d = sd.omega[k] - omega_tilde;
        if d.abs() <= 1e-13 * scale {
            slope
        } else {
            (sd.gamma_tilde[k] - g0) / d
        }
    };
    let mut integral = 0.0;
    let mut prev = f(0);
    for k in 1..sd.omega.len() {
        let cur = f(k);
        integral += 0.5 * (sd.omega[k] - sd.omega[k - 1]) * (prev + cur);
        prev = cur;
    }
    integral += g0 * ((hi - omega_tilde) / (omega_tilde - lo)).ln();
    let delta_omega = integral / (2.0 * PI);
    if !(g0.is_finite() && delta_omega.is_finite()) {
        return Err(DynamicsError::NonFinite("Markov rate or shift"));
    }
    Ok(MarkovResult {
        gamma: g0,
        delta_omega,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfConsistent {
    /// `ω̃_A` in units of `ω_ref`.
    pub omega_tilde: f64,
    pub iterations: usize,
    pub markov: MarkovResult,
}

/// Damped fixed point of `ω̃ = ω_A − κ δω(ω̃)`.
pub fn self_consistent_frequency(
    sd: &SpectralDensity,
    omega_a: f64,
    coupling: f64,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SelfConsistent> {
    if !(damping > 0.0 && damping <= 1.0) {
        return Err(DynamicsError::InvalidInput(format!("damping must lie in (0, 1], got {damping}")));
    }
    if !(coupling.is_finite() && coupling >= 0.0) || !(tol > 0.0) {
        return Err(DynamicsError::InvalidInput(format!(
            "coupling {coupling} and tolerance {tol}"
        )));
    }
    let mut w = omega_a;
    for it in 1..=max_iter {
        let m = markov_rate_and_shift(sd, w)?;
        let next = (1.0 - damping) * w + damping * (omega_a - coupling * m.delta_omega);
        if (next - w).abs() <= tol * omega_a.abs() {
            let markov = markov_rate_and_shift(sd, next)?;
            return Ok(SelfConsistent {
                omega_tilde: next,
                iterations: it,
                markov,
            });
        }
        w = next;
    }
    Err(DynamicsError::NoConvergence {
        iterations: max_iter,
        last: w,
    })
}

/// `(∫₀¹ (1−t) e^{at} dt, ∫₀¹ t e^{at} dt)`.
fn linear_exp_weights(a: Complex64) -> (Complex64, Complex64) {
    if a.norm() < 0.5 {
        let (mut p, mut wa, mut wb) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for k in 0..24 {
            let kf = k as f64;
            wa += p / ((kf + 1.0) * (kf + 2.0));
            wb += p / (kf + 2.0);
            p *= a / (kf + 1.0);
        }
        (wa, wb)
    } else {
        let e = a.exp();
        let b = (e * (a - 1.0) + 1.0) / (a * a);
        ((e - 1.0) / a - b, b)
    }
}

/// `K(τ) = −(1/2π) ∫ gamma_tilde(ω) e^{−i(ω−ω̃)τ} dω` with `τ` in units of
/// `1/ω_ref`. The table is treated as piecewise linear and each segment is
/// integrated exactly, so the result stays accurate for `τ` far beyond the
/// grid's Nyquist limit.
pub fn memory_kernel(sd: &SpectralDensity, omega_tilde: f64, tau: &[f64]) -> Result<Vec<Complex64>> {
    if tau.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || tau.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DynamicsError::InvalidInput(
            "tau grid must be nonnegative and increasing".into(),
        ));
    }
    let xs: Vec<f64> = sd.omega.iter().map(|w| w - omega_tilde).collect();
    let gs = &sd.gamma_tilde;
    let out = tau
        .par_iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..xs.len() - 1 {
                let h = xs[k + 1] - xs[k];
                let (wa, wb) = linear_exp_weights(Complex64::new(0.0, -t * h));
                acc += h * Complex64::from_polar(1.0, -t * xs[k]) * (gs[k] * wa + gs[k + 1] * wb);
            }
            -acc / (2.0 * PI)
        })
        .collect::<Vec<_>>();
    if out.iter().any(|k| !(k.re.is_finite() && k.im.is_finite())) {
        return Err(DynamicsError::NonFinite("memory kernel"));
    }
    Ok(out)
}

/// Node quantities at `θ = xτ`: `f2 = e^{−iθ} − 1 + iθ`, `f3 = f2 + θ²/2`,
/// returned as `(f2, f2/x, f3/x, f3/x²)`, all regular at `x = 0`.
fn remainder_terms(x: f64, t: f64) -> (Complex64, Complex64, Complex64, Complex64) {
    let th = x * t;
    let mi = Complex64::new(0.0, -1.0);
    if th.abs() < 1.0 {
        // Σ_{k≥2} (−iθ)^k/k!, divided by θ and θ² where needed
        let (mut f2_th, mut f3_th2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        // p = (−i)^k θ^{k−2}/k!
        let mut p = mi * mi / 2.0;
        for k in 2..30 {
            f2_th += p * th;
            if k >= 3 {
                f3_th2 += p;
            }
            p *= mi * th / (k + 1) as f64;
        }
        let f2 = f2_th * th;
        (f2, f2_th * t, f3_th2 * th * t, f3_th2 * t * t)
    } else {
        let f2 = Complex64::from_polar(1.0, -th) - 1.0 + Complex64::new(0.0, th);
        let f3 = f2 + 0.5 * th * th;
        (f2, f2 / x, f3 / x, f3 / (x * x))
    }
}

/// Integrated kernel and its first two antiderivatives at each `τ`:
/// `F = ∫₀^τ K`, `Φ1 = ∫₀^τ F`, `Φ2 = ∫₀^τ Φ1`, same units as
/// [`memory_kernel`].
///
/// With `x = ω − ω̃`,
/// `F = (i/2π) ∫ γ (1 − e^{−ixτ})/x`, `Φ1 = (1/2π) ∫ γ f2/x²`,
/// `Φ2 = (i/2π) ∫ γ f3/x³`. For a piecewise-linear table each segment
/// reduces by parts to sine and cosine integrals at the nodes, so the fast
/// ringing of a wide or sharply cut band needs no time resolution. The
/// boundary terms are gathered per node, where they only involve the jump
/// in slope.
pub fn kernel_antiderivatives(
    sd: &SpectralDensity,
    omega_tilde: f64,
    tau: &[f64],
) -> Result<Vec<[Complex64; 3]>> {
    if tau.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(DynamicsError::InvalidInput("tau must be nonnegative".into()));
    }
    let xs: Vec<f64> = sd.omega.iter().map(|w| w - omega_tilde).collect();
    let gs = &sd.gamma_tilde;
    let last = xs.len() - 1;
    let betas: Vec<f64> = (0..last).map(|j| (gs[j + 1] - gs[j]) / (xs[j + 1] - xs[j])).collect();
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let out = tau
        .par_iter()
        .map(|&t| {
            if t == 0.0 {
                return [zero; 3];
            }
            let si: Vec<f64> = xs.iter().map(|x| sine_integral(x * t)).collect();
            let cin: Vec<f64> = xs.iter().map(|x| cosine_integral_entire(x * t)).collect();
            let (mut sf, mut sa, mut sb) = (zero, zero, zero);
            for j in 0..last {
                let h = xs[j + 1] - xs[j];
                let beta = betas[j];
                let alpha = gs[j] - beta * xs[j];
                let dsi = si[j + 1] - si[j];
                let dcin = cin[j + 1] - cin[j];
                // ∫ (1 − e^{−ixτ})/x and ∫ (1 − e^{−ixτ})
                let (mean_exp, _) = exp_mean(Complex64::new(0.0, -t * h));
                let e_left = Complex64::from_polar(1.0, -xs[j] * t);
                let j0 = dcin + i * dsi;
                let j1 = h * (1.0 - e_left * mean_exp);
                sf += alpha * j0 + beta * j1;
                // ∫ f2/x² without its boundary terms, and ∫ f2/x
                sa += alpha * i * t * j0;
                sb += beta * (-dcin - i * dsi + i * t * h);
            }
            // boundary terms: interior nodes carry the slope jump only
            let (mut na, mut n3) = (zero, zero);
            for k in 0..=last {
                let (f2, q2, q3, r3) = remainder_terms(xs[k], t);
                if k == 0 {
                    na += gs[0] * q2 - betas[0] * f2;
                    n3 += 0.5 * (gs[0] * r3 + betas[0] * q3);
                } else if k == last {
                    na -= gs[last] * q2 - betas[last - 1] * f2;
                    n3 -= 0.5 * (gs[last] * r3 + betas[last - 1] * q3);
                } else {
                    let jump = betas[k] - betas[k - 1];
                    na -= jump * f2;
                    n3 += 0.5 * jump * q3;
                }
            }
            let sa = sa + na;
            let f = i * sf / (2.0 * PI);
            let phi1 = (sa + sb) / (2.0 * PI);
            let phi2 = i * (n3 - 0.5 * i * t * sa - i * t * sb) / (2.0 * PI);
            [f, phi1, phi2]
        })
        .collect::<Vec<_>>();
    if out.iter().flatten().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(DynamicsError::NonFinite("integrated kernel"));
    }
    Ok(out)
}

/// `F(τ) = ∫₀^τ K`, see [`kernel_antiderivatives`].
pub fn integrated_kernel(
    sd: &SpectralDensity,
    omega_tilde: f64,
    tau: &[f64],
) -> Result<Vec<Complex64>> {
    Ok(kernel_antiderivatives(sd, omega_tilde, tau)?
        .into_iter()
        .map(|v| v[0])
        .collect())
}

/// `(∫₀¹ e^{at} dt, ∫₀¹ t e^{at} dt)`.
fn exp_mean(a: Complex64) -> (Complex64, Complex64) {
    let (wa, wb) = linear_exp_weights(a);
    (wa + wb, wb)
}

/// Memory kernel on a uniform time grid, in units of `Γ0(ω_ref)²` with time
/// in units of `1/Γ0(ω_ref)`.
///
/// Besides the samples `K(k·dt)` it carries what the solver uses: for each
/// cell `[(k−1)dt, k·dt]` the integrals `∫ F` and `∫ F·(u − u_{k−1})/dt` of
/// the integrated kernel `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryKernel {
    pub dt: f64,
    /// `K(k·dt)`, `k = 0..=steps`.
    pub values: Vec<Complex64>,
    /// `F(k·dt)`, `k = 0..=steps`.
    pub integrated: Vec<Complex64>,
    /// Cell moments of `F`, `k = 1..=steps`.
    pub cells: Vec<(Complex64, Complex64)>,
}

impl MemoryKernel {
    pub fn sample(
        sd: &SpectralDensity,
        omega_tilde: f64,
        coupling: f64,
        dt: f64,
        steps: usize,
    ) -> Result<Self> {
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(DynamicsError::InvalidInput(format!("coupling must be positive, got {coupling}")));
        }
        check_step(dt)?;
        let tau: Vec<f64> = (0..=steps).map(|k| k as f64 * dt / coupling).collect();
        let values = memory_kernel(sd, omega_tilde, &tau)?
            .into_iter()
            .map(|k| k / coupling)
            .collect();
        let anti = kernel_antiderivatives(sd, omega_tilde, &tau)?;
        let width = dt / coupling;
        let cells = (1..=steps)
            .map(|k| {
                let (a, b) = (anti[k - 1], anti[k]);
                let total = coupling * (b[1] - a[1]);
                let moment = coupling / width * (width * b[1] - (b[2] - a[2]));
                (total, moment)
            })
            .collect();
        Ok(Self {
            dt,
            values,
            integrated: anti.iter().map(|v| v[0]).collect(),
            cells,
        })
    }

    /// From kernel samples alone; `F` follows by the trapezoidal rule and is
    /// taken linear within each cell.
    pub fn from_values(dt: f64, values: Vec<Complex64>) -> Result<Self> {
        check_step(dt)?;
        if values.is_empty() {
            return Err(DynamicsError::InvalidInput("empty kernel".into()));
        }
        let mut integrated = vec![Complex64::new(0.0, 0.0)];
        for k in 1..values.len() {
            let f = integrated[k - 1] + 0.5 * dt * (values[k - 1] + values[k]);
            integrated.push(f);
        }
        let cells = integrated
            .windows(2)
            .map(|w| (0.5 * dt * (w[0] + w[1]), dt * (w[0] / 6.0 + w[1] / 3.0)))
            .collect();
        Ok(Self {
            dt,
            values,
            integrated,
            cells,
        })
    }

    /// Identically zero kernel.
    pub fn zero(dt: f64, steps: usize) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            dt,
            values: vec![zero; steps + 1],
            integrated: vec![zero; steps + 1],
            cells: vec![(zero, zero); steps],
        }
    }

    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }
}

fn check_step(dt: f64) -> Result<()> {
    if dt.is_finite() && dt > 0.0 {
        Ok(())
    } else {
        Err(DynamicsError::InvalidInput(format!("time step must be positive, got {dt}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayTrajectory {
    pub times: Vec<f64>,
    pub cu: Vec<Complex64>,
    pub gamma_markov: f64,
    pub delta_omega: f64,
}

impl DecayTrajectory {
    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.cu.iter().map(|c| c.norm_sqr())
    }
}

/// Number of steps of size `dt` needed to reach `t_max`.
pub fn step_count(t_max: f64, dt: f64) -> Result<usize> {
    check_step(dt)?;
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(DynamicsError::InvalidInput(format!("t_max must be positive, got {t_max}")));
    }
    Ok((t_max / dt - 1e-9).ceil() as usize)
}

/// Solves `Ċ = −iδω C + ∫₀ᵗ K(t−s) C(s) ds`, `C(0) = 1`, in the equivalent
/// second-kind form `C(t) = 1 + ∫₀ᵗ G(t−s) C(s) ds`, `G(u) = −iδω + F(u)`.
///
/// `C` is taken piecewise linear and integrated against `G` per hat function
/// using the kernel's cell moments (the trapezoidal product rule).
///
/// `gamma_markov` is stored for reference only.
pub fn volterra_solve(
    kernel: &MemoryKernel,
    delta_omega: f64,
    gamma_markov: f64,
    t_max: f64,
) -> Result<DecayTrajectory> {
    let h = kernel.dt;
    let steps = step_count(t_max, h)?;
    if kernel.steps() < steps || kernel.cells.len() < steps {
        return Err(DynamicsError::InvalidInput(format!(
            "kernel covers {} steps, need {steps}",
            kernel.steps()
        )));
    }
    if !delta_omega.is_finite() {
        return Err(DynamicsError::NonFinite("frequency shift"));
    }
    let shift = Complex64::new(0.0, -delta_omega);
    // rising and falling half-hat weights at distance k, from cell k and k+1
    let mut rise = vec![Complex64::new(0.0, 0.0); steps + 1];
    let mut fall = vec![Complex64::new(0.0, 0.0); steps + 1];
    for k in 1..=steps {
        let (total, moment) = kernel.cells[k - 1];
        rise[k] = 0.5 * h * shift + moment;
        fall[k - 1] = 0.5 * h * shift + total - moment;
    }
    let denom = 1.0 - fall[0];
    let mut cu = Vec::with_capacity(steps + 1);
    cu.push(Complex64::new(1.0, 0.0));
    for m in 1..=steps {
        let mut acc = rise[m] * cu[0];
        for j in 1..m {
            let k = m - j;
            acc += (rise[k] + fall[k]) * cu[j];
        }
        let c = (1.0 + acc) / denom;
        let modulus = c.norm();
        if !modulus.is_finite() || modulus > INSTABILITY_BOUND {
            return Err(DynamicsError::Unstable {
                time: m as f64 * h,
                modulus,
            });
        }
        cu.push(c);
    }
    Ok(DecayTrajectory {
        times: (0..=steps).map(|k| k as f64 * h).collect(),
        cu,
        gamma_markov,
        delta_omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_weights_agree_across_branch() {
        for a in [Complex64::new(0.0, -0.49), Complex64::new(0.0, 0.5), Complex64::new(0.1, -0.3)] {
            let (sa, sb) = linear_exp_weights(a);
            let e = a.exp();
            let b = (e * (a - 1.0) + 1.0) / (a * a);
            assert!((sb - b).norm() < 1e-13);
            assert!((sa - ((e - 1.0) / a - b)).norm() < 1e-13);
        }
        let (a0, b0) = linear_exp_weights(Complex64::new(0.0, 0.0));
        assert_eq!((a0.re, b0.re), (0.5, 0.5));
    }

    #[test]
    fn interpolation_is_exact_for_quadratics() {
        let f = |w: f64| 2.0 - 0.3 * w + 0.7 * w * w;
        let sd = SpectralDensity::from_fn(0.0, 3.0, 17, f).unwrap();
        for w in [0.01, 0.4, 1.234, 2.99] {
            let (v, d) = sd.interpolate(w);
            assert!((v - f(w)).abs() < 1e-13);
            assert!((d - (-0.3 + 1.4 * w)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(SpectralDensity::new(vec![1.0], vec![1.0]).is_err());
        assert!(SpectralDensity::new(vec![1.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(SpectralDensity::new(vec![1.0, 2.0], vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn step_count_rounds_up() {
        assert_eq!(step_count(1.0, 0.1).unwrap(), 10);
        assert_eq!(step_count(1.05, 0.1).unwrap(), 11);
    }
}
