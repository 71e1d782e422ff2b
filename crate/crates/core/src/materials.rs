//! Single-resonance permittivity and permeability, the branch-correct
//! refractive index, and spectral classification of the host medium.
//!
//! Frequencies are reduced by a reference frequency `ω_ref` (the magnetic
//! transverse resonance in the canonical parameter set).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MaterialsError {
    #[error("invalid material parameters: {0}")]
    InvalidParams(String),
    #[error("lossless resonance hit exactly: omega = {omega} coincides with a transverse frequency")]
    Pole { omega: f64 },
    #[error("frequency must be positive and finite, got {0}")]
    BadFrequency(f64),
    #[error("gain media are not supported (Im eps = {im_eps}, Im mu = {im_mu})")]
    GainMedium { im_eps: f64, im_mu: f64 },
    #[error("eps and mu must both be nonzero")]
    ZeroResponse,
}

/// One Lorentz oscillator `1 + ω_P² / (ω_T² − ω² − iωγ)`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Resonance {
    pub omega_p: f64,
    pub omega_t: f64,
    pub gamma: f64,
}

impl Resonance {
    pub const fn new(omega_p: f64, omega_t: f64, gamma: f64) -> Self {
        Self {
            omega_p,
            omega_t,
            gamma,
        }
    }

    /// A resonance with zero coupling strength, i.e. a response identically 1.
    pub const fn vacuum() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    fn validate(&self, which: &str) -> Result<(), MaterialsError> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(self.omega_p) || !ok(self.gamma) || !(self.omega_t.is_finite() && self.omega_t > 0.0)
        {
            return Err(MaterialsError::InvalidParams(format!(
                "{which}: omega_p = {}, omega_t = {}, gamma = {} (need omega_p >= 0, omega_t > 0, gamma >= 0)",
                self.omega_p, self.omega_t, self.gamma
            )));
        }
        Ok(())
    }

    /// Longitudinal frequency `√(ω_T² + ω_P²)`, the upper edge of the band gap.
    pub fn omega_longitudinal(&self) -> f64 {
        self.omega_t.hypot(self.omega_p)
    }

    pub fn response(&self, omega: f64) -> Result<Complex64, MaterialsError> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(MaterialsError::BadFrequency(omega));
        }
        if self.omega_p == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let denom = Complex64::new(
            self.omega_t * self.omega_t - omega * omega,
            -omega * self.gamma,
        );
        if denom == Complex64::new(0.0, 0.0) {
            return Err(MaterialsError::Pole { omega });
        }
        Ok(1.0 + self.omega_p * self.omega_p / denom)
    }

    /// The same formula evaluated at a (possibly negative) real frequency
    /// without the positivity check. Used for the reality condition.
    pub fn response_signed(&self, omega: f64) -> Complex64 {
        let denom = Complex64::new(
            self.omega_t * self.omega_t - omega * omega,
            -omega * self.gamma,
        );
        1.0 + self.omega_p * self.omega_p / denom
    }
}

/// Electric and magnetic resonance parameters, all in units of `ω_ref`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialParams {
    pub electric: Resonance,
    pub magnetic: Resonance,
}

impl MaterialParams {
    pub fn new(electric: Resonance, magnetic: Resonance) -> Result<Self, MaterialsError> {
        let p = Self { electric, magnetic };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), MaterialsError> {
        self.electric.validate("electric")?;
        self.magnetic.validate("magnetic")
    }

    pub const fn vacuum() -> Self {
        Self {
            electric: Resonance::vacuum(),
            magnetic: Resonance::vacuum(),
        }
    }

    /// The overlapping-gap magnetodielectric used throughout the figures:
    /// `ω_Te = 1.03`, `ω_Pe = 0.75`, `ω_Tm = 1`, `ω_Pm = 0.43`, with a common
    /// absorption parameter.
    pub const fn reference(gamma: f64) -> Self {
        Self {
            electric: Resonance::new(0.75, 1.03, gamma),
            magnetic: Resonance::new(0.43, 1.0, gamma),
        }
    }

    pub const fn reference_dielectric(gamma: f64) -> Self {
        Self {
            electric: Resonance::new(0.75, 1.03, gamma),
            magnetic: Resonance::vacuum(),
        }
    }

    pub const fn reference_magnetic(gamma: f64) -> Self {
        Self {
            electric: Resonance::vacuum(),
            magnetic: Resonance::new(0.43, 1.0, gamma),
        }
    }

    /// Copy with both absorption parameters replaced.
    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.electric.gamma = gamma;
        self.magnetic.gamma = gamma;
        self
    }

    pub fn is_vacuum(&self) -> bool {
        self.electric.omega_p == 0.0 && self.magnetic.omega_p == 0.0
    }
}

pub fn permittivity(p: &MaterialParams, omega: f64) -> Result<Complex64, MaterialsError> {
    p.electric.response(omega)
}

pub fn permeability(p: &MaterialParams, omega: f64) -> Result<Complex64, MaterialsError> {
    p.magnetic.response(omega)
}

/// Anything that can report ε(ω) and μ(ω).
pub trait Medium {
    fn eps(&self, omega: f64) -> Result<Complex64, MaterialsError>;
    fn mu(&self, omega: f64) -> Result<Complex64, MaterialsError>;

    fn response(&self, omega: f64) -> Result<OpticalResponse, MaterialsError> {
        let eps = self.eps(omega)?;
        let mu = self.mu(omega)?;
        let IndexBranch { n, phi_eps, phi_mu } = refractive_index(eps, mu)?;
        Ok(OpticalResponse {
            omega,
            eps,
            mu,
            n,
            phi_eps,
            phi_mu,
        })
    }
}

impl Medium for MaterialParams {
    fn eps(&self, omega: f64) -> Result<Complex64, MaterialsError> {
        permittivity(self, omega)
    }

    fn mu(&self, omega: f64) -> Result<Complex64, MaterialsError> {
        permeability(self, omega)
    }
}

/// Frequency-independent ε and μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantMedium {
    pub eps: Complex64,
    pub mu: Complex64,
}

impl ConstantMedium {
    pub fn new(eps: Complex64, mu: Complex64) -> Self {
        Self { eps, mu }
    }
}

impl Medium for ConstantMedium {
    fn eps(&self, _omega: f64) -> Result<Complex64, MaterialsError> {
        Ok(self.eps)
    }

    fn mu(&self, _omega: f64) -> Result<Complex64, MaterialsError> {
        Ok(self.mu)
    }
}

/// Complex ε, μ, n at a single frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalResponse {
    pub omega: f64,
    pub eps: Complex64,
    pub mu: Complex64,
    pub n: Complex64,
    pub phi_eps: f64,
    pub phi_mu: f64,
}

/// Refractive index together with the phases it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexBranch {
    pub n: Complex64,
    pub phi_eps: f64,
    pub phi_mu: f64,
}

fn passive_phase(z: Complex64) -> f64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            0.0
        } else {
            PI
        }
    } else {
        // im > 0 here, so atan2 lands in (0, π)
        z.im.atan2(z.re)
    }
}

/// `n = √(|ε||μ|) · exp(i(φ_ε + φ_μ)/2)` with both phases in `[0, π]`.
///
/// This is *not* the principal square root of `εμ`: whenever
/// `φ_ε + φ_μ > π` the result has a negative real part.
pub fn refractive_index(eps: Complex64, mu: Complex64) -> Result<IndexBranch, MaterialsError> {
    if eps.im < 0.0 || mu.im < 0.0 {
        return Err(MaterialsError::GainMedium {
            im_eps: eps.im,
            im_mu: mu.im,
        });
    }
    if eps.norm() == 0.0 || mu.norm() == 0.0 {
        return Err(MaterialsError::ZeroResponse);
    }
    let phi_eps = passive_phase(eps);
    let phi_mu = passive_phase(mu);
    let modulus = (eps.norm() * mu.norm()).sqrt();
    let half = 0.5 * (phi_eps + phi_mu);
    // exact values on the lossless axes
    let n = if eps.im == 0.0 && mu.im == 0.0 {
        match (phi_eps == 0.0, phi_mu == 0.0) {
            (true, true) => Complex64::new(modulus, 0.0),
            (false, false) => Complex64::new(-modulus, 0.0),
            _ => Complex64::new(0.0, modulus),
        }
    } else {
        Complex64::from_polar(modulus, half)
    };
    Ok(IndexBranch { n, phi_eps, phi_mu })
}

pub fn optical_response(p: &MaterialParams, omega: f64) -> Result<OpticalResponse, MaterialsError> {
    p.response(omega)
}

/// Left-handed means `Re n < 0`, strictly.
pub fn is_left_handed(n: Complex64) -> bool {
    n.re < 0.0
}

/// Band edges and the left-handed window of a parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    pub omega_le: f64,
    pub omega_lm: f64,
    /// Double-negative window (`Re ε < 0` and `Re μ < 0`) from a sign scan on
    /// the grid: first and last grid points of the run. Inside it `Re n < 0`.
    pub lh_window: Option<(f64, f64)>,
    /// Contiguous run of grid points with `Re n < 0` that contains the
    /// double-negative window (or, if there is none, the first such run).
    /// With weak absorption this extends past the band edges, where
    /// `|Re n|` stays small.
    pub negative_index_run: Option<(f64, f64)>,
}

/// Band edges in closed form plus grid-based detection of the left-handed
/// region. No root polishing: window edges are grid points.
pub fn band_structure(p: &MaterialParams, grid: &[f64]) -> Result<BandStructure, MaterialsError> {
    p.validate()?;
    if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.first().is_some_and(|&w| w <= 0.0) {
        return Err(MaterialsError::InvalidParams(
            "frequency grid must be positive and strictly increasing".into(),
        ));
    }
    let responses = grid
        .iter()
        .map(|&w| optical_response(p, w))
        .collect::<Result<Vec<_>, _>>()?;

    let dn: Vec<bool> = responses
        .iter()
        .map(|r| r.eps.re < 0.0 && r.mu.re < 0.0)
        .collect();
    let neg: Vec<bool> = responses.iter().map(|r| is_left_handed(r.n)).collect();

    let lh_run = longest_run(&dn);
    let neg_run = match lh_run {
        Some((lo, _)) => run_containing(&neg, lo),
        None => first_run(&neg),
    };
    Ok(BandStructure {
        omega_le: p.electric.omega_longitudinal(),
        omega_lm: p.magnetic.omega_longitudinal(),
        lh_window: lh_run.map(|(a, b)| (grid[a], grid[b])),
        negative_index_run: neg_run.map(|(a, b)| (grid[a], grid[b])),
    })
}

fn runs(mask: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, &m) in mask.iter().enumerate() {
        match (m, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, mask.len() - 1));
    }
    out
}

fn longest_run(mask: &[bool]) -> Option<(usize, usize)> {
    runs(mask).into_iter().max_by_key(|(a, b)| b - a)
}

fn first_run(mask: &[bool]) -> Option<(usize, usize)> {
    runs(mask).into_iter().next()
}

fn run_containing(mask: &[bool], idx: usize) -> Option<(usize, usize)> {
    runs(mask).into_iter().find(|&(a, b)| a <= idx && idx <= b)
}

/// Uniform grid with `steps` intervals, `steps + 1` points, endpoints exact.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    let h = (hi - lo) / steps as f64;
    (0..=steps)
        .map(|i| if i == steps { hi } else { lo + h * i as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const REFERENCE: MaterialParams = MaterialParams::reference(0.001);

    #[test]
    fn permittivity_high_frequency_tends_to_one() {
        let e = permittivity(&REFERENCE, 1e3).unwrap();
        assert!((e - 1.0).norm() < 1e-5);
    }

    #[test]
    fn vacuum_limits_are_exact() {
        let v = MaterialParams::vacuum();
        for w in [0.1, 1.0, 1.03, 7.5] {
            assert_eq!(permittivity(&v, w).unwrap(), Complex64::new(1.0, 0.0));
            assert_eq!(permeability(&v, w).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn hand_evaluated_responses() {
        let e = permittivity(&REFERENCE, 0.5).unwrap();
        assert_relative_eq!(e.re, 1.6937, epsilon = 1e-4);
        assert_relative_eq!(e.im, 4.28e-4, epsilon = 1e-6);
        let m = permeability(&REFERENCE, 1.05).unwrap();
        assert_relative_eq!(m.re, -0.8037, epsilon = 1e-4);
        assert_relative_eq!(m.im, 0.0185, epsilon = 1e-4);
        assert!(m.re < 0.0);
    }

    #[test]
    fn lossless_pole_is_rejected() {
        let p = MaterialParams::reference(0.0);
        assert_eq!(
            permittivity(&p, 1.03),
            Err(MaterialsError::Pole { omega: 1.03 })
        );
        assert!(permeability(&p, 1.0).is_err());
        assert!(permittivity(&p, 1.0).is_ok());
    }

    #[test]
    fn non_positive_frequency_rejected() {
        assert!(permittivity(&REFERENCE, 0.0).is_err());
        assert!(permittivity(&REFERENCE, f64::NAN).is_err());
    }

    #[test]
    fn index_simple_cases() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(refractive_index(one, one).unwrap().n, one);
        let n = refractive_index(one, -one).unwrap().n;
        assert_eq!(n, Complex64::new(0.0, 1.0));
        let n = refractive_index(-one, -one).unwrap().n;
        assert_eq!(n, Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn index_takes_negative_branch_in_overlap() {
        let eps = permittivity(&REFERENCE, 1.05).unwrap();
        let mu = permeability(&REFERENCE, 1.05).unwrap();
        assert_relative_eq!(eps.re, -12.513, epsilon = 1e-3);
        assert_relative_eq!(eps.im, 0.341, epsilon = 1e-3);
        let n = refractive_index(eps, mu).unwrap().n;
        assert_relative_eq!(n.re, -3.171, epsilon = 1e-3);
        assert_relative_eq!(n.im, 0.080, epsilon = 1e-3);
        // principal root would give the other branch
        let principal = (eps * mu).sqrt();
        assert!(principal.re > 0.0 && principal.im < 0.0);
        assert!(((n * n - eps * mu) / (eps * mu)).norm() < 1e-12);
    }

    #[test]
    fn gain_inputs_rejected() {
        let r = refractive_index(Complex64::new(2.0, -0.1), Complex64::new(1.0, 0.0));
        assert!(matches!(r, Err(MaterialsError::GainMedium { .. })));
        assert!(refractive_index(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn left_handed_is_strict() {
        assert!(is_left_handed(Complex64::new(-3.171, 0.080)));
        assert!(!is_left_handed(Complex64::new(1.0, 0.0)));
        assert!(!is_left_handed(Complex64::new(0.0, 1.0)));
    }

    #[test]
    fn band_edges_and_windows() {
        let grid = uniform_grid(0.8, 1.4, 600);
        let b = band_structure(&REFERENCE, &grid).unwrap();
        assert_relative_eq!(b.omega_lm, 1.0885, epsilon = 1e-4);
        assert_relative_eq!(b.omega_le, 1.2741, epsilon = 1e-4);
        let (lo, hi) = b.lh_window.unwrap();
        assert!((lo - 1.031).abs() < 2e-3, "lo = {lo}");
        assert!((hi - 1.087).abs() < 2e-3, "hi = {hi}");
        let (nlo, nhi) = b.negative_index_run.unwrap();
        assert!(nlo <= lo && nhi >= hi);
    }

    #[test]
    fn vacuum_has_no_window() {
        let grid = uniform_grid(0.5, 2.0, 300);
        let b = band_structure(&MaterialParams::vacuum(), &grid).unwrap();
        assert_eq!(b.lh_window, None);
        assert_eq!(b.negative_index_run, None);
    }

    #[test]
    fn bad_grid_rejected() {
        assert!(band_structure(&REFERENCE, &[1.0, 1.0]).is_err());
        assert!(band_structure(&REFERENCE, &[-1.0, 1.0]).is_err());
    }

    #[test]
    fn smoothing_with_absorption() {
        let re: Vec<f64> = [0.001, 0.01, 0.05]
            .iter()
            .map(|&g| optical_response(&MaterialParams::reference(g), 1.05).unwrap().n.re.abs())
            .collect();
        assert!(re[0] >= re[1] && re[1] >= re[2], "{re:?}");
    }

    #[test]
    fn reality_condition() {
        for w in [0.3, 1.01, 1.05, 2.0] {
            let plus = REFERENCE.electric.response_signed(w);
            let minus = REFERENCE.electric.response_signed(-w);
            assert_relative_eq!(minus.re, plus.conj().re, max_relative = 1e-14);
            assert_relative_eq!(minus.im, plus.conj().im, max_relative = 1e-14);
            let plus = REFERENCE.magnetic.response_signed(w);
            let minus = REFERENCE.magnetic.response_signed(-w);
            assert_relative_eq!(minus.im, -plus.im, max_relative = 1e-14);
        }
    }
}
