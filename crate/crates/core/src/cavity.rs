//! Decay rate of an atom inside a spherical vacuum cavity carved out of a
//! homogeneous magnetodielectric host.
//!
//! Lengths are in units of `λ_ref = 2πc/ω_ref`, so the vacuum size
//! parameter of a radius `R` at reduced frequency `ω` is `2πRω`. Every rate
//! is the ratio `Γ/Γ0` to the free-space rate at the same (shifted)
//! transition frequency, which is the frequency passed in.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::materials::{
    refractive_index, ConstantMedium, MaterialParams, MaterialsError, Medium, OpticalResponse,
};
use crate::specfun::{
    self, hankel1_log_derivative_seq, sph_bessel_j_seq, sph_hankel1_seq_finite, SpecfunError,
};

/// Hard cap on the number of multipole orders summed.
pub const MAX_TERMS: usize = specfun::MAX_ORDER;

/// Below this `|μ − n²|` the closed form at the centre is 0/0.
pub const CLOSED_FORM_DEGENERACY: f64 = 1e-10;

/// Below this `|1 + 2ε|` the small-radius expansion has a pole.
pub const EXPANSION_POLE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CavityError {
    #[error("invalid cavity configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Materials(#[from] MaterialsError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("boundary-matching system is singular at order {order} (lossless host on a cavity resonance)")]
    SingularMie { order: usize },
    #[error("multipole series did not converge after {} terms (estimate {})", .partial.terms_used, .partial.truncation_estimate)]
    NonConvergence { partial: RateResult },
    #[error("small-radius expansion has a pole: |1 + 2 eps| = {0}")]
    ExpansionPole(f64),
    #[error("small-radius expansion needs z = 2 pi R omega < 1, got {0}")]
    ExpansionOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Radial,
    Tangential,
}

impl std::str::FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "radial" => Ok(Self::Radial),
            "tangential" => Ok(Self::Tangential),
            other => Err(format!("unknown orientation '{other}' (radial|tangential)")),
        }
    }
}

/// The medium surrounding the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Host {
    Dispersive(MaterialParams),
    Constant(ConstantMedium),
}

impl Host {
    pub fn constant(eps: Complex64, mu: Complex64) -> Self {
        Self::Constant(ConstantMedium::new(eps, mu))
    }
}

impl From<MaterialParams> for Host {
    fn from(p: MaterialParams) -> Self {
        Self::Dispersive(p)
    }
}

impl From<ConstantMedium> for Host {
    fn from(m: ConstantMedium) -> Self {
        Self::Constant(m)
    }
}

impl Medium for Host {
    fn eps(&self, omega: f64) -> Result<Complex64, MaterialsError> {
        match self {
            Self::Dispersive(p) => p.eps(omega),
            Self::Constant(m) => m.eps(omega),
        }
    }

    fn mu(&self, omega: f64) -> Result<Complex64, MaterialsError> {
        match self {
            Self::Dispersive(p) => p.mu(omega),
            Self::Constant(m) => m.mu(omega),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Cavity radius, units of `λ_ref`.
    pub radius: f64,
    /// Radial position of the atom, units of `λ_ref`.
    pub r_atom: f64,
    pub orientation: Orientation,
    pub host: Host,
}

impl CavityConfig {
    pub fn new(
        radius: f64,
        r_atom: f64,
        orientation: Orientation,
        host: impl Into<Host>,
    ) -> Result<Self, CavityError> {
        let cfg = Self {
            radius,
            r_atom,
            orientation,
            host: host.into(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Atom at the centre; orientation is irrelevant there.
    pub fn centered(radius: f64, host: impl Into<Host>) -> Result<Self, CavityError> {
        Self::new(radius, 0.0, Orientation::Radial, host)
    }

    pub fn validate(&self) -> Result<(), CavityError> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(CavityError::InvalidConfig(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.r_atom.is_finite() && self.r_atom >= 0.0 && self.r_atom < self.radius) {
            return Err(CavityError::InvalidConfig(format!(
                "atom position {} must satisfy 0 <= r < R = {}",
                self.r_atom, self.radius
            )));
        }
        if let Host::Dispersive(p) = &self.host {
            p.validate()?;
        }
        Ok(())
    }

    /// `z = Rω/c = 2πRω` in reduced units.
    pub fn size_parameter(&self, omega: f64) -> f64 {
        size_parameter(self.radius, omega)
    }
}

pub fn size_parameter(radius: f64, omega: f64) -> f64 {
    2.0 * PI * radius * omega
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    ClosedForm,
    Expansion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    /// `Γ/Γ0`.
    pub ratio: f64,
    pub terms_used: usize,
    /// Largest of the last three terms relative to the running sum; zero for
    /// results that involve no truncation.
    pub truncation_estimate: f64,
    pub method: Method,
}

/// Reflection coefficients of outgoing M- and N-waves at the cavity wall.
/// Inside the cavity an outgoing wave `h_n` is accompanied by the regular
/// wave `C·j_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MieCoefficients {
    pub order: usize,
    pub cm: Complex64,
    pub cn: Complex64,
}

fn is_vacuum(eps: Complex64, mu: Complex64) -> bool {
    eps == Complex64::new(1.0, 0.0) && mu == Complex64::new(1.0, 0.0)
}

fn finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

/// Coefficients for orders `1..=nmax` at vacuum size parameter `x = 2πRω`.
///
/// Tangential E and tangential H (with its `1/μ`) are matched at `r = R`.
/// With `D = [ρ h_n(ρ)]'/h_n(ρ)` at the exterior argument `ρ = n x`:
///
/// `C^M = (h D − μ [x h]') / (μ [x j]' − j D)`,
/// `C^N = (h D − ε [x h]') / (ε [x j]' − j D)`,
///
/// with `j, h` and their Riccati derivatives taken at `x`. Orders whose
/// interior Hankel value overflows are dropped, so the returned vector can
/// be shorter than `nmax`.
pub fn mie_coefficients_at(
    nmax: usize,
    x: f64,
    eps: Complex64,
    mu: Complex64,
) -> Result<Vec<MieCoefficients>, CavityError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(CavityError::InvalidConfig(format!(
            "size parameter must be positive, got {x}"
        )));
    }
    if nmax > MAX_TERMS {
        return Err(SpecfunError::OrderTooLarge(nmax).into());
    }
    if is_vacuum(eps, mu) {
        let zero = Complex64::new(0.0, 0.0);
        return Ok((1..=nmax)
            .map(|order| MieCoefficients {
                order,
                cm: zero,
                cn: zero,
            })
            .collect());
    }
    let n = refractive_index(eps, mu)?.n;
    let xc = Complex64::new(x, 0.0);
    let js = sph_bessel_j_seq(nmax, xc)?;
    let hs = sph_hankel1_seq_finite(nmax, xc)?;
    let ds = hankel1_log_derivative_seq(nmax, n * x)?;
    let mut out = Vec::with_capacity(nmax);
    for order in 1..hs.len() {
        let nf = order as f64;
        let (j, h) = (js[order], hs[order]);
        let dj = x * js[order - 1] - nf * j;
        let dh = x * hs[order - 1] - nf * h;
        let d = ds[order];
        let coeff = |a: Complex64| -> Result<Option<Complex64>, CavityError> {
            let den = a * dj - j * d;
            if den == Complex64::new(0.0, 0.0) {
                return Err(CavityError::SingularMie { order });
            }
            let c = specfun::safe_div(h * d - a * dh, den);
            Ok(finite(c).then_some(c))
        };
        match (coeff(mu)?, coeff(eps)?) {
            (Some(cm), Some(cn)) => out.push(MieCoefficients { order, cm, cn }),
            _ => break,
        }
    }
    Ok(out)
}

/// Coefficients of one order for a configured cavity at frequency `omega`.
pub fn mie_coefficients(
    order: usize,
    omega: f64,
    cfg: &CavityConfig,
) -> Result<MieCoefficients, CavityError> {
    if order == 0 {
        return Err(CavityError::InvalidConfig("multipole order starts at 1".into()));
    }
    cfg.validate()?;
    let resp = cfg.host.response(omega)?;
    let coeffs = mie_coefficients_at(order, cfg.size_parameter(omega), resp.eps, resp.mu)?;
    coeffs
        .get(order - 1)
        .copied()
        .ok_or(CavityError::Specfun(SpecfunError::Overflow {
            what: "h_n",
            order,
            z: Complex64::new(cfg.size_parameter(omega), 0.0),
        }))
}

fn initial_order_guess(x: f64) -> usize {
    ((x + 4.0 * x.cbrt() + 16.0).ceil() as usize).clamp(8, MAX_TERMS)
}

struct SeriesOutcome {
    sum: f64,
    terms: usize,
    estimate: f64,
    converged: bool,
}

fn sum_series(terms: impl Iterator<Item = f64>, xa: f64, tol: f64) -> SeriesOutcome {
    let mut sum = 1.0;
    let mut recent = [f64::INFINITY; 3];
    let mut used = 0;
    let mut converged = false;
    for (k, t) in terms.enumerate() {
        if !t.is_finite() {
            break;
        }
        sum += t;
        used = k + 1;
        recent.rotate_left(1);
        recent[2] = t.abs();
        if recent.iter().all(|&r| r < tol * sum.abs()) && used as f64 > xa {
            converged = true;
            break;
        }
    }
    SeriesOutcome {
        sum,
        terms: used,
        estimate: recent.iter().cloned().fold(0.0, f64::max) / sum.abs(),
        converged,
    }
}

fn check_tol(tol: f64) -> Result<(), CavityError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CavityError::InvalidConfig(format!("tolerance must be positive, got {tol}")))
    }
}

/// At the centre only the dipole term survives for either orientation:
/// `Γ/Γ0 = 1 + Re C^N_1`.
fn center_series(x: f64, eps: Complex64, mu: Complex64) -> Result<RateResult, CavityError> {
    let c = mie_coefficients_at(1, x, eps, mu)?;
    let c1 = c.first().ok_or(CavityError::SingularMie { order: 1 })?;
    Ok(RateResult {
        ratio: 1.0 + c1.cn.re,
        terms_used: 1,
        truncation_estimate: 0.0,
        method: Method::Series,
    })
}

/// `j_n(z)/j_{n−1}(z)` for `n = 1..=nmax` (index 0 unused), real `z > 0`,
/// from the backward continued fraction.
fn bessel_ratio_seq(nmax: usize, z: f64) -> Vec<f64> {
    let start = nmax + z.ceil() as usize + 60;
    let mut r = z / (2 * start + 1) as f64;
    let mut out = vec![0.0; nmax + 1];
    for n in (1..start).rev() {
        r = z / ((2 * n + 1) as f64 - z * r);
        if n <= nmax {
            out[n] = r;
        }
    }
    out
}

/// Per-order ingredients of both series:
/// `(Re C^M j_n(x_A)², Re C^N j_n(x_A)², Re C^N ([x_A j_n]′/x_A)²)`.
///
/// Up to `n ≈ max(x, x_A)` these come straight from the coefficients. Above
/// it `h_n(x)` grows and `j_n` shrinks factorially, so the products are
/// carried as `C·j/h`, `j_n(x)h_n(x)` and `j_n(x_A)/j_n(x)`, all of order one
/// or decaying.
fn series_ingredients(
    nmax: usize,
    x: f64,
    xa: f64,
    eps: Complex64,
    mu: Complex64,
) -> Result<Vec<[f64; 3]>, CavityError> {
    let n_direct = ((x.max(xa).floor() as usize) + 1).min(nmax);
    let coeffs = mie_coefficients_at(n_direct, x, eps, mu)?;
    if coeffs.len() < n_direct {
        return Err(SpecfunError::Overflow {
            what: "h_n",
            order: coeffs.len() + 1,
            z: Complex64::new(x, 0.0),
        }
        .into());
    }
    let ja = sph_bessel_j_seq(n_direct, Complex64::new(xa, 0.0))?;
    let mut out = Vec::with_capacity(nmax);
    for c in &coeffs {
        let n = c.order;
        let j = ja[n].re;
        let dj = (xa * ja[n - 1].re - n as f64 * j) / xa;
        out.push([c.cm.re * j * j, c.cn.re * j * j, c.cn.re * dj * dj]);
    }
    if nmax == n_direct {
        return Ok(out);
    }

    let n = refractive_index(eps, mu)?.n;
    let ds = hankel1_log_derivative_seq(nmax, n * x)?;
    let jx = sph_bessel_j_seq(n_direct, Complex64::new(x, 0.0))?;
    let hx = sph_hankel1_seq_finite(n_direct, Complex64::new(x, 0.0))?;
    let rx = bessel_ratio_seq(nmax, x);
    let ra = bessel_ratio_seq(nmax, xa);
    let mut rho = ja[n_direct].re / jx[n_direct].re;
    let mut prod = jx[n_direct] * hx[n_direct];
    let mut q = hx[n_direct] / hx[n_direct - 1];
    for order in n_direct + 1..=nmax {
        let nf = order as f64;
        q = (2.0 * nf - 1.0) / x - 1.0 / q;
        rho *= ra[order] / rx[order];
        prod *= rx[order] * q;
        let d = ds[order];
        let lj = x / rx[order] - nf;
        let lh = x / q - nf;
        let scaled = |a: Complex64| (d - a * lh) / (a * lj - d);
        let w = rho * rho;
        let cm = (scaled(mu) * prod).re * w;
        let cn = (scaled(eps) * prod).re * w;
        let g = (xa / ra[order] - nf) / xa;
        out.push([cm, cn, cn * g * g]);
    }
    Ok(out)
}

fn rate_series(
    omega_a: f64,
    cfg: &CavityConfig,
    tol: f64,
    orientation: Orientation,
) -> Result<RateResult, CavityError> {
    cfg.validate()?;
    check_tol(tol)?;
    let resp = cfg.host.response(omega_a)?;
    let x = cfg.size_parameter(omega_a);
    if cfg.r_atom == 0.0 {
        return center_series(x, resp.eps, resp.mu);
    }
    if is_vacuum(resp.eps, resp.mu) {
        return Ok(RateResult {
            ratio: 1.0,
            terms_used: 0,
            truncation_estimate: 0.0,
            method: Method::Series,
        });
    }
    let xa = size_parameter(cfg.r_atom, omega_a);
    let mut nmax = initial_order_guess(x.max(xa));
    loop {
        let parts = series_ingredients(nmax, x, xa, resp.eps, resp.mu)?;
        let terms = parts.iter().enumerate().map(|(k, p)| {
            let nf = (k + 1) as f64;
            match orientation {
                Orientation::Radial => {
                    1.5 * nf * (nf + 1.0) * (2.0 * nf + 1.0) * p[1] / (xa * xa)
                }
                Orientation::Tangential => 0.75 * (2.0 * nf + 1.0) * (p[0] + p[2]),
            }
        });
        let outcome = sum_series(terms, xa, tol);
        let result = RateResult {
            ratio: outcome.sum,
            terms_used: outcome.terms,
            truncation_estimate: outcome.estimate,
            method: Method::Series,
        };
        if outcome.converged {
            return Ok(result);
        }
        if nmax >= MAX_TERMS {
            return Err(CavityError::NonConvergence { partial: result });
        }
        nmax = (nmax * 2).min(MAX_TERMS);
    }
}

/// Radially oriented dipole:
/// `1 + (3/2) Σ n(n+1)(2n+1) [j_n(x_A)/x_A]² Re C^N_n`, `x_A = 2π r_A ω`.
pub fn rate_radial(omega_a: f64, cfg: &CavityConfig, tol: f64) -> Result<RateResult, CavityError> {
    rate_series(omega_a, cfg, tol, Orientation::Radial)
}

/// Tangentially oriented dipole:
/// `1 + (3/4) Σ (2n+1) [j_n² Re C^M_n + ([x_A j_n]'/x_A)² Re C^N_n]`.
pub fn rate_tangential(
    omega_a: f64,
    cfg: &CavityConfig,
    tol: f64,
) -> Result<RateResult, CavityError> {
    rate_series(omega_a, cfg, tol, Orientation::Tangential)
}

/// Series rate for the orientation stored in the configuration.
pub fn rate(omega_a: f64, cfg: &CavityConfig, tol: f64) -> Result<RateResult, CavityError> {
    rate_series(omega_a, cfg, tol, cfg.orientation)
}

/// Closed form for the atom at the centre, as a function of the vacuum size
/// parameter `z` and the host response.
pub fn rate_center_at(z: f64, eps: Complex64, mu: Complex64) -> Result<RateResult, CavityError> {
    let n = refractive_index(eps, mu)?.n;
    let degeneracy = mu - n * n;
    if degeneracy.norm() < CLOSED_FORM_DEGENERACY {
        return center_series(z, eps, mu);
    }
    let i = Complex64::i();
    let a = (mu - n) / degeneracy;
    let b = (1.0 - mu) / degeneracy;
    let (s, c) = (z.sin(), z.cos());
    let (z2, z3) = (z * z, z * z * z);
    let num = (1.0 - i * (n + 1.0) * z - n * (n + 1.0) * a * z2 + i * n * n * a * z3)
        * Complex64::from_polar(1.0, z);
    let den = -i * s - (n * s - i * c) * z + (c - i * b * n * s) * n * z2
        - (n * s + i * mu * c) * n * n / degeneracy * z3;
    Ok(RateResult {
        ratio: 1.0 + (num / den).re,
        terms_used: 1,
        truncation_estimate: 0.0,
        method: Method::ClosedForm,
    })
}

/// Closed-form rate at the centre of the cavity.
pub fn rate_center(omega_a: f64, cfg: &CavityConfig) -> Result<RateResult, CavityError> {
    cfg.validate()?;
    if cfg.r_atom != 0.0 {
        return Err(CavityError::InvalidConfig(
            "the closed form applies only to an atom at the centre".into(),
        ));
    }
    let resp = cfg.host.response(omega_a)?;
    rate_center_at(cfg.size_parameter(omega_a), resp.eps, resp.mu)
}

/// Terms of the small-radius expansion of the centre rate, `O(R)` dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerms {
    /// `Re{[3ε/(1+2ε)]² μ n}`
    pub leading: f64,
    /// `9 Im ε / |1+2ε|² · z⁻³`
    pub term_r3: f64,
    /// `(9/5) Im{ε(1+3ε+5με)/(1+2ε)²} · z⁻¹`
    pub term_r1: f64,
    pub sum: f64,
}

fn near_field_term(z: f64, eps: Complex64) -> Result<f64, CavityError> {
    let d = 1.0 + 2.0 * eps;
    if d.norm() < EXPANSION_POLE {
        return Err(CavityError::ExpansionPole(d.norm()));
    }
    Ok(9.0 * eps.im / d.norm_sqr() / (z * z * z))
}

pub fn expansion_at(z: f64, eps: Complex64, mu: Complex64) -> Result<ExpansionTerms, CavityError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(CavityError::ExpansionOutOfRange(z));
    }
    expansion_terms(z, eps, mu)
}

fn expansion_terms(z: f64, eps: Complex64, mu: Complex64) -> Result<ExpansionTerms, CavityError> {
    let n = refractive_index(eps, mu)?.n;
    let term_r3 = near_field_term(z, eps)?;
    let d = 1.0 + 2.0 * eps;
    let lf = 3.0 * eps / d;
    let leading = (lf * lf * mu * n).re;
    let term_r1 = 1.8 * (eps * (1.0 + 3.0 * eps + 5.0 * mu * eps) / (d * d)).im / z;
    Ok(ExpansionTerms {
        leading,
        term_r3,
        term_r1,
        sum: leading + term_r3 + term_r1,
    })
}

pub fn rate_center_expansion(
    omega_a: f64,
    cfg: &CavityConfig,
) -> Result<ExpansionTerms, CavityError> {
    cfg.validate()?;
    if cfg.r_atom != 0.0 {
        return Err(CavityError::InvalidConfig(
            "the expansion applies only to an atom at the centre".into(),
        ));
    }
    let resp = cfg.host.response(omega_a)?;
    expansion_at(cfg.size_parameter(omega_a), resp.eps, resp.mu)
}

/// `Re[μn]` for real ε and μ; zero when they have opposite signs.
pub fn rate_bulk_lossless(eps: f64, mu: f64) -> f64 {
    if eps * mu < 0.0 {
        return 0.0;
    }
    match refractive_index(Complex64::new(eps, 0.0), Complex64::new(mu, 0.0)) {
        Ok(b) => (mu * b.n).re,
        // ε = 0 or μ = 0: no propagating field
        Err(_) => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallCavityRate {
    /// The near-field `R⁻³` term alone.
    pub rate: f64,
    /// `|R⁻³ term| / (|leading| + |R⁻¹ term|)`; large when the approximation
    /// is justified.
    pub dominance: f64,
}

/// Purely radiationless small-cavity limit, `9 Im ε/|1+2ε|² (c/ωR)³`.
pub fn rate_small_cavity_absorptive(
    omega_a: f64,
    cfg: &CavityConfig,
) -> Result<SmallCavityRate, CavityError> {
    cfg.validate()?;
    let resp = cfg.host.response(omega_a)?;
    let z = cfg.size_parameter(omega_a);
    let rate = near_field_term(z, resp.eps)?;
    let t = expansion_terms(z, resp.eps, resp.mu)?;
    let dominance = rate.abs() / (t.leading.abs() + t.term_r1.abs());
    Ok(SmallCavityRate { rate, dominance })
}

/// Rate for an arbitrary configuration: closed form at the centre, series
/// otherwise.
pub fn decay_ratio(omega_a: f64, cfg: &CavityConfig, tol: f64) -> Result<RateResult, CavityError> {
    if cfg.r_atom == 0.0 {
        rate_center(omega_a, cfg)
    } else {
        rate(omega_a, cfg, tol)
    }
}

/// Host response at `omega`, exposed for sweeps that report it alongside rates.
pub fn host_response(cfg: &CavityConfig, omega: f64) -> Result<OpticalResponse, CavityError> {
    Ok(cfg.host.response(omega)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_coefficients_are_zero() {
        for x in [0.1, 3.0, 60.0] {
            let cs = mie_coefficients_at(10, x, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
            assert!(cs.iter().all(|m| m.cm == c(0.0, 0.0) && m.cn == c(0.0, 0.0)));
        }
    }

    #[test]
    fn dipole_coefficient_matches_closed_form() {
        let (eps, mu) = (c(-2.0, 0.2), c(-1.2, 0.1));
        let z = size_parameter(0.5, 1.0);
        let series = center_series(z, eps, mu).unwrap().ratio;
        let closed = rate_center_at(z, eps, mu).unwrap().ratio;
        assert!((series - closed).abs() <= 1e-8 * closed.abs(), "{series} vs {closed}");
    }

    #[test]
    fn degenerate_closed_form_reroutes() {
        let r = rate_center_at(0.7, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(r.method, Method::Series);
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn config_validation() {
        let host = MaterialParams::vacuum();
        assert!(CavityConfig::new(1.0, 1.0, Orientation::Radial, host).is_err());
        assert!(CavityConfig::new(0.0, 0.0, Orientation::Radial, host).is_err());
        assert!(CavityConfig::new(1.0, -0.1, Orientation::Radial, host).is_err());
        assert!(CavityConfig::new(1.0, 0.5, Orientation::Tangential, host).is_ok());
        let cfg = CavityConfig::new(1.0, 0.5, Orientation::Radial, host).unwrap();
        assert!(rate_center(1.0, &cfg).is_err());
        assert!(rate_radial(1.0, &cfg, 0.0).is_err());
    }

    #[test]
    fn lossless_bulk() {
        assert_eq!(rate_bulk_lossless(4.0, 1.0), 2.0);
        assert_eq!(rate_bulk_lossless(1.0, -1.0), 0.0);
        assert_eq!(rate_bulk_lossless(-1.0, -1.0), 1.0);
    }

    #[test]
    fn expansion_trivial_and_errors() {
        let t = expansion_at(0.3, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!((t.leading, t.term_r3, t.term_r1, t.sum), (1.0, 0.0, 0.0, 1.0));
        assert!(matches!(
            expansion_at(0.3, c(-0.5, 0.0), c(1.0, 0.0)),
            Err(CavityError::ExpansionPole(_))
        ));
        assert!(matches!(
            expansion_at(1.5, c(2.0, 0.1), c(1.0, 0.0)),
            Err(CavityError::ExpansionOutOfRange(_))
        ));
    }

    #[test]
    fn lossless_expansion_is_local_field_factor() {
        let (eps, mu) = (c(2.25, 0.0), c(1.4, 0.0));
        let t = expansion_at(0.2, eps, mu).unwrap();
        let lf: f64 = 3.0 * 2.25 / (1.0 + 4.5);
        let want = lf * lf * 1.4 * (2.25f64 * 1.4).sqrt();
        assert!((t.leading - want).abs() < 1e-12);
        assert_eq!(t.term_r3, 0.0);
        assert_eq!(t.term_r1, 0.0);
        assert_eq!(t.sum, t.leading);
    }
}
