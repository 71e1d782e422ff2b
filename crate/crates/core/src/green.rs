//! Bulk magnetodielectric Green tensor.
//!
//! Lengths are in units of `λ_ref = 2πc/ω_ref`, so the wavenumber of a wave
//! of reduced frequency `ω` in a medium of index `n` is `q = 2π n ω`, and the
//! tensor itself carries units of `1/λ_ref`.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::materials::{refractive_index, MaterialsError, Medium};

pub type Vec3 = [f64; 3];
pub type Matrix3 = [[Complex64; 3]; 3];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GreenError {
    #[error("source and field points coincide; the equal-point bulk tensor is singular")]
    CoincidentPoints,
    #[error("zero wavenumber (omega = {omega}, n = {n})")]
    ZeroWavenumber { omega: f64, n: Complex64 },
    #[error(transparent)]
    Materials(#[from] MaterialsError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenTensorValue {
    pub r: Vec3,
    pub r_prime: Vec3,
    pub omega: f64,
    pub components: Matrix3,
}

impl GreenTensorValue {
    pub fn transpose(&self) -> Matrix3 {
        let m = &self.components;
        std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
    }

    pub fn trace(&self) -> Complex64 {
        (0..3).map(|i| self.components[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.components)
    }
}

pub fn frobenius(m: &Matrix3) -> f64 {
    m.iter()
        .flatten()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Wavenumber `2π n ω` in units of `1/λ_ref`.
pub fn wavenumber(n: Complex64, omega: f64) -> Complex64 {
    2.0 * PI * omega * n
}

/// `μ [∇∇ + q²] e^{iqρ}/(4π q² ρ)` at `ρ = |r − r′| > 0`, in the closed form
/// `μ e^{iqρ}/(4πρ) [A·I + B·ρ̂ρ̂]` with
/// `A = 1 + i/(qρ) − 1/(qρ)²`, `B = −1 − 3i/(qρ) + 3/(qρ)²`.
pub fn bulk_green(
    eps: Complex64,
    mu: Complex64,
    omega: f64,
    r: Vec3,
    r_prime: Vec3,
) -> Result<GreenTensorValue, GreenError> {
    let d: Vec3 = std::array::from_fn(|i| r[i] - r_prime[i]);
    let rho = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if rho == 0.0 {
        return Err(GreenError::CoincidentPoints);
    }
    let n = refractive_index(eps, mu)?.n;
    let q = wavenumber(n, omega);
    if q.norm() == 0.0 {
        return Err(GreenError::ZeroWavenumber { omega, n });
    }
    let i = Complex64::i();
    let x = q * rho;
    let inv = 1.0 / x;
    let a = 1.0 + i * inv - inv * inv;
    let b = -1.0 - 3.0 * i * inv + 3.0 * inv * inv;
    let pref = mu * (i * x).exp() / (4.0 * PI * rho);
    let unit: Vec3 = std::array::from_fn(|k| d[k] / rho);
    let components = std::array::from_fn(|row| {
        std::array::from_fn(|col| {
            let delta = if row == col { 1.0 } else { 0.0 };
            pref * (a * delta + b * unit[row] * unit[col])
        })
    });
    Ok(GreenTensorValue {
        r,
        r_prime,
        omega,
        components,
    })
}

pub fn vacuum_green(omega: f64, r: Vec3, r_prime: Vec3) -> Result<GreenTensorValue, GreenError> {
    let one = Complex64::new(1.0, 0.0);
    bulk_green(one, one, omega, r, r_prime)
}

/// Scalar multiplying the identity in `Im G(r, r, ω)` for a non-absorbing
/// bulk medium: `(k/6π)·Re[μn]` with `k = 2πω`, i.e. `ω·Re[μn]/3` per `λ_ref`.
pub fn im_green_equal_bulk(eps: Complex64, mu: Complex64, omega: f64) -> Result<f64, GreenError> {
    let n = refractive_index(eps, mu)?.n;
    Ok(omega / 3.0 * (mu * n).re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighFrequencyRow {
    pub omega: f64,
    /// `‖(ω²/c²)(G − G^V)‖` in units of `1/λ_ref³`.
    pub scaled_difference: f64,
    /// `‖G − G^V‖ / ‖G^V‖`.
    pub relative_difference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HighFrequencyReport {
    pub rows: Vec<HighFrequencyRow>,
}

impl HighFrequencyReport {
    pub fn relative_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].relative_difference <= w[0].relative_difference)
    }

    pub fn is_identically_vacuum(&self) -> bool {
        self.rows.iter().all(|r| r.scaled_difference == 0.0)
    }
}

/// Compares the bulk tensor of `medium` with the vacuum tensor along an
/// increasing frequency sequence. Both ε and μ tend to one, so the medium
/// tensor approaches the vacuum one.
///
/// Pointwise at `r ≠ r′` the `ω²`-weighted difference does not vanish (the
/// weighted vacuum tensor itself grows like `ω²`); the high-frequency limit
/// is a distributional statement. The relative difference is the quantity
/// that decays.
pub fn high_frequency_check(
    medium: &impl Medium,
    r: Vec3,
    r_prime: Vec3,
    omegas: &[f64],
) -> Result<HighFrequencyReport, GreenError> {
    let rows = omegas
        .iter()
        .map(|&omega| {
            let g = bulk_green(medium.eps(omega)?, medium.mu(omega)?, omega, r, r_prime)?;
            let gv = vacuum_green(omega, r, r_prime)?;
            let diff: Matrix3 = std::array::from_fn(|i| {
                std::array::from_fn(|j| g.components[i][j] - gv.components[i][j])
            });
            let k = 2.0 * PI * omega;
            let dn = frobenius(&diff);
            Ok(HighFrequencyRow {
                omega,
                scaled_difference: k * k * dn,
                relative_difference: dn / gv.frobenius_norm(),
            })
        })
        .collect::<Result<Vec<_>, GreenError>>()?;
    Ok(HighFrequencyReport { rows })
}
