//! Spherical Bessel `j_n` and Hankel `h_n^(1)` functions of complex argument,
//! plus the Riccati derivatives `d/dz [z f_n(z)]`.
//!
//! `j_n` is computed by upward recurrence when `|Re z| >= n` and `|Im z| <= 1`,
//! and by normalised downward (Miller) recurrence otherwise. `h_n^(1)` is always computed
//! upward, which is the stable direction for the outgoing solution.
//!
//! Every routine has an exponentially scaled counterpart so callers can work
//! with arguments whose imaginary part would overflow the plain values:
//! `j_n(z)·e^{-|Im z|}` and `h_n^(1)(z)·e^{-iz}`.

use num_complex::Complex64;
use thiserror::Error;

/// Highest order any routine in this module will evaluate.
pub const MAX_ORDER: usize = 512;

const RESCALE_AT: f64 = 1e250;
// ln(f64::MAX) with some headroom
const EXP_LIMIT: f64 = 700.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("{0} is singular at z = 0")]
    Singular(&'static str),
    #[error("overflow evaluating {what} of order {order} at z = {z}")]
    Overflow {
        what: &'static str,
        order: usize,
        z: Complex64,
    },
    #[error("non-finite argument {0}")]
    BadArgument(Complex64),
}

type Result<T> = std::result::Result<T, SpecfunError>;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_arg(nmax: usize, z: Complex64) -> Result<()> {
    if nmax > MAX_ORDER {
        return Err(SpecfunError::OrderTooLarge(nmax));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecfunError::BadArgument(z));
    }
    Ok(())
}

/// `sin z · e^{-|Im z|}` and `cos z · e^{-|Im z|}`.
fn scaled_sin_cos(z: Complex64) -> (Complex64, Complex64) {
    let ay = z.im.abs();
    // e^{iz - |y|} and e^{-iz - |y|}
    let ep = Complex64::from_polar((-z.im - ay).exp(), z.re);
    let em = Complex64::from_polar((z.im - ay).exp(), -z.re);
    ((ep - em) / (2.0 * I), (ep + em) / 2.0)
}

fn unscale_j(v: Complex64, z: Complex64, order: usize) -> Result<Complex64> {
    let ay = z.im.abs();
    if ay > EXP_LIMIT {
        return Err(SpecfunError::Overflow {
            what: "j_n",
            order,
            z,
        });
    }
    let out = v * ay.exp();
    if out.re.is_finite() && out.im.is_finite() {
        Ok(out)
    } else {
        Err(SpecfunError::Overflow {
            what: "j_n",
            order,
            z,
        })
    }
}

fn unscale_h(v: Complex64, z: Complex64, order: usize) -> Result<Complex64> {
    if -z.im > EXP_LIMIT {
        return Err(SpecfunError::Overflow {
            what: "h_n",
            order,
            z,
        });
    }
    let out = v * (I * z).exp();
    if out.re.is_finite() && out.im.is_finite() {
        Ok(out)
    } else {
        Err(SpecfunError::Overflow {
            what: "h_n",
            order,
            z,
        })
    }
}

// num-complex divides through |b|², which over/underflows for |b| outside ~1e±154.
pub(crate) fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let m = b.norm();
    a * (b / m).conj() / m
}

/// `j_0 .. j_nmax` at `z`, scaled by `e^{-|Im z|}`.
pub fn sph_bessel_j_scaled_seq(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    check_arg(nmax, z)?;
    let mut out = vec![ZERO; nmax + 1];
    if z == ZERO {
        out[0] = ONE;
        return Ok(out);
    }
    let (s, c) = scaled_sin_cos(z);
    let j0 = s / z;
    let az = z.norm();
    // Upward is only trusted where the argument is dominantly real; with a
    // large imaginary part the recurrence picks up y_n contamination.
    if z.re.abs() >= nmax as f64 && z.im.abs() <= 1.0 {
        out[0] = j0;
        if nmax >= 1 {
            out[1] = s / (z * z) - c / z;
        }
        for k in 2..=nmax {
            out[k] = (2 * k - 1) as f64 / z * out[k - 1] - out[k - 2];
        }
        return Ok(out);
    }

    // Miller: start well above both nmax and the turning point |z|.
    let start = nmax.max(az.ceil() as usize)
        + 40
        + (8.0 * az.cbrt()).ceil() as usize
        + (az.sqrt() * 2.0).ceil() as usize;
    let mut above = ZERO;
    let mut cur = ONE;
    for k in (1..=start).rev() {
        // cur = f_k, above = f_{k+1}
        if k <= nmax {
            out[k] = cur;
        }
        let below = (2 * k + 1) as f64 / z * cur - above;
        above = cur;
        cur = below;
        if cur.norm() > RESCALE_AT {
            let f = 1.0 / RESCALE_AT;
            cur *= f;
            above *= f;
            for v in out.iter_mut().skip(k.saturating_sub(1)) {
                *v *= f;
            }
        }
    }
    out[0] = cur;

    // Normalise against whichever of j_0, j_1 is better conditioned.
    let j1 = s / (z * z) - c / z;
    let norm = if j0.norm() >= j1.norm() || nmax == 0 || az < 0.5 {
        safe_div(j0, out[0])
    } else {
        safe_div(j1, out[1])
    };
    for v in &mut out {
        *v *= norm;
    }
    Ok(out)
}

/// `j_0 .. j_nmax` at `z`.
pub fn sph_bessel_j_seq(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    let scaled = sph_bessel_j_scaled_seq(nmax, z)?;
    scaled
        .into_iter()
        .enumerate()
        .map(|(k, v)| unscale_j(v, z, k))
        .collect()
}

/// `h_0 .. h_nmax` of the first kind at `z`, scaled by `e^{-iz}`.
pub fn sph_hankel1_scaled_seq(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    check_arg(nmax, z)?;
    if z == ZERO {
        return Err(SpecfunError::Singular("h_n^(1)"));
    }
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(-I / z);
    if nmax >= 1 {
        out.push(-(z + I) / (z * z));
    }
    for k in 2..=nmax {
        let next = (2 * k - 1) as f64 / z * out[k - 1] - out[k - 2];
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(SpecfunError::Overflow {
                what: "h_n",
                order: k,
                z,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Longest prefix of `h_0 .. h_nmax` that is representable; stops at the
/// first order that overflows instead of failing.
pub fn sph_hankel1_seq_finite(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    check_arg(nmax, z)?;
    if z == ZERO {
        return Err(SpecfunError::Singular("h_n^(1)"));
    }
    let phase = unscale_h(ONE, z, 0)?;
    let mut out = Vec::with_capacity(nmax + 1);
    let (mut prev, mut cur) = (-I / z, -(z + I) / (z * z));
    out.push(prev * phase);
    for k in 1..=nmax {
        if k >= 2 {
            let next = (2 * k - 1) as f64 / z * cur - prev;
            prev = cur;
            cur = next;
        }
        let v = cur * phase;
        if !(v.re.is_finite() && v.im.is_finite()) {
            break;
        }
        out.push(v);
    }
    Ok(out)
}

/// `h_0 .. h_nmax` of the first kind at `z`.
pub fn sph_hankel1_seq(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    let scaled = sph_hankel1_scaled_seq(nmax, z)?;
    scaled
        .into_iter()
        .enumerate()
        .map(|(k, v)| unscale_h(v, z, k))
        .collect()
}

/// Logarithmic Riccati derivatives `[z h_n(z)]' / h_n(z)` for `n = 0..=nmax`.
///
/// Built from the ratio recurrence `h_n/h_{n-1} = (2n-1)/z - h_{n-2}/h_{n-1}`,
/// so it never forms `h_n` itself and is safe for any `Im z`.
pub fn hankel1_log_derivative_seq(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    check_arg(nmax, z)?;
    if z == ZERO {
        return Err(SpecfunError::Singular("h_n^(1)"));
    }
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(I * z);
    // ratio = h_{n-1} / h_n
    let mut ratio = I * z / (z + I);
    for n in 1..=nmax {
        if n > 1 {
            ratio = 1.0 / ((2 * n - 1) as f64 / z - ratio);
        }
        out.push(z * ratio - n as f64);
    }
    Ok(out)
}

pub fn sph_bessel_j(n: usize, z: Complex64) -> Result<Complex64> {
    Ok(sph_bessel_j_seq(n, z)?[n])
}

pub fn sph_hankel1(n: usize, z: Complex64) -> Result<Complex64> {
    Ok(sph_hankel1_seq(n, z)?[n])
}

pub fn sph_bessel_j_scaled(n: usize, z: Complex64) -> Result<Complex64> {
    Ok(sph_bessel_j_scaled_seq(n, z)?[n])
}

pub fn sph_hankel1_scaled(n: usize, z: Complex64) -> Result<Complex64> {
    Ok(sph_hankel1_scaled_seq(n, z)?[n])
}

/// Riccati derivatives from order `n-1` and `n` values:
/// `d/dz [z f_n] = z f_{n-1} - n f_n`.
fn riccati_from(n: usize, z: Complex64, prev: Complex64, cur: Complex64) -> Complex64 {
    z * prev - n as f64 * cur
}

/// `(d/dz [z j_n(z)], d/dz [z h_n^(1)(z)])`.
pub fn riccati_derivatives(n: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
    let v = spherical_values(n, z)?;
    Ok((v.dj_riccati, v.dh1_riccati))
}

/// All spherical quantities of one order at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalFunValue {
    pub order: usize,
    pub z: Complex64,
    pub j: Complex64,
    pub h1: Complex64,
    pub dj_riccati: Complex64,
    pub dh1_riccati: Complex64,
}

impl SphericalFunValue {
    /// `j_n [z h_n]' - h_n [z j_n]'`, which equals `i/z`.
    pub fn wronskian(&self) -> Complex64 {
        self.j * self.dh1_riccati - self.h1 * self.dj_riccati
    }
}

pub fn spherical_values(n: usize, z: Complex64) -> Result<SphericalFunValue> {
    if z == ZERO {
        return Err(SpecfunError::Singular("riccati derivative of h_n^(1)"));
    }
    let js = sph_bessel_j_seq(n, z)?;
    let hs = sph_hankel1_seq(n, z)?;
    Ok(assemble(n, z, &js, &hs, || {
        let (_, c) = scaled_sin_cos(z);
        (
            unscale_j(c, z, 0).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            (I * z).exp(),
        )
    }))
}

/// Same as [`spherical_values`] with `j` terms scaled by `e^{-|Im z|}` and
/// `h` terms scaled by `e^{-iz}`. The Wronskian of the scaled values equals
/// `(i/z)·e^{-|Im z| - iz}`.
pub fn spherical_values_scaled(n: usize, z: Complex64) -> Result<SphericalFunValue> {
    if z == ZERO {
        return Err(SpecfunError::Singular("riccati derivative of h_n^(1)"));
    }
    let js = sph_bessel_j_scaled_seq(n, z)?;
    let hs = sph_hankel1_scaled_seq(n, z)?;
    Ok(assemble(n, z, &js, &hs, || (scaled_sin_cos(z).1, ONE)))
}

fn assemble(
    n: usize,
    z: Complex64,
    js: &[Complex64],
    hs: &[Complex64],
    order_zero: impl FnOnce() -> (Complex64, Complex64),
) -> SphericalFunValue {
    let (dj, dh) = if n == 0 {
        order_zero()
    } else {
        (
            riccati_from(n, z, js[n - 1], js[n]),
            riccati_from(n, z, hs[n - 1], hs[n]),
        )
    };
    SphericalFunValue {
        order: n,
        z,
        j: js[n],
        h1: hs[n],
        dj_riccati: dj,
        dh1_riccati: dh,
    }
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `(Si(t), Cin(t))` for `t ≥ 0`, where `Cin(t) = ∫₀ᵗ (1 − cos u)/u du`.
fn sici_nonneg(t: f64) -> (f64, f64) {
    if t <= 2.0 {
        let t2 = t * t;
        let (mut si, mut cin) = (0.0, 0.0);
        // term_k = (−1)^k t^{2k+1}/(2k+1)! and (−1)^{k+1} t^{2k}/(2k)!
        let mut odd = t;
        let mut even = -1.0;
        for k in 0..30 {
            let kf = k as f64;
            si += odd / (2.0 * kf + 1.0);
            if k > 0 {
                cin += even / (2.0 * kf);
            }
            let next_odd = -odd * t2 / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0));
            even = -even * t2 / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
            odd = next_odd;
            if odd.abs() < 1e-17 * si.abs() && even.abs() < 1e-17 * cin.abs().max(1e-300) {
                break;
            }
        }
        return (si, cin);
    }
    // E1(it) by its continued fraction (modified Lentz)
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, t);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = ONE / b;
    let mut h = d;
    for k in 2..1000 {
        let a = -((k - 1) * (k - 1)) as f64;
        b += 2.0;
        d = ONE / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - ONE).norm() < 1e-16 {
            break;
        }
    }
    h *= Complex64::from_polar(1.0, -t);
    let ci = -h.re;
    let si = std::f64::consts::FRAC_PI_2 + h.im;
    (si, EULER_GAMMA + t.ln() - ci)
}

/// Sine integral `Si(x) = ∫₀ˣ sin u/u du`.
pub fn sine_integral(x: f64) -> f64 {
    let (si, _) = sici_nonneg(x.abs());
    si.copysign(x)
}

/// Entire cosine integral `Cin(x) = ∫₀ˣ (1 − cos u)/u du`, even in `x`.
pub fn cosine_integral_entire(x: f64) -> f64 {
    sici_nonneg(x.abs()).1
}

/// `Ci(x) = γ + ln x − Cin(x)` for `x > 0`.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(SpecfunError::BadArgument(Complex64::new(x, 0.0)));
    }
    Ok(EULER_GAMMA + x.ln() - cosine_integral_entire(x))
}
