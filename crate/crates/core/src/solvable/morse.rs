use super::locate_zeros;
use crate::error::{Error, Result};
use crate::summation::TwoFold;
use serde::{Deserialize, Serialize};

/// Largest accepted `max |partial sum| / |sum|` for the Morse series.
///
/// The series is summed in double-double arithmetic (about 32 digits), so
/// this still leaves roughly eight significant digits in the result.
pub const MORSE_MAX_CANCELLATION: f64 = 1e24;

const MAX_TERMS: usize = 20_000;

/// Morse potential for `l = 0`, reduced to `gamma/alpha` and `alpha` (in units
/// of the equilibrium distance); the spectral variable is `beta/alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseSpec {
    pub alpha: f64,
    pub gamma_over_alpha: f64,
}

impl MorseSpec {
    pub fn new(alpha: f64, gamma_over_alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && gamma_over_alpha > 0.0) || !alpha.is_finite() || !gamma_over_alpha.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "Morse needs alpha, gamma/alpha > 0 (got {alpha}, {gamma_over_alpha})"
            )));
        }
        Ok(MorseSpec { alpha, gamma_over_alpha })
    }

    /// Image of the origin `r = 0` in the series variable: `2 (gamma/alpha) e^alpha`.
    pub fn y0(&self) -> f64 {
        2.0 * self.gamma_over_alpha * self.alpha.exp()
    }
}

/// A Morse series value with its cancellation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseValue {
    pub value: f64,
    /// `max |partial sum| / |sum|`.
    pub cancellation: f64,
    pub terms: usize,
}

/// `y^s sum_n a_n y^n` with `n(n+2s) a_n = -(gamma/alpha) a_{n-1} + a_{n-2}/4`,
/// `a_0 = 1`, summed in double-double, without a cancellation limit.
pub fn morse_u_reg(spec: &MorseSpec, beta_over_alpha: f64, y: f64) -> Result<MorseValue> {
    let s = beta_over_alpha;
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidSpec(format!("beta/alpha must be positive, got {s}")));
    }
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::InvalidSpec(format!("y must be non-negative, got {y}")));
    }
    if y == 0.0 {
        return Ok(MorseValue { value: 0.0, cancellation: 1.0, terms: 0 });
    }
    let g = spec.gamma_over_alpha;
    let yy = TwoFold::from(y);
    let quarter_y2 = yy * yy * 0.25;
    // p_n = a_n y^n
    let (mut p1, mut p2) = (TwoFold::ONE, TwoFold::ZERO);
    let mut sum = TwoFold::ONE;
    let mut max_partial = 1.0f64;
    let mut quiet = 0;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        let denom = TwoFold::from(nf) * (TwoFold::from(nf) + TwoFold::from(2.0) * TwoFold::from(s));
        let p = (-(yy * p1 * g) + quarter_y2 * p2) / denom;
        p2 = p1;
        p1 = p;
        sum += p;
        if !sum.is_finite() {
            return Err(Error::Overflow { index: n });
        }
        max_partial = max_partial.max(sum.hi.abs());
        let small = p.hi.abs() <= 1e-34 * max_partial;
        quiet = if small && nf > y { quiet + 1 } else { 0 };
        if quiet >= 3 {
            let value = sum.to_f64();
            let cancellation = if value == 0.0 { f64::INFINITY } else { max_partial / value.abs() };
            return Ok(MorseValue {
                value: y.powf(s) * value,
                cancellation,
                terms: n + 1,
            });
        }
    }
    Err(Error::NotConverged {
        k: 0,
        terms: MAX_TERMS,
        best: sum.to_f64(),
        tail: f64::INFINITY,
    })
}

/// As [`morse_u_reg`], failing when cancellation exceeds [`MORSE_MAX_CANCELLATION`].
pub fn morse_u_reg_checked(spec: &MorseSpec, beta_over_alpha: f64, y: f64) -> Result<MorseValue> {
    let v = morse_u_reg(spec, beta_over_alpha, y)?;
    if v.cancellation > MORSE_MAX_CANCELLATION {
        return Err(Error::PrecisionLoss {
            value: v.value,
            cancellation: v.cancellation,
        });
    }
    Ok(v)
}

/// The quantization function: the regular solution at `y0` (i.e. at `r = 0`).
pub fn morse_quantization(spec: &MorseSpec, beta_over_alpha: f64) -> Result<MorseValue> {
    morse_u_reg_checked(spec, beta_over_alpha, spec.y0())
}

/// `gamma/alpha - n - 1/2` for every `n` that keeps it positive, in order of `n`.
pub fn morse_reference_levels(spec: &MorseSpec) -> Vec<f64> {
    (0..)
        .map(|n| spec.gamma_over_alpha - n as f64 - 0.5)
        .take_while(|&b| b > 0.0)
        .collect()
}

/// A located zero of the quantization function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseZero {
    pub beta_over_alpha: f64,
    /// Cancellation of the series at the grid point next to the zero.
    pub cancellation: f64,
}

/// Zeros of the quantization function in `beta/alpha in (0, gamma/alpha)`, descending.
///
/// Close to a zero the series cancels almost completely by construction, so
/// the search uses the unchecked value; its sign stays reliable until the
/// double-double noise floor.
pub fn morse_zeros(spec: &MorseSpec, step: f64, tol: f64) -> Result<Vec<MorseZero>> {
    let y0 = spec.y0();
    let f = |s: f64| morse_u_reg(spec, s, y0).map(|v| v.value);
    let lo = step * 1e-3;
    let hi = spec.gamma_over_alpha;
    let mut zeros = locate_zeros(f, lo, hi, step, tol)?
        .into_iter()
        .map(|z| {
            let near = (z - 0.5 * step).max(lo);
            let cancellation = morse_u_reg(spec, near, y0).map(|v| v.cancellation).unwrap_or(f64::INFINITY);
            MorseZero {
                beta_over_alpha: z,
                cancellation,
            }
        })
        .collect::<Vec<_>>();
    zeros.reverse();
    Ok(zeros)
}
