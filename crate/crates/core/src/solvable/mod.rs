//! Exactly solvable potentials, solved with the same Wronskian approach.
//!
//! For these models the series about both singular points converge, so the
//! Wronskian can be summed directly and its zeros compared with the known
//! level formulas.

mod modified_pt;
mod morse;
mod poschl_teller;

pub use modified_pt::{mpt_exact_levels, mpt_wronskian, mpt_wronskian_at, ModifiedPTSpec};
pub use morse::{
    morse_quantization, morse_reference_levels, morse_u_reg, morse_u_reg_checked, morse_zeros, MorseSpec, MorseValue,
    MorseZero, MORSE_MAX_CANCELLATION,
};
pub use poschl_teller::{pt_exact_levels, pt_wronskian, pt_wronskian_at, PoschlTellerSpec};

use crate::error::{Error, Result};
use crate::spectrum::{refine_root, scan_brackets};
use crate::summation::CompensatedSum;
use serde::{Deserialize, Serialize};

/// Any of the solvable models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum SolvableModelSpec {
    PoschlTeller(PoschlTellerSpec),
    ModifiedPt(ModifiedPTSpec),
    Morse(MorseSpec),
}

/// A Wronskian value with the magnitude of the largest product it is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WronskianValue {
    pub value: f64,
    pub scale: f64,
}

impl WronskianValue {
    /// `|W| / scale`; zero means complete cancellation.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            (self.value / self.scale).abs()
        }
    }
}

const SERIES_MAX_TERMS: usize = 100_000;
const SERIES_MIN_TERMS: usize = 20;

/// `sum_n c_n t^n` and `sum_n (n + sigma) c_n t^n` for a coefficient
/// sequence produced by `next(n, c_{n-1}, c_{n-2})` with `c_0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PowerSums {
    pub value: f64,
    pub derivative: f64,
    pub terms: usize,
}

pub(crate) fn power_sums<F>(t: f64, sigma: f64, mut next: F) -> Result<PowerSums>
where
    F: FnMut(usize, f64, f64) -> f64,
{
    let mut s0 = CompensatedSum::new();
    let mut s1 = CompensatedSum::new();
    let (mut c1, mut c2) = (1.0, 0.0);
    let mut power = 1.0;
    s0.add(1.0);
    s1.add(sigma);
    let mut quiet = 0;
    for n in 1..SERIES_MAX_TERMS {
        let c = next(n, c1, c2);
        c2 = c1;
        c1 = c;
        power *= t;
        let term = c * power;
        if !term.is_finite() {
            return Err(Error::Overflow { index: n });
        }
        s0.add(term);
        s1.add((n as f64 + sigma) * term);
        let small = term.abs() * (n as f64 + sigma.abs() + 1.0)
            <= f64::EPSILON * 1e-2 * s0.value().abs().max(s1.value().abs());
        quiet = if small || term == 0.0 { quiet + 1 } else { 0 };
        if quiet >= 3 && n >= SERIES_MIN_TERMS {
            return Ok(PowerSums {
                value: s0.value(),
                derivative: s1.value(),
                terms: n + 1,
            });
        }
    }
    Err(Error::NotConverged {
        k: 0,
        terms: SERIES_MAX_TERMS,
        best: s0.value(),
        tail: f64::INFINITY,
    })
}

/// Zeros of `f` on `[lo, hi]`: grid scan with spacing `step`, then Brent to `tol`.
pub fn locate_zeros<F>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let report = scan_brackets(&f, lo, hi, step)?;
    report
        .brackets
        .iter()
        .map(|b| refine_root(&f, b, tol).map(|r| r.x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        // c_n = 1: sum t^n = 1/(1-t), sum n t^n = t/(1-t)^2
        let s = power_sums(0.5, 0.0, |_, _, _| 1.0).unwrap();
        assert!((s.value - 2.0).abs() < 1e-15);
        assert!((s.derivative - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_series() {
        let s = power_sums(3.0, 0.5, |n, c1, _| c1 / n as f64).unwrap();
        assert!((s.value - 3f64.exp()).abs() < 1e-13);
        // sum (n + 1/2) 3^n/n! = 3 e^3 + e^3/2
        assert!((s.derivative - 3.5 * 3f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn divergent_series_reported() {
        assert!(power_sums(2.0, 0.0, |_, _, _| 1.0).is_err());
    }

    #[test]
    fn zeros_of_cosine() {
        let z = locate_zeros(|x| Ok(x.cos()), 0.0, 10.0, 0.1, 1e-13).unwrap();
        assert_eq!(z.len(), 3);
        for (i, x) in z.iter().enumerate() {
            let expected = (i as f64 + 0.5) * std::f64::consts::PI;
            assert!((x - expected).abs() < 1e-12);
        }
    }
}
