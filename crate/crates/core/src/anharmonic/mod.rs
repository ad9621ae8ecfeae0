//! Quantization function for the oscillator `V(x) = g x^2 + x^(2N)`, `N >= 4`.
//!
//! The eigenenergies are the zeros in `E` of the Wronskian between the
//! solution regular at the origin and the solution recessive at infinity.
//! Both solutions are multiplied by `exp(x^(N+1)/(N+1))`; the dressed regular
//! solution is an entire power series (`b_n`) and the dressed recessive one
//! has a descending asymptotic expansion (`h_m`). Their Wronskian is a
//! doubly infinite formal series with coefficients `gamma_k`, which must
//! match `N + 1` Heaviside exponential series. Eliminating the unknown
//! amplitudes gives the scalar function evaluated here.

mod coefficients;
mod wronskian;

pub use coefficients::{asymptotic_coeffs, origin_series_coeffs, regular_series_coeffs, CoefficientSeries};
pub use wronskian::{
    quantization_indices, quantization_value, quantization_value_at, wronskian_gamma, EscalationPolicy,
    GammaValue, QuantizationEvaluation, QuantizationPolicy, TailPolicy, WronskianEvaluator,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parity of a one-dimensional state; the regular series starts at `x^nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn nu(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_nu(nu: u32) -> Result<Self> {
        match nu {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::InvalidSpec(format!("parity index must be 0 or 1, got {nu}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Smallest half-degree the general quantization condition covers.
pub const MIN_HALF_DEGREE: u32 = 4;

/// One oscillator problem: coupling `g`, half-degree `N`, parity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    g: f64,
    half_degree: u32,
    parity: Parity,
}

impl OscillatorSpec {
    pub fn new(g: f64, half_degree: u32, parity: Parity) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InvalidSpec(format!("coupling must be finite, got {g}")));
        }
        if half_degree < MIN_HALF_DEGREE {
            return Err(Error::InvalidSpec(format!(
                "half-degree N must be at least {MIN_HALF_DEGREE}, got {half_degree}"
            )));
        }
        Ok(OscillatorSpec {
            g,
            half_degree,
            parity,
        })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// `N` in `x^(2N)`.
    pub fn half_degree(&self) -> u32 {
        self.half_degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn nu(&self) -> u32 {
        self.parity.nu()
    }

    pub fn with_parity(&self, parity: Parity) -> Self {
        OscillatorSpec { parity, ..*self }
    }

    pub fn exponents(&self) -> AsymptoticExponents {
        AsymptoticExponents::new(self.half_degree)
    }

    /// Exact minimum of `g x^2 + x^(2N)` over the real line.
    pub fn potential_minimum(&self) -> f64 {
        potential_minimum(self.g, self.half_degree)
    }
}

/// Minimum of `g x^2 + x^(2N)`: zero for `g >= 0`, otherwise at `x^(2N-2) = -g/N`.
pub fn potential_minimum(g: f64, half_degree: u32) -> f64 {
    if g >= 0.0 {
        return 0.0;
    }
    let n = half_degree as f64;
    let x2 = (-g / n).powf(1.0 / (n - 1.0));
    g * x2 + x2.powf(n)
}

/// Exponents of the two asymptotic solutions `exp(alpha x^(N+1)/(N+1)) x^mu`.
///
/// Only the recessive pair (`alpha1`, `mu`) enters the evaluation; `alpha2`
/// labels the divergent solution whose connection factor is what vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticExponents {
    pub alpha1: f64,
    pub alpha2: f64,
    pub mu: f64,
}

impl AsymptoticExponents {
    pub fn new(half_degree: u32) -> Self {
        AsymptoticExponents {
            alpha1: -1.0,
            alpha2: 1.0,
            mu: -(half_degree as f64) / 2.0,
        }
    }
}
