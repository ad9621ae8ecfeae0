use super::{power_sums, WronskianValue};
use crate::anharmonic::Parity;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `V(x) = -(hbar^2 alpha^2 / 2m) lambda(lambda-1) / cosh^2(alpha x)`; the
/// spectral variable is `kappa/alpha` with `kappa^2 = -2mE/hbar^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifiedPTSpec {
    pub lambda: f64,
    pub parity: Parity,
}

impl ModifiedPTSpec {
    pub fn new(lambda: f64, parity: Parity) -> Result<Self> {
        if !(lambda > 1.0) || !lambda.is_finite() {
            return Err(Error::InvalidSpec(format!("modified Pöschl-Teller needs lambda > 1 (got {lambda})")));
        }
        Ok(ModifiedPTSpec { lambda, parity })
    }

    /// Leading exponent at `y = 1`: 0 for even states, 1/2 for odd ones.
    pub fn mu(&self) -> f64 {
        match self.parity {
            Parity::Even => 0.0,
            Parity::Odd => 0.5,
        }
    }
}

/// Wronskian of the solution regular at `y = 0` (`x -> infinity`) and the
/// parity solution about `y = 1` (`x = 0`), evaluated at `y`.
pub fn mpt_wronskian_at(spec: &ModifiedPTSpec, kappa_over_alpha: f64, y: f64) -> Result<WronskianValue> {
    if !(kappa_over_alpha > 0.0) {
        return Err(Error::InvalidSpec(format!("kappa/alpha must be positive, got {kappa_over_alpha}")));
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::InvalidSpec(format!("evaluation point must lie in (0, 1), got {y}")));
    }
    let s = kappa_over_alpha / 2.0;
    let depth = spec.lambda * (spec.lambda - 1.0) / 4.0;
    let mu = spec.mu();
    let a = power_sums(y, s, |n, a1, _| {
        let n = n as f64;
        ((n - 1.0 + s) * (n - 0.5 + s) - depth) * a1 / (n * (n + 2.0 * s))
    })?;
    let b = power_sums(1.0 - y, mu, |n, b1, b2| {
        let n = n as f64;
        let c1 = 2.0 * (n - 1.0 + mu).powi(2) + s * s - depth;
        let c2 = (n - 2.0 + mu) * (n - 1.5 + mu) - depth;
        (c1 * b1 - c2 * b2) / ((n + mu) * (n + mu - 0.5))
    })?;
    let pa = y.powf(s);
    let pb = (1.0 - y).powf(mu);
    let first = pa * a.value * (-pb * b.derivative / (1.0 - y));
    let second = pa * a.derivative / y * pb * b.value;
    Ok(WronskianValue {
        value: first - second,
        scale: first.abs().max(second.abs()),
    })
}

/// The Wronskian at `y = 1/2`.
pub fn mpt_wronskian(spec: &ModifiedPTSpec, kappa_over_alpha: f64) -> Result<WronskianValue> {
    mpt_wronskian_at(spec, kappa_over_alpha, 0.5)
}

/// Positive `lambda - 1 - 2n` (even) or `lambda - 2 - 2n` (odd), ascending.
pub fn mpt_exact_levels(spec: &ModifiedPTSpec) -> Vec<f64> {
    let top = spec.lambda - 1.0 - 2.0 * spec.mu();
    let mut levels: Vec<f64> = (0..)
        .map(|n| top - 2.0 * n as f64)
        .take_while(|&k| k > 0.0)
        .collect();
    levels.reverse();
    levels
}
