use super::{power_sums, PowerSums, WronskianValue};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `V(x) = V0/2 (kappa(kappa-1)/sin^2(alpha x) + lambda(lambda-1)/cos^2(alpha x))`
/// on `[0, pi/(2 alpha)]`; the spectral variable is `k^2/alpha^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoschlTellerSpec {
    pub kappa: f64,
    pub lambda: f64,
}

impl PoschlTellerSpec {
    pub fn new(kappa: f64, lambda: f64) -> Result<Self> {
        if !(kappa > 1.0 && lambda > 1.0) || !kappa.is_finite() || !lambda.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "Pöschl-Teller needs kappa, lambda > 1 (got {kappa}, {lambda})"
            )));
        }
        Ok(PoschlTellerSpec { kappa, lambda })
    }

    /// The same problem seen from the other end of the interval.
    pub fn swapped(&self) -> Self {
        PoschlTellerSpec {
            kappa: self.lambda,
            lambda: self.kappa,
        }
    }
}

/// Series about one endpoint: `sum a_n t^(n + first/2)` with `a_0 = 1`.
fn endpoint_series(first: f64, other: f64, k2: f64, t: f64) -> Result<PowerSums> {
    let shift = 0.25 * (k2 + first * (first - 1.0) - other * (other - 1.0));
    power_sums(t, first / 2.0, |n, a1, a2| {
        let n = n as f64;
        let c1 = (n - 1.0 + first / 2.0) * (2.0 * n - 2.5 + first) - shift;
        let c2 = (n - 2.0 + first / 2.0).powi(2) - k2 / 4.0;
        (c1 * a1 - c2 * a2) / (n * (n - 0.5 + first))
    })
}

/// Wronskian of the solutions regular at `y = 0` and `y = 1`, evaluated at `y`.
pub fn pt_wronskian_at(spec: &PoschlTellerSpec, k2_over_alpha2: f64, y: f64) -> Result<WronskianValue> {
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::InvalidSpec(format!("evaluation point must lie in (0, 1), got {y}")));
    }
    let (kappa, lambda) = (spec.kappa, spec.lambda);
    let a = endpoint_series(kappa, lambda, k2_over_alpha2, y)?;
    let b = endpoint_series(lambda, kappa, k2_over_alpha2, 1.0 - y)?;
    // u_reg = y^(k/2) A, u_reg' = y^(k/2-1) A'; u1 = (1-y)^(l/2) B, u1' = -(1-y)^(l/2-1) B'
    let pa = y.powf(kappa / 2.0);
    let pb = (1.0 - y).powf(lambda / 2.0);
    let first = pa * a.value * (-pb * b.derivative / (1.0 - y));
    let second = pa * a.derivative / y * pb * b.value;
    Ok(WronskianValue {
        value: first - second,
        scale: first.abs().max(second.abs()),
    })
}

/// The Wronskian at `y = 1/2`.
pub fn pt_wronskian(spec: &PoschlTellerSpec, k2_over_alpha2: f64) -> Result<WronskianValue> {
    pt_wronskian_at(spec, k2_over_alpha2, 0.5)
}

/// `(kappa + lambda + 2n)^2` for `n = 0..count`.
pub fn pt_exact_levels(spec: &PoschlTellerSpec, count: usize) -> Vec<f64> {
    (0..count)
        .map(|n| (spec.kappa + spec.lambda + 2.0 * n as f64).powi(2))
        .collect()
}
