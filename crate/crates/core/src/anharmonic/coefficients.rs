use super::OscillatorSpec;
use crate::error::{Error, Result};
use crate::scaled::{Scaled, ScaledSequence};

/// Which recurrence a series follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SeriesKind {
    /// `b_n` of the dressed regular solution.
    Regular,
    /// `h_m` of the recessive asymptotic expansion.
    Asymptotic,
    /// `a_n` of the undressed regular solution.
    Origin,
}

/// A recurrence-generated coefficient sequence, extended on demand.
///
/// The leading coefficient is normalized to 1 and every index below zero is
/// taken as 0. Entries are stored with power-of-two scaling (see
/// [`crate::scaled`]), so `value(i)` never overflows even where the plain
/// `f64` would.
#[derive(Debug, Clone)]
pub struct CoefficientSeries {
    kind: SeriesKind,
    g: f64,
    energy: f64,
    half_degree: u32,
    nu: u32,
    values: ScaledSequence,
}

impl CoefficientSeries {
    pub(crate) fn new(kind: SeriesKind, spec: &OscillatorSpec, energy: f64) -> Self {
        let n = spec.half_degree() as usize;
        let window = match kind {
            SeriesKind::Regular | SeriesKind::Asymptotic => n + 1,
            SeriesKind::Origin => 2 * n + 2,
        };
        CoefficientSeries {
            kind,
            g: spec.g(),
            energy,
            half_degree: spec.half_degree(),
            nu: spec.nu(),
            values: ScaledSequence::new(window),
        }
    }

    /// Value of the first coefficient before normalization was applied; fixed to 1.
    pub fn normalization(&self) -> f64 {
        1.0
    }

    /// Number of coefficients generated so far.
    pub fn truncation_order(&self) -> usize {
        self.values.len()
    }

    /// Binary exponent currently applied to the newest coefficients.
    pub fn rescale_exponent(&self) -> i64 {
        self.values.current_exponent()
    }

    pub fn rescale_events(&self) -> usize {
        self.values.rescale_events()
    }

    pub fn value(&self, i: usize) -> Scaled {
        self.values.get(i)
    }

    pub(crate) fn parts(&self) -> (&[f64], &[i64]) {
        self.values.parts()
    }

    /// Coefficients as plain floats; entries outside the `f64` range saturate.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.to_f64_vec()
    }

    /// Generates coefficients until at least `len` are available.
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        while self.values.len() < len {
            let i = self.values.len();
            let next = if i == 0 { 1.0 } else { self.next_value(i) };
            self.values.push(next).map_err(|index| Error::Overflow { index })?;
        }
        Ok(())
    }

    fn at(&self, i: isize) -> f64 {
        self.values.window_value_signed(i)
    }

    fn next_value(&self, i: usize) -> f64 {
        let n = self.half_degree as isize;
        let ii = i as isize;
        let (e, g) = (self.energy, self.g);
        match self.kind {
            SeriesKind::Regular => {
                // (i+nu)(i+nu-1) b_i = -E b_{i-2} + g b_{i-4} + 2(i - N/2 - 1 + nu) b_{i-N-1}
                if i == 1 {
                    return 0.0;
                }
                let nu = self.nu as f64;
                let x = i as f64;
                let rhs = -e * self.at(ii - 2)
                    + g * self.at(ii - 4)
                    + 2.0 * (x - n as f64 / 2.0 - 1.0 + nu) * self.at(ii - n - 1);
                rhs / ((x + nu) * (x + nu - 1.0))
            }
            SeriesKind::Asymptotic => {
                // -2 m h_m = (m - N/2)(m - N/2 - 1) h_{m-N-1} + E h_{m-N+1} - g h_{m-N+3}
                let x = i as f64;
                let half = n as f64 / 2.0;
                let rhs = (x - half) * (x - half - 1.0) * self.at(ii - n - 1) + e * self.at(ii - n + 1)
                    - g * self.at(ii - n + 3);
                rhs / (-2.0 * x)
            }
            SeriesKind::Origin => {
                // (i+nu)(i+nu-1) a_i = -E a_{i-2} + g a_{i-4} + a_{i-2N-2}
                if i == 1 {
                    return 0.0;
                }
                let nu = self.nu as f64;
                let x = i as f64;
                let rhs = -e * self.at(ii - 2) + g * self.at(ii - 4) + self.at(ii - 2 * n - 2);
                rhs / ((x + nu) * (x + nu - 1.0))
            }
        }
    }
}

fn generate(kind: SeriesKind, spec: &OscillatorSpec, energy: f64, count: usize) -> Result<CoefficientSeries> {
    if count == 0 {
        return Err(Error::InvalidSpec("coefficient count must be at least 1".into()));
    }
    if !energy.is_finite() {
        return Err(Error::InvalidSpec(format!("energy must be finite, got {energy}")));
    }
    let mut series = CoefficientSeries::new(kind, spec, energy);
    series.extend_to(count)?;
    Ok(series)
}

/// `b_0 .. b_{count-1}` of the dressed regular solution `exp(x^(N+1)/(N+1)) u_reg`.
///
/// `b_0 = 1` and `b_1 = 0`, which picks the single Frobenius solution of the
/// requested parity.
pub fn regular_series_coeffs(spec: &OscillatorSpec, energy: f64, count: usize) -> Result<CoefficientSeries> {
    generate(SeriesKind::Regular, spec, energy, count)
}

/// `h_0 .. h_{count-1}` of the recessive solution's asymptotic expansion, `h_0 = 1`.
pub fn asymptotic_coeffs(spec: &OscillatorSpec, energy: f64, count: usize) -> Result<CoefficientSeries> {
    generate(SeriesKind::Asymptotic, spec, energy, count)
}

/// `a_0 .. a_{count-1}` of the regular solution itself, `u_reg = sum a_n x^(n+nu)`.
pub fn origin_series_coeffs(spec: &OscillatorSpec, energy: f64, count: usize) -> Result<CoefficientSeries> {
    generate(SeriesKind::Origin, spec, energy, count)
}
