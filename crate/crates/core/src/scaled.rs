//! Coefficient sequences stored as `mantissa * 2^exponent`.
//!
//! The Wronskian series multiply coefficients that grow factorially (the
//! asymptotic `h_m`) by coefficients that decay factorially (the Taylor
//! `b_n`), so neither fits in a single `f64` exponent range over the term
//! counts needed. Each sequence keeps a current binary exponent that applies
//! to the sliding window its recurrence reads; when the window's magnitude
//! leaves `[RESCALE_LOW, RESCALE_HIGH]` the window is renormalized and the
//! shift is recorded per entry.

use crate::summation::scale2;

pub const RESCALE_HIGH: f64 = 1e250;
pub const RESCALE_LOW: f64 = 1e-250;

/// A real number `mantissa * 2^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub exponent: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: 0.0,
        exponent: 0,
    };

    pub fn new(mantissa: f64, exponent: i64) -> Self {
        Scaled { mantissa, exponent }
    }

    /// Folds the exponent back in; may overflow to ±inf or underflow to 0.
    pub fn to_f64(self) -> f64 {
        scale2(self.mantissa, self.exponent)
    }

    /// Value expressed relative to `2^reference`.
    pub fn relative_to(self, reference: i64) -> f64 {
        scale2(self.mantissa, self.exponent - reference)
    }

    pub fn scale_by(self, factor: f64) -> Scaled {
        Scaled {
            mantissa: self.mantissa * factor,
            exponent: self.exponent,
        }
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    /// Binary exponent of the magnitude (frexp convention), or `None` for zero.
    pub fn magnitude_exponent(self) -> Option<i64> {
        if self.mantissa == 0.0 || !self.mantissa.is_finite() {
            None
        } else {
            Some(self.mantissa.abs().log2().floor() as i64 + self.exponent)
        }
    }
}

impl std::ops::Mul for Scaled {
    type Output = Scaled;

    fn mul(self, other: Scaled) -> Scaled {
        Scaled {
            mantissa: self.mantissa * other.mantissa,
            exponent: self.exponent + other.exponent,
        }
    }
}

/// Sum of scaled values, returned with a common exponent.
pub fn sum_scaled(values: &[Scaled]) -> Scaled {
    let reference = values
        .iter()
        .filter_map(|v| v.magnitude_exponent())
        .max();
    let Some(reference) = reference else {
        return Scaled::ZERO;
    };
    let total = crate::summation::compensated_sum(values.iter().map(|v| v.relative_to(reference)));
    Scaled::new(total, reference)
}

/// Growable coefficient sequence with windowed power-of-two rescaling.
#[derive(Debug, Clone)]
pub struct ScaledSequence {
    mantissas: Vec<f64>,
    exponents: Vec<i64>,
    current_exponent: i64,
    window: usize,
    rescale_events: usize,
}

impl ScaledSequence {
    /// `window` is the recurrence depth: how many trailing entries the next value reads.
    pub fn new(window: usize) -> Self {
        ScaledSequence {
            mantissas: Vec::new(),
            exponents: Vec::new(),
            current_exponent: 0,
            window,
            rescale_events: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.mantissas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissas.is_empty()
    }

    /// Current exponent shared by the recurrence window.
    pub fn current_exponent(&self) -> i64 {
        self.current_exponent
    }

    pub fn rescale_events(&self) -> usize {
        self.rescale_events
    }

    /// Entry `i` expressed in the current window scale (only meaningful inside the window).
    #[inline]
    pub fn window_value(&self, i: usize) -> f64 {
        let shift = self.exponents[i] - self.current_exponent;
        if shift == 0 {
            self.mantissas[i]
        } else {
            scale2(self.mantissas[i], shift)
        }
    }

    /// Entry `i` relative to the current window scale, 0 for negative indices.
    #[inline]
    pub fn window_value_signed(&self, i: isize) -> f64 {
        if i < 0 {
            0.0
        } else {
            self.window_value(i as usize)
        }
    }

    pub fn get(&self, i: usize) -> Scaled {
        Scaled::new(self.mantissas[i], self.exponents[i])
    }

    /// Mantissa and exponent slices (parallel).
    pub fn parts(&self) -> (&[f64], &[i64]) {
        (&self.mantissas, &self.exponents)
    }

    /// Appends a value expressed in the current window scale, rescaling if needed.
    pub fn push(&mut self, value: f64) -> Result<(), usize> {
        let index = self.mantissas.len();
        if !value.is_finite() {
            return Err(index);
        }
        self.mantissas.push(value);
        self.exponents.push(self.current_exponent);
        let start = (index + 1).saturating_sub(self.window);
        let peak = self.mantissas[start..]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if peak > RESCALE_HIGH || (peak < RESCALE_LOW && peak > 0.0) {
            let shift = -(peak.log2().round() as i64);
            for j in start..=index {
                self.mantissas[j] = scale2(self.mantissas[j], shift);
                self.exponents[j] = self.current_exponent - shift;
            }
            self.current_exponent -= shift;
            self.rescale_events += 1;
        }
        Ok(())
    }

    /// Values folded to plain `f64` (may overflow or underflow).
    pub fn to_f64_vec(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.get(i).to_f64()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_growth_survives() {
        // a_n = n * a_{n-1}: 400! overflows f64 by far
        let mut seq = ScaledSequence::new(1);
        seq.push(1.0).unwrap();
        for n in 1..=400usize {
            let next = n as f64 * seq.window_value(n - 1);
            seq.push(next).unwrap();
        }
        assert!(seq.rescale_events() > 0);
        let ln400 = seq.get(400).mantissa.ln() + seq.get(400).exponent as f64 * 2f64.ln();
        // ln(400!) = 2000.5162...
        assert!((ln400 - 2_000.500_697_983_24).abs() < 1e-9);
        // entries before the rescale keep their own exponent
        assert_eq!(seq.get(3).to_f64(), 6.0);
    }

    #[test]
    fn decay_survives() {
        let mut seq = ScaledSequence::new(2);
        seq.push(1.0).unwrap();
        seq.push(0.5).unwrap();
        for n in 2..2000usize {
            let v = 0.25 * seq.window_value(n - 2) + 0.0 * seq.window_value(n - 1);
            seq.push(v).unwrap();
        }
        let last = seq.get(1998);
        let log2 = last.mantissa.log2() + last.exponent as f64;
        assert!((log2 + 1998.0).abs() < 1e-9);
    }

    #[test]
    fn non_finite_reports_index() {
        let mut seq = ScaledSequence::new(1);
        seq.push(1.0).unwrap();
        assert_eq!(seq.push(f64::NAN), Err(1));
    }

    #[test]
    fn sum_of_disparate_scales() {
        let s = sum_scaled(&[Scaled::new(1.0, 3000), Scaled::new(1.0, 3000), Scaled::new(5.0, -3000)]);
        assert_eq!(s.mantissa * 2f64.powi((s.exponent - 3001) as i32), 1.0);
    }
}
