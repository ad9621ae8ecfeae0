use thiserror::Error;

/// Errors produced by the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    /// A coefficient recurrence produced a non-finite value that rescaling could not absorb.
    #[error("coefficient overflow at index {index}")]
    Overflow { index: usize },

    /// A Wronskian coefficient series hit its term cap without meeting the tail criterion.
    #[error("gamma_{k} series not converged after {terms} terms (best partial sum {best:e}, tail estimate {tail:e})")]
    NotConverged {
        k: usize,
        terms: usize,
        best: f64,
        tail: f64,
    },

    /// Escalating the free index never produced a consistent evaluation.
    #[error("quantization function not converged at E = {energy} up to n = {last_n}")]
    EscalationExhausted { energy: f64, last_n: usize },

    /// `F(E)` is finite in scaled form but outside the `f64` range.
    #[error("quantization value at E = {energy} not representable as f64")]
    Unrepresentable { energy: f64 },

    #[error("scan unreliable: {failed} of {total} grid evaluations failed")]
    ScanUnreliable { failed: usize, total: usize },

    #[error("root refinement failed in [{lo}, {hi}]: {reason}")]
    Refine { lo: f64, hi: f64, reason: String },

    #[error("classical turning point {turning_point} lies outside the grid (x_max = {x_max})")]
    GridTooSmall { turning_point: f64, x_max: f64 },

    #[error("energy window exhausted before reaching state {ordinal}")]
    Window { ordinal: usize },

    /// Summation lost too many digits to cancellation for the value to be trusted.
    #[error("precision loss: cancellation ratio {cancellation:e} (value {value:e})")]
    PrecisionLoss { value: f64, cancellation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
