use super::coefficients::{CoefficientSeries, SeriesKind};
use super::OscillatorSpec;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::scaled::{sum_scaled, Scaled};
use crate::summation::{scale2, CompensatedSum};
use serde::{Deserialize, Serialize};

/// Termination rule for the `gamma_k` series.
///
/// Convergence of these series has no proof; it is observed for large
/// enough `k`, with terms decaying algebraically. Summation stops once
/// `consecutive` successive terms each satisfy `|t_m| (m+1) <= rel_tol |S|`,
/// which bounds the neglected tail for any decay faster than `m^-2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPolicy {
    pub rel_tol: f64,
    pub consecutive: usize,
    pub max_terms: usize,
    /// Largest accepted `max |partial sum| / |final sum|`.
    pub max_cancellation: f64,
}

impl Default for TailPolicy {
    fn default() -> Self {
        TailPolicy {
            rel_tol: 1e-16,
            consecutive: 5,
            max_terms: 50_000,
            max_cancellation: 1e6,
        }
    }
}

/// How the free index `n` is chosen and raised when a series misbehaves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EscalationPolicy {
    /// Smallest `k` the first attempt uses: `n_start = ceil(k_threshold / (N+1))`.
    pub k_threshold: usize,
    pub n_step: usize,
    /// `n` is never raised beyond `n_start + n_span`.
    pub n_span: usize,
    /// Also evaluate at `n + 1` and require `F_{n+1} = 2/(N+1) F_n`.
    pub verify_ratio: bool,
    /// Allowed ratio-law defect, relative to the largest term of the sum.
    pub ratio_tol: f64,
}

impl Default for EscalationPolicy {
    fn default() -> Self {
        EscalationPolicy {
            k_threshold: 64,
            n_step: 8,
            n_span: 80,
            verify_ratio: true,
            ratio_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QuantizationPolicy {
    pub tail: TailPolicy,
    pub escalation: EscalationPolicy,
}

impl QuantizationPolicy {
    pub fn start_index(&self, half_degree: u32) -> usize {
        self.escalation.k_threshold.div_ceil(half_degree as usize + 1)
    }
}

/// One summed Wronskian coefficient with its convergence report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub k: usize,
    pub value: Scaled,
    pub terms_used: usize,
    /// Bound on the neglected tail relative to `|gamma_k|`.
    pub tail_estimate: f64,
    /// `max |partial sum| / |gamma_k|`.
    pub cancellation: f64,
}

/// Value of the quantization function at one energy.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationEvaluation {
    /// `F(E)`, folded to `f64`.
    pub value: f64,
    /// `F(E)` without folding the binary exponent.
    pub scaled: Scaled,
    pub energy: f64,
    /// Free index `n` actually used.
    pub n_index: usize,
    /// `gamma_{k_L}`, `L = 0..=N`.
    pub gamma_values: Vec<Scaled>,
    pub terms_used: Vec<usize>,
    pub converged: bool,
    /// Largest tail estimate among the `gamma_{k_L}`.
    pub tail_estimate: f64,
    /// `max_L |Gamma(n+1+delta_L) ((N+1)/2)^(L/(N+1)) gamma_{k_L}|`.
    pub term_scale: Scaled,
}

impl QuantizationEvaluation {
    /// `|F| / term_scale`: how close the sum is to cancelling completely.
    pub fn relative_residual(&self) -> f64 {
        if self.term_scale.is_zero() {
            return 0.0;
        }
        self.scaled.relative_to(self.term_scale.exponent).abs() / self.term_scale.mantissa.abs()
    }
}

/// `(delta_L, k_L)` for `L = 0..=N`: `delta_L = (nu + mu + L)/(N+1)`, `k_L = n(N+1) + 1 + L`.
pub fn quantization_indices(half_degree: u32, nu: u32, n: usize) -> Vec<(f64, usize)> {
    let big_n = half_degree as usize;
    let mu = -(half_degree as f64) / 2.0;
    (0..=big_n)
        .map(|l| {
            let delta = (nu as f64 + mu + l as f64) / (big_n as f64 + 1.0);
            (delta, n * (big_n + 1) + 1 + l)
        })
        .collect()
}

/// Lazily extended state for evaluating the Wronskian expansion at one energy.
///
/// Coefficients generated for one `k` (or one `n`) are reused by every later
/// request, so raising `n` costs only the additional terms.
#[derive(Debug, Clone)]
pub struct WronskianEvaluator {
    spec: OscillatorSpec,
    energy: f64,
    regular: CoefficientSeries,
    asymptotic: CoefficientSeries,
    tail: TailPolicy,
}

const CHUNK: usize = 256;

impl WronskianEvaluator {
    pub fn new(spec: OscillatorSpec, energy: f64, tail: TailPolicy) -> Result<Self> {
        if !energy.is_finite() {
            return Err(Error::InvalidSpec(format!("energy must be finite, got {energy}")));
        }
        Ok(WronskianEvaluator {
            spec,
            energy,
            regular: CoefficientSeries::new(SeriesKind::Regular, &spec, energy),
            asymptotic: CoefficientSeries::new(SeriesKind::Asymptotic, &spec, energy),
            tail,
        })
    }

    pub fn spec(&self) -> &OscillatorSpec {
        &self.spec
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// `gamma_k = sum_m (-2m - k - nu + mu) b_{m+k} h_m`, `k >= 1`.
    pub fn gamma(&mut self, k: usize) -> Result<GammaValue> {
        if k == 0 {
            return Err(Error::InvalidSpec("gamma_k requires k >= 1".into()));
        }
        let tail = self.tail;
        let nu = self.spec.nu() as f64;
        let mu = -(self.spec.half_degree() as f64) / 2.0;
        let min_terms = 4 * (self.spec.half_degree() as usize + 1);

        let mut sum = CompensatedSum::new();
        let mut reference: Option<i64> = None;
        let mut small_run = 0usize;
        let mut tail_bound = 0.0f64;

        for m in 0..tail.max_terms {
            if self.asymptotic.truncation_order() <= m {
                self.asymptotic.extend_to(m + CHUNK)?;
                self.regular.extend_to(m + k + CHUNK)?;
            }
            if self.regular.truncation_order() <= m + k {
                self.regular.extend_to(m + k + CHUNK)?;
            }
            let (bm, be) = self.regular.parts();
            let (hm, he) = self.asymptotic.parts();
            let product = bm[m + k] * hm[m];
            let weight = -2.0 * m as f64 - k as f64 - nu + mu;
            let mut term = 0.0;
            if product != 0.0 {
                let exponent = be[m + k] + he[m];
                let reference = *reference.get_or_insert(exponent);
                term = scale2(weight * product, exponent - reference);
                if !term.is_finite() {
                    return Err(Error::Overflow { index: m + k });
                }
            }
            sum.add(term);
            let s = sum.value().abs();
            let weighted = term.abs() * (m as f64 + 1.0);
            if weighted <= tail.rel_tol * s {
                small_run += 1;
                tail_bound = tail_bound.max(if s > 0.0 { weighted / s } else { 0.0 });
            } else {
                small_run = 0;
                tail_bound = 0.0;
            }
            if small_run >= tail.consecutive && m + 1 >= min_terms {
                let cancellation = sum.cancellation_ratio();
                let value = Scaled::new(sum.value(), reference.unwrap_or(0));
                if cancellation > tail.max_cancellation {
                    return Err(Error::NotConverged {
                        k,
                        terms: m + 1,
                        best: value.to_f64(),
                        tail: cancellation,
                    });
                }
                return Ok(GammaValue {
                    k,
                    value,
                    terms_used: m + 1,
                    tail_estimate: tail_bound,
                    cancellation,
                });
            }
        }
        let value = Scaled::new(sum.value(), reference.unwrap_or(0));
        Err(Error::NotConverged {
            k,
            terms: tail.max_terms,
            best: value.to_f64(),
            tail: f64::INFINITY,
        })
    }

    /// `F_n(E) = sum_L Gamma(n+1+delta_L) ((N+1)/2)^(L/(N+1)) gamma_{k_L}` at a fixed `n`.
    pub fn quantization_at(&mut self, n: usize) -> Result<QuantizationEvaluation> {
        let big_n = self.spec.half_degree();
        let np1 = big_n as f64 + 1.0;
        let mut gammas = Vec::with_capacity(big_n as usize + 1);
        let mut weighted = Vec::with_capacity(big_n as usize + 1);
        let mut terms_used = Vec::with_capacity(big_n as usize + 1);
        let mut tail_estimate = 0.0f64;
        for (l, (delta, k)) in quantization_indices(big_n, self.spec.nu(), n).into_iter().enumerate() {
            let g = self.gamma(k)?;
            let weight = gamma(n as f64 + 1.0 + delta) * (np1 / 2.0).powf(l as f64 / np1);
            gammas.push(g.value);
            weighted.push(g.value.scale_by(weight));
            terms_used.push(g.terms_used);
            tail_estimate = tail_estimate.max(g.tail_estimate);
        }
        let total = sum_scaled(&weighted);
        let term_scale = weighted
            .iter()
            .copied()
            .max_by(|a, b| match (a.magnitude_exponent(), b.magnitude_exponent()) {
                (Some(ea), Some(eb)) if ea == eb => a.relative_to(ea).abs().total_cmp(&b.relative_to(ea).abs()),
                (ea, eb) => ea.cmp(&eb),
            })
            .map(|s| Scaled::new(s.mantissa.abs(), s.exponent))
            .unwrap_or(Scaled::ZERO);
        Ok(QuantizationEvaluation {
            value: total.to_f64(),
            scaled: total,
            energy: self.energy,
            n_index: n,
            gamma_values: gammas,
            terms_used,
            converged: true,
            tail_estimate,
            term_scale,
        })
    }

    /// `F(E)` with the free index chosen by `escalation`, starting from `n_start`.
    ///
    /// Moves to larger `n` whenever a series fails to converge or (if enabled)
    /// the evaluations at `n` and `n+1` disagree with the `2/(N+1)` ratio law.
    pub fn quantization(&mut self, n_start: usize, escalation: &EscalationPolicy) -> Result<QuantizationEvaluation> {
        let ratio = 2.0 / (self.spec.half_degree() as f64 + 1.0);
        let mut n = n_start;
        let last = n_start + escalation.n_span;
        while n <= last {
            if let Ok(eval) = self.quantization_at(n) {
                if !escalation.verify_ratio {
                    return Ok(eval);
                }
                if let Ok(next) = self.quantization_at(n + 1) {
                    if ratio_law_defect(&eval, &next, ratio) <= escalation.ratio_tol {
                        return Ok(eval);
                    }
                }
            }
            n += escalation.n_step.max(1);
        }
        Err(Error::EscalationExhausted {
            energy: self.energy,
            last_n: last,
        })
    }
}

/// `|F_{n+1} - r F_n| / (r * term_scale_n)`.
pub(crate) fn ratio_law_defect(at_n: &QuantizationEvaluation, at_next: &QuantizationEvaluation, ratio: f64) -> f64 {
    let scale = at_n.term_scale;
    if scale.is_zero() {
        return if at_next.scaled.is_zero() { 0.0 } else { f64::INFINITY };
    }
    let reference = scale.exponent;
    let diff = at_next.scaled.relative_to(reference) - ratio * at_n.scaled.relative_to(reference);
    diff.abs() / (ratio * scale.mantissa)
}

/// One Wronskian coefficient `gamma_k` at energy `E`.
pub fn wronskian_gamma(spec: &OscillatorSpec, energy: f64, k: usize, tail: &TailPolicy) -> Result<GammaValue> {
    WronskianEvaluator::new(*spec, energy, *tail)?.gamma(k)
}

/// `F_n(E)` at exactly the given `n` (no escalation).
pub fn quantization_value_at(
    spec: &OscillatorSpec,
    energy: f64,
    n: usize,
    tail: &TailPolicy,
) -> Result<QuantizationEvaluation> {
    WronskianEvaluator::new(*spec, energy, *tail)?.quantization_at(n)
}

/// `F(E)` starting from the free index `n`, escalating per `policy` when needed.
pub fn quantization_value(
    spec: &OscillatorSpec,
    energy: f64,
    n: usize,
    policy: &QuantizationPolicy,
) -> Result<QuantizationEvaluation> {
    WronskianEvaluator::new(*spec, energy, policy.tail)?.quantization(n, &policy.escalation)
}
