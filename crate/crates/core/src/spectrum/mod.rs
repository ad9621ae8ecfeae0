//! Root localization in energy and the table runner.
//!
//! Each parity is scanned on a uniform energy grid for sign changes of the
//! quantization function, every bracket is refined with Brent's method, and
//! the two parity ladders are merged.

mod bracket;
mod brent;
pub mod reference;

pub use bracket::{scan_brackets, scan_grid, Bracket, ScanReport};
pub use brent::{refine_root, Root, MAX_EVALUATIONS};

use crate::anharmonic::{potential_minimum, quantization_value, OscillatorSpec, Parity, QuantizationEvaluation, QuantizationPolicy};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Knobs of the level search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverPolicy {
    pub quantization: QuantizationPolicy,
    /// Energy grid spacing of the bracket scan.
    pub step: f64,
    /// Absolute energy tolerance of the refinement.
    pub energy_tol: f64,
    /// The default scan starts this far below `min(0, V_min)`.
    pub margin: f64,
    /// Without an upper limit the window grows by this much at a time.
    pub chunk: f64,
    /// ... and gives up after scanning this far.
    pub max_span: f64,
}

impl Default for SolverPolicy {
    fn default() -> Self {
        SolverPolicy {
            quantization: QuantizationPolicy::default(),
            step: 0.05,
            energy_tol: 1e-10,
            margin: 5.0,
            chunk: 10.0,
            max_span: 2000.0,
        }
    }
}

/// Energy range to scan; unset fields take the policy defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyWindow {
    pub e_min: Option<f64>,
    pub e_max: Option<f64>,
    pub step: Option<f64>,
}

/// `F(E)` for one parity, as a plain real function of the energy.
///
/// Values are normalized to the starting index: an evaluation that had to
/// escalate to `n` is multiplied by `((N+1)/2)^(n - n_start)`, which by the
/// ratio law is the same function, so sign and magnitude stay continuous
/// across escalations.
#[derive(Debug, Clone, Copy)]
pub struct QuantizationFunction {
    spec: OscillatorSpec,
    policy: QuantizationPolicy,
    n_start: usize,
}

impl QuantizationFunction {
    pub fn new(spec: OscillatorSpec, policy: QuantizationPolicy) -> Self {
        let n_start = policy.start_index(spec.half_degree());
        QuantizationFunction { spec, policy, n_start }
    }

    pub fn spec(&self) -> &OscillatorSpec {
        &self.spec
    }

    pub fn n_start(&self) -> usize {
        self.n_start
    }

    pub fn evaluate(&self, energy: f64) -> Result<QuantizationEvaluation> {
        quantization_value(&self.spec, energy, self.n_start, &self.policy)
    }

    pub fn normalized(&self, eval: &QuantizationEvaluation) -> Result<f64> {
        let ratio = (self.spec.half_degree() as f64 + 1.0) / 2.0;
        let shift = eval.n_index.saturating_sub(self.n_start) as i32;
        let value = eval.scaled.scale_by(ratio.powi(shift)).to_f64();
        if !value.is_finite() || (value == 0.0 && !eval.scaled.is_zero()) {
            return Err(Error::Unrepresentable { energy: eval.energy });
        }
        Ok(value)
    }

    pub fn value(&self, energy: f64) -> Result<f64> {
        self.normalized(&self.evaluate(energy)?)
    }
}

/// A located eigenvalue with its solver diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub energy: f64,
    pub parity: Parity,
    /// Position within its parity ladder (0-based).
    pub ordinal: usize,
    /// Position in the merged spectrum (0-based).
    pub index: usize,
    /// `|F|` at the returned energy.
    pub residual: f64,
    /// `|F|` relative to the largest term of the sum.
    pub relative_residual: f64,
    pub n_used: usize,
    pub terms_used: Vec<usize>,
    pub bracket_width: f64,
    pub evaluations: usize,
}

/// Result of [`lowest_eigenvalues`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub g: f64,
    pub half_degree: u32,
    pub requested: usize,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Levels missing because the window ran out.
    pub shortfall: usize,
    /// Energy range actually scanned.
    pub scanned: (f64, f64),
    /// Grid points skipped because `F` could not be evaluated.
    pub failed_points: usize,
}

impl Spectrum {
    pub fn is_complete(&self) -> bool {
        self.shortfall == 0
    }

    pub fn energies(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e.energy).collect()
    }
}

/// Refines one bracket of `f` and attaches the diagnostics at the root.
pub fn refine_eigenvalue(f: &QuantizationFunction, bracket: &Bracket, energy_tol: f64) -> Result<Eigenvalue> {
    let root = refine_root(|e| f.value(e), bracket, energy_tol)?;
    let eval = f.evaluate(root.x)?;
    Ok(Eigenvalue {
        energy: root.x,
        parity: f.spec().parity(),
        ordinal: 0,
        index: 0,
        residual: f.normalized(&eval).map(f64::abs).unwrap_or(root.f_x.abs()),
        relative_residual: eval.relative_residual(),
        n_used: eval.n_index,
        terms_used: eval.terms_used,
        bracket_width: root.bracket_width,
        evaluations: root.evaluations,
    })
}

/// All grid-resolved levels of one parity in `[lo, hi]`, ascending.
pub fn levels_in_window(
    f: &QuantizationFunction,
    lo: f64,
    hi: f64,
    step: f64,
    energy_tol: f64,
) -> Result<(Vec<Eigenvalue>, ScanReport)> {
    let report = scan_brackets(|e| f.value(e), lo, hi, step)?;
    let levels = report
        .brackets
        .par_iter()
        .map(|b| refine_eigenvalue(f, b, energy_tol))
        .collect::<Result<Vec<_>>>()?;
    Ok((levels, report))
}

/// Default lower end of the scan: `min(0, V_min) - margin`.
pub fn default_lower_bound(g: f64, half_degree: u32, margin: f64) -> f64 {
    potential_minimum(g, half_degree).min(0.0) - margin
}

/// The `count` lowest levels of `g x^2 + x^(2N)`, both parities merged.
///
/// With no upper limit the window grows chunk by chunk until `count` levels
/// are found or `max_span` is exhausted; a window that runs out yields a
/// partial spectrum with a nonzero `shortfall`.
pub fn lowest_eigenvalues(
    g: f64,
    half_degree: u32,
    count: usize,
    window: &EnergyWindow,
    policy: &SolverPolicy,
) -> Result<Spectrum> {
    lowest_eigenvalues_of(g, half_degree, &Parity::BOTH, count, window, policy)
}

/// As [`lowest_eigenvalues`], restricted to the given parities.
pub fn lowest_eigenvalues_of(
    g: f64,
    half_degree: u32,
    parities: &[Parity],
    count: usize,
    window: &EnergyWindow,
    policy: &SolverPolicy,
) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::InvalidSpec("level count must be at least 1".into()));
    }
    if parities.is_empty() {
        return Err(Error::InvalidSpec("no parity selected".into()));
    }
    let step = window.step.unwrap_or(policy.step);
    let functions: Vec<QuantizationFunction> = parities
        .iter()
        .map(|&p| OscillatorSpec::new(g, half_degree, p).map(|s| QuantizationFunction::new(s, policy.quantization)))
        .collect::<Result<_>>()?;
    let lower = window
        .e_min
        .unwrap_or_else(|| default_lower_bound(g, half_degree, policy.margin));
    let upper_limit = window.e_max.unwrap_or(lower + policy.max_span);
    if !(lower < upper_limit) || !(step > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "empty energy window [{lower}, {upper_limit}] or step {step}"
        )));
    }

    let mut found: Vec<Eigenvalue> = Vec::new();
    let mut failed_points = 0;
    let mut lo = lower;
    loop {
        let hi = if window.e_max.is_some() {
            upper_limit
        } else {
            (lo + policy.chunk).min(upper_limit)
        };
        let chunks = functions
            .par_iter()
            .map(|f| levels_in_window(f, lo, hi, step, policy.energy_tol))
            .collect::<Result<Vec<_>>>()?;
        for (levels, report) in chunks {
            failed_points += report.failed_points.len();
            // a root on the shared chunk boundary shows up in both chunks
            for level in levels {
                let seen = found
                    .iter()
                    .any(|e| e.parity == level.parity && (e.energy - level.energy).abs() <= 2.0 * policy.energy_tol);
                if !seen {
                    found.push(level);
                }
            }
        }
        if found.len() >= count || hi >= upper_limit {
            lo = hi;
            break;
        }
        lo = hi;
    }

    found.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    for &p in parities {
        for (ordinal, level) in found.iter_mut().filter(|e| e.parity == p).enumerate() {
            level.ordinal = ordinal;
        }
    }
    found.truncate(count);
    for (index, level) in found.iter_mut().enumerate() {
        level.index = index;
    }
    Ok(Spectrum {
        g,
        half_degree,
        requested: count,
        shortfall: count - found.len(),
        eigenvalues: found,
        scanned: (lower, lo),
        failed_points,
    })
}

/// One coupling of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub g: f64,
    pub spectrum: Spectrum,
}

/// Levels over a list of couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub half_degree: u32,
    pub levels: usize,
    pub rows: Vec<SweepRow>,
    pub policy: SolverPolicy,
}

impl SweepResult {
    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.spectrum.is_complete())
    }
}

/// Lowest `levels` energies for every coupling in `couplings`, rows sorted by `g`.
///
/// Rows are computed concurrently; the result does not depend on the
/// number of threads.
pub fn reproduce_table(half_degree: u32, couplings: &[f64], levels: usize, policy: &SolverPolicy) -> Result<SweepResult> {
    let mut couplings = couplings.to_vec();
    if couplings.iter().any(|g| !g.is_finite()) {
        return Err(Error::InvalidSpec("couplings must be finite".into()));
    }
    couplings.sort_by(f64::total_cmp);
    let rows = couplings
        .par_iter()
        .map(|&g| {
            lowest_eigenvalues(g, half_degree, levels, &EnergyWindow::default(), policy)
                .map(|spectrum| SweepRow { g, spectrum })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        half_degree,
        levels,
        rows,
        policy: *policy,
    })
}
