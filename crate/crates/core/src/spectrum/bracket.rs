use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// An interval on which a function changes sign.
///
/// Zero counts as positive, so a grid point that hits a root exactly closes
/// the bracket that ends on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

pub(crate) fn is_negative(v: f64) -> bool {
    v < 0.0
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let finite = [lo, hi, f_lo, f_hi].iter().all(|v| v.is_finite());
        if !finite || lo >= hi || is_negative(f_lo) == is_negative(f_hi) {
            return Err(Error::InvalidSpec(format!(
                "not a bracket: [{lo}, {hi}] with f = ({f_lo}, {f_hi})"
            )));
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Result of a grid scan: sign-change brackets plus the grid points that
/// could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub brackets: Vec<Bracket>,
    pub failed_points: Vec<f64>,
    pub evaluated: usize,
}

/// Grid `e_min, e_min + step, ...`, closed with `e_max`.
pub fn scan_grid(e_min: f64, e_max: f64, step: f64) -> Vec<f64> {
    let count = ((e_max - e_min) / step).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|i| e_min + i as f64 * step).collect();
    if let Some(&last) = grid.last() {
        if e_max - last > 1e-9 * step {
            grid.push(e_max);
        }
    }
    grid
}

/// Evaluates `f` on a uniform grid over `[e_min, e_max]` and returns one
/// bracket per sign change between consecutive successful evaluations.
///
/// Points are evaluated in parallel; the result is identical to a
/// sequential scan. More than half the points failing is an error.
pub fn scan_brackets<F, E>(f: F, e_min: f64, e_max: f64, step: f64) -> Result<ScanReport>
where
    F: Fn(f64) -> std::result::Result<f64, E> + Sync,
{
    if !(e_min < e_max) || !(step > 0.0) || !e_min.is_finite() || !e_max.is_finite() {
        return Err(Error::InvalidSpec(format!(
            "scan needs e_min < e_max and step > 0 (got [{e_min}, {e_max}], step {step})"
        )));
    }
    let grid = scan_grid(e_min, e_max, step);
    let values: Vec<Option<f64>> = grid
        .par_iter()
        .map(|&e| f(e).ok().filter(|v| v.is_finite()))
        .collect();

    let failed_points: Vec<f64> = grid
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_none())
        .map(|(&e, _)| e)
        .collect();
    if 2 * failed_points.len() > grid.len() {
        return Err(Error::ScanUnreliable {
            failed: failed_points.len(),
            total: grid.len(),
        });
    }

    let mut brackets = Vec::new();
    let mut previous: Option<(f64, f64)> = None;
    for (&e, v) in grid.iter().zip(&values) {
        let Some(v) = *v else { continue };
        if let Some((pe, pv)) = previous {
            if is_negative(pv) != is_negative(v) {
                brackets.push(Bracket {
                    lo: pe,
                    hi: e,
                    f_lo: pv,
                    f_hi: v,
                });
            }
        }
        previous = Some((e, v));
    }
    Ok(ScanReport {
        brackets,
        failed_points,
        evaluated: grid.len(),
    })
}
