//! Shooting solver for `-u'' + V(x) u = E u` with an even polynomial `V`.
//!
//! Fixed-step Numerov integration, outward from the origin with parity
//! initial data and inward from `x_max` with a decaying seed. States are
//! selected by node count and pinned down by the sign of the log-derivative
//! mismatch at the outer classical turning point. Shares no code with the
//! series machinery, so agreement between the two is evidence.

use crate::anharmonic::Parity;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `V(x) = sum_j c_j x^(2j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenPotential {
    coefficients: Vec<f64>,
}

impl EvenPotential {
    /// Coefficients of `1, x^2, x^4, ...`; the last nonzero one must be positive.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        let mut coefficients = coefficients;
        while coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        let confining = coefficients.len() >= 2 && coefficients.last().is_some_and(|&c| c > 0.0);
        if !confining || coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("potential must be a confining even polynomial".into()));
        }
        Ok(EvenPotential { coefficients })
    }

    /// `g x^2 + x^(2N)`.
    pub fn anharmonic(g: f64, half_degree: u32) -> Result<Self> {
        if half_degree < 2 {
            return Err(Error::InvalidSpec(format!("half-degree must be at least 2, got {half_degree}")));
        }
        let mut c = vec![0.0; half_degree as usize + 1];
        c[1] = g;
        c[half_degree as usize] = 1.0;
        Self::new(c)
    }

    /// `x^2`, levels `2n + 1`.
    pub fn harmonic() -> Self {
        EvenPotential {
            coefficients: vec![0.0, 1.0],
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn value(&self, x: f64) -> f64 {
        let x2 = x * x;
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x2 + c)
    }

    /// Largest `x >= 0` with `V(x) <= energy`, or the location of the minimum
    /// if the energy lies below it.
    pub fn outer_turning_point(&self, energy: f64) -> f64 {
        let mut hi = 1.0;
        while self.value(hi) <= energy {
            hi *= 2.0;
        }
        // V grows beyond its last crossing; walk inward to find a point below E
        let samples = 4096;
        let mut lo = None;
        for i in (0..samples).rev() {
            let x = hi * i as f64 / samples as f64;
            if self.value(x) <= energy {
                lo = Some(x);
                break;
            }
        }
        let Some(mut lo) = lo else {
            return self.minimum_location(hi);
        };
        let mut hi = lo + hi / samples as f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.value(mid) <= energy {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn minimum_location(&self, x_hi: f64) -> f64 {
        let samples = 4096;
        (0..=samples)
            .map(|i| x_hi * i as f64 / samples as f64)
            .min_by(|a, b| self.value(*a).total_cmp(&self.value(*b)))
            .unwrap_or(0.0)
    }

    /// Smallest value of `V` on `x >= 0` (sampled, then polished).
    pub fn minimum(&self) -> f64 {
        let mut hi = 1.0;
        while self.value(hi) <= self.value(0.0) {
            hi *= 2.0;
        }
        let x0 = self.minimum_location(hi);
        let step = hi / 4096.0;
        let (mut a, mut b) = ((x0 - step).max(0.0), x0 + step);
        for _ in 0..100 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if self.value(m1) < self.value(m2) {
                b = m2;
            } else {
                a = m1;
            }
        }
        self.value(0.5 * (a + b)).min(self.value(0.0))
    }
}

/// Uniform grid on `[0, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_max: f64,
    pub steps: usize,
}

/// Fewest grid steps accepted.
pub const MIN_STEPS: usize = 1000;
/// `int sqrt(V - E) dx` beyond the turning point covered by automatic grids.
pub const DECAY_INTEGRAL: f64 = 36.0;
/// Default step count of automatic grids.
pub const DEFAULT_STEPS: usize = 4000;

impl GridSpec {
    pub fn new(x_max: f64, steps: usize) -> Result<Self> {
        if !(x_max > 0.0) || !x_max.is_finite() || steps < MIN_STEPS {
            return Err(Error::InvalidSpec(format!(
                "grid needs x_max > 0 and at least {MIN_STEPS} steps (got {x_max}, {steps})"
            )));
        }
        Ok(GridSpec { x_max, steps })
    }

    /// Grid reaching far enough into the forbidden region that a state at
    /// `energy` (or below) has decayed by `exp(-DECAY_INTEGRAL)` at `x_max`.
    pub fn for_energy(potential: &EvenPotential, energy: f64, steps: usize) -> Result<Self> {
        let xt = potential.outer_turning_point(energy);
        let dx = 1e-4 * xt.max(0.1);
        let mut x = xt;
        let mut integral = 0.0;
        let kappa = |x: f64| (potential.value(x) - energy).max(0.0).sqrt();
        while integral < DECAY_INTEGRAL {
            integral += 0.5 * dx * (kappa(x) + kappa(x + dx));
            x += dx;
        }
        Self::new(x.max(1.25 * xt), steps)
    }

    pub fn h(&self) -> f64 {
        self.x_max / self.steps as f64
    }

    pub fn halved(&self) -> Self {
        GridSpec {
            x_max: self.x_max,
            steps: 2 * self.steps,
        }
    }
}

/// Outcome of one shooting pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingResult {
    pub energy: f64,
    /// Sign changes of the outward solution on `(0, x_max]`.
    pub node_count: usize,
    /// Outward minus inward log-derivative at the matching point.
    pub log_derivative_mismatch: f64,
    pub matching_point: f64,
}

const RENORMALIZE: f64 = 1e150;

struct Outward {
    nodes: usize,
    /// `u_{m-1}, u_m, u_{m+1}`, captured in one step so they share a scale.
    window: [f64; 3],
}

fn outward(potential: &EvenPotential, energy: f64, grid: &GridSpec, parity: Parity, m: usize) -> Outward {
    let h = grid.h();
    let c = h * h / 12.0;
    let f = |i: usize| potential.value(i as f64 * h) - energy;
    let (mut prev, mut cur) = match parity {
        Parity::Even => (1.0, (1.0 + 5.0 * c * f(0)) / (1.0 - c * f(1))),
        Parity::Odd => (0.0, h),
    };
    let mut nodes = 0;
    if cur == 0.0 || (prev * cur < 0.0) {
        nodes += 1;
    }
    let mut window = [0.0; 3];
    let (mut f_prev, mut f_cur) = (f(0), f(1));
    for i in 1..grid.steps {
        if i == m {
            window[0] = prev;
            window[1] = cur;
        }
        let f_next = f(i + 1);
        let next = (2.0 * (1.0 + 5.0 * c * f_cur) * cur - (1.0 - c * f_prev) * prev) / (1.0 - c * f_next);
        if next == 0.0 || next * cur < 0.0 {
            nodes += 1;
        }
        if i == m {
            window[2] = next;
        }
        prev = cur;
        cur = next;
        f_prev = f_cur;
        f_cur = f_next;
        if cur.abs() > RENORMALIZE {
            prev /= RENORMALIZE;
            cur /= RENORMALIZE;
        }
    }
    Outward { nodes, window }
}

/// Inward solution `u_{m-1}, u_m, u_{m+1}` from a decaying seed at `x_max`.
fn inward(potential: &EvenPotential, energy: f64, grid: &GridSpec, m: usize) -> [f64; 3] {
    let h = grid.h();
    let c = h * h / 12.0;
    let n = grid.steps;
    let f = |i: usize| potential.value(i as f64 * h) - energy;
    let local = (f(n) + f(n - 1)).max(0.0) * 0.5;
    let mut next = 1.0; // u_{i+1}
    let mut cur = (h * local.sqrt()).exp(); // u_i
    let (mut f_next, mut f_cur) = (f(n), f(n - 1));
    let mut i = n - 1;
    let mut window = [0.0; 3];
    while i > m - 1 {
        let f_prev = f(i - 1);
        let prev = (2.0 * (1.0 + 5.0 * c * f_cur) * cur - (1.0 - c * f_next) * next) / (1.0 - c * f_prev);
        if i == m {
            window = [prev, cur, next];
        }
        next = cur;
        cur = prev;
        f_next = f_cur;
        f_cur = f_prev;
        i -= 1;
        if cur.abs() > RENORMALIZE {
            next /= RENORMALIZE;
            cur /= RENORMALIZE;
        }
    }
    window
}

fn log_derivative(w: [f64; 3], h: f64) -> f64 {
    (w[2] - w[0]) / (2.0 * h * w[1])
}

/// Shoots outward and inward at `energy` and compares log-derivatives at the
/// outer turning point.
pub fn numerov_integrate(potential: &EvenPotential, energy: f64, grid: &GridSpec, parity: Parity) -> Result<ShootingResult> {
    let h = grid.h();
    let xt = potential.outer_turning_point(energy);
    if xt > 0.8 * grid.x_max {
        return Err(Error::GridTooSmall {
            turning_point: xt,
            x_max: grid.x_max,
        });
    }
    let m = ((xt / h).round() as usize).clamp(2, grid.steps - 2);
    let out = outward(potential, energy, grid, parity, m);
    let inn = inward(potential, energy, grid, m);
    Ok(ShootingResult {
        energy,
        node_count: out.nodes,
        log_derivative_mismatch: log_derivative(out.window, h) - log_derivative(inn, h),
        matching_point: m as f64 * h,
    })
}

fn node_count(potential: &EvenPotential, energy: f64, grid: &GridSpec, parity: Parity) -> usize {
    outward(potential, energy, grid, parity, usize::MAX).nodes
}

/// Energy of the `ordinal`-th state of the given parity on a fixed grid.
///
/// The search window runs from the potential minimum up to the energy whose
/// turning point sits at `0.8 x_max`.
pub fn oracle_eigenvalue(potential: &EvenPotential, ordinal: usize, parity: Parity, grid: &GridSpec) -> Result<f64> {
    let mut lo = potential.minimum();
    let ceiling = potential.value(0.8 * grid.x_max);
    if node_count(potential, ceiling, grid, parity) <= ordinal {
        return Err(Error::Window { ordinal });
    }
    let mut hi = lo + 1.0;
    while hi < ceiling && node_count(potential, hi, grid, parity) <= ordinal {
        lo = hi;
        hi = (lo + 2.0 * (hi - potential.minimum())).min(ceiling);
    }
    // count changes from <= ordinal to > ordinal across [lo, hi]
    while hi - lo > 1e-3 * (1.0 + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if node_count(potential, mid, grid, parity) <= ordinal {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mismatch = |e: f64| numerov_integrate(potential, e, grid, parity).map(|r| r.log_derivative_mismatch);
    let (m_lo, m_hi) = (mismatch(lo)?, mismatch(hi)?);
    let use_mismatch = m_lo.is_finite() && m_hi.is_finite() && (m_lo < 0.0) != (m_hi < 0.0);
    let lo_negative = m_lo < 0.0;
    for _ in 0..200 {
        if hi - lo <= 1e-13 * (1.0 + hi.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let go_up = if use_mismatch {
            (mismatch(mid)? < 0.0) == lo_negative
        } else {
            node_count(potential, mid, grid, parity) <= ordinal
        };
        if go_up {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Two grid resolutions and their `h^4` extrapolation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RichardsonEstimate {
    pub coarse: f64,
    pub fine: f64,
    pub extrapolated: f64,
}

/// `(16 E_{h/2} - E_h) / 15`.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (16.0 * fine - coarse) / 15.0
}

/// The `ordinal`-th level of a parity on `grid` and on the halved grid, extrapolated.
pub fn oracle_eigenvalue_extrapolated(
    potential: &EvenPotential,
    ordinal: usize,
    parity: Parity,
    grid: &GridSpec,
) -> Result<RichardsonEstimate> {
    let coarse = oracle_eigenvalue(potential, ordinal, parity, grid)?;
    let fine = oracle_eigenvalue(potential, ordinal, parity, &grid.halved())?;
    Ok(RichardsonEstimate {
        coarse,
        fine,
        extrapolated: richardson(coarse, fine),
    })
}

/// Grid suitable for the `ordinal`-th state of a parity: raises an energy
/// ceiling until the node count passes `ordinal`, then sizes the grid for it.
pub fn automatic_grid(potential: &EvenPotential, ordinal: usize, parity: Parity, steps: usize) -> Result<GridSpec> {
    let floor = potential.minimum();
    let mut span = 2.0;
    for _ in 0..40 {
        let ceiling = floor + span;
        let grid = GridSpec::for_energy(potential, ceiling, steps)?;
        if node_count(potential, ceiling, &grid, parity) > ordinal {
            return GridSpec::for_energy(potential, ceiling + 0.25 * span, steps);
        }
        span *= 2.0;
    }
    Err(Error::Window { ordinal })
}

/// Oracle level with an automatic grid of [`DEFAULT_STEPS`] steps, Richardson-extrapolated.
pub fn oracle_level(potential: &EvenPotential, ordinal: usize, parity: Parity) -> Result<RichardsonEstimate> {
    let grid = automatic_grid(potential, ordinal, parity, DEFAULT_STEPS)?;
    oracle_eigenvalue_extrapolated(potential, ordinal, parity, &grid)
}
