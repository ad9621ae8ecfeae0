use super::bracket::{is_negative, Bracket};
use crate::error::{Error, Result};

/// Hard limit on function evaluations per refinement.
pub const MAX_EVALUATIONS: usize = 200;

/// A refined sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub f_x: f64,
    /// Width of the final bracket around `x`.
    pub bracket_width: f64,
    pub evaluations: usize,
}

/// Brent-Dekker refinement of a sign change: inverse quadratic and secant
/// steps, guarded by bisection, always inside the current bracket.
///
/// Terminates when the bracket is narrower than `tol` (floored at a few ulps
/// of the root). A failed evaluation switches to bisection on the part of the
/// bracket that can still be evaluated.
pub fn refine_root<F, E>(f: F, bracket: &Bracket, tol: f64) -> Result<Root>
where
    F: Fn(f64) -> std::result::Result<f64, E>,
    E: std::fmt::Display,
{
    let fail = |reason: String| Error::Refine {
        lo: bracket.lo,
        hi: bracket.hi,
        reason,
    };
    let (mut a, mut fa) = (bracket.lo, bracket.f_lo);
    let (mut b, mut fb) = (bracket.hi, bracket.f_hi);
    if fa == 0.0 {
        return Ok(Root { x: a, f_x: 0.0, bracket_width: 0.0, evaluations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, f_x: 0.0, bracket_width: 0.0, evaluations: 0 });
    }
    // c is the previous iterate; the bracket is always [b, c] or [c, b]
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    let mut evaluations = 0usize;

    loop {
        if is_negative(fb) == is_negative(fc) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(Root {
                x: b,
                f_x: fb,
                bracket_width: (c - b).abs(),
                evaluations,
            });
        }
        if evaluations >= MAX_EVALUATIONS {
            return Err(fail(format!("no convergence in {MAX_EVALUATIONS} evaluations")));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        let step = if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        let candidate = b + step;
        evaluations += 1;
        match f(candidate) {
            Ok(v) if v.is_finite() => {
                b = candidate;
                fb = v;
            }
            outcome => {
                // bisect instead, probing inward until something evaluates
                let reason = match outcome {
                    Err(err) => err.to_string(),
                    Ok(v) => format!("non-finite value {v}"),
                };
                let mut probe = None;
                for frac in [0.5, 0.25, 0.75, 0.125, 0.875] {
                    let x = b + frac * (c - b);
                    evaluations += 1;
                    if let Ok(v) = f(x) {
                        if v.is_finite() {
                            probe = Some((x, v));
                            break;
                        }
                    }
                }
                let Some((x, v)) = probe else {
                    return Err(fail(format!("evaluation failed near {candidate}: {reason}")));
                };
                b = x;
                fb = v;
                d = xm;
                e = d;
            }
        }
    }
}
