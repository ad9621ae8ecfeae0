//! Error-free transformations: compensated summation and a double-double
//! number used where a series loses more digits than `f64` can spare.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a * b = p + e` exactly (needs a fused multiply-add).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Multiplies `x` by `2^exp` without intermediate overflow of the scale factor.
pub fn scale2(x: f64, exp: i64) -> f64 {
    if x == 0.0 || exp == 0 {
        return x;
    }
    let mut x = x;
    let mut e = exp;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Neumaier's variant of Kahan summation.
///
/// Also tracks the largest magnitude the running sum reached, which is the
/// cancellation diagnostic reported by the series evaluators.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    max_partial: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let (s, e) = two_sum(self.sum, value);
        self.sum = s;
        self.compensation += e;
        let partial = (self.sum + self.compensation).abs();
        if partial > self.max_partial {
            self.max_partial = partial;
        }
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Largest `|partial sum|` seen so far.
    pub fn max_partial(&self) -> f64 {
        self.max_partial
    }

    /// `max |partial| / |final|`; 1 for an all-zero sum, infinite if the sum cancelled to zero.
    pub fn cancellation_ratio(&self) -> f64 {
        let v = self.value().abs();
        if self.max_partial == 0.0 {
            1.0
        } else if v == 0.0 {
            f64::INFINITY
        } else {
            self.max_partial / v
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// Sums an iterator with compensation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`; about 32 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TwoFold {
    pub hi: f64,
    pub lo: f64,
}

impl TwoFold {
    pub const ZERO: TwoFold = TwoFold { hi: 0.0, lo: 0.0 };
    pub const ONE: TwoFold = TwoFold { hi: 1.0, lo: 0.0 };

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        TwoFold { hi: h, lo: l }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

impl From<f64> for TwoFold {
    fn from(x: f64) -> Self {
        TwoFold { hi: x, lo: 0.0 }
    }
}

impl Neg for TwoFold {
    type Output = TwoFold;
    fn neg(self) -> TwoFold {
        TwoFold {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for TwoFold {
    type Output = TwoFold;
    #[inline]
    fn add(self, rhs: TwoFold) -> TwoFold {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = {
            let e = e + t;
            two_sum(s, e)
        };
        TwoFold::renorm(s, e + f)
    }
}

impl AddAssign for TwoFold {
    fn add_assign(&mut self, rhs: TwoFold) {
        *self = *self + rhs;
    }
}

impl Sub for TwoFold {
    type Output = TwoFold;
    fn sub(self, rhs: TwoFold) -> TwoFold {
        self + (-rhs)
    }
}

impl Mul for TwoFold {
    type Output = TwoFold;
    #[inline]
    fn mul(self, rhs: TwoFold) -> TwoFold {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        TwoFold::renorm(p, e)
    }
}

impl Mul<f64> for TwoFold {
    type Output = TwoFold;
    #[inline]
    fn mul(self, rhs: f64) -> TwoFold {
        let (p, e) = two_prod(self.hi, rhs);
        TwoFold::renorm(p, e + self.lo * rhs)
    }
}

impl Div for TwoFold {
    type Output = TwoFold;
    fn div(self, rhs: TwoFold) -> TwoFold {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        TwoFold::renorm(q1, q2) + TwoFold::from(q3)
    }
}

impl Div<f64> for TwoFold {
    type Output = TwoFold;
    fn div(self, rhs: f64) -> TwoFold {
        self / TwoFold::from(rhs)
    }
}
