//! Shared test helpers: a binary fixed-point number for extended-precision
//! oracles and reproducible random probes.

#![allow(dead_code)]

use anharmonic_spectra::anharmonic::{origin_series_coeffs, regular_series_coeffs, OscillatorSpec, Parity};
use num_bigint::BigInt;
use num_traits::{Float, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::ops::{Add, Mul, Neg, Sub};

/// Fractional bits of [`Fixed`]; about 2466 decimal digits.
pub const FRACTION_BITS: usize = 8192;

/// `value / 2^FRACTION_BITS` with an arbitrary-size integer numerator.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixed(BigInt);

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 500 {
        x *= 2f64.powi(500);
        e -= 500;
    }
    while e < -500 {
        x *= 2f64.powi(-500);
        e += 500;
    }
    x * 2f64.powi(e as i32)
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn one() -> Self {
        Fixed::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Fixed(BigInt::from(n) << FRACTION_BITS)
    }

    /// Exact conversion (values below `2^-FRACTION_BITS` truncate).
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Fixed::zero();
        }
        let (mantissa, exponent, sign) = Float::integer_decode(x);
        let m = BigInt::from(mantissa) * BigInt::from(sign);
        let shift = exponent as i64 + FRACTION_BITS as i64;
        Fixed(if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize })
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.0.bits() as i64;
        if bits == 0 {
            return 0.0;
        }
        let shift = (bits - 64).max(0);
        let top = (&self.0 >> shift as usize).to_f64().unwrap_or(f64::NAN);
        ldexp(top, shift - FRACTION_BITS as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Fixed(&self.0 * k)
    }

    pub fn div_int(&self, k: i64) -> Self {
        Fixed(&self.0 / k)
    }

    pub fn div(&self, other: &Fixed) -> Self {
        Fixed((&self.0 << FRACTION_BITS) / &other.0)
    }

    /// True when `|self| < 2^-bits |other|`.
    pub fn negligible_against(&self, other: &Fixed, bits: usize) -> bool {
        (self.0.abs() << bits) < other.0.abs()
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 + &rhs.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 - &rhs.0)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        Fixed((&self.0 * &rhs.0) >> FRACTION_BITS)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-&self.0)
    }
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Entry `i` of a zero-extended sequence.
fn at(v: &[Fixed], i: i64) -> Fixed {
    if i < 0 {
        Fixed::zero()
    } else {
        v[i as usize].clone()
    }
}

/// Dressed regular coefficients `b_0 .. b_{count-1}` in fixed point.
pub fn regular_coeffs_fixed(g: f64, n: u32, nu: u32, energy: f64, count: usize) -> Vec<Fixed> {
    let (e, g) = (Fixed::from_f64(energy), Fixed::from_f64(g));
    let (nn, nu) = (n as i64, nu as i64);
    let mut b: Vec<Fixed> = Vec::with_capacity(count);
    for i in 0..count as i64 {
        let value = match i {
            0 => Fixed::one(),
            1 => Fixed::zero(),
            _ => {
                let rhs = &(&(-&(&e * &at(&b, i - 2))) + &(&g * &at(&b, i - 4)))
                    + &at(&b, i - nn - 1).mul_int(2 * i - nn - 2 + 2 * nu);
                rhs.div_int((i + nu) * (i + nu - 1))
            }
        };
        b.push(value);
    }
    b
}

/// Asymptotic coefficients `h_0 .. h_{count-1}` in fixed point.
pub fn asymptotic_coeffs_fixed(g: f64, n: u32, energy: f64, count: usize) -> Vec<Fixed> {
    let (e, g) = (Fixed::from_f64(energy), Fixed::from_f64(g));
    let nn = n as i64;
    let mut h: Vec<Fixed> = Vec::with_capacity(count);
    for m in 0..count as i64 {
        let value = if m == 0 {
            Fixed::one()
        } else {
            // (m - N/2)(m - N/2 - 1) = (2m - N)(2m - N - 2)/4
            let first = at(&h, m - nn - 1).mul_int((2 * m - nn) * (2 * m - nn - 2)).div_int(4);
            let rhs = &(&first + &(&e * &at(&h, m - nn + 1))) - &(&g * &at(&h, m - nn + 3));
            rhs.div_int(-2 * m)
        };
        h.push(value);
    }
    h
}

/// `gamma_k` summed directly in fixed point until `quiet` consecutive terms
/// fall below `2^-130` of the partial sum; returns the value and the terms used.
pub fn gamma_fixed(g: f64, n: u32, nu: u32, energy: f64, k: usize, extra_terms: usize) -> (Fixed, usize) {
    let mut len = 512;
    loop {
        let b = regular_coeffs_fixed(g, n, nu, energy, len + k);
        let h = asymptotic_coeffs_fixed(g, n, energy, len);
        let mut sum = Fixed::zero();
        let mut quiet = 0;
        let mut stop = None;
        for m in 0..len {
            // weight = -2m - k - nu - N/2, doubled to stay integral
            let twice = -4 * m as i64 - 2 * k as i64 - 2 * nu as i64 - n as i64;
            let term = (&b[m + k] * &h[m]).mul_int(twice).div_int(2);
            sum = &sum + &term;
            if let Some(end) = stop {
                if m + 1 >= end {
                    return (sum, m + 1);
                }
                continue;
            }
            quiet = if term.is_zero() || term.negligible_against(&sum, 130) { quiet + 1 } else { 0 };
            if quiet >= 20 && m > 4 * (n as usize + 1) {
                stop = Some(m + 1 + extra_terms);
                if extra_terms == 0 {
                    return (sum, m + 1);
                }
            }
        }
        len *= 2;
        assert!(len < 1 << 16, "fixed-point gamma series did not settle");
    }
}

/// `sum_n a_n y^n` of the Morse series, `n(n + 2s) a_n = -c a_{n-1} + a_{n-2}/4`.
pub fn morse_sum_fixed(gamma_over_alpha: f64, s: f64, y: f64) -> Fixed {
    let (c, s2, y) = (Fixed::from_f64(gamma_over_alpha), Fixed::from_f64(2.0 * s), Fixed::from_f64(y));
    let quarter_y2 = (&y * &y).div_int(4);
    let (mut p1, mut p2) = (Fixed::one(), Fixed::zero());
    let mut sum = Fixed::one();
    let mut quiet = 0;
    for n in 1..100_000i64 {
        let denom = (&Fixed::from_int(n) + &s2).mul_int(n);
        let p = (&(-&(&(&y * &p1) * &c)) + &(&quarter_y2 * &p2)).div(&denom);
        sum = &sum + &p;
        p2 = p1;
        p1 = p;
        quiet = if p1.negligible_against(&sum, 300) { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return sum;
        }
    }
    panic!("fixed-point Morse series did not settle");
}

/// `exp(-y/2) 1F1(a; b; y)` from the series definitions, in fixed point.
pub fn dressed_hypergeometric_fixed(a: f64, b: f64, y: f64) -> Fixed {
    let (fa, fb, fy) = (Fixed::from_f64(a), Fixed::from_f64(b), Fixed::from_f64(y));
    let mut term = Fixed::one();
    let mut hyper = Fixed::one();
    let mut quiet = 0;
    for j in 0..100_000i64 {
        let num = &(&fa + &Fixed::from_int(j)) * &fy;
        let den = (&fb + &Fixed::from_int(j)).mul_int(j + 1);
        term = (&term * &num).div(&den);
        hyper = &hyper + &term;
        quiet = if term.negligible_against(&hyper, 300) { quiet + 1 } else { 0 };
        if quiet >= 3 {
            break;
        }
    }
    let half = Fixed::from_f64(-y / 2.0);
    let mut t = Fixed::one();
    let mut exp = Fixed::one();
    for j in 1..100_000i64 {
        t = (&t * &half).div_int(j);
        exp = &exp + &t;
        if t.negligible_against(&exp, 300) && j as f64 > y {
            break;
        }
    }
    &exp * &hyper
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random `(N, g, E)` with `N` in `4..=7`, `g` in `[-20, 20]`, `E` in `[V_min, 40]`.
pub fn random_probe(rng: &mut ChaCha8Rng) -> (u32, f64, f64) {
    let n = rng.gen_range(4..=7);
    let g: f64 = rng.gen_range(-20.0..=20.0);
    let v_min = anharmonic_spectra::anharmonic::potential_minimum(g, n);
    let e = rng.gen_range(v_min..=40.0);
    (n, g, e)
}

/// Largest relative gap between `b_n` and the Cauchy product of `a_n` with the
/// Taylor series of `exp(x^(N+1)/(N+1))`, over the first `count` coefficients.
pub fn dressing_gap(g: f64, n: u32, parity: Parity, energy: f64, count: usize) -> f64 {
    let spec = OscillatorSpec::new(g, n, parity).unwrap();
    let a = origin_series_coeffs(&spec, energy, count).unwrap().to_f64_vec();
    let b = regular_series_coeffs(&spec, energy, count).unwrap().to_f64_vec();
    let step = n as usize + 1;
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let mut rebuilt = Fixed::zero();
        let mut weight = Fixed::one();
        let mut j = 0;
        while j * step <= i {
            if j > 0 {
                weight = weight.div_int((j * step) as i64);
            }
            rebuilt = &rebuilt + &(&Fixed::from_f64(a[i - j * step]) * &weight);
            j += 1;
        }
        worst = worst.max(relative_gap(b[i], rebuilt.to_f64()));
    }
    worst
}
