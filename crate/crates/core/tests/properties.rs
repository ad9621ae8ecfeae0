//! Property-based checks of the recurrences, the laws that tie different free
//! indices together, and the root-finding plumbing.

mod common;

use anharmonic_spectra::anharmonic::{
    asymptotic_coeffs, quantization_indices, regular_series_coeffs, OscillatorSpec, Parity, QuantizationPolicy,
    TailPolicy, WronskianEvaluator,
};
use anharmonic_spectra::gamma::gamma;
use anharmonic_spectra::spectrum::{refine_root, scan_brackets, Bracket};
use common::relative_gap;
use proptest::prelude::*;

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

/// `|lhs - sum(terms)| <= 8 eps max(|lhs|, |terms|)`.
fn row_ok(lhs: f64, terms: &[f64]) -> bool {
    let scale = terms.iter().fold(lhs.abs(), |m, t| m.max(t.abs()));
    (lhs - terms.iter().sum::<f64>()).abs() <= 8.0 * f64::EPSILON * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regular_recurrence_residual(n in 4u32..=8, g in -20.0f64..20.0, e in -30.0f64..60.0, parity in parity()) {
        let spec = OscillatorSpec::new(g, n, parity).unwrap();
        let b = regular_series_coeffs(&spec, e, 150).unwrap().to_f64_vec();
        let nu = parity.nu() as f64;
        let at = |i: i64| if i < 0 { 0.0 } else { b[i as usize] };
        for i in 2..150i64 {
            let x = i as f64;
            let lhs = (x + nu) * (x + nu - 1.0) * b[i as usize];
            let terms = [-e * at(i - 2), g * at(i - 4), 2.0 * (x - n as f64 / 2.0 - 1.0 + nu) * at(i - n as i64 - 1)];
            prop_assert!(row_ok(lhs, &terms), "row {i}");
        }
    }

    #[test]
    fn asymptotic_recurrence_residual(n in 4u32..=8, g in -20.0f64..20.0, e in -30.0f64..60.0) {
        let spec = OscillatorSpec::new(g, n, Parity::Even).unwrap();
        let h = asymptotic_coeffs(&spec, e, 150).unwrap().to_f64_vec();
        let at = |i: i64| if i < 0 { 0.0 } else { h[i as usize] };
        let half = n as f64 / 2.0;
        let nn = n as i64;
        for m in 1..150i64 {
            let x = m as f64;
            let lhs = -2.0 * x * h[m as usize];
            let terms = [(x - half) * (x - half - 1.0) * at(m - nn - 1), e * at(m - nn + 1), -g * at(m - nn + 3)];
            prop_assert!(row_ok(lhs, &terms), "row {m}");
        }
    }

    #[test]
    fn gamma_arguments_stay_positive(n in 4u32..=12, nu in 0u32..=1, free in 0usize..40) {
        let idx = quantization_indices(n, nu, free);
        prop_assert_eq!(idx.len(), n as usize + 1);
        for (l, (delta, k)) in idx.into_iter().enumerate() {
            prop_assert!(free as f64 + 1.0 + delta > 0.0);
            prop_assert_eq!(k, free * (n as usize + 1) + 1 + l);
        }
    }

    #[test]
    fn gamma_function_recurrence(x in 0.5f64..59.0) {
        // x + 1 may round; step back from it so both arguments are exact
        let up = x + 1.0;
        let x = up - 1.0;
        prop_assert!(relative_gap(gamma(up), x * gamma(x)) <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn free_index_laws(n in 4u32..=7, g in -20.0f64..20.0, frac in 0.0f64..1.0, parity in parity()) {
        let v_min = anharmonic_spectra::anharmonic::potential_minimum(g, n);
        let e = v_min + frac * (40.0 - v_min);
        let spec = OscillatorSpec::new(g, n, parity).unwrap();
        let policy = QuantizationPolicy::default();
        let mut evaluator = WronskianEvaluator::new(spec, e, TailPolicy::default()).unwrap();
        let at_n = evaluator.quantization(policy.start_index(n), &policy.escalation);
        prop_assume!(at_n.is_ok());
        let at_n = at_n.unwrap();
        let next = evaluator.quantization_at(at_n.n_index + 1).unwrap();
        let law = 2.0 / (n as f64 + 1.0);
        let ratio = next.scaled.relative_to(at_n.scaled.exponent) / at_n.scaled.mantissa;
        prop_assert!(relative_gap(ratio, law) <= 1e-8, "F ratio {ratio} vs {law}");
        for (l, (delta, _)) in quantization_indices(n, parity.nu(), at_n.n_index).into_iter().enumerate() {
            let (a, b) = (at_n.gamma_values[l], next.gamma_values[l]);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let ratio = b.relative_to(a.exponent) / a.mantissa;
            let expected = law / (at_n.n_index as f64 + 1.0 + delta);
            prop_assert!(relative_gap(ratio, expected) <= 1e-8, "gamma ratio at L = {l}");
        }
    }

    #[test]
    fn refinement_stays_in_bracket(root in -5.0f64..5.0, a in 0.1f64..3.0, c in 0.0f64..2.0, width in 0.01f64..2.0) {
        let f = |x: f64| -> Result<f64, String> { Ok(a * (x - root) + c * (x - root).powi(3)) };
        let (lo, hi) = (root - width * 0.3, root + width);
        let bracket = Bracket::new(lo, hi, f(lo).unwrap(), f(hi).unwrap()).unwrap();
        let found = refine_root(f, &bracket, 1e-12).unwrap();
        prop_assert!(found.x >= lo && found.x <= hi);
        prop_assert!((found.x - root).abs() <= 1e-10);
    }

    #[test]
    fn halving_the_grid_keeps_roots(shift in 0.0f64..1.0, step in 0.05f64..0.4) {
        let f = |x: f64| -> Result<f64, String> { Ok((3.0 * (x + shift)).sin()) };
        let coarse = scan_brackets(f, 0.0, 10.0, step).unwrap();
        let fine = scan_brackets(f, 0.0, 10.0, step / 2.0).unwrap();
        for b in &coarse.brackets {
            prop_assert!(fine.brackets.iter().any(|c| c.lo >= b.lo && c.hi <= b.hi));
        }
    }
}
