//! Located eigenvalues at reference points, and the independent Numerov path.

use anharmonic_spectra::anharmonic::{OscillatorSpec, Parity, QuantizationPolicy};
use anharmonic_spectra::numerov::{
    numerov_integrate, oracle_eigenvalue, oracle_eigenvalue_extrapolated, oracle_level, EvenPotential, GridSpec,
};
use anharmonic_spectra::spectrum::{
    lowest_eigenvalues, refine_eigenvalue, scan_brackets, Bracket, EnergyWindow, QuantizationFunction, SolverPolicy,
};

fn function(g: f64, n: u32, parity: Parity) -> QuantizationFunction {
    QuantizationFunction::new(OscillatorSpec::new(g, n, parity).unwrap(), QuantizationPolicy::default())
}

#[test]
fn scan_finds_even_levels() {
    let f = function(0.0, 4, Parity::Even);
    let report = scan_brackets(|e| f.value(e), 0.0, 12.0, 0.25).unwrap();
    assert_eq!(report.brackets.len(), 2);
    assert!(report.brackets[0].contains(1.22582011));
    assert!(report.brackets[1].contains(10.24494698));
}

#[test]
fn refine_reference_levels() {
    for (g, n, parity, guess, expected) in [(-1.0, 6, Parity::Odd, 4.8, 4.84470202), (20.0, 7, Parity::Odd, 34.0, 34.07417453)] {
        let f = function(g, n, parity);
        let report = scan_brackets(|e| f.value(e), guess - 0.5, guess + 0.5, 0.05).unwrap();
        let bracket: &Bracket = report.brackets.iter().find(|b| b.contains(expected)).unwrap();
        let level = refine_eigenvalue(&f, bracket, 1e-10).unwrap();
        assert!((level.energy - expected).abs() < 1e-7, "{} vs {expected}", level.energy);
        assert!(level.bracket_width <= 1e-10);
    }
}

#[test]
fn lowest_levels() {
    let policy = SolverPolicy::default();
    let window = EnergyWindow::default();
    let s = lowest_eigenvalues(-20.0, 4, 4, &window, &policy).unwrap();
    let parities: Vec<Parity> = s.eigenvalues.iter().map(|e| e.parity).collect();
    assert_eq!(parities, [Parity::Even, Parity::Odd, Parity::Even, Parity::Odd]);
    assert!((s.eigenvalues[0].energy - s.eigenvalues[1].energy).abs() < 0.03);

    let s = lowest_eigenvalues(0.0, 5, 2, &window, &policy).unwrap();
    for (e, want) in s.energies().iter().zip([1.29884370, 5.09787653]) {
        assert!((e - want).abs() < 1e-6);
    }
    let s = lowest_eigenvalues(10.0, 6, 1, &window, &policy).unwrap();
    assert_eq!(s.eigenvalues[0].parity, Parity::Even);
    assert!((s.eigenvalues[0].energy - 3.22441873).abs() < 1e-6);
}

#[test]
fn shortfall_is_reported() {
    let window = EnergyWindow { e_min: Some(0.0), e_max: Some(6.0), step: None };
    let s = lowest_eigenvalues(0.0, 4, 4, &window, &SolverPolicy::default()).unwrap();
    assert_eq!(s.eigenvalues.len(), 2);
    assert_eq!(s.shortfall, 2);
    assert!(!s.is_complete());
}

#[test]
fn numerov_reference_levels() {
    let grid_level = |g: f64, n: u32, ordinal: usize, parity: Parity| {
        let potential = EvenPotential::anharmonic(g, n).unwrap();
        oracle_level(&potential, ordinal, parity).unwrap().extrapolated
    };
    assert!((grid_level(1.0, 4, 0, Parity::Even) - 1.49101990).abs() < 1e-6);
    assert!((grid_level(-10.0, 5, 0, Parity::Odd) - -1.83075483).abs() < 1e-6);
}

#[test]
fn numerov_mismatch_and_nodes() {
    let potential = EvenPotential::anharmonic(0.0, 4).unwrap();
    let grid = GridSpec::new(4.0, 8000).unwrap();
    let shot = numerov_integrate(&potential, 1.22582011, &grid, Parity::Even).unwrap();
    assert!(shot.log_derivative_mismatch.abs() < 1e-6, "{}", shot.log_derivative_mismatch);
    for ordinal in 0..4 {
        let e = oracle_eigenvalue(&potential, ordinal, Parity::Odd, &grid).unwrap();
        let shot = numerov_integrate(&potential, e - 1e-3, &grid, Parity::Odd).unwrap();
        assert_eq!(shot.node_count, ordinal);
    }
}

#[test]
fn richardson_is_consistent() {
    let potential = EvenPotential::anharmonic(-1.0, 5).unwrap();
    let grid = GridSpec::new(3.5, 2000).unwrap();
    let r = oracle_eigenvalue_extrapolated(&potential, 1, Parity::Even, &grid).unwrap();
    let finer = oracle_eigenvalue_extrapolated(&potential, 1, Parity::Even, &grid.halved()).unwrap();
    // O(h^4): halving h cuts the error sixteenfold
    let predicted = (r.fine - r.coarse).abs() / 15.0;
    assert!((finer.fine - r.fine).abs() <= 16.0 * predicted + 1e-12);
    assert!((finer.extrapolated - r.extrapolated).abs() <= 1e-8);
}
