//! The same Wronskian machinery on potentials with closed-form spectra:
//! Pöschl-Teller, modified Pöschl-Teller and Morse.
//!
//!     cargo run --release --example solvable_models

use anharmonic_spectra::anharmonic::Parity;
use anharmonic_spectra::solvable::{
    locate_zeros, morse_reference_levels, morse_zeros, mpt_exact_levels, mpt_wronskian, pt_exact_levels,
    pt_wronskian, ModifiedPTSpec, MorseSpec, PoschlTellerSpec,
};

fn report(name: &str, exact: &[f64], located: &[f64]) {
    println!("{name}");
    for (i, (e, z)) in exact.iter().zip(located).enumerate() {
        println!("  n = {i}  exact {e:>12.8}  located {z:>14.10}  gap {:.1e}", (e - z).abs());
    }
    if exact.len() != located.len() {
        println!("  count mismatch: {} exact, {} located", exact.len(), located.len());
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (kappa, lambda) in [(2.0, 3.0), (1.5, 1.5), (2.2, 3.8)] {
        let spec = PoschlTellerSpec::new(kappa, lambda)?;
        let exact = pt_exact_levels(&spec, 3);
        let hi = (kappa + lambda + 5.0).powi(2);
        let zeros = locate_zeros(|k2| pt_wronskian(&spec, k2).map(|w| w.value), 0.25, hi, 0.25, 1e-12)?;
        report(&format!("Poschl-Teller kappa = {kappa}, lambda = {lambda}: k^2/alpha^2"), &exact, &zeros);
    }

    for lambda in [3.5, 2.25, 5.0] {
        for parity in Parity::BOTH {
            let spec = ModifiedPTSpec::new(lambda, parity)?;
            let zeros = locate_zeros(|k| mpt_wronskian(&spec, k).map(|w| w.value), 0.005, lambda, 0.01, 1e-12)?;
            report(&format!("modified Poschl-Teller lambda = {lambda}, {parity}: kappa/alpha"), &mpt_exact_levels(&spec), &zeros);
        }
    }

    let spec = MorseSpec::new(1.2, 5.3)?;
    let zeros = morse_zeros(&spec, 0.01, 1e-12)?;
    let located: Vec<f64> = zeros.iter().map(|z| z.beta_over_alpha).collect();
    report(&format!("Morse alpha = 1.2, gamma/alpha = 5.3 (y0 = {:.2}): beta/alpha", spec.y0()), &morse_reference_levels(&spec), &located);
    for z in &zeros {
        println!("  cancellation at {:.6}: {:.1e}", z.beta_over_alpha, z.cancellation);
    }
    Ok(())
}
