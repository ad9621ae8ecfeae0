//! Cross-check the series solver against Numerov shooting for one or more
//! half-degrees over the reference couplings.
//!
//!     cargo run --release --example numerov_oracle [N ...]

use anharmonic_spectra::numerov::{oracle_level, EvenPotential};
use anharmonic_spectra::spectrum::reference::{REFERENCE_COUPLINGS, REFERENCE_LEVELS};
use anharmonic_spectra::spectrum::{lowest_eigenvalues, EnergyWindow, SolverPolicy};
use rayon::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degrees: Vec<u32> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let degrees = if degrees.is_empty() { vec![4, 5, 6, 7] } else { degrees };
    let policy = SolverPolicy::default();
    let mut worst: f64 = 0.0;

    for n in degrees {
        println!("N = {n}");
        let rows = REFERENCE_COUPLINGS
            .par_iter()
            .map(|&g| -> anharmonic_spectra::Result<(f64, Vec<(f64, f64)>)> {
                let spectrum = lowest_eigenvalues(g, n, REFERENCE_LEVELS, &EnergyWindow::default(), &policy)?;
                let potential = EvenPotential::anharmonic(g, n)?;
                let pairs = spectrum
                    .eigenvalues
                    .iter()
                    .map(|level| {
                        let oracle = oracle_level(&potential, level.ordinal, level.parity)?;
                        Ok((level.energy, oracle.extrapolated))
                    })
                    .collect::<anharmonic_spectra::Result<Vec<_>>>()?;
                Ok((g, pairs))
            })
            .collect::<anharmonic_spectra::Result<Vec<_>>>()?;
        for (g, pairs) in rows {
            let line: Vec<String> = pairs
                .iter()
                .map(|(w, o)| {
                    worst = worst.max((w - o).abs());
                    format!("{w:>13.8} {:>8.1e}", w - o)
                })
                .collect();
            println!("{g:>6}  {}", line.join("  "));
        }
    }
    println!("largest |series - numerov| = {worst:.2e}");
    Ok(())
}
