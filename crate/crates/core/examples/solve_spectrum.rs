//! Lowest levels of g x^2 + x^(2N) with solver diagnostics.
//!
//!     cargo run --release --example solve_spectrum [N] [g] [count]

use anharmonic_spectra::spectrum::{lowest_eigenvalues, EnergyWindow, SolverPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let g: f64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(-10.0);
    let count: usize = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(6);

    let spectrum = lowest_eigenvalues(g, n, count, &EnergyWindow::default(), &SolverPolicy::default())?;
    println!("V(x) = {g} x^2 + x^{}", 2 * n);
    println!("scanned [{:.2}, {:.2}], {} grid points skipped", spectrum.scanned.0, spectrum.scanned.1, spectrum.failed_points);
    for e in &spectrum.eigenvalues {
        println!(
            "E{:<2} {:<4}  {:>16.10}  |F|/scale {:.1e}  n = {:<3} bracket {:.1e} after {} evaluations",
            e.index, e.parity, e.energy, e.relative_residual, e.n_used, e.bracket_width, e.evaluations
        );
    }
    if !spectrum.is_complete() {
        println!("{} levels missing", spectrum.shortfall);
    }
    Ok(())
}
