//! Follow the lowest levels through the transition from a double well to a
//! single well, showing where the tunnelling doublets split.
//!
//!     cargo run --release --example coupling_sweep [N]

use anharmonic_spectra::spectrum::{reproduce_table, SolverPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let couplings: Vec<f64> = (0..=12).map(|i| -24.0 + 2.0 * i as f64).collect();
    let sweep = reproduce_table(n, &couplings, 4, &SolverPolicy::default())?;

    println!("{:>6}  {:>13} {:>13} {:>13} {:>13}  {:>10}", "g", "E0", "E1", "E2", "E3", "E1 - E0");
    for row in &sweep.rows {
        let e = row.spectrum.energies();
        let cells: Vec<String> = e.iter().map(|x| format!("{x:>13.8}")).collect();
        let split = if e.len() > 1 { format!("{:>10.3e}", e[1] - e[0]) } else { String::new() };
        println!("{:>6}  {}  {split}", row.g, cells.join(" "));
    }
    Ok(())
}
