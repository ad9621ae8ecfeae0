//! Recompute the four reference tables and print the deviation of every entry.
//!
//!     cargo run --release --example reproduce_table [N ...]

use anharmonic_spectra::spectrum::reference::{reference_table, reference_tolerance, REFERENCE_COUPLINGS, REFERENCE_LEVELS};
use anharmonic_spectra::spectrum::{reproduce_table, SolverPolicy};
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degrees: Vec<u32> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let degrees = if degrees.is_empty() { vec![4, 5, 6, 7] } else { degrees };
    let policy = SolverPolicy::default();

    for n in degrees {
        let start = Instant::now();
        let sweep = reproduce_table(n, &REFERENCE_COUPLINGS, REFERENCE_LEVELS, &policy)?;
        println!("N = {n}  ({:.2?})", start.elapsed());
        println!("{:>6}  {:>14} {:>14} {:>14} {:>14}   max|dev|", "g", "E0", "E1", "E2", "E3");
        for (r, row) in sweep.rows.iter().enumerate() {
            let mut line = format!("{:>6}", row.g);
            let mut worst: f64 = 0.0;
            let mut flagged = false;
            for (j, level) in row.spectrum.eigenvalues.iter().enumerate() {
                line.push_str(&format!("  {:>13.8}", level.energy));
                if let Some(table) = reference_table(n) {
                    let dev = (level.energy - table[r][j]).abs();
                    worst = worst.max(dev);
                    flagged |= dev > reference_tolerance(n, row.g, j);
                }
            }
            if reference_table(n).is_some() {
                line.push_str(&format!("   {worst:.1e}{}", if flagged { "  *" } else { "" }));
            }
            println!("{line}");
        }
        println!();
    }
    Ok(())
}
