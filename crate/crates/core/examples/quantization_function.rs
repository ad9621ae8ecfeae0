//! Tabulate the quantization function F(E) of one parity and mark its sign
//! changes, the eigenvalues.
//!
//!     cargo run --release --example quantization_function [N] [g] [even|odd]

use anharmonic_spectra::anharmonic::{OscillatorSpec, Parity};
use anharmonic_spectra::spectrum::{QuantizationFunction, SolverPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let g: f64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(0.0);
    let parity = match args.get(2).map(String::as_str) {
        Some("odd") => Parity::Odd,
        _ => Parity::Even,
    };

    let f = QuantizationFunction::new(OscillatorSpec::new(g, n, parity)?, SolverPolicy::default().quantization);
    println!("N = {n}, g = {g}, {parity} parity, n_start = {}", f.n_start());
    println!("{:>8}  {:>14}  {:>4}  {:>6}  terms", "E", "F(E)", "n", "tail");
    let mut previous: Option<f64> = None;
    for i in 0..=60 {
        let energy = -2.0 + 0.5 * i as f64;
        let eval = f.evaluate(energy)?;
        let value = f.normalized(&eval)?;
        let crossed = previous.is_some_and(|p| p.signum() != value.signum());
        println!(
            "{energy:>8.2}  {value:>14.6e}  {:>4}  {:>6.0e}  {:?}{}",
            eval.n_index,
            eval.tail_estimate,
            eval.terms_used,
            if crossed { "  <- sign change" } else { "" }
        );
        previous = Some(value);
    }
    Ok(())
}
