use super::output::{csv_writer, format_number, to_value, write_json};
use super::{
    Cli, Command, Format, Model, SolveArgs, SweepArgs, TableArgs, ValidateArgs, EXIT_ERROR, EXIT_PARTIAL,
    EXIT_SUCCESS, EXIT_USAGE,
};
use crate::numerov::{automatic_grid, oracle_eigenvalue_extrapolated, EvenPotential, DEFAULT_STEPS};
use crate::solvable::{
    locate_zeros, morse_reference_levels, morse_zeros, mpt_exact_levels, mpt_wronskian, pt_exact_levels,
    pt_wronskian, ModifiedPTSpec, MorseSpec, PoschlTellerSpec,
};
use crate::spectrum::reference::REFERENCE_COUPLINGS;
use crate::spectrum::{lowest_eigenvalues, lowest_eigenvalues_of, Eigenvalue, EnergyWindow, SolverPolicy, Spectrum};
use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Value};
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] crate::Error),
    #[error("output: {0}")]
    Io(#[from] io::Error),
    #[error("output: {0}")]
    Csv(#[from] csv::Error),
}

type CliResult = std::result::Result<i32, CliError>;

pub(super) fn execute(cli: Cli, threads: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_ERROR;
        }
    };
    let output = match &cli.command {
        Command::Solve(a) => a.output.output.clone(),
        Command::Table(a) => a.output.output.clone(),
        Command::Validate(a) => a.output.output.clone(),
        Command::Sweep(a) => a.output.output.clone(),
    };
    let mut file;
    let sink: &mut dyn Write = match output {
        Some(path) => match std::fs::File::create(&path) {
            Ok(f) => {
                file = io::BufWriter::new(f);
                &mut file
            }
            Err(e) => {
                let _ = writeln!(err, "error: cannot create {}: {e}", path.display());
                return EXIT_ERROR;
            }
        },
        None => out,
    };
    let result = match cli.command {
        Command::Solve(a) => solve(&a, &pool, sink, err),
        Command::Table(a) => table(&a, &pool, sink, err),
        Command::Validate(a) => validate(&a, &pool, sink),
        Command::Sweep(a) => sweep(&a, &pool, sink, err),
    };
    let flushed = sink.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Ok(_), Err(e)) => {
            let _ = writeln!(err, "error: output: {e}");
            EXIT_ERROR
        }
        (Err(CliError::Usage(msg)), _) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        (Err(e), _) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn check_policy(policy: &SolverPolicy) -> Result<(), CliError> {
    let ok = policy.step > 0.0
        && policy.energy_tol > 0.0
        && policy.quantization.tail.rel_tol > 0.0
        && policy.quantization.tail.max_terms > 0;
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage("step, tolerances and term cap must be positive".into()))
    }
}

fn eigenvalue_json(e: &Eigenvalue) -> Value {
    json!({
        "index": e.index,
        "parity": e.parity.as_str(),
        "energy": e.energy,
        "residual": e.residual,
        "n_used": e.n_used,
        "terms_used": e.terms_used,
    })
}

fn row_json(g: f64, spectrum: &Spectrum) -> Value {
    json!({
        "g": g,
        "eigenvalues": spectrum.eigenvalues.iter().map(eigenvalue_json).collect::<Vec<_>>(),
        "shortfall": spectrum.shortfall,
    })
}

fn partial_note(err: &mut dyn Write, spectrum: &Spectrum) {
    if !spectrum.is_complete() {
        let _ = writeln!(
            err,
            "warning: N = {}, g = {}: found {} of {} levels in [{}, {}]",
            spectrum.half_degree,
            spectrum.g,
            spectrum.eigenvalues.len(),
            spectrum.requested,
            spectrum.scanned.0,
            spectrum.scanned.1
        );
    }
}

fn solve(args: &SolveArgs, pool: &ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let policy = args.solver.policy();
    check_policy(&policy)?;
    if args.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    if let (Some(lo), Some(hi)) = (args.emin, args.emax) {
        if lo >= hi {
            return Err(CliError::Usage("--emin must be below --emax".into()));
        }
    }
    let window = EnergyWindow {
        e_min: args.emin,
        e_max: args.emax,
        step: args.solver.step,
    };
    let parities = args.parity.parities();
    let spectrum = pool.install(|| lowest_eigenvalues_of(args.g, args.half_degree, &parities, args.count, &window, &policy))?;

    match args.output.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({
                "model": "anharmonic",
                "params": {
                    "N": args.half_degree,
                    "g": args.g,
                    "parity": format!("{:?}", args.parity).to_lowercase(),
                    "count": args.count,
                    "emin": args.emin,
                    "emax": args.emax,
                },
                "policies": to_value(&policy),
                "eigenvalues": spectrum.eigenvalues.iter().map(eigenvalue_json).collect::<Vec<_>>(),
                "shortfall": spectrum.shortfall,
            });
            write_json(out, doc)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["index", "parity", "energy", "residual", "n_used", "terms_used"])?;
            for e in &spectrum.eigenvalues {
                let terms: Vec<String> = e.terms_used.iter().map(|t| t.to_string()).collect();
                w.write_record([
                    e.index.to_string(),
                    e.parity.to_string(),
                    format_number(e.energy),
                    format_number(e.residual),
                    e.n_used.to_string(),
                    terms.join(";"),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "V(x) = {} x^2 + x^{}", args.g, 2 * args.half_degree)?;
            writeln!(out, "{:>3}  {:<6} {:>16}  {:>10}  {:>3}  terms", "#", "parity", "energy", "residual", "n")?;
            for e in &spectrum.eigenvalues {
                let terms: Vec<String> = e.terms_used.iter().map(|t| t.to_string()).collect();
                writeln!(
                    out,
                    "{:>3}  {:<6} {:>16.8}  {:>10.2e}  {:>3}  {}",
                    e.index,
                    e.parity,
                    e.energy,
                    e.residual,
                    e.n_used,
                    terms.join(",")
                )?;
            }
        }
    }
    partial_note(err, &spectrum);
    Ok(if spectrum.is_complete() { EXIT_SUCCESS } else { EXIT_PARTIAL })
}

fn level_header(with_n: bool, levels: usize) -> Vec<String> {
    let mut header = Vec::new();
    if with_n {
        header.push("N".to_string());
    }
    header.push("g".to_string());
    header.extend((0..levels).map(|j| format!("E{j}")));
    header
}

fn level_record(n: Option<u32>, g: f64, spectrum: &Spectrum, levels: usize) -> Vec<String> {
    let mut record = Vec::new();
    if let Some(n) = n {
        record.push(n.to_string());
    }
    record.push(format_number(g));
    record.extend((0..levels).map(|j| spectrum.eigenvalues.get(j).map(|e| format_number(e.energy)).unwrap_or_default()));
    record
}

fn text_row(g: f64, spectrum: &Spectrum, levels: usize) -> String {
    let mut line = format!("{g:>8}");
    for j in 0..levels {
        match spectrum.eigenvalues.get(j) {
            Some(e) => line.push_str(&format!("  {:>14.8}", e.energy)),
            None => line.push_str(&format!("  {:>14}", "-")),
        }
    }
    line
}

fn table(args: &TableArgs, pool: &ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let policy = args.solver.policy();
    check_policy(&policy)?;
    if args.levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let mut couplings = if args.g.is_empty() { REFERENCE_COUPLINGS.to_vec() } else { args.g.clone() };
    if couplings.iter().any(|g| !g.is_finite()) {
        return Err(CliError::Usage("couplings must be finite".into()));
    }
    couplings.sort_by(f64::total_cmp);

    let mut tables = Vec::new();
    for &n in &args.half_degrees {
        let rows: Vec<Spectrum> = pool.install(|| {
            couplings
                .par_iter()
                .map(|&g| lowest_eigenvalues(g, n, args.levels, &EnergyWindow::default(), &policy))
                .collect::<crate::Result<Vec<_>>>()
        })?;
        tables.push((n, rows));
    }
    let complete = tables.iter().all(|(_, rows)| rows.iter().all(Spectrum::is_complete));
    let with_n = args.half_degrees.len() > 1;

    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(level_header(with_n, args.levels))?;
            for (n, rows) in &tables {
                for s in rows {
                    w.write_record(level_record(with_n.then_some(*n), s.g, s, args.levels))?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = json!({
                "model": "anharmonic",
                "params": { "N": args.half_degrees, "g": couplings, "levels": args.levels },
                "policies": to_value(&policy),
                "tables": tables.iter().map(|(n, rows)| json!({
                    "N": n,
                    "rows": rows.iter().map(|s| row_json(s.g, s)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            write_json(out, doc)?;
        }
        Format::Text => {
            for (n, rows) in &tables {
                writeln!(out, "N = {n}")?;
                let header: Vec<String> = (0..args.levels).map(|j| format!("{:>14}", format!("E{j}"))).collect();
                writeln!(out, "{:>8}  {}", "g", header.join("  "))?;
                for s in rows {
                    writeln!(out, "{}", text_row(s.g, s, args.levels))?;
                }
            }
        }
    }
    for (_, rows) in &tables {
        rows.iter().for_each(|s| partial_note(err, s));
    }
    Ok(if complete { EXIT_SUCCESS } else { EXIT_PARTIAL })
}

fn sweep(args: &SweepArgs, pool: &ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let policy = args.solver.policy();
    check_policy(&policy)?;
    let (from, to, step) = (args.g_from, args.g_to, args.g_step);
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(CliError::Usage("--g-from, --g-to and a positive --g-step are required".into()));
    }
    if from > to {
        return Err(CliError::Usage(format!("empty range: --g-from {from} exceeds --g-to {to}")));
    }
    if args.levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let couplings: Vec<f64> = (0..count).map(|i| from + i as f64 * step).collect();
    let format = args.output.format.unwrap_or(Format::Csv);
    let batch = pool.current_num_threads().max(1);
    let mut complete = true;
    let mut json_rows = Vec::new();

    match format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(level_header(false, args.levels))?;
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "N = {}", args.half_degree)?;
            let header: Vec<String> = (0..args.levels).map(|j| format!("{:>14}", format!("E{j}"))).collect();
            writeln!(out, "{:>8}  {}", "g", header.join("  "))?;
        }
        Format::Json => {}
    }
    for chunk in couplings.chunks(batch) {
        let rows: Vec<Spectrum> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&g| lowest_eigenvalues(g, args.half_degree, args.levels, &EnergyWindow::default(), &policy))
                .collect::<crate::Result<Vec<_>>>()
        })?;
        for s in &rows {
            complete &= s.is_complete();
            partial_note(err, s);
        }
        match format {
            Format::Csv => {
                let mut w = csv_writer(out);
                for s in &rows {
                    w.write_record(level_record(None, s.g, s, args.levels))?;
                }
                w.flush()?;
            }
            Format::Text => {
                for s in &rows {
                    writeln!(out, "{}", text_row(s.g, s, args.levels))?;
                }
            }
            Format::Json => json_rows.extend(rows.iter().map(|s| row_json(s.g, s))),
        }
        out.flush()?;
    }
    if format == Format::Json {
        let doc = json!({
            "model": "anharmonic",
            "params": {
                "N": args.half_degree,
                "g_from": from,
                "g_to": to,
                "g_step": step,
                "levels": args.levels,
            },
            "policies": to_value(&policy),
            "rows": json_rows,
        });
        write_json(out, doc)?;
    }
    Ok(if complete { EXIT_SUCCESS } else { EXIT_PARTIAL })
}

/// One compared level; `None` marks a level missing on one side.
struct Comparison {
    label: String,
    exact: Option<f64>,
    located: Option<f64>,
}

impl Comparison {
    fn gap(&self) -> Option<f64> {
        Some((self.exact? - self.located?).abs())
    }
}

fn pair_up(label: &str, exact: &[f64], located: &[f64]) -> Vec<Comparison> {
    (0..exact.len().max(located.len()))
        .map(|i| Comparison {
            label: label.to_string(),
            exact: exact.get(i).copied(),
            located: located.get(i).copied(),
        })
        .collect()
}

fn need(value: Option<f64>, flag: &str, model: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --model {model}")))
}

fn validate(args: &ValidateArgs, pool: &ThreadPool, out: &mut dyn Write) -> CliResult {
    let (model, params, tolerance, rows, notes) = match args.model {
        Model::PoschlTeller => {
            let kappa = need(args.kappa, "kappa", "poschl-teller")?;
            let lambda = need(args.lambda, "lambda", "poschl-teller")?;
            let spec = PoschlTellerSpec::new(kappa, lambda).map_err(|e| CliError::Usage(e.to_string()))?;
            let count = args.count.unwrap_or(3).max(1);
            let exact = pt_exact_levels(&spec, count);
            let hi = (kappa + lambda + 2.0 * count as f64 - 1.0).powi(2);
            let zeros = pool.install(|| locate_zeros(|k2| pt_wronskian(&spec, k2).map(|w| w.value), 0.25, hi, 0.25, 1e-12))?;
            (
                "poschl-teller",
                json!({ "kappa": kappa, "lambda": lambda, "count": count }),
                args.tol.unwrap_or(1e-8),
                pair_up("k^2/alpha^2", &exact, &zeros),
                Vec::new(),
            )
        }
        Model::ModifiedPt => {
            let lambda = need(args.lambda, "lambda", "modified-pt")?;
            let mut rows = Vec::new();
            for parity in args.parity.parities() {
                let spec = ModifiedPTSpec::new(lambda, parity).map_err(|e| CliError::Usage(e.to_string()))?;
                let exact = mpt_exact_levels(&spec);
                let zeros = pool.install(|| {
                    locate_zeros(|k| mpt_wronskian(&spec, k).map(|w| w.value), 0.005, lambda, 0.01, 1e-12)
                })?;
                rows.extend(pair_up(&format!("kappa/alpha ({parity})"), &exact, &zeros));
            }
            (
                "modified-pt",
                json!({ "lambda": lambda, "parity": format!("{:?}", args.parity).to_lowercase() }),
                args.tol.unwrap_or(1e-8),
                rows,
                Vec::new(),
            )
        }
        Model::Morse => {
            let alpha = need(args.alpha, "alpha", "morse")?;
            let gamma = need(args.gamma, "gamma", "morse")?;
            let spec = MorseSpec::new(alpha, gamma).map_err(|e| CliError::Usage(e.to_string()))?;
            let zeros = pool.install(|| morse_zeros(&spec, 0.01, 1e-12))?;
            let located: Vec<f64> = zeros.iter().map(|z| z.beta_over_alpha).collect();
            let worst = zeros.iter().map(|z| z.cancellation).fold(0.0, f64::max);
            (
                "morse",
                json!({ "alpha": alpha, "gamma_over_alpha": gamma, "y0": spec.y0() }),
                args.tol.unwrap_or(1e-3),
                pair_up("beta/alpha", &morse_reference_levels(&spec), &located),
                vec![("y0", spec.y0()), ("max_cancellation", worst)],
            )
        }
        Model::Oracle => {
            let n = args
                .half_degree
                .ok_or_else(|| CliError::Usage("--N is required for --model oracle".into()))?;
            let g = need(args.g, "g", "oracle")?;
            let count = args.count.unwrap_or(4).max(1);
            let steps = args.steps.unwrap_or(DEFAULT_STEPS);
            let policy = SolverPolicy::default();
            let spectrum = pool.install(|| lowest_eigenvalues(g, n, count, &EnergyWindow::default(), &policy))?;
            let potential = EvenPotential::anharmonic(g, n)?;
            let oracle: Vec<f64> = pool.install(|| {
                spectrum
                    .eigenvalues
                    .par_iter()
                    .map(|e| {
                        let grid = automatic_grid(&potential, e.ordinal, e.parity, steps)?;
                        oracle_eigenvalue_extrapolated(&potential, e.ordinal, e.parity, &grid).map(|r| r.extrapolated)
                    })
                    .collect::<crate::Result<Vec<_>>>()
            })?;
            let rows = spectrum
                .eigenvalues
                .iter()
                .zip(&oracle)
                .map(|(e, o)| Comparison {
                    label: format!("E{} ({})", e.index, e.parity),
                    exact: Some(*o),
                    located: Some(e.energy),
                })
                .chain((spectrum.eigenvalues.len()..count).map(|i| Comparison {
                    label: format!("E{i}"),
                    exact: None,
                    located: None,
                }))
                .collect();
            ("oracle", json!({ "N": n, "g": g, "count": count, "steps": steps }), args.tol.unwrap_or(1e-6), rows, Vec::new())
        }
    };

    let max_gap = rows.iter().filter_map(Comparison::gap).fold(0.0, f64::max);
    let passed = !rows.is_empty() && rows.iter().all(|r| r.gap().is_some_and(|g| g <= tolerance));

    match args.output.format.unwrap_or(Format::Text) {
        Format::Text => {
            writeln!(out, "model: {model}")?;
            for (name, value) in &notes {
                writeln!(out, "{name}: {value:.6e}")?;
            }
            writeln!(out, "{:<22} {:>18} {:>18} {:>10}", "level", "reference", "located", "gap")?;
            let cell = |v: Option<f64>| v.map(|x| format!("{x:.12}")).unwrap_or_else(|| "-".into());
            for r in &rows {
                let gap = r.gap().map(|g| format!("{g:.2e}")).unwrap_or_else(|| "missing".into());
                writeln!(out, "{:<22} {:>18} {:>18} {:>10}", r.label, cell(r.exact), cell(r.located), gap)?;
            }
            writeln!(
                out,
                "max gap {max_gap:.2e} (tolerance {tolerance:.1e}): {}",
                if passed { "ok" } else { "FAILED" }
            )?;
        }
        Format::Json => {
            let mut extra = serde_json::Map::new();
            for (name, value) in &notes {
                extra.insert(name.to_string(), json!(value));
            }
            let doc = json!({
                "model": model,
                "params": params,
                "policies": { "tolerance": tolerance },
                "levels": rows.iter().enumerate().map(|(i, r)| json!({
                    "index": i,
                    "label": r.label,
                    "reference": r.exact,
                    "located": r.located,
                    "gap": r.gap(),
                })).collect::<Vec<_>>(),
                "diagnostics": extra,
                "max_gap": max_gap,
                "passed": passed,
            });
            write_json(out, doc)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["level", "reference", "located", "gap"])?;
            for r in &rows {
                w.write_record([
                    r.label.clone(),
                    r.exact.map(format_number).unwrap_or_default(),
                    r.located.map(format_number).unwrap_or_default(),
                    r.gap().map(format_number).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(if passed { EXIT_SUCCESS } else { EXIT_ERROR })
}
