//! The `spectra` command line, driven in-process.

use anharmonic_spectra::cli::{run, EXIT_ERROR, EXIT_PARTIAL, EXIT_SUCCESS, EXIT_USAGE};
use serde_json::Value;

fn spectra(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spectra").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn solve_matches_reference_row() {
    let (code, out, _) = spectra(&["solve", "--N", "4", "--g", "1", "--count", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_SUCCESS);
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["index", "parity", "energy", "residual", "n_used", "terms_used"]);
    let energies: Vec<f64> = rows[1..].iter().map(|r| r[2].parse().unwrap()).collect();
    for (e, want) in energies.iter().zip([1.49101990, 5.36877806, 10.99373734, 18.19110002]) {
        assert!((e - want).abs() < 1e-6, "{e} vs {want}");
    }
}

#[test]
fn solve_json_document() {
    let (code, out, _) = spectra(&["solve", "--N", "4", "--g", "0", "--parity", "even", "--count", "1", "--format", "json"]);
    assert_eq!(code, EXIT_SUCCESS);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["model"], "anharmonic");
    assert_eq!(doc["params"]["N"], 4);
    let level = &doc["eigenvalues"][0];
    assert_eq!(level["parity"], "even");
    assert!((level["energy"].as_f64().unwrap() - 1.22582011).abs() < 1e-8);
    for key in ["index", "residual", "n_used", "terms_used"] {
        assert!(level.get(key).is_some(), "missing {key}");
    }
    assert!(doc["policies"].is_object());
}

#[test]
fn json_round_trips_byte_for_byte() {
    let (_, out, _) = spectra(&["solve", "--N", "5", "--g=-1", "--count", "3", "--format", "json"]);
    let parsed: Value = serde_json::from_str(&out).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(out, again);
}

#[test]
fn default_table_has_nine_rows_and_five_columns() {
    let (code, out, _) = spectra(&["table", "--N", "5"]);
    assert_eq!(code, EXIT_SUCCESS);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0], ["g", "E0", "E1", "E2", "E3"]);
    assert!(rows.iter().all(|r| r.len() == 5));
    assert!(!out.contains('\r'));
    let couplings: Vec<f64> = rows[1..].iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(couplings, [-20.0, -10.0, -1.0, -0.1, 0.0, 0.1, 1.0, 10.0, 20.0]);
}

#[test]
fn negative_coupling_spellings() {
    let expected = ["-20.0", "-7.974891489", "-7.590267061", "3.059161116", "10.19269195"];
    for args in [
        &["table", "--N", "7", "--g", "-20"][..],
        &["table", "--N", "7", "--g=-20"][..],
        &["table", "--N", "7", "--g", "--", "-20"][..],
    ] {
        let (code, out, err) = spectra(args);
        assert_eq!(code, EXIT_SUCCESS, "{args:?}: {err}");
        let rows = csv_rows(&out);
        assert_eq!(rows.len(), 2);
        for (cell, want) in rows[1].iter().zip(expected) {
            let (a, b): (f64, f64) = (cell.parse().unwrap(), want.parse().unwrap());
            assert!((a - b).abs() < 1e-6, "{cell} vs {want}");
        }
    }
}

#[test]
fn single_level_table() {
    let (code, out, _) = spectra(&["table", "--N", "4", "--g", "0", "--levels", "1"]);
    assert_eq!(code, EXIT_SUCCESS);
    assert_eq!(csv_rows(&out), [vec!["g", "E0"], vec!["0.0", "1.225820114"]]);
}

#[test]
fn usage_errors() {
    assert_eq!(spectra(&["solve", "--N", "3", "--g", "1"]).0, EXIT_USAGE);
    assert_eq!(spectra(&["solve", "--N", "4"]).0, EXIT_USAGE);
    assert_eq!(spectra(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(spectra(&["solve", "--N", "4", "--g", "1", "--count", "0"]).0, EXIT_USAGE);
    assert_eq!(spectra(&["validate", "--model", "poschl-teller", "--kappa", "2"]).0, EXIT_USAGE);
    assert_eq!(spectra(&["validate", "--model", "harmonic"]).0, EXIT_USAGE);
    let (code, _, err) = spectra(&["sweep", "--N", "4", "--g-from", "1", "--g-to", "-1", "--g-step", "0.5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("empty range"));
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = spectra(&["--help"]);
    assert_eq!(code, EXIT_SUCCESS);
    for command in ["solve", "table", "validate", "sweep"] {
        assert!(out.contains(command));
    }
}

#[test]
fn partial_result_exit_code() {
    let (code, out, err) = spectra(&["solve", "--N", "4", "--g", "0", "--count", "4", "--emin", "0", "--emax", "6"]);
    assert_eq!(code, EXIT_PARTIAL);
    assert!(err.contains("found 2 of 4"));
    assert!(out.contains("1.22582011"));
}

#[test]
fn sweep_rows_increase() {
    let (code, out, _) = spectra(&["sweep", "--N", "4", "--g-from=-1", "--g-to", "1", "--g-step", "0.5", "--levels", "1"]);
    assert_eq!(code, EXIT_SUCCESS);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 6);
    let e0: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(e0.windows(2).all(|w| w[0] < w[1]));
    assert!((e0[0] - 0.93527862).abs() < 1e-6);
    assert!((e0[4] - 1.49101990).abs() < 1e-6);
}

#[test]
fn sweep_json_echoes_parameters() {
    let (code, out, _) = spectra(&["sweep", "--N", "4", "--g-from", "0", "--g-to", "1", "--g-step", "1", "--levels", "2", "--format", "json"]);
    assert_eq!(code, EXIT_SUCCESS);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["params"]["g_step"], 1.0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn output_independent_of_thread_count() {
    // SPECTRA_THREADS is read per run; both runs here share the process
    // environment, so compare against an explicit single-threaded run.
    let args = ["table", "--N", "6", "--g=-1,0,1"];
    let (_, many, _) = spectra(&args);
    std::env::set_var("SPECTRA_THREADS", "1");
    let (code, one, _) = spectra(&args);
    std::env::remove_var("SPECTRA_THREADS");
    assert_eq!(code, EXIT_SUCCESS);
    assert_eq!(many, one);
}

#[test]
fn validate_models() {
    let (code, out, _) = spectra(&["validate", "--model", "poschl-teller", "--kappa", "2", "--lambda", "3", "--count", "3"]);
    assert_eq!(code, EXIT_SUCCESS);
    assert!(out.contains("25.0000") && out.contains("81.0000"));

    let (code, out, _) = spectra(&["validate", "--model", "modified-pt", "--lambda", "3.5", "--format", "json"]);
    assert_eq!(code, EXIT_SUCCESS);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let located: Vec<f64> = doc["levels"].as_array().unwrap().iter().map(|l| l["located"].as_f64().unwrap()).collect();
    assert_eq!(located.len(), 3);
    assert_eq!(doc["passed"], true);

    let (code, _, _) = spectra(&["validate", "--model", "oracle", "--N", "5", "--g", "10", "--count", "4"]);
    assert_eq!(code, EXIT_SUCCESS);
}

#[test]
fn failed_validation_exits_with_error() {
    let (code, out, _) = spectra(&["validate", "--model", "morse", "--alpha", "0.3", "--gamma", "5.5"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(out.contains("FAILED"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("spectra-cli-{}.csv", std::process::id()));
    let (code, out, _) = spectra(&["table", "--N", "4", "--g", "0", "--levels", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_SUCCESS);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, "g,E0,E1\n0.0,1.225820114,4.755874414\n");
}
