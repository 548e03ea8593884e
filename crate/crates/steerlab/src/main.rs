//! Command-line front end: state classification reports, TMST
//! triangoloid emission, brute-force measurement scans, and property
//! audits over random physical states.
//!
//! Exit codes: 0 success, 2 invalid input, 3 unphysical state,
//! 4 unwritable output, 5 audit violations, 1 internal error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use steerlab::numfmt::{fmt9, sig9};
use steerlab::{build_report, parse_state_json, resolve_tolerance, write_triangoloid_csv};
use steerlab_core::{
    brute_force_min_lambda_with, classify_from_invariants, classify_sns, classify_wns,
    quadrature_vertex, random_local_symplectic, sample_physical_states, triangoloid_sample_with,
    CanonicalParams, GaussianState, MeasurementSpec, TmstSpec,
};

#[derive(Parser)]
#[command(name = "steerlab", version, about = "Nonclassical steering analysis for two-mode Gaussian states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a state: physicality, canonical form, invariants,
    /// steering lambdas and flags, as a JSON report on stdout.
    Analyze {
        /// State-file path, or "-" for stdin.
        input: String,
    },
    /// Evaluate a two-mode squeezed thermal state: universal
    /// steerability verdict, quadrature-vertex lambda, and optionally a
    /// triangoloid point cloud as CSV.
    Tmst {
        /// Mean thermal photons in mode A.
        na: f64,
        /// Mean thermal photons in mode B.
        nb: f64,
        /// Two-mode squeezing parameter.
        r: f64,
        /// Write the triangoloid sample to this CSV file.
        #[arg(long, value_name = "PATH")]
        triangoloid: Option<PathBuf>,
        /// Grid resolution per axis.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u16).range(2..=2000))]
        grid: u16,
        /// Lower bound of the measurement-purity grid.
        #[arg(long, default_value_t = 1e-3)]
        mu_min: f64,
        /// Lower bound of the measurement-squeezing grid.
        #[arg(long, default_value_t = 1e-3)]
        mu_s_min: f64,
    },
    /// Brute-force scan of the Gaussian measurement family for the
    /// least conditional eigenvalue; prints the scan result and its gap
    /// to the analytic value as JSON.
    Scan {
        /// State-file path, or "-" for stdin.
        input: String,
        /// Scan grid as "n_mu,n_mus,n_phi".
        #[arg(long, default_value = "5,40,8")]
        grid: String,
    },
    /// Sample random physical states, audit the steering hierarchy and
    /// the invariant-form criterion; exits nonzero on any violation.
    Audit {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
    },
}

enum Failure {
    Input(String),
    Unphysical,
    Output(String),
    Violations(usize),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Input(_) => 2,
            Failure::Unphysical => 3,
            Failure::Output(_) => 4,
            Failure::Violations(_) => 5,
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    );
}

/// Parse, gate on physicality (printing the physicality report and
/// failing with exit 3 if violated), and return the state.
fn load_physical_state(path: &str, tol: f64) -> Result<(GaussianState, serde_json::Value), Failure> {
    let text = read_input(path)?;
    let parsed = parse_state_json(&text).map_err(Failure::Input)?;
    let rep = parsed.state.check_physical_with_tol(tol);
    if !rep.is_physical() {
        print_json(&steerlab::report::PhysicalityBlock::from(&rep));
        return Err(Failure::Unphysical);
    }
    Ok((parsed.state, parsed.echo))
}

fn cmd_analyze(input: &str) -> Result<(), Failure> {
    let tol = resolve_tolerance().map_err(Failure::Input)?;
    let (state, echo) = load_physical_state(input, tol)?;
    let report = build_report(&state, &state.check_physical_with_tol(tol), echo, tol)
        .map_err(Failure::Internal)?;
    print_json(&report);
    Ok(())
}

fn cmd_tmst(
    na: f64,
    nb: f64,
    r: f64,
    triangoloid: Option<&PathBuf>,
    grid: usize,
    mu_min: f64,
    mu_s_min: f64,
) -> Result<(), Failure> {
    let spec = TmstSpec::new(na, nb, r).map_err(|e| Failure::Input(e.to_string()))?;
    let canon = spec.params().map_err(|e| Failure::Input(e.to_string()))?;
    let vertex = quadrature_vertex(&canon).map_err(|e| Failure::Internal(e.to_string()))?;
    let (vertex_lambda, _) = classify_wns(&canon);

    println!(
        "verdict: {}",
        if spec.is_steerable() {
            "steerable"
        } else {
            "not steerable"
        }
    );
    println!("cosh_2r: {}", fmt9((2.0 * r).cosh()));
    println!("bound: {}", fmt9(spec.steerability_bound()));
    println!("vertex_lambda: {}", fmt9(vertex_lambda));
    println!("vertex_depth: {}", fmt9(vertex.depth));

    if let Some(path) = triangoloid {
        let points = triangoloid_sample_with(&spec, grid, mu_min, mu_s_min)
            .map_err(|e| Failure::Input(e.to_string()))?;
        let mut file = fs::File::create(path)
            .map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))?;
        write_triangoloid_csv(&mut file, &points)
            .map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))?;
        println!("triangoloid_csv: {} ({} rows)", path.display(), points.len());
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanGridOut {
    n_mu: usize,
    n_mus: usize,
    n_phi: usize,
}

#[derive(Serialize)]
struct ScanMeasurementOut {
    mu: f64,
    mu_s: f64,
    phi: f64,
}

#[derive(Serialize)]
struct ScanOut {
    grid: ScanGridOut,
    best_lambda: f64,
    best_measurement: ScanMeasurementOut,
    monotone_in_mus: bool,
    analytic_lambda_wns: f64,
    gap: f64,
}

fn cmd_scan(input: &str, grid: &str) -> Result<(), Failure> {
    let dims: Vec<usize> = grid
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("invalid --grid {grid:?}, expected n_mu,n_mus,n_phi")))?;
    let [n_mu, n_mus, n_phi]: [usize; 3] = dims
        .try_into()
        .map_err(|_| Failure::Input(format!("invalid --grid {grid:?}, expected three integers")))?;

    let tol = resolve_tolerance().map_err(Failure::Input)?;
    let (state, _) = load_physical_state(input, tol)?;

    let result = brute_force_min_lambda_with(&state, n_mu, n_mus, n_phi, 1e-4)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let canon = CanonicalParams::from_invariants(&state.invariants())
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let (analytic, _) = classify_wns(&canon);

    let MeasurementSpec::GeneralGaussian { mu, mu_s, phi } = result.best_spec else {
        return Err(Failure::Internal("scan returned a non-Gaussian spec".into()));
    };
    print_json(&ScanOut {
        grid: ScanGridOut {
            n_mu,
            n_mus,
            n_phi,
        },
        best_lambda: sig9(result.best_lambda),
        best_measurement: ScanMeasurementOut {
            mu: sig9(mu),
            mu_s: sig9(mu_s),
            phi: sig9(phi),
        },
        monotone_in_mus: result.monotone_in_mus,
        analytic_lambda_wns: sig9(analytic),
        gap: sig9(result.best_lambda - analytic),
    });
    Ok(())
}

#[derive(Serialize)]
struct OffenderOut {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    reason: &'static str,
}

#[derive(Serialize)]
struct AuditOut {
    seed: u64,
    count: usize,
    hierarchy_violations: usize,
    invariant_form_mismatches: usize,
    transformed_invariant_form_mismatches: usize,
    total_violations: usize,
    offenders: Vec<OffenderOut>,
}

fn canonical_entries(state: &GaussianState) -> (f64, f64, f64, f64) {
    (
        state.cm[(0, 0)],
        state.cm[(2, 2)],
        state.cm[(0, 2)],
        state.cm[(1, 3)],
    )
}

fn cmd_audit(seed: u64, count: usize) -> Result<(), Failure> {
    let tol = resolve_tolerance().map_err(Failure::Input)?;
    let states = sample_physical_states(seed, count);

    let mut offenders = Vec::new();
    let mut hierarchy_violations = 0usize;
    let mut invariant_form_mismatches = 0usize;
    let mut transformed_invariant_form_mismatches = 0usize;

    for (idx, state) in states.iter().enumerate() {
        if steerlab_core::audit_hierarchy_with_tol(std::slice::from_ref(state), tol) > 0 {
            hierarchy_violations += 1;
            if offenders.len() < 5 {
                let (a, b, c1, c2) = canonical_entries(state);
                offenders.push(OffenderOut {
                    a: sig9(a),
                    b: sig9(b),
                    c1: sig9(c1),
                    c2: sig9(c2),
                    reason: "steering hierarchy violated",
                });
            }
        }

        let mismatch = |st: &GaussianState| -> bool {
            let inv = st.invariants();
            let (Ok((lw_i, ls_i)), Ok(canon)) = (
                classify_from_invariants(&inv),
                CanonicalParams::from_invariants(&inv),
            ) else {
                return true;
            };
            (lw_i - classify_wns(&canon).0).abs() > 1e-9
                || (ls_i - classify_sns(&canon).0).abs() > 1e-9
        };

        if mismatch(state) {
            invariant_form_mismatches += 1;
        }
        let (s_a, s_b) = random_local_symplectic(seed.wrapping_add(idx as u64));
        match state.apply_symplectic(&s_a, &s_b) {
            Ok(moved) if !mismatch(&moved) => {}
            _ => transformed_invariant_form_mismatches += 1,
        }
    }

    let total =
        hierarchy_violations + invariant_form_mismatches + transformed_invariant_form_mismatches;
    print_json(&AuditOut {
        seed,
        count,
        hierarchy_violations,
        invariant_form_mismatches,
        transformed_invariant_form_mismatches,
        total_violations: total,
        offenders,
    });
    println!("{total} violations");
    if total > 0 {
        return Err(Failure::Violations(total));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Analyze { input } => cmd_analyze(input),
        Cmd::Tmst {
            na,
            nb,
            r,
            triangoloid,
            grid,
            mu_min,
            mu_s_min,
        } => cmd_tmst(
            *na,
            *nb,
            *r,
            triangoloid.as_ref(),
            *grid as usize,
            *mu_min,
            *mu_s_min,
        ),
        Cmd::Scan { input, grid } => cmd_scan(input, grid),
        Cmd::Audit { seed, count } => cmd_audit(*seed, *count as usize),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(msg) | Failure::Output(msg) | Failure::Internal(msg) => {
                    eprintln!("error: {msg}");
                }
                Failure::Unphysical => {
                    eprintln!("error: state violates the uncertainty relation");
                }
                Failure::Violations(n) => {
                    eprintln!("error: {n} audit violations");
                }
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
