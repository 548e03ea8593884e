//! IO companion for the steering toolkit: the state-file JSON schema,
//! classification reports, and triangoloid CSV emission used by the
//! `steerlab` command-line tool.

pub mod numfmt;
pub mod report;
pub mod statefile;
pub mod triangcsv;

pub use report::{build_report, Report, TOOL_VERSION};
pub use statefile::{parse_state_json, ParsedState};
pub use triangcsv::{write_triangoloid_csv, CSV_HEADER};

/// Resolve the PSD tolerance: `STEERLAB_TOL` overrides the default.
pub fn resolve_tolerance() -> Result<f64, String> {
    match std::env::var("STEERLAB_TOL") {
        Err(_) => Ok(steerlab_core::DEFAULT_TOL),
        Ok(text) => {
            let tol: f64 = text
                .parse()
                .map_err(|_| format!("STEERLAB_TOL is not a number: {text:?}"))?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(format!("STEERLAB_TOL must be finite and positive: {text}"));
            }
            Ok(tol)
        }
    }
}
