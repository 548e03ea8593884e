//! The state-file JSON schema: one of three input forms with exactly one
//! of the keys `cm`, `canonical`, `tmst` present.
//!
//! ```json
//! {"cm": [<16 numbers, row-major>], "mean": [<4 numbers, optional>]}
//! {"cm": [[..4], [..4], [..4], [..4]]}
//! {"canonical": {"a": .., "b": .., "c1": .., "c2": ..}}
//! {"tmst": {"na": .., "nb": .., "r": ..}}
//! ```

use steerlab_core::nalgebra::{Matrix4, Vector4};
use serde::Deserialize;
use steerlab_core::{CanonicalParams, GaussianState, TmstSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStateFile {
    cm: Option<CmArray>,
    mean: Option<Vec<f64>>,
    canonical: Option<RawCanonical>,
    tmst: Option<RawTmst>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CmArray {
    Flat(Vec<f64>),
    Rows(Vec<Vec<f64>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCanonical {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTmst {
    na: f64,
    nb: f64,
    r: f64,
}

/// A parsed state plus the JSON value to echo back in reports.
#[derive(Debug, Clone)]
pub struct ParsedState {
    pub state: GaussianState,
    pub echo: serde_json::Value,
}

fn ensure_finite(values: &[f64], what: &str) -> Result<(), String> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(format!("{what} contains a non-finite number"));
    }
    Ok(())
}

/// Parse and validate a state file. Returns an error string suitable for
/// stderr diagnostics; every failure here is an input error.
pub fn parse_state_json(text: &str) -> Result<ParsedState, String> {
    let raw: RawStateFile =
        serde_json::from_str(text).map_err(|e| format!("invalid state file: {e}"))?;
    let echo: serde_json::Value =
        serde_json::from_str(text).expect("reparse of validated JSON cannot fail");

    let keys = [raw.cm.is_some(), raw.canonical.is_some(), raw.tmst.is_some()];
    let present = keys.iter().filter(|k| **k).count();
    if present != 1 {
        return Err(format!(
            "exactly one of \"cm\", \"canonical\", \"tmst\" must be present (found {present})"
        ));
    }
    if raw.mean.is_some() && raw.cm.is_none() {
        return Err("\"mean\" is only valid together with \"cm\"".into());
    }

    let state = if let Some(cm_in) = raw.cm {
        let entries: Vec<f64> = match cm_in {
            CmArray::Flat(v) => v,
            CmArray::Rows(rows) => {
                if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                    return Err("\"cm\" rows must form a 4x4 matrix".into());
                }
                rows.into_iter().flatten().collect()
            }
        };
        if entries.len() != 16 {
            return Err(format!(
                "\"cm\" must hold 16 numbers (row-major 4x4), found {}",
                entries.len()
            ));
        }
        ensure_finite(&entries, "\"cm\"")?;
        let cm = Matrix4::from_row_slice(&entries);
        let asym = (cm - cm.transpose()).abs().max();
        if asym > 1e-9 {
            return Err(format!(
                "\"cm\" must be symmetric within 1e-9 (max asymmetry {asym:e})"
            ));
        }
        let mean = match raw.mean {
            None => Vector4::zeros(),
            Some(m) => {
                if m.len() != 4 {
                    return Err(format!("\"mean\" must hold 4 numbers, found {}", m.len()));
                }
                ensure_finite(&m, "\"mean\"")?;
                Vector4::from_row_slice(&m)
            }
        };
        GaussianState::new(mean, cm)
    } else if let Some(c) = raw.canonical {
        ensure_finite(&[c.a, c.b, c.c1, c.c2], "\"canonical\"")?;
        CanonicalParams::new(c.a, c.b, c.c1, c.c2).to_state()
    } else {
        let t = raw.tmst.expect("presence checked above");
        ensure_finite(&[t.na, t.nb, t.r], "\"tmst\"")?;
        let spec = TmstSpec::new(t.na, t.nb, t.r).map_err(|e| format!("invalid tmst: {e}"))?;
        spec.params()
            .map_err(|e| format!("invalid tmst: {e}"))?
            .to_state()
    };

    Ok(ParsedState { state, echo })
}
