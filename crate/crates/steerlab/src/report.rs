//! The JSON classification report emitted by `analyze`.

use serde::Serialize;
use steerlab_core::{
    classify_from_invariants, hierarchy_report_with_tol, CanonicalParams, GaussianState,
    PhysicalityReport,
};

use crate::numfmt::sig9;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct PhysicalityBlock {
    pub symmetric: bool,
    pub ur_satisfied: bool,
    pub min_ur_eigenvalue: f64,
}

impl From<&PhysicalityReport> for PhysicalityBlock {
    fn from(rep: &PhysicalityReport) -> Self {
        PhysicalityBlock {
            symmetric: rep.symmetric,
            ur_satisfied: rep.ur_satisfied,
            min_ur_eigenvalue: sig9(rep.min_ur_eigenvalue),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CanonicalBlock {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Serialize)]
pub struct InvariantsBlock {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

#[derive(Debug, Serialize)]
pub struct Flags {
    pub wns: bool,
    pub sns: bool,
    pub epr_b_to_a: bool,
    pub epr_a_to_b: bool,
    pub entangled: bool,
    pub marginal: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub input: serde_json::Value,
    pub tool_version: &'static str,
    pub physical: PhysicalityBlock,
    pub canonical: CanonicalBlock,
    pub invariants: InvariantsBlock,
    pub lambda_wns: f64,
    pub lambda_sns: f64,
    pub flags: Flags,
}

/// Classify a (physical) state into a full report. The caller is
/// responsible for running the physicality gate first; this assembles
/// the classification on top of it.
pub fn build_report(
    state: &GaussianState,
    physicality: &PhysicalityReport,
    echo: serde_json::Value,
    tol: f64,
) -> Result<Report, String> {
    let inv = state.invariants();
    let canon = CanonicalParams::from_invariants(&inv)
        .map_err(|e| format!("canonical-form recovery failed: {e}"))?;
    let rep = hierarchy_report_with_tol(state, tol).map_err(|e| e.to_string())?;
    // cross-check the invariant-form route before reporting
    let (lw, ls) = classify_from_invariants(&inv).map_err(|e| e.to_string())?;
    if (lw - rep.lambda_wns).abs() > 1e-9 || (ls - rep.lambda_sns).abs() > 1e-9 {
        return Err("invariant-form and canonical-form lambdas disagree".into());
    }

    Ok(Report {
        input: echo,
        tool_version: TOOL_VERSION,
        physical: physicality.into(),
        canonical: CanonicalBlock {
            a: sig9(canon.a),
            b: sig9(canon.b),
            c1: sig9(canon.c1),
            c2: sig9(canon.c2),
        },
        invariants: InvariantsBlock {
            i1: sig9(inv.i1),
            i2: sig9(inv.i2),
            i3: sig9(inv.i3),
            i4: sig9(inv.i4),
        },
        lambda_wns: sig9(rep.lambda_wns),
        lambda_sns: sig9(rep.lambda_sns),
        flags: Flags {
            wns: rep.wns,
            sns: rep.sns,
            epr_b_to_a: rep.epr_b_to_a,
            epr_a_to_b: rep.epr_a_to_b,
            entangled: rep.entangled,
            marginal: rep.marginal,
        },
    })
}
