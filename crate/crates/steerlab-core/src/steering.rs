//! Weak and strong nonclassical steering, Gaussian EPR steerability, and
//! entanglement of two-mode Gaussian states, plus an aggregated report
//! that enforces the hierarchy SNS => EPR => entangled and SNS => WNS.
//!
//! All criteria are strict inequalities against the vacuum variance 1/2
//! (or 1/4 for the product form). The lambda quantities are exactly the
//! conditional variances of the Reid EPR criterion, always quoted for the
//! B -> A direction.

use crate::canonical::{CanonicalParams, SymplecticInvariants};
use crate::error::{Error, Result};
use crate::state::{GaussianState, DEFAULT_TOL};
use crate::{accum, state};

/// Steering direction. The primary direction is B -> A: a measurement
/// on mode B steers the state of mode A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    BToA,
    AToB,
}

/// Weak nonclassical steering B -> A: some Gaussian measurement on B
/// leaves A nonclassical. Returns `(lambda, lambda < 1/2)` with
/// `lambda = a - max(c1^2, c2^2)/b`.
pub fn classify_wns(canon: &CanonicalParams) -> (f64, bool) {
    let c = canon.c_max();
    let lambda = canon.a - c * c / canon.b;
    (lambda, lambda < 0.5)
}

/// Strong nonclassical steering B -> A: every quadrature measurement on B
/// leaves A nonclassical. Returns `(lambda, lambda < 1/2)` with
/// `lambda = a - min(c1^2, c2^2)/b`.
pub fn classify_sns(canon: &CanonicalParams) -> (f64, bool) {
    let c = canon.c_min();
    let lambda = canon.a - c * c / canon.b;
    (lambda, lambda < 0.5)
}

/// Both steering lambdas straight from the invariants:
/// `(T -/+ sqrt(T^2 - 4 I1 I2 I4)) / (2 I2 sqrt(I1))` with
/// `T = I1 I2 - I3^2 + I4`. The minus branch is the WNS quantity, the
/// plus branch the SNS one.
///
/// The radicand collapses to `(ab (c1^2 - c2^2))^2` and is evaluated in
/// compensated arithmetic; a value below the rounding floor of zero
/// signals inconsistent invariants.
pub fn classify_from_invariants(inv: &SymplecticInvariants) -> Result<(f64, f64)> {
    if !(inv.i1 > 0.0 && inv.i2 > 0.0) {
        return Err(Error::InvalidInput("I1 and I2 must be positive"));
    }
    let t = accum::invariant_trace_term(inv.i1, inv.i2, inv.i3, inv.i4).to_f64();
    let rad = accum::invariant_radicand(inv.i1, inv.i2, inv.i3, inv.i4).to_f64();
    // same clamp as the canonical-form recovery, scaled by (ab)^2 because
    // rad carries that factor relative to the y^2-units discriminant
    if rad < -1e-9 * inv.i1 * inv.i2 {
        return Err(Error::InconsistentInvariants {
            discriminant: rad / (inv.i1 * inv.i2),
        });
    }
    let root = libm::sqrt(rad.max(0.0));
    let denom = 2.0 * inv.i2 * libm::sqrt(inv.i1);
    Ok(((t - root) / denom, (t + root) / denom))
}

fn epr_product(a: f64, b: f64, c1: f64, c2: f64) -> f64 {
    (a - c1 * c1 / b) * (a - c2 * c2 / b)
}

/// Gaussian EPR steerability: violation of
/// `sigma + (i/2)(omega_A (+) 0_B) >= 0`, equivalent in canonical form to
/// `(a - c1^2/b)(a - c2^2/b) < 1/4` (roles of a, b swapped for A -> B).
///
/// Debug builds cross-check the canonical product against the Hermitian
/// eigenvalue route and report an internal-consistency error if the two
/// disagree away from the decision boundary.
pub fn epr_steerable(state: &GaussianState, direction: Direction) -> Result<bool> {
    let canon = CanonicalParams::from_invariants(&state.invariants())?;
    let product = match direction {
        Direction::BToA => epr_product(canon.a, canon.b, canon.c1, canon.c2),
        Direction::AToB => epr_product(canon.b, canon.a, canon.c1, canon.c2),
    };
    let steerable = product < 0.25;

    #[cfg(debug_assertions)]
    {
        let min_eig = partial_ur_min_eigenvalue(state, direction);
        let eig_says = min_eig < -DEFAULT_TOL;
        let clear_of_boundary = (product - 0.25).abs() > 1e-7 && min_eig.abs() > 1e-7;
        if steerable != eig_says && clear_of_boundary {
            return Err(Error::InternalConsistency(
                "canonical EPR product and partial-UR eigenvalue disagree",
            ));
        }
    }

    Ok(steerable)
}

/// Least eigenvalue of `sigma + (i/2)(omega_A (+) 0_B)` (or the B-side
/// analogue), the quantity whose negativity defines EPR steerability.
pub fn partial_ur_min_eigenvalue(state: &GaussianState, direction: Direction) -> f64 {
    let mut k = nalgebra::Matrix4::<f64>::zeros();
    let omega = state::symplectic_form_single() * 0.5;
    match direction {
        Direction::BToA => k.fixed_view_mut::<2, 2>(0, 0).copy_from(&omega),
        Direction::AToB => k.fixed_view_mut::<2, 2>(2, 2).copy_from(&omega),
    }
    let sym = (state.cm + state.cm.transpose()) * 0.5;
    let mut m = nalgebra::SMatrix::<f64, 8, 8>::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(&sym);
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(&sym);
    m.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-k));
    m.fixed_view_mut::<4, 4>(4, 0).copy_from(&k);
    let eig = nalgebra::linalg::SymmetricEigen::new(m);
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// PPT test: a two-mode Gaussian state is entangled iff its partial
/// transpose violates the uncertainty relation.
pub fn is_entangled(state: &GaussianState) -> bool {
    is_entangled_with_tol(state, DEFAULT_TOL)
}

pub fn is_entangled_with_tol(state: &GaussianState, tol: f64) -> bool {
    let pt = state.partial_transpose();
    let sym = (pt.cm + pt.cm.transpose()) * 0.5;
    state::min_ur_eigenvalue_two_mode(&sym) < -tol
}

/// Aggregated classification of one state. The lambda fields are the
/// B -> A conditional variances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringReport {
    pub lambda_wns: f64,
    pub lambda_sns: f64,
    pub wns: bool,
    pub sns: bool,
    pub epr_b_to_a: bool,
    pub epr_a_to_b: bool,
    pub entangled: bool,
    /// Either lambda sits within 1e-9 of the decision boundary 1/2.
    pub marginal: bool,
}

/// Run every classifier and check the implication chain. A numerically
/// violated implication means a tolerance misconfiguration or a bug, and
/// surfaces as an internal-consistency error.
pub fn hierarchy_report(state: &GaussianState) -> Result<SteeringReport> {
    hierarchy_report_with_tol(state, DEFAULT_TOL)
}

pub fn hierarchy_report_with_tol(state: &GaussianState, tol: f64) -> Result<SteeringReport> {
    let canon = CanonicalParams::from_invariants(&state.invariants())?;
    let (lambda_wns, wns) = classify_wns(&canon);
    let (lambda_sns, sns) = classify_sns(&canon);
    let epr_b_to_a = epr_steerable(state, Direction::BToA)?;
    let epr_a_to_b = epr_steerable(state, Direction::AToB)?;
    let entangled = is_entangled_with_tol(state, tol);
    let marginal = (lambda_wns - 0.5).abs() < 1e-9 || (lambda_sns - 0.5).abs() < 1e-9;

    if sns && !wns {
        return Err(Error::InternalConsistency("SNS without WNS"));
    }
    if sns && !epr_b_to_a {
        return Err(Error::InternalConsistency("SNS without EPR steerability"));
    }
    if epr_b_to_a && !entangled {
        return Err(Error::InternalConsistency(
            "EPR steerable but not entangled",
        ));
    }

    Ok(SteeringReport {
        lambda_wns,
        lambda_sns,
        wns,
        sns,
        epr_b_to_a,
        epr_a_to_b,
        entangled,
        marginal,
    })
}
