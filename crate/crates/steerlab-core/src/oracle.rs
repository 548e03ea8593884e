//! Brute-force validation machinery: exhaustive measurement scans that
//! bound the analytic steering quantities from above, and seeded sampling
//! of random physical states for the property suites.
//!
//! The scan is deliberately independent of the canonical-form formulas:
//! it only ever calls the Schur-complement conditioning and a 2x2
//! eigenvalue, so agreement with `classify_wns` is a genuine two-route
//! check.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::CanonicalParams;
use crate::error::{Error, Result};
use crate::measurement::{condition_on_b, MeasurementSpec};
use crate::nonclassical::min_cm_eigenvalue;
use crate::state::{GaussianState, DEFAULT_TOL};
use crate::steering::{classify_sns, classify_wns, epr_steerable, is_entangled_with_tol, Direction};

/// Lower end of the purity scan range. The conditional eigenvalue is
/// monotone in mu, so a shallow range loses nothing; the optimum always
/// sits at mu = 1.
pub const SCAN_MU_MIN: f64 = 0.1;

/// Lower end of the squeezing-parameter scan range.
pub const SCAN_MU_S_MIN: f64 = 1e-4;

/// Result of an exhaustive measurement scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanResult {
    /// Smallest conditional eigenvalue found on the grid.
    pub best_lambda: f64,
    /// The measurement that produced it.
    pub best_spec: MeasurementSpec,
    /// (n_mu, n_mus, n_phi) actually scanned.
    pub grid_dims: (usize, usize, usize),
    /// Whether lambda was non-increasing along decreasing mu_s at the
    /// optimal (mu, phi).
    pub monotone_in_mus: bool,
}

fn log_space(min: f64, n: usize, i: usize) -> f64 {
    let frac = i as f64 / (n - 1) as f64;
    libm::pow(10.0, libm::log10(min) * (1.0 - frac))
}

/// Scan the full Gaussian-measurement family on a
/// `n_mu x n_mus x n_phi` grid (purity and squeezing parameter
/// log-spaced down to [`SCAN_MU_MIN`] and [`SCAN_MU_S_MIN`], phase
/// uniform over [0, 2pi)) and track the least conditional eigenvalue.
pub fn brute_force_min_lambda(
    state: &GaussianState,
    n_mu: usize,
    n_mus: usize,
    n_phi: usize,
) -> Result<ScanResult> {
    brute_force_min_lambda_with(state, n_mu, n_mus, n_phi, SCAN_MU_S_MIN)
}

/// [`brute_force_min_lambda`] with an explicit lower bound for the
/// scanned squeezing parameter.
pub fn brute_force_min_lambda_with(
    state: &GaussianState,
    n_mu: usize,
    n_mus: usize,
    n_phi: usize,
    mu_s_min: f64,
) -> Result<ScanResult> {
    if n_mu < 2 || n_mus < 2 || n_phi < 2 {
        return Err(Error::InvalidInput("scan grid dims must be at least 2"));
    }
    if !(mu_s_min > 0.0 && mu_s_min < 1.0) {
        return Err(Error::InvalidInput("mu_s_min must be in (0, 1)"));
    }
    let rep = state.check_physical();
    if !rep.is_physical() {
        return Err(Error::Unphysical {
            min_ur_eigenvalue: rep.min_ur_eigenvalue,
        });
    }

    let mut best_lambda = f64::INFINITY;
    let mut best = (1.0, 1.0, 0.0);
    for i in 0..n_mu {
        let mu = log_space(SCAN_MU_MIN, n_mu, i);
        for j in 0..n_mus {
            let mu_s = log_space(mu_s_min, n_mus, j);
            for k in 0..n_phi {
                let phi = core::f64::consts::TAU * k as f64 / n_phi as f64;
                let meas = MeasurementSpec::GeneralGaussian { mu, mu_s, phi };
                let sc = condition_on_b(state, &meas.cm()?)?;
                let lambda = min_cm_eigenvalue(&sc);
                // tie-break toward the earliest grid point: for c1 = -c2
                // states lambda is exactly phase-independent and rounding
                // jitter must not drag the argmin off the cardinal phases
                let improves = !best_lambda.is_finite()
                    || lambda < best_lambda - 1e-12 * best_lambda.abs().max(1.0);
                if improves {
                    best_lambda = lambda;
                    best = (mu, mu_s, phi);
                }
            }
        }
    }

    // re-trace mu_s at the optimal (mu, phi), largest to smallest
    let mut monotone_in_mus = true;
    let mut prev = f64::NEG_INFINITY;
    for j in 0..n_mus {
        let mu_s = log_space(mu_s_min, n_mus, j);
        let meas = MeasurementSpec::GeneralGaussian {
            mu: best.0,
            mu_s,
            phi: best.2,
        };
        let lambda = min_cm_eigenvalue(&condition_on_b(state, &meas.cm()?)?);
        // grid is ascending in mu_s, so lambda must be non-decreasing
        if lambda < prev - 1e-12 {
            monotone_in_mus = false;
        }
        prev = lambda;
    }

    Ok(ScanResult {
        best_lambda,
        best_spec: MeasurementSpec::GeneralGaussian {
            mu: best.0,
            mu_s: best.1,
            phi: best.2,
        },
        grid_dims: (n_mu, n_mus, n_phi),
        monotone_in_mus,
    })
}

/// Deterministic sample of physical canonical-form states: quadruples
/// drawn with `a, b` uniform in [1/2, 20] and `|c_i| <= sqrt(ab)`,
/// rejected against the physicality check.
pub fn sample_physical_states(seed: u64, count: usize) -> Vec<GaussianState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.random_range(0.5..=20.0);
        let b = rng.random_range(0.5..=20.0);
        let cap = libm::sqrt(a * b);
        let c1 = rng.random_range(-cap..=cap);
        let c2 = rng.random_range(-cap..=cap);
        let state = CanonicalParams::new(a, b, c1, c2).to_state();
        if state.check_physical().is_physical() {
            out.push(state);
        }
    }
    out
}

/// Count hierarchy violations over a set of states: SNS without WNS,
/// SNS without EPR (B -> A), or EPR (B -> A) without entanglement.
/// Healthy builds return 0.
pub fn audit_hierarchy(states: &[GaussianState]) -> usize {
    audit_hierarchy_with_tol(states, DEFAULT_TOL)
}

pub fn audit_hierarchy_with_tol(states: &[GaussianState], tol: f64) -> usize {
    states
        .iter()
        .filter(|state| {
            let canon = match CanonicalParams::from_invariants(&state.invariants()) {
                Ok(c) => c,
                Err(_) => return true,
            };
            let (_, wns) = classify_wns(&canon);
            let (_, sns) = classify_sns(&canon);
            let epr = match epr_steerable(state, Direction::BToA) {
                Ok(e) => e,
                Err(_) => return true,
            };
            let entangled = is_entangled_with_tol(state, tol);
            (sns && !wns) || (sns && !epr) || (epr && !entangled)
        })
        .count()
}
