//! Single-mode Gaussian measurements and the conditional states they
//! leave on the unmeasured mode.
//!
//! A general Gaussian POVM on one mode is parametrized by the purity
//! `mu`, the squeezing parameter `mu_s = (1 + 2 sinh^2 r_m)^-1`, and a
//! phase `phi`. Conditioning a two-mode state on such a measurement is a
//! Schur complement; the resulting CM never depends on the outcome,
//! only the conditional mean does.

use nalgebra::{Matrix2, Vector2};

use crate::accum;
use crate::canonical::CanonicalParams;
use crate::error::{Error, Result};
use crate::state::{single_mode_physicality, GaussianState, DEFAULT_TOL};

/// A single-mode Gaussian POVM, or its ideal-quadrature limit
/// (`mu_s -> 0` at fixed phase, which has no finite CM).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasurementSpec {
    GeneralGaussian { mu: f64, mu_s: f64, phi: f64 },
    IdealQuadrature { phi: f64 },
}

/// CM of an unsqueezed pure Gaussian POVM (heterodyne).
pub const HETERODYNE: MeasurementSpec = MeasurementSpec::GeneralGaussian {
    mu: 1.0,
    mu_s: 1.0,
    phi: 0.0,
};

// rem_euclid is not available in core
fn wrap_tau(phi: f64) -> f64 {
    let r = phi % core::f64::consts::TAU;
    if r < 0.0 {
        r + core::f64::consts::TAU
    } else {
        r
    }
}

fn gaussian_cm(mu: f64, mu_s: f64, phi: f64) -> Matrix2<f64> {
    let kappa = libm::sqrt((1.0 - mu_s * mu_s).max(0.0));
    let pref = 1.0 / (2.0 * mu * mu_s);
    let (s, c) = (libm::sin(phi), libm::cos(phi));
    Matrix2::new(
        pref * (1.0 + kappa * c),
        pref * (-kappa * s),
        pref * (-kappa * s),
        pref * (1.0 - kappa * c),
    )
}

impl MeasurementSpec {
    /// Validated general Gaussian spec; the phase is wrapped into [0, 2pi).
    pub fn general(mu: f64, mu_s: f64, phi: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::InvalidInput("measurement purity must be in (0, 1]"));
        }
        if !(mu_s > 0.0 && mu_s <= 1.0) {
            return Err(Error::InvalidInput(
                "measurement squeezing parameter must be in (0, 1]",
            ));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidInput("measurement phase must be finite"));
        }
        Ok(MeasurementSpec::GeneralGaussian {
            mu,
            mu_s,
            phi: wrap_tau(phi),
        })
    }

    /// CM of the POVM effects,
    /// `(1 / 2 mu mu_s) [[1 + k cos phi, -k sin phi], [-k sin phi, 1 - k cos phi]]`
    /// with `k = sqrt(1 - mu_s^2)`; its determinant is `1/(4 mu^2)`.
    pub fn cm(&self) -> Result<Matrix2<f64>> {
        match *self {
            MeasurementSpec::GeneralGaussian { mu, mu_s, phi } => {
                if !(mu > 0.0 && mu <= 1.0) {
                    return Err(Error::InvalidInput("measurement purity must be in (0, 1]"));
                }
                if !(mu_s > 0.0 && mu_s <= 1.0) {
                    return Err(Error::InvalidInput(
                        "measurement squeezing parameter must be in (0, 1]",
                    ));
                }
                Ok(gaussian_cm(mu, mu_s, phi))
            }
            MeasurementSpec::IdealQuadrature { .. } => Err(Error::UnsupportedVariant),
        }
    }
}

fn invert2(m: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let det = accum::det2(m);
    if !det.is_finite() || det <= 0.0 {
        return Err(Error::NumericalDegeneracy(
            "B + sigma_M is not positive definite",
        ));
    }
    Ok(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det)
}

/// Conditional CM of mode A after a Gaussian measurement with CM
/// `meas_cm` on mode B: the Schur complement
/// `A - C (B + meas_cm)^-1 C^T`. Independent of the outcome.
pub fn condition_on_b(state: &GaussianState, meas_cm: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let m = {
        let m = state.block_b() + meas_cm;
        (m + m.transpose()) * 0.5
    };
    let minv = invert2(&m)?;
    let c = state.block_c();
    let sc = state.block_a() - c * minv * c.transpose();
    Ok((sc + sc.transpose()) * 0.5)
}

/// Conditional mean of mode A given the measurement outcome on mode B:
/// `mean_A + C (B + meas_cm)^-1 (outcome - mean_B)`.
pub fn conditional_mean(
    state: &GaussianState,
    meas_cm: &Matrix2<f64>,
    outcome: &Vector2<f64>,
) -> Result<Vector2<f64>> {
    let m = {
        let m = state.block_b() + meas_cm;
        (m + m.transpose()) * 0.5
    };
    let minv = invert2(&m)?;
    let mean_a = state.mean.fixed_rows::<2>(0).into_owned();
    let mean_b = state.mean.fixed_rows::<2>(2).into_owned();
    Ok(mean_a + state.block_c() * minv * (outcome - mean_b))
}

/// Which correlation the ideal quadrature measurement on mode B uses.
///
/// The two branches are the exact `mu_s -> 0` limits of [`condition_on_b`]
/// at the two optimal phases. No association between {0, pi} and
/// x/p labels is made; the branch names say which `c_i` enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureBranch {
    UsesC1,
    UsesC2,
}

/// Exact ideal-quadrature conditional CM of a canonical-form state:
/// `diag(a - c1^2/b, a)` or `diag(a, a - c2^2/b)`.
pub fn condition_quadrature(canon: &CanonicalParams, branch: QuadratureBranch) -> Matrix2<f64> {
    debug_assert!(canon.b > 0.0);
    match branch {
        QuadratureBranch::UsesC1 => Matrix2::new(
            canon.a - canon.c1 * canon.c1 / canon.b,
            0.0,
            0.0,
            canon.a,
        ),
        QuadratureBranch::UsesC2 => Matrix2::new(
            canon.a,
            0.0,
            0.0,
            canon.a - canon.c2 * canon.c2 / canon.b,
        ),
    }
}

/// Conditional single-mode state in the (purity, squeezing, phase)
/// parametrization: `mu_c = 1/(2 sqrt(det))`, `mu_sc = 1/(mu_c tr)`,
/// `phi_c` from the off-diagonal/diagonal decomposition of the CM form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalParams {
    pub mu_c: f64,
    pub mu_sc: f64,
    pub phi_c: f64,
}

impl ConditionalParams {
    /// Extract (mu_c, mu_sc, phi_c) from a physical single-mode CM.
    ///
    /// Unsqueezed CMs (`kappa_sc < 1e-12`) report `phi_c = 0`; the phase
    /// carries no information there.
    pub fn from_cm(cm: &Matrix2<f64>) -> Result<Self> {
        Self::from_cm_with_tol(cm, DEFAULT_TOL)
    }

    pub fn from_cm_with_tol(cm: &Matrix2<f64>, tol: f64) -> Result<Self> {
        let rep = single_mode_physicality(cm, tol);
        if !rep.is_physical() {
            return Err(Error::Unphysical {
                min_ur_eigenvalue: rep.min_ur_eigenvalue,
            });
        }
        let det = accum::det2(cm);
        let tr = cm[(0, 0)] + cm[(1, 1)];
        // det >= 1/4 - tol and tr >= 2 sqrt(det) hold here; rounding can
        // still push the ratios a hair past 1
        let mu_c = (1.0 / (2.0 * libm::sqrt(det))).min(1.0);
        // an exactly isotropic CM is exactly unsqueezed; going through
        // det/tr would leave ulp-level noise that the kappa_sc square
        // root amplifies to ~1e-8
        let isotropic = cm[(0, 1)] == 0.0 && cm[(1, 0)] == 0.0 && cm[(0, 0)] == cm[(1, 1)];
        let mu_sc = if isotropic {
            1.0
        } else {
            (2.0 * libm::sqrt(det) / tr).min(1.0)
        };
        let kappa_sc = libm::sqrt((1.0 - mu_sc * mu_sc).max(0.0));
        let phi_c = if kappa_sc < 1e-12 {
            0.0
        } else {
            let u = (cm[(0, 0)] - cm[(1, 1)]) * 0.5;
            let v = -cm[(0, 1)];
            wrap_tau(libm::atan2(v, u))
        };
        Ok(ConditionalParams { mu_c, mu_sc, phi_c })
    }

    pub fn kappa_sc(&self) -> f64 {
        libm::sqrt((1.0 - self.mu_sc * self.mu_sc).max(0.0))
    }

    /// Least CM eigenvalue `(1 - kappa_sc)/(2 mu_c mu_sc)`, evaluated in
    /// the cancellation-free form `mu_sc / (2 mu_c (1 + kappa_sc))`.
    pub fn lambda_minus(&self) -> f64 {
        self.mu_sc / (2.0 * self.mu_c * (1.0 + self.kappa_sc()))
    }

    /// Largest CM eigenvalue `(1 + kappa_sc)/(2 mu_c mu_sc)`.
    pub fn lambda_plus(&self) -> f64 {
        (1.0 + self.kappa_sc()) / (2.0 * self.mu_c * self.mu_sc)
    }

    /// Rebuild the CM this parameter triple describes.
    pub fn to_cm(&self) -> Matrix2<f64> {
        gaussian_cm(self.mu_c, self.mu_sc, self.phi_c)
    }
}
