//! P-function nonclassicality of single-mode Gaussian states.
//!
//! A Gaussian state is P-nonclassical exactly when the least eigenvalue
//! of its CM drops below the vacuum variance 1/2. The nonclassical depth
//! follows from the same eigenvalue because an s-ordered smoothing shifts
//! the CM by `-(s/2) I`.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::state::{single_mode_physicality, DEFAULT_TOL};

/// Least eigenvalue of a symmetric 2x2 matrix, in closed form
/// `(tr - sqrt(tr^2 - 4 det)) / 2`. The radicand is evaluated as
/// `(m00 - m11)^2 + 4 m01 m10`, which does not cancel for
/// near-degenerate matrices.
pub fn min_cm_eigenvalue(cm: &Matrix2<f64>) -> f64 {
    let tr = cm[(0, 0)] + cm[(1, 1)];
    let d = cm[(0, 0)] - cm[(1, 1)];
    let rad = libm::fma(d, d, 4.0 * cm[(0, 1)] * cm[(1, 0)]);
    (tr - libm::sqrt(rad.max(0.0))) * 0.5
}

/// Nonclassical depth `max(0, 1/2 - lambda_-)` of a physical single-mode
/// CM. Strictly positive iff the state is nonclassical; classical states
/// (including the boundary `lambda_- = 1/2`) report exactly 0.
pub fn nonclassical_depth(cm: &Matrix2<f64>) -> Result<f64> {
    nonclassical_depth_with_tol(cm, DEFAULT_TOL)
}

pub fn nonclassical_depth_with_tol(cm: &Matrix2<f64>, tol: f64) -> Result<f64> {
    let rep = single_mode_physicality(cm, tol);
    if !rep.is_physical() {
        return Err(Error::Unphysical {
            min_ur_eigenvalue: rep.min_ur_eigenvalue,
        });
    }
    Ok((0.5 - min_cm_eigenvalue(cm)).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_matches_diagonal_cases() {
        assert_eq!(min_cm_eigenvalue(&(Matrix2::identity() * 0.5)), 0.5);
        let d = Matrix2::new(0.132901, 0.0, 0.0, 1.881098);
        assert_relative_eq!(min_cm_eigenvalue(&d), 0.132901, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_matches_measurement_cm() {
        // Gaussian POVM CM at mu = 1, mu_s = 0.5, phi = 0:
        // diag(1 + kappa, 1 - kappa) with kappa = sqrt(0.75)
        let k = libm::sqrt(0.75);
        let m = Matrix2::new(1.0 + k, 0.0, 0.0, 1.0 - k);
        assert_relative_eq!(
            min_cm_eigenvalue(&m),
            0.13397459621556135,
            epsilon = 1e-15
        );
    }

    #[test]
    fn off_diagonal_eigenvalue() {
        let m = Matrix2::new(1.0, 0.3, 0.3, 2.0);
        // eigenvalues of [[1, .3], [.3, 2]]
        let want = (3.0 - libm::sqrt(1.0 + 4.0 * 0.09)) / 2.0;
        assert_relative_eq!(min_cm_eigenvalue(&m), want, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_and_thermal_are_classical() {
        assert_eq!(nonclassical_depth(&(Matrix2::identity() * 0.5)).unwrap(), 0.0);
        assert_eq!(nonclassical_depth(&(Matrix2::identity() * 1.5)).unwrap(), 0.0);
    }

    #[test]
    fn squeezed_vacuum_depth() {
        let r: f64 = 1.0;
        let cm = Matrix2::new(
            libm::exp(-2.0 * r) / 2.0,
            0.0,
            0.0,
            libm::exp(2.0 * r) / 2.0,
        );
        assert_relative_eq!(
            nonclassical_depth(&cm).unwrap(),
            0.43233235838169365,
            epsilon = 1e-15
        );
    }

    #[test]
    fn unphysical_cm_is_rejected() {
        let cm = Matrix2::new(0.3, 0.0, 0.0, 0.3);
        assert!(matches!(
            nonclassical_depth(&cm),
            Err(Error::Unphysical { .. })
        ));
    }

    #[test]
    fn boundary_is_classified_classical() {
        // lambda_- exactly 1/2: depth clamps to zero, strictly classical
        let cm = Matrix2::new(0.5, 0.0, 0.0, 0.7);
        assert_eq!(nonclassical_depth(&cm).unwrap(), 0.0);
    }
}
