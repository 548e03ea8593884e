//! Two-mode Gaussian states as mean vector + covariance matrix, the
//! uncertainty-relation check, and local symplectic transformations.
//!
//! Quadrature ordering is (x1, p1, x2, p2) throughout, with the vacuum
//! variance equal to 1/2, so the physicality constraint reads
//! `cm + (i/2) Omega >= 0` with `Omega = omega (+) omega` and
//! `omega = [[0, 1], [-1, 0]]`.

use nalgebra::{Matrix2, Matrix4, SMatrix, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::accum;
use crate::canonical::SymplecticInvariants;
use crate::error::{Error, Result};

/// Default absolute tolerance for positive-semidefiniteness checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Single-mode symplectic form `omega = [[0, 1], [-1, 0]]`.
pub fn symplectic_form_single() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Two-mode symplectic form `Omega = omega (+) omega`.
pub fn symplectic_form() -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&symplectic_form_single());
    m.fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&symplectic_form_single());
    m
}

/// A two-mode Gaussian state: first moments and covariance matrix in the
/// (x1, p1, x2, p2) ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    pub mean: Vector4<f64>,
    pub cm: Matrix4<f64>,
}

/// Outcome of the physicality check: symmetry of the CM and the least
/// eigenvalue of the Hermitian matrix `cm + (i/2) Omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    pub symmetric: bool,
    pub ur_satisfied: bool,
    pub min_ur_eigenvalue: f64,
}

impl PhysicalityReport {
    pub fn is_physical(&self) -> bool {
        self.symmetric && self.ur_satisfied
    }
}

impl GaussianState {
    pub fn new(mean: Vector4<f64>, cm: Matrix4<f64>) -> Self {
        GaussianState { mean, cm }
    }

    /// Zero-mean state with the given CM.
    pub fn from_cm(cm: Matrix4<f64>) -> Self {
        GaussianState {
            mean: Vector4::zeros(),
            cm,
        }
    }

    /// Two-mode vacuum, `cm = I/2`.
    pub fn vacuum() -> Self {
        Self::from_cm(Matrix4::identity() * 0.5)
    }

    /// Upper-left 2x2 block (mode A).
    pub fn block_a(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Lower-right 2x2 block (mode B).
    pub fn block_b(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Upper-right 2x2 correlation block C.
    pub fn block_c(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// The four local-symplectic invariants (I1, I2, I3, I4).
    pub fn invariants(&self) -> SymplecticInvariants {
        SymplecticInvariants::of(self)
    }

    /// Physicality check at [`DEFAULT_TOL`].
    pub fn check_physical(&self) -> PhysicalityReport {
        self.check_physical_with_tol(DEFAULT_TOL)
    }

    /// Physicality check with an explicit PSD tolerance: the uncertainty
    /// relation is accepted when the least eigenvalue of `cm + (i/2) Omega`
    /// is at least `-tol`.
    pub fn check_physical_with_tol(&self, tol: f64) -> PhysicalityReport {
        let asym = (self.cm - self.cm.transpose()).abs().max();
        let symmetric = asym <= tol;
        let sym_cm = (self.cm + self.cm.transpose()) * 0.5;
        let min_ur_eigenvalue = min_ur_eigenvalue_two_mode(&sym_cm);
        PhysicalityReport {
            symmetric,
            ur_satisfied: min_ur_eigenvalue >= -tol,
            min_ur_eigenvalue,
        }
    }

    /// Congruence by a local symplectic pair: `A -> S_A A S_A^T`,
    /// `B -> S_B B S_B^T`, `C -> S_A C S_B^T`, mean by `S_A (+) S_B`.
    ///
    /// Both factors must be unimodular within 1e-9.
    pub fn apply_symplectic(&self, s_a: &Matrix2<f64>, s_b: &Matrix2<f64>) -> Result<Self> {
        if (accum::det2(s_a) - 1.0).abs() > 1e-9 || (accum::det2(s_b) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput("local symplectic must have det 1"));
        }
        let a = s_a * self.block_a() * s_a.transpose();
        let b = s_b * self.block_b() * s_b.transpose();
        let c = s_a * self.block_c() * s_b.transpose();

        let mut cm = Matrix4::zeros();
        cm.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
        cm.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
        cm.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
        cm.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());

        let mut mean = Vector4::zeros();
        mean.fixed_rows_mut::<2>(0)
            .copy_from(&(s_a * self.mean.fixed_rows::<2>(0)));
        mean.fixed_rows_mut::<2>(2)
            .copy_from(&(s_b * self.mean.fixed_rows::<2>(2)));

        Ok(GaussianState { mean, cm })
    }

    /// Partial transposition of mode B in phase space: conjugation by
    /// `Lambda = diag(1, 1, 1, -1)` (momentum of mode 2 flips sign).
    pub fn partial_transpose(&self) -> Self {
        let mut cm = self.cm;
        for k in 0..4 {
            cm[(3, k)] = -cm[(3, k)];
        }
        for k in 0..4 {
            cm[(k, 3)] = -cm[(k, 3)];
        }
        let mut mean = self.mean;
        mean[3] = -mean[3];
        GaussianState { mean, cm }
    }
}

/// Least eigenvalue of the 4x4 Hermitian matrix `cm + (i/2) Omega`,
/// computed through the real 8x8 embedding `[[S, -K], [K, S]]` whose
/// spectrum is that of `S + iK` doubled.
pub fn min_ur_eigenvalue_two_mode(cm: &Matrix4<f64>) -> f64 {
    let k = symplectic_form() * 0.5;
    let mut m = SMatrix::<f64, 8, 8>::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(cm);
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(cm);
    m.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-k));
    m.fixed_view_mut::<4, 4>(4, 0).copy_from(&k);
    let eig = nalgebra::linalg::SymmetricEigen::new(m);
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Least eigenvalue of the 2x2 Hermitian matrix `cm + (i/2) omega`, in
/// closed form: `(tr - sqrt((m00 - m11)^2 + 4 m01 m10 + 1)) / 2`.
pub fn min_ur_eigenvalue_single_mode(cm: &Matrix2<f64>) -> f64 {
    let tr = cm[(0, 0)] + cm[(1, 1)];
    let d = cm[(0, 0)] - cm[(1, 1)];
    let rad = libm::fma(d, d, 4.0 * cm[(0, 1)] * cm[(1, 0)]) + 1.0;
    (tr - libm::sqrt(rad.max(0.0))) * 0.5
}

/// Physicality report for a single-mode CM.
pub fn single_mode_physicality(cm: &Matrix2<f64>, tol: f64) -> PhysicalityReport {
    let symmetric = (cm[(0, 1)] - cm[(1, 0)]).abs() <= tol;
    let sym = (cm + cm.transpose()) * 0.5;
    let min_ur_eigenvalue = min_ur_eigenvalue_single_mode(&sym);
    PhysicalityReport {
        symmetric,
        ur_satisfied: min_ur_eigenvalue >= -tol,
        min_ur_eigenvalue,
    }
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    Matrix2::new(c, -s, s, c)
}

/// Deterministic pair of random 2x2 unimodular matrices, each built as
/// rotation * squeezer * rotation with the squeeze parameter bounded by 2
/// so that transformed states stay well conditioned.
pub fn random_local_symplectic(seed: u64) -> (Matrix2<f64>, Matrix2<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let t1 = rng.random_range(0.0..core::f64::consts::TAU);
        let r = rng.random_range(-2.0..=2.0);
        let t2 = rng.random_range(0.0..core::f64::consts::TAU);
        let squeeze = Matrix2::new(libm::exp(r), 0.0, 0.0, libm::exp(-r));
        rotation(t1) * squeeze * rotation(t2)
    };
    let s_a = draw(&mut rng);
    let s_b = draw(&mut rng);
    (s_a, s_b)
}
