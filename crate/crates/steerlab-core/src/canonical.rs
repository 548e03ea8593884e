//! Symplectic invariants of a two-mode CM and recovery of the canonical
//! form (a, b, c1, c2) from them.
//!
//! Any two-mode Gaussian state can be brought by local Gaussian unitaries
//! to the canonical form with blocks `A = a I`, `B = b I`,
//! `C = diag(c1, c2)`. The four block determinants
//! `I1 = det A`, `I2 = det B`, `I3 = det C`, `I4 = det cm`
//! are invariant under such transformations and fingerprint the state up
//! to local operations.

use nalgebra::Matrix4;

use crate::accum;
use crate::error::{Error, Result};
use crate::state::GaussianState;

/// The local-symplectic invariants (I1, I2, I3, I4) of a two-mode CM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

impl SymplecticInvariants {
    /// Block determinants of an arbitrary (not necessarily canonical) CM.
    pub fn of(state: &GaussianState) -> Self {
        SymplecticInvariants {
            i1: accum::det2(&state.block_a()),
            i2: accum::det2(&state.block_b()),
            i3: accum::det2(&state.block_c()),
            i4: accum::det4(&state.cm),
        }
    }
}

/// Canonical-form parameters (a, b, c1, c2).
///
/// Values produced by [`CanonicalParams::from_invariants`] follow the
/// convention `|c1| >= |c2|`, `c1 >= 0`, `sign(c2) = sign(I3)`. Hand-built
/// values need not; every consumer works with `max/min(|c1|, |c2|)` and
/// `sign(c1 c2)` only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalParams {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl CanonicalParams {
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Self {
        CanonicalParams { a, b, c1, c2 }
    }

    /// `c = max(|c1|, |c2|)`.
    pub fn c_max(&self) -> f64 {
        self.c1.abs().max(self.c2.abs())
    }

    /// `c' = min(|c1|, |c2|)`.
    pub fn c_min(&self) -> f64 {
        self.c1.abs().min(self.c2.abs())
    }

    /// Zero-mean state with the canonical CM
    /// `[[a I, diag(c1, c2)], [diag(c1, c2), b I]]`.
    pub fn to_state(&self) -> GaussianState {
        let mut cm = Matrix4::zeros();
        cm[(0, 0)] = self.a;
        cm[(1, 1)] = self.a;
        cm[(2, 2)] = self.b;
        cm[(3, 3)] = self.b;
        cm[(0, 2)] = self.c1;
        cm[(2, 0)] = self.c1;
        cm[(1, 3)] = self.c2;
        cm[(3, 1)] = self.c2;
        GaussianState::from_cm(cm)
    }

    /// Recover canonical parameters from invariants: `a = sqrt(I1)`,
    /// `b = sqrt(I2)`, and `c1^2, c2^2` as the roots of
    /// `y^2 - t y + I3^2 = 0` with `t = ((ab)^2 + I3^2 - I4) / ab`.
    ///
    /// A discriminant below `-1e-9` (in units of y^2) signals invariants
    /// that no state produces; anything within tolerance of zero is
    /// clamped to the degenerate root.
    pub fn from_invariants(inv: &SymplecticInvariants) -> Result<Self> {
        if !(inv.i1 > 0.0 && inv.i2 > 0.0) {
            return Err(Error::InvalidInput("I1 and I2 must be positive"));
        }
        let a = libm::sqrt(inv.i1);
        let b = libm::sqrt(inv.i2);
        let ab = a * b;

        let t = accum::invariant_sum_term(inv.i1, inv.i2, inv.i3, inv.i4).to_f64() / ab;
        // Q = (ab)^2 (c1^2 - c2^2)^2; disc = Q / (ab)^2 in y^2 units
        let q = accum::invariant_radicand(inv.i1, inv.i2, inv.i3, inv.i4).to_f64();
        let disc = q / (inv.i1 * inv.i2);
        if disc < -1e-9 {
            return Err(Error::InconsistentInvariants { discriminant: disc });
        }
        let split = libm::sqrt(disc.max(0.0));

        // t can round a hair negative for uncorrelated states (c1, c2
        // both ~0); clamp like the discriminant, reject real violations
        let y_max = 0.5 * (t + split);
        if y_max < -1e-9 {
            return Err(Error::InconsistentInvariants { discriminant: y_max });
        }
        let y_max = y_max.max(0.0);
        // smaller root through the product c1^2 c2^2 = I3^2, which stays
        // stable when the roots are far apart
        let y_min = if y_max > 0.0 {
            (inv.i3 * inv.i3) / y_max
        } else {
            0.0
        };

        let c1 = libm::sqrt(y_max);
        // rounding of the product form can push the smaller root an ulp
        // past the larger one at exact ties (|c1| = |c2|)
        let c2_mag = libm::sqrt(y_min).min(c1);
        let c2 = if inv.i3 < 0.0 { -c2_mag } else { c2_mag };
        Ok(CanonicalParams { a, b, c1, c2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn invariants_of_wns_separable_fixture() {
        let inv = CanonicalParams::new(13.9, 13.9, 4.6, -13.7)
            .to_state()
            .invariants();
        assert_relative_eq!(inv.i1, 193.21, epsilon = 1e-12);
        assert_relative_eq!(inv.i2, 193.21, epsilon = 1e-12);
        assert_relative_eq!(inv.i3, -63.02, epsilon = 1e-12);
        assert_relative_eq!(inv.i4, 949.716, epsilon = 1e-9);
    }

    #[test]
    fn invariants_of_two_vacua() {
        let inv = GaussianState::vacuum().invariants();
        assert_eq!(inv.i1, 0.25);
        assert_eq!(inv.i2, 0.25);
        assert_eq!(inv.i3, 0.0);
        assert_relative_eq!(inv.i4, 0.0625, epsilon = 1e-15);
    }

    #[test]
    fn from_invariants_orders_by_magnitude() {
        // the fixture has |c2| > |c1|; recovery reorders to |c1| >= |c2|
        // with c2 carrying the sign of I3
        let inv = CanonicalParams::new(13.9, 13.9, 4.6, -13.7)
            .to_state()
            .invariants();
        let canon = CanonicalParams::from_invariants(&inv).unwrap();
        assert_relative_eq!(canon.a, 13.9, epsilon = 1e-9);
        assert_relative_eq!(canon.b, 13.9, epsilon = 1e-9);
        assert_relative_eq!(canon.c1, 13.7, epsilon = 1e-9);
        assert_relative_eq!(canon.c2, -4.6, epsilon = 1e-9);
    }

    #[test]
    fn from_invariants_is_idempotent_on_canonical_inputs() {
        let canon = CanonicalParams::new(3.0, 2.0, 1.5, -0.5);
        let rec = CanonicalParams::from_invariants(&canon.to_state().invariants()).unwrap();
        assert_relative_eq!(rec.a, 3.0, epsilon = 1e-12);
        assert_relative_eq!(rec.b, 2.0, epsilon = 1e-12);
        assert_relative_eq!(rec.c1, 1.5, epsilon = 1e-12);
        assert_relative_eq!(rec.c2, -0.5, epsilon = 1e-12);
    }

    #[test]
    fn tmsv_recovered_after_random_local_symplectic() {
        // TMST(0, 0, r=1): a = b = cosh(2)/2, |c1| = |c2| = sinh(2)/2
        let canon = CanonicalParams::new(
            1.8810978455418157,
            1.8810978455418157,
            1.8134302039235094,
            -1.8134302039235094,
        );
        let (s_a, s_b) = crate::state::random_local_symplectic(42);
        let moved = canon.to_state().apply_symplectic(&s_a, &s_b).unwrap();
        let rec = CanonicalParams::from_invariants(&moved.invariants()).unwrap();
        assert_relative_eq!(rec.a, 1.8810978455418157, epsilon = 1e-6);
        assert_relative_eq!(rec.b, 1.8810978455418157, epsilon = 1e-6);
        assert_relative_eq!(rec.c1.abs(), 1.8134302039235094, epsilon = 1e-6);
        assert_relative_eq!(rec.c2.abs(), 1.8134302039235094, epsilon = 1e-6);
        assert!(rec.c2 < 0.0);
    }

    #[test]
    fn inconsistent_invariants_are_rejected() {
        // I3^2 > anything the sum rule allows: discriminant < 0
        let inv = SymplecticInvariants {
            i1: 1.0,
            i2: 1.0,
            i3: 1.0,
            i4: 1.0,
        };
        assert!(matches!(
            CanonicalParams::from_invariants(&inv),
            Err(Error::InconsistentInvariants { .. })
        ));
    }
}
