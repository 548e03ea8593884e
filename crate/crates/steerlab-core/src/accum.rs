//! Compensated floating-point kernels for the invariant algebra.
//!
//! Local symplectic transformations scale CM entries by up to e^(2r), and
//! the four invariants then come out of heavily cancelling products: a
//! plain `det` of a 4x4 with entries of order 10^3 carries an absolute
//! error of order 1e-4, which is far too coarse for the 1e-9 agreement
//! the invariant identities are held to. The kernels here use error-free
//! transformations (two_sum / fma-based two_prod) so results are accurate
//! to a few ulp of the *result*, not of the largest intermediate.

use nalgebra::{Matrix2, Matrix4};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = libm::fma(a, b, -p);
    (p, err)
}

/// Unevaluated double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        self.mul(self)
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn scale_pow2(self, k: f64) -> Dd {
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `a*b - c*d` with one fma-compensated correction (Kahan).
#[inline]
pub(crate) fn diff_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let cd = c * d;
    let err = libm::fma(c, d, -cd);
    let dop = libm::fma(a, b, -cd);
    dop - err
}

/// Determinant of a 2x2, accurate to ~1 ulp of the result.
#[inline]
pub(crate) fn det2(m: &Matrix2<f64>) -> f64 {
    diff_of_products(m[(0, 0)], m[(1, 1)], m[(0, 1)], m[(1, 0)])
}

/// Determinant of a 4x4 by cofactor expansion carried in double-double.
///
/// The 2x2 minor products are exact (two_prod) and all combinations stay
/// in Dd, so the only rounding is the final collapse to f64.
pub(crate) fn det4(m: &Matrix4<f64>) -> f64 {
    // 2x2 minors of the top two rows (columns i < j) as Dd.
    let minor_top = |i: usize, j: usize| -> Dd {
        Dd::from_prod(m[(0, i)], m[(1, j)]).sub(Dd::from_prod(m[(0, j)], m[(1, i)]))
    };
    // 2x2 minors of the bottom two rows.
    let minor_bot = |i: usize, j: usize| -> Dd {
        Dd::from_prod(m[(2, i)], m[(3, j)]).sub(Dd::from_prod(m[(2, j)], m[(3, i)]))
    };

    // Laplace expansion along the first two rows:
    // det = S01*S23' - S02*S13' + S03*S12' + S12*S03' - S13*S02' + S23*S01'
    let t01 = minor_top(0, 1).mul(minor_bot(2, 3));
    let t02 = minor_top(0, 2).mul(minor_bot(1, 3));
    let t03 = minor_top(0, 3).mul(minor_bot(1, 2));
    let t12 = minor_top(1, 2).mul(minor_bot(0, 3));
    let t13 = minor_top(1, 3).mul(minor_bot(0, 2));
    let t23 = minor_top(2, 3).mul(minor_bot(0, 1));

    t01.sub(t02).add(t03).add(t12).sub(t13).add(t23).to_f64()
}

/// The shared radicand of the invariant algebra,
/// `Q = (I1*I2 - I3^2 + I4)^2 - 4*I1*I2*I4`,
/// which equals `(ab)^2 (c1^2 - c2^2)^2` for any state with invariants
/// (I1..I4). Returned in double-double; collapses of order 1e5 inputs are
/// still resolved near Q = 0.
pub(crate) fn invariant_radicand(i1: f64, i2: f64, i3: f64, i4: f64) -> Dd {
    let u = Dd::from_prod(i1, i2);
    let v = Dd::from_prod(i3, i3);
    let w = Dd::from_f64(i4);
    let t = u.sub(v).add(w);
    t.sqr().sub(u.mul(w).scale_pow2(4.0))
}

/// `I1*I2 - I3^2 + I4` in double-double.
pub(crate) fn invariant_trace_term(i1: f64, i2: f64, i3: f64, i4: f64) -> Dd {
    Dd::from_prod(i1, i2)
        .sub(Dd::from_prod(i3, i3))
        .add(Dd::from_f64(i4))
}

/// `I1*I2 + I3^2 - I4` in double-double (equals `ab * (c1^2 + c2^2)`).
pub(crate) fn invariant_sum_term(i1: f64, i2: f64, i3: f64, i4: f64) -> Dd {
    Dd::from_prod(i1, i2)
        .add(Dd::from_prod(i3, i3))
        .sub(Dd::from_f64(i4))
}
