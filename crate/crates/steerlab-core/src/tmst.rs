//! Two-mode squeezed thermal states and their triangoloids: the region
//! of conditional (mu_c, mu_sc) pairs reachable by Gaussian measurements
//! on mode B.
//!
//! TMSTs are exactly the canonical-form states with c1 = -c2, which makes
//! the conditional parameters independent of the measurement phase and
//! admits closed forms. The decisive point for steerability is the
//! quadrature vertex (mu_s -> 0), appended analytically to every sample.

use alloc::vec::Vec;

use crate::canonical::CanonicalParams;
use crate::error::{Error, Result};
use crate::measurement::{condition_quadrature, ConditionalParams, QuadratureBranch};

/// Two-mode squeezed thermal state: mean thermal photon numbers of the
/// two modes and the two-mode squeezing parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmstSpec {
    pub n_a: f64,
    pub n_b: f64,
    pub r: f64,
}

impl TmstSpec {
    pub fn new(n_a: f64, n_b: f64, r: f64) -> Result<Self> {
        let spec = TmstSpec { n_a, n_b, r };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(self.n_a >= 0.0 && self.n_a.is_finite())
            || !(self.n_b >= 0.0 && self.n_b.is_finite())
        {
            return Err(Error::InvalidInput(
                "thermal photon numbers must be finite and >= 0",
            ));
        }
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return Err(Error::InvalidInput(
                "squeezing parameter must be finite and >= 0",
            ));
        }
        Ok(())
    }

    /// Canonical parameters
    /// `a/b = (1 + N_A + N_B) cosh(2r)/2 +/- (N_A - N_B)/2`,
    /// `c1 = -c2 = (1 + N_A + N_B) sinh(2r)/2`.
    pub fn params(&self) -> Result<CanonicalParams> {
        self.validate()?;
        let s = 1.0 + self.n_a + self.n_b;
        let d = self.n_a - self.n_b;
        let ch = s * libm::cosh(2.0 * self.r) * 0.5;
        let c = s * libm::sinh(2.0 * self.r) * 0.5;
        Ok(CanonicalParams::new(
            ch + 0.5 * d,
            ch - 0.5 * d,
            c,
            -c,
        ))
    }

    /// Right-hand side of the universal steerability bound.
    pub fn steerability_bound(&self) -> f64 {
        1.0 + 2.0 * self.n_a * (1.0 + 2.0 * self.n_b) / (1.0 + self.n_a + self.n_b)
    }

    /// Universal B -> A steerability condition
    /// `cosh(2r) > 1 + 2 N_A (1 + 2 N_B) / (1 + N_A + N_B)`,
    /// the minimum two-mode squeezing that makes the TMST steerable.
    pub fn is_steerable(&self) -> bool {
        libm::cosh(2.0 * self.r) > self.steerability_bound()
    }
}

/// One point of the triangoloid: measurement parameters, conditional
/// parameters, and the nonclassical depth of the conditional state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangoloidPoint {
    pub mu: f64,
    pub mu_s: f64,
    pub mu_c: f64,
    pub mu_sc: f64,
    pub depth: f64,
}

fn depth_of(mu_c: f64, mu_sc: f64) -> f64 {
    let p = ConditionalParams {
        mu_c,
        mu_sc,
        phi_c: 0.0,
    };
    (0.5 - p.lambda_minus()).max(0.0)
}

/// Conditional parameters of a TMST under a Gaussian measurement, in
/// closed form. With `alpha = b + 1/(2 mu mu_s)` and
/// `beta = kappa_s/(2 mu mu_s)`:
///
/// `mu_c  = (1/2) sqrt((alpha^2 - beta^2) / ((c^2 - a alpha)^2 - a^2 beta^2))`
/// `mu_sc = sqrt((alpha^2 - beta^2)((c^2 - a alpha)^2 - a^2 beta^2))
///          / (a (alpha^2 - beta^2) - alpha c^2)`
///
/// Requires canonical parameters in TMST form (c1 = -c2).
pub fn triangoloid_point(
    canon: &CanonicalParams,
    mu: f64,
    mu_s: f64,
) -> Result<TriangoloidPoint> {
    if (canon.c1 + canon.c2).abs() > 1e-9 * canon.c1.abs().max(1.0) {
        return Err(Error::InvalidInput(
            "triangoloid closed forms need TMST form (c1 = -c2)",
        ));
    }
    if !(mu > 0.0 && mu <= 1.0) || !(mu_s > 0.0 && mu_s <= 1.0) {
        return Err(Error::InvalidInput("mu and mu_s must be in (0, 1]"));
    }
    let (a, b, c) = (canon.a, canon.b, canon.c1.abs());
    let kappa = libm::sqrt((1.0 - mu_s * mu_s).max(0.0));
    let pref = 1.0 / (2.0 * mu * mu_s);
    let alpha = b + pref;
    let beta = kappa * pref;
    // alpha - beta through the stable form b + mu_s/(2 mu (1 + kappa))
    let lo = b + mu_s / (2.0 * mu * (1.0 + kappa));
    let hi = alpha + beta;
    let q1 = lo * hi;
    let q2 = (a * hi - c * c) * (a * lo - c * c);
    let denom = a * q1 - alpha * (c * c);
    let all_positive = q1 > 0.0 && q1.is_finite() && q2 > 0.0 && q2.is_finite() && denom > 0.0;
    if !all_positive {
        return Err(Error::NumericalDegeneracy(
            "triangoloid radicand or denominator collapsed",
        ));
    }
    let mu_c = (0.5 * libm::sqrt(q1 / q2)).min(1.0);
    // beta = 0 means an isotropic conditional CM: mu_sc is exactly 1 and
    // the rounding of sqrt(q1 q2)/denom must not leak into kappa_sc,
    // where it would be amplified by the square root
    let mu_sc = if beta == 0.0 {
        1.0
    } else {
        (libm::sqrt(q1 * q2) / denom).min(1.0)
    };
    Ok(TriangoloidPoint {
        mu,
        mu_s,
        mu_c,
        mu_sc,
        depth: depth_of(mu_c, mu_sc),
    })
}

/// The exact `mu_s -> 0` vertex of the triangoloid, computed through the
/// ideal-quadrature conditional CM rather than any numerical limit. The
/// point is flagged with `mu_s = 0`.
pub fn quadrature_vertex(canon: &CanonicalParams) -> Result<TriangoloidPoint> {
    if (canon.c1 + canon.c2).abs() > 1e-9 * canon.c1.abs().max(1.0) {
        return Err(Error::InvalidInput(
            "triangoloid closed forms need TMST form (c1 = -c2)",
        ));
    }
    let cm = condition_quadrature(canon, QuadratureBranch::UsesC1);
    let p = ConditionalParams::from_cm(&cm)?;
    Ok(TriangoloidPoint {
        mu: 1.0,
        mu_s: 0.0,
        mu_c: p.mu_c,
        mu_sc: p.mu_sc,
        depth: depth_of(p.mu_c, p.mu_sc),
    })
}

fn log_grid(min: f64, n: usize, i: usize) -> f64 {
    let frac = i as f64 / (n - 1) as f64;
    libm::pow(10.0, libm::log10(min) * (1.0 - frac))
}

/// Triangoloid sample on a logarithmic `grid_n x grid_n` grid over
/// `[1e-3, 1]^2` in (mu, mu_s); see [`triangoloid_sample_with`].
pub fn triangoloid_sample(spec: &TmstSpec, grid_n: usize) -> Result<Vec<TriangoloidPoint>> {
    triangoloid_sample_with(spec, grid_n, 1e-3, 1e-3)
}

/// Triangoloid sample with explicit lower grid bounds.
///
/// Output ordering is deterministic: the grid in row-major order (mu
/// outer, mu_s inner, both ascending), then the three boundary curves
/// (mu = 1 side, mu_s = 1 side, mu_s = mu_s_min side, each grid_n
/// points), then the exact quadrature vertex. Total length
/// `grid_n^2 + 3 grid_n + 1`.
pub fn triangoloid_sample_with(
    spec: &TmstSpec,
    grid_n: usize,
    mu_min: f64,
    mu_s_min: f64,
) -> Result<Vec<TriangoloidPoint>> {
    if grid_n < 2 {
        return Err(Error::InvalidInput("grid_n must be at least 2"));
    }
    if !(mu_min > 0.0 && mu_min < 1.0) || !(mu_s_min > 0.0 && mu_s_min < 1.0) {
        return Err(Error::InvalidInput("grid lower bounds must be in (0, 1)"));
    }
    let canon = spec.params()?;
    let mut points = Vec::with_capacity(grid_n * grid_n + 3 * grid_n + 1);
    for i in 0..grid_n {
        let mu = log_grid(mu_min, grid_n, i);
        for j in 0..grid_n {
            points.push(triangoloid_point(&canon, mu, log_grid(mu_s_min, grid_n, j))?);
        }
    }
    for j in 0..grid_n {
        points.push(triangoloid_point(&canon, 1.0, log_grid(mu_s_min, grid_n, j))?);
    }
    for i in 0..grid_n {
        points.push(triangoloid_point(&canon, log_grid(mu_min, grid_n, i), 1.0)?);
    }
    for i in 0..grid_n {
        points.push(triangoloid_point(
            &canon,
            log_grid(mu_min, grid_n, i),
            mu_s_min,
        )?);
    }
    points.push(quadrature_vertex(&canon)?);
    Ok(points)
}

/// Boundary of the nonclassical region in conditional-parameter space:
/// a conditional state with `mu_sc < 2 mu_c / (1 + mu_c^2)` is
/// nonclassical (strictly).
pub fn nonclassical_boundary(mu_c: f64) -> Result<f64> {
    if !(mu_c > 0.0 && mu_c <= 1.0) {
        return Err(Error::InvalidInput("mu_c must be in (0, 1]"));
    }
    Ok(2.0 * mu_c / (1.0 + mu_c * mu_c))
}
