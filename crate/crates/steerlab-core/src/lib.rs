//! Phase-space toolkit for nonclassical steering of two-mode Gaussian
//! states.
//!
//! Everything works on covariance matrices in the quadrature ordering
//! (x1, p1, x2, p2) with vacuum variance 1/2, so the physicality
//! constraint reads `cm + (i/2) Omega >= 0`. For any physical two-mode
//! state the crate decides:
//!
//! - whether some Gaussian measurement on mode B leaves mode A in a
//!   P-nonclassical conditional state (weak nonclassical steering),
//! - whether every quadrature measurement on B does (strong),
//! - whether the state is EPR-steerable and/or entangled,
//!
//! and computes the conditional states themselves, through the
//! Schur-complement update for arbitrary Gaussian measurements or
//! through closed forms for two-mode squeezed thermal states
//! (triangoloid geometry). A brute-force measurement scan in [`oracle`]
//! independently confirms that quadrature detection is optimal.
//!
//! The crate is `no_std`-compatible (`default-features = false`) and
//! needs only `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]
// frozen reference constants carry all derivation digits
#![allow(clippy::excessive_precision)]

extern crate alloc;

pub use nalgebra;

mod accum;
pub mod canonical;
pub mod error;
pub mod measurement;
pub mod nonclassical;
pub mod oracle;
pub mod state;
pub mod steering;
pub mod tmst;

pub use canonical::{CanonicalParams, SymplecticInvariants};
pub use error::{Error, Result};
pub use measurement::{
    condition_on_b, condition_quadrature, conditional_mean, ConditionalParams, MeasurementSpec,
    QuadratureBranch,
};
pub use nonclassical::{min_cm_eigenvalue, nonclassical_depth};
pub use oracle::{
    audit_hierarchy, audit_hierarchy_with_tol, brute_force_min_lambda,
    brute_force_min_lambda_with, sample_physical_states, ScanResult,
};
pub use state::{
    random_local_symplectic, single_mode_physicality, GaussianState, PhysicalityReport,
    DEFAULT_TOL,
};
pub use steering::{
    classify_from_invariants, classify_sns, classify_wns, epr_steerable, hierarchy_report,
    hierarchy_report_with_tol, is_entangled, is_entangled_with_tol, Direction, SteeringReport,
};
pub use tmst::{
    nonclassical_boundary, quadrature_vertex, triangoloid_point, triangoloid_sample,
    triangoloid_sample_with, TmstSpec, TriangoloidPoint,
};
