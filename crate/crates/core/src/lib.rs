//! Exact first-order certification that the smooth hyperplane sections of a
//! projective hypersurface vary maximally in moduli.
//!
//! Everything reduces to graded linear algebra over `Q` or `F_p`:
//!
//! * [`scalar`] and [`linalg`] provide exact fields and row reduction,
//! * [`poly`] holds sparse polynomials, linear changes of coordinates and
//!   the first-order (dual number) expansion of a moving hyperplane,
//! * [`jacobian`] builds graded pieces of Jacobian ideals and decides
//!   smoothness,
//! * [`variation`] evaluates the criterion at hyperplanes and searches for a
//!   certifying one,
//! * [`fixtures`] constructs the standard test hypersurfaces.

pub mod error;
pub mod fixtures;
pub mod jacobian;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod variation;

pub use error::{Error, Result};
pub use linalg::{Matrix, RowSpace};
pub use poly::{
    first_order_section, monomial_basis, LinearChange, LinearForm, Monomial, Polynomial,
};
pub use scalar::{FieldSpec, Scalar};
pub use variation::{
    certify_max_variation, criterion_kernel, criterion_kernel_with, moduli_dim,
    normalize_hyperplane, q_form, sections_exceed_moduli, survey_kernels, CertifyReport,
    CriterionOptions, CriterionOutcome, CriterionReport, CriterionStatus, Hyperplane, ScanStrategy,
    TrialOrigin, TrialSummary, Verdict,
};
