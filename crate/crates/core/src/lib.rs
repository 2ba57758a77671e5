//! Verification workbench for Clifford analysis over Cl(0,n).
//!
//! The crate provides exact-by-construction Clifford algebra arithmetic,
//! closed-form families of monogenic functions (Fueter-type monomials,
//! symmetric-power polynomials, plane waves, Taylor series), the exponential
//! intertwining transform between massless and mass-perturbed Dirac-type
//! equations, and a quadrature engine that numerically validates the Cauchy
//! theorem, the Cauchy integral formula, the mean value theorem and the
//! Bergman reproducing formula for both solution classes.
//!
//! All randomized checks are seeded and all accumulations use fixed-order
//! pairwise summation, so verification reports are byte-identical across
//! runs with equal configuration.

pub mod algebra;
pub mod basis;
pub mod convention;
pub mod error;
pub mod field;
pub mod integral;
pub mod operators;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod suites;
pub mod summation;
pub mod transform;

pub use algebra::{blade_product, Multivector, Point, Scalar, MAX_GENERATORS};
pub use convention::Convention;
pub use error::{Error, Result};
pub use field::{CliffordField, SolutionClass};
pub use transform::{MassTerm, TransformSpec};
