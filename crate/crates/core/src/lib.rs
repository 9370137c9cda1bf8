//! Exact computer algebra for the Taft algebra `H_n(q)` and its Green ring.
//!
//! Everything is computed over the cyclotomic field Q(zeta_n) with
//! arbitrary-precision rational coefficients; there is no floating point
//! anywhere. The crate provides
//!
//! * [`cyclotomic`]: the scalar field Q(zeta_n) and q-combinatorics,
//! * [`taft`]: the Hopf algebra H_n(q) itself,
//! * [`reps`]: the n^2 indecomposable matrix representations M(l, r),
//! * [`oracle`]: tensor products of matrix representations and their
//!   decomposition into indecomposables by exact linear algebra,
//! * [`green`]: the Green ring on the basis [M(l, r)] with closed-form
//!   products,
//! * [`presentation`]: the ring Z[y,z]/(y^n - 1, (z-y-1)f_n(y,z)) and the
//!   maps identifying it with the Green ring,
//! * [`checks`]: the verification sweeps used by the CLI.

pub mod checks;
pub mod cyclotomic;
pub mod error;
pub mod green;
pub mod matrix;
pub mod oracle;
pub mod presentation;
pub mod reps;
pub mod taft;

pub use cyclotomic::CycloNum;
pub use error::{Error, Result};
pub use green::GreenElement;
pub use matrix::Matrix;
pub use oracle::ModuleMultiset;
pub use presentation::{BivariatePoly, NormalForm};
pub use reps::{MatrixRep, ModuleLabel};
pub use taft::{TaftElement, TaftTensorElement};
