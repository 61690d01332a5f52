//! Irreducible representations of the nonstandard q-deformed algebras
//! U_q(so_n) in the q-analogue of the Gel'fand–Tsetlin basis.
//!
//! - [`qnum`]: q-numbers, balanced brackets and evaluation modes
//! - [`gtbasis`]: signatures, GT patterns, branching and dimensions
//! - [`repmatrix`]: matrix elements and generator matrices
//! - [`algebra_check`]: relation residuals, *-property, irreducibility
//! - [`appendix_identity`]: the master identity behind the diagonal relations

pub mod algebra_check;
pub mod appendix_identity;
pub mod gtbasis;
pub mod qnum;
pub mod repmatrix;

pub use gtbasis::{Basis, GtPattern, LRow, Signature, SignatureError};
pub use qnum::{HalfInt, QError, QMode, QScalar};
pub use repmatrix::{build_rep, GeneratorMatrix, RepBundle, RepError};
