//! Exact computer algebra for finite-dimensional n-ary BiHom-Lie algebras
//! given by structure constants over ℚ or a prime field.
//!
//! The crate decides the defining axioms (twist commutation, BiHom
//! skew-symmetry, BiHom-Jacobi), computes every derivation-type subspace —
//! center, (α,β)-center, derived subalgebra, derivations, generalized and
//! quasiderivations, centroid, quasicentroid, central derivations — as exact
//! nullspaces, performs the standard constructions (twist induction,
//! derivation extension, two-block t-extension, trace-induced higher-arity
//! brackets), and machine-checks the structural theorems relating those
//! spaces on concrete instances. All arithmetic is exact; there are no
//! tolerances anywhere.

pub mod algebra;
pub mod builtins;
pub mod constructions;
pub mod doc;
pub mod error;
pub mod matrix;
pub mod scalar;
pub mod spaces;
pub mod subspace;
pub mod verifier;

pub use algebra::{AxiomReport, BracketTensor, NAryBiHomAlgebra, MAX_DIM};
pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
