//! Exact oscillator realizations of the orthosymplectic Lie superalgebra
//! `osp(M/N; ℝ)` on Fock spaces.
//!
//! The crate is layered bottom-up:
//!
//! * [`cyclo`]: exact numbers in ℚ(ζ₈), where `i` has a square root and `√2`
//!   is available.
//! * [`osp_matrix`]: the supermatrix model with its Cartan subalgebra and root
//!   data.
//! * [`fock_space`] and [`fock_operators`]: sparse vectors in
//!   `ℂ[z] ⊗ Clifford` and the differential/Clifford operators acting on them.
//! * [`realization`]: the Clifford–Weyl lift `ρ̃ = ρ^L ∘ ι` of arbitrary
//!   supermatrices.
//! * [`primitive`]: explicit lowest weight vectors `Λ·R` and their weights.
//! * [`classify`]: unitarity conditions on lowest/highest weights and bounded
//!   enumeration with constructive round-trips, plus the descending-chain
//!   scalar.

pub mod classify;
pub mod cyclo;
mod error;
pub mod fock_operators;
pub mod fock_space;
pub mod linalg;
pub mod osp_matrix;
pub mod primitive;
pub mod rational;
pub mod realization;

pub use cyclo::Cyclotomic;
pub use error::{Error, Result};
pub use fock_operators::{FockOperator, OperatorAtom};
pub use fock_space::{CliffordGenerator, CliffordWord, FockShape, FockVector, PolyMonomial};
pub use osp_matrix::{Parity, Root, RootClass, SuperDim, SuperMatrix, Weight};
pub use primitive::PrimitiveParams;
pub use rational::Rational;
pub use realization::{CwGenerator, CwKind, Realization};
