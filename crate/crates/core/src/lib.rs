//! Separability of two-qubit density matrices.
//!
//! Two independent routes decide whether a two-qubit state is separable:
//!
//! - the partial-transpose test on the 4×4 density matrix ([`criteria`]);
//! - the Lorentz normal form of the real 4×4 correlation matrix `R`
//!   ([`boost`], [`normal_form`]), where local filtering acts on `R` as a
//!   pair of proper Lorentz transformations and the state is separable iff
//!   `|s₁| + |s₂| + |s₃| ≤ s₀` in the diagonal form.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command-line front end live in the companion `lorentz-sep` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod boost;
pub mod criteria;
mod error;
pub mod hs;
pub mod linalg;
pub mod normal_form;
pub mod oracle;
pub mod rmatrix;
pub mod roots;

pub use error::{Error, Result};

/// Default tolerance for positivity checks.
pub const DEFAULT_PSD_TOL: f64 = 1e-10;
/// Default tolerance for separability verdicts.
pub const DEFAULT_VERDICT_TOL: f64 = 1e-10;
/// Boosts with `|β| ≥ 1 − BETA_LIMIT` are treated as unreachable.
pub const DEFAULT_BETA_LIMIT: f64 = 1e-9;
/// Absolute tolerance for Hermiticity and unit trace.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Spatial axis of a Pauli operator, `X = 1`, `Y = 2`, `Z = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Zero-based index into spatial 3-vectors.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        Axis::ALL.get(i).copied()
    }

    /// The two remaining axes, in increasing order.
    pub fn others(self) -> [usize; 2] {
        match self {
            Axis::X => [1, 2],
            Axis::Y => [0, 2],
            Axis::Z => [0, 1],
        }
    }
}

/// Which qubit an operation acts on. Qubit A is the left tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Qubit {
    #[default]
    A,
    B,
}
