//! Exact computer algebra for the apolar ideals of the classical matrix
//! invariants: the determinant and permanent of a generic matrix, the
//! Pfaffian of a skew symmetric matrix and the Hafnian of a zero-diagonal
//! symmetric matrix.
//!
//! The library constructs the invariants and their minor families, computes
//! graded annihilators via catalecticant kernels over the rationals (with an
//! optional prime-field fast path for ranks), verifies degree-2 generation of
//! the apolar ideals both by direct rank and through Buchberger's criterion
//! under diagonal term orders, and evaluates the cactus/Waring rank bounds.

pub mod bounds;
pub mod divide;
pub mod error;
pub mod grid;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod report;

mod apolarity;
pub use apolarity::*;

pub use error::{Error, Result};
pub use grid::{Symmetry, VariableGrid};
pub use invariants::{InvariantKind, MinorFamily, MinorKind};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use poly::{Polynomial, Side};
